//! Figure recipes compiled into the binary from `figures/*.cfg`.

use crate::config::Scenario;
use crate::error::CliError;

pub struct Recipe {
    pub id: &'static str,
    pub text: &'static str,
}

impl Recipe {
    /// The recipe as a scenario named after its id.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let mut sc = Scenario::parse_toml(self.text)
            .map_err(|e| CliError::Config(format!("figures/{}.cfg: {e}", self.id)))?;
        sc.name.get_or_insert_with(|| self.id.to_string());
        Ok(sc)
    }
}

macro_rules! recipes {
    ($($id:literal),* $(,)?) => {
        &[$(Recipe { id: $id, text: include_str!(concat!("../../../figures/", $id, ".cfg")) }),*]
    };
}

pub static RECIPES: &[Recipe] = recipes![
    "fig1a", "fig1b", "fig1c", "fig1d",
    "fig2a", "fig2a-e2", "fig2b", "fig2b-e2", "fig2c", "fig2c-e4", "fig2d",
    "fig3a", "fig3b", "fig3c", "fig3d",
    "fig4a", "fig4b", "fig4c", "fig4d", "fig4d-e180",
    "fig5a", "fig5b", "fig5c", "fig5d",
    "fig6a", "fig6b", "fig6c", "fig6d",
    "fig7a", "fig7b", "fig7c", "fig7d",
];

pub fn find(id: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.id == id)
}

/// `all`, an exact id, or a prefix such as `fig3` that is followed by a panel letter.
pub fn select(target: &str) -> Result<Vec<&'static Recipe>, CliError> {
    if target == "all" {
        return Ok(RECIPES.iter().collect());
    }
    if let Some(r) = find(target) {
        return Ok(vec![r]);
    }
    let hits: Vec<_> = RECIPES
        .iter()
        .filter(|r| {
            r.id.strip_prefix(target)
                .and_then(|rest| rest.chars().next())
                .is_some_and(|c| c.is_ascii_lowercase())
        })
        .collect();
    if hits.is_empty() {
        let ids: Vec<_> = RECIPES.iter().map(|r| r.id).collect();
        return Err(CliError::Config(format!(
            "figures: unknown figure id `{target}` (known: all, {})",
            ids.join(", ")
        )));
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_recipe_parses_and_resolves() {
        for r in RECIPES {
            let sc = r.scenario().unwrap();
            let kind = sc.command.unwrap_or_else(|| panic!("{} has no command", r.id));
            sc.resolve(kind).unwrap_or_else(|e| panic!("{}: {e}", r.id));
        }
    }

    #[test]
    fn prefix_selects_panels() {
        let ids: Vec<_> = select("fig1").unwrap().iter().map(|r| r.id).collect();
        assert_eq!(ids, ["fig1a", "fig1b", "fig1c", "fig1d"]);
        assert_eq!(select("fig3a").unwrap().len(), 1);
        assert!(select("fig9").is_err());
        assert!(select("fig").is_err());
    }
}
