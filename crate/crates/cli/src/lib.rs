//! Batch front end for the `dualwave` library: one subcommand per model
//! quantity plus `figures`, which replays the committed recipe files.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;
pub mod recipes;
pub mod table;

use clap::{Args, Parser, Subcommand};
use config::{CommandKind, Format, Scenario};
use error::CliError;
use manifest::Manifest;
use output::Sink;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "dualwave", version, about = "Quasiparticle electron-gas simulations and figure data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Scenario file (TOML), or a run manifest (.json) to rerun.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Also write PNG rasters of grid channels.
    #[arg(long, global = true)]
    pub raster: bool,
    /// Worker threads for grid fills (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add a fringe-spectrum probe along +x if the scenario has none.
    #[arg(long, global = true)]
    pub probe: bool,
    /// Override any scenario value, e.g. `--set grid.nx=256`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Orbital energy E [E_p].
    #[arg(long, global = true)]
    pub energy: Option<f64>,
    /// Pole half-separation a [l_p].
    #[arg(long, global = true)]
    pub spacing: Option<f64>,
    /// Pole charge Q.
    #[arg(long, global = true)]
    pub charge: Option<f64>,
    /// Initial speed(s) v0 [v_p] for `trajectory`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub v0: Vec<f64>,
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    #[arg(long, global = true)]
    pub ny: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dispersion E(k) with the free-electron reference.
    Dispersion,
    /// Chemical potential and pressure over a density sweep.
    Eos,
    /// Plasmon scales over a density sweep.
    Scales,
    /// One-dimensional Φ and Ψ.
    Solve1d,
    /// Test-particle trajectories in the 1D potential.
    Trajectory,
    /// |Ψ|, |Φ| and density on a plane through the two poles.
    Dipole,
    /// Currents, electric field and divergence checks.
    Currents,
    /// Streamlines of a current or velocity field.
    Streamlines,
    /// Regenerate figure data from the committed recipes.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// `all`, a recipe id (`fig3a`) or a figure number (`fig3`).
    #[arg(default_value = "all")]
    pub target: String,
    /// Print the recipe ids and exit.
    #[arg(long)]
    pub list: bool,
}

impl Command {
    fn kind(&self) -> Option<CommandKind> {
        Some(match self {
            Command::Dispersion => CommandKind::Dispersion,
            Command::Eos => CommandKind::Eos,
            Command::Scales => CommandKind::Scales,
            Command::Solve1d => CommandKind::Solve1d,
            Command::Trajectory => CommandKind::Trajectory,
            Command::Dipole => CommandKind::Dipole,
            Command::Currents => CommandKind::Currents,
            Command::Streamlines => CommandKind::Streamlines,
            Command::Figures(_) => return None,
        })
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.common.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
            pool.install(|| dispatch(&cli))
        }
        None => dispatch(&cli),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let common = &cli.common;
    match (&cli.command, cli.command.kind()) {
        (Command::Figures(args), _) => figures(args, common),
        (_, Some(kind)) => {
            let mut sc = match &common.config {
                Some(path) => Scenario::load(path)?,
                None => Scenario::default(),
            };
            apply_overrides(&mut sc, common, kind)?;
            let manifest = run_scenario(sc.resolve(kind)?, &common.out)?;
            report(&manifest, &common.out);
            Ok(())
        }
        _ => unreachable!("every other subcommand maps to a command kind"),
    }
}

fn apply_overrides(sc: &mut Scenario, c: &Common, kind: CommandKind) -> Result<(), CliError> {
    if let Some(f) = c.format {
        sc.output.get_or_insert_with(Default::default).format = f;
    }
    if c.raster {
        sc.output.get_or_insert_with(Default::default).raster = true;
    }
    if let Some(e) = c.energy {
        sc.set(&format!("orbital.energy={e:?}"))?;
    }
    if let Some(a) = c.spacing {
        sc.set(&format!("dipole.a={a:?}"))?;
    }
    if let Some(q) = c.charge {
        sc.set(&format!("dipole.q={q:?}"))?;
    }
    if !c.v0.is_empty() {
        sc.set(&format!("trajectory.speeds={:?}", c.v0))?;
    }
    if let Some(n) = c.nx {
        sc.set(&format!("grid.nx={n}"))?;
    }
    if let Some(n) = c.ny {
        sc.set(&format!("grid.ny={n}"))?;
    }
    for s in &c.set {
        sc.set(s)?;
    }
    if c.probe && sc.probe.is_none() && matches!(kind, CommandKind::Dipole | CommandKind::Currents) {
        sc.probe = sc.default_probe();
        if sc.probe.is_none() {
            return Err(CliError::Config("--probe: needs dipole.a".into()));
        }
    }
    Ok(())
}

/// Runs a resolved scenario into `dir` and writes `<stem>.manifest.json` beside the data files.
pub fn run_scenario(sc: Scenario, dir: &Path) -> Result<Manifest, CliError> {
    let mut sink = Sink::new(dir, &sc.stem(), sc.format(), sc.raster())?;
    let derived = commands::execute(&sc, &mut sink)?;
    let manifest = Manifest {
        version: commands::VERSION.to_string(),
        command: sc.command.expect("resolved"),
        derived,
        created: chrono::Utc::now().to_rfc3339(),
        outputs: sink.into_records(),
        config: sc,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(dir.join(manifest_name(&manifest.config.stem())), text + "\n")?;
    Ok(manifest)
}

pub fn manifest_name(stem: &str) -> String {
    format!("{stem}.{}", manifest::MANIFEST_FILE)
}

fn report(m: &Manifest, dir: &Path) {
    for o in &m.outputs {
        println!("{}", dir.join(&o.file).display());
    }
}

fn figures(args: &FiguresArgs, common: &Common) -> Result<(), CliError> {
    if args.list {
        for r in recipes::RECIPES {
            println!("{}", r.id);
        }
        return Ok(());
    }
    let selected = recipes::select(&args.target)?;
    for r in selected {
        let mut sc = r.scenario()?;
        let kind = sc
            .command
            .ok_or_else(|| CliError::Config(format!("figures/{}.cfg: missing `command`", r.id)))?;
        if let Some(f) = common.format {
            sc.output.get_or_insert_with(Default::default).format = f;
        }
        if common.raster {
            sc.output.get_or_insert_with(Default::default).raster = true;
        }
        for s in &common.set {
            sc.set(s)?;
        }
        let dir = common.out.join(r.id);
        let manifest = run_scenario(sc.resolve(kind)?, &dir)?;
        report(&manifest, &dir);
    }
    Ok(())
}
