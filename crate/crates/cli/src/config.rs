//! Scenario files: TOML with one section per concern. Unknown keys are
//! rejected, and every command resolves the sections it needs before any
//! computation starts.

use crate::error::CliError;
use dualwave::dynamics::FlowKind;
use dualwave::fieldmaps::Channel;
use dualwave::pseudoforce::{Branch, Orbital};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Dispersion,
    Eos,
    Scales,
    Solve1d,
    Trajectory,
    Dipole,
    Currents,
    Streamlines,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Dispersion => "dispersion",
            CommandKind::Eos => "eos",
            CommandKind::Scales => "scales",
            CommandKind::Solve1d => "solve1d",
            CommandKind::Trajectory => "trajectory",
            CommandKind::Dipole => "dipole",
            CommandKind::Currents => "currents",
            CommandKind::Streamlines => "streamlines",
        }
    }

    fn needs_orbital(self) -> bool {
        matches!(
            self,
            CommandKind::Solve1d | CommandKind::Trajectory | CommandKind::Dipole | CommandKind::Currents | CommandKind::Streamlines
        )
    }

    fn needs_dipole(self) -> bool {
        matches!(self, CommandKind::Dipole | CommandKind::Currents | CommandKind::Streamlines)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchName {
    #[default]
    Outgoing,
    Incoming,
}

impl From<BranchName> for Branch {
    fn from(b: BranchName) -> Self {
        match b {
            BranchName::Outgoing => Branch::Outgoing,
            BranchName::Incoming => Branch::Incoming,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowName {
    #[default]
    Probability,
    Charge,
    Total,
    Electric,
    Bohmian,
}

impl From<FlowName> for FlowKind {
    fn from(f: FlowName) -> Self {
        match f {
            FlowName::Probability => FlowKind::Probability,
            FlowName::Charge => FlowKind::Charge,
            FlowName::Total => FlowKind::Total,
            FlowName::Electric => FlowKind::Electric,
            FlowName::Bohmian => FlowKind::Bohmian,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    pub raster: bool,
}

/// Laboratory reference used to report plasmon units alongside a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    /// cm⁻³
    pub density: f64,
    /// K
    #[serde(default = "room_temperature")]
    pub temperature: f64,
}

fn room_temperature() -> f64 {
    300.0
}

/// Log-spaced density sweep shared by `scales` and `eos`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub n0_min: f64,
    pub n0_max: f64,
    pub points: usize,
    pub temperature: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            n0_min: 1e14,
            n0_max: 1e24,
            points: 101,
            temperature: 300.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DispersionSection {
    pub k_min: f64,
    pub k_max: f64,
    pub samples: usize,
}

impl Default for DispersionSection {
    fn default() -> Self {
        Self {
            k_min: 0.1,
            k_max: 5.0,
            samples: 491,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitalSection {
    /// Normalized orbital energy E = (ε − μ₀)/E_p.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundarySection {
    pub phi0: f64,
    pub psi0: f64,
}

impl Default for BoundarySection {
    fn default() -> Self {
        Self { phi0: 1.0, psi0: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LineSection {
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
}

impl Default for LineSection {
    fn default() -> Self {
        Self {
            x_min: -40.0,
            x_max: 40.0,
            samples: 4001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrajectorySection {
    pub gamma: f64,
    pub q: f64,
    pub x0: f64,
    pub speeds: Vec<f64>,
    /// Orbitals to sweep; falls back to `orbital.energy` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energies: Option<Vec<f64>>,
    pub t_end: f64,
    pub h: f64,
    /// Keep every `stride`-th step in the output table.
    pub stride: usize,
    /// Classification window; the slow wavelength 2π/k₁ when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
}

impl Default for TrajectorySection {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            q: 1.0,
            x0: 0.0,
            speeds: vec![0.82],
            energies: None,
            t_end: 200.0,
            h: 1e-3,
            stride: 100,
            window: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleSection {
    /// Pole half-separation.
    pub a: f64,
    #[serde(default = "unit")]
    pub q: f64,
    #[serde(default)]
    pub branch: BranchName,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub z: f64,
    /// Channel names: psi, phi, n, J, Jd, Jt, E.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channels: Option<Vec<String>>,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            x_min: -20.0,
            x_max: 20.0,
            y_min: -20.0,
            y_max: 20.0,
            nx: 512,
            ny: 512,
            z: 0.0,
            channels: None,
        }
    }
}

/// Pixel-averaged |Φ|, |Ψ| strip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    /// Sub-samples per pixel side; chosen from the fast wavelength when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsamples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    pub from: [f64; 2],
    pub to: [f64; 2],
    #[serde(default = "probe_samples")]
    pub samples: usize,
    #[serde(default = "probe_channels")]
    pub channels: Vec<String>,
}

fn probe_samples() -> usize {
    512
}

fn probe_channels() -> Vec<String> {
    vec!["psi".into(), "phi".into()]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurrentsSection {
    /// Adds ∇·J, ∇·J_d, ∇·J_t and the source −Im(Ψ*Φ) columns.
    pub divergence: bool,
}

#[allow(clippy::derivable_impls)]
impl Default for CurrentsSection {
    fn default() -> Self {
        Self { divergence: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StreamSection {
    pub flow: FlowName,
    pub seeds: Vec<[f64; 2]>,
    /// Seeds on a circle of this radius around each pole, `ring_count` per pole.
    pub ring_radius: f64,
    pub ring_count: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub max_steps: usize,
}

impl Default for StreamSection {
    fn default() -> Self {
        Self {
            flow: FlowName::Probability,
            seeds: Vec::new(),
            ring_radius: 0.3,
            ring_count: 0,
            x_min: -20.0,
            x_max: 20.0,
            y_min: -20.0,
            y_max: 20.0,
            max_steps: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    /// Output file stem; the command name when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eos: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbital: Option<OrbitalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundarySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<TrajectorySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dipole: Option<DipoleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detector: Option<DetectorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub currents: Option<CurrentsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub streamlines: Option<StreamSection>,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn check(ok: bool, field: &str, requirement: &str, got: impl std::fmt::Display) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(config_err(format!("{field}: must be {requirement} (got {got})")))
    }
}

fn check_range(lo: f64, hi: f64, section: &str, lo_key: &str, hi_key: &str) -> Result<(), CliError> {
    check(lo.is_finite(), &format!("{section}.{lo_key}"), "finite", lo)?;
    check(
        hi.is_finite() && hi > lo,
        &format!("{section}.{hi_key}"),
        &format!("finite and greater than {section}.{lo_key} = {lo}"),
        hi,
    )
}

fn check_channels(names: &[String], field: &str) -> Result<(), CliError> {
    for n in names {
        if Channel::parse(n).is_none() {
            let known: Vec<&str> = Channel::ALL.iter().map(|c| c.name()).collect();
            return Err(config_err(format!("{field}: unknown channel `{n}` (expected one of {})", known.join(", "))));
        }
    }
    Ok(())
}

impl Scenario {
    pub fn parse_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| config_err(e.to_string()))
    }

    /// Reads a TOML scenario, or the resolved scenario stored in a run manifest (`.json`).
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            let m: crate::manifest::Manifest =
                serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            Ok(m.config)
        } else {
            Self::parse_toml(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
        }
    }

    /// Sets `section.key` (or a top-level key) from a TOML literal; bare words are taken as strings.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| config_err(format!("--set {assignment}: expected key=value")))?;
        let (key, raw) = (key.trim(), raw.trim());
        let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(raw.to_string()));

        let mut root = toml::Table::try_from(&*self).map_err(|e| config_err(e.to_string()))?;
        let mut path: Vec<&str> = key.split('.').collect();
        let leaf = path.pop().filter(|s| !s.is_empty()).ok_or_else(|| config_err(format!("--set {assignment}: empty key")))?;
        let mut table = &mut root;
        for part in path {
            let entry = table
                .entry(part.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()));
            table = entry
                .as_table_mut()
                .ok_or_else(|| config_err(format!("--set {assignment}: `{part}` is not a section")))?;
        }
        table.insert(leaf.to_string(), value);
        *self = root
            .try_into()
            .map_err(|e: toml::de::Error| config_err(format!("--set {assignment}: {}", e.message())))?;
        Ok(())
    }

    pub fn stem(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| self.command.map(|c| c.name()).unwrap_or("run").to_string())
    }

    pub fn format(&self) -> Format {
        self.output.as_ref().map(|o| o.format).unwrap_or_default()
    }

    pub fn raster(&self) -> bool {
        self.output.as_ref().is_some_and(|o| o.raster)
    }

    /// Fixes the command, fills in default sections the command uses and validates everything.
    pub fn resolve(mut self, command: CommandKind) -> Result<Self, CliError> {
        if let Some(c) = self.command {
            if c != command {
                return Err(config_err(format!(
                    "command: file is for `{}` but `{}` was requested",
                    c.name(),
                    command.name()
                )));
            }
        }
        self.command = Some(command);
        self.output.get_or_insert_with(Default::default);
        match command {
            CommandKind::Dispersion => {
                self.dispersion.get_or_insert_with(Default::default);
            }
            CommandKind::Scales => {
                self.scales.get_or_insert_with(Default::default);
            }
            CommandKind::Eos => {
                self.eos.get_or_insert_with(Default::default);
            }
            CommandKind::Solve1d => {
                self.boundary.get_or_insert_with(Default::default);
                self.line.get_or_insert_with(Default::default);
            }
            CommandKind::Trajectory => {
                self.boundary.get_or_insert_with(Default::default);
                self.trajectory.get_or_insert_with(Default::default);
            }
            CommandKind::Dipole | CommandKind::Currents => {
                self.boundary.get_or_insert_with(Default::default);
                let grid = self.grid.get_or_insert_with(Default::default);
                if grid.channels.is_none() {
                    let names: &[&str] = if command == CommandKind::Dipole {
                        &["psi", "phi", "n"]
                    } else {
                        &["J", "Jd", "Jt", "E"]
                    };
                    grid.channels = Some(names.iter().map(|s| s.to_string()).collect());
                }
                if command == CommandKind::Currents {
                    self.currents.get_or_insert_with(Default::default);
                }
            }
            CommandKind::Streamlines => {
                self.boundary.get_or_insert_with(Default::default);
                self.streamlines.get_or_insert_with(Default::default);
            }
        }
        self.validate(command)?;
        Ok(self)
    }

    /// Default probe along +x from just outside the right pole to the grid edge.
    pub fn default_probe(&self) -> Option<ProbeSection> {
        let a = self.dipole.as_ref()?.a;
        let g = self.grid.clone().unwrap_or_default();
        Some(ProbeSection {
            from: [a + 1.0, 0.0],
            to: [g.x_max, 0.0],
            samples: probe_samples(),
            channels: probe_channels(),
        })
    }

    pub fn orbital(&self) -> Option<Orbital<f64>> {
        self.orbital.as_ref().and_then(|o| Orbital::new(o.energy).ok())
    }

    fn validate(&self, command: CommandKind) -> Result<(), CliError> {
        if let Some(n) = &self.name {
            check(
                !n.is_empty() && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_'),
                "name",
                "a non-empty file stem of letters, digits, '-' or '_'",
                format!("{n:?}"),
            )?;
        }
        if let Some(u) = &self.units {
            check(u.density > 0.0 && u.density.is_finite(), "units.density", "positive [cm^-3]", u.density)?;
            check(u.temperature >= 0.0 && u.temperature.is_finite(), "units.temperature", "non-negative [K]", u.temperature)?;
        }
        if command.needs_orbital() {
            let needs_energy = !(command == CommandKind::Trajectory
                && self.trajectory.as_ref().is_some_and(|t| t.energies.is_some()));
            match &self.orbital {
                Some(o) => {
                    validate_energy(o.energy, "orbital.energy")?;
                }
                None if needs_energy => return Err(config_err("orbital.energy: missing (orbital energy E > 1 in plasmon units)")),
                None => {}
            }
        }
        if command.needs_dipole() {
            let d = self
                .dipole
                .as_ref()
                .ok_or_else(|| config_err("dipole.a: missing (pole half-separation in plasmon lengths)"))?;
            check(d.a >= 0.0 && d.a.is_finite(), "dipole.a", "non-negative and finite", d.a)?;
            check(d.q != 0.0 && d.q.is_finite(), "dipole.q", "non-zero and finite", d.q)?;
        }
        if let Some(b) = &self.boundary {
            check(b.phi0.is_finite(), "boundary.phi0", "finite", b.phi0)?;
            check(b.psi0.is_finite(), "boundary.psi0", "finite", b.psi0)?;
        }
        match command {
            CommandKind::Dispersion => {
                let d = self.dispersion.as_ref().expect("resolved");
                check(d.k_min > 0.0, "dispersion.k_min", "positive", d.k_min)?;
                check_range(d.k_min, d.k_max, "dispersion", "k_min", "k_max")?;
                check(d.samples >= 2, "dispersion.samples", "at least 2", d.samples)?;
            }
            CommandKind::Scales | CommandKind::Eos => {
                let (s, section) = if command == CommandKind::Scales {
                    (self.scales.as_ref().expect("resolved"), "scales")
                } else {
                    (self.eos.as_ref().expect("resolved"), "eos")
                };
                check(s.n0_min > 0.0 && s.n0_min.is_finite(), &format!("{section}.n0_min"), "a positive density [cm^-3]", s.n0_min)?;
                check(
                    s.n0_max >= s.n0_min && s.n0_max.is_finite(),
                    &format!("{section}.n0_max"),
                    &format!("finite and at least {section}.n0_min = {:e}", s.n0_min),
                    s.n0_max,
                )?;
                check(s.points >= 1, &format!("{section}.points"), "at least 1", s.points)?;
                let t_ok = if command == CommandKind::Eos { s.temperature > 0.0 } else { s.temperature >= 0.0 };
                check(
                    t_ok && s.temperature.is_finite(),
                    &format!("{section}.temperature"),
                    if command == CommandKind::Eos { "positive [K]" } else { "non-negative [K]" },
                    s.temperature,
                )?;
            }
            CommandKind::Solve1d => {
                let l = self.line.as_ref().expect("resolved");
                check_range(l.x_min, l.x_max, "line", "x_min", "x_max")?;
                check(l.samples >= 2, "line.samples", "at least 2", l.samples)?;
            }
            CommandKind::Trajectory => {
                let t = self.trajectory.as_ref().expect("resolved");
                check(t.gamma > 0.0 && t.gamma.is_finite(), "trajectory.gamma", "positive", t.gamma)?;
                check(t.q.is_finite(), "trajectory.q", "finite", t.q)?;
                check(t.x0.is_finite(), "trajectory.x0", "finite", t.x0)?;
                check(!t.speeds.is_empty(), "trajectory.speeds", "a non-empty list", "[]")?;
                for (i, v) in t.speeds.iter().enumerate() {
                    check(v.is_finite(), &format!("trajectory.speeds[{i}]"), "finite", v)?;
                }
                check(t.t_end > 0.0 && t.t_end.is_finite(), "trajectory.t_end", "positive", t.t_end)?;
                check(t.h > 0.0 && t.h.is_finite(), "trajectory.h", "positive", t.h)?;
                check(t.stride >= 1, "trajectory.stride", "at least 1", t.stride)?;
                if let Some(w) = t.window {
                    check(w > 0.0, "trajectory.window", "positive", w)?;
                }
                let energies: Vec<(String, f64)> = match &t.energies {
                    Some(list) => {
                        check(!list.is_empty(), "trajectory.energies", "a non-empty list", "[]")?;
                        list.iter().enumerate().map(|(i, &e)| (format!("trajectory.energies[{i}]"), e)).collect()
                    }
                    None => vec![("orbital.energy".into(), self.orbital.as_ref().expect("checked").energy)],
                };
                for (field, e) in energies {
                    let orb = validate_energy(e, &field)?;
                    let limit = dualwave::dynamics::max_field_step(&orb);
                    check(t.h <= limit, "trajectory.h", &format!("at most 0.1/k2 = {limit:.6} for {field} = {e}"), t.h)?;
                    let span = 10.0 * orb.fast_wavelength();
                    check(
                        t.t_end >= span,
                        "trajectory.t_end",
                        &format!("at least ten fast periods 20pi/k2 = {span:.4} for {field} = {e}"),
                        t.t_end,
                    )?;
                }
            }
            CommandKind::Dipole | CommandKind::Currents => {
                let g = self.grid.as_ref().expect("resolved");
                validate_grid(g)?;
                if let Some(ch) = &g.channels {
                    check(!ch.is_empty(), "grid.channels", "a non-empty list", "[]")?;
                    check_channels(ch, "grid.channels")?;
                }
                if let Some(d) = &self.detector {
                    check_range(d.x_min, d.x_max, "detector", "x_min", "x_max")?;
                    check_range(d.y_min, d.y_max, "detector", "y_min", "y_max")?;
                    check(d.nx >= 1, "detector.nx", "at least 1", d.nx)?;
                    check(d.ny >= 1, "detector.ny", "at least 1", d.ny)?;
                    if let Some(s) = d.subsamples {
                        check(s >= 1, "detector.subsamples", "at least 1", s)?;
                    }
                }
                if let Some(p) = &self.probe {
                    check(
                        p.samples >= dualwave::fieldmaps::MIN_PROBE_SAMPLES,
                        "probe.samples",
                        "at least 256",
                        p.samples,
                    )?;
                    check(p.from != p.to, "probe.to", "different from probe.from", format!("{:?}", p.to))?;
                    check_channels(&p.channels, "probe.channels")?;
                    let inside = |q: [f64; 2]| q[0] >= g.x_min && q[0] <= g.x_max && q[1] >= g.y_min && q[1] <= g.y_max;
                    check(inside(p.from), "probe.from", "inside the grid", format!("{:?}", p.from))?;
                    check(inside(p.to), "probe.to", "inside the grid", format!("{:?}", p.to))?;
                }
                if self.currents.as_ref().is_some_and(|c| c.divergence) {
                    let orb = self.orbital().expect("validated");
                    let spacing = ((g.x_max - g.x_min) / (g.nx - 1) as f64).max((g.y_max - g.y_min) / (g.ny - 1) as f64);
                    let ppw = orb.fast_wavelength() / spacing;
                    check(
                        ppw >= 8.0,
                        "grid.nx",
                        &format!("large enough for 8 points per fast wavelength 2pi/k2 = {:.4} with currents.divergence", orb.fast_wavelength()),
                        format!("{} ({ppw:.2} points)", g.nx),
                    )?;
                }
            }
            CommandKind::Streamlines => {
                let s = self.streamlines.as_ref().expect("resolved");
                check_range(s.x_min, s.x_max, "streamlines", "x_min", "x_max")?;
                check_range(s.y_min, s.y_max, "streamlines", "y_min", "y_max")?;
                check(s.max_steps >= 1, "streamlines.max_steps", "at least 1", s.max_steps)?;
                check(
                    s.ring_count == 0 || (s.ring_radius > 0.0 && s.ring_radius.is_finite()),
                    "streamlines.ring_radius",
                    "positive when ring_count > 0",
                    s.ring_radius,
                )?;
                for (i, p) in s.seeds.iter().enumerate() {
                    check(p[0].is_finite() && p[1].is_finite(), &format!("streamlines.seeds[{i}]"), "finite", format!("{p:?}"))?;
                }
            }
        }
        Ok(())
    }
}

fn validate_energy(e: f64, field: &str) -> Result<Orbital<f64>, CliError> {
    Orbital::new(e).map_err(|_| config_err(format!("{field}: must exceed 1, the band edge in plasmon units (got {e})")))
}

fn validate_grid(g: &GridSection) -> Result<(), CliError> {
    check_range(g.x_min, g.x_max, "grid", "x_min", "x_max")?;
    check_range(g.y_min, g.y_max, "grid", "y_min", "y_max")?;
    check(g.nx >= 16, "grid.nx", "at least 16", g.nx)?;
    check(g.ny >= 16, "grid.ny", "at least 16", g.ny)?;
    check(g.z.is_finite(), "grid.z", "finite", g.z)
}
