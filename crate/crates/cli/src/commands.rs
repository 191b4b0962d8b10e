//! One function per subcommand. Each turns a resolved [`Scenario`] into
//! tables written through a [`Sink`] and returns the derived quantities that
//! go into the manifest.

use crate::config::{CommandKind, ProbeSection, Scenario};
use crate::error::CliError;
use crate::output::Sink;
use crate::table::{Cell, Table};
use dualwave::dynamics::{
    classify_trajectory, integrate_field_trajectory, trace_streamlines, DipoleFlow, Motion, StreamOptions, TestParticle,
};
use dualwave::eos::{mu_of_density, pressure_of_mu};
use dualwave::fieldmaps::{
    detector_subsamples, evaluate_magnitudes, fringe_contrast, fringe_spectrum, Channel, Current, FieldGrid,
};
use dualwave::geom::{Rect, Segment};
use dualwave::num::{linspace, logspace};
use dualwave::pseudoforce::{eval_dispersion, free_dispersion, BoundaryConstants, DipoleConfig, LineSolution, Orbital};
use dualwave::PhysicalScales;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs `sc` (already resolved) and returns the manifest's derived block.
pub fn execute(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let command = sc.command.expect("resolved scenario has a command");
    let mut derived = serde_json::Map::new();
    if let Some(orb) = sc.orbital() {
        derived.insert("orbital".into(), orbital_json(&orb));
    }
    if let Some(u) = &sc.units {
        let s = PhysicalScales::derive(u.density, u.temperature)?;
        derived.insert("units".into(), scales_json(&s));
    }
    let extra = match command {
        CommandKind::Dispersion => dispersion(sc, sink)?,
        CommandKind::Scales => scales(sc, sink)?,
        CommandKind::Eos => eos(sc, sink)?,
        CommandKind::Solve1d => solve1d(sc, sink)?,
        CommandKind::Trajectory => trajectory(sc, sink)?,
        CommandKind::Dipole | CommandKind::Currents => field_maps(sc, sink)?,
        CommandKind::Streamlines => streamlines(sc, sink)?,
    };
    if let Value::Object(m) = extra {
        derived.extend(m);
    }
    Ok(Value::Object(derived))
}

fn orbital_json(orb: &Orbital<f64>) -> Value {
    json!({
        "energy": orb.energy(),
        "alpha": orb.alpha(),
        "k1": orb.k1(),
        "k2": orb.k2(),
        "slow_wavelength": orb.slow_wavelength(),
        "fast_wavelength": orb.fast_wavelength(),
    })
}

fn scales_json(s: &PhysicalScales) -> Value {
    json!({
        "n0_cm3": s.density,
        "temperature_K": s.temperature,
        "E_p_eV": s.plasmon_energy,
        "omega_p_rad_s": s.plasma_frequency,
        "k_p_cm": s.wavenumber,
        "l_p_nm": s.length,
        "v_p_cm_s": s.speed,
    })
}

/// Header block shared by every table of a run.
fn header(sc: &Scenario, table: &mut Table) {
    table.meta("generator", format!("dualwave {VERSION}"));
    table.meta("command", sc.command.map(|c| c.name()).unwrap_or("?"));
    table.meta("name", sc.stem());
    if let Some(note) = &sc.note {
        table.meta("note", note);
    }
    if let Some(orb) = sc.orbital() {
        table.meta("E", orb.energy());
        table.meta("k1", orb.k1());
        table.meta("k2", orb.k2());
    }
    table.meta("config", serde_json::to_string(sc).expect("scenario serializes"));
}

fn boundary(sc: &Scenario) -> BoundaryConstants<f64> {
    let b = sc.boundary.clone().unwrap_or_default();
    BoundaryConstants::new(b.phi0, b.psi0)
}

fn dispersion(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let d = sc.dispersion.as_ref().expect("resolved");
    let mut t = Table::new(["k [k_p]", "E [E_p]", "E_free [E_p]"]);
    header(sc, &mut t);
    for k in linspace(d.k_min, d.k_max, d.samples) {
        t.push(vec![k.into(), eval_dispersion(k)?.into(), free_dispersion(k).into()]);
    }
    sink.table("", &t)?;
    Ok(json!({ "minimum": { "k": 1.0, "E": 1.0 } }))
}

fn scales(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let s = sc.scales.as_ref().expect("resolved");
    let mut t = Table::new([
        "n0 [cm^-3]",
        "T [K]",
        "E_p [eV]",
        "omega_p [rad/s]",
        "k_p [cm^-1]",
        "l_p [nm]",
        "v_p [cm/s]",
    ]);
    header(sc, &mut t);
    for n0 in logspace(s.n0_min, s.n0_max, s.points) {
        let p = PhysicalScales::derive(n0, s.temperature)?;
        t.push(vec![
            n0.into(),
            s.temperature.into(),
            p.plasmon_energy.into(),
            p.plasma_frequency.into(),
            p.wavenumber.into(),
            p.length.into(),
            p.speed.into(),
        ]);
    }
    sink.table("", &t)?;
    Ok(json!({}))
}

fn eos(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let s = sc.eos.as_ref().expect("resolved");
    let mut t = Table::new(["n0 [cm^-3]", "T [K]", "mu [eV]", "P [dyn/cm^2]", "E_p [eV]", "l_p [nm]"]);
    header(sc, &mut t);
    for n0 in logspace(s.n0_min, s.n0_max, s.points) {
        let mu = mu_of_density(n0, s.temperature)?;
        let p = pressure_of_mu(mu, s.temperature)?;
        let scales = PhysicalScales::derive(n0, s.temperature)?;
        t.push(vec![
            n0.into(),
            s.temperature.into(),
            mu.into(),
            p.into(),
            scales.plasmon_energy.into(),
            scales.length.into(),
        ]);
    }
    sink.table("", &t)?;
    Ok(json!({}))
}

fn solve1d(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let l = sc.line.as_ref().expect("resolved");
    let orb = sc.orbital().expect("validated");
    let sol = LineSolution::new(boundary(sc), orb);
    let mut t = Table::new([
        "x [l_p]",
        "Phi [E_p]",
        "Psi [1]",
        "n [n0]",
        "dPhi/dx [E_p/l_p]",
        "dPsi/dx [1/l_p]",
    ]);
    header(sc, &mut t);
    for x in linspace(l.x_min, l.x_max, l.samples) {
        let (phi, psi) = sol.eval(x);
        let (dphi, dpsi) = sol.gradient(x);
        t.push(vec![x.into(), phi.into(), psi.into(), (psi * psi).into(), dphi.into(), dpsi.into()]);
    }
    sink.table("", &t)?;
    let m = sol.amplitudes;
    Ok(json!({ "amplitudes": { "phi": m.phi, "psi": m.psi } }))
}

fn trajectory(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let tr = sc.trajectory.as_ref().expect("resolved");
    let energies = match &tr.energies {
        Some(list) => list.clone(),
        None => vec![sc.orbital.as_ref().expect("validated").energy],
    };
    let bc = boundary(sc);
    let mut paths = Table::new(["run", "E [E_p]", "v0 [v_p]", "t [1/omega_p]", "x [l_p]", "v [v_p]"]);
    let mut summary = Table::new([
        "run",
        "E [E_p]",
        "v0 [v_p]",
        "energy_drift [1]",
        "excursion [l_p]",
        "window [l_p]",
        "motion",
    ]);
    header(sc, &mut paths);
    header(sc, &mut summary);
    let mut run = 0usize;
    let mut runs = Vec::new();
    for &e in &energies {
        let orb = Orbital::new(e)?;
        let window = tr.window.unwrap_or_else(|| orb.slow_wavelength());
        for &v0 in &tr.speeds {
            let particle = TestParticle::new(tr.gamma, tr.q, tr.x0, v0)?;
            let traj = integrate_field_trajectory(particle, bc, &orb, tr.t_end, tr.h)?;
            let motion = classify_trajectory(&traj, window)?;
            let last = traj.len() - 1;
            for i in (0..traj.len()).filter(|&i| i % tr.stride == 0 || i == last) {
                paths.push(vec![
                    run.into(),
                    e.into(),
                    v0.into(),
                    traj.times[i].into(),
                    traj.positions[i].into(),
                    traj.velocities[i].into(),
                ]);
            }
            let label = match motion {
                Motion::Localized => "localized",
                Motion::Propagating => "propagating",
            };
            summary.push(vec![
                run.into(),
                e.into(),
                v0.into(),
                traj.energy_drift.into(),
                traj.excursion().into(),
                window.into(),
                label.into(),
            ]);
            runs.push(json!({ "run": run, "E": e, "v0": v0, "energy_drift": traj.energy_drift, "motion": label }));
            run += 1;
        }
    }
    sink.table("", &paths)?;
    sink.table("summary", &summary)?;
    Ok(json!({ "runs": runs }))
}

fn dipole_config(sc: &Scenario) -> Result<DipoleConfig<f64>, CliError> {
    let d = sc.dipole.as_ref().expect("validated");
    let orb = sc.orbital().expect("validated");
    Ok(DipoleConfig::new(orb, d.a, d.q)?
        .with_branch(d.branch.into())
        .with_boundary(boundary(sc)))
}

fn channel_columns(c: Channel) -> Vec<String> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
    match c {
        Channel::Psi => s(&["Re_psi [1]", "Im_psi [1]", "abs_psi [1]"]),
        Channel::Phi => s(&["Re_phi [E_p]", "Im_phi [E_p]", "abs_phi [E_p]"]),
        Channel::Density => s(&["n [n0]"]),
        Channel::J => s(&["Jx [n0 v_p]", "Jy [n0 v_p]", "abs_J [n0 v_p]"]),
        Channel::Jd => s(&["Jdx [n0 v_p]", "Jdy [n0 v_p]", "abs_Jd [n0 v_p]"]),
        Channel::Jt => s(&["Jtx [n0 v_p]", "Jty [n0 v_p]", "abs_Jt [n0 v_p]"]),
        Channel::Efield => s(&[
            "Re_Ex [E_p/l_p]",
            "Im_Ex [E_p/l_p]",
            "Re_Ey [E_p/l_p]",
            "Im_Ey [E_p/l_p]",
            "abs_E [E_p/l_p]",
        ]),
    }
}

fn channel_cells(g: &FieldGrid<f64>, c: Channel, k: usize, row: &mut Vec<Cell>) {
    let vec2 = |v: [f64; 2], row: &mut Vec<Cell>| {
        row.extend([v[0], v[1], dualwave::fieldmaps::norm2(v)].map(Cell::Num));
    };
    match c {
        Channel::Psi => row.extend([g.psi[k].re, g.psi[k].im, g.psi[k].norm()].map(Cell::Num)),
        Channel::Phi => row.extend([g.phi[k].re, g.phi[k].im, g.phi[k].norm()].map(Cell::Num)),
        Channel::Density => row.push(g.density[k].into()),
        Channel::J => vec2(g.j[k], row),
        Channel::Jd => vec2(g.jd[k], row),
        Channel::Jt => vec2(g.jt[k], row),
        Channel::Efield => {
            let e = g.efield[k];
            row.extend([e[0].re, e[0].im, e[1].re, e[1].im, dualwave::fieldmaps::complex_norm(&e)].map(Cell::Num));
        }
    }
}

fn parse_channels(names: &[String]) -> Vec<Channel> {
    names.iter().filter_map(|n| Channel::parse(n)).collect()
}

fn field_maps(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let cfg = dipole_config(sc)?;
    let g = sc.grid.as_ref().expect("resolved");
    let channels = parse_channels(g.channels.as_deref().unwrap_or_default());
    let rect = Rect::new(g.x_min, g.x_max, g.y_min, g.y_max)?;
    let grid = dualwave::fieldmaps::evaluate_grid_on(&cfg, dualwave::fieldmaps::Lattice::new(rect, g.nx, g.ny)?, g.z)?;
    let with_div = sc.currents.as_ref().is_some_and(|c| c.divergence);

    let mut columns = vec!["x [l_p]".to_string(), "y [l_p]".to_string()];
    for &c in &channels {
        columns.extend(channel_columns(c));
    }
    let divergences = if with_div {
        columns.extend(
            ["div_J [n0 v_p/l_p]", "div_Jd [n0 v_p/l_p]", "div_Jt [n0 v_p/l_p]", "source [n0 v_p/l_p]"]
                .map(String::from),
        );
        Some([
            grid.divergence(Current::J)?,
            grid.divergence(Current::Jd)?,
            grid.divergence(Current::Jt)?,
            grid.current_source(),
        ])
    } else {
        None
    };
    let mut t = Table::new(columns);
    header(sc, &mut t);
    t.meta("masked", "cells within 0.05 l_p of a pole are empty");
    let l = grid.lattice;
    for j in 0..l.ny {
        for i in 0..l.nx {
            let k = l.index(i, j);
            let mut row = Vec::with_capacity(t.columns.len());
            row.push(l.x(i).into());
            row.push(l.y(j).into());
            for &c in &channels {
                channel_cells(&grid, c, k, &mut row);
            }
            if let Some(d) = &divergences {
                row.extend(d.iter().map(|v| Cell::Num(v[k])));
            }
            t.push(row);
        }
    }
    sink.table("", &t)?;
    for &c in &channels {
        sink.raster(c.name(), l.nx, l.ny, &grid.magnitude(c))?;
    }

    let mut derived = serde_json::Map::new();
    derived.insert("masked_cells".into(), json!(grid.mask.iter().filter(|&&m| m).count()));
    if let Some(d) = &divergences {
        let max_abs = |v: &[f64]| v.iter().filter(|x| x.is_finite()).fold(0.0_f64, |m, x| m.max(x.abs()));
        derived.insert(
            "max_abs_divergence".into(),
            json!({ "J": max_abs(&d[0]), "Jd": max_abs(&d[1]), "Jt": max_abs(&d[2]), "source": max_abs(&d[3]) }),
        );
    }
    if let Some(probe) = &sc.probe {
        derived.insert("spectrum".into(), spectrum(sc, &grid, probe, sink)?);
    }
    if sc.detector.is_some() {
        derived.insert("detector".into(), detector(sc, &cfg, sink)?);
    }
    Ok(Value::Object(derived))
}

fn spectrum(sc: &Scenario, grid: &FieldGrid<f64>, probe: &ProbeSection, sink: &mut Sink) -> Result<Value, CliError> {
    let seg = Segment::new(probe.from, probe.to, probe.samples);
    let orb = grid.orbital;
    let mut t = Table::new([
        "channel",
        "peak [1/l_p]",
        "bin_width [1/l_p]",
        "peak_bin",
        "k1 [1/l_p]",
        "k2 [1/l_p]",
    ]);
    header(sc, &mut t);
    t.meta("probe", format!("{:?} -> {:?}, {} samples", probe.from, probe.to, probe.samples));
    let mut out = serde_json::Map::new();
    for c in parse_channels(&probe.channels) {
        let s = fringe_spectrum(grid, c, &seg)?;
        t.push(vec![
            c.name().into(),
            s.peak.into(),
            s.bin_width.into(),
            Cell::Int(s.peak_bin as i64),
            orb.k1().into(),
            orb.k2().into(),
        ]);
        out.insert(c.name().into(), json!({ "peak": s.peak, "bin_width": s.bin_width }));
    }
    sink.table("spectrum", &t)?;
    Ok(Value::Object(out))
}

fn detector(sc: &Scenario, cfg: &DipoleConfig<f64>, sink: &mut Sink) -> Result<Value, CliError> {
    let d = sc.detector.as_ref().expect("checked");
    let rect = Rect::new(d.x_min, d.x_max, d.y_min, d.y_max)?;
    let pixel = (rect.width() / d.nx as f64).max(rect.height() / d.ny as f64);
    let sub = d.subsamples.unwrap_or_else(|| detector_subsamples(&cfg.orbital, pixel));
    let m = evaluate_magnitudes(cfg, rect, d.nx, d.ny, sub)?;

    let mut strip = Table::new(["row", "x [l_p]", "y [l_p]", "abs_phi [E_p]", "abs_psi [1]"]);
    let mut contrast = Table::new(["row", "y [l_p]", "contrast_phi [1]", "contrast_psi [1]"]);
    header(sc, &mut strip);
    header(sc, &mut contrast);
    strip.meta("subsamples", sub);
    contrast.meta("subsamples", sub);
    let mut rows = Vec::new();
    for j in 0..m.ny {
        for i in 0..m.nx {
            strip.push(vec![j.into(), m.x(i).into(), m.y(j).into(), m.phi_row(j)[i].into(), m.psi_row(j)[i].into()]);
        }
        let cf = fringe_contrast(m.phi_row(j))?;
        let cp = fringe_contrast(m.psi_row(j))?;
        contrast.push(vec![j.into(), m.y(j).into(), cf.into(), cp.into()]);
        rows.push(json!({ "y": m.y(j), "phi": cf, "psi": cp }));
    }
    sink.table("detector", &strip)?;
    sink.table("contrast", &contrast)?;
    Ok(json!({ "subsamples": sub, "contrast": rows }))
}

fn streamlines(sc: &Scenario, sink: &mut Sink) -> Result<Value, CliError> {
    let s = sc.streamlines.as_ref().expect("resolved");
    let cfg = dipole_config(sc)?;
    let domain = Rect::new(s.x_min, s.x_max, s.y_min, s.y_max)?;
    let mut seeds = s.seeds.clone();
    if s.ring_count > 0 {
        for pole in cfg.poles() {
            for i in 0..s.ring_count {
                let th = std::f64::consts::TAU * (i as f64 + 0.5) / s.ring_count as f64;
                seeds.push([pole[0] + s.ring_radius * th.cos(), pole[1] + s.ring_radius * th.sin()]);
            }
        }
    }
    let mut opts = StreamOptions::for_orbital(&cfg.orbital);
    opts.max_steps = s.max_steps;
    let lines = trace_streamlines(&DipoleFlow::new(cfg, s.flow.into()), &seeds, &domain, &opts);

    let mut poly = Table::new(["id", "s [l_p]", "x [l_p]", "y [l_p]"]);
    let mut summary = Table::new(["id", "seed_x [l_p]", "seed_y [l_p]", "points", "length [l_p]", "terminated_by"]);
    header(sc, &mut poly);
    header(sc, &mut summary);
    for (id, (line, seed)) in lines.iter().zip(&seeds).enumerate() {
        let arc = line.arc_lengths();
        for (p, s) in line.points.iter().zip(&arc) {
            poly.push(vec![id.into(), (*s).into(), p[0].into(), p[1].into()]);
        }
        summary.push(vec![
            id.into(),
            seed[0].into(),
            seed[1].into(),
            line.points.len().into(),
            arc.last().copied().unwrap_or(0.0).into(),
            line.terminated_by.as_str().into(),
        ]);
    }
    sink.table("", &poly)?;
    sink.table("seeds", &summary)?;
    Ok(json!({ "streamlines": lines.len(), "max_step": opts.max_step }))
}
