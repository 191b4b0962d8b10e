use dualwave::dynamics::*;
use dualwave::geom::Rect;
use dualwave::pseudoforce::*;
use dualwave::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn electron_run(e: f64, v0: f64, t_end: f64, h: f64) -> Trajectory<f64> {
    let orb = Orbital::new(e).unwrap();
    integrate_field_trajectory(TestParticle::electron(0.0, v0), BoundaryConstants::unit(), &orb, t_end, h).unwrap()
}

#[test]
fn energy_drift_is_small_and_second_order() {
    let coarse = electron_run(2.0, 0.82, 200.0, 1e-3);
    assert!(coarse.energy_drift < 1e-6, "{:e}", coarse.energy_drift);
    let fine = electron_run(2.0, 0.82, 200.0, 5e-4);
    let ratio = coarse.energy_drift / fine.energy_drift;
    assert!((3.0..=5.0).contains(&ratio), "{ratio}");
}

#[test]
fn integration_is_time_reversible() {
    let orb = Orbital::new(2.0).unwrap();
    let bc = BoundaryConstants::unit();
    let fwd = integrate_field_trajectory(TestParticle::electron(0.3_f64, 0.9), bc, &orb, 50.0, 1e-3).unwrap();
    let (x1, v1) = (*fwd.positions.last().unwrap(), *fwd.velocities.last().unwrap());
    let back = integrate_field_trajectory(TestParticle::electron(x1, -v1), bc, &orb, 50.0, 1e-3).unwrap();
    let x_end = *back.positions.last().unwrap();
    assert!((x_end - 0.3).abs() < 1e-6, "{x_end}");
    assert!((back.velocities.last().unwrap() + 0.9).abs() < 1e-6);
}

#[test]
fn figure_two_speeds_are_localized() {
    let orb = Orbital::new(2.0).unwrap();
    for v0 in [0.82, 0.85] {
        let t = electron_run(2.0, v0, 200.0, 1e-3);
        assert_eq!(classify_trajectory(&t, orb.slow_wavelength()).unwrap(), Motion::Localized, "v0 = {v0}");
    }
}

/// First x ≥ 0 where QΦ reaches the total energy, scanning up to `limit`.
fn turning_point(sol: &LineSolution<f64>, energy: f64, limit: f64) -> Option<f64> {
    let n = 200_000;
    (0..=n).map(|i| limit * i as f64 / n as f64).find(|&x| sol.eval(x).0 >= energy)
}

/// Φ is even and x0 = 0, so the motion is confined to [−x_r, x_r] whenever a
/// turning point x_r exists; the excursion is then 2x_r.
#[test]
fn classifier_agrees_with_energy_barrier() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let bc = BoundaryConstants::unit();
    let mut checked = 0;
    let mut seen = [0usize; 2];
    while checked < 50 {
        let e = rng.random_range(1.5..6.0);
        let v0: f64 = rng.random_range(0.0..2.5);
        let orb = Orbital::new(e).unwrap();
        let sol = LineSolution::new(bc, orb);
        let window = orb.slow_wavelength();
        let energy = 0.5 * v0 * v0 + sol.eval(0.0).0;

        // Skip samples balanced on a barrier top or on the window edge.
        let xs = (0..=20_000).map(|i| 0.5 * window * i as f64 / 20_000.0);
        let peak = xs.map(|x| sol.eval(x).0).fold(f64::MIN, f64::max);
        if (peak - energy).abs() < 0.01 * energy.abs() {
            continue;
        }
        let expected = match turning_point(&sol, energy, window) {
            Some(xr) if (2.0 * xr - window).abs() < 0.05 * window => continue,
            Some(xr) if 2.0 * xr < window => Motion::Localized,
            _ => Motion::Propagating,
        };
        let traj = integrate_field_trajectory(TestParticle::electron(0.0, v0), bc, &orb, 400.0, 1e-2).unwrap();
        let got = classify_trajectory(&traj, window).unwrap();
        assert_eq!(got, expected, "E = {e}, v0 = {v0}");
        seen[(expected == Motion::Localized) as usize] += 1;
        checked += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn unit_speed_localizes_only_on_low_orbitals() {
    let motion = |e: f64| {
        let t = electron_run(e, 1.0, 200.0, 1e-3);
        classify_trajectory(&t, Orbital::new(e).unwrap().slow_wavelength()).unwrap()
    };
    assert_eq!(motion(1.1), Motion::Localized);
    assert_eq!(motion(2.0), Motion::Propagating);
    assert_eq!(motion(4.0), Motion::Propagating);
}

#[test]
fn trajectories_depend_on_particle_properties() {
    let orb = Orbital::new(2.0).unwrap();
    let bc = BoundaryConstants::unit();
    let a: Trajectory<f64> = integrate_field_trajectory(TestParticle::new(1.0, 1.0, 0.0, 0.9).unwrap(), bc, &orb, 50.0, 1e-3).unwrap();
    let b: Trajectory<f64> = integrate_field_trajectory(TestParticle::new(3.0, 1.0, 0.0, 0.9).unwrap(), bc, &orb, 50.0, 1e-3).unwrap();
    let gap = a.positions.iter().zip(&b.positions).map(|(x, y)| (x - y).abs()).fold(0.0_f64, f64::max);
    assert!(gap > 0.1);
}

fn dipole(q: f64) -> DipoleConfig<f64> {
    DipoleConfig::new(Orbital::new(20.0).unwrap(), 3.0, q).unwrap()
}

#[test]
fn bohmian_velocity_equals_log_gradient() {
    let cfg = dipole(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 100 {
        let p: [f64; 2] = [rng.random_range(-15.0..15.0), rng.random_range(-15.0..15.0)];
        let v = match bohmian_velocity(&cfg, p) {
            Ok(v) => v,
            Err(Error::Node { .. }) | Err(Error::Singularity { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let (_, psi) = eval_dipole([p[0], p[1], 0.0], &cfg).unwrap();
        let (_, grad) = eval_dipole_gradient([p[0], p[1], 0.0], &cfg).unwrap();
        for c in 0..2 {
            let w = (grad[c] / psi).im;
            assert!((v[c] - w).abs() <= 1e-10 * (1.0 + w.abs()), "{p:?}: {} vs {w}", v[c]);
        }
        checked += 1;
    }
}

#[test]
fn single_pole_flow_is_radially_outward() {
    let cfg = DipoleConfig::new(Orbital::new(2.0).unwrap(), 0.0, 1.0).unwrap();
    for (i, r) in [0.4, 1.3, 2.9, 7.7, 15.0].into_iter().enumerate() {
        let th = 0.7 * i as f64 + 0.2;
        let p = [r * th.cos(), r * th.sin()];
        let v = bohmian_velocity(&cfg, p).unwrap();
        let radial = (v[0] * p[0] + v[1] * p[1]) / r;
        let cross = (v[0] * p[1] - v[1] * p[0]) / r;
        assert!(radial > 0.0, "r = {r}");
        assert!(cross.abs() < 1e-12 * radial.abs().max(1.0));
    }
    let flipped = cfg.with_branch(Branch::Incoming);
    let v = bohmian_velocity(&flipped, [1.0, 1.0]).unwrap();
    assert!(v[0] < 0.0 && v[1] < 0.0);
}

#[test]
fn nodes_are_reported() {
    // The 1D solution with Φ₀ = Ψ₀ = 0 vanishes identically.
    let sol = LineSolution::new(BoundaryConstants::new(0.0, 0.0), Orbital::new(2.0).unwrap());
    assert!(matches!(bohmian_velocity(&sol, [0.5, 0.0]), Err(Error::Node { .. })));
}

fn stream_setup(q: f64) -> (DipoleFlow<f64>, Rect<f64>, StreamOptions<f64>) {
    let cfg = dipole(q);
    let opts = StreamOptions::for_orbital(&cfg.orbital);
    (DipoleFlow::new(cfg, FlowKind::Bohmian), Rect::square(20.0).unwrap(), opts)
}

fn seeds() -> Vec<[f64; 2]> {
    (0..12).map(|i| [-0.9 + 0.15 * i as f64 + 0.01, 2.0]).collect()
}

#[test]
fn mirrored_seeds_give_mirrored_streamlines() {
    let (field, domain, opts) = stream_setup(1.0);
    let s: Vec<[f64; 2]> = vec![[4.1, 1.3], [5.5, -2.2], [2.2, 6.0]];
    let m: Vec<[f64; 2]> = s.iter().map(|p| [-p[0], p[1]]).collect();
    let a = trace_streamlines(&field, &s, &domain, &opts);
    let b = trace_streamlines(&field, &m, &domain, &opts);
    for (la, lb) in a.iter().zip(&b) {
        assert_eq!(la.terminated_by, lb.terminated_by);
        // Compare the first stretch point by point; rounding in the two pole
        // sums is amplified only near the end of long lines.
        let n = la.points.len().min(lb.points.len()).min(200);
        for k in 0..n {
            let (p, q) = (la.points[k], lb.points[k]);
            assert!((p[0] + q[0]).abs() < 1e-6 && (p[1] - q[1]).abs() < 1e-6, "{k}: {p:?} {q:?}");
        }
    }
}

fn segments_cross(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let d1 = orient(b[0], b[1], a[0]);
    let d2 = orient(b[0], b[1], a[1]);
    let d3 = orient(a[0], a[1], b[0]);
    let d4 = orient(a[0], a[1], b[1]);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

#[test]
fn distinct_streamlines_do_not_cross() {
    let (field, domain, opts) = stream_setup(1.0);
    let lines = trace_streamlines(&field, &seeds(), &domain, &opts);
    // Lines may merge into a common sink; only crossings away from line ends count.
    let tail = 5;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i].points, &lines[j].points);
            for sa in a.windows(2).take(a.len().saturating_sub(tail)) {
                for sb in b.windows(2).take(b.len().saturating_sub(tail)) {
                    assert!(!segments_cross([sa[0], sa[1]], [sb[0], sb[1]]), "lines {i} and {j} cross");
                }
            }
        }
    }
}

#[test]
fn bohmian_streamlines_ignore_the_pole_charge() {
    let (f1, domain, opts) = stream_setup(1.0);
    let (f3, _, _) = stream_setup(3.0);
    let a = trace_streamlines(&f1, &seeds(), &domain, &opts);
    let b = trace_streamlines(&f3, &seeds(), &domain, &opts);
    for (la, lb) in a.iter().zip(&b) {
        let n = la.points.len().min(lb.points.len()).min(200);
        for k in 0..n {
            let (p, q) = (la.points[k], lb.points[k]);
            assert!((p[0] - q[0]).abs() < 1e-6 && (p[1] - q[1]).abs() < 1e-6);
        }
    }
}

#[test]
fn streamline_steps_respect_the_cap() {
    let (field, domain, opts) = stream_setup(1.0);
    for line in trace_streamlines(&field, &seeds(), &domain, &opts) {
        for w in line.points.windows(2) {
            let d = ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
            assert!(d <= opts.max_step * (1.0 + 1e-6), "{d}");
        }
    }
}

#[test]
fn tracing_is_deterministic() {
    let (field, domain, opts) = stream_setup(1.0);
    let a = trace_streamlines(&field, &seeds(), &domain, &opts);
    let b = trace_streamlines(&field, &seeds(), &domain, &opts);
    assert_eq!(a, b);
}
