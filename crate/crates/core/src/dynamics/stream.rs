use super::bohm::{probability_current, NODE_THRESHOLD};
use crate::error::Error;
use crate::geom::Rect;
use crate::num::Real;
use crate::pseudoforce::{sample_dipole, DipoleConfig, Orbital};
use rayon::prelude::*;

/// Cells closer than this to a pole are masked, and streamlines stop there.
pub const POLE_RADIUS: f64 = 0.05;

/// Field magnitude below which a streamline is considered stagnant.
pub const STAGNATION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample<T> {
    Vector([T; 2]),
    Node,
    Pole,
}

/// Planar vector field for streamline tracing.
pub trait VectorField2<T: Real>: Sync {
    fn sample(&self, p: [T; 2]) -> Sample<T>;
}

impl<T: Real, F: Fn([T; 2]) -> Sample<T> + Sync> VectorField2<T> for F {
    fn sample(&self, p: [T; 2]) -> Sample<T> {
        self(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    DomainExit,
    NodeStagnation,
    StepLimit,
    PoleProximity,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::DomainExit => "domain-exit",
            Termination::NodeStagnation => "node-stagnation",
            Termination::StepLimit => "step-limit",
            Termination::PoleProximity => "pole-proximity",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Streamline<T> {
    pub points: Vec<[T; 2]>,
    pub terminated_by: Termination,
}

impl<T: Real> Streamline<T> {
    /// Cumulative arc length at each point.
    pub fn arc_lengths(&self) -> Vec<T> {
        let mut s = T::zero();
        let mut out = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                let q = self.points[i - 1];
                s += ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            }
            out.push(s);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamOptions<T> {
    /// Largest arc-length step.
    pub max_step: T,
    /// Steps are never refined below this; the error test is waived there.
    pub min_step: T,
    /// Step-doubling position error allowed per step.
    pub tol: T,
    pub max_steps: usize,
}

impl<T: Real> StreamOptions<T> {
    /// max_step = 0.25/k₂ so fringes of the fast mode are resolved.
    pub fn for_orbital(orb: &Orbital<T>) -> Self {
        let max_step = T::lit(0.25) / orb.k2();
        Self {
            max_step,
            min_step: max_step * T::lit(1e-3),
            tol: T::lit(1e-6),
            max_steps: 20_000,
        }
    }
}

fn direction<T: Real, F: VectorField2<T> + ?Sized>(field: &F, p: [T; 2]) -> Result<[T; 2], Termination> {
    match field.sample(p) {
        Sample::Vector(v) => {
            let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
            if !(n >= T::lit(STAGNATION)) {
                Err(Termination::NodeStagnation)
            } else {
                Ok([v[0] / n, v[1] / n])
            }
        }
        Sample::Node => Err(Termination::NodeStagnation),
        Sample::Pole => Err(Termination::PoleProximity),
    }
}

fn rk4<T: Real, F: VectorField2<T> + ?Sized>(field: &F, p: [T; 2], h: T) -> Result<[T; 2], Termination> {
    let half = T::lit(0.5);
    let at = |k: [T; 2], s: T| [p[0] + s * k[0], p[1] + s * k[1]];
    let k1 = direction(field, p)?;
    let k2 = direction(field, at(k1, half * h))?;
    let k3 = direction(field, at(k2, half * h))?;
    let k4 = direction(field, at(k3, h))?;
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);
    Ok([
        p[0] + sixth * (k1[0] + two * k2[0] + two * k3[0] + k4[0]),
        p[1] + sixth * (k1[1] + two * k2[1] + two * k3[1] + k4[1]),
    ])
}

/// Traces one streamline of the normalized direction field from `seed`.
pub fn trace_streamline<T: Real, F: VectorField2<T> + ?Sized>(
    field: &F,
    seed: [T; 2],
    domain: &Rect<T>,
    opts: &StreamOptions<T>,
) -> Streamline<T> {
    let mut points = vec![seed];
    if !domain.contains(seed) {
        return Streamline {
            points,
            terminated_by: Termination::DomainExit,
        };
    }
    let half = T::lit(0.5);
    let mut p = seed;
    let mut h = opts.max_step;
    let mut steps = 0;
    let terminated_by = loop {
        if steps >= opts.max_steps {
            break Termination::StepLimit;
        }
        let attempt = rk4(field, p, h).and_then(|full| {
            let mid = rk4(field, p, half * h)?;
            let fine = rk4(field, mid, half * h)?;
            Ok((full, fine))
        });
        let (full, fine) = match attempt {
            Ok(pair) => pair,
            Err(reason) => {
                if h > opts.min_step {
                    h = (half * h).max(opts.min_step);
                    continue;
                }
                break reason;
            }
        };
        let err = ((full[0] - fine[0]).powi(2) + (full[1] - fine[1]).powi(2)).sqrt();
        if err > opts.tol && h > opts.min_step {
            h = (half * h).max(opts.min_step);
            continue;
        }
        if !domain.contains(fine) {
            points.push(domain.clip(p, fine));
            break Termination::DomainExit;
        }
        // On a unit-speed field a sound step covers about h. A short chord, or a
        // reversed direction across the step, means it jumped a stagnation point.
        let chord = ((fine[0] - p[0]).powi(2) + (fine[1] - p[1]).powi(2)).sqrt();
        let reversed = match (direction(field, p), direction(field, fine)) {
            (Ok(a), Ok(b)) => a[0] * b[0] + a[1] * b[1] < T::zero() || chord < half * h,
            (_, Err(reason)) => {
                if h > opts.min_step {
                    h = (half * h).max(opts.min_step);
                    continue;
                }
                break reason;
            }
            (Err(reason), _) => break reason,
        };
        if reversed {
            if h > opts.min_step {
                h = (half * h).max(opts.min_step);
                continue;
            }
            break Termination::NodeStagnation;
        }
        steps += 1;
        points.push(fine);
        p = fine;
        if err < opts.tol * T::lit(0.1) {
            h = (h * T::lit(1.5)).min(opts.max_step);
        }
    };
    Streamline { points, terminated_by }
}

/// Traces every seed independently; output order follows `seeds`.
pub fn trace_streamlines<T: Real, F: VectorField2<T> + ?Sized>(
    field: &F,
    seeds: &[[T; 2]],
    domain: &Rect<T>,
    opts: &StreamOptions<T>,
) -> Vec<Streamline<T>> {
    seeds
        .par_iter()
        .map(|&s| trace_streamline(field, s, domain, opts))
        .collect()
}

/// Which vector built from the two-pole slice to trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowKind {
    /// J = Im(Ψ*∇Ψ).
    Probability,
    /// J_d = −Im(Φ*∇Φ).
    Charge,
    /// J + J_d.
    Total,
    /// Re(−∇Φ).
    Electric,
    /// J/|Ψ|².
    Bohmian,
}

/// z = 0 slice of a two-pole field viewed as a planar vector field.
#[derive(Debug, Clone, Copy)]
pub struct DipoleFlow<T> {
    pub cfg: DipoleConfig<T>,
    pub kind: FlowKind,
}

impl<T: Real> DipoleFlow<T> {
    pub fn new(cfg: DipoleConfig<T>, kind: FlowKind) -> Self {
        Self { cfg, kind }
    }
}

impl<T: Real> VectorField2<T> for DipoleFlow<T> {
    fn sample(&self, p: [T; 2]) -> Sample<T> {
        let p3 = [p[0], p[1], T::zero()];
        if self.cfg.pole_distance(p3) < T::lit(POLE_RADIUS) {
            return Sample::Pole;
        }
        if self.kind == FlowKind::Bohmian {
            return match probability_current(&self.cfg, p) {
                Ok((_, n)) if !(n >= T::lit(NODE_THRESHOLD)) => Sample::Node,
                Ok((j, n)) => Sample::Vector([j[0] / n, j[1] / n]),
                Err(Error::Singularity { .. }) => Sample::Pole,
                Err(_) => Sample::Node,
            };
        }
        let s = match sample_dipole(p3, &self.cfg) {
            Ok(s) => s,
            Err(_) => return Sample::Pole,
        };
        let j = |f: num_complex::Complex<T>, g: &[num_complex::Complex<T>; 3], sign: T| {
            let c = f.conj();
            [sign * (c * g[0]).im, sign * (c * g[1]).im]
        };
        let v = match self.kind {
            FlowKind::Probability => j(s.psi, &s.grad_psi, T::one()),
            FlowKind::Charge => j(s.phi, &s.grad_phi, -T::one()),
            FlowKind::Total => {
                let a = j(s.psi, &s.grad_psi, T::one());
                let b = j(s.phi, &s.grad_phi, -T::one());
                [a[0] + b[0], a[1] + b[1]]
            }
            FlowKind::Electric => [-s.grad_phi[0].re, -s.grad_phi[1].re],
            FlowKind::Bohmian => unreachable!(),
        };
        Sample::Vector(v)
    }
}
