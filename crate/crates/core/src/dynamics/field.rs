use crate::error::{require, Error, Result};
use crate::num::Real;
use crate::pseudoforce::{BoundaryConstants, LineSolution, Orbital};

/// Test charge moving in the 1D potential Φ(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestParticle<T> {
    /// Mass in electron masses.
    pub gamma: T,
    /// Charge in electron charges.
    pub q: T,
    pub x0: T,
    pub v0: T,
}

impl<T: Real> TestParticle<T> {
    pub fn new(gamma: T, q: T, x0: T, v0: T) -> Result<Self> {
        require(gamma > T::zero() && gamma.is_finite(), "mass ratio Gamma", "positive", gamma.as_f64())?;
        require(q.is_finite(), "charge ratio Q", "finite", q.as_f64())?;
        require(x0.is_finite(), "initial position x0", "finite", x0.as_f64())?;
        require(v0.is_finite(), "initial speed v0", "finite", v0.as_f64())?;
        Ok(Self { gamma, q, x0, v0 })
    }

    /// Γ = Q = 1 starting at `x0` with speed `v0`.
    pub fn electron(x0: T, v0: T) -> Self {
        Self {
            gamma: T::one(),
            q: T::one(),
            x0,
            v0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub positions: Vec<T>,
    pub velocities: Vec<T>,
    /// max |H(t) − H(0)| / |H(0)| with H = Γv²/2 + QΦ(x).
    pub energy_drift: T,
    /// 2π/k₂ of the orbital the trajectory was integrated in.
    pub fast_period: T,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn duration(&self) -> T {
        match (self.times.first(), self.times.last()) {
            (Some(&a), Some(&b)) => b - a,
            _ => T::zero(),
        }
    }

    /// max x − min x.
    pub fn excursion(&self) -> T {
        let lo = self.positions.iter().copied().fold(T::infinity(), T::min);
        let hi = self.positions.iter().copied().fold(T::neg_infinity(), T::max);
        if hi >= lo {
            hi - lo
        } else {
            T::zero()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Motion {
    Localized,
    Propagating,
}

/// Largest step accepted by [`integrate_field_trajectory`]: 0.1/k₂.
pub fn max_field_step<T: Real>(orb: &Orbital<T>) -> T {
    T::lit(0.1) / orb.k2()
}

/// Velocity-Verlet integration of Γẍ + QΦ′(x) = 0 in the even 1D potential.
///
/// Takes ⌈t_end/h⌉ steps of exactly `h`.
pub fn integrate_field_trajectory<T: Real>(
    particle: TestParticle<T>,
    bc: BoundaryConstants<T>,
    orb: &Orbital<T>,
    t_end: T,
    h: T,
) -> Result<Trajectory<T>> {
    require(t_end > T::zero() && t_end.is_finite(), "t_end", "positive and finite", t_end.as_f64())?;
    require(h > T::zero() && h.is_finite(), "time step h", "positive and finite", h.as_f64())?;
    let limit = max_field_step(orb);
    if h > limit {
        return Err(Error::StepTooLarge {
            step: h.as_f64(),
            limit: limit.as_f64(),
        });
    }

    let sol = LineSolution::new(bc, *orb);
    let TestParticle { gamma, q, x0, v0 } = particle;
    let coupling = q / gamma;
    let half = T::lit(0.5);
    let accel = |x: T| -coupling * sol.gradient(x).0;
    let energy = |x: T, v: T| half * gamma * v * v + q * sol.eval(x).0;

    let steps = (t_end / h).ceil().to_usize().unwrap_or(usize::MAX);
    let mut times = Vec::with_capacity(steps + 1);
    let mut positions = Vec::with_capacity(steps + 1);
    let mut velocities = Vec::with_capacity(steps + 1);

    let (mut x, mut v) = (x0, v0);
    let mut a = accel(x);
    let h0 = energy(x, v);
    let scale = if h0 != T::zero() { h0.abs() } else { T::one() };
    let mut drift = T::zero();
    times.push(T::zero());
    positions.push(x);
    velocities.push(v);

    for i in 1..=steps {
        let v_half = v + half * h * a;
        x += h * v_half;
        a = accel(x);
        v = v_half + half * h * a;
        drift = drift.max((energy(x, v) - h0).abs() / scale);
        times.push(T::from_usize_exact(i) * h);
        positions.push(x);
        velocities.push(v);
    }

    Ok(Trajectory {
        times,
        positions,
        velocities,
        energy_drift: drift,
        fast_period: orb.fast_wavelength(),
    })
}

/// Localized iff the total excursion stays below `window`.
///
/// The trajectory must span at least ten fast periods.
pub fn classify_trajectory<T: Real>(traj: &Trajectory<T>, window: T) -> Result<Motion> {
    require(window > T::zero(), "classification window", "positive", window.as_f64())?;
    let required = T::lit(10.0) * traj.fast_period;
    let span = traj.duration();
    if traj.is_empty() || span < required {
        return Err(Error::InsufficientData {
            span: span.as_f64(),
            required: required.as_f64(),
        });
    }
    Ok(if traj.excursion() < window {
        Motion::Localized
    } else {
        Motion::Propagating
    })
}
