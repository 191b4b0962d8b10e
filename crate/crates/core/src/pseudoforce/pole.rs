use super::{BoundaryConstants, ModeAmplitudes, Orbital};
use crate::error::{require, Error, Result};
use crate::num::Real;
use num_complex::Complex;

/// Sign of the radial phase e^{±ikr}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Branch {
    /// e^{+ikr}.
    #[default]
    Outgoing,
    /// e^{−ikr}.
    Incoming,
}

impl Branch {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Outgoing => T::one(),
            Branch::Incoming => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Branch::Outgoing => Branch::Incoming,
            Branch::Incoming => Branch::Outgoing,
        }
    }
}

/// Two point poles of charge `q` at (±a, 0, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleConfig<T> {
    pub orbital: Orbital<T>,
    pub a: T,
    pub q: T,
    pub branch: Branch,
    pub bc: BoundaryConstants<T>,
}

impl<T: Real> DipoleConfig<T> {
    /// Outgoing branch with Φ₀ = Ψ₀ = 1.
    pub fn new(orbital: Orbital<T>, a: T, q: T) -> Result<Self> {
        require(a >= T::zero() && a.is_finite(), "dipole half-spacing a", "non-negative and finite", a.as_f64())?;
        require(q != T::zero() && q.is_finite(), "pole charge Q", "non-zero and finite", q.as_f64())?;
        Ok(Self {
            orbital,
            a,
            q,
            branch: Branch::Outgoing,
            bc: BoundaryConstants::unit(),
        })
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_boundary(mut self, bc: BoundaryConstants<T>) -> Self {
        self.bc = bc;
        self
    }

    pub fn poles(&self) -> [[T; 3]; 2] {
        let z = T::zero();
        [[self.a, z, z], [-self.a, z, z]]
    }

    /// Distance from `p` to the nearer pole.
    pub fn pole_distance(&self, p: [T; 3]) -> T {
        self.poles()
            .iter()
            .map(|c| norm3(sub3(p, *c)))
            .fold(T::infinity(), T::min)
    }

    pub(crate) fn amplitudes(&self) -> ModeAmplitudes<T> {
        ModeAmplitudes::new(self.bc, &self.orbital).scaled(self.q)
    }
}

/// Values, gradients and ∂²/∂z² of Φ and Ψ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub phi: Complex<T>,
    pub psi: Complex<T>,
    pub grad_phi: [Complex<T>; 3],
    pub grad_psi: [Complex<T>; 3],
    pub dzz_phi: Complex<T>,
    pub dzz_psi: Complex<T>,
}

fn sub3<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm3<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn check_radius<T: Real>(r: T, pole_x: T) -> Result<()> {
    if r > T::epsilon() && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Singularity {
            pole_x: pole_x.as_f64(),
            distance: r.as_f64(),
        })
    }
}

/// e^{iskr}/r for both modes.
fn radial<T: Real>(r: T, ks: [T; 2], s: T) -> [Complex<T>; 2] {
    ks.map(|k| {
        let (sn, cs) = (s * k * r).sin_cos();
        Complex::new(cs / r, sn / r)
    })
}

fn add_pole<T: Real>(acc: &mut FieldSample<T>, d: [T; 3], m: &ModeAmplitudes<T>, ks: [T; 2], s: T) {
    let r = norm3(d);
    let r2 = r * r;
    let two = T::lit(2.0);
    for (i, g) in radial(r, ks, s).into_iter().enumerate() {
        let k = ks[i];
        let ikr = Complex::new(T::zero(), s * k * r);
        // G′ = (iskr − 1)G/r, G″ = (2 − 2iskr − k²r²)G/r².
        let dg = (ikr - T::one()) * g / r;
        let ddg = (Complex::new(two - k * k * r2, T::zero()) - ikr * two) * g / r2;
        let dzz = ddg * (d[2] * d[2] / r2) + dg * ((r2 - d[2] * d[2]) / (r2 * r));
        acc.phi += g * m.phi[i];
        acc.psi += g * m.psi[i];
        acc.dzz_phi += dzz * m.phi[i];
        acc.dzz_psi += dzz * m.psi[i];
        for c in 0..3 {
            let gc = dg * (d[c] / r);
            acc.grad_phi[c] += gc * m.phi[i];
            acc.grad_psi[c] += gc * m.psi[i];
        }
    }
}

/// Single pole at the origin, `r` > 0: Q/(2αr) times the mode matrix times e^{±ikr}.
pub fn eval_monopole<T: Real>(
    r: T,
    orb: &Orbital<T>,
    bc: BoundaryConstants<T>,
    q: T,
    branch: Branch,
) -> Result<(Complex<T>, Complex<T>)> {
    check_radius(r, T::zero())?;
    let m = ModeAmplitudes::new(bc, orb).scaled(q);
    let g = radial(r, orb.wavenumbers(), branch.sign());
    Ok((
        g[0] * m.phi[0] + g[1] * m.phi[1],
        g[0] * m.psi[0] + g[1] * m.psi[1],
    ))
}

/// (Φ, Ψ) of the two-pole field at `p`.
pub fn eval_dipole<T: Real>(p: [T; 3], cfg: &DipoleConfig<T>) -> Result<(Complex<T>, Complex<T>)> {
    let m = cfg.amplitudes();
    let ks = cfg.orbital.wavenumbers();
    let s = cfg.branch.sign();
    let mut phi = Complex::new(T::zero(), T::zero());
    let mut psi = phi;
    for c in cfg.poles() {
        let r = norm3(sub3(p, c));
        check_radius(r, c[0])?;
        let g = radial(r, ks, s);
        phi += g[0] * m.phi[0] + g[1] * m.phi[1];
        psi += g[0] * m.psi[0] + g[1] * m.psi[1];
    }
    Ok((phi, psi))
}

/// Full local sample of the two-pole field at `p`.
pub fn sample_dipole<T: Real>(p: [T; 3], cfg: &DipoleConfig<T>) -> Result<FieldSample<T>> {
    let m = cfg.amplitudes();
    let ks = cfg.orbital.wavenumbers();
    let s = cfg.branch.sign();
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = FieldSample {
        phi: zero,
        psi: zero,
        grad_phi: [zero; 3],
        grad_psi: [zero; 3],
        dzz_phi: zero,
        dzz_psi: zero,
    };
    for c in cfg.poles() {
        let d = sub3(p, c);
        check_radius(norm3(d), c[0])?;
        add_pole(&mut acc, d, &m, ks, s);
    }
    Ok(acc)
}

/// (∇Φ, ∇Ψ) of the two-pole field at `p`.
pub fn eval_dipole_gradient<T: Real>(
    p: [T; 3],
    cfg: &DipoleConfig<T>,
) -> Result<([Complex<T>; 3], [Complex<T>; 3])> {
    let s = sample_dipole(p, cfg)?;
    Ok((s.grad_phi, s.grad_psi))
}
