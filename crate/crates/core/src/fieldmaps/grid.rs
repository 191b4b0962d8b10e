use crate::dynamics::POLE_RADIUS;
use crate::error::{require, Error, Result};
use crate::geom::Rect;
use crate::num::Real;
use crate::pseudoforce::{sample_dipole, DipoleConfig, Orbital};
use num_complex::Complex;
use rayon::prelude::*;

/// Uniform node lattice over a rectangle, endpoints included, row-major with x fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice<T> {
    pub rect: Rect<T>,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> Lattice<T> {
    pub fn new(rect: Rect<T>, nx: usize, ny: usize) -> Result<Self> {
        require(nx >= 16, "grid nx", "at least 16", nx as f64)?;
        require(ny >= 16, "grid ny", "at least 16", ny as f64)?;
        Ok(Self { rect, nx, ny })
    }

    /// Same rectangle with twice the resolution; every old node is kept.
    pub fn refined(&self) -> Self {
        Self {
            rect: self.rect,
            nx: 2 * self.nx - 1,
            ny: 2 * self.ny - 1,
        }
    }

    pub fn dx(&self) -> T {
        self.rect.width() / T::from_usize_exact(self.nx - 1)
    }

    pub fn dy(&self) -> T {
        self.rect.height() / T::from_usize_exact(self.ny - 1)
    }

    pub fn x(&self, i: usize) -> T {
        if i + 1 == self.nx {
            self.rect.x1
        } else {
            self.rect.x0 + self.dx() * T::from_usize_exact(i)
        }
    }

    pub fn y(&self, j: usize) -> T {
        if j + 1 == self.ny {
            self.rect.y1
        } else {
            self.rect.y0 + self.dy() * T::from_usize_exact(j)
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Nodes per 2π/k at the coarser of the two spacings.
    pub fn points_per_wavelength(&self, k: T) -> T {
        T::TAU() / k / self.dx().max(self.dy())
    }
}

/// Complex-modulus Euclidean norm √(Σ|cᵢ|²).
pub fn complex_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |s, c| s + c.norm_sqr()).sqrt()
}

pub fn norm2<T: Real>(v: [T; 2]) -> T {
    v[0].hypot(v[1])
}

/// All channels of a z-slice of the two-pole field on a lattice.
///
/// Cells within 0.05 of a pole are masked and hold NaN in every channel.
#[derive(Debug, Clone)]
pub struct FieldGrid<T> {
    pub lattice: Lattice<T>,
    pub z: T,
    pub orbital: Orbital<T>,
    pub mask: Vec<bool>,
    pub psi: Vec<Complex<T>>,
    pub phi: Vec<Complex<T>>,
    /// n = |Ψ|².
    pub density: Vec<T>,
    /// J = Im(Ψ*∇Ψ), in-plane components.
    pub j: Vec<[T; 2]>,
    /// J_d = −Im(Φ*∇Φ), in-plane components.
    pub jd: Vec<[T; 2]>,
    /// J_t = J + J_d.
    pub jt: Vec<[T; 2]>,
    /// −∇Φ, in-plane components.
    pub efield: Vec<[Complex<T>; 2]>,
    /// ∂J_z/∂z = Im(Ψ*∂²Ψ/∂z²).
    pub dz_j: Vec<T>,
    /// ∂J_{d,z}/∂z = −Im(Φ*∂²Φ/∂z²).
    pub dz_jd: Vec<T>,
}

struct Cell<T> {
    masked: bool,
    psi: Complex<T>,
    phi: Complex<T>,
    j: [T; 2],
    jd: [T; 2],
    efield: [Complex<T>; 2],
    dz_j: T,
    dz_jd: T,
}

fn cell<T: Real>(cfg: &DipoleConfig<T>, p: [T; 3]) -> Result<Cell<T>> {
    let nan = T::nan();
    let cnan = Complex::new(nan, nan);
    if cfg.pole_distance(p) < T::lit(POLE_RADIUS) {
        return Ok(Cell {
            masked: true,
            psi: cnan,
            phi: cnan,
            j: [nan; 2],
            jd: [nan; 2],
            efield: [cnan; 2],
            dz_j: nan,
            dz_jd: nan,
        });
    }
    let s = sample_dipole(p, cfg)?;
    let (cpsi, cphi) = (s.psi.conj(), s.phi.conj());
    Ok(Cell {
        masked: false,
        psi: s.psi,
        phi: s.phi,
        j: [(cpsi * s.grad_psi[0]).im, (cpsi * s.grad_psi[1]).im],
        jd: [-(cphi * s.grad_phi[0]).im, -(cphi * s.grad_phi[1]).im],
        efield: [-s.grad_phi[0], -s.grad_phi[1]],
        dz_j: (cpsi * s.dzz_psi).im,
        dz_jd: -(cphi * s.dzz_phi).im,
    })
}

/// Fills every channel at z = 0.
pub fn evaluate_grid<T: Real>(cfg: &DipoleConfig<T>, domain: Rect<T>, nx: usize, ny: usize) -> Result<FieldGrid<T>> {
    evaluate_grid_on(cfg, Lattice::new(domain, nx, ny)?, T::zero())
}

/// Fills every channel on `lattice` at height `z`, one row per task.
pub fn evaluate_grid_on<T: Real>(cfg: &DipoleConfig<T>, lattice: Lattice<T>, z: T) -> Result<FieldGrid<T>> {
    let rows: Vec<Vec<Cell<T>>> = (0..lattice.ny)
        .into_par_iter()
        .map(|jrow| {
            let y = lattice.y(jrow);
            (0..lattice.nx).map(|i| cell(cfg, [lattice.x(i), y, z])).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let n = lattice.len();
    let mut g = FieldGrid {
        lattice,
        z,
        orbital: cfg.orbital,
        mask: Vec::with_capacity(n),
        psi: Vec::with_capacity(n),
        phi: Vec::with_capacity(n),
        density: Vec::with_capacity(n),
        j: Vec::with_capacity(n),
        jd: Vec::with_capacity(n),
        jt: Vec::with_capacity(n),
        efield: Vec::with_capacity(n),
        dz_j: Vec::with_capacity(n),
        dz_jd: Vec::with_capacity(n),
    };
    for c in rows.into_iter().flatten() {
        g.mask.push(c.masked);
        g.psi.push(c.psi);
        g.phi.push(c.phi);
        g.density.push(c.psi.norm_sqr());
        g.j.push(c.j);
        g.jd.push(c.jd);
        g.jt.push([c.j[0] + c.jd[0], c.j[1] + c.jd[1]]);
        g.efield.push(c.efield);
        g.dz_j.push(c.dz_j);
        g.dz_jd.push(c.dz_jd);
    }
    Ok(g)
}

/// −∇Φ in the z = 0 plane; masked (error) within 0.05 of a pole.
pub fn electric_field<T: Real>(p: [T; 2], cfg: &DipoleConfig<T>) -> Result<[Complex<T>; 2]> {
    let p3 = [p[0], p[1], T::zero()];
    let d = cfg.pole_distance(p3);
    if d < T::lit(POLE_RADIUS) {
        let pole_x = if p[0] >= T::zero() { cfg.a } else { -cfg.a };
        return Err(Error::Singularity {
            pole_x: pole_x.as_f64(),
            distance: d.as_f64(),
        });
    }
    let s = sample_dipole(p3, cfg)?;
    Ok([-s.grad_phi[0], -s.grad_phi[1]])
}

/// Channels that can be exported or probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Psi,
    Phi,
    Density,
    J,
    Jd,
    Jt,
    Efield,
}

impl Channel {
    pub const ALL: [Channel; 7] = [
        Channel::Psi,
        Channel::Phi,
        Channel::Density,
        Channel::J,
        Channel::Jd,
        Channel::Jt,
        Channel::Efield,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Psi => "psi",
            Channel::Phi => "phi",
            Channel::Density => "n",
            Channel::J => "J",
            Channel::Jd => "Jd",
            Channel::Jt => "Jt",
            Channel::Efield => "E",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

/// Current channels whose divergence can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Current {
    J,
    Jd,
    Jt,
}

impl<T: Real> FieldGrid<T> {
    /// Pointwise magnitude of a channel: |Ψ|, |Φ|, n, |J|, |J_d|, |J_t| or √(|E_x|²+|E_y|²).
    pub fn magnitude(&self, channel: Channel) -> Vec<T> {
        match channel {
            Channel::Psi => self.psi.iter().map(|c| c.norm()).collect(),
            Channel::Phi => self.phi.iter().map(|c| c.norm()).collect(),
            Channel::Density => self.density.clone(),
            Channel::J => self.j.iter().map(|v| norm2(*v)).collect(),
            Channel::Jd => self.jd.iter().map(|v| norm2(*v)).collect(),
            Channel::Jt => self.jt.iter().map(|v| norm2(*v)).collect(),
            Channel::Efield => self.efield.iter().map(|v| complex_norm(v)).collect(),
        }
    }

    pub fn current(&self, which: Current) -> &[[T; 2]] {
        match which {
            Current::J => &self.j,
            Current::Jd => &self.jd,
            Current::Jt => &self.jt,
        }
    }

    fn out_of_plane(&self, which: Current, idx: usize) -> T {
        match which {
            Current::J => self.dz_j[idx],
            Current::Jd => self.dz_jd[idx],
            Current::Jt => self.dz_j[idx] + self.dz_jd[idx],
        }
    }

    fn check_resolution(&self) -> Result<()> {
        let ppw = self.lattice.points_per_wavelength(self.orbital.k2());
        if ppw < T::lit(8.0) {
            return Err(Error::Resolution {
                spacing: self.lattice.dx().max(self.lattice.dy()).as_f64(),
                points_per_wavelength: ppw.as_f64(),
            });
        }
        Ok(())
    }

    /// In-plane stencil divergence of a current channel.
    pub fn divergence_in_plane(&self, which: Current) -> Result<Vec<T>> {
        self.check_resolution()?;
        Ok(super::divergence_2d(self.current(which), &self.lattice))
    }

    /// 3D divergence on the slice: stencil ∂x + ∂y plus the analytic ∂z term.
    pub fn divergence(&self, which: Current) -> Result<Vec<T>> {
        let mut d = self.divergence_in_plane(which)?;
        for (idx, v) in d.iter_mut().enumerate() {
            *v += self.out_of_plane(which, idx);
        }
        Ok(d)
    }

    /// Exact source term −Im(Ψ*Φ) of ∇·J.
    pub fn current_source(&self) -> Vec<T> {
        self.psi
            .iter()
            .zip(&self.phi)
            .map(|(p, f)| -(p.conj() * f).im)
            .collect()
    }
}
