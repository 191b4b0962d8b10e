use super::{Channel, FieldGrid};
use crate::error::{require, Error, Result};
use crate::geom::Segment;
use crate::num::Real;
use num_complex::Complex;
use rustfft::{FftNum, FftPlanner};

pub const MIN_PROBE_SAMPLES: usize = 256;

/// Dominant spatial frequency along a probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum<T> {
    /// |k| at the spectral peak [rad per plasmon length].
    pub peak: T,
    /// 2π/(N·Δs).
    pub bin_width: T,
    /// Signed FFT bin of the peak.
    pub peak_bin: isize,
}

/// Peak |k| of `values` sampled at `spacing`, after removing the mean and
/// applying a Hann window. DC is excluded.
pub fn spectrum_of_samples<T: Real + FftNum>(values: &[Complex<T>], spacing: T) -> Result<Spectrum<T>> {
    let n = values.len();
    require(
        n >= MIN_PROBE_SAMPLES,
        "probe samples",
        "at least 256",
        n as f64,
    )?;
    require(spacing > T::zero(), "probe spacing", "positive", spacing.as_f64())?;
    let nt = T::from_usize_exact(n);
    let mean = values.iter().fold(Complex::new(T::zero(), T::zero()), |s, v| s + v) / nt;
    let mut buf: Vec<Complex<T>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = T::lit(0.5) * (T::one() - (T::TAU() * T::from_usize_exact(i) / (nt - T::one())).cos());
            (v - mean) * w
        })
        .collect();
    let spread = buf.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    if !(spread > T::epsilon() * mean.norm().max(T::min_positive_value())) {
        return Err(Error::NoPeak);
    }

    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let mut best = 1;
    for m in 2..n {
        if buf[m].norm_sqr() > buf[best].norm_sqr() {
            best = m;
        }
    }
    let signed = if best <= n / 2 { best as isize } else { best as isize - n as isize };
    let bin_width = T::TAU() / (nt * spacing);
    Ok(Spectrum {
        peak: T::from_usize_exact(signed.unsigned_abs()) * bin_width,
        bin_width,
        peak_bin: signed,
    })
}

/// Bilinear interpolation of `values` on the grid lattice at `p`.
fn bilinear<T: Real, V>(grid: &FieldGrid<T>, values: &[V], p: [T; 2]) -> Result<V>
where
    V: Copy + std::ops::Mul<T, Output = V> + std::ops::Add<Output = V>,
{
    let l = &grid.lattice;
    let fx = (p[0] - l.rect.x0) / l.dx();
    let fy = (p[1] - l.rect.y0) / l.dy();
    let outside = !(fx >= T::zero() && fy >= T::zero())
        || fx > T::from_usize_exact(l.nx - 1)
        || fy > T::from_usize_exact(l.ny - 1);
    require(!outside, "probe point", "inside the grid domain", p[0].as_f64())?;
    let i = fx.floor().to_usize().unwrap_or(0).min(l.nx - 2);
    let j = fy.floor().to_usize().unwrap_or(0).min(l.ny - 2);
    let tx = fx - T::from_usize_exact(i);
    let ty = fy - T::from_usize_exact(j);
    let idx = [l.index(i, j), l.index(i + 1, j), l.index(i, j + 1), l.index(i + 1, j + 1)];
    if idx.iter().any(|&k| grid.mask[k]) {
        return Err(Error::MaskedProbe {
            x: p[0].as_f64(),
            y: p[1].as_f64(),
        });
    }
    let one = T::one();
    Ok(values[idx[0]] * ((one - tx) * (one - ty))
        + values[idx[1]] * (tx * (one - ty))
        + values[idx[2]] * ((one - tx) * ty)
        + values[idx[3]] * (tx * ty))
}

/// Channel values along a probe. Ψ and Φ keep their complex carrier; every
/// other channel is probed through its magnitude.
pub fn probe_channel<T: Real>(grid: &FieldGrid<T>, channel: Channel, probe: &Segment<T>) -> Result<Vec<Complex<T>>> {
    let complex_source = match channel {
        Channel::Psi => Some(&grid.psi),
        Channel::Phi => Some(&grid.phi),
        _ => None,
    };
    let points = probe.points();
    match complex_source {
        Some(values) => points.iter().map(|&p| bilinear(grid, values, p)).collect(),
        None => {
            let mags = grid.magnitude(channel);
            points
                .iter()
                .map(|&p| bilinear(grid, &mags, p).map(|v| Complex::new(v, T::zero())))
                .collect()
        }
    }
}

/// Dominant spatial frequency of a channel along `probe`.
pub fn fringe_spectrum<T: Real + FftNum>(grid: &FieldGrid<T>, channel: Channel, probe: &Segment<T>) -> Result<Spectrum<T>> {
    require(
        probe.samples >= MIN_PROBE_SAMPLES,
        "probe samples",
        "at least 256",
        probe.samples as f64,
    )?;
    let values = probe_channel(grid, channel, probe)?;
    spectrum_of_samples(&values, probe.spacing())
}

/// Peak-to-mean ratio of the finite entries of `values`.
pub fn fringe_contrast<T: Real>(values: &[T]) -> Result<T> {
    let (mut sum, mut count, mut max) = (T::zero(), 0usize, T::neg_infinity());
    for &v in values.iter().filter(|v| v.is_finite()) {
        sum += v;
        count += 1;
        max = max.max(v);
    }
    if count == 0 || !(sum > T::zero()) {
        return Err(Error::NoPeak);
    }
    Ok(max / (sum / T::from_usize_exact(count)))
}
