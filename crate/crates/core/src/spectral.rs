//! Discrete Fourier analysis of Clifford-valued grid fields.
//!
//! The transform emulates the continuous one, `f̂(ξ) = ∫ e^{-2πi⟨x,ξ⟩} f(x) dx`,
//! by a Riemann sum over the centered grid: forward sums are scaled by `Π h_k`
//! and inverse sums by `Π 1/L_k`. The complex unit commutes with every blade,
//! so each of the `2^n` coefficient channels is transformed independently.
//!
//! Spectral multipliers act by left Clifford multiplication on `f̂(ξ)`.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::clifford::{mul_acc, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::field::{FieldHeader, GridField, SpectralField};

/// Selects the upper (`+`) or lower (`-`) projector or kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `χ±(ξ) = ½(1 ± i ξ̲/|ξ|)`, with `χ±(0) = ½`.
pub fn chi_projector(side: Side, xi: &[f64]) -> Result<Multivector> {
    let n = xi.len();
    let mut m = Multivector::scalar(n, Complex64::new(0.5, 0.0))?;
    let r = euclidean_norm(xi);
    if r > 0.0 {
        let c = m.coeffs_mut();
        for (k, &x) in xi.iter().enumerate() {
            c[1 << k] = Complex64::new(0.0, 0.5 * side.sign() * x / r);
        }
    }
    Ok(m)
}

/// `e±(x, ξ) = e^{2πi⟨x̲,ξ⟩} e^{∓2π x0 |ξ|} χ±(ξ)`.
///
/// Only the decaying direction is accepted: `x0 >= 0` for `+` and `x0 <= 0`
/// for `-`.
pub fn e_kernel(side: Side, x: &Paravector, xi: &[f64]) -> Result<Multivector> {
    if x.dim() != xi.len() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: xi.len(),
        });
    }
    if side.sign() * x.x0 < 0.0 || !x.x0.is_finite() {
        return Err(Error::GrowthDirection {
            sign: side.symbol(),
            x0: x.x0,
        });
    }
    let phase: f64 = x.vec.iter().zip(xi).map(|(a, b)| a * b).sum();
    let decay = (-side.sign() * 2.0 * std::f64::consts::PI * x.x0 * euclidean_norm(xi)).exp();
    let factor = Complex64::from_polar(decay, 2.0 * std::f64::consts::PI * phase);
    Ok(chi_projector(side, xi)?.scale(factor))
}

struct AxisPlans {
    plans: Vec<Arc<dyn Fft<f64>>>,
}

impl AxisPlans {
    fn new(header: &FieldHeader, direction: FftDirection) -> Self {
        let mut planner = FftPlanner::new();
        AxisPlans {
            plans: header
                .dims()
                .iter()
                .map(|&d| planner.plan_fft(d, direction))
                .collect(),
        }
    }
}

/// Unnormalized n-dimensional FFT of one row-major channel, in place.
fn fft_channel(header: &FieldHeader, plans: &AxisPlans, data: &mut [Complex64]) {
    let total = data.len();
    for axis in 0..header.n() {
        let d = header.dims()[axis];
        let stride = header.stride(axis);
        let fft = &plans.plans[axis];
        let mut line = vec![Complex64::new(0.0, 0.0); d];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let block = d * stride;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[base + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}

/// `(-1)^{Σ i_k}`: the phase that moves the DFT origin to the grid corner
/// `-L/2`. Every `d_k` is even, so it equals `(-1)^{Σ m_k}`.
fn corner_phase(header: &FieldHeader, point: usize) -> f64 {
    let mut idx = vec![0; header.n()];
    header.unravel(point, &mut idx);
    if idx.iter().sum::<usize>() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn transform(header: &FieldHeader, data: &[Complex64], direction: FftDirection, scale: f64) -> Vec<Complex64> {
    let blades = header.blades();
    let plans = AxisPlans::new(header, direction);
    let phases: Vec<f64> = (0..header.points()).map(|p| corner_phase(header, p)).collect();
    let channels: Vec<Vec<Complex64>> = (0..blades)
        .into_par_iter()
        .map(|b| {
            let mut chan: Vec<Complex64> = data.iter().skip(b).step_by(blades).copied().collect();
            if chan.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                return chan;
            }
            if direction == FftDirection::Inverse {
                for (c, s) in chan.iter_mut().zip(&phases) {
                    *c *= *s;
                }
            }
            fft_channel(header, &plans, &mut chan);
            for (c, s) in chan.iter_mut().zip(&phases) {
                *c *= if direction == FftDirection::Forward { s * scale } else { scale };
            }
            chan
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for (b, chan) in channels.iter().enumerate() {
        for (slot, v) in out.iter_mut().skip(b).step_by(blades).zip(chan) {
            *slot = *v;
        }
    }
    out
}

/// Forward transform, `f̂(ξ) ≈ Σ_x e^{-2πi⟨x,ξ⟩} f(x) Π h_k`.
pub fn dft_forward(f: &GridField) -> SpectralField {
    let header = f.header().clone();
    let data = transform(&header, f.data(), FftDirection::Forward, header.cell_volume());
    SpectralField::from_data(header, data).expect("transform preserves length")
}

/// Inverse transform, `f(x) = Σ_ξ e^{2πi⟨x,ξ⟩} f̂(ξ) Π L_k^{-1}`.
pub fn dft_inverse(spectrum: &SpectralField) -> GridField {
    let header = spectrum.header().clone();
    let data = transform(&header, spectrum.data(), FftDirection::Inverse, 1.0 / header.volume());
    GridField::from_data(header, data).expect("transform preserves length")
}

/// Left-multiplies every spectral coefficient by `multiplier(ξ)`.
pub fn left_multiply_spectrum(
    spectrum: &SpectralField,
    multiplier: impl Fn(&[f64]) -> Result<Multivector> + Sync,
) -> Result<SpectralField> {
    let header = spectrum.header().clone();
    let blades = header.blades();
    let mut out = vec![Complex64::new(0.0, 0.0); spectrum.data().len()];
    out.par_chunks_mut(blades)
        .enumerate()
        .try_for_each(|(p, slot)| -> Result<()> {
            let m = multiplier(&header.frequency(p))?;
            mul_acc(m.coeffs(), spectrum.at(p), slot);
            Ok(())
        })?;
    SpectralField::from_data(header, out)
}

/// Multiplies every spectral coefficient by the scalar `multiplier(ξ)`.
pub fn scale_spectrum(spectrum: &SpectralField, multiplier: impl Fn(&[f64]) -> Complex64 + Sync) -> SpectralField {
    let header = spectrum.header().clone();
    let blades = header.blades();
    let mut data = spectrum.data().to_vec();
    data.par_chunks_mut(blades).enumerate().for_each(|(p, slot)| {
        let m = multiplier(&header.frequency(p));
        for c in slot {
            *c *= m;
        }
    });
    SpectralField::from_data(header, data).expect("length preserved")
}

/// `(m(ξ) f̂(ξ))^∨` with a Clifford-valued multiplier acting from the left.
pub fn apply_left_multiplier(
    f: &GridField,
    multiplier: impl Fn(&[f64]) -> Result<Multivector> + Sync,
) -> Result<GridField> {
    Ok(dft_inverse(&left_multiply_spectrum(&dft_forward(f), multiplier)?))
}

/// `(m(ξ) f̂(ξ))^∨` with a complex scalar multiplier.
pub fn apply_scalar_multiplier(f: &GridField, multiplier: impl Fn(&[f64]) -> Complex64 + Sync) -> GridField {
    dft_inverse(&scale_spectrum(&dft_forward(f), multiplier))
}

/// Spatial pairing `Σ_x f(x) ḡ(x) Π h_k`.
pub fn spatial_pairing(f: &GridField, g: &GridField) -> Result<Multivector> {
    f.header().ensure_compatible(g.header())?;
    let n = f.header().n();
    let mut acc = Multivector::zero(n)?;
    for p in 0..f.len() {
        let gc = g.get(p).conjugate();
        mul_acc(f.at(p), gc.coeffs(), acc.coeffs_mut());
    }
    Ok(acc.scale_real(f.header().cell_volume()))
}

/// Frequency-side pairing `Σ_ξ f̂(ξ) conj(ĝ(ξ)) Π L_k^{-1}`.
pub fn spectral_pairing(fh: &SpectralField, gh: &SpectralField) -> Result<Multivector> {
    fh.header().ensure_compatible(gh.header())?;
    let n = fh.header().n();
    let mut acc = Multivector::zero(n)?;
    for p in 0..fh.len() {
        let gc = gh.get(p).conjugate();
        mul_acc(fh.at(p), gc.coeffs(), acc.coeffs_mut());
    }
    Ok(acc.scale_real(1.0 / fh.header().volume()))
}

/// Norm of the difference between the spatial and frequency-side pairings
/// of `f` and `g`; zero up to rounding.
pub fn plancherel_defect(f: &GridField, g: &GridField) -> Result<f64> {
    let spatial = spatial_pairing(f, g)?;
    let spectral = spectral_pairing(&dft_forward(f), &dft_forward(g))?;
    Ok(spatial.distance(&spectral))
}

/// Smooth radial bump in frequency, supported in the open annulus
/// `inner < |ξ| < outer`.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub inner: f64,
    pub outer: f64,
    pub amplitude: f64,
    /// Spatial shift `s`: the envelope is modulated by `e^{-2πi⟨ξ,s⟩}`.
    pub shift: Vec<f64>,
    /// Constant Clifford factor applied on the left (scalar 1 when absent).
    pub factor: Option<Multivector>,
}

impl Envelope {
    pub fn radial(inner: f64, outer: f64, amplitude: f64) -> Self {
        Envelope {
            inner,
            outer,
            amplitude,
            shift: Vec::new(),
            factor: None,
        }
    }

    /// Scalar envelope value at `ξ`.
    pub fn value(&self, xi: &[f64]) -> Complex64 {
        let r = euclidean_norm(xi);
        if r <= self.inner || r >= self.outer || self.amplitude == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let t = (2.0 * r - self.inner - self.outer) / (self.outer - self.inner);
        let bump = self.amplitude * (1.0 - 1.0 / (1.0 - t * t)).exp();
        let phase: f64 = self.shift.iter().zip(xi).map(|(s, x)| s * x).sum();
        Complex64::from_polar(bump, -2.0 * std::f64::consts::PI * phase)
    }

    fn validate(&self, header: &FieldHeader) -> Result<()> {
        if !(self.inner.is_finite() && self.inner > 0.0) {
            return Err(Error::InvalidEnvelope(format!(
                "inner radius {} must be positive",
                self.inner
            )));
        }
        if !(self.outer.is_finite() && self.outer > self.inner) {
            return Err(Error::InvalidEnvelope(format!(
                "outer radius {} must exceed inner radius {}",
                self.outer, self.inner
            )));
        }
        if self.outer > header.nyquist_radius() {
            return Err(Error::InvalidEnvelope(format!(
                "outer radius {} exceeds the Nyquist radius {}",
                self.outer,
                header.nyquist_radius()
            )));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidEnvelope("amplitude must be finite".into()));
        }
        if !self.shift.is_empty() && self.shift.len() != header.n() {
            return Err(Error::InvalidEnvelope(format!(
                "shift has {} components for n = {}",
                self.shift.len(),
                header.n()
            )));
        }
        if let Some(f) = &self.factor {
            if f.dim() != header.n() {
                return Err(Error::DimensionMismatch {
                    left: f.dim(),
                    right: header.n(),
                });
            }
        }
        Ok(())
    }
}

/// Frequency-side test function `ψ(ξ) = c φ(ξ) χ₋(ξ)` on the lattice of
/// `header`, with `φ` the envelope and `c` its constant left factor.
pub fn make_psi_minus(header: &FieldHeader, envelope: &Envelope) -> Result<SpectralField> {
    envelope.validate(header)?;
    let n = header.n();
    let factor = match &envelope.factor {
        Some(f) => f.clone(),
        None => Multivector::one(n)?,
    };
    SpectralField::from_fn(header.clone(), |xi| {
        let phi = envelope.value(xi);
        if phi.re == 0.0 && phi.im == 0.0 {
            return Multivector::zero_unchecked(n);
        }
        let chi = chi_projector(Side::Minus, xi).expect("valid dimension");
        factor.multiply(&chi).expect("same dimension").scale(phi)
    })
}
