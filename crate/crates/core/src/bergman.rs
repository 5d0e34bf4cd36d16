//! Bergman-space representation `F(x) = Σ_ξ e⁺(x, ξ) G(ξ) Π L_k^{-1}` and
//! the weighted spectral bound on `‖F‖_{A^p}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::{mul_acc, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::extension::{poisson_multiplier, SlabField};
use crate::field::{FieldHeader, GridField, SpectralField};
use crate::spectral::{chi_projector, dft_inverse, e_kernel, euclidean_norm, left_multiply_spectrum, Side};

/// Frequency-side density `G` on the lattice of a header.
#[derive(Clone, Debug, PartialEq)]
pub struct BergmanDensity {
    values: SpectralField,
}

impl BergmanDensity {
    pub fn new(values: SpectralField) -> Result<Self> {
        if values.data().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter("density values must be finite".into()));
        }
        Ok(BergmanDensity { values })
    }

    /// `G = g` at the single lattice frequency `m`, zero elsewhere.
    pub fn single_mode(header: FieldHeader, m: &[i64], g: &Multivector) -> Result<Self> {
        let mut values = SpectralField::zeros(header);
        let idx = values.header().spectral_index(m)?;
        values.set(idx, g)?;
        Self::new(values)
    }

    /// `G(ξ) = exp(-(|ξ| - radius)² / 2 width²) χ₊(ξ) g`, zero at DC and on
    /// Nyquist rows.
    pub fn gaussian_ring(header: FieldHeader, radius: f64, width: f64, g: &Multivector) -> Result<Self> {
        if !(radius.is_finite() && width.is_finite() && radius > 0.0 && width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ring radius {radius} and width {width} must be positive"
            )));
        }
        let h = header.clone();
        let mut values = SpectralField::zeros(header);
        for p in 0..values.len() {
            let xi = h.frequency(p);
            let r = euclidean_norm(&xi);
            if r == 0.0 || h.is_nyquist(p) {
                continue;
            }
            let amp = (-(r - radius).powi(2) / (2.0 * width * width)).exp();
            let v = chi_projector(Side::Plus, &xi)?.multiply(g)?.scale_real(amp);
            values.set(p, &v)?;
        }
        Self::new(values)
    }

    pub fn header(&self) -> &FieldHeader {
        self.values.header()
    }

    /// Geometric heights from a quarter of the finest spacing to the height
    /// where `|F|^p` has decayed by `tol`.
    pub fn height_grid(&self, p: f64, tol: f64, count: usize) -> Result<Vec<f64>> {
        let min = 0.25 * (0..self.header().n()).map(|k| self.header().spacing(k)).fold(f64::INFINITY, f64::min);
        let max = self
            .tail_cutoff(p, tol)
            .ok_or_else(|| Error::InvalidParameter("density has no nonzero mode".into()))?;
        geometric_heights(min, max.max(2.0 * min), count)
    }

    pub fn values(&self) -> &SpectralField {
        &self.values
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        BergmanDensity {
            values: self.values.scale(factor),
        }
    }

    /// Smallest `|ξ|` where `χ₊ G` is nonzero, if any.
    pub fn min_frequency(&self) -> Option<f64> {
        let h = self.header();
        (0..self.values.len())
            .filter(|&p| !self.values.get(p).is_zero())
            .map(|p| euclidean_norm(&h.frequency(p)))
            .filter(|&r| r > 0.0)
            .min_by(f64::total_cmp)
    }

    /// Height beyond which every mode has decayed below `tol` in `|F|^p`:
    /// `ln(1/tol) / (2π p ξ_min)`.
    pub fn tail_cutoff(&self, p: f64, tol: f64) -> Option<f64> {
        self.min_frequency().map(|r| (1.0 / tol).ln() / (2.0 * PI * p * r))
    }
}

fn check_height(x0: f64) -> Result<()> {
    if x0.is_finite() && x0 > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveHeight(x0))
    }
}

/// Pointwise lattice quadrature `Σ_ξ e⁺(x, ξ) G(ξ) Π L_k^{-1}`.
pub fn bergman_from_density(density: &BergmanDensity, x: &Paravector) -> Result<Multivector> {
    check_height(x.x0)?;
    let h = density.header();
    if x.dim() != h.n() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: h.n(),
        });
    }
    let mut acc = Multivector::zero(h.n())?;
    for p in 0..density.values.len() {
        let g = density.values.at(p);
        if g.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
            continue;
        }
        let e = e_kernel(Side::Plus, x, &h.frequency(p))?;
        mul_acc(e.coeffs(), g, acc.coeffs_mut());
    }
    Ok(acc.scale_real(1.0 / h.volume()))
}

/// The slice `F(x0 + ·)` on the grid, via one inverse transform.
pub fn bergman_slice(density: &BergmanDensity, x0: f64) -> Result<GridField> {
    check_height(x0)?;
    let spectrum = left_multiply_spectrum(&density.values, |xi| {
        Ok(chi_projector(Side::Plus, xi)?.scale_real(poisson_multiplier(x0, xi)))
    })?;
    Ok(dft_inverse(&spectrum))
}

pub fn bergman_slab(density: &BergmanDensity, x0_values: Vec<f64>) -> Result<SlabField> {
    SlabField::build(x0_values, |x0| bergman_slice(density, x0))
}

/// `count` heights in geometric progression from `min` to `max`.
pub fn geometric_heights(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && count >= 2 && max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "geometric grid needs 0 < min < max and count >= 2 (got {min}, {max}, {count})"
        )));
    }
    let ratio = (max / min).ln() / (count - 1) as f64;
    Ok((0..count).map(|i| min * (ratio * i as f64).exp()).collect())
}

/// Discrete `A^p` norm of a slab with its truncation estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BergmanNorm {
    pub p: f64,
    /// `(∫ ∫ |F|^p dx̲ dx0)^{1/p}` by quadrature.
    pub value: f64,
    /// Estimated missing mass of `∫∫|F|^p` above the top slice.
    pub tail_estimate: f64,
    /// Mass attributed to `(0, x0_min)`, from the exponential profile through
    /// the first two slices.
    pub head_mass: f64,
}

/// `‖F‖_{A^p}` from a slab: Riemann sums in `x̲`, then the trapezoid rule in
/// `t = ln x0` applied to `x0 ∫|F|^p dx̲`, plus the head `(0, x0_min)`.
///
/// On geometric height grids this is the trapezoid rule with nodes spaced
/// proportionally to `x0`.
pub fn bergman_norm(slab: &SlabField, p: f64) -> Result<BergmanNorm> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if slab.is_empty() {
        return Err(Error::InvalidSlab("no slices".into()));
    }
    let xs = slab.x0_values();
    let layer: Vec<f64> = slab.slices().iter().map(|s| s.lp_integral(p)).collect();
    let head_mass = if xs.len() >= 2 && layer[1] > 0.0 && layer[0] > layer[1] {
        // exponential profile through the first two slices, continued to 0
        let rate = (layer[0] / layer[1]).ln() / (xs[1] - xs[0]);
        layer[0] * (rate * xs[0]).exp_m1() / rate
    } else {
        xs[0] * layer[0]
    };
    let mut mass = head_mass;
    for i in 0..xs.len() - 1 {
        let dt = (xs[i + 1] / xs[i]).ln();
        mass += 0.5 * dt * (xs[i] * layer[i] + xs[i + 1] * layer[i + 1]);
    }
    let last = layer.len() - 1;
    let tail_estimate = if layer[last] == 0.0 {
        0.0
    } else if last >= 1 && layer[last - 1] > layer[last] {
        let rate = (layer[last - 1] / layer[last]).ln() / (xs[last] - xs[last - 1]);
        layer[last] / rate
    } else {
        f64::INFINITY
    };
    Ok(BergmanNorm {
        p,
        value: mass.powf(1.0 / p),
        tail_estimate,
        head_mass,
    })
}

/// Frequency-side lower bound for `‖F‖_{A^p}`:
/// `(Σ_ξ |χ₊G|^q (2πp|ξ|)^{-q/p} Π L_k^{-1})^{1/q}` for `1 < p <= 2`, and
/// `sup_ξ |χ₊G| / (2π|ξ|)` for `p = 1`.
pub fn weighted_spectral_norm(density: &BergmanDensity, p: f64) -> Result<f64> {
    let sup_form = p == 1.0;
    if !sup_form && !(p > 1.0 && p <= 2.0) {
        return Err(Error::InvalidExponent(p));
    }
    let h = density.header();
    if !density.values.get(0).is_zero() {
        return Err(Error::SingularWeight);
    }
    let q = if sup_form { f64::INFINITY } else { p / (p - 1.0) };
    let mut acc = 0.0f64;
    for idx in 1..density.values.len() {
        let g = density.values.get(idx);
        if g.is_zero() {
            continue;
        }
        let xi = h.frequency(idx);
        let r = euclidean_norm(&xi);
        let projected = chi_projector(Side::Plus, &xi)?.multiply(&g)?.norm();
        if sup_form {
            acc = acc.max(projected / (2.0 * PI * r));
        } else {
            acc += projected.powf(q) / (2.0 * PI * p * r).powf(q / p);
        }
    }
    Ok(if sup_form {
        acc
    } else {
        (acc / h.volume()).powf(1.0 / q)
    })
}
