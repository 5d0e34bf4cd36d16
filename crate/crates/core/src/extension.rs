//! Extension of boundary data into the upper half-space and monogenicity
//! diagnostics.
//!
//! Three routes are provided: the Poisson multiplier `e^{-2πx0|ξ|}`, the
//! spectral Hardy extension `e^{-2πx0|ξ|} χ₊(ξ)`, and direct quadrature
//! against the Cauchy kernel `E(x) = x̄ / (2σ_n |x|^{n+1})`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::{mul_acc, Paravector};
use crate::error::{Error, Result};
use crate::field::{FieldHeader, GridField};
use crate::quadrature::BallRule;
use crate::spectral::{apply_left_multiplier, apply_scalar_multiplier, chi_projector, euclidean_norm, Side};

/// A stack of horizontal slices `F(x0_i + ·)` at increasing heights.
#[derive(Clone, Debug, PartialEq)]
pub struct SlabField {
    header: FieldHeader,
    x0_values: Vec<f64>,
    slices: Vec<GridField>,
}

impl SlabField {
    pub fn new(x0_values: Vec<f64>, slices: Vec<GridField>) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::InvalidSlab("no slices".into()));
        }
        if x0_values.len() != slices.len() {
            return Err(Error::InvalidSlab(format!(
                "{} heights for {} slices",
                x0_values.len(),
                slices.len()
            )));
        }
        if !x0_values.iter().all(|x| x.is_finite() && *x > 0.0) {
            return Err(Error::InvalidSlab("heights must be finite and positive".into()));
        }
        if x0_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSlab("heights must be strictly increasing".into()));
        }
        let header = slices[0].header().clone();
        for s in &slices[1..] {
            s.header().ensure_compatible(&header)?;
        }
        Ok(SlabField {
            header,
            x0_values,
            slices,
        })
    }

    /// Builds a slab by evaluating `extend(x0)` at each height.
    pub fn build(x0_values: Vec<f64>, extend: impl Fn(f64) -> Result<GridField> + Sync) -> Result<Self> {
        let slices = x0_values.par_iter().map(|&x0| extend(x0)).collect::<Result<Vec<_>>>()?;
        SlabField::new(x0_values, slices)
    }

    /// Heights `center + (i - count/2) step` for `i` in `0..count`.
    pub fn centered_heights(center: f64, step: f64, count: usize) -> Vec<f64> {
        let half = (count / 2) as f64;
        (0..count).map(|i| center + (i as f64 - half) * step).collect()
    }

    pub fn header(&self) -> &FieldHeader {
        &self.header
    }

    pub fn x0_values(&self) -> &[f64] {
        &self.x0_values
    }

    pub fn slices(&self) -> &[GridField] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn scale(&self, factor: Complex64) -> SlabField {
        SlabField {
            header: self.header.clone(),
            x0_values: self.x0_values.clone(),
            slices: self.slices.iter().map(|s| s.scale(factor)).collect(),
        }
    }

    /// Common x0 step; fails unless steps agree to a relative 1e-9.
    pub fn uniform_spacing(&self) -> Result<f64> {
        if self.len() < 2 {
            return Err(Error::InsufficientSlices(self.len()));
        }
        let step = self.x0_values[1] - self.x0_values[0];
        let uniform = self
            .x0_values
            .windows(2)
            .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step);
        if uniform {
            Ok(step)
        } else {
            Err(Error::NonUniformSlices)
        }
    }

    /// Largest per-point norm over all slices.
    pub fn max_norm(&self) -> f64 {
        self.slices.iter().map(|s| s.max_norm()).fold(0.0, f64::max)
    }
}

/// Periodic centered difference `(f(x + h ek) - f(x - h ek)) / 2h` along a
/// 0-based axis.
pub(crate) fn axis_derivative(f: &GridField, axis: usize) -> GridField {
    let header = f.header();
    let d = header.dims()[axis];
    let stride = header.stride(axis);
    let inv = 1.0 / (2.0 * header.spacing(axis));
    let mut out = GridField::zeros(header.clone());
    let blades = header.blades();
    for p in 0..header.points() {
        let i = (p / stride) % d;
        let base = p - i * stride;
        let fwd = base + ((i + 1) % d) * stride;
        let bwd = base + ((i + d - 1) % d) * stride;
        let (a, b) = (f.at(fwd), f.at(bwd));
        let slot = out.at_mut(p);
        for k in 0..blades {
            slot[k] = (a[k] - b[k]) * inv;
        }
    }
    out
}

/// Centered difference across slices `i - 1` and `i + 1`.
pub(crate) fn x0_derivative(slab: &SlabField, i: usize, step: f64) -> GridField {
    let inv = Complex64::new(0.5 / step, 0.0);
    slab.slices[i + 1]
        .combine(inv, &slab.slices[i - 1], -inv)
        .expect("slices share a header")
}

fn check_height(x0: f64) -> Result<()> {
    if x0.is_finite() && x0 > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveHeight(x0))
    }
}

/// Poisson multiplier `e^{-2πx0|ξ|}`.
pub fn poisson_multiplier(x0: f64, xi: &[f64]) -> f64 {
    (-2.0 * PI * x0 * euclidean_norm(xi)).exp()
}

/// Harmonic extension of every component: `(e^{-2πx0|ξ|} f̂)^∨`.
pub fn poisson_extend(f: &GridField, x0: f64) -> Result<GridField> {
    check_height(x0)?;
    Ok(apply_scalar_multiplier(f, |xi| Complex64::new(poisson_multiplier(x0, xi), 0.0)))
}

/// Hardy-part extension `(e^{-2πx0|ξ|} χ₊(ξ) f̂)^∨`, the lattice form of
/// `Σ_ξ e⁺(x, ξ) f̂(ξ)`.
pub fn spectral_extend(f: &GridField, x0: f64) -> Result<GridField> {
    check_height(x0)?;
    apply_left_multiplier(f, |xi| Ok(chi_projector(Side::Plus, xi)?.scale_real(poisson_multiplier(x0, xi))))
}

/// `Γ(k/2)` for a positive integer `k`.
fn gamma_half(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        (1..k / 2).map(|i| i as f64).product()
    } else {
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x < k as f64 / 2.0 - 0.25 {
            g *= x;
            x += 1.0;
        }
        g
    }
}

/// `σ_n = π^{(n+1)/2} / Γ((n+1)/2)`.
pub fn sigma_n(n: usize) -> f64 {
    PI.powf((n as f64 + 1.0) / 2.0) / gamma_half(n + 1)
}

/// Cauchy kernel `E(x) = x̄ / (2σ_n |x|^{n+1})` as paravector coefficients
/// `(scalar, vector)`.
pub fn cauchy_kernel(x: &Paravector) -> Result<crate::clifford::Multivector> {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return Err(Error::ZeroParavector);
    }
    let n = x.dim();
    let scale = 1.0 / (2.0 * sigma_n(n) * r2.powf((n as f64 + 1.0) / 2.0));
    Ok(x.conjugate().to_multivector()?.scale_real(scale))
}

/// Direct quadrature `Σ_y E(x - y) f(y) Π h_k` over one periodic cell.
///
/// The displacement `x̲ - y̲` is taken as is, without wrapping and without
/// image sums, so the result approximates the full-space integral of the
/// data restricted to the cell. Data concentrated away from the cell
/// boundary with vanishing low-order moments is reproduced accurately.
pub fn cauchy_extend(f: &GridField, x0: f64) -> Result<GridField> {
    check_height(x0)?;
    let header = f.header().clone();
    let n = header.n();
    let blades = header.blades();
    let points = header.points();
    let vol = header.cell_volume();
    let dims = header.dims().to_vec();

    // kernel on displacement indices -(d-1)..=(d-1) per axis, offset by d-1,
    // stored as n+1 paravector coefficients
    let span: Vec<usize> = dims.iter().map(|d| 2 * d - 1).collect();
    let table_len: usize = span.iter().product();
    let mut kernel = vec![0.0f64; table_len * (n + 1)];
    let mut disp = vec![0.0; n];
    for (t, entry) in kernel.chunks_exact_mut(n + 1).enumerate() {
        let mut rest = t;
        for k in (0..n).rev() {
            let i = rest % span[k];
            rest /= span[k];
            disp[k] = (i as f64 - (dims[k] - 1) as f64) * header.spacing(k);
        }
        let e = cauchy_kernel(&Paravector::new(x0, disp.clone()))?;
        entry[0] = e.coeffs()[0].re * vol;
        for k in 0..n {
            entry[k + 1] = e.coeffs()[1 << k].re * vol;
        }
    }

    let coords: Vec<Vec<usize>> = (0..points)
        .map(|p| {
            let mut v = vec![0; n];
            header.unravel(p, &mut v);
            v
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); f.data().len()];
    out.par_chunks_mut(blades).enumerate().for_each(|(p, slot)| {
        let mut kmv = vec![Complex64::new(0.0, 0.0); blades];
        let xp = &coords[p];
        for (q, yq) in coords.iter().enumerate() {
            let mut didx = 0usize;
            for k in 0..n {
                didx = didx * span[k] + xp[k] + dims[k] - 1 - yq[k];
            }
            let kc = &kernel[didx * (n + 1)..(didx + 1) * (n + 1)];
            kmv[0] = Complex64::new(kc[0], 0.0);
            for k in 0..n {
                kmv[1 << k] = Complex64::new(kc[k + 1], 0.0);
            }
            mul_acc(&kmv, f.at(q), slot);
        }
    });
    GridField::from_data(header, out)
}

/// Largest `|Σ_{k=0}^n ek ∂k F|` over interior slices, with centered
/// differences in every direction.
pub fn dirac_residual(slab: &SlabField) -> Result<f64> {
    if slab.len() < 3 {
        return Err(Error::InsufficientSlices(slab.len()));
    }
    let step = slab.uniform_spacing()?;
    let header = slab.header();
    let n = header.n();
    let blades = header.blades();
    let gens: Vec<Vec<Complex64>> = (1..=n)
        .map(|j| {
            let mut g = vec![Complex64::new(0.0, 0.0); blades];
            g[1 << (j - 1)] = Complex64::new(1.0, 0.0);
            g
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 1..slab.len() - 1 {
        let mut df = x0_derivative(slab, i, step);
        for (k, g) in gens.iter().enumerate() {
            let dk = axis_derivative(&slab.slices[i], k);
            for p in 0..header.points() {
                mul_acc(g, dk.at(p), df.at_mut(p));
            }
        }
        worst = worst.max(df.max_norm());
    }
    Ok(worst)
}

/// Ball-average quadrature used by [`mean_value_defect`].
pub const BALL_RADIAL_ORDER: usize = 8;
pub const BALL_ANGULAR_ORDER: usize = 10;

/// Multilinear interpolation of the slab at `(x0, x̲)`: periodic in `x̲`,
/// linear between bracketing slices in `x0`.
pub fn interpolate(slab: &SlabField, x0: f64, x: &[f64]) -> Result<Vec<Complex64>> {
    let header = slab.header();
    let n = header.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { left: x.len(), right: n });
    }
    let xs = slab.x0_values();
    if x0 < xs[0] || x0 > xs[xs.len() - 1] {
        return Err(Error::BallOutsideSlab(format!(
            "height {x0} outside [{}, {}]",
            xs[0],
            xs[xs.len() - 1]
        )));
    }
    let upper = xs.partition_point(|&v| v <= x0).clamp(1, xs.len().max(2) - 1);
    let (lo, hi) = if xs.len() == 1 { (0, 0) } else { (upper - 1, upper) };
    let t0 = if hi == lo { 0.0 } else { (x0 - xs[lo]) / (xs[hi] - xs[lo]) };

    // horizontal cell and weights
    let mut base = vec![0usize; n];
    let mut frac = vec![0.0; n];
    for k in 0..n {
        let d = header.dims()[k];
        let u = (x[k] + 0.5 * header.extent()[k]) / header.spacing(k);
        let fl = u.floor();
        base[k] = (fl as i64).rem_euclid(d as i64) as usize;
        frac[k] = u - fl;
    }
    let blades = header.blades();
    let mut out = vec![Complex64::new(0.0, 0.0); blades];
    let mut corner = vec![0usize; n];
    for (slice, ws) in [(lo, 1.0 - t0), (hi, t0)] {
        if ws == 0.0 {
            continue;
        }
        let field = &slab.slices[slice];
        for bits in 0..(1usize << n) {
            let mut w = ws;
            for k in 0..n {
                let up = bits >> k & 1 == 1;
                corner[k] = if up { (base[k] + 1) % header.dims()[k] } else { base[k] };
                w *= if up { frac[k] } else { 1.0 - frac[k] };
            }
            if w == 0.0 {
                continue;
            }
            let v = field.at(header.ravel(&corner));
            for b in 0..blades {
                out[b] += v[b] * w;
            }
        }
    }
    Ok(out)
}

/// `|ball average of F - F(center)|` for the ball of `radius` about
/// `center` in `R^{n+1}`, with interpolated samples.
pub fn mean_value_defect(slab: &SlabField, center: &Paravector, radius: f64) -> Result<f64> {
    let header = slab.header();
    let n = header.n();
    if center.dim() != n {
        return Err(Error::DimensionMismatch {
            left: center.dim(),
            right: n,
        });
    }
    let mut min_step = header.max_spacing();
    if slab.len() >= 2 {
        let dx0 = slab
            .x0_values()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max);
        min_step = min_step.max(dx0);
    }
    if !(radius.is_finite() && radius >= 2.0 * min_step * (1.0 - 1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "radius {radius} is below two grid spacings ({})",
            2.0 * min_step
        )));
    }
    let xs = slab.x0_values();
    if center.x0 - radius < xs[0] || center.x0 + radius > xs[xs.len() - 1] {
        return Err(Error::BallOutsideSlab(format!(
            "ball [{}, {}] in x0 exceeds slab [{}, {}]",
            center.x0 - radius,
            center.x0 + radius,
            xs[0],
            xs[xs.len() - 1]
        )));
    }
    let rule = BallRule::new(n + 1, BALL_RADIAL_ORDER, BALL_ANGULAR_ORDER);
    let blades = header.blades();
    let mut avg = vec![Complex64::new(0.0, 0.0); blades];
    let mut point = vec![0.0; n];
    for (y, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x0 = center.x0 + radius * y[0];
        for k in 0..n {
            point[k] = center.vec[k] + radius * y[k + 1];
        }
        let v = interpolate(slab, x0, &point)?;
        for b in 0..blades {
            avg[b] += v[b] * w;
        }
    }
    let c = interpolate(slab, center.x0, &center.vec)?;
    Ok(avg.iter().zip(&c).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
}
