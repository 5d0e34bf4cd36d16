//! Riesz transforms, the Clifford Hilbert transformation, Hardy projections
//! and Cauchy–Riemann residuals on grid fields.
//!
//! Every singular multiplier of the form `ξ/|ξ|` is set to zero at the DC
//! frequency. Identities such as `H² = I` therefore hold modulo the constant
//! mode only.

use num_complex::Complex64;

use crate::clifford::{blade_sign_l, mul_acc, BladeIndex, Multivector};
use crate::error::{Error, Result};
use crate::extension::{axis_derivative, x0_derivative, SlabField};
use crate::field::{FieldHeader, GridField, SpectralField};
use crate::spectral::{apply_left_multiplier, apply_scalar_multiplier, chi_projector, dft_forward, euclidean_norm, Side};

/// Summary of one operator application.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorReport {
    pub operator: String,
    pub input: FieldHeader,
    pub output: FieldHeader,
    /// True when the operator zeroes or splits the DC coefficient by policy.
    pub dc_policy_applied: bool,
    pub max_residual: Option<f64>,
    pub mean_residual: Option<f64>,
}

impl OperatorReport {
    pub fn new(operator: &str, input: &FieldHeader, output: &FieldHeader, dc_policy_applied: bool) -> Self {
        OperatorReport {
            operator: operator.to_string(),
            input: input.clone(),
            output: output.clone(),
            dc_policy_applied,
            max_residual: None,
            mean_residual: None,
        }
    }

    pub fn with_residuals(mut self, max: f64, mean: f64) -> Self {
        debug_assert!(max.is_finite() && max >= 0.0 && mean.is_finite() && mean >= 0.0);
        self.max_residual = Some(max);
        self.mean_residual = Some(mean);
        self
    }

    /// Line-oriented `key=value` rendering.
    pub fn to_key_values(&self) -> String {
        fn header_kv(prefix: &str, h: &FieldHeader) -> String {
            let dims: Vec<String> = h.dims().iter().map(|d| d.to_string()).collect();
            let ext: Vec<String> = h.extent().iter().map(|l| format!("{l:e}")).collect();
            format!(
                "{prefix}.n={}\n{prefix}.dims={}\n{prefix}.extent={}\n{prefix}.blade_order={}\n",
                h.n(),
                dims.join(","),
                ext.join(","),
                h.blade_order().tag()
            )
        }
        let mut s = format!("operator={}\n", self.operator);
        s += &header_kv("input", &self.input);
        s += &header_kv("output", &self.output);
        s += &format!("dc_policy_applied={}\n", self.dc_policy_applied);
        if let Some(m) = self.max_residual {
            s += &format!("max_residual={m:e}\n");
        }
        if let Some(m) = self.mean_residual {
            s += &format!("mean_residual={m:e}\n");
        }
        s
    }
}

/// Fourier multiplier of `Rj`: `-i ξj/|ξ|`, zero at DC.
pub fn riesz_multiplier(axis: usize, xi: &[f64]) -> Complex64 {
    let r = euclidean_norm(xi);
    if r == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -xi[axis - 1] / r)
    }
}

/// Riesz transform `Rj` (1-based axis).
pub fn riesz(axis: usize, f: &GridField) -> Result<GridField> {
    let n = f.header().n();
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    Ok(apply_scalar_multiplier(f, |xi| riesz_multiplier(axis, xi)))
}

/// Fourier multiplier of `H = -Σ ek Rk`: `i ξ̲/|ξ|`, zero at DC.
pub fn hilbert_multiplier(xi: &[f64]) -> Result<Multivector> {
    let mut m = Multivector::zero(xi.len())?;
    let r = euclidean_norm(xi);
    if r > 0.0 {
        let c = m.coeffs_mut();
        for (k, &x) in xi.iter().enumerate() {
            c[1 << k] = Complex64::new(0.0, x / r);
        }
    }
    Ok(m)
}

/// Clifford Hilbert transformation, acting on the left of `f̂`.
pub fn hilbert(f: &GridField) -> Result<GridField> {
    apply_left_multiplier(f, hilbert_multiplier)
}

/// `½(I ± H)`, i.e. the multiplier `χ±(ξ)`; the DC coefficient is split in half.
pub fn hardy_project(side: Side, f: &GridField) -> Result<GridField> {
    apply_left_multiplier(f, |xi| chi_projector(side, xi))
}

/// Left-multiplies every sample of `f` by the constant `m`.
pub fn left_multiply(m: &Multivector, f: &GridField) -> Result<GridField> {
    if m.dim() != f.header().n() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: f.header().n(),
        });
    }
    let mut out = GridField::zeros(f.header().clone());
    for p in 0..f.len() {
        mul_acc(m.coeffs(), f.at(p), out.at_mut(p));
    }
    Ok(out)
}

/// `Σ_ξ ψ(ξ) f̂(ξ) Π L_k^{-1}` with `ψ` acting from the left.
pub fn spectrum_pairing(f: &GridField, psi: &SpectralField) -> Result<Multivector> {
    f.header().ensure_compatible(psi.header())?;
    let fh = dft_forward(f);
    let mut acc = Multivector::zero(f.header().n())?;
    for p in 0..fh.len() {
        mul_acc(psi.at(p), fh.at(p), acc.coeffs_mut());
    }
    Ok(acc.scale_real(1.0 / f.header().volume()))
}

fn check_interior(slab: &SlabField) -> Result<f64> {
    if slab.len() < 3 {
        return Err(Error::InsufficientSlices(slab.len()));
    }
    slab.uniform_spacing()
}

/// Splits a paravector-valued slab `F = f0 + Σ fj ej` into the conjugate
/// harmonic system `(u0, u1, ..., un) = (f0, -f1, ..., -fn)`, each as a
/// scalar slab. `F` is monogenic iff the tuple satisfies the generalized
/// Cauchy–Riemann equations.
pub fn conjugate_harmonic_system(slab: &SlabField) -> Result<Vec<SlabField>> {
    let n = slab.header().n();
    (0..=n)
        .map(|j| {
            let (blade, sign) = if j == 0 { (0usize, 1.0) } else { (1usize << (j - 1), -1.0) };
            let slices = slab
                .slices()
                .iter()
                .map(|s| {
                    let mut out = GridField::zeros(s.header().clone());
                    let chan: Vec<Complex64> = s.channel(blade).iter().map(|c| c * sign).collect();
                    out.set_channel(0, &chan);
                    out
                })
                .collect();
            SlabField::new(slab.x0_values().to_vec(), slices)
        })
        .collect()
}

/// Largest centered-difference residual of the generalized Cauchy–Riemann
/// system `Σ_j ∂j uj = 0`, `∂k uj = ∂j uk` (`0 <= j < k <= n`) over all
/// interior slices. Only the scalar coefficient of each `uj` is read.
pub fn gcr_residual(u: &[SlabField]) -> Result<f64> {
    let first = u.first().ok_or(Error::InsufficientSlices(0))?;
    let n = first.header().n();
    if u.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: n + 1,
        });
    }
    let h0 = check_interior(first)?;
    for s in &u[1..] {
        s.header().ensure_compatible(first.header())?;
        if s.x0_values() != first.x0_values() {
            return Err(Error::InvalidSlab("components sampled at different heights".into()));
        }
    }
    let points = first.header().points();
    let mut worst = 0.0f64;
    for i in 1..first.len() - 1 {
        // grad[j][k] = ∂k uj, scalar channel only
        let grad: Vec<Vec<Vec<Complex64>>> = u
            .iter()
            .map(|comp| {
                std::iter::once(x0_derivative(comp, i, h0).channel(0))
                    .chain((0..n).map(|k| axis_derivative(&comp.slices()[i], k).channel(0)))
                    .collect()
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (j + 1..=n).map(move |k| (j, k))).collect();
        for p in 0..points {
            let div: Complex64 = grad.iter().enumerate().map(|(j, g)| g[j][p]).sum();
            worst = worst.max(div.norm());
            for &(j, k) in &pairs {
                worst = worst.max((grad[j][k][p] - grad[k][j][p]).norm());
            }
        }
    }
    Ok(worst)
}

/// Largest centered-difference residual of the blade-wise system
/// `∂0 f_T + Σ_j (-1)^{l_j} ∂j f_{T_j} = 0` (all blades `T`), the
/// component form of `DF = 0`.
pub fn generalized_cr_residual(slab: &SlabField) -> Result<f64> {
    let h0 = check_interior(slab)?;
    let header = slab.header();
    let n = header.n();
    let blades = header.blades();
    // (sign, source blade) per (T, j)
    let mut table = vec![Vec::with_capacity(n); blades];
    for (t, row) in table.iter_mut().enumerate() {
        for j in 1..=n {
            let (l, tj) = blade_sign_l(j, BladeIndex::new(t as u32, n)?, n)?;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            row.push((sign, tj.mask() as usize));
        }
    }
    let mut worst = 0.0f64;
    for i in 1..slab.len() - 1 {
        let d0 = x0_derivative(slab, i, h0);
        let dj: Vec<GridField> = (0..n).map(|k| axis_derivative(&slab.slices()[i], k)).collect();
        for p in 0..header.points() {
            for (t, row) in table.iter().enumerate() {
                let mut r = d0.at(p)[t];
                for (j, &(sign, tj)) in row.iter().enumerate() {
                    r += dj[j].at(p)[tj] * sign;
                }
                worst = worst.max(r.norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Paravector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plane_wave(header: &FieldHeader, m: &[i64], v: &Multivector) -> GridField {
        let xi: Vec<f64> = m.iter().zip(header.extent()).map(|(&m, &l)| m as f64 / l).collect();
        GridField::from_fn(header.clone(), |x| {
            let ph: f64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
            v.scale(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * ph))
        })
        .unwrap()
    }

    #[test]
    fn riesz_on_plane_wave() {
        let h = FieldHeader::new(vec![16, 8], vec![1.0, 2.0]).unwrap();
        let one = Multivector::one(2).unwrap();
        let m = [3, -2];
        let f = plane_wave(&h, &m, &one);
        let xi = [3.0, -1.0];
        let r = euclidean_norm(&xi);
        for axis in 1..=2 {
            let out = riesz(axis, &f).unwrap();
            let expected = f.scale(c(0.0, -xi[axis - 1] / r));
            assert!(out.sub(&expected).unwrap().max_norm() < 1e-13);
        }
        assert!(matches!(riesz(3, &f), Err(Error::AxisOutOfRange { axis: 3, n: 2 })));
        assert!(riesz(0, &f).is_err());
    }

    #[test]
    fn one_dimensional_riesz_is_signum_multiplier() {
        let h = FieldHeader::cube(1, 16, 1.0).unwrap();
        let one = Multivector::one(1).unwrap();
        for m in [-5i64, -1, 2, 7] {
            let f = plane_wave(&h, &[m], &one);
            let out = riesz(1, &f).unwrap();
            let expected = f.scale(c(0.0, -(m.signum() as f64)));
            assert!(out.sub(&expected).unwrap().max_norm() < 1e-13);
        }
    }

    #[test]
    fn hilbert_on_scalar_plane_wave() {
        let h = FieldHeader::cube(3, 8, 1.0).unwrap();
        let one = Multivector::one(3).unwrap();
        let m = [1, 2, -2];
        let f = plane_wave(&h, &m, &one);
        let out = hilbert(&f).unwrap();
        let mult = hilbert_multiplier(&[1.0, 2.0, -2.0]).unwrap();
        let expected = left_multiply(&mult, &f).unwrap();
        assert!(out.sub(&expected).unwrap().max_norm() < 1e-13);
        assert!((mult.get(BladeIndex::generator(2, 3).unwrap()) - c(0.0, 2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn hilbert_kills_constants() {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let v = Multivector::from_coeffs(2, vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0), c(0.5, 0.5)]).unwrap();
        let f = GridField::from_fn(h, |_| v.clone()).unwrap();
        assert!(hilbert(&f).unwrap().max_norm() < 1e-14);
    }

    #[test]
    fn hardy_project_splits_constants_in_half() {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let v = Multivector::generator(2, 2).unwrap();
        let f = GridField::from_fn(h, |_| v.clone()).unwrap();
        let plus = hardy_project(Side::Plus, &f).unwrap();
        let expected = f.scale(c(0.5, 0.0));
        assert!(plus.sub(&expected).unwrap().max_norm() < 1e-14);
    }

    #[test]
    fn pairing_with_zero_test_function_vanishes() {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let f = plane_wave(&h, &[1, 1], &Multivector::one(2).unwrap());
        let psi = SpectralField::zeros(h);
        assert!(spectrum_pairing(&f, &psi).unwrap().is_zero());
    }

    #[test]
    fn pairing_detects_lower_hardy_content() {
        // f = χ₋ applied to a plane wave at ξ0, ψ = φ χ₋ with φ(ξ0) != 0
        let h = FieldHeader::cube(2, 16, 1.0).unwrap();
        let g = plane_wave(&h, &[3, 1], &Multivector::one(2).unwrap());
        let f = hardy_project(Side::Minus, &g).unwrap();
        let psi = crate::spectral::make_psi_minus(&h, &crate::spectral::Envelope::radial(1.0, 6.0, 1.0)).unwrap();
        let pairing = spectrum_pairing(&f, &psi).unwrap();
        // single mode: φ(ξ0) χ₋ χ₋ ĝ(ξ0) / L^n = φ(ξ0) χ₋(ξ0)
        let xi = [3.0, 1.0];
        let env = crate::spectral::Envelope::radial(1.0, 6.0, 1.0).value(&xi);
        let expected = chi_projector(Side::Minus, &xi).unwrap().scale(env);
        assert!(pairing.max_abs_diff(&expected) < 1e-12);
        assert!(pairing.norm() > 0.1);
    }

    fn linear_slab(header: &FieldHeader, x0s: &[f64], f: impl Fn(f64, &[f64]) -> f64) -> SlabField {
        let slices = x0s
            .iter()
            .map(|&x0| {
                GridField::from_fn(header.clone(), |x| {
                    Multivector::scalar(header.n(), c(f(x0, x), 0.0)).unwrap()
                })
                .unwrap()
            })
            .collect();
        SlabField::new(x0s.to_vec(), slices).unwrap()
    }

    #[test]
    fn gcr_residual_of_constants_and_linear_violation() {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let x0s = [0.5, 0.6, 0.7];
        let consts: Vec<SlabField> = (0..3).map(|j| linear_slab(&h, &x0s, |_, _| j as f64 + 1.0)).collect();
        assert!(gcr_residual(&consts).unwrap() < 1e-12);

        // u1 = x0, everything else zero: ∂0 u1 - ∂1 u0 = 1
        let u = vec![
            linear_slab(&h, &x0s, |_, _| 0.0),
            linear_slab(&h, &x0s, |x0, _| x0),
            linear_slab(&h, &x0s, |_, _| 0.0),
        ];
        assert!((gcr_residual(&u).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gcr_residual_errors() {
        let h = FieldHeader::cube(1, 8, 1.0).unwrap();
        let thin: Vec<SlabField> = (0..2).map(|_| linear_slab(&h, &[0.1, 0.2], |_, _| 0.0)).collect();
        assert!(matches!(gcr_residual(&thin), Err(Error::InsufficientSlices(2))));
        let one: Vec<SlabField> = (0..1).map(|_| linear_slab(&h, &[0.1, 0.2, 0.3], |_, _| 0.0)).collect();
        assert!(matches!(gcr_residual(&one), Err(Error::DimensionMismatch { .. })));
        assert!(gcr_residual(&[]).is_err());
    }

    #[test]
    fn generalized_residual_of_linear_scalar_in_x0() {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let s = linear_slab(&h, &[0.1, 0.2, 0.3, 0.4], |x0, _| x0);
        assert!((generalized_cr_residual(&s).unwrap() - 1.0).abs() < 1e-12);
        let thin = linear_slab(&h, &[0.1, 0.2], |x0, _| x0);
        assert!(matches!(generalized_cr_residual(&thin), Err(Error::InsufficientSlices(2))));
    }

    #[test]
    fn generalized_residual_of_sampled_kernel_is_small() {
        // e⁺(·, ξ0) on a fine grid; residual is the O(h²) stencil error
        let xi = [2.0, -1.0];
        let mut prev = f64::INFINITY;
        for d in [32usize, 64, 128] {
            let h = FieldHeader::cube(2, d, 1.0).unwrap();
            let step = 1.0 / d as f64;
            let x0s: Vec<f64> = (0..3).map(|i| 0.2 + i as f64 * step).collect();
            let slices = x0s
                .iter()
                .map(|&x0| {
                    GridField::from_fn(h.clone(), |x| {
                        crate::spectral::e_kernel(Side::Plus, &Paravector::new(x0, x.to_vec()), &xi).unwrap()
                    })
                    .unwrap()
                })
                .collect();
            let slab = SlabField::new(x0s, slices).unwrap();
            let r = generalized_cr_residual(&slab).unwrap();
            assert!(r < prev / 3.0, "d={d}: {r} vs {prev}");
            prev = r;
        }
    }
}
