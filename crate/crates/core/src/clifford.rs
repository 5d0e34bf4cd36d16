//! Arithmetic in the complex Clifford algebra generated by `e1..en` with
//! `ej ek + ek ej = -2 δjk`.
//!
//! Blades are stored as bitmasks (bit `j-1` set iff `ej` is a factor), and a
//! multivector is the dense vector of its `2^n` complex coefficients in that
//! binary-counting order. Product signs are computed with integer arithmetic,
//! so the anticommutation relations hold exactly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported algebra dimension.
pub const MAX_DIM: usize = 8;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

/// A basis blade `e_T`, encoded as the bitmask of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn new(mask: u32, n: usize) -> Result<Self> {
        check_dim(n)?;
        if mask >> n != 0 {
            return Err(Error::InvalidBlade { mask, n });
        }
        Ok(BladeIndex(mask))
    }

    /// Blade of the single generator `ej` (1-based).
    pub fn generator(j: usize, n: usize) -> Result<Self> {
        check_dim(n)?;
        if j == 0 || j > n {
            return Err(Error::InvalidGenerator { j, n });
        }
        Ok(BladeIndex(1 << (j - 1)))
    }

    /// Builds a blade from 1-based generator indices; repeated indices cancel.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &j in indices {
            mask ^= Self::generator(j, n)?.0;
        }
        Ok(BladeIndex(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, j: usize) -> bool {
        (1..=32).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    /// Sign `(-1)^{k(k+1)/2}` picked up by `e_T` under Clifford conjugation.
    pub fn conjugation_sign(self) -> i8 {
        let k = self.grade();
        if (k * (k + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for j in 1..=32 {
            if self.contains(j) {
                write!(f, "{j}")?;
            }
        }
        Ok(())
    }
}

/// Sign of `e_S e_T` for raw masks; the product blade is `S xor T`.
#[inline]
pub(crate) fn product_sign(s: u32, t: u32) -> i8 {
    // transpositions: for each generator of T, the generators of S that are
    // larger and must be moved past it
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (s >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    // each shared generator squares to -1
    swaps += (s & t).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `e_S e_T = sign · e_{S△T}`.
pub fn blade_product(s: BladeIndex, t: BladeIndex, n: usize) -> Result<(i8, BladeIndex)> {
    let s = BladeIndex::new(s.0, n)?;
    let t = BladeIndex::new(t.0, n)?;
    Ok((product_sign(s.0, t.0), BladeIndex(s.0 ^ t.0)))
}

/// For `e_T`, the blade `T_j = T △ {j}` and the exponent `l` with
/// `(-1)^l ej e_{T_j} = e_T`.
///
/// `l` is counted directly as the number of times `j` occurs in `T_j` plus
/// the number of generators of `T_j` below `j`.
pub fn blade_sign_l(j: usize, t: BladeIndex, n: usize) -> Result<(u32, BladeIndex)> {
    let ej = BladeIndex::generator(j, n)?;
    let t = BladeIndex::new(t.0, n)?;
    let tj = BladeIndex(t.0 ^ ej.0);
    let shared = u32::from(tj.contains(j));
    let below = (tj.0 & (ej.0 - 1)).count_ones();
    Ok((shared + below, tj))
}

/// An element of the complex Clifford algebra `C^(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::zero_unchecked(n))
    }

    pub(crate) fn zero_unchecked(n: usize) -> Self {
        Multivector {
            n,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << n],
        }
    }

    pub fn scalar(n: usize, value: Complex64) -> Result<Self> {
        let mut m = Self::zero(n)?;
        m.coeffs[0] = value;
        Ok(m)
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::scalar(n, Complex64::new(1.0, 0.0))
    }

    pub fn blade(n: usize, blade: BladeIndex, value: Complex64) -> Result<Self> {
        let blade = BladeIndex::new(blade.0, n)?;
        let mut m = Self::zero(n)?;
        m.coeffs[blade.0 as usize] = value;
        Ok(m)
    }

    /// The generator `ej` (1-based).
    pub fn generator(j: usize, n: usize) -> Result<Self> {
        Self::blade(n, BladeIndex::generator(j, n)?, Complex64::new(1.0, 0.0))
    }

    /// `Σ vk ek` with real components.
    pub fn vector(v: &[f64]) -> Result<Self> {
        let mut m = Self::zero(v.len())?;
        for (k, &x) in v.iter().enumerate() {
            m.coeffs[1 << k] = Complex64::new(x, 0.0);
        }
        Ok(m)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::SampleCount {
                expected: 1 << n,
                got: coeffs.len(),
            });
        }
        Ok(Multivector { n, coeffs })
    }

    pub(crate) fn from_slice_unchecked(n: usize, coeffs: &[Complex64]) -> Self {
        debug_assert_eq!(coeffs.len(), 1 << n);
        Multivector {
            n,
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, blade: BladeIndex) -> Complex64 {
        self.coeffs.get(blade.0 as usize).copied().unwrap_or_default()
    }

    pub fn set(&mut self, blade: BladeIndex, value: Complex64) -> Result<()> {
        let blade = BladeIndex::new(blade.0, self.n)?;
        self.coeffs[blade.0 as usize] = value;
        Ok(())
    }

    /// `Sc x`, the coefficient of the empty blade.
    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `NSc x = x - Sc x`.
    pub fn non_scalar_part(&self) -> Multivector {
        let mut m = self.clone();
        m.coeffs[0] = Complex64::new(0.0, 0.0);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Geometric product `self · other`.
    pub fn multiply(&self, other: &Multivector) -> Result<Multivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Multivector::zero_unchecked(self.n);
        mul_acc(&self.coeffs, &other.coeffs, &mut out.coeffs);
        Ok(out)
    }

    /// Clifford conjugate: reverses blade order, negates generators and
    /// complex-conjugates every coefficient.
    pub fn conjugate(&self) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                let c = c.conj();
                if BladeIndex(mask as u32).conjugation_sign() < 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Multivector { n: self.n, coeffs }
    }

    /// `Σ_T |x_T|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|x| = (Σ_T |x_T|²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Sc(x̄ x)` evaluated through the algebra product; agrees with
    /// [`norm_sqr`](Self::norm_sqr) up to rounding.
    pub fn scalar_norm_sqr(&self) -> Complex64 {
        let conj = self.conjugate();
        let mut acc = Complex64::new(0.0, 0.0);
        for (mask, c) in conj.coeffs.iter().enumerate() {
            // only e_T e_T contributes to the scalar part
            let sign = f64::from(product_sign(mask as u32, mask as u32));
            acc += c * self.coeffs[mask] * sign;
        }
        acc
    }

    pub fn scale(&self, factor: Complex64) -> Multivector {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Multivector {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `out += a · b` on raw coefficient slices of equal length `2^n`.
/// Zero coefficients of `a` are skipped, which keeps left multiplication by
/// paravector-like multipliers at `O((n+1) 2^n)`.
#[inline]
pub(crate) fn mul_acc(a: &[Complex64], b: &[Complex64], out: &mut [Complex64]) {
    for (s, &ca) in a.iter().enumerate() {
        if ca.re == 0.0 && ca.im == 0.0 {
            continue;
        }
        for (t, &cb) in b.iter().enumerate() {
            let prod = ca * cb;
            if product_sign(s as u32, t as u32) > 0 {
                out[s ^ t] += prod;
            } else {
                out[s ^ t] -= prod;
            }
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i){}", c.re, c.im, BladeIndex(mask as u32))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale_real(-1.0)
    }
}

/// Panics on dimension mismatch; use [`Multivector::multiply`] for a checked product.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.multiply(rhs).expect("multivector dimension mismatch")
    }
}

/// A point `x0 + Σ xk ek` of `R^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector {
    pub x0: f64,
    pub vec: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, vec: Vec<f64>) -> Self {
        Paravector { x0, vec }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x0 * self.x0 + self.vec.iter().map(|x| x * x).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn to_multivector(&self) -> Result<Multivector> {
        let mut m = Multivector::vector(&self.vec)?;
        m.coeffs[0] = Complex64::new(self.x0, 0.0);
        Ok(m)
    }

    /// `x̄ = x0 - x̲`.
    pub fn conjugate(&self) -> Paravector {
        Paravector {
            x0: self.x0,
            vec: self.vec.iter().map(|x| -x).collect(),
        }
    }

    /// `x⁻¹ = x̄ / |x|²`.
    pub fn inverse(&self) -> Result<Multivector> {
        let r2 = self.norm_sqr();
        if r2 == 0.0 {
            return Err(Error::ZeroParavector);
        }
        Ok(self.conjugate().to_multivector()?.scale_real(1.0 / r2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn b(idx: &[usize], n: usize) -> BladeIndex {
        BladeIndex::from_indices(idx, n).unwrap()
    }

    #[test]
    fn blade_product_examples() {
        assert_eq!(blade_product(b(&[1], 2), b(&[1], 2), 2).unwrap(), (-1, b(&[], 2)));
        assert_eq!(blade_product(b(&[1], 2), b(&[2], 2), 2).unwrap(), (1, b(&[1, 2], 2)));
        assert_eq!(blade_product(b(&[2], 2), b(&[1], 2), 2).unwrap(), (-1, b(&[1, 2], 2)));
        assert_eq!(blade_product(b(&[1, 2], 2), b(&[2], 2), 2).unwrap(), (-1, b(&[1], 2)));
    }

    #[test]
    fn blade_out_of_range() {
        assert!(matches!(BladeIndex::new(0b100, 2), Err(Error::InvalidBlade { .. })));
        assert!(blade_product(BladeIndex(0b1000), BladeIndex(1), 3).is_err());
        assert!(matches!(Multivector::zero(9), Err(Error::InvalidDimension(9))));
    }

    #[test]
    fn generator_squares_and_anticommutes() {
        let e1 = Multivector::generator(1, 3).unwrap();
        let e2 = Multivector::generator(2, 3).unwrap();
        assert_eq!(&e1 * &e1, Multivector::scalar(3, c(-1.0, 0.0)).unwrap());
        assert!((&(&e1 * &e2) + &(&e2 * &e1)).is_zero());
    }

    #[test]
    fn complementary_idempotents_annihilate() {
        let n = 2;
        let ie1 = Multivector::blade(n, b(&[1], n), c(0.0, 0.5)).unwrap();
        let half = Multivector::scalar(n, c(0.5, 0.0)).unwrap();
        let p = &half + &ie1;
        let m = &half - &ie1;
        assert!((&p * &m).norm() < 1e-16);
        assert!((&m * &p).norm() < 1e-16);
    }

    #[test]
    fn identity_is_neutral() {
        let one = Multivector::one(3).unwrap();
        let x = Multivector::from_coeffs(3, (0..8).map(|k| c(k as f64, -(k as f64) / 3.0)).collect())
            .unwrap();
        assert_eq!(&one * &x, x);
        assert_eq!(&x * &one, x);
    }

    #[test]
    fn conjugate_examples() {
        let one = Multivector::one(2).unwrap();
        assert_eq!(one.conjugate(), one);
        let e1 = Multivector::generator(1, 2).unwrap();
        assert_eq!(e1.conjugate(), -&e1);
        let e12 = Multivector::blade(2, b(&[1, 2], 2), c(1.0, 0.0)).unwrap();
        assert_eq!(e12.conjugate(), -&e12);
        let ie1 = Multivector::blade(2, b(&[1], 2), c(0.0, 1.0)).unwrap();
        // complex unit is conjugated as well
        assert_eq!(ie1.conjugate(), Multivector::blade(2, b(&[1], 2), c(0.0, 1.0)).unwrap());
    }

    #[test]
    fn norm_examples() {
        let e1 = Multivector::generator(1, 2).unwrap();
        assert_eq!(e1.norm(), 1.0);
        let one_e1 = &Multivector::one(2).unwrap() + &e1;
        assert!((one_e1.norm() - 2f64.sqrt()).abs() < 1e-15);
        let chi = &Multivector::scalar(2, c(0.5, 0.0)).unwrap()
            + &Multivector::blade(2, b(&[1], 2), c(0.0, 0.5)).unwrap();
        assert!((chi.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(Multivector::zero(4).unwrap().norm(), 0.0);
    }

    #[test]
    fn paravector_inverse_examples() {
        let one = Paravector::new(1.0, vec![0.0, 0.0]);
        assert_eq!(one.inverse().unwrap(), Multivector::one(2).unwrap());

        let e1 = Paravector::new(0.0, vec![1.0, 0.0]);
        let inv = e1.inverse().unwrap();
        assert_eq!(inv, -&Multivector::generator(1, 2).unwrap());
        assert_eq!(&e1.to_multivector().unwrap() * &inv, Multivector::one(2).unwrap());

        let x = Paravector::new(1.0, vec![1.0, 0.0]);
        let inv = x.inverse().unwrap();
        let expected = Multivector::vector(&[-0.5, 0.0]).unwrap();
        let expected = &expected + &Multivector::scalar(2, c(0.5, 0.0)).unwrap();
        assert_eq!(inv, expected);
        let xm = x.to_multivector().unwrap();
        assert_eq!(&xm * &inv, Multivector::one(2).unwrap());
        assert_eq!(&inv * &xm, Multivector::one(2).unwrap());

        assert!(matches!(
            Paravector::new(0.0, vec![0.0; 3]).inverse(),
            Err(Error::ZeroParavector)
        ));
    }

    #[test]
    fn blade_sign_l_examples() {
        let n = 2;
        assert_eq!(blade_sign_l(1, b(&[1, 2], n), n).unwrap(), (0, b(&[2], n)));
        assert_eq!(blade_sign_l(2, b(&[1, 2], n), n).unwrap(), (1, b(&[1], n)));
        assert_eq!(blade_sign_l(1, b(&[], n), n).unwrap(), (1, b(&[1], n)));
        assert!(matches!(
            blade_sign_l(3, b(&[], n), n),
            Err(Error::InvalidGenerator { j: 3, n: 2 })
        ));
        assert!(blade_sign_l(0, b(&[], n), n).is_err());
    }

    #[test]
    fn blade_sign_l_agrees_with_product_exhaustively() {
        for n in 1..=5 {
            for mask in 0..(1u32 << n) {
                let t = BladeIndex::new(mask, n).unwrap();
                for j in 1..=n {
                    let (l, tj) = blade_sign_l(j, t, n).unwrap();
                    let (sign, result) =
                        blade_product(BladeIndex::generator(j, n).unwrap(), tj, n).unwrap();
                    assert_eq!(result, t);
                    let parity = if l % 2 == 0 { 1 } else { -1 };
                    assert_eq!(parity * sign, 1, "n={n} j={j} T={t}");
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = Multivector::one(2).unwrap();
        let b = Multivector::one(3).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn display_lists_nonzero_blades() {
        let x = Multivector::blade(3, b(&[1, 3], 3), c(2.0, -1.0)).unwrap();
        assert_eq!(x.to_string(), "(2-1i)e13");
        assert_eq!(Multivector::zero(2).unwrap().to_string(), "0");
    }
}
