//! Grid metadata and Clifford-valued sample containers.
//!
//! Samples are stored point-major: the `2^n` coefficients of grid point `p`
//! occupy `data[p * 2^n .. (p + 1) * 2^n]`, and points are scanned row-major
//! (first axis slowest). The on-disk layout uses the same order.

use num_complex::Complex64;

use crate::clifford::{check_dim, Multivector};
use crate::error::{Error, Result};

/// Blade ordering of stored coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BladeOrder {
    /// Coefficient of `e_T` at index `Σ_{j∈T} 2^{j-1}`.
    BitmaskV1,
}

impl BladeOrder {
    pub fn tag(self) -> &'static str {
        match self {
            BladeOrder::BitmaskV1 => "bitmask-v1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "bitmask-v1" => Some(BladeOrder::BitmaskV1),
            _ => None,
        }
    }
}

/// Uniform periodic grid over the centered box `Π [-L_k/2, L_k/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldHeader {
    n: usize,
    dims: Vec<usize>,
    extent: Vec<f64>,
    blade_order: BladeOrder,
}

impl FieldHeader {
    pub fn new(dims: Vec<usize>, extent: Vec<f64>) -> Result<Self> {
        let n = dims.len();
        check_dim(n)?;
        if extent.len() != n {
            return Err(Error::InvalidHeader(format!(
                "{} extents for {} axes",
                extent.len(),
                n
            )));
        }
        for (k, &d) in dims.iter().enumerate() {
            if d < 2 || d % 2 != 0 {
                return Err(Error::InvalidHeader(format!(
                    "axis {} has {} samples; need an even count >= 2",
                    k + 1,
                    d
                )));
            }
        }
        for (k, &l) in extent.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidHeader(format!(
                    "axis {} has extent {}; need a finite positive length",
                    k + 1,
                    l
                )));
            }
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .and_then(|p| p.checked_mul(1 << n))
            .ok_or_else(|| Error::InvalidHeader("grid size overflows".into()))?;
        Ok(FieldHeader {
            n,
            dims,
            extent,
            blade_order: BladeOrder::BitmaskV1,
        })
    }

    /// Cube grid with `d` points and length `l` along each of `n` axes.
    pub fn cube(n: usize, d: usize, l: f64) -> Result<Self> {
        Self::new(vec![d; n], vec![l; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn extent(&self) -> &[f64] {
        &self.extent
    }

    pub fn blade_order(&self) -> BladeOrder {
        self.blade_order
    }

    pub fn blades(&self) -> usize {
        1 << self.n
    }

    pub fn points(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.extent[axis] / self.dims[axis] as f64
    }

    /// `Π h_k`, the Riemann-sum volume element.
    pub fn cell_volume(&self) -> f64 {
        (0..self.n).map(|k| self.spacing(k)).product()
    }

    /// `Π L_k`.
    pub fn volume(&self) -> f64 {
        self.extent.iter().product()
    }

    /// Largest grid spacing.
    pub fn max_spacing(&self) -> f64 {
        (0..self.n).map(|k| self.spacing(k)).fold(0.0, f64::max)
    }

    /// Radius of the largest frequency ball free of Nyquist rows.
    pub fn nyquist_radius(&self) -> f64 {
        (0..self.n)
            .map(|k| self.dims[k] as f64 / (2.0 * self.extent[k]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Multi-index of a linear point index (row-major).
    pub fn unravel(&self, mut index: usize, out: &mut [usize]) {
        for k in (0..self.n).rev() {
            out[k] = index % self.dims[k];
            index /= self.dims[k];
        }
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Row-major stride of `axis` in points.
    pub fn stride(&self, axis: usize) -> usize {
        self.dims[axis + 1..].iter().product()
    }

    /// Spatial coordinate `-L_k/2 + i h_k`.
    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        -0.5 * self.extent[axis] + i as f64 * self.spacing(axis)
    }

    pub fn position(&self, index: usize) -> Vec<f64> {
        let mut idx = vec![0; self.n];
        self.unravel(index, &mut idx);
        idx.iter()
            .enumerate()
            .map(|(k, &i)| self.coordinate(k, i))
            .collect()
    }

    /// Signed lattice frequency of FFT-order index `i` on `axis`:
    /// `i` for `i < d/2`, otherwise `i - d` (the Nyquist row is negative).
    pub fn signed_frequency(&self, axis: usize, i: usize) -> i64 {
        let d = self.dims[axis];
        if i < d / 2 {
            i as i64
        } else {
            i as i64 - d as i64
        }
    }

    /// FFT-order index of signed lattice frequency `m` (taken modulo `d`).
    pub fn frequency_index(&self, axis: usize, m: i64) -> usize {
        m.rem_euclid(self.dims[axis] as i64) as usize
    }

    /// Signed lattice frequency vector of a spectral index.
    pub fn lattice_frequency(&self, index: usize) -> Vec<i64> {
        let mut idx = vec![0; self.n];
        self.unravel(index, &mut idx);
        idx.iter()
            .enumerate()
            .map(|(k, &i)| self.signed_frequency(k, i))
            .collect()
    }

    /// Physical frequency `ξ_k = m_k / L_k` of a spectral index.
    pub fn frequency(&self, index: usize) -> Vec<f64> {
        self.lattice_frequency(index)
            .iter()
            .enumerate()
            .map(|(k, &m)| m as f64 / self.extent[k])
            .collect()
    }

    /// Spectral index of a signed lattice frequency vector.
    pub fn spectral_index(&self, m: &[i64]) -> Result<usize> {
        if m.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: m.len(),
                right: self.n,
            });
        }
        for (k, &mk) in m.iter().enumerate() {
            let half = (self.dims[k] / 2) as i64;
            if mk < -half || mk >= half {
                return Err(Error::InvalidParameter(format!(
                    "frequency {mk} outside [-{half}, {half}) on axis {}",
                    k + 1
                )));
            }
        }
        let idx: Vec<usize> = m
            .iter()
            .enumerate()
            .map(|(k, &mk)| self.frequency_index(k, mk))
            .collect();
        Ok(self.ravel(&idx))
    }

    /// True when the spectral index lies on a Nyquist row of some axis.
    pub fn is_nyquist(&self, index: usize) -> bool {
        self.lattice_frequency(index)
            .iter()
            .enumerate()
            .any(|(k, &m)| m == -((self.dims[k] / 2) as i64))
    }

    pub fn ensure_compatible(&self, other: &FieldHeader) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::HeaderMismatch)
        }
    }
}

/// Shared storage for [`GridField`] and [`SpectralField`].
macro_rules! clifford_samples {
    ($name:ident) => {
        impl $name {
            pub fn zeros(header: FieldHeader) -> Self {
                let len = header.points() * header.blades();
                $name {
                    data: vec![Complex64::new(0.0, 0.0); len],
                    header,
                }
            }

            pub fn from_data(header: FieldHeader, data: Vec<Complex64>) -> Result<Self> {
                let expected = header.points() * header.blades();
                if data.len() != expected {
                    return Err(Error::SampleCount {
                        expected,
                        got: data.len(),
                    });
                }
                Ok($name { header, data })
            }

            pub fn header(&self) -> &FieldHeader {
                &self.header
            }

            pub fn data(&self) -> &[Complex64] {
                &self.data
            }

            pub fn data_mut(&mut self) -> &mut [Complex64] {
                &mut self.data
            }

            pub fn into_data(self) -> Vec<Complex64> {
                self.data
            }

            pub fn len(&self) -> usize {
                self.header.points()
            }

            pub fn is_empty(&self) -> bool {
                self.data.is_empty()
            }

            pub fn at(&self, index: usize) -> &[Complex64] {
                let b = self.header.blades();
                &self.data[index * b..(index + 1) * b]
            }

            pub fn at_mut(&mut self, index: usize) -> &mut [Complex64] {
                let b = self.header.blades();
                &mut self.data[index * b..(index + 1) * b]
            }

            pub fn get(&self, index: usize) -> Multivector {
                Multivector::from_slice_unchecked(self.header.n(), self.at(index))
            }

            pub fn set(&mut self, index: usize, value: &Multivector) -> Result<()> {
                if value.dim() != self.header.n() {
                    return Err(Error::DimensionMismatch {
                        left: value.dim(),
                        right: self.header.n(),
                    });
                }
                self.at_mut(index).copy_from_slice(value.coeffs());
                Ok(())
            }

            /// Coefficient channel of one blade, in point order.
            pub fn channel(&self, blade: usize) -> Vec<Complex64> {
                let b = self.header.blades();
                self.data.iter().skip(blade).step_by(b).copied().collect()
            }

            pub fn set_channel(&mut self, blade: usize, values: &[Complex64]) {
                let b = self.header.blades();
                for (slot, v) in self.data.iter_mut().skip(blade).step_by(b).zip(values) {
                    *slot = *v;
                }
            }

            pub fn scale(&self, factor: Complex64) -> Self {
                $name {
                    header: self.header.clone(),
                    data: self.data.iter().map(|c| c * factor).collect(),
                }
            }

            /// `a·self + b·other`.
            pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
                self.header.ensure_compatible(&other.header)?;
                Ok($name {
                    header: self.header.clone(),
                    data: self
                        .data
                        .iter()
                        .zip(&other.data)
                        .map(|(x, y)| a * x + b * y)
                        .collect(),
                })
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
            }

            /// Euclidean norm of all coefficients (no volume weighting).
            pub fn coeff_norm(&self) -> f64 {
                self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
            }

            /// Largest per-point Clifford norm.
            pub fn max_norm(&self) -> f64 {
                (0..self.len())
                    .map(|p| self.at(p).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
                    .fold(0.0, f64::max)
            }

            /// Keeps only the blades accepted by `keep`.
            pub fn filter_blades(&self, keep: impl Fn(usize) -> bool) -> Self {
                let b = self.header.blades();
                $name {
                    header: self.header.clone(),
                    data: self
                        .data
                        .iter()
                        .enumerate()
                        .map(|(i, c)| if keep(i % b) { *c } else { Complex64::new(0.0, 0.0) })
                        .collect(),
                }
            }
        }
    };
}

/// Clifford-valued function sampled on the grid of its header.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    header: FieldHeader,
    data: Vec<Complex64>,
}

clifford_samples!(GridField);

impl GridField {
    /// Samples `f` at every grid position.
    pub fn from_fn(header: FieldHeader, mut f: impl FnMut(&[f64]) -> Multivector) -> Result<Self> {
        let mut field = GridField::zeros(header);
        for p in 0..field.len() {
            let x = field.header.position(p);
            let v = f(&x);
            field.set(p, &v)?;
        }
        Ok(field)
    }

    /// `(Σ_x |F(x)|² Π h_k)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.data.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.header.cell_volume()).sqrt()
    }

    /// `Σ_x |F(x)|^p Π h_k`.
    pub fn lp_integral(&self, p: f64) -> f64 {
        (0..self.len())
            .map(|i| {
                let r2: f64 = self.at(i).iter().map(|c| c.norm_sqr()).sum();
                r2.powf(0.5 * p)
            })
            .sum::<f64>()
            * self.header.cell_volume()
    }

    /// Relative L² distance `‖self - other‖ / ‖other‖` (absolute if `other` is zero).
    pub fn relative_l2_error(&self, reference: &GridField) -> Result<f64> {
        let diff = self.sub(reference)?.l2_norm();
        let scale = reference.l2_norm();
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }
}

/// Discrete Fourier coefficients, indexed in FFT order per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    header: FieldHeader,
    data: Vec<Complex64>,
}

clifford_samples!(SpectralField);

impl SpectralField {
    /// Fills each lattice frequency from its physical frequency vector.
    pub fn from_fn(header: FieldHeader, mut f: impl FnMut(&[f64]) -> Multivector) -> Result<Self> {
        let mut field = SpectralField::zeros(header);
        for p in 0..field.len() {
            let xi = field.header.frequency(p);
            let v = f(&xi);
            field.set(p, &v)?;
        }
        Ok(field)
    }

    pub fn get_at(&self, m: &[i64]) -> Result<Multivector> {
        Ok(self.get(self.header.spectral_index(m)?))
    }

    /// `(Σ_ξ |F(ξ)|² Π L_k^{-1})^{1/2}`, the frequency-side L² norm.
    pub fn l2_norm(&self) -> f64 {
        (self.data.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.header.volume()).sqrt()
    }
}
