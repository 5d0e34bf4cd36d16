//! Deterministic field synthesis.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::field::{FieldHeader, GridField, SpectralField};
use crate::spectral::{dft_inverse, euclidean_norm};

/// Which blades a random field populates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channels {
    Scalar,
    Vector,
    All,
}

impl Channels {
    fn keeps(self, blade: usize) -> bool {
        match self {
            Channels::Scalar => blade == 0,
            Channels::Vector => blade.count_ones() == 1,
            Channels::All => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `value · e^{2πi⟨m/L, x⟩}`.
    PlaneWave { m: Vec<i64>, value: Multivector },
    /// Spectrum `exp(-(|ξ| - radius)² / 2 width²) · value`, without DC and
    /// Nyquist rows.
    GaussianRing { radius: f64, width: f64, value: Multivector },
    /// Uniform random coefficients on `0 < |ξ| <= band`, Nyquist rows
    /// excluded. `real` keeps only the real part of every sample.
    RandomBandlimited {
        seed: u64,
        band: f64,
        channels: Channels,
        real: bool,
    },
    Constant { value: Multivector },
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::PlaneWave { .. } => "plane-wave",
            Generator::GaussianRing { .. } => "gaussian-ring",
            Generator::RandomBandlimited { .. } => "random-bandlimited",
            Generator::Constant { .. } => "constant",
        }
    }

    pub fn generate(&self, header: &FieldHeader) -> Result<GridField> {
        match self {
            Generator::PlaneWave { m, value } => plane_wave(header, m, value),
            Generator::GaussianRing { radius, width, value } => gaussian_ring(header, *radius, *width, value),
            Generator::RandomBandlimited {
                seed,
                band,
                channels,
                real,
            } => random_bandlimited(header, *seed, *band, *channels, *real),
            Generator::Constant { value } => {
                check_value(header, value)?;
                GridField::from_fn(header.clone(), |_| value.clone())
            }
        }
    }
}

fn check_value(header: &FieldHeader, value: &Multivector) -> Result<()> {
    if value.dim() != header.n() {
        return Err(Error::DimensionMismatch {
            left: value.dim(),
            right: header.n(),
        });
    }
    Ok(())
}

pub fn plane_wave(header: &FieldHeader, m: &[i64], value: &Multivector) -> Result<GridField> {
    check_value(header, value)?;
    if m.len() != header.n() {
        return Err(Error::DimensionMismatch {
            left: m.len(),
            right: header.n(),
        });
    }
    for (k, (&mk, &d)) in m.iter().zip(header.dims()).enumerate() {
        if mk.unsigned_abs() >= (d / 2) as u64 {
            return Err(Error::InvalidParameter(format!(
                "plane-wave frequency {mk} on axis {} is at or beyond Nyquist for {d} points",
                k + 1
            )));
        }
    }
    let xi: Vec<f64> = m.iter().zip(header.extent()).map(|(&mk, &l)| mk as f64 / l).collect();
    GridField::from_fn(header.clone(), |x| {
        let phase = 2.0 * PI * xi.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        value.scale(Complex64::from_polar(1.0, phase))
    })
}

pub fn gaussian_ring(header: &FieldHeader, radius: f64, width: f64, value: &Multivector) -> Result<GridField> {
    check_value(header, value)?;
    if !(radius.is_finite() && width.is_finite() && radius >= 0.0 && width > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gaussian-ring needs radius >= 0 and width > 0 (got {radius}, {width})"
        )));
    }
    let mut spectrum = SpectralField::zeros(header.clone());
    for p in 1..spectrum.len() {
        if header.is_nyquist(p) {
            continue;
        }
        let r = euclidean_norm(&header.frequency(p));
        let amp = (-(r - radius).powi(2) / (2.0 * width * width)).exp();
        spectrum.set(p, &value.scale_real(amp * header.volume()))?;
    }
    Ok(dft_inverse(&spectrum))
}

/// Random coefficients are drawn for every lattice frequency `m` in the box
/// `|m_k| <= band L_k`, scanned lexicographically, so the same seed and band
/// give the same function on every grid that resolves the band.
pub fn random_bandlimited(header: &FieldHeader, seed: u64, band: f64, channels: Channels, real: bool) -> Result<GridField> {
    if !(band.is_finite() && band > 0.0) {
        return Err(Error::InvalidParameter(format!("band {band} must be positive")));
    }
    let reach: Vec<i64> = header.extent().iter().map(|l| (band * l).floor() as i64).collect();
    let box_size = reach.iter().try_fold(1usize, |acc, &r| acc.checked_mul(2 * r as usize + 1));
    if box_size.is_none_or(|s| s > 1 << 26) {
        return Err(Error::InvalidParameter(format!("band {band} is too wide")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum = SpectralField::zeros(header.clone());
    let blades = header.blades();
    let mut draw = vec![Complex64::new(0.0, 0.0); blades];
    let mut m: Vec<i64> = reach.iter().map(|r| -r).collect();
    let mut modes = 0usize;
    'scan: loop {
        for (t, c) in draw.iter_mut().enumerate() {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            *c = if channels.keeps(t) { v * header.volume() } else { Complex64::new(0.0, 0.0) };
        }
        let xi: Vec<f64> = m.iter().zip(header.extent()).map(|(&mk, l)| mk as f64 / l).collect();
        let r = euclidean_norm(&xi);
        let resolved = m.iter().zip(header.dims()).all(|(&mk, &d)| mk.unsigned_abs() < (d / 2) as u64);
        if r > 0.0 && r <= band && resolved {
            let idx = header.spectral_index(&m)?;
            spectrum.at_mut(idx).copy_from_slice(&draw);
            modes += 1;
        }
        for k in (0..m.len()).rev() {
            if m[k] < reach[k] {
                m[k] += 1;
                continue 'scan;
            }
            m[k] = -reach[k];
        }
        break;
    }
    if modes == 0 {
        return Err(Error::InvalidParameter(format!("band {band} contains no resolved nonzero frequency")));
    }
    let mut field = dft_inverse(&spectrum);
    if real {
        for c in field.data_mut() {
            c.im = 0.0;
        }
    }
    Ok(field)
}
