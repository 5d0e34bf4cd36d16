//! Reference implementations shared by the integration tests. None of them
//! reuse the library's bitmask or FFT code paths.

#![allow(dead_code)]

use std::f64::consts::PI;

use clifford_hardy::{BladeIndex, FieldHeader, GridField, Multivector, SpectralField};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Product of two basis blades by rewriting the generator word
/// `e_{a1}…e_{ak} e_{b1}…e_{bl}`: adjacent transpositions of distinct
/// generators flip the sign, and each `e_j e_j` contracts to `-1`.
pub fn word_product(a: u32, b: u32) -> (i8, u32) {
    let letters = |mask: u32| (0..32).filter(move |j| mask >> j & 1 == 1);
    let mut word: Vec<u32> = letters(a).chain(letters(b)).collect();
    let mut sign = 1i8;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut mask = 0u32;
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && word[i] == word[i + 1] {
            sign = -sign;
            i += 2;
        } else {
            mask |= 1 << word[i];
            i += 1;
        }
    }
    (sign, mask)
}

/// Multivector product assembled from [`word_product`].
pub fn word_multiply(x: &Multivector, y: &Multivector) -> Multivector {
    let n = x.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (a, xa) in x.coeffs().iter().enumerate() {
        for (b, yb) in y.coeffs().iter().enumerate() {
            let (s, m) = word_product(a as u32, b as u32);
            out[m as usize] += xa * yb * f64::from(s);
        }
    }
    Multivector::from_coeffs(n, out).unwrap()
}

pub fn random_multivector(rng: &mut ChaCha8Rng, n: usize) -> Multivector {
    let coeffs = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Multivector::from_coeffs(n, coeffs).unwrap()
}

pub fn blade(n: usize, mask: u32) -> BladeIndex {
    BladeIndex::new(mask, n).unwrap()
}

/// Direct evaluation of `Σ_x e^{-2πi⟨x,ξ⟩} f(x) Π h_k` at every lattice
/// frequency, with positions and frequencies taken from the header.
pub fn naive_forward(f: &GridField) -> SpectralField {
    let h = f.header();
    let positions: Vec<Vec<f64>> = (0..h.points()).map(|p| h.position(p)).collect();
    let mut out = SpectralField::zeros(h.clone());
    for q in 0..h.points() {
        let xi = h.frequency(q);
        let mut acc = vec![Complex64::new(0.0, 0.0); h.blades()];
        for (p, x) in positions.iter().enumerate() {
            let phase = -2.0 * PI * x.iter().zip(&xi).map(|(a, b)| a * b).sum::<f64>();
            let w = Complex64::from_polar(h.cell_volume(), phase);
            for (a, c) in acc.iter_mut().zip(f.at(p)) {
                *a += w * c;
            }
        }
        out.at_mut(q).copy_from_slice(&acc);
    }
    out
}

/// Direct evaluation of `Π L_k^{-1} Σ_ξ e^{2πi⟨x,ξ⟩} f̂(ξ)`.
pub fn naive_inverse(s: &SpectralField) -> GridField {
    let h = s.header();
    let freqs: Vec<Vec<f64>> = (0..h.points()).map(|q| h.frequency(q)).collect();
    let mut out = GridField::zeros(h.clone());
    for p in 0..h.points() {
        let x = h.position(p);
        let mut acc = vec![Complex64::new(0.0, 0.0); h.blades()];
        for (q, xi) in freqs.iter().enumerate() {
            let phase = 2.0 * PI * x.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>();
            let w = Complex64::from_polar(1.0 / h.volume(), phase);
            for (a, c) in acc.iter_mut().zip(s.at(q)) {
                *a += w * c;
            }
        }
        out.at_mut(p).copy_from_slice(&acc);
    }
    out
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_field(header: &FieldHeader, rng: &mut ChaCha8Rng) -> GridField {
    let data = (0..header.points() * header.blades())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    GridField::from_data(header.clone(), data).unwrap()
}

/// Band used for random test fields, well inside the Nyquist radius.
pub fn band(header: &FieldHeader) -> f64 {
    0.35 * header.dims()[0] as f64 / header.extent()[0]
}
