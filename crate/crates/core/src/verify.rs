//! Self-verification suite: every algebraic, spectral and extension
//! invariant of the crate, measured on deterministic data and compared with
//! a versioned tolerance table.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bergman::{bergman_norm, bergman_slab, bergman_slice, weighted_spectral_norm, BergmanDensity};
use crate::clifford::{blade_product, BladeIndex, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::extension::{
    cauchy_extend, dirac_residual, mean_value_defect, poisson_extend, spectral_extend, SlabField,
};
use crate::field::{FieldHeader, GridField};
use crate::format::{decode, encode};
use crate::generators::{gaussian_ring, random_bandlimited, Channels};
use crate::spectral::{
    chi_projector, dft_forward, euclidean_norm, make_psi_minus, plancherel_defect, Envelope, Side,
};
use crate::transforms::{
    conjugate_harmonic_system, gcr_residual, generalized_cr_residual, hardy_project, hilbert, left_multiply, riesz,
    spectrum_pairing,
};

pub const TOLERANCE_VERSION: &str = "tol-v1";

/// Acceptance region of a measured value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
}

impl Bound {
    pub fn admits(self, value: f64) -> bool {
        match self {
            Bound::AtMost(t) => value <= t,
            Bound::AtLeast(t) => value >= t,
            Bound::Within(lo, hi) => (lo..=hi).contains(&value),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(t) => write!(f, "le:{t:e}"),
            Bound::AtLeast(t) => write!(f, "ge:{t:e}"),
            Bound::Within(lo, hi) => write!(f, "in:{lo:e}..{hi:e}"),
        }
    }
}

/// Every tolerance the suite applies, by check name.
pub const TOLERANCES: &[(&str, Bound)] = &[
    ("algebra.anticommutation", Bound::AtMost(0.0)),
    ("algebra.blade_associativity", Bound::AtMost(0.0)),
    ("algebra.associativity", Bound::AtMost(1e-12)),
    ("algebra.conjugation", Bound::AtMost(1e-12)),
    ("algebra.norm", Bound::AtMost(1e-12)),
    ("projector.partition", Bound::AtMost(1e-14)),
    ("projector.idempotent", Bound::AtMost(1e-14)),
    ("projector.orthogonal", Bound::AtMost(1e-14)),
    ("hilbert.involution", Bound::AtMost(1e-10)),
    ("hilbert.riesz_composition", Bound::AtMost(1e-12)),
    ("hilbert.projector_consistency", Bound::AtMost(1e-12)),
    ("riesz.vector_correspondence", Bound::AtMost(1e-12)),
    ("riesz.gcr_order", Bound::Within(3.0, 5.0)),
    ("hardy.support", Bound::AtMost(1e-20)),
    ("hardy.annihilation", Bound::AtMost(1e-10)),
    ("plancherel.defect", Bound::AtMost(1e-10)),
    ("extension.poisson_factorization", Bound::AtMost(1e-12)),
    ("extension.cauchy_route", Bound::AtMost(1e-3)),
    ("extension.dirac_order", Bound::Within(3.0, 5.0)),
    ("extension.generalized_cr_order", Bound::Within(3.0, 5.0)),
    ("mean_value.harmonic", Bound::AtMost(1e-3)),
    ("mean_value.control", Bound::AtLeast(1e-2)),
    ("bergman.closed_form", Bound::AtMost(1e-6)),
    ("bergman.inequality", Bound::AtMost(1.0 + 1e-2)),
    ("bergman.psi_pairing", Bound::AtMost(1e-10)),
    ("bergman.semigroup", Bound::AtMost(1e-12)),
    ("bergman.hardy_support", Bound::AtMost(1e-12)),
    ("format.round_trip", Bound::AtMost(0.0)),
];

pub fn tolerance(name: &str) -> Bound {
    TOLERANCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| *b)
        .unwrap_or_else(|| panic!("no tolerance registered for {name}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Unknown {
                kind: "profile",
                name: name.to_string(),
            }),
        }
    }

    /// `(n, points per axis)` for the operator checks.
    fn grids(self) -> &'static [(usize, usize)] {
        match self {
            Profile::Quick => &[(1, 32), (2, 32)],
            Profile::Full => &[(1, 64), (2, 64), (3, 32)],
        }
    }

    /// Coarse resolution of the mesh-halving studies.
    fn coarse(self, n: usize) -> usize {
        match (self, n) {
            (Profile::Quick, _) => 32,
            (Profile::Full, 3) => 16,
            (Profile::Full, _) => 64,
        }
    }
}

/// Deliberate defects the suite must detect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Riesz multiplier with the opposite sign.
    RieszSign,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::RieszSign => "riesz-sign",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "none" => Ok(Mutation::None),
            "riesz-sign" => Ok(Mutation::RieszSign),
            _ => Err(Error::Unknown {
                kind: "mutation",
                name: name.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub bound: Bound,
}

impl Check {
    pub fn new(name: &'static str, value: f64) -> Self {
        Check {
            name,
            value,
            bound: tolerance(name),
        }
    }

    pub fn passed(&self) -> bool {
        self.bound.admits(self.value)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub profile: Profile,
    pub seed: u64,
    pub mutation: Mutation,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Line-oriented `key=value` report.
    pub fn machine_readable(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite=verify");
        let _ = writeln!(out, "tolerances={TOLERANCE_VERSION}");
        for (name, bound) in TOLERANCES {
            let _ = writeln!(out, "tolerance.{name}={bound}");
        }
        let _ = writeln!(out, "profile={}", self.profile.name());
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "mutation={}", self.mutation.name());
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check={} value={:.6e} bound={} pass={}",
                c.name,
                c.value,
                c.bound,
                c.passed()
            );
        }
        let failed = self.failed().count();
        let _ = writeln!(out, "passed={}", self.checks.len() - failed);
        let _ = writeln!(out, "failed={failed}");
        let _ = writeln!(out, "status={}", if failed == 0 { "pass" } else { "fail" });
        out
    }

    pub fn human_readable(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:width$}  {:>13.6e}  {}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.bound,
            );
        }
        let failed = self.failed().count();
        let _ = writeln!(
            out,
            "{} of {} checks passed (profile {}, seed {}, tolerances {TOLERANCE_VERSION})",
            self.checks.len() - failed,
            self.checks.len(),
            self.profile.name(),
            self.seed
        );
        out
    }
}

/// Riesz and Hilbert transforms as the suite sees them, with the Hilbert
/// transform composed as `-Σ e_k R_k`.
struct Operators {
    mutation: Mutation,
}

impl Operators {
    fn riesz(&self, axis: usize, f: &GridField) -> Result<GridField> {
        let r = riesz(axis, f)?;
        Ok(match self.mutation {
            Mutation::RieszSign => r.scale(Complex64::new(-1.0, 0.0)),
            Mutation::None => r,
        })
    }

    /// `H f = -Σ ek Rk f`.
    fn hilbert(&self, f: &GridField) -> Result<GridField> {
        let n = f.header().n();
        let mut out = GridField::zeros(f.header().clone());
        for k in 1..=n {
            let term = left_multiply(&Multivector::generator(k, n)?, &self.riesz(k, f)?)?;
            out = out.sub(&term)?;
        }
        Ok(out)
    }
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_multivector(rng: &mut ChaCha8Rng, n: usize) -> Multivector {
    let coeffs = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Multivector::from_coeffs(n, coeffs).expect("valid dimension")
}

fn cube(n: usize, d: usize) -> FieldHeader {
    FieldHeader::cube(n, d, 1.0).expect("valid grid")
}

/// Band used for random test fields: well inside the Nyquist radius.
fn test_band(header: &FieldHeader) -> f64 {
    0.35 * header.dims()[0] as f64 / header.extent()[0]
}

pub fn check_algebra(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut anti = 0.0f64;
    let mut blade_assoc = 0.0f64;
    let mut assoc = 0.0f64;
    let mut conj = 0.0f64;
    let mut norm = 0.0f64;
    for n in 1..=5 {
        for j in 1..=n {
            for k in 1..=n {
                let ej = Multivector::generator(j, n)?;
                let ek = Multivector::generator(k, n)?;
                let mut s = &ej.multiply(&ek)? + &ek.multiply(&ej)?;
                if j == k {
                    s = &s + &Multivector::scalar(n, c64(2.0))?;
                }
                anti = anti.max(s.norm());
            }
        }
        let size = 1u32 << n;
        for a in 0..size {
            for b in 0..size {
                let (sab, ab) = blade_product(BladeIndex::new(a, n)?, BladeIndex::new(b, n)?, n)?;
                for c in 0..size {
                    let cb = BladeIndex::new(c, n)?;
                    let (s1, left) = blade_product(ab, cb, n)?;
                    let (sbc, bc) = blade_product(BladeIndex::new(b, n)?, cb, n)?;
                    let (s2, right) = blade_product(BladeIndex::new(a, n)?, bc, n)?;
                    if left != right || sab * s1 != sbc * s2 {
                        blade_assoc += 1.0;
                    }
                }
            }
        }
        for _ in 0..20 {
            let (x, y, z) = (random_multivector(rng, n), random_multivector(rng, n), random_multivector(rng, n));
            let l = x.multiply(&y)?.multiply(&z)?;
            let r = x.multiply(&y.multiply(&z)?)?;
            assoc = assoc.max(l.distance(&r) / (x.norm() * y.norm() * z.norm()));
            let c1 = x.multiply(&y)?.conjugate();
            let c2 = y.conjugate().multiply(&x.conjugate())?;
            conj = conj.max(c1.distance(&c2) / (x.norm() * y.norm()));
            conj = conj.max(x.conjugate().conjugate().distance(&x) / x.norm());
            let sc = x.scalar_norm_sqr();
            norm = norm.max((sc - c64(x.norm_sqr())).norm() / x.norm_sqr());
        }
    }
    Ok(vec![
        Check::new("algebra.anticommutation", anti),
        Check::new("algebra.blade_associativity", blade_assoc),
        Check::new("algebra.associativity", assoc),
        Check::new("algebra.conjugation", conj),
        Check::new("algebra.norm", norm),
    ])
}

pub fn check_projectors(header: &FieldHeader) -> Result<Vec<Check>> {
    let n = header.n();
    let one = Multivector::one(n)?;
    let (mut part, mut idem, mut orth) = (0.0f64, 0.0f64, 0.0f64);
    for p in 0..header.points() {
        let xi = header.frequency(p);
        let plus = chi_projector(Side::Plus, &xi)?;
        let minus = chi_projector(Side::Minus, &xi)?;
        part = part.max((&plus + &minus).distance(&one));
        // χ±(0) = 1/2 by policy, so only the partition holds at DC
        if p != 0 {
            idem = idem.max(plus.multiply(&plus)?.distance(&plus));
            idem = idem.max(minus.multiply(&minus)?.distance(&minus));
            orth = orth.max(plus.multiply(&minus)?.norm());
            orth = orth.max(minus.multiply(&plus)?.norm());
        }
    }
    Ok(vec![
        Check::new("projector.partition", part),
        Check::new("projector.idempotent", idem),
        Check::new("projector.orthogonal", orth),
    ])
}

/// Largest `|χ₋(ξ) F̂(ξ)|²` over nonzero frequencies, relative to `Σ|F̂|²`.
pub fn minus_energy_fraction(f: &GridField) -> Result<f64> {
    let spectrum = dft_forward(f);
    let total: f64 = spectrum.data().iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for p in 1..spectrum.len() {
        let xi = spectrum.header().frequency(p);
        let m = chi_projector(Side::Minus, &xi)?.multiply(&spectrum.get(p))?;
        worst = worst.max(m.norm_sqr());
    }
    Ok(worst / total)
}

/// Envelope family for the annihilation checks, scaled to a header.
pub fn psi_envelopes(header: &FieldHeader, count: usize, rng: &mut ChaCha8Rng) -> Vec<Envelope> {
    let n = header.n();
    let nyq = header.nyquist_radius();
    (0..count)
        .map(|i| {
            let inner = nyq * rng.gen_range(0.02..0.4);
            let outer = (inner + nyq * rng.gen_range(0.1..0.5)).min(0.95 * nyq);
            let shift = (0..n).map(|k| rng.gen_range(-0.5..0.5) * header.extent()[k]).collect();
            let factor = if i % 2 == 1 { Some(random_multivector(rng, n)) } else { None };
            Envelope {
                inner,
                outer,
                amplitude: rng.gen_range(0.5..2.0),
                shift,
                factor,
            }
        })
        .collect()
}

fn check_operators(grids: &[(usize, usize)], ops: &Operators, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (mut invol, mut comp, mut cons, mut corr) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut support, mut annih, mut planch) = (0.0f64, 0.0f64, 0.0f64);
    for &(n, d) in grids {
        let h = cube(n, d);
        let band = test_band(&h);
        for _ in 0..3 {
            let f = random_bandlimited(&h, rng.gen(), band, Channels::All, false)?;
            let hf = ops.hilbert(&f)?;
            invol = invol.max(ops.hilbert(&hf)?.relative_l2_error(&f)?);
            comp = comp.max(hilbert(&f)?.relative_l2_error(&hf)?);
            let half = f.add(&hf)?.scale(c64(0.5));
            cons = cons.max(half.relative_l2_error(&hardy_project(Side::Plus, &f)?)?);

            let f0 = random_bandlimited(&h, rng.gen(), band, Channels::Scalar, false)?;
            let mut rhs = f0.clone();
            for j in 1..=n {
                let term = left_multiply(&Multivector::generator(j, n)?, &ops.riesz(j, &f0)?)?;
                rhs = rhs.sub(&term)?;
            }
            let lhs = hardy_project(Side::Plus, &f0)?.scale(c64(2.0));
            corr = corr.max(lhs.relative_l2_error(&rhs)?);

            let plus = hardy_project(Side::Plus, &f)?;
            support = support.max(minus_energy_fraction(&plus)?);
            for env in psi_envelopes(&h, 3, rng) {
                let psi = make_psi_minus(&h, &env)?;
                let pairing = spectrum_pairing(&plus, &psi)?.norm();
                let scale = f.l2_norm() * psi.l2_norm();
                if scale > 0.0 {
                    annih = annih.max(pairing / scale);
                }
            }
            let g = random_bandlimited(&h, rng.gen(), band, Channels::All, false)?;
            planch = planch.max(plancherel_defect(&f, &g)? / (f.l2_norm() * g.l2_norm()));
        }
    }
    Ok(vec![
        Check::new("hilbert.involution", invol),
        Check::new("hilbert.riesz_composition", comp),
        Check::new("hilbert.projector_consistency", cons),
        Check::new("riesz.vector_correspondence", corr),
        Check::new("hardy.support", support),
        Check::new("hardy.annihilation", annih),
        Check::new("plancherel.defect", planch),
    ])
}

/// Hardy-projected Gaussian-ring data for the route comparison: ring radius
/// `12/L` and width `2/L`, so the data is concentrated in the middle of the
/// cell and its spectrum stays clear of DC and Nyquist on 64 points per axis.
pub fn ring_data(header: &FieldHeader) -> Result<GridField> {
    let n = header.n();
    let l = header.extent()[0];
    let mut value = Multivector::one(n)?;
    value.set(BladeIndex::generator(1, n)?, Complex64::new(0.3, -0.2))?;
    let f = gaussian_ring(header, 12.0 / l, 2.0 / l, &value)?;
    hardy_project(Side::Plus, &f)
}

fn check_extension(profile: Profile, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut factor = 0.0f64;
    let mut route = 0.0f64;
    for &(n, d) in profile.grids() {
        let h = cube(n, d);
        let f = random_bandlimited(&h, rng.gen(), test_band(&h), Channels::All, false)?;
        let plus = hardy_project(Side::Plus, &f)?;
        for x0 in [0.5, 2.0, 8.0].map(|k| k * h.max_spacing()) {
            let a = spectral_extend(&f, x0)?;
            let b = poisson_extend(&plus, x0)?;
            factor = factor.max(a.relative_l2_error(&b)?);
        }
        if n <= 2 {
            let ring = cube(n, 64);
            let data = ring_data(&ring)?;
            for k in [2.0, 4.0, 8.0] {
                let x0 = k * ring.max_spacing();
                let spectral = spectral_extend(&data, x0)?;
                let cauchy = cauchy_extend(&data, x0)?;
                route = route.max(cauchy.relative_l2_error(&spectral)?);
            }
        }
    }
    Ok(vec![
        Check::new("extension.poisson_factorization", factor),
        Check::new("extension.cauchy_route", route),
    ])
}

/// Slab of the spectral extension with `count` slices spaced by the grid
/// step and centred at `x0`.
pub fn extension_slab(f: &GridField, x0: f64, count: usize) -> Result<SlabField> {
    let step = f.header().max_spacing();
    SlabField::build(SlabField::centered_heights(x0, step, count), |t| spectral_extend(f, t))
}

/// Low-band field that is the same function on every grid of the study.
fn convergence_data(header: &FieldHeader, seed: u64, channels: Channels) -> Result<GridField> {
    random_bandlimited(header, seed, 2.0 / header.extent()[0], channels, false)
}

fn check_convergence(profile: Profile, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut dirac = Vec::new();
    let mut gen_cr = Vec::new();
    let mut gcr = Vec::new();
    for n in 1..=2 {
        let seed: u64 = rng.gen();
        let seed0: u64 = rng.gen();
        let coarse = profile.coarse(n);
        let mut r = [[0.0; 2]; 3];
        for (level, d) in [coarse, 2 * coarse].into_iter().enumerate() {
            let h = cube(n, d);
            let slab = extension_slab(&convergence_data(&h, seed, Channels::All)?, 0.1, 3)?;
            r[0][level] = dirac_residual(&slab)?;
            r[1][level] = generalized_cr_residual(&slab)?;
            let f0 = convergence_data(&h, seed0, Channels::Scalar)?;
            let vector = extension_slab(&f0, 0.1, 3)?;
            r[2][level] = gcr_residual(&conjugate_harmonic_system(&vector)?)?;
        }
        dirac.push(r[0][0] / r[0][1]);
        gen_cr.push(r[1][0] / r[1][1]);
        gcr.push(r[2][0] / r[2][1]);
    }
    // the ratio furthest from 4 represents each study
    let worst = |v: &[f64]| v.iter().copied().max_by(|a, b| (a - 4.0).abs().total_cmp(&(b - 4.0).abs())).unwrap_or(0.0);
    Ok(vec![
        Check::new("extension.dirac_order", worst(&dirac)),
        Check::new("extension.generalized_cr_order", worst(&gen_cr)),
        Check::new("riesz.gcr_order", worst(&gcr)),
    ])
}

const MEAN_VALUE_HEIGHT: f64 = 0.25;

fn check_mean_value(profile: Profile, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut harmonic = 0.0f64;
    let mut control = f64::INFINITY;
    for n in 1..=2 {
        let h = cube(n, profile.coarse(n));
        let step = h.max_spacing();
        let radius = 4.0 * step;
        let f = convergence_data(&h, rng.gen(), Channels::All)?;
        let slab = extension_slab(&f, MEAN_VALUE_HEIGHT, 11)?;
        let slab = slab.scale(c64(1.0 / slab.max_norm()));
        for _ in 0..4 {
            let centre = h.position(rng.gen_range(0..h.points()));
            harmonic = harmonic.max(mean_value_defect(&slab, &Paravector::new(MEAN_VALUE_HEIGHT, centre), radius)?);
        }

        // |x̲|² is not harmonic in (x0, x̲)
        let wide = FieldHeader::cube(n, 64, 4.0)?;
        let radius = 4.0 * wide.max_spacing();
        let x0s = SlabField::centered_heights(1.0, wide.max_spacing(), 11);
        let quad = SlabField::build(x0s, |_| {
            GridField::from_fn(wide.clone(), |x| {
                Multivector::scalar(n, c64(x.iter().map(|v| v * v).sum())).expect("valid dimension")
            })
        })?;
        let origin = Paravector::new(1.0, vec![0.0; n]);
        control = control.min(mean_value_defect(&quad, &origin, radius)?);
    }
    Ok(vec![
        Check::new("mean_value.harmonic", harmonic),
        Check::new("mean_value.control", control),
    ])
}

/// Ring densities used for the inequality battery.
pub fn density_battery(rng: &mut ChaCha8Rng) -> Result<Vec<BergmanDensity>> {
    let mut out = Vec::new();
    for n in 1..=2 {
        let h = FieldHeader::cube(n, 32, 1.0)?;
        for (radius, width) in [(2.0, 1.0), (4.0, 1.5), (6.0, 0.7)] {
            out.push(BergmanDensity::gaussian_ring(h.clone(), radius, width, &random_multivector(rng, n))?);
        }
    }
    Ok(out)
}

/// Closed form of `‖F‖_{A^p}` for `F = e⁺(·, ξ) g Π L_k^{-1}`.
pub fn single_mode_norm(header: &FieldHeader, m: &[i64], g: &Multivector, p: f64) -> Result<f64> {
    let idx = header.spectral_index(m)?;
    let xi = header.frequency(idx);
    let volume = header.volume();
    let mag = chi_projector(Side::Plus, &xi)?.multiply(g)?.norm() / volume;
    Ok((volume * mag.powf(p) / (2.0 * std::f64::consts::PI * p * euclidean_norm(&xi))).powf(1.0 / p))
}

const BERGMAN_TAIL: f64 = 1e-14;
const BERGMAN_HEIGHTS: usize = 1200;

fn check_bergman(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut closed = 0.0f64;
    for n in 1..=2 {
        let h = FieldHeader::cube(n, 16, 1.0)?;
        let m: Vec<i64> = (0..n as i64).map(|k| 2 - k).collect();
        let g = random_multivector(rng, n);
        let density = BergmanDensity::single_mode(h.clone(), &m, &g)?;
        for p in [1.0, 1.5, 2.0] {
            let slab = bergman_slab(&density, density.height_grid(p, BERGMAN_TAIL, BERGMAN_HEIGHTS)?)?;
            let got = bergman_norm(&slab, p)?.value;
            let exact = single_mode_norm(&h, &m, &g, p)?;
            closed = closed.max((got - exact).abs() / exact);
        }
    }

    let mut ratio = 0.0f64;
    let mut pairing = 0.0f64;
    let mut semigroup = 0.0f64;
    let mut support = 0.0f64;
    for density in density_battery(rng)? {
        for p in [1.0, 1.5, 2.0] {
            let slab = bergman_slab(&density, density.height_grid(p, BERGMAN_TAIL, 400)?)?;
            let rhs = bergman_norm(&slab, p)?.value;
            let lhs = weighted_spectral_norm(&density, p)?;
            ratio = ratio.max(lhs / rhs);
        }
        let h = density.header().clone();
        let envelopes = psi_envelopes(&h, 3, rng);
        for x0 in [0.01, 0.05, 0.2] {
            let slice = bergman_slice(&density, x0)?;
            for env in &envelopes {
                let psi = make_psi_minus(&h, env)?;
                pairing = pairing.max(spectrum_pairing(&slice, &psi)?.norm() / (slice.l2_norm() * psi.l2_norm()));
            }
            let later = bergman_slice(&density, x0 + 0.03)?;
            semigroup = semigroup.max(poisson_extend(&slice, 0.03)?.relative_l2_error(&later)?);
            support = support.max(minus_energy_fraction(&slice)?.sqrt());
        }
    }
    Ok(vec![
        Check::new("bergman.closed_form", closed),
        Check::new("bergman.inequality", ratio),
        Check::new("bergman.psi_pairing", pairing),
        Check::new("bergman.semigroup", semigroup),
        Check::new("bergman.hardy_support", support),
    ])
}

fn check_format(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut mismatched = 0usize;
    for n in 1..=4 {
        let dims: Vec<usize> = (0..n).map(|_| 2 * rng.gen_range(1..=4)).collect();
        let extent: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
        let h = FieldHeader::new(dims, extent)?;
        let data = (0..h.points() * h.blades())
            .map(|_| Complex64::new(f64::from_bits(rng.gen()), f64::from_bits(rng.gen())))
            .collect();
        let f = GridField::from_data(h, data)?;
        let bytes = encode(&f);
        let again = encode(&decode(&bytes)?);
        mismatched += bytes.iter().zip(&again).filter(|(a, b)| a != b).count();
        mismatched += bytes.len().abs_diff(again.len());
    }
    Ok(vec![Check::new("format.round_trip", mismatched as f64)])
}

/// Runs every check. Deterministic for a given profile, seed and mutation.
pub fn run_suite(profile: Profile, seed: u64, mutation: Mutation) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = Operators { mutation };
    let mut checks = check_algebra(&mut rng)?;
    checks.extend(check_projectors(&cube(2, 64))?);
    checks.extend(check_operators(profile.grids(), &ops, &mut rng)?);
    checks.extend(check_extension(profile, &mut rng)?);
    checks.extend(check_convergence(profile, &mut rng)?);
    checks.extend(check_mean_value(profile, &mut rng)?);
    checks.extend(check_bergman(&mut rng)?);
    checks.extend(check_format(&mut rng)?);
    Ok(VerifyReport {
        profile,
        seed,
        mutation,
        checks,
    })
}
