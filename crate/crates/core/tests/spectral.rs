mod common;

use clifford_hardy::generators::{plane_wave, random_bandlimited, Channels};
use clifford_hardy::spectral::{make_psi_minus, plancherel_defect, Envelope};
use clifford_hardy::transforms::{hardy_project, hilbert, left_multiply, riesz, riesz_multiplier};
use clifford_hardy::{chi_projector, dft_forward, dft_inverse, e_kernel, FieldHeader, Multivector, Paravector, Side};
use num_complex::Complex64;
use proptest::prelude::*;

use common::{band, c64, max_diff, naive_forward, naive_inverse, random_field, rng};

#[test]
fn forward_matches_direct_sum() {
    let mut r = rng(1);
    for h in [
        FieldHeader::new(vec![8], vec![1.5]).unwrap(),
        FieldHeader::new(vec![6, 4], vec![1.0, 2.0]).unwrap(),
        FieldHeader::new(vec![4, 2, 4], vec![0.5, 1.0, 3.0]).unwrap(),
    ] {
        let f = random_field(&h, &mut r);
        let fast = dft_forward(&f);
        let slow = naive_forward(&f);
        assert!(max_diff(fast.data(), slow.data()) < 1e-12, "{:?}", h.dims());
        let back = dft_inverse(&slow);
        assert!(max_diff(back.data(), naive_inverse(&slow).data()) < 1e-12);
        assert!(max_diff(back.data(), f.data()) < 1e-12);
    }
}

#[test]
fn plane_wave_lands_on_its_lattice_frequency() {
    let h = FieldHeader::new(vec![16, 8], vec![2.0, 1.0]).unwrap();
    let v = Multivector::one(2).unwrap();
    let f = plane_wave(&h, &[3, -2], &v).unwrap();
    let s = dft_forward(&f);
    let k = h.spectral_index(&[3, -2]).unwrap();
    assert!(s.get(k).distance(&v.scale_real(h.volume())) < 1e-12);
    assert!((0..s.len()).filter(|&p| p != k).all(|p| s.get(p).norm() < 1e-12));
}

#[test]
fn projectors_at_dc_follow_policy() {
    let half = Multivector::scalar(3, c64(0.5)).unwrap();
    assert_eq!(chi_projector(Side::Plus, &[0.0; 3]).unwrap(), half);
    assert_eq!(chi_projector(Side::Minus, &[0.0; 3]).unwrap(), half);
}

#[test]
fn e_kernel_is_projected_exponential() {
    let xi = [0.75, -1.25];
    let r: f64 = xi[0] * xi[0] + xi[1] * xi[1];
    let x = Paravector::new(0.3, vec![0.1, 0.4]);
    let plus = e_kernel(Side::Plus, &x, &xi).unwrap();
    let phase = 2.0 * std::f64::consts::PI * (0.1 * xi[0] + 0.4 * xi[1]);
    let scale = Complex64::from_polar((-2.0 * std::f64::consts::PI * 0.3 * r.sqrt()).exp(), phase);
    let expected = chi_projector(Side::Plus, &xi).unwrap().scale(scale);
    assert!(plus.distance(&expected) < 1e-14);
    assert!(e_kernel(Side::Minus, &x, &xi).is_err());
    assert!(e_kernel(Side::Minus, &Paravector::new(-0.3, vec![0.1, 0.4]), &xi).is_ok());
}

#[test]
fn riesz_squares_sum_to_minus_identity() {
    let h = FieldHeader::cube(2, 32, 1.0).unwrap();
    let f = random_bandlimited(&h, 4, band(&h), Channels::All, false).unwrap();
    let mut acc = f.clone();
    for j in 1..=2 {
        acc = acc.add(&riesz(j, &riesz(j, &f).unwrap()).unwrap()).unwrap();
    }
    assert!(acc.l2_norm() < 1e-12 * f.l2_norm());
}

#[test]
fn hilbert_is_minus_sum_of_generator_riesz_terms() {
    let h = FieldHeader::cube(3, 16, 1.0).unwrap();
    let f = random_bandlimited(&h, 5, band(&h), Channels::All, false).unwrap();
    let mut sum = f.scale(c64(0.0));
    for k in 1..=3 {
        let ek = Multivector::generator(k, 3).unwrap();
        sum = sum.sub(&left_multiply(&ek, &riesz(k, &f).unwrap()).unwrap()).unwrap();
    }
    assert!(hilbert(&f).unwrap().relative_l2_error(&sum).unwrap() < 1e-12);
}

#[test]
fn riesz_multiplier_values() {
    assert_eq!(riesz_multiplier(1, &[0.0, 0.0]), c64(0.0));
    let m = riesz_multiplier(2, &[3.0, 4.0]);
    assert!((m - Complex64::new(0.0, -0.8)).norm() < 1e-15);
}

#[test]
fn psi_minus_is_annihilated_by_plus_part() {
    let h = FieldHeader::cube(2, 32, 1.0).unwrap();
    let psi = make_psi_minus(&h, &Envelope::radial(2.0, 9.0, 1.0)).unwrap();
    for p in 0..psi.len() {
        let xi = h.frequency(p);
        let chi = chi_projector(Side::Plus, &xi).unwrap();
        assert!(chi.multiply(&psi.get(p)).unwrap().norm() < 1e-14);
    }
    assert!(psi.l2_norm() > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn plancherel_holds(seed in any::<u64>(), n in 1usize..=3) {
        let h = FieldHeader::cube(n, [16, 8, 4][n - 1], 1.3).unwrap();
        let mut r = rng(seed);
        let f = random_field(&h, &mut r);
        let g = random_field(&h, &mut r);
        prop_assert!(plancherel_defect(&f, &g).unwrap() <= 1e-10 * f.l2_norm() * g.l2_norm());
    }

    #[test]
    fn projections_partition_any_field(seed in any::<u64>(), n in 1usize..=3) {
        let h = FieldHeader::cube(n, [16, 8, 4][n - 1], 1.0).unwrap();
        let f = random_field(&h, &mut rng(seed));
        let plus = hardy_project(Side::Plus, &f).unwrap();
        let minus = hardy_project(Side::Minus, &f).unwrap();
        prop_assert!(plus.add(&minus).unwrap().relative_l2_error(&f).unwrap() < 1e-13);
        let g = random_bandlimited(&h, seed, band(&h), Channels::All, false).unwrap();
        let plus = hardy_project(Side::Plus, &g).unwrap();
        let again = hardy_project(Side::Plus, &plus).unwrap();
        prop_assert!(again.relative_l2_error(&plus).unwrap() < 1e-13);
        prop_assert!(hardy_project(Side::Minus, &plus).unwrap().l2_norm() <= 1e-13 * g.l2_norm());
    }

    #[test]
    fn transforms_are_linear(seed in any::<u64>(), a in -2.0f64..2.0) {
        let h = FieldHeader::cube(2, 8, 1.0).unwrap();
        let mut r = rng(seed);
        let f = random_field(&h, &mut r);
        let g = random_field(&h, &mut r);
        let comb = f.combine(c64(a), &g, c64(1.0)).unwrap();
        let lhs = hilbert(&comb).unwrap();
        let rhs = hilbert(&f).unwrap().combine(c64(a), &hilbert(&g).unwrap(), c64(1.0)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().l2_norm() <= 1e-12 * (1.0 + comb.l2_norm()));
    }
}
