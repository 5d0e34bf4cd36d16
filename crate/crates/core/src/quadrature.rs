//! Gauss–Legendre nodes and a product rule for averages over balls.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let m = order.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 1 { x } else { p1 };
            let pm1 = if order == 1 { 1.0 } else { p0 };
            dp = order as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if order == 1 {
            dp = 1.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order == 1 {
        nodes[0] = 0.0;
        weights[0] = 2.0;
    }
    (nodes, weights)
}

/// Averaging rule on the unit ball of `R^dim`: nodes `y` with weights
/// summing to one, so `Σ w f(c + r y) ≈ (1/|B|) ∫_B f`.
///
/// Radial Gauss–Legendre in `ρ` against `ρ^{dim-1}`, a Gauss rule in `cos θ`
/// for each polar angle against `sin^k θ`, and an equispaced azimuth.
#[derive(Clone, Debug)]
pub struct BallRule {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl BallRule {
    pub fn new(dim: usize, radial_order: usize, angular_order: usize) -> Self {
        assert!(dim >= 2, "ball rule needs dimension >= 2");
        let (gx, gw) = gauss_legendre(radial_order);
        let radial: Vec<(f64, f64)> = gx
            .iter()
            .zip(&gw)
            .map(|(&x, &w)| {
                let rho = 0.5 * (x + 1.0);
                (rho, 0.5 * w * rho.powi(dim as i32 - 1))
            })
            .collect();

        // polar angle with density sin^k θ, in u = cos θ: weight (1-u²)^{(k-1)/2}
        let polar_rules: Vec<Vec<(f64, f64)>> = (0..dim.saturating_sub(2))
            .map(|i| polar_rule(dim - 2 - i, angular_order))
            .collect();
        let azimuth_count = 2 * angular_order;

        // directions on the sphere S^{dim-1} with their surface weights
        let mut dirs: Vec<(Vec<f64>, f64)> = Vec::new();
        let polar_count = dim - 2;
        let mut polar_idx = vec![0usize; polar_count];
        loop {
            for a in 0..azimuth_count {
                let phi = 2.0 * PI * a as f64 / azimuth_count as f64;
                let mut w = 2.0 * PI / azimuth_count as f64;
                let mut dir = Vec::with_capacity(dim);
                let mut sin_prod = 1.0;
                for (rule, &pi) in polar_rules.iter().zip(&polar_idx) {
                    let (u, uw) = rule[pi];
                    dir.push(sin_prod * u);
                    w *= uw;
                    sin_prod *= (1.0 - u * u).sqrt();
                }
                dir.push(sin_prod * phi.cos());
                dir.push(sin_prod * phi.sin());
                dirs.push((dir, w));
            }
            // odometer over polar angle indices
            let mut k = 0;
            while k < polar_count {
                polar_idx[k] += 1;
                if polar_idx[k] < polar_rules[k].len() {
                    break;
                }
                polar_idx[k] = 0;
                k += 1;
            }
            if k == polar_count {
                break;
            }
        }

        let mut nodes = Vec::with_capacity(radial.len() * dirs.len());
        let mut weights = Vec::with_capacity(radial.len() * dirs.len());
        for &(rho, rw) in &radial {
            for (dir, dw) in &dirs {
                nodes.push(dir.iter().map(|d| rho * d).collect());
                weights.push(rw * dw);
            }
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        BallRule { dim, nodes, weights }
    }
}

/// Nodes and weights for `∫_{-1}^{1} (1-u²)^{(k-1)/2} p(u) du`, exact for
/// polynomials of degree below `2 order`.
fn polar_rule(k: usize, order: usize) -> Vec<(f64, f64)> {
    if k % 2 == 1 {
        let (x, w) = gauss_legendre(order);
        x.into_iter()
            .zip(w)
            .map(|(u, w)| (u, w * (1.0 - u * u).powi(((k - 1) / 2) as i32)))
            .collect()
    } else {
        // Chebyshev of the second kind carries the half-integer power
        (1..=order)
            .map(|i| {
                let t = PI * i as f64 / (order as f64 + 1.0);
                let u = t.cos();
                let w = PI / (order as f64 + 1.0) * t.sin().powi(2);
                (u, w * (1.0 - u * u).powi(((k - 2) / 2) as i32))
            })
            .collect()
    }
}
