//! Numerical invariants of the module layer: inner-product
//! normalization on random Gaussian mixtures, transform unitarity,
//! order residuals across the pinned θ values, and stability of every
//! reported residual under grid refinement.

use nctv_core::grp::FiniteGroup;
use nctv_core::walters::{
    bimodule_residuals, inner_right, order_residual, relation_residuals, sample_gaussian,
    sample_gaussian_poly, transform_w, Grid, KernelCache, SampledFunction,
};

use num_complex::Complex64;

const THETAS: [f64; 4] = [0.37, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.93];

/// Deterministic linear congruential values in [lo, hi).
struct Lcg(u64);

impl Lcg {
    fn next_f64(&mut self, lo: f64, hi: f64) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let unit = ((self.0 >> 11) as f64) / ((1u64 << 53) as f64);
        lo + unit * (hi - lo)
    }
}

fn random_mixture(grid: &Grid, theta: f64, rng: &mut Lcg) -> SampledFunction {
    let mut acc: Option<SampledFunction> = None;
    for _ in 0..3 {
        let center = rng.next_f64(-2.0, 2.0);
        let width = rng.next_f64(0.6, 1.4);
        let poly = [
            rng.next_f64(-1.0, 1.0),
            rng.next_f64(-0.5, 0.5),
            rng.next_f64(-0.2, 0.2),
            0.0,
            rng.next_f64(-0.05, 0.05),
        ];
        let g = sample_gaussian_poly(grid, theta, center, width, &poly).unwrap();
        acc = Some(match acc {
            None => g,
            Some(f) => f.add(&g).unwrap(),
        });
    }
    let f = acc.unwrap();
    let n = f.norm();
    f.scale(Complex64::new(1.0 / n, 0.0))
}

/// Closed-form oracle: two unit-norm Gaussians exp(-πx²/w²) with equal
/// widths and centers c apart have L² overlap exactly exp(-πc²/(2w²)).
/// The discrete quadrature must reproduce this to near machine
/// precision on the standard grid.
#[test]
fn gaussian_overlap_matches_closed_form() {
    let grid = Grid::standard();
    let h = grid.spacing();
    for (c, w) in [(2.0f64, 1.0f64), (1.5, 0.8), (3.0, 1.3)] {
        let a = sample_gaussian(&grid, 0.5, 0.0, w).unwrap();
        let b = sample_gaussian(&grid, 0.5, c, w).unwrap();
        let overlap: f64 = a
            .samples
            .iter()
            .zip(&b.samples)
            .map(|(x, y)| (x.conj() * y).re)
            .sum::<f64>()
            * h;
        let exact = (-std::f64::consts::PI * c * c / (2.0 * w * w)).exp();
        assert!(
            (overlap - exact).abs() < 1e-10,
            "overlap {overlap} vs closed form {exact} at c={c}, w={w}"
        );
    }
}

#[test]
fn inner_right_origin_gives_theta_on_random_mixtures() {
    let grid = Grid::standard();
    let mut rng = Lcg(0x5eed);
    for round in 0..20 {
        let theta = THETAS[round % THETAS.len()];
        let f = random_mixture(&grid, theta, &mut rng);
        let v = inner_right(&f, &f, 0, 0).unwrap();
        assert!(
            (v - Complex64::new(theta, 0.0)).norm() < 1e-8,
            "round {round}: {v} vs {theta}"
        );
    }
}

#[test]
fn transform_unitarity_on_mixtures() {
    let grid = Grid::standard();
    let cache = KernelCache::new();
    let mut rng = Lcg(0xabcd);
    for k in [2u64, 3, 4, 6] {
        let group = FiniteGroup::cyclic(k).unwrap();
        for &theta in &THETAS {
            let f = random_mixture(&grid, theta, &mut rng);
            let w = transform_w(&group, &f, false, &cache).unwrap();
            assert!(
                (w.norm() - f.norm()).abs() < 1e-6,
                "unitarity defect for Z{k} at theta {theta}"
            );
        }
    }
}

#[test]
fn order_residuals_under_tolerance_for_all_groups_and_thetas() {
    let grid = Grid::standard();
    let cache = KernelCache::new();
    for k in [2u64, 3, 4, 6] {
        let group = FiniteGroup::cyclic(k).unwrap();
        for &theta in &THETAS {
            let xi = sample_gaussian(&grid, theta, 0.0, 1.0).unwrap();
            let r = order_residual(&group, &xi, &cache).unwrap();
            assert!(r < 1e-4, "order residual {r} for Z{k} at theta {theta}");
        }
    }
}

#[test]
fn squares_collapse_orders() {
    let grid = Grid::standard();
    let cache = KernelCache::new();
    for &theta in &THETAS {
        let f = sample_gaussian(&grid, theta, 0.2, 1.1).unwrap();
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let w66 = transform_w(&z6, &transform_w(&z6, &f, false, &cache).unwrap(), false, &cache)
            .unwrap();
        let w3 = transform_w(&z3, &f, false, &cache).unwrap();
        assert!(w66.distance(&w3).unwrap() < 1e-6);
        let w44 = transform_w(&z4, &transform_w(&z4, &f, false, &cache).unwrap(), false, &cache)
            .unwrap();
        let w2 = transform_w(&z2, &f, false, &cache).unwrap();
        assert!(w44.distance(&w2).unwrap() < 1e-6);
    }
}

/// Doubling N must not degrade any reported residual by more than 10%
/// (residuals at the floating-point floor are exempt: comparing two
/// numbers at 1e-15 is noise).
#[test]
fn residuals_stable_under_grid_refinement() {
    let coarse = Grid::new(12.0, 1024).unwrap();
    let fine = Grid::new(12.0, 2048).unwrap();
    let cache = KernelCache::new();
    let theta = 0.37;
    let floor = 1e-10;

    let measure = |grid: &Grid| -> Vec<f64> {
        let xi = sample_gaussian(grid, theta, 0.0, 1.0).unwrap();
        let eta = sample_gaussian(grid, theta, 0.2, 0.8).unwrap();
        let zeta = sample_gaussian(grid, theta, -0.15, 0.8).unwrap();
        let mut out = Vec::new();
        for k in [2u64, 3, 4, 6] {
            let group = FiniteGroup::cyclic(k).unwrap();
            out.push(order_residual(&group, &xi, &cache).unwrap());
        }
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let rr = relation_residuals(&z6, &xi, &eta, 1, 1, &cache).unwrap();
        out.push(rr.covariance_u);
        out.push(rr.covariance_v);
        out.push(rr.inner_equivariance);
        let br = bimodule_residuals(&z6, &xi, &eta, &zeta, 6, &cache).unwrap();
        out.push(br.imprimitivity);
        out.push(br.green_julg);
        out
    };

    let at_coarse = measure(&coarse);
    let at_fine = measure(&fine);
    for (i, (c, f)) in at_coarse.iter().zip(&at_fine).enumerate() {
        assert!(
            *f <= 1.1 * c.max(floor),
            "residual {i} grew from {c} to {f} under refinement"
        );
    }
}

#[test]
fn hermiticity_against_involution_phase() {
    let grid = Grid::standard();
    for &theta in &THETAS {
        let xi = sample_gaussian(&grid, theta, 0.1, 1.0).unwrap();
        let eta = sample_gaussian(&grid, theta, -0.3, 1.2).unwrap();
        for (n, m) in [(0i64, 0i64), (1, 1), (2, -1), (-1, 3)] {
            let r = nctv_core::walters::hermiticity_residual(&xi, &eta, n, m).unwrap();
            assert!(r < 1e-8, "hermiticity {r} at ({n},{m}), theta {theta}");
        }
    }
}

#[test]
fn imprimitivity_across_thetas() {
    let grid = Grid::standard();
    let cache = KernelCache::new();
    let group = FiniteGroup::cyclic(6).unwrap();
    for &theta in &THETAS {
        let xi = sample_gaussian(&grid, theta, 0.0, 0.8).unwrap();
        let eta = sample_gaussian(&grid, theta, 0.2, 0.8).unwrap();
        let zeta = sample_gaussian(&grid, theta, -0.15, 0.8).unwrap();
        let r = bimodule_residuals(&group, &xi, &eta, &zeta, 6, &cache).unwrap();
        assert!(r.imprimitivity < 1e-4, "imprimitivity {} at theta {theta}", r.imprimitivity);
        assert!(r.green_julg < 1e-5, "green-julg {} at theta {theta}", r.green_julg);
    }
}
