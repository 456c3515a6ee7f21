//! The order-k unitary integral transforms acting on the module.
//!
//! For the generator t of each planar group the action on samples is:
//!   order 2:  (ξW)(s) = ξ(-s)                                (reflection)
//!   order 3:  (ξW)(s) = e^{-iπ/12} θ^{-1/2} e(s²/2θ) ∫ ξ(x) e(sx/θ) dx
//!   order 4:  (ξW)(s) = θ^{-1/2} ∫ ξ(x) e(sx/θ) dx
//!   order 6:  (ξW)(s) = e^{+iπ/12} θ^{-1/2} ∫ ξ(x) e((2sx - x²)/2θ) dx
//! with the explicit two-sided inverse in the order-6 case
//!   (ξW⁻¹)(s) = e^{-iπ/12} θ^{-1/2} e(s²/2θ) ∫ ξ(x) e(-sx/θ) dx.
//!
//! Kernels are materialized as dense N×N matrices (quadrature weight
//! folded in) and cached per (order, direction, θ, grid). The matrix
//! build is row-parallel; application is a dense mat-vec.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::grp::FiniteGroup;
use crate::par;
use crate::{Error, Result};

use super::{e, Grid, SampledFunction};

#[derive(Clone, PartialEq, Eq, Hash)]
struct KernelKey {
    order: u64,
    inverse: bool,
    theta_bits: u64,
    points: usize,
    half_width_bits: u64,
}

/// Read-mostly cache of kernel matrices, safe to share across threads.
#[derive(Default)]
pub struct KernelCache {
    kernels: Mutex<HashMap<KernelKey, Arc<Vec<Complex64>>>>,
}

impl KernelCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get_or_build(
        &self,
        order: u64,
        inverse: bool,
        theta: f64,
        grid: &Grid,
    ) -> Arc<Vec<Complex64>> {
        let key = KernelKey {
            order,
            inverse,
            theta_bits: theta.to_bits(),
            points: grid.len(),
            half_width_bits: grid.half_width().to_bits(),
        };
        if let Some(k) = self.kernels.lock().unwrap().get(&key) {
            return k.clone();
        }
        let built = Arc::new(build_kernel(order, inverse, theta, grid, true));
        self.kernels
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(built)
            .clone()
    }
}

/// Dense kernel `K[j,k] = (weight) · k(x_j, x_k) · h`, row-major.
/// `parallel = false` forces the sequential path (used by benches).
pub fn build_kernel(
    order: u64,
    inverse: bool,
    theta: f64,
    grid: &Grid,
    parallel: bool,
) -> Vec<Complex64> {
    let n = grid.len();
    let h = grid.spacing();
    let amp = h / theta.sqrt();
    let row = |j: usize| -> Vec<Complex64> {
        let s = grid.x(j);
        let mut out = Vec::with_capacity(n);
        match (order, inverse) {
            (4, false) => {
                for x in grid.xs() {
                    out.push(amp * e(s * x / theta));
                }
            }
            (4, true) => {
                for x in grid.xs() {
                    out.push(amp * e(-s * x / theta));
                }
            }
            (3, false) => {
                let pre = phase_exp(-PI / 12.0) * amp * e(s * s / (2.0 * theta));
                for x in grid.xs() {
                    out.push(pre * e(s * x / theta));
                }
            }
            (3, true) => {
                // W₃⁻¹ = W₃², built by composing; unused as a kernel.
                unreachable!("order-3 inverse is applied by squaring")
            }
            (6, false) => {
                let pre = phase_exp(PI / 12.0) * amp;
                for x in grid.xs() {
                    out.push(pre * e((2.0 * s * x - x * x) / (2.0 * theta)));
                }
            }
            (6, true) => {
                let pre = phase_exp(-PI / 12.0) * amp * e(s * s / (2.0 * theta));
                for x in grid.xs() {
                    out.push(pre * e(-s * x / theta));
                }
            }
            _ => unreachable!("no dense kernel for order {order}"),
        }
        out
    };
    let rows = if parallel {
        par::map_indexed(n, row)
    } else {
        par::map_indexed_seq(n, row)
    };
    rows.concat()
}

/// Dense mat-vec apply; rows fan out in parallel.
pub fn apply_kernel(kernel: &[Complex64], f: &SampledFunction) -> SampledFunction {
    let n = f.grid.len();
    debug_assert_eq!(kernel.len(), n * n);
    let samples = par::map_indexed(n, |j| {
        let row = &kernel[j * n..(j + 1) * n];
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, z) in row.iter().zip(&f.samples) {
            acc += k * z;
        }
        acc
    });
    SampledFunction { grid: f.grid.clone(), theta: f.theta, samples }
}

fn phase_exp(arg: f64) -> Complex64 {
    Complex64::new(arg.cos(), arg.sin())
}

/// Reflection (ξW)(s) = ξ(-s): index j ↦ (N - j) mod N on the
/// periodic grid; exact, no quadrature involved.
pub fn reflect(f: &SampledFunction) -> SampledFunction {
    let n = f.grid.len();
    let samples = (0..n).map(|j| f.samples[(n - j) % n]).collect();
    SampledFunction { grid: f.grid.clone(), theta: f.theta, samples }
}

/// Applies the group's transform W (or its inverse) to ξ.
pub fn transform_w(
    group: &FiniteGroup,
    xi: &SampledFunction,
    inverse: bool,
    cache: &KernelCache,
) -> Result<SampledFunction> {
    if xi.theta <= 0.0 || xi.theta > 1.0 || xi.theta.is_nan() {
        return Err(Error::Invalid(format!(
            "theta {} outside (0, 1]",
            xi.theta
        )));
    }
    let order = group.order();
    if group.is_flip() || order == 2 {
        return Ok(reflect(xi));
    }
    match (order, inverse) {
        (3, false) | (4, _) | (6, _) => {
            let k = cache.get_or_build(order, inverse, xi.theta, &xi.grid);
            Ok(apply_kernel(&k, xi))
        }
        (3, true) => {
            // order three: W⁻¹ = W²
            let k = cache.get_or_build(3, false, xi.theta, &xi.grid);
            Ok(apply_kernel(&k, &apply_kernel(&k, xi)))
        }
        _ => Err(Error::UnsupportedOrder(order)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{sample_gaussian, Grid};
    use super::*;

    #[test]
    fn reflection_fixes_even_gaussian() {
        let grid = Grid::standard();
        let f = sample_gaussian(&grid, 0.37, 0.0, 1.0).unwrap();
        let g = reflect(&f);
        assert_eq!(f.samples, g.samples);
    }

    #[test]
    fn z6_inverse_is_two_sided() {
        let grid = Grid::standard();
        let cache = KernelCache::new();
        let group = FiniteGroup::cyclic(6).unwrap();
        let f = sample_gaussian(&grid, 0.37, 0.3, 1.0).unwrap();
        let w = transform_w(&group, &f, false, &cache).unwrap();
        let back = transform_w(&group, &w, true, &cache).unwrap();
        assert!(back.distance(&f).unwrap() < 1e-6);
        let wi = transform_w(&group, &f, true, &cache).unwrap();
        let forth = transform_w(&group, &wi, false, &cache).unwrap();
        assert!(forth.distance(&f).unwrap() < 1e-6);
    }

    #[test]
    fn unitarity_on_test_vectors() {
        let grid = Grid::standard();
        let cache = KernelCache::new();
        for k in [3u64, 4, 6] {
            let group = FiniteGroup::cyclic(k).unwrap();
            let f = sample_gaussian(&grid, 1.0 / 2f64.sqrt(), -0.2, 1.1).unwrap();
            let w = transform_w(&group, &f, false, &cache).unwrap();
            assert!(
                (w.norm() - f.norm()).abs() < 1e-6,
                "norm drift {} for order {k}",
                (w.norm() - f.norm()).abs()
            );
        }
    }

    #[test]
    fn quadratic_is_square_of_quartic() {
        let grid = Grid::standard();
        let cache = KernelCache::new();
        let group = FiniteGroup::cyclic(4).unwrap();
        let f = sample_gaussian(&grid, 0.37, 0.25, 0.9).unwrap();
        let w2 = transform_w(
            &group,
            &transform_w(&group, &f, false, &cache).unwrap(),
            false,
            &cache,
        )
        .unwrap();
        assert!(w2.distance(&reflect(&f)).unwrap() < 1e-6);
    }

    #[test]
    fn cubic_is_square_of_hexic() {
        let grid = Grid::standard();
        let cache = KernelCache::new();
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let f = sample_gaussian(&grid, 0.37, 0.0, 1.0).unwrap();
        let w66 = transform_w(
            &z6,
            &transform_w(&z6, &f, false, &cache).unwrap(),
            false,
            &cache,
        )
        .unwrap();
        let w3 = transform_w(&z3, &f, false, &cache).unwrap();
        assert!(w66.distance(&w3).unwrap() < 1e-6);
    }
}
