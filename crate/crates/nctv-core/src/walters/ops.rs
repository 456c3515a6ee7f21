//! Module actions and inner products.
//!
//! Right action of the rotation algebra at θ:
//!   (ξ·U)(s) = ξ(s + θ),  (ξ·V)(s) = e(s)·ξ(s).
//! Left action of the companion algebra at 1/θ:
//!   (U·ξ)(s) = ξ(s + 1),  (V·ξ)(s) = e(-s/θ)·ξ(s).
//!
//! Right inner product (values in the θ-algebra, monomial basis):
//!   ⟨ξ,η⟩_{n,m} = θ ∫ conj(ξ(x + nθ)) η(x) e(-m x) dx,
//! left inner product (values in the 1/θ-algebra):
//!   ⟨ξ,η⟩_{n,m} = ∫ ξ(x - n) conj(η(x)) e(m x / θ) dx.

use num_complex::Complex64;

use crate::grp::FiniteGroup;
use crate::tga::AlgebraElement;
use crate::Result;

use super::transforms::{transform_w, KernelCache};
use super::{e, spectral_shift, SampledFunction};

/// One generator step of the right module action.
#[derive(Clone, Copy, Debug)]
pub enum RightOp {
    /// ξ ↦ ξ·U^n (translation by nθ).
    U(i64),
    /// ξ ↦ ξ·V^m (modulation by e(m s)).
    V(i64),
    /// ξ ↦ c·ξ (central function evaluated at the fiber).
    Scalar(Complex64),
}

/// One generator step of the left module action.
#[derive(Clone, Copy, Debug)]
pub enum LeftOp {
    /// ξ ↦ U^n·ξ (translation by n).
    U(i64),
    /// ξ ↦ V^m·ξ (modulation by e(-m s/θ)).
    V(i64),
    Scalar(Complex64),
}

/// Applies a word of right-action generators, left to right:
/// `[A, B]` sends ξ to (ξ·A)·B.
pub fn act_right(xi: &SampledFunction, word: &[RightOp]) -> SampledFunction {
    let mut cur = xi.clone();
    for op in word {
        cur = match *op {
            RightOp::U(n) => spectral_shift(&cur, n as f64 * cur.theta),
            RightOp::V(m) => modulate(&cur, m as f64),
            RightOp::Scalar(c) => cur.scale(c),
        };
    }
    cur
}

/// Applies a word of left-action generators; `[A, B]` sends ξ to
/// A·(B·ξ), i.e. the word is read as an operator product.
pub fn act_left(xi: &SampledFunction, word: &[LeftOp]) -> SampledFunction {
    let mut cur = xi.clone();
    for op in word.iter().rev() {
        cur = match *op {
            LeftOp::U(n) => spectral_shift(&cur, n as f64),
            LeftOp::V(m) => modulate_inv_theta(&cur, m as f64),
            LeftOp::Scalar(c) => cur.scale(c),
        };
    }
    cur
}

fn modulate(f: &SampledFunction, m: f64) -> SampledFunction {
    let samples = f
        .grid
        .xs()
        .zip(&f.samples)
        .map(|(x, z)| z * e(m * x))
        .collect();
    SampledFunction { grid: f.grid.clone(), theta: f.theta, samples }
}

fn modulate_inv_theta(f: &SampledFunction, m: f64) -> SampledFunction {
    let theta = f.theta;
    let samples = f
        .grid
        .xs()
        .zip(&f.samples)
        .map(|(x, z)| z * e(-m * x / theta))
        .collect();
    SampledFunction { grid: f.grid.clone(), theta: f.theta, samples }
}

/// ⟨ξ,η⟩_{n,m} = θ ∫ conj(ξ(x + nθ)) η(x) e(-m x) dx by trapezoid
/// quadrature on the common grid.
pub fn inner_right(
    xi: &SampledFunction,
    eta: &SampledFunction,
    n: i64,
    m: i64,
) -> Result<Complex64> {
    xi.compatible(eta)?;
    let shifted = spectral_shift(xi, n as f64 * xi.theta);
    let h = xi.grid.spacing();
    let mut acc = Complex64::new(0.0, 0.0);
    for ((x, a), b) in xi.grid.xs().zip(&shifted.samples).zip(&eta.samples) {
        acc += a.conj() * b * e(-(m as f64) * x);
    }
    Ok(acc * h * xi.theta)
}

/// ⟨ξ,η⟩_{n,m} = ∫ ξ(x - n) conj(η(x)) e(m x/θ) dx (no θ prefactor,
/// exactly as the left product is defined).
pub fn inner_left(
    xi: &SampledFunction,
    eta: &SampledFunction,
    n: i64,
    m: i64,
) -> Result<Complex64> {
    xi.compatible(eta)?;
    let shifted = spectral_shift(xi, -(n as f64));
    let h = xi.grid.spacing();
    let theta = xi.theta;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((x, a), b) in xi.grid.xs().zip(&shifted.samples).zip(&eta.samples) {
        acc += a * b.conj() * e((m as f64) * x / theta);
    }
    Ok(acc * h)
}

/// Right action of a finitely supported crossed-product element:
/// ξ·(Σ c_g δ_g) = Σ c_g · (ξ·δ_{(a,b)}) W^c, using
/// δ_{(a,b)} = e(abθ/2) u^a v^b and the transform W for the point part.
pub fn apply_crossed(
    xi: &SampledFunction,
    x: &AlgebraElement,
    group: &FiniteGroup,
    cache: &KernelCache,
) -> Result<SampledFunction> {
    if group.dim() != 2 {
        return Err(crate::Error::DimensionMismatch(group.dim(), 2));
    }
    let theta = xi.theta;
    let mut acc = SampledFunction::zeros_like(xi);
    for (g, phase) in x.terms() {
        let a = g.trans[0];
        let b = g.trans[1];
        let c = group
            .power_index(&g.point)
            .ok_or(crate::Error::Invalid("point part outside the group".into()))?;
        let coeff = phase.eval(theta) * e(a as f64 * b as f64 * theta / 2.0);
        let mut term = act_right(xi, &[RightOp::U(a), RightOp::V(b)]);
        for _ in 0..c {
            term = transform_w(group, &term, false, cache)?;
        }
        acc = acc.add(&term.scale(coeff))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::{sample_gaussian, Grid};
    use super::*;

    #[test]
    fn left_and_right_actions_commute() {
        let grid = Grid::standard();
        let xi = sample_gaussian(&grid, 0.37, 0.1, 1.0).unwrap();
        let a = act_left(&act_right(&xi, &[RightOp::V(1)]), &[LeftOp::U(1)]);
        let b = act_right(&act_left(&xi, &[LeftOp::U(1)]), &[RightOp::V(1)]);
        assert!(a.distance(&b).unwrap() < 1e-10);
        let a = act_left(&act_right(&xi, &[RightOp::U(1)]), &[LeftOp::V(1)]);
        let b = act_right(&act_left(&xi, &[LeftOp::V(1)]), &[RightOp::U(1)]);
        assert!(a.distance(&b).unwrap() < 1e-10);
    }

    #[test]
    fn right_action_vu_ratio() {
        // ξ·(V then U) and ξ·(U then V) differ by the phase field e(θ):
        // (ξVU)(s) = e(s+θ)ξ(s+θ), (ξUV)(s) = e(s)ξ(s+θ).
        let grid = Grid::standard();
        let theta = 0.37;
        let xi = sample_gaussian(&grid, theta, 0.0, 1.0).unwrap();
        let vu = act_right(&xi, &[RightOp::V(1), RightOp::U(1)]);
        let uv = act_right(&xi, &[RightOp::U(1), RightOp::V(1)]);
        let scaled = uv.scale(e(theta));
        assert!(vu.distance(&scaled).unwrap() < 1e-8);
    }

    #[test]
    fn scalar_right_action() {
        let grid = Grid::standard();
        let xi = sample_gaussian(&grid, 0.37, 0.0, 1.0).unwrap();
        let c = Complex64::new(0.3, -0.7);
        let acted = act_right(&xi, &[RightOp::Scalar(c)]);
        assert_eq!(acted.samples[100], xi.samples[100] * c);
    }

    #[test]
    fn inner_right_at_origin_is_theta() {
        let grid = Grid::standard();
        for theta in [0.37, 0.5, 0.93] {
            let xi = sample_gaussian(&grid, theta, 0.2, 0.8).unwrap();
            let v = inner_right(&xi, &xi, 0, 0).unwrap();
            assert!((v - Complex64::new(theta, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn inner_right_distant_gaussians() {
        let grid = Grid::standard();
        let a = sample_gaussian(&grid, 0.37, -4.0, 1.0).unwrap();
        let b = sample_gaussian(&grid, 0.37, 4.0, 1.0).unwrap();
        let v = inner_right(&a, &b, 0, 0).unwrap();
        assert!(v.norm() < 1e-6);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let a = sample_gaussian(&Grid::standard(), 0.37, 0.0, 1.0).unwrap();
        let b = sample_gaussian(&Grid::new(12.0, 1024).unwrap(), 0.37, 0.0, 1.0).unwrap();
        assert!(inner_right(&a, &b, 0, 0).is_err());
    }
}
