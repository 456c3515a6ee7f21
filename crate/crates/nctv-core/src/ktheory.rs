//! K-group ranks and trace data for the crossed products, computed
//! from the torsion classification rather than hardcoded: the rank of
//! K₀ is 2 + Σ (|M_j| - 1) over the conjugacy classes of maximal
//! finite subgroups, and K₁ vanishes for all four planar groups.

use num_traits::{One, Signed, Zero};

use crate::coeff::{rat, rat_gcd, Rat};
use crate::grp::{maximal_finite_subgroups, torsion_classes, FiniteGroup};
use crate::tga::{expected_traces, projection_family, TwistedAlgebra};
use crate::{Error, Result};

/// A formal affine value a + b·θ with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTheta {
    pub a: Rat,
    pub b: Rat,
}

impl AffineTheta {
    pub fn new(a: Rat, b: Rat) -> Self {
        AffineTheta { a, b }
    }

    pub fn rational(a: Rat) -> Self {
        AffineTheta { a, b: Rat::zero() }
    }

    pub fn theta_multiple(b: Rat) -> Self {
        AffineTheta { a: Rat::zero(), b }
    }

    pub fn render(&self) -> String {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => format!("{}", self.a),
            (true, false) => format!("{}*t", self.b),
            (false, false) => format!("{} + {}*t", self.a, self.b),
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * theta
    }
}

fn to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Rank data and trace vector for one crossed product.
#[derive(Clone, Debug)]
pub struct K0Summary {
    pub group: String,
    pub rank_k0: u64,
    pub rank_k1: u64,
    /// Basis labels: the unit, the named projections, then the module class.
    pub basis_labels: Vec<String>,
    /// Trace values in the same order; the last entry is θ/k.
    pub trace_vector: Vec<AffineTheta>,
}

/// The subgroup a·Z + b·θ·Z of R, normalized with a, b > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSubgroup {
    pub a: Rat,
    pub b: Rat,
}

impl TraceSubgroup {
    /// Membership of r + s·θ (θ treated as irrational).
    pub fn contains(&self, value: &AffineTheta) -> bool {
        let div = |x: &Rat, g: &Rat| -> bool {
            if g.is_zero() {
                x.is_zero()
            } else {
                (x / g).is_integer()
            }
        };
        div(&value.a, &self.a) && div(&value.b, &self.b)
    }

    pub fn render(&self) -> String {
        format!("{}*Z + {}*t*Z", self.a, self.b)
    }
}

/// (rank K₀, rank K₁) computed from the maximal-subgroup classes:
/// one free summand for the unit class, |M_j| - 1 reduced summands per
/// class, and one for the module class mapping onto the top cell.
pub fn k_ranks(group: &FiniteGroup) -> Result<(u64, u64)> {
    if group.dim() != 2 || group.is_flip() {
        return Err(Error::Invalid(
            "rank formula is stated for the planar rotation groups".into(),
        ));
    }
    let subgroups = maximal_finite_subgroups(group);
    let rank = 2 + subgroups.iter().map(|s| s.order - 1).sum::<u64>();
    Ok((rank, 0))
}

/// Assembles the K₀ summary: unit class, the projection basis from
/// the twisted algebra (with exact traces), and the module class with
/// trace θ/k (recorded, not re-derived).
pub fn k0_summary(k: u64) -> Result<K0Summary> {
    let group = FiniteGroup::cyclic(k)?;
    let (rank_k0, rank_k1) = k_ranks(&group)?;
    let alg = TwistedAlgebra::planar(k)?;

    let mut basis_labels = vec!["1".to_string()];
    let mut trace_vector = vec![AffineTheta::rational(Rat::one())];
    let fam = projection_family(&alg);
    let expected = expected_traces(k);
    for ((name, p), (_, etrace)) in fam.iter().zip(&expected) {
        let tr = p
            .trace()
            .as_rational()
            .ok_or_else(|| Error::Invalid(format!("trace of {name} is not rational")))?;
        if tr != *etrace {
            return Err(Error::Invalid(format!(
                "trace of {name} disagrees with the expected table"
            )));
        }
        basis_labels.push(name.clone());
        trace_vector.push(AffineTheta::rational(tr));
    }
    basis_labels.push("module".to_string());
    trace_vector.push(AffineTheta::theta_multiple(rat(1, k as i64)));

    if basis_labels.len() as u64 != rank_k0 {
        return Err(Error::Invalid(format!(
            "basis length {} disagrees with rank {rank_k0}",
            basis_labels.len()
        )));
    }
    Ok(K0Summary {
        group: group.label(),
        rank_k0,
        rank_k1,
        basis_labels,
        trace_vector,
    })
}

/// The image of K₀ under the canonical trace: the subgroup of R
/// generated by the trace vector, computed as the gcd of the rational
/// parts plus the gcd of the θ-coefficients.
pub fn trace_image(k: u64) -> Result<TraceSubgroup> {
    let summary = k0_summary(k)?;
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for v in &summary.trace_vector {
        a = rat_gcd(&a, &v.a);
        b = rat_gcd(&b, &v.b);
    }
    Ok(TraceSubgroup { a: a.abs(), b: b.abs() })
}

/// Isomorphism criterion for two crossed products `A_{θ_i} ⋊ Z_{k_i}`
/// with θ_i = a_i + b_i·θ̂ affine in a shared irrational θ̂ (b ≠ 0):
/// isomorphic iff k₁ = k₂ and θ₁ = ±θ₂ mod Z.
pub fn iso_decide(k1: u64, theta1: &AffineTheta, k2: u64, theta2: &AffineTheta) -> Result<bool> {
    if theta1.b.is_zero() || theta2.b.is_zero() {
        return Err(Error::RationalTheta);
    }
    if k1 != k2 {
        return Ok(false);
    }
    let same = theta1.b == theta2.b && (&theta1.a - &theta2.a).is_integer();
    let flipped = theta1.b == -theta2.b.clone() && (&theta1.a + &theta2.a).is_integer();
    Ok(same || flipped)
}

/// Rank of K₀ read off the block structure of the rational fiber: a
/// matrix-valued function algebra on the sphere with `s_i` blocks at
/// the i-th marked point contributes 2 + Σ (s_i - 1).
pub fn rational_structure_rank(partitions: &[Vec<u64>]) -> Result<u64> {
    let mut total: Option<u64> = None;
    for blocks in partitions {
        let sum: u64 = blocks.iter().sum();
        match total {
            None => total = Some(sum),
            Some(t) if t == sum => {}
            Some(t) => return Err(Error::InconsistentTotals(t, sum)),
        }
    }
    Ok(2 + partitions.iter().map(|b| b.len() as u64 - 1).sum::<u64>())
}

/// Ranks in dimension d: the torus has K₀ ≅ K₁ ≅ Z^{2^{d-1}}, and the
/// flip crossed product has K₀ ≅ Z^{3·2^{d-1}}, K₁ = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighDimRanks {
    pub dim: usize,
    pub torus: (u64, u64),
    pub flip_crossed: (u64, u64),
    /// Number of involution classes in Z^d ⋊ {±1}, enumerated from the
    /// torsion classification (must equal 2^d).
    pub involution_classes: u64,
}

pub fn highdim_k_ranks(d: usize) -> Result<HighDimRanks> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let half = 1u64 << (d - 1);
    let involution_classes = torsion_classes(&FiniteGroup::flip(d)).len() as u64;
    let ranks = HighDimRanks {
        dim: d,
        torus: (half, half),
        flip_crossed: (3 * half, 0),
        involution_classes,
    };
    // Internal consistency: the count of involution classes feeds the
    // decomposition 1 + 2^d + (2^{d-1} - 1) = 3·2^{d-1}.
    debug_assert_eq!(ranks.involution_classes, 1 << d);
    debug_assert_eq!(1 + (1 << d) + (half - 1), 3 * half);
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;

    #[test]
    fn ranks_match_expected_table() {
        let expect = [(2u64, 6u64), (3, 8), (4, 9), (6, 10)];
        for (k, rank) in expect {
            let g = FiniteGroup::cyclic(k).unwrap();
            assert_eq!(k_ranks(&g).unwrap(), (rank, 0), "Z{k}");
        }
    }

    #[test]
    fn subgroup_census() {
        let cases: [(u64, &[u64]); 4] =
            [(2, &[2, 2, 2, 2]), (3, &[3, 3, 3]), (4, &[4, 4, 2]), (6, &[6, 3, 2])];
        for (k, orders) in cases {
            let g = FiniteGroup::cyclic(k).unwrap();
            let subs = maximal_finite_subgroups(&g);
            let got: Vec<u64> = subs.iter().map(|s| s.order).collect();
            assert_eq!(got, orders, "maximal subgroup orders for Z{k}");
        }
    }

    #[test]
    fn trace_images_are_one_over_k() {
        for k in [2u64, 3, 4, 6] {
            let img = trace_image(k).unwrap();
            assert_eq!(img, TraceSubgroup { a: rat(1, k as i64), b: rat(1, k as i64) });
            assert!(img.contains(&AffineTheta::new(rat(1, k as i64), rat(3, k as i64))));
            assert!(!img.contains(&AffineTheta::new(rat(1, (2 * k) as i64), Rat::zero())));
        }
    }

    #[test]
    fn iso_examples() {
        let th = AffineTheta::new(rat_int(0), rat_int(1)); // θ̂
        let one_minus = AffineTheta::new(rat_int(1), rat_int(-1)); // 1 - θ̂
        let shifted = AffineTheta::new(rat_int(7), rat_int(1)); // θ̂ + 7
        assert!(iso_decide(2, &th, 2, &one_minus).unwrap());
        assert!(!iso_decide(2, &th, 3, &th).unwrap());
        assert!(iso_decide(4, &shifted, 4, &th).unwrap());
        let rational = AffineTheta::rational(rat(1, 3));
        assert!(matches!(
            iso_decide(2, &th, 2, &rational),
            Err(Error::RationalTheta)
        ));
    }

    #[test]
    fn rational_fiber_rank_examples() {
        // blocks (q,q,q,q,q,q), (2q,2q,2q), (3q,3q) with q = 1
        let z6 = vec![vec![1; 6], vec![2; 3], vec![3; 2]];
        assert_eq!(rational_structure_rank(&z6).unwrap(), 10);
        assert_eq!(rational_structure_rank(&[vec![5]]).unwrap(), 2);
        let z2 = vec![vec![1, 1]; 4];
        assert_eq!(rational_structure_rank(&z2).unwrap(), 6);
        assert!(rational_structure_rank(&[vec![1, 1], vec![3]]).is_err());
    }

    #[test]
    fn highdim_ranks() {
        let r = highdim_k_ranks(2).unwrap();
        assert_eq!(r.torus, (2, 2));
        assert_eq!(r.flip_crossed, (6, 0));
        assert_eq!(r.flip_crossed.0, k_ranks(&FiniteGroup::cyclic(2).unwrap()).unwrap().0);
        let r = highdim_k_ranks(3).unwrap();
        assert_eq!(r.flip_crossed, (12, 0));
        assert_eq!(r.involution_classes, 8);
        let r = highdim_k_ranks(1).unwrap();
        assert_eq!(r.torus, (1, 1));
    }

    #[test]
    fn trace_vector_lies_in_trace_image() {
        for k in [2u64, 3, 4, 6] {
            let s = k0_summary(k).unwrap();
            let img = trace_image(k).unwrap();
            for v in &s.trace_vector {
                assert!(img.contains(v), "trace entry {} outside image for Z{k}", v.render());
            }
        }
    }

    #[test]
    fn k0_summary_shape() {
        for k in [2u64, 3, 4, 6] {
            let s = k0_summary(k).unwrap();
            assert_eq!(s.basis_labels.len(), s.rank_k0 as usize);
            assert_eq!(s.trace_vector.len(), s.rank_k0 as usize);
            assert_eq!(s.rank_k1, 0);
            assert_eq!(s.trace_vector[0], AffineTheta::rational(Rat::one()));
            let last = s.trace_vector.last().unwrap();
            assert_eq!(*last, AffineTheta::theta_multiple(rat(1, k as i64)));
        }
    }
}
