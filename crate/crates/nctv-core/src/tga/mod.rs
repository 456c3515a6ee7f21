//! Twisted convolution algebras of `Z^d ⋊ F`.
//!
//! Elements are finitely supported maps from group elements to exact
//! phases. The twist on `Z^2` is `ω_θ((n,m),(n',m')) = e(θ(n'm - nm')/2)`
//! with `θ` formal (or a fixed rational); in higher dimension it is
//! `ω_Θ(m,n) = e(⟨Θm,n⟩/2)` for a rational skew-symmetric `Θ`. The
//! extension to the semidirect product is
//! `ω̃((m,h),(m',h')) = ω(m, h·m')`, which is everything needed
//! because the point group preserves the twist.

mod relations;

pub use relations::{
    check_generator_relations, corrected_unitaries, expected_traces, fiber_identification,
    projection_family, twisted_action_on_generators, FiberReport, RelationReport, UnitaryFamily,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{rat, rat_int, PhaseScalar, Rat};
use crate::grp::{group_inv, group_mul, FiniteGroup, GroupElement, IntMat};
use crate::{Error, Result};

/// How θ enters the cocycle.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaMode {
    /// θ stays a formal symbol; identities are checked for all θ at once.
    Formal,
    /// θ is a fixed rational; phases collapse to roots of unity.
    Rational(Rat),
}

/// The twist data: dimension, θ mode and (for d ≠ 2 or the flip case)
/// the skew-symmetric rational parameter matrix scaled by θ-free
/// entries. For d = 2 the single parameter θ is used directly.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleSpec {
    dim: usize,
    mode: ThetaMode,
    /// Rational skew-symmetric matrix Θ (entries Θ[i][j]), used when
    /// present; `None` means the standard planar twist in θ.
    skew: Option<Vec<Vec<Rat>>>,
}

impl CocycleSpec {
    /// Planar twist with formal θ.
    pub fn planar_formal() -> Self {
        CocycleSpec { dim: 2, mode: ThetaMode::Formal, skew: None }
    }

    /// Planar twist at a fixed rational θ.
    pub fn planar_rational(theta: Rat) -> Self {
        CocycleSpec { dim: 2, mode: ThetaMode::Rational(theta), skew: None }
    }

    /// Untwisted group algebra (θ = 0).
    pub fn untwisted(dim: usize) -> Self {
        if dim == 2 {
            CocycleSpec::planar_rational(Rat::from_integer(0.into()))
        } else {
            let zero = vec![vec![rat_int(0); dim]; dim];
            CocycleSpec { dim, mode: ThetaMode::Formal, skew: Some(zero) }
        }
    }

    /// General twist by a rational skew-symmetric matrix.
    pub fn skew(theta: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = theta.len();
        for (i, row) in theta.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            for (j, x) in row.iter().enumerate() {
                if *x != -theta[j][i].clone() {
                    return Err(Error::Invalid("matrix is not skew-symmetric".into()));
                }
            }
        }
        Ok(CocycleSpec { dim, mode: ThetaMode::Formal, skew: Some(theta) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> &ThetaMode {
        &self.mode
    }

    /// ω(x, y) on the translation lattice.
    pub fn omega(&self, x: &[i64], y: &[i64]) -> PhaseScalar {
        match &self.skew {
            Some(theta) => {
                // e(⟨Θx, y⟩ / 2)
                let mut acc = Rat::from_integer(0.into());
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        if !num_traits::Zero::is_zero(&theta[i][j]) {
                            acc += &theta[i][j] * rat_int(x[j]) * rat_int(y[i]);
                        }
                    }
                }
                PhaseScalar::e_rational(&(acc / rat_int(2)))
            }
            None => {
                // e(θ (y₁ x₂ - x₁ y₂) / 2)
                let s = rat(y[0] * x[1] - x[0] * y[1], 2);
                match &self.mode {
                    ThetaMode::Formal => PhaseScalar::e_theta(&s),
                    ThetaMode::Rational(t) => PhaseScalar::e_rational(&(s * t)),
                }
            }
        }
    }

    /// The extension cocycle ω̃((m,h),(m',h')) = ω(m, h·m').
    pub fn omega_ext(&self, g: &GroupElement, h: &GroupElement) -> PhaseScalar {
        let moved = g.point.mul_vec(&h.trans).unwrap();
        self.omega(&g.trans, &moved)
    }
}

/// The twisted group algebra of `Z^d ⋊ F` for a fixed twist: a factory
/// for elements plus the generator shorthands.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    group: FiniteGroup,
    cocycle: CocycleSpec,
}

impl TwistedAlgebra {
    pub fn new(group: FiniteGroup, cocycle: CocycleSpec) -> Result<Self> {
        if group.dim() != cocycle.dim() {
            return Err(Error::DimensionMismatch(group.dim(), cocycle.dim()));
        }
        Ok(TwistedAlgebra { group, cocycle })
    }

    /// Planar algebra with formal θ for the rotation group of order k.
    pub fn planar(k: u64) -> Result<Self> {
        Self::new(FiniteGroup::cyclic(k)?, CocycleSpec::planar_formal())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cocycle(&self) -> &CocycleSpec {
        &self.cocycle
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { cocycle: self.cocycle.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> AlgebraElement {
        self.delta(self.group.identity())
    }

    pub fn delta(&self, g: GroupElement) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        terms.insert(g, PhaseScalar::one());
        AlgebraElement { cocycle: self.cocycle.clone(), terms }
    }

    /// δ at the k-th standard lattice generator (k = 0 is u, k = 1 is v).
    pub fn lattice_gen(&self, k: usize) -> AlgebraElement {
        let mut trans = vec![0; self.group.dim()];
        trans[k] = 1;
        self.delta(GroupElement::translation(trans))
    }

    pub fn u(&self) -> AlgebraElement {
        self.lattice_gen(0)
    }

    pub fn v(&self) -> AlgebraElement {
        self.lattice_gen(1)
    }

    /// δ at (0, generator of F).
    pub fn t(&self) -> AlgebraElement {
        self.delta(GroupElement::new(
            vec![0; self.group.dim()],
            self.group.generator().clone(),
        ))
    }

    /// The monomial u^a v^b t^c (operator product of generator powers).
    pub fn monomial(&self, a: i64, b: i64, c: u64) -> AlgebraElement {
        let mut el = self.one();
        el = el.convolve(&self.u().int_pow(a)).unwrap();
        el = el.convolve(&self.v().int_pow(b)).unwrap();
        el = el.convolve(&self.t().int_pow(c as i64)).unwrap();
        el
    }

    /// Renders an element as Σ coeff·u^a v^b t^c, converting each
    /// delta term by δ_{((a,b), t^c)} = e(abθ/2)·u^a v^b t^c.
    pub fn render_monomial(&self, el: &AlgebraElement) -> String {
        if el.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (g, coeff) in el.terms() {
            let a = g.trans[0];
            let b = g.trans[1];
            let c = self
                .group
                .power_index(&g.point)
                .expect("point part lies in the group");
            let fold = match self.cocycle.mode() {
                ThetaMode::Formal => PhaseScalar::e_theta(&rat(a * b, 2)),
                ThetaMode::Rational(t) => PhaseScalar::e_rational(&(rat(a * b, 2) * t)),
            };
            let scalar = coeff.mul(&fold);
            let mut word = String::new();
            for (sym, e) in [("u", a), ("v", b), ("t", c as i64)] {
                if e == 1 {
                    word.push_str(sym);
                    word.push(' ');
                } else if e != 0 {
                    word.push_str(&format!("{sym}^{e} "));
                }
            }
            let word = word.trim_end();
            if word.is_empty() {
                parts.push(format!("{scalar}"));
            } else if scalar.is_one() {
                parts.push(word.to_string());
            } else {
                parts.push(format!("({scalar})·{word}"));
            }
        }
        parts.join(" + ")
    }
}

/// A finitely supported element of the twisted group algebra. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    cocycle: CocycleSpec,
    terms: BTreeMap<GroupElement, PhaseScalar>,
}

impl AlgebraElement {
    pub fn cocycle(&self) -> &CocycleSpec {
        &self.cocycle
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &PhaseScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> PhaseScalar {
        self.terms.get(g).cloned().unwrap_or_else(PhaseScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(terms: &mut BTreeMap<GroupElement, PhaseScalar>, g: GroupElement, c: PhaseScalar) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&g) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    terms.remove(&g);
                } else {
                    *existing = sum;
                }
            }
            None => {
                terms.insert(g, c);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            Self::insert_term(&mut terms, g.clone(), c.clone());
        }
        AlgebraElement { cocycle: self.cocycle.clone(), terms }
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            cocycle: self.cocycle.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PhaseScalar) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (g, x) in &self.terms {
            Self::insert_term(&mut terms, g.clone(), x.mul(c));
        }
        AlgebraElement { cocycle: self.cocycle.clone(), terms }
    }

    pub fn scale_rat(&self, c: &Rat) -> AlgebraElement {
        self.scale(&PhaseScalar::from_rat(c.clone()))
    }

    /// Twisted convolution: bilinear extension of
    /// δ_g ∗ δ_h = ω̃(g, h) δ_{gh}.
    pub fn convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.cocycle != other.cocycle {
            return Err(Error::CocycleMismatch);
        }
        let mut terms = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let phase = self.cocycle.omega_ext(g, h);
                let gh = group_mul(g, h)?;
                Self::insert_term(&mut terms, gh, a.mul(b).mul(&phase));
            }
        }
        Ok(AlgebraElement { cocycle: self.cocycle.clone(), terms })
    }

    /// Involution: f*(s) = conj(ω̃(s, s⁻¹)) · conj(f(s⁻¹)).
    pub fn adjoint(&self) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            let ginv = group_inv(g);
            let phase = self.cocycle.omega_ext(&ginv, g).conjugate();
            Self::insert_term(&mut terms, ginv, c.conjugate().mul(&phase));
        }
        AlgebraElement { cocycle: self.cocycle.clone(), terms }
    }

    /// Canonical trace: the coefficient at the group identity.
    pub fn trace(&self) -> PhaseScalar {
        let d = self
            .terms
            .keys()
            .next()
            .map(|g| g.dim())
            .unwrap_or(self.cocycle.dim());
        let id = GroupElement::new(vec![0; d], IntMat::identity(d));
        self.coefficient(&id)
    }

    pub fn is_projection(&self) -> bool {
        if *self != self.adjoint() {
            return false;
        }
        match self.convolve(self) {
            Ok(sq) => sq == *self,
            Err(_) => false,
        }
    }

    pub fn is_unitary(&self) -> bool {
        let one_terms = {
            let d = self.cocycle.dim();
            let id = GroupElement::new(vec![0; d], IntMat::identity(d));
            let mut terms = BTreeMap::new();
            terms.insert(id, PhaseScalar::one());
            AlgebraElement { cocycle: self.cocycle.clone(), terms }
        };
        let adj = self.adjoint();
        self.convolve(&adj).map(|p| p == one_terms).unwrap_or(false)
            && adj.convolve(self).map(|p| p == one_terms).unwrap_or(false)
    }

    /// Least 1 ≤ j ≤ cap with a^j = 1, for unitary a.
    pub fn unitary_order(&self, cap: u64) -> Result<Option<u64>> {
        if !self.is_unitary() {
            return Err(Error::NotUnitary);
        }
        let d = self.cocycle.dim();
        let id = GroupElement::new(vec![0; d], IntMat::identity(d));
        let mut one_terms = BTreeMap::new();
        one_terms.insert(id, PhaseScalar::one());
        let one = AlgebraElement { cocycle: self.cocycle.clone(), terms: one_terms };
        let mut acc = self.clone();
        for j in 1..=cap {
            if acc == one {
                return Ok(Some(j));
            }
            acc = acc.convolve(self)?;
        }
        Ok(None)
    }

    /// a^e for e ≥ 0; negative e uses the adjoint (valid for unitaries).
    pub fn int_pow(&self, e: i64) -> AlgebraElement {
        let base = if e < 0 { self.adjoint() } else { self.clone() };
        let mut acc = AlgebraElement {
            cocycle: self.cocycle.clone(),
            terms: {
                let d = self.cocycle.dim();
                let id = GroupElement::new(vec![0; d], IntMat::identity(d));
                let mut t = BTreeMap::new();
                t.insert(id, PhaseScalar::one());
                t
            },
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.convolve(&base).unwrap();
        }
        acc
    }

    /// Substitutes a rational θ exactly into every coefficient.
    /// Only meaningful for the planar formal twist.
    pub fn specialize_theta(&self, theta: &Rat) -> AlgebraElement {
        let cocycle = CocycleSpec::planar_rational(theta.clone());
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            Self::insert_term(&mut terms, g.clone(), c.specialize_theta(theta));
        }
        AlgebraElement { cocycle, terms }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·δ[{:?}; {:?}]", g.trans, g.point)?;
        }
        Ok(())
    }
}
