//! Formal phases Σ c·e(r + s·θ): finitely many θ-exponents `s`, each
//! carrying a cyclotomic coefficient Σ c·e(r). Two phases are equal
//! exactly when they agree for every θ, i.e. key-wise.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{frac_part, Cyclotomic, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseScalar {
    /// θ-exponent s ↦ coefficient of e(s·θ).
    terms: BTreeMap<Rat, Cyclotomic>,
}

impl PhaseScalar {
    pub fn zero() -> Self {
        PhaseScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_cyclotomic(Cyclotomic::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_rat(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(super::rat_int(n))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Rat::zero(), c);
        }
        PhaseScalar { terms }
    }

    /// e(r) for rational r.
    pub fn e_rational(r: &Rat) -> Self {
        Self::from_cyclotomic(Cyclotomic::root_of_unity(r))
    }

    /// e(s·θ) for rational s.
    pub fn e_theta(s: &Rat) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(s.clone(), Cyclotomic::one());
        PhaseScalar { terms }
    }

    /// e(r + s·θ).
    pub fn e_affine(r: &Rat, s: &Rat) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(s.clone(), Cyclotomic::root_of_unity(r));
        PhaseScalar { terms }
    }

    pub fn i() -> Self {
        Self::from_cyclotomic(Cyclotomic::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            match terms.get_mut(s) {
                Some(existing) => {
                    let sum = existing.add(c);
                    if sum.is_zero() {
                        terms.remove(s);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(s.clone(), c.clone());
                }
            }
        }
        PhaseScalar { terms }
    }

    pub fn neg(&self) -> Self {
        PhaseScalar { terms: self.terms.iter().map(|(s, c)| (s.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Rat, Cyclotomic> = BTreeMap::new();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let s = s1 + s2;
                let c = c1.mul(c2);
                if c.is_zero() {
                    continue;
                }
                match terms.get_mut(&s) {
                    Some(existing) => {
                        let sum = existing.add(&c);
                        if sum.is_zero() {
                            terms.remove(&s);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        terms.insert(s, c);
                    }
                }
            }
        }
        PhaseScalar { terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PhaseScalar { terms: self.terms.iter().map(|(s, x)| (s.clone(), x.scale(c))).collect() }
    }

    /// c·e(r + s·θ) ↦ c̄·e(−r − s·θ).
    pub fn conjugate(&self) -> Self {
        PhaseScalar {
            terms: self.terms.iter().map(|(s, c)| (-s.clone(), c.conjugate())).collect(),
        }
    }

    /// Substitutes a rational value for θ, folding e(s·θ) into the
    /// root-of-unity part. Exact.
    pub fn specialize_theta(&self, theta: &Rat) -> Self {
        let mut acc = Cyclotomic::zero();
        for (s, c) in &self.terms {
            let r = frac_part(&(s * theta));
            acc = acc.add(&c.mul(&Cyclotomic::root_of_unity(&r)));
        }
        Self::from_cyclotomic(acc)
    }

    /// Numerical evaluation at a real θ.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, c) in &self.terms {
            let arg = std::f64::consts::TAU * s.to_f64().unwrap_or(f64::NAN) * theta;
            acc += c.eval() * Complex64::new(arg.cos(), arg.sin());
        }
        acc
    }

    /// Some(c) iff the phase is the constant rational c (no root of
    /// unity, no θ dependence).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some((s, c)) = self.terms.first_key_value() {
                if s.is_zero() {
                    return c.as_rational();
                }
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Cyclotomic)> {
        self.terms.iter()
    }
}

impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            for (i, (coeff, j, n)) in c.terms().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write_term(f, coeff, j, n, s)?;
            }
        }
        Ok(())
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &Rat,
    j: u64,
    n: u64,
    s: &Rat,
) -> fmt::Result {
    let r_zero = j == 0;
    let s_zero = s.is_zero();
    if r_zero && s_zero {
        return write!(f, "{coeff}");
    }
    if !coeff.is_one() {
        write!(f, "{coeff}*")?;
    }
    match (r_zero, s_zero) {
        (false, true) => write!(f, "e({j}/{n})"),
        (true, false) => write!(f, "e({s}*t)"),
        _ => write!(f, "e({j}/{n} + {s}*t)"),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    #[test]
    fn exponents_add() {
        // e(1/4 + θ/2) · e(1/4 − θ/2) = e(1/2) = −1
        let a = PhaseScalar::e_affine(&rat(1, 4), &rat(1, 2));
        let b = PhaseScalar::e_affine(&rat(1, 4), &rat(-1, 2));
        assert_eq!(a.mul(&b), PhaseScalar::from_rat(rat(-1, 1)));
    }

    #[test]
    fn conjugate_of_quarter() {
        // conj(e(1/4)) = e(3/4) = −i
        let a = PhaseScalar::e_rational(&rat(1, 4));
        assert_eq!(a.conjugate(), PhaseScalar::i().neg());
    }

    #[test]
    fn cyclotomic_collapse() {
        // (1 + e(1/3)) · (1 + e(2/3)) = 1
        let a = PhaseScalar::one().add(&PhaseScalar::e_rational(&rat(1, 3)));
        let b = PhaseScalar::one().add(&PhaseScalar::e_rational(&rat(2, 3)));
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn zero_detection() {
        let a = PhaseScalar::one()
            .add(&PhaseScalar::e_rational(&rat(1, 3)))
            .add(&PhaseScalar::e_rational(&rat(2, 3)));
        assert!(a.is_zero());
        assert!(!PhaseScalar::one().add(&PhaseScalar::e_rational(&rat(1, 5))).is_zero());
        let b = PhaseScalar::e_theta(&rat(1, 2));
        assert!(b.sub(&b).is_zero());
    }

    #[test]
    fn eval_examples() {
        // e(θ/2) at θ = 1/2 is i; at θ = 1 it is −1
        let a = PhaseScalar::e_theta(&rat(1, 2));
        let v = a.eval(0.5);
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let v = a.eval(1.0);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // e((2+θ)/6) at θ = 1 is e(1/2) = −1
        let phi2 = PhaseScalar::e_affine(&rat(2, 6), &rat(1, 6));
        let v = phi2.eval(1.0);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exact_specialization_matches_eval() {
        let phi2 = PhaseScalar::e_affine(&rat(2, 6), &rat(1, 6));
        let s = phi2.specialize_theta(&rat_int(1));
        assert_eq!(s, PhaseScalar::from_rat(rat(-1, 1)));
    }
}
