//! Exact coefficient arithmetic: cyclotomic numbers and formal phases.
//!
//! The scalar ring used throughout the symbolic layers is spanned by
//! terms `c · e(r + s·θ)` with rational `c`, `r`, `s`, where
//! `e(x) = exp(2πi x)` and `θ` is a formal symbol. Equality of two
//! such scalars means equality for every value of `θ`, which is the
//! right notion for identities that hold along the whole family.

mod cyclotomic;
mod phase;

pub use cyclotomic::Cyclotomic;
pub use phase::PhaseScalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Shorthand for the exact fraction n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the exact integer n.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Reduces `r` modulo 1 into `[0, 1)`.
pub(crate) fn frac_part(r: &Rat) -> Rat {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

/// gcd of two nonnegative rationals `p/q`, `r/s`, computed as
/// `gcd(p·s, r·q) / (q·s)`; gcd(x, 0) = x.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = BigInt::from(gcd_biguint(
        (a.numer() * b.denom()).magnitude().clone(),
        (b.numer() * a.denom()).magnitude().clone(),
    ));
    Rat::new(num, a.denom() * b.denom())
}

fn gcd_biguint(mut a: num_bigint::BigUint, mut b: num_bigint::BigUint) -> num_bigint::BigUint {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_gcd() {
        assert_eq!(rat_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rat_gcd(&rat(1, 2), &rat(1, 2)), rat(1, 2));
        assert_eq!(rat_gcd(&rat(0, 1), &rat(1, 6)), rat(1, 6));
        assert_eq!(rat_gcd(&rat(2, 3), &rat(4, 3)), rat(2, 3));
        // mixed signs reduce to magnitudes
        assert_eq!(rat_gcd(&rat(-1, 2), &rat(1, 3)), rat(1, 6));
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(frac_part(&rat(5, 4)), rat(1, 4));
        assert_eq!(frac_part(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac_part(&rat(3, 1)), rat(0, 1));
    }
}
