//! Elements of cyclotomic fields `Q(ζ_n)` with exact rational
//! coefficients, kept in the canonical power-basis form obtained by
//! reducing modulo the n-th cyclotomic polynomial. Zero-testing is
//! therefore a structural check, with no numerical tolerance involved.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{frac_part, Rat};

/// Σ c_j ζ_n^j, reduced modulo Φ_n. The exponents stored are always
/// `< φ(n)`, so the representation is unique for a fixed conductor.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, Rat>,
}

fn cyclotomic_poly(n: u64) -> std::sync::Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, std::sync::Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the product of Φ_d over proper divisors d | n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    let arc = std::sync::Arc::new(num);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials (remainder known to be zero).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Remainder of a dense rational polynomial modulo the monic Φ_n.
fn reduce_mod_cyclotomic(mut poly: Vec<Rat>, n: u64) -> BTreeMap<u64, Rat> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut k = poly.len();
    while k > deg {
        k -= 1;
        let c = std::mem::replace(&mut poly[k], Rat::zero());
        if !c.is_zero() {
            for (i, pc) in phi.iter().take(deg).enumerate() {
                if !pc.is_zero() {
                    let delta = &c * Rat::from(pc.clone());
                    poly[k - deg + i] -= delta;
                }
            }
        }
    }
    poly.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as u64, c))
        .collect()
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    /// e(r) = exp(2πi r) for rational `r`, as the root of unity ζ_q^p.
    pub fn root_of_unity(r: &Rat) -> Self {
        let f = frac_part(r);
        let q = f.denom().to_u64().expect("conductor fits in u64");
        let p = f.numer().to_u64().expect("exponent fits in u64");
        let mut dense = vec![Rat::zero(); p as usize + 1];
        dense[p as usize] = Rat::one();
        Cyclotomic { conductor: q, coeffs: reduce_mod_cyclotomic(dense, q) }
    }

    /// The imaginary unit, e(1/4).
    pub fn i() -> Self {
        Self::root_of_unity(&super::rat(1, 4))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(c) iff the element is the rational number c.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn promoted(&self, conductor: u64) -> BTreeMap<u64, Rat> {
        debug_assert_eq!(conductor % self.conductor, 0);
        let factor = conductor / self.conductor;
        if factor == 1 {
            return self.coeffs.clone();
        }
        let mut dense = vec![Rat::zero(); conductor as usize];
        for (j, c) in &self.coeffs {
            dense[(j * factor) as usize] = c.clone();
        }
        reduce_mod_cyclotomic(dense, conductor)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = lcm(self.conductor, other.conductor);
        let mut a = self.promoted(n);
        for (j, c) in other.promoted(n) {
            let entry = a.entry(j).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                a.remove(&j);
            }
        }
        Cyclotomic { conductor: n, coeffs: a }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = lcm(self.conductor, other.conductor);
        let a = self.promoted(n);
        let b = other.promoted(n);
        let mut dense = vec![Rat::zero(); 2 * n as usize];
        for (j, cj) in &a {
            for (k, ck) in &b {
                let e = ((j + k) % n) as usize;
                dense[e] += cj * ck;
            }
        }
        Cyclotomic { conductor: n, coeffs: reduce_mod_cyclotomic(dense, n) }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(j, x)| (*j, x * c)).collect(),
        }
    }

    /// Complex conjugation, ζ_n^j ↦ ζ_n^{n-j}.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        let mut dense = vec![Rat::zero(); n as usize];
        for (j, c) in &self.coeffs {
            dense[((n - j) % n) as usize] += c;
        }
        Cyclotomic { conductor: n, coeffs: reduce_mod_cyclotomic(dense, n) }
    }

    pub fn eval(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in &self.coeffs {
            let arg = std::f64::consts::TAU * (*j as f64) / n;
            acc += c.to_f64().unwrap_or(f64::NAN) * Complex64::new(arg.cos(), arg.sin());
        }
        acc
    }

    /// Terms (coefficient, exponent numerator j, conductor n) meaning c·e(j/n).
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, u64, u64)> {
        self.coeffs.iter().map(move |(j, c)| (c, *j, self.conductor))
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    a / x * b
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let n = lcm(self.conductor, other.conductor);
        self.promoted(n) == other.promoted(n)
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "e({j}/{})", self.conductor)?;
            } else {
                write!(f, "{c}*e({j}/{})", self.conductor)?;
            }
        }
        Ok(())
    }
}
