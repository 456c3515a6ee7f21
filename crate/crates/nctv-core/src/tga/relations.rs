//! The generator relations of `A_θ ⋊ F`, the order-corrected unitary
//! lifts of the finite-subgroup generators, the projection bases built
//! from them, and the identification of the fiber at θ = 1 with the
//! untwisted group algebra.

use crate::coeff::{rat, rat_int, PhaseScalar, Rat};
use crate::grp::FiniteGroup;
use crate::Result;

use super::{AlgebraElement, CocycleSpec, TwistedAlgebra};

/// One verified identity: a name plus whether it holds phase-exactly.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub group: String,
    pub checks: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// e(s·θ) in the algebra's θ mode.
fn e_theta_in(alg: &TwistedAlgebra, s: Rat) -> PhaseScalar {
    match alg.cocycle().mode() {
        super::ThetaMode::Formal => PhaseScalar::e_theta(&s),
        super::ThetaMode::Rational(t) => PhaseScalar::e_rational(&(s * t)),
    }
}

/// α_t(u) and α_t(v) as right-hand sides of the defining relations
/// t x t⁻¹ = α_t(x), for the planar groups.
pub fn twisted_action_on_generators(alg: &TwistedAlgebra) -> (AlgebraElement, AlgebraElement) {
    let u = alg.u();
    let v = alg.v();
    let half = rat(-1, 2);
    match alg.group().order() {
        2 => (u.int_pow(-1), v.int_pow(-1)),
        3 => (
            // t u t⁻¹ = e(-θ/2) u⁻¹ v
            u.int_pow(-1)
                .convolve(&v)
                .unwrap()
                .scale(&e_theta_in(alg, half)),
            u.int_pow(-1),
        ),
        4 => (v.clone(), u.int_pow(-1)),
        6 => (
            v.clone(),
            // t v t⁻¹ = e(-θ/2) u⁻¹ v
            u.int_pow(-1)
                .convolve(&v)
                .unwrap()
                .scale(&e_theta_in(alg, half)),
        ),
        _ => unreachable!("planar groups have order 2, 3, 4 or 6"),
    }
}

/// Verifies every defining relation of the algebra for the given
/// group, phase-exactly: v u = e(θ) u v, t^k = 1, and the conjugation
/// relations t u t⁻¹, t v t⁻¹ (flip case: t u_j t⁻¹ = u_j⁻¹ for all j,
/// plus the lattice commutation u_k u_j = e(Θ_{jk}) u_j u_k).
pub fn check_generator_relations(alg: &TwistedAlgebra) -> RelationReport {
    let group = alg.group().clone();
    let mut checks = Vec::new();
    let t = alg.t();
    let t_inv = t.adjoint();
    let k = group.order();

    let tk = t.int_pow(k as i64);
    checks.push((format!("t^{k} = 1"), tk == alg.one()));

    if group.is_flip() || group.dim() != 2 {
        for j in 0..group.dim() {
            let uj = alg.lattice_gen(j);
            let lhs = t.convolve(&uj).unwrap().convolve(&t_inv).unwrap();
            checks.push((format!("t u{} t^-1 = u{}^-1", j + 1, j + 1), lhs == uj.int_pow(-1)));
        }
        for kk in 0..group.dim() {
            for j in 0..kk {
                let uk = alg.lattice_gen(kk);
                let uj = alg.lattice_gen(j);
                let lhs = uk.convolve(&uj).unwrap();
                // u_k u_j = ω(e_k, e_j) / ω(e_j, e_k) · u_j u_k
                let mut ek = vec![0; group.dim()];
                ek[kk] = 1;
                let mut ej = vec![0; group.dim()];
                ej[j] = 1;
                let ratio = alg
                    .cocycle()
                    .omega(&ek, &ej)
                    .mul(&alg.cocycle().omega(&ej, &ek).conjugate());
                let rhs = uj.convolve(&uk).unwrap().scale(&ratio);
                checks.push((format!("u{} u{} twist", kk + 1, j + 1), lhs == rhs));
            }
        }
    } else {
        let u = alg.u();
        let v = alg.v();
        let vu = v.convolve(&u).unwrap();
        let uv = u.convolve(&v).unwrap();
        let e_theta = e_theta_in(alg, rat_int(1));
        checks.push(("v u = e(theta) u v".into(), vu == uv.scale(&e_theta)));

        let (au, av) = twisted_action_on_generators(alg);
        let tut = t.convolve(&u).unwrap().convolve(&t_inv).unwrap();
        let tvt = t.convolve(&v).unwrap().convolve(&t_inv).unwrap();
        checks.push(("t u t^-1".into(), tut == au));
        checks.push(("t v t^-1".into(), tvt == av));
    }

    RelationReport { group: group.label(), checks }
}

/// The order-corrected unitary lifts: for each maximal-subgroup
/// generator of the planar groups, a unitary of exactly that order in
/// the twisted algebra, together with the group element it lands on
/// in the fiber at θ = 1 under the identification u ↦ -u, v ↦ -v.
#[derive(Clone, Debug)]
pub struct UnitaryFamily {
    pub name: String,
    pub element: AlgebraElement,
    pub order: u64,
    /// Image in the untwisted algebra: (a, b, c) for u^a v^b t^c.
    pub fiber_image: (i64, i64, u64),
}

/// e(r + s·θ) in the algebra's θ mode.
fn e_affine_in(alg: &TwistedAlgebra, r: Rat, s: Rat) -> PhaseScalar {
    match alg.cocycle().mode() {
        super::ThetaMode::Formal => PhaseScalar::e_affine(&r, &s),
        super::ThetaMode::Rational(t) => PhaseScalar::e_rational(&(r + s * t)),
    }
}

/// φ₁(θ) = -e(θ/2), φ₂(θ) = e((2+θ)/6), φ₃(θ) = i e(θ/4).
fn phi(alg: &TwistedAlgebra, n: u32) -> PhaseScalar {
    match n {
        1 => e_affine_in(alg, rat(0, 1), rat(1, 2)).neg(),
        2 => e_affine_in(alg, rat(2, 6), rat(1, 6)),
        3 => PhaseScalar::i().mul(&e_affine_in(alg, rat(0, 1), rat(1, 4))),
        _ => unreachable!(),
    }
}

/// ψ(θ) = e((2+4θ)/6): the phase making ψ u² t an order-three unitary
/// across the whole family. Constraints: (u²t)³ = e(-2θ)·1, so ψ³
/// must equal e(2θ), and ψ(1) = 1 keeps the fiber-1 image at u²t;
/// both pin ψ up to a cube root of unity.
fn psi(alg: &TwistedAlgebra) -> PhaseScalar {
    e_affine_in(alg, rat(2, 6), rat(4, 6))
}

pub fn corrected_unitaries(alg: &TwistedAlgebra) -> Vec<UnitaryFamily> {
    let t = alg.t();
    let u = alg.u();
    let v = alg.v();
    let minus = |x: &AlgebraElement| x.neg();
    let mk = |name: &str, el: AlgebraElement, order: u64, img: (i64, i64, u64)| UnitaryFamily {
        name: name.into(),
        element: el,
        order,
        fiber_image: img,
    };
    match alg.group().order() {
        2 => vec![
            mk("t", t.clone(), 2, (0, 0, 1)),
            mk("-u t", minus(&u.convolve(&t).unwrap()), 2, (1, 0, 1)),
            mk("-v t", minus(&v.convolve(&t).unwrap()), 2, (0, 1, 1)),
            mk(
                "phi1 u v t",
                u.convolve(&v)
                    .unwrap()
                    .convolve(&t)
                    .unwrap()
                    .scale(&phi(alg, 1)),
                2,
                (1, 1, 1),
            ),
        ],
        3 => vec![
            mk("t", t.clone(), 3, (0, 0, 1)),
            mk(
                "phi2 u t",
                u.convolve(&t).unwrap().scale(&phi(alg, 2)),
                3,
                (1, 0, 1),
            ),
            mk(
                "psi u^2 t",
                u.int_pow(2).convolve(&t).unwrap().scale(&psi(alg)),
                3,
                (2, 0, 1),
            ),
        ],
        4 => vec![
            mk("t", t.clone(), 4, (0, 0, 1)),
            mk(
                "phi3 u t",
                u.convolve(&t).unwrap().scale(&phi(alg, 3)),
                4,
                (1, 0, 1),
            ),
            mk(
                "-u t^2",
                minus(&u.convolve(&t.int_pow(2)).unwrap()),
                2,
                (1, 0, 2),
            ),
        ],
        6 => vec![
            mk("t", t.clone(), 6, (0, 0, 1)),
            mk(
                "phi2 u t^2",
                u.convolve(&t.int_pow(2)).unwrap().scale(&phi(alg, 2)),
                3,
                (1, 0, 2),
            ),
            mk(
                "-u t^3",
                minus(&u.convolve(&t.int_pow(3)).unwrap()),
                2,
                (1, 0, 3),
            ),
        ],
        _ => unreachable!(),
    }
}

/// The named projection basis of the algebra for each planar group:
/// spectral projections of the corrected unitaries, with exactly the
/// standard spectral weights. Every returned element
/// satisfies p = p* = p² as a formal-θ identity.
pub fn projection_family(alg: &TwistedAlgebra) -> Vec<(String, AlgebraElement)> {
    let t = alg.t();
    let u = alg.u();
    let v = alg.v();
    let one = alg.one();
    let half = rat(1, 2);
    let third = rat(1, 3);

    // (1/k) Σ_{l<k} (ζ^j w)^l for w of order k, ζ = e(1/k)
    let spectral = |w: &AlgebraElement, k: u64, j: u64| -> AlgebraElement {
        let zeta = PhaseScalar::e_rational(&rat(j as i64, k as i64));
        let zw = w.scale(&zeta);
        let mut acc = alg.zero();
        let mut pow = alg.one();
        for _ in 0..k {
            acc = acc.add(&pow);
            pow = pow.convolve(&zw).unwrap();
        }
        acc.scale_rat(&rat(1, k as i64))
    };

    match alg.group().order() {
        2 => {
            let uvt = u.convolve(&v).unwrap().convolve(&t).unwrap();
            vec![
                ("p".into(), one.add(&t).scale_rat(&half)),
                (
                    "q0".into(),
                    one.sub(&u.convolve(&t).unwrap()).scale_rat(&half),
                ),
                (
                    "q1".into(),
                    one.sub(&v.convolve(&t).unwrap()).scale_rat(&half),
                ),
                (
                    "r".into(),
                    one.sub(&uvt.scale(&e_affine_in(alg, rat(0, 1), rat(1, 2))))
                        .scale_rat(&half),
                ),
            ]
        }
        3 => {
            let ut = u.convolve(&t).unwrap().scale(&phi(alg, 2));
            let u2t = u.int_pow(2).convolve(&t).unwrap().scale(&psi(alg));
            vec![
                ("p0".into(), spectral(&t, 3, 0)),
                ("p1".into(), spectral(&t, 3, 1)),
                ("q0".into(), spectral(&ut, 3, 0)),
                ("q1".into(), spectral(&ut, 3, 1)),
                ("r0".into(), spectral(&u2t, 3, 0)),
                ("r1".into(), spectral(&u2t, 3, 1)),
            ]
        }
        4 => {
            // w = e(θ/4) u t; the quarter-phase weight patterns
            // (1, i, -1, -i) etc. are spectral projections of i·w.
            let w = u
                .convolve(&t)
                .unwrap()
                .scale(&e_affine_in(alg, rat(0, 1), rat(1, 4)));
            let iw = w.scale(&PhaseScalar::i());
            vec![
                ("p0".into(), spectral(&t, 4, 0)),
                ("p1".into(), spectral(&t, 4, 1)),
                ("p2".into(), spectral(&t, 4, 2)),
                ("q0".into(), spectral(&iw, 4, 0)),
                ("q1".into(), spectral(&iw, 4, 1)),
                ("q2".into(), spectral(&iw, 4, 2)),
                (
                    "r".into(),
                    one.sub(&u.convolve(&t.int_pow(2)).unwrap()).scale_rat(&half),
                ),
            ]
        }
        6 => {
            let ut2 = u.convolve(&t.int_pow(2)).unwrap().scale(&phi(alg, 2));
            let mut fam: Vec<(String, AlgebraElement)> = (0..5)
                .map(|j| (format!("p{j}"), spectral(&t, 6, j)))
                .collect();
            fam.push(("q0".into(), spectral(&ut2, 3, 0)));
            fam.push((
                "q1".into(),
                {
                    let z2 = PhaseScalar::e_rational(&rat(2, 6));
                    let w = ut2.scale(&z2);
                    let mut acc = alg.zero();
                    let mut pow = alg.one();
                    for _ in 0..3 {
                        acc = acc.add(&pow);
                        pow = pow.convolve(&w).unwrap();
                    }
                    acc.scale_rat(&third)
                },
            ));
            fam.push((
                "r".into(),
                one.sub(&u.convolve(&t.int_pow(3)).unwrap()).scale_rat(&half),
            ));
            fam
        }
        _ => unreachable!(),
    }
}

/// Expected trace of each named projection.
pub fn expected_traces(k: u64) -> Vec<(String, Rat)> {
    match k {
        2 => vec![
            ("p".into(), rat(1, 2)),
            ("q0".into(), rat(1, 2)),
            ("q1".into(), rat(1, 2)),
            ("r".into(), rat(1, 2)),
        ],
        3 => ["p0", "p1", "q0", "q1", "r0", "r1"]
            .iter()
            .map(|n| (n.to_string(), rat(1, 3)))
            .collect(),
        4 => {
            let mut v: Vec<(String, Rat)> = ["p0", "p1", "p2", "q0", "q1", "q2"]
                .iter()
                .map(|n| (n.to_string(), rat(1, 4)))
                .collect();
            v.push(("r".into(), rat(1, 2)));
            v
        }
        6 => {
            let mut v: Vec<(String, Rat)> = (0..5).map(|j| (format!("p{j}"), rat(1, 6))).collect();
            v.push(("q0".into(), rat(1, 3)));
            v.push(("q1".into(), rat(1, 3)));
            v.push(("r".into(), rat(1, 2)));
            v
        }
        _ => Vec::new(),
    }
}

/// Report of the fiber identifications at θ = 1 and θ = 0.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub group: String,
    pub checks: Vec<(String, bool)>,
}

impl FiberReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// The isomorphism from the fiber at θ = 1 onto the untwisted group
/// algebra, determined by u ↦ -u, v ↦ -v, t ↦ t. On the delta basis it
/// multiplies the coefficient at ((a, b), N) by (-1)^{ab + a + b}.
fn fiber_one_map(el: &AlgebraElement, target: &TwistedAlgebra) -> AlgebraElement {
    let spec1 = el.specialize_theta(&rat_int(1));
    let mut out = target.zero();
    for (g, c) in spec1.terms() {
        let a = g.trans[0];
        let b = g.trans[1];
        let sign = if (a * b + a + b).rem_euclid(2) == 0 { 1 } else { -1 };
        let term = target.delta(g.clone()).scale(&c.mul(&PhaseScalar::from_int(sign)));
        out = out.add(&term);
    }
    out
}

/// Identity-shaped map for the fiber at θ = 0.
fn fiber_zero_map(el: &AlgebraElement, target: &TwistedAlgebra) -> AlgebraElement {
    let spec0 = el.specialize_theta(&rat_int(0));
    let mut out = target.zero();
    for (g, c) in spec0.terms() {
        out = out.add(&target.delta(g.clone()).scale(c));
    }
    out
}

/// Verifies that evaluation at θ = 1 followed by u ↦ -u, v ↦ -v is a
/// *-isomorphism onto the untwisted algebra (checked on products of
/// generator words), that it sends the corrected unitaries to the
/// plain group elements they label, and that θ = 0 is the identity
/// fiber.
pub fn fiber_identification(k: u64) -> Result<FiberReport> {
    let alg = TwistedAlgebra::planar(k)?;
    let group = FiniteGroup::cyclic(k)?;
    let untwisted = TwistedAlgebra::new(group, CocycleSpec::untwisted(2))?;
    let mut checks = Vec::new();

    // Homomorphism property on a deterministic set of word pairs.
    let words: Vec<AlgebraElement> = vec![
        alg.u(),
        alg.v(),
        alg.t(),
        alg.monomial(1, 1, 1),
        alg.monomial(2, -1, 0),
        alg.monomial(-1, 0, 1),
        alg.u().add(&alg.v().scale(&PhaseScalar::e_theta(&rat(1, 2)))),
    ];
    for (i, x) in words.iter().enumerate() {
        for (j, y) in words.iter().enumerate() {
            let lhs = fiber_one_map(&x.convolve(y)?, &untwisted);
            let rhs = fiber_one_map(x, &untwisted).convolve(&fiber_one_map(y, &untwisted))?;
            checks.push((format!("theta=1 multiplicative on pair ({i},{j})"), lhs == rhs));
        }
    }
    // Star-preservation.
    for (i, x) in words.iter().enumerate() {
        let lhs = fiber_one_map(&x.adjoint(), &untwisted);
        let rhs = fiber_one_map(x, &untwisted).adjoint();
        checks.push((format!("theta=1 star-preserving on word {i}"), lhs == rhs));
    }

    // Each relation specializes to the untwisted relation.
    let t = alg.t();
    let (au, av) = twisted_action_on_generators(&alg);
    let pairs = [
        (t.convolve(&alg.u())?.convolve(&t.adjoint())?, au),
        (t.convolve(&alg.v())?.convolve(&t.adjoint())?, av),
    ];
    for (idx, (lhs, rhs)) in pairs.iter().enumerate() {
        let l1 = fiber_one_map(lhs, &untwisted);
        let r1 = fiber_one_map(rhs, &untwisted);
        checks.push((format!("theta=1 relation {idx}"), l1 == r1));
    }

    // Corrected unitaries land on the plain group elements.
    for fam in corrected_unitaries(&alg) {
        let image = fiber_one_map(&fam.element, &untwisted);
        let (a, b, c) = fam.fiber_image;
        let expected = untwisted.monomial(a, b, c);
        checks.push((format!("theta=1 image of {}", fam.name), image == expected));
    }

    // θ = 0: the identity map is an isomorphism onto the same algebra.
    for (i, x) in words.iter().enumerate() {
        for (j, y) in words.iter().enumerate() {
            let lhs = fiber_zero_map(&x.convolve(y)?, &untwisted);
            let rhs = fiber_zero_map(x, &untwisted).convolve(&fiber_zero_map(y, &untwisted))?;
            checks.push((format!("theta=0 multiplicative on pair ({i},{j})"), lhs == rhs));
        }
    }

    Ok(FiberReport { group: format!("Z{k}"), checks })
}
