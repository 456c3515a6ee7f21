//! Semidirect products `Z^d ⋊ F` for the finite cyclic point groups:
//! the four planar rotation groups of orders 2, 3, 4, 6 and the flip
//! `n ↦ -n` in any dimension. Provides the group arithmetic, the
//! classification of torsion elements up to conjugacy (via Smith
//! normal form of `1 - N`) and the conjugacy classes of maximal
//! finite subgroups.

mod matrix;
mod snf;

pub use matrix::IntMat;
pub use snf::{smith_normal_form, SmithDecomposition};

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Search cap for element orders: the lcm of all orders occurring
/// here is 12, so nothing finite is missed below this bound.
pub const ORDER_CAP: u64 = 12;

/// A finite cyclic group acting on `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: u64,
    dim: usize,
    generator: IntMat,
    flip: bool,
}

impl FiniteGroup {
    /// The planar rotation group of order k ∈ {2, 3, 4, 6}.
    pub fn cyclic(k: u64) -> Result<Self> {
        let generator = generator_matrix(k)?;
        Ok(FiniteGroup { order: k, dim: 2, generator, flip: false })
    }

    /// The flip `n ↦ -n` on `Z^d`.
    pub fn flip(dim: usize) -> Self {
        FiniteGroup { order: 2, dim, generator: IntMat::scalar(dim, -1), flip: true }
    }

    pub fn all_planar() -> Vec<Self> {
        [2, 3, 4, 6].iter().map(|&k| Self::cyclic(k).unwrap()).collect()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_flip(&self) -> bool {
        self.flip
    }

    pub fn generator(&self) -> &IntMat {
        &self.generator
    }

    /// generator^p, reduced mod the group order.
    pub fn power(&self, p: u64) -> IntMat {
        self.generator.pow(p % self.order)
    }

    /// Exponent c with generator^c == m, if m lies in the group.
    pub fn power_index(&self, m: &IntMat) -> Option<u64> {
        (0..self.order).find(|&c| self.power(c) == *m)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { trans: vec![0; self.dim], point: IntMat::identity(self.dim) }
    }

    pub fn label(&self) -> String {
        if self.flip {
            format!("flip{}", self.dim)
        } else {
            format!("Z{}", self.order)
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The generator matrices of the four planar rotation groups.
pub fn generator_matrix(k: u64) -> Result<IntMat> {
    let m = match k {
        2 => IntMat::from_rows(&[&[-1, 0], &[0, -1]]),
        3 => IntMat::from_rows(&[&[-1, -1], &[1, 0]]),
        4 => IntMat::from_rows(&[&[0, -1], &[1, 0]]),
        6 => IntMat::from_rows(&[&[0, -1], &[1, 1]]),
        other => return Err(Error::UnsupportedOrder(other)),
    };
    debug_assert_eq!(m.order(ORDER_CAP), Some(k));
    debug_assert_eq!(m.det(), 1);
    Ok(m)
}

/// An element (m, N) of `Z^d ⋊ F` with the product
/// (m, N)·(m', N') = (m + N m', N N').
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub trans: Vec<i64>,
    pub point: IntMat,
}

impl GroupElement {
    pub fn new(trans: Vec<i64>, point: IntMat) -> Self {
        assert_eq!(trans.len(), point.dim());
        GroupElement { trans, point }
    }

    pub fn translation(trans: Vec<i64>) -> Self {
        let d = trans.len();
        GroupElement { trans, point: IntMat::identity(d) }
    }

    pub fn dim(&self) -> usize {
        self.trans.len()
    }

    pub fn is_identity(&self) -> bool {
        self.trans.iter().all(|&x| x == 0) && self.point.is_identity()
    }
}

pub fn group_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch(g.dim(), h.dim()));
    }
    let nm = g.point.mul_vec(&h.trans)?;
    let trans = g.trans.iter().zip(&nm).map(|(a, b)| a + b).collect();
    Ok(GroupElement { trans, point: g.point.mul(&h.point) })
}

/// (m, N)^{-1} = (-N^{-1} m, N^{-1}); N^{-1} = N^{k-1} for finite N.
pub fn group_inv(g: &GroupElement) -> GroupElement {
    let k = g.point.order(ORDER_CAP).expect("point part has finite order");
    let ninv = g.point.pow(k - 1);
    let m = ninv.mul_vec(&g.trans).unwrap();
    GroupElement { trans: m.iter().map(|x| -x).collect(), point: ninv }
}

/// Least j ≥ 1 with g^j = 1, or None for infinite order. The search
/// is capped at [`ORDER_CAP`]; with the groups supported here every
/// finite order divides 12, so the cap loses nothing.
pub fn element_order(g: &GroupElement) -> Option<u64> {
    if g.point.is_identity() {
        return if g.trans.iter().all(|&x| x == 0) { Some(1) } else { None };
    }
    let mut acc = g.clone();
    for j in 1..=ORDER_CAP {
        if acc.is_identity() {
            return Some(j);
        }
        acc = group_mul(&acc, g).unwrap();
    }
    None
}

/// A conjugacy class of torsion elements with fixed point part `N`:
/// (m, N) ~ (m', N) under translations iff m - m' ∈ (1-N)Z^d. The
/// stored representative has the canonical (first-in-search-order)
/// translation part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionClass {
    /// Canonical representative (m, N).
    pub rep: GroupElement,
    /// Exponent of the group generator giving N.
    pub point_power: u64,
    /// Residue coordinates of m in Z^d/(1-N)Z^d, each in [0, d_i).
    pub residue: Vec<i64>,
    /// Order of (m, N) in the group.
    pub order: u64,
}

impl TorsionClass {
    /// Human-readable name like "u t^2" or "u v t".
    pub fn label(&self) -> String {
        element_label(&self.rep, self.point_power)
    }
}

fn element_label(g: &GroupElement, point_power: u64) -> String {
    let names = ["u", "v", "w", "x4", "x5", "x6", "x7", "x8"];
    let mut parts = Vec::new();
    for (i, &c) in g.trans.iter().enumerate() {
        if c == 1 {
            parts.push(names[i].to_string());
        } else if c != 0 {
            parts.push(format!("{}^{}", names[i], c));
        }
    }
    if point_power == 1 {
        parts.push("t".to_string());
    } else if point_power > 1 {
        parts.push(format!("t^{point_power}"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Residue map for a fixed point part: m ↦ (U m) mod diag(D), one
/// coordinate per elementary divisor.
struct ResidueMap {
    u: IntMat,
    diag: Vec<i64>,
}

impl ResidueMap {
    fn new(point: &IntMat) -> Self {
        let m = IntMat::identity(point.dim()).sub(point);
        let s = smith_normal_form(&m);
        let diag = (0..m.dim()).map(|i| s.d[(i, i)]).collect();
        ResidueMap { u: s.u, diag }
    }

    fn residue(&self, m: &[i64]) -> Vec<i64> {
        let um = self.u.mul_vec(m).unwrap();
        um.iter()
            .zip(&self.diag)
            .map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d) })
            .collect()
    }

    fn class_count(&self) -> u64 {
        self.diag.iter().map(|&d| d.unsigned_abs()).product()
    }
}

/// Deterministic enumeration of candidate representatives: by L1
/// norm, preferring fewer negative coordinates, then reverse
/// lexicographic (so (1,0) precedes (0,1)).
fn candidates(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut all = Vec::new();
    let mut cur = vec![0i64; dim];
    fn rec(dim: usize, radius: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == dim {
            out.push(cur.clone());
            return;
        }
        for v in -radius..=radius {
            cur[i] = v;
            rec(dim, radius, i + 1, cur, out);
        }
    }
    rec(dim, radius, 0, &mut cur, &mut all);
    all.sort_by_key(|m| {
        let l1: i64 = m.iter().map(|x| x.abs()).sum();
        let negs = m.iter().filter(|&&x| x < 0).count();
        let revlex: Vec<i64> = m.iter().map(|&x| -x).collect();
        (l1, negs, revlex)
    });
    all
}

/// All torsion classes of `Z^d ⋊ F` under translation conjugacy, for
/// every non-identity power of the generator. For each point part N
/// there are exactly |det(1-N)| classes.
pub fn torsion_classes(group: &FiniteGroup) -> Vec<TorsionClass> {
    let mut out = Vec::new();
    for p in 1..group.order() {
        let point = group.power(p);
        let rmap = ResidueMap::new(&point);
        let expected = rmap.class_count();
        assert!(expected > 0, "1 - N must be nonsingular for torsion point parts");
        let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut classes = Vec::new();
        let mut radius = 0i64;
        while classes.len() < expected as usize {
            for m in candidates(group.dim(), radius) {
                if m.iter().map(|x| x.abs()).max().unwrap_or(0) != radius {
                    continue; // only the new shell
                }
                let r = rmap.residue(&m);
                if seen.contains_key(&r) {
                    continue;
                }
                seen.insert(r.clone(), ());
                let rep = GroupElement::new(m.clone(), point.clone());
                let order = element_order(&rep).expect("torsion element has finite order");
                classes.push(TorsionClass { rep, point_power: p, residue: r, order });
            }
            radius += 1;
        }
        out.extend(classes);
    }
    out
}

/// A conjugacy class of finite cyclic subgroups ⟨(m, N)⟩, described by
/// its generator class and the classes of all non-identity powers.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub generator: TorsionClass,
    pub order: u64,
    /// Classes of the non-identity powers of the generator (full
    /// conjugacy, i.e. up to the point-group action on residues).
    pub power_classes: Vec<TorsionClass>,
    pub maximal: bool,
}

/// Key identifying a torsion class up to full conjugacy in the group:
/// point power plus the orbit of its residue under F.
type FullClassKey = (u64, Vec<i64>);

struct FullClassifier<'a> {
    group: &'a FiniteGroup,
    maps: BTreeMap<u64, ResidueMap>,
}

impl<'a> FullClassifier<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        let maps = (1..group.order())
            .map(|p| (p, ResidueMap::new(&group.power(p))))
            .collect();
        FullClassifier { group, maps }
    }

    /// Canonical key of the full conjugacy class of (m, gen^p):
    /// the minimum residue over the orbit m ↦ P^j m.
    fn key(&self, m: &[i64], p: u64) -> FullClassKey {
        let rmap = &self.maps[&p];
        let mut best: Option<Vec<i64>> = None;
        let mut v = m.to_vec();
        for _ in 0..self.group.order() {
            let r = rmap.residue(&v);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
            v = self.group.generator().mul_vec(&v).unwrap();
        }
        (p, best.unwrap())
    }
}

/// Conjugacy classes of maximal finite subgroups of `Z^d ⋊ F`,
/// sorted by descending order, then by the search order of their
/// generator representatives.
pub fn maximal_finite_subgroups(group: &FiniteGroup) -> Vec<SubgroupClass> {
    let classifier = FullClassifier::new(group);
    let torsion = torsion_classes(group);

    // Representative torsion class per full-conjugacy key (first in
    // enumeration order wins, keeping natural labels).
    let mut full_reps: Vec<(FullClassKey, TorsionClass)> = Vec::new();
    for tc in &torsion {
        let key = classifier.key(&tc.rep.trans, tc.point_power);
        if !full_reps.iter().any(|(k, _)| *k == key) {
            full_reps.push((key, tc.clone()));
        }
    }
    let find_full = |g: &GroupElement| -> TorsionClass {
        let p = group
            .power_index(&g.point)
            .expect("point part lies in the group");
        let key = classifier.key(&g.trans, p);
        full_reps
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, tc)| tc.clone())
            .expect("every torsion element belongs to a classified class")
    };

    // Build the cyclic subgroup generated by each full class.
    struct Candidate {
        generator: TorsionClass,
        order: u64,
        power_keys: Vec<FullClassKey>,
        power_classes: Vec<TorsionClass>,
        generator_keys: Vec<FullClassKey>,
    }
    let mut candidates_list: Vec<Candidate> = Vec::new();
    for (_, tc) in &full_reps {
        let order = tc.order;
        let mut power_keys = Vec::new();
        let mut power_classes = Vec::new();
        let mut generator_keys = Vec::new();
        let mut acc = tc.rep.clone();
        for j in 1..order {
            let full = find_full(&acc);
            let key = classifier.key(&full.rep.trans, full.point_power);
            if !power_keys.contains(&key) {
                power_keys.push(key.clone());
                power_classes.push(full);
            }
            if gcd(j, order) == 1 && !generator_keys.contains(&key) {
                generator_keys.push(key);
            }
            acc = group_mul(&acc, &tc.rep).unwrap();
        }
        power_keys.sort();
        generator_keys.sort();
        candidates_list.push(Candidate {
            generator: tc.clone(),
            order,
            power_keys,
            power_classes,
            generator_keys,
        });
    }

    // Deduplicate subgroups generated by different powers of the same
    // cyclic group: same order and same generator-class set.
    let mut unique: Vec<Candidate> = Vec::new();
    for c in candidates_list {
        if !unique
            .iter()
            .any(|o| o.order == c.order && o.generator_keys == c.generator_keys)
        {
            unique.push(c);
        }
    }

    // Maximality: ⟨a⟩ embeds in ⟨b⟩ (up to conjugacy) iff the class of
    // a appears among the power classes of b.
    let keep: Vec<bool> = unique
        .iter()
        .map(|c| {
            let gen_key = classifier.key(&c.generator.rep.trans, c.generator.point_power);
            !unique.iter().any(|other| {
                other.order > c.order && other.power_keys.contains(&gen_key)
            })
        })
        .collect();

    let mut out: Vec<SubgroupClass> = unique
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| SubgroupClass {
            generator: c.generator,
            order: c.order,
            power_classes: c.power_classes,
            maximal: true,
        })
        .collect();
    out.sort_by(|a, b| {
        b.order
            .cmp(&a.order)
            .then_with(|| a.generator.point_power.cmp(&b.generator.point_power))
            .then_with(|| rep_key(&a.generator.rep).cmp(&rep_key(&b.generator.rep)))
    });
    out
}

/// Enumeration key of a representative translation part, matching the
/// candidate search order (L1 norm, negatives, reverse lexicographic).
fn rep_key(g: &GroupElement) -> (i64, usize, Vec<i64>) {
    let l1 = g.trans.iter().map(|x| x.abs()).sum();
    let negs = g.trans.iter().filter(|&&x| x < 0).count();
    let revlex = g.trans.iter().map(|&x| -x).collect();
    (l1, negs, revlex)
}

/// Checks that the listed maximal classes exhaust the torsion: every
/// full conjugacy class of torsion elements must occur among the
/// power classes of at least one maximal subgroup class.
pub fn verify_subgroup_completeness(group: &FiniteGroup) -> Result<()> {
    let classifier = FullClassifier::new(group);
    let maximal = maximal_finite_subgroups(group);
    let covered: Vec<FullClassKey> = maximal
        .iter()
        .flat_map(|s| {
            s.power_classes
                .iter()
                .map(|tc| classifier.key(&tc.rep.trans, tc.point_power))
        })
        .collect();
    for tc in torsion_classes(group) {
        let key = classifier.key(&tc.rep.trans, tc.point_power);
        if !covered.contains(&key) {
            return Err(Error::Invalid(format!(
                "torsion class {} not covered by any maximal subgroup",
                tc.label()
            )));
        }
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_matrices_exact() {
        assert_eq!(
            generator_matrix(2).unwrap(),
            IntMat::from_rows(&[&[-1, 0], &[0, -1]])
        );
        assert_eq!(
            generator_matrix(3).unwrap(),
            IntMat::from_rows(&[&[-1, -1], &[1, 0]])
        );
        assert_eq!(
            generator_matrix(4).unwrap(),
            IntMat::from_rows(&[&[0, -1], &[1, 0]])
        );
        assert_eq!(
            generator_matrix(6).unwrap(),
            IntMat::from_rows(&[&[0, -1], &[1, 1]])
        );
        assert!(matches!(generator_matrix(5), Err(Error::UnsupportedOrder(5))));
    }

    #[test]
    fn product_examples() {
        let u = GroupElement::translation(vec![1, 0]);
        let v = GroupElement::translation(vec![0, 1]);
        assert_eq!(group_mul(&u, &v).unwrap(), GroupElement::translation(vec![1, 1]));
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let t = GroupElement::new(vec![0, 0], z4.generator().clone());
        // (0, t)·((1,0), 1) = ((0,1), t)
        assert_eq!(
            group_mul(&t, &u).unwrap(),
            GroupElement::new(vec![0, 1], z4.generator().clone())
        );
        let wrong_dim = GroupElement::translation(vec![1, 0, 0]);
        assert!(group_mul(&u, &wrong_dim).is_err());
    }

    #[test]
    fn torsion_class_labels() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let labels: Vec<String> = torsion_classes(&z2).iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec!["t", "u t", "v t", "u v t"]);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let order4: Vec<String> = torsion_classes(&z4)
            .iter()
            .filter(|c| c.point_power == 1)
            .map(|c| c.label())
            .collect();
        assert_eq!(order4, vec!["t", "u t"]);
    }

    #[test]
    fn maximal_subgroup_generator_labels() {
        let expect: [(u64, &[&str]); 4] = [
            (2, &["t", "u t", "v t", "u v t"]),
            (3, &["t", "u t", "v t"]),
            (4, &["t", "u t", "u t^2"]),
            (6, &["t", "u t^2", "u t^3"]),
        ];
        for (k, labels) in expect {
            let g = FiniteGroup::cyclic(k).unwrap();
            let got: Vec<String> = maximal_finite_subgroups(&g)
                .iter()
                .map(|s| s.generator.label())
                .collect();
            assert_eq!(got, labels, "generator labels for Z{k}");
        }
    }

    #[test]
    fn power_class_containment() {
        // the two order-2 classes under the order-4 classes for Z4:
        // ⟨t⟩ contains t², ⟨ut⟩ contains (ut)² = uvt²-class; the third
        // order-2 class (ut²) is contained in neither
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let subs = maximal_finite_subgroups(&z4);
        let order4_powers: Vec<String> = subs
            .iter()
            .filter(|s| s.order == 4)
            .flat_map(|s| s.power_classes.iter().map(|c| c.label()))
            .collect();
        assert!(order4_powers.contains(&"t^2".to_string()));
        assert!(order4_powers.iter().any(|l| l.contains("t^2") && l != "t^2"));
        let ut2 = subs.iter().find(|s| s.order == 2).unwrap();
        assert_eq!(ut2.generator.label(), "u t^2");
        assert!(!order4_powers.contains(&"u t^2".to_string()));
        assert!(verify_subgroup_completeness(&z4).is_ok());
    }
}
