//! The four verification suites. Every check is assembled in a fixed
//! order; randomized sampling uses a fixed-seed generator, so reports
//! are byte-identical across runs and thread counts.

use nctv_core::coeff::{rat, PhaseScalar};
use nctv_core::grp::{
    group_mul, maximal_finite_subgroups, verify_subgroup_completeness, FiniteGroup, GroupElement,
};
use nctv_core::ktheory::{
    highdim_k_ranks, iso_decide, k_ranks, rational_structure_rank, trace_image, AffineTheta,
    TraceSubgroup,
};
use nctv_core::tga::{
    check_generator_relations, corrected_unitaries, expected_traces, fiber_identification,
    projection_family, CocycleSpec, TwistedAlgebra,
};
use nctv_core::walters::{
    bimodule_residuals, crossed_associativity_residual, green_julg_identity_residual,
    hermiticity_residual, hexic_explicit_equivariance_residual, identity_action_residual,
    inner_equivariance_residual, inner_right, order_residual, relation_residuals,
    sample_gaussian, transform_w, Grid, KernelCache,
};

use crate::report::Check;
use crate::SuiteConfig;

/// Numeric tolerances, pinned once; `--tol` scales all of them.
pub struct Tolerances {
    pub order_residual: f64,
    pub squares: f64,
    pub covariance: f64,
    pub equivariance: f64,
    pub inner_norm: f64,
    pub imprimitivity: f64,
    pub green_julg: f64,
    pub unitarity: f64,
    pub hermiticity: f64,
}

impl Tolerances {
    pub fn scaled(scale: f64) -> Self {
        Tolerances {
            order_residual: 1e-4 * scale,
            squares: 1e-6 * scale,
            covariance: 1e-5 * scale,
            equivariance: 1e-5 * scale,
            inner_norm: 1e-8 * scale,
            imprimitivity: 1e-4 * scale,
            green_julg: 1e-5 * scale,
            unitarity: 1e-6 * scale,
            hermiticity: 1e-8 * scale,
        }
    }
}

/// Deterministic pseudo-random stream for the sampled identities.
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    fn next_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}

fn random_element(rng: &mut Lcg, group: &FiniteGroup) -> GroupElement {
    let a = rng.next_range(-8, 8);
    let b = rng.next_range(-8, 8);
    let p = rng.next_range(0, group.order() as i64 - 1) as u64;
    GroupElement::new(vec![a, b], group.power(p))
}

// ---------------------------------------------------------------- symbolic

pub fn symbolic(config: &SuiteConfig) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    for k in config.groups.orders() {
        let alg = TwistedAlgebra::planar(k).map_err(|e| e.to_string())?;
        let gname = format!("z{k}");

        // defining relations, formal θ
        let rep = check_generator_relations(&alg);
        for (name, ok) in &rep.checks {
            checks.push(Check::exact(
                format!("relations/{gname}/{}", slug(name)),
                format!("presentation/{gname}"),
                *ok,
            ));
        }

        // rational-θ spot checks: the relations, orders and
        // projections all specialize exactly
        for spec in &config.thetas {
            if let Some(th) = spec.as_rational() {
                let alg_rat = TwistedAlgebra::new(
                    FiniteGroup::cyclic(k).map_err(|e| e.to_string())?,
                    CocycleSpec::planar_rational(th),
                )
                .map_err(|e| e.to_string())?;
                let tslug = slug(&spec.label());
                let rep = check_generator_relations(&alg_rat);
                checks.push(Check::exact(
                    format!("relations/{gname}/rational-{tslug}"),
                    format!("presentation/{gname}"),
                    rep.all_pass(),
                ));
                let orders_ok = corrected_unitaries(&alg_rat).iter().all(|fam| {
                    matches!(fam.element.unitary_order(12), Ok(Some(o)) if o == fam.order)
                });
                checks.push(Check::exact(
                    format!("unitaries/{gname}/rational-{tslug}"),
                    format!("unitary-lifts/{gname}"),
                    orders_ok,
                ));
                let projections_ok = projection_family(&alg_rat)
                    .iter()
                    .zip(expected_traces(k))
                    .all(|((_, p), (_, etrace))| {
                        p.is_projection()
                            && p.trace() == PhaseScalar::from_rat(etrace)
                    });
                checks.push(Check::exact(
                    format!("projections/{gname}/rational-{tslug}"),
                    format!("projection-basis/{gname}"),
                    projections_ok,
                ));
            }
        }

        // corrected unitary orders
        for fam in corrected_unitaries(&alg) {
            let got = fam
                .element
                .unitary_order(12)
                .map_err(|e| e.to_string())?;
            checks.push(Check::exact_value(
                format!("unitaries/{gname}/{}-order", slug(&fam.name)),
                format!("unitary-lifts/{gname}"),
                format!("{got:?}"),
                format!("{:?}", Some(fam.order)),
            ));
        }

        // projection basis: p = p* = p², exact traces
        let fam = projection_family(&alg);
        for ((name, p), (ename, etrace)) in fam.iter().zip(expected_traces(k)) {
            debug_assert_eq!(*name, ename);
            checks.push(Check::exact(
                format!("projections/{gname}/{name}-idempotent-selfadjoint"),
                format!("projection-basis/{gname}"),
                p.is_projection(),
            ));
            checks.push(Check::exact_value(
                format!("projections/{gname}/{name}-trace"),
                format!("trace-table/{gname}"),
                p.trace().to_string(),
                PhaseScalar::from_rat(etrace).to_string(),
            ));
        }

        // spectral resolution of the point-group generator
        let spectral: Vec<_> = (0..k)
            .map(|j| {
                let zeta = PhaseScalar::e_rational(&rat(j as i64, k as i64));
                let zw = alg.t().scale(&zeta);
                let mut acc = alg.zero();
                let mut pow = alg.one();
                for _ in 0..k {
                    acc = acc.add(&pow);
                    pow = pow.convolve(&zw).unwrap();
                }
                acc.scale_rat(&rat(1, k as i64))
            })
            .collect();
        let mut sum = alg.zero();
        let mut orthogonal = true;
        for (i, p) in spectral.iter().enumerate() {
            sum = sum.add(p);
            for q in spectral.iter().skip(i + 1) {
                orthogonal &= p.convolve(q).unwrap().is_zero();
            }
        }
        checks.push(Check::exact(
            format!("projections/{gname}/spectral-family-resolves-identity"),
            format!("projection-basis/{gname}"),
            sum == alg.one() && orthogonal,
        ));

        // cocycle identity and invariance on 1000 seeded samples
        let spec = CocycleSpec::planar_formal();
        let group = FiniteGroup::cyclic(k).map_err(|e| e.to_string())?;
        let mut rng = Lcg(0x9e3779b97f4a7c15 ^ k);
        let mut cocycle_failures = 0u64;
        let mut invariance_failures = 0u64;
        for _ in 0..1000 {
            let g = random_element(&mut rng, &group);
            let h = random_element(&mut rng, &group);
            let l = random_element(&mut rng, &group);
            let hl = group_mul(&h, &l).map_err(|e| e.to_string())?;
            let gh = group_mul(&g, &h).map_err(|e| e.to_string())?;
            let lhs = spec.omega_ext(&h, &l).mul(&spec.omega_ext(&g, &hl));
            let rhs = spec.omega_ext(&g, &h).mul(&spec.omega_ext(&gh, &l));
            if lhs != rhs {
                cocycle_failures += 1;
            }
            let nx = g.point.mul_vec(&h.trans).map_err(|e| e.to_string())?;
            let ny = g.point.mul_vec(&l.trans).map_err(|e| e.to_string())?;
            if spec.omega(&nx, &ny) != spec.omega(&h.trans, &l.trans) {
                invariance_failures += 1;
            }
        }
        checks.push(Check::count(
            format!("cocycle/{gname}/identity-failures-of-1000"),
            "cocycle-laws".to_string(),
            cocycle_failures,
            0,
        ));
        checks.push(Check::count(
            format!("cocycle/{gname}/invariance-failures-of-1000"),
            "cocycle-laws".to_string(),
            invariance_failures,
            0,
        ));
    }

    // pairwise trace bound for the four order-two projection classes
    if config.groups.orders().contains(&2) {
        let alg = TwistedAlgebra::planar(2).map_err(|e| e.to_string())?;
        let fam = projection_family(&alg);
        let golden = 0.618_033_988_749_894_9_f64;
        let mut worst: f64 = 0.0;
        for (i, (_, p)) in fam.iter().enumerate() {
            for (_, q) in fam.iter().skip(i + 1) {
                let v = p.convolve(q).unwrap().trace().eval(golden).norm();
                worst = worst.max(v);
            }
        }
        checks.push(Check::residual(
            "projections/z2/pairwise-trace-bound",
            "projection-basis/z2",
            worst,
            0.5 + 1e-12,
        ));
    }

    Ok(checks)
}

/// The expected trace values in basis order: the unit, the named
/// projections, then the module class with trace θ/k.
fn expected_trace_vector(k: u64) -> String {
    match k {
        2 => "1, 1/2, 1/2, 1/2, 1/2, 1/2*t",
        3 => "1, 1/3, 1/3, 1/3, 1/3, 1/3, 1/3, 1/3*t",
        4 => "1, 1/4, 1/4, 1/4, 1/4, 1/4, 1/4, 1/2, 1/4*t",
        6 => "1, 1/6, 1/6, 1/6, 1/6, 1/6, 1/3, 1/3, 1/2, 1/6*t",
        _ => unreachable!(),
    }
    .to_string()
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
        .collect::<String>()
        .split('-')
        .filter(|p| !p.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}

// ---------------------------------------------------------------- ktheory

pub fn ktheory(config: &SuiteConfig) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let expected_ranks = [(2u64, 6u64), (3, 8), (4, 9), (6, 10)];
    let expected_orders: [(u64, &[u64]); 4] =
        [(2, &[2, 2, 2, 2]), (3, &[3, 3, 3]), (4, &[4, 4, 2]), (6, &[6, 3, 2])];

    for k in config.groups.orders() {
        let gname = format!("z{k}");
        let group = FiniteGroup::cyclic(k).map_err(|e| e.to_string())?;

        let (r0, r1) = k_ranks(&group).map_err(|e| e.to_string())?;
        let want = expected_ranks.iter().find(|(kk, _)| *kk == k).unwrap().1;
        checks.push(Check::count(
            format!("ktheory/{gname}/k0-rank"),
            format!("rank-table/{gname}"),
            r0,
            want,
        ));
        checks.push(Check::count(
            format!("ktheory/{gname}/k1-rank"),
            format!("rank-table/{gname}"),
            r1,
            0,
        ));

        let subs = maximal_finite_subgroups(&group);
        let orders: Vec<u64> = subs.iter().map(|s| s.order).collect();
        let want_orders = expected_orders.iter().find(|(kk, _)| *kk == k).unwrap().1;
        checks.push(Check::exact_value(
            format!("ktheory/{gname}/maximal-subgroup-orders"),
            format!("subgroup-census/{gname}"),
            format!("{orders:?}"),
            format!("{want_orders:?}"),
        ));
        checks.push(Check::exact(
            format!("ktheory/{gname}/maximal-subgroup-completeness"),
            format!("subgroup-census/{gname}"),
            verify_subgroup_completeness(&group).is_ok(),
        ));

        let img = trace_image(k).map_err(|e| e.to_string())?;
        let want_img = TraceSubgroup { a: rat(1, k as i64), b: rat(1, k as i64) };
        checks.push(Check::exact_value(
            format!("ktheory/{gname}/trace-image"),
            format!("trace-image/{gname}"),
            img.render(),
            want_img.render(),
        ));

        let summary = nctv_core::ktheory::k0_summary(k).map_err(|e| e.to_string())?;
        let rendered: Vec<String> =
            summary.trace_vector.iter().map(|v| v.render()).collect();
        let expected_vec = expected_trace_vector(k);
        checks.push(Check::exact_value(
            format!("ktheory/{gname}/trace-vector"),
            format!("trace-table/{gname}"),
            rendered.join(", "),
            expected_vec,
        ));
        checks.push(Check::count(
            format!("ktheory/{gname}/basis-length"),
            format!("rank-table/{gname}"),
            summary.basis_labels.len() as u64,
            want,
        ));
    }

    // isomorphism criterion over a 20-case table
    let th = |a: (i64, i64), b: (i64, i64)| AffineTheta::new(rat(a.0, a.1), rat(b.0, b.1));
    let cases: Vec<(u64, AffineTheta, u64, AffineTheta, bool)> = vec![
        (2, th((0, 1), (1, 1)), 2, th((1, 1), (-1, 1)), true), // θ̂ vs 1-θ̂
        (2, th((0, 1), (1, 1)), 3, th((0, 1), (1, 1)), false), // k differs
        (4, th((7, 1), (1, 1)), 4, th((0, 1), (1, 1)), true),  // shift by 7
        (2, th((0, 1), (1, 1)), 2, th((0, 1), (1, 1)), true),
        (3, th((0, 1), (1, 1)), 3, th((0, 1), (-1, 1)), true), // θ̂ vs -θ̂
        (3, th((1, 2), (1, 1)), 3, th((1, 2), (1, 1)), true),
        (3, th((1, 2), (1, 1)), 3, th((3, 2), (1, 1)), true),  // shift by 1
        (3, th((1, 2), (1, 1)), 3, th((0, 1), (1, 1)), false), // shift by 1/2
        (6, th((0, 1), (1, 2)), 6, th((1, 1), (-1, 2)), true), // θ̂/2 vs 1-θ̂/2
        (6, th((0, 1), (1, 2)), 6, th((0, 1), (1, 3)), false),
        (4, th((0, 1), (1, 1)), 6, th((0, 1), (1, 1)), false),
        (2, th((0, 1), (2, 1)), 2, th((1, 1), (-2, 1)), true),
        (2, th((0, 1), (2, 1)), 2, th((1, 2), (-2, 1)), false),
        (4, th((-3, 1), (1, 1)), 4, th((5, 1), (1, 1)), true),
        (4, th((-3, 1), (1, 1)), 4, th((11, 2), (-1, 1)), false), // sum -3 + 11/2 not an integer
        (6, th((1, 3), (1, 1)), 6, th((2, 3), (-1, 1)), true),  // 1/3+2/3 = 1 ∈ Z with b flip
        (6, th((1, 3), (1, 1)), 6, th((1, 3), (-1, 1)), false),
        (3, th((0, 1), (1, 1)), 3, th((0, 1), (2, 1)), false),  // 2θ̂ not ±θ̂ mod Z
        (2, th((5, 4), (1, 1)), 2, th((1, 4), (1, 1)), true),
        (2, th((5, 4), (1, 1)), 2, th((3, 4), (-1, 1)), true), // 5/4 + 3/4 = 2 ∈ Z with b flipped
    ];
    for (i, (k1, t1, k2, t2, want)) in cases.iter().enumerate() {
        let got = iso_decide(*k1, t1, *k2, t2).map_err(|e| e.to_string())?;
        checks.push(Check::exact_value(
            format!("ktheory/iso/case-{i:02}"),
            "iso-criterion".to_string(),
            format!("{got}"),
            format!("{want}"),
        ));
    }
    // rational θ rejection
    checks.push(Check::exact(
        "ktheory/iso/rational-theta-rejected",
        "iso-criterion",
        iso_decide(2, &th((0, 1), (1, 1)), 2, &AffineTheta::rational(rat(1, 3))).is_err(),
    ));

    // rational fiber structure
    let z6_blocks = vec![vec![1u64; 6], vec![2; 3], vec![3; 2]];
    checks.push(Check::count(
        "ktheory/rational-fiber/z6-rank",
        "rational-fiber/z6",
        rational_structure_rank(&z6_blocks).map_err(|e| e.to_string())?,
        10,
    ));
    let z2_blocks = vec![vec![1u64, 1]; 4];
    checks.push(Check::count(
        "ktheory/rational-fiber/z2-cross-check",
        "rational-fiber/z2",
        rational_structure_rank(&z2_blocks).map_err(|e| e.to_string())?,
        6,
    ));
    checks.push(Check::exact(
        "ktheory/rational-fiber/inconsistent-totals-rejected",
        "rational-fiber",
        rational_structure_rank(&[vec![1, 1], vec![3]]).is_err(),
    ));

    // higher-dimensional ranks, d = 1..6
    for d in 1..=6usize {
        let r = highdim_k_ranks(d).map_err(|e| e.to_string())?;
        let half = 1u64 << (d - 1);
        checks.push(Check::exact_value(
            format!("ktheory/highdim/d{d}-torus"),
            "highdim-ranks",
            format!("{:?}", r.torus),
            format!("{:?}", (half, half)),
        ));
        checks.push(Check::exact_value(
            format!("ktheory/highdim/d{d}-flip"),
            "highdim-ranks",
            format!("{:?}", r.flip_crossed),
            format!("{:?}", (3 * half, 0u64)),
        ));
        checks.push(Check::count(
            format!("ktheory/highdim/d{d}-involution-classes"),
            "highdim-ranks",
            r.involution_classes,
            1 << d,
        ));
        checks.push(Check::exact(
            format!("ktheory/highdim/d{d}-rank-decomposition"),
            "highdim-ranks",
            1 + (1u64 << d) + (half - 1) == 3 * half,
        ));
    }
    // d = 2 flip agrees with the planar order-2 crossed product
    let d2 = highdim_k_ranks(2).map_err(|e| e.to_string())?;
    let z2 = k_ranks(&FiniteGroup::cyclic(2).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    checks.push(Check::exact_value(
        "ktheory/highdim/d2-matches-planar-z2",
        "highdim-ranks",
        format!("{:?}", d2.flip_crossed),
        format!("{:?}", z2),
    ));

    Ok(checks)
}

// ---------------------------------------------------------------- walters

pub fn walters(config: &SuiteConfig) -> Result<Vec<Check>, String> {
    let thetas = config.numeric_thetas()?;
    let grid = Grid::new(config.grid_l, config.grid_n).map_err(|e| e.to_string())?;
    let tol = Tolerances::scaled(config.tol_scale);
    let cache = KernelCache::new();

    // one task per θ; groups handled inside to share per-θ vectors
    let tasks: Vec<(usize, f64)> = thetas.iter().copied().enumerate().collect();
    let results: Vec<Result<Vec<Check>, String>> = {
        use rayon::prelude::*;
        tasks
            .par_iter()
            .map(|(i, theta)| walters_at_theta(*i, *theta, &grid, &tol, &cache, config))
            .collect()
    };
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(checks)
}

fn walters_at_theta(
    idx: usize,
    theta: f64,
    grid: &Grid,
    tol: &Tolerances,
    cache: &KernelCache,
    config: &SuiteConfig,
) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let tname = format!("theta{idx}");
    let err = |e: nctv_core::Error| e.to_string();

    let xi = sample_gaussian(grid, theta, 0.0, 1.0).map_err(err)?;
    let eta = sample_gaussian(grid, theta, 0.4, 1.2).map_err(err)?;

    // ⟨ξ,ξ⟩_{0,0} = θ
    let v = inner_right(&xi, &xi, 0, 0).map_err(err)?;
    checks.push(Check::residual(
        format!("walters/{tname}/inner-norm"),
        "right-inner-product",
        (v - nctv_core::walters::Complex64::new(theta, 0.0)).norm(),
        tol.inner_norm,
    ));

    // hermiticity at a few indices
    let mut worst = 0f64;
    for (n, m) in [(0i64, 0i64), (1, 1), (2, -1)] {
        worst = worst.max(hermiticity_residual(&xi, &eta, n, m).map_err(err)?);
    }
    checks.push(Check::residual(
        format!("walters/{tname}/hermiticity"),
        "right-inner-product",
        worst,
        tol.hermiticity,
    ));

    for k in config.groups.orders() {
        let gname = format!("z{k}");
        let group = FiniteGroup::cyclic(k).map_err(err)?;

        // order, unitarity
        let r = order_residual(&group, &xi, cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/order-residual"),
            format!("transform-order/{gname}"),
            r,
            tol.order_residual,
        ));
        let w = transform_w(&group, &xi, false, cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/unitarity"),
            format!("transform-order/{gname}"),
            (w.norm() - xi.norm()).abs(),
            tol.unitarity,
        ));

        // covariance in both generators (equivariance index (1,1) rides along)
        let rr = relation_residuals(&group, &xi, &eta, 1, 1, cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/covariance-u"),
            format!("module-covariance/{gname}"),
            rr.covariance_u,
            tol.covariance,
        ));
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/covariance-v"),
            format!("module-covariance/{gname}"),
            rr.covariance_v,
            tol.covariance,
        ));

        // inner-product equivariance for |k|,|l| <= 2
        let mut worst_generic = 0f64;
        for kk in -2i64..=2 {
            for ll in -2i64..=2 {
                let r = inner_equivariance_residual(&group, &xi, &eta, kk, ll, cache)
                    .map_err(err)?;
                worst_generic = worst_generic.max(r);
            }
        }
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/equivariance-window2"),
            format!("inner-equivariance/{gname}"),
            worst_generic,
            tol.equivariance,
        ));

        // order six also has the explicit phase form
        if k == 6 {
            let mut worst_explicit = 0f64;
            for kk in -2i64..=2 {
                for ll in -2i64..=2 {
                    let r = hexic_explicit_equivariance_residual(&xi, &eta, kk, ll, cache)
                        .map_err(err)?;
                    worst_explicit = worst_explicit.max(r);
                }
            }
            checks.push(Check::residual(
                format!("walters/{gname}/{tname}/equivariance-explicit-phase"),
                "inner-equivariance/z6".to_string(),
                worst_explicit,
                tol.equivariance,
            ));
        }

        // crossed-product action: identity exactness and associativity
        let alg = nctv_core::tga::TwistedAlgebra::new(
            group.clone(),
            nctv_core::tga::CocycleSpec::planar_formal(),
        )
        .map_err(err)?;
        let assoc =
            crossed_associativity_residual(&group, &xi, &alg.t(), &alg.u(), cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/associativity-t-u"),
            format!("crossed-action/{gname}"),
            assoc,
            tol.green_julg,
        ));
        let id_res = identity_action_residual(&group, &xi, cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/identity-action"),
            format!("crossed-action/{gname}"),
            id_res,
            1e-15_f64.max(tol.green_julg * 1e-6),
        ));
        let gj_id = green_julg_identity_residual(&group, &xi, cache).map_err(err)?;
        checks.push(Check::residual(
            format!("walters/{gname}/{tname}/associativity-identity"),
            format!("crossed-action/{gname}"),
            gj_id,
            1e-15_f64.max(tol.green_julg * 1e-6),
        ));
    }

    // squares: order 3 = (order 6)², order 2 = (order 4)²
    let z6 = FiniteGroup::cyclic(6).map_err(err)?;
    let z4 = FiniteGroup::cyclic(4).map_err(err)?;
    let z3 = FiniteGroup::cyclic(3).map_err(err)?;
    let z2 = FiniteGroup::cyclic(2).map_err(err)?;
    let w6 = transform_w(&z6, &xi, false, cache).map_err(err)?;
    let w66 = transform_w(&z6, &w6, false, cache).map_err(err)?;
    let w3 = transform_w(&z3, &xi, false, cache).map_err(err)?;
    checks.push(Check::residual(
        format!("walters/squares/{tname}/cubic-is-hexic-squared"),
        "transform-squares",
        w66.distance(&w3).map_err(err)?,
        tol.squares,
    ));
    let w4 = transform_w(&z4, &xi, false, cache).map_err(err)?;
    let w44 = transform_w(&z4, &w4, false, cache).map_err(err)?;
    let w2 = transform_w(&z2, &xi, false, cache).map_err(err)?;
    checks.push(Check::residual(
        format!("walters/squares/{tname}/quadratic-is-quartic-squared"),
        "transform-squares",
        w44.distance(&w2).map_err(err)?,
        tol.squares,
    ));
    let w6i = transform_w(&z6, &w6, true, cache).map_err(err)?;
    checks.push(Check::residual(
        format!("walters/squares/{tname}/hexic-inverse-roundtrip"),
        "transform-inverse",
        w6i.distance(&xi).map_err(err)?,
        tol.squares,
    ));

    // imprimitivity and associativity with narrower vectors (window
    // tail must clear the tolerance, see width discussion in README)
    let nxi = sample_gaussian(grid, theta, 0.0, 0.8).map_err(err)?;
    let neta = sample_gaussian(grid, theta, 0.2, 0.8).map_err(err)?;
    let nzeta = sample_gaussian(grid, theta, -0.15, 0.8).map_err(err)?;
    let br = bimodule_residuals(&z6, &nxi, &neta, &nzeta, 6, cache).map_err(err)?;
    checks.push(Check::residual(
        format!("walters/bimodule/{tname}/imprimitivity-window6"),
        "imprimitivity",
        br.imprimitivity,
        tol.imprimitivity,
    ));
    // largest coefficient on the truncation boundary, reported as an
    // upper-bound estimate of what the window cuts off
    checks.push(Check::residual(
        format!("walters/bimodule/{tname}/truncation-tail"),
        "imprimitivity",
        br.truncation_tail,
        tol.imprimitivity * 10.0,
    ));
    checks.push(Check::residual(
        format!("walters/bimodule/{tname}/green-julg"),
        "crossed-action/z6",
        br.green_julg,
        tol.green_julg,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------- fiber

pub fn fiber(config: &SuiteConfig) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    for k in config.groups.orders() {
        let gname = format!("z{k}");
        let rep = fiber_identification(k).map_err(|e| e.to_string())?;
        // aggregate the homomorphism grids; report images individually
        let mut mult_fail = 0u64;
        let mut star_fail = 0u64;
        let mut zero_fail = 0u64;
        for (name, ok) in &rep.checks {
            if name.starts_with("theta=1 multiplicative") {
                if !ok {
                    mult_fail += 1;
                }
            } else if name.starts_with("theta=1 star") {
                if !ok {
                    star_fail += 1;
                }
            } else if name.starts_with("theta=0") {
                if !ok {
                    zero_fail += 1;
                }
            } else {
                checks.push(Check::exact(
                    format!("fiber/{gname}/{}", slug(name)),
                    format!("fiber-identification/{gname}"),
                    *ok,
                ));
            }
        }
        checks.push(Check::count(
            format!("fiber/{gname}/theta1-homomorphism-failures"),
            format!("fiber-identification/{gname}"),
            mult_fail,
            0,
        ));
        checks.push(Check::count(
            format!("fiber/{gname}/theta1-involution-failures"),
            format!("fiber-identification/{gname}"),
            star_fail,
            0,
        ));
        checks.push(Check::count(
            format!("fiber/{gname}/theta0-identity-failures"),
            format!("fiber-identification/{gname}"),
            zero_fail,
            0,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slug_is_stable() {
        assert_eq!(slug("t u t^-1"), "t-u-t-1");
        assert_eq!(slug("v u = e(theta) u v"), "v-u-e-theta-u-v");
        assert_eq!(slug("-u t^2"), "u-t-2");
    }

    #[test]
    fn lcg_is_deterministic() {
        let mut a = Lcg(42);
        let mut b = Lcg(42);
        for _ in 0..100 {
            assert_eq!(a.next_range(-8, 8), b.next_range(-8, 8));
        }
    }

    #[test]
    fn tolerances_scale() {
        let t = Tolerances::scaled(2.0);
        assert_eq!(t.order_residual, 2e-4);
        assert_eq!(t.inner_norm, 2e-8);
    }
}
