//! A short tour of the exact layer: build the order-6 algebra, check
//! a relation, exhibit a projection with its trace, and print the
//! K-group summary derived from the torsion classification.

use nctv_core::coeff::rat;
use nctv_core::grp::{maximal_finite_subgroups, FiniteGroup};
use nctv_core::ktheory::k0_summary;
use nctv_core::tga::{projection_family, TwistedAlgebra};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = TwistedAlgebra::planar(6)?;

    // v u = e(θ) u v, exactly, for every θ at once
    let vu = alg.v().convolve(&alg.u())?;
    let uv = alg.u().convolve(&alg.v())?;
    let e_theta = nctv_core::coeff::PhaseScalar::e_theta(&rat(1, 1));
    println!("v·u = e(θ)·u·v holds: {}", vu == uv.scale(&e_theta));

    // the projection basis and its exact traces
    for (name, p) in projection_family(&alg) {
        println!(
            "{name}: is projection {}, trace {}",
            p.is_projection(),
            p.trace()
        );
    }

    // conjugacy classes of maximal finite subgroups drive the ranks
    let group = FiniteGroup::cyclic(6)?;
    for class in maximal_finite_subgroups(&group) {
        println!(
            "maximal subgroup ⟨{}⟩ of order {}",
            class.generator.label(),
            class.order
        );
    }
    let summary = k0_summary(6)?;
    println!(
        "K0 rank {} with basis {:?}",
        summary.rank_k0, summary.basis_labels
    );
    Ok(())
}
