//! Delsarte duality: the F_q-orthogonal complement reverses inclusions,
//! complements dimensions, satisfies the weight identity
//! dim(U^⊥ ∩ W^⊥') = dim(U ∩ W) + dim W^⊥' − dim W, and transfers
//! maximum-scatteredness.

use scatterlab::duality::{dual_scattered, DualityContext};
use scatterlab::field::make_tower;
use scatterlab::scattered::{construct_family, Family};
use scatterlab::spread::desarguesian_spread;
use scatterlab::subspace::SubspaceBasis;

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 2, None)?;
    let ctx = DualityContext::standard(&tower, 2)?;

    let u = SubspaceBasis::from_generators(
        tower.base().clone(),
        4,
        vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
    )?;
    let du = ctx.perp_fq(&u)?;
    println!("dim U = {}, dim U^perp = {}", u.dim(), du.dim());
    println!("involution holds: {}", ctx.perp_fq(&du)? == u);

    let spread = desarguesian_spread(&tower, 2)?;
    let max_scat = construct_family(&tower, Family::EvenN { t: 1 })?;
    let rep = dual_scattered(&ctx, &max_scat, &spread, 1)?;
    println!(
        "maximum scattered of dim {} dualizes to dim {}; scatteredness transferred: {:?}",
        max_scat.dim(),
        rep.dual.dim(),
        rep.transferred
    );
    Ok(())
}
