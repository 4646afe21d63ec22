//! Tour of the arithmetic layer: build the tower F_2 ⊂ F_16, move
//! between F_16-vectors and their F_2-coordinates, and do lattice
//! operations on subspaces.

use scatterlab::field::make_tower;
use scatterlab::subspace::{enumerate_subspaces, SubspaceBasis};

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 4, None)?;
    let top = tower.top();
    println!("tower: F_{} inside F_{}", tower.base().order(), top.order());

    // g generates the multiplicative group; its coords over the basis 1, g, g^2, g^3.
    let g = 2u64;
    let mut x = 1u64;
    for i in 0..5 {
        println!("  g^{i} = {x:2}   coords {:?}", tower.coords(x));
        x = top.mul(x, g);
    }

    let f = tower.base().clone();
    let u = SubspaceBasis::from_generators(
        f.clone(),
        4,
        vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
    )?;
    let v = SubspaceBasis::from_generators(f.clone(), 4, vec![vec![1, 1, 0, 0]])?;
    let meet = u.meet(&v)?;
    let join = u.join(&v)?;
    println!(
        "dim U = {}, dim V = {}, dim U∩V = {}, dim U+V = {}",
        u.dim(),
        v.dim(),
        meet.dim(),
        join.dim()
    );

    let planes = enumerate_subspaces(&f, 4, 2)?.count();
    println!("planes of F_2^4: {planes} (the q-binomial [4 2]_2 = 35)");
    Ok(())
}
