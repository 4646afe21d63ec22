//! The geometric lattice generated by h-fold meets of spread members,
//! its characteristic polynomial, and the critical-exponent route to the
//! maximum scattered dimension: k_max = N − min{ s : χ(q^s) ≠ 0 }.

use num_bigint::BigInt;
use scatterlab::field::make_tower;
use scatterlab::lattice::{
    atoms_of, build_lattice, characteristic_polynomial, critical_exponent, verify_crapo_rota,
};
use scatterlab::spread::desarguesian_spread;

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 2, None)?;
    let spread = desarguesian_spread(&tower, 2)?;

    let atoms = atoms_of(&spread, 1)?;
    let lattice = build_lattice(&atoms, spread.field(), spread.ambient_dim())?;
    println!("lattice on {} flats, {} atoms", lattice.len(), lattice.atoms().len());

    let chi = characteristic_polynomial(&lattice);
    println!("chi = {}", chi.to_text());
    for s in 0..=2 {
        let q_s = BigInt::from(2u64).pow(s);
        println!("  chi(2^{s}) = {}", chi.eval(&q_s));
    }
    println!("critical exponent: {}", critical_exponent(&lattice)?);

    let report = verify_crapo_rota(&spread, 1)?;
    println!(
        "lattice route gives k_max = {}, exhaustive search gives {}, equal = {}",
        report.lattice_max_dim, report.search_max_dim, report.equal
    );
    Ok(())
}
