//! Cutting linear sets and minimal rank-metric codes: a scattered
//! subspace of the right dimension gives a linear set meeting every
//! hyperplane-pair section, which is exactly the geometry behind a
//! minimal [m+3, 3] code. Here m = 4, so a [7, 3] code over F_16/F_2.

use scatterlab::field::make_tower;
use scatterlab::minimal::{construct_minimal_code, is_minimal_code, rank_weight};

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 4, None)?;
    let (code, lset) = construct_minimal_code(&tower)?;

    println!(
        "[{}, {}] code over F_16/F_2, non-degenerate = {}",
        code.length(),
        code.dimension(),
        code.is_non_degenerate()?
    );
    println!(
        "underlying linear set: rank {}, {} points in PG(2, 16)",
        lset.rank(),
        lset.len()
    );

    // A few codewords and their rank weights.
    for x in [vec![1u64, 0, 0], vec![0, 1, 0], vec![1, 2, 3]] {
        let c = code.codeword(&x);
        println!("  x = {x:?}  ->  rank weight {}", rank_weight(code.tower(), &c));
    }

    let report = is_minimal_code(&code)?;
    println!("minimal (every codeword's rank support is inclusion-minimal): {}", report.minimal);
    Ok(())
}
