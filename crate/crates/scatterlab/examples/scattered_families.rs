//! The named scattered families, the dimension bounds, and an exhaustive
//! search confirming where the maximum actually sits.

use scatterlab::field::make_tower;
use scatterlab::scattered::{
    bound_table, construct_family, is_scattered, max_scattered_dimension, Family, SearchMode,
};
use scatterlab::spread::desarguesian_spread;

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 3, None)?;

    let pr = construct_family(&tower, Family::Pseudoregulus { n: 3 })?;
    println!("pseudoregulus in F_2^9: dim {} (it is (n-1)-scattered)", pr.dim());

    let tower2 = make_tower(3, 1, 2, None)?;
    let even = construct_family(&tower2, Family::EvenN { t: 2 })?;
    let spread = desarguesian_spread(&tower2, 4)?;
    println!(
        "even-n family in F_3^8: dim {}, scattered = {}",
        even.dim(),
        is_scattered(&spread, &even, 1)?
    );

    for (m, n, h) in [(2usize, 2usize, 1usize), (3, 2, 2), (5, 5, 1)] {
        let t = bound_table(m, n, h)?;
        println!(
            "bounds m={m} n={n} h={h}: partial {}, spread {}, Desarguesian {} ({:?} is sharper)",
            t.general_bound, t.spread_bound, t.desarguesian_bound, t.sharper
        );
    }

    // Small enough to settle by brute force.
    let small = desarguesian_spread(&make_tower(2, 1, 2, None)?, 2)?;
    let outcome = max_scattered_dimension(&small, 1, SearchMode::Exhaustive)?;
    println!(
        "exhaustive search in F_2^4 (h=1): max dim {} with witness {:?}",
        outcome.k_max,
        outcome.witness.rows()
    );
    Ok(())
}
