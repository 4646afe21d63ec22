//! Covering radius of matrix rank-metric codes, computed exactly by a
//! deep-hole sweep and cross-checked through the scattered-subspace
//! formulation, plus the size-based lower bound at parameters too large
//! to sweep.

use num_bigint::BigUint;
use scatterlab::field::{make_tower, FieldSpec};
use scatterlab::rankmetric::{covering_radius_lower_bound, MatrixCode};

fn main() -> scatterlab::Result<()> {
    // F_4 acting on itself by multiplication, written as 2x2 matrices
    // over F_2: a [2x2, 4, 2] MRD code.
    let tower = make_tower(2, 1, 2, None)?;
    let top = tower.top().clone();
    let words: Vec<Vec<u64>> = (0..4)
        .map(|alpha| {
            let mut w = vec![0u64; 4];
            for i in 0..2 {
                let row = tower.coords(top.mul(alpha, tower.basis_element(i)));
                w[i * 2] = row[0];
                w[i * 2 + 1] = row[1];
            }
            w
        })
        .collect();
    let f2 = FieldSpec::new(2, 1, None)?;
    let code = MatrixCode::new(f2, 2, 2, words)?;
    println!(
        "field-multiplication code: |C| = {}, d = {}, MRD = {}",
        code.len(),
        code.min_rank_distance(),
        code.is_mrd()
    );

    let report = code.covering_radius_exact()?;
    println!(
        "covering radius = {:?} (lower bound {:?}, cross-checked = {})",
        report.exact, report.lower_bound, report.cross_checked
    );
    if let Some(hole) = &report.deep_hole {
        println!("a deep hole: {hole:?}");
    }
    println!("extendable to a larger code of the same distance: {}", code.is_extendable()?);

    // At 6x6 over F_2 the sweep is out of reach, but the bound is cheap:
    // any code of 2^6 words has covering radius at least m - h* = 4.
    let (bound, h_star) = covering_radius_lower_bound(2, 6, 6, &BigUint::from(64u32));
    println!("6x6/F_2, |C| = 64: covering radius >= {bound} (h* = {h_star})");
    Ok(())
}
