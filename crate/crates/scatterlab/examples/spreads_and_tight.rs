//! Desarguesian spreads and the two tight constructions: a full spread
//! admitting a scattered subspace of dimension m(n−1)+h−1, and a partial
//! spread of size q^{m(n−1)} pushing that to m(n−1)+h.

use scatterlab::field::make_tower;
use scatterlab::scattered::is_scattered;
use scatterlab::spread::{construct_tight_spread, desarguesian_spread, partial_spread_tight};

fn main() -> scatterlab::Result<()> {
    let tower = make_tower(2, 1, 2, None)?;
    let spread = desarguesian_spread(&tower, 3)?;
    let report = spread.validate()?;
    println!(
        "Desarguesian spread of F_2^6 by planes: {} members, full = {}",
        spread.len(),
        report.is_full
    );

    for h in [1usize, 2] {
        let (s, u) = construct_tight_spread(&tower, 3, h)?;
        println!(
            "h = {h}: full spread carries an h-scattered subspace of dim {} \
             (bound m(n-1)+h-1 = {})",
            u.dim(),
            2 * 2 + h - 1
        );
        assert!(is_scattered(&s, &u, h)?);

        let (p, v) = partial_spread_tight(&tower, 3, h)?;
        println!(
            "     partial spread of size {} carries one of dim {}",
            p.len(),
            v.dim()
        );
        assert!(is_scattered(&p, &v, h)?);
    }
    Ok(())
}
