//! Exact counts of subspaces meeting a fixed m-space too much (∂) or two
//! of them (ω), their leading exponents, and a Monte Carlo estimate of
//! how common scattered subspaces are.

use scatterlab::counting::{
    asymptotic_exponents, delta_count, empirical_density, gauss_binomial, omega_count,
};

fn main() -> scatterlab::Result<()> {
    println!("[6 3]_2 = {}", gauss_binomial(6, 3, 2));

    // omega vanishes identically at k=3 for these parameters, so its
    // growth is shown at k=4 instead.
    let (d_exp, _) = asymptotic_exponents(6, 3, 2, 1);
    let (_, w_exp) = asymptotic_exponents(6, 4, 2, 1);
    println!("leading exponents at N=6, m=2, h=1: delta(k=3) ~ q^{d_exp}, omega(k=4) ~ q^{w_exp}");
    for q in [2u64, 3, 4, 5] {
        println!(
            "  q={q}: delta = {:6}  omega = {}",
            delta_count(6, 3, 2, 1, q)?,
            omega_count(6, 4, 2, 1, q)?
        );
    }

    // Sampled density of scattered k-spaces w.r.t. the Desarguesian line
    // spread of F_2^6. Exact parameters of the large experiment are in the
    // acceptance suite; this is a fast small-scale version.
    let ks: Vec<usize> = (2..=3).collect();
    let curve = empirical_density(2, 1, 3, 2, 1, &ks, 2000, 7)?;
    for pt in &curve.points {
        println!(
            "k = {}: {}/{} sampled subspaces scattered ({:.3})",
            pt.k,
            pt.scattered,
            pt.samples,
            pt.proportion()
        );
    }
    Ok(())
}
