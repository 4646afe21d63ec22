//! Exact counting machinery: Gaussian binomials, counts of subspaces meeting
//! a spread element in large dimension, inclusion/second-moment bounds on the
//! number of scattered subspaces, and Monte Carlo density estimation.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::make_tower;
use crate::scattered::is_scattered;
use crate::spread::desarguesian_spread;
use crate::subspace::sample_subspace;

/// Gaussian binomial coefficient [n choose k]_q as a product of
/// (q^{n-i} - 1)/(q^{i+1} - 1) factors; zero outside 0 ≤ k ≤ n.
pub fn gauss_binomial(n: i64, k: i64, q: u64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

fn binom2(x: i64) -> u32 {
    // binomial(x, 2) for x ≥ 0
    (x * (x - 1) / 2) as u32
}

/// ∂ = ∂_q(N, k, m, h): the number of k-spaces of F_q^N whose intersection
/// with a fixed m-space exceeds dimension h, by inclusion-exclusion over the
/// intersection profile.
pub fn delta_count(n: i64, k: i64, m: i64, h: i64, q: u64) -> Result<BigUint> {
    if h < 0 || m < 0 || k < 0 || n < 0 || m > n || k > n {
        return Err(Error::InvalidParameter(
            "delta_count requires 0 ≤ h, m ≤ N, k ≤ N".into(),
        ));
    }
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for ell in (h + 1)..=m {
        for b in ell..=m {
            let term = BigInt::from(gauss_binomial(m, ell, q))
                * BigInt::from(gauss_binomial(m - ell, b - ell, q))
                * BigInt::from(gauss_binomial(n - b, k - b, q))
                * qb.pow(binom2(b - ell));
            if (b - ell) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.magnitude().clone())
}

/// ω = ω_q(N, k, m, h): the number of k-spaces meeting each of two fixed
/// disjoint m-spaces in dimension greater than h.
pub fn omega_count(n: i64, k: i64, m: i64, h: i64, q: u64) -> Result<BigUint> {
    if h < 0 || m < 0 || k < 0 || n < 0 || 2 * m > n || k > n {
        return Err(Error::InvalidParameter(
            "omega_count requires 0 ≤ h, 2m ≤ N, k ≤ N".into(),
        ));
    }
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for ell1 in (h + 1)..=m {
        for b1 in ell1..=m {
            for ell2 in (h + 1)..=m {
                for b2 in ell2..=m {
                    let term = BigInt::from(gauss_binomial(m, ell1, q))
                        * BigInt::from(gauss_binomial(m - ell1, b1 - ell1, q))
                        * BigInt::from(gauss_binomial(m, ell2, q))
                        * BigInt::from(gauss_binomial(m - ell2, b2 - ell2, q))
                        * BigInt::from(gauss_binomial(n - b1 - b2, k - b1 - b2, q))
                        * qb.pow(binom2(b1 - ell1) + binom2(b2 - ell2));
                    if (b1 - ell1 + b2 - ell2) % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.magnitude().clone())
}

/// Number of k-spaces of F_q^N disjoint from a fixed ℓ-space:
/// q^{ℓk} [N-ℓ choose k]_q.
pub fn disjoint_count(n: i64, k: i64, ell: i64, q: u64) -> Result<BigUint> {
    if ell < 0 || k < 0 || n < 0 || ell > n || k > n {
        return Err(Error::InvalidParameter("disjoint_count: bad parameters".into()));
    }
    Ok(BigUint::from(q).pow((ell * k) as u32) * gauss_binomial(n - ell, k, q))
}

/// Exact lower and upper estimates on the number of (𝒜, h)-scattered
/// k-spaces, given |𝒜| spread elements of dimension m in F_q^N.
#[derive(Clone, Debug)]
pub struct ScatteredCountBounds {
    pub total: BigUint,
    pub delta: BigUint,
    pub omega: BigUint,
    /// [N,k]_q − |A| ∂ (first-moment bound; may be negative).
    pub lower: BigInt,
    /// [N,k]_q − |A| ∂² / (∂ + (|A|−1) ω), exact rational; equals `total`
    /// when ∂ = 0.
    pub upper: BigRational,
}

pub fn scattered_count_bounds(
    n: i64,
    k: i64,
    m: i64,
    h: i64,
    q: u64,
    family_size: &BigUint,
) -> Result<ScatteredCountBounds> {
    let total = gauss_binomial(n, k, q);
    let delta = delta_count(n, k, m, h, q)?;
    let omega = if 2 * m <= n {
        omega_count(n, k, m, h, q)?
    } else {
        BigUint::zero()
    };
    let a = BigInt::from(family_size.clone());
    let total_i = BigInt::from(total.clone());
    let d = BigInt::from(delta.clone());
    let w = BigInt::from(omega.clone());
    let lower = &total_i - &a * &d;
    let upper = if d.is_zero() {
        BigRational::from(total_i.clone())
    } else {
        let denom = &d + (&a - BigInt::one()) * &w;
        BigRational::from(total_i) - BigRational::new(&a * &d * &d, denom)
    };
    Ok(ScatteredCountBounds { total, delta, omega, lower, upper })
}

/// Exact-integer existence/abundance threshold checks.
#[derive(Clone, Debug)]
pub struct Thresholds {
    /// q^{h+1} ≥ 64: the regime where the second-moment bound already forces
    /// scattered spaces to exist in profusion.
    pub large_field: bool,
    /// 4|A| < q^{(h+1)(m'-m+h+1)} when a code comparison is requested.
    pub code_bound: Option<bool>,
}

pub fn thresholds(
    q: u64,
    h: i64,
    family_size: &BigUint,
    code_dims: Option<(i64, i64)>,
) -> Result<Thresholds> {
    if h < 0 {
        return Err(Error::InvalidParameter("h must be ≥ 0".into()));
    }
    let qb = BigUint::from(q);
    let large_field = qb.pow((h + 1) as u32) >= BigUint::from(64u32);
    let code_bound = match code_dims {
        None => None,
        Some((m, mp)) => {
            let e = (h + 1) * (mp - m + h + 1);
            if e < 0 {
                return Err(Error::InvalidParameter(
                    "code threshold exponent is negative".into(),
                ));
            }
            Some(BigUint::from(4u32) * family_size < qb.pow(e as u32))
        }
    };
    Ok(Thresholds { large_field, code_bound })
}

/// Leading q-exponents of ∂ and ω for fixed (N, k, m, h) as q → ∞.
pub fn asymptotic_exponents(n: i64, k: i64, m: i64, h: i64) -> (i64, i64) {
    let delta_exp = (h + 1) * (m - h - 1) + (k - h - 1) * (n - k);
    let omega_exp = 2 * (h + 1) * (m - h - 1) + (k - 2 * h - 2) * (n - k);
    (delta_exp, omega_exp)
}

/// One row of an empirical scattered-density curve.
#[derive(Clone, Debug)]
pub struct DensityPoint {
    pub k: usize,
    pub samples: usize,
    pub scattered: usize,
}

impl DensityPoint {
    pub fn proportion(&self) -> f64 {
        self.scattered as f64 / self.samples as f64
    }
}

#[derive(Clone, Debug)]
pub struct DensityCurve {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub h: usize,
    pub seed: u64,
    pub points: Vec<DensityPoint>,
}

impl DensityCurve {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,m,n,h,k,samples,scattered,proportion,seed\n");
        for p in &self.points {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{:.6},{}\n",
                self.q,
                self.m,
                self.n,
                self.h,
                p.k,
                p.samples,
                p.scattered,
                p.proportion(),
                self.seed
            ));
        }
        s
    }
}

/// Estimate, for each k in `ks`, the proportion of uniformly random
/// k-spaces of F_q^{mn} that are (𝒟, h)-scattered with respect to the
/// Desarguesian spread. Each (k, trial) pair gets its own ChaCha stream
/// derived from `seed`, so curves are reproducible point by point.
pub fn empirical_density(
    p: u64,
    e: u32,
    m: usize,
    n: usize,
    h: usize,
    ks: &[usize],
    samples: usize,
    seed: u64,
) -> Result<DensityCurve> {
    let tower = make_tower(p, e, m as u32, None)?;
    let spread = desarguesian_spread(&tower, n)?;
    let q = tower.base().order();
    let big_n = m * n;
    let mut points = Vec::with_capacity(ks.len());
    for &k in ks {
        if k > big_n {
            return Err(Error::InvalidParameter(format!("k={k} exceeds N={big_n}")));
        }
        let mut scattered = 0usize;
        for trial in 0..samples {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (k as u64).wrapping_mul(0x9e3779b97f4a7c15)
                    ^ (trial as u64).wrapping_mul(0xd1b54a32d192ed03),
            );
            let u = sample_subspace(tower.base(), big_n, k, &mut rng);
            if is_scattered(&spread, &u, h)? {
                scattered += 1;
            }
        }
        points.push(DensityPoint { k, samples, scattered });
    }
    Ok(DensityCurve { q, m, n, h, seed, points })
}

/// Convenience: density estimate when the spread is already built.
pub fn empirical_density_for_spread(
    spread: &crate::spread::PartialSpread,
    h: usize,
    ks: &[usize],
    samples: usize,
    seed: u64,
) -> Result<DensityCurve> {
    let field: &Arc<crate::field::FieldSpec> = spread.field();
    let big_n = spread.ambient_dim();
    let mut points = Vec::with_capacity(ks.len());
    for &k in ks {
        if k > big_n {
            return Err(Error::InvalidParameter(format!("k={k} exceeds N={big_n}")));
        }
        let mut scattered = 0usize;
        for trial in 0..samples {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (k as u64).wrapping_mul(0x9e3779b97f4a7c15)
                    ^ (trial as u64).wrapping_mul(0xd1b54a32d192ed03),
            );
            let u = sample_subspace(field, big_n, k, &mut rng);
            if is_scattered(spread, &u, h)? {
                scattered += 1;
            }
        }
        points.push(DensityPoint { k, samples, scattered });
    }
    Ok(DensityCurve {
        q: field.order(),
        m: spread.member_dim(),
        n: big_n / spread.member_dim(),
        h,
        seed,
        points,
    })
}
