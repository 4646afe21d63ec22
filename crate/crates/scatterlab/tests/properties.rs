//! Randomized invariants over small fields. These back the frozen oracles
//! in the unit tests with structure that must hold at *every* parameter,
//! not just the pinned ones.

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scatterlab::counting::gauss_binomial;
use scatterlab::duality::DualityContext;
use scatterlab::field::{make_tower, FieldSpec};
use scatterlab::subspace::{sample_subspace, SubspaceBasis};

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// [n choose k]_q = [n choose n-k]_q, and the q-Pascal recurrence.
    #[test]
    fn gauss_binomial_symmetry_and_pascal(n in 0i64..10, k in 0i64..10, q in prime()) {
        prop_assume!(k <= n);
        prop_assert_eq!(gauss_binomial(n, k, q), gauss_binomial(n, n - k, q));
        if n > 0 && k > 0 && k < n {
            let lhs = gauss_binomial(n, k, q);
            let rhs = gauss_binomial(n - 1, k - 1, q)
                + BigUint::from(q).pow(k as u32) * gauss_binomial(n - 1, k, q);
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// Field axioms on random elements: commutativity, associativity,
    /// distributivity, and inverses of nonzero elements.
    #[test]
    fn field_axioms(p in prime(), e in 1u32..4, seed in any::<u64>()) {
        prop_assume!((p as f64).powi(e as i32) <= 512.0);
        let f = FieldSpec::new(p, e, None).unwrap();
        let q = f.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        for _ in 0..32 {
            let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    /// Modular dimension law: dim U + dim V = dim(U ∩ V) + dim(U + V),
    /// and both meet and join are bounded by their operands correctly.
    #[test]
    fn meet_join_dimension_law(
        q in prop_oneof![Just(2u64), Just(3)],
        n in 2usize..6,
        ku in 0usize..6,
        kv in 0usize..6,
        seed in any::<u64>(),
    ) {
        prop_assume!(ku <= n && kv <= n);
        let f = FieldSpec::new(q, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample_subspace(&f, n, ku, &mut rng);
        let v = sample_subspace(&f, n, kv, &mut rng);
        let meet = u.meet(&v).unwrap();
        let join = u.join(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), meet.dim() + join.dim());
        prop_assert!(u.contains(&meet) && v.contains(&meet));
        prop_assert!(join.contains(&u) && join.contains(&v));
    }

    /// The reduced echelon basis is canonical: shuffling and rescaling
    /// generators yields the identical object.
    #[test]
    fn rref_is_canonical(
        q in prop_oneof![Just(2u64), Just(3), Just(5)],
        n in 1usize..5,
        k in 1usize..5,
        seed in any::<u64>(),
    ) {
        prop_assume!(k <= n);
        let f = FieldSpec::new(q, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample_subspace(&f, n, k, &mut rng);
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut rows = u.rows().to_vec();
        rows.shuffle(&mut rng);
        for r in rows.iter_mut() {
            let c = rng.gen_range(1..q);
            for x in r.iter_mut() {
                *x = f.mul(*x, c);
            }
        }
        // Throw in a random sum of two rows when possible.
        if rows.len() >= 2 {
            let extra: Vec<u64> =
                (0..n).map(|j| f.add(rows[0][j], rows[1][j])).collect();
            rows.push(extra);
        }
        let rebuilt = SubspaceBasis::from_generators(f, n, rows).unwrap();
        prop_assert_eq!(rebuilt, u);
    }

    /// Orthogonal F_q-duality is a dimension-complementing involution
    /// that reverses inclusions.
    #[test]
    fn duality_involution(
        m in 2u32..4,
        n in 2usize..4,
        k in 0usize..8,
        seed in any::<u64>(),
    ) {
        let big_n = m as usize * n;
        prop_assume!(k <= big_n && big_n <= 8);
        let tower = make_tower(2, 1, m, None).unwrap();
        let ctx = DualityContext::standard(&tower, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample_subspace(tower.base(), big_n, k, &mut rng);
        let du = ctx.perp_fq(&u).unwrap();
        prop_assert_eq!(du.dim(), big_n - k);
        prop_assert_eq!(ctx.perp_fq(&du).unwrap(), u.clone());
        let kv = rng.gen_range(0..=k);
        use rand::Rng;
        // A random subspace of U: combinations of its rows.
        let mut gens = Vec::new();
        for _ in 0..kv {
            let mut g = vec![0u64; big_n];
            for row in u.rows() {
                let c = rng.gen_range(0..2u64);
                if c == 1 {
                    for (gi, ri) in g.iter_mut().zip(row) {
                        *gi ^= ri;
                    }
                }
            }
            gens.push(g);
        }
        let v = SubspaceBasis::from_generators(tower.base().clone(), big_n, gens).unwrap();
        prop_assert!(u.contains(&v));
        prop_assert!(ctx.perp_fq(&v).unwrap().contains(&du));
    }

    /// Counting sanity: the number of k-subspaces through a fixed line in
    /// F_q^n equals [n-1 choose k-1]_q, the classical flag identity, so the
    /// Grassmannian count decomposes per incident line.
    #[test]
    fn gauss_binomial_flag_identity(n in 1i64..9, k in 1i64..9, q in prime()) {
        prop_assume!(k <= n);
        // [n k]_q (q^k - 1) = [n-1 k-1]_q (q^n - 1)
        let qn = BigUint::from(q).pow(n as u32) - BigUint::one();
        let qk = BigUint::from(q).pow(k as u32) - BigUint::one();
        prop_assert_eq!(
            gauss_binomial(n, k, q) * qk,
            gauss_binomial(n - 1, k - 1, q) * qn
        );
    }
}
