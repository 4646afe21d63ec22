//! Trace-form duality on F_q-subspaces of F_{q^m}^n: orthogonal
//! complements under σ′(u,v) = Tr(σ(u,v)), the dual-weight identity, and
//! the scatteredness transfers through duality.

use crate::error::{Error, Result};
use crate::field::FieldTower;
use crate::scattered::{is_h_scattered, is_scattered};
use crate::spread::PartialSpread;
use crate::subspace::{kernel, mat_mul, rank, SubspaceBasis};

/// A nondegenerate reflexive F_{q^m}-bilinear form σ on F_{q^m}^n together
/// with the induced F_q-form σ′ = Tr ∘ σ on F_q^{mn}.
#[derive(Clone, Debug)]
pub struct DualityContext {
    tower: FieldTower,
    n: usize,
    /// n×n matrix of σ over F_{q^m}; symmetric and invertible.
    form: Vec<Vec<u64>>,
    /// mn×mn Gram matrix of σ′ against the F_q-expansion basis.
    gram: Vec<Vec<u64>>,
}

impl DualityContext {
    /// Standard inner product σ(u,v) = Σ u_i v_i.
    pub fn standard(tower: &FieldTower, n: usize) -> Result<DualityContext> {
        let form = (0..n)
            .map(|i| {
                let mut r = vec![0u64; n];
                r[i] = 1;
                r
            })
            .collect();
        DualityContext::with_form(tower, n, form)
    }

    /// Arbitrary symmetric invertible form matrix over F_{q^m}.
    pub fn with_form(tower: &FieldTower, n: usize, form: Vec<Vec<u64>>) -> Result<DualityContext> {
        let top = tower.top();
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("form matrix must be n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != form[j][i] {
                    return Err(Error::InvalidParameter(
                        "form matrix must be symmetric (reflexive bilinear)".into(),
                    ));
                }
            }
        }
        if rank(top, form.clone()) != n {
            return Err(Error::InvalidParameter("form matrix is degenerate".into()));
        }
        let m = tower.m();
        let mn = m * n;
        // Gram of σ′ on the expansion basis e_{i,a} = basis_element(a)·ê_i
        let mut gram = vec![vec![0u64; mn]; mn];
        for i in 0..n {
            for j in 0..n {
                if form[i][j] == 0 {
                    continue;
                }
                for a in 0..m {
                    for b in 0..m {
                        let prod = top.mul(
                            form[i][j],
                            top.mul(tower.basis_element(a), tower.basis_element(b)),
                        );
                        gram[i * m + a][j * m + b] = tower.relative_trace(prod);
                    }
                }
            }
        }
        // σ nondegenerate over F_{q^m} forces σ′ nondegenerate over F_q,
        // but verify the radical anyway: a cheap rank check
        let base = tower.base();
        if rank(base, gram.clone()) != mn {
            return Err(Error::InvalidParameter("induced F_q form is degenerate".into()));
        }
        Ok(DualityContext { tower: tower.clone(), n, form, gram })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ambient_dim(&self) -> usize {
        self.tower.m() * self.n
    }

    /// σ′-orthogonal complement of an F_q-subspace of F_q^{mn}.
    pub fn perp_fq(&self, u: &SubspaceBasis) -> Result<SubspaceBasis> {
        let mn = self.ambient_dim();
        if u.ambient_dim() != mn || u.field() != self.tower.base() {
            return Err(Error::AmbientMismatch("subspace not in F_q^{mn}".into()));
        }
        let base = self.tower.base();
        // rows of U·G annihilate exactly U^{⊥'}
        let ug = mat_mul(base, u.rows(), &self.gram);
        let ker = kernel(base, &ug, mn);
        SubspaceBasis::from_generators(base.clone(), mn, ker)
    }

    /// σ-orthogonal complement of an F_{q^m}-subspace given by generators
    /// over F_{q^m} (rows of length n).
    pub fn perp_fqm(&self, w_rows: &[Vec<u64>]) -> Result<SubspaceBasis> {
        let top = self.tower.top();
        if w_rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::AmbientMismatch("generator has wrong width".into()));
        }
        let wg = mat_mul(top, w_rows, &self.form);
        let ker = kernel(top, &wg, self.n);
        SubspaceBasis::from_generators(top.clone(), self.n, ker)
    }
}

/// Both sides of the identity
/// dim(U^{⊥′} ∩ W^{⊥′}) − dim(U ∩ W) = mn − dim(U) − s·m,
/// where W is an F_{q^m}-subspace of dimension s (given over F_{q^m}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualWeightRecord {
    pub lhs: i64,
    pub rhs: i64,
}

pub fn check_dual_weight(
    ctx: &DualityContext,
    u: &SubspaceBasis,
    w_rows: &[Vec<u64>],
) -> Result<DualWeightRecord> {
    let tower = &ctx.tower;
    let m = tower.m();
    let n = ctx.n;
    let w_top = SubspaceBasis::from_generators(tower.top().clone(), n, w_rows.to_vec())?;
    let s = w_top.dim();
    let w = crate::scattered::expand_top_subspace(tower, n, w_top.rows())?;
    let u_perp = ctx.perp_fq(u)?;
    let w_perp_top = ctx.perp_fqm(w_top.rows())?;
    let w_perp = crate::scattered::expand_top_subspace(tower, n, w_perp_top.rows())?;
    let lhs = u_perp.meet_dim(&w_perp)? as i64 - u.meet_dim(&w)? as i64;
    let rhs = (m * n) as i64 - u.dim() as i64 - (s * m) as i64;
    if lhs != rhs {
        return Err(Error::VerificationFailed(format!(
            "dual-weight identity violated: {lhs} ≠ {rhs}"
        )));
    }
    Ok(DualWeightRecord { lhs, rhs })
}

/// Outcome of the scatteredness transfer through duality.
#[derive(Clone, Debug)]
pub struct DualScatteredReport {
    pub dual: SubspaceBasis,
    /// None: hypotheses of the transfer theorems do not apply (or the check
    /// is not enumerable); Some(flag): the transferred property was checked.
    pub transferred: Option<bool>,
    pub detail: String,
}

/// Dualize U and, when the hypotheses of the transfer theorems hold,
/// verify the transferred property:
/// max scattered (h = 1, dim U = mn/2) stays max scattered, and an
/// h-scattered U of dimension mn/(h+1) with m ≥ h+3 dualizes to a
/// (𝒟,h)-scattered subspace.
pub fn dual_scattered(
    ctx: &DualityContext,
    u: &SubspaceBasis,
    spread: &PartialSpread,
    h: usize,
) -> Result<DualScatteredReport> {
    let tower = &ctx.tower;
    let m = tower.m();
    let n = ctx.n;
    let mn = m * n;
    let dual = ctx.perp_fq(u)?;
    if h == 0 || h > m {
        return Ok(DualScatteredReport {
            dual,
            transferred: None,
            detail: "h out of range".into(),
        });
    }
    if mn % (h + 1) != 0 || u.dim() != mn / (h + 1) {
        return Ok(DualScatteredReport {
            dual,
            transferred: None,
            detail: format!("dim U = {} is not mn/(h+1)", u.dim()),
        });
    }
    if h == 1 && mn % 2 == 0 {
        // maximum scattered transfer: dual of a maximum scattered subspace
        // is maximum scattered
        let fwd = is_scattered(spread, u, 1)?;
        if !fwd {
            return Ok(DualScatteredReport {
                dual,
                transferred: None,
                detail: "U is not maximum scattered".into(),
            });
        }
        let ok = is_scattered(spread, &dual, 1)? && dual.dim() == mn / 2;
        return Ok(DualScatteredReport {
            dual,
            transferred: Some(ok),
            detail: "maximum-scattered duality".into(),
        });
    }
    if m >= h + 3 {
        // U h-scattered ⇔ U^⊥ (𝒟,h)-scattered
        let fwd = is_h_scattered(u, tower, n, h)?;
        let bwd = is_scattered(spread, &dual, h)?;
        return Ok(DualScatteredReport {
            dual,
            transferred: Some(fwd == bwd),
            detail: "h-scattered ⇔ (𝒟,h)-scattered duality".into(),
        });
    }
    Ok(DualScatteredReport {
        dual,
        transferred: None,
        detail: format!("m = {m} < h + 3 not covered by the transfer theorem"),
    })
}

/// Convenience: dual of U under the standard form, checked against the
/// Desarguesian spread.
pub fn standard_dual(tower: &FieldTower, n: usize, u: &SubspaceBasis) -> Result<SubspaceBasis> {
    DualityContext::standard(tower, n)?.perp_fq(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_tower;
    use crate::scattered::{construct_family, expand_top_subspace, scatter_profile, Family};
    use crate::spread::desarguesian_spread;
    use crate::subspace::{enumerate_subspaces, sample_subspace};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn perp_extremes_and_dimensions() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        let zero = SubspaceBasis::zero(t.base().clone(), 4);
        assert_eq!(ctx.perp_fq(&zero).unwrap().dim(), 4);
        let full = SubspaceBasis::full(t.base().clone(), 4);
        assert_eq!(ctx.perp_fq(&full).unwrap().dim(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for k in 0..=4 {
            let u = sample_subspace(t.base(), 4, k, &mut rng);
            assert_eq!(ctx.perp_fq(&u).unwrap().dim(), 4 - k);
        }
    }

    #[test]
    fn perp_is_involutive_exhaustively() {
        // all subspaces of F_2^4 under two different towers/forms
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        for k in 0..=4usize {
            for u in enumerate_subspaces(t.base(), 4, k).unwrap() {
                let p = ctx.perp_fq(&u).unwrap();
                assert_eq!(ctx.perp_fq(&p).unwrap(), u);
            }
        }
    }

    #[test]
    fn perp_fqm_agrees_with_expansion() {
        // property (iii): W^⊥ expanded equals the F_q-perp of W expanded
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        for s in 0..=2usize {
            for w in enumerate_subspaces(t.top(), 2, s).unwrap() {
                let w_fq = expand_top_subspace(&t, 2, w.rows()).unwrap();
                let lhs = ctx.perp_fq(&w_fq).unwrap();
                let wp = ctx.perp_fqm(w.rows()).unwrap();
                let rhs = expand_top_subspace(&t, 2, wp.rows()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(w.dim() + wp.dim(), 2); // property (i)
            }
        }
    }

    #[test]
    fn dual_weight_identity_random() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let top = t.top().clone();
        for _ in 0..1000 {
            let k = (rand::Rng::gen_range(&mut rng, 0..=4u32)) as usize;
            let u = sample_subspace(t.base(), 4, k, &mut rng);
            let s = (rand::Rng::gen_range(&mut rng, 0..=2u32)) as usize;
            let w = sample_subspace(&top, 2, s, &mut rng);
            let rec = check_dual_weight(&ctx, &u, w.rows()).unwrap();
            assert_eq!(rec.lhs, rec.rhs);
        }
    }

    #[test]
    fn dual_weight_trivial_sides() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        let full = SubspaceBasis::full(t.base().clone(), 4);
        let w = vec![vec![1u64, 0]];
        let rec = check_dual_weight(&ctx, &full, &w).unwrap();
        assert_eq!(rec.rhs, -2); // −sm
        let zero = SubspaceBasis::zero(t.base().clone(), 4);
        let rec = check_dual_weight(&ctx, &zero, &w).unwrap();
        assert_eq!(rec.rhs, 2); // m(n−s)
    }

    #[test]
    fn maximum_scattered_dual_transfer() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let ctx = DualityContext::standard(&t, 2).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap();
        let u = construct_family(&t, Family::EvenN { t: 1 }).unwrap();
        let rep = dual_scattered(&ctx, &u, &d, 1).unwrap();
        assert_eq!(rep.transferred, Some(true));
        assert_eq!(rep.dual.dim(), 2);
    }

    #[test]
    fn pseudoregulus_dual_is_dh_scattered() {
        // {(x, x^q, x^{q^2})} in F_{q^m}^3 at q=2, m=4: the dual is
        // (𝒟,2)-scattered of dimension (n−1)m = 8
        let t = make_tower(2, 1, 4, None).unwrap();
        let u = construct_family(&t, Family::Pseudoregulus { n: 3 }).unwrap();
        let ctx = DualityContext::standard(&t, 3).unwrap();
        let dual = ctx.perp_fq(&u).unwrap();
        assert_eq!(dual.dim(), 8);
        let d = desarguesian_spread(&t, 3).unwrap();
        assert!(is_scattered(&d, &dual, 2).unwrap());
        // and the full report agrees (m = 4 < h+3 = 5 is out of theorem
        // scope for h=2, so check the raw property instead)
        assert!(is_h_scattered(&u, &t, 3, 2).unwrap());
    }

    #[test]
    fn profile_invariant_under_form_change() {
        // property (v) consequence: the dual's scatter profile against 𝒟
        // does not depend on the chosen nondegenerate form
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap();
        let ctx1 = DualityContext::standard(&t, 2).unwrap();
        // swap form: σ(u,v) = u_1 v_2 + u_2 v_1
        let ctx2 = DualityContext::with_form(&t, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        // and a scaled form
        let ctx3 = DualityContext::with_form(&t, 2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..100 {
            let k = rand::Rng::gen_range(&mut rng, 0..=4u32) as usize;
            let u = sample_subspace(t.base(), 4, k, &mut rng);
            let p1 = scatter_profile(&d, &ctx1.perp_fq(&u).unwrap()).unwrap();
            let p2 = scatter_profile(&d, &ctx2.perp_fq(&u).unwrap()).unwrap();
            let p3 = scatter_profile(&d, &ctx3.perp_fq(&u).unwrap()).unwrap();
            let hist = |p: &crate::scattered::ScatterProfile| {
                let mut h = vec![0usize; 5];
                for &(_, d) in &p.entries {
                    h[d] += 1;
                }
                h
            };
            assert_eq!(hist(&p1), hist(&p2));
            assert_eq!(hist(&p1), hist(&p3));
        }
    }

    #[test]
    fn degenerate_forms_rejected() {
        let t = make_tower(2, 1, 2, None).unwrap();
        assert!(DualityContext::with_form(&t, 2, vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(DualityContext::with_form(&t, 2, vec![vec![0, 1], vec![2, 0]]).is_err());
    }
}
