//! Matrix rank-metric codes, the graph-space dictionary to partial
//! m-spreads, exact covering radius, and its scattered-subspace lower
//! bound.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::guard;
use crate::scattered::is_scattered;
use crate::spread::{second_order_closure, PartialSpread, SpreadKind};
use crate::subspace::{kernel, mat_inv, rank, SubspaceBasis};

/// A (possibly nonlinear) rank-metric code: a deduplicated set of m×m′
/// matrices over F_q with |𝒞| ≥ 2, stored row-major. Inputs with m > m′
/// are normalized by transposition (rank distances are unaffected) and
/// the flag is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCode {
    field: Arc<FieldSpec>,
    m: usize,
    m_prime: usize,
    /// Sorted, deduplicated, each of length m * m_prime.
    codewords: Vec<Vec<u64>>,
    linear: bool,
    transposed: bool,
    min_dist: usize,
}

fn word_rank(field: &FieldSpec, m: usize, m_prime: usize, w: &[u64]) -> usize {
    let rows: Vec<Vec<u64>> = (0..m).map(|i| w[i * m_prime..(i + 1) * m_prime].to_vec()).collect();
    rank(field, rows)
}

fn word_sub(field: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

impl MatrixCode {
    /// Build and validate a code from raw codewords (row-major m×m′
    /// matrices). Detects F_q-linearity by a closure test and checks the
    /// Singleton-like bound |𝒞| ≤ q^{max(m,m′)(min(m,m′)−d+1)}.
    pub fn new(
        field: Arc<FieldSpec>,
        m: usize,
        m_prime: usize,
        words: Vec<Vec<u64>>,
    ) -> Result<MatrixCode> {
        if m == 0 || m_prime == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive".into()));
        }
        let q = field.order();
        for w in &words {
            if w.len() != m * m_prime {
                return Err(Error::InvalidParameter(format!(
                    "codeword of length {} (expected {})",
                    w.len(),
                    m * m_prime
                )));
            }
            if w.iter().any(|&x| x >= q) {
                return Err(Error::InvalidParameter("codeword entry out of field range".into()));
            }
        }
        let transposed = m > m_prime;
        let (m, m_prime, mut words) = if transposed {
            let t: Vec<Vec<u64>> = words
                .iter()
                .map(|w| {
                    let mut v = vec![0u64; m * m_prime];
                    for i in 0..m {
                        for j in 0..m_prime {
                            v[j * m + i] = w[i * m_prime + j];
                        }
                    }
                    v
                })
                .collect();
            (m_prime, m, t)
        } else {
            (m, m_prime, words)
        };
        words.sort();
        words.dedup();
        if words.len() < 2 {
            return Err(Error::InvalidParameter("a rank-metric code needs at least 2 codewords".into()));
        }
        let linear = is_additively_closed(&field, &words);

        // Minimum distance: for linear codes the minimum nonzero codeword
        // rank, otherwise pairwise.
        let min_dist = if linear {
            words
                .iter()
                .filter(|w| w.iter().any(|&x| x != 0))
                .map(|w| word_rank(&field, m, m_prime, w))
                .min()
                .unwrap()
        } else {
            let mut d = usize::MAX;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let diff = word_sub(&field, &words[i], &words[j]);
                    d = d.min(word_rank(&field, m, m_prime, &diff));
                }
            }
            d
        };

        let bound_exp = (m_prime * (m - min_dist + 1)) as u32;
        let bound = BigUint::from(q).pow(bound_exp);
        if BigUint::from(words.len()) > bound {
            return Err(Error::VerificationFailed(format!(
                "code of size {} and distance {min_dist} violates the Singleton-like bound q^{bound_exp}",
                words.len()
            )));
        }
        Ok(MatrixCode { field, m, m_prime, codewords: words, linear, transposed, min_dist })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    /// Row count after normalization (m ≤ m′).
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn m_prime(&self) -> usize {
        self.m_prime
    }
    pub fn len(&self) -> usize {
        self.codewords.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn codewords(&self) -> &[Vec<u64>] {
        &self.codewords
    }
    pub fn is_linear(&self) -> bool {
        self.linear
    }
    /// True when the input had m > m′ and was transposed to normal form.
    pub fn was_transposed(&self) -> bool {
        self.transposed
    }

    /// Minimum rank distance min{rk(A−B) : A ≠ B}.
    pub fn min_rank_distance(&self) -> usize {
        self.min_dist
    }

    /// Singleton defect log_q(bound) − log_q |𝒞| as an exact rational.
    /// Exact only when |𝒞| is a power of the characteristic; other sizes
    /// have an irrational q-logarithm and yield None.
    pub fn singleton_defect(&self) -> Option<Ratio<BigInt>> {
        let p = self.field.characteristic();
        let e = self.field.degree() as i64;
        let mut n = self.codewords.len() as u64;
        let mut t = 0i64;
        while n % p == 0 {
            n /= p;
            t += 1;
        }
        if n != 1 {
            return None;
        }
        let bound_exp = (self.m_prime * (self.m - self.min_dist + 1)) as i64;
        Some(Ratio::new(BigInt::from(bound_exp * e - t), BigInt::from(e)))
    }

    /// Maximum rank distance: size meets the Singleton-like bound exactly.
    pub fn is_mrd(&self) -> bool {
        let exp = (self.m_prime * (self.m - self.min_dist + 1)) as u32;
        BigUint::from(self.codewords.len()) == BigUint::from(self.field.order()).pow(exp)
    }

    /// Serialize as header `q m m' count linear` followed by one row-major
    /// codeword per line.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {} {} {}\n",
            self.field.order(),
            self.m,
            self.m_prime,
            self.codewords.len(),
            if self.linear { 1 } else { 0 }
        );
        for w in &self.codewords {
            let line: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(field: Arc<FieldSpec>, text: &str) -> Result<MatrixCode> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let head: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad header token `{t}`"))))
            .collect::<Result<_>>()?;
        if head.len() != 5 {
            return Err(Error::Parse("code header must be `q m m' count linear`".into()));
        }
        if head[0] != field.order() {
            return Err(Error::Parse(format!(
                "code file is over F_{} but field has order {}",
                head[0],
                field.order()
            )));
        }
        let (m, m_prime, count) = (head[1] as usize, head[2] as usize, head[3] as usize);
        let mut words = Vec::with_capacity(count);
        for line in lines {
            let w: Vec<u64> = line
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
                .collect::<Result<_>>()?;
            words.push(w);
        }
        if words.len() != count {
            return Err(Error::Parse(format!(
                "code file declares {count} codewords but contains {}",
                words.len()
            )));
        }
        let code = MatrixCode::new(field, m, m_prime, words)?;
        if code.linear != (head[4] == 1) {
            return Err(Error::Parse("declared linearity flag contradicts the codewords".into()));
        }
        Ok(code)
    }

    /// The graph spaces S_A = {(x, xA)}: a partial m-spread of F_q^{m+m′}
    /// whose every element meets S_∞ = 0 ⊕ F_q^{m′} trivially. Requires
    /// minimum distance exactly m.
    pub fn to_partial_spread(&self) -> Result<(PartialSpread, SubspaceBasis)> {
        if self.min_dist != self.m {
            return Err(Error::InvalidParameter(format!(
                "graph dictionary needs minimum distance m={}, code has {}",
                self.m, self.min_dist
            )));
        }
        let n = self.m + self.m_prime;
        let elements: Vec<SubspaceBasis> = self
            .codewords
            .iter()
            .map(|w| {
                let rows: Vec<Vec<u64>> = (0..self.m)
                    .map(|i| {
                        let mut r = vec![0u64; n];
                        r[i] = 1;
                        r[self.m..].copy_from_slice(&w[i * self.m_prime..(i + 1) * self.m_prime]);
                        r
                    })
                    .collect();
                SubspaceBasis::from_generators(Arc::clone(&self.field), n, rows)
            })
            .collect::<Result<_>>()?;
        let s_inf_rows: Vec<Vec<u64>> = (0..self.m_prime)
            .map(|j| {
                let mut r = vec![0u64; n];
                r[self.m + j] = 1;
                r
            })
            .collect();
        let s_inf = SubspaceBasis::from_generators(Arc::clone(&self.field), n, s_inf_rows)?;
        let spread = PartialSpread::from_elements(
            Arc::clone(&self.field),
            n,
            self.m,
            elements,
            SpreadKind::Adhoc,
            None,
            None,
        )?;
        Ok((spread, s_inf))
    }

    /// Inverse of the graph dictionary: recover the code from a partial
    /// m-spread each of whose elements meets 0 ⊕ F_q^{m′} trivially.
    pub fn from_partial_spread(spread: &PartialSpread, m: usize) -> Result<MatrixCode> {
        let n = spread.ambient_dim();
        if spread.member_dim() != m || n <= m {
            return Err(Error::InvalidParameter("spread elements must have dimension m < N".into()));
        }
        let m_prime = n - m;
        let field = Arc::clone(spread.field());
        let words: Vec<Vec<u64>> = spread
            .iter_elements()
            .map(|e| {
                graph_matrix(&e, m).ok_or_else(|| {
                    Error::InvalidParameter("spread element meets 0 ⊕ F_q^{m'} nontrivially".into())
                })
            })
            .collect::<Result<_>>()?;
        MatrixCode::new(field, m, m_prime, words)
    }

    /// Exact covering radius ρ = max_Y min_A rank(A−Y) by exhaustive sweep
    /// over Y, cross-checked (for distance-m codes) against the
    /// scattered-subspace formulation ρ = m − min_Y max_A dim(S_A ∩ S_Y),
    /// which goes through the subspace machinery instead of matrix ranks.
    pub fn covering_radius_exact(&self) -> Result<CoveringReport> {
        let q = self.field.order();
        let cells = self.m * self.m_prime;
        let total = (q as u128)
            .checked_pow(cells as u32)
            .ok_or_else(|| Error::FieldTooLarge((q * cells as u64) as u128))?;
        guard::check("covering-radius sweep", total, guard::COVERING_GUARD)?;

        let mut rho = 0usize;
        let mut deep_hole = vec![0u64; cells];
        let mut y = vec![0u64; cells];
        loop {
            let mut min_rank = usize::MAX;
            for w in &self.codewords {
                let diff = word_sub(&self.field, w, &y);
                min_rank = min_rank.min(word_rank(&self.field, self.m, self.m_prime, &diff));
                if min_rank <= rho {
                    break;
                }
            }
            if min_rank > rho {
                rho = min_rank;
                deep_hole = y.clone();
            }
            if !increment(&mut y, q) {
                break;
            }
        }

        let cross_checked = if self.min_dist == self.m {
            let (spread, _s_inf) = self.to_partial_spread()?;
            let elements: Vec<SubspaceBasis> = spread.iter_elements().collect();
            let mut h_min = usize::MAX;
            let mut y = vec![0u64; cells];
            loop {
                let s_y = graph_space(&self.field, self.m, self.m_prime, &y)?;
                let mut h_y = 0usize;
                for e in &elements {
                    h_y = h_y.max(e.meet_dim(&s_y)?);
                }
                h_min = h_min.min(h_y);
                if !increment(&mut y, q) {
                    break;
                }
            }
            if self.m - h_min != rho {
                return Err(Error::VerificationFailed(format!(
                    "covering radius {rho} disagrees with scattered formulation m - h_min = {}",
                    self.m - h_min
                )));
            }
            true
        } else {
            false
        };

        let (bound, h_star) = if self.min_dist == self.m {
            let (b, h) = covering_radius_lower_bound(
                q,
                self.m,
                self.m_prime,
                &BigUint::from(self.codewords.len()),
            );
            (Some(b), Some(h))
        } else {
            (None, None)
        };
        if let Some(b) = bound {
            if b > rho {
                return Err(Error::VerificationFailed(format!(
                    "covering-radius lower bound {b} exceeds exact radius {rho}"
                )));
            }
        }
        Ok(CoveringReport { exact: Some(rho), lower_bound: bound, h_star, deep_hole: Some(deep_hole), cross_checked })
    }

    /// ρ(𝒞) = m if and only if 𝒞 extends to a strictly larger code that
    /// still has minimum distance m; search for one extension matrix.
    pub fn is_extendable(&self) -> Result<bool> {
        if self.min_dist != self.m {
            return Err(Error::InvalidParameter("extendability is about distance-m codes".into()));
        }
        let q = self.field.order();
        let cells = self.m * self.m_prime;
        let total = (q as u128)
            .checked_pow(cells as u32)
            .ok_or_else(|| Error::FieldTooLarge((q * cells as u64) as u128))?;
        guard::check("extendability sweep", total, guard::COVERING_GUARD)?;
        let mut y = vec![0u64; cells];
        loop {
            let ok = self.codewords.iter().all(|w| {
                let diff = word_sub(&self.field, w, &y);
                diff.iter().any(|&x| x != 0)
                    && word_rank(&self.field, self.m, self.m_prime, &diff) == self.m
            });
            if ok {
                return Ok(true);
            }
            if !increment(&mut y, q) {
                return Ok(false);
            }
        }
    }
}

/// Solve the matrix A with U = S_A, i.e. bring the basis of U to the form
/// [I | A]. Returns None when U meets 0 ⊕ F_q^{m′} nontrivially.
pub fn graph_matrix(u: &SubspaceBasis, m: usize) -> Option<Vec<u64>> {
    if u.dim() != m {
        return None;
    }
    let field = u.field();
    let left: Vec<Vec<u64>> = u.rows().iter().map(|r| r[..m].to_vec()).collect();
    let inv = mat_inv(field, &left)?;
    let m_prime = u.ambient_dim() - m;
    let right: Vec<Vec<u64>> = u.rows().iter().map(|r| r[m..].to_vec()).collect();
    let a = crate::subspace::mat_mul(field, &inv, &right);
    let mut w = vec![0u64; m * m_prime];
    for i in 0..m {
        w[i * m_prime..(i + 1) * m_prime].copy_from_slice(&a[i]);
    }
    Some(w)
}

fn graph_space(
    field: &Arc<FieldSpec>,
    m: usize,
    m_prime: usize,
    y: &[u64],
) -> Result<SubspaceBasis> {
    let rows: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut r = vec![0u64; m + m_prime];
            r[i] = 1;
            r[m..].copy_from_slice(&y[i * m_prime..(i + 1) * m_prime]);
            r
        })
        .collect();
    SubspaceBasis::from_generators(Arc::clone(field), m + m_prime, rows)
}

/// Advance a base-q odometer; false once it wraps back to all zeros.
fn increment(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

fn is_additively_closed(field: &FieldSpec, words: &[Vec<u64>]) -> bool {
    if !words.iter().any(|w| w.iter().all(|&x| x == 0)) {
        return false;
    }
    // An F_q-subspace has q-power size.
    let q = field.order();
    let mut n = words.len() as u64;
    while n % q == 0 {
        n /= q;
    }
    if n != 1 {
        return false;
    }
    let set: BTreeSet<&Vec<u64>> = words.iter().collect();
    for (i, a) in words.iter().enumerate() {
        for c in 2..field.characteristic() {
            let scaled: Vec<u64> = a.iter().map(|&x| field.mul(c, x)).collect();
            if !set.contains(&scaled) {
                return false;
            }
        }
        for b in &words[i..] {
            let sum: Vec<u64> = a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect();
            if !set.contains(&sum) {
                return false;
            }
        }
        // F_q-scaling beyond the prime subfield.
        if field.degree() > 1 {
            for c in field.characteristic()..q {
                let scaled: Vec<u64> = a.iter().map(|&x| field.mul(c, x)).collect();
                if !set.contains(&scaled) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub exact: Option<usize>,
    /// The guaranteed lower bound m − h\*, available for distance-m codes.
    pub lower_bound: Option<usize>,
    pub h_star: Option<usize>,
    /// A matrix attaining the exact radius (row-major).
    pub deep_hole: Option<Vec<u64>>,
    pub cross_checked: bool,
}

/// Lower bound ρ ≥ m − h* for a distance-m code: h* is the smallest h ≥ 0
/// with 4|𝒞| < q^{(h+1)(m′−m+h+1)} (exact integer comparison). Returns
/// (bound, h*).
pub fn covering_radius_lower_bound(
    q: u64,
    m: usize,
    m_prime: usize,
    size: &BigUint,
) -> (usize, usize) {
    let four_c = size * 4u32;
    let mut h = 0usize;
    loop {
        let exp = ((h + 1) * (m_prime - m + h + 1)) as u32;
        if four_c < BigUint::from(q).pow(exp) {
            return (m.saturating_sub(h), h);
        }
        h += 1;
        if h > m {
            return (0, h);
        }
    }
}

/// The simplified form ρ ≥ m − ⌈√(s+1)⌉ of the lower bound, reported only
/// for q ≥ 4 and q-power sizes; None otherwise.
pub fn covering_radius_sqrt_bound(q: u64, m: usize, size: &BigUint) -> Option<usize> {
    if q < 4 {
        return None;
    }
    let mut s = 0u32;
    let big_q = BigUint::from(q);
    let mut acc = BigUint::one();
    while &acc < size {
        acc *= &big_q;
        s += 1;
    }
    if &acc != size {
        return None;
    }
    let target = (s + 1) as u64;
    let mut r = 0u64;
    while r * r < target {
        r += 1;
    }
    Some(m.saturating_sub(r as usize))
}

/// Build the code 𝒞 = {G ∘ τ_v : v ∈ 𝒜̄} of a partial Desarguesian spread
/// 𝒜 = {⟨v_1⟩, …, ⟨v_s⟩} and an (𝒜⁽²⁾,h)-scattered subspace U of
/// dimension k: G is the canonical (mn−k)×mn matrix with kernel U, τ_v is
/// λ ↦ λv. Verifies |𝒞| = s(q^m−1)+1, d ≥ m−h, and the linearity
/// criterion (𝒜̄ an F_{q^m}-subspace) against the closure test.
pub fn code_from_scattered(
    a: &PartialSpread,
    u: &SubspaceBasis,
    h: usize,
) -> Result<MatrixCode> {
    let tower = a
        .tower()
        .ok_or_else(|| Error::InvalidParameter("spread has no tower structure".into()))?
        .clone();
    let reps = a
        .reps()
        .ok_or_else(|| Error::InvalidParameter("spread has no projective representatives".into()))?;
    let m = tower.m();
    let mn = a.ambient_dim();
    let n = mn / m;
    if u.ambient_dim() != mn {
        return Err(Error::AmbientMismatch("subspace not in the spread's ambient space".into()));
    }
    let closure = second_order_closure(a)?;
    if !is_scattered(&closure, u, h)? {
        return Err(Error::VerificationFailed(
            "subspace is not scattered with respect to the second-order closure".into(),
        ));
    }

    let field = Arc::clone(a.field());
    let k = u.dim();
    let g = kernel(&field, u.rows(), mn);
    debug_assert_eq!(g.len(), mn - k);

    // 𝒜̄ = union of the spread elements as sets of F_{q^m}-vectors.
    let s = reps.len();
    let qm = tower.top_order();
    let mut abar: BTreeSet<Vec<u64>> = BTreeSet::new();
    abar.insert(vec![0u64; n]);
    for rep in &reps {
        for lam in 1..qm {
            abar.insert(rep.iter().map(|&x| tower.top().mul(lam, x)).collect());
        }
    }
    let expected = s * (qm as usize - 1) + 1;
    if abar.len() != expected {
        return Err(Error::VerificationFailed(format!(
            "spread point union has {} vectors, expected s(q^m-1)+1 = {expected}",
            abar.len()
        )));
    }

    // Linearity criterion of the construction: 𝒜̄ closed under addition
    // (it is closed under F_{q^m}-scaling by construction).
    guard::check("spread-union closure test", (abar.len() as u128).pow(2), guard::ENUM_GUARD)?;
    let top = tower.top();
    let mut abar_linear = true;
    'outer: for va in &abar {
        for vb in &abar {
            let sum: Vec<u64> = va.iter().zip(vb).map(|(&x, &y)| top.add(x, y)).collect();
            if !abar.contains(&sum) {
                abar_linear = false;
                break 'outer;
            }
        }
    }

    // Matrix of G ∘ τ_v in the basis {1, q, q², …} of F_{q^m}: column j is
    // G applied to the coordinate expansion of q^j · v.
    let rows_out = mn - k;
    let words: Vec<Vec<u64>> = abar
        .iter()
        .map(|v| {
            let mut w = vec![0u64; rows_out * m];
            for j in 0..m {
                let bj = tower.basis_element(j);
                let mut x = Vec::with_capacity(mn);
                for &vi in v {
                    x.extend(tower.coords(top.mul(bj, vi)));
                }
                for (i, grow) in g.iter().enumerate() {
                    let mut acc = 0u64;
                    for (gij, &xj) in grow.iter().zip(&x) {
                        acc = field.add(acc, field.mul(*gij, xj));
                    }
                    w[i * m + j] = acc;
                }
            }
            w
        })
        .collect();

    let code = MatrixCode::new(field, rows_out, m, words)?;
    if code.len() != expected {
        return Err(Error::VerificationFailed(format!(
            "code has {} codewords, theorem promises {expected}",
            code.len()
        )));
    }
    if code.min_rank_distance() + h < m {
        return Err(Error::VerificationFailed(format!(
            "minimum distance {} below the promised m-h = {}",
            code.min_rank_distance(),
            m - h
        )));
    }
    if code.is_linear() != abar_linear {
        return Err(Error::VerificationFailed(
            "linearity closure test disagrees with the subspace criterion".into(),
        ));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_tower;
    use crate::scattered::{construct_family, Family};
    use crate::spread::desarguesian_spread;
    use num_traits::Zero;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1, None).unwrap()
    }

    fn all_words(q: u64, cells: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut w = vec![0u64; cells];
        loop {
            out.push(w.clone());
            if !increment(&mut w, q) {
                return out;
            }
        }
    }

    /// Multiplication maps x ↦ αx on F_4 as 2×2 matrices over F_2.
    fn gabidulin_f4() -> MatrixCode {
        let tower = make_tower(2, 1, 2, None).unwrap();
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
        MatrixCode::new(tower.base().clone(), 2, 2, words).unwrap()
    }

    #[test]
    fn full_space_distance_and_radius() {
        let code = MatrixCode::new(f2(), 2, 2, all_words(2, 4)).unwrap();
        assert_eq!(code.min_rank_distance(), 1);
        assert!(code.is_linear());
        let rep = code.covering_radius_exact().unwrap();
        assert_eq!(rep.exact, Some(0));
    }

    #[test]
    fn gabidulin_mrd_radius_one() {
        let code = gabidulin_f4();
        assert_eq!(code.min_rank_distance(), 2);
        assert!(code.is_linear());
        assert!(code.is_mrd());
        assert_eq!(code.singleton_defect().unwrap(), Ratio::zero());
        let rep = code.covering_radius_exact().unwrap();
        assert_eq!(rep.exact, Some(1));
        assert!(rep.cross_checked);
        assert!(rep.lower_bound.unwrap() <= 1);
        // MRD codes with d = m are not extendable, so ρ ≤ m−1.
        assert!(!code.is_extendable().unwrap());
    }

    #[test]
    fn graph_dictionary_roundtrip() {
        let code = gabidulin_f4();
        let (spread, s_inf) = code.to_partial_spread().unwrap();
        assert_eq!(spread.len(), 4);
        let report = spread.validate().unwrap();
        assert!(report.is_partial);
        for e in spread.iter_elements() {
            assert_eq!(e.meet_dim(&s_inf).unwrap(), 0);
        }
        let back = MatrixCode::from_partial_spread(&spread, 2).unwrap();
        assert_eq!(back.codewords(), code.codewords());
    }

    #[test]
    fn two_word_code_is_extendable() {
        let field = f2();
        let zero = vec![0u64; 4];
        let id = vec![1, 0, 0, 1];
        let code = MatrixCode::new(field, 2, 2, vec![zero, id]).unwrap();
        assert_eq!(code.min_rank_distance(), 2);
        let rep = code.covering_radius_exact().unwrap();
        assert_eq!(rep.exact, Some(2));
        assert!(code.is_extendable().unwrap());
    }

    #[test]
    fn lower_bound_example_six_by_six() {
        let (bound, h_star) = covering_radius_lower_bound(2, 6, 6, &BigUint::from(64u32));
        assert_eq!(h_star, 2);
        assert_eq!(bound, 4);
        // The simplified form is suppressed for q ∈ {2,3}.
        assert!(covering_radius_sqrt_bound(2, 6, &BigUint::from(64u32)).is_none());
        assert_eq!(covering_radius_sqrt_bound(4, 6, &BigUint::from(4096u64)), Some(3));
    }

    #[test]
    fn lower_bound_never_exceeds_exact_on_random_codes() {
        use rand::Rng;
        use rand::SeedableRng;
        let field = f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut built = 0;
        while built < 8 {
            // Random translates of an invertible-matrix sample with d = m.
            let mut words = vec![vec![0u64; 9]];
            while words.len() < 4 {
                let w: Vec<u64> = (0..9).map(|_| rng.gen_range(0..2)).collect();
                if words.iter().all(|v| {
                    let diff = word_sub(&field, v, &w);
                    word_rank(&field, 3, 3, &diff) == 3
                }) {
                    words.push(w);
                }
            }
            let code = MatrixCode::new(field.clone(), 3, 3, words).unwrap();
            if code.min_rank_distance() != 3 {
                continue;
            }
            let rep = code.covering_radius_exact().unwrap();
            assert!(rep.lower_bound.unwrap() <= rep.exact.unwrap());
            assert!(rep.cross_checked);
            built += 1;
        }
    }

    #[test]
    fn transpose_convention() {
        // 3×2 input gets normalized to 2×3.
        let words = vec![vec![0u64; 6], vec![1, 0, 0, 1, 0, 0]];
        let code = MatrixCode::new(f2(), 3, 2, words).unwrap();
        assert!(code.was_transposed());
        assert_eq!(code.m(), 2);
        assert_eq!(code.m_prime(), 3);
        assert_eq!(code.min_rank_distance(), 2);
    }

    #[test]
    fn text_roundtrip() {
        let code = gabidulin_f4();
        let text = code.to_text();
        let back = MatrixCode::from_text(code.field().clone(), &text).unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn code_from_scattered_small_instance() {
        let tower = make_tower(2, 1, 2, None).unwrap();
        let spread = desarguesian_spread(&tower, 2).unwrap();
        let u = construct_family(&tower, Family::EvenN { t: 1 }).unwrap();
        assert_eq!(u.dim(), 2);
        let code = code_from_scattered(&spread, &u, 1).unwrap();
        // s(q^m−1)+1 = 5·3+1 = 16, meeting q^{(mn−k)(h+1)} = 16 exactly.
        assert_eq!(code.len(), 16);
        assert!(code.min_rank_distance() >= 1);
        assert!(code.is_linear());
    }

    #[test]
    fn code_from_scattered_single_element() {
        let tower = make_tower(2, 1, 2, None).unwrap();
        let spread = desarguesian_spread(&tower, 2).unwrap();
        let one = PartialSpread::from_elements(
            spread.field().clone(),
            spread.ambient_dim(),
            spread.member_dim(),
            vec![spread.element(0)],
            SpreadKind::PartialDesarguesian,
            Some(tower.clone()),
            Some(vec![spread.rep(0).unwrap()]),
        )
        .unwrap();
        let u = construct_family(&tower, Family::EvenN { t: 1 }).unwrap();
        let code = code_from_scattered(&one, &u, 1).unwrap();
        assert_eq!(code.len(), 4);
    }
}
