//! Partial m-spreads of F_q^N: the Desarguesian spread, point
//! classification, validation, second-order closure, and the tight
//! constructions pairing a spread with a maximal scattered subspace.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FieldTower};
use crate::guard;
use crate::subspace::{rref, SubspaceBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpreadKind {
    Desarguesian,
    PartialDesarguesian,
    Constructed,
    Adhoc,
}

impl SpreadKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpreadKind::Desarguesian => "desarguesian",
            SpreadKind::PartialDesarguesian => "partial-desarguesian",
            SpreadKind::Constructed => "constructed",
            SpreadKind::Adhoc => "adhoc",
        }
    }

    pub fn parse(s: &str) -> Result<SpreadKind> {
        match s {
            "desarguesian" => Ok(SpreadKind::Desarguesian),
            "partial-desarguesian" => Ok(SpreadKind::PartialDesarguesian),
            "constructed" => Ok(SpreadKind::Constructed),
            "adhoc" => Ok(SpreadKind::Adhoc),
            _ => Err(Error::Parse(format!("unknown spread kind `{s}`"))),
        }
    }
}

/// Element storage. A full Desarguesian spread can have millions of
/// elements whose bases are cheap to recompute from their projective
/// representatives, so it is kept implicit; every other spread holds its
/// elements explicitly, sorted by canonical RREF.
#[derive(Clone, Debug)]
enum Store {
    Explicit {
        elements: Vec<SubspaceBasis>,
        /// Projective representatives in F_{q^m}^n aligned with `elements`,
        /// present for Desarguesian-derived spreads.
        reps: Option<Vec<Vec<u64>>>,
    },
    /// Full Desarguesian spread in canonical projective order: reps grouped
    /// by leading coordinate position, remaining coordinates counted as a
    /// big-endian base-q^m number.
    DesarguesianImplicit { n: usize, size: u64 },
}

#[derive(Clone, Debug)]
pub struct PartialSpread {
    field: Arc<FieldSpec>,
    ambient_dim: usize,
    m: usize,
    kind: SpreadKind,
    tower: Option<FieldTower>,
    store: Store,
}

/// Build the F_q-basis of the spread element ⟨v⟩_{F_{q^m}} for a projective
/// representative v ∈ F_{q^m}^n.
fn element_from_rep(tower: &FieldTower, n: usize, rep: &[u64]) -> SubspaceBasis {
    let m = tower.m();
    let top = tower.top();
    let rows: Vec<Vec<u64>> = (0..m)
        .map(|j| {
            let lambda = tower.basis_element(j);
            let mut row = Vec::with_capacity(m * n);
            for &c in rep {
                row.extend(tower.coords(top.mul(lambda, c)));
            }
            row
        })
        .collect();
    SubspaceBasis::from_generators(tower.base().clone(), m * n, rows)
        .expect("rep rows have ambient width")
}

fn implicit_rep_at(tower: &FieldTower, n: usize, index: u64) -> Vec<u64> {
    let qm = tower.top_order();
    let mut idx = index;
    for lead in 0..n {
        let block = qm.pow((n - 1 - lead) as u32);
        if idx < block {
            let mut rep = vec![0u64; n];
            rep[lead] = 1;
            for j in (lead + 1..n).rev() {
                rep[j] = idx % qm;
                idx /= qm;
            }
            return rep;
        }
        idx -= block;
    }
    unreachable!("index out of range");
}

fn implicit_index_of(tower: &FieldTower, n: usize, rep: &[u64]) -> u64 {
    let qm = tower.top_order();
    let lead = rep.iter().position(|&x| x != 0).expect("nonzero rep");
    debug_assert_eq!(rep[lead], 1);
    let idx: u64 = (0..lead).map(|t| qm.pow((n - 1 - t) as u32)).sum();
    let mut val = 0u64;
    for &d in &rep[lead + 1..] {
        val = val * qm + d;
    }
    idx + val
}

impl PartialSpread {
    /// Wrap an explicit element list. Checks dimensions and ambient
    /// compatibility; pairwise trivial intersection is checked by
    /// `validate`, not here, since it is quadratic in the element count.
    pub fn from_elements(
        field: Arc<FieldSpec>,
        ambient_dim: usize,
        m: usize,
        mut elements: Vec<SubspaceBasis>,
        kind: SpreadKind,
        tower: Option<FieldTower>,
        reps: Option<Vec<Vec<u64>>>,
    ) -> Result<PartialSpread> {
        if m == 0 || m > ambient_dim {
            return Err(Error::InvalidParameter(format!(
                "element dimension m={m} out of range for N={ambient_dim}"
            )));
        }
        for e in &elements {
            if e.field() != &field || e.ambient_dim() != ambient_dim {
                return Err(Error::AmbientMismatch("spread element in wrong ambient".into()));
            }
            if e.dim() != m {
                return Err(Error::InvalidParameter(format!(
                    "spread element of dimension {} (expected {m})",
                    e.dim()
                )));
            }
        }
        let reps = match reps {
            Some(reps) => {
                if reps.len() != elements.len() {
                    return Err(Error::InvalidParameter(
                        "representative list does not match element list".into(),
                    ));
                }
                let mut paired: Vec<(SubspaceBasis, Vec<u64>)> =
                    elements.into_iter().zip(reps).collect();
                paired.sort();
                paired.dedup_by(|a, b| a.0 == b.0);
                let (e, r): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
                elements = e;
                Some(r)
            }
            None => {
                elements.sort();
                elements.dedup();
                None
            }
        };
        Ok(PartialSpread { field, ambient_dim, m, kind, tower, store: Store::Explicit { elements, reps } })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn member_dim(&self) -> usize {
        self.m
    }
    pub fn kind(&self) -> SpreadKind {
        self.kind
    }
    pub fn tower(&self) -> Option<&FieldTower> {
        self.tower.as_ref()
    }

    pub fn len(&self) -> usize {
        match &self.store {
            Store::Explicit { elements, .. } => elements.len(),
            Store::DesarguesianImplicit { size, .. } => *size as usize,
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The i-th element; for implicit Desarguesian spreads the basis is
    /// rebuilt from the projective representative.
    pub fn element(&self, i: usize) -> SubspaceBasis {
        match &self.store {
            Store::Explicit { elements, .. } => elements[i].clone(),
            Store::DesarguesianImplicit { n, .. } => {
                let tower = self.tower.as_ref().unwrap();
                element_from_rep(tower, *n, &implicit_rep_at(tower, *n, i as u64))
            }
        }
    }

    pub fn rep(&self, i: usize) -> Option<Vec<u64>> {
        match &self.store {
            Store::Explicit { reps, .. } => reps.as_ref().map(|r| r[i].clone()),
            Store::DesarguesianImplicit { n, .. } => {
                Some(implicit_rep_at(self.tower.as_ref().unwrap(), *n, i as u64))
            }
        }
    }

    pub fn reps(&self) -> Option<Vec<Vec<u64>>> {
        (0..self.len()).map(|i| self.rep(i)).collect()
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = SubspaceBasis> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    /// Explicit, RREF-sorted copy of the element list.
    pub fn materialize(&self) -> Result<PartialSpread> {
        match &self.store {
            Store::Explicit { .. } => Ok(self.clone()),
            Store::DesarguesianImplicit { n, size } => {
                guard::check("materialize spread", *size as u128, guard::ENUM_GUARD)?;
                let tower = self.tower.as_ref().unwrap();
                let reps: Vec<Vec<u64>> =
                    (0..*size).map(|i| implicit_rep_at(tower, *n, i)).collect();
                let elements = reps.iter().map(|r| element_from_rep(tower, *n, r)).collect();
                PartialSpread::from_elements(
                    self.field.clone(),
                    self.ambient_dim,
                    self.m,
                    elements,
                    self.kind,
                    self.tower.clone(),
                    Some(reps),
                )
            }
        }
    }

    /// Index of an element equal to `s`, if present.
    pub fn position_of(&self, s: &SubspaceBasis) -> Option<usize> {
        match &self.store {
            Store::Explicit { elements, .. } => elements.binary_search(s).ok(),
            Store::DesarguesianImplicit { .. } => {
                if s.dim() != self.m {
                    return None;
                }
                let i = self.classifier().classify(&s.rows()[0])?;
                (self.element(i) == *s).then_some(i)
            }
        }
    }

    /// Best available classifier: normalization when the spread carries
    /// F_{q^m}-structure, exhaustive meets otherwise.
    pub fn classifier(&self) -> PointClassifier<'_> {
        self.classifier_with(if self.has_normalize_data() {
            ClassifyStrategy::DesarguesianNormalize
        } else {
            ClassifyStrategy::GenericMeet
        })
        .expect("fallback strategy is always available")
    }

    fn has_normalize_data(&self) -> bool {
        match &self.store {
            Store::DesarguesianImplicit { .. } => true,
            Store::Explicit { reps, .. } => self.tower.is_some() && reps.is_some(),
        }
    }

    pub fn classifier_with(&self, strategy: ClassifyStrategy) -> Result<PointClassifier<'_>> {
        let index = match strategy {
            ClassifyStrategy::GenericMeet => None,
            ClassifyStrategy::DesarguesianNormalize => {
                if !self.has_normalize_data() {
                    return Err(Error::InvalidParameter(
                        "spread lacks the F_{q^m}-structure needed to normalize".into(),
                    ));
                }
                match &self.store {
                    Store::DesarguesianImplicit { .. } => None,
                    Store::Explicit { reps, .. } => {
                        let map = reps
                            .as_ref()
                            .unwrap()
                            .iter()
                            .enumerate()
                            .map(|(i, r)| (r.clone(), i))
                            .collect();
                        Some(map)
                    }
                }
            }
        };
        Ok(PointClassifier { spread: self, strategy, index })
    }

    /// `q m n kind count`, then `count` blocks of m rows of N entries.
    /// The `n` column records N/m when m | N and 0 otherwise.
    pub fn to_text(&self) -> Result<String> {
        let n_col = if self.ambient_dim % self.m == 0 { self.ambient_dim / self.m } else { 0 };
        let mut s = format!(
            "{} {} {} {} {}\n",
            self.field.order(),
            self.m,
            n_col,
            self.kind.as_str(),
            self.len()
        );
        for e in self.iter_elements() {
            for row in e.rows() {
                let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                s.push_str(&parts.join(" "));
                s.push('\n');
            }
        }
        Ok(s)
    }

    pub fn from_text(field: Arc<FieldSpec>, text: &str) -> Result<PartialSpread> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty spread".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(Error::Parse("spread header must be `q m n kind count`".into()));
        }
        let q: u64 = toks[0].parse().map_err(|_| Error::Parse("bad q".into()))?;
        if q != field.order() {
            return Err(Error::Parse(format!(
                "field order mismatch: file says {q}, field is {}",
                field.order()
            )));
        }
        let m: usize = toks[1].parse().map_err(|_| Error::Parse("bad m".into()))?;
        let n: usize = toks[2].parse().map_err(|_| Error::Parse("bad n".into()))?;
        let kind = SpreadKind::parse(toks[3])?;
        let count: usize = toks[4].parse().map_err(|_| Error::Parse("bad count".into()))?;
        let mut ambient = None;
        let mut elements = Vec::with_capacity(count);
        for _ in 0..count {
            let mut rows = Vec::with_capacity(m);
            for _ in 0..m {
                let line = lines.next().ok_or_else(|| Error::Parse("missing element row".into()))?;
                let row: Vec<u64> = line
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry {t}"))))
                    .collect::<Result<_>>()?;
                if row.iter().any(|&x| x >= q) {
                    return Err(Error::Parse("entry out of field range".into()));
                }
                rows.push(row);
            }
            let width = rows[0].len();
            let amb = *ambient.get_or_insert(width);
            if amb != width || (n > 0 && width != m * n) {
                return Err(Error::Parse("inconsistent element width".into()));
            }
            let e = SubspaceBasis::from_generators(field.clone(), width, rows)?;
            if e.dim() != m {
                return Err(Error::Parse("element rows are not independent".into()));
            }
            elements.push(e);
        }
        let ambient = ambient
            .ok_or_else(|| Error::Parse("spread with no elements needs n > 0".into()))
            .or_else(|e| if n > 0 { Ok(m * n) } else { Err(e) })?;
        PartialSpread::from_elements(field, ambient, m, elements, kind, None, None)
    }

    /// Full report per the definition: partiality, fullness (Segre count),
    /// and normality of the pair-span tiling.
    pub fn validate(&self) -> Result<SpreadReport> {
        let s = self.len();
        guard::check("validate spread (pairwise)", (s as u128) * (s as u128), guard::ENUM_GUARD)?;
        let elements: Vec<SubspaceBasis> = self.iter_elements().collect();
        let mut is_partial = true;
        'outer: for i in 0..s {
            for j in i + 1..s {
                if elements[i].meet_dim(&elements[j])? != 0 {
                    is_partial = false;
                    break 'outer;
                }
            }
        }
        let q = BigUint::from(self.field.order());
        let full_size =
            (q.pow(self.ambient_dim as u32) - BigUint::one()) / (q.pow(self.m as u32) - BigUint::one());
        let is_full = is_partial
            && self.ambient_dim % self.m == 0
            && BigUint::from(s) == full_size;
        let normality = if !is_partial {
            Normality::NotNormal
        } else if self.ambient_dim <= 2 * self.m || s < 2 {
            // any two elements already span the ambient (or there is no
            // pair), so the tiling condition carries no information
            Normality::Vacuous
        } else {
            let mut normal = true;
            'pairs: for i in 0..s {
                for j in i + 1..s {
                    let span = elements[i].join(&elements[j])?;
                    let mut tiled = 0usize;
                    for t in &elements {
                        let d = t.meet_dim(&span)?;
                        if d == 0 {
                            continue;
                        }
                        if d < self.m {
                            normal = false;
                            break 'pairs;
                        }
                        tiled += 1;
                    }
                    let span_points = (q.pow(span.dim() as u32) - BigUint::one())
                        / (q.pow(self.m as u32) - BigUint::one());
                    if BigUint::from(tiled) != span_points {
                        normal = false;
                        break 'pairs;
                    }
                }
            }
            if normal { Normality::Normal } else { Normality::NotNormal }
        };
        Ok(SpreadReport { is_partial, is_full, normality })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    NotNormal,
    /// n ≤ 2 or fewer than two elements: the defining condition is empty.
    Vacuous,
}

#[derive(Clone, Copy, Debug)]
pub struct SpreadReport {
    pub is_partial: bool,
    pub is_full: bool,
    pub normality: Normality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyStrategy {
    DesarguesianNormalize,
    GenericMeet,
}

pub struct PointClassifier<'a> {
    spread: &'a PartialSpread,
    strategy: ClassifyStrategy,
    index: Option<HashMap<Vec<u64>, usize>>,
}

impl PointClassifier<'_> {
    pub fn strategy(&self) -> ClassifyStrategy {
        self.strategy
    }

    /// Index of the unique spread element containing the nonzero vector
    /// `v`, or None (always unique once the spread is validated partial).
    pub fn classify(&self, v: &[u64]) -> Option<usize> {
        match self.strategy {
            ClassifyStrategy::GenericMeet => {
                (0..self.spread.len()).find(|&i| self.spread.element(i).contains_vector(v))
            }
            ClassifyStrategy::DesarguesianNormalize => {
                let tower = self.spread.tower.as_ref().unwrap();
                let m = tower.m();
                let n = v.len() / m;
                let top = tower.top();
                let mut w: Vec<u64> = (0..n).map(|b| tower.uncoords(&v[b * m..(b + 1) * m])).collect();
                let lead = w.iter().position(|&x| x != 0)?;
                let scale = top.inv(w[lead]);
                for x in &mut w {
                    *x = top.mul(scale, *x);
                }
                match (&self.spread.store, &self.index) {
                    (Store::DesarguesianImplicit { n: nn, .. }, _) => {
                        debug_assert_eq!(*nn, n);
                        Some(implicit_index_of(tower, n, &w) as usize)
                    }
                    (_, Some(map)) => map.get(&w).copied(),
                    _ => unreachable!(),
                }
            }
        }
    }
}

/// The Desarguesian m-spread 𝒟 of F_q^{mn}: the F_q-shadows of the
/// projective points of F_{q^m}^n, in canonical projective order.
pub fn desarguesian_spread(tower: &FieldTower, n: usize) -> Result<PartialSpread> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    let m = tower.m();
    let qm = BigUint::from(tower.top_order());
    let size_big = (0..n).fold(
        <BigUint as num_traits::Zero>::zero(),
        |acc, t| acc + qm.pow((n - 1 - t) as u32),
    );
    let size = size_big
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("spread size exceeds u64".into()))?;
    Ok(PartialSpread {
        field: tower.base().clone(),
        ambient_dim: m * n,
        m,
        kind: SpreadKind::Desarguesian,
        tower: Some(tower.clone()),
        store: Store::DesarguesianImplicit { n, size },
    })
}

/// 𝒜^(2): all F_{q^m}-points on the F_{q^m}-lines spanned by pairs of
/// representatives of A. Contains A; requires tower metadata.
pub fn second_order_closure(a: &PartialSpread) -> Result<PartialSpread> {
    let tower = a
        .tower()
        .ok_or_else(|| Error::InvalidParameter("second-order closure needs a tower".into()))?
        .clone();
    let reps = a
        .reps()
        .ok_or_else(|| Error::InvalidParameter("second-order closure needs representatives".into()))?;
    let n = a.ambient_dim() / tower.m();
    let top = tower.top().clone();
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    let mut out_reps = Vec::new();
    let mut push = |rep: Vec<u64>, out: &mut Vec<Vec<u64>>| {
        if seen.insert(rep.clone(), ()).is_none() {
            out.push(rep);
        }
    };
    let normalize = |v: &[u64]| -> Vec<u64> {
        let lead = v.iter().position(|&x| x != 0).expect("nonzero point");
        let s = top.inv(v[lead]);
        v.iter().map(|&x| top.mul(s, x)).collect()
    };
    for r in &reps {
        push(normalize(r), &mut out_reps);
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            // the q^m + 1 points of the line ⟨v_i, v_j⟩: v_j and v_i + λ v_j
            for lambda in top.elements() {
                let v: Vec<u64> = reps[i]
                    .iter()
                    .zip(&reps[j])
                    .map(|(&a, &b)| top.add(a, top.mul(lambda, b)))
                    .collect();
                push(normalize(&v), &mut out_reps);
            }
        }
    }
    let elements: Vec<SubspaceBasis> =
        out_reps.iter().map(|r| element_from_rep(&tower, n, r)).collect();
    PartialSpread::from_elements(
        a.field().clone(),
        a.ambient_dim(),
        a.member_dim(),
        elements,
        SpreadKind::PartialDesarguesian,
        Some(tower),
        Some(out_reps),
    )
}

/// Elements of A not contained in `avoid`.
pub fn restrict_spread(a: &PartialSpread, avoid: &SubspaceBasis) -> Result<PartialSpread> {
    let mut elements = Vec::new();
    let mut reps = a.reps().map(|_| Vec::new());
    for i in 0..a.len() {
        let e = a.element(i);
        if !avoid.contains(&e) {
            if let Some(reps) = reps.as_mut() {
                reps.push(a.rep(i).unwrap());
            }
            elements.push(e);
        }
    }
    let kind = match a.kind() {
        SpreadKind::Desarguesian | SpreadKind::PartialDesarguesian => SpreadKind::PartialDesarguesian,
        k => k,
    };
    PartialSpread::from_elements(
        a.field().clone(),
        a.ambient_dim(),
        a.member_dim(),
        elements,
        kind,
        a.tower().cloned(),
        reps,
    )
}

/// Maximum over the spread of dim(U ∩ S), by per-element meets.
fn max_meet(spread: &PartialSpread, u: &SubspaceBasis) -> Result<usize> {
    let mut best = 0;
    for i in 0..spread.len() {
        best = best.max(u.meet_dim(&spread.element(i))?);
    }
    Ok(best)
}

fn embed_rows(rows: &[Vec<u64>], offset: usize, width: usize) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| {
            let mut row = vec![0u64; width];
            row[offset..offset + r.len()].copy_from_slice(r);
            row
        })
        .collect()
}

/// Base case: a Desarguesian spread 𝒜 of F_q^{2m} together with a subspace
/// U of dimension m + h − 1 that is (𝒜,h)-scattered, and the index of a
/// spread element S with dim(U ∩ S) = h − 1.
fn tight_base(tower: &FieldTower, h: usize) -> Result<(PartialSpread, SubspaceBasis, usize)> {
    let m = tower.m();
    let spread = desarguesian_spread(tower, 2)?;
    let base = tower.base();
    // U_0 = {(x, x^q) : x ∈ F_{q^m}} is scattered: a spread element through
    // (x, x^q) and (λx, λx^q) with λ ∉ F_q would force x^q/x = (λx)^q/(λx)
    let u0_rows: Vec<Vec<u64>> = (0..m)
        .map(|j| {
            let x = tower.basis_element(j);
            let mut row = tower.coords(x);
            row.extend(tower.coords(tower.frobenius(x, 1)));
            row
        })
        .collect();
    let u0 = SubspaceBasis::from_generators(base.clone(), 2 * m, u0_rows)?;
    if max_meet(&spread, &u0)? > 1 {
        return Err(Error::VerificationFailed(
            "Frobenius graph failed to be 1-scattered".into(),
        ));
    }
    let s_idx = (0..spread.len())
        .find(|&i| u0.meet_dim(&spread.element(i)).unwrap() == 0)
        .ok_or_else(|| Error::VerificationFailed("no spread element disjoint from U_0".into()))?;
    let s = spread.element(s_idx);
    let u1_rows: Vec<Vec<u64>> = s.rows()[..h - 1].to_vec();
    let mut gens = u0.rows().to_vec();
    gens.extend(u1_rows);
    let u = SubspaceBasis::from_generators(base.clone(), 2 * m, gens)?;
    if u.dim() != m + h - 1 {
        return Err(Error::VerificationFailed("base-case dimension defect".into()));
    }
    if max_meet(&spread, &u)? > h {
        return Err(Error::VerificationFailed("base case not h-scattered".into()));
    }
    if u.meet_dim(&s)? != h - 1 {
        return Err(Error::VerificationFailed("witness element has wrong meet".into()));
    }
    Ok((spread, u, s_idx))
}

/// An m-spread 𝒜 of F_q^{mn} possessing an (𝒜,h)-scattered subspace U of
/// dimension m(n−1) + h − 1; returns both, fully re-verified.
pub fn construct_tight_spread(
    tower: &FieldTower,
    n: usize,
    h: usize,
) -> Result<(PartialSpread, SubspaceBasis)> {
    let m = tower.m();
    if !(1..=m).contains(&h) || m < 2 || n < 2 {
        return Err(Error::InvalidParameter(
            "construct_tight_spread needs m ≥ 2, n ≥ 2, 1 ≤ h ≤ m".into(),
        ));
    }
    let (spread, u) = construct_tight_inner(tower, n, h)?;
    let report = spread.validate()?;
    if !report.is_full {
        return Err(Error::VerificationFailed("constructed family is not a full spread".into()));
    }
    if u.dim() != m * (n - 1) + h - 1 || max_meet(&spread, &u)? > h {
        return Err(Error::VerificationFailed("constructed subspace is not h-scattered".into()));
    }
    Ok((spread, u))
}

fn construct_tight_inner(
    tower: &FieldTower,
    n: usize,
    h: usize,
) -> Result<(PartialSpread, SubspaceBasis)> {
    let m = tower.m();
    let base = tower.base();
    if n == 2 {
        let (spread, u, _) = tight_base(tower, h)?;
        return Ok((spread.materialize()?, u));
    }
    let big_n = m * n;
    let full = desarguesian_spread(tower, n)?.materialize()?;

    // the base-case pair on X_2 = first two F_{q^m}-coordinates
    let (spread2, u2_small, s_idx2) = tight_base(tower, h)?;
    let u2 = SubspaceBasis::from_generators(base.clone(), big_n, embed_rows(u2_small.rows(), 0, big_n))?;
    let s = SubspaceBasis::from_generators(
        base.clone(),
        big_n,
        embed_rows(spread2.element(s_idx2).rows(), 0, big_n),
    )?;

    // X_{n-2} = remaining coordinates; U = U_2 ⊕ X_{n-2}
    let xn2_rows: Vec<Vec<u64>> = (2 * m..big_n)
        .map(|i| {
            let mut r = vec![0u64; big_n];
            r[i] = 1;
            r
        })
        .collect();
    let xn2 = SubspaceBasis::from_generators(base.clone(), big_n, xn2_rows)?;
    let u = u2.join(&xn2)?;

    // X_{n-1} = S ⊕ X_{n-2} and the induced spread 𝒟_{n-1}
    let xn1 = s.join(&xn2)?;
    let mut keep = Vec::new();
    let mut removed_any = false;
    for i in 0..full.len() {
        let e = full.element(i);
        if xn1.contains(&e) {
            removed_any = true;
        } else {
            keep.push(e);
        }
    }
    debug_assert!(removed_any);

    // recursive pair on F_q^{m(n-1)}, transported onto X_{n-1} by the
    // change of basis sending (U' extended) to (U ∩ X_{n-1} extended)
    let (spread_rec, u_rec) = construct_tight_inner(tower, n - 1, h)?;
    let w = u.meet(&xn1)?;
    if w.dim() != u_rec.dim() {
        return Err(Error::VerificationFailed("induction dimension mismatch".into()));
    }
    let d = m * (n - 1);
    let dom_basis = extend_basis(base, u_rec.rows(), &identity_rows(d));
    let cod_basis = extend_basis(base, w.rows(), xn1.rows());
    debug_assert_eq!(dom_basis.len(), d);
    debug_assert_eq!(cod_basis.len(), d);
    let dom_inv = crate::subspace::mat_inv(base, &dom_basis)
        .ok_or_else(|| Error::VerificationFailed("domain basis not invertible".into()))?;
    // φ acts on row vectors: x ↦ (x · dom_inv) · cod_basis
    let phi = crate::subspace::mat_mul(base, &dom_inv, &cod_basis);
    for i in 0..spread_rec.len() {
        let img = crate::subspace::mat_mul(base, spread_rec.element(i).rows(), &phi);
        keep.push(SubspaceBasis::from_generators(base.clone(), big_n, img)?);
    }
    let spread = PartialSpread::from_elements(
        base.clone(),
        big_n,
        m,
        keep,
        SpreadKind::Constructed,
        None,
        None,
    )?;
    Ok((spread, u))
}

fn identity_rows(d: usize) -> Vec<Vec<u64>> {
    (0..d)
        .map(|i| {
            let mut r = vec![0u64; d];
            r[i] = 1;
            r
        })
        .collect()
}

/// Extend `inner` to a basis of the row space of `pool` (which must contain
/// the inner space), greedily.
fn extend_basis(field: &Arc<FieldSpec>, inner: &[Vec<u64>], pool: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = inner.to_vec();
    let mut r = rref(field, rows.clone()).len();
    for cand in pool {
        let mut trial = rows.clone();
        trial.push(cand.clone());
        let nr = rref(field, trial).len();
        if nr > r {
            rows.push(cand.clone());
            r = nr;
        }
    }
    rows
}

/// Partial Desarguesian spread of size q^{m(n−1)} with an (𝒜,h)-scattered
/// subspace U = X_1 ⊕ H of dimension m(n−1) + h; re-verified before return.
pub fn partial_spread_tight(
    tower: &FieldTower,
    n: usize,
    h: usize,
) -> Result<(PartialSpread, SubspaceBasis)> {
    let m = tower.m();
    if !(1..=m).contains(&h) || n < 2 {
        return Err(Error::InvalidParameter(
            "partial_spread_tight needs n ≥ 2, 1 ≤ h ≤ m".into(),
        ));
    }
    let base = tower.base();
    let big_n = m * n;
    let full = desarguesian_spread(tower, n)?.materialize()?;
    // X_1 = {last F_{q^m}-coordinate zero}, partitioned by spread elements;
    // X_2 = the spread element with representative e_{n-1}
    let x1_rows = identity_rows(big_n)
        .into_iter()
        .take(m * (n - 1))
        .collect::<Vec<_>>();
    let x1 = SubspaceBasis::from_generators(base.clone(), big_n, x1_rows)?;
    let h_rows: Vec<Vec<u64>> = (0..h)
        .map(|j| {
            let mut r = vec![0u64; big_n];
            r[m * (n - 1) + j] = 1;
            r
        })
        .collect();
    let mut gens = x1.rows().to_vec();
    gens.extend(h_rows);
    let u = SubspaceBasis::from_generators(base.clone(), big_n, gens)?;
    let spread = restrict_spread(&full, &x1)?;
    let expect = (tower.base_order() as u128).pow((m * (n - 1)) as u32);
    if spread.len() as u128 != expect {
        return Err(Error::VerificationFailed("partial spread has wrong size".into()));
    }
    if u.dim() != m * (n - 1) + h || max_meet(&spread, &u)? > h {
        return Err(Error::VerificationFailed("X_1 ⊕ H is not h-scattered".into()));
    }
    Ok((spread, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_tower;

    #[test]
    fn desarguesian_sizes_and_partiality() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap();
        assert_eq!(d.len(), 5);
        let rep = d.validate().unwrap();
        assert!(rep.is_partial && rep.is_full);
        assert_eq!(rep.normality, Normality::Vacuous);

        let d3 = desarguesian_spread(&t, 3).unwrap();
        assert_eq!(d3.len(), 21);
        let rep3 = d3.validate().unwrap();
        assert!(rep3.is_partial && rep3.is_full);
        assert_eq!(rep3.normality, Normality::Normal);
    }

    #[test]
    fn desarguesian_n1_is_whole_space() {
        let t = make_tower(3, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.element(0).dim(), 2);
        assert_eq!(d.element(0), SubspaceBasis::full(t.base().clone(), 2));
    }

    #[test]
    fn every_vector_classified_once() {
        // exhaustive for q^N = 2^6
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 3).unwrap();
        let cls = d.classifier();
        assert_eq!(cls.strategy(), ClassifyStrategy::DesarguesianNormalize);
        let generic = d.classifier_with(ClassifyStrategy::GenericMeet).unwrap();
        let full = SubspaceBasis::full(t.base().clone(), 6);
        let mut counts = vec![0usize; d.len()];
        for v in full.vectors().skip(1) {
            let i = cls.classify(&v).expect("full spread covers all vectors");
            assert_eq!(generic.classify(&v), Some(i), "strategies disagree on {v:?}");
            assert!(d.element(i).contains_vector(&v));
            counts[i] += 1;
        }
        assert!(counts.iter().all(|&c| c == 3)); // q^m - 1 = 3 per element
        assert_eq!(cls.classify(&[0, 0, 0, 0, 0, 0]), None);
    }

    #[test]
    fn broken_partiality_detected() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 3).unwrap().materialize().unwrap();
        let mut elements: Vec<SubspaceBasis> = d.iter_elements().collect();
        // replace one element by a transversal plane sharing a vector with
        // another element
        let v = elements[0].rows()[0].clone();
        let mut w = elements[1].rows()[0].clone();
        w[5] ^= 1;
        elements[0] =
            SubspaceBasis::from_generators(t.base().clone(), 6, vec![v, w]).unwrap();
        let s = PartialSpread::from_elements(
            t.base().clone(),
            6,
            2,
            elements,
            SpreadKind::Adhoc,
            None,
            None,
        )
        .unwrap();
        assert!(!s.validate().unwrap().is_partial);
    }

    #[test]
    fn single_element_report() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let e = desarguesian_spread(&t, 2).unwrap().element(0);
        let s = PartialSpread::from_elements(
            t.base().clone(),
            4,
            2,
            vec![e],
            SpreadKind::Adhoc,
            None,
            None,
        )
        .unwrap();
        let rep = s.validate().unwrap();
        assert!(rep.is_partial && !rep.is_full);
        assert_eq!(rep.normality, Normality::Vacuous);
    }

    #[test]
    fn closure_of_two_points_is_a_line() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap().materialize().unwrap();
        // two points of PG(1, 4): the closure is the whole line, 5 points
        let two = PartialSpread::from_elements(
            t.base().clone(),
            4,
            2,
            vec![d.element(0), d.element(1)],
            SpreadKind::PartialDesarguesian,
            Some(t.clone()),
            Some(vec![d.rep(0).unwrap(), d.rep(1).unwrap()]),
        )
        .unwrap();
        let closed = second_order_closure(&two).unwrap();
        assert_eq!(closed.len(), 5);
        // closure of the full spread is itself
        let closed_full = second_order_closure(&d).unwrap();
        assert_eq!(closed_full.len(), d.len());
        // closure of one point is itself
        let one = PartialSpread::from_elements(
            t.base().clone(),
            4,
            2,
            vec![d.element(3)],
            SpreadKind::PartialDesarguesian,
            Some(t.clone()),
            Some(vec![d.rep(3).unwrap()]),
        )
        .unwrap();
        assert_eq!(second_order_closure(&one).unwrap().len(), 1);
    }

    #[test]
    fn restriction_cases() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap().materialize().unwrap();
        let zero = SubspaceBasis::zero(t.base().clone(), 4);
        assert_eq!(restrict_spread(&d, &zero).unwrap().len(), 5);
        let full = SubspaceBasis::full(t.base().clone(), 4);
        assert_eq!(restrict_spread(&d, &full).unwrap().len(), 0);
        let one = d.element(2);
        assert_eq!(restrict_spread(&d, &one).unwrap().len(), 4);
    }

    #[test]
    fn tight_constructions_small() {
        let t = make_tower(2, 1, 2, None).unwrap();
        for h in [1usize, 2] {
            let (a, u) = construct_tight_spread(&t, 2, h).unwrap();
            assert_eq!(a.len(), 5);
            assert_eq!(u.dim(), 2 + h - 1);
            let (pa, pu) = partial_spread_tight(&t, 2, h).unwrap();
            assert_eq!(pa.len(), 4); // q^{m(n-1)} = 2^2
            assert_eq!(pu.dim(), 2 + h);
            assert!(max_meet(&pa, &pu).unwrap() <= h);
        }
        // h = m degenerate: U = X, every element meets U in dim m
        let (pa, pu) = partial_spread_tight(&t, 2, 2).unwrap();
        assert_eq!(pu.dim(), 4);
        for i in 0..pa.len() {
            assert_eq!(pu.meet_dim(&pa.element(i)).unwrap(), 2);
        }
    }

    #[test]
    fn tight_construction_inductive() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let (a, u) = construct_tight_spread(&t, 3, 1).unwrap();
        assert_eq!(a.len(), 21);
        assert_eq!(u.dim(), 4);
        assert!(max_meet(&a, &u).unwrap() <= 1);
    }

    #[test]
    fn spread_text_roundtrip() {
        let t = make_tower(2, 1, 2, None).unwrap();
        let d = desarguesian_spread(&t, 2).unwrap().materialize().unwrap();
        let text = d.to_text().unwrap();
        let back = PartialSpread::from_text(t.base().clone(), &text).unwrap();
        assert_eq!(back.len(), 5);
        let orig: Vec<_> = d.iter_elements().collect();
        let parsed: Vec<_> = back.iter_elements().collect();
        assert_eq!(orig, parsed);
        assert_eq!(back.kind(), SpreadKind::Desarguesian);
    }

    #[test]
    fn implicit_rep_roundtrip() {
        let t = make_tower(2, 1, 2, None).unwrap();
        for n in [1usize, 2, 3] {
            let d = desarguesian_spread(&t, n).unwrap();
            for i in 0..d.len() {
                let rep = implicit_rep_at(&t, n, i as u64);
                assert_eq!(implicit_index_of(&t, n, &rep), i as u64);
            }
        }
    }
}
