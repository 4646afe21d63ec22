//! The Crapo–Rota machinery: the atom set 𝒜[h+1], the join-closure lattice
//! it generates, Möbius values, the characteristic polynomial, and the
//! critical exponent whose complement gives the maximum scattered dimension.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::guard;
use crate::scattered::{max_scattered_dimension, SearchMode};
use crate::spread::PartialSpread;
use crate::subspace::{enumerate_subspaces, SubspaceBasis};

/// 𝒜[h+1]: every (h+1)-dimensional subspace of every spread element.
/// Distinct elements of a partial spread share only {0}, so no dedup is
/// needed across elements; it is performed anyway for ad-hoc inputs.
pub fn atoms_of(spread: &PartialSpread, h: usize) -> Result<Vec<SubspaceBasis>> {
    let m = spread.member_dim();
    if h > m {
        return Err(Error::InvalidParameter("h must be at most m".into()));
    }
    if h == m {
        return Ok(vec![]);
    }
    let q = spread.field().order();
    let per_element = crate::counting::gauss_binomial(m as i64, (h + 1) as i64, q);
    let total = per_element * spread.len() as u64;
    guard::check_big("atom enumeration", &total, guard::ATOMS_GUARD)?;
    let mut atoms = Vec::new();
    let mut seen = HashSet::new();
    for i in 0..spread.len() {
        let s = spread.element(i);
        // (h+1)-subspaces of S: enumerate coefficient spaces in F_q^m and
        // map through S's basis
        for c in enumerate_subspaces(spread.field(), m, h + 1)? {
            let rows = crate::subspace::mat_mul(spread.field(), c.rows(), s.rows());
            let t = SubspaceBasis::from_generators(
                spread.field().clone(),
                spread.ambient_dim(),
                rows,
            )?;
            if seen.insert(t.clone()) {
                atoms.push(t);
            }
        }
    }
    atoms.sort();
    Ok(atoms)
}

/// The lattice 𝓛 generated by an atom set under join, with Möbius values
/// μ(0̂, V) for every element.
#[derive(Clone, Debug)]
pub struct LatticeL {
    ambient_dim: usize,
    q: u64,
    /// Sorted canonical elements; index 0 is the bottom {0}.
    elements: Vec<SubspaceBasis>,
    atoms: Vec<SubspaceBasis>,
    mobius: Vec<BigInt>,
}

impl LatticeL {
    pub fn elements(&self) -> &[SubspaceBasis] {
        &self.elements
    }
    pub fn atoms(&self) -> &[SubspaceBasis] {
        &self.atoms
    }
    pub fn mobius(&self) -> &[BigInt] {
        &self.mobius
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        false // bottom is always present
    }
}

/// Close the atoms under join and run the Möbius recursion
/// μ(V) = −Σ_{W < V} μ(W), μ({0}) = 1.
pub fn build_lattice(
    atoms: &[SubspaceBasis],
    field: &std::sync::Arc<crate::field::FieldSpec>,
    ambient_dim: usize,
) -> Result<LatticeL> {
    for a in atoms {
        if a.field() != field || a.ambient_dim() != ambient_dim {
            return Err(Error::AmbientMismatch("atom in wrong ambient".into()));
        }
    }
    let bottom = SubspaceBasis::zero(field.clone(), ambient_dim);
    let mut set: HashSet<SubspaceBasis> = HashSet::new();
    set.insert(bottom.clone());
    for a in atoms {
        set.insert(a.clone());
    }
    // fixed point: join every element with every atom until nothing new
    let mut frontier: Vec<SubspaceBasis> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for a in atoms {
                let j = v.join(a)?;
                if set.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        guard::check("lattice closure", set.len() as u128, guard::LATTICE_GUARD)?;
        frontier = next;
    }
    let mut elements: Vec<SubspaceBasis> = set.into_iter().collect();
    // sort by dimension then canonical form, so every strict predecessor of
    // an element appears before it
    elements.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    let mut mobius = vec![BigInt::zero(); elements.len()];
    mobius[0] = BigInt::one();
    for i in 1..elements.len() {
        let mut acc = BigInt::zero();
        for j in 0..i {
            if elements[j].dim() < elements[i].dim() && elements[i].contains(&elements[j]) {
                acc += &mobius[j];
            }
        }
        mobius[i] = -acc;
    }
    let mut atoms_sorted = atoms.to_vec();
    atoms_sorted.sort();
    atoms_sorted.dedup();
    Ok(LatticeL {
        ambient_dim,
        q: field.order(),
        elements,
        atoms: atoms_sorted,
        mobius,
    })
}

/// χ_𝓛(λ) = Σ_V μ(V) λ^{N − dim V}, as exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    /// coefficient of λ^e at index e (length N + 1).
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-descending coefficient list, e.g. "1 0 -5 0 4".
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn characteristic_polynomial(lattice: &LatticeL) -> CharPoly {
    let n = lattice.ambient_dim;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (v, mu) in lattice.elements.iter().zip(&lattice.mobius) {
        coeffs[n - v.dim()] += mu;
    }
    CharPoly { coeffs }
}

/// Least s ≥ 0 with χ(q^s) ≠ 0.
pub fn critical_exponent(lattice: &LatticeL) -> Result<usize> {
    let chi = characteristic_polynomial(lattice);
    let q = BigInt::from(lattice.q);
    let mut x = BigInt::one();
    for s in 0..=lattice.ambient_dim {
        if !chi.eval(&x).is_zero() {
            return Ok(s);
        }
        x *= &q;
    }
    Err(Error::VerificationFailed(
        "characteristic polynomial vanished at q^s for every s ≤ N".into(),
    ))
}

#[derive(Clone, Debug)]
pub struct CrapoRotaReport {
    pub lattice_size: usize,
    pub chi: CharPoly,
    pub critical_exponent: usize,
    /// N − critical exponent.
    pub lattice_max_dim: usize,
    /// exhaustive max over (𝒜,h)-scattered subspaces.
    pub search_max_dim: usize,
    pub equal: bool,
}

/// Both sides of the Crapo–Rota identity
/// max{dim U : U (𝒜,h)-scattered} = N − min{s : χ_𝓛(q^s) ≠ 0}.
pub fn verify_crapo_rota(spread: &PartialSpread, h: usize) -> Result<CrapoRotaReport> {
    let atoms = atoms_of(spread, h)?;
    let lattice = build_lattice(&atoms, spread.field(), spread.ambient_dim())?;
    let chi = characteristic_polynomial(&lattice);
    let s = critical_exponent(&lattice)?;
    let lattice_max_dim = spread.ambient_dim() - s;
    let search = max_scattered_dimension(spread, h, SearchMode::Exhaustive)?;
    let equal = lattice_max_dim == search.k_max;
    if !equal {
        return Err(Error::VerificationFailed(format!(
            "Crapo–Rota mismatch: lattice says {lattice_max_dim}, search found {}",
            search.k_max
        )));
    }
    Ok(CrapoRotaReport {
        lattice_size: lattice.len(),
        chi,
        critical_exponent: s,
        lattice_max_dim,
        search_max_dim: search.k_max,
        equal,
    })
}

/// Histogram of Möbius values, useful for reports.
pub fn mobius_histogram(lattice: &LatticeL) -> BTreeMap<BigInt, usize> {
    let mut map = BTreeMap::new();
    for mu in &lattice.mobius {
        *map.entry(mu.clone()).or_insert(0) += 1;
    }
    map
}
