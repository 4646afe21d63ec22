//! Exact arithmetic in F_p, F_q = F_{p^e}, and towers F_q ⊂ F_{q^m}.
//!
//! Elements are integer codes. For F_{p^e} with polynomial basis the code of
//! Σ c_i t^i is Σ c_i p^i; for a tower top field F_{q^m} over F_q the code is
//! Σ c_i q^i where the c_i are base-field codes. Addition is therefore always
//! digitwise base-p on codes; multiplication goes through discrete-log tables
//! built at construction time.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on field order: everything in scope fits in q^m <= 2^20.
pub const FIELD_ORDER_CAP: u128 = 1 << 20;

/// A finite field with integer-coded elements and log/antilog tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    degree: u32,
    q: u64,
    /// Defining data, used for equality: [p, degree, modulus codes...].
    defn: Vec<u64>,
    /// Monic modulus coefficients (constant first) over the construction base.
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u32>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldSpec(p={}, q={}, modulus={:?})", self.p, self.q, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.defn == other.defn
    }
}
impl Eq for FieldSpec {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic of the construction base: either a prime field or an existing FieldSpec.
enum BaseOps<'a> {
    Prime(u64),
    Field(&'a FieldSpec),
}

impl BaseOps<'_> {
    fn order(&self) -> u64 {
        match self {
            BaseOps::Prime(p) => *p,
            BaseOps::Field(f) => f.q,
        }
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            BaseOps::Prime(p) => (a + b) % p,
            BaseOps::Field(f) => f.add(a, b),
        }
    }
    fn neg(&self, a: u64) -> u64 {
        match self {
            BaseOps::Prime(p) => (p - a % p) % p,
            BaseOps::Field(f) => f.neg(a),
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            BaseOps::Prime(p) => a * b % p,
            BaseOps::Field(f) => f.mul(a, b),
        }
    }
    fn inv(&self, a: u64) -> u64 {
        match self {
            BaseOps::Prime(p) => {
                // Fermat: a^(p-2) mod p.
                let mut r = 1u64;
                let mut base = a % p;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                r
            }
            BaseOps::Field(f) => f.inv(a),
        }
    }
}

/// Polynomials over the base, coefficient codes, constant term first, no
/// trailing-zero guarantees. All ops reduce nothing unless stated.
fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(base: &BaseOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            out[i + j] = base.add(out[i + j], base.mul(x, y));
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(base: &BaseOps, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &c) in m.iter().enumerate() {
                let t = base.mul(lead, c);
                r[shift + j] = base.add(r[shift + j], base.neg(t));
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= dm && r.len() > dm {
            unreachable!();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(base: &BaseOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // Make b monic for the remainder step.
        let linv = base.inv(*b.last().unwrap());
        let bm: Vec<u64> = b.iter().map(|&c| base.mul(c, linv)).collect();
        let r = poly_rem(base, &a, &bm);
        a = b;
        b = r;
    }
    a
}

/// x^(order^k) mod m, computed by square-and-multiply on the exponent order^k.
fn poly_pow_x(base: &BaseOps, mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut sq = poly_rem(base, &[0, 1], m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(base, &poly_mul(base, &result, &sq), m);
        }
        sq = poly_rem(base, &poly_mul(base, &sq, &sq), m);
        e >>= 1;
    }
    result
}

/// Irreducibility over the base field of a monic polynomial of degree d >= 1:
/// x^(q^d) == x mod f, and gcd(x^(q^(d/r)) - x, f) = 1 for every prime r | d.
fn poly_is_irreducible(base: &BaseOps, f: &[u64]) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = base.order() as u128;
    let xqd = poly_pow_x(base, q.pow(d as u32), f);
    let mut xqd_minus_x = xqd.clone();
    while xqd_minus_x.len() < 2 {
        xqd_minus_x.push(0);
    }
    xqd_minus_x[1] = base.add(xqd_minus_x[1], base.neg(1));
    poly_trim(&mut xqd_minus_x);
    if !xqd_minus_x.is_empty() {
        return false;
    }
    let mut n = d;
    let mut primes = vec![];
    let mut c = 2;
    while c * c <= n {
        if n % c == 0 {
            primes.push(c);
            while n % c == 0 {
                n /= c;
            }
        }
        c += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for r in primes {
        let mut g = poly_pow_x(base, q.pow((d / r) as u32), f);
        while g.len() < 2 {
            g.push(0);
        }
        g[1] = base.add(g[1], base.neg(1));
        poly_trim(&mut g);
        let gc = poly_gcd(base, &g, f);
        if gc.len() != 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree d over the base, by integer code of the
/// non-leading coefficient vector.
fn least_irreducible(base: &BaseOps, d: u32) -> Vec<u64> {
    let q = base.order();
    let total = (q as u128).pow(d);
    for code in 0..total {
        let mut f = Vec::with_capacity(d as usize + 1);
        let mut c = code;
        for _ in 0..d {
            f.push((c % q as u128) as u64);
            c /= q as u128;
        }
        f.push(1);
        if poly_is_irreducible(base, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

impl FieldSpec {
    fn build(base: &BaseOps, char_p: u64, degree_over_p: u32, modulus: Vec<u64>) -> Result<FieldSpec> {
        let d = modulus.len() - 1;
        let q128 = (base.order() as u128).pow(d as u32);
        if q128 > FIELD_ORDER_CAP {
            return Err(Error::FieldTooLarge(q128));
        }
        if !poly_is_irreducible(base, &modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let q = q128 as u64;
        let bq = base.order();
        let encode = |poly: &[u64]| -> u64 {
            let mut code = 0u64;
            for &c in poly.iter().rev() {
                code = code * bq + c;
            }
            code
        };
        let decode = |code: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(d);
            let mut c = code;
            for _ in 0..d {
                v.push(c % bq);
                c /= bq;
            }
            poly_trim(&mut v);
            v
        };
        let code_mul = |a: u64, b: u64| -> u64 {
            encode(&poly_rem(base, &poly_mul(base, &decode(a), &decode(b)), &modulus))
        };
        // Find a multiplicative generator by cycle length.
        let mut exp = Vec::new();
        let mut log = vec![0u32; q as usize];
        let mut found = false;
        for g in 2..q {
            exp.clear();
            let mut x = 1u64;
            loop {
                exp.push(x);
                x = code_mul(x, g);
                if x == 1 {
                    break;
                }
                if exp.len() as u64 >= q {
                    break;
                }
            }
            if exp.len() as u64 == q - 1 {
                found = true;
                break;
            }
        }
        if !found {
            // q == 2: the unit group is trivial.
            exp = vec![1];
        }
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut defn = vec![char_p, degree_over_p as u64];
        defn.extend_from_slice(&modulus);
        Ok(FieldSpec {
            p: char_p,
            degree: degree_over_p,
            q,
            defn,
            modulus,
            exp,
            log,
        })
    }

    /// F_{p^e} as F_p[t]/(modulus); default modulus is the least irreducible.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u64>>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let base = BaseOps::Prime(p);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                m
            }
            None => least_irreducible(&base, e),
        };
        Ok(Arc::new(Self::build(&base, p, e, modulus)?))
    }

    /// Degree-m extension of an existing field, with coefficient codes over it.
    pub fn extend(base: &Arc<FieldSpec>, m: u32, modulus: Option<Vec<u64>>) -> Result<Arc<FieldSpec>> {
        if m < 1 {
            return Err(Error::InvalidParameter("tower degree must be >= 1".into()));
        }
        let ops = BaseOps::Field(base);
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || *f.last().unwrap() != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "modulus must be monic of degree {m}"
                    )));
                }
                f
            }
            None => least_irreducible(&ops, m),
        };
        Ok(Arc::new(Self::build(&ops, base.p, base.degree * m, modulus)?))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut a, mut b) = (a, b);
        while a > 0 || b > 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let mut a = a;
        while a > 0 {
            let d = a % self.p;
            out += if d == 0 { 0 } else { (self.p - d) * mult };
            mult *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n.max(1);
        self.exp[i as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        if n == 1 {
            return 1;
        }
        let i = (n - self.log[a as usize] as u64) % n;
        self.exp[i as usize]
    }

    pub fn pow(&self, a: u64, e: u128) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1).max(1) as u128;
        let i = (self.log[a as usize] as u128 * (e % n)) % n;
        self.exp[i as usize]
    }

    /// A fixed multiplicative generator (q > 2).
    pub fn generator(&self) -> u64 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

/// The tower F_p ⊆ F_q ⊆ F_{q^m}, with the coordinate isomorphism
/// F_{q^m} ≅ F_q^m in the polynomial basis {1, t, ..., t^(m-1)}.
#[derive(Clone, Debug)]
pub struct FieldTower {
    base: Arc<FieldSpec>,
    top: Arc<FieldSpec>,
    m: u32,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.top == other.top && self.m == other.m
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }
    pub fn top(&self) -> &Arc<FieldSpec> {
        &self.top
    }
    pub fn m(&self) -> usize {
        self.m as usize
    }
    pub fn base_order(&self) -> u64 {
        self.base.order()
    }
    pub fn top_order(&self) -> u64 {
        self.top.order()
    }

    /// Expand x in F_{q^m} to its m base-field coordinates.
    pub fn coords(&self, x: u64) -> Vec<u64> {
        let q = self.base.order();
        let mut v = Vec::with_capacity(self.m as usize);
        let mut c = x;
        for _ in 0..self.m {
            v.push(c % q);
            c /= q;
        }
        v
    }

    /// Inverse of `coords`.
    pub fn uncoords(&self, v: &[u64]) -> u64 {
        let q = self.base.order();
        let mut code = 0u64;
        for &c in v.iter().rev() {
            debug_assert!(c < q);
            code = code * q + c;
        }
        code
    }

    /// The polynomial-basis element t^j.
    pub fn basis_element(&self, j: usize) -> u64 {
        assert!(j < self.m as usize);
        self.base.order().pow(j as u32)
    }

    /// x^(q^i), the i-th power of the tower Frobenius.
    pub fn frobenius(&self, x: u64, i: u32) -> u64 {
        let i = i % self.m;
        let e = (self.base.order() as u128).pow(i);
        self.top.pow(x, e)
    }

    /// Tr_{q^m/q}(x) = Σ x^(q^i); the result is a base-field code.
    pub fn relative_trace(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for i in 0..self.m {
            acc = self.top.add(acc, self.frobenius(x, i));
        }
        debug_assert!(acc < self.base.order());
        acc
    }

    /// True iff x lies in the embedded base field.
    pub fn in_base(&self, x: u64) -> bool {
        x < self.base.order()
    }

    /// Serialization tuple (p, e, m, base modulus, top modulus).
    pub fn descriptor(&self) -> (u64, u32, u32, Vec<u64>, Vec<u64>) {
        (
            self.base.characteristic(),
            self.base.degree(),
            self.m,
            self.base.modulus().to_vec(),
            self.top.modulus().to_vec(),
        )
    }
}

/// Build the tower F_p ⊆ F_{p^e} ⊆ F_{(p^e)^m}. Default moduli are the
/// lexicographically least irreducibles, so encodings are reproducible.
pub fn make_tower(
    p: u64,
    e: u32,
    m: u32,
    moduli: Option<(Vec<u64>, Vec<u64>)>,
) -> Result<FieldTower> {
    let (base_mod, top_mod) = match moduli {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    let base = FieldSpec::new(p, e, base_mod)?;
    let top = if m == 1 {
        base.clone()
    } else {
        FieldSpec::extend(&base, m, top_mod)?
    };
    Ok(FieldTower { base, top, m })
}
