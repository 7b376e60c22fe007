//! Arithmetic tables for small finite fields GF(p^e).
//!
//! Elements are dense indices `0..q`.  Index 0 is the additive identity and
//! index 1 the multiplicative identity.  For e > 1 an index encodes the
//! coefficient vector of a residue polynomial in base p: index
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` stands for
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` modulo the reduction polynomial.
//!
//! Every table is verified against the field axioms by exhaustive loops at
//! construction time, so downstream code may index without rechecking.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, stored as its dense index.  The default order ceiling of
/// 256 keeps this in range.
pub type Fe = u8;

/// Largest field order accepted by [`FieldTable::build`].
pub const DEFAULT_ORDER_CEILING: u64 = 256;

/// Lookup tables for one field GF(p^e).
pub struct FieldTable {
    p: u64,
    e: u32,
    q: u64,
    /// Monic reduction polynomial, coefficients `c_0..=c_e` with `c_e = 1`.
    /// Empty when e = 1 (prime fields reduce modulo p directly).
    reduction_poly: Vec<u8>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    /// `frob[j][x] = x^(p^j)` for j in 0..e.
    frob: Vec<Vec<Fe>>,
    generator: Fe,
}

/// A field automorphism `x -> x^(p^j)`.  The full automorphism group of
/// GF(p^e) consists of exactly the e Frobenius powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldAutomorphism {
    power: u32,
}

impl FieldAutomorphism {
    pub fn identity() -> Self {
        FieldAutomorphism { power: 0 }
    }

    pub fn power(&self) -> u32 {
        self.power
    }
}

impl FieldTable {
    /// Builds GF(p^e) with the default order ceiling.
    ///
    /// `poly`, when given, lists the coefficients `c_0, c_1, ..., c_e` of a
    /// monic irreducible reduction polynomial (so the last entry must be 1).
    /// When omitted and e > 1, the least irreducible monic polynomial is
    /// chosen, ordering candidates by the base-p integer encoding of their
    /// non-leading coefficients.  Prime fields ignore `poly`.
    pub fn build(p: u64, e: u32, poly: Option<&[u8]>) -> Result<Arc<FieldTable>> {
        Self::build_with_ceiling(p, e, poly, DEFAULT_ORDER_CEILING)
    }

    /// Same as [`build`](Self::build) with an explicit order ceiling.
    pub fn build_with_ceiling(
        p: u64,
        e: u32,
        poly: Option<&[u8]>,
        ceiling: u64,
    ) -> Result<Arc<FieldTable>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadPolynomial("extension degree must be >= 1".into()));
        }
        let q = (p as u128).pow(e);
        if q > ceiling as u128 || q > 256 {
            return Err(Error::OrderTooLarge {
                order: q.min(u64::MAX as u128) as u64,
                ceiling: ceiling.min(256),
            });
        }
        let q = q as u64;

        let reduction_poly = if e == 1 {
            if let Some(cs) = poly {
                if !cs.is_empty() {
                    // Prime fields reduce modulo p; a polynomial is noise.
                    let _ = cs;
                }
            }
            Vec::new()
        } else {
            match poly {
                Some(cs) => validate_reduction_poly(p, e, cs)?,
                None => default_reduction_poly(p, e),
            }
        };

        let table = build_tables(p, e, q, reduction_poly);
        table.verify_axioms();
        Ok(Arc::new(table))
    }

    /// Builds the field of order `q`, factoring `q = p^e` first.
    pub fn from_order(q: u64, poly: Option<&[u8]>) -> Result<Arc<FieldTable>> {
        let (p, e) = factor_prime_power(q)?;
        Self::build(p, e, poly)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field order q = p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Reduction polynomial coefficients `c_0..=c_e`; empty for prime fields.
    pub fn reduction_poly(&self) -> &[u8] {
        &self.reduction_poly
    }

    /// A fixed generator of the multiplicative group (the least index of
    /// multiplicative order q - 1).
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(|i| i as Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "zero has no multiplicative inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Fe, mut n: u64) -> Fe {
        let mut base = a;
        let mut acc: Fe = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The e distinct automorphisms `x -> x^(p^j)`, identity first.
    pub fn automorphisms(&self) -> Vec<FieldAutomorphism> {
        (0..self.e).map(|power| FieldAutomorphism { power }).collect()
    }

    /// Applies `sigma` to `x` via the precomputed Frobenius table.
    #[inline]
    pub fn apply_automorphism(&self, sigma: FieldAutomorphism, x: Fe) -> Fe {
        assert!(sigma.power < self.e, "automorphism power out of range");
        self.frob[sigma.power as usize][x as usize]
    }

    /// Composition `sigma . tau` (apply `tau` first).
    pub fn compose_automorphisms(
        &self,
        sigma: FieldAutomorphism,
        tau: FieldAutomorphism,
    ) -> FieldAutomorphism {
        FieldAutomorphism {
            power: (sigma.power + tau.power) % self.e,
        }
    }

    pub fn invert_automorphism(&self, sigma: FieldAutomorphism) -> FieldAutomorphism {
        FieldAutomorphism {
            power: (self.e - sigma.power) % self.e,
        }
    }

    /// Exhaustive check of the field axioms and the automorphism tables.
    /// Runs at construction; q <= 256 keeps the triple loop affordable.
    fn verify_axioms(&self) {
        let q = self.q as usize;
        for a in 0..q as u64 {
            let a = a as Fe;
            assert_eq!(self.add(a, 0), a, "additive identity");
            assert_eq!(self.mul(a, 1), a, "multiplicative identity");
            assert_eq!(self.add(a, self.neg(a)), 0, "additive inverse");
            if a != 0 {
                assert_eq!(self.mul(a, self.inv[a as usize]), 1, "multiplicative inverse");
            }
            for b in 0..q as u64 {
                let b = b as Fe;
                assert_eq!(self.add(a, b), self.add(b, a), "addition commutes");
                assert_eq!(self.mul(a, b), self.mul(b, a), "multiplication commutes");
                for c in 0..q as u64 {
                    let c = c as Fe;
                    assert_eq!(
                        self.add(self.add(a, b), c),
                        self.add(a, self.add(b, c)),
                        "addition associates"
                    );
                    assert_eq!(
                        self.mul(self.mul(a, b), c),
                        self.mul(a, self.mul(b, c)),
                        "multiplication associates"
                    );
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c)),
                        "multiplication distributes"
                    );
                }
            }
        }
        for j in 0..self.e as usize {
            let f = &self.frob[j];
            for a in 0..q {
                for b in 0..q {
                    let (a, b) = (a as Fe, b as Fe);
                    assert_eq!(
                        f[self.add(a, b) as usize],
                        self.add(f[a as usize], f[b as usize]),
                        "frobenius is additive"
                    );
                    assert_eq!(
                        f[self.mul(a, b) as usize],
                        self.mul(f[a as usize], f[b as usize]),
                        "frobenius is multiplicative"
                    );
                }
            }
        }
    }
}

impl std::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTable")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("reduction_poly", &self.reduction_poly)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors q as p^e with p prime, rejecting non-prime-powers.
fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::NotPrime(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}

/// Polynomials over GF(p) as little-endian coefficient vectors (index j holds
/// the coefficient of x^j).  Used only while building the tables.
fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(out)
}

fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(*m.last().unwrap(), p);
    while r.len() > dm {
        let coeff = (*r.last().unwrap() * lead_inv) % p;
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            let idx = j + shift;
            r[idx] = (r[idx] + p - (coeff * mj) % p) % p;
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    // No monic divisor of degree 1..=deg/2 means irreducible.
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32);
        for m in 0..count {
            let mut g = digits(m, p, d);
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Base-p digits of m, least significant first, padded to `len`.
fn digits(mut m: u128, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((m % p as u128) as u64);
        m /= p as u128;
    }
    out
}

fn default_reduction_poly(p: u64, e: u32) -> Vec<u8> {
    let count = (p as u128).pow(e);
    for m in 0..count {
        let mut f = digits(m, p, e as usize);
        f.push(1);
        if poly_is_irreducible(p, &f) {
            return f.iter().map(|&c| c as u8).collect();
        }
    }
    unreachable!("an irreducible monic polynomial of each degree exists");
}

fn validate_reduction_poly(p: u64, e: u32, cs: &[u8]) -> Result<Vec<u8>> {
    if cs.len() != e as usize + 1 {
        return Err(Error::BadPolynomial(format!(
            "expected {} coefficients for degree {}, got {}",
            e + 1,
            e,
            cs.len()
        )));
    }
    if cs[e as usize] != 1 {
        return Err(Error::BadPolynomial("polynomial must be monic".into()));
    }
    if cs.iter().any(|&c| c as u64 >= p) {
        return Err(Error::BadPolynomial(format!("coefficients must lie in 0..{p}")));
    }
    let f: Vec<u64> = cs.iter().map(|&c| c as u64).collect();
    if !poly_is_irreducible(p, &f) {
        return Err(Error::ReduciblePolynomial { p });
    }
    Ok(cs.to_vec())
}

fn build_tables(p: u64, e: u32, q: u64, reduction_poly: Vec<u8>) -> FieldTable {
    let qs = q as usize;
    let mut add = vec![0 as Fe; qs * qs];
    let mut mul = vec![0 as Fe; qs * qs];
    let mut neg = vec![0 as Fe; qs];
    let mut inv = vec![0 as Fe; qs];

    if e == 1 {
        for a in 0..q {
            neg[a as usize] = ((q - a) % q) as Fe;
            for b in 0..q {
                add[(a * q + b) as usize] = ((a + b) % q) as Fe;
                mul[(a * q + b) as usize] = ((a * b) % q) as Fe;
            }
        }
    } else {
        let modulus: Vec<u64> = reduction_poly.iter().map(|&c| c as u64).collect();
        let to_poly = |i: u64| digits(i as u128, p, e as usize);
        let from_poly = |cs: &[u64]| -> u64 {
            let mut acc = 0u64;
            for (j, &c) in cs.iter().enumerate().take(e as usize) {
                acc += c * p.pow(j as u32);
            }
            acc
        };
        for a in 0..q {
            let pa = to_poly(a);
            let na: Vec<u64> = pa.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = from_poly(&na) as Fe;
            for b in 0..q {
                let pb = to_poly(b);
                let sum: Vec<u64> = pa.iter().zip(&pb).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_poly(&sum) as Fe;
                let prod = poly_rem(p, &poly_mul(p, &pa, &pb), &modulus);
                let mut padded = prod;
                padded.resize(e as usize, 0);
                mul[(a * q + b) as usize] = from_poly(&padded) as Fe;
            }
        }
    }

    // Inverses by scanning the multiplication rows; every nonzero row of a
    // field contains 1 exactly once.
    for a in 1..q {
        for b in 1..q {
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as Fe;
                break;
            }
        }
        assert!(inv[a as usize] != 0 || mul[(a * q + 1) as usize] == 1);
    }

    let mut table = FieldTable {
        p,
        e,
        q,
        reduction_poly,
        add,
        mul,
        neg,
        inv,
        frob: Vec::new(),
        generator: 0,
    };

    let mut frob = Vec::with_capacity(e as usize);
    for j in 0..e {
        let exp = p.pow(j);
        let row: Vec<Fe> = (0..q).map(|x| table.pow(x as Fe, exp)).collect();
        frob.push(row);
    }
    table.frob = frob;

    table.generator = (1..q)
        .map(|x| x as Fe)
        .find(|&x| multiplicative_order(&table, x) == q - 1)
        .expect("the multiplicative group of a finite field is cyclic");

    table
}

fn multiplicative_order(f: &FieldTable, x: Fe) -> u64 {
    let mut acc = x;
    let mut n = 1;
    while acc != 1 {
        acc = f.mul(acc, x);
        n += 1;
    }
    n
}
