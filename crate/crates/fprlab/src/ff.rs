//! Small finite fields GF(p^k) and their extensions.
//!
//! A base field stores its prime, degree and monic irreducible modulus over
//! GF(p); elements are u64 indices encoding coefficient vectors in base p
//! (index 0 is zero, index 1 is one). Extensions GF(q^d) are built as
//! polynomial quotients directly over the base field, so base-field elements
//! embed as constants and no root-finding is ever needed.

use std::sync::Arc;

use crate::error::{Error, Result};

/// GF(p^k) with a deterministic modulus: the lexicographically least monic
/// irreducible of degree k over GF(p), verified by trial division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf {
    p: u64,
    k: usize,
    q: u64,
    /// Monic modulus coefficients over GF(p), constant term first, length k+1.
    modulus: Vec<u64>,
}

pub type FieldRef = Arc<Gf>;

impl Gf {
    pub fn new(p: u64, k: usize) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        if k == 0 || k > 8 {
            return Err(Error::Unsupported(format!(
                "field extension degree {k} outside 1..=8"
            )));
        }
        let q = (p as u128).pow(k as u32);
        if q > u64::MAX as u128 {
            return Err(Error::Overflow("field size"));
        }
        let modulus = least_irreducible(p, k);
        Ok(Arc::new(Gf {
            p,
            k,
            q: q as u64,
            modulus,
        }))
    }

    /// Field of size q = p^k, inferring the prime factorization.
    pub fn of_order(q: u64) -> Result<FieldRef> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Unsupported(format!("{q} is not a prime power")))?;
        Gf::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    fn decode(&self, x: u64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        let mut x = x;
        for c in v.iter_mut() {
            *c = x % self.p;
            x /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> u64 {
        let mut x = 0;
        for &c in v.iter().rev() {
            x = x * self.p + c % self.p;
        }
        x
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (va, vb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let va = self.decode(a);
        let neg: Vec<u64> = va.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&neg)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a as u128 * b as u128 % self.p as u128) as u64;
        }
        let (va, vb) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic modulus.
        for i in (self.k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = i - self.k + j;
                    prod[idx] = (prod[idx] + (self.p - m) * c) % self.p;
                }
            }
        }
        prod.truncate(self.k);
        self.encode(&prod)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::SingularMatrix);
        }
        // a^(q-2); q ≤ 2^63 so the exponent loop is ≤ 63 squarings.
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// A fixed primitive element: the least element generating the
    /// multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        let order = self.q - 1;
        let factors = distinct_prime_factors(order);
        'candidates: for c in 1..self.q {
            if c == 0 {
                continue;
            }
            for &f in &factors {
                if self.pow(c, order / f) == 1 {
                    continue 'candidates;
                }
            }
            return c;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    /// Encodes an integer (possibly negative) into the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        r as u64
    }
}

// ---------------------------------------------------------------------------
// Polynomials over a field, coefficient order: constant term first.
// ---------------------------------------------------------------------------

pub fn poly_trim(c: &mut Vec<u64>) {
    while c.len() > 1 && *c.last().unwrap() == 0 {
        c.pop();
    }
}

pub fn poly_deg(c: &[u64]) -> usize {
    let mut d = c.len();
    while d > 1 && c[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub fn poly_mul(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder by a non-zero divisor.
pub fn poly_divrem(f: &Gf, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = poly_deg(b);
    let lead_inv = f.inv(b[db]).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    if poly_deg(&rem) < db && !(db == 0) {
        return (vec![0], rem);
    }
    let mut quot = vec![0; rem.len().saturating_sub(db).max(1)];
    while poly_deg(&rem) >= db && !(rem.len() == 1 && rem[0] == 0) {
        let dr = poly_deg(&rem);
        let c = f.mul(rem[dr], lead_inv);
        if c == 0 {
            break;
        }
        let shift = dr - db;
        quot[shift] = f.add(quot[shift], c);
        for j in 0..=db {
            rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b[j]));
        }
        poly_trim(&mut rem);
        if dr == 0 {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

pub fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Monic irreducibility by trial division against all monic polynomials of
/// degree ≤ deg/2.
pub fn poly_is_irreducible(f: &Gf, a: &[u64]) -> bool {
    let d = poly_deg(a);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = f.q();
    for e in 1..=d / 2 {
        // Monic candidates of degree e.
        let count = q.pow(e as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(e + 1);
            let mut x = idx;
            for _ in 0..e {
                cand.push(x % q);
                x /= q;
            }
            cand.push(1);
            let (_, rem) = poly_divrem(f, a, &cand);
            if poly_is_zero(&rem) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree k over GF(p)
/// (ordering by the coefficient index, constant term least significant).
fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let fp = Gf {
        p,
        k: 1,
        q: p,
        modulus: vec![0, 1],
    };
    if k == 1 {
        return vec![0, 1]; // x itself; unused in arithmetic for k = 1
    }
    let count = p.pow(k as u32);
    for idx in 0..count {
        let mut cand = Vec::with_capacity(k + 1);
        let mut x = idx;
        for _ in 0..k {
            cand.push(x % p);
            x /= p;
        }
        cand.push(1);
        if poly_is_irreducible(&fp, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)");
}

// ---------------------------------------------------------------------------
// Extension fields GF(q^d) as polynomial quotients over a base Gf.
// ---------------------------------------------------------------------------

/// GF(q^d) over a base field, with elements as coefficient vectors over the
/// base. The modulus is the lexicographically least monic irreducible of
/// degree d over the base field.
#[derive(Debug, Clone)]
pub struct ExtField {
    pub base: FieldRef,
    pub d: usize,
    pub modulus: Vec<u64>,
}

pub type ExtElem = Vec<u64>;

impl ExtField {
    pub fn new(base: FieldRef, d: usize) -> ExtField {
        assert!(d >= 1);
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            let q = base.q();
            let count = (q as u128).pow(d as u32);
            let mut found = None;
            for idx in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    cand.push((x % q as u128) as u64);
                    x /= q as u128;
                }
                cand.push(1);
                if poly_is_irreducible(&base, &cand) {
                    found = Some(cand);
                    break;
                }
            }
            found.expect("irreducible of requested degree exists")
        };
        ExtField { base, d, modulus }
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.d]
    }

    pub fn one(&self) -> ExtElem {
        let mut v = vec![0; self.d];
        v[0] = 1;
        v
    }

    /// The residue class of y, a root of the modulus by construction.
    pub fn generator(&self) -> ExtElem {
        let mut v = vec![0; self.d];
        if self.d == 1 {
            // GF(q^1) = GF(q); the generator concept is unused here.
            v[0] = 0;
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn embed(&self, a: u64) -> ExtElem {
        let mut v = vec![0; self.d];
        v[0] = a;
        v
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.sub(x, y))
            .collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if self.d == 1 {
            return vec![self.base.mul(a[0], b[0])];
        }
        let mut prod = vec![0u64; 2 * self.d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(prod[i + j], self.base.mul(x, y));
            }
        }
        for i in (self.d..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.d {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = i - self.d + j;
                    let t = self.base.mul(m, c);
                    prod[idx] = self.base.sub(prod[idx], t);
                }
            }
        }
        prod.truncate(self.d);
        prod
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::SingularMatrix);
        }
        // a^(q^d - 2) by square and multiply.
        let qd = (self.base.q() as u128).pow(self.d as u32);
        let mut e = qd - 2;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes q = p^k with p prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut x = q;
            let mut k = 0;
            while x % p == 0 {
                x /= p;
                k += 1;
            }
            return if x == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_arithmetic() {
        let f = Gf::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        // x^2 + 1 is the least irreducible over GF(3): indices [1,0,1].
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for a in f.elements() {
            if a != 0 {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), 1);
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Gf::of_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_element_generates() {
        for q in [4u64, 5, 8, 9, 23] {
            let f = Gf::of_order(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                x = f.mul(x, g);
                seen.insert(x);
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn extension_field_inverse() {
        let f = Gf::new(2, 1).unwrap();
        let e = ExtField::new(f, 3); // GF(8) over GF(2)
        let y = e.generator();
        let y2 = e.mul(&y, &y);
        let prod = e.mul(&y2, &e.inv(&y2).unwrap());
        assert_eq!(prod, e.one());
    }

    #[test]
    fn generator_is_root_of_modulus() {
        let f = Gf::new(3, 1).unwrap();
        let e = ExtField::new(f.clone(), 2);
        // Evaluate the modulus at the generator inside the extension: zero.
        let y = e.generator();
        let mut acc = e.zero();
        let mut pow = e.one();
        for &c in &e.modulus.clone() {
            let term = e.mul(&e.embed(c), &pow);
            acc = e.add(&acc, &term);
            pow = e.mul(&pow, &y);
        }
        assert!(e.is_zero(&acc));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(23), Some((23, 1)));
        assert_eq!(prime_power(12), None);
    }
}
