//! Arithmetic in GF(q), q = p^k.
//!
//! Elements are stored as a single integer code in `[0, q)`. For a prime field
//! the code is the residue itself. For an extension field the code packs the
//! coefficient vector `c_0 + c_1 y + ... + c_{k-1} y^{k-1}` (polynomial basis
//! modulo the field modulus) as base-`p` digits, `code = sum c_i p^i`. The code
//! is therefore a canonical representation and equality of codes is equality
//! of field elements.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Extension fields up to this order get precomputed addition and
/// multiplication tables.
const TABLE_LIMIT: u32 = 256;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

/// An element of some GF(q). Carries no reference to its field; every
/// operation goes through a [`FieldCtx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed integer code of this element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// The finite field GF(p^k).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over GF(p), constant term first, length k + 1. Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{}; modulus {:?})", self.p, self.k, self.modulus)
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({})", self.q)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Splits a prime power `q` into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p as u32, k))
}

impl FieldCtx {
    /// Builds GF(p^k). When `k > 1` and no modulus is supplied, the
    /// lexicographically least monic irreducible of degree `k` over GF(p) is
    /// used, comparing coefficient tuples from the constant term up.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("field order {p}^{k} is too large")))?;
        if k == 1 {
            if let Some(m) = modulus {
                if m.len() > 2 || m.len() == 2 && m[1] % p != 1 {
                    return Err(Error::InvalidModulus(
                        "a prime field takes no modulus (or a monic linear one)".into(),
                    ));
                }
            }
            return Ok(Arc::new(FieldCtx { p, k, q: p, modulus: Vec::new(), tables: None }));
        }
        let base = FieldCtx::new(p, 1, None)?;
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|c| c % p).collect();
                let poly = Poly::from_codes(&base, &m);
                if poly.degree() != Some(k as usize) || !poly.is_monic() {
                    return Err(Error::InvalidModulus(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !poly.is_irreducible()? {
                    return Err(Error::InvalidModulus("modulus is reducible".into()));
                }
                poly.coeffs().iter().map(|c| c.code()).collect()
            }
            None => least_irreducible(&base, k as usize),
        };
        let mut ctx = FieldCtx { p, k, q: q as u32, modulus, tables: None };
        if ctx.q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    pub fn prime(p: u32) -> Result<Field> {
        FieldCtx::new(p, 1, None)
    }

    /// Builds the field of order `q` with the default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldCtx::new(p, k, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The modulus over GF(p), constant term first. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Element from a packed code; fails if `code >= q`.
    pub fn elem(&self, code: u64) -> Result<FieldElem> {
        if code < self.q as u64 {
            Ok(FieldElem(code as u32))
        } else {
            Err(Error::InvalidElement(format!("{code} is not an element of {self}")))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from its coefficient vector over GF(p) (constant first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.k as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients given for an element of {self}",
                coeffs.len()
            )));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidElement(format!(
                    "coefficient {c} is not reduced modulo {}",
                    self.p
                )));
            }
            code = code * self.p as u64 + c as u64;
        }
        Ok(FieldElem(code as u32))
    }

    /// Coefficient vector over GF(p), length k.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut c = a.0;
        for _ in 0..self.k {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    /// Iterates over all q elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FieldElem((s % self.p as u64) as u32);
        }
        if let Some(t) = &self.tables {
            return FieldElem(t.add[(a.0 * self.q + b.0) as usize] as u32);
        }
        self.add_digits(a, b)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return FieldElem(self.p - a.0);
        }
        let mut code = 0u32;
        let mut c = a.0;
        let mut place = 1u32;
        for _ in 0..self.k {
            let d = c % self.p;
            code += ((self.p - d) % self.p) * place;
            c /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(code)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if let Some(t) = &self.tables {
            return FieldElem(t.mul[(a.0 * self.q + b.0) as usize] as u32);
        }
        self.mul_digits(a, b)
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn add_digits(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut code = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            code += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(code)
    }

    fn mul_digits(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let k = self.k as usize;
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // y^k = -(m_0 + ... + m_{k-1} y^{k-1})
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let t = &mut prod[d - k + i];
                *t = (*t + (p - c) * m as u64) % p;
            }
        }
        let mut code = 0u64;
        for &c in prod[..k].iter().rev() {
            code = code * p + c;
        }
        FieldElem(code as u32)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..self.q {
            for b in 0..self.q {
                let i = a as usize * q + b as usize;
                add[i] = self.add_digits(FieldElem(a), FieldElem(b)).0 as u16;
                mul[i] = self.mul_digits(FieldElem(a), FieldElem(b)).0 as u16;
            }
        }
        Tables { add, mul }
    }

    /// Human-readable element: the residue for prime fields, otherwise a
    /// polynomial in `a` such as `a+2`.
    pub fn format(&self, e: FieldElem) -> String {
        if self.k == 1 {
            return e.0.to_string();
        }
        let c = self.coeffs(e);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{ci}a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{ci}a^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Least monic irreducible of degree `k` over the prime field `base`.
fn least_irreducible(base: &Field, k: usize) -> Vec<u32> {
    let p = base.order() as u64;
    let count = p.pow(k as u32);
    for idx in 0..count {
        // c_0 is the most significant digit of idx, so idx order is lex order
        // on (c_0, c_1, ..., c_{k-1}).
        let mut digits = vec![0u32; k];
        let mut t = idx;
        for d in digits.iter_mut().rev() {
            *d = (t % p) as u32;
            t /= p;
        }
        digits.push(1);
        let poly = Poly::from_codes(base, &digits);
        if poly.is_irreducible().unwrap_or(false) {
            return digits;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
