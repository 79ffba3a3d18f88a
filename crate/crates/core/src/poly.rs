//! Dense univariate polynomials over GF(q) and the γ-twist.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// A polynomial over a finite field, coefficients stored constant term first
/// with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from element codes, constant term first.
    ///
    /// Panics if a code is not an element of `field`.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Poly {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c as u64).expect("coefficient out of range"))
            .collect();
        Poly::new(field, coeffs)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, FieldElem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: FieldElem, degree: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    /// `x - c`
    pub fn linear(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![field.neg(c), FieldElem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; only for places where the zero case is excluded
    /// or harmless.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElem::ONE
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn check(&self, other: &Poly) {
        assert!(same_field(&self.field, &other.field), "polynomials over different fields");
    }

    pub fn try_same_field(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.try_same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if sd < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElem::ZERO; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of an exact division; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Hypothesis(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.rem(self), Ok(r) if r.is_zero())
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.try_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.try_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Monic least common multiple, computed as `f*g / gcd(f, g)`.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(other)?;
        Ok(self.mul(other).div_exact(&g)?.monic())
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus` for a (possibly huge) exponent given as a u128.
    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Twist by a nonzero scalar: `γ^{deg f} f(x/γ)`, computed coefficientwise as
    /// `a_i ↦ a_i γ^{d-i}`. The zero polynomial twists to zero.
    pub fn twist(&self, gamma: FieldElem) -> Result<Poly> {
        if gamma.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let f = &self.field;
        let Some(d) = self.degree() else {
            return Ok(self.clone());
        };
        let mut coeffs = vec![FieldElem::ZERO; d + 1];
        let mut g = FieldElem::ONE;
        for i in (0..=d).rev() {
            coeffs[i] = f.mul(self.coeffs[i], g);
            g = f.mul(g, gamma);
        }
        Ok(Poly::new(f, coeffs))
    }

    /// Inverse of [`Poly::twist`]: `γ^{-deg f} f(γx)`, i.e. `a_i ↦ a_i γ^{i-d}`.
    pub fn untwist(&self, gamma: FieldElem) -> Result<Poly> {
        if gamma.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let f = &self.field;
        let Some(d) = self.degree() else {
            return Ok(self.clone());
        };
        let mut g = f.inv(f.pow(gamma, d as u64))?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let x = f.mul(c, g);
                g = f.mul(g, gamma);
                x
            })
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    /// Canonical ordering: by degree, then lexicographically on the coefficient
    /// codes from the constant term up.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn fmt_coeff(&self, c: FieldElem, with_one: bool) -> String {
        let s = self.field.format(c);
        if !with_one && c == FieldElem::ONE {
            String::new()
        } else if self.field.degree() > 1 && s.contains('+') {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => self.fmt_coeff(c, true),
                1 => format!("{}x", self.fmt_coeff(c, false)),
                _ => format!("{}x^{i}", self.fmt_coeff(c, false)),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.field)
    }
}

/// Formats `p^e` the way orders are usually written: `x`, `(x + 1)^2`, `x^3`.
pub fn format_power(p: &Poly, e: usize) -> String {
    if e == 1 {
        p.to_string()
    } else if p.codes() == [0, 1] {
        format!("x^{e}")
    } else {
        format!("({p})^{e}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
