//! Factorization of polynomials over GF(q) into monic irreducibles.
//!
//! Square-free decomposition, then distinct-degree splitting via
//! `x^{q^d} mod f`, then equal-degree splitting with Cantor–Zassenhaus. When
//! the random splitter gives up, small cases fall back to exhaustive search
//! over monic polynomials of the target degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::Poly;

/// Seed used by [`Poly::factor`].
pub const DEFAULT_FACTOR_SEED: u64 = 0x7cc0_5eed;

/// Exhaustive equal-degree search is allowed when `q^d` is at most this.
const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

const SPLIT_ATTEMPTS: usize = 256;

/// `constant * prod(factor^multiplicity)`, factors monic irreducible, pairwise
/// distinct and sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: FieldElem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.constant), |acc, (p, m)| acc.mul(&p.pow(*m as u64)))
    }
}

impl Poly {
    /// Rabin's test. Errors on constant input.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let field = self.field();
        let q = field.order() as u128;
        let x = Poly::x(field);
        // frob[i] = x^{q^i} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&f)?);
        for i in 1..=n {
            let next = frob[i - 1].powmod(q, &f)?;
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            let g = frob[n / r].sub(&x).gcd(&f)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full factorization with the default seed.
    pub fn factor(&self) -> Result<Factorization> {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
        self.factor_with(&mut rng)
    }

    /// Full factorization drawing Cantor–Zassenhaus randomness from `rng`.
    pub fn factor_with<R: Rng>(&self, rng: &mut R) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::FactorZero);
        }
        let field = self.field().clone();
        let constant = self.lead();
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        for (sqf, mult) in square_free(&self.monic())? {
            for (part, d) in distinct_degree(&sqf)? {
                for irr in equal_degree(&part, d, rng)? {
                    match factors.iter_mut().find(|(p, _)| *p == irr) {
                        Some((_, m)) => *m += mult,
                        None => factors.push((irr, mult)),
                    }
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        debug_assert_eq!(
            Factorization { constant, factors: factors.clone() }.product(&field),
            *self
        );
        Ok(Factorization { constant, factors })
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// For `f = g(x^p)` returns `h` with `h^p = f`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    // a ↦ a^{q/p} inverts the Frobenius a ↦ a^p
    let root_exp = (field.order() / field.characteristic()) as u64;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pow(c, root_exp))
        .collect();
    Poly::new(field, coeffs)
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i`, each `g_i` square-free and monic.
fn square_free(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in square_free(&pth_root(f))? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        for (g, m) in square_free(&pth_root(&c))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a square-free monic polynomial into `(product of all irreducible
/// factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.order() as u128;
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.powmod(q, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Result<Vec<Poly>> {
    let n = f.deg();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    for _ in 0..SPLIT_ATTEMPTS {
        if let Some(g) = split_once(f, d, rng)? {
            let h = f.div_exact(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h, d, rng)?);
            return Ok(out);
        }
    }
    let q = f.field().order() as u128;
    if q.checked_pow(d as u32).is_some_and(|c| c <= EXHAUSTIVE_LIMIT) {
        return Ok(exhaustive_split(f, d));
    }
    Err(Error::Hypothesis(format!("could not split {f} into degree-{d} factors")))
}

/// One Cantor–Zassenhaus attempt; a proper monic factor of `f` or `None`.
fn split_once<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Result<Option<Poly>> {
    let field = f.field();
    let q = field.order() as u128;
    let n = f.deg();
    let coeffs = (0..n).map(|_| field.elem(rng.gen_range(0..q as u64)).unwrap()).collect();
    let a = Poly::new(field, coeffs);
    if a.is_constant() {
        return Ok(None);
    }
    let g = a.gcd(f)?;
    if !g.is_one() {
        return Ok(Some(g));
    }
    let b = if q % 2 == 1 {
        // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
        let mut t = a.clone();
        let mut frob = a.clone();
        for _ in 1..d {
            frob = frob.powmod(q, f)?;
            t = t.mul(&frob).rem(f)?;
        }
        t.powmod((q - 1) / 2, f)?.sub(&Poly::one(field))
    } else {
        // absolute trace a + a^2 + ... + a^{2^{kd-1}}
        let bits = field.degree() as usize * d;
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..bits {
            t = t.mul(&t).rem(f)?;
            s = s.add(&t);
        }
        s
    };
    let g = b.gcd(f)?;
    Ok((!g.is_one() && g.deg() < n).then_some(g))
}

fn exhaustive_split(f: &Poly, d: usize) -> Vec<Poly> {
    let field = f.field();
    let q = field.order() as u64;
    let mut out = Vec::new();
    let mut rest = f.clone();
    for idx in 0..q.pow(d as u32) {
        if rest.deg() == 0 {
            break;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut t = idx;
        for _ in 0..d {
            coeffs.push(field.elem(t % q).unwrap());
            t /= q;
        }
        coeffs.push(FieldElem::ONE);
        let cand = Poly::new(field, coeffs);
        if let Ok(quot) = rest.div_exact(&cand) {
            out.push(cand);
            rest = quot;
        }
    }
    out
}
