//! Coding parameters `[n², k, d]` of a twisted centralizer code, with the
//! minimum Hamming distance found by exhaustive enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::hom::twisted_basis;
use crate::matrix::{MatF, VecF};

/// Default cap on the number of codewords `q^k` enumerated for `d`.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub length: usize,
    pub dimension: usize,
    /// `None` when not requested or when the code is zero.
    pub min_distance: Option<usize>,
}

/// Length and dimension of `C(A, γ)`, plus the minimum distance when
/// `enumerate_distance` is set and `q^k ≤ bound`.
pub fn code_params(a: &MatF, gamma: FieldElem, enumerate_distance: bool, bound: u64) -> Result<CodeParams> {
    let b = twisted_basis(a, gamma)?;
    let length = a.rows() * a.cols();
    let dimension = b.dimension;
    let min_distance = if enumerate_distance && dimension > 0 {
        let q = a.field().order() as u128;
        let count = q.checked_pow(dimension as u32).unwrap_or(u128::MAX);
        if count > bound as u128 {
            return Err(Error::EnumerationBound { count, bound });
        }
        let vecs: Vec<VecF> = b.basis.iter().map(|m| m.vec_columns()).collect();
        Some(min_weight(a, &vecs))
    } else {
        None
    };
    Ok(CodeParams { length, dimension, min_distance })
}

/// Minimum weight over all nonzero F_q-combinations of `gens`.
///
/// The code is walked as an F_p-space with basis `{y^j g_i}` (`y` the field
/// generator), using an odometer over the F_p digits: every step adds a single
/// basis vector, since wrapping a digit from `p-1` to `0` is also one
/// addition.
fn min_weight(a: &MatF, gens: &[VecF]) -> usize {
    let f = a.field();
    let p = f.characteristic();
    let len = gens[0].len();
    let y = if f.degree() > 1 { f.elem(p as u64).expect("p is the code of y") } else { f.one() };
    let mut fp_basis = Vec::new();
    for g in gens {
        let mut y_pow = f.one();
        for _ in 0..f.degree() {
            fp_basis.push(g.iter().map(|&x| f.mul(y_pow, x)).collect::<VecF>());
            y_pow = f.mul(y_pow, y);
        }
    }
    let mut cur: VecF = vec![FieldElem::ZERO; len];
    let mut weight = 0usize;
    let mut digits = vec![0u32; fp_basis.len()];
    let mut best = usize::MAX;
    loop {
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return best;
            }
            for (c, &x) in cur.iter_mut().zip(&fp_basis[pos]) {
                if x.is_zero() {
                    continue;
                }
                let was = !c.is_zero();
                *c = f.add(*c, x);
                match (was, !c.is_zero()) {
                    (false, true) => weight += 1,
                    (true, false) => weight -= 1,
                    _ => {}
                }
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if weight > 0 && weight < best {
            best = weight;
            if best == 1 {
                return best;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    /// Direct enumeration over F_q coefficient tuples.
    fn brute(a: &MatF, gamma: FieldElem) -> Option<usize> {
        let b = twisted_basis(a, gamma).unwrap();
        let f = a.field();
        let k = b.dimension;
        if k == 0 {
            return None;
        }
        let q = f.order() as usize;
        let mut best = usize::MAX;
        for idx in 1..q.pow(k as u32) {
            let mut acc = MatF::zeros(f, a.rows(), a.cols());
            let mut r = idx;
            for m in &b.basis {
                acc = acc.add(&m.scale(f.elem((r % q) as u64).unwrap())).unwrap();
                r /= q;
            }
            best = best.min(acc.weight());
        }
        Some(best)
    }

    #[test]
    fn examples() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a2 = MatF::from_codes(&f5, &[[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        let cp = code_params(&a2, f5.from_int(2), true, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(cp, CodeParams { length: 16, dimension: 2, min_distance: Some(1) });

        let f2 = FieldCtx::prime(2).unwrap();
        let cp = code_params(&MatF::identity(&f2, 2), f2.one(), true, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(cp, CodeParams { length: 4, dimension: 4, min_distance: Some(1) });

        let cp = code_params(&MatF::identity(&f5, 2), f5.from_int(2), true, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(cp, CodeParams { length: 4, dimension: 0, min_distance: None });
    }

    #[test]
    fn bound_enforced() {
        let f3 = FieldCtx::prime(3).unwrap();
        let err = code_params(&MatF::identity(&f3, 2), f3.one(), true, 80).unwrap_err();
        assert_eq!(err, Error::EnumerationBound { count: 81, bound: 80 });
        let cp = code_params(&MatF::identity(&f3, 2), f3.one(), false, 80).unwrap();
        assert_eq!(cp.min_distance, None);
    }

    #[test]
    fn agrees_with_brute_force() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f4 = FieldCtx::of_order(4).unwrap();
        let f3 = FieldCtx::prime(3).unwrap();
        let cases = [
            (MatF::from_codes(&f2, &[[1, 1, 0], [0, 1, 1], [1, 0, 1]]), f2.one()),
            (MatF::from_codes(&f2, &[[0, 1, 1], [1, 1, 0], [1, 0, 0]]), f2.one()),
            (MatF::from_codes(&f3, &[[0, 1, 0], [0, 0, 1], [1, 1, 0]]), f3.one()),
            (MatF::from_codes(&f3, &[[1, 2], [0, 2]]), f3.from_int(2)),
            (MatF::from_codes(&f4, &[[0, 1], [1, 1]]), f4.one()),
            (MatF::from_codes(&f4, &[[2, 1], [3, 0]]), f4.elem(3).unwrap()),
        ];
        for (a, g) in &cases {
            let cp = code_params(a, *g, true, DEFAULT_ENUMERATION_BOUND).unwrap();
            assert_eq!(cp.min_distance, brute(a, *g), "{a:?}");
        }
    }
}
