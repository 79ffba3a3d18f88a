//! Brute-force reference for `C(A, γ)`: the kernel of the `n² × n²` operator
//! `I⊗A − γ(Aᵀ⊗I)` acting on column-by-column vectorizations, so that
//! `vec(AX − γXA) = (I⊗A − γ·Aᵀ⊗I)·vec(X)`.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::MatF;

/// Largest `n²` the oracle accepts without an explicit override.
pub const ORACLE_GUARD: usize = 4096;

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &MatF, b: &MatF) -> Result<MatF> {
    if !crate::poly::same_field(a.field(), b.field()) {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = MatF::zeros(f, ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, f.mul(x, b.get(k, l)));
                }
            }
        }
    }
    Ok(out)
}

/// The operator `I⊗A − γ(Aᵀ⊗I)`.
pub fn sylvester_operator(a: &MatF, gamma: FieldElem) -> Result<MatF> {
    if !a.is_square() {
        return Err(Error::Shape(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let f = a.field();
    f.elem(gamma.code() as u64)?;
    let n = a.rows();
    let mut op = MatF::zeros(f, n * n, n * n);
    // entry (j·n+i, l·n+k) = δ_jl A[i][k] − γ A[l][j] δ_ik
    for j in 0..n {
        for i in 0..n {
            let row = j * n + i;
            for k in 0..n {
                op.set(row, j * n + k, a.get(i, k));
            }
            for l in 0..n {
                let col = l * n + i;
                let v = f.sub(op.get(row, col), f.mul(gamma, a.get(l, j)));
                op.set(row, col, v);
            }
        }
    }
    Ok(op)
}

fn guard(n: usize, allow_large: bool) -> Result<()> {
    if n * n > ORACLE_GUARD && !allow_large {
        return Err(Error::OracleTooLarge { size: n * n });
    }
    Ok(())
}

/// Canonical kernel basis of the Sylvester operator, reshaped to `n × n`.
/// Refuses `n² > 4096` unless `allow_large`.
pub fn oracle_kernel(a: &MatF, gamma: FieldElem, allow_large: bool) -> Result<Vec<MatF>> {
    guard(a.rows(), allow_large)?;
    let n = a.rows();
    sylvester_operator(a, gamma)?
        .kernel()
        .iter()
        .map(|v| MatF::from_vec_columns(a.field(), n, n, v))
        .collect()
}

/// `dim C(A, γ)` as the nullity of the Sylvester operator.
pub fn oracle_nullity(a: &MatF, gamma: FieldElem, allow_large: bool) -> Result<usize> {
    guard(a.rows(), allow_large)?;
    Ok(sylvester_operator(a, gamma)?.nullity())
}
