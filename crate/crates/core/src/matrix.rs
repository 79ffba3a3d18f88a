//! Dense matrices over GF(q).
//!
//! Vectors are columns and kernels are right kernels. Matrices are stored row
//! major; [`MatF::vec_columns`] gives the column-by-column vectorization used
//! to view a matrix code as a length-`n²` linear code.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{same_field, Poly};

/// A column vector; its field is implied by the matrix or polynomial it is
/// used with.
pub type VecF = Vec<FieldElem>;

#[derive(Clone)]
pub struct MatF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl PartialEq for MatF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && same_field(&self.field, &other.field)
    }
}

impl Eq for MatF {}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatF {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<MatF> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.code() >= field.order()) {
            return Err(Error::InvalidElement(format!("code {} in {field}", bad.code())));
        }
        Ok(MatF { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows of element codes. Panics on ragged rows or
    /// out-of-range codes.
    pub fn from_codes<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> MatF {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend(row.as_ref().iter().map(|&x| field.elem(x as u64).unwrap()));
        }
        MatF { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatF {
        MatF { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> MatF {
        let mut m = MatF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &Field, rows: usize, columns: &[VecF]) -> Result<MatF> {
        let mut m = MatF::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!("column of length {} for {rows} rows", col.len())));
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> VecF {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    /// Rows as element codes.
    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.code()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    fn same_field(&self, other: &MatF) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    pub fn mul(&self, other: &MatF) -> Result<MatF> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatF::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] = f.add(out.data[base + j], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MatF) -> Result<MatF> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &MatF) -> Result<MatF> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &MatF,
        op: impl Fn(&Field, FieldElem, FieldElem) -> FieldElem,
    ) -> Result<MatF> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(&self.field, a, b)).collect();
        Ok(MatF { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: FieldElem) -> MatF {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        MatF { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> MatF {
        let mut out = MatF::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<VecF> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Column-by-column vectorization: entry `(i, j)` lands at `j * rows + i`.
    pub fn vec_columns(&self) -> VecF {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Inverse of [`MatF::vec_columns`].
    pub fn from_vec_columns(field: &Field, rows: usize, cols: usize, v: &[FieldElem]) -> Result<MatF> {
        if v.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", v.len())));
        }
        let mut m = MatF::zeros(field, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, v[j * rows + i]);
            }
        }
        Ok(m)
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel: one vector per free column (in column
    /// order) with that free variable set to 1 and the others to 0.
    pub fn kernel(&self) -> Vec<VecF> {
        let f = &self.field;
        let Rref { matrix: r, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[free] = FieldElem::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Result<MatF> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = MatF::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElem::ONE);
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return Err(Error::Singular);
        }
        let mut inv = MatF::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `f(A)` by Horner's rule.
    pub fn poly_eval(&self, p: &Poly) -> Result<MatF> {
        self.require_square()?;
        if !same_field(&self.field, p.field()) {
            return Err(Error::FieldMismatch);
        }
        let n = self.rows;
        let mut acc = MatF::zeros(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let x = self.field.add(acc.get(i, i), c);
                acc.set(i, i, x);
            }
        }
        Ok(acc)
    }

    /// `f(A) v` by Horner's rule on the vector.
    pub fn apply_poly(&self, p: &Poly, v: &[FieldElem]) -> Result<VecF> {
        self.require_square()?;
        let f = &self.field;
        let mut acc = vec![FieldElem::ZERO; self.rows];
        for &c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc)?;
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = f.add(*a, f.mul(c, x));
            }
        }
        Ok(acc)
    }

    /// The monic generator of `{f : f(A) v = 0}`, read off the first linear
    /// dependency in `v, Av, A²v, ...`. The zero vector has order 1.
    pub fn vector_order(&self, v: &[FieldElem]) -> Result<Poly> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        // Echelon rows (vector normalized at its pivot, combination of Krylov
        // vectors it equals).
        let mut basis: Vec<(usize, VecF, VecF)> = Vec::new();
        let mut krylov = v.to_vec();
        for t in 0..=n {
            let mut r = krylov.clone();
            let mut comb = vec![FieldElem::ZERO; t + 1];
            comb[t] = FieldElem::ONE;
            for (p, row, rc) in &basis {
                let c = r[*p];
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
                for (x, &y) in comb.iter_mut().zip(rc) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            match r.iter().position(|x| !x.is_zero()) {
                None => return Ok(Poly::new(f, comb)),
                Some(p) => {
                    let inv = f.inv(r[p])?;
                    r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    comb.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    basis.push((p, r, comb));
                }
            }
            krylov = self.mul_vec(&krylov)?;
        }
        unreachable!("n + 1 vectors in an n-dimensional space are dependent")
    }

    /// Least common multiple of the orders of the standard basis vectors.
    pub fn minimal_polynomial(&self) -> Result<Poly> {
        self.require_square()?;
        let mut m = Poly::one(&self.field);
        for i in 0..self.rows {
            let mut e = vec![FieldElem::ZERO; self.rows];
            e[i] = FieldElem::ONE;
            m = m.lcm(&self.vector_order(&e)?)?;
        }
        Ok(m)
    }

    /// `det(xI - A)`, via reduction to upper Hessenberg form.
    pub fn characteristic_polynomial(&self) -> Result<Poly> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            h.swap_rows(piv, j + 1);
            h.swap_cols(piv, j + 1);
            let inv = f.inv(h.get(j + 1, j))?;
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = f.sub(h.get(r, c), f.mul(u, h.get(j + 1, c)));
                    h.set(r, c, x);
                }
                for i in 0..n {
                    let x = f.add(h.get(i, j + 1), f.mul(u, h.get(i, r)));
                    h.set(i, j + 1, x);
                }
            }
        }
        // p[m] = charpoly of the leading m x m block
        let x = Poly::x(f);
        let mut p = vec![Poly::one(f)];
        for m in 0..n {
            let mut next = x.sub(&Poly::constant(f, h.get(m, m))).mul(&p[m]);
            let mut prod = FieldElem::ONE;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let c = f.mul(prod, h.get(i, m));
                next = next.sub(&p[i].scale(c));
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }

    /// Companion matrix of a monic `f`: ones on the subdiagonal and the
    /// negated low coefficients of `f` in the last column.
    pub fn companion(f: &Poly) -> Result<MatF> {
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotMonic("companion needs degree >= 1".into())),
        };
        if !f.is_monic() {
            return Err(Error::NotMonic(f.to_string()));
        }
        let field = f.field();
        let mut m = MatF::zeros(field, d, d);
        for i in 1..d {
            m.set(i, i - 1, FieldElem::ONE);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f.coeff(i)));
        }
        Ok(m)
    }

    pub fn block_diag(field: &Field, blocks: &[MatF]) -> Result<MatF> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatF::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if !same_field(field, &b.field) {
                return Err(Error::FieldMismatch);
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }
}

impl fmt::Debug for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatF[{}; {}x{}]", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for (j, &e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.format(e))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Display for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&e| self.field.format(e)).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Canonical basis (RREF rows) of the span of the given vectors.
pub fn span_rref(field: &Field, len: usize, vectors: &[VecF]) -> Result<MatF> {
    let mut m = MatF::zeros(field, vectors.len(), len);
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(Error::Shape(format!("vector of length {} in a span of length {len}", v.len())));
        }
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    let r = m.rref();
    let mut out = MatF::zeros(field, r.rank, len);
    for i in 0..r.rank {
        for j in 0..len {
            out.set(i, j, r.matrix.get(i, j));
        }
    }
    Ok(out)
}
