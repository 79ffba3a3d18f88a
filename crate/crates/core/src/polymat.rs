//! Matrices over GF(q)\[x\] and their Smith normal form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::MatF;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> PolyMat {
        PolyMat { field: field.clone(), rows, cols, data: vec![Poly::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMat {
        let mut m = PolyMat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    /// `diag(entries)`.
    pub fn diagonal(field: &Field, entries: &[Poly]) -> PolyMat {
        let mut m = PolyMat::zeros(field, entries.len(), entries.len());
        for (i, p) in entries.iter().enumerate() {
            m.set(i, i, p.clone());
        }
        m
    }

    /// The characteristic matrix `xI - A`.
    pub fn characteristic(a: &MatF) -> Result<PolyMat> {
        if !a.is_square() {
            return Err(Error::Shape("characteristic matrix of a non-square matrix".into()));
        }
        let f = a.field();
        let n = a.rows();
        let mut m = PolyMat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut p = Poly::constant(f, f.neg(a.get(i, j)));
                if i == j {
                    p = p.add(&Poly::x(f));
                }
                m.set(i, j, p);
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMat::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(other.get(k, j)));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return Ok(Poly::one(f));
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = Poly::one(f);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(Poly::zero(f));
                };
                m.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m.get(i, j).mul(m.get(k, k)).sub(&m.get(i, k).mul(m.get(k, j)));
                    m.set(i, j, t.div_exact(&prev)?);
                }
                m.set(i, k, Poly::zero(f));
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let t = self.get(dst, j).add(&c.mul(s));
            self.set(dst, j, t);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let t = self.get(i, dst).add(&c.mul(s));
            self.set(i, dst, t);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Poly) {
        for j in 0..self.cols {
            let t = self.get(r, j).mul(c);
            self.set(r, j, t);
        }
    }

    fn scale_col(&mut self, col: usize, c: &Poly) {
        for i in 0..self.rows {
            let t = self.get(i, col).mul(c);
            self.set(i, col, t);
        }
    }
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMat[{}; {}x{}]", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `D` diagonal, monic, and `d_i | d_{i+1}`. The inverses
/// of both transforms are tracked alongside them.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMat,
    pub d: PolyMat,
    pub v: PolyMat,
    pub u_inv: PolyMat,
    pub v_inv: PolyMat,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form of a square polynomial matrix with nonzero determinant.
///
/// The pivot is the nonzero entry of least degree in the active block (ties
/// broken topmost, then leftmost). Its row and column are cleared by
/// Euclidean division; a leftover entry not divisible by the pivot is folded
/// into the pivot row and the step repeats.
pub fn smith_normal_form(m: &PolyMat) -> Result<SmithForm> {
    if m.rows != m.cols {
        return Err(Error::Shape("Smith form is implemented for square matrices".into()));
    }
    let f = m.field.clone();
    let n = m.rows;
    let mut a = m.clone();
    let mut u = PolyMat::identity(&f, n);
    let mut u_inv = PolyMat::identity(&f, n);
    let mut v = PolyMat::identity(&f, n);
    let mut v_inv = PolyMat::identity(&f, n);

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if let Some(d) = a.get(i, j).degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Err(Error::Singular);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..n {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).divmod(&pivot)?;
                let nq = q.neg();
                a.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                u_inv.add_col(t, i, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).divmod(&pivot)?;
                let nq = q.neg();
                a.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                v_inv.add_row(t, j, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !pivot.divides(a.get(i, j))));
            match offender {
                Some(i) => {
                    let one = Poly::one(&f);
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    u_inv.add_col(i, t, &one.neg());
                }
                None => break,
            }
        }
        let lead = a.get(t, t).lead();
        let inv = Poly::constant(&f, f.inv(lead)?);
        a.scale_row(t, &inv);
        u.scale_row(t, &inv);
        u_inv.scale_col(t, &Poly::constant(&f, lead));
    }
    Ok(SmithForm { u, d: a, v, u_inv, v_inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn check(m: &PolyMat, s: &SmithForm) {
        let f = m.field();
        let n = m.rows();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), PolyMat::identity(f, n));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), PolyMat::identity(f, n));
        assert_eq!(s.u.det().unwrap().degree(), Some(0));
        assert_eq!(s.v.det().unwrap().degree(), Some(0));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert!(diag.iter().all(|d| d.is_monic()));
    }

    #[test]
    fn already_smith() {
        let f = FieldCtx::prime(3).unwrap();
        let m = PolyMat::diagonal(&f, &[Poly::one(&f), Poly::x(&f)]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.d, m);
        assert_eq!(s.u, PolyMat::identity(&f, 2));
        assert_eq!(s.v, PolyMat::identity(&f, 2));
    }

    #[test]
    fn j_minus_i_invariant_factors() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a = MatF::from_codes(&f3, &[[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]);
        let m = PolyMat::characteristic(&a).unwrap();
        let s = smith_normal_form(&m).unwrap();
        check(&m, &s);
        let p = |c: &[u32]| Poly::from_codes(&f3, c);
        assert_eq!(s.diagonal(), vec![p(&[1]), p(&[1, 1]), p(&[1, 1]), p(&[0, 1, 1])]);
    }

    #[test]
    fn companion_is_cyclic() {
        let f5 = FieldCtx::prime(5).unwrap();
        let g = Poly::from_codes(&f5, &[2, 0, 1, 3, 1]);
        let m = PolyMat::characteristic(&MatF::companion(&g).unwrap()).unwrap();
        let s = smith_normal_form(&m).unwrap();
        check(&m, &s);
        let d = s.diagonal();
        assert!(d[..3].iter().all(|p| p.is_one()));
        assert_eq!(d[3], g);
    }

    #[test]
    fn singular_input_is_rejected() {
        let f = FieldCtx::prime(2).unwrap();
        let m = PolyMat::diagonal(&f, &[Poly::x(&f), Poly::zero(&f)]);
        assert_eq!(smith_normal_form(&m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn non_divisible_diagonal_is_fixed() {
        // diag(x, x+1) has Smith form diag(1, x(x+1))
        let f = FieldCtx::prime(3).unwrap();
        let m = PolyMat::diagonal(&f, &[Poly::x(&f), Poly::from_codes(&f, &[1, 1])]);
        let s = smith_normal_form(&m).unwrap();
        check(&m, &s);
        assert_eq!(s.diagonal(), vec![Poly::one(&f), Poly::from_codes(&f, &[0, 1, 1])]);
    }

    #[test]
    fn bareiss_matches_charpoly() {
        let f7 = FieldCtx::prime(7).unwrap();
        let a = MatF::from_codes(&f7, &[[1, 2, 0], [3, 4, 5], [6, 0, 1]]);
        let det = PolyMat::characteristic(&a).unwrap().det().unwrap();
        assert_eq!(det, a.characteristic_polynomial().unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn smith_certificates(qi in 0usize..4, n in 1usize..6, codes in prop::collection::vec(any::<u32>(), 25)) {
                let q = [2u64, 3, 5, 4][qi];
                let f = FieldCtx::of_order(q).unwrap();
                let data = codes.iter().take(n * n).map(|&c| f.elem((c % q as u32) as u64).unwrap()).collect();
                let a = MatF::new(&f, n, n, data).unwrap();
                let m = PolyMat::characteristic(&a).unwrap();
                let s = smith_normal_form(&m).unwrap();
                check(&m, &s);
                let prod = s.diagonal().iter().fold(Poly::one(&f), |acc, d| acc.mul(d));
                prop_assert_eq!(prod, a.characteristic_polynomial().unwrap());
                prop_assert_eq!(s.diagonal().last().unwrap().clone(), a.minimal_polynomial().unwrap());
            }
        }
    }
}
