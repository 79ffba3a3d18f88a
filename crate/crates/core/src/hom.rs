//! Homomorphisms between induced modules and the twisted centralizer code
//! `C(A, γ) = {X : AX = γXA}`.
//!
//! For `γ ≠ 0` the code is the space of F_q\[x\]-homomorphisms from F_q^n
//! under `γA` to F_q^n under `A`. Both modules are split into primary cyclic
//! pieces (the `γA` side is the decomposition of `A` with every prime
//! twisted), and each pair of pieces over the same prime contributes
//! `deg p · min(s, s')` basis matrices: a generating homomorphism `ϑ` and its
//! images under left multiplication by powers of `A`.
//!
//! For `γ = 0` the code is `{X : AX = 0}`, spanned by matrices with a single
//! nonzero column drawn from the socle of the `x`-primary component.

use crate::decomp::{decompose, elem_divisors, PrimaryCyclicDecomposition};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::{span_rref, MatF, VecF};
use crate::poly::{same_field, Poly};

/// One pair of cyclic pieces that carries homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBlockSpec {
    /// (component, generator) in the domain decomposition.
    pub domain: (usize, usize),
    /// (component, generator) in the codomain decomposition.
    pub codomain: (usize, usize),
    /// `θ(u) = multiplier(T) · v` generates the homs between the two pieces.
    pub multiplier: Poly,
    /// Number of basis matrices the pair contributes.
    pub block_dim: usize,
}

/// Where a basis matrix of a twisted centralizer code came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `A^power · ϑ` for the block's generating homomorphism `ϑ`.
    Hom { block: HomBlockSpec, power: usize },
    /// `γ = 0`: the matrix whose only nonzero column, `column`, is
    /// `A^{s-1} v` for generator `generator` of the `x`-component.
    Socle { column: usize, generator: (usize, usize) },
}

#[derive(Clone, Debug)]
pub struct TwistedCodeBasis {
    pub matrix: MatF,
    pub gamma: FieldElem,
    pub dimension: usize,
    pub basis: Vec<MatF>,
    pub provenance: Vec<Provenance>,
}

/// A nonzero summand `deg gcd(f^γ, g)` of the dimension formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTerm {
    /// The twisted elementary divisor `f^γ`.
    pub twisted: Poly,
    /// The elementary divisor `g`.
    pub divisor: Poly,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dimension: usize,
    /// Empty for `γ = 0`, where the dimension is `n · nullity(A)`.
    pub terms: Vec<DimTerm>,
}

/// Generator of `Hom(<u>, <v>)` for cyclic modules with orders `ou`, `ov`:
/// returns `r = ov / gcd(ou, ov)`, so that `u ↦ r·v` generates.
///
/// Requires `gcd(ou, ov)` to be the lower-degree one of the two orders (ties
/// going to `ou`), which always holds for powers of a single prime.
pub fn hom_cyclic_generator(ou: &Poly, ov: &Poly) -> Result<Poly> {
    let g = ou.gcd(ov)?;
    let smaller = if ou.deg() <= ov.deg() { ou } else { ov };
    if g != smaller.monic() {
        return Err(Error::Hypothesis(format!(
            "gcd({ou}, {ov}) = {g} is not the lower-degree order"
        )));
    }
    ov.monic().div_exact(&g)
}

/// Generating homomorphisms between two decomposed modules, in emission order,
/// each with its block of `block_dim` matrices `T^t ϑ`.
fn hom_blocks(
    domain: &PrimaryCyclicDecomposition,
    codomain: &PrimaryCyclicDecomposition,
) -> Result<Vec<(HomBlockSpec, Vec<MatF>)>> {
    let s = &domain.matrix;
    let t = &codomain.matrix;
    let field = s.field();
    let m = s.rows();
    let r = t.rows();

    // column offset of each domain generator inside the domain Krylov basis
    let mut offsets = Vec::new();
    let mut acc = 0;
    for c in &domain.components {
        let mut row = Vec::new();
        for g in &c.generators {
            row.push(acc);
            acc += g.dim();
        }
        offsets.push(row);
    }
    let needs_basis = codomain
        .components
        .iter()
        .any(|ck| domain.components.iter().any(|ci| ci.prime == ck.prime));
    if !needs_basis {
        return Ok(Vec::new());
    }
    let basis_inv = domain.krylov_basis()?.inverse()?;

    let mut out = Vec::new();
    for (k, ck) in codomain.components.iter().enumerate() {
        for (i, ci) in domain.components.iter().enumerate() {
            if ci.prime != ck.prime {
                continue;
            }
            let pdeg = ck.prime.deg();
            for (c, u) in ci.generators.iter().enumerate() {
                for (d, v) in ck.generators.iter().enumerate() {
                    let multiplier = hom_cyclic_generator(&u.order, &v.order)?;
                    let block_dim = pdeg * u.exponent.min(v.exponent);
                    // image of the domain Krylov basis: S^j u ↦ T^j θ(u)
                    let mut image = MatF::zeros(field, r, m);
                    let mut col = t.apply_poly(&multiplier, &v.vector)?;
                    for j in 0..u.dim() {
                        for (row, &x) in col.iter().enumerate() {
                            image.set(row, offsets[i][c] + j, x);
                        }
                        col = t.mul_vec(&col)?;
                    }
                    let mut theta = image.mul(&basis_inv)?;
                    let mut mats = Vec::with_capacity(block_dim);
                    for _ in 0..block_dim {
                        let next = t.mul(&theta)?;
                        mats.push(std::mem::replace(&mut theta, next));
                    }
                    let spec = HomBlockSpec { domain: (i, c), codomain: (k, d), multiplier, block_dim };
                    out.push((spec, mats));
                }
            }
        }
    }
    Ok(out)
}

/// F_q-basis of `{X : T X = X S}`, the homomorphisms from F_q^m under `S` to
/// F_q^r under `T`. Each `X` is `r × m`.
pub fn hom_basis(s: &MatF, t: &MatF) -> Result<Vec<MatF>> {
    if !same_field(s.field(), t.field()) {
        return Err(Error::FieldMismatch);
    }
    let domain = decompose(s)?;
    let codomain = decompose(t)?;
    Ok(hom_blocks(&domain, &codomain)?.into_iter().flat_map(|(_, mats)| mats).collect())
}

fn check_square(a: &MatF) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::Shape(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())))
    }
}

fn check_gamma(a: &MatF, gamma: FieldElem) -> Result<()> {
    a.field().elem(gamma.code() as u64).map(|_| ())
}

/// Dimension of `C(A, γ)` from elementary divisors alone, with the nonzero
/// summands `deg gcd(f^γ, g)` over all pairs of elementary divisors.
pub fn dimension_report(a: &MatF, gamma: FieldElem) -> Result<DimensionReport> {
    check_square(a)?;
    check_gamma(a, gamma)?;
    let n = a.rows();
    if gamma.is_zero() {
        return Ok(DimensionReport { dimension: n * a.nullity(), terms: Vec::new() });
    }
    let ed = elem_divisors(a)?;
    let twisted = ed.twist(gamma)?;
    let mut terms = Vec::new();
    for f in twisted.iter() {
        for g in ed.iter() {
            if f.prime != g.prime {
                continue;
            }
            let degree = f.prime.deg() * f.exponent.min(g.exponent);
            terms.push(DimTerm { twisted: f.value(), divisor: g.value(), degree });
        }
    }
    let dimension = terms.iter().map(|t| t.degree).sum();
    Ok(DimensionReport { dimension, terms })
}

/// `dim C(A, γ)`, computed without building a basis.
pub fn twisted_dim(a: &MatF, gamma: FieldElem) -> Result<usize> {
    Ok(dimension_report(a, gamma)?.dimension)
}

/// An explicit basis of `C(A, γ)` with the provenance of each element.
pub fn twisted_basis(a: &MatF, gamma: FieldElem) -> Result<TwistedCodeBasis> {
    check_square(a)?;
    check_gamma(a, gamma)?;
    let field = a.field();
    let n = a.rows();
    let dec = decompose(a)?;
    let mut basis = Vec::new();
    let mut provenance = Vec::new();

    if gamma.is_zero() {
        let x = Poly::x(field);
        if let Some(k) = dec.components.iter().position(|c| c.prime == x) {
            let socle: Vec<VecF> = dec.components[k]
                .generators
                .iter()
                .map(|g| a.apply_poly(&x.pow(g.exponent as u64 - 1), &g.vector))
                .collect::<Result<_>>()?;
            for column in 0..n {
                for (j, w) in socle.iter().enumerate() {
                    let mut e = MatF::zeros(field, n, n);
                    for (row, &v) in w.iter().enumerate() {
                        e.set(row, column, v);
                    }
                    basis.push(e);
                    provenance.push(Provenance::Socle { column, generator: (k, j) });
                }
            }
        }
    } else {
        let twisted = dec.twist(gamma)?;
        // report domain positions in terms of the decomposition of A
        let original_index = |i: usize| -> Result<usize> {
            let prime = twisted.components[i].prime.untwist(gamma)?;
            Ok(dec.components.iter().position(|c| c.prime == prime).expect("twist is a bijection"))
        };
        for (mut spec, mats) in hom_blocks(&twisted, &dec)? {
            spec.domain.0 = original_index(spec.domain.0)?;
            for (power, m) in mats.into_iter().enumerate() {
                basis.push(m);
                provenance.push(Provenance::Hom { block: spec.clone(), power });
            }
        }
    }
    Ok(TwistedCodeBasis { matrix: a.clone(), gamma, dimension: basis.len(), basis, provenance })
}

/// `AX = γXA`.
pub fn is_codeword(a: &MatF, gamma: FieldElem, x: &MatF) -> Result<bool> {
    check_square(a)?;
    check_gamma(a, gamma)?;
    if x.rows() != a.rows() || x.cols() != a.cols() {
        return Err(Error::Shape(format!(
            "codeword is {}x{}, expected {}x{}",
            x.rows(),
            x.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.mul(x)? == x.mul(a)?.scale(gamma))
}

impl TwistedCodeBasis {
    /// Rows of the RREF of the column-vectorized basis.
    pub fn canonical_span(&self) -> Result<MatF> {
        vectorized_span(&self.basis)
    }

    /// Membership of every element, count against the formula, and linear
    /// independence.
    pub fn self_check(&self) -> Result<BasisChecks> {
        let membership = self
            .basis
            .iter()
            .map(|x| is_codeword(&self.matrix, self.gamma, x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|ok| ok);
        let count = self.basis.len() == twisted_dim(&self.matrix, self.gamma)?;
        let independent = self.canonical_span()?.rows() == self.basis.len();
        Ok(BasisChecks { membership, count, independent })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisChecks {
    pub membership: bool,
    pub count: bool,
    pub independent: bool,
}

impl BasisChecks {
    pub fn all_passed(&self) -> bool {
        self.membership && self.count && self.independent
    }
}

/// RREF basis of the span of matrices, vectorized column by column.
pub fn vectorized_span(mats: &[MatF]) -> Result<MatF> {
    let Some(first) = mats.first() else {
        return Err(Error::Shape("cannot infer a shape from an empty list".into()));
    };
    let len = first.rows() * first.cols();
    let vecs: Vec<VecF> = mats.iter().map(|m| m.vec_columns()).collect();
    span_rref(first.field(), len, &vecs)
}

/// Whether two lists of equally shaped matrices span the same space.
pub fn same_span(a: &[MatF], b: &[MatF], rows: usize, cols: usize) -> Result<bool> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) => return Ok(b.iter().all(|m| m.is_zero())),
        (false, true) => return Ok(a.iter().all(|m| m.is_zero())),
        _ => {}
    }
    for m in a.iter().chain(b) {
        if (m.rows(), m.cols()) != (rows, cols) {
            return Err(Error::Shape("matrices of different shapes".into()));
        }
    }
    Ok(vectorized_span(a)? == vectorized_span(b)?)
}

/// Whether `x` lies in the span of `mats`.
pub fn in_span(mats: &[MatF], x: &MatF) -> Result<bool> {
    if mats.is_empty() {
        return Ok(x.is_zero());
    }
    let before = vectorized_span(mats)?.rows();
    let mut with = mats.to_vec();
    with.push(x.clone());
    Ok(vectorized_span(&with)?.rows() == before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldCtx};

    fn p(f: &Field, c: &[u32]) -> Poly {
        Poly::from_codes(f, c)
    }

    #[test]
    fn cyclic_generators() {
        let f3 = FieldCtx::prime(3).unwrap();
        let x = Poly::x(&f3);
        assert_eq!(hom_cyclic_generator(&x, &x.pow(2)).unwrap(), x);
        assert!(hom_cyclic_generator(&x.pow(2), &x.pow(2)).unwrap().is_one());
        let f5 = FieldCtx::prime(5).unwrap();
        let l = p(&f5, &[4, 1]);
        assert!(hom_cyclic_generator(&l.pow(2), &l).unwrap().is_one());
        // x and x+1 share no factor: gcd = 1 is not the smaller order
        let err = hom_cyclic_generator(&Poly::x(&f5), &p(&f5, &[1, 1])).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn nilpotent_hom_example() {
        let f3 = FieldCtx::prime(3).unwrap();
        let s = MatF::from_codes(&f3, &[[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
        let t = MatF::from_codes(&f3, &[[0, 0], [1, 0]]);
        let hb = hom_basis(&s, &t).unwrap();
        assert_eq!(hb.len(), 3);
        for x in &hb {
            assert_eq!(t.mul(x).unwrap(), x.mul(&s).unwrap());
        }
        assert!(in_span(&hb, &MatF::from_codes(&f3, &[[0, 0, 0], [1, 0, 0]])).unwrap());
        assert!(in_span(&hb, &MatF::from_codes(&f3, &[[0, 0, 1], [0, 1, 0]])).unwrap());
    }

    #[test]
    fn hom_trivial_cases() {
        let f5 = FieldCtx::prime(5).unwrap();
        let z = MatF::zeros(&f5, 3, 3);
        assert_eq!(hom_basis(&z, &z).unwrap().len(), 9);
        let s = MatF::companion(&p(&f5, &[1, 1, 1])).unwrap();
        let t = MatF::companion(&p(&f5, &[2, 0, 1])).unwrap();
        assert!(hom_basis(&s, &t).unwrap().is_empty());
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(hom_basis(&z, &MatF::zeros(&f3, 2, 2)).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn example_dimensions() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a1 = MatF::from_codes(&f3, &[[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]);
        assert_eq!(twisted_dim(&a1, f3.one()).unwrap(), 10);
        let f5 = FieldCtx::prime(5).unwrap();
        let a2 = MatF::from_codes(&f5, &[[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        assert_eq!(twisted_dim(&a2, f5.from_int(2)).unwrap(), 2);
        let a3 = MatF::from_codes(
            &f5,
            &[[1, 4, 2, 0, 4], [1, 1, 3, 2, 0], [4, 4, 3, 4, 1], [2, 4, 4, 3, 3], [3, 4, 1, 2, 1]],
        );
        let rep = dimension_report(&a3, f5.from_int(2)).unwrap();
        assert_eq!(rep.dimension, 3);
        let mut degs: Vec<usize> = rep.terms.iter().map(|t| t.degree).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
        assert_eq!(twisted_dim(&MatF::identity(&f5, 3), f5.from_int(2)).unwrap(), 0);
    }

    #[test]
    fn zero_gamma() {
        let f2 = FieldCtx::prime(2).unwrap();
        let z = MatF::zeros(&f2, 2, 2);
        let b = twisted_basis(&z, f2.zero()).unwrap();
        assert_eq!(b.dimension, 4);
        for x in &b.basis {
            let nonzero_cols = (0..2).filter(|&j| x.column(j).iter().any(|e| !e.is_zero())).count();
            assert_eq!(nonzero_cols, 1);
        }
        assert!(b.self_check().unwrap().all_passed());
        let f5 = FieldCtx::prime(5).unwrap();
        let inv = MatF::identity(&f5, 3);
        assert_eq!(twisted_basis(&inv, f5.zero()).unwrap().dimension, 0);
        assert_eq!(twisted_dim(&inv, f5.zero()).unwrap(), 0);
    }

    #[test]
    fn membership() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = MatF::from_codes(&f5, &[[1, 2], [3, 4]]);
        assert!(is_codeword(&a, f5.from_int(3), &MatF::zeros(&f5, 2, 2)).unwrap());
        assert!(is_codeword(&a, f5.one(), &MatF::identity(&f5, 2)).unwrap());
        assert!(!is_codeword(&a, f5.from_int(2), &MatF::identity(&f5, 2)).unwrap());
        assert!(is_codeword(&a, f5.one(), &MatF::zeros(&f5, 3, 3)).is_err());
    }

    #[test]
    fn eleven_block_dimension_table() {
        let a = crate::decomp::tests::eleven_block_companion();
        let f5 = a.field().clone();
        let rep = dimension_report(&a, f5.from_int(2)).unwrap();
        assert_eq!(rep.dimension, 9);
        let mut degs: Vec<usize> = rep.terms.iter().map(|t| t.degree).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 1, 2, 2, 2]);
        let b = twisted_basis(&a, f5.from_int(2)).unwrap();
        assert_eq!(b.dimension, 9);
        assert!(b.self_check().unwrap().all_passed());
    }

    #[test]
    fn provenance_blocks_match_gcd_degrees() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = MatF::from_codes(&f5, &[[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        let gamma = f5.from_int(2);
        let b = twisted_basis(&a, gamma).unwrap();
        let dec = decompose(&a).unwrap();
        for prov in &b.provenance {
            let Provenance::Hom { block, power } = prov else { panic!("expected hom provenance") };
            let u = &dec.components[block.domain.0].generators[block.domain.1];
            let v = &dec.components[block.codomain.0].generators[block.codomain.1];
            let g = u.order.twist(gamma).unwrap().gcd(&v.order).unwrap();
            assert_eq!(block.block_dim, g.deg());
            assert!(*power < block.block_dim);
        }
        // both basis elements come from the x+2 pieces into the (x+4)^2 piece
        assert_eq!(b.provenance.len(), 2);
    }
}
