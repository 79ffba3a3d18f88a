//! Primary cyclic decomposition of F_q^n as the F_q\[x\]-module induced by a
//! square matrix.
//!
//! The invariant-factor generators come from the Smith form of `xI - A`: if
//! `U (xI - A) V = D`, the j-th column of `U⁻¹`, read as a polynomial vector
//! and pushed through `f(x) e_i ↦ f(A) e_i`, generates a cyclic summand of
//! order `d_j`. Each such generator is then split along the prime-power
//! factors of `d_j`.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::{MatF, VecF};
use crate::poly::{format_power, Poly};
use crate::polymat::{smith_normal_form, PolyMat};

/// A generator `v` of a cyclic summand with prime-power order `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGenerator {
    pub vector: VecF,
    pub prime: Poly,
    pub exponent: usize,
    pub order: Poly,
}

impl CyclicGenerator {
    /// F_q-dimension of the cyclic summand.
    pub fn dim(&self) -> usize {
        self.order.deg()
    }
}

/// All generators belonging to one irreducible, by nonincreasing exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub prime: Poly,
    pub generators: Vec<CyclicGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryCyclicDecomposition {
    /// The matrix whose action defines the module.
    pub matrix: MatF,
    /// Sorted by prime, in canonical polynomial order.
    pub components: Vec<PrimaryComponent>,
    pub minimal_polynomial: Poly,
    pub characteristic_polynomial: Poly,
}

/// One elementary divisor `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemDiv {
    pub prime: Poly,
    pub exponent: usize,
}

impl ElemDiv {
    pub fn value(&self) -> Poly {
        self.prime.pow(self.exponent as u64)
    }
}

impl std::fmt::Display for ElemDiv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_power(&self.prime, self.exponent))
    }
}

/// Elementary divisors as a multiset, stored sorted (prime order, then
/// exponent descending) so that equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemDivMultiset(Vec<ElemDiv>);

impl ElemDivMultiset {
    pub fn new(mut divisors: Vec<ElemDiv>) -> Self {
        divisors.sort_by(|a, b| {
            a.prime.canonical_cmp(&b.prime).then_with(|| b.exponent.cmp(&a.exponent))
        });
        ElemDivMultiset(divisors)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ElemDiv> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The multiset `{f^γ : f ∈ self}`.
    pub fn twist(&self, gamma: FieldElem) -> Result<ElemDivMultiset> {
        let divisors = self
            .0
            .iter()
            .map(|e| Ok(ElemDiv { prime: e.prime.twist(gamma)?, exponent: e.exponent }))
            .collect::<Result<_>>()?;
        Ok(ElemDivMultiset::new(divisors))
    }
}

/// Outcome of the structural checks on a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificates {
    /// The Krylov vectors of all generators form a basis of F_q^n.
    pub direct_sum: bool,
    /// Every generator has exactly its recorded order.
    pub orders_exact: bool,
    /// The product of all orders is the characteristic polynomial.
    pub product_is_charpoly: bool,
    /// The lcm of all orders is the minimal polynomial.
    pub lcm_is_minimal: bool,
}

impl Certificates {
    pub fn all_passed(&self) -> bool {
        self.direct_sum && self.orders_exact && self.product_is_charpoly && self.lcm_is_minimal
    }
}

/// Nonconstant invariant factors of `A`: the Smith form diagonal of `xI - A`.
pub fn invariant_factors(a: &MatF) -> Result<Vec<Poly>> {
    let s = smith_normal_form(&PolyMat::characteristic(a)?)?;
    Ok(s.diagonal().into_iter().filter(|d| d.deg() > 0).collect())
}

/// Elementary divisors of `A` without constructing generator vectors.
pub fn elem_divisors(a: &MatF) -> Result<ElemDivMultiset> {
    let mut out = Vec::new();
    for d in invariant_factors(a)? {
        for (prime, exponent) in d.factor()?.factors {
            out.push(ElemDiv { prime, exponent });
        }
    }
    Ok(ElemDivMultiset::new(out))
}

pub fn decompose(a: &MatF) -> Result<PrimaryCyclicDecomposition> {
    let xa = PolyMat::characteristic(a)?;
    let f = a.field().clone();
    let n = a.rows();
    let smith = smith_normal_form(&xa)?;
    let diag = smith.diagonal();

    let mut components: Vec<PrimaryComponent> = Vec::new();
    for (j, d) in diag.iter().enumerate() {
        if d.deg() == 0 {
            continue;
        }
        let mut w = vec![FieldElem::ZERO; n];
        for i in 0..n {
            let entry = smith.u_inv.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let mut e = vec![FieldElem::ZERO; n];
            e[i] = FieldElem::ONE;
            let t = a.apply_poly(entry, &e)?;
            for (x, y) in w.iter_mut().zip(t) {
                *x = f.add(*x, y);
            }
        }
        for (prime, exponent) in d.factor()?.factors {
            let order = prime.pow(exponent as u64);
            let cofactor = d.div_exact(&order)?;
            let vector = a.apply_poly(&cofactor, &w)?;
            let generator = CyclicGenerator { vector, prime: prime.clone(), exponent, order };
            match components.iter_mut().find(|c| c.prime == prime) {
                Some(c) => c.generators.push(generator),
                None => components.push(PrimaryComponent { prime, generators: vec![generator] }),
            }
        }
    }
    sort_components(&mut components);
    Ok(PrimaryCyclicDecomposition {
        matrix: a.clone(),
        components,
        minimal_polynomial: a.minimal_polynomial()?,
        characteristic_polynomial: a.characteristic_polynomial()?,
    })
}

fn sort_components(components: &mut [PrimaryComponent]) {
    components.sort_by(|a, b| a.prime.canonical_cmp(&b.prime));
    for c in components.iter_mut() {
        // stable: ties keep invariant-factor order
        c.generators.sort_by_key(|g| std::cmp::Reverse(g.exponent));
    }
}

impl PrimaryCyclicDecomposition {
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// Generators in canonical order with their (component, index) positions.
    pub fn generators(&self) -> impl Iterator<Item = ((usize, usize), &CyclicGenerator)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.generators.iter().enumerate().map(move |(j, g)| ((k, j), g)))
    }

    pub fn component(&self, prime: &Poly) -> Option<&PrimaryComponent> {
        self.components.iter().find(|c| c.prime == *prime)
    }

    pub fn elem_divisors(&self) -> ElemDivMultiset {
        ElemDivMultiset::new(
            self.generators()
                .map(|(_, g)| ElemDiv { prime: g.prime.clone(), exponent: g.exponent })
                .collect(),
        )
    }

    /// Columns `A^t v` for every generator `v` (in canonical order) and
    /// `0 <= t < deg o(v)`.
    pub fn krylov_vectors(&self) -> Result<Vec<VecF>> {
        let mut cols = Vec::with_capacity(self.dimension());
        for (_, g) in self.generators() {
            let mut v = g.vector.clone();
            for _ in 0..g.dim() {
                let next = self.matrix.mul_vec(&v)?;
                cols.push(std::mem::replace(&mut v, next));
            }
        }
        Ok(cols)
    }

    pub fn krylov_basis(&self) -> Result<MatF> {
        MatF::from_columns(self.matrix.field(), self.dimension(), &self.krylov_vectors()?)
    }

    pub fn certify(&self) -> Result<Certificates> {
        let f = self.matrix.field();
        let n = self.dimension();
        let cols = self.krylov_vectors()?;
        let direct_sum = cols.len() == n && MatF::from_columns(f, n, &cols)?.rank() == n;

        let mut orders_exact = true;
        let mut product = Poly::one(f);
        let mut lcm = Poly::one(f);
        for (_, g) in self.generators() {
            orders_exact &= g.exponent >= 1
                && g.order == g.prime.pow(g.exponent as u64)
                && self.matrix.vector_order(&g.vector)? == g.order;
            product = product.mul(&g.order);
            lcm = lcm.lcm(&g.order)?;
        }
        Ok(Certificates {
            direct_sum,
            orders_exact,
            product_is_charpoly: product == self.characteristic_polynomial,
            lcm_is_minimal: lcm == self.minimal_polynomial,
        })
    }

    /// The same decomposition read as a decomposition of F_q^n under `γA`:
    /// identical generator vectors and exponents, primes replaced by their
    /// twists.
    pub fn twist(&self, gamma: FieldElem) -> Result<PrimaryCyclicDecomposition> {
        if gamma.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let mut components = self
            .components
            .iter()
            .map(|c| {
                let prime = c.prime.twist(gamma)?;
                let generators = c
                    .generators
                    .iter()
                    .map(|g| {
                        Ok(CyclicGenerator {
                            vector: g.vector.clone(),
                            prime: prime.clone(),
                            exponent: g.exponent,
                            order: g.order.twist(gamma)?,
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(PrimaryComponent { prime, generators })
            })
            .collect::<Result<Vec<_>>>()?;
        sort_components(&mut components);
        Ok(PrimaryCyclicDecomposition {
            matrix: self.matrix.scale(gamma),
            components,
            minimal_polynomial: self.minimal_polynomial.twist(gamma)?,
            characteristic_polynomial: self.characteristic_polynomial.twist(gamma)?,
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{Field, FieldCtx};
    use crate::matrix::span_rref;
    use std::cmp::Ordering;

    fn p(f: &Field, c: &[u32]) -> Poly {
        Poly::from_codes(f, c)
    }

    fn orders(dec: &PrimaryCyclicDecomposition) -> Vec<(Vec<u32>, Vec<usize>)> {
        dec.components
            .iter()
            .map(|c| (c.prime.codes(), c.generators.iter().map(|g| g.exponent).collect()))
            .collect()
    }

    pub(crate) fn eleven_block_companion() -> MatF {
        let f5 = FieldCtx::prime(5).unwrap();
        let blocks: Vec<MatF> = [
            p(&f5, &[0, 1]).pow(2),
            p(&f5, &[0, 1]),
            p(&f5, &[1, 1, 1]).pow(2),
            p(&f5, &[1, 1, 1]),
            p(&f5, &[4, 2, 1]),
        ]
        .iter()
        .map(|g| MatF::companion(g).unwrap())
        .collect();
        MatF::block_diag(&f5, &blocks).unwrap()
    }

    #[test]
    fn j_minus_i_decomposition() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a = MatF::from_codes(&f3, &[[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]);
        assert_eq!(invariant_factors(&a).unwrap(), vec![p(&f3, &[1, 1]), p(&f3, &[1, 1]), p(&f3, &[0, 1, 1])]);
        let dec = decompose(&a).unwrap();
        assert_eq!(orders(&dec), vec![(vec![0, 1], vec![1]), (vec![1, 1], vec![1, 1, 1])]);
        assert!(dec.certify().unwrap().all_passed());
        // the x+1 component spans ker(A + I)
        let gens: Vec<VecF> =
            dec.components[1].generators.iter().map(|g| g.vector.clone()).collect();
        let k = a.add(&MatF::identity(&f3, 4)).unwrap().kernel();
        assert_eq!(span_rref(&f3, 4, &gens).unwrap(), span_rref(&f3, 4, &k).unwrap());
    }

    #[test]
    fn split_jordan_decomposition_and_twist() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = MatF::from_codes(&f5, &[[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        let dec = decompose(&a).unwrap();
        assert_eq!(orders(&dec), vec![(vec![2, 1], vec![1, 1]), (vec![4, 1], vec![2])]);
        assert!(dec.certify().unwrap().all_passed());
        let ed = elem_divisors(&a).unwrap();
        let values: Vec<Poly> = ed.iter().map(|e| e.value()).collect();
        assert_eq!(values, vec![p(&f5, &[2, 1]), p(&f5, &[2, 1]), p(&f5, &[4, 1]).pow(2)]);

        let tw = dec.twist(f5.from_int(2)).unwrap();
        assert_eq!(orders(&tw), vec![(vec![3, 1], vec![2]), (vec![4, 1], vec![1, 1])]);
        assert_eq!(tw.component(&p(&f5, &[3, 1])).unwrap().generators[0].order, p(&f5, &[3, 1]).pow(2));
        assert!(tw.certify().unwrap().all_passed());
        assert_eq!(tw.elem_divisors(), ed.twist(f5.from_int(2)).unwrap());

        let same = dec.twist(f5.one()).unwrap();
        assert_eq!(same.components, dec.components);
        assert_eq!(dec.twist(f5.zero()).unwrap_err(), Error::ZeroTwist);
    }

    #[test]
    fn cyclic5_is_cyclic() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = MatF::from_codes(
            &f5,
            &[[1, 4, 2, 0, 4], [1, 1, 3, 2, 0], [4, 4, 3, 4, 1], [2, 4, 4, 3, 3], [3, 4, 1, 2, 1]],
        );
        let m = p(&f5, &[0, 1]).mul(&p(&f5, &[3, 2, 1])).mul(&p(&f5, &[2, 4, 1]));
        assert_eq!(invariant_factors(&a).unwrap(), vec![m]);
        let dec = decompose(&a).unwrap();
        assert!(dec.certify().unwrap().all_passed());
        assert_eq!(dec.components.len(), 3);
    }

    #[test]
    fn nilpotent_example() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a = MatF::from_codes(&f3, &[[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
        let dec = decompose(&a).unwrap();
        assert_eq!(orders(&dec), vec![(vec![0, 1], vec![2, 1])]);
        assert!(dec.certify().unwrap().all_passed());
    }

    #[test]
    fn eleven_block_elementary_divisors() {
        let a = eleven_block_companion();
        let f5 = a.field().clone();
        let dec = decompose(&a).unwrap();
        assert!(dec.certify().unwrap().all_passed());
        let expect = ElemDivMultiset::new(vec![
            ElemDiv { prime: p(&f5, &[0, 1]), exponent: 2 },
            ElemDiv { prime: p(&f5, &[0, 1]), exponent: 1 },
            ElemDiv { prime: p(&f5, &[1, 1, 1]), exponent: 2 },
            ElemDiv { prime: p(&f5, &[1, 1, 1]), exponent: 1 },
            ElemDiv { prime: p(&f5, &[4, 2, 1]), exponent: 1 },
        ]);
        assert_eq!(dec.elem_divisors(), expect);
        assert_eq!(elem_divisors(&a).unwrap(), expect);
        let twisted = ElemDivMultiset::new(vec![
            ElemDiv { prime: p(&f5, &[0, 1]), exponent: 2 },
            ElemDiv { prime: p(&f5, &[0, 1]), exponent: 1 },
            ElemDiv { prime: p(&f5, &[4, 2, 1]), exponent: 2 },
            ElemDiv { prime: p(&f5, &[4, 2, 1]), exponent: 1 },
            ElemDiv { prime: p(&f5, &[1, 4, 1]), exponent: 1 },
        ]);
        assert_eq!(dec.twist(f5.from_int(2)).unwrap().elem_divisors(), twisted);
    }

    #[test]
    fn identity_and_zero() {
        let f = FieldCtx::prime(5).unwrap();
        let ed = elem_divisors(&MatF::identity(&f, 2)).unwrap();
        let values: Vec<Poly> = ed.iter().map(|e| e.value()).collect();
        assert_eq!(values, vec![p(&f, &[4, 1]), p(&f, &[4, 1])]);
        assert_eq!(invariant_factors(&MatF::zeros(&f, 2, 2)).unwrap(), vec![Poly::x(&f), Poly::x(&f)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]
            #[test]
            fn decomposition_certificates(qi in 0usize..5, n in 1usize..7, codes in prop::collection::vec(any::<u32>(), 36), g in any::<u32>()) {
                let q = [2u64, 3, 5, 4, 7][qi];
                let f = FieldCtx::of_order(q).unwrap();
                let data = codes.iter().take(n * n).map(|&c| f.elem((c % q as u32) as u64).unwrap()).collect();
                let a = MatF::new(&f, n, n, data).unwrap();
                let dec = decompose(&a).unwrap();
                prop_assert!(dec.certify().unwrap().all_passed());
                prop_assert_eq!(dec.generators().map(|(_, g)| g.dim()).sum::<usize>(), n);
                for c in &dec.components {
                    prop_assert!(c.generators.windows(2).all(|w| w[0].exponent >= w[1].exponent));
                }
                prop_assert!(dec.components.windows(2).all(|w| w[0].prime.canonical_cmp(&w[1].prime) == Ordering::Less));
                prop_assert_eq!(dec.elem_divisors(), elem_divisors(&a).unwrap());

                let gamma = f.elem((g % (q as u32 - 1) + 1) as u64).unwrap();
                let tw = dec.twist(gamma).unwrap();
                prop_assert!(tw.certify().unwrap().all_passed());
                prop_assert_eq!(tw.elem_divisors(), dec.elem_divisors().twist(gamma).unwrap());
                prop_assert_eq!(
                    a.scale(gamma).minimal_polynomial().unwrap(),
                    a.minimal_polynomial().unwrap().twist(gamma).unwrap()
                );
            }

            #[test]
            fn companion_decomposition(qi in 0usize..4, codes in prop::collection::vec(any::<u32>(), 1..7)) {
                let q = [2u64, 3, 5, 4][qi];
                let f = FieldCtx::of_order(q).unwrap();
                let mut c: Vec<u32> = codes.iter().map(|v| v % q as u32).collect();
                c.push(1);
                let g = Poly::from_codes(&f, &c);
                let dec = decompose(&MatF::companion(&g).unwrap()).unwrap();
                let expect: Vec<(Poly, usize)> = g.factor().unwrap().factors;
                let got: Vec<(Poly, usize)> = dec.generators().map(|(_, x)| (x.prime.clone(), x.exponent)).collect();
                prop_assert_eq!(got, expect);
            }
        }
    }
}
