//! Seeded random sweep comparing the structural computation of `C(A, γ)`
//! against the Sylvester-operator oracle.
//!
//! Trial `t` uses a ChaCha8 stream seeded with `splitmix64(seed + t·φ)`, so
//! the report does not depend on how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx, FieldElem};
use crate::hom::{is_codeword, same_span, twisted_basis, twisted_dim};
use crate::matrix::MatF;
use crate::oracle::{oracle_kernel, ORACLE_GUARD};
use crate::poly::Poly;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed.wrapping_add(index.wrapping_mul(GOLDEN))))
}

pub fn random_elem<R: Rng + ?Sized>(f: &Field, rng: &mut R) -> FieldElem {
    f.elem(rng.gen_range(0..f.order() as u64)).expect("code below q")
}

pub fn random_nonzero<R: Rng + ?Sized>(f: &Field, rng: &mut R) -> FieldElem {
    f.elem(rng.gen_range(1..f.order() as u64)).expect("code below q")
}

/// Entrywise uniform `n × n` matrix.
pub fn random_matrix<R: Rng + ?Sized>(f: &Field, n: usize, rng: &mut R) -> MatF {
    let data = (0..n * n).map(|_| random_elem(f, rng)).collect();
    MatF::new(f, n, n, data).expect("codes are in range")
}

/// Uniform monic polynomial of degree `deg`.
pub fn random_monic<R: Rng + ?Sized>(f: &Field, deg: usize, rng: &mut R) -> Poly {
    let mut c: Vec<FieldElem> = (0..deg).map(|_| random_elem(f, rng)).collect();
    c.push(f.one());
    Poly::new(f, c)
}

/// Polynomial of degree below `max_deg`, possibly zero.
pub fn random_poly<R: Rng + ?Sized>(f: &Field, max_deg: usize, rng: &mut R) -> Poly {
    let len = rng.gen_range(0..=max_deg);
    Poly::new(f, (0..len).map(|_| random_elem(f, rng)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Field orders `q`.
    pub fields: Vec<u64>,
    pub n_max: usize,
    /// Trials per field.
    pub trials: usize,
    pub seed: u64,
    pub allow_large: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: u64,
    pub n: usize,
    /// Row-major element codes.
    pub matrix: Vec<Vec<u32>>,
    pub gamma: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldTally {
    pub q: u64,
    pub trials: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub n_max: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_field: Vec<FieldTally>,
    pub gamma_zero: usize,
    pub gamma_one: usize,
    pub gamma_other: usize,
    /// `true` when no trials were requested.
    pub skipped: bool,
    pub first_counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Every check a sweep trial runs on one `(A, γ)`; `Err` names the first
/// failure.
pub fn check_against_oracle(a: &MatF, gamma: FieldElem, allow_large: bool) -> Result<std::result::Result<(), String>> {
    let n = a.rows();
    let dim = twisted_dim(a, gamma)?;
    let oracle = oracle_kernel(a, gamma, allow_large)?;
    if dim != oracle.len() {
        return Ok(Err(format!("twisted_dim = {dim}, oracle nullity = {}", oracle.len())));
    }
    let basis = twisted_basis(a, gamma)?;
    if basis.dimension != dim {
        return Ok(Err(format!("basis has {} elements, dimension is {dim}", basis.dimension)));
    }
    for (idx, x) in basis.basis.iter().enumerate() {
        if !is_codeword(a, gamma, x)? {
            return Ok(Err(format!("basis element {idx} is not a codeword")));
        }
    }
    if !same_span(&basis.basis, &oracle, n, n)? {
        return Ok(Err("basis span differs from the oracle kernel".into()));
    }
    let cert = decompose(a)?.certify()?;
    if !cert.all_passed() {
        return Ok(Err(format!("decomposition certificates failed: {cert:?}")));
    }
    Ok(Ok(()))
}

/// The `(field index, n, A, γ)` of trial `t` in a sweep over `fields`.
pub fn trial_case(fields: &[Field], cfg: &SweepConfig, t: usize) -> (usize, MatF, FieldElem) {
    let fi = t / cfg.trials.max(1);
    let f = &fields[fi];
    let mut rng = trial_rng(cfg.seed, t as u64);
    let n = rng.gen_range(1..=cfg.n_max);
    let a = random_matrix(f, n, &mut rng);
    let gamma = random_elem(f, &mut rng);
    (fi, a, gamma)
}

struct Trial {
    field: usize,
    gamma: FieldElem,
    failure: Option<Counterexample>,
}

/// Runs `trials` random `(A, γ)` per field, with `n` uniform in `1..=n_max`
/// and `γ` uniform over the field.
pub fn random_verify(cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.n_max == 0 {
        return Err(Error::Shape("n_max must be at least 1".into()));
    }
    if cfg.n_max * cfg.n_max > ORACLE_GUARD && !cfg.allow_large {
        return Err(Error::OracleTooLarge { size: cfg.n_max * cfg.n_max });
    }
    let fields: Vec<Field> = cfg.fields.iter().map(|&q| FieldCtx::of_order(q)).collect::<Result<_>>()?;
    let total = fields.len() * cfg.trials;
    let trials: Vec<Trial> = (0..total)
        .into_par_iter()
        .map(|t| -> Result<Trial> {
            let (fi, a, gamma) = trial_case(&fields, cfg, t);
            let (f, n) = (&fields[fi], a.rows());
            let failure = match check_against_oracle(&a, gamma, cfg.allow_large) {
                Ok(Ok(())) => None,
                Ok(Err(reason)) => Some(reason),
                Err(e) => Some(format!("error: {e}")),
            }
            .map(|reason| Counterexample { q: f.order() as u64, n, matrix: a.to_codes(), gamma: gamma.code(), reason });
            Ok(Trial { field: fi, gamma, failure })
        })
        .collect::<Result<_>>()?;

    let mut per_field: Vec<FieldTally> =
        fields.iter().map(|f| FieldTally { q: f.order() as u64, trials: 0, passed: 0 }).collect();
    let (mut gamma_zero, mut gamma_one, mut gamma_other) = (0, 0, 0);
    for t in &trials {
        per_field[t.field].trials += 1;
        if t.failure.is_none() {
            per_field[t.field].passed += 1;
        }
        match t.gamma.code() {
            0 => gamma_zero += 1,
            1 => gamma_one += 1,
            _ => gamma_other += 1,
        }
    }
    let passed = per_field.iter().map(|f| f.passed).sum();
    Ok(SweepReport {
        seed: cfg.seed,
        n_max: cfg.n_max,
        total,
        passed,
        failed: total - passed,
        per_field,
        gamma_zero,
        gamma_one,
        gamma_other,
        skipped: total == 0,
        first_counterexample: trials.into_iter().find_map(|t| t.failure),
    })
}
