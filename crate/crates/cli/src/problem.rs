//! Problem files.
//!
//! Matrices are written row-major as nested arrays (`A[i][j]` is row `i`,
//! column `j`). The oracle and the weight computations read matrices column
//! by column instead; that convention lives in the core crate and never
//! appears in files.
//!
//! Field elements are either integers `0 ≤ c < p` or, in extension fields,
//! coefficient arrays `[c0, c1, …]` of `c0 + c1·y + …` in the defining
//! polynomial's generator `y`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tcc_core::{Field, FieldCtx, FieldElem, MatF};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    /// Defining polynomial, constant term first; the least irreducible when
    /// omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemLit {
    Int(u64),
    Coeffs(Vec<u32>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_enum: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<ElemLit>>,
    pub gamma: ElemLit,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

/// A matrix given either bare or as `{"X": [[…]]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum CodewordFile {
    Wrapped {
        #[serde(rename = "X")]
        x: Vec<Vec<ElemLit>>,
    },
    Bare(Vec<Vec<ElemLit>>),
}

/// A validated problem.
pub struct Problem {
    pub file: ProblemFile,
    pub field: Field,
    pub a: MatF,
    pub gamma: FieldElem,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn parse_problem(text: &str, origin: &str) -> Result<ProblemFile> {
    serde_json::from_str(text).with_context(|| format!("{origin}: malformed problem file"))
}

pub fn load_problem(path: &Path, gamma_override: Option<&str>) -> Result<Problem> {
    let origin = path.display().to_string();
    let mut file = parse_problem(&read(path)?, &origin)?;
    if let Some(g) = gamma_override {
        file.gamma = parse_elem_arg(g).context("--gamma")?;
    }
    let field = make_field(&file.field).with_context(|| format!("{origin}: field"))?;
    let a = make_matrix(&field, &file.a, "A").with_context(|| format!("{origin}: A"))?;
    if a.rows() != file.n {
        bail!("{origin}: n = {} but A has {} rows", file.n, a.rows());
    }
    let gamma = elem(&field, &file.gamma).with_context(|| format!("{origin}: gamma"))?;
    Ok(Problem { file, field, a, gamma })
}

pub fn load_codeword(path: &Path, field: &Field) -> Result<MatF> {
    let origin = path.display().to_string();
    let text = read(path)?;
    let rows = match serde_json::from_str(&text).with_context(|| format!("{origin}: malformed codeword file"))? {
        CodewordFile::Wrapped { x } | CodewordFile::Bare(x) => x,
    };
    make_matrix(field, &rows, "X").with_context(|| format!("{origin}: X"))
}

/// Parses a command-line element literal: `2` or `[1,1]`.
pub fn parse_elem_arg(s: &str) -> Result<ElemLit> {
    serde_json::from_str(s.trim()).with_context(|| format!("`{s}` is not an integer or a coefficient array"))
}

pub fn make_field(spec: &FieldSpec) -> Result<Field> {
    Ok(FieldCtx::new(spec.p, spec.k, spec.modulus.as_deref())?)
}

pub fn elem(field: &Field, lit: &ElemLit) -> Result<FieldElem> {
    match lit {
        ElemLit::Int(c) if *c < field.characteristic() as u64 => Ok(field.elem(*c)?),
        ElemLit::Int(c) => bail!("integer {c} is not below the characteristic {}", field.characteristic()),
        ElemLit::Coeffs(cs) => Ok(field.from_coeffs(cs)?),
    }
}

pub fn lit(field: &Field, x: FieldElem) -> ElemLit {
    if field.degree() == 1 {
        ElemLit::Int(x.code() as u64)
    } else {
        ElemLit::Coeffs(field.coeffs(x))
    }
}

fn make_matrix(field: &Field, rows: &[Vec<ElemLit>], name: &str) -> Result<MatF> {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!("row {i} has {} entries, expected {n} for a square matrix", row.len());
        }
        for (j, x) in row.iter().enumerate() {
            data.push(elem(field, x).with_context(|| format!("{name}[{i}][{j}]"))?);
        }
    }
    Ok(MatF::new(field, n, n, data)?)
}

pub fn matrix_lits(m: &MatF) -> Vec<Vec<ElemLit>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| lit(m.field(), x)).collect()).collect()
}
