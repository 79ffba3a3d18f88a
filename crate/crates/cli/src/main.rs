use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tcc_core::decomp::PrimaryCyclicDecomposition;
use tcc_core::hom::{dimension_report, Provenance};
use tcc_core::params::DEFAULT_ENUMERATION_BOUND;
use tcc_core::poly::format_power;
use tcc_core::verify::{random_verify, SweepConfig};
use tcc_core::{code_params, decompose, is_codeword, oracle_kernel, twisted_basis, MatF, Poly};

use tcc_cli::problem::{self, lit, load_codeword, load_problem, matrix_lits, Problem};
use tcc_cli::report::{Check, RunReport};

/// Twisted centralizer codes C(A, γ) = {X : AX = γXA} over finite fields.
#[derive(Parser)]
#[command(name = "tcc", version)]
struct Cli {
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Problem file (JSON).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Overrides the file's gamma, e.g. `2` or `[1,1]`.
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of C(A, γ) and the summands of the dimension formula.
    Dim(Input),
    /// An explicit basis of C(A, γ) with provenance.
    Basis(Input),
    /// Primary cyclic decomposition of A, and its twist by γ.
    Decompose(Input),
    /// Whether a matrix X is a codeword.
    Check {
        #[command(flatten)]
        input: Input,
        /// Matrix file: `[[…]]` or `{"X": [[…]]}`.
        #[arg(long)]
        codeword: PathBuf,
    },
    /// Kernel of the Sylvester operator I⊗A − γ(Aᵀ⊗I).
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Lift the n² ≤ 4096 guard.
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Code parameters [n², k, d].
    Params {
        #[command(flatten)]
        input: Input,
        /// Enumerate codewords for the minimum distance.
        #[arg(long)]
        distance: bool,
        /// Largest q^k to enumerate.
        #[arg(long)]
        max_enum: Option<u64>,
    },
    /// Compare against the oracle on seeded random (A, γ).
    RandomVerify {
        /// Field orders, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,4")]
        fields: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Trials per field.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "TCC_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        unsafe_large: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let format = cli.format.or_else(|| file_format(&cli.command)).unwrap_or(Format::Text);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => print!("{}", report.render_text()),
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// The `options.format` of the problem file, if it names a known format.
fn file_format(cmd: &Command) -> Option<Format> {
    let input = match cmd {
        Command::Dim(i) | Command::Basis(i) | Command::Decompose(i) => i,
        Command::Check { input, .. } | Command::Oracle { input, .. } | Command::Params { input, .. } => input,
        Command::RandomVerify { .. } => return None,
    };
    let text = std::fs::read_to_string(&input.input).ok()?;
    let file = problem::parse_problem(&text, "").ok()?;
    Format::from_str(file.options.format.as_deref()?, true).ok()
}

fn run(cmd: &Command) -> Result<RunReport> {
    match cmd {
        Command::Dim(i) => timed(load(i)?, cmd_dim),
        Command::Basis(i) => timed(load(i)?, cmd_basis),
        Command::Decompose(i) => timed(load(i)?, cmd_decompose),
        Command::Check { input, codeword } => {
            let pr = load(input)?;
            timed(pr, |pr| cmd_check(pr, codeword))
        }
        Command::Oracle { input, unsafe_large } => timed(load(input)?, |pr| cmd_oracle(pr, *unsafe_large)),
        Command::Params { input, distance, max_enum } => {
            let pr = load(input)?;
            let distance = *distance || pr.file.options.distance.unwrap_or(false);
            let bound = max_enum.or(pr.file.options.max_enum).unwrap_or(DEFAULT_ENUMERATION_BOUND);
            timed(pr, |pr| cmd_params(pr, distance, bound))
        }
        Command::RandomVerify { fields, n_max, trials, seed, unsafe_large } => {
            let cfg = SweepConfig {
                fields: fields.clone(),
                n_max: *n_max,
                trials: *trials,
                seed: *seed,
                allow_large: *unsafe_large,
            };
            cmd_random_verify(&cfg)
        }
    }
}

fn load(i: &Input) -> Result<Problem> {
    load_problem(&i.input, i.gamma.as_deref())
}

fn timed(pr: Problem, f: impl FnOnce(&Problem) -> Result<RunReport>) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = f(&pr)?;
    report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

fn inputs(pr: &Problem) -> Value {
    let mut v = serde_json::to_value(&pr.file).expect("problem serializes");
    v["gamma"] = serde_json::to_value(lit(&pr.field, pr.gamma)).expect("literal serializes");
    v
}

/// `c(p1)^e1(p2)^e2…`, e.g. `x(x^2 + 2x + 3)(x + 4)^2`.
fn factored(f: &Poly) -> Result<String> {
    if f.is_constant() {
        return Ok(f.to_string());
    }
    let fac = f.factor()?;
    let single = fac.factors.len() == 1 && fac.constant == f.field().one();
    let mut s = String::new();
    if fac.constant != f.field().one() {
        s.push_str(&f.field().format(fac.constant));
    }
    for (p, e) in &fac.factors {
        let power = format_power(p, *e);
        if single || power.starts_with('(') || p.codes() == [0, 1] {
            s.push_str(&power);
        } else {
            s.push_str(&format!("({power})"));
        }
    }
    Ok(s)
}

fn gamma_text(pr: &Problem) -> String {
    pr.field.format(pr.gamma)
}

fn matrix_text(m: &MatF) -> String {
    let f = m.field();
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| f.format(x)).collect()).collect();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            format!("  [{}]\n", padded.join(" "))
        })
        .collect()
}

fn certify(report: &mut RunReport, dec: &PrimaryCyclicDecomposition, prefix: &str) -> Result<()> {
    let c = dec.certify()?;
    report.check(&format!("{prefix}direct_sum"), Check::from_bool(c.direct_sum));
    report.check(&format!("{prefix}orders_exact"), Check::from_bool(c.orders_exact));
    report.check(&format!("{prefix}product_is_charpoly"), Check::from_bool(c.product_is_charpoly));
    report.check(&format!("{prefix}lcm_is_minimal"), Check::from_bool(c.lcm_is_minimal));
    Ok(())
}

fn cmd_dim(pr: &Problem) -> Result<RunReport> {
    let mut report = RunReport::new("dim", inputs(pr));
    let rep = dimension_report(&pr.a, pr.gamma)?;
    let mut terms = Vec::new();
    let mut text = format!("dim C(A, {}) = {}\n", gamma_text(pr), rep.dimension);
    if pr.gamma.is_zero() {
        let nullity = pr.a.nullity();
        text.push_str(&format!("  = n · nullity(A) = {} · {nullity}\n", pr.a.rows()));
    } else if !rep.terms.is_empty() {
        let sum: Vec<String> = rep.terms.iter().map(|t| t.degree.to_string()).collect();
        text.push_str(&format!("  = {}\n", sum.join(" + ")));
    }
    for t in &rep.terms {
        let (f, g) = (factored(&t.twisted)?, factored(&t.divisor)?);
        text.push_str(&format!("  deg gcd({f}, {g}) = {}\n", t.degree));
        terms.push(json!({ "twisted": f, "divisor": g, "degree": t.degree }));
    }
    report.result = json!({ "dimension": rep.dimension, "terms": terms });
    report.text = text;
    let dec = decompose(&pr.a)?;
    certify(&mut report, &dec, "decomposition_")?;
    Ok(report)
}

fn provenance_json(p: &Provenance) -> Value {
    match p {
        Provenance::Hom { block, power } => json!({
            "domain": [block.domain.0 + 1, block.domain.1 + 1],
            "codomain": [block.codomain.0 + 1, block.codomain.1 + 1],
            "power": power,
        }),
        Provenance::Socle { column, generator } => json!({
            "column": column + 1,
            "generator": [generator.0 + 1, generator.1 + 1],
        }),
    }
}

fn provenance_text(p: &Provenance) -> String {
    match p {
        Provenance::Hom { block, power } => format!(
            "A^{power} ϑ for v_{{{},{}}} -> v_{{{},{}}}",
            block.domain.0 + 1,
            block.domain.1 + 1,
            block.codomain.0 + 1,
            block.codomain.1 + 1
        ),
        Provenance::Socle { column, generator } => format!(
            "column {} holds the socle vector of v_{{{},{}}}",
            column + 1,
            generator.0 + 1,
            generator.1 + 1
        ),
    }
}

fn cmd_basis(pr: &Problem) -> Result<RunReport> {
    let mut report = RunReport::new("basis", inputs(pr));
    let b = twisted_basis(&pr.a, pr.gamma)?;
    let checks = b.self_check()?;
    report.check("membership", Check::from_bool(checks.membership));
    report.check("count", Check::from_bool(checks.count));
    report.check("independent", Check::from_bool(checks.independent));
    let mut text = format!("basis of C(A, {}), dimension {}\n", gamma_text(pr), b.dimension);
    for (idx, (x, p)) in b.basis.iter().zip(&b.provenance).enumerate() {
        text.push_str(&format!("X{} = {}\n{}", idx + 1, provenance_text(p), matrix_text(x)));
    }
    report.result = json!({
        "dimension": b.dimension,
        "basis": b.basis.iter().map(matrix_lits).collect::<Vec<_>>(),
        "provenance": b.provenance.iter().map(provenance_json).collect::<Vec<_>>(),
    });
    report.text = text;
    Ok(report)
}

fn decomposition_json(dec: &PrimaryCyclicDecomposition) -> Result<Value> {
    let f = dec.matrix.field();
    let mut comps = Vec::new();
    for c in &dec.components {
        let gens: Vec<Value> = c
            .generators
            .iter()
            .map(|g| {
                json!({
                    "vector": g.vector.iter().map(|&x| lit(f, x)).collect::<Vec<_>>(),
                    "exponent": g.exponent,
                    "order": format_power(&c.prime, g.exponent),
                })
            })
            .collect();
        comps.push(json!({ "prime": c.prime.to_string(), "generators": gens }));
    }
    Ok(json!({
        "components": comps,
        "minimal_polynomial": factored(&dec.minimal_polynomial)?,
        "characteristic_polynomial": factored(&dec.characteristic_polynomial)?,
        "elementary_divisors": dec.elem_divisors().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    }))
}

fn decomposition_text(dec: &PrimaryCyclicDecomposition) -> Result<String> {
    let f = dec.matrix.field();
    let mut s = format!(
        "  minimal polynomial: {}\n  characteristic polynomial: {}\n",
        factored(&dec.minimal_polynomial)?,
        factored(&dec.characteristic_polynomial)?
    );
    for ((k, j), g) in dec.generators() {
        let order = format_power(&g.prime, g.exponent);
        let v: Vec<String> = g.vector.iter().map(|&x| f.format(x)).collect();
        s.push_str(&format!("  o(v_{{{},{}}}) = {order}, v_{{{},{}}} = ({})\n", k + 1, j + 1, k + 1, j + 1, v.join(", ")));
    }
    Ok(s)
}

fn cmd_decompose(pr: &Problem) -> Result<RunReport> {
    let mut report = RunReport::new("decompose", inputs(pr));
    let dec = decompose(&pr.a)?;
    certify(&mut report, &dec, "")?;
    let mut text = format!("F^{} under A over {}\n{}", pr.a.rows(), pr.field, decomposition_text(&dec)?);
    let mut result = json!({ "decomposition": decomposition_json(&dec)? });
    if !pr.gamma.is_zero() {
        let tw = dec.twist(pr.gamma)?;
        certify(&mut report, &tw, "twisted_")?;
        text.push_str(&format!(
            "under γA, γ = {}\n  minimal polynomial: {}\n  characteristic polynomial: {}\n",
            gamma_text(pr),
            factored(&tw.minimal_polynomial)?,
            factored(&tw.characteristic_polynomial)?
        ));
        let mut orders = Vec::new();
        for ((k, j), g) in dec.generators() {
            let order = factored(&g.order.twist(pr.gamma)?)?;
            text.push_str(&format!("  o(v_{{{},{}}}) = {order}\n", k + 1, j + 1));
            orders.push(json!({ "generator": [k + 1, j + 1], "order": order }));
        }
        result["twisted"] = json!({
            "minimal_polynomial": factored(&tw.minimal_polynomial)?,
            "characteristic_polynomial": factored(&tw.characteristic_polynomial)?,
            "orders": orders,
        });
    }
    report.result = result;
    report.text = text;
    Ok(report)
}

fn cmd_check(pr: &Problem, codeword: &Path) -> Result<RunReport> {
    let mut report = RunReport::new("check", inputs(pr));
    let x = load_codeword(codeword, &pr.field)?;
    let member = is_codeword(&pr.a, pr.gamma, &x).context("codeword")?;
    report.result = json!({ "codeword": member });
    report.text = format!("{member}\n");
    Ok(report)
}

fn cmd_oracle(pr: &Problem, allow_large: bool) -> Result<RunReport> {
    let mut report = RunReport::new("oracle", inputs(pr));
    let kernel = oracle_kernel(&pr.a, pr.gamma, allow_large)?;
    let members = kernel.iter().map(|x| is_codeword(&pr.a, pr.gamma, x)).collect::<tcc_core::Result<Vec<_>>>()?;
    report.check("membership", Check::from_bool(members.iter().all(|&m| m)));
    let dim = tcc_core::twisted_dim(&pr.a, pr.gamma)?;
    report.check("matches_twisted_dim", Check::from_bool(dim == kernel.len()));
    let mut text = format!("oracle kernel of I⊗A − γ(Aᵀ⊗I), dimension {}\n", kernel.len());
    for (idx, x) in kernel.iter().enumerate() {
        text.push_str(&format!("K{}\n{}", idx + 1, matrix_text(x)));
    }
    report.result = json!({
        "dimension": kernel.len(),
        "basis": kernel.iter().map(matrix_lits).collect::<Vec<_>>(),
    });
    report.text = text;
    Ok(report)
}

fn cmd_params(pr: &Problem, distance: bool, bound: u64) -> Result<RunReport> {
    let mut report = RunReport::new("params", inputs(pr));
    let cp = code_params(&pr.a, pr.gamma, distance, bound)?;
    let d = cp.min_distance.map_or("-".to_string(), |d| d.to_string());
    report.text = format!("[{}, {}, {d}] over {}\n", cp.length, cp.dimension, pr.field);
    report.check("distance_enumerated", if cp.min_distance.is_some() { Check::Passed } else { Check::Skipped });
    report.result = serde_json::to_value(cp)?;
    Ok(report)
}

fn cmd_random_verify(cfg: &SweepConfig) -> Result<RunReport> {
    let mut report = RunReport::new(
        "random-verify",
        json!({ "fields": cfg.fields, "n_max": cfg.n_max, "trials": cfg.trials, "seed": cfg.seed }),
    );
    let r = random_verify(cfg)?;
    let check = if r.skipped { Check::Skipped } else { Check::from_bool(r.all_passed()) };
    report.check("oracle_equivalence", check);
    let mut text = format!("{}/{} trials agree with the oracle (seed {})\n", r.passed, r.total, r.seed);
    for t in &r.per_field {
        text.push_str(&format!("  GF({}): {}/{}\n", t.q, t.passed, t.trials));
    }
    text.push_str(&format!("  γ = 0: {}, γ = 1: {}, other γ: {}\n", r.gamma_zero, r.gamma_one, r.gamma_other));
    if let Some(c) = &r.first_counterexample {
        text.push_str(&format!("first counterexample: {}\n", serde_json::to_string(c)?));
    }
    report.result = serde_json::to_value(&r)?;
    report.text = text;
    Ok(report)
}
