use std::collections::BTreeMap;
use std::fmt::Write as _;

use pdo_cocycles::cocycles::{chern_cocycle, chern_terms, curvature, schwinger_cocycle};
use pdo_cocycles::harness::{
    bianchi_sweep, calibrate_radul_normalization, case_table, closedness_sweep,
    commutator_trace_sweep, four_cocycle_on_shifts, four_cocycle_table, oracle_sweep,
    residue_trace_sweep, schwinger_comparison, IdentityReport, SweepConfig,
};
use pdo_cocycles::lattice::{GaussianRational, LatticeOperator, MatrixCoeff};
use pdo_cocycles::literal::{
    eval_operator, eval_symbol, parse_expression, parse_operator_document, parse_symbol_document,
    SymbolDocument, BUILTINS,
};
use pdo_cocycles::symbols::{
    radul_cocycle, radul_normalization, symbol_of_multiplication, wodzicki_residue, FormalSymbol,
};
use pdo_cocycles::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, ReproTarget, SweepArgs, VerifyKind};

/// Errors that are the caller's fault: bad flags, literals or documents.
#[derive(Debug)]
pub struct InputError(pub String);

impl InputError {
    fn in_operand(src: &str, e: Error) -> Self {
        match e {
            Error::Parse { pos, msg } => Self(format!("{msg}\n  {src}\n  {}^", " ".repeat(pos))),
            other => Self(format!("{other} (in `{src}`)")),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

/// Echo of the settings a run used.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub dim: usize,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub result: Value,
    pub assertions: Vec<Assertion>,
}

pub struct Outcome {
    pub report: Report,
    pub table: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.assertions.iter().all(|a| a.passed)
    }
}

fn check(name: impl Into<String>, passed: bool) -> Assertion {
    Assertion {
        name: name.into(),
        passed,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn matrix_rows(c: &MatrixCoeff) -> Vec<Vec<[String; 2]>> {
    c.rows()
        .map(|r| r.iter().map(GaussianRational::to_pair).collect())
        .collect()
}

/// Named operands from `--def NAME=FILE`, kept as raw document text.
struct Definitions(BTreeMap<String, (String, String)>);

impl Definitions {
    fn load(defs: &[String]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for def in defs {
            let (name, path) = def
                .split_once('=')
                .ok_or_else(|| InputError(format!("--def expects NAME=FILE, got `{def}`")))?;
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !BUILTINS.contains(&name)
                && !matches!(name, "z" | "E" | "mat");
            if !valid {
                return Err(InputError(format!(
                    "`{name}` cannot be used as an operand name"
                )));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("reading {path}: {e}")))?;
            out.insert(name.to_string(), (path.to_string(), text));
        }
        Ok(Self(out))
    }

    fn operators(&self, dim: usize) -> Result<BTreeMap<String, LatticeOperator>> {
        self.0
            .iter()
            .map(|(name, (path, text))| {
                let p = parse_operator_document(text)
                    .map_err(|e| InputError(format!("{path}: {e}")))?;
                if p.dim() != dim {
                    return Err(InputError(format!(
                        "{path}: document has dim {} but --dim is {dim}",
                        p.dim()
                    )));
                }
                Ok((name.clone(), LatticeOperator::from_laurent(&p)))
            })
            .collect()
    }

    /// Symbol documents, or operator documents read as multiplication symbols.
    fn symbols(&self, dim: usize, depth: usize) -> Result<BTreeMap<String, FormalSymbol>> {
        self.0
            .iter()
            .map(|(name, (path, text))| {
                let s = parse_symbol_document(text)
                    .or_else(|_| {
                        parse_operator_document(text).map(|p| symbol_of_multiplication(&p, depth))
                    })
                    .map_err(|e| InputError(format!("{path}: {e}")))?;
                if s.dim() != dim {
                    return Err(InputError(format!(
                        "{path}: document has dim {} but --dim is {dim}",
                        s.dim()
                    )));
                }
                Ok((name.clone(), s))
            })
            .collect()
    }
}

fn operator(
    src: &str,
    dim: usize,
    env: &BTreeMap<String, LatticeOperator>,
) -> Result<LatticeOperator> {
    let e = parse_expression(src).map_err(|e| InputError::in_operand(src, e))?;
    eval_operator(&e, dim, env).map_err(|e| InputError::in_operand(src, e))
}

fn symbol(
    src: &str,
    dim: usize,
    depth: usize,
    env: &BTreeMap<String, FormalSymbol>,
) -> Result<FormalSymbol> {
    let e = parse_expression(src).map_err(|e| InputError::in_operand(src, e))?;
    eval_symbol(&e, dim, depth, env).map_err(|e| InputError::in_operand(src, e))
}

fn base_config(cli: &Cli, command: &str) -> RunConfig {
    RunConfig {
        command: command.into(),
        dim: cli.dim,
        format: cli.format,
        k: None,
        seed: None,
        samples: None,
        degree: None,
        depth: None,
    }
}

fn check_depth(depth: usize) -> Result<()> {
    if !(2..=64).contains(&depth) {
        return Err(InputError(format!(
            "--depth must be between 2 and 64, got {depth}"
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.dim == 0 || cli.dim > 16 {
        return Err(InputError(format!(
            "--dim must be between 1 and 16, got {}",
            cli.dim
        )));
    }
    let defs = Definitions::load(&cli.defs)?;
    match &cli.command {
        Command::Omega { a, b } => omega(cli, &defs, a, b),
        Command::Cocycle {
            k,
            verbose,
            operands,
        } => cocycle(cli, &defs, *k, *verbose, operands),
        Command::Schwinger { a, b } => schwinger(cli, &defs, a, b),
        Command::Verify { kind, sweep } => verify(cli, *kind, sweep),
        Command::Repro { target } => repro(cli, *target),
        Command::Symbol { expr, depth } => show_symbol(cli, &defs, expr, *depth),
        Command::Residue { expr, depth } => residue(cli, &defs, expr, *depth),
        Command::Radul { x, y, depth } => radul(cli, &defs, x, y, *depth),
    }
}

fn omega(cli: &Cli, defs: &Definitions, a: &str, b: &str) -> Result<Outcome> {
    let env = defs.operators(cli.dim)?;
    let omega = curvature(&operator(a, cli.dim, &env)?, &operator(b, cli.dim, &env)?);
    let support = omega
        .finite_rank_support()
        .expect("curvature has finite rank");
    let rank = omega.rank().expect("curvature has finite rank");
    let entries = omega.finite_entries().expect("curvature has finite rank");

    let mut table = format!("Ω({a}, {b})  d = {}\n", cli.dim);
    let span =
        |iv: Option<(i64, i64)>| iv.map_or("none".to_string(), |(lo, hi)| format!("{lo}..{hi}"));
    let _ = writeln!(table, "source modes: {}", span(support.source));
    let _ = writeln!(table, "target modes: {}", span(support.target));
    let _ = writeln!(table, "rank: {rank}");
    if entries.is_empty() {
        table.push_str("zero operator\n");
    } else {
        table.push_str("entries (target <- source: block):\n");
        for (t, s, m) in &entries {
            let _ = writeln!(table, "  {t} <- {s}: {m}");
        }
    }
    let result = json!({
        "zero": entries.is_empty(),
        "source": support.source.map(|(lo, hi)| [lo, hi]),
        "target": support.target.map(|(lo, hi)| [lo, hi]),
        "rank": rank,
        "entries": entries.iter().map(|(t, s, m)| json!({"target": t, "source": s, "matrix": matrix_rows(m)})).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        report: Report {
            config: base_config(cli, "omega"),
            result,
            assertions: vec![],
        },
        table,
    })
}

fn cocycle(
    cli: &Cli,
    defs: &Definitions,
    k: usize,
    verbose: bool,
    operands: &[String],
) -> Result<Outcome> {
    if k == 0 || k > 3 {
        return Err(InputError(format!("--k must be 1, 2 or 3, got {k}")));
    }
    if operands.len() != 2 * k {
        return Err(Error::Arity {
            expected: 2 * k,
            got: operands.len(),
        }
        .into());
    }
    let env = defs.operators(cli.dim)?;
    let args = operands
        .iter()
        .map(|s| operator(s, cli.dim, &env))
        .collect::<Result<Vec<_>>>()?;
    let value = chern_cocycle(k, &args);
    let mut table = format!("tr(Ω^{k})({}) = {value}\n", operands.join(", "));
    let mut result = json!({ "k": k, "operands": operands, "value": value });
    if verbose {
        let terms = chern_terms(k, &args);
        table.push_str("permutation  sign  trace\n");
        for t in &terms {
            let _ = writeln!(
                table,
                "{:<11}  {:>4}  {}",
                format!("{:?}", t.permutation),
                t.sign,
                t.trace
            );
        }
        result["terms"] = to_value(&terms);
    }
    let mut config = base_config(cli, "cocycle");
    config.k = Some(k);
    Ok(Outcome {
        report: Report {
            config,
            result,
            assertions: vec![],
        },
        table,
    })
}

fn schwinger(cli: &Cli, defs: &Definitions, a: &str, b: &str) -> Result<Outcome> {
    let env = defs.operators(cli.dim)?;
    let value = schwinger_cocycle(&operator(a, cli.dim, &env)?, &operator(b, cli.dim, &env)?)?;
    let table = format!("c_s({a}, {b}) = {value}\n");
    let result = json!({ "operands": [a, b], "value": value });
    Ok(Outcome {
        report: Report {
            config: base_config(cli, "schwinger"),
            result,
            assertions: vec![],
        },
        table,
    })
}

fn identity_table(r: &IdentityReport) -> String {
    let mut table = format!(
        "{}: {} checks on {} samples (seed {}), {} failures\n",
        r.name,
        r.checks,
        r.config.samples,
        r.config.seed,
        r.failures.len()
    );
    for f in &r.failures {
        let _ = writeln!(table, "  FAILED {}:", f.check);
        for a in &f.arguments {
            let _ = writeln!(table, "    {a}");
        }
    }
    table
}

fn verify(cli: &Cli, kind: VerifyKind, s: &SweepArgs) -> Result<Outcome> {
    if s.degree < 0 || s.degree > 64 {
        return Err(InputError(format!(
            "--degree must be between 0 and 64, got {}",
            s.degree
        )));
    }
    let cfg = SweepConfig {
        samples: s.samples,
        seed: s.seed,
        dim: cli.dim,
        degree: s.degree,
        abs_derivative: s.abs_d,
    };
    let mut config = base_config(
        cli,
        &format!("verify {}", to_value(&kind).as_str().unwrap_or_default()),
    );
    config.seed = Some(s.seed);
    config.samples = Some(s.samples);
    config.degree = Some(s.degree);
    let (result, table, assertions) = match kind {
        VerifyKind::Closedness => {
            if s.k == 0 || s.k > 3 {
                return Err(InputError(format!("--k must be 1, 2 or 3, got {}", s.k)));
            }
            config.k = Some(s.k);
            let r = closedness_sweep(s.k, &cfg);
            let mut table = format!(
                "closedness of tr(Ω^{}): {} samples (seed {}), CE coboundary {}; Hochschild coboundary nonzero on {}\n",
                s.k,
                r.rows.len(),
                s.seed,
                if r.passed { "zero on all" } else { "NONZERO" },
                r.hochschild_nonzero
            );
            if let Some(c) = &r.counterexample {
                let _ = writeln!(table, "  counterexample (value {}):", c.ce_value);
                for a in &c.arguments {
                    let _ = writeln!(table, "    {a}");
                }
            }
            let assertions = vec![check("ce coboundary vanishes on every sample", r.passed)];
            (to_value(&r), table, assertions)
        }
        VerifyKind::ResidueTrace => {
            check_depth(s.depth)?;
            config.depth = Some(s.depth);
            let r = residue_trace_sweep(&cfg, s.depth);
            (
                to_value(&r),
                identity_table(&r),
                vec![check("residue vanishes on star commutators", r.passed)],
            )
        }
        VerifyKind::Bianchi => {
            let r = bianchi_sweep(&cfg);
            (
                to_value(&r),
                identity_table(&r),
                vec![check("structure equation and bianchi identity", r.passed)],
            )
        }
        VerifyKind::CommutatorTrace => {
            let r = commutator_trace_sweep(&cfg);
            (
                to_value(&r),
                identity_table(&r),
                vec![check(
                    "trace vanishes on commutators with finite rank",
                    r.passed,
                )],
            )
        }
        VerifyKind::Oracle => {
            let r = oracle_sweep(&cfg);
            (
                to_value(&r),
                identity_table(&r),
                vec![check(
                    "structural arithmetic matches dense windows",
                    r.passed,
                )],
            )
        }
    };
    Ok(Outcome {
        report: Report {
            config,
            result,
            assertions,
        },
        table,
    })
}

fn repro(cli: &Cli, target: ReproTarget) -> Result<Outcome> {
    let d = cli.dim;
    let name = to_value(&target).as_str().unwrap_or_default().to_string();
    let config = base_config(cli, &format!("repro {name}"));
    let (result, mut table, assertions) = match target {
        ReproTarget::FourCocycle => {
            let t = four_cocycle_table([-2, 2, -3, 3], d)?;
            let direct = four_cocycle_on_shifts([-2, 2, -3, 3], d);
            let mut table = format!("tr(Ω²)(z^-2, z^2, z^-3, z^3), d = {d}\n");
            table.push_str("permutation   arguments        sign  n1  n-1  trace\n");
            for r in &t.rows {
                let _ = writeln!(
                    table,
                    "{:<12}  {:<15}  {:>4}  {:>2}  {:>3}  {}",
                    format!("{:?}", r.permutation),
                    format!("{:?}", r.arguments),
                    r.sign,
                    r.n1,
                    r.n_minus1,
                    r.trace
                );
            }
            let _ = writeln!(table, "total (1/24 Σ ε·trace) = {}", t.total);
            let assertions = vec![
                check(
                    format!("base trace = 2d = {}", 2 * d),
                    t.claims.base_trace == GaussianRational::from_int(2 * d as i64),
                ),
                check("every (n1, n-1) in {0,2}^2", t.claims.counts_in_zero_two),
                check(
                    "sign +1 rows have n-1 = 0",
                    t.claims.even_rows_have_no_negative_count,
                ),
                check(
                    "sign -1 rows have n1 = 0",
                    t.claims.odd_rows_have_no_positive_count,
                ),
                check("total > 0", t.claims.total_positive),
                check("row traces equal d(n1 - n-1)", t.rows_match_counts),
                check("total equals chern_cocycle(2)", t.total == direct),
            ];
            (to_value(&t), table, assertions)
        }
        ReproTarget::CaseTable => {
            let r = case_table(6);
            let mut table = format!(
                "Ω(z^m, z^n) e_k over [-6,6]^3: {} triples, {} give +e, {} give -e, {} give 0\n",
                r.checked, r.plus, r.minus, r.zero
            );
            for m in &r.mismatches {
                let _ = writeln!(
                    table,
                    "  mismatch at (m, n, k) = ({}, {}, {})",
                    m.m, m.n, m.k
                );
            }
            let assertions = vec![check(
                "case predicates agree with operator and dense window",
                r.all_agree,
            )];
            (to_value(&r), table, assertions)
        }
        ReproTarget::Schwinger => {
            let c = schwinger_comparison(1..=5, d)?;
            let kappa = calibrate_radul_normalization(1..=5)?;
            let mut table = format!("m  chern  schwinger  radul   (d = {d})\n");
            for r in &c.rows {
                let _ = writeln!(
                    table,
                    "{}  {:>5}  {:>9}  {:>5}",
                    r.m, r.chern, r.schwinger, r.radul
                );
            }
            let show = |x: &Option<GaussianRational>| {
                x.as_ref()
                    .map_or("not constant".to_string(), ToString::to_string)
            };
            let _ = writeln!(
                table,
                "schwinger / chern = {}",
                show(&c.schwinger_over_chern)
            );
            let _ = writeln!(table, "radul / chern = {}", show(&c.radul_over_chern));
            let _ = writeln!(table, "measured residue normalization κ = {kappa}");
            let mut result = to_value(&c);
            result["measured_normalization"] = to_value(&kappa);
            let assertions = vec![
                check("chern values nonzero", c.chern_nonzero),
                check("chern linear in m", c.chern_linear),
                check(
                    "pairwise proportional with m-independent constants",
                    c.proportional,
                ),
                check(
                    "measured κ equals the built-in normalization",
                    kappa == radul_normalization(),
                ),
            ];
            (result, table, assertions)
        }
    };
    for a in &assertions {
        let _ = writeln!(
            table,
            "{} {}",
            if a.passed { "PASS" } else { "FAIL" },
            a.name
        );
    }
    Ok(Outcome {
        report: Report {
            config,
            result,
            assertions,
        },
        table,
    })
}

fn symbol_table(s: &FormalSymbol) -> String {
    let mut table = format!(
        "order {}, depth {}, d = {}\n",
        s.order(),
        s.depth(),
        s.dim()
    );
    for p in s.parts() {
        let _ = writeln!(
            table,
            "  degree {:>3}:  ξ>0: {}   ξ<0: {}",
            p.degree, p.plus, p.minus
        );
    }
    table
}

fn symbol_config(cli: &Cli, command: &str, depth: usize) -> RunConfig {
    let mut config = base_config(cli, command);
    config.depth = Some(depth);
    config
}

fn show_symbol(cli: &Cli, defs: &Definitions, expr: &str, depth: usize) -> Result<Outcome> {
    check_depth(depth)?;
    let s = symbol(expr, cli.dim, depth, &defs.symbols(cli.dim, depth)?)?;
    let table = symbol_table(&s);
    let result = to_value(&SymbolDocument::from_symbol(&s));
    Ok(Outcome {
        report: Report {
            config: symbol_config(cli, "symbol", depth),
            result,
            assertions: vec![],
        },
        table,
    })
}

fn residue(cli: &Cli, defs: &Definitions, expr: &str, depth: usize) -> Result<Outcome> {
    check_depth(depth)?;
    let s = symbol(expr, cli.dim, depth, &defs.symbols(cli.dim, depth)?)?;
    let value = wodzicki_residue(&s)?;
    let table = format!("res({expr}) = {value}\n");
    let result = json!({ "expression": expr, "value": value });
    Ok(Outcome {
        report: Report {
            config: symbol_config(cli, "residue", depth),
            result,
            assertions: vec![],
        },
        table,
    })
}

fn radul(cli: &Cli, defs: &Definitions, x: &str, y: &str, depth: usize) -> Result<Outcome> {
    check_depth(depth)?;
    let env = defs.symbols(cli.dim, depth)?;
    let value = radul_cocycle(
        &symbol(x, cli.dim, depth, &env)?,
        &symbol(y, cli.dim, depth, &env)?,
    )?;
    let kappa = radul_normalization();
    let table = format!("κ·res(σ₊({x}) [σ₊({y}), log Δ]) = {value}   (κ = {kappa})\n");
    let result = json!({ "operands": [x, y], "value": value, "normalization": kappa });
    Ok(Outcome {
        report: Report {
            config: symbol_config(cli, "radul", depth),
            result,
            assertions: vec![],
        },
        table,
    })
}
