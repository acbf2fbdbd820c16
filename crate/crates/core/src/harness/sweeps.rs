use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense;
use super::random::{self, Sample, SpanConfig};
use crate::cocycles::{
    ce_coboundary, curvature, hochschild_coboundary, smoothing_part, OperatorForm, ScalarCochain,
};
use crate::lattice::{GaussianRational, LatticeOperator};
use crate::symbols::{star_product, wodzicki_residue};

/// Settings shared by the random sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub dim: usize,
    pub degree: i64,
    pub abs_derivative: bool,
}

impl SweepConfig {
    fn span(&self) -> SpanConfig {
        SpanConfig {
            dim: self.dim,
            degree: self.degree,
            abs_derivative: self.abs_derivative,
            max_terms: 2,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn labels(samples: &[Sample]) -> Vec<String> {
    samples.iter().map(|s| s.label.clone()).collect()
}

fn ops(samples: &[Sample]) -> Vec<LatticeOperator> {
    samples.iter().map(|s| s.op.clone()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosednessRow {
    pub arguments: Vec<String>,
    pub ce_value: GaussianRational,
    /// Hochschild coboundary of the same cochain, a diagnostic only.
    pub hochschild_value: GaussianRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosednessReport {
    pub k: usize,
    pub config: SweepConfig,
    pub rows: Vec<ClosednessRow>,
    pub passed: bool,
    pub counterexample: Option<ClosednessRow>,
    pub hochschild_nonzero: usize,
}

/// Evaluates the Chevalley-Eilenberg coboundary of `tr Ωᵏ` on random
/// `(2k+1)`-tuples; closedness means every value is exactly zero.
pub fn closedness_sweep(k: usize, config: &SweepConfig) -> ClosednessReport {
    let mut rng = config.rng();
    let chern = ScalarCochain::chern(k);
    let span = config.span();
    let rows: Vec<ClosednessRow> = (0..config.samples)
        .map(|_| {
            let args: Vec<Sample> = (0..=2 * k)
                .map(|_| random::span_element(&mut rng, &span))
                .collect();
            let a = ops(&args);
            ClosednessRow {
                arguments: labels(&args),
                ce_value: ce_coboundary(&chern, &a),
                hochschild_value: hochschild_coboundary(&chern, &a),
            }
        })
        .collect();
    let counterexample = rows.iter().find(|r| !r.ce_value.is_zero()).cloned();
    ClosednessReport {
        k,
        config: *config,
        passed: counterexample.is_none(),
        hochschild_nonzero: rows
            .iter()
            .filter(|r| !r.hochschild_value.is_zero())
            .count(),
        rows,
        counterexample,
    }
}

/// A failed identity on a concrete tuple.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub arguments: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub config: SweepConfig,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl IdentityReport {
    fn new(name: &str, config: &SweepConfig) -> Self {
        Self {
            name: name.into(),
            config: *config,
            checks: 0,
            failures: Vec::new(),
            passed: true,
        }
    }

    fn record(&mut self, ok: bool, check: &str, arguments: Vec<String>) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(Failure {
                check: check.into(),
                arguments,
            });
        }
    }
}

/// `dθ + θ∧θ = Ω` on pairs and `dΩ + [θ, Ω] = 0` on triples.
pub fn bianchi_sweep(config: &SweepConfig) -> IdentityReport {
    let mut rng = config.rng();
    let span = config.span();
    let theta = OperatorForm::theta();
    let omega = OperatorForm::curvature();
    let structure = theta.differential().add(&theta.wedge(&theta));
    let bianchi = omega.differential().add(&theta.bracket(&omega));
    let mut report = IdentityReport::new("bianchi", config);
    for _ in 0..config.samples {
        let args: Vec<Sample> = (0..3)
            .map(|_| random::span_element(&mut rng, &span))
            .collect();
        let a = ops(&args);
        report.record(
            structure.eval(&a[..2]) == omega.eval(&a[..2]),
            "structure equation",
            labels(&args[..2]),
        );
        report.record(
            bianchi.eval(&a).is_zero(),
            "bianchi identity",
            labels(&args),
        );
    }
    report
}

/// `res(A⋆B - B⋆A) = 0` on random classical symbols with orders in `[-2, 2]`.
pub fn residue_trace_sweep(config: &SweepConfig, depth: usize) -> IdentityReport {
    let mut rng = config.rng();
    let mut report = IdentityReport::new("residue-trace", config);
    for _ in 0..config.samples {
        let (oa, ob) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let a = random::symbol(&mut rng, config.dim, oa, depth, config.degree);
        let b = random::symbol(&mut rng, config.dim, ob, depth, config.degree);
        let comm = star_product(&a, &b, depth).sub(&star_product(&b, &a, depth));
        let ok = wodzicki_residue(&comm).is_ok_and(|r| r.is_zero());
        report.record(
            ok,
            "residue of commutator",
            [&a, &b]
                .iter()
                .map(|s| serde_json::to_string(s).expect("symbols serialize"))
                .collect(),
        );
    }
    report
}

/// `tr[F, B] = 0` for finite-rank `F` and arbitrary span elements `B`
/// (including `|D|`, `p₊` and composites).
pub fn commutator_trace_sweep(config: &SweepConfig) -> IdentityReport {
    let mut rng = config.rng();
    let span = SpanConfig {
        abs_derivative: true,
        ..config.span()
    };
    let mut report = IdentityReport::new("commutator-trace", config);
    for _ in 0..config.samples {
        let f = random::finite_rank_element(&mut rng, config.dim, config.degree.max(1));
        let mut b = random::span_element(&mut rng, &span);
        if rng.gen_bool(0.3) {
            b = Sample {
                label: format!("({})*P_PLUS", b.label),
                op: b.op.compose(&LatticeOperator::projection_plus(config.dim)),
            };
        }
        let ok = f.op.commutator(&b.op).trace().is_ok_and(|t| t.is_zero());
        report.record(ok, "trace of commutator", vec![f.label, b.label]);
    }
    report
}

fn bandwidth(op: &LatticeOperator) -> i64 {
    op.diagonals().keys().map(|j| j.abs()).max().unwrap_or(0)
}

/// Structural arithmetic against dense windows: composition, curvature traces,
/// and `Ω = s`.
pub fn oracle_sweep(config: &SweepConfig) -> IdentityReport {
    const RADIUS: i64 = 4;
    let mut rng = config.rng();
    let span = SpanConfig {
        abs_derivative: true,
        ..config.span()
    };
    let d = config.dim;
    let mut report = IdentityReport::new("oracle", config);
    for _ in 0..config.samples {
        let a = random::span_element(&mut rng, &span);
        let b = random::span_element(&mut rng, &span);
        let names = vec![a.label.clone(), b.label.clone()];

        let outer = RADIUS + bandwidth(&b.op);
        let product = dense::mat_mul(&a.op.dense_window(outer), &b.op.dense_window(outer));
        let inner = dense::sub_block(
            &product,
            (outer - RADIUS) as usize * d,
            (2 * RADIUS + 1) as usize * d,
        );
        report.record(
            inner == a.op.compose(&b.op).dense_window(RADIUS),
            "composition",
            names.clone(),
        );

        let omega = curvature(&a.op, &b.op);
        report.record(
            omega == smoothing_part(&a.op, &b.op),
            "curvature equals smoothing part",
            names.clone(),
        );
        let support = omega
            .finite_rank_support()
            .expect("curvature has finite rank");
        let reach = [support.source, support.target]
            .into_iter()
            .flatten()
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
            .max()
            .unwrap_or(0);
        let window_trace = dense::trace(&omega.dense_window(reach));
        report.record(
            omega.trace().ok() == Some(window_trace),
            "curvature trace",
            names,
        );
    }
    report
}
