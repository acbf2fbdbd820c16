use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::curvature;
use crate::lattice::{GaussianRational, LatticeOperator};
use crate::perm::{factorial, signed_permutations};

type CochainRule = dyn Fn(&[LatticeOperator]) -> GaussianRational + Send + Sync;

/// A scalar-valued multilinear functional on `arity` operators.
#[derive(Clone)]
pub struct ScalarCochain {
    arity: usize,
    skew: bool,
    rule: Arc<CochainRule>,
}

impl fmt::Debug for ScalarCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarCochain")
            .field("arity", &self.arity)
            .field("skew", &self.skew)
            .finish()
    }
}

impl ScalarCochain {
    pub fn new(
        arity: usize,
        skew: bool,
        rule: impl Fn(&[LatticeOperator]) -> GaussianRational + Send + Sync + 'static,
    ) -> Self {
        Self {
            arity,
            skew,
            rule: Arc::new(rule),
        }
    }

    pub fn zero(arity: usize) -> Self {
        Self::new(arity, true, |_| GaussianRational::zero())
    }

    /// The normalized Chern-Weil cochain `(a₁..a_{2k}) ↦ chern_cocycle(k, a)`.
    pub fn chern(k: usize) -> Self {
        Self::new(2 * k, true, move |args| chern_cocycle(k, args))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn eval(&self, args: &[LatticeOperator]) -> GaussianRational {
        assert_eq!(
            args.len(),
            self.arity,
            "cochain of arity {} evaluated on {} arguments",
            self.arity,
            args.len()
        );
        (self.rule)(args)
    }

    /// The Chevalley-Eilenberg coboundary as a new cochain of arity `p + 1`.
    pub fn ce_differential(&self) -> Self {
        let c = self.clone();
        Self::new(self.arity + 1, self.skew, move |args| {
            ce_coboundary(&c, args)
        })
    }
}

/// One row of the antisymmetrization sum defining `chern_cocycle`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernTerm {
    pub permutation: Vec<usize>,
    pub sign: i8,
    pub trace: GaussianRational,
}

fn curvature_table(args: &[LatticeOperator]) -> HashMap<(usize, usize), LatticeOperator> {
    let mut table = HashMap::new();
    for i in 0..args.len() {
        for j in (i + 1)..args.len() {
            let omega = curvature(&args[i], &args[j]);
            table.insert((j, i), omega.neg());
            table.insert((i, j), omega);
        }
        table.insert((i, i), LatticeOperator::zero(args[i].dim()));
    }
    table
}

/// Per-permutation traces `tr(Ω(a_{s(1)}, a_{s(2)}) ∘ … ∘ Ω(a_{s(2k-1)}, a_{s(2k)}))`.
pub fn chern_terms(k: usize, args: &[LatticeOperator]) -> Vec<ChernTerm> {
    assert!(k >= 1, "chern_cocycle needs k ≥ 1");
    assert_eq!(
        args.len(),
        2 * k,
        "chern_cocycle({k}) takes {} arguments",
        2 * k
    );
    let table = curvature_table(args);
    signed_permutations(2 * k)
        .into_iter()
        .map(|s| {
            let factors: Vec<&LatticeOperator> = s
                .images
                .chunks(2)
                .map(|pair| &table[&(pair[0], pair[1])])
                .collect();
            let (last, init) = factors.split_last().expect("k ≥ 1");
            let trace = match init.split_first() {
                None => last.trace(),
                Some((first, rest)) => {
                    let head = rest
                        .iter()
                        .fold((*first).clone(), |acc, omega| acc.compose(omega));
                    head.trace_of_product(last)
                }
            }
            .expect("products of curvature values have finite rank");
            ChernTerm {
                permutation: s.images,
                sign: s.sign,
                trace,
            }
        })
        .collect()
}

/// `(1/(2k)!) Σ_{s∈S_{2k}} ε(s) tr(Ω(a_{s(1)},a_{s(2)}) ∘ … ∘ Ω(a_{s(2k-1)},a_{s(2k)}))`.
pub fn chern_cocycle(k: usize, args: &[LatticeOperator]) -> GaussianRational {
    let total: GaussianRational = chern_terms(k, args)
        .into_iter()
        .map(|t| if t.sign < 0 { -t.trace } else { t.trace })
        .sum();
    total * GaussianRational::ratio(1, factorial(2 * k))
}

/// `Σ_{i<j} (-1)^{i+j} c([a_i, a_j], a₀..â_i..â_j..a_p)`.
pub fn ce_coboundary(c: &ScalarCochain, args: &[LatticeOperator]) -> GaussianRational {
    assert_eq!(
        args.len(),
        c.arity() + 1,
        "coboundary of a {}-cochain takes {} arguments",
        c.arity(),
        c.arity() + 1
    );
    let mut acc = GaussianRational::zero();
    for i in 0..args.len() {
        for j in (i + 1)..args.len() {
            let mut inner = vec![args[i].commutator(&args[j])];
            inner.extend(
                args.iter()
                    .enumerate()
                    .filter(|(t, _)| *t != i && *t != j)
                    .map(|(_, a)| a.clone()),
            );
            let v = c.eval(&inner);
            if (i + j) % 2 == 0 {
                acc += &v;
            } else {
                acc -= &v;
            }
        }
    }
    acc
}

/// Hochschild coboundary of a multilinear functional:
/// `Σ_{i<p} (-1)^i c(a₀, …, a_i a_{i+1}, …, a_p) + (-1)^p c(a_p a₀, a₁, …, a_{p-1})`.
pub fn hochschild_coboundary(c: &ScalarCochain, args: &[LatticeOperator]) -> GaussianRational {
    let p = c.arity();
    assert_eq!(
        args.len(),
        p + 1,
        "coboundary of a {p}-cochain takes {} arguments",
        p + 1
    );
    if p == 0 {
        return GaussianRational::zero();
    }
    let mut acc = GaussianRational::zero();
    for i in 0..p {
        let mut inner: Vec<LatticeOperator> = args[..i].to_vec();
        inner.push(args[i].compose(&args[i + 1]));
        inner.extend_from_slice(&args[i + 2..]);
        let v = c.eval(&inner);
        if i % 2 == 0 {
            acc += &v;
        } else {
            acc -= &v;
        }
    }
    let mut wrap = vec![args[p].compose(&args[0])];
    wrap.extend_from_slice(&args[1..p]);
    let v = c.eval(&wrap);
    if p % 2 == 0 {
        acc += &v;
    } else {
        acc -= &v;
    }
    acc
}
