use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{curvature, theta};
use crate::lattice::{GaussianRational, LatticeOperator};
use crate::perm::{factorial, signed_permutations};

type FormRule = dyn Fn(&[LatticeOperator]) -> LatticeOperator + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Theta,
    Curvature,
    Wedge,
    Bracket,
    Differential,
    Custom,
}

/// An alternating multilinear map from `arity` operators to an operator.
#[derive(Clone)]
pub struct OperatorForm {
    arity: usize,
    kind: FormKind,
    rule: Arc<FormRule>,
}

impl fmt::Debug for OperatorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorForm")
            .field("arity", &self.arity)
            .field("kind", &self.kind)
            .finish()
    }
}

impl OperatorForm {
    pub fn custom(
        arity: usize,
        rule: impl Fn(&[LatticeOperator]) -> LatticeOperator + Send + Sync + 'static,
    ) -> Self {
        Self::with_kind(arity, FormKind::Custom, rule)
    }

    fn with_kind(
        arity: usize,
        kind: FormKind,
        rule: impl Fn(&[LatticeOperator]) -> LatticeOperator + Send + Sync + 'static,
    ) -> Self {
        Self {
            arity,
            kind,
            rule: Arc::new(rule),
        }
    }

    /// The connection one-form `a ↦ a ∘ p₊`.
    pub fn theta() -> Self {
        Self::with_kind(1, FormKind::Theta, |args| theta(&args[0]))
    }

    /// The curvature two-form `(a, b) ↦ Ω(a, b)`.
    pub fn curvature() -> Self {
        Self::with_kind(2, FormKind::Curvature, |args| curvature(&args[0], &args[1]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Panics if `args.len() != arity`.
    pub fn eval(&self, args: &[LatticeOperator]) -> LatticeOperator {
        assert_eq!(
            args.len(),
            self.arity,
            "form of arity {} evaluated on {} arguments",
            self.arity,
            args.len()
        );
        (self.rule)(args)
    }

    /// `(α∧β)(a₁..a_{p+q}) = 1/(p!q!) Σ_s ε(s) α(a_{s(1..p)}) ∘ β(a_{s(p+1..p+q)})`.
    pub fn wedge(&self, rhs: &Self) -> Self {
        let (alpha, beta) = (self.clone(), rhs.clone());
        let (p, q) = (alpha.arity, beta.arity);
        let norm = GaussianRational::ratio(1, factorial(p) * factorial(q));
        let perms = signed_permutations(p + q);
        Self::with_kind(p + q, FormKind::Wedge, move |args| {
            let mut acc: Option<LatticeOperator> = None;
            for s in &perms {
                let permuted = s.apply(args);
                let term = alpha
                    .eval(&permuted[..p])
                    .compose(&beta.eval(&permuted[p..]));
                let term = if s.sign < 0 { term.neg() } else { term };
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            acc.expect("at least one permutation").scale(&norm)
        })
    }

    /// `[α, β] = α∧β - (-1)^{pq} β∧α`.
    pub fn bracket(&self, rhs: &Self) -> Self {
        let ab = self.wedge(rhs);
        let ba = rhs.wedge(self);
        let odd = (self.arity * rhs.arity) % 2 == 1;
        Self::with_kind(self.arity + rhs.arity, FormKind::Bracket, move |args| {
            let (x, y) = (ab.eval(args), ba.eval(args));
            if odd {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        })
    }

    /// `(dα)(a₀..a_p) = Σ_{i<j} (-1)^{i+j} α([a_i, a_j], a₀..â_i..â_j..a_p)`.
    pub fn differential(&self) -> Self {
        let alpha = self.clone();
        Self::with_kind(self.arity + 1, FormKind::Differential, move |args| {
            let mut acc = LatticeOperator::zero(args[0].dim());
            for i in 0..args.len() {
                for j in (i + 1)..args.len() {
                    let mut inner = vec![args[i].commutator(&args[j])];
                    inner.extend(
                        args.iter()
                            .enumerate()
                            .filter(|(t, _)| *t != i && *t != j)
                            .map(|(_, a)| a.clone()),
                    );
                    let term = alpha.eval(&inner);
                    acc = if (i + j) % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "adding forms of different arity");
        let (a, b) = (self.clone(), rhs.clone());
        Self::custom(self.arity, move |args| a.eval(args).add(&b.eval(args)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.arity, rhs.arity,
            "subtracting forms of different arity"
        );
        let (a, b) = (self.clone(), rhs.clone());
        Self::custom(self.arity, move |args| a.eval(args).sub(&b.eval(args)))
    }
}
