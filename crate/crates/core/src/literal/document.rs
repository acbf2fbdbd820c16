//! JSON documents for Laurent multiplication operators and formal symbols.
//!
//! ```json
//! {"dim": 1, "terms": [{"m": -2, "matrix": [[["1/2", "0/1"]]]}]}
//! {"dim": 1, "order": 0, "depth": 6,
//!  "parts": [{"degree": 0, "plus": [{"m": 1, "matrix": [["1"]]}], "minus": []}]}
//! ```
//! A matrix entry is either a `[re, im]` pair or a single real rational string.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{parse_rational, GaussianRational, LaurentPoly, MatrixCoeff};
use crate::symbols::{FormalSymbol, PartialSymbol};

pub const MAX_DOCUMENT_DIM: usize = 16;
pub const MAX_DOCUMENT_DEGREE: i64 = 1_000_000;
pub const MAX_DOCUMENT_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Pair([String; 2]),
    Real(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub m: i64,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub dim: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDocument {
    pub degree: i64,
    #[serde(default)]
    pub plus: Vec<Term>,
    #[serde(default)]
    pub minus: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDocument {
    pub dim: usize,
    pub order: i64,
    /// Defaults to reaching the lowest listed part.
    #[serde(default)]
    pub depth: Option<usize>,
    pub parts: Vec<PartDocument>,
}

fn entry_value(e: &Entry) -> Result<GaussianRational> {
    let parse = |s: &str| {
        parse_rational(s).ok_or_else(|| Error::Document(format!("invalid rational `{s}`")))
    };
    match e {
        Entry::Real(re) => Ok(GaussianRational::real(parse(re)?)),
        Entry::Pair([re, im]) => Ok(GaussianRational::new(parse(re)?, parse(im)?)),
    }
}

fn entry_of(c: &GaussianRational) -> Entry {
    Entry::Pair(c.to_pair())
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DOCUMENT_DIM {
        return Err(Error::Document(format!(
            "dim must be between 1 and {MAX_DOCUMENT_DIM}"
        )));
    }
    Ok(())
}

fn check_degree(m: i64) -> Result<()> {
    if m.abs() > MAX_DOCUMENT_DEGREE {
        return Err(Error::Document(format!("degree {m} out of range")));
    }
    Ok(())
}

fn laurent_of_terms(terms: &[Term], dim: usize) -> Result<LaurentPoly> {
    let mut coeffs = Vec::with_capacity(terms.len());
    for t in terms {
        check_degree(t.m)?;
        if t.matrix.len() != dim || t.matrix.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.matrix.len(),
            });
        }
        let rows = t
            .matrix
            .iter()
            .map(|r| r.iter().map(entry_value).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let c = MatrixCoeff::from_rows(rows).ok_or(Error::DimensionMismatch {
            expected: dim,
            found: 0,
        })?;
        coeffs.push((t.m, c));
    }
    Ok(LaurentPoly::from_terms(dim, coeffs))
}

fn terms_of_laurent(p: &LaurentPoly) -> Vec<Term> {
    p.coeffs()
        .iter()
        .map(|(m, c)| Term {
            m: *m,
            matrix: c.rows().map(|r| r.iter().map(entry_of).collect()).collect(),
        })
        .collect()
}

impl OperatorDocument {
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        check_dim(self.dim)?;
        laurent_of_terms(&self.terms, self.dim)
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        Self {
            dim: p.dim(),
            terms: terms_of_laurent(p),
        }
    }
}

impl SymbolDocument {
    pub fn to_symbol(&self) -> Result<FormalSymbol> {
        check_dim(self.dim)?;
        check_degree(self.order)?;
        let lowest = self
            .parts
            .iter()
            .map(|p| p.degree)
            .min()
            .unwrap_or(self.order);
        check_degree(lowest)?;
        let depth = match self.depth {
            Some(d) => d,
            None => usize::try_from(self.order - lowest + 1)
                .map_err(|_| Error::Document("part above the order".into()))?,
        };
        if depth == 0 || depth > MAX_DOCUMENT_DEPTH {
            return Err(Error::Document(format!(
                "depth must be between 1 and {MAX_DOCUMENT_DEPTH}"
            )));
        }
        let parts = self
            .parts
            .iter()
            .map(|p| {
                check_degree(p.degree)?;
                Ok(PartialSymbol {
                    degree: p.degree,
                    plus: laurent_of_terms(&p.plus, self.dim)?,
                    minus: laurent_of_terms(&p.minus, self.dim)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FormalSymbol::from_parts(self.dim, self.order, depth, parts)
    }

    pub fn from_symbol(s: &FormalSymbol) -> Self {
        Self {
            dim: s.dim(),
            order: s.order(),
            depth: Some(s.depth()),
            parts: s
                .parts()
                .iter()
                .map(|p| PartDocument {
                    degree: p.degree,
                    plus: terms_of_laurent(&p.plus),
                    minus: terms_of_laurent(&p.minus),
                })
                .collect(),
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Document(e.to_string()))
}

/// Parses an operator document into the Laurent polynomial it multiplies by.
pub fn parse_operator_document(src: &str) -> Result<LaurentPoly> {
    from_json::<OperatorDocument>(src)?.to_laurent()
}

pub fn parse_symbol_document(src: &str) -> Result<FormalSymbol> {
    from_json::<SymbolDocument>(src)?.to_symbol()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let src = r#"{"dim": 2, "terms": [{"m": -2, "matrix": [[["1/2", "0"], "3"], ["0", ["0", "-1"]]]}]}"#;
        let p = parse_operator_document(src).unwrap();
        assert_eq!(p.coeff(-2).get(0, 0), &GaussianRational::ratio(1, 2));
        assert_eq!(p.coeff(-2).get(1, 1), &-GaussianRational::i());
        let json = serde_json::to_string(&OperatorDocument::from_laurent(&p)).unwrap();
        assert_eq!(parse_operator_document(&json).unwrap(), p);
    }

    #[test]
    fn symbol_round_trip() {
        let src = r#"{"dim": 1, "order": 1, "parts": [
            {"degree": 1, "plus": [{"m": 0, "matrix": [["1"]]}], "minus": [{"m": 0, "matrix": [["-1"]]}]},
            {"degree": -1, "plus": [{"m": 0, "matrix": [["1"]]}]}]}"#;
        let s = parse_symbol_document(src).unwrap();
        assert_eq!(s.depth(), 3);
        assert_eq!(crate::symbols::wodzicki_residue(&s).unwrap(), 1.into());
        let json = serde_json::to_string(&SymbolDocument::from_symbol(&s)).unwrap();
        assert_eq!(parse_symbol_document(&json).unwrap(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_operator_document("{"),
            Err(Error::Document(_))
        ));
        assert!(matches!(
            parse_operator_document(r#"{"dim": 0, "terms": []}"#),
            Err(Error::Document(_))
        ));
        let wrong = r#"{"dim": 2, "terms": [{"m": 0, "matrix": [["1"]]}]}"#;
        assert!(matches!(
            parse_operator_document(wrong),
            Err(Error::DimensionMismatch { .. })
        ));
        let zero_den = r#"{"dim": 1, "terms": [{"m": 0, "matrix": [["1/0"]]}]}"#;
        assert!(matches!(
            parse_operator_document(zero_den),
            Err(Error::Document(_))
        ));
        let above = r#"{"dim": 1, "order": 0, "parts": [{"degree": 2}]}"#;
        assert!(parse_symbol_document(above).is_err());
        let deep = r#"{"dim": 1, "order": 0, "depth": 100000, "parts": []}"#;
        assert!(parse_symbol_document(deep).is_err());
    }
}
