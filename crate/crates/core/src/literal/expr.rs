use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GaussianRational, LatticeOperator, LaurentPoly, MatrixCoeff, Rational};
use crate::symbols::{star_product, symbol_of_builtin, symbol_of_multiplication, FormalSymbol};

/// Largest accepted `|m|` in `z^m` and largest matrix literal size.
pub const MAX_EXPONENT: i64 = 1_000_000;
pub const MAX_MATRIX_DIM: usize = 16;

pub const BUILTINS: [&str; 7] = ["P_PLUS", "P_MINUS", "P_ZERO", "D", "ABS_D", "ID", "DELTA"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Expr {
    Scalar { value: GaussianRational },
    Shift { m: i64 },
    Unit { i: usize, j: usize },
    Matrix { rows: Vec<Vec<Expr>> },
    Builtin { name: String },
    Name { name: String },
    Neg { arg: Box<Expr> },
    Add { lhs: Box<Expr>, rhs: Box<Expr> },
    Sub { lhs: Box<Expr>, rhs: Box<Expr> },
    Mul { lhs: Box<Expr>, rhs: Box<Expr> },
    Commutator { lhs: Box<Expr>, rhs: Box<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Number { text: String, imaginary: bool },
    Ident(String),
    Punct(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // `p/q` only when a digit follows the slash.
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text = src[start..i].to_string();
            let imaginary = i < bytes.len()
                && bytes[i] == b'i'
                && !bytes.get(i + 1).is_some_and(|b| is_ident(*b));
            if imaginary {
                i += 1;
            }
            out.push((start, Tok::Number { text, imaginary }));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && is_ident(bytes[i]) {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if b"+-*^()[],;".contains(&c) {
            out.push((i, Tok::Punct(c as char)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(err(i, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

fn is_ident(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add {
                    lhs: Box::new(lhs),
                    rhs: Box::new(self.term()?),
                };
            } else if self.eat('-') {
                lhs = Expr::Sub {
                    lhs: Box::new(lhs),
                    rhs: Box::new(self.term()?),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul {
                lhs: Box::new(lhs),
                rhs: Box::new(self.unary()?),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg {
                arg: Box::new(self.unary()?),
            });
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<i64> {
        let pos = self.pos();
        let negative = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Number {
                text,
                imaginary: false,
            }) if !text.contains('/') => {
                self.at += 1;
                let v: i64 = text.parse().map_err(|_| err(pos, "integer out of range"))?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(err(self.pos(), "expected an integer")),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let pos = self.pos();
        let v = self.integer()?;
        usize::try_from(v)
            .ok()
            .filter(|&v| v < MAX_MATRIX_DIM)
            .ok_or_else(|| err(pos, "matrix index out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(err(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Number { text, imaginary } => {
                let r = crate::lattice::parse_rational(&text)
                    .ok_or_else(|| err(pos, "invalid rational"))?;
                let value = if imaginary {
                    GaussianRational::new(Rational::from_integer(BigInt::from(0)), r)
                } else {
                    GaussianRational::real(r)
                };
                Ok(Expr::Scalar { value })
            }
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct('[') => {
                let lhs = self.expr()?;
                self.expect(',')?;
                let rhs = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Commutator {
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                })
            }
            Tok::Ident(name) if name == "z" => {
                let m = if self.eat('^') {
                    let at = self.pos();
                    let m = self.integer()?;
                    if m.abs() > MAX_EXPONENT {
                        return Err(err(at, "exponent out of range"));
                    }
                    m
                } else {
                    1
                };
                Ok(Expr::Shift { m })
            }
            Tok::Ident(name) if name == "E" && self.peek() == Some(&Tok::Punct('(')) => {
                self.at += 1;
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                self.expect(')')?;
                Ok(Expr::Unit { i, j })
            }
            Tok::Ident(name) if name == "mat" && self.peek() == Some(&Tok::Punct('(')) => {
                self.at += 1;
                let mut rows = vec![vec![self.expr()?]];
                loop {
                    if self.eat(',') {
                        rows.last_mut().expect("nonempty").push(self.expr()?);
                    } else if self.eat(';') {
                        rows.push(vec![self.expr()?]);
                    } else {
                        self.expect(')')?;
                        break;
                    }
                }
                let n = rows.len();
                if n > MAX_MATRIX_DIM || rows.iter().any(|r| r.len() != n) {
                    return Err(err(pos, "matrix literal must be square and at most 16x16"));
                }
                Ok(Expr::Matrix { rows })
            }
            Tok::Ident(name) if BUILTINS.contains(&name.as_str()) => Ok(Expr::Builtin { name }),
            Tok::Ident(name) => Ok(Expr::Name { name }),
            Tok::Punct(c) => Err(err(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses an operator or symbol expression.
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := unary ('*' unary)*
/// unary  := '-' unary | atom
/// atom   := number | 'z' ['^' int] | 'E' '(' int ',' int ')'
///         | 'mat' '(' expr (',' expr)* (';' expr (',' expr)*)* ')'
///         | BUILTIN | NAME | '(' expr ')' | '[' expr ',' expr ']'
/// number := digits ['/' digits] ['i']
/// ```
/// `*` is composition, `[a, b]` the commutator, `E(i,j)` a matrix unit and
/// `BUILTIN` one of `P_PLUS P_MINUS P_ZERO D ABS_D ID DELTA`.
pub fn parse_expression(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Folds an expression built only from numbers into a scalar.
pub fn eval_scalar(e: &Expr) -> Result<GaussianRational> {
    match e {
        Expr::Scalar { value } => Ok(value.clone()),
        Expr::Neg { arg } => Ok(-eval_scalar(arg)?),
        Expr::Add { lhs, rhs } => Ok(eval_scalar(lhs)? + eval_scalar(rhs)?),
        Expr::Sub { lhs, rhs } => Ok(eval_scalar(lhs)? - eval_scalar(rhs)?),
        Expr::Mul { lhs, rhs } => Ok(eval_scalar(lhs)? * eval_scalar(rhs)?),
        _ => Err(Error::Document("matrix entries must be numbers".into())),
    }
}

fn matrix(rows: &[Vec<Expr>], dim: usize) -> Result<MatrixCoeff> {
    if rows.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(eval_scalar).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MatrixCoeff::from_rows(rows).ok_or(Error::DimensionMismatch {
        expected: dim,
        found: 0,
    })
}

fn unit(i: usize, j: usize, dim: usize) -> Result<MatrixCoeff> {
    if i >= dim || j >= dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: i.max(j) + 1,
        });
    }
    Ok(MatrixCoeff::unit(dim, i, j))
}

fn builtin_operator(name: &str, dim: usize) -> Result<LatticeOperator> {
    Ok(match name {
        "P_PLUS" => LatticeOperator::projection_plus(dim),
        "P_MINUS" => LatticeOperator::projection_minus(dim),
        "P_ZERO" => LatticeOperator::projection_zero(dim),
        "D" => LatticeOperator::derivative(dim),
        "ABS_D" => LatticeOperator::abs_derivative(dim),
        "ID" => LatticeOperator::identity(dim),
        "DELTA" => LatticeOperator::laplacian(dim),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    })
}

/// Evaluates to a lattice operator on `ℓ²(ℤ) ⊗ ℂ^dim`; numbers act as scalar
/// multiples of the identity.
pub fn eval_operator(
    e: &Expr,
    dim: usize,
    env: &BTreeMap<String, LatticeOperator>,
) -> Result<LatticeOperator> {
    let rec = |x: &Expr| eval_operator(x, dim, env);
    Ok(match e {
        Expr::Scalar { value } => LatticeOperator::scalar(dim, value.clone()),
        Expr::Shift { m } => LatticeOperator::from_laurent(&LaurentPoly::z(*m, dim)),
        Expr::Unit { i, j } => {
            LatticeOperator::from_laurent(&LaurentPoly::constant(unit(*i, *j, dim)?))
        }
        Expr::Matrix { rows } => {
            LatticeOperator::from_laurent(&LaurentPoly::constant(matrix(rows, dim)?))
        }
        Expr::Builtin { name } => builtin_operator(name, dim)?,
        Expr::Name { name } => {
            let op = env
                .get(name)
                .ok_or_else(|| Error::UnboundName(name.clone()))?;
            if op.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: op.dim(),
                });
            }
            op.clone()
        }
        Expr::Neg { arg } => rec(arg)?.neg(),
        Expr::Add { lhs, rhs } => rec(lhs)?.add(&rec(rhs)?),
        Expr::Sub { lhs, rhs } => rec(lhs)?.sub(&rec(rhs)?),
        Expr::Mul { lhs, rhs } => {
            let l = rec(lhs)?;
            match rhs.as_ref() {
                Expr::Scalar { value } => l.scale(value),
                _ => l.compose(&rec(rhs)?),
            }
        }
        Expr::Commutator { lhs, rhs } => rec(lhs)?.commutator(&rec(rhs)?),
    })
}

/// Evaluates to a formal symbol truncated at `depth`; `*` is the star product.
/// `P_ZERO` has the zero symbol.
pub fn eval_symbol(
    e: &Expr,
    dim: usize,
    depth: usize,
    env: &BTreeMap<String, FormalSymbol>,
) -> Result<FormalSymbol> {
    let rec = |x: &Expr| eval_symbol(x, dim, depth, env);
    let constant = |c: MatrixCoeff| symbol_of_multiplication(&LaurentPoly::constant(c), depth);
    Ok(match e {
        Expr::Scalar { value } => constant(MatrixCoeff::scalar(dim, value.clone())),
        Expr::Shift { m } => symbol_of_multiplication(&LaurentPoly::z(*m, dim), depth),
        Expr::Unit { i, j } => constant(unit(*i, *j, dim)?),
        Expr::Matrix { rows } => constant(matrix(rows, dim)?),
        Expr::Builtin { name } => symbol_of_builtin(name, dim, depth)?,
        Expr::Name { name } => {
            let s = env
                .get(name)
                .ok_or_else(|| Error::UnboundName(name.clone()))?;
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            s.clone()
        }
        Expr::Neg { arg } => rec(arg)?.scale(&-GaussianRational::one()),
        Expr::Add { lhs, rhs } => rec(lhs)?.add(&rec(rhs)?),
        Expr::Sub { lhs, rhs } => rec(lhs)?.sub(&rec(rhs)?),
        Expr::Mul { lhs, rhs } => star_product(&rec(lhs)?, &rec(rhs)?, depth),
        Expr::Commutator { lhs, rhs } => {
            let (a, b) = (rec(lhs)?, rec(rhs)?);
            star_product(&a, &b, depth).sub(&star_product(&b, &a, depth))
        }
    })
}
