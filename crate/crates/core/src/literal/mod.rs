//! Text formats: the operator/symbol expression language and the JSON documents.

mod document;
mod expr;

pub use document::{
    parse_operator_document, parse_symbol_document, Entry, OperatorDocument, PartDocument,
    SymbolDocument, Term, MAX_DOCUMENT_DEGREE, MAX_DOCUMENT_DEPTH, MAX_DOCUMENT_DIM,
};
pub use expr::{
    eval_operator, eval_scalar, eval_symbol, parse_expression, Expr, BUILTINS, MAX_EXPONENT,
    MAX_MATRIX_DIM,
};
