//! Replays the checked-in fuzz corpus through the parsers so the seeds stay valid
//! inputs and never panic.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use pdo_cocycles::literal::{
    eval_operator, parse_expression, parse_operator_document, parse_symbol_document,
};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn expression_seeds_parse() {
    let mut env = BTreeMap::new();
    env.insert(
        "a".to_string(),
        eval_operator(&parse_expression("z^1").unwrap(), 1, &BTreeMap::new()).unwrap(),
    );
    env.insert(
        "b".to_string(),
        eval_operator(&parse_expression("z^-1").unwrap(), 1, &BTreeMap::new()).unwrap(),
    );
    for (path, src) in seeds("parse_expression") {
        let e = parse_expression(&src).unwrap_or_else(|err| panic!("{path}: {err}"));
        // Matrix literals and units need d = 2; the rest evaluate at d = 1.
        let dim = if src.contains("mat(") || src.contains("E(") {
            2
        } else {
            1
        };
        let env = if dim == 1 {
            env.clone()
        } else {
            BTreeMap::new()
        };
        eval_operator(&e, dim, &env).unwrap_or_else(|err| panic!("{path}: {err}"));
    }
}

#[test]
fn operator_document_seeds_parse() {
    for (path, src) in seeds("parse_operator_document") {
        parse_operator_document(&src).unwrap_or_else(|err| panic!("{path}: {err}"));
    }
}

#[test]
fn symbol_document_seeds_parse() {
    for (path, src) in seeds("parse_symbol_document") {
        parse_symbol_document(&src).unwrap_or_else(|err| panic!("{path}: {err}"));
    }
}

#[test]
fn mangled_seeds_do_not_panic() {
    for target in [
        "parse_expression",
        "parse_operator_document",
        "parse_symbol_document",
    ] {
        for (_, src) in seeds(target) {
            for cut in 0..src.len() {
                if !src.is_char_boundary(cut) {
                    continue;
                }
                let s = &src[..cut];
                let _ = parse_expression(s).map(|e| eval_operator(&e, 1, &BTreeMap::new()));
                let _ = parse_operator_document(s);
                let _ = parse_symbol_document(s);
            }
        }
    }
}
