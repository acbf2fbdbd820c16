#![no_main]

use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use pdo_cocycles::literal::{eval_operator, parse_expression};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if src.len() > 256 {
        return;
    }
    if let Ok(e) = parse_expression(src) {
        // Evaluation may reject the expression but must not panic.
        let _ = eval_operator(&e, 1, &BTreeMap::new());
    }
});
