#![no_main]

use libfuzzer_sys::fuzz_target;
use pdo_cocycles::literal::parse_operator_document;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        let _ = parse_operator_document(src);
    }
});
