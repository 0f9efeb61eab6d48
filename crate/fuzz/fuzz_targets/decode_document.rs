#![no_main]

use cyclofactor_cli::document::{decode_document, render_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = decode_document(text) {
        let again = render_json(&doc);
        assert_eq!(decode_document(&again).unwrap(), doc);
    }
});
