#![no_main]

use freeinv::{classify, is_idempotent, parse_idempotent, parse_word, Alphabet, OrderSpec, SyntaxMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::standard(4);
    let Ok(word) = parse_word(text, &alphabet, SyntaxMode::Compact) else {
        return;
    };
    let c = classify(&word, &OrderSpec::default_for(4));
    match parse_idempotent(&word) {
        Ok(tree) => {
            assert!(c.idempotent && is_idempotent(&word));
            assert_eq!(tree.flatten(), word);
            assert_eq!(tree.is_canonical(), c.canonical);
        }
        Err(_) => assert!(!c.idempotent && !c.canonical),
    }
});
