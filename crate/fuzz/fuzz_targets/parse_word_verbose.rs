#![no_main]

use freeinv::{format_word, parse_word, Alphabet, SyntaxMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::new(["x", "y1", "long_name", "Z"]).unwrap();
    let Ok(word) = parse_word(text, &alphabet, SyntaxMode::Verbose) else {
        return;
    };
    let printed = format_word(&word, &alphabet, SyntaxMode::Verbose);
    let again = parse_word(&printed, &alphabet, SyntaxMode::Verbose).expect("formatted word reparses");
    assert_eq!(word, again);
});
