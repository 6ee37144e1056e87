#![no_main]

use freeinv::{format_word, parse_word, Alphabet, SyntaxMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::standard(26);
    let Ok(word) = parse_word(text, &alphabet, SyntaxMode::Compact) else {
        return;
    };
    let printed = format_word(&word, &alphabet, SyntaxMode::Compact);
    let again = parse_word(&printed, &alphabet, SyntaxMode::Compact).expect("formatted word reparses");
    assert_eq!(word, again);
});
