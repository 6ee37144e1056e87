#![no_main]

use freeinv::{is_irreducible, munn_equal, normal_form, parse_word, Alphabet, OrderSpec, SyntaxMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 64 {
        return;
    }
    let alphabet = Alphabet::standard(3);
    let Ok(word) = parse_word(text, &alphabet, SyntaxMode::Compact) else {
        return;
    };
    let ord = OrderSpec::default_for(3);
    let nf = normal_form(&word, &ord);
    assert!(is_irreducible(&nf, &ord));
    assert!(munn_equal(&word, &nf));
    assert_eq!(normal_form(&nf, &ord), nf);
});
