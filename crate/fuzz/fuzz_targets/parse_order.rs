#![no_main]

use freeinv::{parse_word, Alphabet, OrderSpec, SyntaxMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::standard(3);
    let Ok(ranking) = parse_word(text, &alphabet, SyntaxMode::Compact) else {
        return;
    };
    let Ok(order) = OrderSpec::new(ranking.into_letters(), alphabet.len()) else {
        return;
    };
    for (i, &l) in order.ranking().iter().enumerate() {
        assert_eq!(order.rank(l), i as u32);
    }
});
