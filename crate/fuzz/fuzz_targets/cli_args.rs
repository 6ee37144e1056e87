#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut lines = text.splitn(2, '\n');
    let args = lines.next().unwrap_or_default();
    let input = lines.next().unwrap_or_default();
    // bounded verification campaigns are too slow to fuzz
    if args.contains("verify") {
        return;
    }
    let mut argv = vec!["freeinv"];
    argv.extend(args.split('\t'));
    let mut stdin = std::io::Cursor::new(input.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = freeinv::cli::run(argv, &mut stdin, &mut out, &mut err);
    assert!(matches!(status, 0..=2));
});
