#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argv; parsing only, nothing is evaluated.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = std::iter::once("tfbm").chain(text.split('\0')).collect();
    // keep the fuzzer off the filesystem
    if args.iter().any(|a| a.contains("config")) {
        return;
    }
    let _ = tfbm_cli::parse_invocation(args);
});
