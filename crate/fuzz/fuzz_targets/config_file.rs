#![no_main]

use libfuzzer_sys::fuzz_target;
use tfbm_cli::config::{parse_config, KNOWN_KEYS};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(map) = parse_config(text) {
        for key in KNOWN_KEYS {
            let _ = map.parsed::<f64>(key);
        }
        assert!(map.len() <= KNOWN_KEYS.len());
    }
});
