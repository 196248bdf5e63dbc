#![no_main]

use libfuzzer_sys::fuzz_target;
use tfbm::SubordinatorSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = text.parse::<SubordinatorSpec>() {
        // anything accepted must be valid and survive a print/parse round trip
        spec.validate().expect("parser accepted an invalid spec");
        let again: SubordinatorSpec = spec.to_string().parse().expect("printed spec does not parse");
        assert_eq!(again, spec);
    }
});
