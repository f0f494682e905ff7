#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(g) = gabinv_core::literal::parse_group(data) {
        // the canonical literal parses back to the same group
        assert_eq!(gabinv_core::literal::parse_group(&g.to_string()).unwrap(), g);
    }
});
