#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = gabinv_core::curves::parse_corpus(data);
});
