#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(q) = gabinv_core::literal::parse_prime_power(data) {
        assert_eq!(q.q(), q.p().pow(q.n()));
        let again = gabinv_core::literal::parse_prime_power(&q.to_string()).unwrap();
        assert_eq!(again, q);
    }
});
