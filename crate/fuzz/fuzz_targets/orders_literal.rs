#![no_main]
use libfuzzer_sys::fuzz_target;

use gabinv_core::extensions::{construct_b, TruncatedExtensionSpec};
use gabinv_core::FiniteAbelianGroup;

fuzz_target!(|data: &str| {
    let Ok(orders) = gabinv_core::literal::parse_orders(data) else {
        return;
    };
    if orders.len() > 8 {
        return;
    }
    for l in [2, 3] {
        let a = FiniteAbelianGroup::cyclic(l).unwrap();
        if let Ok(spec) = TruncatedExtensionSpec::new(l, a, orders.clone()) {
            let _ = construct_b(&spec);
        }
    }
});
