#![no_main]
use libfuzzer_sys::fuzz_target;

use gabinv_core::curves::{count_points, CurveModel};

fuzz_target!(|data: &[u8]| {
    let Ok(curve) = serde_json::from_slice::<CurveModel>(data) else {
        return;
    };
    let text = serde_json::to_string(&curve).unwrap();
    assert_eq!(serde_json::from_str::<CurveModel>(&text).unwrap(), curve);
    if curve.field().q() <= 64 {
        let _ = count_points(&curve, 1);
    }
});
