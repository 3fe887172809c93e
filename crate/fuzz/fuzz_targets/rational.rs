#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) {
        if let Ok(x) = bdtwist::json::rational_from_json(&v) {
            // Whatever parses must survive a round trip.
            assert_eq!(bdtwist::json::rational_from_json(&bdtwist::json::rational_to_json(&x)).unwrap(), x);
        }
    }
});
