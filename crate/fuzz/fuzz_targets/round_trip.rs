#![no_main]

use clifford_hardy::format::{decode, encode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(field) = decode(data) {
        assert_eq!(encode(&field), data);
    }
});
