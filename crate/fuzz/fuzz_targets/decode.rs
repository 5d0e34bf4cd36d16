#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(field) = clifford_hardy::format::decode(data) {
        assert_eq!(field.data().len(), field.header().points() * field.header().blades());
    }
});
