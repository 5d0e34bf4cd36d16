#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok((header, offset)) = clifford_hardy::format::decode_header(data) {
        assert!(offset <= data.len());
        assert_eq!(clifford_hardy::format::encode_header(&header), data[..offset]);
    }
});
