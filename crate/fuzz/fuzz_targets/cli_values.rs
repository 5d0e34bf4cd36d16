#![no_main]

use clifford_hardy::args::{parse_blade, parse_complex, parse_dims, parse_extents, parse_frequency};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_dims(text);
    let _ = parse_frequency(text);
    if let Ok(extents) = parse_extents(text) {
        assert!(extents.iter().all(|l| l.is_finite() && *l > 0.0));
    }
    if let Ok(c) = parse_complex(text) {
        assert!(c.re.is_finite() && c.im.is_finite());
    }
    for n in 1..=8 {
        if let Ok(blade) = parse_blade(text, n) {
            assert!(blade.mask() < 1 << n);
        }
    }
});
