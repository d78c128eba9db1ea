#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(d) = shepkit::diagram::parse_inline(text) {
            assert!(d.path_order().is_some() || d.len() <= 1);
        }
    }
});
