#![no_main]

use libfuzzer_sys::fuzz_target;
use shepkit::diagram::{parse_dsl, parse_inline};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = shepkit::parse_diagram(text) else { return };
    let dsl = d.render_dsl();
    assert_eq!(parse_dsl(&dsl).expect("rendered DSL parses"), d);
    if let Some(inline) = d.render_inline() {
        let again = parse_inline(&inline).expect("rendered inline form parses");
        assert_eq!(again.render_inline().as_deref(), Some(inline.as_str()));
    }
});
