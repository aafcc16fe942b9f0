#![no_main]

use cograph::symbolic::{build_representation, check_axioms, check_via_graphs};
use cograph::SymbolicMap;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = SymbolicMap::from_text(text) else { return };
    assert_eq!(SymbolicMap::from_text(&d.to_text()).as_ref(), Ok(&d));
    if d.vertex_count() <= 12 {
        let direct = check_axioms(&d);
        assert_eq!(direct.is_ok(), check_via_graphs(&d).is_ok());
        if direct.is_ok() && d.vertex_count() > 0 {
            let t = build_representation(&d).expect("ultrametrics are representable");
            assert_eq!(SymbolicMap::from_tree(&t, d.alphabet_size()).as_ref(), Ok(&d));
        }
    }
});
