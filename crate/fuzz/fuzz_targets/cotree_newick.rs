#![no_main]

use cograph::cotree::{cotree_to_graph, parse_cotree, recognize};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(t) = parse_cotree(text) else { return };
    assert_eq!(parse_cotree(&t.to_string()).as_ref(), Ok(&t));
    if t.leaf_count() <= 256 {
        let back = recognize(&cotree_to_graph(&t)).expect("cotrees have leaves").cotree();
        assert_eq!(back.as_ref(), Some(&t));
    }
});
