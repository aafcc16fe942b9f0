#![no_main]

use cograph::Graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = Graph::from_edge_list(text) else { return };
    let again = Graph::from_edge_list(&g.to_edge_list()).expect("printed edge lists parse");
    assert_eq!(again, g);
    if g.vertex_count() <= 64 {
        let _ = cograph::recognize(&g);
    }
});
