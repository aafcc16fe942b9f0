#![no_main]

use cograph::gadgets::{build_formula_graph, nae_assignments, partition_from_assignment};
use cograph::NaeFormula;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = NaeFormula::from_text(text) else { return };
    assert_eq!(NaeFormula::from_text(&f.to_text()).as_ref(), Ok(&f));
    if f.num_vars() <= 8 && f.clauses().len() <= 8 {
        let g = build_formula_graph(&f);
        assert_eq!(g.roles.len(), g.graph.vertex_count());
        if let Some(a) = nae_assignments(&f).first() {
            partition_from_assignment(&f, a).expect("NAE assignments give valid partitions");
        }
    }
});
