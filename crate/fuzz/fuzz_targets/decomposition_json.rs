#![no_main]

use cograph::gadgets::literal_graph;
use cograph::Decomposition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let host = literal_graph().graph;
    let Ok(d) = Decomposition::from_json(host.clone(), text) else { return };
    let _ = d.validate();
    assert_eq!(Decomposition::from_json(host, &d.to_json()).as_ref(), Ok(&d));
});
