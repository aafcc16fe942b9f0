//! Replays the fuzz corpus seeds through the parsers and their round trips.

use std::fs;
use std::path::PathBuf;

use cograph::cotree::parse_cotree;
use cograph::gadgets::literal_graph;
use cograph::{Decomposition, Graph, NaeFormula, SymbolicMap};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn edge_list_seeds() {
    for (name, text) in seeds("edge_list") {
        let g = Graph::from_edge_list(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()), Ok(g), "{name}");
    }
}

#[test]
fn cotree_seeds() {
    for (name, text) in seeds("cotree_newick") {
        let t = parse_cotree(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_cotree(&t.to_string()), Ok(t), "{name}");
    }
}

#[test]
fn symbolic_map_seeds() {
    for (name, text) in seeds("symbolic_map") {
        let d = SymbolicMap::from_text(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(SymbolicMap::from_text(&d.to_text()), Ok(d), "{name}");
    }
}

#[test]
fn formula_seeds() {
    for (name, text) in seeds("nae_formula") {
        let f = NaeFormula::from_text(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(NaeFormula::from_text(&f.to_text()), Ok(f), "{name}");
    }
}

#[test]
fn decomposition_seeds() {
    let host = literal_graph().graph;
    for (name, text) in seeds("decomposition_json") {
        let d = Decomposition::from_json(host.clone(), &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Decomposition::from_json(host.clone(), &d.to_json()), Ok(d), "{name}");
    }
}
