use std::path::PathBuf;

use cograph::cotree::parse_cotree;
use cograph::gadgets::{literal_graph, SPOKE_SIDE, TRIANGLE_SIDE};
use cograph::symbolic::parse_symbol_tree;
use cograph::{Decomposition, Graph};
use cograph_cli::run;
use serde_json::Value;

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn cograph(args: &[&str], stdin: &str) -> Run {
    let mut argv = vec!["cograph"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let report = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
    Run {
        code,
        report,
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cograph-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn payload_decomposition(report: &Value) -> Decomposition {
    let host = Graph::from_edge_list(report["payload"]["graph"].as_str().unwrap()).unwrap();
    Decomposition::from_json_value(host, report["payload"]["decomposition"].clone()).unwrap()
}

const P4: &str = "4 3\n0 1\n1 2\n2 3\n";
const FIG6: &str = "6 3\n0 3 1\n1 2 3\n3 4 5\n";

#[test]
fn recognize_p4_reports_witness() {
    let r = cograph(&["recognize", "-"], P4);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["verdict"], "not_cograph");
    let w = &r.report["payload"]["witness"];
    assert_eq!((w["a"].as_u64(), w["d"].as_u64()), (Some(0), Some(3)));
    assert_eq!(r.report["command"][0], "recognize");
}

#[test]
fn recognize_cograph_emits_parseable_cotree() {
    let r = cograph(&["recognize", "-"], &Graph::cycle(4).to_edge_list());
    assert_eq!(r.code, 0);
    let text = r.report["payload"]["cotree"].as_str().unwrap();
    assert_eq!(parse_cotree(text).unwrap().to_string(), text);
}

#[test]
fn cotree_round_trip_is_byte_identical() {
    let r = cograph(&["cotree", "-"], "(2,(1,0)0)1;");
    assert_eq!(r.code, 0);
    let canonical = r.report["payload"]["cotree"].as_str().unwrap().to_string();
    let again = cograph(&["cotree", "-"], &canonical);
    assert_eq!(again.report["payload"]["cotree"], canonical.as_str());
    assert_eq!(again.report["payload"]["graph"], r.report["payload"]["graph"]);
    let graph = r.report["payload"]["graph"].as_str().unwrap();
    let back = cograph(&["recognize", "-"], graph);
    assert_eq!(back.report["payload"]["cotree"], canonical.as_str());
}

#[test]
fn exact_decomposition_of_literal_graph() {
    let path = fixture("literal.graph", &literal_graph().graph.to_edge_list());
    let r = cograph(
        &["decompose", "--mode", "partition", "--strategy", "exact", "--k-max", "3", path.to_str().unwrap()],
        "",
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["k"], 2);
    let d = payload_decomposition(&r.report);
    assert_eq!(d.validate(), Ok(()));
    let mut expected = vec![TRIANGLE_SIDE.to_vec(), SPOKE_SIDE.to_vec()];
    for class in &mut expected {
        class.sort();
    }
    let mut got = d.classes().to_vec();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert!(r.report["stats"]["nodes"].as_u64().is_some());
}

#[test]
fn gadget_output_pipes_into_vizing() {
    let gadget = cograph(&["gadget", "formula", "-"], FIG6);
    assert_eq!(gadget.code, 0);
    assert_eq!(gadget.report["payload"]["vertices"], 72);
    let piped = serde_json::to_string(&gadget.report).unwrap();
    let r = cograph(&["decompose", "--strategy", "vizing", "-"], &piped);
    assert_eq!(r.code, 0);
    let d = payload_decomposition(&r.report);
    assert!(d.k() <= d.host().max_degree() + 1);
    assert_eq!(d.validate(), Ok(()));
}

#[test]
fn infeasible_and_timeout_are_distinct() {
    let c5 = Graph::cycle(5).to_edge_list();
    let r = cograph(&["decompose", "--k-max", "1", "-"], &c5);
    assert_eq!((r.code, r.report["verdict"].as_str()), (1, Some("infeasible")));

    let q4 = Graph::hypercube(4).to_edge_list();
    let r = cograph(&["decompose", "--k-max", "3", "--budget-nodes", "0", "-"], &q4);
    assert_eq!((r.code, r.report["verdict"].as_str()), (3, Some("timeout")));
    assert_eq!(r.report["payload"]["best_known_k"], 5);
}

#[test]
fn jobs_do_not_change_results() {
    let c7 = Graph::cycle(7).to_edge_list();
    let one = cograph(&["decompose", "--jobs", "1", "-"], &c7);
    let four = cograph(&["decompose", "--jobs", "4", "-"], &c7);
    assert_eq!(one.report["payload"], four.report["payload"]);
}

#[test]
fn cover_mode_and_greedy() {
    let c5 = Graph::cycle(5).to_edge_list();
    let r = cograph(&["decompose", "--mode", "cover", "-"], &c5);
    assert_eq!(r.report["payload"]["decomposition"]["mode"], "cover");
    assert_eq!(r.report["payload"]["k"], 2);
    let g = cograph(&["decompose", "--strategy", "greedy", "-"], &Graph::complete(5).to_edge_list());
    assert_eq!(g.report["payload"]["k"], 1);
}

#[test]
fn malformed_input_is_a_usage_error_with_line() {
    let r = cograph(&["recognize", "-"], "3 2\n0 1\n1 x\n");
    assert_eq!(r.code, 2);
    assert_eq!(r.report["verdict"], "error");
    assert!(r.report["payload"]["message"].as_str().unwrap().contains("line 3"));
    assert!(r.stderr.contains("line 3"));

    let missing = cograph(&["recognize", "/nonexistent/file.graph"], "");
    assert_eq!(missing.code, 2);
    let unknown = cograph(&["frobnicate"], "");
    assert_eq!(unknown.code, 2);
    assert_eq!(unknown.report["verdict"], "error");
}

#[test]
fn coarsen_from_decompose_report() {
    let k4 = Graph::complete(4).to_edge_list();
    let viz = cograph(&["decompose", "--strategy", "vizing", "-"], &k4);
    let coarse = cograph(&["coarsen", "-"], &serde_json::to_string(&viz.report).unwrap());
    assert_eq!(coarse.code, 0);
    assert_eq!(coarse.report["payload"]["k"], 1);

    let check = cograph(&["coarsen", "--check", "-"], &serde_json::to_string(&viz.report).unwrap());
    assert_eq!((check.code, check.report["verdict"].as_str()), (1, Some("not_coarsest")));
}

#[test]
fn coarsen_accepts_bare_document_with_graph_flag() {
    let host = fixture("c4.graph", &Graph::cycle(4).to_edge_list());
    let doc = r#"{"mode":"partition","k":2,"classes":[[[0,1],[1,2]],[[2,3],[0,3]]]}"#;
    let r = cograph(&["coarsen", "--graph", host.to_str().unwrap(), "-"], doc);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["k"], 1);
    let no_host = cograph(&["coarsen", "-"], doc);
    assert_eq!(no_host.code, 2);
}

#[test]
fn hypercube_layers_are_coarsest() {
    let layers = cograph(&["hypercube", "6", "--layers"], "");
    assert_eq!(layers.code, 0);
    assert_eq!(layers.report["payload"]["k"], 3);
    let check = cograph(&["coarsen", "--check", "-"], &serde_json::to_string(&layers.report).unwrap());
    assert_eq!((check.code, check.report["verdict"].as_str()), (0, Some("coarsest")));
    assert_eq!(check.report["payload"]["unions_checked"], 4);
    assert_eq!(cograph(&["hypercube", "3", "--layers"], "").code, 2);
    assert_eq!(cograph(&["hypercube", "4"], "").report["payload"]["edges"], 32);
}

#[test]
fn reduction_round_trip() {
    let formula = fixture("fig6.nae", FIG6);
    let f = formula.to_str().unwrap();
    let forward = cograph(&["reduce", "to-graph", f, "--assignment", "110010"], "");
    assert_eq!(forward.code, 0, "{:?}", forward.report);
    assert_eq!(forward.report["payload"]["k"], 2);
    let back = cograph(
        &["reduce", "from-partition", f, "-"],
        &serde_json::to_string(&forward.report).unwrap(),
    );
    assert_eq!(back.code, 0);
    assert_eq!(back.report["payload"]["assignment"], "110010");

    let bad = cograph(&["reduce", "to-graph", f, "--assignment", "111111"], "");
    assert_eq!((bad.code, bad.report["verdict"].as_str()), (1, Some("not_nae")));
    let short = cograph(&["reduce", "to-graph", f, "--assignment", "11"], "");
    assert_eq!(short.code, 2);
}

#[test]
fn extraction_failure_is_negative() {
    let formula = fixture("one.nae", "3 1\n0 1 2\n");
    let host = cograph(&["gadget", "clause"], "");
    let edges = Graph::from_edge_list(host.report["payload"]["graph"].as_str().unwrap()).unwrap();
    let all_in_one = Decomposition::new(edges.clone(), vec![edges.edges().to_vec(), vec![]], cograph::Mode::Partition);
    let r = cograph(&["reduce", "from-partition", formula.to_str().unwrap(), "-"], &all_in_one.to_json());
    assert_eq!((r.code, r.report["verdict"].as_str()), (1, Some("extraction_failed")));
}

#[test]
fn gadgets_have_expected_sizes_and_roles() {
    for (kind, n, m) in [("literal", 9, 12), ("extended", 12, 15), ("clause", 33, 48)] {
        let r = cograph(&["gadget", kind], "");
        assert_eq!(r.code, 0);
        assert_eq!((r.report["payload"]["vertices"].as_u64(), r.report["payload"]["edges"].as_u64()), (Some(n), Some(m)));
        assert_eq!(r.report["payload"]["roles"].as_object().unwrap().len() as u64, n);
    }
}

#[test]
fn ultrametric_commands() {
    let good = "3 2\n- s0 s0\ns0 - s1\ns0 s1 -\n";
    let r = cograph(&["ultrametric", "check", "-"], good);
    assert_eq!((r.code, r.report["verdict"].as_str()), (0, Some("ultrametric")));
    let rep = cograph(&["ultrametric", "represent", "-"], good);
    let tree = rep.report["payload"]["tree"].as_str().unwrap();
    assert_eq!(parse_symbol_tree(tree).unwrap().to_string(), tree);

    let three = "3 3\n- s0 s1\ns0 - s2\ns1 s2 -\n";
    let bad = cograph(&["ultrametric", "check", "-"], three);
    assert_eq!(bad.code, 1);
    assert_eq!(bad.report["payload"]["violation"]["axiom"], "u2");
    assert_eq!(cograph(&["ultrametric", "represent", "-"], three).code, 1);
}

#[test]
fn p4_listing() {
    let r = cograph(&["p4s", "-"], &Graph::cycle(5).to_edge_list());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["count"], 5);
    assert_eq!(cograph(&["p4s", "-"], &Graph::complete(4).to_edge_list()).report["verdict"], "p4_free");
}

#[test]
fn help_exits_zero() {
    assert_eq!(cograph(&["--help"], "").code, 0);
}
