//! Frozen values computed by an independent reference implementation.

use overhang::diagrams::{enumerate_diagrams, parse_diagram, tl_projection};
use overhang::paths::{enumerate_dyck, enumerate_paths, parse_path, path_leq, root_dyck, stack_lengths};
use overhang::tile::{delta_trace, phi, psi};

/// Every diagram of degree 3 with its image path and δ-displacements.
const PHI_N3: [(&str, &str, [usize; 3]); 15] = [
    ("1-2,3-4,5-6", "121212", [0, 0, 0]),
    ("1-2,3-5,4-6", "1212'1222", [1, 0, 0]),
    ("1-2,3-6,4-5", "121122", [0, 0, 0]),
    ("1-3,2-4,5-6", "12'122212", [0, 1, 0]),
    ("1-3,2-5,4-6", "1212'2'12222", [2, 0, 0]),
    ("1-3,2-6,4-5", "12'122122", [0, 1, 0]),
    ("1-4,2-3,5-6", "112212", [0, 0, 0]),
    ("1-4,2-5,3-6", "12'12'122222", [2, 1, 0]),
    ("1-4,2-6,3-5", "112'2'122222", [2, 0, 0]),
    ("1-5,2-3,4-6", "1212'2'2'122222", [3, 0, 0]),
    ("1-5,2-4,3-6", "12'112222", [1, 1, 0]),
    ("1-5,2-6,3-4", "12'121222", [0, 1, 0]),
    ("1-6,2-3,4-5", "112122", [0, 0, 0]),
    ("1-6,2-4,3-5", "112'12222", [1, 0, 0]),
    ("1-6,2-5,3-4", "111222", [0, 0, 0]),
];

const PROJECTIONS_N3: [(&str, &str); 6] = [
    ("1-2,3-5,4-6", "1-2,3-6,4-5"),
    ("1-3,2-4,5-6", "1-4,2-3,5-6"),
    ("1-3,2-5,4-6", "1-2,3-6,4-5"),
    ("1-3,2-6,4-5", "1-6,2-3,4-5"),
    ("1-4,2-5,3-6", "1-6,2-5,3-4"),
    ("1-3,2-4", "1-4,2-3"),
];

#[test]
fn phi_table_degree_three() {
    for (d, p, x) in PHI_N3 {
        let d = parse_diagram(d).unwrap();
        let p = parse_path(p).unwrap();
        assert_eq!(phi(&d), p, "phi({d})");
        assert_eq!(psi(&p), d, "psi({p})");
        assert_eq!(delta_trace(&d).x, x, "X of {d}");
        assert_eq!(stack_lengths(&p), x, "stacks of {p}");
    }
}

#[test]
fn projection_table() {
    for (d, t) in PROJECTIONS_N3 {
        assert_eq!(tl_projection(&parse_diagram(d).unwrap()), parse_diagram(t).unwrap());
    }
}

#[test]
fn census() {
    let mut degree_two: Vec<String> = enumerate_paths(2).iter().map(|p| p.to_string()).collect();
    degree_two.sort();
    assert_eq!(degree_two, ["1122", "12'1222", "1212"]);
    // (2n-1)!! through the recurrence |J_n| = (2n-1)|J_{n-1}|
    let mut want = 1;
    for n in 1..=6 {
        want *= 2 * n - 1;
        assert_eq!(enumerate_diagrams(n).len(), want);
        assert_eq!(enumerate_paths(n).len(), want);
    }
}

/// The root is the largest Dyck path below `p`, found by brute force.
#[test]
fn root_by_brute_force() {
    for n in 1..=4 {
        let dyck = enumerate_dyck(n);
        for p in enumerate_paths(n) {
            let below: Vec<_> = dyck.iter().filter(|t| path_leq(t, &p).unwrap()).collect();
            let maximal: Vec<_> = below
                .iter()
                .filter(|t| !below.iter().any(|u| u != *t && path_leq(t, u).unwrap()))
                .collect();
            assert_eq!(maximal.len(), 1, "{p}");
            assert_eq!(**maximal[0], root_dyck(&p), "{p}");
        }
    }
}

#[test]
fn record_formats() {
    let d = parse_diagram("1-5,2-3,4-6").unwrap();
    let rec = serde_json::to_value(d.record()).unwrap();
    assert_eq!(rec, serde_json::json!({"n": 3, "pairs": [[1, 5], [2, 3], [4, 6]]}));
    let trace = serde_json::to_value(delta_trace(&d).record()).unwrap();
    assert_eq!(trace["X"], serde_json::json!([3, 0, 0]));
    let p = serde_json::to_value(phi(&d).record()).unwrap();
    assert_eq!(p["word"], "1212'2'2'122222");
    assert_eq!(p["degree"], 3);
    let back: overhang::paths::PathRecord = serde_json::from_value(p).unwrap();
    assert_eq!(psi(&back.to_path().unwrap()), d);
}
