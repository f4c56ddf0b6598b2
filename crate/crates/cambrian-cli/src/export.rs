//! DOT and JSON emitters for Hasse diagrams.

use cambrian::lattice::Lattice;
use cambrian::projections::cambrian_lattice;
use cambrian::{CoxeterElementContext, WeakOrderLattice};
use serde::Serialize;
use std::fmt::Write as _;

/// A Hasse diagram ready for rendering: nodes are element ids labelled by
/// their sorting word in compact digit form, edges go upward.
pub struct LatticeView {
    nodes: Vec<(usize, String)>,
    covers: Vec<(usize, usize)>,
}

pub fn weak_order_view(lat: &WeakOrderLattice<'_>, ctx: &CoxeterElementContext<'_>) -> LatticeView {
    let sys = lat.system();
    let nodes = sys
        .elements()
        .map(|w| (w.index(), ctx.sorting_word(w).render_compact()))
        .collect();
    let mut covers = Vec::new();
    for w in sys.elements() {
        for &v in lat.upper_covers_of(w) {
            covers.push((w.index(), v.index()));
        }
    }
    covers.sort_unstable();
    LatticeView { nodes, covers }
}

pub fn cambrian_view(lat: &WeakOrderLattice<'_>, ctx: &CoxeterElementContext<'_>) -> LatticeView {
    let sub = cambrian_lattice(lat, ctx);
    let nodes = sub
        .members()
        .iter()
        .map(|&w| (w, ctx.sorting_word(lat.system().element(w)).render_compact()))
        .collect();
    let mut covers = Vec::new();
    for local in 0..sub.len() {
        for lower in sub.lower_covers(local) {
            covers.push((sub.to_base(lower), sub.to_base(local)));
        }
    }
    covers.sort_unstable();
    LatticeView { nodes, covers }
}

pub fn to_dot(view: &LatticeView) -> String {
    let mut out = String::from("digraph {\n  rankdir=BT;\n");
    for (id, label) in &view.nodes {
        let _ = writeln!(out, "  {id} [label=\"{label}\"];");
    }
    for (lo, hi) in &view.covers {
        let _ = writeln!(out, "  {lo} -> {hi};");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct ElementJson {
    id: usize,
    word: String,
}

#[derive(Serialize)]
struct LatticeJson {
    covers: Vec<[usize; 2]>,
    elements: Vec<ElementJson>,
}

pub fn to_json(view: &LatticeView) -> String {
    let json = LatticeJson {
        covers: view.covers.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        elements: view
            .nodes
            .iter()
            .map(|(id, word)| ElementJson { id: *id, word: word.clone() })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&json).expect("serializable");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use cambrian::{CoxeterMatrix, CoxeterSystem, Word};

    #[test]
    fn a1_dot() {
        let m = CoxeterMatrix::new(1, vec![vec![1]]).unwrap();
        let sys = CoxeterSystem::build(&m, 10).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let ctx = CoxeterElementContext::new(&sys, Word(vec![0])).unwrap();
        let dot = to_dot(&weak_order_view(&lat, &ctx));
        assert_eq!(
            dot,
            "digraph {\n  rankdir=BT;\n  0 [label=\"\"];\n  1 [label=\"0\"];\n  0 -> 1;\n}\n"
        );
    }

    #[test]
    fn b2_cambrian_has_six_nodes() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::dihedral(4).unwrap(), 100).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let ctx = CoxeterElementContext::new(&sys, Word(vec![0, 1])).unwrap();
        let view = cambrian_view(&lat, &ctx);
        assert_eq!(view.nodes.len(), 6);
        assert_eq!(view.covers.len(), 6);
        let json = to_json(&view);
        assert!(json.contains("\"covers\""));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["elements"].as_array().unwrap().len(), 6);
    }
}
