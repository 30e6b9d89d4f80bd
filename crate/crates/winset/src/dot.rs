//! Graphviz output for inspection.

use std::fmt::Write as _;

use winset_core::automata::Dfa;
use winset_core::game::ExplicitGame;
use winset_core::word::Alphabet;

/// One edge per `(source, target)` pair, labelled with all its symbols.
pub fn dfa_to_dot(alphabet: &Alphabet, d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n  start -> 0;\n");
    for q in 0..d.state_count() {
        let shape = if d.is_accepting(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    let mut labels: Vec<((usize, usize), Vec<&str>)> = Vec::new();
    for (p, a, q) in d.transitions() {
        match labels.iter_mut().find(|(k, _)| *k == (p, q)) {
            Some((_, v)) => v.push(alphabet.token(a)),
            None => labels.push(((p, q), vec![alphabet.token(a)])),
        }
    }
    for ((p, q), syms) in labels {
        let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", syms.join(","));
    }
    out.push_str("}\n");
    out
}

/// Player 0 vertices as ellipses, Player 1 as boxes, safe ones filled,
/// initial ones bold.
pub fn explicit_game_to_dot(alphabet: &Alphabet, g: &ExplicitGame) -> String {
    let mut out = String::from("digraph game {\n");
    for (i, w) in g.vertices.iter().enumerate() {
        let shape = if g.player1[i] { "box" } else { "ellipse" };
        let mut style = Vec::new();
        if g.safe[i] {
            style.push("filled");
        }
        if g.initial[i] {
            style.push("bold");
        }
        let _ = writeln!(
            out,
            "  {i} [label=\"{}\", shape={shape}, style=\"{}\"];",
            alphabet.render(w).replace('"', "\\\""),
            style.join(",")
        );
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    out
}
