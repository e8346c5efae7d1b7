//! DOT rendering of rewriting paths: nodes are words, edges are steps.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::branching::{join_branching, CriticalBranching};
use crate::error::Result;
use crate::polygraph::{RewritePath, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::sphere::{apply_move, ThreeSphere};
use crate::word::Word;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One graph over every word met along the paths.
pub fn dot_paths(p: &TwoPolygraph, name: &str, paths: &[RewritePath]) -> Result<String> {
    let mut nodes: Vec<Word> = Vec::new();
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    let mut seen = BTreeSet::new();
    let node = |w: &Word, nodes: &mut Vec<Word>| match nodes.iter().position(|x| x == w) {
        Some(i) => i,
        None => {
            nodes.push(w.clone());
            nodes.len() - 1
        }
    };
    for path in paths {
        let words = path.words(p)?;
        node(&words[0], &mut nodes);
        for (i, step) in path.steps.iter().enumerate() {
            let a = node(&words[i], &mut nodes);
            let b = node(&words[i + 1], &mut nodes);
            let lbl = format!("{step:?}");
            if seen.insert((a, b, lbl.clone())) {
                edges.push((a, b, lbl));
            }
        }
    }
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for (i, w) in nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&p.render(w))).expect("string");
    }
    for (a, b, l) in edges {
        writeln!(out, "  n{a} -> n{b} [label={}];", quote(&l)).expect("string");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn dot_cell(p: &TwoPolygraph, c: &ThreeCell) -> Result<String> {
    dot_paths(p, &c.label, &[c.lhs.clone(), c.rhs.clone()])
}

/// The branching with its joining paths when it joins.
pub fn dot_branching(p: &TwoPolygraph, b: &CriticalBranching) -> Result<String> {
    let paths = match join_branching(p, b)? {
        Some((l, r)) => vec![l, r],
        None => vec![
            RewritePath::new(b.source.clone(), vec![b.left.clone()]),
            RewritePath::new(b.source.clone(), vec![b.right.clone()]),
        ],
    };
    dot_paths(p, &format!("branching on {}", p.render(&b.source)), &paths)
}

/// Every 3-cell boundary in one graph.
pub fn dot_polygraph(x: &ThreeOnePolygraph) -> Result<String> {
    let paths: Vec<RewritePath> = x
        .cells()
        .iter()
        .flat_map(|c| [c.lhs.clone(), c.rhs.clone()])
        .collect();
    dot_paths(x.base(), "polygraph", &paths)
}

/// Every 2-path visited by either side of the sphere.
pub fn dot_sphere(x: &ThreeOnePolygraph, s: &ThreeSphere) -> Result<String> {
    let mut paths = vec![s.start.clone()];
    for side in [&s.lhs, &s.rhs] {
        let mut current = s.start.clone();
        for m in side {
            current = apply_move(x, &current, m)?;
            paths.push(current.clone());
        }
    }
    dot_paths(x.base(), &s.name, &paths)
}
