//! Critical branchings, their joins, and critical triple branchings.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::normalize::{Leftmost, Rewriter, DEFAULT_BUDGET};
use crate::polygraph::{RewritePath, RewriteStep, Rule, TwoPolygraph};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Overlap,
    Inclusion,
    EqualSource,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Overlap => "overlap",
            Shape::Inclusion => "inclusion",
            Shape::EqualSource => "equal_source",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalBranching {
    pub source: Word,
    pub left: RewriteStep,
    pub right: RewriteStep,
    pub shape: Shape,
}

fn sort_key(b: &CriticalBranching) -> (String, String, usize, usize, Word) {
    (
        b.left.rule.to_string(),
        b.right.rule.to_string(),
        b.left.position,
        b.right.position,
        b.source.clone(),
    )
}

fn ordered(a: RewriteStep, b: RewriteStep) -> (RewriteStep, RewriteStep) {
    if (a.position, &a.rule) <= (b.position, &b.rule) {
        (a, b)
    } else {
        (b, a)
    }
}

fn active(p: &TwoPolygraph) -> Vec<&Rule> {
    p.rules()
        .iter()
        .filter(|r| r.orientable && !r.source.is_empty())
        .collect()
}

/// All critical branchings, in canonical order.
pub fn critical_branchings(p: &TwoPolygraph) -> Vec<CriticalBranching> {
    let rules = active(p);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r1 in &rules {
        let s1 = &r1.source;
        for r2 in &rules {
            let s2 = &r2.source;
            for pos in 0..s1.len() {
                let same = r1.label == r2.label && pos == 0;
                if same {
                    continue;
                }
                let (source, shape) = if pos + s2.len() <= s1.len() {
                    if !s1.occurs_at(s2, pos) {
                        continue;
                    }
                    let shape = if pos == 0 && s1.len() == s2.len() {
                        Shape::EqualSource
                    } else {
                        Shape::Inclusion
                    };
                    (s1.clone(), shape)
                } else {
                    let common = s1.len() - pos;
                    if s1.letters()[pos..] != s2.letters()[..common] {
                        continue;
                    }
                    (s1.concat(&s2.slice(common, s2.len())), Shape::Overlap)
                };
                let (left, right) = ordered(
                    RewriteStep::forward(&r1.label, 0),
                    RewriteStep::forward(&r2.label, pos),
                );
                let b = CriticalBranching {
                    source,
                    left,
                    right,
                    shape,
                };
                if seen.insert(sort_key(&b)) {
                    out.push(b);
                }
            }
        }
    }
    out.sort_by_key(sort_key);
    out
}

/// The two completing paths when both one-step targets share a normal form.
pub fn join_branching(
    p: &TwoPolygraph,
    b: &CriticalBranching,
) -> Result<Option<(RewritePath, RewritePath)>> {
    join_with(&Rewriter::new(p), b, DEFAULT_BUDGET)
}

pub(crate) fn join_with(
    rw: &Rewriter,
    b: &CriticalBranching,
    budget: usize,
) -> Result<Option<(RewritePath, RewritePath)>> {
    let p = rw.polygraph();
    let complete = |step: &RewriteStep| -> Result<(Word, RewritePath)> {
        let first = RewritePath::new(b.source.clone(), vec![step.clone()]);
        let mid = first.replay(p)?;
        let (nf, tail) = rw.normalize(&mid, &Leftmost, budget)?;
        Ok((nf, first.then(&tail)))
    };
    let (a, pa) = complete(&b.left)?;
    let (c, pc) = complete(&b.right)?;
    Ok((a == c).then_some((pa, pc)))
}

/// Three pairwise distinct forward steps on a common source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleBranching {
    pub source: Word,
    pub steps: [RewriteStep; 3],
}

/// Critical triple branchings: every step overlaps another one, the source
/// is the union of the redexes and the leftmost redex sits at offset 0.
pub fn triple_branchings(p: &TwoPolygraph) -> Vec<TripleBranching> {
    let rules = active(p);
    let mut out = BTreeSet::new();
    for r1 in &rules {
        let e1 = r1.source.len();
        for r2 in &rules {
            for p2 in 0..e1 {
                let e2 = p2 + r2.source.len();
                for r3 in &rules {
                    for p3 in p2..e1.max(e2) {
                        let placed = [(*r1, 0usize), (*r2, p2), (*r3, p3)];
                        if let Some(t) = build_triple(&placed) {
                            out.insert(t);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn build_triple(placed: &[(&Rule, usize); 3]) -> Option<TripleBranching> {
    let span = |(r, p): &(&Rule, usize)| (*p, *p + r.source.len());
    for i in 0..3 {
        for j in i + 1..3 {
            if placed[i].0.label == placed[j].0.label && placed[i].1 == placed[j].1 {
                return None;
            }
        }
    }
    let overlaps = |a: (usize, usize), b: (usize, usize)| a.0 < b.1 && b.0 < a.1;
    for i in 0..3 {
        if !(0..3).any(|j| j != i && overlaps(span(&placed[i]), span(&placed[j]))) {
            return None;
        }
    }
    let len = placed.iter().map(|x| span(x).1).max().unwrap_or(0);
    let mut letters: Vec<Option<usize>> = vec![None; len];
    for (rule, pos) in placed {
        for (k, &g) in rule.source.letters().iter().enumerate() {
            match letters[pos + k] {
                Some(h) if h != g => return None,
                _ => letters[pos + k] = Some(g),
            }
        }
    }
    let source = Word(letters.into_iter().collect::<Option<Vec<_>>>()?);
    let mut steps: Vec<RewriteStep> = placed
        .iter()
        .map(|(r, p)| RewriteStep::forward(&r.label, *p))
        .collect();
    steps.sort_by(|a, b| (a.position, &a.rule).cmp(&(b.position, &b.rule)));
    Some(TripleBranching {
        source,
        steps: [steps[0].clone(), steps[1].clone(), steps[2].clone()],
    })
}
