//! Knuth-Bendix completion, Squier completion and their composite.

use std::collections::HashSet;

use crate::branching::{critical_branchings, join_with, CriticalBranching};
use crate::error::{Error, Result};
use crate::normalize::{Leftmost, Rewriter, DEFAULT_BUDGET};
use crate::order::{Comparison, TerminationOrder};
use crate::polygraph::{Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Examined {
        branching: CriticalBranching,
        joined: bool,
    },
    Added {
        rule: Rule,
        from: CriticalBranching,
    },
}

/// Completion in rounds: every round examines the new critical branchings
/// against the current rules, then adds one oriented rule per distinct pair
/// of non-joining normal forms.
pub fn knuth_bendix(
    p: &TwoPolygraph,
    order: &dyn TerminationOrder,
    budget: usize,
) -> Result<(TwoPolygraph, Vec<TraceEvent>)> {
    for rule in p.rules().iter().filter(|r| r.orientable) {
        if order.compare(&rule.source, &rule.target) != Comparison::Greater {
            return Err(Error::OrientationFailure {
                left: p.render(&rule.source),
                right: p.render(&rule.target),
            });
        }
    }
    let mut current = p.clone();
    let mut trace = Vec::new();
    let mut examined = HashSet::new();
    let mut spent = 0usize;
    let mut fresh = 0usize;
    loop {
        let rw = Rewriter::new(&current);
        let mut pairs: HashSet<(Word, Word)> = current
            .rules()
            .iter()
            .map(|r| (r.source.clone(), r.target.clone()))
            .collect();
        let mut added = Vec::new();
        for b in critical_branchings(&current) {
            if !examined.insert(b.clone()) {
                continue;
            }
            let mut reduce = |w: Word| -> Result<Word> {
                let remaining = budget.saturating_sub(spent);
                let (nf, path) = rw
                    .normalize(&w, &Leftmost, remaining)
                    .map_err(|_| Error::BudgetExceeded(budget))?;
                spent += path.len() + 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                Ok(nf)
            };
            let a = reduce(crate::polygraph::apply_step(&b.source, &b.left, &current)?)?;
            let c = reduce(crate::polygraph::apply_step(&b.source, &b.right, &current)?)?;
            let joined = a == c;
            trace.push(TraceEvent::Examined {
                branching: b.clone(),
                joined,
            });
            if joined {
                continue;
            }
            let (source, target) = match order.compare(&a, &c) {
                Comparison::Greater => (a, c),
                Comparison::Less => (c, a),
                _ => {
                    return Err(Error::OrientationFailure {
                        left: current.render(&a),
                        right: current.render(&c),
                    })
                }
            };
            if pairs.insert((source.clone(), target.clone())) {
                let label = loop {
                    fresh += 1;
                    let l = format!("kb{fresh}");
                    if current.rule(&l).is_none() {
                        break l;
                    }
                };
                let rule = Rule::new(&label, source, target);
                trace.push(TraceEvent::Added {
                    rule: rule.clone(),
                    from: b.clone(),
                });
                added.push(rule);
            }
        }
        if added.is_empty() {
            break;
        }
        current = current.with_rules(added)?;
    }
    let rw = Rewriter::new(&current);
    for b in critical_branchings(&current) {
        if join_with(&rw, &b, DEFAULT_BUDGET)?.is_none() {
            return Err(Error::NotLocallyConfluent(describe(&current, &b)));
        }
    }
    Ok((current, trace))
}

pub fn describe(p: &TwoPolygraph, b: &CriticalBranching) -> String {
    format!(
        "{{{}@{}, {}@{}}} on {}",
        b.left.rule,
        b.left.position,
        b.right.rule,
        b.right.position,
        p.render(&b.source)
    )
}

/// Canonical label of the generating confluence of a branching.
pub fn confluence_label(p: &TwoPolygraph, b: &CriticalBranching) -> String {
    format!(
        "{}@{}/{}@{}:{}",
        b.left.rule,
        b.left.position,
        b.right.rule,
        b.right.position,
        p.render(&b.source)
    )
}

/// One 3-cell per critical branching, joined by leftmost normalization.
pub fn squier(p: &TwoPolygraph) -> Result<ThreeOnePolygraph> {
    let rw = Rewriter::new(p);
    let mut cells = Vec::new();
    for b in critical_branchings(p) {
        let (lhs, rhs) = join_with(&rw, &b, DEFAULT_BUDGET)?
            .ok_or_else(|| Error::NotLocallyConfluent(describe(p, &b)))?;
        cells.push(ThreeCell::new(&confluence_label(p, &b), lhs, rhs, None));
    }
    ThreeOnePolygraph::new(p.clone(), cells)
}

/// Squier completion of the Knuth-Bendix completion.
pub fn homotopical_completion(
    p: &TwoPolygraph,
    order: &dyn TerminationOrder,
    budget: usize,
) -> Result<ThreeOnePolygraph> {
    let (completed, _) = knuth_bendix(p, order, budget)?;
    squier(&completed)
}
