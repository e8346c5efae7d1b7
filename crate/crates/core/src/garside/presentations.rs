//! The presentations built from a Garside datum.

use std::collections::HashMap;

use super::datum::GarsideDatum;
use crate::error::{Error, Result};
use crate::normalize::{Rewriter, DEFAULT_BUDGET};
use crate::order::Divlex;
use crate::polygraph::{label, Label, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::word::Word;

/// Generator of a nonunit element.
pub fn gen(u: usize) -> usize {
    u - 1
}

pub fn alpha_label(d: &GarsideDatum, u: usize, v: usize) -> Label {
    label(&format!("alpha:{},{}", d.name(u), d.name(v)))
}

pub fn beta_label(d: &GarsideDatum, u: usize, v: usize, w: usize) -> Label {
    label(&format!("beta:{},{},{}", d.name(u), d.name(v), d.name(w)))
}

/// Word of elements, units dropped.
pub fn element_word(elements: &[usize]) -> Word {
    Word(elements.iter().filter(|&&u| u != 0).map(|&u| gen(u)).collect())
}

fn alphabet(d: &GarsideDatum) -> Vec<String> {
    d.names()[1..].to_vec()
}

fn alpha_rules(d: &GarsideDatum) -> Vec<Rule> {
    let mut rules = Vec::new();
    for u in d.nonunit() {
        for v in d.nonunit() {
            if let Some(uv) = d.mul(u, v) {
                rules.push(Rule::new(&alpha_label(d, u, v), element_word(&[u, v]), element_word(&[uv])));
            }
        }
    }
    rules
}

/// Triples `(u, v, w)` with `uv` and `vw` in the family but not `uvw`.
pub fn beta_triples(d: &GarsideDatum) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in d.nonunit() {
        for v in d.nonunit() {
            let Some(uv) = d.mul(u, v) else { continue };
            for w in d.nonunit() {
                if d.mul(v, w).is_some() && d.mul(uv, w).is_none() {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

/// Rules `u|v -> uv`.
pub fn gar2(d: &GarsideDatum) -> Result<TwoPolygraph> {
    TwoPolygraph::new(alphabet(d), alpha_rules(d))
}

/// `gar2` with the rules `u|vw -> uv|w`.
pub fn underline_gar2(d: &GarsideDatum) -> Result<TwoPolygraph> {
    let mut rules = alpha_rules(d);
    for (u, v, w) in beta_triples(d) {
        let vw = d.mul(v, w).expect("beta triple");
        let uv = d.mul(u, v).expect("beta triple");
        rules.push(Rule::new(&beta_label(d, u, v, w), element_word(&[u, vw]), element_word(&[uv, w])));
    }
    TwoPolygraph::new(alphabet(d), rules)
}

/// The termination order for the presentations of a datum.
pub fn divlex(d: &GarsideDatum) -> Result<Divlex> {
    Divlex::new(d.generator_divisibility())
}

/// Triples `(u, v, w)` with `uv`, `vw` and `uvw` in the family.
pub fn a_triples(d: &GarsideDatum) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in d.nonunit() {
        for v in d.nonunit() {
            let Some(uv) = d.mul(u, v) else { continue };
            for w in d.nonunit() {
                if d.mul(v, w).is_some() && d.mul(uv, w).is_some() {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

pub(crate) fn a_cell(d: &GarsideDatum, u: usize, v: usize, w: usize, tag: Option<&str>) -> ThreeCell {
    let uv = d.mul(u, v).expect("A triple");
    let vw = d.mul(v, w).expect("A triple");
    let start = element_word(&[u, v, w]);
    let lhs = RewritePath::new(
        start.clone(),
        vec![
            RewriteStep::forward(&alpha_label(d, u, v), 0),
            RewriteStep::forward(&alpha_label(d, uv, w), 0),
        ],
    );
    let rhs = RewritePath::new(
        start,
        vec![
            RewriteStep::forward(&alpha_label(d, v, w), 1),
            RewriteStep::forward(&alpha_label(d, u, vw), 0),
        ],
    );
    let name = format!("A:{},{},{}", d.name(u), d.name(v), d.name(w));
    ThreeCell::new(&name, lhs, rhs, tag)
}

/// `gar2` with one cell `A` per triple of `a_triples`.
pub fn gar3(d: &GarsideDatum) -> Result<ThreeOnePolygraph> {
    let cells = a_triples(d)
        .into_iter()
        .map(|(u, v, w)| a_cell(d, u, v, w, Some("A")))
        .collect();
    ThreeOnePolygraph::new(gar2(d)?, cells)
}

/// Heads of all nonunit pairs, read off their normal forms and checked
/// against the head table of the datum when it has one.
fn pair_heads(d: &GarsideDatum, ugar2: &TwoPolygraph) -> Result<Vec<Vec<usize>>> {
    let rw = Rewriter::new(ugar2);
    let mut heads = vec![vec![0; d.len()]; d.len()];
    for u in d.nonunit() {
        for v in d.nonunit() {
            let head = match d.mul(u, v) {
                Some(uv) => uv,
                None => {
                    let nf = rw
                        .normal_form(&element_word(&[u, v]), DEFAULT_BUDGET)
                        .map_err(|e| Error::NormalizationFailure(e.to_string()))?;
                    nf.head().map(|g| g + 1).ok_or_else(|| {
                        Error::NormalizationFailure(format!("{}|{} normalizes to 1", d.name(u), d.name(v)))
                    })?
                }
            };
            if let Some(h) = d.head_hint(u, v) {
                if h != head {
                    return Err(Error::NormalizationFailure(format!(
                        "head of {}|{} is {} but the table says {}",
                        d.name(u),
                        d.name(v),
                        d.name(head),
                        d.name(h)
                    )));
                }
            }
            heads[u][v] = head;
        }
    }
    Ok(heads)
}

/// What a rule of `underline_gar2` stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Alpha(usize, usize),
    Beta(usize, usize, usize),
}

/// A datum with its convergent presentation and rule lookup.
pub struct GarsideContext<'a> {
    pub datum: &'a GarsideDatum,
    pub ugar2: TwoPolygraph,
    kinds: HashMap<Label, RuleKind>,
    heads: Vec<Vec<usize>>,
}

impl<'a> GarsideContext<'a> {
    pub fn new(datum: &'a GarsideDatum) -> Result<Self> {
        let ugar2 = underline_gar2(datum)?;
        let mut kinds = HashMap::new();
        for u in datum.nonunit() {
            for v in datum.nonunit() {
                if datum.in_family(u, v) {
                    kinds.insert(alpha_label(datum, u, v), RuleKind::Alpha(u, v));
                }
            }
        }
        for (u, v, w) in beta_triples(datum) {
            kinds.insert(beta_label(datum, u, v, w), RuleKind::Beta(u, v, w));
        }
        let heads = pair_heads(datum, &ugar2)?;
        Ok(GarsideContext {
            datum,
            ugar2,
            kinds,
            heads,
        })
    }

    /// The head of `uv` for nonunit `u` and `v`.
    pub fn head(&self, u: usize, v: usize) -> usize {
        self.heads[u][v]
    }

    pub fn kind(&self, rule: &str) -> Option<RuleKind> {
        self.kinds.get(rule).copied()
    }

    pub fn alpha(&self, u: usize, v: usize, position: usize) -> RewriteStep {
        RewriteStep::forward(&alpha_label(self.datum, u, v), position)
    }

    pub fn beta(&self, u: usize, v: usize, w: usize, position: usize) -> RewriteStep {
        RewriteStep::forward(&beta_label(self.datum, u, v, w), position)
    }

    /// Product that must lie in the family.
    pub fn m(&self, u: usize, v: usize) -> Result<usize> {
        self.datum.mul(u, v).ok_or_else(|| {
            Error::BadParameter(format!(
                "{}{} is not in the family",
                self.datum.name(u),
                self.datum.name(v)
            ))
        })
    }

    pub fn has(&self, u: usize, v: usize) -> bool {
        self.datum.in_family(u, v)
    }

    pub fn has3(&self, u: usize, v: usize, w: usize) -> bool {
        self.datum.mul(u, v).is_some_and(|uv| self.datum.in_family(uv, w))
    }

    pub fn has4(&self, u: usize, v: usize, w: usize, x: usize) -> bool {
        self.datum
            .mul(u, v)
            .and_then(|uv| self.datum.mul(uv, w))
            .is_some_and(|uvw| self.datum.in_family(uvw, x))
    }
}
