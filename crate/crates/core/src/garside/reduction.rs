//! Reduction of the twelve-family presentation to `gar3`.

use std::collections::{BTreeMap, HashMap};

use super::datum::GarsideDatum;
use super::families::{family_label, FamilyCell, FamilyRegistry};
use super::presentations::{beta_label, element_word, gar3, GarsideContext};
use crate::branching::critical_branchings;
use crate::error::{Error, Result};
use crate::polygraph::{label, Label, RewritePath, RewriteStep, ThreeCell, ThreeOnePolygraph};
use crate::reduce::{homotopical_reduce, CollapsiblePart, Witness};
use crate::sphere::{check_sphere, SearchLimits, SphereMove, SphereSearch, ThreeSphere};

/// Where the sphere collapsing a cell came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereOrigin {
    Template,
    Search,
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub collapsed_rules: usize,
    pub spheres: Vec<(Label, &'static str, SphereOrigin)>,
    pub warnings: Vec<String>,
}

impl ReductionReport {
    pub fn count(&self, origin: SphereOrigin) -> usize {
        self.spheres.iter().filter(|(_, _, o)| *o == origin).count()
    }
}

fn apply(cell: String, index: usize, offset: usize) -> SphereMove {
    SphereMove::Apply {
        cell: label(&cell),
        inverse: false,
        index,
        offset,
    }
}

/// Fixed spheres for the families H, E', F' and G'.
pub fn template_sphere(cx: &GarsideContext, fc: &FamilyCell) -> Result<Option<ThreeSphere>> {
    let l = |tag: &str, p: &[usize]| family_label(cx, tag, p);
    let target = l(fc.family, &fc.params);
    let p = &fc.params;
    let (start, steps, lhs, rhs) = match fc.family {
        "H" => {
            let (u, v, w, x) = (p[0], p[1], p[2], p[3]);
            let (uv, vw, wx) = (cx.m(u, v)?, cx.m(v, w)?, cx.m(w, x)?);
            (
                vec![u, v, w, x],
                vec![cx.alpha(u, v, 0), cx.alpha(uv, w, 0)],
                vec![
                    apply(l("A", &[u, v, w]), 0, 0),
                    apply(l("B", &[u, vw, x]), 1, 0),
                    apply(l("A", &[v, w, x]), 0, 1),
                ],
                vec![
                    apply(l("B", &[uv, w, x]), 1, 0),
                    SphereMove::Exchange { index: 0 },
                    apply(l("B", &[u, v, wx]), 1, 0),
                    apply(target.clone(), 2, 0),
                ],
            )
        }
        "E'" => {
            let (u, v, w, x) = (p[0], p[1], p[2], p[3]);
            let (uv, wx) = (cx.m(u, v)?, cx.m(w, x)?);
            (
                vec![u, v, w, x],
                vec![cx.alpha(u, v, 0), cx.alpha(w, x, 1), cx.alpha(uv, wx, 0)],
                vec![
                    apply(l("B", &[u, v, w]), 0, 0),
                    apply(target.clone(), 1, 0),
                    apply(l("A", &[v, w, x]), 0, 1),
                ],
                vec![SphereMove::Exchange { index: 0 }, apply(l("A", &[u, v, wx]), 1, 0)],
            )
        }
        "F'" => {
            let (u, v, w, x, y) = (p[0], p[1], p[2], p[3], p[4]);
            let (uv, wx, xy) = (cx.m(u, v)?, cx.m(w, x)?, cx.m(x, y)?);
            (
                vec![u, v, w, xy],
                vec![cx.alpha(u, v, 0), cx.alpha(w, xy, 1), cx.beta(uv, wx, y, 0)],
                vec![
                    apply(l("B", &[u, v, w]), 0, 0),
                    apply(target.clone(), 1, 0),
                    apply(l("B", &[v, w, xy]), 0, 1),
                    apply(l("H", &[v, w, x, y]), 1, 1),
                ],
                vec![SphereMove::Exchange { index: 0 }, apply(l("C", &[u, v, wx, y]), 1, 0)],
            )
        }
        "G'" => {
            let (u, v, w, x, y) = (p[0], p[1], p[2], p[3], p[4]);
            let (uv, wx, xy) = (cx.m(u, v)?, cx.m(w, x)?, cx.m(x, y)?);
            (
                vec![u, v, w, xy],
                vec![cx.alpha(u, v, 0), cx.beta(w, x, y, 1), cx.alpha(uv, wx, 0)],
                vec![
                    apply(l("B", &[u, v, w]), 0, 0),
                    apply(target.clone(), 1, 0),
                    apply(l("C", &[v, w, x, y]), 0, 1),
                ],
                vec![SphereMove::Exchange { index: 0 }, apply(l("A", &[u, v, wx]), 1, 0)],
            )
        }
        _ => return Ok(None),
    };
    Ok(Some(ThreeSphere {
        name: format!("sphere:{target}"),
        start: RewritePath::new(element_word(&start), steps),
        lhs,
        rhs,
        target: Some(label(&target)),
    }))
}

/// The classified twelve-family presentation, cells paired with their family.
pub fn classified_gar3(cx: &GarsideContext) -> Result<(ThreeOnePolygraph, Vec<FamilyCell>)> {
    let registry = FamilyRegistry::with_builtins();
    let mut cells = Vec::new();
    let mut families = Vec::new();
    for b in critical_branchings(&cx.ugar2) {
        let fc = registry.classify(cx, &b)?;
        cells.push(registry.build(cx, &b, &fc)?);
        families.push(fc);
    }
    Ok((ThreeOnePolygraph::new(cx.ugar2.clone(), cells)?, families))
}

/// Builds the collapsible part: every `B` cell collapses its `beta` rule and
/// spheres collapse the cells of the other families.
pub fn gar3_collapsible_part(
    cx: &GarsideContext,
    x: &ThreeOnePolygraph,
    families: &[FamilyCell],
    limits: SearchLimits,
) -> Result<(CollapsiblePart, ReductionReport)> {
    let registry = FamilyRegistry::with_builtins();
    let mut part = CollapsiblePart::default();
    let mut report = ReductionReport {
        collapsed_rules: 0,
        spheres: Vec::new(),
        warnings: Vec::new(),
    };
    let rank_of: HashMap<Label, usize> = x
        .cells()
        .iter()
        .zip(families)
        .map(|(c, fc)| (c.label.clone(), registry.rank(fc.family).unwrap_or(0)))
        .collect();
    for (c, fc) in x.cells().iter().zip(families) {
        part.ranks.cells.insert(c.label.clone(), rank_of[&c.label]);
        if fc.family == "B" {
            let (u, v, w) = (fc.params[0], fc.params[1], fc.params[2]);
            let beta = beta_label(cx.datum, u, v, w);
            part.ranks.rules.insert(beta.clone(), 1);
            part.gamma3.push((c.label.clone(), beta));
        }
    }
    report.collapsed_rules = part.gamma3.len();
    let mut searches = BTreeMap::new();
    for (c, fc) in x.cells().iter().zip(families) {
        if fc.family == "A" || fc.family == "B" {
            continue;
        }
        if let Some(sphere) = template_sphere(cx, fc)? {
            check_sphere(&sphere, x).map_err(|e| Error::SphereCheckFailed(format!("{}: {e}", sphere.name)))?;
            part.gamma4.push((c.label.clone(), Witness::Sphere(sphere)));
            report.spheres.push((c.label.clone(), fc.family, SphereOrigin::Template));
            continue;
        }
        let top = rank_of[&c.label];
        let search = searches
            .entry(top)
            .or_insert_with(|| SphereSearch::new(x, &|other: &ThreeCell| rank_of[&other.label] < top, limits));
        match search.find(&c.label)? {
            Some(sphere) => {
                part.gamma4.push((c.label.clone(), Witness::Sphere(sphere)));
                report.spheres.push((c.label.clone(), fc.family, SphereOrigin::Search));
            }
            None => {
                let reason = format!("no sphere found for the {} cell within the search limits", fc.family);
                report.warnings.push(format!("`{}`: {reason}", c.label));
                part.gamma4.push((c.label.clone(), Witness::Asserted(reason)));
                report.spheres.push((c.label.clone(), fc.family, SphereOrigin::Asserted));
            }
        }
    }
    Ok((part, report))
}

fn same_cells(a: &ThreeOnePolygraph, b: &ThreeOnePolygraph) -> Result<()> {
    if a.base() != b.base() {
        return Err(Error::MismatchWithGar3("the 2-polygraphs differ".into()));
    }
    let key = |x: &ThreeOnePolygraph| -> BTreeMap<String, (Vec<RewriteStep>, Vec<RewriteStep>)> {
        x.cells()
            .iter()
            .map(|c| (c.label.to_string(), (c.lhs.steps.clone(), c.rhs.steps.clone())))
            .collect()
    };
    let (ka, kb) = (key(a), key(b));
    if ka != kb {
        let missing: Vec<&String> = kb.keys().filter(|k| !ka.contains_key(*k)).collect();
        let extra: Vec<&String> = ka.keys().filter(|k| !kb.contains_key(*k)).collect();
        return Err(Error::MismatchWithGar3(format!(
            "cells differ; missing {missing:?}, extra {extra:?}"
        )));
    }
    Ok(())
}

/// Collapses the twelve-family presentation and checks that `gar3` remains.
pub fn reduce_to_gar3(d: &GarsideDatum) -> Result<(ThreeOnePolygraph, ReductionReport)> {
    reduce_to_gar3_with(d, SearchLimits::default())
}

pub fn reduce_to_gar3_with(d: &GarsideDatum, limits: SearchLimits) -> Result<(ThreeOnePolygraph, ReductionReport)> {
    let cx = GarsideContext::new(d)?;
    let (x, families) = classified_gar3(&cx)?;
    let (part, report) = gar3_collapsible_part(&cx, &x, &families, limits)?;
    let reduced = homotopical_reduce(&x, &part)?;
    same_cells(&reduced, &gar3(d)?)?;
    Ok((reduced, report))
}
