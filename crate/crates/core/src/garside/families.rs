//! The twelve families of 3-cells over the critical branchings of the
//! convergent presentation, as a registry of templates.

use super::presentations::{element_word, GarsideContext, RuleKind};
use crate::branching::{critical_branchings, CriticalBranching, Shape};
use crate::error::{Error, Result};
use crate::polygraph::{RewritePath, RewriteStep, ThreeCell, ThreeOnePolygraph};

/// A classified critical branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCell {
    pub family: &'static str,
    pub params: Vec<usize>,
}

/// One family: recognizes its branchings and builds their 3-cells.
pub trait FamilyTemplate: Send + Sync {
    fn tag(&self) -> &'static str;
    /// Position in the collapse order; spheres may only use lower ranks.
    fn rank(&self) -> usize;
    fn classify(&self, cx: &GarsideContext, b: &CriticalBranching) -> Option<Vec<usize>>;
    fn build(&self, cx: &GarsideContext, params: &[usize]) -> Result<ThreeCell>;
}

type Steps = (Vec<usize>, Vec<RewriteStep>, Vec<RewriteStep>);
type Classifier = fn(&GarsideContext, &Decomposed) -> Option<Vec<usize>>;
type Builder = fn(&GarsideContext, &[usize]) -> Result<Steps>;

struct Template {
    tag: &'static str,
    rank: usize,
    classify: Classifier,
    build: Builder,
}

/// The two steps of a branching read as rule kinds.
pub struct Decomposed {
    left: RuleKind,
    right: RuleKind,
    overlap: bool,
}

fn decompose(cx: &GarsideContext, b: &CriticalBranching) -> Option<Decomposed> {
    let left = cx.kind(&b.left.rule)?;
    let right = cx.kind(&b.right.rule)?;
    let overlap = match (b.shape, b.left.position, b.right.position) {
        (Shape::Overlap, 0, 1) => true,
        (Shape::EqualSource, 0, 0) => false,
        _ => return None,
    };
    Some(Decomposed { left, right, overlap })
}

/// Label of a family cell from its parameters.
pub fn family_label(cx: &GarsideContext, tag: &str, params: &[usize]) -> String {
    let names: Vec<&str> = params.iter().map(|&u| cx.datum.name(u)).collect();
    format!("{tag}:{}", names.join(","))
}

impl FamilyTemplate for Template {
    fn tag(&self) -> &'static str {
        self.tag
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn classify(&self, cx: &GarsideContext, b: &CriticalBranching) -> Option<Vec<usize>> {
        decompose(cx, b).and_then(|d| (self.classify)(cx, &d))
    }

    fn build(&self, cx: &GarsideContext, params: &[usize]) -> Result<ThreeCell> {
        let (start, lhs, rhs) = (self.build)(cx, params)?;
        let start = element_word(&start);
        let label = family_label(cx, self.tag, params);
        let cell = ThreeCell::new(
            &label,
            RewritePath::new(start.clone(), lhs),
            RewritePath::new(start, rhs),
            Some(self.tag),
        );
        cell.check_parallel(&cx.ugar2)?;
        Ok(cell)
    }
}

fn alpha_alpha(d: &Decomposed) -> Option<(usize, usize, usize)> {
    match (d.left, d.right, d.overlap) {
        (RuleKind::Alpha(u, v), RuleKind::Alpha(v2, w), true) if v == v2 => Some((u, v, w)),
        _ => None,
    }
}

fn alpha_beta(d: &Decomposed) -> Option<(usize, usize, usize, usize)> {
    match (d.left, d.right, d.overlap) {
        (RuleKind::Alpha(u, v), RuleKind::Beta(v2, w, x), true) if v == v2 => Some((u, v, w, x)),
        _ => None,
    }
}

fn beta_alpha(cx: &GarsideContext, d: &Decomposed) -> Option<(usize, usize, usize, usize)> {
    match (d.left, d.right, d.overlap) {
        (RuleKind::Beta(u, v, w), RuleKind::Alpha(vw, x), true) if cx.datum.mul(v, w) == Some(vw) => {
            Some((u, v, w, x))
        }
        _ => None,
    }
}

fn beta_beta(cx: &GarsideContext, d: &Decomposed) -> Option<(usize, usize, usize, usize, usize)> {
    match (d.left, d.right, d.overlap) {
        (RuleKind::Beta(u, v, w), RuleKind::Beta(vw, x, y), true) if cx.datum.mul(v, w) == Some(vw) => {
            Some((u, v, w, x, y))
        }
        _ => None,
    }
}

/// `(u, v1, w1, v2, w2)` with `v1` of smaller index.
fn beta_pair(d: &Decomposed) -> Option<(usize, usize, usize, usize, usize)> {
    match (d.left, d.right, d.overlap) {
        (RuleKind::Beta(u, v1, w1), RuleKind::Beta(u2, v2, w2), false) if u == u2 => {
            if v1 < v2 {
                Some((u, v1, w1, v2, w2))
            } else {
                Some((u, v2, w2, v1, w1))
            }
        }
        _ => None,
    }
}

/// `u · vwx` in the family, `vw` and `vwx` being known products.
fn primed(cx: &GarsideContext, u: usize, v: usize, w: usize, x: usize) -> bool {
    cx.datum
        .mul(v, w)
        .and_then(|vw| cx.datum.mul(vw, x))
        .is_some_and(|vwx| cx.has(u, vwx))
}

fn wxy(cx: &GarsideContext, w: usize, x: usize, y: usize) -> bool {
    cx.datum.mul(x, y).is_some_and(|xy| cx.has(w, xy))
}

fn p4(params: &[usize]) -> (usize, usize, usize, usize) {
    (params[0], params[1], params[2], params[3])
}

fn p5(params: &[usize]) -> (usize, usize, usize, usize, usize) {
    (params[0], params[1], params[2], params[3], params[4])
}

fn build_a(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w) = (p[0], p[1], p[2]);
    let (uv, vw) = (cx.m(u, v)?, cx.m(v, w)?);
    Ok((
        vec![u, v, w],
        vec![cx.alpha(u, v, 0), cx.alpha(uv, w, 0)],
        vec![cx.alpha(v, w, 1), cx.alpha(u, vw, 0)],
    ))
}

fn build_b(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w) = (p[0], p[1], p[2]);
    Ok((
        vec![u, v, w],
        vec![cx.alpha(u, v, 0)],
        vec![cx.alpha(v, w, 1), cx.beta(u, v, w, 0)],
    ))
}

fn build_c(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x) = p4(p);
    let (uv, vw, wx) = (cx.m(u, v)?, cx.m(v, w)?, cx.m(w, x)?);
    Ok((
        vec![u, v, wx],
        vec![cx.alpha(u, v, 0), cx.beta(uv, w, x, 0)],
        vec![cx.beta(v, w, x, 1), cx.alpha(u, vw, 0)],
    ))
}

fn build_d(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x) = p4(p);
    let wx = cx.m(w, x)?;
    Ok((
        vec![u, v, wx],
        vec![cx.alpha(u, v, 0)],
        vec![cx.beta(v, w, x, 1), cx.beta(u, v, w, 0), cx.alpha(w, x, 1)],
    ))
}

fn build_e(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x) = p4(p);
    let (vw, wx) = (cx.m(v, w)?, cx.m(w, x)?);
    Ok((
        vec![u, vw, x],
        vec![cx.beta(u, v, w, 0), cx.alpha(w, x, 1)],
        vec![cx.alpha(vw, x, 1), cx.beta(u, v, wx, 0)],
    ))
}

fn build_e_prime(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x) = p4(p);
    let (uv, vw, wx) = (cx.m(u, v)?, cx.m(v, w)?, cx.m(w, x)?);
    let vwx = cx.m(vw, x)?;
    Ok((
        vec![u, vw, x],
        vec![cx.beta(u, v, w, 0), cx.alpha(w, x, 1), cx.alpha(uv, wx, 0)],
        vec![cx.alpha(vw, x, 1), cx.alpha(u, vwx, 0)],
    ))
}

fn build_f(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x, y) = p5(p);
    let (vw, wx, xy) = (cx.m(v, w)?, cx.m(w, x)?, cx.m(x, y)?);
    Ok((
        vec![u, vw, xy],
        vec![cx.beta(u, v, w, 0), cx.alpha(w, xy, 1)],
        vec![cx.beta(vw, x, y, 1), cx.beta(u, v, wx, 0), cx.alpha(wx, y, 1)],
    ))
}

fn build_f_prime(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x, y) = p5(p);
    let (uv, vw, wx, xy) = (cx.m(u, v)?, cx.m(v, w)?, cx.m(w, x)?, cx.m(x, y)?);
    let vwx = cx.m(vw, x)?;
    Ok((
        vec![u, vw, xy],
        vec![cx.beta(u, v, w, 0), cx.alpha(w, xy, 1), cx.beta(uv, wx, y, 0)],
        vec![cx.beta(vw, x, y, 1), cx.alpha(u, vwx, 0)],
    ))
}

fn build_g(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x, y) = p5(p);
    let (vw, wx, xy) = (cx.m(v, w)?, cx.m(w, x)?, cx.m(x, y)?);
    Ok((
        vec![u, vw, xy],
        vec![cx.beta(u, v, w, 0), cx.beta(w, x, y, 1)],
        vec![cx.beta(vw, x, y, 1), cx.beta(u, v, wx, 0)],
    ))
}

fn build_g_prime(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, w, x, y) = p5(p);
    let (uv, vw, wx, xy) = (cx.m(u, v)?, cx.m(v, w)?, cx.m(w, x)?, cx.m(x, y)?);
    let vwx = cx.m(vw, x)?;
    Ok((
        vec![u, vw, xy],
        vec![cx.beta(u, v, w, 0), cx.beta(w, x, y, 1), cx.alpha(uv, wx, 0)],
        vec![cx.beta(vw, x, y, 1), cx.alpha(u, vwx, 0)],
    ))
}

fn build_h(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v, x, y) = p4(p);
    let (uv, vx, xy) = (cx.m(u, v)?, cx.m(v, x)?, cx.m(x, y)?);
    let vxy = cx.m(vx, y)?;
    Ok((
        vec![u, vxy],
        vec![cx.beta(u, v, xy, 0), cx.beta(uv, x, y, 0)],
        vec![cx.beta(u, vx, y, 0)],
    ))
}

/// The mcm of `v1` and `v2` below `r` with the smallest index, with the
/// complements `x1`, `x2` and `y`.
pub fn i_data(cx: &GarsideContext, v1: usize, v2: usize, r: usize) -> Result<(usize, usize, usize, usize)> {
    let d = cx.datum;
    let v = d
        .right_mcms(v1, v2)
        .into_iter()
        .filter(|&m| d.divides(m, r))
        .min()
        .ok_or_else(|| {
            Error::BadParameter(format!(
                "{} and {} have no right-mcm dividing {}",
                d.name(v1),
                d.name(v2),
                d.name(r)
            ))
        })?;
    let x1 = d.complement(v1, v)?;
    let x2 = d.complement(v2, v)?;
    let y = d.complement(v, r)?;
    if x1 == 0 || x2 == 0 || y == 0 {
        return Err(Error::BadParameter(format!(
            "degenerate mcm {} for {} and {}",
            d.name(v),
            d.name(v1),
            d.name(v2)
        )));
    }
    Ok((v, x1, x2, y))
}

fn build_i(cx: &GarsideContext, p: &[usize]) -> Result<Steps> {
    let (u, v1, w1, v2, w2) = p5(p);
    let r = cx.m(v1, w1)?;
    if cx.m(v2, w2)? != r {
        return Err(Error::BadParameter("the two decompositions differ".into()));
    }
    let (_, x1, x2, y) = i_data(cx, v1, v2, r)?;
    let (uv1, uv2) = (cx.m(u, v1)?, cx.m(u, v2)?);
    Ok((
        vec![u, r],
        vec![cx.beta(u, v1, w1, 0), cx.beta(uv1, x1, y, 0)],
        vec![cx.beta(u, v2, w2, 0), cx.beta(uv2, x2, y, 0)],
    ))
}

fn classify_a(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    alpha_alpha(d).filter(|&(u, v, w)| cx.has3(u, v, w)).map(|(u, v, w)| vec![u, v, w])
}

fn classify_b(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    alpha_alpha(d).filter(|&(u, v, w)| !cx.has3(u, v, w)).map(|(u, v, w)| vec![u, v, w])
}

fn classify_c(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    alpha_beta(d).filter(|&(u, v, w, _)| cx.has3(u, v, w)).map(|(u, v, w, x)| vec![u, v, w, x])
}

fn classify_d(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    alpha_beta(d).filter(|&(u, v, w, _)| !cx.has3(u, v, w)).map(|(u, v, w, x)| vec![u, v, w, x])
}

fn classify_e(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    beta_alpha(cx, d)
        .filter(|&(u, v, w, x)| !primed(cx, u, v, w, x))
        .map(|(u, v, w, x)| vec![u, v, w, x])
}

fn classify_e_prime(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    beta_alpha(cx, d)
        .filter(|&(u, v, w, x)| primed(cx, u, v, w, x))
        .map(|(u, v, w, x)| vec![u, v, w, x])
}

fn classify_fg(cx: &GarsideContext, d: &Decomposed, fam_f: bool, prime: bool) -> Option<Vec<usize>> {
    beta_beta(cx, d)
        .filter(|&(u, v, w, x, y)| wxy(cx, w, x, y) == fam_f && primed(cx, u, v, w, x) == prime)
        .map(|(u, v, w, x, y)| vec![u, v, w, x, y])
}

fn classify_h(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    let (u, v1, w1, v2, w2) = beta_pair(d)?;
    let dt = cx.datum;
    if dt.divides(v1, v2) {
        Some(vec![u, v1, dt.complement(v1, v2).ok()?, w2])
    } else if dt.divides(v2, v1) {
        Some(vec![u, v2, dt.complement(v2, v1).ok()?, w1])
    } else {
        None
    }
}

fn classify_i(cx: &GarsideContext, d: &Decomposed) -> Option<Vec<usize>> {
    let (u, v1, w1, v2, w2) = beta_pair(d)?;
    let dt = cx.datum;
    (!dt.divides(v1, v2) && !dt.divides(v2, v1)).then(|| vec![u, v1, w1, v2, w2])
}

/// Family templates by tag.
pub struct FamilyRegistry {
    templates: Vec<Box<dyn FamilyTemplate>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry { templates: Vec::new() }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        let builtins: [(&'static str, usize, Classifier, Builder); 12] = [
            ("A", 0, classify_a, build_a),
            ("B", 0, classify_b, build_b),
            ("C", 1, classify_c, build_c),
            ("D", 2, classify_d, build_d),
            ("E", 3, classify_e, build_e),
            ("F", 4, |cx, d| classify_fg(cx, d, true, false), build_f),
            ("G", 5, |cx, d| classify_fg(cx, d, false, false), build_g),
            ("H", 6, classify_h, build_h),
            ("I", 7, classify_i, build_i),
            ("E'", 8, classify_e_prime, build_e_prime),
            ("F'", 9, |cx, d| classify_fg(cx, d, true, true), build_f_prime),
            ("G'", 10, |cx, d| classify_fg(cx, d, false, true), build_g_prime),
        ];
        for (tag, rank, classify, build) in builtins {
            r.register(Box::new(Template {
                tag,
                rank,
                classify,
                build,
            }));
        }
        r
    }

    pub fn register(&mut self, t: Box<dyn FamilyTemplate>) {
        self.templates.retain(|x| x.tag() != t.tag());
        self.templates.push(t);
    }

    pub fn tags(&self) -> Vec<&'static str> {
        self.templates.iter().map(|t| t.tag()).collect()
    }

    pub fn get(&self, tag: &str) -> Option<&dyn FamilyTemplate> {
        self.templates.iter().find(|t| t.tag() == tag).map(|t| t.as_ref())
    }

    pub fn rank(&self, tag: &str) -> Option<usize> {
        self.get(tag).map(|t| t.rank())
    }

    /// The unique family of a branching.
    pub fn classify(&self, cx: &GarsideContext, b: &CriticalBranching) -> Result<FamilyCell> {
        let hits: Vec<FamilyCell> = self
            .templates
            .iter()
            .filter_map(|t| {
                t.classify(cx, b).map(|params| FamilyCell {
                    family: t.tag(),
                    params,
                })
            })
            .collect();
        let describe = || crate::completion::describe(&cx.ugar2, b);
        match hits.len() {
            0 => Err(Error::UnclassifiedBranching(describe())),
            1 => Ok(hits.into_iter().next().expect("one hit")),
            _ => {
                let tags: Vec<&str> = hits.iter().map(|h| h.family).collect();
                Err(Error::AmbiguousClassification(format!("{} matches {}", describe(), tags.join(", "))))
            }
        }
    }

    /// Builds the cell of a classified branching and checks that its two
    /// sides start with the two steps of the branching.
    pub fn build(&self, cx: &GarsideContext, b: &CriticalBranching, fc: &FamilyCell) -> Result<ThreeCell> {
        let t = self.get(fc.family).ok_or_else(|| Error::UnknownCell(fc.family.to_string()))?;
        let cell = t.build(cx, &fc.params)?;
        let firsts = [cell.lhs.steps.first(), cell.rhs.steps.first()];
        let matches = cell.lhs.start == b.source
            && (firsts == [Some(&b.left), Some(&b.right)] || firsts == [Some(&b.right), Some(&b.left)]);
        if !matches {
            return Err(Error::UnclassifiedBranching(format!(
                "{} is not the source of `{}`",
                crate::completion::describe(&cx.ugar2, b),
                cell.label
            )));
        }
        Ok(cell)
    }
}

/// Every critical branching with its family.
pub fn classify_branchings(cx: &GarsideContext) -> Result<Vec<(CriticalBranching, FamilyCell)>> {
    let registry = FamilyRegistry::with_builtins();
    critical_branchings(&cx.ugar2)
        .into_iter()
        .map(|b| registry.classify(cx, &b).map(|fc| (b, fc)))
        .collect()
}

/// `underline_gar2` with one family cell per critical branching.
pub fn underline_gar3(d: &super::GarsideDatum) -> Result<ThreeOnePolygraph> {
    let cx = GarsideContext::new(d)?;
    let registry = FamilyRegistry::with_builtins();
    let mut cells = Vec::new();
    for b in critical_branchings(&cx.ugar2) {
        let fc = registry.classify(&cx, &b)?;
        cells.push(registry.build(&cx, &b, &fc)?);
    }
    ThreeOnePolygraph::new(cx.ugar2.clone(), cells)
}
