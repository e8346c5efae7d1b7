//! Collapsible parts and homotopical reduction.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::polygraph::{Label, Orientation, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::sphere::{check_sphere, find_sphere, SearchLimits, ThreeSphere};
use crate::word::Word;

/// Evidence that a 3-cell is redundant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Sphere(ThreeSphere),
    /// Accepted without a checked sphere; the reason is reported.
    Asserted(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ranks {
    pub generators: HashMap<String, usize>,
    pub rules: HashMap<Label, usize>,
    pub cells: HashMap<Label, usize>,
}

impl Ranks {
    fn generator(&self, name: &str) -> usize {
        self.generators.get(name).copied().unwrap_or(0)
    }

    fn rule(&self, label: &str) -> usize {
        self.rules.get(label).copied().unwrap_or(0)
    }

    fn cell(&self, label: &str) -> usize {
        self.cells.get(label).copied().unwrap_or(0)
    }
}

/// Rules collapsing a generator, 3-cells collapsing a rule, and spheres
/// collapsing a 3-cell, with the ranks that make the collapse well founded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapsiblePart {
    pub gamma2: Vec<Label>,
    pub gamma3: Vec<(Label, Label)>,
    pub gamma4: Vec<(Label, Witness)>,
    pub ranks: Ranks,
}

impl CollapsiblePart {
    pub fn is_empty(&self) -> bool {
        self.gamma2.is_empty() && self.gamma3.is_empty() && self.gamma4.is_empty()
    }

    /// One line per 3-cell collapsed without a checked sphere.
    pub fn warnings(&self) -> Vec<String> {
        self.gamma4
            .iter()
            .filter_map(|(cell, w)| match w {
                Witness::Asserted(reason) => Some(format!("`{cell}` collapsed without a checked sphere: {reason}")),
                Witness::Sphere(_) => None,
            })
            .collect()
    }
}

/// The generator a rule collapses and the word replacing it.
pub fn collapsed_generator(p: &TwoPolygraph, rule: &Rule) -> Result<(usize, Word)> {
    let single = |side: &Word, other: &Word| -> Option<(usize, Word)> {
        match side.letters() {
            [g] if !other.letters().contains(g) => Some((*g, other.clone())),
            _ => None,
        }
    };
    single(&rule.target, &rule.source)
        .or_else(|| single(&rule.source, &rule.target))
        .ok_or_else(|| {
            Error::NotCollapsible(format!(
                "rule `{}` ({} -> {}) has no side made of a single fresh generator",
                rule.label,
                p.render(&rule.source),
                p.render(&rule.target)
            ))
        })
}

/// The path a 3-cell provides for the forward application of `rule` on its
/// source, with the surrounding context removed.
pub fn collapse_witness(x: &ThreeOnePolygraph, cell: &ThreeCell, rule: &str) -> Result<RewritePath> {
    let p = x.base();
    let r = p.rule(rule).ok_or_else(|| Error::UnknownRule(rule.to_string()))?;
    let back = cell.rhs.inverse(p)?;
    let lp = cell.lhs.then(&back);
    let at: Vec<usize> = lp
        .steps
        .iter()
        .enumerate()
        .filter(|(_, s)| &*s.rule == rule)
        .map(|(i, _)| i)
        .collect();
    if at.len() != 1 {
        return Err(Error::NotCollapsible(format!(
            "rule `{rule}` occurs {} times in `{}`",
            at.len(),
            cell.label
        )));
    }
    let k = at[0];
    let words = lp.words(p)?;
    let sigma = &lp.steps[k];
    let before = RewritePath::new(lp.start.clone(), lp.steps[..k].to_vec());
    let after = RewritePath::new(words[k + 1].clone(), lp.steps[k + 1..].to_vec());
    let witness = match sigma.orientation {
        Orientation::Forward => before.inverse(p)?.then(&after.inverse(p)?),
        Orientation::Backward => after.then(&before),
    };
    let q = sigma.position;
    let from = &witness.start;
    let prefix = from.slice(0, q);
    let suffix = from.slice(q + r.source.len(), from.len());
    let ws = witness.words(p)?;
    for (i, step) in witness.steps.iter().enumerate() {
        let w = &ws[i];
        let rl = p.rule(&step.rule).ok_or_else(|| Error::UnknownRule(step.rule.to_string()))?;
        let (consumed, _) = step.sides(rl);
        let inside = w.len() >= q + suffix.len()
            && w.slice(0, q) == prefix
            && w.slice(w.len() - suffix.len(), w.len()) == suffix
            && step.position >= q
            && step.position + consumed.len() + suffix.len() <= w.len();
        if !inside {
            return Err(Error::SubstitutionOutOfScope(format!(
                "the witness of `{rule}` given by `{}` acts outside the context of the rule",
                cell.label
            )));
        }
    }
    Ok(RewritePath::new(
        r.source.clone(),
        witness
            .steps
            .iter()
            .map(|s| RewriteStep {
                position: s.position - q,
                ..s.clone()
            })
            .collect(),
    ))
}

/// Checks the collapsibility conditions and the rank certificates.
pub fn validate_collapsible(x: &ThreeOnePolygraph, g: &CollapsiblePart) -> Result<()> {
    let p = x.base();
    let mut collapsed_gens = HashSet::new();
    let mut gamma2 = HashSet::new();
    for label in &g.gamma2 {
        let rule = p.rule(label).ok_or_else(|| Error::UnknownRule(label.to_string()))?;
        let (gen, word) = collapsed_generator(p, rule)?;
        if !collapsed_gens.insert(gen) || !gamma2.insert(label.clone()) {
            return Err(Error::NotCollapsible(format!("generator `{}` collapsed twice", p.alphabet()[gen])));
        }
        let top = g.ranks.generator(&p.alphabet()[gen]);
        if let Some(&h) = word.letters().iter().find(|&&h| g.ranks.generator(&p.alphabet()[h]) >= top) {
            return Err(Error::NotCollapsible(format!(
                "rank of `{}` is not above `{}`",
                p.alphabet()[gen],
                p.alphabet()[h]
            )));
        }
    }
    let mut gamma3_cells = HashSet::new();
    let mut gamma3_rules = HashSet::new();
    for (cell, rule) in &g.gamma3 {
        let c = x.cell(cell).ok_or_else(|| Error::UnknownCell(cell.to_string()))?;
        p.rule(rule).ok_or_else(|| Error::UnknownRule(rule.to_string()))?;
        if gamma2.contains(rule) {
            return Err(Error::NotCollapsible(format!("rule `{rule}` is both collapsing and collapsed")));
        }
        if !gamma3_cells.insert(cell.clone()) || !gamma3_rules.insert(rule.clone()) {
            return Err(Error::NotCollapsible(format!("`{cell}` or `{rule}` used twice")));
        }
        if c.occurrences(rule) != 1 {
            return Err(Error::NotCollapsible(format!(
                "rule `{rule}` occurs {} times in `{cell}`",
                c.occurrences(rule)
            )));
        }
        let top = g.ranks.rule(rule);
        if let Some(other) = c
            .lhs
            .rules_used()
            .chain(c.rhs.rules_used())
            .find(|r| *r != rule && g.ranks.rule(r) >= top)
        {
            return Err(Error::NotCollapsible(format!("rank of `{rule}` is not above `{other}`")));
        }
    }
    let mut gamma4 = HashSet::new();
    for (cell, witness) in &g.gamma4 {
        x.cell(cell).ok_or_else(|| Error::UnknownCell(cell.to_string()))?;
        if gamma3_cells.contains(cell) {
            return Err(Error::NotCollapsible(format!("3-cell `{cell}` is both collapsing and collapsed")));
        }
        if !gamma4.insert(cell.clone()) {
            return Err(Error::NotCollapsible(format!("3-cell `{cell}` collapsed twice")));
        }
        if let Witness::Sphere(s) = witness {
            let mut s = s.clone();
            s.target = Some(cell.clone());
            check_sphere(&s, x)?;
            let top = g.ranks.cell(cell);
            if let Some(other) = s.cell_counts().keys().find(|c| *c != cell && g.ranks.cell(c) >= top) {
                return Err(Error::NotCollapsible(format!("rank of `{cell}` is not above `{other}`")));
            }
        }
    }
    Ok(())
}

struct Projection<'a> {
    old: &'a TwoPolygraph,
    image: Vec<Word>,
    identities: HashSet<Label>,
    witnesses: HashMap<Label, RewritePath>,
}

const MAX_DEPTH: usize = 64;

impl Projection<'_> {
    fn word(&self, w: &Word) -> Word {
        Word(w.letters().iter().flat_map(|&g| self.image[g].letters().iter().copied()).collect())
    }

    fn path(&self, path: &RewritePath, depth: usize) -> Result<RewritePath> {
        if depth > MAX_DEPTH {
            return Err(Error::SubstitutionOutOfScope("substitution does not terminate".into()));
        }
        let words = path.words(self.old)?;
        let mut steps = Vec::new();
        for (i, step) in path.steps.iter().enumerate() {
            let w = &words[i];
            if self.identities.contains(&step.rule) {
                continue;
            }
            if let Some(witness) = self.witnesses.get(&step.rule) {
                let rule = self.old.rule(&step.rule).expect("known rule");
                let (consumed, _) = step.sides(rule);
                let prefix = w.slice(0, step.position);
                let suffix = w.slice(step.position + consumed.len(), w.len());
                let mut whiskered = witness.whisker(&prefix, &suffix);
                if step.orientation == Orientation::Backward {
                    whiskered = whiskered.inverse(self.old)?;
                }
                steps.extend(self.path(&whiskered, depth + 1)?.steps);
                continue;
            }
            let position = self.word(&w.slice(0, step.position)).len();
            steps.push(RewriteStep {
                position,
                ..step.clone()
            });
        }
        Ok(RewritePath::new(self.word(&path.start), steps).cancel_inverses())
    }
}

/// Removes the collapsed cells and rewrites the boundaries of the others.
pub fn homotopical_reduce(x: &ThreeOnePolygraph, g: &CollapsiblePart) -> Result<ThreeOnePolygraph> {
    validate_collapsible(x, g)?;
    let p = x.base();
    let n = p.alphabet().len();
    let mut replacement: BTreeMap<usize, Word> = BTreeMap::new();
    for label in &g.gamma2 {
        let (gen, word) = collapsed_generator(p, p.rule(label).expect("validated"))?;
        replacement.insert(gen, word);
    }
    let survivors: Vec<usize> = (0..n).filter(|g| !replacement.contains_key(g)).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &g) in survivors.iter().enumerate() {
        new_index[g] = i;
    }
    let mut image: Vec<Option<Word>> = vec![None; n];
    fn resolve(
        g: usize,
        replacement: &BTreeMap<usize, Word>,
        new_index: &[usize],
        image: &mut Vec<Option<Word>>,
        depth: usize,
    ) -> Result<Word> {
        if let Some(w) = &image[g] {
            return Ok(w.clone());
        }
        if depth > new_index.len() {
            return Err(Error::NotCollapsible("generator substitution is cyclic".into()));
        }
        let w = match replacement.get(&g) {
            None => Word(vec![new_index[g]]),
            Some(word) => {
                let mut letters = Vec::new();
                for &h in word.letters() {
                    letters.extend(resolve(h, replacement, new_index, image, depth + 1)?.0);
                }
                Word(letters)
            }
        };
        image[g] = Some(w.clone());
        Ok(w)
    }
    for gen in 0..n {
        resolve(gen, &replacement, &new_index, &mut image, 0)?;
    }
    let image: Vec<Word> = image.into_iter().map(|w| w.expect("resolved")).collect();
    let mut witnesses = HashMap::new();
    for (cell, rule) in &g.gamma3 {
        let c = x.cell(cell).expect("validated");
        witnesses.insert(rule.clone(), collapse_witness(x, c, rule)?);
    }
    let identities: HashSet<Label> = g.gamma2.iter().cloned().collect();
    let proj = Projection {
        old: p,
        image,
        identities,
        witnesses,
    };
    let mut rules = Vec::new();
    for rule in p.rules() {
        if proj.identities.contains(&rule.label) || proj.witnesses.contains_key(&rule.label) {
            continue;
        }
        let source = proj.word(&rule.source);
        let target = proj.word(&rule.target);
        if source == target {
            return Err(Error::SubstitutionOutOfScope(format!(
                "rule `{}` becomes an identity",
                rule.label
            )));
        }
        rules.push(Rule {
            label: rule.label.clone(),
            orientable: rule.orientable && !source.is_empty(),
            source,
            target,
        });
    }
    let alphabet = survivors.iter().map(|&g| p.alphabet()[g].clone()).collect();
    let base = TwoPolygraph::new(alphabet, rules)?;
    let dropped: HashSet<&Label> = g
        .gamma3
        .iter()
        .map(|(c, _)| c)
        .chain(g.gamma4.iter().map(|(c, _)| c))
        .collect();
    let mut cells = Vec::new();
    for c in x.cells() {
        if dropped.contains(&c.label) {
            continue;
        }
        let lhs = proj.path(&c.lhs, 0)?;
        let rhs = proj.path(&c.rhs, 0)?;
        cells.push(ThreeCell {
            label: c.label.clone(),
            lhs,
            rhs,
            family: c.family.clone(),
        });
    }
    ThreeOnePolygraph::new(base, cells)
}

/// Picks a collapsible part: spheres found by search collapse 3-cells from
/// the last one backwards, then every remaining 3-cell collapses a rule that
/// occurs once in it whenever the rank constraints stay acyclic.
pub fn auto_collapsible_part(x: &ThreeOnePolygraph, limits: SearchLimits) -> Result<CollapsiblePart> {
    let cells = x.cells();
    let mut part = CollapsiblePart::default();
    let mut targets = HashSet::new();
    for i in (0..cells.len()).rev() {
        let earlier: HashSet<&Label> = cells[..i].iter().map(|c| &c.label).collect();
        let allowed = |c: &ThreeCell| earlier.contains(&c.label);
        if let Some(sphere) = find_sphere(x, &cells[i].label, &allowed, limits)? {
            targets.insert(cells[i].label.clone());
            part.gamma4.push((cells[i].label.clone(), Witness::Sphere(sphere)));
        }
    }
    part.gamma4.reverse();
    for (i, c) in cells.iter().enumerate() {
        part.ranks.cells.insert(c.label.clone(), i);
    }
    let p = x.base();
    let mut edges: Vec<(Label, Label)> = Vec::new();
    let mut collapsed = HashSet::new();
    for c in cells.iter().filter(|c| !targets.contains(&c.label)) {
        let used: Vec<&Label> = c.lhs.rules_used().chain(c.rhs.rules_used()).collect();
        let mut candidates: Vec<&Label> = used
            .iter()
            .copied()
            .filter(|r| c.occurrences(r) == 1 && !collapsed.contains(*r))
            .collect();
        candidates.sort_by_key(|r| std::cmp::Reverse(p.rule_index(r)));
        for r in candidates {
            let mut trial = edges.clone();
            trial.extend(used.iter().filter(|o| **o != r).map(|o| (r.clone(), (*o).clone())));
            if rank_rules(&trial).is_none() || collapse_witness(x, c, r).is_err() {
                continue;
            }
            edges = trial;
            collapsed.insert(r.clone());
            part.gamma3.push((c.label.clone(), r.clone()));
            break;
        }
    }
    part.ranks.rules = rank_rules(&edges).expect("acyclic by construction");
    Ok(part)
}

/// Longest-path ranks for `(greater, smaller)` pairs, or `None` on a cycle.
fn rank_rules(edges: &[(Label, Label)]) -> Option<HashMap<Label, usize>> {
    let mut below: HashMap<&Label, Vec<&Label>> = HashMap::new();
    for (a, b) in edges {
        below.entry(a).or_default().push(b);
        below.entry(b).or_default();
    }
    fn visit<'a>(
        v: &'a Label,
        below: &HashMap<&'a Label, Vec<&'a Label>>,
        state: &mut HashMap<&'a Label, Option<usize>>,
    ) -> Option<usize> {
        match state.get(v) {
            Some(Some(r)) => return Some(*r),
            Some(None) => return None,
            None => {}
        }
        state.insert(v, None);
        let mut rank = 0;
        for w in &below[v] {
            rank = rank.max(visit(w, below, state)? + 1);
        }
        state.insert(v, Some(rank));
        Some(rank)
    }
    let mut state = HashMap::new();
    let keys: Vec<&Label> = below.keys().copied().collect();
    for v in keys {
        visit(v, &below, &mut state)?;
    }
    Some(state.into_iter().map(|(k, v)| (k.clone(), v.expect("finished"))).collect())
}
