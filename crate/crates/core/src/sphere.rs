//! 3-spheres as two sequences of moves on a common 2-path, their check, and
//! a bounded search for spheres with a prescribed target.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::normalize::{Leftmost, Rewriter, DEFAULT_BUDGET};
use crate::polygraph::{Label, Orientation, RewritePath, RewriteStep, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::word::Word;

/// One elementary move on a 2-path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SphereMove {
    /// Replaces the whiskered source of a 3-cell (its target when inverse)
    /// starting at step `index`, with `offset` letters of left context.
    Apply {
        cell: Label,
        inverse: bool,
        index: usize,
        offset: usize,
    },
    /// Swaps the independent steps at `index` and `index + 1`.
    Exchange { index: usize },
}

/// A pair of parallel composites of 3-cells, both starting from `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSphere {
    pub name: String,
    pub start: RewritePath,
    pub lhs: Vec<SphereMove>,
    pub rhs: Vec<SphereMove>,
    /// The designated target, when the sphere is used to collapse a cell.
    pub target: Option<Label>,
}

impl ThreeSphere {
    /// Occurrence count of every 3-cell across both sides.
    pub fn cell_counts(&self) -> BTreeMap<Label, usize> {
        let mut counts = BTreeMap::new();
        for m in self.lhs.iter().chain(&self.rhs) {
            if let SphereMove::Apply { cell, .. } = m {
                *counts.entry(cell.clone()).or_insert(0) += 1;
            }
        }
        counts
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereReport {
    pub source: RewritePath,
    pub target_path: RewritePath,
    pub lhs_cells: Vec<Label>,
    pub rhs_cells: Vec<Label>,
    pub target: Option<Label>,
}

fn cells_of(moves: &[SphereMove]) -> Vec<Label> {
    moves
        .iter()
        .filter_map(|m| match m {
            SphereMove::Apply { cell, .. } => Some(cell.clone()),
            SphereMove::Exchange { .. } => None,
        })
        .collect()
}

/// Swaps two consecutive steps acting on disjoint parts of the word.
pub fn exchange(p: &TwoPolygraph, s: &RewriteStep, t: &RewriteStep) -> Option<(RewriteStep, RewriteStep)> {
    let (l1, m1) = lengths(p, s)?;
    let (l2, m2) = lengths(p, t)?;
    if t.position >= s.position + m1 {
        let moved = RewriteStep {
            position: t.position + l1 - m1,
            ..t.clone()
        };
        Some((moved, s.clone()))
    } else if t.position + l2 <= s.position {
        let moved = RewriteStep {
            position: s.position + m2 - l2,
            ..s.clone()
        };
        Some((t.clone(), moved))
    } else {
        None
    }
}

fn lengths(p: &TwoPolygraph, s: &RewriteStep) -> Option<(usize, usize)> {
    let rule = p.rule(&s.rule)?;
    let (from, to) = s.sides(rule);
    Some((from.len(), to.len()))
}

/// Applies a move to a 2-path.
pub fn apply_move(x: &ThreeOnePolygraph, path: &RewritePath, m: &SphereMove) -> Result<RewritePath> {
    let p = x.base();
    match m {
        SphereMove::Exchange { index } => {
            let i = *index;
            if i + 1 >= path.steps.len() {
                return Err(Error::InvalidMove(format!("exchange at {i} out of range")));
            }
            let (a, b) = exchange(p, &path.steps[i], &path.steps[i + 1]).ok_or_else(|| {
                Error::InvalidMove(format!("steps {i} and {} are not independent", i + 1))
            })?;
            let mut steps = path.steps.clone();
            steps[i] = a;
            steps[i + 1] = b;
            Ok(RewritePath::new(path.start.clone(), steps))
        }
        SphereMove::Apply {
            cell,
            inverse,
            index,
            offset,
        } => {
            let c = x
                .cell(cell)
                .ok_or_else(|| Error::UnknownCell(cell.to_string()))?;
            let (from, to) = if *inverse { (&c.rhs, &c.lhs) } else { (&c.lhs, &c.rhs) };
            let words = path.words(p)?;
            let i = *index;
            let k = from.steps.len();
            let fits = i + k <= path.steps.len()
                && i < words.len()
                && words[i].occurs_at(&from.start, *offset)
                && from
                    .steps
                    .iter()
                    .zip(&path.steps[i..i + k])
                    .all(|(a, b)| a.shifted(*offset) == *b);
            if !fits {
                return Err(Error::InvalidMove(format!(
                    "cell `{cell}` does not match at step {i} with offset {offset}"
                )));
            }
            let mut steps = path.steps[..i].to_vec();
            steps.extend(to.steps.iter().map(|s| s.shifted(*offset)));
            steps.extend(path.steps[i + k..].iter().cloned());
            Ok(RewritePath::new(path.start.clone(), steps))
        }
    }
}

fn run(x: &ThreeOnePolygraph, start: &RewritePath, moves: &[SphereMove]) -> Result<RewritePath> {
    let mut current = start.clone();
    for m in moves {
        current = apply_move(x, &current, m)?;
    }
    Ok(current)
}

/// Replays both sides and checks that they reach the same 2-path.
pub fn check_sphere(s: &ThreeSphere, x: &ThreeOnePolygraph) -> Result<SphereReport> {
    let p = x.base();
    s.start.replay(p)?;
    let a = run(x, &s.start, &s.lhs)?;
    let b = run(x, &s.start, &s.rhs)?;
    if a != b {
        let wa = a.words(p)?;
        let wb = b.words(p)?;
        let at = wa
            .iter()
            .zip(&wb)
            .position(|(u, v)| u != v)
            .unwrap_or(wa.len().min(wb.len()));
        let show = |w: &[Word]| w.get(at).map(|w| p.render(w)).unwrap_or_else(|| "end".into());
        return Err(Error::NotParallel(format!(
            "sphere `{}`: sides differ at word {at} ({} vs {})",
            s.name,
            show(&wa),
            show(&wb)
        )));
    }
    let counts = s.cell_counts();
    let target = match &s.target {
        Some(t) => {
            if counts.get(t).copied() != Some(1) {
                return Err(Error::NotCollapsible(format!(
                    "sphere `{}`: target `{t}` must occur exactly once",
                    s.name
                )));
            }
            Some(t.clone())
        }
        None => {
            let once: Vec<&Label> = counts.iter().filter(|(_, &n)| n == 1).map(|(l, _)| l).collect();
            (once.len() == 1).then(|| once[0].clone())
        }
    };
    Ok(SphereReport {
        source: s.start.clone(),
        target_path: a,
        lhs_cells: cells_of(&s.lhs),
        rhs_cells: cells_of(&s.rhs),
        target,
    })
}

/// Limits of [`find_sphere`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// How many steps the source of the target cell may be pulled back.
    pub max_depth: usize,
    /// Nodes explored per candidate context.
    pub node_budget: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 2,
            node_budget: 20_000,
        }
    }
}

/// Positive paths of length `depth` ending at `w`, built from predecessors.
fn pullbacks(p: &TwoPolygraph, w: &Word, depth: usize) -> Vec<RewritePath> {
    let mut layer = vec![RewritePath::identity(w.clone())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for path in &layer {
            for rule in p.rules().iter().filter(|r| r.orientable && !r.target.is_empty()) {
                for pos in path.start.occurrences(&rule.target) {
                    let prev = path.start.splice(pos, rule.target.len(), &rule.source);
                    let mut steps = vec![RewriteStep::forward(&rule.label, pos)];
                    steps.extend(path.steps.iter().cloned());
                    next.push(RewritePath::new(prev, steps));
                }
            }
        }
        next.sort_by(|a, b| (&a.start, &a.steps).cmp(&(&b.start, &b.steps)));
        next.dedup();
        layer = next;
    }
    layer
}

struct Index<'a> {
    by_first: HashMap<(Label, Orientation), Vec<(&'a ThreeCell, bool)>>,
}

impl<'a> Index<'a> {
    fn new(cells: &[&'a ThreeCell]) -> Self {
        let mut by_first: HashMap<(Label, Orientation), Vec<(&ThreeCell, bool)>> = HashMap::new();
        for c in cells {
            for inverse in [false, true] {
                let side = if inverse { &c.rhs } else { &c.lhs };
                if let Some(first) = side.steps.first() {
                    by_first
                        .entry((first.rule.clone(), first.orientation))
                        .or_default()
                        .push((c, inverse));
                }
            }
        }
        Index { by_first }
    }
}

fn neighbours(
    p: &TwoPolygraph,
    index: &Index,
    path: &RewritePath,
) -> Result<Vec<(SphereMove, Vec<RewriteStep>)>> {
    let words = path.words(p)?;
    let mut out = Vec::new();
    for i in 0..path.steps.len() {
        let step = &path.steps[i];
        if let Some(entries) = index.by_first.get(&(step.rule.clone(), step.orientation)) {
            for (cell, inverse) in entries {
                let (from, to) = if *inverse { (&cell.rhs, &cell.lhs) } else { (&cell.lhs, &cell.rhs) };
                let Some(offset) = step.position.checked_sub(from.steps[0].position) else {
                    continue;
                };
                let k = from.steps.len();
                if i + k > path.steps.len() || !words[i].occurs_at(&from.start, offset) {
                    continue;
                }
                if !from
                    .steps
                    .iter()
                    .zip(&path.steps[i..i + k])
                    .all(|(a, b)| a.shifted(offset) == *b)
                {
                    continue;
                }
                let mut steps = path.steps[..i].to_vec();
                steps.extend(to.steps.iter().map(|s| s.shifted(offset)));
                steps.extend(path.steps[i + k..].iter().cloned());
                let m = SphereMove::Apply {
                    cell: cell.label.clone(),
                    inverse: *inverse,
                    index: i,
                    offset,
                };
                out.push((m, steps));
            }
        }
    }
    for i in 0..path.steps.len().saturating_sub(1) {
        if let Some((a, b)) = exchange(p, &path.steps[i], &path.steps[i + 1]) {
            let mut steps = path.steps.clone();
            steps[i] = a;
            steps[i + 1] = b;
            out.push((SphereMove::Exchange { index: i }, steps));
        }
    }
    Ok(out)
}

/// A sequence of moves from `from` to `to`, if one exists within the budget.
pub fn connect(
    p: &TwoPolygraph,
    cells: &[&ThreeCell],
    from: &RewritePath,
    to: &RewritePath,
    node_budget: usize,
) -> Result<Option<Vec<SphereMove>>> {
    connect_indexed(p, &Index::new(cells), from, to, node_budget)
}

fn invert_move(m: SphereMove) -> SphereMove {
    match m {
        SphereMove::Apply {
            cell,
            inverse,
            index,
            offset,
        } => SphereMove::Apply {
            cell,
            inverse: !inverse,
            index,
            offset,
        },
        e @ SphereMove::Exchange { .. } => e,
    }
}

type Tree = HashMap<Vec<RewriteStep>, Option<(Vec<RewriteStep>, SphereMove)>>;

fn trace<'a>(tree: &'a Tree, mut node: &'a Vec<RewriteStep>) -> Vec<SphereMove> {
    let mut moves = Vec::new();
    while let Some((parent, m)) = &tree[node] {
        moves.push(m.clone());
        node = parent;
    }
    moves.reverse();
    moves
}

/// Bidirectional breadth-first search; every move is invertible.
fn connect_indexed(
    p: &TwoPolygraph,
    index: &Index,
    from: &RewritePath,
    to: &RewritePath,
    node_budget: usize,
) -> Result<Option<Vec<SphereMove>>> {
    if from.start != to.start {
        return Ok(None);
    }
    if from.steps == to.steps {
        return Ok(Some(Vec::new()));
    }
    let mut trees: [Tree; 2] = [
        HashMap::from([(from.steps.clone(), None)]),
        HashMap::from([(to.steps.clone(), None)]),
    ];
    let mut frontiers = [vec![from.steps.clone()], vec![to.steps.clone()]];
    while !frontiers[0].is_empty() && !frontiers[1].is_empty() && trees[0].len() + trees[1].len() <= node_budget {
        let side = usize::from(frontiers[1].len() < frontiers[0].len());
        let mut next = Vec::new();
        for current in std::mem::take(&mut frontiers[side]) {
            let path = RewritePath::new(from.start.clone(), current.clone());
            for (m, steps) in neighbours(p, index, &path)? {
                if trees[side].contains_key(&steps) {
                    continue;
                }
                trees[side].insert(steps.clone(), Some((current.clone(), m)));
                if trees[1 - side].contains_key(&steps) {
                    let mut moves = trace(&trees[0], &steps);
                    moves.extend(trace(&trees[1], &steps).into_iter().rev().map(invert_move));
                    return Ok(Some(moves));
                }
                next.push(steps);
            }
        }
        frontiers[side] = next;
    }
    Ok(None)
}

/// An index over a fixed set of usable cells, reused across targets.
pub struct SphereSearch<'a> {
    x: &'a ThreeOnePolygraph,
    index: Index<'a>,
    limits: SearchLimits,
}

impl<'a> SphereSearch<'a> {
    pub fn new(x: &'a ThreeOnePolygraph, allowed: &dyn Fn(&ThreeCell) -> bool, limits: SearchLimits) -> Self {
        let cells: Vec<&ThreeCell> = x
            .cells()
            .iter()
            .filter(|c| allowed(c) && !c.lhs.is_empty() && !c.rhs.is_empty())
            .collect();
        SphereSearch {
            x,
            index: Index::new(&cells),
            limits,
        }
    }

    /// Looks for a sphere whose only occurrence of `target` is a single
    /// move. The source of the target is pulled back along positive paths of
    /// increasing length and both boundaries are closed by leftmost
    /// normalization; all contexts are tried under a small node budget
    /// before the budget grows. `target` must not be among the usable cells.
    pub fn find(&self, target: &str) -> Result<Option<ThreeSphere>> {
        let p = self.x.base();
        let t = self
            .x
            .cell(target)
            .ok_or_else(|| Error::UnknownCell(target.to_string()))?;
        let rw = Rewriter::new(p);
        let end = t.lhs.replay(p)?;
        let (_, close) = rw.normalize(&end, &Leftmost, DEFAULT_BUDGET)?;
        let contexts: Vec<(usize, RewritePath)> = (0..=self.limits.max_depth)
            .flat_map(|depth| pullbacks(p, &t.lhs.start, depth).into_iter().map(move |pre| (depth, pre)))
            .collect();
        let mut budgets: Vec<usize> = [32, 256, 4096]
            .into_iter()
            .filter(|&b| b < self.limits.node_budget)
            .collect();
        budgets.push(self.limits.node_budget);
        for budget in budgets {
            for (depth, pre) in &contexts {
                let depth = *depth;
                let from = RewritePath::new(pre.start.clone(), pre.then(&t.lhs).then(&close).steps);
                let to = RewritePath::new(pre.start.clone(), pre.then(&t.rhs).then(&close).steps);
                if let Some(moves) = connect_indexed(p, &self.index, &from, &to, budget)? {
                    return Ok(Some(ThreeSphere {
                        name: format!("sphere:{target}"),
                        start: from,
                        lhs: vec![SphereMove::Apply {
                            cell: t.label.clone(),
                            inverse: false,
                            index: depth,
                            offset: 0,
                        }],
                        rhs: moves,
                        target: Some(t.label.clone()),
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// A sphere for `target` using only the other cells accepted by `allowed`.
pub fn find_sphere(
    x: &ThreeOnePolygraph,
    target: &str,
    allowed: &dyn Fn(&ThreeCell) -> bool,
    limits: SearchLimits,
) -> Result<Option<ThreeSphere>> {
    SphereSearch::new(x, &|c| &*c.label != target && allowed(c), limits).find(target)
}
