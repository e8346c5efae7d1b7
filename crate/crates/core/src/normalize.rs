//! Redex search, normalization strategies and normal forms.

use crate::error::{Error, Result};
use crate::polygraph::{RewritePath, RewriteStep, TwoPolygraph};
use crate::word::Word;

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Redex lookup over the orientable rules of a polygraph.
pub struct Rewriter<'a> {
    p: &'a TwoPolygraph,
    by_first: Vec<Vec<usize>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(p: &'a TwoPolygraph) -> Self {
        let mut by_first = vec![Vec::new(); p.alphabet().len()];
        for (i, rule) in p.rules().iter().enumerate() {
            if rule.orientable {
                if let Some(h) = rule.source.head() {
                    by_first[h].push(i);
                }
            }
        }
        Rewriter { p, by_first }
    }

    pub fn polygraph(&self) -> &'a TwoPolygraph {
        self.p
    }

    /// Rules (by index) whose source occurs at `pos`, in rule order.
    pub fn rules_at<'b>(&'b self, w: &'b Word, pos: usize) -> impl Iterator<Item = usize> + 'b {
        let first = w.letters().get(pos).copied();
        let candidates: &[usize] = match first {
            Some(g) => &self.by_first[g],
            None => &[],
        };
        candidates
            .iter()
            .copied()
            .filter(move |&i| w.occurs_at(&self.p.rules()[i].source, pos))
    }

    /// Every redex as (rule index, position), sorted by position then rule.
    pub fn redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        (0..w.len())
            .flat_map(|pos| self.rules_at(w, pos).map(move |r| (r, pos)).collect::<Vec<_>>())
            .collect()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        (0..w.len()).all(|pos| self.rules_at(w, pos).next().is_none())
    }

    pub fn apply(&self, w: &Word, rule: usize, pos: usize) -> Word {
        let r = &self.p.rules()[rule];
        w.splice(pos, r.source.len(), &r.target)
    }

    /// Normalizes with a strategy, recording the path.
    pub fn normalize(
        &self,
        w: &Word,
        strategy: &dyn Strategy,
        budget: usize,
    ) -> Result<(Word, RewritePath)> {
        let mut current = w.clone();
        let mut steps = Vec::new();
        while let Some((rule, pos)) = strategy.choose(self, &current) {
            if steps.len() >= budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
            current = self.apply(&current, rule, pos);
            steps.push(RewriteStep::forward(&self.p.rules()[rule].label, pos));
        }
        Ok((current, RewritePath::new(w.clone(), steps)))
    }

    /// Leftmost normal form without recording the path.
    pub fn normal_form(&self, w: &Word, budget: usize) -> Result<Word> {
        let mut current = w.clone();
        let mut count = 0;
        while let Some((rule, pos)) = Leftmost.choose(self, &current) {
            count += 1;
            if count > budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
            current = self.apply(&current, rule, pos);
        }
        Ok(current)
    }
}

/// Chooses the next redex to contract.
pub trait Strategy: Send + Sync {
    fn name(&self) -> &str;
    fn choose(&self, rw: &Rewriter, w: &Word) -> Option<(usize, usize)>;
}

pub struct Leftmost;
pub struct Rightmost;

impl Strategy for Leftmost {
    fn name(&self) -> &str {
        "leftmost"
    }

    fn choose(&self, rw: &Rewriter, w: &Word) -> Option<(usize, usize)> {
        (0..w.len()).find_map(|pos| rw.rules_at(w, pos).next().map(|r| (r, pos)))
    }
}

impl Strategy for Rightmost {
    fn name(&self) -> &str {
        "rightmost"
    }

    fn choose(&self, rw: &Rewriter, w: &Word) -> Option<(usize, usize)> {
        (0..w.len())
            .rev()
            .find_map(|pos| rw.rules_at(w, pos).next().map(|r| (r, pos)))
    }
}

/// Normalization strategies registered by name.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn Strategy>>,
}

impl StrategyRegistry {
    pub fn with_builtins() -> Self {
        StrategyRegistry {
            entries: vec![Box::new(Leftmost), Box::new(Rightmost)],
        }
    }

    pub fn register(&mut self, strategy: Box<dyn Strategy>) {
        self.entries.retain(|s| s.name() != strategy.name());
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Strategy> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

/// Normalizes `w` in `p` with the given strategy and the default budget.
pub fn normalize(p: &TwoPolygraph, w: &Word, strategy: &dyn Strategy) -> Result<(Word, RewritePath)> {
    Rewriter::new(p).normalize(w, strategy, DEFAULT_BUDGET)
}
