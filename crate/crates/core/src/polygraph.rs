//! Rules, rewriting steps and paths, 3-cells and polygraphs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::Word;

/// Identity of a rule or a 3-cell.
pub type Label = Arc<str>;

pub fn label(s: &str) -> Label {
    Arc::from(s)
}

/// A generating 2-cell `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub label: Label,
    pub source: Word,
    pub target: Word,
    /// False for rules excluded from redex search and completion.
    pub orientable: bool,
}

impl Rule {
    pub fn new(label: &str, source: Word, target: Word) -> Self {
        let orientable = !source.is_empty();
        Rule {
            label: Arc::from(label),
            source,
            target,
            orientable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// A rule applied in context at a letter offset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RewriteStep {
    pub rule: Label,
    pub position: usize,
    pub orientation: Orientation,
}

impl RewriteStep {
    pub fn forward(rule: &Label, position: usize) -> Self {
        RewriteStep {
            rule: rule.clone(),
            position,
            orientation: Orientation::Forward,
        }
    }

    pub fn backward(rule: &Label, position: usize) -> Self {
        RewriteStep {
            rule: rule.clone(),
            position,
            orientation: Orientation::Backward,
        }
    }

    pub fn inverse(&self) -> Self {
        RewriteStep {
            rule: self.rule.clone(),
            position: self.position,
            orientation: self.orientation.flip(),
        }
    }

    pub fn shifted(&self, by: usize) -> Self {
        RewriteStep {
            rule: self.rule.clone(),
            position: self.position + by,
            orientation: self.orientation,
        }
    }

    /// The (consumed, produced) words of this step.
    pub fn sides<'a>(&self, rule: &'a Rule) -> (&'a Word, &'a Word) {
        match self.orientation {
            Orientation::Forward => (&rule.source, &rule.target),
            Orientation::Backward => (&rule.target, &rule.source),
        }
    }
}

impl fmt::Debug for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.orientation == Orientation::Backward {
            "~"
        } else {
            ""
        };
        write!(f, "{}@{}{}", self.rule, self.position, tilde)
    }
}

/// An alphabet together with labeled rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPolygraph {
    alphabet: Vec<String>,
    rules: Vec<Rule>,
    index: HashMap<Label, usize>,
}

impl TwoPolygraph {
    pub fn new(alphabet: Vec<String>, rules: Vec<Rule>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &alphabet {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("bad generator name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        let mut index = HashMap::new();
        for (i, rule) in rules.iter().enumerate() {
            if index.insert(rule.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(rule.label.to_string()));
            }
            let valid = |w: &Word| w.letters().iter().all(|&g| g < alphabet.len());
            if !valid(&rule.source) || !valid(&rule.target) {
                return Err(Error::Validation(format!(
                    "rule `{}` uses a letter outside the alphabet",
                    rule.label
                )));
            }
            if rule.source == rule.target {
                return Err(Error::Validation(format!(
                    "rule `{}` has equal source and target",
                    rule.label
                )));
            }
        }
        Ok(TwoPolygraph {
            alphabet,
            rules,
            index,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, label: &str) -> Option<&Rule> {
        self.index.get(label).map(|&i| &self.rules[i])
    }

    pub fn rule_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|g| g == name)
    }

    /// Builds a word from generator names.
    pub fn word(&self, names: &[&str]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                self.generator(n)
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Reads a word written with spaces or `|` between names, or as a plain
    /// string when every name is one character long.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" && self.generator("1").is_none() {
            return Ok(Word::empty());
        }
        let parts: Vec<String> = if text.contains(|c: char| c.is_whitespace() || c == '|') {
            text.split(|c: char| c.is_whitespace() || c == '|')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect()
        } else if self.generator(text).is_none()
            && self.alphabet.iter().all(|g| g.chars().count() == 1)
        {
            text.chars().map(String::from).collect()
        } else {
            vec![text.to_string()]
        };
        let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
        self.word(&parts)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.alphabet)
    }

    /// Returns a copy with extra rules appended.
    pub fn with_rules(&self, extra: Vec<Rule>) -> Result<Self> {
        let mut rules = self.rules.clone();
        rules.extend(extra);
        TwoPolygraph::new(self.alphabet.clone(), rules)
    }

    fn lookup(&self, label: &str) -> Result<&Rule> {
        self.rule(label)
            .ok_or_else(|| Error::UnknownRule(label.to_string()))
    }
}

/// Applies one step to a word.
pub fn apply_step(word: &Word, step: &RewriteStep, p: &TwoPolygraph) -> Result<Word> {
    let rule = p.lookup(&step.rule)?;
    let (from, to) = step.sides(rule);
    if !word.occurs_at(from, step.position) {
        return Err(Error::RedexMismatch {
            step: 0,
            rule: step.rule.to_string(),
            position: step.position,
        });
    }
    Ok(word.splice(step.position, from.len(), to))
}

/// A composable sequence of steps in the free (2,1)-category.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RewritePath {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
}

impl fmt::Debug for RewritePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.start, self.steps)
    }
}

impl RewritePath {
    pub fn identity(start: Word) -> Self {
        RewritePath {
            start,
            steps: Vec::new(),
        }
    }

    pub fn new(start: Word, steps: Vec<RewriteStep>) -> Self {
        RewritePath { start, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All intermediate words, from start to end.
    pub fn words(&self, p: &TwoPolygraph) -> Result<Vec<Word>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut current = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let next = apply_step(&current, step, p).map_err(|e| match e {
                Error::RedexMismatch { rule, position, .. } => Error::RedexMismatch {
                    step: i + 1,
                    rule,
                    position,
                },
                other => other,
            })?;
            out.push(std::mem::replace(&mut current, next));
        }
        out.push(current);
        Ok(out)
    }

    /// Replays the path and returns its end word.
    pub fn replay(&self, p: &TwoPolygraph) -> Result<Word> {
        Ok(self.words(p)?.pop().expect("nonempty"))
    }

    pub fn inverse(&self, p: &TwoPolygraph) -> Result<Self> {
        let end = self.replay(p)?;
        Ok(RewritePath {
            start: end,
            steps: self.steps.iter().rev().map(RewriteStep::inverse).collect(),
        })
    }

    /// Sequential composition; the caller guarantees composability.
    pub fn then(&self, other: &RewritePath) -> Self {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        RewritePath {
            start: self.start.clone(),
            steps,
        }
    }

    /// Puts the path in the context `prefix · _ · suffix`.
    pub fn whisker(&self, prefix: &Word, suffix: &Word) -> Self {
        RewritePath {
            start: prefix.concat(&self.start).concat(suffix),
            steps: self.steps.iter().map(|s| s.shifted(prefix.len())).collect(),
        }
    }

    /// Removes adjacent pairs made of a step and its inverse.
    pub fn cancel_inverses(&self) -> Self {
        let mut out: Vec<RewriteStep> = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            if out.last().is_some_and(|last| *last == step.inverse()) {
                out.pop();
            } else {
                out.push(step.clone());
            }
        }
        RewritePath {
            start: self.start.clone(),
            steps: out,
        }
    }

    pub fn rules_used(&self) -> impl Iterator<Item = &Label> {
        self.steps.iter().map(|s| &s.rule)
    }
}

/// Inverts a valid path.
pub fn invert_path(path: &RewritePath, p: &TwoPolygraph) -> Result<RewritePath> {
    path.inverse(p)
}

/// Replays a path and returns its end word.
pub fn replay_path(path: &RewritePath, p: &TwoPolygraph) -> Result<Word> {
    path.replay(p)
}

/// A generating 3-cell: a labeled pair of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCell {
    pub label: Label,
    pub lhs: RewritePath,
    pub rhs: RewritePath,
    pub family: Option<String>,
}

impl ThreeCell {
    pub fn new(
        label: &str,
        lhs: RewritePath,
        rhs: RewritePath,
        family: Option<&str>,
    ) -> Self {
        ThreeCell {
            label: Arc::from(label),
            lhs,
            rhs,
            family: family.map(str::to_string),
        }
    }

    /// Checks that both sides replay and share their endpoints.
    pub fn check_parallel(&self, p: &TwoPolygraph) -> Result<()> {
        if self.lhs.start != self.rhs.start {
            return Err(Error::NotParallel(format!(
                "cell `{}`: sources {} and {} differ",
                self.label,
                p.render(&self.lhs.start),
                p.render(&self.rhs.start)
            )));
        }
        let a = self.lhs.replay(p)?;
        let b = self.rhs.replay(p)?;
        if a != b {
            return Err(Error::NotParallel(format!(
                "cell `{}`: targets {} and {} differ",
                self.label,
                p.render(&a),
                p.render(&b)
            )));
        }
        Ok(())
    }

    /// Number of occurrences of a rule in the boundary.
    pub fn occurrences(&self, rule: &str) -> usize {
        self.lhs
            .rules_used()
            .chain(self.rhs.rules_used())
            .filter(|r| &***r == rule)
            .count()
    }
}

/// A 2-polygraph extended by 3-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeOnePolygraph {
    base: TwoPolygraph,
    cells: Vec<ThreeCell>,
    index: HashMap<Label, usize>,
}

impl ThreeOnePolygraph {
    pub fn new(base: TwoPolygraph, cells: Vec<ThreeCell>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, cell) in cells.iter().enumerate() {
            if index.insert(cell.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(cell.label.to_string()));
            }
            cell.check_parallel(&base)?;
        }
        Ok(ThreeOnePolygraph { base, cells, index })
    }

    pub fn base(&self) -> &TwoPolygraph {
        &self.base
    }

    pub fn cells(&self) -> &[ThreeCell] {
        &self.cells
    }

    pub fn cell(&self, label: &str) -> Option<&ThreeCell> {
        self.index.get(label).map(|&i| &self.cells[i])
    }

    pub fn cell_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// (generators, rules, 3-cells)
    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.base.alphabet().len(),
            self.base.rules().len(),
            self.cells.len(),
        )
    }
}
