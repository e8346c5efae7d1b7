//! Termination orders on words and a registry to select them by name.

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// A strict order on words used to orient rules.
pub trait TerminationOrder: Send + Sync {
    fn name(&self) -> &str;
    fn compare(&self, a: &Word, b: &Word) -> Comparison;

    fn greater(&self, a: &Word, b: &Word) -> bool {
        self.compare(a, b) == Comparison::Greater
    }
}

/// Length first, then lexicographic under a total order on generators.
#[derive(Clone, Debug)]
pub struct Deglex {
    rank: Vec<usize>,
}

impl Deglex {
    /// `ascending` lists every generator once, smallest first.
    pub fn new(ascending: &[usize]) -> Result<Self> {
        let n = ascending.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &g) in ascending.iter().enumerate() {
            if g >= n || rank[g] != usize::MAX {
                return Err(Error::InvalidOrderSpec(
                    "deglex needs every generator exactly once".into(),
                ));
            }
            rank[g] = r;
        }
        Ok(Deglex { rank })
    }

    pub fn natural(n: usize) -> Self {
        Deglex {
            rank: (0..n).collect(),
        }
    }
}

impl TerminationOrder for Deglex {
    fn name(&self) -> &str {
        "deglex"
    }

    fn compare(&self, a: &Word, b: &Word) -> Comparison {
        use std::cmp::Ordering::*;
        let key = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&g| self.rank[g]).collect() };
        match a.len().cmp(&b.len()).then_with(|| key(a).cmp(&key(b))) {
            Less => Comparison::Less,
            Greater => Comparison::Greater,
            Equal => Comparison::Equal,
        }
    }
}

/// Longer words are greater; at equal length the first differing letters
/// decide, the properly dividing letter being the greater one.
#[derive(Clone, Debug)]
pub struct Divlex {
    below: Vec<Vec<bool>>,
}

impl Divlex {
    /// `below[g][h]` holds when `g` properly left-divides `h`.
    pub fn new(below: Vec<Vec<bool>>) -> Result<Self> {
        let n = below.len();
        if below.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidOrderSpec("relation is not square".into()));
        }
        for g in 0..n {
            if below[g][g] {
                return Err(Error::InvalidOrderSpec(format!("relation is reflexive at {g}")));
            }
            for h in 0..n {
                if !below[g][h] {
                    continue;
                }
                for k in 0..n {
                    if below[h][k] && !below[g][k] {
                        return Err(Error::InvalidOrderSpec(format!(
                            "relation is not transitive at ({g}, {h}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(Divlex { below })
    }
}

impl TerminationOrder for Divlex {
    fn name(&self) -> &str {
        "divlex"
    }

    fn compare(&self, a: &Word, b: &Word) -> Comparison {
        if a.len() != b.len() {
            return if a.len() > b.len() {
                Comparison::Greater
            } else {
                Comparison::Less
            };
        }
        match a.letters().iter().zip(b.letters()).find(|(x, y)| x != y) {
            None => Comparison::Equal,
            Some((&x, &y)) if self.below[x][y] => Comparison::Greater,
            Some((&x, &y)) if self.below[y][x] => Comparison::Less,
            Some(_) => Comparison::Incomparable,
        }
    }
}

pub fn compare_words(order: &dyn TerminationOrder, a: &Word, b: &Word) -> Comparison {
    order.compare(a, b)
}

/// What a factory may use to build an order.
pub struct OrderContext<'a> {
    pub alphabet: &'a [String],
    /// Proper left divisibility between generators, when known.
    pub divides: Option<&'a [Vec<bool>]>,
}

pub type OrderFactory = fn(Option<&str>, &OrderContext) -> Result<Box<dyn TerminationOrder>>;

/// Orders registered by name and selected from a `name[:argument]` string.
pub struct OrderRegistry {
    entries: Vec<(String, OrderFactory)>,
}

impl OrderRegistry {
    pub fn empty() -> Self {
        OrderRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("deglex", build_deglex);
        r.register("divlex", build_divlex);
        r
    }

    pub fn register(&mut self, name: &str, factory: OrderFactory) {
        self.entries.retain(|(n, _)| n != name);
        self.entries.push((name.to_string(), factory));
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn build(&self, spec: &str, cx: &OrderContext) -> Result<Box<dyn TerminationOrder>> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (spec.trim(), None),
        };
        let factory = self
            .entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| *f)
            .ok_or_else(|| Error::InvalidOrderSpec(format!("unknown order `{name}`")))?;
        factory(arg, cx)
    }
}

fn build_deglex(arg: Option<&str>, cx: &OrderContext) -> Result<Box<dyn TerminationOrder>> {
    let Some(arg) = arg.filter(|a| !a.is_empty()) else {
        return Ok(Box::new(Deglex::natural(cx.alphabet.len())));
    };
    let ascending = arg
        .split(|c: char| c == ',' || c == '<' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|name| {
            cx.alphabet
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::InvalidOrderSpec(format!("unknown generator `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if ascending.len() != cx.alphabet.len() {
        return Err(Error::InvalidOrderSpec(
            "deglex needs every generator exactly once".into(),
        ));
    }
    Ok(Box::new(Deglex::new(&ascending)?))
}

fn build_divlex(_arg: Option<&str>, cx: &OrderContext) -> Result<Box<dyn TerminationOrder>> {
    let rel = cx.divides.ok_or_else(|| {
        Error::InvalidOrderSpec("divlex needs a divisibility relation (a Garside datum)".into())
    })?;
    Ok(Box::new(Divlex::new(rel.to_vec())?))
}
