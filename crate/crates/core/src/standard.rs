//! Standard presentation of a finite monoid and its coherent extension.

use crate::error::{Error, Result};
use crate::polygraph::{label, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::word::Word;

/// A total multiplication table of a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub names: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| format!("z{i}")).collect();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        MonoidTable { names, mul }
    }

    pub fn unit(&self) -> Result<usize> {
        let n = self.names.len();
        (0..n)
            .find(|&e| (0..n).all(|x| self.mul[e][x] == x && self.mul[x][e] == x))
            .ok_or(Error::NoUnit)
    }

    fn check(&self) -> Result<usize> {
        let n = self.names.len();
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Validation("table is not square over its elements".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return Err(Error::TableNotAssociative(format!(
                            "({}{}){} != {}({}{})",
                            self.names[a], self.names[b], self.names[c], self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        self.unit()
    }
}

fn gamma(t: &MonoidTable, u: usize, v: usize) -> String {
    format!("gamma:{},{}", t.names[u], t.names[v])
}

/// Generators for every element, rules `u|v -> uv` and the unit rule `iota`.
pub fn std2(t: &MonoidTable) -> Result<TwoPolygraph> {
    let unit = t.check()?;
    let n = t.names.len();
    let mut rules = Vec::with_capacity(n * n + 1);
    for u in 0..n {
        for v in 0..n {
            rules.push(Rule::new(&gamma(t, u, v), Word(vec![u, v]), Word(vec![t.mul[u][v]])));
        }
    }
    rules.push(Rule::new("iota", Word::empty(), Word(vec![unit])));
    TwoPolygraph::new(t.names.clone(), rules)
}

/// The standard coherent presentation: cells `A:u,v,w`, `L:u` and `R:u`.
pub fn std3(t: &MonoidTable) -> Result<ThreeOnePolygraph> {
    let base = std2(t)?;
    let unit = t.unit()?;
    let n = t.names.len();
    let g = |u, v| label(&gamma(t, u, v));
    let iota = label("iota");
    let mut cells = Vec::with_capacity(n * n * n + 2 * n);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let uv = t.mul[u][v];
                let vw = t.mul[v][w];
                let start = Word(vec![u, v, w]);
                let lhs = RewritePath::new(
                    start.clone(),
                    vec![RewriteStep::forward(&g(u, v), 0), RewriteStep::forward(&g(uv, w), 0)],
                );
                let rhs = RewritePath::new(
                    start,
                    vec![RewriteStep::forward(&g(v, w), 1), RewriteStep::forward(&g(u, vw), 0)],
                );
                let name = format!("A:{},{},{}", t.names[u], t.names[v], t.names[w]);
                cells.push(ThreeCell::new(&name, lhs, rhs, None));
            }
        }
    }
    for u in 0..n {
        let start = Word(vec![u]);
        let left = RewritePath::new(
            start.clone(),
            vec![RewriteStep::forward(&iota, 0), RewriteStep::forward(&g(unit, u), 0)],
        );
        let right = RewritePath::new(
            start.clone(),
            vec![RewriteStep::forward(&iota, 1), RewriteStep::forward(&g(u, unit), 0)],
        );
        cells.push(ThreeCell::new(&format!("L:{}", t.names[u]), left, RewritePath::identity(start.clone()), None));
        cells.push(ThreeCell::new(&format!("R:{}", t.names[u]), right, RewritePath::identity(start), None));
    }
    ThreeOnePolygraph::new(base, cells)
}
