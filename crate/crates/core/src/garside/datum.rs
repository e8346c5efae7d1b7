//! Finite Garside data: an element set with a partial product.

use crate::error::{Error, Result};

/// Element 0 is the unit `1`; `mul[u][v]` is `None` when the product
/// leaves the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarsideDatum {
    names: Vec<String>,
    mul: Vec<Vec<Option<usize>>>,
    head_table: Option<Vec<Vec<Option<usize>>>>,
    div: Vec<Vec<bool>>,
}

fn divisibility(mul: &[Vec<Option<usize>>]) -> Vec<Vec<bool>> {
    let n = mul.len();
    let mut div = vec![vec![false; n]; n];
    for f in 0..n {
        div[f][f] = true;
        div[0][f] = true;
        for x in 0..n {
            if let Some(g) = mul[f][x] {
                div[f][g] = true;
            }
        }
    }
    div
}

fn check_names(names: &[String]) -> Result<()> {
    if names.first().map(String::as_str) != Some("1") {
        return Err(Error::Validation("element 0 must be the unit `1`".into()));
    }
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n.chars().any(|c| c.is_whitespace() || ",*=#_|".contains(c)) {
            return Err(Error::Validation(format!("bad element name `{n}`")));
        }
        if names[..i].contains(n) {
            return Err(Error::DuplicateLabel(n.clone()));
        }
    }
    Ok(())
}

impl GarsideDatum {
    /// Builds the table from a product on nonunit elements.
    pub fn new(names: Vec<String>, product: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mut mul = vec![vec![None; n]; n];
        for (u, row) in mul.iter_mut().enumerate() {
            for (v, cell) in row.iter_mut().enumerate() {
                *cell = match (u, v) {
                    (0, _) => Some(v),
                    (_, 0) => Some(u),
                    _ => product(u, v),
                };
                if cell.is_some_and(|w| w >= n) {
                    return Err(Error::Validation(format!("product of {u} and {v} is out of range")));
                }
            }
        }
        let div = divisibility(&mul);
        Ok(GarsideDatum {
            names,
            mul,
            head_table: None,
            div,
        })
    }

    /// Takes a full table, unit row and column included, without repairing it.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<Option<usize>>>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().flatten().any(|&w| w >= n)) {
            return Err(Error::Validation("table does not match the element list".into()));
        }
        let div = divisibility(&mul);
        Ok(GarsideDatum {
            names,
            mul,
            head_table: None,
            div,
        })
    }

    /// Attaches heads for pairs whose product leaves the family.
    pub fn with_head_table(mut self, heads: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = self.len();
        if heads.len() != n || heads.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("head table does not match the element list".into()));
        }
        self.head_table = Some(heads);
        Ok(self)
    }

    /// The same table under new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::Validation("wrong number of names".into()));
        }
        check_names(&names)?;
        Ok(GarsideDatum {
            names,
            ..self.clone()
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Nonunit elements.
    pub fn nonunit(&self) -> std::ops::Range<usize> {
        1..self.names.len()
    }

    pub fn mul(&self, u: usize, v: usize) -> Option<usize> {
        self.mul[u][v]
    }

    pub fn in_family(&self, u: usize, v: usize) -> bool {
        self.mul[u][v].is_some()
    }

    pub fn head_hint(&self, u: usize, v: usize) -> Option<usize> {
        self.head_table.as_ref().and_then(|h| h[u][v])
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.mul
    }

    /// `f` left-divides `g` inside the table.
    pub fn divides(&self, f: usize, g: usize) -> bool {
        self.div[f][g]
    }

    pub fn properly_divides(&self, f: usize, g: usize) -> bool {
        f != g && self.divides(f, g)
    }

    /// The unique `x` with `f x = g`.
    pub fn complement(&self, f: usize, g: usize) -> Result<usize> {
        if f == g {
            return Ok(0);
        }
        (0..self.len())
            .find(|&x| self.mul[f][x] == Some(g))
            .ok_or_else(|| Error::NotADivisor {
                f: self.names[f].clone(),
                g: self.names[g].clone(),
            })
    }

    /// Minimal common right multiples of `f` and `g` within the family.
    pub fn right_mcms(&self, f: usize, g: usize) -> Vec<usize> {
        let common: Vec<usize> = self
            .nonunit()
            .filter(|&h| self.divides(f, h) && self.divides(g, h))
            .collect();
        common
            .iter()
            .copied()
            .filter(|&h| !common.iter().any(|&k| self.properly_divides(k, h)))
            .collect()
    }

    /// Proper left divisibility between generators, generator `i` being
    /// element `i + 1`.
    pub fn generator_divisibility(&self) -> Vec<Vec<bool>> {
        let n = self.len() - 1;
        (0..n)
            .map(|g| (0..n).map(|h| self.properly_divides(g + 1, h + 1)).collect())
            .collect()
    }
}

/// Outcome of one table check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumReport {
    pub checks: Vec<Check>,
}

impl DatumReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.violations.is_empty())
            .map(|c| c.name)
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for DatumReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            if c.violations.is_empty() {
                writeln!(f, "{}: ok", c.name)?;
            } else {
                writeln!(f, "{}: {} violation(s)", c.name, c.violations.len())?;
                for v in c.violations.iter().take(5) {
                    writeln!(f, "  {v}")?;
                }
            }
        }
        Ok(())
    }
}

pub const CHECKS: [&str; 6] = [
    "unit",
    "associativity",
    "left_cancellativity",
    "no_invertibles",
    "mcm_closure",
    "right_noetherian",
];

/// Runs every table check and lists the violations.
pub fn validate_datum(d: &GarsideDatum) -> DatumReport {
    let n = d.len();
    let nm = |u: usize| d.name(u).to_string();
    let mut unit = Vec::new();
    for x in 0..n {
        if d.mul(0, x) != Some(x) || d.mul(x, 0) != Some(x) {
            unit.push(format!("1 is not a unit for {}", nm(x)));
        }
    }
    let mut assoc = Vec::new();
    let mut cancel = Vec::new();
    let mut invertible = Vec::new();
    for u in d.nonunit() {
        for v in d.nonunit() {
            let Some(uv) = d.mul(u, v) else { continue };
            if uv == 0 {
                invertible.push(format!("{} * {} = 1", nm(u), nm(v)));
            }
            if uv == u {
                cancel.push(format!("{} * {} = {}", nm(u), nm(v), nm(u)));
            }
            for v2 in d.nonunit().filter(|&v2| v2 > v) {
                if d.mul(u, v2) == Some(uv) {
                    cancel.push(format!("{} * {} = {} * {}", nm(u), nm(v), nm(u), nm(v2)));
                }
            }
            for w in d.nonunit() {
                let Some(vw) = d.mul(v, w) else { continue };
                let left = d.mul(uv, w);
                let right = d.mul(u, vw);
                if left != right {
                    let show = |x: Option<usize>| x.map(nm).unwrap_or_else(|| "_".into());
                    assoc.push(format!(
                        "({} {}) {} = {} but {} ({} {}) = {}",
                        nm(u),
                        nm(v),
                        nm(w),
                        show(left),
                        nm(u),
                        nm(v),
                        nm(w),
                        show(right)
                    ));
                }
            }
        }
    }
    let mut mcm = Vec::new();
    for f in d.nonunit() {
        for g in d.nonunit() {
            let common: Vec<usize> = d
                .nonunit()
                .filter(|&h| d.divides(f, h) && d.divides(g, h))
                .collect();
            if common.is_empty() {
                continue;
            }
            let mins = d.right_mcms(f, g);
            if mins.is_empty() {
                mcm.push(format!("{} and {} have no minimal common multiple", nm(f), nm(g)));
            }
            for &h in &common {
                if !mins.iter().any(|&m| d.divides(m, h)) {
                    mcm.push(format!(
                        "common multiple {} of {} and {} is not a multiple of an mcm",
                        nm(h),
                        nm(f),
                        nm(g)
                    ));
                }
            }
        }
    }
    let mut noetherian = Vec::new();
    if let Some(cycle) = divisibility_cycle(d) {
        let names: Vec<String> = cycle.into_iter().map(nm).collect();
        noetherian.push(format!("proper divisibility cycle {}", names.join(" < ")));
    }
    let checks = [unit, assoc, cancel, invertible, mcm, noetherian]
        .into_iter()
        .zip(CHECKS)
        .map(|(violations, name)| Check { name, violations })
        .collect();
    DatumReport { checks }
}

/// A cycle of proper left divisibility, if any.
fn divisibility_cycle(d: &GarsideDatum) -> Option<Vec<usize>> {
    let n = d.len();
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    fn visit(d: &GarsideDatum, f: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[f] = 1;
        stack.push(f);
        for g in d.nonunit().filter(|&g| d.properly_divides(f, g)) {
            match state[g] {
                1 => {
                    let from = stack.iter().position(|&x| x == g).expect("on stack");
                    let mut cycle = stack[from..].to_vec();
                    cycle.push(g);
                    return Some(cycle);
                }
                0 => {
                    if let Some(c) = visit(d, g, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[f] = 2;
        None
    }
    for f in d.nonunit() {
        if state[f] == 0 {
            if let Some(c) = visit(d, f, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}
