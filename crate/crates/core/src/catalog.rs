//! Built-in presentations and Garside data.

use crate::completion::squier;
use crate::error::{Error, Result};
use crate::garside::presentations::{alpha_label, gar3};
use crate::garside::GarsideDatum;
use crate::polygraph::{label, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::reduce::{CollapsiblePart, Witness};
use crate::sphere::{SphereMove, ThreeSphere};
use crate::word::Word;

pub const NAMES: [&str; 5] = [
    "klein_bottle",
    "free_abelian_presentation",
    "free_abelian_datum",
    "braid_simple_datum",
    "atilde2_datum",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogObject {
    Presentation(TwoPolygraph),
    Datum(GarsideDatum),
}

/// Looks up a catalog entry by name, with its size parameter when it has one.
pub fn lookup(name: &str, n: Option<usize>) -> Result<CatalogObject> {
    match name {
        "klein_bottle" => Ok(CatalogObject::Presentation(klein_bottle())),
        "free_abelian_presentation" => Ok(CatalogObject::Presentation(free_abelian_presentation(n.unwrap_or(3))?)),
        "free_abelian_datum" => Ok(CatalogObject::Datum(free_abelian_datum(n.unwrap_or(3))?)),
        "braid_simple_datum" => Ok(CatalogObject::Datum(braid_simple_datum(n.unwrap_or(3))?)),
        "atilde2_datum" => Ok(CatalogObject::Datum(atilde2_datum())),
        other => Err(Error::BadParameter(format!(
            "unknown catalog entry `{other}`; known: {}",
            NAMES.join(", ")
        ))),
    }
}

/// The data used for exhaustive checks.
pub fn catalog_data() -> Vec<(String, GarsideDatum)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("free_abelian_datum({n})"), free_abelian_datum(n).expect("in range")));
    }
    for n in 2..=4 {
        out.push((format!("braid_simple_datum({n})"), braid_simple_datum(n).expect("in range")));
    }
    out.push(("atilde2_datum".into(), atilde2_datum()));
    out
}

/// `bab -> a`.
pub fn klein_bottle() -> TwoPolygraph {
    let rules = vec![Rule::new("alpha", Word(vec![1, 0, 1]), Word(vec![0]))];
    TwoPolygraph::new(vec!["a".into(), "b".into()], rules).expect("valid")
}

/// `bab -> a` and `baa -> aab`.
pub fn klein_bottle_completed() -> TwoPolygraph {
    klein_bottle()
        .with_rules(vec![Rule::new("beta", Word(vec![1, 0, 0]), Word(vec![0, 0, 1]))])
        .expect("valid")
}

/// The Squier completion of the completed Klein bottle presentation, with
/// its two cells named `A` (on `babab`) and `B` (on `babaa`).
pub fn klein_bottle_coherent() -> ThreeOnePolygraph {
    let x = squier(&klein_bottle_completed()).expect("convergent");
    let p = x.base().clone();
    let cells = x
        .cells()
        .iter()
        .map(|c| {
            let name = match p.render(&c.lhs.start).as_str() {
                "babab" => "A",
                "babaa" => "B",
                other => panic!("unexpected cell source {other}"),
            };
            ThreeCell::new(name, c.lhs.clone(), c.rhs.clone(), None)
        })
        .collect();
    ThreeOnePolygraph::new(p, cells).expect("valid")
}

/// The sphere over `bababab` in which `B` occurs once and `A` twice.
pub fn klein_phi() -> ThreeSphere {
    let alpha = label("alpha");
    let ap = |cell: &str, index, offset| SphereMove::Apply {
        cell: label(cell),
        inverse: false,
        index,
        offset,
    };
    ThreeSphere {
        name: "Phi".into(),
        start: RewritePath::new(
            Word(vec![1, 0, 1, 0, 1, 0, 1]),
            vec![RewriteStep::forward(&alpha, 0), RewriteStep::forward(&alpha, 2)],
        ),
        lhs: vec![ap("A", 0, 0), ap("A", 0, 2)],
        rhs: vec![SphereMove::Exchange { index: 0 }, ap("B", 1, 0)],
        target: None,
    }
}

/// `A` collapses `beta` and `Phi` collapses `B`.
pub fn klein_collapsible_part() -> CollapsiblePart {
    let mut part = CollapsiblePart {
        gamma3: vec![(label("A"), label("beta"))],
        gamma4: vec![(label("B"), Witness::Sphere(klein_phi()))],
        ..CollapsiblePart::default()
    };
    part.ranks.rules.insert(label("beta"), 1);
    part.ranks.cells.insert(label("B"), 1);
    part
}

fn letter(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Commutation rules `x_j x_i -> x_i x_j` for `i < j`.
pub fn free_abelian_presentation(n: usize) -> Result<TwoPolygraph> {
    if !(1..=26).contains(&n) {
        return Err(Error::BadParameter(format!("free_abelian_presentation needs 1 <= n <= 26, got {n}")));
    }
    let mut rules = Vec::new();
    for j in 1..n {
        for i in 0..j {
            rules.push(Rule::new(
                &format!("comm:{},{}", letter(j), letter(i)),
                Word(vec![j, i]),
                Word(vec![i, j]),
            ));
        }
    }
    TwoPolygraph::new((0..n).map(letter).collect(), rules)
}

/// Subsets of `{1..n}` indexed by bitmask, multiplied by disjoint union.
pub fn free_abelian_datum(n: usize) -> Result<GarsideDatum> {
    if !(1..=5).contains(&n) {
        return Err(Error::BadParameter(format!("free_abelian_datum needs 1 <= n <= 5, got {n}")));
    }
    let names = (0..1usize << n)
        .map(|m| {
            if m == 0 {
                "1".to_string()
            } else {
                let digits: String = (0..n).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
                format!("e{digits}")
            }
        })
        .collect();
    GarsideDatum::new(names, |a, b| (a & b == 0).then_some(a | b))
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// Lexicographically least reduced word, as `s1s2...`.
fn reduced_name(p: &[usize]) -> String {
    let mut w = p.to_vec();
    let mut name = String::new();
    loop {
        let pos = |v: usize, w: &[usize]| w.iter().position(|&x| x == v).expect("permutation");
        let Some(i) = (1..w.len()).find(|&i| pos(i, &w) < pos(i - 1, &w)) else {
            break;
        };
        name.push_str(&format!("s{i}"));
        for x in w.iter_mut() {
            if *x == i {
                *x = i - 1;
            } else if *x == i - 1 {
                *x = i;
            }
        }
    }
    if name.is_empty() {
        "1".into()
    } else {
        name
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for slot in 0..=k {
                let mut q = p.clone();
                q.insert(slot, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Simple braids as permutations; the product is kept when lengths add.
pub fn braid_simple_datum(n: usize) -> Result<GarsideDatum> {
    if !(2..=5).contains(&n) {
        return Err(Error::BadParameter(format!("braid_simple_datum needs 2 <= n <= 5, got {n}")));
    }
    let mut perms: Vec<(usize, String, Vec<usize>)> = permutations(n)
        .into_iter()
        .map(|p| (inversions(&p), reduced_name(&p), p))
        .collect();
    perms.sort();
    let names = perms.iter().map(|(_, name, _)| name.clone()).collect();
    let product = |u: usize, v: usize| {
        let (lu, _, pu) = &perms[u];
        let (lv, _, pv) = &perms[v];
        let uv: Vec<usize> = (0..n).map(|k| pu[pv[k]]).collect();
        if inversions(&uv) != lu + lv {
            return None;
        }
        perms.iter().position(|(_, _, p)| *p == uv)
    };
    GarsideDatum::new(names, product)
}

pub const ATILDE2_ELEMENTS: [&str; 16] = [
    "1", "s1", "s2", "s3", "s1s2", "s2s1", "s2s3", "s3s2", "s3s1", "s1s3", "s1s2s1", "s2s3s2", "s3s1s3",
    "s3s1s2s1", "s1s2s3s2", "s2s3s1s3",
];

/// `(i, j, k)` with `j = i + 1` and `k = j + 1` modulo 3.
pub const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// The 27 products of the sixteen-element family, as `(u, v, uv)` names.
pub fn atilde2_products() -> Vec<(String, String, String)> {
    let s = |xs: &[usize]| xs.iter().map(|x| format!("s{x}")).collect::<String>();
    let mut out = Vec::new();
    for (i, j, k) in CYCLIC {
        let iji = s(&[i, j, i]);
        let kiji = s(&[k, i, j, i]);
        let entries = [
            (s(&[i]), s(&[j]), s(&[i, j])),
            (s(&[j]), s(&[i]), s(&[j, i])),
            (s(&[i]), s(&[j, i]), iji.clone()),
            (s(&[j]), s(&[i, j]), iji.clone()),
            (s(&[i, j]), s(&[i]), iji.clone()),
            (s(&[j, i]), s(&[j]), iji.clone()),
            (s(&[k]), iji, kiji.clone()),
            (s(&[k, i]), s(&[j, i]), kiji.clone()),
            (s(&[k, j]), s(&[i, j]), kiji),
        ];
        out.extend(entries);
    }
    out
}

/// The sixteen right divisors of the three length-four elements.
pub fn atilde2_datum() -> GarsideDatum {
    let names: Vec<String> = ATILDE2_ELEMENTS.iter().map(|s| s.to_string()).collect();
    let idx = |n: &str| ATILDE2_ELEMENTS.iter().position(|e| *e == n).expect("listed element");
    let table: Vec<(usize, usize, usize)> = atilde2_products()
        .iter()
        .map(|(u, v, w)| (idx(u), idx(v), idx(w)))
        .collect();
    GarsideDatum::new(names, |u, v| {
        table.iter().find(|(a, b, _)| *a == u && *b == v).map(|(_, _, w)| *w)
    })
    .expect("valid")
}

/// Collapsible part of `gar3(atilde2_datum())` leaving the three braid
/// relations: twelve rules collapse generators of length two to four and
/// each `A` cell collapses the rule with a composite left letter.
pub fn atilde2_artin_part() -> CollapsiblePart {
    let d = atilde2_datum();
    let idx = |n: String| d.index(&n).expect("listed element");
    let s = |xs: &[usize]| idx(xs.iter().map(|x| format!("s{x}")).collect());
    let mut part = CollapsiblePart::default();
    for name in d.names().iter().skip(1) {
        part.ranks.generators.insert(name.clone(), name.len() / 2);
    }
    let mut gamma2 = Vec::new();
    let mut gamma3 = Vec::new();
    for (i, j, k) in CYCLIC {
        gamma2.push(alpha_label(&d, s(&[i]), s(&[j])));
        gamma2.push(alpha_label(&d, s(&[j]), s(&[i])));
        gamma2.push(alpha_label(&d, s(&[i]), s(&[j, i])));
        gamma2.push(alpha_label(&d, s(&[k]), s(&[i, j, i])));
        let cell = |u: &[usize], v: &[usize], w: &[usize]| {
            label(&format!("A:{},{},{}", d.name(s(u)), d.name(s(v)), d.name(s(w))))
        };
        gamma3.push((cell(&[i], &[j], &[i]), alpha_label(&d, s(&[i, j]), s(&[i]))));
        gamma3.push((cell(&[j], &[i], &[j]), alpha_label(&d, s(&[j, i]), s(&[j]))));
        gamma3.push((cell(&[k], &[i], &[j, i]), alpha_label(&d, s(&[k, i]), s(&[j, i]))));
        gamma3.push((cell(&[k], &[j], &[i, j]), alpha_label(&d, s(&[k, j]), s(&[i, j]))));
    }
    for r in &gamma2 {
        part.ranks.rules.insert(r.clone(), 1);
    }
    for (_, r) in &gamma3 {
        part.ranks.rules.insert(r.clone(), 2);
    }
    part.gamma2 = gamma2;
    part.gamma3 = gamma3;
    part
}

/// `gar3(atilde2_datum())`.
pub fn atilde2_gar3() -> ThreeOnePolygraph {
    gar3(&atilde2_datum()).expect("valid datum")
}
