//! Brute-force oracles shared by the integration tests. They only read the
//! raw product table or the raw rule list and never call the code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use polygraph::garside::GarsideDatum;
use polygraph::{TwoPolygraph, Word};

pub fn table(d: &GarsideDatum) -> Vec<Vec<Option<usize>>> {
    d.table().to_vec()
}

fn m(t: &[Vec<Option<usize>>], u: usize, v: usize) -> Option<usize> {
    t[u][v]
}

fn m3(t: &[Vec<Option<usize>>], u: usize, v: usize, w: usize) -> Option<usize> {
    m(t, u, v).and_then(|uv| m(t, uv, w))
}

/// `f x = g` for some `x`, the unit allowed.
pub fn left_divides(t: &[Vec<Option<usize>>], f: usize, g: usize) -> bool {
    (0..t.len()).any(|x| m(t, f, x) == Some(g))
}

/// Number of parameter tuples meeting each family's membership conditions.
pub fn family_counts(d: &GarsideDatum) -> BTreeMap<&'static str, usize> {
    let t = table(d);
    let n = t.len();
    let s: Vec<usize> = (1..n).collect();
    let ins = |x: Option<usize>| x.is_some();
    let mut c: BTreeMap<&'static str, usize> = BTreeMap::new();
    for tag in ["A", "B", "C", "D", "E", "E'", "F", "F'", "G", "G'", "H", "I"] {
        c.insert(tag, 0);
    }
    for &u in &s {
        for &v in &s {
            let Some(uv) = m(&t, u, v) else { continue };
            for &w in &s {
                let Some(vw) = m(&t, v, w) else { continue };
                let uvw = m(&t, uv, w);
                *c.get_mut(if ins(uvw) { "A" } else { "B" }).unwrap() += 1;
                for &x in &s {
                    if m(&t, w, x).is_none() {
                        continue;
                    }
                    let vwx = m(&t, vw, x);
                    // alpha on the left, beta(v,w,x) on the right
                    if !ins(vwx) {
                        *c.get_mut(if ins(uvw) { "C" } else { "D" }).unwrap() += 1;
                    }
                    // beta(u,v,w) on the left, alpha(vw,x) on the right
                    if !ins(uvw) {
                        if let Some(vwx) = vwx {
                            *c.get_mut(if ins(m(&t, u, vwx)) { "E'" } else { "E" }).unwrap() += 1;
                        }
                    }
                    // beta(u,v,w) and beta(vw,x,y)
                    if !ins(uvw) {
                        if let Some(vwx) = vwx {
                            for &y in &s {
                                let Some(xy) = m(&t, x, y) else { continue };
                                if ins(m(&t, vw, xy)) {
                                    continue;
                                }
                                let wxy = ins(m(&t, w, xy));
                                let uvwx = ins(m(&t, u, vwx));
                                let tag = match (wxy, uvwx) {
                                    (true, false) => "F",
                                    (true, true) => "F'",
                                    (false, false) => "G",
                                    (false, true) => "G'",
                                };
                                *c.get_mut(tag).unwrap() += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // equal sources: two decompositions v1 w1 = v2 w2 of one element r
    for &u in &s {
        for &r in &s {
            let decomps: Vec<(usize, usize)> = s
                .iter()
                .flat_map(|&v| s.iter().map(move |&w| (v, w)))
                .filter(|&(v, w)| m(&t, v, w) == Some(r) && ins(m(&t, u, v)) && !ins(m(&t, u, r)))
                .collect();
            for (i, &(v1, _)) in decomps.iter().enumerate() {
                for &(v2, _) in &decomps[i + 1..] {
                    let (a, b) = (left_divides(&t, v1, v2), left_divides(&t, v2, v1));
                    *c.get_mut(if a || b { "H" } else { "I" }).unwrap() += 1;
                }
            }
        }
    }
    c
}

/// Triples `(u, v, w)` with `uv`, `vw` in the family and `uvw` outside.
pub fn beta_count(d: &GarsideDatum) -> usize {
    let t = table(d);
    let n = t.len();
    let mut k = 0;
    for u in 1..n {
        for v in 1..n {
            for w in 1..n {
                if m(&t, u, v).is_some() && m(&t, v, w).is_some() && m3(&t, u, v, w).is_none() {
                    k += 1;
                }
            }
        }
    }
    k
}

/// Triples with `uv`, `vw` and `uvw` all in the family.
pub fn a_count(d: &GarsideDatum) -> usize {
    let t = table(d);
    let n = t.len();
    let mut k = 0;
    for u in 1..n {
        for v in 1..n {
            for w in 1..n {
                if m(&t, u, v).is_some() && m(&t, v, w).is_some() && m3(&t, u, v, w).is_some() {
                    k += 1;
                }
            }
        }
    }
    k
}

/// Normal form by greedy absorption: while some adjacent pair `u|v` admits
/// a nonunit left divisor `a` of `v` with `ua` in the family, replace it by
/// `ua|a'` with `a a' = v`, taking the largest such `a`.
pub struct Greedy {
    t: Vec<Vec<Option<usize>>>,
    /// For each pair, the product `ua` and the rest `a'`, when some `a` absorbs.
    step: Vec<Vec<Option<(usize, usize)>>>,
}

impl Greedy {
    pub fn new(d: &GarsideDatum) -> Self {
        let t = table(d);
        let n = t.len();
        let mut step = vec![vec![None; n]; n];
        for u in 1..n {
            for v in 1..n {
                let cands: Vec<usize> = (1..n)
                    .filter(|&a| left_divides(&t, a, v) && m(&t, u, a).is_some())
                    .collect();
                if cands.is_empty() {
                    continue;
                }
                let maxes: Vec<usize> = cands
                    .iter()
                    .copied()
                    .filter(|&a| cands.iter().all(|&b| left_divides(&t, b, a)))
                    .collect();
                assert_eq!(maxes.len(), 1, "no greatest absorbable divisor");
                let a = maxes[0];
                let rest = (0..n).find(|&x| m(&t, a, x) == Some(v)).expect("divisor");
                step[u][v] = Some((m(&t, u, a).unwrap(), rest));
            }
        }
        Greedy { t, step }
    }

    pub fn normal_form(&self, word: &[usize]) -> Vec<usize> {
        let mut w: Vec<usize> = word.iter().copied().filter(|&x| x != 0).collect();
        for _ in 0..10_000 {
            let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| self.step[w[i]][w[i + 1]].is_some()) else {
                return w;
            };
            let (ua, rest) = self.step[w[i]][w[i + 1]].unwrap();
            w[i] = ua;
            if rest == 0 {
                w.remove(i + 1);
            } else {
                w[i + 1] = rest;
            }
        }
        panic!("greedy absorption did not stabilize");
    }

    pub fn divides(&self, f: usize, g: usize) -> bool {
        left_divides(&self.t, f, g)
    }
}

pub fn greedy_normal_form(d: &GarsideDatum, word: &[usize]) -> Vec<usize> {
    Greedy::new(d).normal_form(word)
}

/// Every word over `k` letters of length at most `max`, shortest first.
pub fn all_words(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                let mut x: Vec<usize> = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn occurs(w: &[usize], pat: &[usize], at: usize) -> bool {
    at + pat.len() <= w.len() && w[at..at + pat.len()] == *pat
}

/// Redexes of `w` as `(rule index, position)`.
fn redexes(p: &TwoPolygraph, w: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, r) in p.rules().iter().enumerate() {
        if r.source.is_empty() {
            continue;
        }
        for at in 0..w.len() {
            if occurs(w, r.source.letters(), at) {
                out.push((i, at));
            }
        }
    }
    out
}

fn span(p: &TwoPolygraph, (i, at): (usize, usize)) -> (usize, usize) {
    (at, at + p.rules()[i].source.len())
}

fn overlap(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 < b.1 && b.0 < a.1
}

/// Critical branchings found by scanning every word up to `max_len`:
/// unordered pairs of distinct overlapping redexes covering the whole word,
/// one of them at offset 0. Returned as `(source, {(label, pos), (label, pos)})`.
pub fn critical_pairs_oracle(p: &TwoPolygraph, max_len: usize) -> BTreeSet<(Vec<usize>, BTreeSet<(String, usize)>)> {
    let mut out = BTreeSet::new();
    for w in all_words(p.alphabet().len(), max_len) {
        let rs = redexes(p, &w);
        for (i, &a) in rs.iter().enumerate() {
            for &b in &rs[i + 1..] {
                let (sa, sb) = (span(p, a), span(p, b));
                if !overlap(sa, sb) || sa.0.min(sb.0) != 0 || sa.1.max(sb.1) != w.len() {
                    continue;
                }
                let key: BTreeSet<(String, usize)> = [a, b]
                    .iter()
                    .map(|&(r, at)| (p.rules()[r].label.to_string(), at))
                    .collect();
                out.insert((w.clone(), key));
            }
        }
    }
    out
}

/// Triples of distinct redexes, each overlapping another, covering the word
/// and starting at offset 0.
pub fn triple_oracle(p: &TwoPolygraph, max_len: usize) -> BTreeSet<(Vec<usize>, BTreeSet<(String, usize)>)> {
    let mut out = BTreeSet::new();
    for w in all_words(p.alphabet().len(), max_len) {
        let rs = redexes(p, &w);
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                for k in j + 1..rs.len() {
                    let tri = [rs[i], rs[j], rs[k]];
                    let spans: Vec<(usize, usize)> = tri.iter().map(|&x| span(p, x)).collect();
                    let lonely = (0..3).any(|a| (0..3).all(|b| a == b || !overlap(spans[a], spans[b])));
                    let lo = spans.iter().map(|s| s.0).min().unwrap();
                    let hi = spans.iter().map(|s| s.1).max().unwrap();
                    if lonely || lo != 0 || hi != w.len() {
                        continue;
                    }
                    let key: BTreeSet<(String, usize)> = tri
                        .iter()
                        .map(|&(r, at)| (p.rules()[r].label.to_string(), at))
                        .collect();
                    out.insert((w.clone(), key));
                }
            }
        }
    }
    out
}

/// Leftmost-innermost normal form computed directly on letter vectors.
pub fn naive_normal_form(p: &TwoPolygraph, w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    'outer: for _ in 0..100_000 {
        for at in 0..w.len() {
            for r in p.rules() {
                if !r.source.is_empty() && occurs(&w, r.source.letters(), at) {
                    let mut next = w[..at].to_vec();
                    next.extend_from_slice(r.target.letters());
                    next.extend_from_slice(&w[at + r.source.len()..]);
                    w = next;
                    continue 'outer;
                }
            }
        }
        return w;
    }
    panic!("no normal form within the step bound");
}

pub fn word(letters: &[usize]) -> Word {
    Word(letters.to_vec())
}

/// Composition `(p q)(k) = p(q(k))` of permutations given as images.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&k| p[k]).collect()
}

pub fn inversion_count(p: &[usize]) -> usize {
    let mut k = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                k += 1;
            }
        }
    }
    k
}

/// The permutation named by a word `s1s2...` of adjacent transpositions.
pub fn permutation_of(name: &str, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    if name == "1" {
        return p;
    }
    for part in name.split('s').filter(|x| !x.is_empty()) {
        let i: usize = part.parse().unwrap();
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(i - 1, i);
        p = compose(&p, &t);
    }
    p
}
