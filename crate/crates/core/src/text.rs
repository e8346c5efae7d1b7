//! Line-oriented text form of polygraphs and Garside data.
//!
//! ```text
//! gens: a b
//! rule alpha: b a b -> a
//! cell A: b a b a b [alpha@0] == b a b a b [alpha@2; beta@0]
//! ```
//!
//! A datum lists its elements, unit first, then one product per ordered
//! pair of nonunit elements, `_` marking a product outside the family:
//!
//! ```text
//! elems: 1 a b c
//! a * b = c
//! a * a = _
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::garside::GarsideDatum;
use crate::polygraph::{Orientation, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph, TwoPolygraph};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Polygraph(ThreeOnePolygraph),
    Datum(GarsideDatum),
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Lines without comments, numbered from 1, blank ones dropped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim_end();
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

fn column(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset.min(line.len())].chars().count() + 1
}

/// Splits `label: rest` at the first colon followed by a blank or the end.
fn split_label(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    (0..bytes.len())
        .find(|&i| bytes[i] == b':' && bytes.get(i + 1).is_none_or(|c| c.is_ascii_whitespace()))
        .map(|i| (s[..i].trim(), &s[i + 1..]))
}

/// Reads a document, telling data from polygraphs by an `elems:` header.
pub fn parse_document(text: &str) -> Result<Document> {
    match lines(text).next() {
        Some((_, l)) if l.trim_start().starts_with("elems:") => parse_datum(text).map(Document::Datum),
        _ => parse_polygraph(text).map(Document::Polygraph),
    }
}

fn parse_word(p: &TwoPolygraph, line: &str, part: &str, n: usize) -> Result<Word> {
    let mut letters = Vec::new();
    for tok in part.split_whitespace() {
        if tok == "1" && p.generator("1").is_none() {
            continue;
        }
        match p.generator(tok) {
            Some(g) => letters.push(g),
            None => return Err(Error::UnknownGenerator(format!("{tok} (line {n}, column {})", column(line, tok)))),
        }
    }
    Ok(Word(letters))
}

fn parse_path(p: &TwoPolygraph, line: &str, part: &str, n: usize) -> Result<RewritePath> {
    let open = part.find('[').ok_or_else(|| err(n, column(line, part), "expected `[` after the start word"))?;
    let close = part.rfind(']').ok_or_else(|| err(n, column(line, part), "expected `]`"))?;
    if close < open || !part[close + 1..].trim().is_empty() {
        return Err(err(n, column(line, &part[close..]), "unexpected text after `]`"));
    }
    let start = parse_word(p, line, &part[..open], n)?;
    let mut steps = Vec::new();
    for tok in part[open + 1..close].split(';') {
        let t = tok.trim();
        if t.is_empty() {
            continue;
        }
        let (t, orientation) = match t.strip_suffix('~') {
            Some(t) => (t, Orientation::Backward),
            None => (t, Orientation::Forward),
        };
        let (rule, pos) = t
            .rsplit_once('@')
            .ok_or_else(|| err(n, column(line, tok.trim_start()), "expected `label@position`"))?;
        let position = pos
            .trim()
            .parse()
            .map_err(|_| err(n, column(line, tok.trim_start()), format!("bad position `{pos}`")))?;
        let rule = p.rule(rule.trim()).ok_or_else(|| Error::UnknownRule(rule.trim().to_string()))?;
        steps.push(RewriteStep {
            rule: rule.label.clone(),
            position,
            orientation,
        });
    }
    let path = RewritePath::new(start, steps);
    path.replay(p)?;
    Ok(path)
}

type RuleLine<'a> = (usize, &'a str, String, &'a str, &'a str);

fn build_base(names: Vec<String>, rules: Vec<RuleLine>) -> Result<TwoPolygraph> {
    let probe = TwoPolygraph::new(names.clone(), Vec::new())?;
    let mut built = Vec::new();
    for (n, line, name, src, tgt) in rules {
        built.push(Rule::new(&name, parse_word(&probe, line, src, n)?, parse_word(&probe, line, tgt, n)?));
    }
    TwoPolygraph::new(names, built)
}

/// Reads `gens:`, `rule` and `cell` lines.
pub fn parse_polygraph(text: &str) -> Result<ThreeOnePolygraph> {
    let mut gens: Option<Vec<String>> = None;
    let mut rules = Vec::new();
    let mut cell_lines = Vec::new();
    let mut base: Option<TwoPolygraph> = None;
    for (n, line) in lines(text) {
        let t = line.trim_start();
        if let Some(rest) = t.strip_prefix("gens:") {
            if gens.is_some() {
                return Err(err(n, 1, "second `gens:` line"));
            }
            gens = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = t.strip_prefix("rule ") {
            if gens.is_none() {
                return Err(err(n, 1, "`rule` before `gens:`"));
            }
            if base.is_some() {
                return Err(err(n, 1, "`rule` after a `cell` line"));
            }
            let (name, body) = split_label(rest).ok_or_else(|| err(n, column(line, rest), "expected `label:`"))?;
            if name.is_empty() {
                return Err(err(n, column(line, rest), "empty rule label"));
            }
            let (src, tgt) = body
                .split_once("->")
                .ok_or_else(|| err(n, column(line, body), "expected `->`"))?;
            rules.push((n, line, name.to_string(), src, tgt));
        } else if let Some(rest) = t.strip_prefix("cell") {
            let (family, rest) = match rest.strip_prefix('[') {
                Some(r) => {
                    let (tag, r) = r.split_once(']').ok_or_else(|| err(n, column(line, rest), "expected `]`"))?;
                    (Some(tag.trim().to_string()), r)
                }
                None => (None, rest),
            };
            if !rest.starts_with(char::is_whitespace) {
                return Err(err(n, 1, format!("unknown directive `{}`", t.split_whitespace().next().unwrap_or(""))));
            }
            if base.is_none() {
                let names = gens.clone().ok_or_else(|| err(n, 1, "`cell` before `gens:`"))?;
                base = Some(build_base(names, std::mem::take(&mut rules))?);
            }
            cell_lines.push((n, line, family, rest));
        } else {
            let word = t.split_whitespace().next().unwrap_or("");
            return Err(err(n, 1, format!("unknown directive `{word}`")));
        }
    }
    let base = match base {
        Some(b) => b,
        None => {
            let names = gens.ok_or_else(|| err(1, 1, "missing `gens:` line"))?;
            build_base(names, rules)?
        }
    };
    let mut cells = Vec::new();
    for (n, line, family, rest) in cell_lines {
        let (name, body) = split_label(rest).ok_or_else(|| err(n, column(line, rest), "expected `label:`"))?;
        let (l, r) = body
            .split_once("==")
            .ok_or_else(|| err(n, column(line, body), "expected `==`"))?;
        let lhs = parse_path(&base, line, l.trim(), n)?;
        let rhs = parse_path(&base, line, r.trim(), n)?;
        cells.push(ThreeCell::new(name, lhs, rhs, family.as_deref()));
    }
    ThreeOnePolygraph::new(base, cells)
}

fn word_text(p: &TwoPolygraph, w: &Word) -> String {
    let names: Vec<&str> = w.letters().iter().map(|&g| p.alphabet()[g].as_str()).collect();
    names.join(" ")
}

fn path_text(p: &TwoPolygraph, path: &RewritePath) -> String {
    let steps: Vec<String> = path.steps.iter().map(|s| format!("{s:?}")).collect();
    let start = word_text(p, &path.start);
    if start.is_empty() {
        format!("[{}]", steps.join("; "))
    } else {
        format!("{start} [{}]", steps.join("; "))
    }
}

pub fn serialize_two(p: &TwoPolygraph) -> String {
    let mut out = format!("gens: {}\n", p.alphabet().join(" "));
    for r in p.rules() {
        let tgt = word_text(p, &r.target);
        let src = word_text(p, &r.source);
        let arrow = match (src.is_empty(), tgt.is_empty()) {
            (true, true) => "->".to_string(),
            (true, false) => format!("-> {tgt}"),
            (false, true) => format!("{src} ->"),
            (false, false) => format!("{src} -> {tgt}"),
        };
        writeln!(out, "rule {}: {arrow}", r.label).expect("string");
    }
    out
}

pub fn serialize_polygraph(x: &ThreeOnePolygraph) -> String {
    let p = x.base();
    let mut out = serialize_two(p);
    for c in x.cells() {
        let tag = c.family.as_ref().map(|f| format!("[{f}]")).unwrap_or_default();
        writeln!(
            out,
            "cell{tag} {}: {} == {}",
            c.label,
            path_text(p, &c.lhs),
            path_text(p, &c.rhs)
        )
        .expect("string");
    }
    out
}

/// Reads an `elems:` line and the full product table.
pub fn parse_datum(text: &str) -> Result<GarsideDatum> {
    let mut it = lines(text);
    let (n0, head) = it.next().ok_or_else(|| err(1, 1, "empty document"))?;
    let rest = head
        .trim_start()
        .strip_prefix("elems:")
        .ok_or_else(|| err(n0, 1, "expected `elems:`"))?;
    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if names.first().map(String::as_str) != Some("1") {
        return Err(err(n0, column(head, rest), "the element list must start with `1`"));
    }
    let n = names.len();
    let mut table: Vec<Vec<Option<Option<usize>>>> = vec![vec![None; n]; n];
    let find = |line: &str, tok: &str, ln: usize| -> Result<usize> {
        names
            .iter()
            .position(|x| x == tok)
            .ok_or_else(|| err(ln, column(line, tok), format!("unknown element `{tok}`")))
    };
    let mut last = n0;
    for (ln, line) in it {
        last = ln;
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(ln, 1, "expected `u * v = w`"))?;
        let (u, v) = lhs.split_once('*').ok_or_else(|| err(ln, 1, "expected `u * v`"))?;
        let (u, v, w) = (u.trim(), v.trim(), rhs.trim());
        let (ui, vi) = (find(line, u, ln)?, find(line, v, ln)?);
        if ui == 0 || vi == 0 {
            return Err(err(ln, 1, "products with the unit are implicit"));
        }
        let wi = if w == "_" { None } else { Some(find(line, w, ln)?) };
        if table[ui][vi].is_some() {
            return Err(err(ln, 1, format!("second product for {u} * {v}")));
        }
        table[ui][vi] = Some(wi);
    }
    for u in 1..n {
        for v in 1..n {
            if table[u][v].is_none() {
                return Err(err(last + 1, 1, format!("missing product {} * {}", names[u], names[v])));
            }
        }
    }
    GarsideDatum::new(names, |u, v| table[u][v].flatten())
}

pub fn serialize_datum(d: &GarsideDatum) -> String {
    let mut out = format!("elems: {}\n", d.names().join(" "));
    for u in d.nonunit() {
        for v in d.nonunit() {
            let w = d.mul(u, v).map(|w| d.name(w)).unwrap_or("_");
            writeln!(out, "{} * {} = {w}", d.name(u), d.name(v)).expect("string");
        }
    }
    out
}
