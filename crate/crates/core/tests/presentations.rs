mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{a_count, all_words, beta_count, family_counts, table, Greedy};
use polygraph::branching::{critical_branchings, join_branching};
use polygraph::catalog::{atilde2_datum, braid_simple_datum, catalog_data, free_abelian_datum, CYCLIC};
use polygraph::completion::knuth_bendix;
use polygraph::garside::{
    classify_branchings, divlex, gar2, gar3, is_s_normal, s_normalize, s_normalize_with, underline_gar2,
    underline_gar3, FamilyRegistry, GarsideContext, GarsideDatum, SNormalizer,
};
use polygraph::normalize::{Leftmost, Rightmost};
use polygraph::order::{Comparison, TerminationOrder};
use polygraph::{TwoPolygraph, Word};

fn rule_set(p: &TwoPolygraph) -> BTreeSet<(Word, Word)> {
    p.rules().iter().map(|r| (r.source.clone(), r.target.clone())).collect()
}

fn names(p: &TwoPolygraph, w: &Word) -> Vec<String> {
    w.letters().iter().map(|&g| p.alphabet()[g].clone()).collect()
}

fn in_family_pairs(d: &GarsideDatum) -> usize {
    let t = table(d);
    (1..t.len())
        .flat_map(|u| (1..t.len()).map(move |v| (u, v)))
        .filter(|&(u, v)| t[u][v].is_some())
        .count()
}

fn s(xs: &[usize]) -> String {
    xs.iter().map(|x| format!("s{x}")).collect()
}

#[test]
fn gar2_and_gar3_counts_match_the_oracles() {
    for (name, d) in catalog_data() {
        let p = gar2(&d).unwrap();
        assert_eq!(p.alphabet().len(), d.len() - 1, "{name}");
        assert_eq!(p.rules().len(), in_family_pairs(&d), "{name}");
        assert_eq!(gar3(&d).unwrap().cells().len(), a_count(&d), "{name}");
        assert_eq!(underline_gar2(&d).unwrap().rules().len(), in_family_pairs(&d) + beta_count(&d), "{name}");
    }
}

#[test]
fn small_structural_counts() {
    let d = free_abelian_datum(3).unwrap();
    assert_eq!((gar2(&d).unwrap().rules().len(), gar3(&d).unwrap().cells().len()), (12, 6));
    assert_eq!((in_family_pairs(&d), a_count(&d)), (12, 6));
    let d = braid_simple_datum(3).unwrap();
    assert_eq!((gar2(&d).unwrap().rules().len(), gar3(&d).unwrap().cells().len()), (6, 2));
    assert_eq!((in_family_pairs(&d), a_count(&d)), (6, 2));
}

#[test]
fn free_abelian_pair_underline_rules() {
    let d = free_abelian_datum(2)
        .unwrap()
        .renamed(["1", "a", "b", "c"].map(String::from).to_vec())
        .unwrap();
    let p = underline_gar2(&d).unwrap();
    let got: BTreeSet<(String, String)> = p
        .rules()
        .iter()
        .map(|r| (p.render(&r.source), p.render(&r.target)))
        .collect();
    let want: BTreeSet<(String, String)> = [("ab", "c"), ("ba", "c"), ("ac", "ca"), ("bc", "cb")]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .into();
    assert_eq!(got, want);
}

#[test]
fn atilde2_rules_match_the_known_families() {
    let d = atilde2_datum();
    let p = gar2(&d).unwrap();
    assert_eq!(p.alphabet().len(), 15);
    assert_eq!(p.rules().len(), 27);
    let mut want = BTreeSet::new();
    for (i, j, k) in CYCLIC {
        let iji = s(&[i, j, i]);
        let kiji = s(&[k, i, j, i]);
        for (src, tgt) in [
            (vec![s(&[i]), s(&[j])], s(&[i, j])),
            (vec![s(&[j]), s(&[i])], s(&[j, i])),
            (vec![s(&[i]), s(&[j, i])], iji.clone()),
            (vec![s(&[j]), s(&[i, j])], iji.clone()),
            (vec![s(&[i, j]), s(&[i])], iji.clone()),
            (vec![s(&[j, i]), s(&[j])], iji.clone()),
            (vec![s(&[k]), iji.clone()], kiji.clone()),
            (vec![s(&[k, i]), s(&[j, i])], kiji.clone()),
            (vec![s(&[k, j]), s(&[i, j])], kiji.clone()),
        ] {
            want.insert((src, vec![tgt]));
        }
    }
    let got: BTreeSet<(Vec<String>, Vec<String>)> = p
        .rules()
        .iter()
        .map(|r| (names(&p, &r.source), names(&p, &r.target)))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn atilde2_cells_match_the_known_families() {
    let x = gar3(&atilde2_datum()).unwrap();
    let mut want = BTreeSet::new();
    for (i, j, k) in CYCLIC {
        want.insert(format!("A:{},{},{}", s(&[i]), s(&[j]), s(&[i])));
        want.insert(format!("A:{},{},{}", s(&[j]), s(&[i]), s(&[j])));
        want.insert(format!("A:{},{},{}", s(&[k]), s(&[i]), s(&[j, i])));
        want.insert(format!("A:{},{},{}", s(&[k]), s(&[j]), s(&[i, j])));
    }
    let got: BTreeSet<String> = x.cells().iter().map(|c| c.label.to_string()).collect();
    assert_eq!(got, want);
    assert_eq!(x.counts(), (15, 27, 12));
}

#[test]
fn completion_of_gar2_is_the_underline_presentation() {
    for (name, d) in catalog_data() {
        let (done, _) = knuth_bendix(&gar2(&d).unwrap(), &divlex(&d).unwrap(), 1_000_000).unwrap();
        let u = underline_gar2(&d).unwrap();
        assert_eq!(rule_set(&done), rule_set(&u), "{name}");
        for b in critical_branchings(&u) {
            assert!(join_branching(&u, &b).unwrap().is_some(), "{name}");
        }
    }
}

#[test]
fn alpha_shortens_and_beta_climbs() {
    for (name, d) in catalog_data() {
        let cx = GarsideContext::new(&d).unwrap();
        let o = divlex(&d).unwrap();
        for r in cx.ugar2.rules() {
            if r.label.starts_with("alpha:") {
                assert_eq!(r.source.len(), r.target.len() + 1, "{name} {}", r.label);
            } else {
                assert!(r.label.starts_with("beta:"));
                assert_eq!(r.source.len(), r.target.len(), "{name} {}", r.label);
                // the first letter grows: u|vw -> uv|w
                let (a, b) = (r.source.letters()[0] + 1, r.target.letters()[0] + 1);
                assert!(d.properly_divides(a, b), "{name} {}", r.label);
                assert_eq!(o.compare(&r.source, &r.target), Comparison::Greater);
            }
        }
    }
}

#[test]
fn family_counts_match_the_membership_oracle() {
    let tags: BTreeSet<&str> = FamilyRegistry::with_builtins().tags().into_iter().collect();
    assert_eq!(tags.len(), 12);
    for (name, d) in catalog_data() {
        let cx = GarsideContext::new(&d).unwrap();
        let classified = classify_branchings(&cx).unwrap();
        assert_eq!(classified.len(), critical_branchings(&cx.ugar2).len(), "{name}");
        let mut counts: BTreeMap<&str, usize> = tags.iter().map(|t| (*t, 0)).collect();
        for (_, fc) in &classified {
            *counts.get_mut(fc.family).unwrap() += 1;
        }
        assert_eq!(counts, family_counts(&d), "{name}");
    }
}

#[test]
fn family_cells_are_one_per_branching() {
    for (name, d) in catalog_data() {
        let x = underline_gar3(&d).unwrap();
        let labels: BTreeSet<String> = x.cells().iter().map(|c| c.label.to_string()).collect();
        assert_eq!(labels.len(), critical_branchings(x.base()).len(), "{name}");
        for c in x.cells() {
            c.check_parallel(x.base()).unwrap();
        }
    }
}

#[test]
fn s_normalize_examples() {
    let d = atilde2_datum();
    let cx = GarsideContext::new(&d).unwrap();
    let i = |n: &str| d.index(n).unwrap() - 1;
    let nf = s_normalize(&cx, &Word(vec![i("s2"), i("s1s2")])).unwrap();
    assert_eq!(nf.word, Word(vec![i("s1s2s1")]));
    assert_eq!(nf.s_length(), 1);
    assert!(nf.certified);
    let nf = s_normalize(&cx, &Word::empty()).unwrap();
    assert_eq!(nf.s_length(), 0);
    let d = braid_simple_datum(3).unwrap();
    let cx = GarsideContext::new(&d).unwrap();
    let i = |n: &str| d.index(n).unwrap() - 1;
    let nf = s_normalize(&cx, &Word(vec![i("s1"), i("s1")])).unwrap();
    assert_eq!(nf.word, Word(vec![i("s1"), i("s1")]));
    assert_eq!(nf.s_length(), 2);
    assert!(!is_s_normal(&cx, &Word(vec![i("s1"), i("s2")])).unwrap());
}

#[test]
fn normal_forms_agree_with_greedy_absorption() {
    for (name, d) in catalog_data() {
        let cx = GarsideContext::new(&d).unwrap();
        let n = SNormalizer::new(&cx);
        let greedy = Greedy::new(&d);
        for w in all_words(d.len() - 1, 3) {
            let w = Word(w);
            let left = n.normalize_with(&w, &Leftmost).unwrap();
            let right = n.normalize_with(&w, &Rightmost).unwrap();
            assert_eq!(left, right, "{name}");
            assert!(is_s_normal(&cx, &left.word).unwrap());
            let elements: Vec<usize> = w.letters().iter().map(|g| g + 1).collect();
            assert_eq!(left.elements(), greedy.normal_form(&elements), "{name}");
            if let (Some(&first), Some(&head)) = (elements.first(), left.elements().first()) {
                assert!(greedy.divides(first, head), "{name}");
            }
        }
    }
}

#[test]
fn strategy_choice_goes_through_the_wrapper() {
    let d = free_abelian_datum(3).unwrap();
    let cx = GarsideContext::new(&d).unwrap();
    let w = Word(vec![0, 1, 2, 0]);
    assert_eq!(s_normalize_with(&cx, &w, &Rightmost).unwrap(), s_normalize(&cx, &w).unwrap());
}
