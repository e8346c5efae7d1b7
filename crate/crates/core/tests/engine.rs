mod common;

use std::collections::BTreeSet;

use common::{all_words, critical_pairs_oracle, naive_normal_form, triple_oracle};
use polygraph::branching::{critical_branchings, join_branching, triple_branchings, Shape};
use polygraph::catalog::{free_abelian_datum, free_abelian_presentation, klein_bottle, klein_bottle_completed};
use polygraph::completion::{homotopical_completion, knuth_bendix, squier, TraceEvent};
use polygraph::garside::{divlex, gar2, underline_gar2, GarsideDatum};
use polygraph::normalize::{normalize, Leftmost, Rightmost, StrategyRegistry};
use polygraph::order::{compare_words, Comparison, Deglex, Divlex, OrderContext, OrderRegistry, TerminationOrder};
use polygraph::{Error, Rule, TwoPolygraph, Word};
use proptest::prelude::*;

type Key = (Vec<usize>, BTreeSet<(String, usize)>);

fn poly(gens: &[&str], rules: &[(&str, &str, &str)]) -> TwoPolygraph {
    let alphabet: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let idx = |s: &str| Word(s.chars().map(|c| gens.iter().position(|g| g.starts_with(c)).unwrap()).collect());
    let rules = rules.iter().map(|(l, s, t)| Rule::new(l, idx(s), idx(t))).collect();
    TwoPolygraph::new(alphabet, rules).unwrap()
}

fn rule_set(p: &TwoPolygraph) -> BTreeSet<(String, String)> {
    p.rules()
        .iter()
        .map(|r| (p.render(&r.source), p.render(&r.target)))
        .collect()
}

fn free2() -> GarsideDatum {
    free_abelian_datum(2)
        .unwrap()
        .renamed(["1", "a", "b", "c"].map(String::from).to_vec())
        .unwrap()
}

fn branching_keys(p: &TwoPolygraph) -> BTreeSet<Key> {
    critical_branchings(p)
        .into_iter()
        .map(|b| {
            let steps = [&b.left, &b.right].map(|s| (s.rule.to_string(), s.position));
            (b.source.0, steps.into_iter().collect())
        })
        .collect()
}

fn triple_keys(p: &TwoPolygraph) -> BTreeSet<Key> {
    triple_branchings(p)
        .into_iter()
        .map(|t| (t.source.0, t.steps.iter().map(|s| (s.rule.to_string(), s.position)).collect()))
        .collect()
}

#[test]
fn deglex_compares_length_then_letters() {
    let o = Deglex::natural(2);
    let w = |v: &[usize]| Word(v.to_vec());
    assert_eq!(compare_words(&o, &w(&[1]), &w(&[0, 0])), Comparison::Less);
    assert_eq!(compare_words(&o, &w(&[0, 0]), &w(&[0, 1])), Comparison::Less);
    assert_eq!(compare_words(&o, &w(&[1, 0, 1]), &w(&[0])), Comparison::Greater);
    assert_eq!(compare_words(&o, &w(&[0, 1]), &w(&[0, 1])), Comparison::Equal);
    let rev = Deglex::new(&[1, 0]).unwrap();
    assert_eq!(compare_words(&rev, &w(&[0]), &w(&[1])), Comparison::Greater);
}

#[test]
fn deglex_rejects_repeated_generators() {
    assert!(matches!(Deglex::new(&[0, 0]), Err(Error::InvalidOrderSpec(_))));
}

#[test]
fn divlex_orients_every_rule_of_the_atilde2_presentation() {
    let d = polygraph::catalog::atilde2_datum();
    let o = divlex(&d).unwrap();
    let p = underline_gar2(&d).unwrap();
    for r in p.rules() {
        assert_eq!(o.compare(&r.source, &r.target), Comparison::Greater, "{}", r.label);
    }
}

#[test]
fn divlex_rejects_a_non_transitive_relation() {
    let below = vec![vec![false, true, false], vec![false, false, true], vec![false, false, false]];
    assert!(matches!(Divlex::new(below), Err(Error::InvalidOrderSpec(_))));
    assert!(matches!(Divlex::new(vec![vec![true]]), Err(Error::InvalidOrderSpec(_))));
}

#[test]
fn order_registry_builds_by_name() {
    let alphabet = vec!["a".to_string(), "b".to_string()];
    let cx = OrderContext { alphabet: &alphabet, divides: None };
    let reg = OrderRegistry::with_builtins();
    assert_eq!(reg.names(), vec!["deglex", "divlex"]);
    let o = reg.build("deglex:b<a", &cx).unwrap();
    assert_eq!(o.compare(&Word(vec![0]), &Word(vec![1])), Comparison::Greater);
    let o = reg.build("deglex", &cx).unwrap();
    assert_eq!(o.compare(&Word(vec![0]), &Word(vec![1])), Comparison::Less);
    assert!(matches!(reg.build("divlex", &cx), Err(Error::InvalidOrderSpec(_))));
    assert!(matches!(reg.build("deglex:a", &cx), Err(Error::InvalidOrderSpec(_))));
    assert!(matches!(reg.build("deglex:a<z", &cx), Err(Error::InvalidOrderSpec(_))));
    assert!(matches!(reg.build("shortlex", &cx), Err(Error::InvalidOrderSpec(_))));
    let rel = vec![vec![false, true], vec![false, false]];
    let cx = OrderContext { alphabet: &alphabet, divides: Some(&rel) };
    let o = reg.build("divlex", &cx).unwrap();
    assert_eq!(o.compare(&Word(vec![0]), &Word(vec![1])), Comparison::Greater);
}

#[test]
fn normalize_examples() {
    let p = klein_bottle_completed();
    let reg = StrategyRegistry::with_builtins();
    for name in ["leftmost", "rightmost"] {
        let s = reg.get(name).unwrap();
        let (nf, path) = normalize(&p, &p.parse_word("babab").unwrap(), s).unwrap();
        assert_eq!(p.render(&nf), "aab");
        assert_eq!(path.replay(&p).unwrap(), nf);
        let (nf, _) = normalize(&p, &p.parse_word("babaa").unwrap(), s).unwrap();
        assert_eq!(p.render(&nf), "aaa");
        let (nf, path) = normalize(&p, &Word::empty(), s).unwrap();
        assert!(nf.is_empty() && path.is_empty());
    }
    assert!(matches!(reg.get("outermost"), Err(Error::UnknownStrategy(_))));
}

#[test]
fn spec_branching_counts() {
    assert_eq!(critical_branchings(&klein_bottle_completed()).len(), 2);
    let n3 = free_abelian_presentation(3).unwrap();
    let bs = critical_branchings(&n3);
    assert_eq!(bs.len(), 1);
    assert_eq!(n3.render(&bs[0].source), "cba");
    assert_eq!(bs[0].shape, Shape::Overlap);
    assert!(critical_branchings(&poly(&["a", "b", "c"], &[("r", "ab", "c")])).is_empty());
}

#[test]
fn klein_branchings_are_overlaps_on_babab_and_babaa() {
    let p = klein_bottle_completed();
    let sources: BTreeSet<String> = critical_branchings(&p).iter().map(|b| p.render(&b.source)).collect();
    assert_eq!(sources, ["babaa", "babab"].map(String::from).into());
    assert!(critical_branchings(&p).iter().all(|b| b.shape == Shape::Overlap));
}

#[test]
fn shapes_of_inclusion_and_equal_source() {
    let p = poly(&["a", "b"], &[("r", "ab", "a"), ("s", "b", "a"), ("t", "ab", "b")]);
    let bs = critical_branchings(&p);
    let shapes: BTreeSet<Shape> = bs.iter().map(|b| b.shape).collect();
    assert!(shapes.contains(&Shape::Inclusion));
    assert!(shapes.contains(&Shape::EqualSource));
}

#[test]
fn joins_and_non_joins() {
    let n3 = free_abelian_presentation(3).unwrap();
    let b = &critical_branchings(&n3)[0];
    let (l, r) = join_branching(&n3, b).unwrap().expect("confluent");
    assert_eq!(l.len(), 3);
    assert_eq!(r.len(), 3);
    assert_eq!(n3.render(&l.replay(&n3).unwrap()), "abc");
    let p = poly(&["a", "b"], &[("x", "ab", "a"), ("y", "ab", "b")]);
    let b = &critical_branchings(&p)[0];
    assert_eq!(b.shape, Shape::EqualSource);
    assert!(join_branching(&p, b).unwrap().is_none());
}

#[test]
fn knuth_bendix_on_the_klein_bottle() {
    let (done, trace) = knuth_bendix(&klein_bottle(), &Deglex::natural(2), 10_000).unwrap();
    assert_eq!(rule_set(&done), [("bab", "a"), ("baa", "aab")].map(|(a, b)| (a.into(), b.into())).into());
    let added: Vec<&Rule> = trace
        .iter()
        .filter_map(|e| match e {
            TraceEvent::Added { rule, .. } => Some(rule),
            TraceEvent::Examined { .. } => None,
        })
        .collect();
    assert_eq!(added.len(), 1);
}

#[test]
fn knuth_bendix_keeps_a_convergent_system() {
    let n3 = free_abelian_presentation(3).unwrap();
    let (done, _) = knuth_bendix(&n3, &Deglex::natural(3), 10_000).unwrap();
    assert_eq!(rule_set(&done), rule_set(&n3));
}

#[test]
fn knuth_bendix_on_the_free_abelian_pair() {
    let d = free2();
    let (done, _) = knuth_bendix(&gar2(&d).unwrap(), &divlex(&d).unwrap(), 10_000).unwrap();
    let expected: BTreeSet<(String, String)> = [("ab", "c"), ("ba", "c"), ("ac", "ca"), ("bc", "cb")]
        .map(|(a, b)| (a.into(), b.into()))
        .into();
    assert_eq!(rule_set(&done), expected);
}

#[test]
fn knuth_bendix_refuses_unorientable_input() {
    let p = poly(&["a", "b"], &[("r", "a", "b")]);
    assert!(matches!(
        knuth_bendix(&p, &Deglex::natural(2), 100),
        Err(Error::OrientationFailure { .. })
    ));
}

#[test]
fn knuth_bendix_stops_at_the_budget() {
    // aba -> bab under deglex(a<b) is oriented backwards; use b<a
    let p = poly(&["a", "b"], &[("r", "aba", "bab")]);
    let o = Deglex::new(&[1, 0]).unwrap();
    assert!(matches!(knuth_bendix(&p, &o, 50), Err(Error::BudgetExceeded(50))));
}

#[test]
fn squier_on_the_free_abelian_pair() {
    let d = free2();
    let x = squier(&underline_gar2(&d).unwrap()).unwrap();
    let p = x.base();
    let sources: BTreeSet<String> = x.cells().iter().map(|c| p.render(&c.lhs.start)).collect();
    assert_eq!(sources, ["aba", "bab", "abc", "bac"].map(String::from).into());
}

#[test]
fn squier_fails_on_a_non_confluent_system() {
    let p = poly(&["a", "b"], &[("x", "ab", "a"), ("y", "ab", "b")]);
    assert!(matches!(squier(&p), Err(Error::NotLocallyConfluent(_))));
}

#[test]
fn homotopical_completion_counts() {
    let x = homotopical_completion(&klein_bottle(), &Deglex::natural(2), 10_000).unwrap();
    assert_eq!(x.counts(), (2, 2, 2));
    let x = homotopical_completion(&free_abelian_presentation(3).unwrap(), &Deglex::natural(3), 10_000).unwrap();
    assert_eq!(x.counts(), (3, 3, 1));
    let c = &x.cells()[0];
    assert_eq!(c.lhs.len() + c.rhs.len(), 6);
}

#[test]
fn triples_match_the_oracle() {
    let p = klein_bottle_completed();
    let oracle = triple_oracle(&p, 7);
    assert_eq!(triple_keys(&p), oracle);
    let sources: BTreeSet<Vec<usize>> = oracle.iter().map(|(w, _)| w.clone()).collect();
    assert_eq!(sources.len(), 2);
    assert!(sources.contains(&p.parse_word("bababab").unwrap().0));
    assert!(sources.contains(&p.parse_word("bababaa").unwrap().0));
    // frozen from the oracle: three descending commutations never chain
    let n3 = free_abelian_presentation(3).unwrap();
    assert_eq!(triple_oracle(&n3, 6).len(), 0);
    assert!(triple_keys(&n3).is_empty());
}

#[test]
fn normal_forms_do_not_depend_on_the_strategy() {
    for p in [klein_bottle_completed(), free_abelian_presentation(3).unwrap()] {
        for w in all_words(p.alphabet().len(), 5) {
            let w = Word(w);
            let (a, _) = normalize(&p, &w, &Leftmost).unwrap();
            let (b, _) = normalize(&p, &w, &Rightmost).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.0, naive_normal_form(&p, &w.0));
        }
    }
}

/// Small rule systems over two letters with shrinking targets.
fn small_system() -> impl Strategy<Value = TwoPolygraph> {
    prop::collection::vec(
        (prop::collection::vec(0..2usize, 1..4), prop::collection::vec(0..2usize, 0..2)),
        1..4,
    )
    .prop_map(|rules| {
        let rules = rules
            .into_iter()
            .filter(|(s, t)| s != t)
            .enumerate()
            .map(|(i, (s, t))| Rule::new(&format!("r{i}"), Word(s), Word(t)))
            .collect();
        TwoPolygraph::new(vec!["a".into(), "b".into()], rules).unwrap()
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0..3usize, 0..6).prop_map(Word)
}

proptest! {
    #[test]
    fn branchings_match_the_oracle(p in small_system()) {
        prop_assert_eq!(branching_keys(&p), critical_pairs_oracle(&p, 5));
    }

    #[test]
    fn triples_match_the_oracle_on_small_systems(p in small_system()) {
        prop_assert_eq!(triple_keys(&p), triple_oracle(&p, 7));
    }

    #[test]
    fn orders_are_compatible_with_context(u in word(), v in word(), x in word(), y in word()) {
        let d = free_abelian_datum(2).unwrap();
        let orders: Vec<Box<dyn TerminationOrder>> =
            vec![Box::new(Deglex::natural(3)), Box::new(Deglex::new(&[2, 0, 1]).unwrap()), Box::new(divlex(&d).unwrap())];
        for o in &orders {
            if o.greater(&u, &v) {
                let xu = x.concat(&u).concat(&y);
                let xv = x.concat(&v).concat(&y);
                prop_assert!(o.greater(&xu, &xv));
            }
        }
    }

    #[test]
    fn normalization_reaches_an_irreducible_word(w in word()) {
        let p = underline_gar2(&free2()).unwrap();
        let (nf, path) = normalize(&p, &w, &Leftmost).unwrap();
        prop_assert_eq!(path.replay(&p).unwrap(), nf.clone());
        prop_assert_eq!(nf.0, naive_normal_form(&p, &w.0));
    }
}
