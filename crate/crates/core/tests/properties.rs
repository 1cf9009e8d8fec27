mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use symlearn::algebra::{Algebra, Ext, Letter, Predicate, Valuation};
use symlearn::dfa_learn::infer_dfa;
use symlearn::ops::{self, InclusionMode, Verdict};
use symlearn::random;
use symlearn::sample::Sample;
use symlearn::sfa::Sfa;
use symlearn::sfa_learn::{decontaminate, infer_sfa};

const GRID: [i64; 6] = [0, 2, 5, 9, 14, 20];

fn ext() -> impl Strategy<Value = Ext> {
    prop_oneof![5 => prop::sample::select(GRID.to_vec()).prop_map(Ext::Fin), 1 => Just(Ext::PosInf)]
}

fn interval_pred() -> impl Strategy<Value = Predicate> {
    let leaf = prop_oneof![
        1 => Just(Predicate::True),
        1 => Just(Predicate::False),
        8 => (ext(), ext()).prop_map(|(a, b)| Predicate::Interval(a, b)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Predicate::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Predicate::or(a, b)),
            inner.prop_map(Predicate::not),
        ]
    })
}

fn prop_pred(k: u8) -> impl Strategy<Value = Predicate> {
    let leaf = prop_oneof![
        1 => Just(Predicate::True),
        1 => Just(Predicate::False),
        6 => (1..=k, any::<bool>()).prop_map(|(v, s)| if s { Predicate::lit(v) } else { Predicate::nlit(v) }),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Predicate::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Predicate::or(a, b)),
            inner.prop_map(Predicate::not),
        ]
    })
}

fn eval_prop(p: &Predicate, v: Valuation) -> bool {
    match p {
        Predicate::True => true,
        Predicate::False => false,
        Predicate::Lit(l) => v.get(l.var) == l.positive,
        Predicate::And(a, b) => eval_prop(a, v) && eval_prop(b, v),
        Predicate::Or(a, b) => eval_prop(a, v) || eval_prop(b, v),
        Predicate::Not(a) => !eval_prop(a, v),
        Predicate::Interval(..) => panic!("propositional predicates only"),
    }
}

fn same_language(a: &Sfa, b: &Sfa, letters: &[Ext], len: usize) -> Option<Vec<Ext>> {
    let mut bad = None;
    let init = (BTreeSet::from([a.initial()]), BTreeSet::from([b.initial()]));
    let step = |s: &(BTreeSet<usize>, BTreeSet<usize>), d: Ext| (oracle_step(a, &s.0, d), oracle_step(b, &s.1, d));
    walk_words(letters, len, init, &step, &mut |w, s| {
        let acc = |m: &Sfa, set: &BTreeSet<usize>| set.iter().any(|&q| m.is_accepting(q));
        if acc(a, &s.0) != acc(b, &s.1) {
            bad = Some(w.to_vec());
            return false;
        }
        true
    });
    bad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_intervals_match_semantics(p in interval_pred()) {
        let alg = Algebra::IntervalNat;
        let canon = alg.canonical_intervals(&p).unwrap();
        for x in boundary_letters(&GRID) {
            prop_assert_eq!(canon.contains(x), holds(&p, x), "at {:?}", x);
        }
        prop_assert!(canon.len() <= 2 * p.size());
        let spans = canon.spans();
        for pair in spans.windows(2) {
            prop_assert!(pair[0].hi < pair[1].lo, "spans not disjoint and separated: {:?}", spans);
        }
    }

    #[test]
    fn min_model_is_least_satisfying_letter(p in interval_pred()) {
        let alg = Algebra::IntervalNat;
        let least = boundary_letters(&GRID).into_iter().find(|&x| holds(&p, x));
        prop_assert_eq!(alg.min_model(&p).unwrap(), least.map(Letter::Num));
        prop_assert_eq!(alg.is_sat(&p), least.is_some());
    }

    #[test]
    fn integer_algebra_matches_semantics(p in interval_pred()) {
        let alg = Algebra::IntervalInt;
        let canon = alg.canonical_intervals(&p).unwrap();
        let mut letters = vec![Ext::NegInf, Ext::Fin(-7), Ext::Fin(-1)];
        letters.extend(boundary_letters(&GRID));
        for x in letters {
            prop_assert_eq!(canon.contains(x), holds(&p, x), "at {:?}", x);
        }
    }

    #[test]
    fn truth_tables_match_semantics((k, p) in (1u8..=4).prop_flat_map(|k| (Just(k), prop_pred(k)))) {
        let alg = Algebra::prop(k).unwrap();
        let table = alg.truth_table(&p).unwrap();
        for bits in 0..(1u32 << k) {
            let v = Valuation::new(k, bits);
            prop_assert_eq!(table.get(bits), eval_prop(&p, v));
            prop_assert_eq!(alg.contains(&p, &Letter::Val(v)), eval_prop(&p, v));
        }
        let dnf = p.prop_dnf(1 << 12).unwrap();
        for bits in 0..(1u32 << k) {
            let v = Valuation::new(k, bits);
            let by_dnf = dnf.iter().any(|c| c.iter().all(|l| v.get(l.var) == l.positive));
            prop_assert_eq!(by_dnf, eval_prop(&p, v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn special_forms_preserve_language(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random::random_sfa(&mut rng, 3, 3, &GRID[..4]);
        let letters = boundary_letters(&GRID[..4]);
        let forms = [
            ("neat", m.to_neat().unwrap()),
            ("normalized", m.to_normalized()),
            ("feasible", m.make_feasible()),
            ("complete", m.complete()),
            ("complete_general", m.complete_general()),
        ];
        for (name, f) in &forms {
            prop_assert_eq!(same_language(&m, f, &letters, 5), None, "{}", name);
        }
        let c = forms.iter().map(|(_, f)| f.classify()).collect::<Vec<_>>();
        prop_assert!(c[0].neat && c[1].normalized && c[2].feasible && c[3].complete && c[4].complete);
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random::random_sfa(&mut rng, 4, 3, &GRID);
        let back = Sfa::parse(&m.to_string()).unwrap();
        prop_assert!(back.same_structure(&m));
        prop_assert_eq!(back.to_string(), m.to_string());
    }

    #[test]
    fn inclusion_counterexamples_are_genuine(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ops::determinize(&random::random_sfa(&mut rng, 3, 3, &GRID[..4])).unwrap();
        let b = ops::determinize(&random::random_sfa(&mut rng, 3, 3, &GRID[..4])).unwrap();
        match ops::includes(&a, &b, InclusionMode::Subset).unwrap() {
            Verdict::Fails(w) => prop_assert!(oracle_accepts(&a, &w) && !oracle_accepts(&b, &w)),
            Verdict::Holds => {
                let letters = boundary_letters(&GRID[..4]);
                let both = ops::product(&a, &ops::complement(&b).unwrap(), symlearn::ops::ProductMode::Intersect).unwrap();
                prop_assert!(ops::is_empty(&both));
                let empty = Sfa::build(Algebra::IntervalNat, &["e"], "e", &[], &[]).unwrap();
                prop_assert_eq!(same_language(&both, &empty, &letters, 4), None);
            }
        }
        match ops::equivalent(&a, &b).unwrap() {
            Verdict::Fails(w) => prop_assert_ne!(oracle_accepts(&a, &w), oracle_accepts(&b, &w)),
            Verdict::Holds => prop_assert_eq!(same_language(&a, &b, &boundary_letters(&GRID[..4]), 4), None),
        }
    }

    #[test]
    fn learners_agree_with_arbitrary_samples(
        words in prop::collection::btree_map(prop::collection::vec(0i64..6, 0..5), any::<bool>(), 1..25)
    ) {
        let pairs: BTreeMap<_, _> = words.into_iter().map(|(w, b)| (w.into_iter().map(|x| l(x * 50)).collect::<Vec<_>>(), b)).collect();
        let s = Sample::from_pairs(Algebra::IntervalNat, pairs).unwrap();
        let d = infer_dfa(&s).unwrap();
        prop_assert!(s.agrees_with(|w| d.accepts(w)));
        let m = infer_sfa(&s).unwrap();
        prop_assert!(s.agrees_with(|w| oracle_accepts(&m, w)));
        let clean = decontaminate(&s).unwrap();
        prop_assert!(clean.iter().all(|(w, b)| s.label(w) == Some(b)));
        let text = s.to_string();
        prop_assert_eq!(Sample::parse(&text, Algebra::IntervalNat).unwrap().to_string(), text);
    }
}
