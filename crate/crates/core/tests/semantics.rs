//! Library semantics against the naive oracle in `common`.

mod common;

use common::{Poset, Rel, Val};
use proptest::prelude::*;
use qmodal::baoframe::{
    bq_valid_on_frame, check_b_semantic, check_q_fol, check_q_semantic, check_seriality,
    check_symmetry, eval_bq, extension, nec_op, pos_op, sim_op, FrameValuation, KripkeFrame,
    KripkeModel, StateSet,
};
use qmodal::checker::{distribution_suite, SuiteConfig};
use qmodal::formula::{parse_bq, parse_ql, translate, translate_diamond_form, BqFormula};
use qmodal::oml::{gen_boolean, gen_mo};

fn to_set(x: &[bool]) -> StateSet {
    x.iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect()
}

fn to_bits(n: usize, s: StateSet) -> Vec<bool> {
    (0..n).map(|i| s.contains(i)).collect()
}

fn model(n: usize, mask: u64, v: &Val) -> KripkeModel {
    let val: FrameValuation = v.iter().map(|(a, x)| (a.clone(), to_set(x))).collect();
    KripkeModel::new(KripkeFrame::from_mask(n, mask), val).unwrap()
}

#[test]
fn frame_classes_match_oracle_and_frozen_counts() {
    // (symmetric, serial, q) counts for n = 1, 2, 3, from an independent
    // enumeration outside this crate.
    let frozen = [(2, 1, 1), (8, 9, 2), (64, 343, 4)];
    for n in 1..=3 {
        let mut counts = (0, 0, 0);
        for mask in 0..1u64 << (n * n) {
            let (f, rel) = (KripkeFrame::from_mask(n, mask), Rel::from_mask(n, mask));
            assert_eq!(check_symmetry(&f), rel.symmetric(), "n={n} mask={mask}");
            assert_eq!(check_seriality(&f), rel.serial(), "n={n} mask={mask}");
            assert_eq!(check_q_fol(&f), rel.q_fol(), "n={n} mask={mask}");
            let subsets = common::subsets(n);
            let b = subsets.iter().all(|x| {
                common::pos(&rel, &common::nec(&rel, x))
                    .iter()
                    .zip(x)
                    .all(|(l, r)| !l || *r)
            });
            let q = subsets.iter().all(|x| {
                x.iter()
                    .zip(common::pos(&rel, &common::nec(&rel, x)))
                    .all(|(l, r)| !l || r)
            });
            assert_eq!(check_b_semantic(&f).unwrap(), b);
            assert_eq!(check_q_semantic(&f).unwrap(), q);
            counts.0 += usize::from(rel.symmetric());
            counts.1 += usize::from(rel.serial());
            counts.2 += usize::from(rel.q_fol());
        }
        assert_eq!(counts, frozen[n - 1], "n={n}");
    }
}

#[test]
fn operators_match_oracle() {
    for n in 1..=3 {
        for mask in 0..1u64 << (n * n) {
            let (f, rel) = (KripkeFrame::from_mask(n, mask), Rel::from_mask(n, mask));
            for x in common::subsets(n) {
                let s = to_set(&x);
                assert_eq!(to_bits(n, pos_op(&f, s)), common::pos(&rel, &x));
                assert_eq!(to_bits(n, nec_op(&f, s)), common::nec(&rel, &x));
                assert_eq!(to_bits(n, sim_op(&f, s)), common::sim(&rel, &x));
            }
        }
    }
}

fn bq_formula() -> impl Strategy<Value = BqFormula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q"]).prop_map(BqFormula::atom),
        Just(BqFormula::top()),
        Just(BqFormula::bot()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(BqFormula::neg),
            inner.clone().prop_map(BqFormula::boxed),
            inner.clone().prop_map(BqFormula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BqFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BqFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BqFormula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| BqFormula::iff(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluators_agree_with_oracle(f in bq_formula(), n in 1usize..=3, mask in any::<u64>(), p in any::<u8>(), q in any::<u8>()) {
        let mask = mask & ((1u64 << (n * n)) - 1);
        let rel = Rel::from_mask(n, mask);
        let bits = |m: u8| (0..n).map(|s| m >> s & 1 == 1).collect::<Vec<_>>();
        let v: Val = [("p".to_string(), bits(p)), ("q".to_string(), bits(q))].into_iter().collect();
        let m = model(n, mask, &v);
        let want = common::ext(&rel, &v, &f);
        prop_assert_eq!(to_bits(n, extension(&m, &f).unwrap()), want.clone());
        for (s, &w) in want.iter().enumerate() {
            prop_assert_eq!(eval_bq(&m, s, &f).unwrap(), w);
        }
        prop_assert_eq!(bq_valid_on_frame(&m.frame, &f).unwrap().is_valid(), common::frame_valid(&rel, &f));
    }
}

#[test]
fn negation_forms_have_identical_extensions() {
    let formulas = [
        "~a",
        "~~a",
        "~(a & ~b)",
        "a | b",
        "a ->0 b",
        "a ->3 b",
        "a == b",
        "~(a & b) | (~a & ~~b)",
        "(a ->3 b) ->3 (~b ->3 ~a)",
    ];
    for text in formulas {
        let f = parse_ql(text).unwrap();
        let (box_form, dia_form) = (translate(&f), translate_diamond_form(&f));
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        for n in 1..=3 {
            for mask in 0..1u64 << (n * n) {
                let rel = Rel::from_mask(n, mask);
                for v in common::valuations(n, &atoms) {
                    let m = model(n, mask, &v);
                    let (x, y) = (
                        extension(&m, &box_form).unwrap(),
                        extension(&m, &dia_form).unwrap(),
                    );
                    assert_eq!(x, y, "{text} n={n} mask={mask}");
                    assert_eq!(to_bits(n, x), common::ext(&rel, &v, &box_form));
                }
            }
        }
    }
}

#[test]
fn lattice_tables_match_brute_force_bounds() {
    for l in [
        gen_boolean(3).unwrap(),
        gen_mo(4).unwrap(),
        gen_mo(1).unwrap(),
    ] {
        let n = l.len();
        let poset = Poset {
            n,
            leq: (0..n)
                .map(|x| (0..n).map(|y| l.leq(x, y)).collect())
                .collect(),
        };
        for x in 0..n {
            for y in 0..n {
                assert_eq!(Some(l.meet(x, y)), poset.glb(x, y));
                assert_eq!(Some(l.join(x, y)), poset.lub(x, y));
            }
        }
    }
}

#[test]
fn first_disjunction_counterexample_is_frozen() {
    // Enumeration order: n = 1 has none; at n = 2, mask 3 is 0→0, 0→1, and
    // the first valuation splitting 0's successors is p = {0}, q = {1}.
    let r = distribution_suite(&SuiteConfig::default()).unwrap();
    let e = r.entry("box_or_converse_counterexample").unwrap();
    let f = KripkeFrame::from_mask(2, 3);
    assert_eq!(e.frame, f.to_json());
    assert_eq!(e.witness["state"], 0);
    assert_eq!(e.witness["valuation"]["p"], serde_json::json!([0]));
    assert_eq!(e.witness["valuation"]["q"], serde_json::json!([1]));
    let rel = Rel::from_mask(2, 3);
    let v: Val = [
        ("p".into(), vec![true, false]),
        ("q".into(), vec![false, true]),
    ]
    .into_iter()
    .collect();
    let phi = parse_bq("[](p | q) -> ([]p | []q)").unwrap();
    assert!(!common::holds(&rel, &v, 0, &phi));
}
