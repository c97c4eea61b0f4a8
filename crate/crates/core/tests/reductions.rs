use pileshuffle::algebra::{compose_fold, dual_word, invert_word};
use pileshuffle::chain::build_chain;
use pileshuffle::gadgets::{key_word, Variant};
use pileshuffle::perm::change_profile;
use pileshuffle::reduction::{
    decode_assignment, reduce, reduce_to_sort, sort_to_chain, witness_schedule, CnfFormula, TruthAssignment,
};
use pileshuffle::shuffle::TypeSchedule;
use pileshuffle::verifier::{check_reduction_equivalence, decide_feasibility, sat_brute_force, Strategy};

fn cnf(n: usize, clauses: &[&[i32]]) -> CnfFormula {
    CnfFormula::from_literals(n, clauses).unwrap()
}

fn small_bank() -> Vec<CnfFormula> {
    vec![
        cnf(1, &[&[1]]),
        cnf(1, &[&[-1]]),
        cnf(1, &[&[1], &[-1]]),
        cnf(2, &[&[1, 2], &[-1]]),
        cnf(2, &[&[1, -2], &[-1, 2], &[-1, -2]]),
        cnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]),
        cnf(2, &[&[1, -1], &[2]]),
    ]
}

fn accepts(schedule: &TypeSchedule, question: &pileshuffle::reduction::ChainQuestion) -> bool {
    build_chain(&compose_fold(schedule)).unwrap().accepts(&question.profile)
}

#[test]
fn repeated_key_word_reduction_at_one_repetition() {
    for f in small_bank() {
        for strategy in [Strategy::Naive, Strategy::Structured] {
            let r = check_reduction_equivalence(Variant::V, &f, strategy, 1 << 20).unwrap();
            assert!(r.passed, "{strategy} {}: {}", f.to_dimacs(), r.detail);
        }
    }
}

#[test]
fn repeated_key_word_reduction_at_two_repetitions() {
    for f in [cnf(2, &[&[1, 2], &[-1]]), cnf(1, &[&[1], &[-1]]), cnf(3, &[&[1, -3], &[-1], &[3, 2]])] {
        let q = reduce(Variant::V, &f, Some(2)).unwrap();
        assert_eq!(q.family.widths(), vec![12, 12, 12]);
        let sat = sat_brute_force(&f, 20).unwrap();
        let found = decide_feasibility(&q, Strategy::Structured, 1 << 20).unwrap();
        assert_eq!(sat.is_some(), found.is_some(), "{}", f.to_dimacs());
        if let Some(w) = found {
            let x = decode_assignment(Variant::V, &w, f.num_vars()).unwrap();
            assert!(f.satisfied_by(&x), "{w} decodes to {x}");
        }
        if let Some(x) = sat {
            let named = witness_schedule(Variant::V, &f, &x, Some(2)).unwrap();
            assert!(q.family.contains(&named));
            assert!(accepts(&named, &q));
        }
    }
}

#[test]
fn flipped_witnesses_decode_to_the_same_assignment() {
    let f = cnf(3, &[&[1, -2], &[3], &[-1, 2]]);
    let x: TruthAssignment = "1 2 3".parse().unwrap();
    assert!(f.satisfied_by(&x));
    for variant in [Variant::I, Variant::II, Variant::III] {
        let q = reduce(variant, &f, None).unwrap();
        let w = witness_schedule(variant, &f, &x, None).unwrap();
        assert!(accepts(&w, &q), "{variant}");
        if variant == Variant::I {
            continue;
        }
        let r = w.rounds();
        // x1\x2 = dual(x1)\invert(x2) on the last two rounds
        let last_pair = TypeSchedule::new(vec![r[0].clone(), dual_word(&r[1]), invert_word(&r[2])]).unwrap();
        assert!(q.family.contains(&last_pair));
        assert!(accepts(&last_pair, &q));
        assert_eq!(decode_assignment(variant, &last_pair, 3).unwrap(), x, "{variant}");
        if variant == Variant::III {
            let first_pair = TypeSchedule::new(vec![dual_word(&key_word()), invert_word(&r[1]), r[2].clone()]).unwrap();
            assert!(q.family.contains(&first_pair));
            assert!(accepts(&first_pair, &q));
            assert_eq!(decode_assignment(variant, &first_pair, 3).unwrap(), x);
        }
    }
}

#[test]
fn sort_questions_carry_the_profile() {
    for f in small_bank() {
        for variant in [Variant::I, Variant::II, Variant::III, Variant::V] {
            let q = reduce(variant, &f, None).unwrap();
            let s = reduce_to_sort(&q);
            assert_eq!(change_profile(&s.permutation), q.profile);
            assert_eq!(sort_to_chain(&s), q);
            let text = s.to_string();
            assert_eq!(text.parse::<pileshuffle::reduction::SortQuestion>().unwrap(), s);
        }
    }
}

#[test]
fn malformed_witnesses_are_rejected() {
    for bad in ["qqqsss\\qq\\q", "qqqqss\\q\\q", "qqqqss\\sq\\qs", "qqqqss\\sq"] {
        let w: TypeSchedule = bad.parse().unwrap();
        assert!(decode_assignment(Variant::I, &w, 1).is_err(), "{bad}");
    }
    let w: TypeSchedule = "qqqqss\\sq\\q".parse().unwrap();
    assert_eq!(decode_assignment(Variant::I, &w, 1).unwrap().to_string(), "-1");
}
