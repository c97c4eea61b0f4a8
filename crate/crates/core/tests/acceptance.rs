//! End-to-end acceptance criteria. Runs as a plain binary and prints one
//! line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use pileshuffle::algebra::{
    compose_fold, compose_pair, compose_schedule, devirtualize_assignments, dual_word, invert_word,
    multi_round_sort, virtualize_assignments,
};
use pileshuffle::chain::build_chain;
use pileshuffle::gadgets::{build_formula, gadget, Variant};
use pileshuffle::perm::{change_profile, parse_permutation, Change, ChangeProfile, Convention, Permutation};
use pileshuffle::reduction::{
    decode_assignment, drop_tautologies, reduce, witness_schedule, ChainQuestion, CnfFormula, FactoredFamily,
    RoundSpec, TruthAssignment,
};
use pileshuffle::shuffle::{
    check_sort, minimal_sort, shuffle_multi, shuffle_once, PileAssignment, PileType, TypeSchedule, TypeWord,
};
use pileshuffle::verifier::{
    aligned_family, check_reduction_equivalence, decide_feasibility, verify_gadget_lemmas, verify_lemma,
    LemmaBounds, Strategy,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tw(s: &str) -> TypeWord {
    s.parse().unwrap()
}

fn sched(s: &str) -> TypeSchedule {
    s.parse().unwrap()
}

fn words_up_to(len: usize) -> Vec<TypeWord> {
    (1..=len).flat_map(TypeWord::all_of_length).collect()
}

/// Deals `images` (π(s) for s = 1..n) onto piles and reports whether the
/// collected deck is in label order. Written against the dealing rules
/// alone: the deck is dealt top first, piles are picked up left to right,
/// a queue gives its cards back in dealing order and a stack reversed.
fn deals_to_sorted(images: &[usize], types: &[PileType], piles: &[usize]) -> bool {
    const MAX: usize = 16;
    let n = images.len();
    assert!(n <= MAX && types.len() <= MAX);
    let mut deck = [0usize; MAX];
    for (s, &pos) in images.iter().enumerate() {
        deck[pos - 1] = s + 1;
    }
    let mut table = [[0usize; MAX]; MAX];
    let mut heights = [0usize; MAX];
    for &label in &deck[..n] {
        let pile = piles[label - 1] - 1;
        table[pile][heights[pile]] = label;
        heights[pile] += 1;
    }
    let mut next = 1;
    for (i, t) in types.iter().enumerate() {
        let cards = &table[i][..heights[i]];
        for j in 0..cards.len() {
            let label = match t {
                PileType::Queue => cards[j],
                PileType::Stack => cards[cards.len() - 1 - j],
            };
            if label != next {
                return false;
            }
            next += 1;
        }
    }
    true
}

/// Every `p ∈ [m]^n`, as a flat index.
fn assignment_at(mut index: usize, n: usize, m: usize) -> Vec<usize> {
    let mut p = vec![0; n];
    for slot in p.iter_mut().rev() {
        *slot = index % m + 1;
        index /= m;
    }
    p
}

fn criterion_1() -> Outcome {
    let deck = parse_permutation("456123", Convention::Sequence).unwrap();
    let piles = PileAssignment::new(vec![4, 2, 1, 2, 4, 2]);
    let stacks = shuffle_once(&deck, &tw("ssss"), &piles).unwrap();
    let queues = shuffle_once(&deck, &tw("qqqq"), &piles).unwrap();
    ensure(stacks.deck_order() == vec![3, 2, 6, 4, 1, 5], || format!("stacks gave {:?}", stacks.deck_order()))?;
    ensure(queues.deck_order() == vec![3, 4, 6, 2, 5, 1], || format!("queues gave {:?}", queues.deck_order()))?;

    let demo = Permutation::from_images(vec![4, 8, 7, 5, 3, 1, 2, 6]).unwrap();
    ensure(change_profile(&demo).to_string() == "addddaa", || "profile".into())?;
    let p = minimal_sort(&demo, &tw("qsq")).ok_or("no minimal sort")?;
    ensure(p.piles() == [1, 1, 2, 2, 2, 2, 3, 3], || format!("p* = {:?}", p.piles()))?;
    ensure(shuffle_once(&demo, &tw("qsq"), &p).unwrap().is_identity(), || "p* does not sort".into())?;
    Ok("326415 on stacks, 346251 on queues, p* = 11222233".into())
}

fn criterion_2() -> Outcome {
    let words = words_up_to(4);
    let perms: Vec<Permutation> = (1..=6).flat_map(Permutation::all).collect();
    let instances: u64 = perms
        .par_iter()
        .map(|perm| -> Result<u64, String> {
            let n = perm.len();
            let profile = change_profile(perm);
            let mut count = 0;
            for x in &words {
                let m = x.len();
                let mut by_condition = false;
                let mut by_dealing = false;
                for i in 0..m.pow(n as u32) {
                    let p = assignment_at(i, n, m);
                    let dealt = deals_to_sorted(perm.images(), x.types(), &p);
                    let piles = PileAssignment::new(p);
                    let cond = check_sort(x, &piles, perm);
                    ensure(cond == dealt, || format!("{perm} on {x} with {piles:?}: condition {cond}, dealing {dealt}"))?;
                    by_condition |= cond;
                    by_dealing |= dealt;
                }
                let greedy = minimal_sort(perm, x);
                let chain = build_chain(x).unwrap().accepts(&profile);
                ensure(
                    by_condition == greedy.is_some() && by_condition == chain && by_condition == by_dealing,
                    || format!("{perm} on {x}: brute {by_condition}, minimal {}, chain {chain}", greedy.is_some()),
                )?;
                if let Some(g) = greedy {
                    ensure(deals_to_sorted(perm.images(), x.types(), g.piles()), || {
                        format!("minimal sort of {perm} on {x} does not deal sorted")
                    })?;
                }
                count += 1;
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} permutations x {} words = {instances} instances agree", perms.len(), words.len()))
}

fn criterion_3() -> Outcome {
    let words = words_up_to(2);
    let mut schedules = Vec::new();
    for a in &words {
        schedules.push(vec![a.clone()]);
        for b in &words {
            schedules.push(vec![a.clone(), b.clone()]);
            for c in &words {
                schedules.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let perms: Vec<Permutation> = (1..=4).flat_map(Permutation::all).collect();
    let checked: u64 = perms
        .par_iter()
        .map(|perm| -> Result<u64, String> {
            let n = perm.len();
            let mut count = 0;
            for rounds in &schedules {
                let schedule = TypeSchedule::new(rounds.clone()).unwrap();
                let comp = compose_schedule(&schedule);
                let sizes: Vec<usize> = rounds.iter().map(|r| r.len().pow(n as u32)).collect();
                let total: usize = sizes.iter().product();
                for mut i in 0..total {
                    let mut tuple = Vec::with_capacity(rounds.len());
                    for (r, size) in rounds.iter().zip(&sizes) {
                        tuple.push(PileAssignment::new(assignment_at(i % size, n, r.len())));
                        i /= size;
                    }
                    let multi = shuffle_multi(perm, &schedule, &tuple).unwrap();
                    let virt = virtualize_assignments(&comp, &tuple).unwrap();
                    let single = shuffle_once(perm, comp.virtual_types(), &virt.to_real()).unwrap();
                    ensure(multi == single, || format!("{perm} {schedule} {tuple:?}: {multi} vs {single}"))?;
                    let back = devirtualize_assignments(&comp, &virt).unwrap();
                    ensure(back == tuple, || format!("{perm} {schedule}: round trip lost {tuple:?}"))?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{checked} (permutation, schedule, assignment tuple) cases"))
}

fn criterion_4() -> Outcome {
    let words = words_up_to(3);
    let mut count = 0u64;
    for a in &words {
        for b in &words {
            ensure(compose_pair(a, b) == compose_pair(&dual_word(a), &invert_word(b)), || {
                format!("equivalence fails for {a}\\{b}")
            })?;
            let pair = TypeSchedule::new(vec![a.clone(), b.clone()]).unwrap();
            ensure(compose_fold(&pair) == *compose_schedule(&pair).virtual_types(), || format!("{pair}"))?;
            for c in &words {
                let s = TypeSchedule::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
                let fold = compose_fold(&s);
                ensure(fold == *compose_schedule(&s).virtual_types(), || format!("fold vs recurrence on {s}"))?;
                ensure(
                    compose_pair(&compose_pair(a, b), c) == compose_pair(a, &compose_pair(b, c)),
                    || format!("associativity fails on {s}"),
                )?;
                count += 1;
            }
        }
        let single = TypeSchedule::new(vec![a.clone()]).unwrap();
        ensure(compose_fold(&single) == *compose_schedule(&single).virtual_types(), || format!("{a}"))?;
    }
    let worked = compose_fold(&sched("qqs\\qss\\s"));
    ensure(worked.to_string() == "qqsqqsqss", || format!("worked example gave {worked}"))?;

    // the composed word decides multi-round sortability by dealing alone
    let mut semantic = 0u64;
    for a in &words_up_to(2) {
        for b in &words_up_to(2) {
            let s = TypeSchedule::new(vec![a.clone(), b.clone()]).unwrap();
            let x = compose_fold(&s);
            for n in 1..=4 {
                for perm in Permutation::all(n) {
                    let by_dealing = (0..a.len().pow(n as u32)).any(|i| {
                        (0..b.len().pow(n as u32)).any(|j| {
                            let t = vec![
                                PileAssignment::new(assignment_at(i, n, a.len())),
                                PileAssignment::new(assignment_at(j, n, b.len())),
                            ];
                            shuffle_multi(&perm, &s, &t).unwrap().is_identity()
                        })
                    });
                    ensure(by_dealing == minimal_sort(&perm, &x).is_some(), || format!("{perm} on {s}"))?;
                    semantic += 1;
                }
            }
        }
    }
    Ok(format!("{count} three-round schedules; {semantic} two-round sortability checks"))
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    for (m, t, max_n) in [(2usize, 3usize, 8usize), (3, 2, 9)] {
        let schedule = TypeSchedule::new(vec![TypeWord::queues(m); t]).unwrap();
        let mut sorted = 0u64;
        for n in 1..=max_n {
            let perms = Permutation::all(n);
            let ok = perms
                .par_iter()
                .map(|perm| match multi_round_sort(perm, &schedule) {
                    Some(a) => shuffle_multi(perm, &schedule, &a).map(|d| d.is_identity()).unwrap_or(false),
                    None => false,
                })
                .filter(|&b| b)
                .count();
            ensure(ok == perms.len(), || format!("(m,T)=({m},{t}) n={n}: only {ok}/{} sorted", perms.len()))?;
            sorted += ok as u64;
        }
        // one card more and the reversed deck no longer fits
        let reversed = Permutation::from_images((1..=max_n + 1).rev().collect()).unwrap();
        ensure(multi_round_sort(&reversed, &schedule).is_none(), || format!("({m},{t}) sorted n={}", max_n + 1))?;
        detail.push(format!("({m},{t}): {sorted} perms up to n={max_n}"));
    }
    Ok(detail.join("; "))
}

fn criterion_6() -> Outcome {
    let reports = verify_gadget_lemmas(&LemmaBounds::default());
    let mut total = 0u128;
    for r in &reports {
        ensure(r.passed, || format!("{}: {}", r.name, r.detail))?;
        ensure(r.cases > 0, || format!("{} is vacuous", r.name))?;
        total = total.saturating_add(r.cases);
        println!("    {} cases={} cross_checked={} [{}]", r.name, r.cases, r.cross_checked, r.bounds);
    }
    let start = reports.iter().find(|r| r.name == "start-clause").unwrap();
    ensure(start.cases >= 128, || format!("start-clause has only {} cases", start.cases))?;
    Ok(format!("{} claims, {total} cases", reports.len()))
}

/// Satisfiability by enumeration over the literal lists.
fn satisfiable(formula: &CnfFormula) -> bool {
    let n = formula.num_vars();
    (0..1u32 << n).any(|bits| {
        formula.clauses().iter().all(|c| {
            c.literals().iter().any(|&l| {
                let v = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    })
}

fn shapes(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for code in 1..3usize.pow(n as u32) {
        let mut c = code;
        let mut lits = Vec::new();
        for v in 1..=n as i32 {
            match c % 3 {
                1 => lits.push(v),
                2 => lits.push(-v),
                _ => {}
            }
            c /= 3;
        }
        out.push(lits);
    }
    out
}

/// Every formula with n ≤ 2 and m ≤ 2 over the clause shapes.
fn formula_bank() -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=2 {
        let sh = shapes(n);
        for a in &sh {
            out.push(CnfFormula::from_literals(n, &[a]).unwrap());
            for b in &sh {
                out.push(CnfFormula::from_literals(n, &[a, b]).unwrap());
            }
        }
    }
    out
}

fn random_formula(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CnfFormula {
    let clauses: Vec<Vec<i32>> = (0..m)
        .map(|_| {
            let mut lits = Vec::new();
            while lits.is_empty() {
                for v in 1..=n as i32 {
                    match rng.gen_range(0..3) {
                        1 => lits.push(v),
                        2 => lits.push(-v),
                        _ => {}
                    }
                }
            }
            lits
        })
        .collect();
    let refs: Vec<&[i32]> = clauses.iter().map(Vec::as_slice).collect();
    CnfFormula::from_literals(n, &refs).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut formulas = formula_bank();
    let bank = formulas.len();
    formulas.extend((0..100).map(|_| random_formula(&mut rng, 3, 3)));
    let results: Vec<Result<bool, String>> = formulas
        .par_iter()
        .map(|f| {
            let sat = satisfiable(f);
            for variant in [Variant::I, Variant::II] {
                for strategy in [Strategy::Naive, Strategy::Structured] {
                    let r = check_reduction_equivalence(variant, f, strategy, 1 << 20).map_err(|e| e.to_string())?;
                    ensure(r.passed, || format!("{variant} {strategy} on {}: {}", f.to_dimacs(), r.detail))?;
                    ensure(r.witness.is_some() == sat, || format!("{variant} {strategy} disagrees with enumeration"))?;
                    if let Some(x) = &r.decoded {
                        ensure(f.satisfied_by(x), || format!("decoded {x} does not satisfy"))?;
                    }
                }
            }
            Ok(sat)
        })
        .collect();
    let mut satisfiable_count = 0;
    for r in results {
        satisfiable_count += usize::from(r?);
    }
    Ok(format!(
        "{bank} enumerated + 100 random formulas ({satisfiable_count} satisfiable), both variants, both strategies"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut formulas = formula_bank();
    formulas.push(CnfFormula::from_literals(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap());
    formulas.extend((0..20).map(|_| random_formula(&mut rng, 3, 4)));
    let (mut positive, mut negative) = (0, 0);
    for f in &formulas {
        let reduced = drop_tautologies(f);
        let question = reduce(Variant::III, f, None).map_err(|e| e.to_string())?;
        if satisfiable(f) {
            let x = (0..1u32 << f.num_vars())
                .map(|bits| {
                    TruthAssignment::new((0..f.num_vars()).map(|v| bits >> v & 1 == 1).collect())
                })
                .find(|x| f.satisfied_by(x))
                .unwrap();
            let w = witness_schedule(Variant::III, f, &x, None).unwrap();
            ensure(question.family.contains(&w), || format!("{w} outside the family"))?;
            let profile = build_formula(Variant::III, &reduced, 1).unwrap();
            ensure(profile == question.profile, || "profile mismatch".into())?;
            ensure(build_chain(&compose_fold(&w)).unwrap().accepts(&profile), || {
                format!("witness {w} rejects formula {}", f.to_dimacs())
            })?;
            ensure(decode_assignment(Variant::III, &w, f.num_vars()).unwrap() == x, || "decode".into())?;
            positive += 1;
        } else {
            let aligned = ChainQuestion {
                profile: question.profile.clone(),
                family: aligned_family(reduced.num_vars(), reduced.num_clauses()),
            };
            let found = decide_feasibility(&aligned, Strategy::Structured, 1 << 20).map_err(|e| e.to_string())?;
            ensure(found.is_none(), || format!("aligned witness for unsatisfiable {}", f.to_dimacs()))?;
            let r = check_reduction_equivalence(Variant::III, f, Strategy::Structured, 1 << 20)
                .map_err(|e| e.to_string())?;
            ensure(r.passed, || r.detail.clone())?;
            negative += 1;
        }
    }
    let b = LemmaBounds::default();
    let mut lemma_cases = 0u128;
    for name in ["align", "aligned-word", "force-align-block"] {
        let r = verify_lemma(name, &b).map_err(|e| e.to_string())?;
        ensure(r.passed && r.cases > 0, || format!("{name}: {}", r.detail))?;
        lemma_cases = lemma_cases.saturating_add(r.cases);
    }
    Ok(format!(
        "{positive} witnesses accept; {negative} unsatisfiable formulas have no aligned witness; \
         alignment claims hold on {lemma_cases} cases (negative direction covers aligned prefixes only)"
    ))
}

fn criterion_9() -> Outcome {
    let len = |name: &str| gadget(name).unwrap().len();
    let mut rows = Vec::new();
    for variant in [Variant::I, Variant::II] {
        let mut table = vec![vec![0i64; 9]; 9];
        for n in 1..=8usize {
            // every clause is x1 ∨ … ∨ xn
            let clause: Vec<i32> = (1..=n as i32).collect();
            for m in 1..=8usize {
                let clauses = vec![clause.as_slice(); m];
                let f = CnfFormula::from_literals(n, &clauses).unwrap();
                let measured = build_formula(variant, &f, 1).unwrap().len();
                let per_clause = len("start-clause") + (n - 1) * len("pos") + len("endpos")
                    + if variant == Variant::II { len("force-q") } else { 0 };
                let expected = m * per_clause + (m - 1) * len("next");
                ensure(measured == expected, || format!("{variant} n={n} m={m}: {measured} vs {expected}"))?;
                table[n][m] = measured as i64;
            }
        }
        for fixed in 1..=8 {
            for v in 1..=6 {
                let along_m = table[fixed][v] - 2 * table[fixed][v + 1] + table[fixed][v + 2];
                let along_n = table[v][fixed] - 2 * table[v + 1][fixed] + table[v + 2][fixed];
                ensure(along_m == 0 && along_n == 0, || format!("{variant}: curvature at {fixed},{v}"))?;
            }
        }
        let fit = r_squared(&table);
        ensure(fit == 1.0, || format!("{variant}: R^2 = {fit}"))?;
        rows.push(format!("{variant}: n=m=1 gives {}, n=m=8 gives {}, R^2 = 1", table[1][1], table[8][8]));
    }
    Ok(rows.join("; "))
}

/// R² of the surface `a + b·m + c·n + d·mn` through the four corners,
/// which is affine in each argument with the other fixed.
fn r_squared(table: &[Vec<i64>]) -> f64 {
    let corner = |n: usize, m: usize| table[n][m] as f64;
    let (n0, n1, m0, m1) = (1usize, 8usize, 1usize, 8usize);
    let mut ss_res = 0.0;
    let mut values = Vec::new();
    for n in 1..=8 {
        for m in 1..=8 {
            let u = (n - n0) as f64 / (n1 - n0) as f64;
            let v = (m - m0) as f64 / (m1 - m0) as f64;
            let pred = corner(n0, m0) * (1.0 - u) * (1.0 - v)
                + corner(n1, m0) * u * (1.0 - v)
                + corner(n0, m1) * (1.0 - u) * v
                + corner(n1, m1) * u * v;
            ss_res += (table[n][m] as f64 - pred).powi(2);
            values.push(table[n][m] as f64);
        }
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let ss_tot: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

fn random_spec(rng: &mut ChaCha8Rng) -> RoundSpec {
    let word = |rng: &mut ChaCha8Rng, len: usize| {
        TypeWord::new((0..len).map(|_| if rng.gen() { PileType::Queue } else { PileType::Stack }).collect())
    };
    match rng.gen_range(0..4) {
        0 => {
            let len = rng.gen_range(1..=4);
            RoundSpec::Fixed(word(rng, len))
        }
        1 => RoundSpec::Free(rng.gen_range(1..=5)),
        2 => {
            let len = rng.gen_range(1..=2);
            RoundSpec::Power(word(rng, len), rng.gen_range(1..=3))
        }
        _ => {
            let len = rng.gen_range(1..=2);
            RoundSpec::Concat(vec![RoundSpec::Fixed(word(rng, len)), RoundSpec::Free(rng.gen_range(1..=3))])
        }
    }
}

fn strategies_agree(question: &ChainQuestion) -> Result<bool, String> {
    let naive = decide_feasibility(question, Strategy::Naive, 1 << 14).map_err(|e| e.to_string())?;
    let fast = decide_feasibility(question, Strategy::Structured, 1 << 14).map_err(|e| e.to_string())?;
    ensure(naive.is_some() == fast.is_some(), || {
        format!("{} on {}: naive {:?} structured {:?}", question.profile, question.family, naive, fast)
    })?;
    for w in naive.iter().chain(fast.iter()) {
        ensure(question.family.contains(w), || format!("{w} outside {}", question.family))?;
        ensure(build_chain(&compose_fold(w)).unwrap().accepts(&question.profile), || format!("{w} rejects"))?;
    }
    Ok(naive.is_some())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut questions = Vec::new();
    while questions.len() < 500 {
        let rounds: Vec<RoundSpec> = (0..rng.gen_range(1..=3)).map(|_| random_spec(&mut rng)).collect();
        let family = FactoredFamily::new(rounds);
        if family.count().map_or(true, |c| c > 1 << 14) {
            continue;
        }
        let len = rng.gen_range(0..=24);
        let profile = ChangeProfile::new(
            (0..len)
                .map(|_| if rng.gen() { Change::Ascent } else { Change::Descent })
                .collect(),
        );
        questions.push(ChainQuestion { profile, family });
    }
    let feasible = questions
        .par_iter()
        .map(strategies_agree)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|&b| b)
        .count();

    let shapes = [
        "qqqqss\\A^1\\q^1",
        "qqqqss\\A^1\\A^1",
        "A^6\\A^1\\A^1",
        "A^1\\A^1\\A^1",
        "qqqqss^1\\A^6\\A^6",
        "",
        "A^1",
        "A^1\\A^1",
    ];
    let mut table_cases = 0;
    for shape in shapes {
        let family: FactoredFamily = shape.parse().map_err(|e| format!("{shape}: {e}"))?;
        let max_len = if family.count().unwrap() > 1 << 8 { 8 } else { 10 };
        let profiles: Vec<ChangeProfile> = (0..=max_len).flat_map(ChangeProfile::all_of_length).collect();
        profiles
            .par_iter()
            .map(|p| strategies_agree(&ChainQuestion { profile: p.clone(), family: family.clone() }))
            .collect::<Result<Vec<_>, _>>()?;
        table_cases += profiles.len();
    }
    Ok(format!(
        "500 random instances ({feasible} feasible); {table_cases} profiles over {} table shapes",
        shapes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked examples", criterion_1),
        ("sort condition, minimal sort and chain agree", criterion_2),
        ("multi-round = virtual single round", criterion_3),
        ("composition algebra", criterion_4),
        ("capacity m^T", criterion_5),
        ("gadget claims", criterion_6),
        ("reductions I and II", criterion_7),
        ("reduction III", criterion_8),
        ("formula size is affine", criterion_9),
        ("structured decider = naive decider", criterion_10),
    ];
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if filter.as_deref().is_some_and(|f| f != id) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
