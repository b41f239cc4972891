use std::collections::BTreeSet;

use proptest::prelude::*;

use problema::expr::{Alphabet, Expression, Universe};
use problema::machine::{
    delta_machine, dovetail, expressions_up_to, symbol_map_machine, universal_apply, Move, Program,
    RunOutcome, TMachine, Transition,
};
use problema::problem::{Problem, SolutionSet};
use problema::resolution::{chain, trial, AnalogyStep, Resolution, DEFAULT_FUEL};
use problema::resolver::{range_power, Binding, ElementFn, FunctionSet, ProblemSpace, Resolver};
use problema::sweep::Strategy as Sweep;
use problema::topology::{
    classify, halting_demo, halting_demo_pool, is_decision_solution, Evidence, Flag,
};

fn alphabet(size: usize) -> Alphabet {
    Alphabet::of(&"abcd"[..size]).unwrap()
}

fn letters(n: usize) -> Vec<Expression> {
    "abcdefgh"
        .chars()
        .take(n)
        .map(|c| Expression::from_symbols(vec![c]))
        .collect()
}

fn subset(members: &[Expression], mask: u32) -> SolutionSet {
    members
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e.clone())
        .collect()
}

fn problem(members: &[Expression], mask: u32) -> Problem {
    let u = Universe::finite(members.to_vec()).unwrap();
    Problem::of_set(u, &subset(members, mask)).unwrap()
}

// (state count, row-major table over the blank plus "ab")
fn machine_strategy() -> impl Strategy<Value = TMachine> {
    (1usize..=4).prop_flat_map(|states| {
        let cell = (0..states, 0usize..3, 0usize..3);
        proptest::collection::vec(cell, states * 3).prop_map(move |cells| {
            let ab = Alphabet::of("ab").unwrap();
            let columns = [ab.blank(), 'a', 'b'];
            let moves = [Move::Left, Move::Halt, Move::Right];
            let table = cells
                .into_iter()
                .map(|(next, w, m)| Transition::new(next, columns[w], moves[m]))
                .collect();
            TMachine::from_table(ab, states, 0, table).unwrap()
        })
    })
}

fn input_strategy() -> impl Strategy<Value = Expression> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..5)
        .prop_map(Expression::from_symbols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn index_round_trip(size in 1usize..=4, index in 0u64..10_000) {
        let a = alphabet(size);
        prop_assert_eq!(a.index_of(&a.enumerate(index)).unwrap(), index);
    }

    #[test]
    fn enumeration_lengths_never_decrease(size in 1usize..=4, i in 0u64..10_000, j in 0u64..10_000) {
        let a = alphabet(size);
        let (lo, hi) = (i.min(j), i.max(j));
        prop_assert!(a.enumerate(lo).len() <= a.enumerate(hi).len());
    }

    #[test]
    fn boolean_laws_on_random_triples(n in 1usize..=6, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let m = letters(n);
        let full = (1u32 << n) - 1;
        let (p, q, r) = (problem(&m, x & full), problem(&m, y & full), problem(&m, z & full));
        let u = p.universe().clone();
        let (taut, contra) = (Problem::tautology(u.clone()), Problem::contradiction(u));
        prop_assert!(p.disjoin(&q).unwrap().disjoin(&r).unwrap().equal(&p.disjoin(&q.disjoin(&r).unwrap()).unwrap()).unwrap());
        prop_assert!(p.conjoin(&q).unwrap().conjoin(&r).unwrap().equal(&p.conjoin(&q.conjoin(&r).unwrap()).unwrap()).unwrap());
        prop_assert!(p.disjoin(&q).unwrap().equal(&q.disjoin(&p).unwrap()).unwrap());
        prop_assert!(p.conjoin(&q).unwrap().equal(&q.conjoin(&p).unwrap()).unwrap());
        prop_assert!(p.disjoin(&contra).unwrap().equal(&p).unwrap());
        prop_assert!(p.conjoin(&taut).unwrap().equal(&p).unwrap());
        prop_assert!(p.disjoin(&p.negate()).unwrap().equal(&taut).unwrap());
        prop_assert!(p.conjoin(&p.negate()).unwrap().equal(&contra).unwrap());
        let left = p.disjoin(&q.conjoin(&r).unwrap()).unwrap();
        prop_assert!(left.equal(&p.disjoin(&q).unwrap().conjoin(&p.disjoin(&r).unwrap()).unwrap()).unwrap());
        let left = p.conjoin(&q.disjoin(&r).unwrap()).unwrap();
        prop_assert!(left.equal(&p.conjoin(&q).unwrap().disjoin(&p.conjoin(&r).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn trial_stays_inside_the_solutions(n in 1usize..=6, sigma in any::<u32>(), pool in any::<u32>()) {
        let m = letters(n);
        let full = (1u32 << n) - 1;
        let p = problem(&m, sigma & full);
        let pool = subset(&m, pool & full);
        let found = trial(&p, &pool).unwrap();
        let truth = p.solutions().unwrap();
        prop_assert!(found.is_subset(&truth));
        prop_assert_eq!(truth.is_subset(&pool), found == truth);
        prop_assert_eq!(found, pool.intersection(&truth));
    }

    #[test]
    fn chained_translators_match_stepwise(shifts in proptest::collection::vec(-3i64..=3, 1..4), mask in 0u32..16) {
        let u = Universe::int_range(0, 3);
        let members = u.all_members().unwrap();
        let p = Problem::of_set(u, &subset(&members, mask)).unwrap();
        let steps: Vec<AnalogyStep> = shifts.iter().map(|&k| AnalogyStep::shift(k)).collect();

        let mut moved = vec![p.clone()];
        for s in &steps {
            let next = s.transform(moved.last().unwrap()).unwrap();
            moved.push(next);
        }
        let mut back = moved.last().unwrap().solutions().unwrap();
        for s in steps.iter().rev() {
            back = s.translate(&back);
        }

        let whole = Resolution::analogy(steps.clone(), Resolution::exhaustive()).unwrap();
        let composed = steps[1..].iter().fold(steps[0].clone(), |acc, s| chain(&acc, s));
        let folded = Resolution::analogy(vec![composed], Resolution::exhaustive()).unwrap();
        prop_assert_eq!(&whole.apply(&p, DEFAULT_FUEL).unwrap(), &back);
        prop_assert_eq!(&folded.apply(&p, DEFAULT_FUEL).unwrap(), &back);
        prop_assert_eq!(back, p.solutions().unwrap());
    }

    #[test]
    fn halted_runs_survive_more_fuel(m in machine_strategy(), x in input_strategy(), f in 0u64..60, extra in 0u64..60) {
        let first = m.run(&x, f).unwrap();
        match &first {
            RunOutcome::Halted { .. } => prop_assert_eq!(m.run(&x, f + extra).unwrap(), first),
            RunOutcome::OutOfFuel { steps } => prop_assert_eq!(*steps, f),
        }
    }

    #[test]
    fn universal_apply_matches_direct_runs(m in machine_strategy(), x in input_strategy(), f in 0u64..80) {
        let program = m.encode().into_expression();
        prop_assert_eq!(universal_apply(&program, &x, f), m.run(&x, f).unwrap());
    }

    #[test]
    fn codec_round_trips_and_separates(a in machine_strategy(), b in machine_strategy()) {
        let (pa, pb) = (a.encode(), b.encode());
        prop_assert_eq!(&Program::decode(pa.expression()).unwrap(), &a);
        prop_assert_eq!(a == b, pa.expression() == pb.expression());
    }

    #[test]
    fn dovetail_emits_exactly_the_pairs_halting_within_their_share(
        pool in proptest::collection::vec((machine_strategy(), input_strategy()), 1..7),
        budget in 1u64..40,
    ) {
        let pairs: Vec<(Expression, Expression)> =
            pool.iter().map(|(m, x)| (m.encode().into_expression(), x.clone())).collect();
        for strategy in Sweep::all() {
            let run = dovetail(pairs.clone(), budget, strategy);
            let emitted: BTreeSet<usize> = run.emitted_pairs().into_iter().collect();
            for (j, (m, x)) in pool.iter().enumerate() {
                let share = budget.saturating_sub(j as u64);
                let halts = j < budget as usize && m.run(x, share).unwrap().is_halted();
                prop_assert_eq!(emitted.contains(&j), halts, "pair {} at budget {} ({:?})", j, budget, strategy);
            }
            for e in &run.emissions {
                let (m, x) = &pool[e.pair];
                prop_assert_eq!(m.run(x, e.steps).unwrap(), RunOutcome::Halted { result: e.result.clone(), steps: e.steps });
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn definite_flags_never_flip_with_more_fuel(f in 1u64..200, extra in 0u64..400, s in proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..3)) {
        let (halting, halting_ev) = halting_demo(halting_demo_pool());
        let ab = Alphabet::of("ab").unwrap();
        let s = Expression::from_symbols(s);
        let delta = Problem::delta(Universe::enumerated(ab.clone(), None), &s).unwrap();
        let delta_ev = Evidence {
            decider: Some(("δ".into(), delta_machine(&ab, &s).unwrap())),
            known_solution: Some(s.clone()),
            ..Evidence::default()
        };
        for (p, ev) in [(&halting, &halting_ev), (&delta, &delta_ev)] {
            let low = classify(p, ev, f).unwrap();
            let high = classify(p, ev, f + extra).unwrap();
            let (a, b) = (low.flags.raw(), high.flags.raw());
            for (x, y) in [(a.solvable, b.solvable), (a.finite, b.finite), (a.expressible, b.expressible), (a.resolvable, b.resolvable)] {
                prop_assert!(!x.is_definite() || x == y, "{:?} became {:?} on {}", x, y, p.label());
            }
        }
    }

    #[test]
    fn accepted_deciders_make_problems_expressible(s in proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..4)) {
        let ab = Alphabet::of("ab").unwrap();
        let s = Expression::from_symbols(s);
        let u = Universe::finite(expressions_up_to(&ab, 4)).unwrap();
        let p = Problem::delta(u.clone(), &s).unwrap();
        let m = delta_machine(&ab, &s).unwrap();
        let inputs = u.all_members().unwrap();
        prop_assert!(is_decision_solution(&m, &p, &inputs, 1_000).unwrap().is_accept());
        let ev = Evidence { decider: Some(("δ".into(), m)), ..Evidence::default() };
        let report = classify(&p, &ev, 1_000).unwrap();
        prop_assert_eq!(report.flags.expressible(), Flag::Yes);
        prop_assert!(report.witnesses.iter().any(|w| w.starts_with("decider δ accepted")), "{:?}", report.witnesses);
    }
}

fn symbol_space() -> ProblemSpace {
    ProblemSpace::new(Universe::of(&["a", "b", "c"]).unwrap()).unwrap()
}

// every table function on {a, b, c}, each carrying a symbol-map program
fn programmed_functions(space: &ProblemSpace) -> Vec<ElementFn> {
    let abc = Alphabet::of("abc").unwrap();
    space
        .all_functions()
        .unwrap()
        .into_iter()
        .map(|f| {
            let g = f.clone();
            let m = symbol_map_machine(&abc, move |c| {
                g.apply(&Expression::from_symbols(vec![c]))
                    .unwrap()
                    .symbols()[0]
            })
            .unwrap();
            f.with_program(m.encode())
        })
        .collect()
}

fn pick(fns: &[ElementFn], mask: u32) -> FunctionSet {
    let chosen: Vec<ElementFn> = fns
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, f)| f.clone())
        .collect();
    FunctionSet::new(chosen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn learners_are_unions_and_subjects_are_learners(fmask in 1u32..(1 << 27), smask in 0u32..8, pmask in 0u32..8) {
        let space = symbol_space();
        let fns = programmed_functions(&space);
        let set = pick(&fns, fmask);
        let input = space.subset(smask);
        let sigma = space.sigma(pmask);
        for bind in [Binding::Unbound, Binding::Intersect, Binding::PostFilter] {
            let learner = Resolver::Learner { fns: set.clone(), input: input.clone(), bind };
            let out = learner.resolve_on(sigma).unwrap();
            let mut union = SolutionSet::new();
            for f in set.members() {
                let perceiver = Resolver::Perceiver { f: f.clone(), input: input.clone(), bind };
                union = union.union(&perceiver.resolve_on(sigma).unwrap());
            }
            prop_assert_eq!(&out, &union);
            let subject = Resolver::Subject { library: set.clone(), input: input.clone(), bind, fuel: 1_000 };
            prop_assert_eq!(subject.resolve_on(sigma).unwrap(), out);
        }
    }

    #[test]
    fn adapter_range_and_power_grow_with_the_input(small in 0u32..8, extra in 0u32..8) {
        let space = symbol_space();
        let large = small | extra;
        let adapter = |mask| Resolver::Adapter { set: space.subset(mask), bind: Binding::Intersect };
        let a = range_power(&adapter(small), &space, Sweep::Sequential).unwrap();
        let b = range_power(&adapter(large), &space, Sweep::Sequential).unwrap();
        prop_assert!(a.range.iter().all(|m| b.in_range(*m)));
        prop_assert!(a.power.iter().all(|m| b.in_power(*m)));
        if large != small {
            prop_assert!(a.range.len() < b.range.len());
            prop_assert!(a.power.len() < b.power.len());
        }
    }

    #[test]
    fn resolved_solvable_problems_are_solved(kind in 0usize..5, smask in 0u32..8, fmask in 1u32..(1 << 27), bind in 0usize..3) {
        let space = symbol_space();
        let fns = programmed_functions(&space);
        let bind = [Binding::Unbound, Binding::Intersect, Binding::PostFilter][bind];
        let input = space.subset(smask);
        let set = pick(&fns, fmask);
        let r = match kind {
            0 => Resolver::Mechanism(space.members()[smask as usize % 3].clone()),
            1 => Resolver::Adapter { set: input, bind },
            2 => Resolver::Perceiver { f: set.members()[0].clone(), input, bind },
            3 => Resolver::Learner { fns: set, input, bind },
            _ => Resolver::Subject { library: set, input, bind, fuel: 1_000 },
        };
        let report = range_power(&r, &space, Sweep::Sequential).unwrap();
        for &m in &report.power {
            prop_assert!(m == 0 || report.in_range(m), "{} resolves #{} without solving it", r, m);
        }
    }
}

#[test]
fn each_length_fills_its_index_block() {
    for size in 1..=4u64 {
        let a = alphabet(size as usize);
        let mut start = 0u64;
        for n in 0..6u32 {
            let count = size.pow(n);
            let block: BTreeSet<Expression> =
                (start..start + count).map(|i| a.enumerate(i)).collect();
            assert_eq!(block.len() as u64, count);
            assert!(block.iter().all(|e| e.len() == n as usize));
            assert_eq!(a.enumerate(start + count).len(), n as usize + 1);
            start += count;
        }
    }
}
