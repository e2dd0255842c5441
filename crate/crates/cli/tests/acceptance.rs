//! Acceptance suite. One test per criterion; each prints a single
//! `ACCEPTANCE <n> <name>: pass|FAIL` line (run with `--nocapture` to see
//! the lines for passing criteria too).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rand::Rng;
use resgame_core::sequent::{AFFINE_MALL, LINEAR_MALL, LINEAR_MLL};
use resgame_core::{
    parse_formula, parse_game, parse_profile, parse_sequent, Caps, CoalitionGame, CoopModel,
    Formula, Fragment, Game, LogicMode, PrefKind, Profile, Prover, ProverLimits, ResourceBag,
    Sequent, Solver, Weakening,
};
use resgame_oracles::{
    gen, oracle_constructible, oracle_eliminable, oracle_is_nash, oracle_prove, reductions,
};

fn criterion<F: FnOnce()>(name: &str, f: F) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => println!("ACCEPTANCE {name}: pass"),
        Err(e) => {
            println!("ACCEPTANCE {name}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn fixture_game(name: &str) -> Game {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    parse_game(&std::fs::read_to_string(&path).unwrap())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn solver() -> Solver {
    Solver::new(ProverLimits::default(), Caps::default())
}

fn f(text: &str) -> Formula {
    parse_formula(text, Fragment::Mall).unwrap()
}

fn bag(texts: &[&str]) -> ResourceBag {
    let mut out = ResourceBag::new();
    for t in texts {
        out.insert(f(t));
    }
    out
}

fn profile(bags: &[&[&str]]) -> Profile {
    Profile::new(bags.iter().map(|b| bag(b)).collect())
}

/// Sorted copy, so equilibrium sets compare independently of sweep order.
fn sorted(mut profiles: Vec<Profile>) -> Vec<Profile> {
    profiles.sort();
    profiles
}

#[test]
fn criterion_1_prover_fixtures() {
    criterion("1 prover-fixtures", || {
        let prover = Prover::new(ProverLimits::default());
        let p = |text: &str, mode: LogicMode| {
            prover
                .prove(&parse_sequent(text, mode.fragment).unwrap(), mode)
                .unwrap()
                .provable
        };

        assert!(p("A |- A", LINEAR_MALL) && p("A |- A", AFFINE_MALL), "ax");
        assert!(p("|- 1", LINEAR_MALL) && p("|- 1", AFFINE_MALL), "1R");
        assert!(!p("A, B |- A", LINEAR_MALL), "no weakening in linear");
        assert!(p("A, B |- A", AFFINE_MALL), "weakening in affine");
        assert!(
            !p("A |- A * A", LINEAR_MALL) && !p("A |- A * A", AFFINE_MALL),
            "no contraction in either mode"
        );

        // the ten connective equivalences, provable in both directions
        let equivalences = [
            ("~ ~ A", "A"),
            ("~(A & B)", "~A + ~B"),
            ("A | B", "~A -o B"),
            ("~(A * B)", "~A | ~B"),
            ("A | bot", "A"),
            ("A * 1", "A"),
            ("A & top", "A"),
            ("A + 0", "A"),
            ("0", "~top"),
            ("bot", "~1"),
        ];
        for (l, r) in equivalences {
            assert!(p(&format!("{l} |- {r}"), LINEAR_MALL), "{l} |- {r}");
            assert!(p(&format!("{r} |- {l}"), LINEAR_MALL), "{r} |- {l}");
        }

        // the water-splitting objectives: oxygen for the fish under four
        // contexts, and the full outcome for the thirsty owner
        const D: &str = "H2O -o ~T";
        const E: &str = "H2O * H2O -o H2 * H2 * O2";
        assert!(p(&format!("H2O, H2O, {E} |- O2"), AFFINE_MALL));
        assert!(p(&format!("H2O, H2O, H2O, {E} |- O2"), AFFINE_MALL));
        assert!(p(&format!("{D}, H2O, H2O, {E} |- O2"), AFFINE_MALL));
        assert!(p(&format!("{D}, H2O, H2O, H2O, {E} |- O2"), AFFINE_MALL));
        assert!(p(&format!("{D}, {E}, H2O, H2O, H2O |- O2 * ~T"), AFFINE_MALL));
    });
}

#[test]
fn criterion_2_elimination_fixture() {
    criterion("2 elimination-fixture", || {
        let g = fixture_game("elim.rg");
        let s = solver();

        let equilibria = s.all_equilibria(&g, PrefKind::Dichotomous).unwrap();
        assert_eq!(equilibria.len(), 4, "every profile is an equilibrium");
        assert_eq!(equilibria, s.profiles(&g).unwrap());

        let swapped = g
            .with_endowments(vec![bag(&["B"]), bag(&["A"])])
            .unwrap();
        assert_eq!(
            s.all_equilibria(&swapped, PrefKind::Dichotomous).unwrap(),
            vec![profile(&[&["B"], &["A"]])],
            "swapping endowments leaves one equilibrium"
        );

        assert!(s
            .rationally_eliminable(&g, &profile(&[&[], &[]]), PrefKind::Dichotomous)
            .unwrap());
        assert!(
            !s.rationally_eliminable(&g, &profile(&[&["A"], &["B"]]), PrefKind::Dichotomous)
                .unwrap(),
            "full-pool outcomes resist elimination"
        );
    });
}

#[test]
fn criterion_3_construction_fixture() {
    criterion("3 construction-fixture", || {
        let h = fixture_game("h.rg");
        let s = solver();

        assert!(
            s.all_equilibria(&h, PrefKind::Parsimonious).unwrap().is_empty(),
            "no parsimonious equilibrium exists"
        );

        let handed_over = h
            .with_endowments(vec![ResourceBag::new(), bag(&["A", "A"])])
            .unwrap();
        assert_eq!(
            s.all_equilibria(&handed_over, PrefKind::Parsimonious).unwrap(),
            vec![profile(&[&[], &["A", "A"]])]
        );

        let wanted = profile(&[&["A"], &["A"]]);
        let witness = s
            .rationally_constructible(&h, &wanted, PrefKind::Parsimonious)
            .unwrap()
            .expect("the outcome {A, A} is constructible");
        let redistributed = h
            .with_endowments(witness.redistribution.bags().to_vec())
            .unwrap();
        witness.profile.validate_in(&redistributed).unwrap();
        assert_eq!(witness.profile.outcome(), wanted.outcome());
        assert!(s
            .is_nash(&redistributed, &witness.profile, PrefKind::Parsimonious)
            .unwrap());
    });
}

#[test]
fn criterion_4_water_splitting_fixture() {
    criterion("4 water-splitting-fixture", || {
        let g = fixture_game("alanfish.rg");
        let s = solver();
        const D: &str = "H2O -o ~T";
        const E: &str = "H2O * H2O -o H2 * H2 * O2";

        let expected: Vec<Profile> = [
            (vec![], 0),
            (vec![], 1),
            (vec![], 2),
            (vec![D], 0),
            (vec![D], 1),
            (vec![D], 2),
            (vec![E], 2),
            (vec![D, E], 2),
            (vec![D, E], 3),
        ]
        .into_iter()
        .map(|(a, waters)| {
            let mut fish = ResourceBag::new();
            fish.insert_many(f("H2O"), waters);
            Profile::new(vec![bag(&a), fish])
        })
        .collect();
        let dichotomous = s.all_equilibria(&g, PrefKind::Dichotomous).unwrap();
        assert_eq!(sorted(dichotomous), sorted(expected), "nine dichotomous equilibria");

        // 16-cell satisfaction table: the fish needs the electrolysis process
        // plus two waters, the owner additionally needs drinking and a third
        for a_choice in [vec![], vec![D], vec![E], vec![D, E]] {
            for waters in 0..=3usize {
                let mut outcome = bag(&a_choice);
                outcome.insert_many(f("H2O"), waters);
                let fish_ok = a_choice.contains(&E) && waters >= 2;
                let owner_ok = a_choice.len() == 2 && waters == 3;
                assert_eq!(s.satisfies(&g, &outcome, 0).unwrap(), owner_ok, "{outcome}");
                assert_eq!(s.satisfies(&g, &outcome, 1).unwrap(), fish_ok, "{outcome}");
            }
        }

        assert_eq!(
            s.all_equilibria(&g, PrefKind::Parsimonious).unwrap(),
            vec![profile(&[&[], &[]])]
        );

        let second = g
            .with_endowments(vec![bag(&[D, "H2O", "H2O", "H2O"]), bag(&[E])])
            .unwrap();
        assert_eq!(
            sorted(s.all_equilibria(&second, PrefKind::Parsimonious).unwrap()),
            sorted(vec![
                profile(&[&[], &[]]),
                profile(&[&[D, "H2O", "H2O", "H2O"], &[E]]),
            ]),
            "redistribution constructs the all-satisfied equilibrium"
        );
    });
}

#[test]
fn criterion_5_divorce_fixture() {
    criterion("5 divorce-fixture", || {
        let g = fixture_game("divorce.rg");
        let s = solver();
        const MAKER: &str = "flour -o bread";

        assert_eq!(
            s.all_equilibria(&g, PrefKind::Parsimonious).unwrap(),
            vec![profile(&[&[], &[]])]
        );

        // original endowments: only the clock holder decides the clock goal,
        // bread needs flour plus the breadmaker from the other side
        for b_choice in bag(&["flour", "flour", MAKER]).multisubsets() {
            for a_choice in [bag(&[]), bag(&["aclock"])] {
                let outcome = a_choice.union(&b_choice);
                let ann_ok = b_choice.count(&f("flour")) >= 1 && b_choice.count(&f(MAKER)) == 1;
                let bernard_ok = !a_choice.is_empty();
                assert_eq!(s.satisfies(&g, &outcome, 0).unwrap(), ann_ok, "{outcome}");
                assert_eq!(s.satisfies(&g, &outcome, 1).unwrap(), bernard_ok, "{outcome}");
            }
        }

        let arbitrated = g
            .with_endowments(vec![bag(&["flour", MAKER]), bag(&["flour", "aclock"])])
            .unwrap();
        assert_eq!(
            s.all_equilibria(&arbitrated, PrefKind::Parsimonious).unwrap(),
            vec![profile(&[&["flour", MAKER], &["aclock"]])],
            "the arbitrated game has exactly the desired equilibrium"
        );

        // arbitrated endowments: bread now settles on Ann's own side
        for b_choice in bag(&["flour", "aclock"]).multisubsets() {
            for a_choice in bag(&["flour", MAKER]).multisubsets() {
                let outcome = a_choice.union(&b_choice);
                let ann_ok = a_choice.count(&f(MAKER)) == 1
                    && (a_choice.count(&f("flour")) + b_choice.count(&f("flour")) >= 1);
                let bernard_ok = b_choice.count(&f("aclock")) == 1;
                assert_eq!(s.satisfies(&arbitrated, &outcome, 0).unwrap(), ann_ok, "{outcome}");
                assert_eq!(
                    s.satisfies(&arbitrated, &outcome, 1).unwrap(),
                    bernard_ok,
                    "{outcome}"
                );
            }
        }

        assert!(s
            .rationally_eliminable(&g, &profile(&[&[], &[]]), PrefKind::Parsimonious)
            .unwrap());
        let both_satisfied = profile(&[&["aclock"], &["flour", MAKER]]);
        assert!(s
            .rationally_constructible(&g, &both_satisfied, PrefKind::Parsimonious)
            .unwrap()
            .is_some());
    });
}

#[test]
fn criterion_6_coalition_tables() {
    criterion("6 coalition-tables", || {
        let s = solver();
        let base = fixture_game("aigcrg-basic.rg");

        let all_goals = CoalitionGame::new(base.clone(), CoopModel::Aigcrg);
        let values: Vec<u64> = s
            .value_table(&all_goals)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        assert_eq!(values, [0, 1, 0, 1, 0, 1, 1, 1], "all-goals values");

        let max_goals = CoalitionGame::new(base, CoopModel::Mnigcrg);
        let values: Vec<u64> = s
            .value_table(&max_goals)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        assert_eq!(values, [0, 1, 0, 1, 1, 2, 2, 3], "max-goals values");

        let breakfast = CoalitionGame::new(fixture_game("breakfast.rg"), CoopModel::Aigcrg);
        let winning: Vec<Vec<usize>> = s
            .value_table(&breakfast)
            .unwrap()
            .into_iter()
            .filter(|(_, v)| *v == 1)
            .map(|(c, _)| c)
            .collect();
        assert_eq!(winning, vec![vec![1], vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(s.veto_players(&breakfast).unwrap(), vec![1]);
        assert_eq!(s.dummy_players(&breakfast).unwrap(), vec![2]);

        assert!(s.in_core(&breakfast, &[0.0, 1.0, 0.0]).unwrap());
        let mut members = Vec::new();
        for tenths_1 in 0..=10u32 {
            for tenths_2 in 0..=10 - tenths_1 {
                let tenths_3 = 10 - tenths_1 - tenths_2;
                let payoff = [
                    f64::from(tenths_1) / 10.0,
                    f64::from(tenths_2) / 10.0,
                    f64::from(tenths_3) / 10.0,
                ];
                if s.in_core(&breakfast, &payoff).unwrap() {
                    assert_eq!(tenths_2, 10, "core members pay everything to the veto player");
                    members.push(payoff);
                }
            }
        }
        assert_eq!(members.len(), 1, "the grid meets the core exactly once");
    });
}

#[test]
fn criterion_7_property_suites() {
    criterion("7 property-suites", || {
        let prover = Prover::new(ProverLimits::default());
        let s = solver();

        // provability is monotone from linear to affine, fragment fixed
        let mut rng = gen::rng(0xACCE01);
        for round in 0..300 {
            let fragment = if round % 2 == 0 { Fragment::Mll } else { Fragment::Mall };
            let seq = gen::sequent(&mut rng, fragment, 9);
            let linear = LogicMode { weakening: Weakening::Linear, fragment };
            let affine = LogicMode { weakening: Weakening::Affine, fragment };
            if prover.prove(&seq, linear).unwrap().provable {
                assert!(
                    prover.prove(&seq, affine).unwrap().provable,
                    "mode monotonicity: {seq}"
                );
            }
        }
        println!("  mode monotonicity: 300 rounds");

        // affine provability equals linear provability of goal-tensor-top
        let mut rng = gen::rng(0xACCE02);
        for _ in 0..300 {
            let (gamma, goal) = gen::intuitionistic_sequent(&mut rng, Fragment::Mall, 9);
            let affine = prover.entails(&gamma, &goal, AFFINE_MALL).unwrap();
            let padded = Sequent::new(
                gamma.clone(),
                ResourceBag::singleton(resgame_core::formula::tensor(goal.clone(), Formula::Top)),
            );
            let linear = prover.prove(&padded, LINEAR_MALL).unwrap().provable;
            assert_eq!(affine, linear, "top-embedding: {gamma:?} |- {goal}");
        }
        println!("  top-embedding: 300 rounds");

        // dichotomous strict preference implies parsimonious strict preference,
        // and parsimonious equilibria are dichotomous equilibria
        let mut rng = gen::rng(0xACCE03);
        for _ in 0..100 {
            let mode = if rng.gen_bool(0.5) { AFFINE_MALL } else { LINEAR_MALL };
            let g = gen::tiny_game(&mut rng, mode);
            for i in 0..g.player_count() {
                let p = gen::profile(&mut rng, &g);
                let q = gen::profile(&mut rng, &g);
                if s.prefers(&g, i, &p, &q, PrefKind::Dichotomous).unwrap() {
                    assert!(
                        s.prefers(&g, i, &p, &q, PrefKind::Parsimonious).unwrap(),
                        "preference implication in {}",
                        g.show_profile(&p)
                    );
                }
            }
            let parsimonious = s.all_equilibria(&g, PrefKind::Parsimonious).unwrap();
            let dichotomous: BTreeSet<Profile> =
                s.all_equilibria(&g, PrefKind::Dichotomous).unwrap().into_iter().collect();
            for p in parsimonious {
                assert!(
                    dichotomous.contains(&p),
                    "parsimonious equilibria are dichotomous equilibria"
                );
            }
        }
        println!("  preference and equilibrium implications: 100 games");

        // the four provability reductions, each on 100 random sequents
        let mut rng = gen::rng(0xACCE04);
        for round in 0..100 {
            let mode = if round % 2 == 0 { AFFINE_MALL } else { LINEAR_MALL };
            let (gamma, delta) = gen::intuitionistic_sequent(&mut rng, Fragment::Mall, 8);
            let provable = prover.entails(&gamma, &delta, mode).unwrap();

            let (g, p) = reductions::validity_as_nash(&gamma, &delta, mode);
            assert_eq!(
                s.is_nash(&g, &p, PrefKind::Dichotomous).unwrap(),
                provable,
                "validity as stability"
            );

            let (g, p) = reductions::validity_as_instability(&gamma, &delta, mode);
            assert_eq!(
                !s.is_nash(&g, &p, PrefKind::Parsimonious).unwrap(),
                provable,
                "validity as instability"
            );

            let (g, p) = reductions::invalidity_as_elimination(&gamma, &delta, mode);
            for kind in [PrefKind::Dichotomous, PrefKind::Parsimonious] {
                assert_eq!(
                    s.rationally_eliminable(&g, &p, kind).unwrap(),
                    !provable,
                    "invalidity as elimination ({kind})"
                );
            }

            let (g, p) = reductions::validity_as_construction(&gamma, &delta, mode);
            assert_eq!(
                s.rationally_constructible(&g, &p, PrefKind::Dichotomous).unwrap().is_some(),
                provable,
                "validity as construction"
            );
            let (g, p) = reductions::invalidity_as_construction(&gamma, &delta, mode);
            assert_eq!(
                s.rationally_constructible(&g, &p, PrefKind::Parsimonious).unwrap().is_some(),
                !provable,
                "invalidity as construction"
            );
        }
        println!("  provability reductions: 100 rounds each");

        // optimized paths agree with the definitional oracles
        let mut rng = gen::rng(0xACCE05);
        let modes = [LINEAR_MLL, LINEAR_MALL, resgame_core::sequent::AFFINE_MLL, AFFINE_MALL];
        for round in 0..300 {
            let mode = modes[round % modes.len()];
            let seq = gen::sequent(&mut rng, mode.fragment, 8);
            assert_eq!(
                prover.prove(&seq, mode).unwrap().provable,
                oracle_prove(&seq, mode),
                "prove agreement: {seq} in {mode}"
            );
        }
        println!("  prover-oracle agreement: 300 rounds");

        let mut rng = gen::rng(0xACCE06);
        for round in 0..100 {
            let mode = modes[round % modes.len()];
            let g = gen::tiny_game(&mut rng, mode);
            let p = gen::profile(&mut rng, &g);
            let kind = if round % 2 == 0 { PrefKind::Dichotomous } else { PrefKind::Parsimonious };
            assert_eq!(
                s.is_nash(&g, &p, kind).unwrap(),
                oracle_is_nash(&prover, &g, &p, kind),
                "equilibrium agreement"
            );
        }
        println!("  equilibrium-oracle agreement: 100 games");

        let mut rng = gen::rng(0xACCE07);
        for round in 0..50 {
            let mode = modes[round % modes.len()];
            let g = gen::tiny_game(&mut rng, mode);
            let p = gen::profile(&mut rng, &g);
            let kind = if round % 2 == 0 { PrefKind::Dichotomous } else { PrefKind::Parsimonious };
            assert_eq!(
                s.rationally_eliminable(&g, &p, kind).unwrap(),
                oracle_eliminable(&prover, &g, &p, kind),
                "elimination agreement"
            );
        }
        println!("  elimination-oracle agreement: 50 games");

        let mut rng = gen::rng(0xACCE08);
        for round in 0..50 {
            let mode = modes[round % modes.len()];
            let g = gen::tiny_game(&mut rng, mode);
            let p = gen::profile(&mut rng, &g);
            let kind = if round % 2 == 0 { PrefKind::Dichotomous } else { PrefKind::Parsimonious };
            assert_eq!(
                s.rationally_constructible(&g, &p, kind).unwrap().is_some(),
                oracle_constructible(&prover, &g, &p, kind),
                "construction agreement"
            );
        }
        println!("  construction-oracle agreement: 50 games");
    });
}

#[test]
fn criterion_8_linear_joint_performance() {
    criterion("8 linear-joint-performance", || {
        let s = solver();
        let g = Game::new(
            LINEAR_MLL,
            vec!["1".into(), "2".into()],
            vec![f("D"), f("D")],
            vec![bag(&["A * B"]), bag(&["A * C"])],
        )
        .unwrap();
        let cg = CoalitionGame::new(g, CoopModel::Aigcrg);

        assert!(s.canperform(&cg, &[0], &bag(&["A", "B"])).unwrap());
        assert!(s.canperform(&cg, &[1], &bag(&["A", "C"])).unwrap());
        assert!(
            !s.canperform(&cg, &[0, 1], &bag(&["A", "B", "C"])).unwrap(),
            "the spare A cannot be discarded linearly"
        );
        assert!(s.canperform(&cg, &[0, 1], &bag(&["A", "A", "B", "C"])).unwrap());
    });
}
