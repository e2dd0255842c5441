//! Brute-force reference implementations for the decision procedures in
//! `resgame-core`, seeded instance generators sized for them, and the
//! sequent-to-game reductions behind the metamorphic test suites.
//!
//! The oracles favour obviousness over speed: the proof oracle tries every
//! rule at every position with weakening as an explicit rule, and the game
//! oracles sweep every deviation, every redistribution, and every realising
//! profile. Keep instances small; none of this is budgeted.

pub mod gen;
pub mod reductions;

use std::collections::HashMap;

use resgame_core::games::bag_splits;
use resgame_core::{
    Formula, Game, LogicMode, PrefKind, Profile, Prover, ResourceBag, Sequent, Weakening,
};

/// Exhaustive cut-free proof search. Every rule application strictly shrinks
/// the summed formula size, so plain recursion with a verdict memo suffices.
pub fn oracle_prove(seq: &Sequent, mode: LogicMode) -> bool {
    let mut memo = HashMap::new();
    prove_rec(seq, mode.weakening, &mut memo)
}

fn prove_rec(seq: &Sequent, weak: Weakening, memo: &mut HashMap<Sequent, bool>) -> bool {
    if let Some(&known) = memo.get(seq) {
        return known;
    }
    let verdict = any_rule_closes(seq, weak, memo);
    memo.insert(seq.clone(), verdict);
    verdict
}

fn any_rule_closes(seq: &Sequent, weak: Weakening, memo: &mut HashMap<Sequent, bool>) -> bool {
    let left: Vec<Formula> = seq.left.distinct().map(|(f, _)| f.clone()).collect();
    let right: Vec<Formula> = seq.right.distinct().map(|(f, _)| f.clone()).collect();

    if right.iter().any(|f| matches!(f, Formula::Top)) {
        return true;
    }
    if seq.left.size() == 1 && seq.right.size() == 1 && seq.right.contains(&left[0]) {
        return true;
    }
    if seq.left.is_empty() && seq.right.size() == 1 && right[0] == Formula::One {
        return true;
    }

    for f in &left {
        let rest = seq.left.minus_one(f);
        match f {
            Formula::One => {
                if prove_rec(&Sequent::new(rest, seq.right.clone()), weak, memo) {
                    return true;
                }
            }
            Formula::Neg(a) => {
                let prem = Sequent::new(rest, seq.right.plus_one((**a).clone()));
                if prove_rec(&prem, weak, memo) {
                    return true;
                }
            }
            Formula::Tensor(a, b) => {
                let grown = rest.plus_one((**a).clone()).plus_one((**b).clone());
                if prove_rec(&Sequent::new(grown, seq.right.clone()), weak, memo) {
                    return true;
                }
            }
            Formula::With(a, b) => {
                let first = Sequent::new(rest.plus_one((**a).clone()), seq.right.clone());
                let second = Sequent::new(rest.plus_one((**b).clone()), seq.right.clone());
                if prove_rec(&first, weak, memo) || prove_rec(&second, weak, memo) {
                    return true;
                }
            }
            Formula::Plus(a, b) => {
                let first = Sequent::new(rest.plus_one((**a).clone()), seq.right.clone());
                let second = Sequent::new(rest.plus_one((**b).clone()), seq.right.clone());
                if prove_rec(&first, weak, memo) && prove_rec(&second, weak, memo) {
                    return true;
                }
            }
            Formula::Lollipop(a, b) => {
                for gamma1 in rest.multisubsets() {
                    let gamma2 = rest.difference(&gamma1);
                    for delta1 in seq.right.multisubsets() {
                        let delta2 = seq.right.difference(&delta1);
                        let arg = Sequent::new(gamma1.clone(), delta1.plus_one((**a).clone()));
                        let res = Sequent::new(gamma2.plus_one((**b).clone()), delta2);
                        if prove_rec(&arg, weak, memo) && prove_rec(&res, weak, memo) {
                            return true;
                        }
                    }
                }
            }
            _ => {}
        }
    }

    for f in &right {
        let rest = seq.right.minus_one(f);
        match f {
            Formula::Neg(a) => {
                let prem = Sequent::new(seq.left.plus_one((**a).clone()), rest);
                if prove_rec(&prem, weak, memo) {
                    return true;
                }
            }
            Formula::Lollipop(a, b) => {
                let prem = Sequent::new(
                    seq.left.plus_one((**a).clone()),
                    rest.plus_one((**b).clone()),
                );
                if prove_rec(&prem, weak, memo) {
                    return true;
                }
            }
            Formula::With(a, b) => {
                let first = Sequent::new(seq.left.clone(), rest.plus_one((**a).clone()));
                let second = Sequent::new(seq.left.clone(), rest.plus_one((**b).clone()));
                if prove_rec(&first, weak, memo) && prove_rec(&second, weak, memo) {
                    return true;
                }
            }
            Formula::Plus(a, b) => {
                let first = Sequent::new(seq.left.clone(), rest.plus_one((**a).clone()));
                let second = Sequent::new(seq.left.clone(), rest.plus_one((**b).clone()));
                if prove_rec(&first, weak, memo) || prove_rec(&second, weak, memo) {
                    return true;
                }
            }
            Formula::Tensor(a, b) => {
                for gamma1 in seq.left.multisubsets() {
                    let gamma2 = seq.left.difference(&gamma1);
                    for delta1 in rest.multisubsets() {
                        let delta2 = rest.difference(&delta1);
                        let fst = Sequent::new(gamma1.clone(), delta1.plus_one((**a).clone()));
                        let snd = Sequent::new(gamma2.clone(), delta2.plus_one((**b).clone()));
                        if prove_rec(&fst, weak, memo) && prove_rec(&snd, weak, memo) {
                            return true;
                        }
                    }
                }
            }
            _ => {}
        }
    }

    if weak == Weakening::Affine {
        for f in &left {
            let prem = Sequent::new(seq.left.minus_one(f), seq.right.clone());
            if prove_rec(&prem, weak, memo) {
                return true;
            }
        }
        for f in &right {
            let prem = Sequent::new(seq.left.clone(), seq.right.minus_one(f));
            if prove_rec(&prem, weak, memo) {
                return true;
            }
        }
    }

    false
}

/// Goal satisfaction via the library prover, which the proof oracle
/// validates separately. Panics if the prover hits a limit; oracle instances
/// are supposed to be far below them.
pub fn oracle_satisfied(prover: &Prover, g: &Game, outcome: &ResourceBag, i: usize) -> bool {
    prover
        .entails(outcome, g.goal(i), g.mode())
        .expect("oracle instance exceeds prover limits")
}

/// Strict preference, each clause transcribed separately.
pub fn oracle_prefers(
    prover: &Prover,
    g: &Game,
    i: usize,
    p: &Profile,
    q: &Profile,
    kind: PrefKind,
) -> bool {
    let p_sat = oracle_satisfied(prover, g, &p.outcome(), i);
    let q_sat = oracle_satisfied(prover, g, &q.outcome(), i);
    let p_smaller = p.contribution(i).is_strict_subbag(q.contribution(i));
    match kind {
        PrefKind::Dichotomous => p_sat && !q_sat,
        PrefKind::Parsimonious => {
            (!p_sat && !q_sat && p_smaller)
                || (p_sat && !q_sat)
                || (p_sat && q_sat && p_smaller)
        }
    }
}

/// Definitional stability: no player strictly prefers any unilateral
/// deviation over the profile.
pub fn oracle_is_nash(prover: &Prover, g: &Game, p: &Profile, kind: PrefKind) -> bool {
    (0..g.player_count()).all(|i| {
        g.endowment(i).multisubsets().into_iter().all(|dev| {
            let q = p.replacing(i, dev);
            !oracle_prefers(prover, g, i, &q, p, kind)
        })
    })
}

/// All profiles of `g` with the given pooled outcome.
fn realizers(g: &Game, out: &ResourceBag) -> Vec<Profile> {
    bag_splits(out, g.player_count())
        .into_iter()
        .map(Profile::new)
        .filter(|p| p.validate_in(g).is_ok())
        .collect()
}

/// Definitional rational elimination: some redistribution leaves the
/// profile's outcome realised by no equilibrium.
pub fn oracle_eliminable(prover: &Prover, g: &Game, p: &Profile, kind: PrefKind) -> bool {
    let out = p.outcome();
    bag_splits(&g.pool(), g.player_count())
        .into_iter()
        .any(|bags| {
            let g2 = g.with_endowments(bags).expect("redistribution keeps the game valid");
            realizers(&g2, &out)
                .iter()
                .all(|q| !oracle_is_nash(prover, &g2, q, kind))
        })
}

/// Definitional rational construction: some redistribution has an
/// equilibrium realising the profile's outcome.
pub fn oracle_constructible(prover: &Prover, g: &Game, p: &Profile, kind: PrefKind) -> bool {
    let out = p.outcome();
    bag_splits(&g.pool(), g.player_count())
        .into_iter()
        .any(|bags| {
            let g2 = g.with_endowments(bags).expect("redistribution keeps the game valid");
            realizers(&g2, &out)
                .iter()
                .any(|q| oracle_is_nash(prover, &g2, q, kind))
        })
}
