//! Seeded random instances, sized so the brute-force oracles stay fast.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use resgame_core::formula::{atom, lolli, neg, plus, tensor, with};
use resgame_core::{Formula, Fragment, Game, LogicMode, Profile, ResourceBag, Sequent};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ATOMS: [&str; 3] = ["A", "B", "C"];

pub fn formula(rng: &mut ChaCha8Rng, depth: usize, fragment: Fragment) -> Formula {
    if depth == 0 || rng.gen_range(0..10) < 4 {
        return match rng.gen_range(0..12) {
            0 => Formula::One,
            1 if fragment == Fragment::Mall => Formula::Top,
            n => atom(ATOMS[n as usize % ATOMS.len()]),
        };
    }
    let arity = if fragment == Fragment::Mall { 5 } else { 3 };
    match rng.gen_range(0..arity) {
        0 => tensor(
            formula(rng, depth - 1, fragment),
            formula(rng, depth - 1, fragment),
        ),
        1 => lolli(
            formula(rng, depth - 1, fragment),
            formula(rng, depth - 1, fragment),
        ),
        2 => neg(formula(rng, depth - 1, fragment)),
        3 => with(
            formula(rng, depth - 1, fragment),
            formula(rng, depth - 1, fragment),
        ),
        _ => plus(
            formula(rng, depth - 1, fragment),
            formula(rng, depth - 1, fragment),
        ),
    }
}

/// Random two-sided sequent whose formula sizes sum to at most `max_size`.
pub fn sequent(rng: &mut ChaCha8Rng, fragment: Fragment, max_size: usize) -> Sequent {
    loop {
        let nl = rng.gen_range(0..=3);
        let nr = rng.gen_range(0..=2);
        let left: ResourceBag = (0..nl).map(|_| formula(rng, 2, fragment)).collect();
        let right: ResourceBag = (0..nr).map(|_| formula(rng, 2, fragment)).collect();
        let seq = Sequent::new(left, right);
        if seq.measure() <= max_size {
            return seq;
        }
    }
}

/// Assumption bag and single conclusion, bounded by summed formula size.
pub fn intuitionistic_sequent(
    rng: &mut ChaCha8Rng,
    fragment: Fragment,
    max_size: usize,
) -> (ResourceBag, Formula) {
    loop {
        let n = rng.gen_range(0..=2);
        let gamma: ResourceBag = (0..n).map(|_| formula(rng, 1, fragment)).collect();
        let delta = formula(rng, 2, fragment);
        if gamma.formula_size() + delta.size() <= max_size {
            return (gamma, delta);
        }
    }
}

/// One or two players, shallow goals, tiny endowments of shallow formulas.
pub fn tiny_game(rng: &mut ChaCha8Rng, mode: LogicMode) -> Game {
    let n = rng.gen_range(1..=2);
    let players = (1..=n).map(|i| i.to_string()).collect();
    let goals = (0..n).map(|_| formula(rng, 2, mode.fragment)).collect();
    let endowments = (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=2);
            (0..k).map(|_| formula(rng, 1, mode.fragment)).collect()
        })
        .collect();
    Game::new(mode, players, goals, endowments).expect("generated game is valid")
}

/// Uniformly random contribution per player.
pub fn profile(rng: &mut ChaCha8Rng, g: &Game) -> Profile {
    Profile::new(
        g.endowments()
            .iter()
            .map(|e| {
                let mut c = ResourceBag::new();
                for (f, m) in e.distinct() {
                    c.insert_many(f.clone(), rng.gen_range(0..=m));
                }
                c
            })
            .collect(),
    )
}
