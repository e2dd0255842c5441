//! Games built from sequents so that a game-theoretic verdict mirrors
//! provability. Each constructor returns the game together with the profile
//! the equivalence speaks about; the equivalences hold in every logic mode.

use resgame_core::coop::tensor_fold;
use resgame_core::formula::lolli;
use resgame_core::{Formula, Game, LogicMode, Profile, ResourceBag};

/// The sequent packaged as a single formula: tensor of the assumptions,
/// lollipop into the conclusion. Provable from nothing iff the sequent holds.
pub fn packaged(gamma: &ResourceBag, delta: &Formula) -> Formula {
    lolli(tensor_fold(gamma), delta.clone())
}

/// One-player game where contributing exactly the assumptions is a
/// dichotomous equilibrium iff the sequent is provable.
pub fn validity_as_nash(
    gamma: &ResourceBag,
    delta: &Formula,
    mode: LogicMode,
) -> (Game, Profile) {
    let endowment = gamma.union(&ResourceBag::singleton(delta.clone()));
    let game = Game::new(mode, vec!["1".into()], vec![delta.clone()], vec![endowment])
        .expect("reduction game is valid");
    (game, Profile::new(vec![gamma.clone()]))
}

/// One-player game where contributing the packaged sequent fails to be a
/// parsimonious equilibrium iff the sequent is provable.
pub fn validity_as_instability(
    gamma: &ResourceBag,
    delta: &Formula,
    mode: LogicMode,
) -> (Game, Profile) {
    let phi = packaged(gamma, delta);
    let game = Game::new(
        mode,
        vec!["1".into()],
        vec![phi.clone()],
        vec![ResourceBag::singleton(phi.clone())],
    )
    .expect("reduction game is valid");
    (game, Profile::new(vec![ResourceBag::singleton(phi)]))
}

/// Two-player game where the empty profile is rationally eliminable iff the
/// sequent is not provable; holds under both preference kinds.
pub fn invalidity_as_elimination(
    gamma: &ResourceBag,
    delta: &Formula,
    mode: LogicMode,
) -> (Game, Profile) {
    let phi = packaged(gamma, delta);
    let game = Game::new(
        mode,
        vec!["1".into(), "2".into()],
        vec![phi.clone(), Formula::One],
        vec![ResourceBag::new(), ResourceBag::singleton(phi)],
    )
    .expect("reduction game is valid");
    (
        game,
        Profile::new(vec![ResourceBag::new(), ResourceBag::new()]),
    )
}

/// One-player game where the empty profile is rationally constructible under
/// dichotomous preferences iff the sequent is provable.
pub fn validity_as_construction(
    gamma: &ResourceBag,
    delta: &Formula,
    mode: LogicMode,
) -> (Game, Profile) {
    let phi = packaged(gamma, delta);
    let game = Game::new(
        mode,
        vec!["1".into()],
        vec![phi.clone()],
        vec![ResourceBag::singleton(phi)],
    )
    .expect("reduction game is valid");
    (game, Profile::new(vec![ResourceBag::new()]))
}

/// Two-player game where handing everything to player one yields a profile
/// that is rationally constructible under parsimonious preferences iff the
/// sequent is not provable.
pub fn invalidity_as_construction(
    gamma: &ResourceBag,
    delta: &Formula,
    mode: LogicMode,
) -> (Game, Profile) {
    let phi = packaged(gamma, delta);
    let game = Game::new(
        mode,
        vec!["1".into(), "2".into()],
        vec![phi.clone(), Formula::One],
        vec![ResourceBag::singleton(phi.clone()), ResourceBag::new()],
    )
    .expect("reduction game is valid");
    (
        game,
        Profile::new(vec![ResourceBag::singleton(phi), ResourceBag::new()]),
    )
}
