//! Solver for individual resource games played over affine or linear
//! multiplicative (and optionally additive) logic.
//!
//! The crate is organised in layers:
//!
//! * [`formula`], [`bag`], [`sequent`], [`parse`]: formulas in a reduced
//!   connective set, resource multisets, two-sided sequents, and the concrete
//!   ASCII syntax for all of them.
//! * [`prover`]: a memoizing, cut-free backward proof search with four modes
//!   (linear/affine crossed with the multiplicative-only and full fragments).
//! * [`games`]: endowment games, preference relations, Nash equilibria,
//!   redistribution, rational elimination and construction.
//! * [`gamefile`]: the line-oriented text format for games and profiles.
//! * [`coop`]: the cooperative reading of the same games, with coalition
//!   values, veto and dummy players, and core membership.

pub mod bag;
pub mod coop;
mod exec;
pub mod formula;
pub mod gamefile;
pub mod games;
pub mod parse;
pub mod prover;
pub mod sequent;

pub use bag::ResourceBag;
pub use coop::{CoalitionGame, CoopModel};
pub use formula::Formula;
pub use gamefile::{parse_game, parse_profile, serialize_game, GameTextError};
pub use games::{
    Caps, ConstructionWitness, Game, PrefKind, Profile, Redistribution, SolveError, Solver,
};
pub use parse::{parse_formula, parse_sequent, ParseError};
pub use prover::{ProofNode, ProofResult, Prover, ProverError, ProverLimits, ProverStats};
pub use sequent::{Fragment, LogicMode, Sequent, Weakening};
