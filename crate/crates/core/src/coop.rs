//! Cooperative reading of endowment games: what coalitions can do by pooling
//! endowments, coalition values, veto and dummy players, and the core.
//!
//! A coalition can perform a task bag `P` when its members can each commit a
//! sub-bag of their endowment whose join proves the tensor of `P`. Because
//! any sub-bag of the joined endowment splits back into per-member
//! commitments, capability only depends on the joined bag; the solver
//! memoizes on exactly that.

use std::collections::HashMap;

use crate::bag::ResourceBag;
use crate::exec;
use crate::formula::{tensor, Formula};
use crate::games::{Game, SolveError, Solver};
use crate::sequent::Weakening;

/// How a coalition's worth is measured: all member goals at once (a 0/1
/// simple game) or the largest number of member goals jointly performable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoopModel {
    Aigcrg,
    Mnigcrg,
}

impl std::fmt::Display for CoopModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoopModel::Aigcrg => write!(f, "aigcrg"),
            CoopModel::Mnigcrg => write!(f, "mnigcrg"),
        }
    }
}

impl std::str::FromStr for CoopModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aigcrg" => Ok(CoopModel::Aigcrg),
            "mnigcrg" => Ok(CoopModel::Mnigcrg),
            other => Err(format!(
                "unknown model {other:?}, expected \"aigcrg\" or \"mnigcrg\""
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionGame {
    base: Game,
    model: CoopModel,
}

impl CoalitionGame {
    pub fn new(base: Game, model: CoopModel) -> Self {
        CoalitionGame { base, model }
    }

    pub fn base(&self) -> &Game {
        &self.base
    }

    pub fn model(&self) -> CoopModel {
        self.model
    }

    /// The multiset of member goals, `{γ_i | i ∈ C}`.
    pub fn goal_bag(&self, coalition: &[usize]) -> ResourceBag {
        coalition
            .iter()
            .map(|&i| self.base.goal(i).clone())
            .collect()
    }
}

/// Tensor of the bag in canonical order; the empty bag is the unit.
pub fn tensor_fold(bag: &ResourceBag) -> Formula {
    let mut iter = bag.iter().cloned();
    match iter.next() {
        None => Formula::One,
        Some(first) => iter.fold(first, tensor),
    }
}

/// Every subset of `0..n`, smallest first, ties in index order.
pub fn all_coalitions(n: usize) -> Vec<Vec<usize>> {
    assert!(n < 64, "coalition masks are 64-bit");
    let mut out: Vec<Vec<usize>> = (0u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl Solver {
    fn normalize_coalition(
        &self,
        cg: &CoalitionGame,
        coalition: &[usize],
    ) -> Result<Vec<usize>, SolveError> {
        let n = cg.base().player_count();
        let mut c: Vec<usize> = coalition.to_vec();
        c.sort_unstable();
        c.dedup();
        if let Some(&bad) = c.iter().find(|&&i| i >= n) {
            return Err(SolveError::InvalidCoalition(format!(
                "player index {bad} out of range for {n} players"
            )));
        }
        Ok(c)
    }

    /// Whether the coalition can jointly perform the task bag: some sub-bag
    /// of the members' pooled endowments proves the tensor of `tasks`.
    pub fn canperform(
        &self,
        cg: &CoalitionGame,
        coalition: &[usize],
        tasks: &ResourceBag,
    ) -> Result<bool, SolveError> {
        let c = self.normalize_coalition(cg, coalition)?;
        let g = cg.base();
        let joint = c
            .iter()
            .fold(ResourceBag::new(), |acc, &i| acc.union(g.endowment(i)));
        let goal = tensor_fold(tasks);
        let key = (joint.clone(), goal.clone(), g.mode().weakening);
        if let Some(hit) = self.canperform_cached(key.clone()) {
            return Ok(hit);
        }
        let verdict = match g.mode().weakening {
            // weakening absorbs whatever a sub-bag would have dropped
            Weakening::Affine => self.prover().entails(&joint, &goal, g.mode())?,
            Weakening::Linear => {
                let count = joint.multisubset_count().unwrap_or(u128::MAX);
                if count > self.caps().max_profile_space {
                    return Err(SolveError::CapExceeded {
                        what: "joint endowment sub-bag sweep",
                        needed: count,
                        cap: self.caps().max_profile_space,
                    });
                }
                let mut subs = joint.multisubsets();
                subs.sort_by_key(|b| b.size());
                let mut found = false;
                for sub in subs {
                    if self.prover().entails(&sub, &goal, g.mode())? {
                        found = true;
                        break;
                    }
                }
                found
            }
        };
        self.canperform_store(key, verdict);
        Ok(verdict)
    }

    /// All sub-bags of the coalition's goal bag it can perform.
    pub fn goal_sets(
        &self,
        cg: &CoalitionGame,
        coalition: &[usize],
    ) -> Result<Vec<ResourceBag>, SolveError> {
        let c = self.normalize_coalition(cg, coalition)?;
        let mut out = Vec::new();
        for candidate in cg.goal_bag(&c).multisubsets() {
            if self.canperform(cg, &c, &candidate)? {
                out.push(candidate);
            }
        }
        Ok(out)
    }

    /// Coalition value under the game's model.
    pub fn value(&self, cg: &CoalitionGame, coalition: &[usize]) -> Result<u64, SolveError> {
        let c = self.normalize_coalition(cg, coalition)?;
        match cg.model() {
            CoopModel::Aigcrg => {
                if c.is_empty() {
                    return Ok(0);
                }
                Ok(self.canperform(cg, &c, &cg.goal_bag(&c))? as u64)
            }
            CoopModel::Mnigcrg => {
                let goals = cg.goal_bag(&c);
                let mut by_size: Vec<ResourceBag> = goals.multisubsets();
                by_size.sort_by(|a, b| b.size().cmp(&a.size()));
                for candidate in by_size {
                    if self.canperform(cg, &c, &candidate)? {
                        return Ok(candidate.size() as u64);
                    }
                }
                Ok(0)
            }
        }
    }

    /// Value of every coalition, smallest coalitions first.
    pub fn value_table(&self, cg: &CoalitionGame) -> Result<Vec<(Vec<usize>, u64)>, SolveError> {
        let n = cg.base().player_count();
        let total: u128 = if n < 64 { 1u128 << n } else { u128::MAX };
        if n >= 64 || total > self.caps().max_profile_space {
            return Err(SolveError::CapExceeded {
                what: "coalition sweep",
                needed: total,
                cap: self.caps().max_profile_space,
            });
        }
        let rows = exec::map_collect(all_coalitions(n), self.parallel(), |c| {
            self.value(cg, &c).map(|v| (c, v))
        });
        rows.into_iter().collect()
    }

    /// Players present in every winning coalition of a 0/1 game. With no
    /// winning coalition at all, everyone is a veto player.
    pub fn veto_players(&self, cg: &CoalitionGame) -> Result<Vec<usize>, SolveError> {
        if cg.model() != CoopModel::Aigcrg {
            return Err(SolveError::ModelMismatch { expected: "aigcrg" });
        }
        let n = cg.base().player_count();
        let table = self.value_table(cg)?;
        let winning: Vec<&Vec<usize>> = table
            .iter()
            .filter(|(_, v)| *v == 1)
            .map(|(c, _)| c)
            .collect();
        Ok((0..n)
            .filter(|i| winning.iter().all(|c| c.contains(i)))
            .collect())
    }

    /// Players whose presence never raises the value of any coalition they
    /// join.
    pub fn dummy_players(&self, cg: &CoalitionGame) -> Result<Vec<usize>, SolveError> {
        let n = cg.base().player_count();
        let mut by_mask: HashMap<u64, u64> = HashMap::new();
        for (c, v) in self.value_table(cg)? {
            by_mask.insert(c.iter().fold(0u64, |m, &i| m | 1 << i), v);
        }
        Ok((0..n)
            .filter(|&i| {
                let bit = 1u64 << i;
                by_mask
                    .iter()
                    .filter(|(mask, _)| *mask & bit == 0)
                    .all(|(mask, v)| by_mask[&(mask | bit)] <= *v)
            })
            .collect())
    }

    /// Core membership for 0/1 games: the payoff is efficient, non-negative,
    /// and no coalition is paid less than its value.
    pub fn in_core(&self, cg: &CoalitionGame, payoff: &[f64]) -> Result<bool, SolveError> {
        if cg.model() != CoopModel::Aigcrg {
            return Err(SolveError::ModelMismatch { expected: "aigcrg" });
        }
        let n = cg.base().player_count();
        if payoff.len() != n {
            return Err(SolveError::InvalidPayoff(format!(
                "{} entries for {n} players",
                payoff.len()
            )));
        }
        if payoff.iter().any(|p| *p < -PAYOFF_TOLERANCE) {
            return Ok(false);
        }
        let table = self.value_table(cg)?;
        let grand = table
            .iter()
            .find(|(c, _)| c.len() == n)
            .map(|(_, v)| *v)
            .unwrap_or(0);
        let total: f64 = payoff.iter().sum();
        if (total - grand as f64).abs() > PAYOFF_TOLERANCE {
            return Ok(false);
        }
        for (c, v) in &table {
            let share: f64 = c.iter().map(|&i| payoff[i]).sum();
            if share < *v as f64 - PAYOFF_TOLERANCE {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Absolute tolerance for payoff comparisons; payoffs are small rationals,
/// the tolerance only guards float parsing artifacts.
pub const PAYOFF_TOLERANCE: f64 = 1e-9;
