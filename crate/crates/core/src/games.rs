//! Endowment games and their non-cooperative analysis.
//!
//! A game hands each player a multiset of resource formulas and a goal
//! formula. Players simultaneously contribute a sub-bag of their endowment;
//! the pooled contribution is the outcome, and a player is satisfied when the
//! outcome entails their goal in the game's logic mode.
//!
//! Two strict preference relations are supported. Dichotomous: a player
//! prefers exactly the satisfying outcomes to the non-satisfying ones.
//! Parsimonious: satisfaction first, then strictly smaller own contribution
//! as a tie breaker (and among unsatisfying profiles, contributing strictly
//! less is still better).
//!
//! On top of Nash equilibria the module analyses endowment redistribution:
//! whether a profile's outcome survives some redistribution in which no
//! equilibrium realises it (elimination), and dually whether some
//! redistribution has an equilibrium realising it (construction).

use std::fmt;

use dashmap::DashMap;

use crate::bag::ResourceBag;
use crate::exec;
use crate::formula::Formula;
use crate::prover::{Prover, ProverError, ProverLimits};
use crate::sequent::{Fragment, LogicMode, Weakening};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    mode: LogicMode,
    players: Vec<String>,
    goals: Vec<Formula>,
    endowments: Vec<ResourceBag>,
}

impl Game {
    pub fn new(
        mode: LogicMode,
        players: Vec<String>,
        goals: Vec<Formula>,
        endowments: Vec<ResourceBag>,
    ) -> Result<Self, SolveError> {
        if players.is_empty() {
            return Err(SolveError::InvalidGame("a game needs at least one player".into()));
        }
        if goals.len() != players.len() || endowments.len() != players.len() {
            return Err(SolveError::InvalidGame(format!(
                "{} players but {} goals and {} endowments",
                players.len(),
                goals.len(),
                endowments.len()
            )));
        }
        for (i, name) in players.iter().enumerate() {
            if players[..i].contains(name) {
                return Err(SolveError::InvalidGame(format!("duplicate player {name:?}")));
            }
        }
        for (i, goal) in goals.iter().enumerate() {
            if let Some(conn) = goal.fragment_offender(mode.fragment) {
                return Err(SolveError::InvalidGame(format!(
                    "goal of player {:?} uses {conn:?}, outside the {} fragment",
                    players[i], mode.fragment
                )));
            }
        }
        for (i, endowment) in endowments.iter().enumerate() {
            for (f, _) in endowment.distinct() {
                if let Some(conn) = f.fragment_offender(mode.fragment) {
                    return Err(SolveError::InvalidGame(format!(
                        "endowment of player {:?} uses {conn:?}, outside the {} fragment",
                        players[i], mode.fragment
                    )));
                }
            }
        }
        Ok(Game {
            mode,
            players,
            goals,
            endowments,
        })
    }

    pub fn mode(&self) -> LogicMode {
        self.mode
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p == name)
    }

    pub fn goals(&self) -> &[Formula] {
        &self.goals
    }

    pub fn goal(&self, i: usize) -> &Formula {
        &self.goals[i]
    }

    pub fn endowments(&self) -> &[ResourceBag] {
        &self.endowments
    }

    pub fn endowment(&self, i: usize) -> &ResourceBag {
        &self.endowments[i]
    }

    /// The pooled endowment of all players.
    pub fn pool(&self) -> ResourceBag {
        self.endowments
            .iter()
            .fold(ResourceBag::new(), |acc, e| acc.union(e))
    }

    /// Same players, goals and mode over redistributed endowments.
    pub fn with_endowments(&self, endowments: Vec<ResourceBag>) -> Result<Game, SolveError> {
        Game::new(
            self.mode,
            self.players.clone(),
            self.goals.clone(),
            endowments,
        )
    }

    /// The profile in which player `i` contributes `bag` and everyone else
    /// contributes nothing.
    pub fn one_active_profile(&self, i: usize, bag: ResourceBag) -> Profile {
        let mut contributions = vec![ResourceBag::new(); self.players.len()];
        contributions[i] = bag;
        Profile::new(contributions)
    }

    /// `name1: {..}; name2: {..}` in declaration order.
    pub fn show_profile(&self, p: &Profile) -> String {
        self.players
            .iter()
            .zip(p.contributions())
            .map(|(name, c)| format!("{name}: {c}"))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// All redistributions of the pool across the players, the current
    /// endowment and every concentration included. Deterministic order.
    pub fn redistributions(&self, caps: &Caps) -> Result<Vec<Redistribution>, SolveError> {
        let pool = self.pool();
        if pool.size() > caps.max_pool {
            return Err(SolveError::CapExceeded {
                what: "pool size for redistribution",
                needed: pool.size() as u128,
                cap: caps.max_pool as u128,
            });
        }
        Ok(bag_splits(&pool, self.players.len())
            .into_iter()
            .map(Redistribution::new)
            .collect())
    }

    /// The redistribution handing the entire pool to player `i`.
    pub fn concentrated(&self, i: usize) -> Redistribution {
        let mut bags = vec![ResourceBag::new(); self.players.len()];
        bags[i] = self.pool();
        Redistribution::new(bags)
    }
}

/// One contribution per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    contributions: Vec<ResourceBag>,
}

impl Profile {
    pub fn new(contributions: Vec<ResourceBag>) -> Self {
        Profile { contributions }
    }

    pub fn contributions(&self) -> &[ResourceBag] {
        &self.contributions
    }

    pub fn contribution(&self, i: usize) -> &ResourceBag {
        &self.contributions[i]
    }

    /// Pooled contribution of every player.
    pub fn outcome(&self) -> ResourceBag {
        self.contributions
            .iter()
            .fold(ResourceBag::new(), |acc, c| acc.union(c))
    }

    /// Copy with player `i` contributing `bag` instead.
    pub fn replacing(&self, i: usize, bag: ResourceBag) -> Profile {
        let mut contributions = self.contributions.clone();
        contributions[i] = bag;
        Profile::new(contributions)
    }

    pub fn validate_in(&self, game: &Game) -> Result<(), SolveError> {
        if self.contributions.len() != game.player_count() {
            return Err(SolveError::InvalidProfile(format!(
                "profile has {} contributions for {} players",
                self.contributions.len(),
                game.player_count()
            )));
        }
        for (i, c) in self.contributions.iter().enumerate() {
            if !c.is_subbag(game.endowment(i)) {
                return Err(SolveError::InvalidProfile(format!(
                    "player {:?} cannot contribute {c} from endowment {}",
                    game.players()[i],
                    game.endowment(i)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefKind {
    Dichotomous,
    Parsimonious,
}

impl fmt::Display for PrefKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefKind::Dichotomous => write!(f, "dichotomous"),
            PrefKind::Parsimonious => write!(f, "parsimonious"),
        }
    }
}

impl std::str::FromStr for PrefKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dichotomous" => Ok(PrefKind::Dichotomous),
            "parsimonious" => Ok(PrefKind::Parsimonious),
            other => Err(format!(
                "unknown preference kind {other:?}, expected \"dichotomous\" or \"parsimonious\""
            )),
        }
    }
}

/// A reassignment of the pooled endowment, one bag per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redistribution {
    bags: Vec<ResourceBag>,
}

impl Redistribution {
    pub fn new(bags: Vec<ResourceBag>) -> Self {
        Redistribution { bags }
    }

    pub fn bags(&self) -> &[ResourceBag] {
        &self.bags
    }

    pub fn into_bags(self) -> Vec<ResourceBag> {
        self.bags
    }
}

/// Enumeration bounds. Exceeding one is an error, never a silent "no".
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_pool: usize,
    pub max_profile_space: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_pool: 12,
            max_profile_space: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error("{what} needs {needed} candidates, over the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),
    #[error("invalid payoff vector: {0}")]
    InvalidPayoff(String),
    #[error("this operation only applies to the {expected} model")]
    ModelMismatch { expected: &'static str },
}

/// A redistribution plus an equilibrium profile of the redistributed game
/// realising the requested outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionWitness {
    pub redistribution: Redistribution,
    pub profile: Profile,
}

/// Analysis session: a shared memoizing prover, enumeration caps, and the
/// parallelism switch for profile sweeps. Verdicts never depend on the
/// switch; only wall time does.
pub struct Solver {
    prover: Prover,
    caps: Caps,
    parallel: bool,
    canperform_cache: DashMap<(ResourceBag, Formula, Weakening), bool>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(ProverLimits::default(), Caps::default())
    }
}

impl Solver {
    pub fn new(limits: ProverLimits, caps: Caps) -> Self {
        Solver {
            prover: Prover::new(limits),
            caps,
            parallel: cfg!(feature = "parallel"),
            canperform_cache: DashMap::new(),
        }
    }

    pub fn prover(&self) -> &Prover {
        &self.prover
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn parallel(&self) -> bool {
        self.parallel
    }

    /// Sweeps run on the current thread when off. With the `parallel` feature
    /// compiled out this is always off.
    pub fn set_parallel(&mut self, on: bool) {
        self.parallel = on && cfg!(feature = "parallel");
    }

    pub(crate) fn canperform_cached(
        &self,
        key: (ResourceBag, Formula, Weakening),
    ) -> Option<bool> {
        self.canperform_cache.get(&key).map(|v| *v)
    }

    pub(crate) fn canperform_store(&self, key: (ResourceBag, Formula, Weakening), value: bool) {
        self.canperform_cache.insert(key, value);
    }

    /// Whether the outcome satisfies player `i`'s goal.
    pub fn satisfies(&self, g: &Game, outcome: &ResourceBag, i: usize) -> Result<bool, SolveError> {
        Ok(self.prover.entails(outcome, g.goal(i), g.mode())?)
    }

    /// Strict preference of player `i` for profile `p` over profile `q`.
    pub fn prefers(
        &self,
        g: &Game,
        i: usize,
        p: &Profile,
        q: &Profile,
        kind: PrefKind,
    ) -> Result<bool, SolveError> {
        p.validate_in(g)?;
        q.validate_in(g)?;
        let p_sat = self.satisfies(g, &p.outcome(), i)?;
        let q_sat = self.satisfies(g, &q.outcome(), i)?;
        Ok(match kind {
            PrefKind::Dichotomous => p_sat && !q_sat,
            PrefKind::Parsimonious => match (p_sat, q_sat) {
                (true, false) => true,
                (false, true) => false,
                // equal satisfaction: strictly smaller own contribution wins
                _ => p.contribution(i).is_strict_subbag(q.contribution(i)),
            },
        })
    }

    /// Nash equilibrium test. In affine mode a player's best deviation checks
    /// collapse to at most two entailment queries (full endowment, or one
    /// dropped resource), which is what makes large sweeps tractable; linear
    /// mode falls back to the definitional deviation sweep. Both agree with
    /// the definition.
    pub fn is_nash(&self, g: &Game, p: &Profile, kind: PrefKind) -> Result<bool, SolveError> {
        p.validate_in(g)?;
        match g.mode().weakening {
            Weakening::Affine => self.is_nash_affine(g, p, kind),
            Weakening::Linear => self.is_nash_generic(g, p, kind),
        }
    }

    fn is_nash_affine(&self, g: &Game, p: &Profile, kind: PrefKind) -> Result<bool, SolveError> {
        let out = p.outcome();
        for i in 0..g.player_count() {
            let rest = out.difference(p.contribution(i));
            match kind {
                PrefKind::Dichotomous => {
                    if self.satisfies(g, &out, i)? {
                        continue;
                    }
                    // the maximal deviation decides: weakening makes
                    // satisfaction monotone in the contribution
                    let best = rest.union(g.endowment(i));
                    if self.satisfies(g, &best, i)? {
                        return Ok(false);
                    }
                }
                PrefKind::Parsimonious => {
                    if self.satisfies(g, &out, i)? {
                        // satisfied: any single dropped resource that keeps
                        // the goal would be strictly preferred
                        for (f, _) in p.contribution(i).distinct() {
                            let smaller = rest.union(&p.contribution(i).minus_one(f));
                            if self.satisfies(g, &smaller, i)? {
                                return Ok(false);
                            }
                        }
                    } else {
                        // unsatisfied: contributing anything at all is waste
                        if !p.contribution(i).is_empty() {
                            return Ok(false);
                        }
                        let best = rest.union(g.endowment(i));
                        if self.satisfies(g, &best, i)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn is_nash_generic(&self, g: &Game, p: &Profile, kind: PrefKind) -> Result<bool, SolveError> {
        for i in 0..g.player_count() {
            for deviation in g.endowment(i).multisubsets() {
                if deviation == *p.contribution(i) {
                    continue;
                }
                let q = p.replacing(i, deviation);
                if self.prefers(g, i, &q, p, kind)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every choice profile of the game, last player varying fastest.
    pub fn profiles(&self, g: &Game) -> Result<Vec<Profile>, SolveError> {
        let mut space: u128 = 1;
        for e in g.endowments() {
            let per = e
                .multisubset_count()
                .ok_or(SolveError::CapExceeded {
                    what: "profile space",
                    needed: u128::MAX,
                    cap: self.caps.max_profile_space,
                })?;
            space = space.checked_mul(per).ok_or(SolveError::CapExceeded {
                what: "profile space",
                needed: u128::MAX,
                cap: self.caps.max_profile_space,
            })?;
        }
        if space > self.caps.max_profile_space {
            return Err(SolveError::CapExceeded {
                what: "profile space",
                needed: space,
                cap: self.caps.max_profile_space,
            });
        }
        let choices: Vec<Vec<ResourceBag>> =
            g.endowments().iter().map(|e| e.multisubsets()).collect();
        let mut profiles = Vec::with_capacity(space as usize);
        let mut idx = vec![0usize; choices.len()];
        loop {
            profiles.push(Profile::new(
                idx.iter()
                    .enumerate()
                    .map(|(i, &j)| choices[i][j].clone())
                    .collect(),
            ));
            let mut k = choices.len();
            loop {
                if k == 0 {
                    return Ok(profiles);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// All Nash equilibria, in profile enumeration order.
    pub fn all_equilibria(&self, g: &Game, kind: PrefKind) -> Result<Vec<Profile>, SolveError> {
        let profiles = self.profiles(g)?;
        let checked = exec::map_collect(profiles, self.parallel, |p| {
            self.is_nash(g, &p, kind).map(|ok| (p, ok))
        });
        let mut out = Vec::new();
        for item in checked {
            let (p, ok) = item?;
            if ok {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Whether some redistribution leaves the profile's outcome realised by
    /// no equilibrium. Scanning only the one-player concentrations is
    /// complete: under any redistribution, a profile realising this outcome
    /// is non-equilibrium exactly when the concentrated variant for some
    /// player already is.
    pub fn rationally_eliminable(
        &self,
        g: &Game,
        p: &Profile,
        kind: PrefKind,
    ) -> Result<bool, SolveError> {
        p.validate_in(g)?;
        if g.mode().weakening == Weakening::Linear {
            let deviations = g.pool().multisubset_count().unwrap_or(u128::MAX);
            if deviations > self.caps.max_profile_space {
                return Err(SolveError::CapExceeded {
                    what: "deviation sweep over the pool",
                    needed: deviations,
                    cap: self.caps.max_profile_space,
                });
            }
        }
        let out = p.outcome();
        for i in 0..g.player_count() {
            let concentrated = g.with_endowments(g.concentrated(i).into_bags())?;
            let q = concentrated.one_active_profile(i, out.clone());
            if !self.is_nash(&concentrated, &q, kind)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether some redistribution admits an equilibrium realising the
    /// profile's outcome; returns one witness when so. The search first tries
    /// the profile itself, then (dichotomous mode) two concentration
    /// shortcuts, then enumerates outcome splits crossed with leftover
    /// splits, first players taking as little as possible first.
    pub fn rationally_constructible(
        &self,
        g: &Game,
        p: &Profile,
        kind: PrefKind,
    ) -> Result<Option<ConstructionWitness>, SolveError> {
        p.validate_in(g)?;
        let out = p.outcome();
        if self.is_nash(g, p, kind)? {
            return Ok(Some(ConstructionWitness {
                redistribution: Redistribution::new(g.endowments().to_vec()),
                profile: p.clone(),
            }));
        }
        let pool = g.pool();
        if kind == PrefKind::Dichotomous {
            // a satisfied player keeps the whole pool and has no reason to move
            for i in 0..g.player_count() {
                if self.satisfies(g, &out, i)? {
                    return Ok(Some(ConstructionWitness {
                        redistribution: g.concentrated(i),
                        profile: g.one_active_profile(i, out.clone()),
                    }));
                }
            }
            // a player whose goal is out of reach of the pool never moves either
            for i in 0..g.player_count() {
                if !self.goal_reachable(g, &pool, i)? {
                    return Ok(Some(ConstructionWitness {
                        redistribution: g.concentrated(i),
                        profile: g.one_active_profile(i, out.clone()),
                    }));
                }
            }
        }
        let n = g.player_count();
        let reserve = pool.difference(&out);
        let contrib_count = split_count(&out, n).unwrap_or(u128::MAX);
        let reserve_count = split_count(&reserve, n).unwrap_or(u128::MAX);
        let total = contrib_count.saturating_mul(reserve_count);
        if total > self.caps.max_profile_space {
            return Err(SolveError::CapExceeded {
                what: "redistribution witness search",
                needed: total,
                cap: self.caps.max_profile_space,
            });
        }
        let contribs = bag_splits(&out, n);
        let reserves = bag_splits(&reserve, n);
        let mut pairs = Vec::with_capacity(total as usize);
        for ci in 0..contribs.len() {
            for ri in 0..reserves.len() {
                pairs.push((ci, ri));
            }
        }
        const CHUNK: usize = 256;
        for chunk in pairs.chunks(CHUNK) {
            let results = exec::map_collect(chunk.to_vec(), self.parallel, |(ci, ri)| {
                let endowments: Vec<ResourceBag> = contribs[ci]
                    .iter()
                    .zip(&reserves[ri])
                    .map(|(c, r)| c.union(r))
                    .collect();
                let game = g.with_endowments(endowments)?;
                let profile = Profile::new(contribs[ci].clone());
                let ok = self.is_nash(&game, &profile, kind)?;
                Ok::<_, SolveError>(((ci, ri), ok))
            });
            for item in results {
                let ((ci, ri), ok) = item?;
                if ok {
                    let endowments: Vec<ResourceBag> = contribs[ci]
                        .iter()
                        .zip(&reserves[ri])
                        .map(|(c, r)| c.union(r))
                        .collect();
                    return Ok(Some(ConstructionWitness {
                        redistribution: Redistribution::new(endowments),
                        profile: Profile::new(contribs[ci].clone()),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Whether any sub-bag of `pool` can satisfy player `i`'s goal. In the
    /// linear multiplicative-only fragment there is no way to phrase "with
    /// leftovers", so the check conservatively reports reachable.
    fn goal_reachable(&self, g: &Game, pool: &ResourceBag, i: usize) -> Result<bool, SolveError> {
        match g.mode().weakening {
            Weakening::Affine => self.satisfies(g, pool, i),
            Weakening::Linear => match g.mode().fragment {
                Fragment::Mall => {
                    let padded = crate::formula::tensor(g.goal(i).clone(), Formula::Top);
                    Ok(self.prover.entails(pool, &padded, g.mode())?)
                }
                Fragment::Mll => Ok(true),
            },
        }
    }
}

/// Compositions of `total` into `parts` non-negative summands, first summand
/// ascending: (0, .., total) first, (total, .., 0) last.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// All ways to deal the bag to `parts` receivers, multiplicities split
/// per formula. `∏ C(m + parts - 1, parts - 1)` entries.
pub fn bag_splits(bag: &ResourceBag, parts: usize) -> Vec<Vec<ResourceBag>> {
    let mut acc: Vec<Vec<ResourceBag>> = vec![vec![ResourceBag::new(); parts]];
    for (f, m) in bag.distinct() {
        let comps = compositions(m, parts);
        let mut next = Vec::with_capacity(acc.len() * comps.len());
        for split in &acc {
            for comp in &comps {
                let mut grown = split.clone();
                for (i, c) in comp.iter().enumerate() {
                    grown[i].insert_many(f.clone(), *c);
                }
                next.push(grown);
            }
        }
        acc = next;
    }
    acc
}

/// Number of entries `bag_splits` would produce; None on overflow.
pub fn split_count(bag: &ResourceBag, parts: usize) -> Option<u128> {
    if parts == 0 {
        return Some(if bag.is_empty() { 1 } else { 0 });
    }
    let mut total: u128 = 1;
    for (_, m) in bag.distinct() {
        total = total.checked_mul(binomial(m as u128 + parts as u128 - 1, parts as u128 - 1)?)?;
    }
    Some(total)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}
