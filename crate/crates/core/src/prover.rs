//! Cut-free backward proof search over the reduced connective set.
//!
//! The search applies an invertible rule whenever one is available (those
//! preserve provability in both directions, so the first match is decisive)
//! and only then branches over the genuine choice points: additive index
//! choices and the context splits of `*R` and `-oL`. Derived connectives need
//! no rules of their own; their behaviour falls out of the `~`, `-o` and unit
//! rules on the stored core form.
//!
//! In affine mode weakening is not searched as a rule. It is absorbed into
//! the leaves (an axiom or `1R` leaf may carry arbitrary surplus), which is
//! equivalent because weakening commutes upward past every other rule. The
//! reported proof tree re-materialises the surplus as explicit `W` steps so
//! each trace node instantiates exactly one rule of the calculus.
//!
//! Every rule strictly decreases the summed formula size of the sequent, so
//! the recursion terminates without a depth bound. Results are memoized per
//! weakening mode; an exhausted time or depth budget aborts the query with an
//! error instead of polluting the cache or masquerading as "unprovable".

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dashmap::DashMap;

use crate::bag::ResourceBag;
use crate::formula::Formula;
use crate::sequent::{Fragment, LogicMode, Sequent, Weakening};

#[derive(Debug, Clone)]
pub struct ProverLimits {
    /// Recursion depth cap. The search terminates structurally, so this is
    /// only a guard for callers that want to bound latency; exceeding it is
    /// reported as an error, not as "unprovable".
    pub max_depth: Option<usize>,
    /// Memo entries kept per weakening mode; past this the search still runs
    /// but stops recording.
    pub max_cache_entries: usize,
    /// Wall clock budget per query.
    pub budget: Option<Duration>,
}

impl Default for ProverLimits {
    fn default() -> Self {
        ProverLimits {
            max_depth: None,
            max_cache_entries: 1 << 20,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProverStats {
    pub nodes_expanded: u64,
    pub cache_hits: u64,
}

/// One rule instance: conclusion plus proved premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofNode {
    pub rule: &'static str,
    pub sequent: Sequent,
    pub premises: Vec<Arc<ProofNode>>,
}

impl ProofNode {
    /// Indented tree, one rule per line, premises below their conclusion.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(self.rule);
        out.push_str(": ");
        out.push_str(&self.sequent.to_string());
        out.push('\n');
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProofResult {
    pub provable: bool,
    /// Present exactly when provable.
    pub proof: Option<Arc<ProofNode>>,
    pub stats: ProverStats,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProverError {
    #[error("proof search budget exhausted after {nodes_expanded} nodes ({elapsed_ms} ms)")]
    BudgetExhausted { nodes_expanded: u64, elapsed_ms: u128 },
    #[error("proof search depth limit {limit} exceeded")]
    DepthExceeded { limit: usize },
    #[error("{formula:?} uses {connective:?}, which is outside the {fragment} fragment")]
    OutsideFragment {
        formula: String,
        connective: &'static str,
        fragment: Fragment,
    },
}

/// Memoizing proof search session. Queries share the per-mode caches, so a
/// game analysis that asks about the same outcome twice pays once. Safe to
/// share across threads; concurrent inserts of the same sequent are
/// idempotent because the search is deterministic.
pub struct Prover {
    limits: ProverLimits,
    // index 0: linear, 1: affine
    caches: [DashMap<Sequent, Option<Arc<ProofNode>>>; 2],
    cache_sizes: [AtomicU64; 2],
    queries: AtomicU64,
    total_nodes: AtomicU64,
    total_hits: AtomicU64,
}

impl Default for Prover {
    fn default() -> Self {
        Self::new(ProverLimits::default())
    }
}

struct Ctx {
    weak: Weakening,
    started: Instant,
    deadline: Option<Instant>,
    nodes: u64,
    hits: u64,
}

impl Prover {
    pub fn new(limits: ProverLimits) -> Self {
        Prover {
            limits,
            caches: [DashMap::new(), DashMap::new()],
            cache_sizes: [AtomicU64::new(0), AtomicU64::new(0)],
            queries: AtomicU64::new(0),
            total_nodes: AtomicU64::new(0),
            total_hits: AtomicU64::new(0),
        }
    }

    pub fn limits(&self) -> &ProverLimits {
        &self.limits
    }

    /// Provability queries issued so far (including memoized repeats).
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.total_nodes.load(Ordering::Relaxed)
    }

    pub fn cache_hits(&self) -> u64 {
        self.total_hits.load(Ordering::Relaxed)
    }

    fn cache(&self, weak: Weakening) -> &DashMap<Sequent, Option<Arc<ProofNode>>> {
        match weak {
            Weakening::Linear => &self.caches[0],
            Weakening::Affine => &self.caches[1],
        }
    }

    fn check_fragment(&self, seq: &Sequent, fragment: Fragment) -> Result<(), ProverError> {
        for f in seq.left.iter().chain(seq.right.iter()) {
            if let Some(connective) = f.fragment_offender(fragment) {
                return Err(ProverError::OutsideFragment {
                    formula: f.to_string(),
                    connective,
                    fragment,
                });
            }
        }
        Ok(())
    }

    /// Decides the sequent in the given mode. `provable: false` is a real
    /// refutation; resource exhaustion comes back as an error instead.
    pub fn prove(&self, seq: &Sequent, mode: LogicMode) -> Result<ProofResult, ProverError> {
        self.check_fragment(seq, mode.fragment)?;
        self.queries.fetch_add(1, Ordering::Relaxed);
        let started = Instant::now();
        let mut ctx = Ctx {
            weak: mode.weakening,
            started,
            deadline: self.limits.budget.map(|b| started + b),
            nodes: 0,
            hits: 0,
        };
        let outcome = self.search(seq.clone(), &mut ctx, 0);
        self.total_nodes.fetch_add(ctx.nodes, Ordering::Relaxed);
        self.total_hits.fetch_add(ctx.hits, Ordering::Relaxed);
        let proof = outcome?;
        Ok(ProofResult {
            provable: proof.is_some(),
            proof,
            stats: ProverStats {
                nodes_expanded: ctx.nodes,
                cache_hits: ctx.hits,
            },
        })
    }

    /// Whether the resources in `context` suffice for `goal`.
    pub fn entails(
        &self,
        context: &ResourceBag,
        goal: &Formula,
        mode: LogicMode,
    ) -> Result<bool, ProverError> {
        let seq = Sequent::new(context.clone(), ResourceBag::singleton(goal.clone()));
        Ok(self.prove(&seq, mode)?.provable)
    }

    fn search(
        &self,
        seq: Sequent,
        ctx: &mut Ctx,
        depth: usize,
    ) -> Result<Option<Arc<ProofNode>>, ProverError> {
        if let Some(hit) = self.cache(ctx.weak).get(&seq) {
            ctx.hits += 1;
            return Ok(hit.value().clone());
        }
        if let Some(limit) = self.limits.max_depth {
            if depth > limit {
                return Err(ProverError::DepthExceeded { limit });
            }
        }
        ctx.nodes += 1;
        if let Some(deadline) = ctx.deadline {
            if Instant::now() >= deadline {
                return Err(ProverError::BudgetExhausted {
                    nodes_expanded: ctx.nodes,
                    elapsed_ms: ctx.started.elapsed().as_millis(),
                });
            }
        }
        let result = self.expand(&seq, ctx, depth)?;
        let slot = match ctx.weak {
            Weakening::Linear => 0,
            Weakening::Affine => 1,
        };
        if (self.cache_sizes[slot].load(Ordering::Relaxed) as usize)
            < self.limits.max_cache_entries
            && self.caches[slot].insert(seq, result.clone()).is_none()
        {
            self.cache_sizes[slot].fetch_add(1, Ordering::Relaxed);
        }
        Ok(result)
    }

    fn expand(
        &self,
        seq: &Sequent,
        ctx: &mut Ctx,
        depth: usize,
    ) -> Result<Option<Arc<ProofNode>>, ProverError> {
        if let Some(leaf) = try_leaf(seq, ctx.weak) {
            return Ok(Some(leaf));
        }
        if let Some((rule, premises)) = invertible_step(seq) {
            let mut children = Vec::with_capacity(premises.len());
            for p in premises {
                match self.search(p, ctx, depth + 1)? {
                    Some(n) => children.push(n),
                    // invertible: an unprovable premise refutes the conclusion
                    None => return Ok(None),
                }
            }
            return Ok(Some(Arc::new(ProofNode {
                rule,
                sequent: seq.clone(),
                premises: children,
            })));
        }
        'candidates: for (rule, premises) in choice_candidates(seq) {
            let mut children = Vec::with_capacity(premises.len());
            for p in premises {
                match self.search(p, ctx, depth + 1)? {
                    Some(n) => children.push(n),
                    None => continue 'candidates,
                }
            }
            return Ok(Some(Arc::new(ProofNode {
                rule,
                sequent: seq.clone(),
                premises: children,
            })));
        }
        Ok(None)
    }
}

fn node(rule: &'static str, sequent: Sequent, premises: Vec<Arc<ProofNode>>) -> Arc<ProofNode> {
    Arc::new(ProofNode {
        rule,
        sequent,
        premises,
    })
}

/// Wraps `inner` (which proves `target`) in one `W` step per surplus formula
/// until the conclusion is `seq`. Requires `target` componentwise included in
/// `seq`.
fn weaken_from(seq: &Sequent, target: Sequent, inner: Arc<ProofNode>) -> Arc<ProofNode> {
    let surplus_left: Vec<Formula> = seq.left.difference(&target.left).iter().cloned().collect();
    let surplus_right: Vec<Formula> = seq
        .right
        .difference(&target.right)
        .iter()
        .cloned()
        .collect();
    let mut current = inner;
    let mut left = target.left;
    let mut right = target.right;
    for f in surplus_left {
        left.insert(f);
        current = node("W", Sequent::new(left.clone(), right.clone()), vec![current]);
    }
    for f in surplus_right {
        right.insert(f);
        current = node("W", Sequent::new(left.clone(), right.clone()), vec![current]);
    }
    current
}

fn try_leaf(seq: &Sequent, weak: Weakening) -> Option<Arc<ProofNode>> {
    // topR allows arbitrary surrounding context in both modes.
    if seq.right.distinct().any(|(f, _)| matches!(f, Formula::Top)) {
        return Some(node("topR", seq.clone(), vec![]));
    }
    match weak {
        Weakening::Linear => {
            if seq.left.size() == 1 && seq.right.size() == 1 {
                let l = seq.left.iter().next().unwrap();
                if seq.right.contains(l) {
                    return Some(node("ax", seq.clone(), vec![]));
                }
            }
            if seq.left.is_empty() && seq.right.size() == 1 && seq.right.contains(&Formula::One) {
                return Some(node("1R", seq.clone(), vec![]));
            }
            None
        }
        Weakening::Affine => {
            for (f, _) in seq.left.distinct() {
                if seq.right.contains(f) {
                    let target = Sequent::new(
                        ResourceBag::singleton(f.clone()),
                        ResourceBag::singleton(f.clone()),
                    );
                    let ax = node("ax", target.clone(), vec![]);
                    return Some(weaken_from(seq, target, ax));
                }
            }
            if seq.right.contains(&Formula::One) {
                let target = Sequent::new(ResourceBag::new(), ResourceBag::singleton(Formula::One));
                let one = node("1R", target.clone(), vec![]);
                return Some(weaken_from(seq, target, one));
            }
            None
        }
    }
}

/// First applicable invertible rule with its premises, scanning the left
/// side then the right side in canonical order.
pub(crate) fn invertible_step(seq: &Sequent) -> Option<(&'static str, Vec<Sequent>)> {
    for (f, _) in seq.left.distinct() {
        match f {
            Formula::Neg(a) => {
                let prem = Sequent::new(seq.left.minus_one(f), seq.right.plus_one((**a).clone()));
                return Some(("~L", vec![prem]));
            }
            Formula::Tensor(a, b) => {
                let mut left = seq.left.minus_one(f);
                left.insert((**a).clone());
                left.insert((**b).clone());
                return Some(("*L", vec![Sequent::new(left, seq.right.clone())]));
            }
            Formula::One => {
                return Some((
                    "1L",
                    vec![Sequent::new(seq.left.minus_one(f), seq.right.clone())],
                ));
            }
            Formula::Plus(a, b) => {
                let base = seq.left.minus_one(f);
                return Some((
                    "+L",
                    vec![
                        Sequent::new(base.plus_one((**a).clone()), seq.right.clone()),
                        Sequent::new(base.plus_one((**b).clone()), seq.right.clone()),
                    ],
                ));
            }
            _ => {}
        }
    }
    for (f, _) in seq.right.distinct() {
        match f {
            Formula::Neg(a) => {
                let prem = Sequent::new(seq.left.plus_one((**a).clone()), seq.right.minus_one(f));
                return Some(("~R", vec![prem]));
            }
            Formula::Lollipop(a, b) => {
                let prem = Sequent::new(
                    seq.left.plus_one((**a).clone()),
                    seq.right.minus_one(f).plus_one((**b).clone()),
                );
                return Some(("-oR", vec![prem]));
            }
            Formula::With(a, b) => {
                let base = seq.right.minus_one(f);
                return Some((
                    "&R",
                    vec![
                        Sequent::new(seq.left.clone(), base.plus_one((**a).clone())),
                        Sequent::new(seq.left.clone(), base.plus_one((**b).clone())),
                    ],
                ));
            }
            _ => {}
        }
    }
    None
}

/// All non-invertible rule applications: additive index choices first, then
/// every context split of `*R` and `-oL`. Each entry is one candidate whose
/// premises must all be proved.
pub(crate) fn choice_candidates(seq: &Sequent) -> Vec<(&'static str, Vec<Sequent>)> {
    let mut out = Vec::new();
    for (f, _) in seq.left.distinct() {
        if let Formula::With(a, b) = f {
            let base = seq.left.minus_one(f);
            for side in [a, b] {
                out.push((
                    "&L",
                    vec![Sequent::new(
                        base.plus_one((**side).clone()),
                        seq.right.clone(),
                    )],
                ));
            }
        }
    }
    for (f, _) in seq.right.distinct() {
        if let Formula::Plus(a, b) = f {
            let base = seq.right.minus_one(f);
            for side in [a, b] {
                out.push((
                    "+R",
                    vec![Sequent::new(
                        seq.left.clone(),
                        base.plus_one((**side).clone()),
                    )],
                ));
            }
        }
    }
    for (f, _) in seq.right.distinct() {
        if let Formula::Tensor(a, b) = f {
            let rest = seq.right.minus_one(f);
            for gamma1 in seq.left.multisubsets() {
                let gamma2 = seq.left.difference(&gamma1);
                for delta1 in rest.multisubsets() {
                    let delta2 = rest.difference(&delta1);
                    out.push((
                        "*R",
                        vec![
                            Sequent::new(gamma1.clone(), delta1.plus_one((**a).clone())),
                            Sequent::new(gamma2.clone(), delta2.plus_one((**b).clone())),
                        ],
                    ));
                }
            }
        }
    }
    for (f, _) in seq.left.distinct() {
        if let Formula::Lollipop(a, b) = f {
            let rest = seq.left.minus_one(f);
            for gamma1 in rest.multisubsets() {
                let gamma2 = rest.difference(&gamma1);
                for delta1 in seq.right.multisubsets() {
                    let delta2 = seq.right.difference(&delta1);
                    out.push((
                        "-oL",
                        vec![
                            Sequent::new(gamma1.clone(), delta1.plus_one((**a).clone())),
                            Sequent::new(gamma2.plus_one((**b).clone()), delta2),
                        ],
                    ));
                }
            }
        }
    }
    out
}
