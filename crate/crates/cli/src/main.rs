//! Command line front end for the resource game solver.
//!
//! Exit codes: 0 for a "yes" verdict, 1 for "no", 2 for usage and parse
//! errors, 3 when an enumeration cap or prover budget is exhausted.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use resgame_core::{
    parse_profile, parse_sequent, Caps, CoalitionGame, CoopModel, Fragment, Game, LogicMode,
    PrefKind, Profile, Prover, ProverError, ProverLimits, ResourceBag, SolveError, Solver,
    Weakening,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Past this many profiles the human equilibria table lists only the
/// equilibria themselves.
const TABLE_LIMIT: usize = 512;

#[derive(Parser)]
#[command(
    name = "resgame",
    version,
    about = "Solver for individual resource games over affine and linear logic",
    after_help = "Exit codes: 0 = yes, 1 = no, 2 = usage or parse error, 3 = cap or budget exhausted."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a sequent is provable
    Prove(ProveArgs),
    /// Decide whether a profile is a Nash equilibrium
    Nash(ProfileQueryArgs),
    /// List every profile of a game and mark its Nash equilibria
    Equilibria(EquilibriaArgs),
    /// Decide whether a profile's outcome is rationally eliminable
    Eliminate(ProfileQueryArgs),
    /// Decide whether a profile's outcome is rationally constructible
    Construct(ProfileQueryArgs),
    /// Coalition game queries: values, veto and dummy players, core membership
    Coop(CoopArgs),
    /// Parse a game file and report its shape
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ProveArgs {
    /// Sequent text, e.g. "A, B |- A"
    sequent: String,
    /// Resource discipline: may unused resources be discarded?
    #[arg(long, value_parser = parse_weakening, default_value = "affine")]
    mode: Weakening,
    /// Connective fragment: multiplicative only, or with the additives
    #[arg(long, value_parser = parse_fragment, default_value = "mall")]
    fragment: Fragment,
    /// Print the proof tree when provable
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GameArgs {
    /// Game file path
    game: PathBuf,
    /// Override the game file's resource discipline
    #[arg(long, value_parser = parse_weakening)]
    mode: Option<Weakening>,
    /// Override the game file's connective fragment
    #[arg(long, value_parser = parse_fragment)]
    fragment: Option<Fragment>,
}

#[derive(Args)]
struct ProfileQueryArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Profile literal, e.g. "1: A; 2: A, B"; unmentioned players contribute nothing
    #[arg(long)]
    profile: String,
    /// Preference relation
    #[arg(long, value_parser = parse_pref, default_value = "dichotomous")]
    pref: PrefKind,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EquilibriaArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Preference relation
    #[arg(long, value_parser = parse_pref, default_value = "dichotomous")]
    pref: PrefKind,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CoopArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Coalition model: aigcrg (all goals, 0/1) or mnigcrg (max goals, count)
    #[arg(long, value_parser = parse_model)]
    model: CoopModel,
    /// Value of one coalition, as comma-separated player names ("" for the empty coalition)
    #[arg(long, value_name = "NAMES")]
    coalition: Option<String>,
    /// Value table over all coalitions
    #[arg(long)]
    table: bool,
    /// List the veto players (aigcrg only)
    #[arg(long)]
    veto: bool,
    /// List the dummy players
    #[arg(long)]
    dummy: bool,
    /// Core membership of a payoff vector, comma-separated in player order (aigcrg only)
    #[arg(long, value_name = "PAYOFF")]
    core: Option<String>,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    game: GameArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct LimitArgs {
    /// Pool size cap for redistribution sweeps [default: 12]
    #[arg(long, value_name = "N")]
    limit_pool: Option<usize>,
    /// Candidate count cap for profile and redistribution enumeration [default: 1048576]
    #[arg(long, value_name = "N")]
    limit_profiles: Option<u128>,
    /// Prover wall clock budget per query, in milliseconds [default: unlimited]
    #[arg(long, value_name = "MS")]
    prover_budget_ms: Option<u64>,
    /// Worker threads for parallel sweeps; 1 forces sequential [default: all cores]
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Emit one JSON document instead of human-readable text
    #[arg(long)]
    json: bool,
}

fn parse_weakening(s: &str) -> Result<Weakening, String> {
    s.parse()
}

fn parse_fragment(s: &str) -> Result<Fragment, String> {
    s.parse()
}

fn parse_pref(s: &str) -> Result<PrefKind, String> {
    s.parse()
}

fn parse_model(s: &str) -> Result<CoopModel, String> {
    s.parse()
}

/// Failures that abort the command, classified by exit code.
enum Failure {
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        match e {
            ProverError::BudgetExhausted { .. } | ProverError::DepthExceeded { .. } => {
                Failure::Budget(e.to_string())
            }
            ProverError::OutsideFragment { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::CapExceeded { .. } => Failure::Budget(e.to_string()),
            SolveError::Prover(p) => p.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Report {
    yes: bool,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!("{}", report.text);
            ExitCode::from(if report.yes { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cmd: Cmd) -> Result<Report, Failure> {
    let started = Instant::now();
    match cmd {
        Cmd::Prove(a) => prove_cmd(a, started),
        Cmd::Nash(a) => nash_cmd(a, started),
        Cmd::Equilibria(a) => equilibria_cmd(a, started),
        Cmd::Eliminate(a) => eliminate_cmd(a, started),
        Cmd::Construct(a) => construct_cmd(a, started),
        Cmd::Coop(a) => coop_cmd(a, started),
        Cmd::Validate(a) => validate_cmd(a, started),
    }
}

fn prove_cmd(a: ProveArgs, started: Instant) -> Result<Report, Failure> {
    let mode = LogicMode {
        weakening: a.mode,
        fragment: a.fragment,
    };
    let seq = parse_sequent(&a.sequent, a.fragment).map_err(|e| Failure::Usage(e.to_string()))?;
    let prover = Prover::new(prover_limits(&a.limits));
    let res = prover.prove(&seq, mode)?;
    let trace = match (&res.proof, a.trace) {
        (Some(p), true) => Some(p.render()),
        _ => None,
    };

    let mut human = format!("{seq}\nprovable ({mode}): {}", yn(res.provable));
    if let Some(t) = &trace {
        human.push('\n');
        human.push_str(t.trim_end());
    }
    push_stats_line(&mut human, &prover, started);

    Ok(finish(
        a.output.json,
        res.provable,
        human,
        "prove",
        json!({"sequent": a.sequent, "logic": mode.to_string()}),
        json!(res.provable),
        trace.map(|t| json!({ "proof": t })),
        stats_json(&prover, started),
    ))
}

fn nash_cmd(a: ProfileQueryArgs, started: Instant) -> Result<Report, Failure> {
    let game = load_game(&a.game)?;
    let solver = build_solver(&a.limits)?;
    let p = parse_profile(&game, &a.profile).map_err(|e| Failure::Usage(e.to_string()))?;
    let verdict = solver.is_nash(&game, &p, a.pref)?;
    let outcome = p.outcome();
    let sat = satisfied_players(&solver, &game, &outcome)?;

    let mut human = format!(
        "profile ({})\noutcome {outcome} satisfies {}\nNash equilibrium ({}; {}): {}",
        game.show_profile(&p),
        name_list(&game, &sat),
        a.pref,
        game.mode(),
        yn(verdict)
    );
    push_stats_line(&mut human, solver.prover(), started);

    Ok(finish(
        a.output.json,
        verdict,
        human,
        "nash",
        game_inputs(&a.game, &game, &[("pref", a.pref.to_string()), ("profile", a.profile)]),
        json!(verdict),
        None,
        stats_json(solver.prover(), started),
    ))
}

fn equilibria_cmd(a: EquilibriaArgs, started: Instant) -> Result<Report, Failure> {
    let game = load_game(&a.game)?;
    let solver = build_solver(&a.limits)?;
    let profiles = solver.profiles(&game)?;
    let equilibria = solver.all_equilibria(&game, a.pref)?;

    let mut human = format!(
        "{} profiles, {} equilibria ({}; {})",
        profiles.len(),
        equilibria.len(),
        a.pref,
        game.mode()
    );
    // both lists share the enumeration order, so one cursor marks membership
    let mut pending = equilibria.iter().peekable();
    let full_table = profiles.len() <= TABLE_LIMIT;
    if !full_table {
        write!(human, " (showing equilibria only)").unwrap();
    }
    for p in &profiles {
        let ne = pending.peek().is_some_and(|q| **q == *p);
        if ne {
            pending.next();
        }
        if !full_table && !ne {
            continue;
        }
        let outcome = p.outcome();
        let sat = satisfied_players(&solver, &game, &outcome)?;
        write!(
            human,
            "\n({}) -> {outcome} satisfies {}{}",
            game.show_profile(p),
            name_list(&game, &sat),
            if ne { "  [NE]" } else { "" }
        )
        .unwrap();
    }
    push_stats_line(&mut human, solver.prover(), started);

    let verdict = Value::Array(
        equilibria
            .iter()
            .map(|p| profile_json(&game, p))
            .collect(),
    );
    Ok(finish(
        a.output.json,
        !equilibria.is_empty(),
        human,
        "equilibria",
        game_inputs(&a.game, &game, &[("pref", a.pref.to_string())]),
        verdict,
        None,
        stats_json(solver.prover(), started),
    ))
}

fn eliminate_cmd(a: ProfileQueryArgs, started: Instant) -> Result<Report, Failure> {
    let game = load_game(&a.game)?;
    let solver = build_solver(&a.limits)?;
    let p = parse_profile(&game, &a.profile).map_err(|e| Failure::Usage(e.to_string()))?;
    let verdict = solver.rationally_eliminable(&game, &p, a.pref)?;
    let witness = if verdict {
        elimination_witness(&solver, &game, &p, a.pref)?
    } else {
        None
    };

    let mut human = format!(
        "profile ({})\noutcome {}\nrationally eliminable ({}; {}): {}",
        game.show_profile(&p),
        p.outcome(),
        a.pref,
        game.mode(),
        yn(verdict)
    );
    if let Some(i) = witness {
        write!(
            human,
            "\nwitness: concentrating the pool on {} leaves no equilibrium with this outcome",
            game.players()[i]
        )
        .unwrap();
    }
    push_stats_line(&mut human, solver.prover(), started);

    Ok(finish(
        a.output.json,
        verdict,
        human,
        "eliminate",
        game_inputs(&a.game, &game, &[("pref", a.pref.to_string()), ("profile", a.profile)]),
        json!(verdict),
        witness.map(|i| json!({"concentrate_on": game.players()[i]})),
        stats_json(solver.prover(), started),
    ))
}

fn construct_cmd(a: ProfileQueryArgs, started: Instant) -> Result<Report, Failure> {
    let game = load_game(&a.game)?;
    let solver = build_solver(&a.limits)?;
    let p = parse_profile(&game, &a.profile).map_err(|e| Failure::Usage(e.to_string()))?;
    let witness = solver.rationally_constructible(&game, &p, a.pref)?;

    let mut human = format!(
        "profile ({})\noutcome {}\nrationally constructible ({}; {}): {}",
        game.show_profile(&p),
        p.outcome(),
        a.pref,
        game.mode(),
        yn(witness.is_some())
    );
    let witness_json = witness.as_ref().map(|w| {
        json!({
            "endowments": bags_by_player_json(&game, w.redistribution.bags()),
            "profile": profile_json(&game, &w.profile),
        })
    });
    if let Some(w) = &witness {
        let shown = game
            .players()
            .iter()
            .zip(w.redistribution.bags())
            .map(|(name, bag)| format!("{name}: {bag}"))
            .collect::<Vec<_>>()
            .join("; ");
        write!(
            human,
            "\nwitness endowment: {shown}\nwitness profile:   {}",
            game.show_profile(&w.profile)
        )
        .unwrap();
    }
    push_stats_line(&mut human, solver.prover(), started);

    Ok(finish(
        a.output.json,
        witness.is_some(),
        human,
        "construct",
        game_inputs(&a.game, &game, &[("pref", a.pref.to_string()), ("profile", a.profile)]),
        json!(witness.is_some()),
        witness_json,
        stats_json(solver.prover(), started),
    ))
}

fn coop_cmd(a: CoopArgs, started: Instant) -> Result<Report, Failure> {
    let selected = usize::from(a.coalition.is_some())
        + usize::from(a.table)
        + usize::from(a.veto)
        + usize::from(a.dummy)
        + usize::from(a.core.is_some());
    if selected != 1 {
        return Err(Failure::Usage(
            "choose exactly one of --coalition, --table, --veto, --dummy, --core".into(),
        ));
    }
    let game = load_game(&a.game)?;
    let solver = build_solver(&a.limits)?;
    let cg = CoalitionGame::new(game, a.model);
    let game = cg.base();

    let query: &str;
    let yes: bool;
    let verdict: Value;
    let mut human: String;
    if let Some(names) = &a.coalition {
        let coalition = parse_coalition(game, names)?;
        let v = solver.value(&cg, &coalition)?;
        query = "coalition";
        yes = v > 0;
        verdict = json!(v);
        human = format!("v({}) = {v}", coalition_str(game, &coalition));
    } else if a.table {
        let table = solver.value_table(&cg)?;
        query = "table";
        yes = true;
        verdict = Value::Array(
            table
                .iter()
                .map(|(c, v)| {
                    json!({
                        "coalition": c.iter().map(|&i| game.players()[i].clone()).collect::<Vec<_>>(),
                        "value": v,
                    })
                })
                .collect(),
        );
        human = format!("{} model, {} coalitions", cg.model(), table.len());
        for (c, v) in &table {
            write!(human, "\nv({}) = {v}", coalition_str(game, c)).unwrap();
        }
    } else if a.veto {
        let veto = solver.veto_players(&cg)?;
        query = "veto";
        yes = true;
        verdict = Value::Array(veto.iter().map(|&i| json!(game.players()[i])).collect());
        human = format!("veto players: {}", name_list(game, &veto));
    } else if a.dummy {
        let dummies = solver.dummy_players(&cg)?;
        query = "dummy";
        yes = true;
        verdict = Value::Array(dummies.iter().map(|&i| json!(game.players()[i])).collect());
        human = format!("dummy players: {}", name_list(game, &dummies));
    } else {
        let text = a.core.as_ref().unwrap();
        let payoff = parse_payoff(text)?;
        let inside = solver.in_core(&cg, &payoff)?;
        query = "core";
        yes = inside;
        verdict = json!(inside);
        human = format!("payoff ({text}) in the core: {}", yn(inside));
    }
    push_stats_line(&mut human, solver.prover(), started);

    let mut inputs = game_inputs(&a.game, game, &[("model", cg.model().to_string())]);
    inputs["query"] = json!(query);
    if let Some(names) = &a.coalition {
        inputs["coalition"] = json!(names);
    }
    if let Some(text) = &a.core {
        inputs["payoff"] = json!(text);
    }

    Ok(finish(
        a.output.json,
        yes,
        human,
        "coop",
        inputs,
        verdict,
        None,
        stats_json(solver.prover(), started),
    ))
}

fn validate_cmd(a: ValidateArgs, started: Instant) -> Result<Report, Failure> {
    let game = load_game(&a.game)?;
    let pool = game.pool();
    let space = profile_space(&game);

    let mut human = format!(
        "players: {} ({})\nlogic: {}\npool: {pool} ({} resources)\nprofile space: {} profiles",
        game.player_count(),
        game.players().join(", "),
        game.mode(),
        pool.size(),
        space.map_or_else(|| "over 2^128".into(), |n: u128| n.to_string()),
    );
    for (i, name) in game.players().iter().enumerate() {
        write!(
            human,
            "\nplayer {name}: goal {}, endowment {}",
            game.goal(i),
            game.endowment(i)
        )
        .unwrap();
    }

    let verdict = json!({
        "players": game.players(),
        "logic": game.mode().to_string(),
        "pool": bag_json(&pool),
        "pool_size": pool.size(),
        "profile_space": space.map(|n| n.to_string()),
    });
    let stats = json!({
        "prover_queries": 0,
        "nodes_expanded": 0,
        "cache_hits": 0,
        "wall_ms": started.elapsed().as_millis() as u64,
    });
    Ok(finish(
        a.output.json,
        true,
        human,
        "validate",
        game_inputs(&a.game, &game, &[]),
        verdict,
        None,
        stats,
    ))
}

/// Loads a game file, applying any mode or fragment override.
fn load_game(a: &GameArgs) -> Result<Game, Failure> {
    let text = fs::read_to_string(&a.game)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.game.display())))?;
    let mut game = resgame_core::parse_game(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.game.display())))?;
    if a.mode.is_some() || a.fragment.is_some() {
        let mode = LogicMode {
            weakening: a.mode.unwrap_or(game.mode().weakening),
            fragment: a.fragment.unwrap_or(game.mode().fragment),
        };
        game = Game::new(
            mode,
            game.players().to_vec(),
            game.goals().to_vec(),
            game.endowments().to_vec(),
        )?;
    }
    Ok(game)
}

fn build_solver(l: &LimitArgs) -> Result<Solver, Failure> {
    let mut caps = Caps::default();
    if let Some(p) = l.limit_pool {
        caps.max_pool = p;
    }
    if let Some(p) = l.limit_profiles {
        caps.max_profile_space = p;
    }
    let mut solver = Solver::new(prover_limits(l), caps);
    match l.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(1) => solver.set_parallel(false),
        Some(n) => configure_pool(n)?,
        None => {}
    }
    Ok(solver)
}

fn prover_limits(l: &LimitArgs) -> ProverLimits {
    let mut limits = ProverLimits::default();
    if let Some(ms) = l.prover_budget_ms {
        limits.budget = Some(Duration::from_millis(ms));
    }
    limits
}

#[cfg(feature = "parallel")]
fn configure_pool(n: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the worker pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_: usize) -> Result<(), Failure> {
    Ok(())
}

/// First player whose concentration admits no equilibrium with the profile's
/// outcome; mirrors the elimination decision, so a "yes" always has one.
fn elimination_witness(
    solver: &Solver,
    game: &Game,
    p: &Profile,
    kind: PrefKind,
) -> Result<Option<usize>, SolveError> {
    let out = p.outcome();
    for i in 0..game.player_count() {
        let concentrated = game.with_endowments(game.concentrated(i).into_bags())?;
        let q = concentrated.one_active_profile(i, out.clone());
        if !solver.is_nash(&concentrated, &q, kind)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn satisfied_players(
    solver: &Solver,
    game: &Game,
    outcome: &ResourceBag,
) -> Result<Vec<usize>, Failure> {
    let mut sat = Vec::new();
    for i in 0..game.player_count() {
        if solver.satisfies(game, outcome, i)? {
            sat.push(i);
        }
    }
    Ok(sat)
}

fn parse_coalition(game: &Game, names: &str) -> Result<Vec<usize>, Failure> {
    let mut coalition = Vec::new();
    for name in names.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        match game.player_index(name) {
            Some(i) => coalition.push(i),
            None => return Err(Failure::Usage(format!("unknown player {name:?}"))),
        }
    }
    Ok(coalition)
}

fn parse_payoff(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| Failure::Usage(format!("bad payoff entry {:?}: {e}", x.trim())))
        })
        .collect()
}

fn profile_space(game: &Game) -> Option<u128> {
    game.endowments()
        .iter()
        .try_fold(1u128, |acc, e| acc.checked_mul(e.multisubset_count()?))
}

fn coalition_str(game: &Game, coalition: &[usize]) -> String {
    let names: Vec<&str> = coalition.iter().map(|&i| game.players()[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

fn name_list(game: &Game, idxs: &[usize]) -> String {
    if idxs.is_empty() {
        "nobody".into()
    } else {
        idxs.iter()
            .map(|&i| game.players()[i].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bag_json(bag: &ResourceBag) -> Value {
    Value::Array(bag.iter().map(|f| json!(f.to_string())).collect())
}

fn bags_by_player_json(game: &Game, bags: &[ResourceBag]) -> Value {
    let mut m = Map::new();
    for (name, bag) in game.players().iter().zip(bags) {
        m.insert(name.clone(), bag_json(bag));
    }
    Value::Object(m)
}

fn profile_json(game: &Game, p: &Profile) -> Value {
    bags_by_player_json(game, p.contributions())
}

fn game_inputs(args: &GameArgs, game: &Game, extra: &[(&str, String)]) -> Value {
    let mut m = Map::new();
    m.insert("game".into(), json!(args.game.display().to_string()));
    m.insert("logic".into(), json!(game.mode().to_string()));
    for (k, v) in extra {
        m.insert((*k).into(), json!(v));
    }
    Value::Object(m)
}

fn stats_json(prover: &Prover, started: Instant) -> Value {
    json!({
        "prover_queries": prover.queries(),
        "nodes_expanded": prover.nodes_expanded(),
        "cache_hits": prover.cache_hits(),
        "wall_ms": started.elapsed().as_millis() as u64,
    })
}

fn push_stats_line(human: &mut String, prover: &Prover, started: Instant) {
    write!(
        human,
        "\nstats: {} prover queries, {} nodes, {} cache hits, {} ms",
        prover.queries(),
        prover.nodes_expanded(),
        prover.cache_hits(),
        started.elapsed().as_millis()
    )
    .unwrap();
}

#[allow(clippy::too_many_arguments)]
fn finish(
    json_out: bool,
    yes: bool,
    human: String,
    command: &str,
    inputs: Value,
    verdict: Value,
    witness: Option<Value>,
    stats: Value,
) -> Report {
    if json_out {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(command));
        doc.insert("inputs".into(), inputs);
        doc.insert("verdict".into(), verdict);
        if let Some(w) = witness {
            doc.insert("witness".into(), w);
        }
        doc.insert("stats".into(), stats);
        doc.insert("version".into(), json!(VERSION));
        Report {
            yes,
            text: serde_json::to_string_pretty(&Value::Object(doc)).unwrap(),
        }
    } else {
        Report { yes, text: human }
    }
}
