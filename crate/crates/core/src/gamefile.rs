//! Line-oriented text format for games and profile literals.
//!
//! A game file holds one `logic:` line followed by one `player` line per
//! player. `#` starts a comment anywhere; blank lines are skipped.
//!
//! ```text
//! logic: affine mall
//! player ann  goal: bread         endow: aclock
//! player bob  goal: aclock        endow: flour, flour, flour -o bread
//! ```
//!
//! A profile literal names contributions per player, `;`-separated:
//! `ann: aclock; bob:`. Unmentioned players contribute nothing.

use crate::bag::ResourceBag;
use crate::games::{Game, Profile, SolveError};
use crate::parse::{parse_formula, ParseError};
use crate::sequent::LogicMode;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameTextError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Shape(String),
}

impl GameTextError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        GameTextError::Line {
            line,
            message: message.into(),
        }
    }
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(pos) => &raw[..pos],
        None => raw,
    }
}

fn formula_at(text: &str, mode: LogicMode, line: usize) -> Result<crate::Formula, GameTextError> {
    parse_formula(text, mode.fragment).map_err(|e| remap(e, line))
}

fn remap(e: ParseError, line: usize) -> GameTextError {
    GameTextError::at(line, e.to_string())
}

/// Comma-separated formulas; empty text is the empty bag, but a dangling or
/// doubled comma is an error.
fn bag_at(text: &str, mode: LogicMode, line: usize) -> Result<ResourceBag, GameTextError> {
    if text.trim().is_empty() {
        return Ok(ResourceBag::new());
    }
    let mut bag = ResourceBag::new();
    for part in text.split(',') {
        bag.insert(formula_at(part, mode, line)?);
    }
    Ok(bag)
}

pub fn parse_game(text: &str) -> Result<Game, GameTextError> {
    let mut mode: Option<LogicMode> = None;
    let mut players: Vec<String> = Vec::new();
    let mut goals = Vec::new();
    let mut endowments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("logic:") {
            if mode.is_some() {
                return Err(GameTextError::at(lineno, "second logic: line"));
            }
            mode = Some(
                rest.trim()
                    .parse::<LogicMode>()
                    .map_err(|e| GameTextError::at(lineno, e))?,
            );
        } else if line.starts_with("player") && line[6..].starts_with(char::is_whitespace) {
            let Some(mode) = mode else {
                return Err(GameTextError::at(
                    lineno,
                    "player line before the logic: line",
                ));
            };
            let rest = &line[6..];
            let Some(goal_pos) = rest.find("goal:") else {
                return Err(GameTextError::at(lineno, "player line without goal:"));
            };
            let name = rest[..goal_pos].trim();
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains(':') {
                return Err(GameTextError::at(
                    lineno,
                    format!("bad player name {name:?}"),
                ));
            }
            let after_goal = &rest[goal_pos + 5..];
            let Some(endow_pos) = after_goal.find("endow:") else {
                return Err(GameTextError::at(lineno, "player line without endow:"));
            };
            let goal = formula_at(&after_goal[..endow_pos], mode, lineno)?;
            let endowment = bag_at(&after_goal[endow_pos + 6..], mode, lineno)?;
            players.push(name.to_string());
            goals.push(goal);
            endowments.push(endowment);
        } else {
            return Err(GameTextError::at(
                lineno,
                format!("expected logic: or player, found {line:?}"),
            ));
        }
    }
    let Some(mode) = mode else {
        return Err(GameTextError::Shape("no logic: line".into()));
    };
    Game::new(mode, players, goals, endowments).map_err(|e: SolveError| match e {
        SolveError::InvalidGame(msg) => GameTextError::Shape(msg),
        other => GameTextError::Shape(other.to_string()),
    })
}

pub fn serialize_game(game: &Game) -> String {
    let mut out = format!("logic: {}\n", game.mode());
    for (i, name) in game.players().iter().enumerate() {
        let endow = game
            .endowment(i)
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "player {name}  goal: {}  endow: {endow}\n",
            game.goal(i)
        ));
    }
    out
}

/// Parse `name: f1, f2; name2: ...` against a game. Contributions must come
/// from the named player's endowment.
pub fn parse_profile(game: &Game, text: &str) -> Result<Profile, GameTextError> {
    let mut contributions = vec![ResourceBag::new(); game.player_count()];
    let mut seen = vec![false; game.player_count()];
    for entry in text.split(';') {
        if entry.trim().is_empty() {
            continue;
        }
        let Some((name, formulas)) = entry.split_once(':') else {
            return Err(GameTextError::Shape(format!(
                "profile entry {:?} is missing its colon",
                entry.trim()
            )));
        };
        let name = name.trim();
        let Some(i) = game.player_index(name) else {
            return Err(GameTextError::Shape(format!("no player named {name:?}")));
        };
        if seen[i] {
            return Err(GameTextError::Shape(format!(
                "player {name:?} appears twice"
            )));
        }
        seen[i] = true;
        contributions[i] = bag_at(formulas, game.mode(), 1)?;
    }
    let profile = Profile::new(contributions);
    profile
        .validate_in(game)
        .map_err(|e| GameTextError::Shape(e.to_string()))?;
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{atom, lolli, tensor};
    use crate::sequent::AFFINE_MALL;

    const DIVORCE: &str = "\
# who gets what
logic: affine mll
player ann  goal: bread   endow: aclock
player bob  goal: aclock  endow: flour, flour, flour -o bread
";

    #[test]
    fn parses_a_full_game_file() {
        let g = parse_game(DIVORCE).unwrap();
        assert_eq!(g.players(), ["ann".to_string(), "bob".to_string()]);
        assert_eq!(g.goal(0), &atom("bread"));
        assert_eq!(g.endowment(1).count(&atom("flour")), 2);
        assert_eq!(
            g.endowment(1).count(&lolli(atom("flour"), atom("bread"))),
            1
        );
    }

    #[test]
    fn round_trips_through_serialization() {
        let g = parse_game(DIVORCE).unwrap();
        let text = serialize_game(&g);
        let g2 = parse_game(&text).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn empty_endowment_serializes_and_parses() {
        let g = Game::new(
            AFFINE_MALL,
            vec!["solo".into()],
            vec![tensor(atom("A"), atom("A"))],
            vec![ResourceBag::new()],
        )
        .unwrap();
        assert_eq!(parse_game(&serialize_game(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_formula = "logic: affine mall\nplayer a  goal: A *  endow: B\n";
        match parse_game(bad_formula) {
            Err(GameTextError::Line { line: 2, .. }) => {}
            other => panic!("expected line 2 error, got {other:?}"),
        }
        let no_logic = "player a  goal: A  endow:\n";
        assert!(matches!(
            parse_game(no_logic),
            Err(GameTextError::Line { line: 1, .. })
        ));
        let fragment = "logic: linear mll\nplayer a  goal: A & B  endow:\n";
        assert!(matches!(
            parse_game(fragment),
            Err(GameTextError::Line { line: 2, .. })
        ));
        let dup = "logic: affine mall\nplayer a  goal: A  endow:\nplayer a  goal: B  endow:\n";
        assert!(matches!(parse_game(dup), Err(GameTextError::Shape(_))));
    }

    #[test]
    fn profile_literals_default_to_empty() {
        let g = parse_game(DIVORCE).unwrap();
        let p = parse_profile(&g, "bob: flour, flour").unwrap();
        assert!(p.contribution(0).is_empty());
        assert_eq!(p.contribution(1).count(&atom("flour")), 2);
        let empty = parse_profile(&g, "").unwrap();
        assert!(empty.outcome().is_empty());
        assert!(parse_profile(&g, "carol: aclock").is_err());
        assert!(parse_profile(&g, "ann: bread").is_err(), "not in endowment");
        assert!(parse_profile(&g, "ann: aclock; ann: aclock").is_err());
    }
}
