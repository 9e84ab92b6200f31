//! Play against the engine over any line-based reader and writer.

use std::io::{BufRead, Write};

use crate::game::{Position, Ruleset};
use crate::oracle::{Outcome, OutcomeGrid};
use crate::strategist::Telescope;
use crate::{Error, Result};

/// Anything that can label positions P or N.
pub trait Strategy {
    fn outcome(&self, p: Position) -> Result<Outcome>;
}

impl Strategy for OutcomeGrid {
    fn outcome(&self, p: Position) -> Result<Outcome> {
        let n = self.bound() as u64;
        if p.x >= n || p.y >= n {
            return Err(Error::Domain(format!("{p} is outside the grid of bound {n}")));
        }
        Ok(OutcomeGrid::outcome(self, p.x, p.y))
    }
}

impl Strategy for Telescope {
    fn outcome(&self, p: Position) -> Result<Outcome> {
        Ok(self.decide(p)?.0)
    }
}

/// The engine's reply: a move to a P-position if there is one, otherwise the
/// first legal option.
pub fn engine_move<S: Strategy + ?Sized>(r: &Ruleset, s: &S, p: Position) -> Result<Option<Position>> {
    let mut first = None;
    for q in r.options(p) {
        if s.outcome(q)? == Outcome::P {
            return Ok(Some(q));
        }
        first.get_or_insert(q);
    }
    Ok(first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    Human,
    Engine,
}

fn rule_text(r: &Ruleset) -> String {
    let mut s = String::from(
        "move any positive number of squares left, down, or diagonally down-left",
    );
    for j in r.jumps() {
        s.push_str(&format!(", or jump by ({},{}) or ({},{})", j.k, j.l, j.l, j.k));
    }
    s.push_str("; no coordinate may increase");
    s
}

/// Parses `x,y`, `(x,y)`, or `(a,b)->(x,y)` (also with `→`). In the last
/// form the source must be the current position.
fn parse_move(line: &str, current: Position) -> std::result::Result<Position, String> {
    let line = line.trim();
    let (from, to) = match line.split_once("->").or_else(|| line.split_once('→')) {
        Some((a, b)) => (Some(a.trim()), b.trim()),
        None => (None, line),
    };
    if let Some(from) = from {
        let f: Position = from.parse().map_err(|_| format!("cannot read {from:?} as a position"))?;
        if f != current {
            return Err(format!("{f} is not the current position {current}"));
        }
    }
    to.parse().map_err(|_| format!("cannot read {to:?} as a position"))
}

fn illegal_reason(r: &Ruleset, p: Position, q: Position) -> Option<&'static str> {
    if q.x > p.x || q.y > p.y {
        Some("a coordinate increased")
    } else if q == p {
        Some("you must move")
    } else if !r.is_move(p, q) {
        Some("that is not a legal move")
    } else {
        None
    }
}

/// Runs a session from `start`. Returns the winner, or `None` if the input
/// ended (or the human typed `quit`) first.
pub fn play<S, R, W>(
    r: &Ruleset,
    s: &S,
    start: Position,
    human_first: bool,
    mut input: R,
    mut out: W,
) -> Result<Option<Player>>
where
    S: Strategy + ?Sized,
    R: BufRead,
    W: Write,
{
    writeln!(out, "{} from {start}. Rules: {}.", r.id(), rule_text(r))?;
    writeln!(out, "Whoever moves to (0,0) wins. Enter moves as x,y.")?;
    let mut p = start;
    let mut human = human_first;
    if p.is_terminal() {
        writeln!(out, "the game starts at (0,0); nothing to play")?;
        return Ok(None);
    }
    loop {
        if human {
            write!(out, "position {p}; your move> ")?;
            out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                writeln!(out)?;
                return Ok(None);
            }
            if matches!(line.trim(), "quit" | "q") {
                return Ok(None);
            }
            let q = match parse_move(&line, p) {
                Ok(q) => q,
                Err(e) => {
                    writeln!(out, "{e}. Rule: {}.", rule_text(r))?;
                    continue;
                }
            };
            if let Some(reason) = illegal_reason(r, p, q) {
                writeln!(out, "illegal move {p} -> {q}: {reason}. Rule: {}.", rule_text(r))?;
                continue;
            }
            p = q;
        } else {
            let q = engine_move(r, s, p)?.expect("non-terminal positions have options");
            writeln!(out, "engine moves {p} -> {q}")?;
            p = q;
        }
        if p.is_terminal() {
            let winner = if human { Player::Human } else { Player::Engine };
            match winner {
                Player::Human => writeln!(out, "(0,0) reached: you win")?,
                Player::Engine => writeln!(out, "(0,0) reached: the engine wins")?,
            }
            return Ok(Some(winner));
        }
        human = !human;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::compute_grid;

    fn session(r: &Ruleset, start: Position, human_first: bool, input: &str) -> (Option<Player>, String) {
        let g = compute_grid(r, (start.x.max(start.y) + 1) as usize).unwrap();
        let mut out = Vec::new();
        let w = play(r, &g, start, human_first, input.as_bytes(), &mut out).unwrap();
        (w, String::from_utf8(out).unwrap())
    }

    #[test]
    fn engine_jumps_to_origin() {
        let (w, text) = session(&Ruleset::maharaja(), Position::new(1, 2), false, "");
        assert_eq!(w, Some(Player::Engine));
        assert!(text.contains("engine moves (1,2) -> (0,0)"));
    }

    #[test]
    fn increasing_move_is_rejected() {
        let (w, text) = session(&Ruleset::maharaja(), Position::new(3, 4), true, "(3,4)→(4,4)\n");
        assert_eq!(w, None);
        assert!(text.contains("a coordinate increased"));
        assert!(text.contains("jump by (1,2) or (2,1)"));
    }

    #[test]
    fn engine_replies_with_p_positions() {
        let r = Ruleset::maharaja();
        let g = compute_grid(&r, 40).unwrap();
        for x in 0..40 {
            for y in 0..40 {
                let p = Position::new(x, y);
                if g.is_p(x, y) {
                    continue;
                }
                let q = engine_move(&r, &g, p).unwrap().unwrap();
                assert!(g.is_p(q.x, q.y) && r.is_move(p, q), "{p} -> {q}");
            }
        }
    }

    #[test]
    fn human_can_win() {
        let r = Ruleset::wythoff();
        let (w, text) = session(&r, Position::new(2, 2), true, "0,0\n");
        assert_eq!(w, Some(Player::Human), "{text}");
        let (w, _) = session(&r, Position::new(4, 4), true, "5,4\n2,2->1,2\n4,4->1,2\nquit\n");
        assert_eq!(w, None);
    }
}
