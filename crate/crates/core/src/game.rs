//! Board positions, rulesets and move generation.
//!
//! Every ruleset contains the Wythoff moves (rook and bishop moves toward the
//! origin). A ruleset may adjoin a finite set of jumps `(k, l)`, which are
//! always applied symmetrically as `(k, l)` and `(l, k)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A lattice point on the quarter-infinite board. `x` is the column, `y` the row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub const fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    /// The mirror image across the main diagonal.
    pub const fn transposed(self) -> Self {
        Position { x: self.y, y: self.x }
    }

    pub const fn is_terminal(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Strictly above the main diagonal.
    pub const fn is_upper(self) -> bool {
        self.y > self.x
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for Position {
    type Err = Error;

    /// Accepts `x,y` or `(x,y)` with optional whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x,y`, got {s:?}")))?;
        let x = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad column in {s:?}")))?;
        let y = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad row in {s:?}")))?;
        Ok(Position { x, y })
    }
}

/// `true` iff `p` is the origin, the only position without options.
pub fn is_terminal(p: Position) -> bool {
    p.is_terminal()
}

/// An adjoined jump. Stored normalized with `k < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Jump {
    pub k: u64,
    pub l: u64,
}

impl Jump {
    pub fn new(k: u64, l: u64) -> Result<Self, Error> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidRuleset(format!(
                "jump ({k},{l}) must have positive coordinates"
            )));
        }
        if k == l {
            return Err(Error::InvalidRuleset(format!(
                "jump ({k},{l}) is a diagonal move and already part of Wythoff Nim"
            )));
        }
        Ok(Jump {
            k: k.min(l),
            l: k.max(l),
        })
    }

    /// Both orientations, `(k, l)` and `(l, k)`, as `(dx, dy)` offsets.
    pub fn offsets(self) -> [(u64, u64); 2] {
        [(self.k, self.l), (self.l, self.k)]
    }
}

/// Wythoff Nim plus a finite set of symmetric jumps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ruleset {
    jumps: BTreeSet<Jump>,
}

impl Ruleset {
    pub fn wythoff() -> Self {
        Ruleset {
            jumps: BTreeSet::new(),
        }
    }

    /// Wythoff Nim with the Knight's `(1,2)` and `(2,1)` jumps.
    pub fn maharaja() -> Self {
        Self::with_jumps([(1, 2)]).expect("(1,2) is a valid jump")
    }

    pub fn klm(k: u64, l: u64) -> Result<Self, Error> {
        Self::with_jumps([(k, l)])
    }

    pub fn with_jumps<I: IntoIterator<Item = (u64, u64)>>(jumps: I) -> Result<Self, Error> {
        let jumps = jumps
            .into_iter()
            .map(|(k, l)| Jump::new(k, l))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Ruleset { jumps })
    }

    pub fn jumps(&self) -> impl Iterator<Item = Jump> + '_ {
        self.jumps.iter().copied()
    }

    /// Every jump orientation as a `(dx, dy)` offset.
    pub fn jump_offsets(&self) -> Vec<(u64, u64)> {
        self.jumps.iter().flat_map(|j| j.offsets()).collect()
    }

    pub fn is_wythoff(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Canonical identifier: `wythoff`, `maharaja` or `klm:<k>,<l>[;<k>,<l>...]`.
    pub fn id(&self) -> String {
        if self.jumps.is_empty() {
            return "wythoff".into();
        }
        if *self == Self::maharaja() {
            return "maharaja".into();
        }
        let pairs: Vec<String> = self.jumps.iter().map(|j| format!("{},{}", j.k, j.l)).collect();
        format!("klm:{}", pairs.join(";"))
    }

    /// Options of `p`, without duplicates.
    pub fn moves_from(&self, p: Position) -> BTreeSet<Position> {
        self.options(p).collect()
    }

    /// Lazily enumerates the options of `p`, family by family. A jump never
    /// lands on a rook or bishop target (`k, l > 0`, `k != l`), so each option
    /// appears once.
    pub fn options(&self, p: Position) -> impl Iterator<Item = Position> + '_ {
        let Position { x, y } = p;
        let left = (1..=x).map(move |t| Position::new(x - t, y));
        let down = (1..=y).map(move |t| Position::new(x, y - t));
        let diag = (1..=x.min(y)).map(move |t| Position::new(x - t, y - t));
        let jumps = self
            .jumps
            .iter()
            .flat_map(|j| j.offsets())
            .filter(move |&(dx, dy)| dx <= x && dy <= y)
            .map(move |(dx, dy)| Position::new(x - dx, y - dy));
        left.chain(down).chain(diag).chain(jumps)
    }

    /// Whether `q` is reachable from `p` in one move.
    pub fn is_move(&self, p: Position, q: Position) -> bool {
        if q.x > p.x || q.y > p.y || p == q {
            return false;
        }
        let (dx, dy) = (p.x - q.x, p.y - q.y);
        dx == 0 || dy == 0 || dx == dy || self.jump_offsets().contains(&(dx, dy))
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Ruleset {
    type Err = Error;

    /// Parses canonical identifiers plus the shorthands `w`, `m` and `23m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "wythoff" | "w" => Ok(Ruleset::wythoff()),
            "maharaja" | "m" => Ok(Ruleset::maharaja()),
            "23m" => Ruleset::klm(2, 3),
            other => {
                let body = other
                    .strip_prefix("klm:")
                    .ok_or_else(|| Error::InvalidRuleset(format!("unknown game {other:?}")))?;
                let mut jumps = Vec::new();
                for pair in body.split(';').filter(|p| !p.trim().is_empty()) {
                    let (k, l) = pair
                        .split_once(',')
                        .ok_or_else(|| Error::InvalidRuleset(format!("bad jump {pair:?}")))?;
                    let k = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidRuleset(format!("bad jump {pair:?}")))?;
                    let l = l
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidRuleset(format!("bad jump {pair:?}")))?;
                    jumps.push((k, l));
                }
                if jumps.is_empty() {
                    return Err(Error::InvalidRuleset(format!("no jumps in {other:?}")));
                }
                Ruleset::with_jumps(jumps)
            }
        }
    }
}
