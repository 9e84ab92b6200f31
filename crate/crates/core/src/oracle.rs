//! Ground-truth P/N labels by retrograde analysis, the Wythoff closed form and
//! the row/column/diagonal structure checks.
//!
//! A grid of bound `N` labels every position with `x, y < N`. Since no move
//! increases a coordinate, the grid is closed downward and its labels are
//! exact regardless of the bound.
//!
//! Memory: `⌈N²/4⌉` bytes of packed 2-bit cells plus about `13·N` bytes of
//! per-column and per-diagonal bookkeeping. `N = 20000` needs 100 MB.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use crate::game::{Position, Ruleset};
use crate::golden;
use crate::{Error, Result};

/// Default memory budget for grid cells: 512 MiB.
pub const DEFAULT_BUDGET: usize = 512 << 20;

const CELL_P: u8 = 0b01;
const CELL_N: u8 = 0b10;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The previous player (second to move) wins.
    P,
    /// The next player wins.
    N,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// Bytes needed for the packed cells of a bound-`n` grid.
pub fn grid_bytes(n: usize) -> usize {
    n.saturating_mul(n).div_ceil(4)
}

/// Dense P/N labels for all positions with both coordinates below `bound`.
/// Stored row-major, 2 bits per cell (`01` = P, `10` = N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeGrid {
    ruleset: Ruleset,
    bound: usize,
    cells: Vec<u8>,
    /// Row of the unique P-position in each column, or `NONE` when it lies
    /// at or above the bound.
    p_row: Vec<u32>,
}

impl OutcomeGrid {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    fn cell(&self, x: usize, y: usize) -> u8 {
        let i = y * self.bound + x;
        (self.cells[i / 4] >> (2 * (i % 4))) & 0b11
    }

    /// Label of `(x, y)`. Panics if a coordinate is outside the grid.
    pub fn outcome(&self, x: u64, y: u64) -> Outcome {
        assert!(
            (x as usize) < self.bound && (y as usize) < self.bound,
            "({x},{y}) outside grid of bound {}",
            self.bound
        );
        match self.cell(x as usize, y as usize) {
            CELL_P => Outcome::P,
            _ => Outcome::N,
        }
    }

    pub fn is_p(&self, x: u64, y: u64) -> bool {
        self.outcome(x, y) == Outcome::P
    }

    /// Row of the P-position in column `x`, if it lies inside the grid.
    pub fn p_in_column(&self, x: u64) -> Option<u64> {
        match self.p_row.get(x as usize) {
            Some(&r) if r != NONE => Some(r as u64),
            _ => None,
        }
    }

    /// First column whose P-position is not inside the grid. Every column
    /// below it has its P-position inside the grid, so upper pairs with
    /// `a < safe_cutoff` are complete.
    pub fn safe_cutoff(&self) -> u64 {
        self.p_row.iter().position(|&r| r == NONE).unwrap_or(self.bound) as u64
    }

    /// All P-positions inside the grid, in column order.
    pub fn p_positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.p_row
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != NONE)
            .map(|(x, &r)| Position::new(x as u64, r as u64))
    }

    /// Writes the cache format: a header line `grid v1 ruleset=<id> bound=<N>`
    /// followed by the packed little-endian 2-bit cells.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "grid v1 ruleset={} bound={}", self.ruleset.id(), self.bound)?;
        w.write_all(&self.cells)?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(mut r: R) -> Result<Self> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("grid") || fields.next() != Some("v1") {
            return Err(Error::Format(format!("not a grid v1 header: {header:?}")));
        }
        let mut ruleset = None;
        let mut bound = None;
        for f in fields {
            match f.split_once('=') {
                Some(("ruleset", v)) => ruleset = Some(v.parse::<Ruleset>()?),
                Some(("bound", v)) => {
                    bound = Some(
                        v.parse::<usize>()
                            .map_err(|_| Error::Format(format!("bad bound {v:?}")))?,
                    )
                }
                _ => return Err(Error::Format(format!("unexpected header field {f:?}"))),
            }
        }
        let ruleset = ruleset.ok_or_else(|| Error::Format("header lacks ruleset".into()))?;
        let bound = bound.ok_or_else(|| Error::Format("header lacks bound".into()))?;
        let mut cells = vec![0u8; grid_bytes(bound)];
        r.read_exact(&mut cells)?;
        let mut grid = OutcomeGrid {
            ruleset,
            bound,
            cells,
            p_row: vec![NONE; bound],
        };
        for x in 0..bound {
            for y in 0..bound {
                match grid.cell(x, y) {
                    CELL_P => {
                        if grid.p_row[x] != NONE {
                            return Err(Error::Format(format!("column {x} has two P cells")));
                        }
                        grid.p_row[x] = y as u32;
                    }
                    CELL_N => {}
                    c => return Err(Error::Format(format!("invalid cell code {c} at ({x},{y})"))),
                }
            }
        }
        Ok(grid)
    }
}

/// Computes the grid with the default memory budget.
pub fn compute_grid(r: &Ruleset, bound: usize) -> Result<OutcomeGrid> {
    compute_grid_with_budget(r, bound, DEFAULT_BUDGET)
}

/// Retrograde sweep over columns in increasing order and, within a column,
/// rows in increasing order. The first cell of a column that no earlier
/// P-position attacks is P. Rows and diagonals already holding a P are kept
/// as flags, so the sweep never re-marks attacked cells; jump attacks are
/// looked up in the per-column P table.
pub fn compute_grid_with_budget(r: &Ruleset, bound: usize, budget: usize) -> Result<OutcomeGrid> {
    if bound == 0 {
        return Err(Error::Domain("grid bound must be at least 1".into()));
    }
    if bound >= NONE as usize {
        return Err(Error::Capacity {
            bound,
            bytes: usize::MAX,
            budget,
        });
    }
    let bytes = grid_bytes(bound);
    if bytes > budget {
        return Err(Error::Capacity {
            bound,
            bytes,
            budget,
        });
    }
    let n = bound;
    let offsets = r.jump_offsets();
    let mut row_used = vec![false; n];
    // diagonal y - x, shifted by n
    let mut diag_used = vec![false; 2 * n];
    let mut p_row = vec![NONE; n];
    let mut lowest_free = 0usize;

    for x in 0..n {
        while lowest_free < n && row_used[lowest_free] {
            lowest_free += 1;
        }
        'rows: for y in lowest_free..n {
            if row_used[y] || diag_used[y + n - x] {
                continue;
            }
            for &(dx, dy) in &offsets {
                let (dx, dy) = (dx as usize, dy as usize);
                if x >= dx && y >= dy && p_row[x - dx] == (y - dy) as u32 {
                    continue 'rows;
                }
            }
            p_row[x] = y as u32;
            row_used[y] = true;
            diag_used[y + n - x] = true;
            break;
        }
    }

    // 0b10 in every 2-bit slot
    let mut cells = vec![0xAAu8; bytes];
    for (x, &y) in p_row.iter().enumerate() {
        if y != NONE {
            let i = y as usize * n + x;
            let shift = 2 * (i % 4);
            cells[i / 4] = (cells[i / 4] & !(0b11 << shift)) | (CELL_P << shift);
        }
    }
    Ok(OutcomeGrid {
        ruleset: r.clone(),
        bound,
        cells,
        p_row,
    })
}

/// `(⌊φn⌋, ⌊φ²n⌋)`, the `n`-th upper P-position of Wythoff Nim.
pub fn wythoff_pair(n: u64) -> Result<(u64, u64)> {
    let a = golden::floor_phi(n)?;
    let b = a
        .checked_add(n)
        .ok_or_else(|| Error::Overflow(format!("⌊φ²·{n}⌋ exceeds u64")))?;
    Ok((a, b))
}

/// Upper P-pairs `(a_n, b_n)` with `b_n ≥ a_n`, indexed from `(0,0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence {
    pub pairs: Vec<(u64, u64)>,
    /// Pairs are complete for columns below this value.
    pub safe_cutoff: u64,
}

impl PSequence {
    pub fn a(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn b(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    /// `b_n - a_n - n` for every pair.
    pub fn band_offsets(&self) -> Vec<i64> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(n, &(a, b))| b as i64 - a as i64 - n as i64)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn upper_p_sequence(g: &OutcomeGrid) -> PSequence {
    let cutoff = g.safe_cutoff();
    let pairs = (0..cutoff)
        .filter_map(|a| g.p_in_column(a).map(|b| (a, b)))
        .filter(|&(a, b)| b >= a)
        .collect();
    PSequence {
        pairs,
        safe_cutoff: cutoff,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
    /// Diagonal `y - x = offset` (negative offsets lie below the main diagonal).
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineViolation {
    pub line: Line,
    pub index: i64,
    pub count: usize,
    pub expected: &'static str,
}

/// Outcome of [`check_structure`]. Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub safe_cutoff: u64,
    pub rows_checked: u64,
    pub columns_checked: u64,
    pub diagonals_checked: u64,
    /// Largest `C` such that every diagonal `0..=C` holds a P-position among
    /// the complete pairs; these diagonals are expected to hold exactly one.
    pub diagonal_coverage: Option<u64>,
    pub violations: Vec<LineViolation>,
    /// Number of complete upper pairs.
    pub pairs: usize,
    /// Prefixes `n` for which `{b_i - a_i : i ≤ n} = {0, …, n}`.
    pub coverage_prefixes: Vec<usize>,
    /// Longest run of consecutive prefixes where the coverage fails.
    pub max_coverage_gap: usize,
}

impl StructureReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether the difference coverage holds at every prefix.
    pub fn coverage_at_every_prefix(&self) -> bool {
        self.coverage_prefixes.len() == self.pairs
    }

    pub fn largest_coverage_prefix(&self) -> Option<usize> {
        self.coverage_prefixes.last().copied()
    }
}

/// Row, column and diagonal uniqueness within the safe range plus the
/// difference-coverage profile of the upper pairs.
pub fn check_structure(g: &OutcomeGrid) -> StructureReport {
    let n = g.bound();
    let cutoff = g.safe_cutoff() as usize;
    let seq = upper_p_sequence(g);
    let mut violations = Vec::new();

    let mut col_count = vec![0usize; n];
    let mut row_count = vec![0usize; n];
    // index y - x + n
    let mut diag_count = vec![0usize; 2 * n];
    for y in 0..n {
        for x in 0..n {
            if g.cell(x, y) == CELL_P {
                col_count[x] += 1;
                row_count[y] += 1;
                diag_count[y + n - x] += 1;
            }
        }
    }
    for i in 0..cutoff {
        if col_count[i] != 1 {
            violations.push(LineViolation {
                line: Line::Column,
                index: i as i64,
                count: col_count[i],
                expected: "exactly 1",
            });
        }
        if row_count[i] != 1 {
            violations.push(LineViolation {
                line: Line::Row,
                index: i as i64,
                count: row_count[i],
                expected: "exactly 1",
            });
        }
    }

    let diffs: BTreeSet<u64> = seq.pairs.iter().map(|&(a, b)| b - a).collect();
    let diagonal_coverage = (0u64..)
        .take_while(|c| diffs.contains(c))
        .last();
    for (i, &count) in diag_count.iter().enumerate() {
        let offset = i as i64 - n as i64;
        let covered = diagonal_coverage.is_some_and(|c| offset.unsigned_abs() <= c);
        if count > 1 || (covered && count != 1) {
            violations.push(LineViolation {
                line: Line::Diagonal,
                index: offset,
                count,
                expected: if covered { "exactly 1" } else { "at most 1" },
            });
        }
    }

    let mut seen = vec![false; seq.len() + 1];
    let mut below = 0usize;
    let mut coverage_prefixes = Vec::new();
    let mut gap = 0usize;
    let mut max_gap = 0usize;
    for (i, &(a, b)) in seq.pairs.iter().enumerate() {
        let d = (b - a) as usize;
        if d < seen.len() && !seen[d] {
            seen[d] = true;
        }
        while below < seen.len() && seen[below] {
            below += 1;
        }
        // {0..i} ⊆ diffs and |diffs of prefix| = i + 1 (diagonals are unique)
        if below > i {
            coverage_prefixes.push(i);
            gap = 0;
        } else {
            gap += 1;
            max_gap = max_gap.max(gap);
        }
    }

    StructureReport {
        safe_cutoff: cutoff as u64,
        rows_checked: cutoff as u64,
        columns_checked: cutoff as u64,
        diagonals_checked: 2 * n as u64 - 1,
        diagonal_coverage,
        violations,
        pairs: seq.len(),
        coverage_prefixes,
        max_coverage_gap: max_gap,
    }
}

/// Row of the P-position in every column `0..columns`, without a dense grid.
///
/// Column `a` holds a lower P-position exactly when `a` is the row of an
/// earlier upper P-position (one P-position per row and column). Otherwise
/// its P-position is `(a, a + d)` for the least unused diagonal `d` whose
/// cell is not attacked by a row or jump. Runs in time roughly linear in
/// `columns`; cross-checked against [`compute_grid`] in the tests.
pub fn partner_sweep(r: &Ruleset, columns: u64) -> Vec<u64> {
    let cols = columns as usize;
    let offsets = r.jump_offsets();
    let mut partner: Vec<u64> = vec![u64::MAX; 2 * cols + 64];
    let mut diag_used: Vec<bool> = vec![false; cols + 64];
    let mut first_free_diag = 0usize;
    for a in 0..cols {
        if partner[a] != u64::MAX {
            continue;
        }
        while diag_used[first_free_diag] {
            first_free_diag += 1;
        }
        let mut d = first_free_diag;
        let b = loop {
            if d >= diag_used.len() {
                diag_used.resize(2 * d + 1, false);
            }
            let y = a + d;
            if y >= partner.len() {
                partner.resize(2 * y + 1, u64::MAX);
            }
            let free = !diag_used[d]
                && partner[y] == u64::MAX
                && !offsets.iter().any(|&(dx, dy)| {
                    let (dx, dy) = (dx as usize, dy as usize);
                    a >= dx && y >= dy && partner[a - dx] == (y - dy) as u64
                });
            if free {
                break y;
            }
            d += 1;
        };
        diag_used[d] = true;
        partner[a] = b as u64;
        partner[b] = a as u64;
    }
    partner.truncate(cols);
    partner
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_cells(g: &OutcomeGrid) -> BTreeSet<(u64, u64)> {
        let n = g.bound() as u64;
        let mut s = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                if g.is_p(x, y) {
                    s.insert((x, y));
                }
            }
        }
        s
    }

    /// Brute force straight from the definition: P iff no option is P.
    fn brute(r: &Ruleset, n: u64) -> BTreeSet<(u64, u64)> {
        let mut p = vec![vec![false; n as usize]; n as usize];
        for s in 0..2 * n {
            for x in 0..n.min(s + 1) {
                let y = s - x;
                if y >= n {
                    continue;
                }
                let any_p = r
                    .moves_from(Position::new(x, y))
                    .iter()
                    .any(|q| p[q.x as usize][q.y as usize]);
                p[x as usize][y as usize] = !any_p;
            }
        }
        let mut out = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                if p[x as usize][y as usize] {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn wythoff_six() {
        let g = compute_grid(&Ruleset::wythoff(), 6).unwrap();
        let expect: BTreeSet<_> = [(0, 0), (1, 2), (2, 1), (3, 5), (5, 3)].into_iter().collect();
        assert_eq!(p_cells(&g), expect);
    }

    #[test]
    fn maharaja_three_has_only_origin() {
        let g = compute_grid(&Ruleset::maharaja(), 3).unwrap();
        assert_eq!(p_cells(&g), [(0, 0)].into_iter().collect());
        assert_eq!(g.outcome(1, 2), Outcome::N);
        assert_eq!(g.outcome(2, 1), Outcome::N);
    }

    #[test]
    fn maharaja_columns_eight_to_twelve() {
        let g = compute_grid(&Ruleset::maharaja(), 21).unwrap();
        let got: Vec<_> = (8..=12).map(|x| (x, g.p_in_column(x).unwrap())).collect();
        assert_eq!(got, vec![(8, 13), (9, 16), (10, 7), (11, 19), (12, 18)]);
    }

    #[test]
    fn grid_matches_brute_force() {
        for id in ["wythoff", "maharaja", "klm:2,3", "klm:3,5", "klm:1,3;2,5"] {
            let r: Ruleset = id.parse().unwrap();
            let g = compute_grid(&r, 30).unwrap();
            assert_eq!(p_cells(&g), brute(&r, 30), "{id}");
        }
    }

    #[test]
    fn grid_invariants() {
        for id in ["wythoff", "maharaja", "klm:2,3", "klm:4,7"] {
            let r: Ruleset = id.parse().unwrap();
            let g = compute_grid(&r, 60).unwrap();
            assert!(g.is_p(0, 0));
            for x in 0..60 {
                for y in 0..60 {
                    assert_eq!(g.outcome(x, y), g.outcome(y, x));
                    let p = Position::new(x, y);
                    let has_p_option = r.options(p).any(|q| g.is_p(q.x, q.y));
                    assert_eq!(g.outcome(x, y) == Outcome::N, has_p_option, "{id} {p}");
                }
            }
            assert_eq!(g, compute_grid(&r, 60).unwrap());
        }
    }

    #[test]
    fn capacity_error() {
        let err = compute_grid_with_budget(&Ruleset::wythoff(), 1000, 1000).unwrap_err();
        assert!(matches!(err, Error::Capacity { bound: 1000, .. }));
        assert!(compute_grid(&Ruleset::wythoff(), 0).is_err());
    }

    #[test]
    fn wythoff_pairs() {
        assert_eq!(wythoff_pair(0).unwrap(), (0, 0));
        assert_eq!(wythoff_pair(1).unwrap(), (1, 2));
        assert_eq!(wythoff_pair(5).unwrap(), (8, 13));
        let g = compute_grid(&Ruleset::wythoff(), 20).unwrap();
        assert!(g.is_p(8, 13));
        assert!(wythoff_pair(u64::MAX).is_err());
    }

    #[test]
    fn upper_sequences() {
        let w = upper_p_sequence(&compute_grid(&Ruleset::wythoff(), 20).unwrap());
        assert_eq!(&w.pairs[..5], &[(0, 0), (1, 2), (3, 5), (4, 7), (6, 10)]);

        let m = upper_p_sequence(&compute_grid(&Ruleset::maharaja(), 60).unwrap());
        assert_eq!(m.pairs[0], (0, 0));
        for p in [(8, 13), (9, 16), (11, 19), (12, 18)] {
            assert!(m.pairs.contains(&p));
        }

        let t = upper_p_sequence(&compute_grid(&Ruleset::klm(2, 3).unwrap(), 60).unwrap());
        for p in [(1, 2), (3, 6), (4, 8), (5, 7)] {
            assert!(t.pairs.contains(&p));
        }
    }

    #[test]
    fn structure_reports() {
        let w = check_structure(&compute_grid(&Ruleset::wythoff(), 400).unwrap());
        assert!(w.is_ok(), "{:?}", w.violations);
        assert!(w.coverage_at_every_prefix());

        let m = check_structure(&compute_grid(&Ruleset::maharaja(), 400).unwrap());
        assert!(m.is_ok(), "{:?}", m.violations);
        // (9,16) uses diagonal 7 before diagonal 6 is taken by (12,18)
        assert!(!m.coverage_prefixes.contains(&6));
        assert!(m.coverage_prefixes.contains(&5));

        let t = check_structure(&compute_grid(&Ruleset::klm(2, 3).unwrap(), 400).unwrap());
        assert!(t.is_ok(), "{:?}", t.violations);
    }

    #[test]
    fn grid_file_round_trip() {
        let g = compute_grid(&Ruleset::klm(2, 3).unwrap(), 37).unwrap();
        let mut buf = Vec::new();
        g.write_to(&mut buf).unwrap();
        assert!(buf.starts_with(b"grid v1 ruleset=klm:2,3 bound=37\n"));
        let back = OutcomeGrid::read_from(&buf[..]).unwrap();
        assert_eq!(back, g);
        assert!(OutcomeGrid::read_from(&b"bits v1\n"[..]).is_err());
    }

    #[test]
    fn partner_sweep_matches_grid() {
        for id in ["wythoff", "maharaja", "klm:2,3", "klm:3,5", "klm:1,3;2,5", "klm:7,11"] {
            let r: Ruleset = id.parse().unwrap();
            let g = compute_grid(&r, 1500).unwrap();
            let cut = g.safe_cutoff();
            let sweep = partner_sweep(&r, cut);
            for x in 0..cut {
                assert_eq!(Some(sweep[x as usize]), g.p_in_column(x), "{id} column {x}");
            }
        }
    }
}
