//! Logarithmic-depth outcome decision for (2,3)-Maharaja Nim.
//!
//! The upper P-position of column `a` sits on row `a_w + Z(a_w) + δ`, where
//! `a_w` is the start of the dictionary word containing `a`, `Z(c)` counts
//! the `0`s of the bit-string before column `c`, and `δ` depends only on the
//! word and the position of `a` inside it. A word read at a boundary `A`
//! writes its translate at `A + Z(A)`, roughly `φA`. To find the word around a
//! large column we reflect the column down by factors of `φ` into a short
//! precomputed base, then translate a window of constant width back up,
//! re-synchronising the word parse at every level.
//!
//! Two identities make the bookkeeping exact and are checked against the
//! oracle in [`Telescope::certify`]: at every word boundary `A`,
//! `Z(A + Z(A)) = A + 1`, and a parse started anywhere agrees with the true
//! parse after at most `q` bits.

use std::fmt;

use crate::codec::{bits_from_partners, klm23_dictionary, KLM23_WORDS};
use crate::dictionary::{bits_to_string, Dictionary};
use crate::game::{Position, Ruleset};
use crate::golden::{ceil_log_phi, floor_div_phi, floor_phi};
use crate::oracle::{partner_sweep, Outcome};
use crate::{Error, Result};

/// Bit-string of (2,3)-Maharaja Nim from column 0 and its true word starts,
/// generated by the dictionary from the seed of columns `0..14`.
#[derive(Clone, Debug)]
pub struct Reference {
    pub bits: Vec<u8>,
    /// `boundary[c]` iff a word of the parse from column 1 starts at `c`.
    pub boundary: Vec<bool>,
}

/// Columns `0..14` of (2,3)-Maharaja Nim.
const SEED_BITS: [u8; 14] = [0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0];
/// First column read by the dictionary process.
const SEED_HEAD: usize = 9;
/// Column 0 is the terminal position and never part of a word.
const FIRST_WORD: usize = 1;

/// Marks the words of a longest-match parse of `bits` from `from`, stopping
/// where the lookahead would leave the string.
fn parse_boundaries(d: &Dictionary, bits: &[u8], from: usize) -> Vec<bool> {
    let look = d.max_word_len();
    let mut boundary = vec![false; bits.len()];
    let mut pos = from;
    while pos + look <= bits.len() {
        boundary[pos] = true;
        let i = d.match_at(bits, pos).expect("the words 0 and 1 always match");
        pos += d.entries()[i].word.len();
    }
    boundary
}

impl Reference {
    pub fn generate(len: usize) -> Result<Self> {
        let d = klm23_dictionary();
        let g = crate::codec::generate_bitstring(&d, &SEED_BITS, SEED_HEAD, len)?;
        let mut bits = g.bits;
        bits.truncate(len.max(SEED_BITS.len()));
        let boundary = parse_boundaries(&d, &bits, FIRST_WORD);
        Ok(Reference { bits, boundary })
    }

    /// From oracle partners instead of the dictionary.
    pub fn from_partners(partners: &[u64]) -> Self {
        let bits = bits_from_partners(partners);
        let boundary = parse_boundaries(&klm23_dictionary(), &bits, FIRST_WORD);
        Reference { bits, boundary }
    }
}

/// The ambiguous strings whose resolution shows the dictionary converges.
pub const AMBIGUOUS: [(char, &str); 6] = [
    ('a', "010001000"),
    ('b', "0101000"),
    ('c', "010101000"),
    ('d', "010001010"),
    ('e', "0101010"),
    ('f', "010101010"),
];

/// Evidence for a convergence window `q`.
#[derive(Clone, Debug)]
pub struct ConvergenceCertificate {
    pub q: usize,
    pub sample_len: usize,
    pub positions_checked: usize,
    /// A start position whose parse needed all `q` bits to agree.
    pub worst_position: usize,
    /// Occurrences of `11`, each confirmed to start a word at the first `1`.
    pub double_one_firings: usize,
    pub max_zero_run: usize,
    /// Occurrences of each ambiguous string (a)–(f).
    pub ambiguous: Vec<(char, &'static str, usize)>,
}

impl fmt::Display for ConvergenceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {} over {} start positions of a {}-bit sample (worst start {})",
            self.q, self.positions_checked, self.sample_len, self.worst_position)?;
        writeln!(f, "`11` confirmed as a word start {} times", self.double_one_firings)?;
        writeln!(f, "longest run of 0s: {}", self.max_zero_run)?;
        for (c, s, n) in &self.ambiguous {
            writeln!(f, "({c}) {s}: {n} occurrences")?;
        }
        Ok(())
    }
}

/// Parse from `start` (as if a word began there) until it meets a true word
/// boundary; returns the distance, or `None` past `cap` bits.
fn sync_distance(d: &Dictionary, r: &Reference, start: usize, cap: usize) -> Option<usize> {
    let mut pos = start;
    while pos < start + cap && pos + d.max_word_len() <= r.bits.len() {
        if r.boundary[pos] {
            return Some(pos - start);
        }
        pos += d.entries()[d.match_at(&r.bits, pos)?].word.len();
    }
    None
}

/// Measures the convergence window of `d` over a generated string of
/// `sample_len` bits: a parse started at any column agrees with the true
/// parse within `q` bits.
pub fn convergence_window(d: &Dictionary, sample_len: usize) -> Result<ConvergenceCertificate> {
    if d != &klm23_dictionary() {
        return Err(Error::Domain("convergence is certified for the (2,3) dictionary only".into()));
    }
    const CAP: usize = 1000;
    let r = Reference::generate(sample_len + CAP + 16)?;
    let mut q = 0;
    let mut worst = FIRST_WORD;
    for p in FIRST_WORD..sample_len {
        let dist = sync_distance(d, &r, p, CAP).ok_or_else(|| {
            Error::Convergence(format!("a parse from column {p} does not converge within {CAP} bits"))
        })?;
        if dist > q {
            q = dist;
            worst = p;
        }
    }
    let sample = &r.bits[FIRST_WORD..sample_len];
    let mut double_one_firings = 0;
    for i in FIRST_WORD..sample_len - 1 {
        if r.bits[i] == 1 && r.bits[i + 1] == 1 {
            if !(r.boundary[i] && r.boundary[i + 1]) {
                return Err(Error::Convergence(format!("`11` at column {i} is not a word start")));
            }
            double_one_firings += 1;
        }
    }
    let max_zero_run = sample.split(|&b| b == 1).map(<[u8]>::len).max().unwrap_or(0);
    if max_zero_run > 5 {
        return Err(Error::Convergence(format!("a run of {max_zero_run} 0s occurs")));
    }
    let ambiguous = AMBIGUOUS
        .iter()
        .map(|&(c, s)| {
            let pat = crate::dictionary::parse_bits(s).expect("literal bits");
            (c, s, sample.windows(pat.len()).filter(|w| *w == pat.as_slice()).count())
        })
        .collect();
    Ok(ConvergenceCertificate {
        q,
        sample_len,
        positions_checked: sample_len - FIRST_WORD,
        worst_position: worst,
        double_one_firings,
        max_zero_run,
        ambiguous,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TelescopeConfig {
    /// Convergence window in bits; at least the certified value.
    pub q: usize,
    /// Longest translate.
    pub c: usize,
    /// Columns of the precomputed base.
    pub base_len: usize,
    /// Levels allowed beyond `⌈log_φ x⌉`.
    pub depth_margin: u32,
    /// Columns of the oracle used to certify offsets, band and identities.
    pub oracle_columns: usize,
    /// Length of the generated sample for the convergence window.
    pub sample_len: usize,
}

impl Default for TelescopeConfig {
    fn default() -> Self {
        TelescopeConfig {
            q: 16,
            c: 9,
            base_len: 256,
            depth_margin: 2,
            oracle_columns: 20_000,
            sample_len: 100_000,
        }
    }
}

impl TelescopeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.c > self.q {
            return Err(Error::Domain(format!("c = {} exceeds q = {}", self.c, self.q)));
        }
        // base_len > φ·q
        if (self.base_len as u64) <= floor_phi(self.q as u64)? + 1 {
            return Err(Error::Domain(format!("base_len {} is not above φ·q", self.base_len)));
        }
        if self.oracle_columns < self.base_len + 64 {
            return Err(Error::Domain("the oracle range must extend past the base".into()));
        }
        Ok(())
    }
}

/// One window of the bit-string, deepest level first in a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub start: u64,
    pub bits: Vec<u8>,
    /// A true word boundary inside the window and the 0s before it.
    pub anchor: u64,
    pub zeros_at_anchor: u64,
    /// The boundary of the level below whose words were translated, or
    /// `None` for the precomputed base.
    pub source: Option<u64>,
}

impl Level {
    fn end(&self) -> u64 {
        self.start + self.bits.len() as u64
    }

    fn at(&self, col: u64) -> u8 {
        self.bits[(col - self.start) as usize]
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}) anchor {} Z={} {}",
            self.start,
            self.end(),
            self.anchor,
            self.zeros_at_anchor,
            bits_to_string(&self.bits)
        )?;
        match self.source {
            Some(a) => write!(f, " (translated from {a})"),
            None => write!(f, " (base)"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TelescopeTrace {
    pub levels: Vec<Level>,
    /// Translated levels.
    pub rounds: u32,
}

/// A word of a level's parse.
impl TelescopeTrace {
    /// Largest `|a_{i+1} - φ a_i|` over consecutive level anchors.
    pub fn max_drift(&self) -> f64 {
        self.levels
            .windows(2)
            .map(|w| (w[1].anchor as f64 - crate::golden::PHI * w[0].anchor as f64).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug)]
struct Word {
    col: u64,
    entry: usize,
    zeros: u64,
}

/// Certified constants and base for [`Telescope::decide`].
#[derive(Clone, Debug)]
pub struct Telescope {
    pub config: TelescopeConfig,
    pub certificate: ConvergenceCertificate,
    dictionary: Dictionary,
    base_bits: Vec<u8>,
    base_zeros: Vec<u64>,
    base_boundaries: Vec<u64>,
    /// `offsets[e][j]`: for a `0` at index `j` of word `e` starting at `a_w`,
    /// the P-position is on row `a_w + Z(a_w) + offsets[e][j]`.
    offsets: Vec<Vec<Option<i64>>>,
    /// Bounds of `b - ⌊φa⌋` over upper pairs, widened.
    band: (i64, i64),
    /// Observed bounds of `b - ⌊φa⌋`.
    observed_band: (i64, i64),
    /// Bound on `|Z(c) - ⌊c/φ⌋|`, widened.
    zero_drift: i64,
}

/// Widens an observed interval by a factor of two and one unit.
fn widen((lo, hi): (i64, i64)) -> (i64, i64) {
    (lo.min(2 * lo) - 1, hi.max(2 * hi) + 1)
}

impl Telescope {
    /// Certifies the configuration against the oracle: the convergence
    /// window, the translate identities at every word boundary, the per-word
    /// row offsets and the band.
    pub fn certify(config: TelescopeConfig) -> Result<Self> {
        config.validate()?;
        let d = klm23_dictionary();
        let certificate = convergence_window(&d, config.sample_len)?;
        if certificate.q > config.q {
            return Err(Error::Convergence(format!(
                "configured q = {} is below the measured window {}",
                config.q, certificate.q
            )));
        }
        if d.max_translate_len() > config.c {
            return Err(Error::Domain(format!("c = {} is below the longest translate", config.c)));
        }

        let partners = partner_sweep(&Ruleset::klm(2, 3)?, config.oracle_columns as u64);
        let r = Reference::from_partners(&partners);
        let zeros = prefix_zeros(&r.bits);
        let n = r.bits.len();

        let mut offsets: Vec<Vec<Option<i64>>> =
            d.entries().iter().map(|e| vec![None; e.word.len()]).collect();
        for col in (FIRST_WORD..n).filter(|&c| r.boundary[c]) {
            let e = d.match_at(&r.bits, col).expect("boundaries have a word");
            let entry = &d.entries()[e];
            let u = col + zeros[col] as usize;
            if u < n {
                if zeros[u] != col as u64 + 1 {
                    return Err(Error::Anchor(format!(
                        "Z({u}) = {} but the boundary at {col} predicts {}",
                        zeros[u],
                        col + 1
                    )));
                }
                let t = &r.bits[u..(u + entry.translate.len()).min(n)];
                if !entry.translate.starts_with(t) {
                    return Err(Error::Anchor(format!("translate of the word at {col} disagrees with the oracle")));
                }
            }
            for j in 0..entry.word.len() {
                let a = col + j;
                if entry.word[j] != 0 || a >= n {
                    continue;
                }
                let off = partners[a] as i64 - (col as i64 + zeros[col] as i64);
                match offsets[e][j] {
                    Some(o) if o != off => {
                        return Err(Error::Anchor(format!(
                            "word {} has row offsets {o} and {off} at index {j}",
                            bits_to_string(&entry.word)
                        )))
                    }
                    _ => offsets[e][j] = Some(off),
                }
            }
        }

        let mut observed_band = (i64::MAX, i64::MIN);
        let mut drift = 0i64;
        for a in 0..n {
            let phi_a = floor_phi(a as u64)? as i64;
            if partners[a] >= a as u64 {
                let dev = partners[a] as i64 - phi_a;
                observed_band = (observed_band.0.min(dev), observed_band.1.max(dev));
            }
            drift = drift.max((zeros[a] as i64 - floor_div_phi(a as u64)? as i64).abs());
        }

        let base_len = config.base_len;
        Ok(Telescope {
            config,
            certificate,
            base_bits: r.bits[..base_len].to_vec(),
            base_zeros: zeros[..=base_len].to_vec(),
            base_boundaries: (FIRST_WORD..base_len)
                .filter(|&c| r.boundary[c])
                .map(|c| c as u64)
                .collect(),
            dictionary: d,
            offsets,
            band: widen(observed_band),
            observed_band,
            zero_drift: 2 * drift + 1,
        })
    }

    pub fn band(&self) -> (i64, i64) {
        self.band
    }

    pub fn observed_band(&self) -> (i64, i64) {
        self.observed_band
    }

    /// Row offset for the `0` at index `j` of dictionary entry `entry`.
    pub fn offset(&self, entry: usize, j: usize) -> Option<i64> {
        self.offsets.get(entry)?.get(j).copied().flatten()
    }

    /// Largest number of translated levels allowed for column `x`.
    pub fn round_bound(&self, x: u64) -> u32 {
        ceil_log_phi(x) + self.config.depth_margin
    }

    fn look(&self) -> u64 {
        self.dictionary.max_word_len() as u64
    }

    /// Words parsed from the anchor whose lookahead lies inside the window.
    fn words(&self, level: &Level) -> Vec<Word> {
        let look = self.look();
        let mut out = Vec::new();
        let (mut col, mut zeros) = (level.anchor, level.zeros_at_anchor);
        while col + look <= level.end() {
            let entry = self
                .dictionary
                .match_at(&level.bits, (col - level.start) as usize)
                .expect("the words 0 and 1 always match");
            out.push(Word { col, entry, zeros });
            let w = &self.dictionary.entries()[entry].word;
            zeros += w.iter().filter(|&&b| b == 0).count() as u64;
            col += w.len() as u64;
        }
        out
    }

    fn check_drift(&self, col: u64, zeros: u64) -> Result<()> {
        let expected = floor_div_phi(col)? as i64;
        if (zeros as i64 - expected).abs() > self.zero_drift {
            return Err(Error::Anchor(format!(
                "anchor {col} carries Z = {zeros}, expected about {expected}"
            )));
        }
        Ok(())
    }

    /// A level with a true boundary at or left of `lo` whose bits reach at
    /// least `hi + look`.
    fn window(&self, lo: u64, hi: u64, trace: &mut TelescopeTrace) -> Result<Level> {
        let look = self.look();
        let lo = lo.max(FIRST_WORD as u64);
        if hi + look <= self.config.base_len as u64 {
            let i = self.base_boundaries.partition_point(|&b| b <= lo);
            let anchor = self.base_boundaries[i - 1];
            let level = Level {
                start: anchor,
                bits: self.base_bits[anchor as usize..(hi + look) as usize].to_vec(),
                anchor,
                zeros_at_anchor: self.base_zeros[anchor as usize],
                source: None,
            };
            trace.levels.push(level.clone());
            return Ok(level);
        }

        // the translate of the word at A starts near φA
        let q = self.config.q as u64;
        let slack = 2 * self.zero_drift as u64 + look;
        let target = lo
            .checked_sub(q + look)
            .ok_or_else(|| Error::Anchor(format!("window at {lo} is too close to the origin")))?;
        let plo = floor_div_phi(target.saturating_sub(slack))?;
        let phi = floor_div_phi(hi + look)? + slack;
        let parent = self.window(plo, phi, trace)?;

        let words = self.words(&parent);
        let first = words
            .iter()
            .rposition(|w| w.col + w.zeros <= target)
            .ok_or_else(|| Error::Anchor(format!("no word below {plo} translates left of {target}")))?;
        let source = words[first];
        let start = source.col + source.zeros;
        let mut bits = Vec::new();
        for w in &words[first..] {
            if start + bits.len() as u64 >= hi + look {
                break;
            }
            bits.extend_from_slice(&self.dictionary.entries()[w.entry].translate);
        }
        if start + (bits.len() as u64) < hi + look {
            return Err(Error::Anchor(format!(
                "level below covers only up to {}, need {}",
                start + bits.len() as u64,
                hi + look
            )));
        }

        // Z(A + Z(A)) = A + 1; resynchronise the parse q bits later
        let mut level = Level {
            start,
            bits,
            anchor: start,
            zeros_at_anchor: source.col + 1,
            source: Some(source.col),
        };
        let anchor = self
            .words(&level)
            .into_iter()
            .find(|w| w.col >= start + q)
            .ok_or_else(|| Error::Anchor(format!("no resynchronised boundary after {start}")))?;
        if anchor.col > lo {
            return Err(Error::Anchor(format!("resynchronised boundary {} lies right of {lo}", anchor.col)));
        }
        self.check_drift(anchor.col, anchor.zeros)?;
        level.anchor = anchor.col;
        level.zeros_at_anchor = anchor.zeros;
        trace.levels.push(level.clone());
        trace.rounds += 1;
        Ok(level)
    }

    /// Row of the upper P-position in column `x`, or `None` if the column's
    /// P-position is lower.
    fn locate(&self, x: u64, trace: &mut TelescopeTrace) -> Result<Option<u64>> {
        if x == 0 {
            return Ok(Some(0));
        }
        let level = self.window(x, x + 1, trace)?;
        if trace.rounds > self.round_bound(x) {
            return Err(Error::Anchor(format!(
                "{} rounds for column {x}, bound {}",
                trace.rounds,
                self.round_bound(x)
            )));
        }
        if level.at(x) == 1 {
            return Ok(None);
        }
        let word = self
            .words(&level)
            .into_iter()
            .take_while(|w| w.col <= x)
            .last()
            .ok_or_else(|| Error::Anchor(format!("no word covers column {x}")))?;
        let j = (x - word.col) as usize;
        let off = self.offset(word.entry, j).ok_or_else(|| {
            Error::Anchor(format!("no certified offset for index {j} of word {}", word.entry))
        })?;
        let row = (word.col + word.zeros) as i128 + off as i128;
        u64::try_from(row).map(Some).map_err(|_| Error::Overflow(format!("row {row}")))
    }

    /// Row of the P-position in column `x`, with the trace of levels.
    pub fn partner(&self, x: u64) -> Result<(u64, TelescopeTrace)> {
        let mut trace = TelescopeTrace::default();
        if let Some(b) = self.locate(x, &mut trace)? {
            return Ok((b, trace));
        }
        // lower: some upper pair (a, x) with a < x, and x - ⌊φa⌋ in the band
        let (lo, hi) = self.band;
        let from = floor_div_phi(x.saturating_sub(hi.max(0) as u64 + 2))?.max(1);
        let to = (floor_div_phi(x + (-lo).max(0) as u64 + 2)? + 2).min(x - 1);
        for a in from..=to {
            let mut t = TelescopeTrace::default();
            if self.locate(a, &mut t)? == Some(x) {
                return Ok((a, trace));
            }
        }
        Err(Error::Anchor(format!("no upper P-position on row {x}")))
    }

    /// Outcome of `p`, by the band check and then the telescope.
    pub fn decide(&self, p: Position) -> Result<(Outcome, TelescopeTrace)> {
        let (x, y) = if p.x <= p.y { (p.x, p.y) } else { (p.y, p.x) };
        let mut trace = TelescopeTrace::default();
        if x == 0 {
            let o = if y == 0 { Outcome::P } else { Outcome::N };
            return Ok((o, trace));
        }
        let dev = y as i128 - floor_phi(x)? as i128;
        if dev < self.band.0 as i128 || dev > self.band.1 as i128 {
            return Ok((Outcome::N, trace));
        }
        let o = match self.locate(x, &mut trace)? {
            Some(b) if b == y => Outcome::P,
            _ => Outcome::N,
        };
        Ok((o, trace))
    }
}

fn prefix_zeros(bits: &[u8]) -> Vec<u64> {
    let mut z = Vec::with_capacity(bits.len() + 1);
    z.push(0);
    for &b in bits {
        z.push(z.last().unwrap() + u64::from(b == 0));
    }
    z
}

/// The four words with their translates, for display.
pub fn dictionary_words() -> &'static [(&'static str, &'static str)] {
    &KLM23_WORDS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::compute_grid;
    use std::sync::OnceLock;

    fn telescope() -> &'static Telescope {
        static T: OnceLock<Telescope> = OnceLock::new();
        T.get_or_init(|| {
            Telescope::certify(TelescopeConfig {
                sample_len: 20_000,
                ..TelescopeConfig::default()
            })
            .unwrap()
        })
    }

    #[test]
    fn reference_matches_oracle() {
        let partners = partner_sweep(&Ruleset::klm(2, 3).unwrap(), 5000);
        let oracle = Reference::from_partners(&partners);
        let generated = Reference::generate(5000).unwrap();
        assert_eq!(oracle.bits, generated.bits);
        assert_eq!(&oracle.boundary[..4990], &generated.boundary[..4990]);
    }

    #[test]
    fn convergence_certificate() {
        let c = convergence_window(&klm23_dictionary(), 20_000).unwrap();
        assert!(c.q <= 16, "{c}");
        assert!(c.max_zero_run <= 5);
        assert!(c.double_one_firings > 0);
        assert_eq!(c.ambiguous[0], ('a', "010001000", 0));
    }

    #[test]
    fn offsets_are_certified() {
        let t = telescope();
        // every 0 of every word carries an offset
        for (e, entry) in t.dictionary.entries().iter().enumerate() {
            for (j, &b) in entry.word.iter().enumerate() {
                assert_eq!(t.offset(e, j).is_some(), b == 0, "{entry} at {j}");
            }
        }
        assert_eq!(t.offset(0, 0), Some(0));
    }

    #[test]
    fn small_positions() {
        let t = telescope();
        let p = |x, y| t.decide(Position::new(x, y)).unwrap().0;
        assert_eq!(p(0, 0), Outcome::P);
        assert_eq!(p(3, 6), Outcome::P);
        assert_eq!(p(6, 3), Outcome::P);
        assert_eq!(p(4, 7), Outcome::N);
        assert_eq!(p(4, 8), Outcome::P);
        assert_eq!(p(0, 5), Outcome::N);
    }

    #[test]
    fn agrees_with_grid_on_a_small_square() {
        let t = telescope();
        let g = compute_grid(&Ruleset::klm(2, 3).unwrap(), 1300).unwrap();
        for x in 0..600 {
            for y in 0..600 {
                let (o, _) = t.decide(Position::new(x, y)).unwrap();
                assert_eq!(o, g.outcome(x, y), "({x},{y})");
            }
        }
    }

    #[test]
    fn partners_for_large_columns() {
        let t = telescope();
        let partners = partner_sweep(&Ruleset::klm(2, 3).unwrap(), 60_000);
        for x in (1..60_000u64).step_by(97) {
            let (b, trace) = t.partner(x).unwrap();
            assert_eq!(b, partners[x as usize], "column {x}");
            assert!(trace.rounds <= t.round_bound(x));
        }
    }

    #[test]
    fn level_starts_grow_by_phi() {
        let t = telescope();
        let (_, trace) = t.decide(Position::new(1_000_000, floor_phi(1_000_000).unwrap())).unwrap();
        assert!(trace.rounds >= 8);
        let anchors: Vec<u64> = trace.levels.iter().map(|l| l.anchor).collect();
        // a_{i+1} = φ a_i + O(q): the ratio tends to φ
        assert!(trace.max_drift() <= 4.0 * t.config.q as f64, "{anchors:?}");
        for w in anchors.windows(2).filter(|w| w[0] > 10_000) {
            let ratio = w[1] as f64 / w[0] as f64;
            assert!((ratio - crate::golden::PHI).abs() < 0.01, "{anchors:?}");
        }
    }

    #[test]
    fn huge_coordinates() {
        let t = telescope();
        let x = 1u64 << 60;
        let (_, trace) = t.decide(Position::new(x, floor_phi(x).unwrap())).unwrap();
        assert!(trace.rounds <= t.round_bound(x));
        assert!(t.decide(Position::new(u64::MAX, u64::MAX)).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = TelescopeConfig { c: 20, ..TelescopeConfig::default() };
        assert!(bad.validate().is_err());
        let bad = TelescopeConfig { base_len: 20, ..TelescopeConfig::default() };
        assert!(bad.validate().is_err());
        let bad = TelescopeConfig { q: 2, c: 2, base_len: 100, oracle_columns: 2000, sample_len: 2000, depth_margin: 2 };
        assert!(matches!(Telescope::certify(bad), Err(Error::Convergence(_)) | Err(Error::Domain(_))));
    }
}
