//! Bit-strings of P-positions and the dictionaries that generate them.
//!
//! Bit `i` of a ruleset's bit-string is `0` when column `i` holds an upper
//! P-position (`b ≥ a`) and `1` when it holds a lower one. Reading the string
//! word by word from a sector boundary, each word at column `a` with `n`
//! zeros before it translates into the bits of rows `a + n ..`, so the
//! string can be continued from a finite dictionary.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::dictionary::{bits_to_string, parse_bits, Dictionary, Entry, Policy};
use crate::game::Ruleset;
use crate::oracle::OutcomeGrid;
use crate::{Error, Result};

/// A window of a ruleset's bit-string starting at column `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitString {
    pub ruleset: Ruleset,
    pub start: u64,
    pub bits: Vec<u8>,
}

impl BitString {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at absolute column `col`, if inside the window.
    pub fn bit(&self, col: u64) -> Option<u8> {
        col.checked_sub(self.start)
            .and_then(|i| self.bits.get(i as usize).copied())
    }

    /// Bits of absolute columns `from..to`.
    pub fn slice(&self, from: u64, to: u64) -> &[u8] {
        let lo = (from.saturating_sub(self.start) as usize).min(self.bits.len());
        let hi = (to.saturating_sub(self.start) as usize).clamp(lo, self.bits.len());
        &self.bits[lo..hi]
    }

    /// Writes `bits v1 ruleset=<id> start=<col> len=<L>` then the bits as ASCII.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "bits v1 ruleset={} start={} len={}",
            self.ruleset.id(),
            self.start,
            self.bits.len()
        )?;
        writeln!(w, "{}", bits_to_string(&self.bits))?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty bitstring file".into()))??;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("bits") || fields.next() != Some("v1") {
            return Err(Error::Format(format!("not a bits v1 header: {header:?}")));
        }
        let (mut ruleset, mut start, mut len) = (None, None, None);
        for f in fields {
            let bad = || Error::Format(format!("bad header field {f:?}"));
            match f.split_once('=') {
                Some(("ruleset", v)) => ruleset = Some(v.parse::<Ruleset>()?),
                Some(("start", v)) => start = Some(v.parse::<u64>().map_err(|_| bad())?),
                Some(("len", v)) => len = Some(v.parse::<usize>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let mut body = String::new();
        for line in lines {
            body.push_str(&line?);
        }
        let bits = parse_bits(&body)?;
        let len = len.ok_or_else(|| Error::Format("header lacks len".into()))?;
        if bits.len() != len {
            return Err(Error::Format(format!("header says {len} bits, found {}", bits.len())));
        }
        Ok(BitString {
            ruleset: ruleset.ok_or_else(|| Error::Format("header lacks ruleset".into()))?,
            start: start.ok_or_else(|| Error::Format("header lacks start".into()))?,
            bits,
        })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.bits))
    }
}

/// Row of the P-position of every column below the grid's safe cutoff.
pub fn grid_partners(g: &OutcomeGrid) -> Vec<u64> {
    (0..g.safe_cutoff())
        .map(|x| g.p_in_column(x).expect("columns below the cutoff have a P-position"))
        .collect()
}

/// Bit-string from column 0 up to the grid's safe cutoff.
pub fn bitstring_from_grid(g: &OutcomeGrid) -> BitString {
    BitString {
        ruleset: g.ruleset().clone(),
        start: 0,
        bits: bits_from_partners(&grid_partners(g)),
    }
}

pub fn bits_from_partners(partners: &[u64]) -> Vec<u8> {
    partners
        .iter()
        .enumerate()
        .map(|(x, &y)| u8::from(y < x as u64))
        .collect()
}

/// Running state after all columns `≤ a_last` have been placed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorState {
    /// Upper pairs so far, `(0,0)` included.
    pub n: usize,
    /// The boundary column.
    pub a_last: u64,
    /// `diffs_used[d]` iff some upper pair so far has `b - a = d`.
    pub diffs_used: Vec<bool>,
    /// The remaining upper positions right of `a_last` form an
    /// `(n - 1, a_last)`-perfect sector.
    pub perfect: bool,
}

impl SectorState {
    /// Whether the differences used are exactly `{0, …, n-1}`.
    pub fn covers_prefix(&self) -> bool {
        self.diffs_used.len() >= self.n
            && self.diffs_used[..self.n].iter().all(|&u| u)
            && self.diffs_used[self.n..].iter().all(|&u| !u)
    }
}

/// Sector state at every boundary `0..partners.len()`.
///
/// The boundary after column `X` with `n` upper pairs is perfect when, after
/// erasing every upper position right of `X` that attacks an upper P-pair,
/// what remains is exactly the set of positions with `y - x ≥ n`. With
/// diagonals `0..n` all used this means no used row `b` reaches into the
/// sector (`b ≤ X + n`) and no jump from an upper pair lands in it.
pub fn sector_states(partners: &[u64], ruleset: &Ruleset) -> Vec<SectorState> {
    let offsets = ruleset.jump_offsets();
    let max_dx = offsets.iter().map(|o| o.0).max().unwrap_or(0);
    let mut states = Vec::with_capacity(partners.len());
    let mut uppers: Vec<(u64, u64)> = Vec::new();
    let mut diffs = vec![false; 1];
    let mut below = 0usize;
    let mut max_b = 0u64;
    for (x, &y) in partners.iter().enumerate() {
        let x = x as u64;
        if y >= x {
            let d = (y - x) as usize;
            if d >= diffs.len() {
                diffs.resize(2 * d + 1, false);
            }
            diffs[d] = true;
            while below < diffs.len() && diffs[below] {
                below += 1;
            }
            max_b = max_b.max(y);
            uppers.push((x, y));
        }
        let n = uppers.len();
        let covered = below == n && diffs[n..].iter().all(|&u| !u);
        let rows_ok = max_b <= x + n as u64;
        let jumps_ok = uppers
            .iter()
            .rev()
            .take_while(|&&(a, _)| a + max_dx > x)
            .all(|&(a, b)| {
                offsets.iter().all(|&(dx, dy)| {
                    let (tx, ty) = (a + dx, b + dy);
                    tx <= x || ty < tx + n as u64
                })
            });
        states.push(SectorState {
            n,
            a_last: x,
            diffs_used: diffs.clone(),
            perfect: covered && rows_ok && jumps_ok,
        });
    }
    states
}

/// Boundaries `X` (after column `X`) that are perfect, in increasing order.
fn perfect_boundaries(partners: &[u64], ruleset: &Ruleset) -> Vec<u64> {
    // only the flags are needed; avoid cloning the difference sets
    let offsets = ruleset.jump_offsets();
    let max_dx = offsets.iter().map(|o| o.0).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut uppers: Vec<(u64, u64)> = Vec::new();
    let mut diffs = vec![false; 1];
    let mut below = 0usize;
    let mut above = 0usize; // used diagonals ≥ n
    let mut max_b = 0u64;
    for (x, &y) in partners.iter().enumerate() {
        let x = x as u64;
        if y >= x {
            let d = (y - x) as usize;
            if d >= diffs.len() {
                diffs.resize(2 * d + 1, false);
            }
            diffs[d] = true;
            while below < diffs.len() && diffs[below] {
                below += 1;
            }
            max_b = max_b.max(y);
            uppers.push((x, y));
            let n = uppers.len();
            above = diffs[n..].iter().filter(|&&u| u).count();
        }
        let n = uppers.len() as u64;
        let covered = below as u64 == n && above == 0;
        let rows_ok = max_b <= x + n;
        let jumps_ok = uppers
            .iter()
            .rev()
            .take_while(|&&(a, _)| a + max_dx > x)
            .all(|&(a, b)| offsets.iter().all(|&(dx, dy)| a + dx <= x || b + dy < a + dx + n));
        if covered && rows_ok && jumps_ok {
            out.push(x);
        }
    }
    out
}

/// Upper columns `a_n > 0` at which `{b_i - a_i : i < n} = {0, …, n-1}` and
/// `b_n - a_n = n`.
fn relaxed_word_starts(partners: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut diffs = vec![false; 1];
    let mut below = 0usize;
    let mut n = 0usize;
    for (x, &y) in partners.iter().enumerate() {
        let x = x as u64;
        if y < x {
            continue;
        }
        let d = (y - x) as usize;
        let covered = below == n && diffs.get(n..).is_none_or(|r| r.iter().all(|&u| !u));
        if x > 0 && covered && d == n {
            out.push(x);
        }
        if d >= diffs.len() {
            diffs.resize(2 * d + 1, false);
        }
        diffs[d] = true;
        while below < diffs.len() && diffs[below] {
            below += 1;
        }
        n += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnMode {
    /// Words end exactly at perfect sectors (Maharaja Nim).
    Maharaja,
    /// Words start at upper columns where the differences so far are
    /// `{0, …, n-1}` and the next difference is `n`; trailing `1`s split off
    /// as single-bit words.
    KlmRelaxed,
}

/// One translation: `word` read at `consume_start`, `translate` written at
/// `append_start`. Positions are absolute columns for learned traces and
/// string indices for generated ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub word: Vec<u8>,
    pub translate: Vec<u8>,
    pub consume_start: u64,
    pub append_start: u64,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} @ {} => {}",
            bits_to_string(&self.word),
            bits_to_string(&self.translate),
            self.consume_start,
            self.append_start
        )
    }
}

#[derive(Clone, Debug)]
pub struct LearnedDictionary {
    pub dictionary: Dictionary,
    pub trace: Vec<TraceEntry>,
    /// Words whose translate differed between occurrences.
    pub conflicts: Vec<TraceEntry>,
    /// Set when learning stopped early or found nothing.
    pub note: Option<String>,
}

/// Learns a dictionary from an oracle grid.
pub fn learn_dictionary(g: &OutcomeGrid, mode: LearnMode) -> Result<LearnedDictionary> {
    learn_from_partners(&grid_partners(g), g.ruleset(), mode)
}

/// Learns from the P-position row of every column `0..partners.len()`.
pub fn learn_from_partners(
    partners: &[u64],
    ruleset: &Ruleset,
    mode: LearnMode,
) -> Result<LearnedDictionary> {
    let bits = bits_from_partners(partners);
    let mut zeros = Vec::with_capacity(bits.len() + 1);
    zeros.push(0u64);
    for &b in &bits {
        zeros.push(zeros.last().unwrap() + u64::from(b == 0));
    }
    let words: Vec<(u64, u64)> = match mode {
        LearnMode::Maharaja => perfect_boundaries(partners, ruleset)
            .windows(2)
            .map(|w| (w[0] + 1, w[1] + 1))
            .collect(),
        LearnMode::KlmRelaxed => {
            let starts = relaxed_word_starts(partners);
            let mut out = Vec::new();
            for w in starts.windows(2) {
                let (lo, hi) = (w[0] as usize, w[1] as usize);
                let ones = bits[lo..hi].iter().rev().take_while(|&&b| b == 1).count();
                let end = hi - ones;
                out.push((lo as u64, end as u64));
                out.extend((end..hi).map(|c| (c as u64, c as u64 + 1)));
            }
            out
        }
    };

    let mut trace = Vec::new();
    let mut conflicts = Vec::new();
    let mut table: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
    let mut order: Vec<Vec<u8>> = Vec::new();
    let mut note = None;
    for (lo, hi) in words {
        let word = bits[lo as usize..hi as usize].to_vec();
        let l = word.iter().filter(|&&b| b == 0).count() as u64;
        let append = lo + zeros[lo as usize];
        let end = append + (hi - lo) + l;
        if end > bits.len() as u64 {
            note = Some(format!(
                "stopped at column {lo}: translate needs rows up to {end}, safe range ends at {}",
                bits.len()
            ));
            break;
        }
        let entry = TraceEntry {
            translate: bits[append as usize..end as usize].to_vec(),
            word,
            consume_start: lo,
            append_start: append,
        };
        match table.get(&entry.word) {
            Some(t) if *t != entry.translate => conflicts.push(entry.clone()),
            Some(_) => {}
            None => {
                table.insert(entry.word.clone(), entry.translate.clone());
                order.push(entry.word.clone());
            }
        }
        trace.push(entry);
    }
    if trace.is_empty() && note.is_none() {
        note = Some("no complete word between two sector boundaries".into());
    }
    let policy = match mode {
        LearnMode::Maharaja => Policy::PrefixFree,
        LearnMode::KlmRelaxed => Policy::LongestMatch,
    };
    let entries = order
        .into_iter()
        .map(|w| Entry {
            translate: table[&w].clone(),
            word: w,
        })
        .collect();
    Ok(LearnedDictionary {
        dictionary: Dictionary::new(entries, policy)?,
        trace,
        conflicts,
        note,
    })
}

/// The 14-entry dictionary of Maharaja Nim; the first nine words occur in
/// the bit-string, the last five have never been observed.
pub const MAHARAJA_WORDS: [(&str, &str); 14] = [
    ("1", "0"),
    ("01", "100"),
    ("00100", "100101100"),
    ("00110", "10010100"),
    ("000100", "10010110100"),
    ("001110", "100100100"),
    ("0010110", "10010011000"),
    ("00000100", "100101100111000"),
    ("000010010", "1001001111000100"),
    ("0000000", "10010110110100"),
    ("0010100", "100100110100"),
    ("0011110", "1001000100"),
    ("00000010", "100101101100100"),
    ("00001000", "100100111100100"),
];

/// Number of leading [`MAHARAJA_WORDS`] entries that occur in the bit-string.
pub const MAHARAJA_OBSERVED: usize = 9;

/// Words that never start a word of Maharaja Nim's bit-string. Together with
/// the 14 dictionary words they form a complete prefix code.
pub const MAHARAJA_EXCLUDED: [(char, &str); 11] = [
    ('a', "00000011"),
    ('b', "00000101"),
    ('c', "0000011"),
    ('d', "000010011"),
    ('e', "0000101"),
    ('f', "000011"),
    ('g', "000101"),
    ('h', "00011"),
    ('i', "0010101"),
    ('j', "0010111"),
    ('k', "0011111"),
];

/// Columns `8..13` of Maharaja Nim, from which the dictionary process starts.
pub const MAHARAJA_SEED: (&str, u64) = ("00100", 8);

pub fn maharaja_dictionary() -> Dictionary {
    Dictionary::from_pairs(&MAHARAJA_WORDS, Policy::PrefixFree)
        .expect("the Maharaja dictionary is prefix-free")
}

/// The 4-entry longest-match dictionary of (2,3)-Maharaja Nim.
pub const KLM23_WORDS: [(&str, &str); 4] = [
    ("0", "10"),
    ("1", "0"),
    ("01000", "100011100"),
    ("01010", "10001100"),
];

/// Columns `1..14` of (2,3)-Maharaja Nim; reading starts at index 8 (column 9).
pub const KLM23_SEED: (&str, u64, usize) = ("0100011100000", 1, 8);

pub fn klm23_dictionary() -> Dictionary {
    Dictionary::from_pairs(&KLM23_WORDS, Policy::LongestMatch)
        .expect("the (2,3) dictionary has distinct words")
}

/// Where the reader got stuck: no word matches at `head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stall {
    pub head: usize,
    /// Up to 20 bits following the head.
    pub next: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct Generation {
    pub bits: Vec<u8>,
    pub head: usize,
    pub trace: Vec<TraceEntry>,
    pub stall: Option<Stall>,
}

impl Generation {
    /// How many times each dictionary entry was read at a word start below `up_to`.
    pub fn census(&self, d: &Dictionary, up_to: usize) -> Vec<usize> {
        let mut counts = vec![0; d.len()];
        for t in self.trace.iter().filter(|t| (t.consume_start as usize) < up_to) {
            if let Some(i) = d.index_of(&t.word) {
                counts[i] += 1;
            }
        }
        counts
    }
}

/// Runs the dictionary process at the read head: match a word at `head`
/// under the dictionary's policy, append its translate, advance past the
/// word. Stops once the string has `target_len` bits or no word matches.
pub fn generate_bitstring(
    d: &Dictionary,
    seed: &[u8],
    read_start: usize,
    target_len: usize,
) -> Result<Generation> {
    if seed.is_empty() {
        return Err(Error::Domain("seed must be nonempty".into()));
    }
    if read_start >= seed.len() {
        return Err(Error::Domain(format!(
            "read head {read_start} is outside the seed of length {}",
            seed.len()
        )));
    }
    let mut g = Generation {
        bits: seed.to_vec(),
        head: read_start,
        trace: Vec::new(),
        stall: None,
    };
    while g.bits.len() < target_len {
        if !step(d, &mut g) {
            break;
        }
    }
    Ok(g)
}

/// Continues until the head has passed `until_head` (or the process stalls).
pub fn generate_until_head(
    d: &Dictionary,
    seed: &[u8],
    read_start: usize,
    until_head: usize,
) -> Result<Generation> {
    let mut g = generate_bitstring(d, seed, read_start, 0)?;
    while g.head < until_head {
        if !step(d, &mut g) {
            break;
        }
    }
    Ok(g)
}

fn step(d: &Dictionary, g: &mut Generation) -> bool {
    match d.match_at(&g.bits, g.head) {
        Some(i) => {
            let e = &d.entries()[i];
            g.trace.push(TraceEntry {
                word: e.word.clone(),
                translate: e.translate.clone(),
                consume_start: g.head as u64,
                append_start: g.bits.len() as u64,
            });
            g.bits.extend_from_slice(&e.translate);
            g.head += e.word.len();
            true
        }
        None => {
            let end = (g.head + 20).min(g.bits.len());
            g.stall = Some(Stall {
                head: g.head,
                next: g.bits[g.head.min(end)..end].to_vec(),
            });
            false
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateMismatch {
    pub word_start: u64,
    pub append_start: u64,
    pub expected: Vec<u8>,
    pub found: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub read_start: u64,
    /// Column where reading stopped.
    pub read_end: u64,
    pub words_read: usize,
    pub translates_checked: usize,
    /// Column where no word matched, if any.
    pub unmatched_at: Option<u64>,
    pub mismatches: Vec<TranslateMismatch>,
    /// Reads per dictionary entry, in dictionary order.
    pub frequency: Vec<usize>,
    pub note: String,
}

impl VerificationReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched_at.is_none()
    }

    pub fn is_ok(&self) -> bool {
        self.all_matched() && self.mismatches.is_empty()
    }

    pub fn unused_entries(&self) -> Vec<usize> {
        (0..self.frequency.len())
            .filter(|&i| self.frequency[i] == 0)
            .collect()
    }
}

/// Reads `reference` (which must start at column 0) with `d` from
/// `read_start` and compares every translate with the reference rows it
/// predicts. Stops when a translate would leave the reference.
pub fn verify_dictionary(
    d: &Dictionary,
    reference: &BitString,
    read_start: u64,
) -> Result<VerificationReport> {
    if reference.start != 0 {
        return Err(Error::Domain("reference bit-string must start at column 0".into()));
    }
    let bits = &reference.bits;
    let mut zeros = bits[..(read_start as usize).min(bits.len())]
        .iter()
        .filter(|&&b| b == 0)
        .count() as u64;
    let mut head = read_start as usize;
    let mut report = VerificationReport {
        read_start,
        read_end: read_start,
        words_read: 0,
        translates_checked: 0,
        unmatched_at: None,
        mismatches: Vec::new(),
        frequency: vec![0; d.len()],
        note: String::new(),
    };
    while head < bits.len() {
        let Some(i) = d.match_at(bits, head) else {
            // a longer word may just be cut off by the end of the reference
            if bits.len() - head < d.max_word_len() {
                report.note = format!("reference ends inside a word at column {head}");
            } else {
                report.unmatched_at = Some(head as u64);
            }
            break;
        };
        let e = &d.entries()[i];
        let append = head as u64 + zeros;
        let end = append as usize + e.translate.len();
        if end > bits.len() {
            report.note = format!(
                "stopped at column {head}: translate reaches column {end}, reference has {}",
                bits.len()
            );
            break;
        }
        report.words_read += 1;
        report.frequency[i] += 1;
        report.translates_checked += 1;
        let found = &bits[append as usize..end];
        if found != e.translate.as_slice() {
            report.mismatches.push(TranslateMismatch {
                word_start: head as u64,
                append_start: append,
                expected: e.translate.clone(),
                found: found.to_vec(),
            });
        }
        zeros += e.word.iter().filter(|&&b| b == 0).count() as u64;
        head += e.word.len();
    }
    report.read_end = head as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleCheck {
    pub rule: &'static str,
    /// Offending translates.
    pub violations: Vec<String>,
}

impl RuleCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ExclusionReport {
    /// `(label, word start)` for every excluded word found at a word start.
    pub occurrences: Vec<(char, u64)>,
    pub word_starts_checked: usize,
    pub static_rules: Vec<RuleCheck>,
}

impl ExclusionReport {
    pub fn is_ok(&self) -> bool {
        self.occurrences.is_empty() && self.static_rules.iter().all(RuleCheck::passed)
    }
}

fn longest_run(bits: &[u8], bit: u8) -> usize {
    bits.split(|&b| b != bit).map(<[u8]>::len).max().unwrap_or(0)
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

/// Static facts about translates that rule out the excluded words.
pub fn static_translate_rules(d: &Dictionary) -> Vec<RuleCheck> {
    let check = |rule: &'static str, ok: &dyn Fn(&[u8]) -> bool| RuleCheck {
        rule,
        violations: d
            .entries()
            .iter()
            .filter(|e| !ok(&e.translate))
            .map(|e| e.to_string())
            .collect(),
    };
    vec![
        check("at most three consecutive 0s", &|t| longest_run(t, 0) <= 3),
        check("only the translate 0 starts with 0", &|t| t == [0] || t.first() == Some(&1)),
        check("translates starting with 1 start with 100", &|t| {
            t.first() != Some(&1) || t.starts_with(&[1, 0, 0])
        }),
        check("no five consecutive 1s", &|t| longest_run(t, 1) < 5),
        check("every translate ends in 0", &|t| t.last() == Some(&0)),
        check("translates other than 0 end in 00", &|t| t == [0] || t.ends_with(&[0, 0])),
        check("no translate contains 101010", &|t| !contains(t, &[1, 0, 1, 0, 1, 0])),
    ]
}

/// Looks for the excluded words (a)–(k) at every word start of a generated
/// string and checks the static translate rules of `d`.
pub fn check_exclusions(d: &Dictionary, generated: &Generation) -> Result<ExclusionReport> {
    let excluded: Vec<(char, Vec<u8>)> = MAHARAJA_EXCLUDED
        .iter()
        .map(|&(c, w)| parse_bits(w).map(|b| (c, b)))
        .collect::<Result<_>>()?;
    let mut occurrences = Vec::new();
    for t in &generated.trace {
        let rest = &generated.bits[t.consume_start as usize..];
        for (c, w) in &excluded {
            if rest.starts_with(w) {
                occurrences.push((*c, t.consume_start));
            }
        }
    }
    Ok(ExclusionReport {
        occurrences,
        word_starts_checked: generated.trace.len(),
        static_rules: static_translate_rules(d),
    })
}
