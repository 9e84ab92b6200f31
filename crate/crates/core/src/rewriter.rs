//! Dictionary processes on arbitrary bit-strings, and the encoding of
//! multiplication-table triangles as such processes.
//!
//! Whether a dictionary process halts is undecidable in general, so every
//! run carries a step budget and ends either [`RunOutcome::Terminated`] or
//! [`RunOutcome::Budget`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::dictionary::{Dictionary, Entry, Policy};
use crate::{Error, Result};

/// What a prefix-free reader does when no word starts at the head.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReaderMode {
    /// Move right until some word starts; stop only at the end of the string.
    #[default]
    ScanForward,
    /// Stop immediately.
    AtHead,
}

impl FromStr for ReaderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan-forward" => Ok(ReaderMode::ScanForward),
            "at-head" => Ok(ReaderMode::AtHead),
            _ => Err(Error::Parse(format!("unknown reader mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteState {
    pub string: Vec<u8>,
    pub head: usize,
    pub steps: usize,
}

/// One translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    /// Index of the dictionary entry read.
    pub entry: usize,
    pub match_start: usize,
    /// Bits passed over before the match.
    pub skipped: usize,
    pub append_start: usize,
}

impl RewriteState {
    pub fn new(start: &[u8]) -> Self {
        RewriteState {
            string: start.to_vec(),
            head: 0,
            steps: 0,
        }
    }

    /// Performs one translation, or returns `None` if the reader runs off the
    /// end of the string. Longest-match dictionaries always read at the head.
    pub fn step(&mut self, d: &Dictionary, mode: ReaderMode) -> Option<Step> {
        let scan = d.policy() == Policy::PrefixFree && mode == ReaderMode::ScanForward;
        let (pos, entry) = if scan {
            (self.head..self.string.len())
                .find_map(|p| d.match_at(&self.string, p).map(|i| (p, i)))?
        } else {
            (self.head, d.match_at(&self.string, self.head)?)
        };
        let e = &d.entries()[entry];
        let step = Step {
            entry,
            match_start: pos,
            skipped: pos - self.head,
            append_start: self.string.len(),
        };
        self.string.extend_from_slice(&e.translate);
        self.head = pos + e.word.len();
        self.steps += 1;
        Some(step)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// The reader reached the end without finding a word; the string is the output.
    Terminated,
    /// The step budget ran out first.
    Budget,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: RunOutcome,
    pub state: RewriteState,
    pub trace: Vec<Step>,
}

impl RunResult {
    pub fn max_skipped(&self) -> usize {
        self.trace.iter().map(|s| s.skipped).max().unwrap_or(0)
    }
}

pub fn run(d: &Dictionary, start: &[u8], max_steps: usize, mode: ReaderMode) -> Result<RunResult> {
    if start.is_empty() {
        return Err(Error::Domain("start string must be nonempty".into()));
    }
    Ok(run_from(d, RewriteState::new(start), max_steps, mode))
}

/// Continues from `state` for at most `max_steps` more translations.
pub fn run_from(d: &Dictionary, mut state: RewriteState, max_steps: usize, mode: ReaderMode) -> RunResult {
    let mut trace = Vec::new();
    for _ in 0..max_steps {
        match state.step(d, mode) {
            Some(s) => trace.push(s),
            None => {
                return RunResult {
                    outcome: RunOutcome::Terminated,
                    state,
                    trace,
                }
            }
        }
    }
    // a budget of zero still reports termination if nothing can be read
    let stuck = trace.is_empty() && state.clone().step(d, mode).is_none();
    RunResult {
        outcome: if stuck { RunOutcome::Terminated } else { RunOutcome::Budget },
        state,
        trace,
    }
}

pub const STOP: char = 'S';

/// A (possibly partial) multiplication table over an alphabet containing the
/// stop symbol `S`. Products are never `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    alphabet: Vec<char>,
    product: BTreeMap<(char, char), char>,
}

impl MulTable {
    pub fn new(alphabet: &str, products: &[(char, char, char)]) -> Result<Self> {
        let mut symbols: Vec<char> = Vec::new();
        for c in alphabet.chars() {
            if symbols.contains(&c) {
                return Err(Error::Format(format!("symbol {c:?} listed twice")));
            }
            symbols.push(c);
        }
        if !symbols.contains(&STOP) || symbols.len() < 2 {
            return Err(Error::Format("alphabet needs S and at least one other symbol".into()));
        }
        // S first, the rest in the given order
        symbols.retain(|&c| c != STOP);
        symbols.insert(0, STOP);
        let mut t = MulTable {
            alphabet: symbols,
            product: BTreeMap::new(),
        };
        for &(x, y, z) in products {
            t.set(x, y, z)?;
        }
        Ok(t)
    }

    pub fn set(&mut self, x: char, y: char, z: char) -> Result<()> {
        for c in [x, y, z] {
            if !self.alphabet.contains(&c) {
                return Err(Error::Format(format!("symbol {c:?} not in the alphabet")));
            }
        }
        if z == STOP {
            return Err(Error::Format(format!("{x}*{y} = S: products must not be S")));
        }
        self.product.insert((x, y), z);
        Ok(())
    }

    pub fn remove(&mut self, x: char, y: char) -> Option<char> {
        self.product.remove(&(x, y))
    }

    pub fn get(&self, x: char, y: char) -> Option<char> {
        self.product.get(&(x, y)).copied()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Defined entries in alphabet order.
    pub fn entries(&self) -> Vec<(char, char, char)> {
        let mut out = Vec::new();
        for &x in &self.alphabet {
            for &y in &self.alphabet {
                if let Some(z) = self.get(x, y) {
                    out.push((x, y, z));
                }
            }
        }
        out
    }

    pub fn is_total(&self) -> bool {
        self.product.len() == self.alphabet.len() * self.alphabet.len()
    }

    /// The table used to illustrate the construction.
    pub fn example() -> Self {
        let rows = [
            ('S', "ABBB"),
            ('A', "CBAA"),
            ('B', "CCCC"),
            ('C', "AABA"),
        ];
        let mut products = Vec::new();
        for (x, zs) in rows {
            for (y, z) in "SABC".chars().zip(zs.chars()) {
                products.push((x, y, z));
            }
        }
        MulTable::new("SABC", &products).expect("example table is valid")
    }

    /// Writes `multable v1 alphabet=<symbols>` and one `x y -> z` per entry.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let alphabet: String = self.alphabet.iter().collect();
        writeln!(w, "multable v1 alphabet={alphabet}")?;
        for (x, y, z) in self.entries() {
            writeln!(w, "{x} {y} -> {z}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty table file".into()))??;
        let alphabet = header
            .strip_prefix("multable v1 alphabet=")
            .ok_or_else(|| Error::Format(format!("not a multable v1 header: {header:?}")))?
            .trim()
            .to_string();
        let mut products = Vec::new();
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Format(format!("expected `x y -> z`: {line:?}"));
            let (lhs, rhs) = line.split_once("->").ok_or_else(bad)?;
            let xs: Vec<char> = lhs.split_whitespace().flat_map(str::chars).collect();
            let zs: Vec<char> = rhs.trim().chars().collect();
            match (xs.as_slice(), zs.as_slice()) {
                ([x, y], [z]) => products.push((*x, *y, *z)),
                _ => return Err(bad()),
            }
        }
        MulTable::new(&alphabet, &products)
    }
}

/// Rows `0..rows` of the triangle: row 0 is `S`, row 1 is `SS`, and each later
/// row is `S`, the products of adjacent symbols of the row above, then `S`.
pub fn triangle(t: &MulTable, rows: usize) -> Result<Vec<String>> {
    let mut out: Vec<Vec<char>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let row = match i {
            0 => vec![STOP],
            1 => vec![STOP, STOP],
            _ => {
                let prev = &out[i - 1];
                let mut row = vec![STOP];
                for w in prev.windows(2) {
                    row.push(t.get(w[0], w[1]).ok_or(Error::MissingProduct {
                        left: w[0],
                        right: w[1],
                        row: i,
                    })?);
                }
                row.push(STOP);
                row
            }
        };
        out.push(row);
    }
    Ok(out.into_iter().map(|r| r.into_iter().collect()).collect())
}

/// Table entries multiplied while building rows `0..rows`.
pub fn entries_used_by_triangle(t: &MulTable, rows: usize) -> Result<BTreeSet<(char, char)>> {
    let tri = triangle(t, rows)?;
    let mut used = BTreeSet::new();
    for row in tri.iter().take(rows.saturating_sub(1)) {
        let cs: Vec<char> = row.chars().collect();
        used.extend(cs.windows(2).map(|w| (w[0], w[1])));
    }
    Ok(used)
}

/// Fixed-width binary codes for an alphabet, assigned in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCodec {
    symbols: Vec<char>,
    width: usize,
}

impl SymbolCodec {
    pub fn new(symbols: &[char]) -> Self {
        let width = (usize::BITS - (symbols.len().max(2) - 1).leading_zeros()) as usize;
        SymbolCodec {
            symbols: symbols.to_vec(),
            width,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn encode(&self, s: &str) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(s.len() * self.width);
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            let i = self
                .symbols
                .iter()
                .position(|&d| d == c)
                .ok_or_else(|| Error::Parse(format!("symbol {c:?} not in the alphabet")))?;
            out.extend((0..self.width).rev().map(|b| ((i >> b) & 1) as u8));
        }
        Ok(out)
    }

    /// Decodes whole metasymbols; a trailing partial symbol is an error.
    pub fn decode(&self, bits: &[u8]) -> Result<String> {
        if bits.len() % self.width != 0 {
            return Err(Error::Parse(format!(
                "{} bits is not a whole number of {}-bit symbols",
                bits.len(),
                self.width
            )));
        }
        bits.chunks(self.width)
            .map(|c| {
                let i = c.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
                self.symbols
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("unassigned code {i}")))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EncodedTable {
    pub dictionary: Dictionary,
    pub codec: SymbolCodec,
    /// The table entry `(x, y)` behind each dictionary entry.
    pub sources: Vec<(char, char)>,
}

/// One rule per defined table entry: `xy -> zz` for `z = x*y`, with the stop
/// symbol kept at the row ends (`SS -> SzzS`, `Sy -> Szz`, `xS -> zzS`).
pub fn encode_table(t: &MulTable) -> Result<EncodedTable> {
    let codec = SymbolCodec::new(t.alphabet());
    let mut entries = Vec::new();
    let mut sources = Vec::new();
    for (x, y, z) in t.entries() {
        let translate = match (x == STOP, y == STOP) {
            (true, true) => format!("{STOP}{z}{z}{STOP}"),
            (true, false) => format!("{STOP}{z}{z}"),
            (false, true) => format!("{z}{z}{STOP}"),
            (false, false) => format!("{z}{z}"),
        };
        entries.push(Entry {
            word: codec.encode(&format!("{x}{y}"))?,
            translate: codec.encode(&translate)?,
        });
        sources.push((x, y));
    }
    Ok(EncodedTable {
        dictionary: Dictionary::new(entries, Policy::PrefixFree)?,
        codec,
        sources,
    })
}

/// Splits a symbol stream `SS SAAS SBBCCS …` into triangle rows `SS`, `SAS`,
/// `SBCS`, …, undoing the doubling of interior symbols. Stops at the first
/// incomplete chunk.
pub fn decode_rows(stream: &str) -> Result<Vec<String>> {
    let cs: Vec<char> = stream.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rows = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        if cs[i] != STOP {
            return Err(Error::Parse(format!("row chunk at symbol {i} does not start with S")));
        }
        let mut row = String::from(STOP);
        let mut j = i + 1;
        loop {
            match (cs.get(j), cs.get(j + 1)) {
                (Some(&STOP), _) => {
                    row.push(STOP);
                    rows.push(row);
                    i = j + 1;
                    break;
                }
                (Some(&a), Some(&b)) if a == b => {
                    row.push(a);
                    j += 2;
                }
                (Some(&a), Some(&b)) => {
                    return Err(Error::Parse(format!("symbols {a}{b} at {j} are not doubled")));
                }
                _ => return Ok(rows),
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct EncodingReport {
    /// Triangle rows, row 0 included.
    pub expected: Vec<String>,
    /// `S` followed by the rows decoded from the dictionary process.
    pub decoded: Vec<String>,
    pub rows_match: bool,
    pub steps: usize,
    /// Largest number of bits the reader skipped before a match.
    pub max_skipped: usize,
    /// Table entries never read while producing the rows.
    pub unused: BTreeSet<(char, char)>,
}

/// Runs the encoded dictionary from `SS` until rows `0..rows` can be decoded
/// and compares them with [`triangle`].
pub fn verify_encoding(t: &MulTable, rows: usize) -> Result<EncodingReport> {
    let expected = triangle(t, rows)?;
    let enc = encode_table(t)?;
    let w = enc.codec.width();
    // rows 1..rows occupy 2 + 4 + … + 2(rows-1) symbols of the stream
    let needed = rows.saturating_sub(1) * rows * w;
    let mut state = RewriteState::new(&enc.codec.encode("SS")?);
    let mut used = BTreeSet::new();
    let mut max_skipped = 0;
    while state.string.len() < needed {
        let Some(step) = state.step(&enc.dictionary, ReaderMode::ScanForward) else {
            break;
        };
        max_skipped = max_skipped.max(step.skipped);
        used.insert(enc.sources[step.entry]);
    }
    let stream = enc.codec.decode(&state.string[..state.string.len() / w * w])?;
    let mut decoded = vec![STOP.to_string()];
    decoded.extend(decode_rows(&stream)?);
    decoded.truncate(rows);
    let unused = t
        .entries()
        .into_iter()
        .map(|(x, y, _)| (x, y))
        .filter(|e| !used.contains(e))
        .collect();
    Ok(EncodingReport {
        rows_match: decoded == expected,
        expected,
        decoded,
        steps: state.steps,
        max_skipped,
        unused,
    })
}

impl fmt::Display for MulTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "  |")?;
        for y in &self.alphabet {
            write!(f, " {y}")?;
        }
        writeln!(f)?;
        for &x in &self.alphabet {
            write!(f, "{x} |")?;
            for &y in &self.alphabet {
                write!(f, " {}", self.get(x, y).unwrap_or('.'))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{bits_to_string, parse_bits};

    fn b(s: &str) -> Vec<u8> {
        parse_bits(s).unwrap()
    }

    #[test]
    fn no_occurrence_terminates_immediately() {
        let d = Dictionary::from_pairs(&[("11", "00")], Policy::PrefixFree).unwrap();
        let r = run(&d, &b("00"), 10, ReaderMode::ScanForward).unwrap();
        assert_eq!(r.outcome, RunOutcome::Terminated);
        assert_eq!(r.state.steps, 0);
        assert_eq!(bits_to_string(&r.state.string), "00");
        let r = run(&d, &b("00"), 0, ReaderMode::ScanForward).unwrap();
        assert_eq!(r.outcome, RunOutcome::Terminated);
    }

    #[test]
    fn three_longest_match_steps() {
        let d = Dictionary::from_pairs(&[("1", "0"), ("0", "10")], Policy::LongestMatch).unwrap();
        let r = run(&d, &b("1"), 3, ReaderMode::ScanForward).unwrap();
        assert_eq!(r.outcome, RunOutcome::Budget);
        assert_eq!(bits_to_string(&r.state.string), "10100");
        assert_eq!(r.state.head, 3);
    }

    #[test]
    fn scan_forward_versus_at_head() {
        let d = Dictionary::from_pairs(&[("11", "0")], Policy::PrefixFree).unwrap();
        let r = run(&d, &b("0110"), 5, ReaderMode::ScanForward).unwrap();
        assert_eq!(r.trace[0].skipped, 1);
        assert_eq!(r.outcome, RunOutcome::Terminated);
        assert_eq!(bits_to_string(&r.state.string), "01100");
        let r = run(&d, &b("0110"), 5, ReaderMode::AtHead).unwrap();
        assert_eq!(r.state.steps, 0);
    }

    #[test]
    fn example_triangle() {
        let rows = triangle(&MulTable::example(), 8).unwrap();
        assert_eq!(
            rows,
            vec!["S", "SS", "SAS", "SBCS", "SBCAS", "SBCACS", "SBCAAAS", "SBCABBCS"]
        );
        assert_eq!(triangle(&MulTable::example(), 4).unwrap()[3], "SBCS");
    }

    #[test]
    fn constant_table_triangle() {
        let t = MulTable::new("SA", &[('S', 'S', 'A'), ('S', 'A', 'A'), ('A', 'S', 'A'), ('A', 'A', 'A')]).unwrap();
        let rows = triangle(&t, 5).unwrap();
        assert_eq!(rows, vec!["S", "SS", "SAS", "SAAS", "SAAAS"]);
        let enc = encode_table(&t).unwrap();
        let rules: Vec<String> = enc
            .dictionary
            .entries()
            .iter()
            .map(|e| format!("{} -> {}", enc.codec.decode(&e.word).unwrap(), enc.codec.decode(&e.translate).unwrap()))
            .collect();
        assert_eq!(rules, vec!["SS -> SAAS", "SA -> SAA", "AS -> AAS", "AA -> AA"]);
        assert!(verify_encoding(&t, 5).unwrap().rows_match);
    }

    #[test]
    fn example_encoding() {
        let t = MulTable::example();
        let enc = encode_table(&t).unwrap();
        assert_eq!(enc.dictionary.len(), 16);
        assert_eq!(enc.codec.width(), 2);
        let show = |w: &str| {
            let e = &enc.dictionary.entries()[enc.dictionary.index_of(&enc.codec.encode(w).unwrap()).unwrap()];
            enc.codec.decode(&e.translate).unwrap()
        };
        assert_eq!(show("SS"), "SAAS");
        assert_eq!(show("AB"), "AA");
        assert_eq!(show("CS"), "AAS");
        let r = run(&enc.dictionary, &enc.codec.encode("SS").unwrap(), 5, ReaderMode::ScanForward).unwrap();
        assert_eq!(enc.codec.decode(&r.state.string).unwrap(), "SSSAASSBBCCSSBBCC");
        let r = run(&enc.dictionary, &enc.codec.encode("SS").unwrap(), 12, ReaderMode::ScanForward).unwrap();
        let s = enc.codec.decode(&r.state.string).unwrap();
        assert!(s.starts_with("SSSAASSBBCCSSBBCCAASSBBCCAACCS"), "{s}");
    }

    #[test]
    fn codec_round_trip() {
        let c = SymbolCodec::new(&['S', 'A', 'B', 'C', 'D']);
        assert_eq!(c.width(), 3);
        for w in ["", "S", "ADBC", "SSDDAC"] {
            assert_eq!(c.decode(&c.encode(w).unwrap()).unwrap(), w);
        }
        assert!(c.encode("X").is_err());
        assert!(c.decode(&[1, 1, 1]).is_err());
        assert_eq!(SymbolCodec::new(&['S', 'A']).width(), 1);
    }

    #[test]
    fn missing_product_is_reported() {
        let mut t = MulTable::example();
        t.remove('B', 'B');
        match triangle(&t, 20) {
            Err(Error::MissingProduct { left: 'B', right: 'B', row }) => assert_eq!(row, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(verify_encoding(&t, 20), Err(Error::MissingProduct { .. })));
    }

    #[test]
    fn table_file_round_trip() {
        let t = MulTable::example();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("multable v1 alphabet=SABC\nS S -> A\n"));
        assert_eq!(MulTable::read_from(&buf[..]).unwrap(), t);
        assert!(MulTable::read_from(&b"multable v1 alphabet=SA\nS S -> S\n"[..]).is_err());
        assert!(MulTable::new("AB", &[]).is_err());
    }

    #[test]
    fn decode_rows_undoes_doubling() {
        let rows = decode_rows("SS SAAS SBBCCS SBB").unwrap();
        assert_eq!(rows, vec!["SS", "SAS", "SBCS"]);
        assert!(decode_rows("SABS").is_err());
    }
}
