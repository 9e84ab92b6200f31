//! Binary dictionaries: ordered `word -> translate` entries read with either a
//! prefix-free or a longest-match policy.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::{Error, Result};

/// Parses a string of `0`/`1` characters, ignoring whitespace.
pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("not a bit: {c:?}"))),
        })
        .collect()
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    /// No word is a prefix of another; at most one word matches anywhere.
    PrefixFree,
    /// Prefixes allowed; the longest word that prefixes the unread input wins.
    LongestMatch,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::PrefixFree => "prefix-free",
            Policy::LongestMatch => "longest-match",
        })
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "prefix-free" => Ok(Policy::PrefixFree),
            "longest-match" => Ok(Policy::LongestMatch),
            other => Err(Error::Parse(format!("unknown policy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub word: Vec<u8>,
    pub translate: Vec<u8>,
}

impl Entry {
    pub fn new(word: &str, translate: &str) -> Result<Self> {
        Ok(Entry {
            word: parse_bits(word)?,
            translate: parse_bits(translate)?,
        })
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            bits_to_string(&self.word),
            bits_to_string(&self.translate)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    entries: Vec<Entry>,
    policy: Policy,
}

impl Dictionary {
    /// Validates the policy invariant: words are nonempty and unique, and
    /// under [`Policy::PrefixFree`] no word prefixes another.
    pub fn new(entries: Vec<Entry>, policy: Policy) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.word.is_empty() {
                return Err(Error::Dictionary("empty word".into()));
            }
            for f in &entries[..i] {
                if f.word == e.word {
                    return Err(Error::Dictionary(format!(
                        "duplicate word {}",
                        bits_to_string(&e.word)
                    )));
                }
                if policy == Policy::PrefixFree
                    && (f.word.starts_with(&e.word) || e.word.starts_with(&f.word))
                {
                    return Err(Error::Dictionary(format!(
                        "{} and {} violate prefix-freeness",
                        bits_to_string(&f.word),
                        bits_to_string(&e.word)
                    )));
                }
            }
        }
        Ok(Dictionary { entries, policy })
    }

    /// Builds from `(word, translate)` bit-string literals.
    pub fn from_pairs(pairs: &[(&str, &str)], policy: Policy) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|(w, t)| Entry::new(w, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries, policy)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn translate_of(&self, word: &[u8]) -> Option<&[u8]> {
        self.entries
            .iter()
            .find(|e| e.word == word)
            .map(|e| e.translate.as_slice())
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.entries.iter().position(|e| e.word == word)
    }

    pub fn max_word_len(&self) -> usize {
        self.entries.iter().map(|e| e.word.len()).max().unwrap_or(0)
    }

    pub fn max_translate_len(&self) -> usize {
        self.entries.iter().map(|e| e.translate.len()).max().unwrap_or(0)
    }

    /// Index of the entry read at `pos` under the dictionary's policy.
    /// Only bits that are present count: a word extending past the end of
    /// `s` does not match.
    pub fn match_at(&self, s: &[u8], pos: usize) -> Option<usize> {
        let rest = s.get(pos..)?;
        let mut best: Option<usize> = None;
        for (i, e) in self.entries.iter().enumerate() {
            if rest.starts_with(&e.word) {
                match self.policy {
                    Policy::PrefixFree => return Some(i),
                    Policy::LongestMatch => {
                        if best.is_none_or(|b| self.entries[b].word.len() < e.word.len()) {
                            best = Some(i);
                        }
                    }
                }
            }
        }
        best
    }

    /// Writes `# policy: <policy>` followed by one `word -> translate` per line.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# policy: {}", self.policy)?;
        for e in &self.entries {
            writeln!(w, "{e}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut policy = None;
        let mut entries = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(p) = comment.trim().strip_prefix("policy:") {
                    policy = Some(p.parse()?);
                }
                continue;
            }
            let (w, t) = line
                .split_once("->")
                .ok_or_else(|| Error::Format(format!("expected `word -> translate`: {line:?}")))?;
            entries.push(Entry::new(w, t)?);
        }
        let policy = policy.ok_or_else(|| Error::Format("missing `# policy:` header".into()))?;
        Self::new(entries, policy)
    }
}

impl fmt::Display for Dictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
