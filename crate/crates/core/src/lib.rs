//! P-positions of Wythoff Nim and its jump-extended relatives.
//!
//! * [`game`]: positions, rulesets (`wythoff`, `maharaja`, `klm:<k>,<l>`) and moves.
//! * [`oracle`]: retrograde P/N grids, the Wythoff closed form, structure checks.
//! * [`sequences`]: complementary sequences, slope pairs and deviation bounds.
//! * [`dictionary`]: binary word → translate dictionaries with prefix-free or
//!   longest-match reading.
//! * [`codec`]: Maharaja Nim's bit-string, dictionary learning, generation and
//!   verification.
//! * [`rewriter`]: generic dictionary processes and multiplication-table triangles.
//! * [`strategist`]: the logarithmic-depth outcome decision for (2,3)-Maharaja Nim.
//! * [`plot`], [`play`] and [`cli`]: figures, terminal play and the command surface.

pub mod cli;
pub mod codec;
pub mod dictionary;
pub mod game;
pub mod golden;
pub mod oracle;
pub mod play;
pub mod plot;
pub mod rewriter;
pub mod sequences;
pub mod strategist;

pub use game::{Position, Ruleset};
pub use oracle::{Outcome, OutcomeGrid};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ruleset: {0}")]
    InvalidRuleset(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("grid of bound {bound} needs {bytes} bytes, budget is {budget}")]
    Capacity { bound: usize, bytes: usize, budget: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid dictionary: {0}")]
    Dictionary(String),
    #[error("missing product {left}*{right} needed for row {row}")]
    MissingProduct { left: char, right: char, row: usize },
    #[error("anchor consistency failure: {0}")]
    Anchor(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
