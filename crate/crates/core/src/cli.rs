//! The `maharaja` command line. Exit codes: 0 ok, 1 verification failure,
//! 2 usage error, 3 resource error (memory budget or I/O).

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::codec::{
    self, bitstring_from_grid, check_exclusions, generate_bitstring, klm23_dictionary,
    learn_dictionary, maharaja_dictionary, verify_dictionary, BitString, LearnMode,
    MAHARAJA_OBSERVED, MAHARAJA_SEED,
};
use crate::dictionary::{bits_to_string, parse_bits, Dictionary};
use crate::game::{Position, Ruleset};
use crate::oracle::{
    check_structure, compute_grid_with_budget, upper_p_sequence, wythoff_pair, OutcomeGrid,
    DEFAULT_BUDGET,
};
use crate::plot::{self, PlotFormat};
use crate::rewriter::{self, MulTable, ReaderMode, RunOutcome};
use crate::sequences;
use crate::strategist::{Telescope, TelescopeConfig};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "maharaja", version, about = "P-positions of Wythoff Nim and its jump-extended relatives")]
pub struct Cli {
    /// Optional key=value file: budget-mib, cache-dir, q, c, base-len, depth-margin.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Memory budget for grid cells in MiB.
    #[arg(long, global = true)]
    pub budget_mib: Option<usize>,
    /// Directory where computed grids are cached and looked up.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a P/N grid, cache it and list the first upper P-positions.
    Compute(ComputeArgs),
    /// Draw P-positions as SVG, PGM or CSV.
    Plot(PlotArgs),
    /// Run all structural and dictionary checks for a game.
    Verify(VerifyArgs),
    /// Print a game's bit-string from the oracle or the dictionary.
    Bitstring(BitstringArgs),
    /// Learn a dictionary from an oracle grid.
    DictLearn(DictLearnArgs),
    /// Run the dictionary process from a seed.
    DictRun(DictRunArgs),
    /// Run a general dictionary process under a step budget.
    Rewrite(RewriteArgs),
    /// Print the triangle of a multiplication table.
    Triangle(TriangleArgs),
    /// Decide a position of (2,3)-Maharaja Nim.
    Decide(DecideArgs),
    /// Play against the engine.
    Play(PlayArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub game: String,
    #[arg(long)]
    pub bound: usize,
    /// Write the grid here.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Upper P-positions to list.
    #[arg(long, default_value_t = 10)]
    pub list: usize,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Repeat for several panels.
    #[arg(long = "game", required = true)]
    pub games: Vec<String>,
    #[arg(long)]
    pub bound: usize,
    #[arg(long, default_value = "svg")]
    pub format: String,
    /// Draw y = φx and y = x/φ.
    #[arg(long)]
    pub overlay_lines: bool,
    /// Output directory; one file per game (a single file for CSV).
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// wythoff, maharaja or 23m.
    #[arg(long)]
    pub game: String,
    /// Grid bound; defaults to 2000, 20000 and 5000 respectively.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BitstringArgs {
    #[arg(long)]
    pub game: String,
    /// Oracle grid bound.
    #[arg(long, default_value_t = 2000)]
    pub bound: usize,
    /// Generate with the built-in dictionary to this length instead.
    #[arg(long)]
    pub generate: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub from: u64,
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DictLearnArgs {
    #[arg(long)]
    pub game: String,
    #[arg(long)]
    pub bound: usize,
    /// maharaja or klm-relaxed; by default maharaja for Maharaja Nim.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print every (word, translate, start, append) entry.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct DictRunArgs {
    /// Dictionary file; or use --builtin.
    #[arg(long, conflicts_with = "builtin")]
    pub dict: Option<PathBuf>,
    /// maharaja or 23m.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Seed bits; defaults to the built-in game's seed.
    #[arg(long)]
    pub seed: Option<String>,
    /// Read head index into the seed.
    #[arg(long)]
    pub head: Option<usize>,
    #[arg(long)]
    pub len: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    /// Binary dictionary file.
    #[arg(long, conflicts_with_all = ["table", "example_table"])]
    pub dict: Option<PathBuf>,
    /// Multiplication table file, encoded into a dictionary.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub example_table: bool,
    /// Start bits (dictionary) or symbols (table, default SS).
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub max_steps: usize,
    /// scan-forward or at-head.
    #[arg(long, default_value = "scan-forward")]
    pub reader: String,
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long, conflicts_with = "example_table")]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub example_table: bool,
    #[arg(long)]
    pub rows: usize,
    /// Also run the encoded dictionary and compare.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[arg(long, default_value = "23m")]
    pub game: String,
    /// Position as x,y.
    #[arg(long)]
    pub pos: String,
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub game: String,
    /// Starting position as x,y.
    #[arg(long, default_value = "10,15")]
    pub start: String,
    #[arg(long)]
    pub engine_first: bool,
}

/// Settings from the config file, overridden by flags.
#[derive(Clone, Debug)]
pub struct Settings {
    pub budget: usize,
    pub cache_dir: Option<PathBuf>,
    pub telescope: TelescopeConfig,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            budget: DEFAULT_BUDGET,
            cache_dir: None,
            telescope: TelescopeConfig::default(),
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

impl Settings {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(path) = &cli.config {
            let kv = parse_config(&fs::read_to_string(path)?)?;
            for (k, v) in &kv {
                let num = || -> Result<usize> {
                    v.parse()
                        .map_err(|_| Error::Parse(format!("config {k}: not a number: {v:?}")))
                };
                match k.as_str() {
                    "budget-mib" => s.budget = num()? << 20,
                    "cache-dir" => s.cache_dir = Some(PathBuf::from(v)),
                    "q" => s.telescope.q = num()?,
                    "c" => s.telescope.c = num()?,
                    "base-len" => s.telescope.base_len = num()?,
                    "depth-margin" => s.telescope.depth_margin = num()? as u32,
                    _ => return Err(Error::Parse(format!("unknown config key {k:?}"))),
                }
            }
        }
        if let Some(mib) = cli.budget_mib {
            s.budget = mib << 20;
        }
        if let Some(dir) = &cli.cache_dir {
            s.cache_dir = Some(dir.clone());
        }
        Ok(s)
    }
}

/// Parses the command line, runs it and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let stdin = io::stdin();
    match run(&cli, &mut stdin.lock(), &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidRuleset(_) | Error::Domain(_) | Error::Dictionary(_) | Error::Format(_) => {
            EXIT_USAGE
        }
        Error::Capacity { .. } | Error::Io(_) | Error::Overflow(_) => EXIT_RESOURCE,
        Error::MissingProduct { .. } | Error::Anchor(_) | Error::Convergence(_) => EXIT_FAILURE,
    }
}

pub fn run<R: BufRead, W: Write>(cli: &Cli, input: &mut R, out: &mut W) -> Result<i32> {
    let s = Settings::from_cli(cli)?;
    match &cli.command {
        Command::Compute(a) => cmd_compute(&s, a, out),
        Command::Plot(a) => cmd_plot(&s, a, out),
        Command::Verify(a) => cmd_verify(&s, a, out),
        Command::Bitstring(a) => cmd_bitstring(&s, a, out),
        Command::DictLearn(a) => cmd_dict_learn(&s, a, out),
        Command::DictRun(a) => cmd_dict_run(a, out),
        Command::Rewrite(a) => cmd_rewrite(a, out),
        Command::Triangle(a) => cmd_triangle(a, out),
        Command::Decide(a) => cmd_decide(&s, a, out),
        Command::Play(a) => cmd_play(&s, a, input, out),
    }
}

/// Accepts the short game name `23m` besides the ruleset ids.
fn parse_game(game: &str) -> Result<Ruleset> {
    game.parse()
}

fn cache_path(s: &Settings, r: &Ruleset, bound: usize) -> Option<PathBuf> {
    s.cache_dir
        .as_ref()
        .map(|d| d.join(format!("{}-{bound}.grid", plot::file_stem(&r.id()))))
}

fn read_grid(path: &Path) -> Result<OutcomeGrid> {
    OutcomeGrid::read_from(BufReader::new(File::open(path)?))
}

fn write_grid(g: &OutcomeGrid, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(path)?);
    g.write_to(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Loads the grid from the cache directory when present, otherwise computes
/// (and caches) it.
fn obtain_grid(s: &Settings, r: &Ruleset, bound: usize) -> Result<OutcomeGrid> {
    let path = cache_path(s, r, bound);
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        let g = read_grid(p)?;
        if g.ruleset() == r && g.bound() == bound {
            return Ok(g);
        }
    }
    let g = compute_grid_with_budget(r, bound, s.budget)?;
    if let Some(p) = path {
        write_grid(&g, &p)?;
    }
    Ok(g)
}

fn cmd_compute<W: Write>(s: &Settings, a: &ComputeArgs, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    if a.bound == 0 {
        return Err(Error::Domain("bound must be at least 1".into()));
    }
    let g = obtain_grid(s, &r, a.bound)?;
    if let Some(p) = &a.cache {
        write_grid(&g, p)?;
        writeln!(out, "grid written to {}", p.display())?;
    }
    let seq = upper_p_sequence(&g);
    writeln!(
        out,
        "{} bound {}: {} upper P-positions below the safe cutoff {}",
        r.id(),
        a.bound,
        seq.len(),
        seq.safe_cutoff
    )?;
    for (a_n, b_n) in seq.pairs.iter().take(a.list) {
        writeln!(out, "({a_n},{b_n})")?;
    }
    Ok(EXIT_OK)
}

fn cmd_plot<W: Write>(s: &Settings, a: &PlotArgs, out: &mut W) -> Result<i32> {
    let format: PlotFormat = a.format.parse()?;
    if a.bound == 0 {
        return Err(Error::Domain("bound must be at least 1".into()));
    }
    fs::create_dir_all(&a.out_dir)?;
    let mut grids = Vec::new();
    for game in &a.games {
        let r = parse_game(game)?;
        grids.push(obtain_grid(s, &r, a.bound)?);
    }
    if format == PlotFormat::Csv {
        let path = a.out_dir.join(format!("p-positions-{}.csv", a.bound));
        let mut w = BufWriter::new(File::create(&path)?);
        plot::write_csv(&grids.iter().collect::<Vec<_>>(), &mut w)?;
        w.flush()?;
        writeln!(out, "{}", path.display())?;
        return Ok(EXIT_OK);
    }
    for g in &grids {
        let name = format!("{}-{}.{}", plot::file_stem(&g.ruleset().id()), a.bound, format.extension());
        let path = a.out_dir.join(name);
        let bytes = match format {
            PlotFormat::Svg => plot::render_svg(g, a.overlay_lines)?.into_bytes(),
            PlotFormat::Pgm => plot::render_pgm(g, a.overlay_lines)?,
            PlotFormat::Csv => unreachable!(),
        };
        fs::write(&path, bytes)?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(EXIT_OK)
}

/// Collects pass/fail lines.
struct Checklist<'a, W: Write> {
    out: &'a mut W,
    failed: usize,
}

impl<W: Write> Checklist<'_, W> {
    fn check(&mut self, ok: bool, what: impl std::fmt::Display) -> Result<()> {
        if !ok {
            self.failed += 1;
        }
        writeln!(self.out, "[{}] {what}", if ok { "ok" } else { "FAIL" })?;
        Ok(())
    }
}

fn cmd_verify<W: Write>(s: &Settings, a: &VerifyArgs, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    let mut c = Checklist { out, failed: 0 };
    if r.is_wythoff() {
        verify_wythoff(s, a.bound.unwrap_or(2000), &mut c)?;
    } else if r == Ruleset::maharaja() {
        verify_maharaja(s, a.bound.unwrap_or(20_000), &mut c)?;
    } else if r == Ruleset::klm(2, 3)? {
        verify_23m(s, a.bound.unwrap_or(5000), &mut c)?;
    } else {
        return Err(Error::Domain(format!("verify supports wythoff, maharaja and 23m, not {}", r.id())));
    }
    let failed = c.failed;
    writeln!(c.out, "{}", if failed == 0 { "all checks passed".to_string() } else { format!("{failed} checks failed") })?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn structure_lines<W: Write>(g: &OutcomeGrid, c: &mut Checklist<W>) -> Result<()> {
    let rep = check_structure(g);
    c.check(
        rep.is_ok(),
        format_args!(
            "one P-position per row and column below {}, at most one per diagonal ({} violations)",
            rep.safe_cutoff,
            rep.violations.len()
        ),
    )?;
    Ok(())
}

fn verify_wythoff<W: Write>(s: &Settings, bound: usize, c: &mut Checklist<W>) -> Result<()> {
    let g = obtain_grid(s, &Ruleset::wythoff(), bound)?;
    structure_lines(&g, c)?;
    let seq = upper_p_sequence(&g);
    let mut mismatches = 0;
    for (n, &p) in seq.pairs.iter().enumerate() {
        if wythoff_pair(n as u64)? != p {
            mismatches += 1;
        }
    }
    c.check(mismatches == 0, format_args!("{} pairs equal (⌊φn⌋, ⌊φ²n⌋)", seq.len()))?;
    let rep = check_structure(&g);
    c.check(rep.coverage_at_every_prefix(), "difference coverage {0..n} at every prefix")?;
    let up_to = seq.safe_cutoff.saturating_sub(1);
    let comp = sequences::check_complementary(seq.a().skip(1), seq.b().skip(1), up_to);
    c.check(comp.holds(), format_args!("a and b complementary up to {up_to}"))?;
    Ok(())
}

fn verify_maharaja<W: Write>(s: &Settings, bound: usize, c: &mut Checklist<W>) -> Result<()> {
    let g = obtain_grid(s, &Ruleset::maharaja(), bound)?;
    structure_lines(&g, c)?;
    let rep = check_structure(&g);
    writeln!(
        c.out,
        "      difference coverage holds at {} of {} prefixes; longest gap {}",
        rep.coverage_prefixes.len(),
        rep.pairs,
        rep.max_coverage_gap
    )?;
    let seq = upper_p_sequence(&g);
    let (lo, hi) = sequences::band_extremes(&seq).unwrap_or((0, 0));
    c.check(
        lo >= -4 && hi <= 3,
        format_args!("b - a - n within [{lo}, {hi}] ⊆ [-4, 3] over {} pairs", seq.len()),
    )?;
    let reference = bitstring_from_grid(&g);
    let d = maharaja_dictionary();
    let v = verify_dictionary(&d, &reference, MAHARAJA_SEED.1)?;
    c.check(
        v.is_ok(),
        format_args!(
            "dictionary reads the oracle bit-string: {} words, {} translates checked, {} mismatches",
            v.words_read,
            v.translates_checked,
            v.mismatches.len()
        ),
    )?;
    let seed = parse_bits(MAHARAJA_SEED.0)?;
    let len = reference.len().max(20_000);
    let gen = generate_bitstring(&d, &seed, 0, len)?;
    let offset = MAHARAJA_SEED.1 as usize;
    let overlap = (reference.len() - offset).min(gen.bits.len());
    let agree = gen.bits[..overlap] == reference.bits[offset..offset + overlap];
    c.check(
        gen.stall.is_none() && agree,
        format_args!("generated string matches the oracle on {overlap} bits"),
    )?;
    let census = gen.census(&d, 20_000);
    let observed = census[..MAHARAJA_OBSERVED].iter().all(|&n| n > 0);
    let unobserved = census[MAHARAJA_OBSERVED..].iter().all(|&n| n == 0);
    c.check(observed && unobserved, format_args!("word census over 20000 bits: {census:?}"))?;
    let ex = check_exclusions(&d, &gen)?;
    c.check(
        ex.is_ok(),
        format_args!(
            "excluded words absent at {} word starts; {} static translate rules pass",
            ex.word_starts_checked,
            ex.static_rules.iter().filter(|r| r.passed()).count()
        ),
    )?;
    Ok(())
}

fn verify_23m<W: Write>(s: &Settings, bound: usize, c: &mut Checklist<W>) -> Result<()> {
    let r = Ruleset::klm(2, 3)?;
    let g = obtain_grid(s, &r, bound)?;
    structure_lines(&g, c)?;
    let learned = learn_dictionary(&g, LearnMode::KlmRelaxed)?;
    let d = klm23_dictionary();
    let mut same = learned.dictionary.len() == d.len() && learned.conflicts.is_empty();
    for e in d.entries() {
        same &= learned.dictionary.translate_of(&e.word) == Some(e.translate.as_slice());
    }
    c.check(same, format_args!("learned dictionary: {}", learned.dictionary.to_string().trim_end().replace('\n', ", ")))?;
    let v = verify_dictionary(&d, &bitstring_from_grid(&g), 1)?;
    c.check(
        v.is_ok(),
        format_args!("dictionary reads the oracle bit-string: {} translates checked", v.translates_checked),
    )?;
    let t = Telescope::certify(s.telescope)?;
    writeln!(c.out, "      convergence window q = {}", t.certificate.q)?;
    let mut disagreements = 0;
    for x in 0..g.safe_cutoff() {
        let b = g.p_in_column(x).expect("safe columns have a P-position");
        if t.partner(x)?.0 != b {
            disagreements += 1;
        }
    }
    c.check(
        disagreements == 0,
        format_args!("telescope agrees with the oracle on {} columns", g.safe_cutoff()),
    )?;
    Ok(())
}

fn write_bits<W: Write>(bs: &BitString, path: Option<&PathBuf>, out: &mut W) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            bs.write_to(&mut w)?;
            w.flush()?;
            writeln!(out, "{} bits written to {}", bs.len(), p.display())?;
        }
        None => writeln!(out, "{bs}")?,
    }
    Ok(())
}

fn cmd_bitstring<W: Write>(s: &Settings, a: &BitstringArgs, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    let full = match a.generate {
        Some(len) => builtin_generation(&r, len)?,
        None => bitstring_from_grid(&obtain_grid(s, &r, a.bound)?),
    };
    let to = a.len.map_or(u64::MAX, |l| a.from.saturating_add(l as u64));
    let bs = BitString {
        ruleset: r,
        start: a.from.max(full.start),
        bits: full.slice(a.from, to).to_vec(),
    };
    write_bits(&bs, a.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

/// A game's bit-string from column 0 produced by its dictionary.
fn builtin_generation(r: &Ruleset, len: usize) -> Result<BitString> {
    let (d, seed, head, prefix) = builtin(r)?;
    let g = generate_bitstring(&d, &seed, head, len.saturating_sub(prefix.len()))?;
    let mut bits = prefix;
    bits.extend_from_slice(&g.bits);
    bits.truncate(len);
    Ok(BitString { ruleset: r.clone(), start: 0, bits })
}

/// Dictionary, seed, head and the columns preceding the seed.
fn builtin(r: &Ruleset) -> Result<(Dictionary, Vec<u8>, usize, Vec<u8>)> {
    if *r == Ruleset::maharaja() {
        // columns 0..8 precede the first word
        Ok((maharaja_dictionary(), parse_bits(MAHARAJA_SEED.0)?, 0, parse_bits("00010110")?))
    } else if *r == Ruleset::klm(2, 3)? {
        let (seed, _, head) = codec::KLM23_SEED;
        Ok((klm23_dictionary(), parse_bits(seed)?, head, vec![0]))
    } else {
        Err(Error::Domain(format!("no built-in dictionary for {}", r.id())))
    }
}

fn cmd_dict_learn<W: Write>(s: &Settings, a: &DictLearnArgs, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    let mode = match a.mode.as_deref() {
        Some("maharaja") => LearnMode::Maharaja,
        Some("klm-relaxed") => LearnMode::KlmRelaxed,
        None if r == Ruleset::maharaja() => LearnMode::Maharaja,
        None => LearnMode::KlmRelaxed,
        Some(m) => return Err(Error::Parse(format!("unknown mode {m:?}"))),
    };
    let g = obtain_grid(s, &r, a.bound)?;
    let l = learn_dictionary(&g, mode)?;
    if a.trace {
        for t in &l.trace {
            writeln!(out, "{t}")?;
        }
    }
    for t in &l.conflicts {
        writeln!(out, "conflict: {t}")?;
    }
    if let Some(note) = &l.note {
        writeln!(out, "note: {note}")?;
    }
    match &a.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            l.dictionary.write_to(&mut w)?;
            w.flush()?;
            writeln!(out, "{} entries written to {}", l.dictionary.len(), p.display())?;
        }
        None => l.dictionary.write_to(&mut *out)?,
    }
    Ok(EXIT_OK)
}

fn load_dictionary(path: &Path) -> Result<Dictionary> {
    Dictionary::read_from(BufReader::new(File::open(path)?))
}

fn cmd_dict_run<W: Write>(a: &DictRunArgs, out: &mut W) -> Result<i32> {
    let (d, seed, head) = match (&a.dict, &a.builtin) {
        (Some(p), _) => {
            let seed = a.seed.as_deref().ok_or_else(|| Error::Domain("--seed is required with --dict".into()))?;
            (load_dictionary(p)?, parse_bits(seed)?, a.head.unwrap_or(0))
        }
        (None, Some(game)) => {
            let (d, seed, head, _) = builtin(&parse_game(game)?)?;
            let seed = match &a.seed {
                Some(s) => parse_bits(s)?,
                None => seed,
            };
            (d, seed, a.head.unwrap_or(head))
        }
        (None, None) => return Err(Error::Domain("give --dict or --builtin".into())),
    };
    let mut g = generate_bitstring(&d, &seed, head, a.len)?;
    g.bits.truncate(a.len);
    if a.trace {
        for t in &g.trace {
            writeln!(out, "{t}")?;
        }
    }
    if let Some(stall) = &g.stall {
        writeln!(out, "stalled at {}: next bits {}", stall.head, bits_to_string(&stall.next))?;
    }
    match &a.out {
        Some(p) => {
            fs::write(p, format!("{}\n", bits_to_string(&g.bits)))?;
            writeln!(out, "{} bits written to {}", g.bits.len(), p.display())?;
        }
        None => writeln!(out, "{}", bits_to_string(&g.bits))?,
    }
    Ok(if g.stall.is_some() { EXIT_FAILURE } else { EXIT_OK })
}

fn load_table(path: Option<&PathBuf>, example: bool) -> Result<MulTable> {
    match (path, example) {
        (Some(p), _) => MulTable::read_from(BufReader::new(File::open(p)?)),
        (None, true) => Ok(MulTable::example()),
        (None, false) => Err(Error::Domain("give --table or --example-table".into())),
    }
}

fn cmd_rewrite<W: Write>(a: &RewriteArgs, out: &mut W) -> Result<i32> {
    let mode: ReaderMode = a.reader.parse()?;
    let (d, start, codec) = match &a.dict {
        Some(p) => {
            let start = a.start.as_deref().ok_or_else(|| Error::Domain("--start is required with --dict".into()))?;
            (load_dictionary(p)?, parse_bits(start)?, None)
        }
        None => {
            let t = load_table(a.table.as_ref(), a.example_table)?;
            let enc = rewriter::encode_table(&t)?;
            let start = enc.codec.encode(a.start.as_deref().unwrap_or("SS"))?;
            (enc.dictionary, start, Some(enc.codec))
        }
    };
    let res = rewriter::run(&d, &start, a.max_steps, mode)?;
    if a.trace {
        for st in &res.trace {
            writeln!(
                out,
                "step: entry {} at {} (skipped {}) appended at {}",
                d.entries()[st.entry],
                st.match_start,
                st.skipped,
                st.append_start
            )?;
        }
    }
    let status = match res.outcome {
        RunOutcome::Terminated => "terminated",
        RunOutcome::Budget => "budget exhausted",
    };
    writeln!(out, "{status} after {} steps, head {}", res.state.steps, res.state.head)?;
    match codec {
        Some(c) => {
            let w = c.width();
            let whole = res.state.string.len() / w * w;
            writeln!(out, "{}", c.decode(&res.state.string[..whole])?)?;
        }
        None => writeln!(out, "{}", bits_to_string(&res.state.string))?,
    }
    Ok(EXIT_OK)
}

fn cmd_triangle<W: Write>(a: &TriangleArgs, out: &mut W) -> Result<i32> {
    let t = load_table(a.table.as_ref(), a.example_table)?;
    for row in rewriter::triangle(&t, a.rows)? {
        writeln!(out, "{row}")?;
    }
    if a.verify {
        let rep = rewriter::verify_encoding(&t, a.rows)?;
        let unused: Vec<String> = rep.unused.iter().map(|(x, y)| format!("{x}*{y}")).collect();
        writeln!(out, "encoded dictionary reproduces the rows: {}", rep.rows_match)?;
        writeln!(out, "unused entries: {}", if unused.is_empty() { "none".into() } else { unused.join(" ") })?;
        if !rep.rows_match {
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_decide<W: Write>(s: &Settings, a: &DecideArgs, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    if r != Ruleset::klm(2, 3)? {
        return Err(Error::Domain(format!("decide supports 23m only, not {}", r.id())));
    }
    let p: Position = a.pos.parse()?;
    let t = Telescope::certify(s.telescope)?;
    let (o, trace) = t.decide(p)?;
    if a.trace {
        for l in &trace.levels {
            writeln!(out, "{l}")?;
        }
        writeln!(out, "rounds {} (bound {})", trace.rounds, t.round_bound(p.x.min(p.y)))?;
    }
    writeln!(out, "{p} {o}")?;
    Ok(EXIT_OK)
}

fn cmd_play<R: BufRead, W: Write>(s: &Settings, a: &PlayArgs, input: &mut R, out: &mut W) -> Result<i32> {
    let r = parse_game(&a.game)?;
    let start: Position = a.start.parse()?;
    let bound = start.x.max(start.y) as usize + 1;
    if r == Ruleset::klm(2, 3)? && crate::oracle::grid_bytes(bound) > s.budget {
        let t = Telescope::certify(s.telescope)?;
        crate::play::play(&r, &t, start, !a.engine_first, input, out)?;
    } else {
        let g = compute_grid_with_budget(&r, bound, s.budget)?;
        crate::play::play(&r, &g, start, !a.engine_first, input, out)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let kv = parse_config("# telescope\nq = 20\nbase_len=300\n\n").unwrap();
        assert_eq!(kv["q"], "20");
        assert_eq!(kv["base-len"], "300");
        assert!(parse_config("q 20").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse(String::new())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Capacity { bound: 1, bytes: 1, budget: 0 }), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::Anchor(String::new())), EXIT_FAILURE);
    }
}
