//! Write the P-position figures of Wythoff Nim, Maharaja Nim and several
//! (k,l)-Maharaja Nims as SVG with the lines y = φx and y = x/φ.
//!
//!     cargo run --example plot_figures -- /tmp/figures

use std::path::PathBuf;

use maharaja::game::Ruleset;
use maharaja::oracle::compute_grid;
use maharaja::plot::{file_stem, render_pgm, render_svg};

fn main() -> maharaja::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    let games = [
        (Ruleset::wythoff(), 100),
        (Ruleset::maharaja(), 100),
        (Ruleset::maharaja(), 1000),
        (Ruleset::klm(2, 3)?, 300),
        (Ruleset::klm(3, 5)?, 1500),
        (Ruleset::klm(4, 7)?, 1500),
    ];
    for (r, bound) in games {
        let g = compute_grid(&r, bound)?;
        let stem = dir.join(format!("{}-{bound}", file_stem(&r.id())));
        std::fs::write(stem.with_extension("svg"), render_svg(&g, true)?)?;
        std::fs::write(stem.with_extension("pgm"), render_pgm(&g, true)?)?;
        println!("{}.{{svg,pgm}}", stem.display());
    }
    Ok(())
}
