//! Compute the P/N grid of a game and list its first upper P-positions.
//!
//!     cargo run --example compute_grid -- maharaja 200

use maharaja::game::Ruleset;
use maharaja::oracle::{check_structure, compute_grid, grid_bytes, upper_p_sequence};

fn main() -> maharaja::Result<()> {
    let mut args = std::env::args().skip(1);
    let game: Ruleset = args.next().as_deref().unwrap_or("maharaja").parse()?;
    let bound: usize = args.next().map_or(Ok(200), |s| s.parse()).expect("bound must be a number");

    println!("{} cells take {} bytes", bound * bound, grid_bytes(bound));
    let g = compute_grid(&game, bound)?;
    let seq = upper_p_sequence(&g);
    println!("{}: {} upper pairs below column {}", game.id(), seq.len(), seq.safe_cutoff);
    for (n, (a, b)) in seq.pairs.iter().enumerate().take(16) {
        println!("  n={n:<3} ({a},{b})  b-a-n={}", *b as i64 - *a as i64 - n as i64);
    }

    let rep = check_structure(&g);
    println!(
        "rows/columns/diagonals: {} violations; coverage holds at {} of {} prefixes",
        rep.violations.len(),
        rep.coverage_prefixes.len(),
        rep.pairs
    );
    Ok(())
}
