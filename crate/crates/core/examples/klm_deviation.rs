//! How far the upper P-positions of (k,l)-Maharaja Nim stray from y = φx.
//! Bounded deviations here are evidence, not proof.

use maharaja::game::Ruleset;
use maharaja::oracle::{compute_grid, upper_p_sequence};
use maharaja::sequences::golden_band;

fn main() -> maharaja::Result<()> {
    let bound = 1500;
    println!("{:>8} {:>7} {:>9} {:>9} {:>9}", "(k,l)", "pairs", "min", "max", "max|.|");
    for (k, l) in [(1, 2), (2, 3), (3, 5), (4, 6), (4, 7), (5, 8), (6, 10), (7, 11)] {
        let g = compute_grid(&Ruleset::klm(k, l)?, bound)?;
        let seq = upper_p_sequence(&g);
        let d = golden_band(&seq)?;
        println!(
            "{:>8} {:>7} {:>9.3} {:>9.3} {:>9.3}",
            format!("({k},{l})"),
            seq.len(),
            d.min_dev,
            d.max_dev,
            d.max_abs()
        );
    }
    Ok(())
}
