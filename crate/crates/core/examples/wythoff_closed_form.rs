//! Wythoff Nim's P-positions against the closed form (⌊φn⌋, ⌊φ²n⌋), and
//! complementarity of the two coordinate sequences.

use maharaja::game::Ruleset;
use maharaja::oracle::{compute_grid, upper_p_sequence, wythoff_pair};
use maharaja::sequences::{check_complementary, deviation};
use maharaja::golden::PHI;

fn main() -> maharaja::Result<()> {
    let g = compute_grid(&Ruleset::wythoff(), 5000)?;
    let seq = upper_p_sequence(&g);

    let mut mismatches = 0;
    for (n, &pair) in seq.pairs.iter().enumerate() {
        if wythoff_pair(n as u64)? != pair {
            mismatches += 1;
        }
    }
    println!("{} pairs from the grid, {mismatches} differ from the closed form", seq.len());

    // exact floors survive where f64 would round wrongly
    let n = 10u64.pow(15);
    println!("pair {n}: {:?}", wythoff_pair(n)?);

    let up_to = seq.safe_cutoff - 1;
    let c = check_complementary(seq.a().skip(1), seq.b().skip(1), up_to);
    println!("a, b complementary up to {up_to}: {}", c.holds());

    let d = deviation(seq.a().map(|a| a as f64), PHI)?;
    println!("a_n - φn in [{:.4}, {:.4}]", d.min_dev, d.max_dev);
    Ok(())
}
