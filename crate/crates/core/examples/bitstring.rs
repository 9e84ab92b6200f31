//! Maharaja Nim's bit-string (0 where a column's P-position is upper) from
//! the oracle and from the 14-word dictionary, compared bit for bit.

use maharaja::codec::{bitstring_from_grid, generate_bitstring, maharaja_dictionary, MAHARAJA_SEED};
use maharaja::dictionary::{bits_to_string, parse_bits};
use maharaja::game::Ruleset;
use maharaja::oracle::compute_grid;

fn main() -> maharaja::Result<()> {
    let g = compute_grid(&Ruleset::maharaja(), 20_000)?;
    let oracle = bitstring_from_grid(&g);
    println!("oracle:    {}…", bits_to_string(&oracle.bits[..64]));

    let d = maharaja_dictionary();
    let (seed, offset) = MAHARAJA_SEED;
    let gen = generate_bitstring(&d, &parse_bits(seed)?, 0, 20_000)?;
    println!("generated: {}{}…", " ".repeat(offset as usize), bits_to_string(&gen.bits[..56]));

    for t in gen.trace.iter().take(3) {
        println!("  {t}");
    }
    let overlap = oracle.bits.len() - offset as usize;
    let diff = (0..overlap)
        .filter(|&i| gen.bits[i] != oracle.bits[i + offset as usize])
        .count();
    println!("{overlap} overlapping bits, {diff} differ");

    let census = gen.census(&d, 20_000);
    for (e, n) in d.entries().iter().zip(census) {
        println!("  {:>16}  {n}", bits_to_string(&e.word));
    }
    Ok(())
}
