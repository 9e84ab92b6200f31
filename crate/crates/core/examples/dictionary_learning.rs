//! Learn dictionaries from oracle grids: Maharaja Nim by perfect sectors,
//! (2,3)-Maharaja Nim by the relaxed word starts.

use maharaja::codec::{learn_dictionary, LearnMode};
use maharaja::game::Ruleset;
use maharaja::oracle::compute_grid;

fn main() -> maharaja::Result<()> {
    let g = compute_grid(&Ruleset::maharaja(), 5000)?;
    let m = learn_dictionary(&g, LearnMode::Maharaja)?;
    println!("Maharaja Nim, first words read:");
    for t in m.trace.iter().take(6) {
        println!("  {t}");
    }
    print!("{}", m.dictionary);
    if let Some(note) = &m.note {
        println!("({note})");
    }

    let g = compute_grid(&Ruleset::klm(2, 3)?, 5000)?;
    let k = learn_dictionary(&g, LearnMode::KlmRelaxed)?;
    println!("\n(2,3)-Maharaja Nim, {} conflicts:", k.conflicts.len());
    print!("{}", k.dictionary);
    Ok(())
}
