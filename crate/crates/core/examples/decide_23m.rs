//! Decide positions of (2,3)-Maharaja Nim far beyond any grid.
//!
//!     cargo run --example decide_23m -- 1000000000000 1618033988749

use maharaja::game::Position;
use maharaja::strategist::{Telescope, TelescopeConfig};

fn main() -> maharaja::Result<()> {
    let t = Telescope::certify(TelescopeConfig::default())?;
    println!("{}", t.certificate);
    println!("band of y - ⌊φx⌋: {:?}", t.band());

    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if let [x, y] = args[..] {
        let (o, trace) = t.decide(Position::new(x, y))?;
        println!("({x},{y}) is {o} after {} rounds", trace.rounds);
        return Ok(());
    }
    for e in 1..=18u32 {
        let x = 10u64.pow(e) + 1;
        let (b, trace) = t.partner(x)?;
        println!("column {x:>20}: P-position row {b:>20}  ({} rounds, bound {})", trace.rounds, t.round_bound(x));
    }
    Ok(())
}
