//! The slopes α, β of complementary sequences with y_n - x_n = δn + O(1),
//! and the Maharaja band that puts its P-positions on slopes φ and φ².

use maharaja::game::Ruleset;
use maharaja::oracle::{compute_grid, upper_p_sequence};
use maharaja::sequences::{alpha_beta, band_extremes, deviation, golden_band};

fn main() -> maharaja::Result<()> {
    for delta in [0.1, 0.5, 1.0, 2.0, 10.0] {
        let s = alpha_beta(delta)?;
        println!(
            "δ={delta:<4} α={:.12} β={:.12}  residuals {:.1e} {:.1e} {:.1e}",
            s.alpha,
            s.beta,
            s.additive_residual(),
            s.density_residual(),
            s.quadratic_residual()
        );
    }

    let g = compute_grid(&Ruleset::maharaja(), 20_000)?;
    let seq = upper_p_sequence(&g);
    let (lo, hi) = band_extremes(&seq).expect("pairs");
    println!("Maharaja, {} pairs: b_n - a_n - n in [{lo}, {hi}]", seq.len());
    let phi = alpha_beta(1.0)?;
    let da = deviation(seq.a().map(|a| a as f64), phi.alpha)?;
    let db = deviation(seq.b().map(|b| b as f64), phi.beta)?;
    println!("a_n - φn in [{:.3}, {:.3}], b_n - φ²n in [{:.3}, {:.3}]", da.min_dev, da.max_dev, db.min_dev, db.max_dev);
    let gb = golden_band(&seq)?;
    println!("b - φa in [{:.3}, {:.3}]", gb.min_dev, gb.max_dev);
    Ok(())
}
