//! Complementary sequences and their asymptotic slopes.
//!
//! If `x` is increasing, `x` and `y` are complementary and
//! `y_n - x_n = δn + O(1)`, then `x_n = αn + O(1)` and `y_n = βn + O(1)` where
//! `β = α + δ` and `1/α + 1/β = 1`. Boundedness itself is not finitely
//! checkable, so [`deviation`] reports the observed extremes over a sample.

use std::io::Write;

use crate::golden::PHI;
use crate::oracle::PSequence;
use crate::{Error, Result};

/// The slopes `α` and `β` attached to a difference slope `δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopePair {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SlopePair {
    /// `|β - α - δ|`.
    pub fn additive_residual(&self) -> f64 {
        (self.beta - self.alpha - self.delta).abs()
    }

    /// `|1/α + 1/β - 1|`.
    pub fn density_residual(&self) -> f64 {
        (1.0 / self.alpha + 1.0 / self.beta - 1.0).abs()
    }

    /// `|δ(1 - α) + α - (α - 1)α|`.
    pub fn quadratic_residual(&self) -> f64 {
        let a = self.alpha;
        (self.delta * (1.0 - a) + a - (a - 1.0) * a).abs()
    }
}

/// Positive root of `α² + (δ - 2)α - δ = 0`, with `β = α + δ`.
pub fn alpha_beta(delta: f64) -> Result<SlopePair> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("delta must be positive and finite, got {delta}")));
    }
    let alpha = ((2.0 - delta) + (delta * delta + 4.0).sqrt()) / 2.0;
    Ok(SlopePair {
        delta,
        alpha,
        beta: alpha + delta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    Missing(u64),
    Duplicated(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Complementarity {
    pub up_to: u64,
    pub first_violation: Option<Violation>,
}

impl Complementarity {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Whether every integer in `1..=up_to` occurs exactly once across `xs` and
/// `ys`. Values outside the range are ignored.
pub fn check_complementary<X, Y>(xs: X, ys: Y, up_to: u64) -> Complementarity
where
    X: IntoIterator<Item = u64>,
    Y: IntoIterator<Item = u64>,
{
    let mut count = vec![0u8; up_to as usize + 1];
    for v in xs.into_iter().chain(ys) {
        if (1..=up_to).contains(&v) {
            let c = &mut count[v as usize];
            *c = c.saturating_add(1);
        }
    }
    let first_violation = (1..=up_to).find_map(|v| match count[v as usize] {
        1 => None,
        0 => Some(Violation::Missing(v)),
        _ => Some(Violation::Duplicated(v)),
    });
    Complementarity {
        up_to,
        first_violation,
    }
}

/// Extremes of `seq[n] - slope·n` over the sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeviationReport {
    pub slope: f64,
    pub min_dev: f64,
    pub max_dev: f64,
    pub argmax: usize,
    pub argmin: usize,
    pub sample_count: usize,
}

impl DeviationReport {
    /// `max(|min_dev|, |max_dev|)`.
    pub fn max_abs(&self) -> f64 {
        self.min_dev.abs().max(self.max_dev.abs())
    }
}

pub fn deviation<I>(seq: I, slope: f64) -> Result<DeviationReport>
where
    I: IntoIterator<Item = f64>,
{
    if !(slope > 0.0) {
        return Err(Error::Domain(format!("slope must be positive, got {slope}")));
    }
    extremes(
        slope,
        seq.into_iter().enumerate().map(|(n, v)| v - slope * n as f64),
    )
    .ok_or_else(|| Error::Domain("deviation of an empty sequence".into()))
}

fn extremes<I: Iterator<Item = f64>>(slope: f64, devs: I) -> Option<DeviationReport> {
    let mut report: Option<DeviationReport> = None;
    for (n, d) in devs.enumerate() {
        let r = report.get_or_insert(DeviationReport {
            slope,
            min_dev: d,
            max_dev: d,
            argmax: n,
            argmin: n,
            sample_count: 0,
        });
        if d > r.max_dev {
            r.max_dev = d;
            r.argmax = n;
        }
        if d < r.min_dev {
            r.min_dev = d;
            r.argmin = n;
        }
        r.sample_count += 1;
    }
    report
}

/// Integer extremes of `b_n - a_n - n` over the pairs.
pub fn band_extremes(seq: &PSequence) -> Option<(i64, i64)> {
    let offs = seq.band_offsets();
    Some((*offs.iter().min()?, *offs.iter().max()?))
}

/// Extremes of `b - φa` over the upper pairs; indices in the report are
/// pair indices.
pub fn golden_band(seq: &PSequence) -> Result<DeviationReport> {
    extremes(PHI, seq.pairs.iter().map(|&(a, b)| b as f64 - PHI * a as f64))
        .ok_or_else(|| Error::Domain("no upper pairs".into()))
}

/// CSV rows `n,a_n,b_n,b_n-a_n-n,b_n-φa_n` with a header line.
pub fn write_csv<W: Write>(seq: &PSequence, mut w: W) -> Result<()> {
    writeln!(w, "n,a,b,b_minus_a_minus_n,b_minus_phi_a")?;
    for (n, &(a, b)) in seq.pairs.iter().enumerate() {
        writeln!(
            w,
            "{n},{a},{b},{},{:.6}",
            b as i64 - a as i64 - n as i64,
            b as f64 - PHI * a as f64
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::wythoff_pair;

    #[test]
    fn delta_one_gives_phi() {
        let s = alpha_beta(1.0).unwrap();
        assert!((s.alpha - 1.618_033_988_749_895).abs() < 1e-12);
        assert!((s.beta - 2.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn delta_two_gives_sqrt_two() {
        // α² - 2 = 0 for δ = 2, solved independently.
        let s = alpha_beta(2.0).unwrap();
        assert!((s.alpha - 2f64.sqrt()).abs() < 1e-12);
        assert!((s.beta - (2f64.sqrt() + 2.0)).abs() < 1e-12);
        assert!(s.density_residual() < 1e-12);
    }

    #[test]
    fn small_delta_tends_to_two() {
        let s = alpha_beta(1e-9).unwrap();
        assert!((s.alpha - 2.0).abs() < 1e-6 && (s.beta - 2.0).abs() < 1e-6);
    }

    #[test]
    fn identities_hold() {
        for delta in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let s = alpha_beta(delta).unwrap();
            assert!(s.additive_residual() < 1e-12);
            assert!(s.density_residual() < 1e-12);
            assert!(s.quadratic_residual() < 1e-12);
            let a = s.alpha;
            assert!((a * a + (delta - 2.0) * a - delta).abs() < 1e-12);
            assert!(1.0 < a && a < 2.0 && s.beta > 2.0);
        }
    }

    #[test]
    fn rejects_nonpositive_delta() {
        assert!(alpha_beta(0.0).is_err());
        assert!(alpha_beta(-1.0).is_err());
        assert!(alpha_beta(f64::NAN).is_err());
    }

    #[test]
    fn evens_and_odds() {
        let c = check_complementary((1..=50).map(|k| 2 * k), (0..50).map(|k| 2 * k + 1), 100);
        assert!(c.holds());
    }

    #[test]
    fn duplicated_two() {
        let c = check_complementary(1..=10, (1..=5).map(|k| 2 * k), 4);
        assert_eq!(c.first_violation, Some(Violation::Duplicated(2)));
        let c = check_complementary([1, 3], [4], 4);
        assert_eq!(c.first_violation, Some(Violation::Missing(2)));
    }

    #[test]
    fn wythoff_sequences_are_complementary() {
        let pairs: Vec<_> = (1..=7000).map(|n| wythoff_pair(n).unwrap()).collect();
        for up_to in [10, 100, 1000, 10_000] {
            let c = check_complementary(pairs.iter().map(|p| p.0), pairs.iter().map(|p| p.1), up_to);
            assert!(c.holds(), "{up_to}: {:?}", c.first_violation);
        }
    }

    #[test]
    fn beatty_deviation_in_unit_interval() {
        let a = (0..=10_000).map(|n| wythoff_pair(n).unwrap().0 as f64);
        let r = deviation(a, PHI).unwrap();
        assert!(r.min_dev > -1.0 && r.max_dev <= 1e-9, "{r:?}");
        assert_eq!(r.sample_count, 10_001);
        for rho in [2f64.sqrt(), std::f64::consts::E, std::f64::consts::PI] {
            let s = (1..=2000u32).map(|n| (rho * n as f64).floor());
            // indices start at 0 in deviation(), so shift by one term
            let r = deviation(std::iter::once(0.0).chain(s), rho).unwrap();
            assert!(r.min_dev > -1.0 && r.max_dev <= 0.0, "{rho}: {r:?}");
        }
        assert!(deviation(std::iter::empty(), 1.0).is_err());
        assert!(deviation([1.0], 0.0).is_err());
    }

    #[test]
    fn csv_export() {
        let seq = PSequence {
            pairs: vec![(0, 0), (1, 2), (3, 5)],
            safe_cutoff: 4,
        };
        let mut out = Vec::new();
        write_csv(&seq, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "n,a,b,b_minus_a_minus_n,b_minus_phi_a");
        assert_eq!(lines[2], "1,1,2,0,0.381966");
        assert_eq!(band_extremes(&seq), Some((0, 0)));
    }
}
