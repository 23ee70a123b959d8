//! Kolmogorov–Smirnov goodness-of-fit helpers.
//!
//! Used by the statistical test suites to confirm that sampled noise (and
//! sampled minima) actually follow the distributions the formulas assume.

/// Two-sided KS statistic `sup_x |F_n(x) - F(x)|` of an ascending sample
/// against the distribution function `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    assert!(!sorted.is_empty(), "KS statistic of an empty sample");
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]), "sample not sorted");
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let c = cdf(x);
        let below = (c - i as f64 / n).abs();
        let above = ((i + 1) as f64 / n - c).abs();
        d = d.max(below).max(above);
    }
    d
}

/// Critical value of the two-sided statistic for sample size `n` at the given
/// significance level, from the asymptotic tail `P(D > d) ≈ 2 exp(-2 n d²)`.
/// At significance 0.01 this is ≈ 1.6276 / √n.
pub fn ks_critical_value(n: usize, significance: f64) -> f64 {
    assert!(n > 0 && significance > 0.0 && significance < 1.0);
    (-(significance / 2.0).ln() / (2.0 * n as f64)).sqrt()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // oracle constants keep all digits
mod tests {
    use super::*;

    #[test]
    fn statistic_of_perfect_grid_is_half_step() {
        // Points at the midpoints of n equal bins of U[0,1]: D = 1/(2n).
        let n = 100;
        let sample: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&sample, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn statistic_detects_gross_mismatch() {
        let sample: Vec<f64> = (0..50).map(|i| i as f64 / 50.0).collect();
        // Compare a U[0,1]-ish sample against U[0,2]: D ≈ 1/2.
        let d = ks_statistic(&sample, |x| (x / 2.0).clamp(0.0, 1.0));
        assert!(d > 0.4);
    }

    #[test]
    fn critical_value_matches_reference_constant() {
        // c(0.01) = sqrt(-ln(0.005)/2) = 1.6276236307187292...
        let c = ks_critical_value(1, 0.01);
        assert!((c - 1.627623630718729255).abs() < 1e-12);
        // scales as 1/sqrt(n)
        let c100 = ks_critical_value(100, 0.01);
        assert!((c100 - c / 10.0).abs() < 1e-12);
        // stricter significance, larger threshold
        assert!(ks_critical_value(50, 0.01) > ks_critical_value(50, 0.05));
    }
}
