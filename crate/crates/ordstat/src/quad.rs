//! Adaptive numerical integration (Simpson with Richardson correction).
//!
//! The test suites use this as an implementation-independent check that
//! densities integrate to one and that closed-form moments agree with their
//! integral definitions.

/// Integrate `f` over `[a, b]` to roughly absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, 60)
}

/// Integrate over a partition given as ascending breakpoints, summing
/// per-segment adaptive results. Callers put breakpoints at kinks and spread
/// geometric segments over slowly decaying tails.
pub fn integrate_segments<F: Fn(f64) -> f64>(f: F, pts: &[f64], tol: f64) -> f64 {
    assert!(pts.len() >= 2, "need at least one segment");
    let per_segment = tol / (pts.len() - 1) as f64;
    pts.windows(2)
        .map(|w| integrate(&f, w[0], w[1], per_segment))
        .sum()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
