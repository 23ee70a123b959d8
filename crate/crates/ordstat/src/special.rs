//! Scalar special functions backing the densities and performance formulas.
//!
//! Log-gamma, gamma, and the error functions are thin wrappers over `libm`
//! (the usual fdlibm ports, good to a couple of ulp — comfortably below the
//! accuracy this crate needs: the analytic-vs-simulated comparisons require
//! formula error to be negligible next to Monte Carlo error). The standard
//! normal quantile is implemented here since `libm` has no inverse error
//! function.

// Reference values below keep every digit of their decimal derivation; the
// compiler rounds each literal to the nearest f64.
#![allow(clippy::excessive_precision)]

use std::f64::consts::SQRT_2;

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// The error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// The complementary error function, accurate in the far tail.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Standard normal distribution function, without cancellation in either tail.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Upper tail of the standard normal, `P(Z > z)`.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

/// Standard normal quantile (Wichura's PPND16 rational approximations),
/// relative error below 1e-15 across (0, 1). Returns ±∞ at the endpoints.
pub fn inv_normal_cdf(p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }

    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * rational(r, &CENTRAL_NUM, &CENTRAL_DEN);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let z = if r <= 5.0 {
        let r = r - 1.6;
        rational(r, &TAIL_NUM, &TAIL_DEN)
    } else {
        let r = r - 5.0;
        rational(r, &FAR_TAIL_NUM, &FAR_TAIL_DEN)
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

/// ln C(n, k). Callers keep k <= n.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n, "ln_choose({n}, {k})");
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn rational(x: f64, num: &[f64; 8], den: &[f64; 8]) -> f64 {
    let p = num.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let q = den.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    p / q
}

// PPND16 coefficient tables (central region |p - 1/2| <= 0.425, the tail up
// to sqrt(-ln r) = 5, and the far tail beyond).
const CENTRAL_NUM: [f64; 8] = [
    3.387_132_872_796_366_608e0,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const CENTRAL_DEN: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const TAIL_NUM: [f64; 8] = [
    1.423_437_110_749_683_577_3e0,
    4.630_337_846_156_545_295_9e0,
    5.769_497_221_460_691_405_5e0,
    3.647_848_324_763_204_605e0,
    1.270_458_252_452_368_382_6e0,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_3e-2,
    7.745_450_142_783_414_076_4e-4,
];
const TAIL_DEN: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_9e0,
    1.676_384_830_183_803_849_4e0,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_7e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_2e-9,
];
const FAR_TAIL_NUM: [f64; 8] = [
    6.657_904_643_501_103_777_2e0,
    5.463_784_911_164_114_369_9e0,
    1.784_826_539_917_291_335_8e0,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const FAR_TAIL_DEN: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];
