//! Confluent hypergeometric (Kummer) polynomials, factorial-based
//! normalization constants and radial quadrature.
//!
//! Only the terminating case F(a, b, ξ) with a a nonpositive integer is
//! supported; that is the case the radial eigenfunctions need. It connects
//! to the generalized Laguerre polynomials through
//! L_n^{(α)}(x) = C(n+α, n) · F(−n, α+1, x).

use crate::error::{Error, Result};

/// Parameters of the terminating Kummer series F(a, b, ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerPolyParams {
    /// First argument, a nonpositive integer (−n_ξ for the radial states).
    pub a: i64,
    /// Second argument, a positive integer (|m| + 1 for the radial states).
    pub b: i64,
}

impl KummerPolyParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a > 0 {
            return Err(Error::Domain(format!(
                "Kummer first argument must be a nonpositive integer, got {a}"
            )));
        }
        if b < 1 {
            return Err(Error::Domain(format!(
                "Kummer second argument must be a positive integer, got {b}"
            )));
        }
        Ok(KummerPolyParams { a, b })
    }
}

/// Terminating Kummer function F(a, b, ξ) = Σ_{k=0}^{|a|} (a)_k/((b)_k k!) ξ^k.
///
/// Evaluated by forward recurrence on the series terms; exact polynomial,
/// no truncation beyond floating point. Integer-typed arguments rule out the
/// non-integer and non-terminating cases by construction.
pub fn kummer_poly(a: i64, b: i64, xi: f64) -> Result<f64> {
    let params = KummerPolyParams::new(a, b)?;
    if !xi.is_finite() || xi < 0.0 {
        return Err(Error::Domain(format!(
            "Kummer argument must be finite and ≥ 0, got {xi}"
        )));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let (a, b) = (params.a as f64, params.b as f64);
    let n_terms = -params.a;
    for k in 1..=n_terms {
        let k = k as f64;
        term *= (a + k - 1.0) / ((b + k - 1.0) * k) * xi;
        sum += term;
    }
    Ok(sum)
}

// Exact f64 factorials; every entry through 20! is exactly representable.
const FACTORIALS: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// ln(n!) with the exact table below 21 and a log sum above it.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < FACTORIALS.len() {
        return FACTORIALS[n as usize].ln();
    }
    let mut acc = FACTORIALS[FACTORIALS.len() - 1].ln();
    for k in FACTORIALS.len() as u64..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// Normalization constant of the radial eigenstate R_{n_ξ,m}, defined by the
/// quadrature condition ∫₀^∞ |R|² r dr = 1 for
/// R(r) = norm · e^{−r²/(4a²)} · r^{|m|} · F(−n_ξ, |m|+1, r²/(2a²)).
///
/// Carrying out the integral with the Laguerre orthogonality relation gives
/// norm = a^{−(|m|+1)} · sqrt((n_ξ+|m|)! / (2^{|m|} n_ξ! (|m|!)²)); factorials
/// are taken exactly below 21! and in log space above to survive large
/// quantum numbers.
pub fn radial_norm(n_xi: u32, abs_m: u32, a_ac: f64) -> Result<f64> {
    if !a_ac.is_finite() || a_ac <= 0.0 {
        return Err(Error::Domain(format!(
            "magnetic length must be > 0, got {a_ac}"
        )));
    }
    let n = n_xi as u64;
    let m = abs_m as u64;
    let ratio = if n + m < FACTORIALS.len() as u64 {
        let num = FACTORIALS[(n + m) as usize];
        let den = FACTORIALS[n as usize] * FACTORIALS[m as usize] * FACTORIALS[m as usize];
        (num / den / 2f64.powi(abs_m as i32)).sqrt()
    } else {
        let ln_ratio = ln_factorial(n + m)
            - ln_factorial(n)
            - 2.0 * ln_factorial(m)
            - m as f64 * std::f64::consts::LN_2;
        (0.5 * ln_ratio).exp()
    };
    Ok(ratio * a_ac.powi(-(abs_m as i32 + 1)))
}

/// Truncation radius a_AC·(sqrt(4·n_ξ + 2·|m| + 2) + 8): the classical
/// turning point plus eight decay lengths, which bounds the Gaussian tail
/// of R_{n_ξ,m} below 1e-14.
pub fn radial_extent(n_xi: u32, abs_m: u32, a_ac: f64) -> f64 {
    a_ac * ((4.0 * n_xi as f64 + 2.0 * abs_m as f64 + 2.0).sqrt() + 8.0)
}

// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_095,
];

/// ∫₀^{r_max} f(r)·r dr by composite 16-point Gauss-Legendre panels.
///
/// `n_points` fixes the resolution; it is rounded up to a whole number of
/// 16-node panels. Deterministic: fixed nodes, fixed summation order.
pub fn integrate_radial<F: Fn(f64) -> f64>(f: F, r_max: f64, n_points: usize) -> Result<f64> {
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::Domain(format!("r_max must be > 0, got {r_max}")));
    }
    if n_points < 16 {
        return Err(Error::Domain(format!(
            "need at least 16 quadrature points, got {n_points}"
        )));
    }
    let panels = n_points.div_ceil(16);
    let dr = r_max / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * dr;
        let half = 0.5 * dr;
        let mut panel_sum = 0.0;
        for j in 0..8 {
            for r in [mid - half * GL16_X[j], mid + half * GL16_X[j]] {
                let v = f(r) * r;
                if !v.is_finite() {
                    return Err(Error::Numeric(format!(
                        "integrand returned non-finite value at r = {r:e}"
                    )));
                }
                panel_sum += GL16_W[j] * v;
            }
        }
        total += half * panel_sum;
    }
    Ok(total)
}
