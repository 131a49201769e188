//! Zero-temperature level filling, oscillating energies, effective
//! magnetization, inverse-field sweeps and period/Fermi-area extraction.
//!
//! The filling model: at field B the degeneracy per level is D = rho·B; the
//! lowest p = floor(N/D) levels hold D atoms each and the (p+1)th level
//! holds the remainder N - pD. Thermodynamics uses the uniform ladder
//! E_n = (n + 1/2)·hbar|ω|; the revolution sign enters only through |ω|.
//! All closed forms below are polynomials in B at fixed p:
//!
//!   ε  = -μ_B^eff·ρ·(B²p(p+1) - (N/ρ)·B·(2p+1))           total energy
//!   ε' = -μ_B^eff·ρ·(pB - N/ρ)·((p+1)B - N/ρ)             partial level only
//!   M  =  μ_B^eff·ρ·(2Bp(p+1) - (N/ρ)(2p+1)) = -∂ε'/∂B    magnetization
//!
//! ε' differs from ε by the B-independent offset -μ_B^eff·N²/ρ. Observables
//! are double-valued exactly at the boundaries N = pD; floor() lands on the
//! right-limit branch (the state just after a new level opens toward larger
//! 1/B), and jump reports carry both one-sided values.

use crate::constants::{DerivedScales, PhysicalConstants};
use crate::error::{Error, Result};
use crate::spectrum::SystemConfig;

/// Occupation of the level ladder at one field value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FillingState {
    /// Number of completely filled levels.
    pub p: u64,
    /// Atoms in the partially filled (p+1)th level.
    pub partial: f64,
    /// Degeneracy per level at this field.
    pub degeneracy_at_field: f64,
}

/// Splits N atoms over levels of the given degeneracy.
///
/// Exact multiples land on the exactly-filled convention: partial = 0 and
/// p = natoms/degeneracy.
pub fn fill_levels(natoms: u64, degeneracy: f64) -> Result<FillingState> {
    if natoms < 1 {
        return Err(Error::Domain("atom number must be ≥ 1".into()));
    }
    if !degeneracy.is_finite() || degeneracy <= 0.0 {
        return Err(Error::Domain(format!(
            "degeneracy must be > 0, got {degeneracy}"
        )));
    }
    let n = natoms as f64;
    let mut p = (n / degeneracy).floor();
    let mut partial = n - p * degeneracy;
    // floor() can land one level high when n/degeneracy rounds up across an
    // integer; step back so 0 ≤ partial ≤ degeneracy holds.
    if partial < 0.0 && p >= 1.0 {
        p -= 1.0;
        partial = n - p * degeneracy;
    }
    Ok(FillingState {
        p: p as u64,
        partial,
        degeneracy_at_field: degeneracy,
    })
}

fn filling_at(b: f64, cfg: &SystemConfig, scales: &DerivedScales) -> FillingState {
    assert!(b.is_finite() && b > 0.0, "field must be > 0, got {b}");
    fill_levels(cfg.natoms, scales.rho_flux * b).expect("positive degeneracy")
}

/// Total energy as the literal ladder sum
/// Σ_{n=0}^{p-1} (n+1/2)·ħ|ω|·D + (N - pD)·ħ|ω|·(p+1/2).
pub fn total_energy_sum(b: f64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    let fill = filling_at(b, cfg, scales);
    let hbar_omega = 2.0 * scales.mu_b_eff * b;
    let d = fill.degeneracy_at_field;
    let mut acc = 0.0;
    for n in 0..fill.p {
        acc += (n as f64 + 0.5) * hbar_omega * d;
    }
    acc + fill.partial * hbar_omega * (fill.p as f64 + 0.5)
}

/// Total energy in closed form at an explicit filling index.
pub fn total_energy_closed_at(b: f64, p: u64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    let p = p as f64;
    let n = cfg.natoms as f64;
    let rho = scales.rho_flux;
    -scales.mu_b_eff * rho * (b * b * p * (p + 1.0) - (n / rho) * b * (2.0 * p + 1.0))
}

/// Total energy in closed form, -μ_B^eff·ρ·(B²p(p+1) - (N/ρ)B(2p+1)).
pub fn total_energy_closed(b: f64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    total_energy_closed_at(b, filling_at(b, cfg, scales).p, cfg, scales)
}

/// Energy of the partially filled level at an explicit filling index.
pub fn partial_energy_at(b: f64, p: u64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    let p = p as f64;
    let n_over_rho = cfg.natoms as f64 / scales.rho_flux;
    -scales.mu_b_eff * scales.rho_flux * (p * b - n_over_rho) * ((p + 1.0) * b - n_over_rho)
}

/// Energy of the partially filled level,
/// -μ_B^eff·ρ·(pB - N/ρ)·((p+1)B - N/ρ); vanishes at the period boundaries
/// and sits ε - μ_B^eff·N²/ρ below the total energy everywhere.
pub fn partial_energy(b: f64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    partial_energy_at(b, filling_at(b, cfg, scales).p, cfg, scales)
}

/// Effective magnetization at an explicit filling index.
pub fn magnetization_at(b: f64, p: u64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    let p = p as f64;
    let n = cfg.natoms as f64;
    let rho = scales.rho_flux;
    scales.mu_b_eff * rho * (2.0 * b * p * (p + 1.0) - (n / rho) * (2.0 * p + 1.0))
}

/// Effective magnetization M = -∂ε'/∂B = μ_B^eff·ρ·(2Bp(p+1) - (N/ρ)(2p+1)).
///
/// Exactly at a boundary field this returns the right-limit branch; use
/// [`magnetization_at`] for the one-sided values.
pub fn magnetization(b: f64, cfg: &SystemConfig, scales: &DerivedScales) -> f64 {
    magnetization_at(b, filling_at(b, cfg, scales).p, cfg, scales)
}

/// Observables sampled at one point of an inverse-field sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    /// Reciprocal field (1/T_eff).
    pub inv_b: f64,
    /// Field (T_eff).
    pub b: f64,
    /// Completely filled levels.
    pub p: u64,
    /// Atoms in the partially filled level.
    pub partial: f64,
    /// Total energy (J).
    pub energy_total: f64,
    /// Partial-level energy (J).
    pub energy_partial: f64,
    /// Effective magnetization (J·s/T).
    pub magnetization: f64,
}

/// Uniform inverse-field sweep, endpoints inclusive, ascending in 1/B.
pub fn sweep(
    cfg: &SystemConfig,
    scales: &DerivedScales,
    inv_b_min: f64,
    inv_b_max: f64,
    steps: usize,
) -> Result<Vec<SweepPoint>> {
    if !inv_b_min.is_finite()
        || !inv_b_max.is_finite()
        || inv_b_min <= 0.0
        || inv_b_max <= inv_b_min
    {
        return Err(Error::Domain(format!(
            "need 0 < inv_b_min < inv_b_max, got [{inv_b_min}, {inv_b_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain(format!("need ≥ 2 sweep steps, got {steps}")));
    }
    let span = inv_b_max - inv_b_min;
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let inv_b = if i == steps - 1 {
            inv_b_max
        } else {
            inv_b_min + span * i as f64 / (steps - 1) as f64
        };
        let b = 1.0 / inv_b;
        let fill = filling_at(b, cfg, scales);
        points.push(SweepPoint {
            inv_b,
            b,
            p: fill.p,
            partial: fill.partial,
            energy_total: total_energy_closed_at(b, fill.p, cfg, scales),
            energy_partial: partial_energy_at(b, fill.p, cfg, scales),
            magnetization: magnetization_at(b, fill.p, cfg, scales),
        });
    }
    Ok(points)
}

/// Level-opening boundaries crossed by a sweep, refined to the analytic
/// positions 1/B = p·ρ/N rather than the sampled crossings. Ascending;
/// empty when no boundary lies inside the range.
pub fn detect_jumps(points: &[SweepPoint], natoms: u64, rho_flux: f64) -> Vec<f64> {
    let mut jumps = Vec::new();
    for pair in points.windows(2) {
        let (lo, hi) = (pair[0].p, pair[1].p);
        for p in lo + 1..=hi {
            jumps.push(p as f64 * rho_flux / natoms as f64);
        }
    }
    jumps
}

/// Mean boundary spacing plus the largest deviation of any single spacing
/// from that mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhvaPeriod {
    pub period: f64,
    pub max_deviation: f64,
}

/// Period of the oscillations from detected boundary positions.
pub fn dhva_period(jumps: &[f64]) -> Result<DhvaPeriod> {
    if jumps.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "period extraction needs ≥ 2 boundaries, got {}",
            jumps.len()
        )));
    }
    let spacings: Vec<f64> = jumps.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    let max_deviation = spacings
        .iter()
        .map(|s| (s - mean).abs())
        .fold(0.0, f64::max);
    Ok(DhvaPeriod {
        period: mean,
        max_deviation,
    })
}

/// Fermi-circle area S = 2π·N/(ħ·ρ) implied by the oscillation period.
pub fn onsager_area(natoms: u64, rho_flux: f64, consts: &PhysicalConstants) -> f64 {
    2.0 * std::f64::consts::PI * natoms as f64 / (consts.hbar * rho_flux)
}

/// One detected boundary with its one-sided magnetization values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    /// Boundary position in 1/B (T_eff⁻¹).
    pub inv_b: f64,
    /// Magnetization approaching from smaller 1/B.
    pub magnetization_before: f64,
    /// Magnetization approaching from larger 1/B.
    pub magnetization_after: f64,
}

/// Summary of a sweep: boundaries, period, jump amplitude and Fermi area.
#[derive(Debug, Clone)]
pub struct OscillationAnalysis {
    pub jumps: Vec<Jump>,
    /// Mean boundary spacing (1/T_eff); None with fewer than two boundaries.
    pub period: Option<DhvaPeriod>,
    /// 2N·μ_B^eff (J·s/T).
    pub jump_amplitude: f64,
    /// Onsager area (m⁻²).
    pub fermi_area: f64,
}

/// Analyzes a sweep into boundaries, period and the Onsager area.
pub fn analyze(
    points: &[SweepPoint],
    cfg: &SystemConfig,
    scales: &DerivedScales,
    consts: &PhysicalConstants,
) -> Result<OscillationAnalysis> {
    if points.len() < 2 {
        return Err(Error::InsufficientData(
            "analysis needs a sweep with ≥ 2 points".into(),
        ));
    }
    let positions = detect_jumps(points, cfg.natoms, scales.rho_flux);
    let jumps: Vec<Jump> = positions
        .iter()
        .map(|&inv_b| {
            let b = 1.0 / inv_b;
            // Boundary index p satisfies 1/B = p·ρ/N.
            let p = (inv_b * cfg.natoms as f64 / scales.rho_flux).round() as u64;
            Jump {
                inv_b,
                magnetization_before: magnetization_at(b, p - 1, cfg, scales),
                magnetization_after: magnetization_at(b, p, cfg, scales),
            }
        })
        .collect();
    let period = if positions.len() >= 2 {
        Some(dhva_period(&positions)?)
    } else {
        None
    };
    Ok(OscillationAnalysis {
        jumps,
        period,
        jump_amplitude: 2.0 * cfg.natoms as f64 * scales.mu_b_eff,
        fermi_area: onsager_area(cfg.natoms, scales.rho_flux, consts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{load_constants, EffectiveField};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_rel(got: f64, want: f64, tol: f64, msg: &str) {
        let denom = want.abs().max(f64::MIN_POSITIVE);
        assert!(
            (got - want).abs() / denom <= tol,
            "{msg}: got {got:e}, want {want:e}"
        );
    }

    fn rb_system() -> (SystemConfig, DerivedScales, PhysicalConstants) {
        let consts = load_constants();
        let cfg = SystemConfig::new(
            1.443e-25,
            4.64e-22,
            1.5e-10,
            10_000,
            EffectiveField::new(8.55e18).unwrap(),
            1,
        )
        .unwrap();
        let scales = cfg.derived_scales(&consts).unwrap();
        (cfg, scales, consts)
    }

    // Bundled 87Rb sweep window.
    const RB_INV_MIN: f64 = 1.17e-19;
    const RB_INV_MAX: f64 = 1.17e-18;

    #[test]
    fn fill_levels_boundary_conventions() {
        // Exactly filled single level.
        let f = fill_levels(10_000, 1.0e4).unwrap();
        assert_eq!(f.p, 1);
        assert_eq!(f.partial, 0.0);
        // Two filled levels plus a partial one.
        let f = fill_levels(10_000, 4.0e3).unwrap();
        assert_eq!(f.p, 2);
        assert_rel(f.partial, 2.0e3, 1e-12, "partial");
        // Two exactly filled levels of 5e3 atoms each.
        let f = fill_levels(10_000, 5.0e3).unwrap();
        assert_eq!(f.p, 2);
        assert_eq!(f.partial, 0.0);
    }

    #[test]
    fn fill_levels_rejects_bad_inputs() {
        assert!(matches!(fill_levels(0, 10.0), Err(Error::Domain(_))));
        assert!(matches!(fill_levels(10, 0.0), Err(Error::Domain(_))));
        assert!(matches!(fill_levels(10, -2.0), Err(Error::Domain(_))));
        assert!(matches!(
            fill_levels(10, f64::INFINITY),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn single_level_regime_energy() {
        // D ≥ N puts every atom in the lowest level: ε = N·ħ|ω|/2.
        let (cfg, scales, _) = rb_system();
        let b = 2.0 / RB_INV_MIN; // twice the strongest sweep field
        let hbar_omega = 2.0 * scales.mu_b_eff * b;
        assert_eq!(filling_at(b, &cfg, &scales).p, 0);
        assert_rel(
            total_energy_sum(b, &cfg, &scales),
            cfg.natoms as f64 * hbar_omega / 2.0,
            1e-12,
            "ε = N·ħ|ω|/2",
        );
        assert_rel(
            total_energy_closed(b, &cfg, &scales),
            cfg.natoms as f64 * hbar_omega / 2.0,
            1e-12,
            "closed form, p = 0",
        );
    }

    #[test]
    fn exact_filling_energy_is_arithmetic_series() {
        // At N = pD the ladder sum collapses to D·ħ|ω|·p²/2.
        let (cfg, scales, _) = rb_system();
        for p in 1..=8u64 {
            let b = cfg.natoms as f64 / (p as f64 * scales.rho_flux);
            let d = scales.rho_flux * b;
            let hbar_omega = 2.0 * scales.mu_b_eff * b;
            let want = d * hbar_omega * (p as f64) * (p as f64) / 2.0;
            assert_rel(total_energy_sum(b, &cfg, &scales), want, 1e-12, "series");
        }
    }

    #[test]
    fn sum_equals_closed_form_on_random_points() {
        let (cfg, scales, _) = rb_system();
        let mut rng = StdRng::seed_from_u64(0x1acd);
        for _ in 0..10_000 {
            let inv_b = rng.gen_range(RB_INV_MIN..RB_INV_MAX);
            let b = 1.0 / inv_b;
            let lhs = total_energy_sum(b, &cfg, &scales);
            let rhs = total_energy_closed(b, &cfg, &scales);
            assert_rel(lhs, rhs, 1e-12, "sum vs closed form");
            assert!(rhs >= 0.0, "ε ≥ 0 on the physical branch");
        }
    }

    #[test]
    fn partial_energy_offset_from_total() {
        // ε'(B) - ε(B) = -μ_B^eff·N²/ρ for all B.
        let (cfg, scales, _) = rb_system();
        let n = cfg.natoms as f64;
        let want = -scales.mu_b_eff * n * n / scales.rho_flux;
        for i in 0..200 {
            let inv_b = RB_INV_MIN + (RB_INV_MAX - RB_INV_MIN) * i as f64 / 199.0;
            let b = 1.0 / inv_b;
            let diff = partial_energy(b, &cfg, &scales) - total_energy_closed(b, &cfg, &scales);
            assert_rel(diff, want, 1e-12, "constant offset");
        }
    }

    #[test]
    fn partial_energy_zeros_and_maxima() {
        let (cfg, scales, _) = rb_system();
        let n = cfg.natoms as f64;
        let rho = scales.rho_flux;
        for p in 1..=8u64 {
            let pf = p as f64;
            // Zero at both enclosing boundaries (evaluated on the p branch).
            let local_max = scales.mu_b_eff * n * n / (4.0 * rho * pf * (pf + 1.0));
            for b in [n / (pf * rho), n / ((pf + 1.0) * rho)] {
                let eps = partial_energy_at(b, p, &cfg, &scales);
                assert!(
                    eps.abs() <= 1e-9 * local_max,
                    "ε' at boundary: {eps:e} vs max {local_max:e}"
                );
            }
            // Local maximum at 1/B = (ρ/N)·p(p+1)/(p+1/2).
            let inv_star = (rho / n) * pf * (pf + 1.0) / (pf + 0.5);
            let got = partial_energy(1.0 / inv_star, &cfg, &scales);
            assert_rel(got, local_max, 1e-9, "stationary value");
        }
    }

    #[test]
    fn magnetization_one_sided_boundary_values() {
        let (cfg, scales, _) = rb_system();
        let n = cfg.natoms as f64;
        let rho = scales.rho_flux;
        let n_mu = n * scales.mu_b_eff;
        for p in 1..=6u64 {
            // Level (p+1) just completely filled: approach on the p branch.
            let b_fill = n / ((p as f64 + 1.0) * rho);
            assert_rel(
                magnetization_at(b_fill, p, &cfg, &scales),
                -n_mu,
                1e-9,
                "M = -N·μ_B^eff at complete filling",
            );
            // New level just opening at B = N/(pρ), still on the p branch.
            let b_open = n / (p as f64 * rho);
            assert_rel(
                magnetization_at(b_open, p, &cfg, &scales),
                n_mu,
                1e-9,
                "M = +N·μ_B^eff at level opening",
            );
        }
    }

    #[test]
    fn magnetization_is_minus_derivative_of_partial_energy() {
        let (cfg, scales, _) = rb_system();
        let n = cfg.natoms as f64;
        let rho = scales.rho_flux;
        // M crosses zero once per period, so the comparison needs an
        // absolute floor at the sawtooth scale N·μ_B^eff.
        let floor = 1e-6 * n * scales.mu_b_eff;
        for p in 1..=6u64 {
            let b_hi = n / (p as f64 * rho);
            let b_lo = n / ((p as f64 + 1.0) * rho);
            for i in 1..100 {
                // Interior points only: the difference stencil must not
                // straddle a boundary.
                let b = b_lo + (b_hi - b_lo) * i as f64 / 100.0;
                let db = 1e-6 * b;
                let fd = -(partial_energy(b + db, &cfg, &scales)
                    - partial_energy(b - db, &cfg, &scales))
                    / (2.0 * db);
                let m = magnetization(b, &cfg, &scales);
                let tol = (1e-6 * m.abs().max(fd.abs())).max(floor);
                assert!(
                    (m - fd).abs() <= tol,
                    "M vs central difference at p={p}, i={i}: {m:e} vs {fd:e}"
                );
            }
        }
    }

    #[test]
    fn magnetization_affine_in_b_within_period() {
        // At fixed p the formula is affine in B: three samples are collinear.
        let (cfg, scales, _) = rb_system();
        let n = cfg.natoms as f64;
        let rho = scales.rho_flux;
        for p in 1..=6u64 {
            let b_hi = n / (p as f64 * rho);
            let b_lo = n / ((p as f64 + 1.0) * rho);
            let bs = [
                b_lo + 0.2 * (b_hi - b_lo),
                b_lo + 0.5 * (b_hi - b_lo),
                b_lo + 0.8 * (b_hi - b_lo),
            ];
            let ms: Vec<f64> = bs
                .iter()
                .map(|&b| magnetization(b, &cfg, &scales))
                .collect();
            let slope = (ms[2] - ms[0]) / (bs[2] - bs[0]);
            let interpolated = ms[0] + slope * (bs[1] - bs[0]);
            // Relative to the segment's magnetization scale; the middle
            // sample can sit on the zero crossing.
            let scale = ms.iter().fold(0.0f64, |acc, m| acc.max(m.abs()));
            assert!(
                (ms[1] - interpolated).abs() <= 1e-10 * scale,
                "collinearity in B at p={p}: {} vs {interpolated}",
                ms[1]
            );
        }
    }

    #[test]
    fn sweep_grid_and_ordering() {
        let (cfg, scales, _) = rb_system();
        // Two steps means exactly the endpoints.
        let two = sweep(&cfg, &scales, 1.0e-19, 2.0e-19, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].inv_b, 1.0e-19);
        assert_eq!(two[1].inv_b, 2.0e-19);
        let points = sweep(&cfg, &scales, RB_INV_MIN, RB_INV_MAX, 1000).unwrap();
        assert_eq!(points.len(), 1000);
        assert_eq!(points[0].inv_b, RB_INV_MIN);
        assert_eq!(points.last().unwrap().inv_b, RB_INV_MAX);
        for pair in points.windows(2) {
            assert!(pair[0].inv_b < pair[1].inv_b, "ascending in 1/B");
        }
        for pt in &points {
            assert!((pt.b * pt.inv_b - 1.0).abs() <= 1e-14, "b·inv_b = 1");
        }
        // First sweep point sits at the boundary state: one filled level and
        // a residual partial population below 0.2% of N.
        assert_eq!(points[0].p, 1);
        assert!(points[0].partial >= 0.0);
        assert!(points[0].partial <= 2e-3 * cfg.natoms as f64);
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        let (cfg, scales, _) = rb_system();
        assert!(matches!(
            sweep(&cfg, &scales, 0.0, 1e-18, 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sweep(&cfg, &scales, 2e-18, 1e-18, 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sweep(&cfg, &scales, 1e-19, 1e-18, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn partial_population_monotone_within_period() {
        // partial = N - pρB grows monotonically with 1/B inside one period.
        let (cfg, scales, _) = rb_system();
        let points = sweep(&cfg, &scales, RB_INV_MIN, RB_INV_MAX, 4000).unwrap();
        for pair in points.windows(2) {
            if pair[0].p == pair[1].p {
                assert!(
                    pair[1].partial >= pair[0].partial,
                    "partial population must rise within a period"
                );
            }
        }
    }

    #[test]
    fn detect_jumps_positions_and_spacing() {
        let (cfg, scales, _) = rb_system();
        let points = sweep(&cfg, &scales, RB_INV_MIN, RB_INV_MAX, 1000).unwrap();
        let jumps = detect_jumps(&points, cfg.natoms, scales.rho_flux);
        assert_eq!(jumps.len(), 9, "boundaries p = 2..10 in the window");
        for (i, j) in jumps.iter().enumerate() {
            let p = i as f64 + 2.0;
            assert_rel(
                *j,
                p * scales.rho_flux / cfg.natoms as f64,
                1e-14,
                "analytic boundary",
            );
        }
        let period = dhva_period(&jumps).unwrap();
        assert_rel(period.period, 1.17e-19, 5e-3, "dHvA period");
        assert!(period.max_deviation <= 1e-6 * period.period);
    }

    #[test]
    fn detect_jumps_empty_inside_one_period() {
        let (cfg, scales, _) = rb_system();
        // Range strictly inside the p = 1 period.
        let lo = 1.05 * scales.rho_flux / cfg.natoms as f64;
        let hi = 1.90 * scales.rho_flux / cfg.natoms as f64;
        let points = sweep(&cfg, &scales, lo, hi, 200).unwrap();
        assert!(detect_jumps(&points, cfg.natoms, scales.rho_flux).is_empty());
    }

    #[test]
    fn dhva_period_basics() {
        let p = dhva_period(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.period, 1.0);
        assert_eq!(p.max_deviation, 0.0);
        assert!(matches!(
            dhva_period(&[1.0]),
            Err(Error::InsufficientData(_))
        ));
        // Doubling N halves the period = ρ/N.
        let (cfg, scales, _) = rb_system();
        let period_n = scales.rho_flux / cfg.natoms as f64;
        let period_2n = scales.rho_flux / (2 * cfg.natoms) as f64;
        assert_rel(period_2n, period_n / 2.0, 1e-14, "period scaling");
    }

    #[test]
    fn onsager_area_anchor_and_invariant() {
        let (cfg, scales, consts) = rb_system();
        let s = onsager_area(cfg.natoms, scales.rho_flux, &consts);
        assert!((4.75e53..=5.35e53).contains(&s), "S = {s:e}");
        assert_rel(
            onsager_area(2 * cfg.natoms, scales.rho_flux, &consts),
            2.0 * s,
            1e-14,
            "linearity in N",
        );
        // S·Δ(1/B) = 2π/ħ.
        let period = scales.rho_flux / cfg.natoms as f64;
        assert_rel(
            s * period,
            2.0 * std::f64::consts::PI / consts.hbar,
            1e-12,
            "invariant product",
        );
    }

    #[test]
    fn sawtooth_amplitude_and_jump_magnitude() {
        let (cfg, scales, consts) = rb_system();
        let points = sweep(&cfg, &scales, RB_INV_MIN, RB_INV_MAX, 20_000).unwrap();
        let analysis = analyze(&points, &cfg, &scales, &consts).unwrap();
        let n_mu = cfg.natoms as f64 * scales.mu_b_eff;
        // Every boundary shows the same one-sided jump of 2N·μ_B^eff.
        for jump in &analysis.jumps {
            let delta = jump.magnetization_before - jump.magnetization_after;
            assert_rel(delta, -2.0 * n_mu, 1e-9, "jump magnitude");
        }
        assert_rel(analysis.jump_amplitude, 3.76e-44, 1e-2, "2N·μ_B^eff");
        // The sawtooth spans exactly 2N·μ_B^eff once the one-sided boundary
        // values are counted alongside the samples.
        let mut max_m = f64::MIN;
        let mut min_m = f64::MAX;
        for m in points.iter().map(|p| p.magnetization).chain(
            analysis
                .jumps
                .iter()
                .flat_map(|j| [j.magnetization_before, j.magnetization_after]),
        ) {
            max_m = max_m.max(m);
            min_m = min_m.min(m);
        }
        assert_rel(max_m - min_m, 2.0 * n_mu, 1e-9, "sawtooth amplitude");
        // The analytic one-sided extrema hit ±N·μ_B^eff.
        let j = &analysis.jumps[0];
        assert_rel(j.magnetization_before, -n_mu, 1e-9, "lower extremum");
        assert_rel(j.magnetization_after, n_mu, 1e-9, "upper extremum");
    }

    proptest! {
        /// Filling invariants over arbitrary atom counts and degeneracies.
        #[test]
        fn fill_levels_invariants(
            natoms in 1u64..1_000_000_000,
            degeneracy in 1e-6f64..1e12,
        ) {
            let f = fill_levels(natoms, degeneracy).unwrap();
            prop_assert!(f.partial >= 0.0);
            prop_assert!(f.partial <= f.degeneracy_at_field * (1.0 + 1e-12));
            let total = f.p as f64 * f.degeneracy_at_field + f.partial;
            prop_assert!((total - natoms as f64).abs() <= 1e-9 * natoms as f64);
        }
    }
}
