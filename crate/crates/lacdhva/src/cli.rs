//! Command-line front end: flat key=value configs in, deterministic CSV and
//! JSON artifacts out.
//!
//! Number formatting is fixed at 12 significant digits in scientific
//! notation with a lowercase exponent marker, so re-running a command with
//! the same config produces byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::constants::{self, EffectiveField, PhysicalConstants};
use crate::dhva;
use crate::error::{Error, Result};
use crate::fd;
use crate::spectrum::{self, CheckStatus, SystemConfig};

/// Parsed run configuration: the physical system plus sweep and output
/// parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub inv_b_min: f64,
    pub inv_b_max: f64,
    pub steps: usize,
    pub out_dir: PathBuf,
}

const CONFIG_KEYS: [&str; 10] = [
    "atom.mass_kg",
    "atom.mu_J_per_T",
    "cloud.area_m2",
    "cloud.natoms",
    "field.b_eff_Teff",
    "field.sigma",
    "sweep.inv_b_min",
    "sweep.inv_b_max",
    "sweep.steps",
    "output.dir",
];

/// Loads a flat key=value config file. Blank lines and lines starting with
/// '#' are skipped; every key in the schema is required, unknown keys are
/// rejected.
pub fn load_run_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_run_config(&text)
}

/// Parses config text; see [`load_run_config`].
pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected key=value, got '{line}'",
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        if pairs.iter().any(|(k, _)| *k == key) {
            return Err(Error::Config(format!(
                "line {}: duplicate key '{key}'",
                lineno + 1
            )));
        }
        pairs.push((key, value.trim().to_string()));
    }
    let get = |key: &str| -> Result<&str> {
        pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Config(format!("missing key '{key}'")))
    };
    let float = |key: &str| -> Result<f64> {
        get(key)?.parse::<f64>().map_err(|_| {
            Error::Config(format!(
                "key '{key}' is not a number: '{}'",
                get(key).unwrap()
            ))
        })
    };

    let natoms_raw = float("cloud.natoms")?;
    if !natoms_raw.is_finite()
        || natoms_raw < 1.0
        || natoms_raw.fract() != 0.0
        || natoms_raw > u64::MAX as f64
    {
        return Err(Error::Config(format!(
            "cloud.natoms must be a positive integer, got {natoms_raw}"
        )));
    }
    let sigma_raw = float("field.sigma")?;
    if sigma_raw != 1.0 && sigma_raw != -1.0 {
        return Err(Error::Config(format!(
            "field.sigma must be ±1, got {sigma_raw}"
        )));
    }
    let steps_raw = float("sweep.steps")?;
    if !steps_raw.is_finite() || steps_raw < 2.0 || steps_raw.fract() != 0.0 || steps_raw > 1e9 {
        return Err(Error::Config(format!(
            "sweep.steps must be an integer ≥ 2, got {steps_raw}"
        )));
    }

    let b_eff = EffectiveField::new(float("field.b_eff_Teff")?)
        .map_err(|e| Error::Config(e.to_string()))?;
    let system = SystemConfig::new(
        float("atom.mass_kg")?,
        float("atom.mu_J_per_T")?,
        float("cloud.area_m2")?,
        natoms_raw as u64,
        b_eff,
        sigma_raw as i8,
    )
    .map_err(|e| Error::Config(e.to_string()))?;

    let inv_b_min = float("sweep.inv_b_min")?;
    let inv_b_max = float("sweep.inv_b_max")?;
    if !inv_b_min.is_finite()
        || !inv_b_max.is_finite()
        || inv_b_min <= 0.0
        || inv_b_max <= inv_b_min
    {
        return Err(Error::Config(format!(
            "sweep range must satisfy 0 < inv_b_min < inv_b_max, got [{inv_b_min}, {inv_b_max}]"
        )));
    }

    Ok(RunConfig {
        system,
        inv_b_min,
        inv_b_max,
        steps: steps_raw as usize,
        out_dir: PathBuf::from(get("output.dir")?),
    })
}

/// Scientific notation with 12 significant digits and a lowercase exponent.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.11e}")
}

/// Outcome of the validate command.
#[derive(Debug, Clone)]
pub struct ValidateOutcome {
    /// Hard checks (structural conditions and the FD comparison) all passed.
    pub passed: bool,
    /// Human-readable report, also printed by the binary.
    pub text: String,
}

/// Number of spectrum levels compared against the finite-difference solver.
const VALIDATE_LEVELS: usize = 4;
const VALIDATE_FD_TOL: f64 = 1e-6;

/// Runs the configuration checks, the field-threshold comparison and the
/// FD-versus-analytic eigenvalue table; writes `validate.json` to `out_dir`.
pub fn cmd_validate(
    run: &RunConfig,
    consts: &PhysicalConstants,
    out_dir: &Path,
) -> Result<ValidateOutcome> {
    let cfg = &run.system;
    let report = spectrum::validate_config(cfg, consts)?;
    let scales = cfg.derived_scales(consts)?;
    let mut text = String::new();
    let mut passed = true;

    writeln!(text, "configuration checks").unwrap();
    for check in &report.checks {
        let tag = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Warn => "WARN",
        };
        writeln!(text, "  [{tag}] {}: {}", check.name, check.detail).unwrap();
    }
    writeln!(text, "field threshold").unwrap();
    writeln!(
        text,
        "  formula 2*hbar*c^2/|mu| = {} T_eff",
        fmt_sci(report.min_field_formula)
    )
    .unwrap();
    writeln!(
        text,
        "  published value         = {} T_eff",
        fmt_sci(report.min_field_reference)
    )
    .unwrap();
    writeln!(
        text,
        "  note: the two disagree by a factor {:.4e}; both are reported, neither is guessed",
        report.min_field_formula / report.min_field_reference
    )
    .unwrap();
    writeln!(
        text,
        "degeneracy coefficient rho = {} per T_eff",
        fmt_sci(scales.rho_flux)
    )
    .unwrap();

    writeln!(
        text,
        "finite-difference spectrum check (m = 0, lowest {VALIDATE_LEVELS} levels)"
    )
    .unwrap();
    let mut fd_rows = String::new();
    for sigma in [-1i8, 1] {
        let grid = fd::reference_grid(0, VALIDATE_LEVELS, cfg, consts)?;
        let result = fd::solve_radial_fd(0, sigma, cfg, consts, &grid, VALIDATE_LEVELS)?;
        for (j, computed) in result.eigenvalues.iter().enumerate() {
            let q = spectrum::QuantumNumbers {
                n_xi: j as u32,
                m: 0,
                sigma,
            };
            let exact = spectrum::energy_eigenvalue(q, scales.hbar_omega);
            let err = if exact == 0.0 {
                (computed - exact).abs() / scales.hbar_omega
            } else {
                (computed - exact).abs() / exact
            };
            let ok = err <= VALIDATE_FD_TOL;
            passed &= ok;
            writeln!(
                text,
                "  sigma={sigma:+} n={j}  fd={}  analytic={}  rel_err={:.3e}  {}",
                fmt_sci(*computed),
                fmt_sci(exact),
                err,
                if ok { "pass" } else { "FAIL" }
            )
            .unwrap();
            write!(
                fd_rows,
                "{}{{\"sigma\": {sigma}, \"n\": {j}, \"fd_J\": {}, \"analytic_J\": {}, \"rel_err\": {}}}",
                if fd_rows.is_empty() { "" } else { ", " },
                fmt_sci(*computed),
                fmt_sci(exact),
                fmt_sci(err)
            )
            .unwrap();
        }
    }
    writeln!(text, "result: {}", if passed { "pass" } else { "FAIL" }).unwrap();

    let mut json = String::new();
    json.push_str("{\n");
    writeln!(json, "  \"passed\": {passed},").unwrap();
    writeln!(
        json,
        "  \"warnings\": {},",
        report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Warn)
            .count()
    )
    .unwrap();
    writeln!(json, "  \"d_coefficient\": {},", fmt_sci(scales.rho_flux)).unwrap();
    writeln!(
        json,
        "  \"min_field_formula\": {},",
        fmt_sci(report.min_field_formula)
    )
    .unwrap();
    writeln!(
        json,
        "  \"min_field_paper_printed\": {},",
        fmt_sci(report.min_field_reference)
    )
    .unwrap();
    writeln!(json, "  \"fd_table\": [{fd_rows}]").unwrap();
    json.push_str("}\n");

    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("validate.json"), json)?;
    Ok(ValidateOutcome { passed, text })
}

/// Emits `spectrum.csv`: one row per (sigma, n_xi, m), sigma then n_xi then
/// m ascending.
pub fn cmd_spectrum(
    run: &RunConfig,
    consts: &PhysicalConstants,
    n_max: u32,
    m_max: u32,
    out_dir: &Path,
) -> Result<()> {
    let scales = run.system.derived_scales(consts)?;
    let rows = spectrum::spectrum_rows(n_max, m_max, scales.hbar_omega);
    let mut csv = String::from("sigma,n_xi,m,n_collapsed,energy_J\n");
    for row in rows {
        writeln!(
            csv,
            "{},{},{},{},{}",
            row.sigma,
            row.n_xi,
            row.m,
            row.n_collapsed,
            fmt_sci(row.energy)
        )
        .unwrap();
    }
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("spectrum.csv"), csv)?;
    Ok(())
}

/// Emits the three figure datasets plus `analysis.json` for the configured
/// inverse-field sweep.
pub fn cmd_sweep(
    run: &RunConfig,
    consts: &PhysicalConstants,
    out_dir: &Path,
) -> Result<dhva::OscillationAnalysis> {
    let cfg = &run.system;
    let scales = cfg.derived_scales(consts)?;
    let points = dhva::sweep(cfg, &scales, run.inv_b_min, run.inv_b_max, run.steps)?;
    let analysis = dhva::analyze(&points, cfg, &scales, consts)?;
    let min_field = constants::min_field(consts, cfg.mu)?;

    let mut fig1 = String::from("inv_b_Teff_inv,partial_atoms\n");
    let mut fig2 = String::from("inv_b_Teff_inv,energy_partial_J\n");
    let mut fig3 = String::from("inv_b_Teff_inv,magnetization_JsT\n");
    for pt in &points {
        let inv = fmt_sci(pt.inv_b);
        writeln!(fig1, "{inv},{}", fmt_sci(pt.partial)).unwrap();
        writeln!(fig2, "{inv},{}", fmt_sci(pt.energy_partial)).unwrap();
        writeln!(fig3, "{inv},{}", fmt_sci(pt.magnetization)).unwrap();
    }

    let jumps = analysis
        .jumps
        .iter()
        .map(|j| fmt_sci(j.inv_b))
        .collect::<Vec<_>>()
        .join(", ");
    let period = match &analysis.period {
        Some(p) => fmt_sci(p.period),
        None => "null".to_string(),
    };
    let mut json = String::new();
    json.push_str("{\n");
    writeln!(json, "  \"jumps\": [{jumps}],").unwrap();
    writeln!(json, "  \"period\": {period},").unwrap();
    writeln!(
        json,
        "  \"jump_amplitude\": {},",
        fmt_sci(analysis.jump_amplitude)
    )
    .unwrap();
    writeln!(
        json,
        "  \"onsager_area\": {},",
        fmt_sci(analysis.fermi_area)
    )
    .unwrap();
    writeln!(json, "  \"d_coefficient\": {},", fmt_sci(scales.rho_flux)).unwrap();
    writeln!(json, "  \"min_field_formula\": {},", fmt_sci(min_field)).unwrap();
    writeln!(
        json,
        "  \"min_field_paper_printed\": {}",
        fmt_sci(constants::MIN_FIELD_REFERENCE_TEFF)
    )
    .unwrap();
    json.push_str("}\n");

    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("figure1.csv"), fig1)?;
    fs::write(out_dir.join("figure2.csv"), fig2)?;
    fs::write(out_dir.join("figure3.csv"), fig3)?;
    fs::write(out_dir.join("analysis.json"), json)?;
    Ok(analysis)
}
