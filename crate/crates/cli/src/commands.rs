//! One function per subcommand. Each renders its output in full before
//! anything is written, so a failed run never leaves a partial file.

use photon_am::angular_algebra::{
    am_variances, density_commutator_check, j_operators_for, verify_su2, AlgebraReport, DensityKind,
};
use photon_am::decay_dynamics::{self, sz_curve, DecayModel, DecayParams};
use photon_am::fmt::{round_sig, sig};
use photon_am::fock_core::{build_space, Direction, ModeLabel};
use photon_am::radial_fields::{normalization_residual, radial_profile, zone_report_for, CavityConfig, RadialModel};
use photon_am::twin_entanglement::{
    interaction_hamiltonian, maximize_entanglement, selection_rule_check, AtomFieldSpace, ODD_OVERLAP_TOL,
    VARIATIONAL_TOL,
};
use photon_am::SCHEMA_VERSION;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Rendered output and whether every verification it carries passed.
pub struct Output {
    pub body: String,
    pub failed: Vec<String>,
}

/// Relative to ħ.
pub const CONSERVATION_TOL: f64 = 1e-6;
pub const NEAR_RATIO_MIN: f64 = 100.0;
pub const PEAK_RANGE: (f64, f64) = (0.4, 0.65);
pub const WAVE_ZONE_TOL: f64 = 0.05;
pub const DECAY_TMAX: f64 = 10.0;
pub const DECAY_RESIDUAL_TOL: f64 = 0.02;
pub const CLOSED_FORM_TOL: f64 = 1e-15;
pub const OPTIMUM_TOL: f64 = 1e-8;
pub const MU_TOL: f64 = 1e-10;

const DENSITY_RADII: [f64; 3] = [0.5, 3.0, 50.0];
const DENSITY_FAMILIES: [(DensityKind, DensityKind); 3] = [
    (DensityKind::Spin, DensityKind::Spin),
    (DensityKind::Oam, DensityKind::Oam),
    (DensityKind::Oam, DensityKind::Spin),
];
const SHELL_KR: [f64; 3] = [20.0, 100.0, 500.0];
const WAVE_KR: f64 = 1000.0;
const WAVE_STARTS: [f64; 4] = [100.0, 200.0, 400.0, 800.0];
const DECAY_RATIOS: [f64; 3] = [1e3, 3e3, 1e4];
// Atom-field model: photon frequency, atomic frequency, pair coupling.
const ATOM_FIELD: (f64, f64, f64) = (1.0, 2.0, 0.1);
// In units of 1/coupling.
const EVOLUTION_TIMES: [f64; 3] = [0.1, 1.0, 10.0];

/// Serializes with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            *v = json!(round_sig(n.as_f64().expect("f64 number")));
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Outcome of one verification.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Check { name: name.into(), value, bound: format!("< {}", sig(tol)), pass: value < tol }
    }

    fn above(name: impl Into<String>, value: f64, min: f64) -> Self {
        Check { name: name.into(), value, bound: format!("> {}", sig(min)), pass: value > min }
    }

    fn at_most(name: impl Into<String>, value: f64, max: f64) -> Self {
        Check { name: name.into(), value, bound: format!("<= {}", sig(max)), pass: value <= max }
    }

    fn within(name: impl Into<String>, value: f64, (lo, hi): (f64, f64)) -> Self {
        Check {
            name: name.into(),
            value,
            bound: format!("in [{}, {}]", sig(lo), sig(hi)),
            pass: (lo..=hi).contains(&value),
        }
    }

    fn from_report(name: impl Into<String>, r: &AlgebraReport) -> Self {
        Check { name: name.into(), value: r.max_residual, bound: format!("< {}", sig(r.tolerance)), pass: r.pass }
    }
}

fn failed_names(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect()
}

fn checks_csv(checks: &[Check]) -> String {
    let mut s = String::from("name,value,bound,pass\n");
    for c in checks {
        s.push_str(&format!("{},{},{},{}\n", c.name, sig(c.value), c.bound, c.pass));
    }
    s
}

fn csv_of(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> String {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is ascii")
}

pub fn radial(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = CavityConfig::from_kr(cfg.kr)?;
    let profile = radial_profile(&config, cfg.samples)?;
    let last = *profile.last();
    let checks = [
        Check::below("cumulative_spin", (last.cum_spin - 0.5).abs(), CONSERVATION_TOL),
        Check::below("cumulative_oam", (last.cum_oam - 0.5).abs(), CONSERVATION_TOL),
    ];
    let body = match cfg.format {
        Format::Csv => csv_of(|w| profile.write_csv(w)),
        Format::Json => {
            let model = &profile.model;
            to_json(&json!({
                "schema": SCHEMA_VERSION,
                "command": "radial",
                "kR": cfg.kr,
                "samples": cfg.samples,
                "cum_spin": last.cum_spin,
                "cum_oam": last.cum_oam,
                "normalization_residual": {
                    "monopole": normalization_residual(&config, &model.monopole),
                    "quadrupole": normalization_residual(&config, &model.quadrupole),
                },
                "zones": zone_report_for(model)?,
                "checks": checks,
                "pass": checks.iter().all(|c| c.pass),
            }))
        }
    };
    Ok(Output { body, failed: failed_names(&checks) })
}

fn algebra_reports(cfg: &RunConfig) -> Result<Vec<(String, AlgebraReport)>, CliError> {
    let mut out = Vec::new();
    let families = [
        ("untagged", ModeLabel::triple()),
        ("forward", ModeLabel::tagged_triple(Direction::Forward)),
        ("backward", ModeLabel::tagged_triple(Direction::Backward)),
    ];
    for (name, labels) in &families {
        let space = build_space(labels, cfg.cutoff)?;
        let j = j_operators_for(&space, labels)?;
        out.push((format!("su2_closure_{name}"), verify_su2(&j, cfg.tol)));
    }
    let space = build_space(&ModeLabel::triple(), cfg.cutoff)?;
    let j = j_operators_for(&space, &ModeLabel::triple())?;
    let model = RadialModel::new(CavityConfig::from_kr(cfg.kr)?)?;
    for kr in DENSITY_RADII {
        for (a, b) in DENSITY_FAMILIES {
            let report = density_commutator_check(a, b, kr, &model, &j, cfg.tol)?;
            out.push((format!("density_{}_{}_kr{}", kind_name(a), kind_name(b), sig(kr)), report));
        }
    }
    Ok(out)
}

fn kind_name(k: DensityKind) -> &'static str {
    match k {
        DensityKind::Spin => "spin",
        DensityKind::Oam => "oam",
    }
}

pub fn algebra(cfg: &RunConfig) -> Result<Output, CliError> {
    let reports = algebra_reports(cfg)?;
    let checks: Vec<Check> = reports.iter().map(|(n, r)| Check::from_report(n.clone(), r)).collect();
    let body = match cfg.format {
        Format::Csv => checks_csv(&checks),
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "command": "algebra",
            "cutoff": cfg.cutoff,
            "kR": cfg.kr,
            "tol": cfg.tol,
            "reports": reports.iter().map(|(_, r)| r).collect::<Vec<_>>(),
            "checks": checks,
            "pass": checks.iter().all(|c| c.pass),
        })),
    };
    Ok(Output { body, failed: failed_names(&checks) })
}

pub fn variance(cfg: &RunConfig) -> Result<Output, CliError> {
    let v = am_variances(cfg.m)?;
    let body = match cfg.format {
        Format::Csv => {
            format!("m,varJx,varJy,varJz\n{},{},{},{}\n", cfg.m, sig(v.var_jx), sig(v.var_jy), sig(v.var_jz))
        }
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "m": cfg.m,
            "varJx": v.var_jx,
            "varJy": v.var_jy,
            "varJz": v.var_jz,
        })),
    };
    Ok(Output { body, failed: vec![] })
}

fn decay_params(ratio: f64, samples: usize) -> Result<DecayParams, CliError> {
    Ok(DecayParams::from_ratio(ratio, samples, DECAY_TMAX)?)
}

fn closed_form_deviation(curve: &decay_dynamics::DecayCurve) -> f64 {
    curve
        .t
        .iter()
        .zip(&curve.sz_over_hbar)
        .map(|(&t, &sz)| (sz - 0.5 * (1.0 - (-2.0 * t).exp())).abs())
        .fold(0.0, f64::max)
}

/// The ±40Γ window leaves an O(1/40) residual for t ≲ 0.25/Γ whatever the
/// line quality, so conservation is judged at the end of the grid.
fn final_residual(curve: &decay_dynamics::DecayCurve) -> f64 {
    curve.norm_residual.last().map_or(f64::NAN, |r| r.abs())
}

pub fn decay(cfg: &RunConfig) -> Result<Output, CliError> {
    let params = decay_params(cfg.omega0_over_gamma, cfg.samples)?;
    let curve = sz_curve(&params)?;
    let checks = [
        Check::below("sz_closed_form", closed_form_deviation(&curve), CLOSED_FORM_TOL),
        Check::below("norm_residual_at_t_max", final_residual(&curve), DECAY_RESIDUAL_TOL),
    ];
    let body = match cfg.format {
        Format::Csv => csv_of(|w| curve.write_csv(w)),
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "command": "decay",
            "omega0_over_gamma": cfg.omega0_over_gamma,
            "gamma": params.gamma(),
            "samples": cfg.samples,
            "t_max": DECAY_TMAX,
            "max_abs_norm_residual": curve.max_abs_residual(),
            "curve": curve,
            "checks": checks,
            "pass": checks.iter().all(|c| c.pass),
        })),
    };
    Ok(Output { body, failed: failed_names(&checks) })
}

pub fn entangle(cfg: &RunConfig) -> Result<Output, CliError> {
    let opt = maximize_entanglement();
    let failed = if opt.variational_pass { vec![] } else { vec!["variational".to_string()] };
    let body = match cfg.format {
        Format::Csv => format!(
            "c1_abs,c2_abs,mu_max,local_expectation_max_abs,variational_pass\n{},{},{},{},{}\n",
            sig(opt.c1_abs),
            sig(opt.c2_abs),
            sig(opt.mu_max),
            sig(opt.local_expectation_max_abs),
            opt.variational_pass
        ),
        Format::Json => {
            let mut v = serde_json::to_value(opt).expect("optimum serializes");
            v["schema"] = json!(SCHEMA_VERSION);
            to_json(&v)
        }
    };
    Ok(Output { body, failed })
}

/// Every library verification with its acceptance threshold.
pub fn verification_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    let reports = algebra_reports(cfg)?;
    for (name, r) in reports.iter().filter(|(n, _)| n.starts_with("su2")) {
        checks.push(Check::from_report(name.clone(), r));
    }

    let expected = |m: i64| if m == 0 { (1.0, 1.0, 0.0) } else { (0.5, 0.5, 0.0) };
    let mut table_dev: f64 = 0.0;
    for m in [-1, 0, 1] {
        let v = am_variances(m)?;
        let (x, y, z) = expected(m);
        table_dev = table_dev.max((v.var_jx - x).abs()).max((v.var_jy - y).abs()).max((v.var_jz - z).abs());
    }
    checks.push(Check::below("variance_table", table_dev, cfg.tol));
    checks.push(Check::above("variance_m0_exceeds_m1", am_variances(0)?.var_jx - am_variances(1)?.var_jx, 0.0));

    for kr in SHELL_KR {
        let p = radial_profile(&CavityConfig::from_kr(kr)?, cfg.samples)?;
        let last = p.last();
        let dev =
            (last.cum_spin - 0.5).abs().max((last.cum_oam - 0.5).abs()).max((last.cum_spin + last.cum_oam - 1.0).abs());
        checks.push(Check::below(format!("shell_conservation_kR{}", sig(kr)), dev, CONSERVATION_TOL));
    }

    let config = CavityConfig::from_kr(cfg.kr)?;
    let profile = radial_profile(&config, cfg.samples)?;
    let model = &profile.model;
    let zones = zone_report_for(model)?;
    checks.push(Check::above("near_zone_ratio", zones.near_ratio, NEAR_RATIO_MIN));
    checks.push(Check::at_most("oam_density_at_origin", model.f_oam(0.0)?.abs(), 0.0));
    let spin_origin = model.f_spin(0.0)?;
    let spin_excess = profile.samples.iter().map(|s| s.f_spin - spin_origin).fold(f64::NEG_INFINITY, f64::max);
    checks.push(Check::at_most("spin_density_peaks_at_origin", spin_excess, 0.0));
    checks.push(Check::within("oam_peak_over_lambda", zones.oam_peak_over_lambda, PEAK_RANGE));

    let wave_model = RadialModel::new(CavityConfig::from_kr(WAVE_KR)?)?;
    let mut discrepancies = Vec::new();
    for start in WAVE_STARTS {
        discrepancies.push(wave_model.windowed_discrepancy(start)?.discrepancy);
    }
    checks.push(Check::below("wave_zone_agreement", discrepancies.iter().copied().fold(0.0, f64::max), WAVE_ZONE_TOL));
    let worst_step = discrepancies.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    checks.push(Check::below("wave_zone_decreasing", worst_step, 1.0));

    for (name, r) in reports.iter().filter(|(n, _)| n.starts_with("density")) {
        checks.push(Check::from_report(name.clone(), r));
    }

    let curve = sz_curve(&decay_params(cfg.omega0_over_gamma, cfg.samples)?)?;
    checks.push(Check::below("sz_closed_form", closed_form_deviation(&curve), CLOSED_FORM_TOL));
    let residual_at = |ratio: f64| -> Result<f64, CliError> {
        Ok(DecayModel::new(DecayParams::from_ratio(ratio, 1, 0.0)?)?.norm_residual(DECAY_TMAX)?.abs())
    };
    checks.push(Check::below("decay_norm_residual", residual_at(cfg.omega0_over_gamma)?, DECAY_RESIDUAL_TOL));
    let trend = DECAY_RATIOS.iter().map(|&r| residual_at(r)).collect::<Result<Vec<_>, _>>()?;
    checks.push(Check::below(
        "decay_residual_decreasing",
        trend.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max),
        1.0,
    ));

    let opt = maximize_entanglement();
    checks.push(Check::below("optimum_c1", (opt.c1_abs - (1.0f64 / 3.0).sqrt()).abs(), OPTIMUM_TOL));
    checks.push(Check::below("optimum_c2", (opt.c2_abs - (2.0f64 / 3.0).sqrt()).abs(), OPTIMUM_TOL));
    checks.push(Check::below("local_expectations", opt.local_expectation_max_abs, VARIATIONAL_TOL));
    checks.push(Check::below("mu_max", (opt.mu_max - 2.0 / (3.0 * 3f64.sqrt())).abs(), MU_TOL));

    let (omega, omega0, gamma) = ATOM_FIELD;
    let h = interaction_hamiltonian(&AtomFieldSpace::new(), omega, omega0, gamma)?;
    let times = EVOLUTION_TIMES.map(|t| t / gamma);
    let sel = selection_rule_check(&h, omega, &times)?;
    checks.push(Check::below("odd_pair_coupling", sel.odd_coupling, cfg.tol));
    checks.push(Check::below("odd_pair_eigenvector", sel.eigen_residual, cfg.tol));
    checks.push(Check::below(
        "odd_pair_overlap",
        sel.odd_overlaps.iter().copied().fold(0.0, f64::max),
        ODD_OVERLAP_TOL,
    ));
    checks.push(Check::below("excitation_conserved", sel.excitation_commutator, cfg.tol));
    Ok(checks)
}

pub fn verify_all(cfg: &RunConfig) -> Result<Output, CliError> {
    let checks = verification_checks(cfg)?;
    let body = match cfg.format {
        Format::Csv => checks_csv(&checks),
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "command": "verify-all",
            "parameters": {
                "kR": cfg.kr,
                "samples": cfg.samples,
                "omega0_over_gamma": cfg.omega0_over_gamma,
                "cutoff": cfg.cutoff,
                "tol": cfg.tol,
            },
            "checks": checks,
            "pass": checks.iter().all(|c| c.pass),
        })),
    };
    Ok(Output { body, failed: failed_names(&checks) })
}
