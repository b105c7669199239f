//! Checks against oracles that do not share code paths with the library.

use std::f64::consts::PI;

use num_complex::Complex64;
use photon_am::angular_algebra::{density_commutator_check, j_operators, su3_generators, DensityKind};
use photon_am::decay_dynamics::{DecayModel, DecayParams};
use photon_am::fock_core::{build_space, HilbertSpace, ModeLabel, DEFAULT_CUTOFF};
use photon_am::quadrature::{integrate_panels, GaussLegendre};
use photon_am::radial_fields::{spherical_bessel, CavityConfig, RadialModel};
use photon_am::twin_entanglement::{maximize_entanglement, maximize_modulus, measure_on_curve, variational_root};
use photon_am::Execution;

/// j_ℓ(x) = (1/(2 i^ℓ)) ∫_{-1}^{1} e^{ixt} P_ℓ(t) dt.
fn bessel_integral(ell: u32, x: f64) -> f64 {
    let gl = GaussLegendre::new(40);
    match ell {
        0 => 0.5 * gl.integrate(|t| (x * t).cos(), -1.0, 1.0),
        2 => -0.5 * gl.integrate(|t| (x * t).cos() * 0.5 * (3.0 * t * t - 1.0), -1.0, 1.0),
        _ => unreachable!(),
    }
}

#[test]
fn bessel_matches_integral_representation() {
    for &x in &[0.0, 1e-3, 0.05, 0.2 * PI, 1.0, PI, 3.34, 7.5, 15.0] {
        for ell in [0, 2] {
            let a = spherical_bessel(ell, x).unwrap();
            let b = bessel_integral(ell, x);
            assert!((a - b).abs() < 1e-13, "ell {ell} x {x}: {a} vs {b}");
        }
    }
    assert!((spherical_bessel(0, 0.2 * PI).unwrap() - 0.9355).abs() < 5e-5);
    assert!((spherical_bessel(2, 0.2 * PI).unwrap() - 0.0258).abs() < 5e-4);
}

#[test]
fn near_zone_ratio_for_equal_amplitudes() {
    // (2 j0² − ½ j2²)/(1.5 j2²) at x = 0.2π with c0 = c2.
    let x = 0.2 * PI;
    let (j0, j2) = (bessel_integral(0, x), bessel_integral(2, x));
    let ratio = (2.0 * j0 * j0 - 0.5 * j2 * j2) / (1.5 * j2 * j2);
    assert!(ratio > 1e3, "{ratio}");
    let model = RadialModel::new(CavityConfig::from_kr(200.0).unwrap()).unwrap();
    let lib = model.f_spin(x).unwrap() / model.f_oam(x).unwrap();
    let c = (model.monopole.amplitude / model.quadrupole.amplitude).powi(2);
    let expected = (2.0 * c * j0 * j0 - 0.5 * j2 * j2) / (1.5 * j2 * j2);
    assert!((lib / expected - 1.0).abs() < 1e-10);
}

#[test]
fn oam_peak_by_dense_scan() {
    // Coarse scan of j2² over (0, 2π], then a 1e-6 step scan around the best cell.
    let gl = GaussLegendre::new(40);
    let j2_sq = |x: f64| (0.5 * gl.integrate(|t| (x * t).cos() * 0.5 * (3.0 * t * t - 1.0), -1.0, 1.0)).powi(2);
    let scan = |lo: f64, hi: f64, n: usize| {
        (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).fold((lo, f64::NEG_INFINITY), |best, x| {
            if j2_sq(x) > best.1 {
                (x, j2_sq(x))
            } else {
                best
            }
        })
    };
    let (coarse, _) = scan(1e-3, 2.0 * PI, 10_000);
    let (best_x, _) = scan(coarse - 1e-3, coarse + 1e-3, 2_000);
    assert!((best_x - 3.342).abs() < 1e-3, "{best_x}");
    let z = photon_am::radial_fields::zone_report(&CavityConfig::from_kr(100.0).unwrap()).unwrap();
    assert!((z.oam_peak_r - best_x).abs() < 1e-5, "{} vs {best_x}", z.oam_peak_r);
    assert!((0.4..=0.65).contains(&z.oam_peak_over_lambda));
}

#[test]
fn shell_integrals_against_raw_quadrature() {
    // Independent adaptive integration of f r² dr with the closed-form f.
    let config = CavityConfig::new(0.5, 100.0).unwrap();
    let model = RadialModel::new(config).unwrap();
    let k = config.k();
    let v = config.volume();
    let spin =
        integrate_panels(|r| model.f_spin(k * r).unwrap() * r * r, 0.0, config.radius(), 1.0, 0.0, 1e-13).unwrap() / v;
    let oam =
        integrate_panels(|r| model.f_oam(k * r).unwrap() * r * r, 0.0, config.radius(), 1.0, 0.0, 1e-13).unwrap() / v;
    assert!((spin - 0.5).abs() < 1e-10);
    assert!((oam - 0.5).abs() < 1e-10);
}

#[test]
fn su3_single_photon_blocks_are_independent_and_traceless() {
    let s = build_space(&ModeLabel::triple(), DEFAULT_CUTOFF).unwrap();
    let g = su3_generators(&s).unwrap();
    // Single-photon states are basis indices with total occupation 1.
    let idx: Vec<usize> = (0..s.dim()).filter(|&i| s.total_occupation(i) == 1).collect();
    assert_eq!(idx.len(), 3);
    // Realified 18-component vectors of the 3×3 blocks.
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for op in g.generators() {
        let mut trace = Complex64::new(0.0, 0.0);
        let mut v = Vec::new();
        for &i in &idx {
            trace += op.entries()[[i, i]];
            for &j in &idx {
                v.push(op.entries()[[i, j]].re);
                v.push(op.entries()[[i, j]].im);
            }
        }
        assert!(trace.norm() < 1e-15);
        rows.push(v);
    }
    assert_eq!(rank(rows, 1e-12), 8);
}

fn rank(mut m: Vec<Vec<f64>>, tol: f64) -> usize {
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else { break };
        if m[p][c].abs() < tol {
            continue;
        }
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r {
                let f = row[c] / pivot[c];
                row.iter_mut().zip(&pivot).for_each(|(x, p)| *x -= f * p);
            }
        }
        r += 1;
    }
    r
}

#[test]
fn density_identities_at_several_radii() {
    let model = RadialModel::new(CavityConfig::from_kr(100.0).unwrap()).unwrap();
    let j = j_operators(&build_space(&ModeLabel::triple(), DEFAULT_CUTOFF).unwrap()).unwrap();
    for kr in [0.5, 3.0, 5.0, 50.0] {
        for (a, b) in [
            (DensityKind::Spin, DensityKind::Spin),
            (DensityKind::Oam, DensityKind::Oam),
            (DensityKind::Oam, DensityKind::Spin),
            (DensityKind::Spin, DensityKind::Oam),
        ] {
            let r = density_commutator_check(a, b, kr, &model, &j, 1e-12).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn lorentzian_half_width() {
    let params = DecayParams::from_ratio(1e3, 1, 0.0).unwrap();
    let model = DecayModel::new(params).unwrap();
    let spectrum = |k: f64| model.photon_amplitude(k, 1e6).unwrap().norm_sqr();
    // Locate the peak by a fine scan, then the half-maximum crossings by bisection.
    let (mut peak_k, mut peak) = (0.0, 0.0);
    for i in 0..=20_000 {
        let k = 995.0 + 10.0 * i as f64 / 20_000.0;
        let v = spectrum(k);
        if v > peak {
            peak = v;
            peak_k = k;
        }
    }
    let cross = |mut inside: f64, mut outside: f64| {
        for _ in 0..100 {
            let mid = 0.5 * (inside + outside);
            if spectrum(mid) > 0.5 * peak {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let hwhm = 0.5 * (cross(peak_k, peak_k + 20.0) - cross(peak_k, peak_k - 20.0));
    assert!((hwhm - 1.0).abs() < 0.01, "{hwhm}");
}

#[test]
fn residual_matches_direct_norm_sum() {
    let params = DecayParams::from_ratio(1e3, 1, 0.0).unwrap();
    let model = DecayModel::new(params.clone()).unwrap();
    let (lo, hi) = params.window();
    for t in [0.5, 2.0, 10.0] {
        let direct = model.excited_amplitude(t).unwrap().norm_sqr()
            + integrate_panels(|k| model.photon_amplitude(k, t).unwrap().norm_sqr(), lo, hi, 0.1, 0.0, 1e-13).unwrap()
            - 1.0;
        let stable = model.norm_residual(t).unwrap();
        assert!((direct - stable).abs() < 1e-9, "t {t}: {direct} vs {stable}");
    }
}

#[test]
fn residual_improves_with_line_quality() {
    let residual = |ratio: f64| {
        let p = DecayParams::from_ratio(ratio, 1, 0.0).unwrap();
        DecayModel::new(p).unwrap().norm_residual(10.0).unwrap().abs()
    };
    let values: Vec<f64> = [1e2, 3e2, 1e3, 3e3, 1e4].iter().map(|&r| residual(r)).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    assert!(values[2] < 0.02);
}

#[test]
fn calculus_oracle_for_the_maximum() {
    // d/da (a − a³) = 1 − 3a² = 0.
    let a_star = (1.0f64 / 3.0).sqrt();
    let mu_star = a_star - a_star.powi(3);
    assert!((mu_star - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
    let opt = maximize_entanglement();
    assert!((opt.c1_abs - a_star).abs() < 1e-9);
    assert!((opt.mu_max - mu_star).abs() < 1e-10);
}

#[test]
fn argmax_invariant_under_rescaling() {
    let plain = maximize_modulus(measure_on_curve, Execution::Sequential);
    let scaled = maximize_modulus(|a| 7.0 * measure_on_curve(a), Execution::Sequential);
    assert!((plain - scaled).abs() < 1e-8);
    assert!((plain - 1.0 / 3f64.sqrt()).abs() < 1e-8);
}

#[test]
fn variational_condition_agrees_with_optimum() {
    let root = variational_root();
    let opt = maximize_entanglement();
    assert!((root - opt.c1_abs).abs() < 1e-8, "{root} vs {}", opt.c1_abs);
}
