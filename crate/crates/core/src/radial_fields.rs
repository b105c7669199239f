//! Cavity-normalized E1 radial modes and the spin/orbital angular momentum
//! density functions.
//!
//! Lengths enter only through the dimensionless argument `x = kr`. Densities
//! are reported in units of `ħ/V` and shell integrals in units of `ħ`, both
//! multiplied by [`CavityConfig::hbar_scale`].
//!
//! No boundary condition is imposed at `r = R`; each multipole order is
//! normalized independently over the cavity, which is why `kR ≥ 20` is
//! required (the mismatch between the two amplitudes is `O(1/kR)`).

use std::f64::consts::PI;

use serde::Serialize;

use crate::fmt::sig;
use crate::optimize::{argmax, golden_section_max};
use crate::quadrature::{integrate_panels, GaussLegendre};
use crate::{Error, Execution, Result};

/// Smallest accepted `kR`.
pub const MIN_KR: f64 = 20.0;
/// Below this argument `j₀` uses its power series.
pub const SERIES_SWITCH: f64 = 1e-2;
/// `j₂` switches later: its closed form cancels to ~5e-12 absolute error at
/// `x = 1e-2` but is within 5e-14 of the series at 0.1.
pub const J2_SERIES_SWITCH: f64 = 0.1;

const NORM_PANEL: f64 = 1.0;
const NORM_REL_TOL: f64 = 1e-13;
const PROFILE_PANEL: f64 = 0.25;
const PROFILE_NODES: usize = 12;

/// Spherical Bessel function `j_ℓ(x)` for `ℓ ∈ {0, 2}`.
pub fn spherical_bessel(ell: u32, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    match ell {
        0 => Ok(if x < SERIES_SWITCH { j0_series(x) } else { x.sin() / x }),
        2 => Ok(if x < J2_SERIES_SWITCH { j2_series(x) } else { j2_closed(x) }),
        other => Err(Error::InvalidOrder(other)),
    }
}

pub(crate) fn j0_series(x: f64) -> f64 {
    let x2 = x * x;
    1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
}

pub(crate) fn j2_series(x: f64) -> f64 {
    // x^2/15 * sum_n (-x^2/2)^n / (n! (2n+5)!!/15)
    let x2 = x * x;
    x2 / 15.0 * (1.0 - x2 / 14.0 * (1.0 - x2 / 36.0 * (1.0 - x2 / 66.0)))
}

pub(crate) fn j2_closed(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 / (x * x) * c
}

fn bessel(ell: u32, x: f64) -> f64 {
    spherical_bessel(ell, x).expect("validated argument")
}

/// Spherical cavity of radius `R` hosting a single wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityConfig {
    k: f64,
    radius: f64,
    hbar_scale: f64,
}

impl CavityConfig {
    pub fn new(k: f64, radius: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidCavity(format!("wavenumber must be positive, got {k}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidCavity(format!("radius must be positive, got {radius}")));
        }
        if k * radius < MIN_KR {
            return Err(Error::InvalidCavity(format!("kR = {} is below the minimum {MIN_KR}", k * radius)));
        }
        Ok(Self { k, radius, hbar_scale: 1.0 })
    }

    /// Unit wavenumber, radius `kR`.
    pub fn from_kr(kr: f64) -> Result<Self> {
        Self::new(1.0, kr)
    }

    pub fn with_hbar_scale(mut self, scale: f64) -> Self {
        self.hbar_scale = scale;
        self
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn hbar_scale(&self) -> f64 {
        self.hbar_scale
    }

    pub fn kr_max(&self) -> f64 {
        self.k * self.radius
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.k
    }

    /// `V = 4πR³/3`.
    pub fn volume(&self) -> f64 {
        4.0 * PI * self.radius.powi(3) / 3.0
    }
}

/// Mode `c_ℓ · j_ℓ(kr)` with `∫₀^R [c_ℓ j_ℓ(kr)]² r² dr = V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedMode {
    pub ell: u32,
    pub amplitude: f64,
    /// `∫₀^{kR} j_ℓ(x)² x² dx` (dimensionless).
    pub raw_integral: f64,
}

impl NormalizedMode {
    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.amplitude * spherical_bessel(self.ell, x)?)
    }
}

/// Normalizes `j_ℓ` over the cavity by adaptive quadrature.
pub fn normalize_mode(config: &CavityConfig, ell: u32) -> Result<NormalizedMode> {
    if ell != 0 && ell != 2 {
        return Err(Error::InvalidOrder(ell));
    }
    let raw_integral = integrate_panels(|x| shell_weight(ell, x), 0.0, config.kr_max(), NORM_PANEL, 0.0, NORM_REL_TOL)?;
    let physical = raw_integral / config.k.powi(3);
    Ok(NormalizedMode { ell, amplitude: (config.volume() / physical).sqrt(), raw_integral })
}

fn shell_weight(ell: u32, x: f64) -> f64 {
    let j = bessel(ell, x);
    j * j * x * x
}

/// `∫₀^R [c_ℓ j_ℓ(kr)]² r² dr / V − 1`, re-integrated with composite
/// Gauss–Legendre rather than the adaptive rule used for normalization.
pub fn normalization_residual(config: &CavityConfig, mode: &NormalizedMode) -> f64 {
    let gl = GaussLegendre::new(PROFILE_NODES);
    let k3 = config.k.powi(3);
    let integral = gl.integrate_composite(
        |x| mode.amplitude.powi(2) * shell_weight(mode.ell, x) / k3,
        0.0,
        config.kr_max(),
        PROFILE_PANEL,
    );
    integral / config.volume() - 1.0
}

/// Both normalized modes of one cavity; evaluates the density functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialModel {
    pub config: CavityConfig,
    pub monopole: NormalizedMode,
    pub quadrupole: NormalizedMode,
}

impl RadialModel {
    pub fn new(config: CavityConfig) -> Result<Self> {
        Ok(Self { config, monopole: normalize_mode(&config, 0)?, quadrupole: normalize_mode(&config, 2)? })
    }

    /// Spin density `f_S(kr) = (ħ/3V)[2 j₀² − ½ j₂²]`, in units of `ħ/V`.
    pub fn f_spin(&self, kr: f64) -> Result<f64> {
        let j0 = self.monopole.value(kr)?;
        let j2 = self.quadrupole.value(kr)?;
        Ok(self.config.hbar_scale * (2.0 * j0 * j0 - 0.5 * j2 * j2) / 3.0)
    }

    /// Orbital density `f_L(kr) = (ħ/3V)(3/2) j₂²`, in units of `ħ/V`.
    pub fn f_oam(&self, kr: f64) -> Result<f64> {
        let j2 = self.quadrupole.value(kr)?;
        Ok(self.config.hbar_scale * 0.5 * j2 * j2)
    }

    // Shell integrands in units of ħ per unit x: f(x) x² / (V k³).
    fn spin_shell(&self, x: f64) -> f64 {
        let s = self.config.hbar_scale / 3.0;
        s * (2.0 * shell_weight(0, x) / self.monopole.raw_integral
            - 0.5 * shell_weight(2, x) / self.quadrupole.raw_integral)
    }

    fn oam_shell(&self, x: f64) -> f64 {
        self.config.hbar_scale * 0.5 * shell_weight(2, x) / self.quadrupole.raw_integral
    }

    /// `(∫ f_S r² dr, ∫ f_L r² dr)` over `kr ∈ [a, b]`, in units of `ħ`.
    pub fn shell_integrals(&self, a: f64, b: f64) -> (f64, f64) {
        let gl = gauss_legendre();
        (
            gl.integrate_composite(|x| self.spin_shell(x), a, b, PROFILE_PANEL),
            gl.integrate_composite(|x| self.oam_shell(x), a, b, PROFILE_PANEL),
        )
    }

    /// Relative spin/OAM discrepancy of the shell integrals over one
    /// wavelength. The start is snapped down to a multiple of π (a node of
    /// `j₀`) so windows at different radii share the same oscillation phase.
    pub fn windowed_discrepancy(&self, start_kr: f64) -> Result<WaveWindow> {
        if start_kr < 0.0 {
            return Err(Error::NegativeArgument(start_kr));
        }
        let width = 2.0 * PI;
        let mut start = (start_kr / PI).floor() * PI;
        while start + width > self.config.kr_max() && start > 0.0 {
            start -= PI;
        }
        if start + width > self.config.kr_max() {
            return Err(Error::InvalidSampling("cavity shorter than one wavelength".into()));
        }
        let (spin, oam) = self.shell_integrals(start, start + width);
        Ok(WaveWindow { start_kr: start, spin, oam, discrepancy: (spin - oam).abs() / spin })
    }
}

fn gauss_legendre() -> &'static GaussLegendre {
    static GL: std::sync::OnceLock<GaussLegendre> = std::sync::OnceLock::new();
    GL.get_or_init(|| GaussLegendre::new(PROFILE_NODES))
}

/// `f_S(kr)` for a cavity. Normalizes both modes on every call; reuse a
/// [`RadialModel`] for repeated evaluation.
pub fn f_spin(kr: f64, config: &CavityConfig) -> Result<f64> {
    RadialModel::new(*config)?.f_spin(kr)
}

/// `f_L(kr)` for a cavity.
pub fn f_oam(kr: f64, config: &CavityConfig) -> Result<f64> {
    RadialModel::new(*config)?.f_oam(kr)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialSample {
    pub kr: f64,
    pub f_spin: f64,
    pub f_oam: f64,
    pub cum_spin: f64,
    pub cum_oam: f64,
}

/// Densities on a uniform `kr` grid over `(0, kR]` with running shell
/// integrals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    pub model: RadialModel,
    pub samples: Vec<RadialSample>,
}

pub const CSV_HEADER: &str = "kr,f_spin,f_oam,cum_spin,cum_oam";

impl RadialProfile {
    pub fn last(&self) -> &RadialSample {
        self.samples.last().expect("profile has at least 100 samples")
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for s in &self.samples {
            writeln!(w, "{},{},{},{},{}", sig(s.kr), sig(s.f_spin), sig(s.f_oam), sig(s.cum_spin), sig(s.cum_oam))?;
        }
        Ok(())
    }
}

pub fn radial_profile(config: &CavityConfig, n_samples: usize) -> Result<RadialProfile> {
    radial_profile_with(config, n_samples, Execution::default())
}

/// Samples are evaluated independently (optionally in parallel); the running
/// sums are accumulated sequentially afterwards.
pub fn radial_profile_with(config: &CavityConfig, n_samples: usize, exec: Execution) -> Result<RadialProfile> {
    if n_samples < 100 {
        return Err(Error::InvalidSampling(format!("need at least 100 samples, got {n_samples}")));
    }
    let model = RadialModel::new(*config)?;
    let kr_max = config.kr_max();
    let grid = |i: usize| if i == n_samples { kr_max } else { kr_max * i as f64 / n_samples as f64 };
    let pieces = exec.map(n_samples, |i| {
        let (a, b) = (grid(i), grid(i + 1));
        let (ds, dl) = model.shell_integrals(a, b);
        (b, model.f_spin(b).expect("kr >= 0"), model.f_oam(b).expect("kr >= 0"), ds, dl)
    });
    let mut cum_spin = 0.0;
    let mut cum_oam = 0.0;
    let samples = pieces
        .into_iter()
        .map(|(kr, f_spin, f_oam, ds, dl)| {
            cum_spin += ds;
            cum_oam += dl;
            RadialSample { kr, f_spin, f_oam, cum_spin, cum_oam }
        })
        .collect();
    Ok(RadialProfile { model, samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveWindow {
    pub start_kr: f64,
    pub spin: f64,
    pub oam: f64,
    pub discrepancy: f64,
}

/// Near-, intermediate- and wave-zone diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZoneReport {
    /// Minimum of `f_S/f_L` over `0 < r ≤ 0.1λ`.
    pub near_ratio: f64,
    /// Radius (length units) of the first OAM density maximum within `(0, λ]`.
    pub oam_peak_r: f64,
    pub oam_peak_over_lambda: f64,
    pub wave_zone_start_kr: f64,
    pub wave_zone_discrepancy: f64,
}

const NEAR_GRID: usize = 1000;
const PEAK_GRID: usize = 2000;

pub fn zone_report(config: &CavityConfig) -> Result<ZoneReport> {
    let model = RadialModel::new(*config)?;
    zone_report_for(&model)
}

pub fn zone_report_for(model: &RadialModel) -> Result<ZoneReport> {
    let config = &model.config;
    let x_near = 0.2 * PI;
    let mut near_ratio = f64::INFINITY;
    for i in 1..=NEAR_GRID {
        let x = if i == NEAR_GRID { x_near } else { x_near * i as f64 / NEAR_GRID as f64 };
        near_ratio = near_ratio.min(model.f_spin(x)? / model.f_oam(x)?);
    }

    let x_lambda = 2.0 * PI;
    let xs: Vec<f64> = (1..=PEAK_GRID).map(|i| x_lambda * i as f64 / PEAK_GRID as f64).collect();
    let values = xs.iter().map(|&x| model.f_oam(x)).collect::<Result<Vec<_>>>()?;
    let i = argmax(&values).expect("non-empty grid");
    let lo = if i == 0 { 0.0 } else { xs[i - 1] };
    let hi = xs[(i + 1).min(PEAK_GRID - 1)];
    let x_peak = golden_section_max(|x| model.f_oam(x).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-12);

    let window = model.windowed_discrepancy(0.8 * config.kr_max())?;
    Ok(ZoneReport {
        near_ratio,
        oam_peak_r: x_peak / config.k(),
        oam_peak_over_lambda: x_peak / x_lambda,
        wave_zone_start_kr: window.start_kr,
        wave_zone_discrepancy: window.discrepancy,
    })
}
