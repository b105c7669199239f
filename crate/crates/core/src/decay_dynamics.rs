//! Markov decay of the excited E1 emitter and the resulting spin/OAM
//! expectation.
//!
//! Natural units `c = ħ = 1`, so `ω_k = k`. The photon amplitude
//!
//! ```text
//! B(k, t) = −k^{3/2} / (ω_k − ω₀ + iΓ) · (1 − e^{i(ω_k − ω₀)t − Γt})
//! ```
//!
//! carries no normalization of its own. A single constant `K` is fixed per
//! parameter set by `∫ K|B(k, ∞)|² dk = 1` over the window `ω₀ ± 40Γ` with a
//! flat mode density; the calibrated amplitude is `√K·B`.

use num_complex::Complex64;
use serde::Serialize;

use crate::fmt::sig;
use crate::quadrature::integrate_panels;
use crate::{Error, Execution, Result};

/// Smallest accepted `ω₀/Γ` (Markov validity).
pub const MIN_OMEGA0_OVER_GAMMA: f64 = 50.0;
/// Half-width of the k-integration window in units of Γ.
pub const WINDOW_HALF_WIDTH: f64 = 40.0;

const REL_TOL: f64 = 1e-12;
const ABS_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayParams {
    omega0: f64,
    gamma: f64,
    time_grid: Vec<f64>,
}

impl DecayParams {
    pub fn new(omega0: f64, gamma: f64, time_grid: Vec<f64>) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::InvalidDecayParams(format!("omega0 must be positive, got {omega0}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidDecayParams(format!("gamma must be positive, got {gamma}")));
        }
        if omega0 / gamma < MIN_OMEGA0_OVER_GAMMA {
            return Err(Error::InvalidDecayParams(format!(
                "omega0/gamma = {} is below {MIN_OMEGA0_OVER_GAMMA}",
                omega0 / gamma
            )));
        }
        if let Some(&t) = time_grid.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Error::InvalidDecayParams(format!("time {t} is not a finite non-negative value")));
        }
        Ok(Self { omega0, gamma, time_grid })
    }

    /// `Γ = 1`, `ω₀ = ratio`, `n_times` uniform times over `[0, t_max]`.
    pub fn from_ratio(omega0_over_gamma: f64, n_times: usize, t_max: f64) -> Result<Self> {
        let grid = match n_times {
            0 => vec![],
            1 => vec![0.0],
            n => (0..n).map(|i| if i + 1 == n { t_max } else { t_max * i as f64 / (n - 1) as f64 }).collect(),
        };
        Self::new(omega0_over_gamma, 1.0, grid)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn time_grid(&self) -> &[f64] {
        &self.time_grid
    }

    pub fn window(&self) -> (f64, f64) {
        (self.omega0 - WINDOW_HALF_WIDTH * self.gamma, self.omega0 + WINDOW_HALF_WIDTH * self.gamma)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeArgument(t))
    }
}

/// `C(t) = e^{−iω₀t − Γt}`.
pub fn excited_amplitude(t: f64, params: &DecayParams) -> Result<Complex64> {
    check_time(t)?;
    Ok(Complex64::new(-params.gamma * t, -params.omega0 * t).exp())
}

/// Uncalibrated `B(k, t)`.
pub fn raw_photon_amplitude(k: f64, t: f64, params: &DecayParams) -> Result<Complex64> {
    if k.is_nan() || k <= 0.0 {
        return Err(Error::NonPositiveArgument(k));
    }
    check_time(t)?;
    let detuning = k - params.omega0;
    let phase = Complex64::new(-params.gamma * t, detuning * t).exp();
    Ok(-k.powf(1.5) / Complex64::new(detuning, params.gamma) * (1.0 - phase))
}

/// Parameters plus the calibration constant `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayModel {
    pub params: DecayParams,
    /// `K`, stored as `K·ω₀³` to keep it O(Γ).
    scaled_calibration: f64,
}

impl DecayModel {
    pub fn new(params: DecayParams) -> Result<Self> {
        let norm = Self::cos_moment(&params, 0.0)?;
        Ok(Self { params, scaled_calibration: 1.0 / norm })
    }

    /// `∫_W (k/ω₀)³ cos(Δt) / (Δ² + Γ²) dk`.
    fn cos_moment(params: &DecayParams, t: f64) -> Result<f64> {
        let (lo, hi) = params.window();
        let (w0, g) = (params.omega0, params.gamma);
        let panel = if t > 0.0 { (0.25 * g).min(std::f64::consts::PI / t) } else { 0.25 * g };
        integrate_panels(
            |k| {
                let d = k - w0;
                (k / w0).powi(3) * (d * t).cos() / (d * d + g * g)
            },
            lo,
            hi,
            panel,
            ABS_TOL / g,
            REL_TOL,
        )
    }

    /// The calibration constant `K`.
    pub fn calibration(&self) -> f64 {
        self.scaled_calibration / self.params.omega0.powi(3)
    }

    pub fn excited_amplitude(&self, t: f64) -> Result<Complex64> {
        excited_amplitude(t, &self.params)
    }

    /// Calibrated `√K·B(k, t)`.
    pub fn photon_amplitude(&self, k: f64, t: f64) -> Result<Complex64> {
        Ok(raw_photon_amplitude(k, t, &self.params)? * self.calibration().sqrt())
    }

    /// `|C(t)|² + ∫ K|B(k, t)|² dk − 1`.
    ///
    /// Expanding `|1 − e^{iΔt−Γt}|² = 1 − 2e^{−Γt}cos Δt + e^{−2Γt}` and using
    /// the calibration leaves `2e^{−2Γt} − 2e^{−Γt} K∫k³cos(Δt)/(Δ²+Γ²) dk`,
    /// which avoids subtracting 1 from a quadrature result.
    pub fn norm_residual(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        let decay = (-self.params.gamma * t).exp();
        let overlap = self.scaled_calibration * Self::cos_moment(&self.params, t)?;
        Ok(2.0 * decay * decay - 2.0 * decay * overlap)
    }

    /// `⟨S_z(t)⟩/ħ = ⟨L_z(t)⟩/ħ = (1 − e^{−2Γt})/2`.
    pub fn sz_over_hbar(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(sz_over_hbar(t, self.params.gamma))
    }
}

/// Closed-form `(1 − e^{−2Γt})/2`.
pub fn sz_over_hbar(t: f64, gamma: f64) -> f64 {
    -0.5 * (-2.0 * gamma * t).exp_m1()
}

/// Calibrated `√K·B(k, t)`; calibrates on every call.
pub fn photon_amplitude(k: f64, t: f64, params: &DecayParams) -> Result<Complex64> {
    DecayModel::new(params.clone())?.photon_amplitude(k, t)
}

/// Probability-conservation residual at time `t` (0 at `t = 0`).
pub fn conservation_check(params: &DecayParams, t: f64) -> Result<f64> {
    DecayModel::new(params.clone())?.norm_residual(t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayCurve {
    pub t: Vec<f64>,
    /// `⟨S_z(t)⟩ = ⟨L_z(t)⟩` in units of ħ.
    pub sz_over_hbar: Vec<f64>,
    pub excited_pop: Vec<f64>,
    pub norm_residual: Vec<f64>,
}

pub const CSV_HEADER: &str = "t,sz_over_hbar,excited_pop,norm_residual";

impl DecayCurve {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.norm_residual.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{},{},{},{}",
                sig(self.t[i]),
                sig(self.sz_over_hbar[i]),
                sig(self.excited_pop[i]),
                sig(self.norm_residual[i])
            )?;
        }
        Ok(())
    }
}

pub fn sz_curve(params: &DecayParams) -> Result<DecayCurve> {
    sz_curve_with(params, Execution::default())
}

/// Evaluates the curve over the time grid; each time point is independent.
pub fn sz_curve_with(params: &DecayParams, exec: Execution) -> Result<DecayCurve> {
    let model = DecayModel::new(params.clone())?;
    let rows = exec.map_slice(params.time_grid(), |&t| -> Result<(f64, f64, f64)> {
        Ok((model.sz_over_hbar(t)?, model.excited_amplitude(t)?.norm_sqr(), model.norm_residual(t)?))
    });
    let mut curve = DecayCurve {
        t: params.time_grid().to_vec(),
        sz_over_hbar: Vec::with_capacity(rows.len()),
        excited_pop: Vec::with_capacity(rows.len()),
        norm_residual: Vec::with_capacity(rows.len()),
    };
    for row in rows {
        let (sz, pop, res) = row?;
        curve.sz_over_hbar.push(sz);
        curve.excited_pop.push(pop);
        curve.norm_residual.push(res);
    }
    Ok(curve)
}
