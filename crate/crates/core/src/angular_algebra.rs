//! Total angular momentum of an E1 photon and its SU(2)/SU(3) structure.
//!
//! The three modes `m = +1, 0, −1` of one wavenumber carry
//!
//! ```text
//! Jx = [a⁺₀(a₊ + a₋) + h.c.]/√2
//! Jy = i[a⁺₀(a₊ − a₋) − h.c.]/√2
//! Jz = a⁺₊a₊ − a⁺₋a₋
//! ```
//!
//! The spin and orbital density operators at radius `r` are the scalar
//! multiples `f_S(kr)·J` and `f_L(kr)·J`. They are kept as (scalar, triple)
//! pairs and only materialized when a commutator is checked.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::fock_core::{
    annihilation, build_space, commutator, creation, fock_state, number, variance, FockSpace, ModeLabel,
    OperatorMatrix, Projection, DEFAULT_CUTOFF,
};
use crate::radial_fields::RadialModel;
use crate::{Error, Result, ALGEBRA_TOL};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(Jx, Jy, Jz)` on a three-mode space.
#[derive(Debug, Clone)]
pub struct AmOperatorTriple {
    pub jx: OperatorMatrix,
    pub jy: OperatorMatrix,
    pub jz: OperatorMatrix,
}

impl AmOperatorTriple {
    pub fn components(&self) -> [&OperatorMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        self.jx.space()
    }

    /// `J² = Jx² + Jy² + Jz²`.
    pub fn squared(&self) -> Result<OperatorMatrix> {
        let [x, y, z] = self.components();
        x.product(x)?.sum(&y.product(y)?)?.sum(&z.product(z)?)
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().map(|j| j.max_abs()).fold(0.0, f64::max)
    }
}

/// Checks that `space` holds exactly the modes `m = +1, 0, −1` and returns
/// them in that order.
fn triple_labels(space: &FockSpace) -> Result<[ModeLabel; 3]> {
    let modes = space.modes();
    if modes.len() != 3 {
        return Err(Error::WrongModeSet);
    }
    let direction = modes[0].direction;
    let labels = Projection::ALL.map(|projection| ModeLabel { projection, direction });
    if labels.iter().all(|l| modes.contains(l)) {
        Ok(labels)
    } else {
        Err(Error::WrongModeSet)
    }
}

/// Angular momentum operators of a three-mode space.
pub fn j_operators(space: &Arc<FockSpace>) -> Result<AmOperatorTriple> {
    let labels = triple_labels(space)?;
    j_operators_for(space, &labels)
}

/// Angular momentum operators for the modes `labels = [m₊, m₀, m₋]` inside a
/// possibly larger space (e.g. one photon family of a pair).
pub fn j_operators_for(space: &Arc<FockSpace>, labels: &[ModeLabel; 3]) -> Result<AmOperatorTriple> {
    let [plus, zero, minus] = labels;
    let a_plus = annihilation(space, plus)?;
    let a_minus = annihilation(space, minus)?;
    let c_zero = creation(space, zero)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;

    let raise = c_zero.product(&a_plus.sum(&a_minus)?)?;
    let jx = raise.sum(&raise.adjoint())?.scaled_real(s).checked_hermitian(ALGEBRA_TOL)?;

    let twist = c_zero.product(&a_plus.difference(&a_minus)?)?;
    let jy = twist.difference(&twist.adjoint())?.scaled(I * s).checked_hermitian(ALGEBRA_TOL)?;

    let jz = number(space, plus)?.difference(&number(space, minus)?)?.checked_hermitian(ALGEBRA_TOL)?;
    Ok(AmOperatorTriple { jx, jy, jz })
}

/// Hermitian SU(3) generators with the cyclic convention `m − 1 = +1` for
/// `m = −1`. Every array is indexed by `m` in the order `+1, 0, −1`.
#[derive(Debug, Clone)]
pub struct Su3GeneratorSet {
    /// `a⁺_m a_m − a⁺_{m−1} a_{m−1}`; these three sum to zero.
    pub raw_diagonal: [OperatorMatrix; 3],
    /// `(a⁺_m a_{m−1} + h.c.)/2`.
    pub offdiag_real: [OperatorMatrix; 3],
    /// `(a⁺_m a_{m−1} − h.c.)/(2i)`.
    pub offdiag_imag: [OperatorMatrix; 3],
}

impl Su3GeneratorSet {
    /// The two independent diagonal generators.
    pub fn diagonal(&self) -> [&OperatorMatrix; 2] {
        [&self.raw_diagonal[0], &self.raw_diagonal[1]]
    }

    /// The eight generators: two diagonal, three real, three imaginary.
    pub fn generators(&self) -> [&OperatorMatrix; 8] {
        let [d0, d1] = self.diagonal();
        let [r0, r1, r2] = &self.offdiag_real;
        let [i0, i1, i2] = &self.offdiag_imag;
        [d0, d1, r0, r1, r2, i0, i1, i2]
    }
}

pub fn su3_generators(space: &Arc<FockSpace>) -> Result<Su3GeneratorSet> {
    let labels = triple_labels(space)?;
    su3_generators_for(space, &labels)
}

/// SU(3) generators for the modes `labels = [m₊, m₀, m₋]`.
pub fn su3_generators_for(space: &Arc<FockSpace>, labels: &[ModeLabel; 3]) -> Result<Su3GeneratorSet> {
    let label = |p: Projection| labels[p.index()];
    let mut raw = Vec::with_capacity(3);
    let mut re = Vec::with_capacity(3);
    let mut im = Vec::with_capacity(3);
    for m in Projection::ALL {
        let (this, prev) = (label(m), label(m.cyclic_pred()));
        raw.push(number(space, &this)?.difference(&number(space, &prev)?)?.checked_hermitian(ALGEBRA_TOL)?);
        let hop = creation(space, &this)?.product(&annihilation(space, &prev)?)?;
        re.push(hop.sum(&hop.adjoint())?.scaled_real(0.5).checked_hermitian(ALGEBRA_TOL)?);
        im.push(hop.difference(&hop.adjoint())?.scaled(-0.5 * I).checked_hermitian(ALGEBRA_TOL)?);
    }
    let arr = |v: Vec<OperatorMatrix>| -> [OperatorMatrix; 3] { v.try_into().expect("three generators") };
    Ok(Su3GeneratorSet { raw_diagonal: arr(raw), offdiag_real: arr(re), offdiag_imag: arr(im) })
}

/// Outcome of an operator identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub identity: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// All operators vanish, so the identity holds trivially.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

// (alpha, beta, gamma) cyclic.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

/// Max residual of `[J_α, J_β] − iJ_γ` over the three cyclic pairs, on the
/// truncation-safe subspace. A triple of zero operators is flagged
/// degenerate and does not pass.
pub fn verify_su2(triple: &AmOperatorTriple, tol: f64) -> AlgebraReport {
    let c = triple.components();
    let mut worst: f64 = 0.0;
    for (a, b, g) in CYCLIC {
        let residual = commutator(c[a], c[b])
            .and_then(|comm| comm.difference(&c[g].scaled(I)))
            .map(|r| r.restricted_safe().max_abs())
            .unwrap_or(f64::INFINITY);
        worst = worst.max(residual);
    }
    let degenerate = triple.max_abs() == 0.0;
    AlgebraReport {
        identity: "[J_a, J_b] = i eps_abc J_c".into(),
        max_residual: worst,
        tolerance: tol,
        pass: worst < tol && !degenerate,
        degenerate,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Spin,
    Oam,
}

impl DensityKind {
    fn symbol(self) -> &'static str {
        match self {
            DensityKind::Spin => "S",
            DensityKind::Oam => "L",
        }
    }
}

/// `S(r) = f_S(kr)·J` or `L(r) = f_L(kr)·J`.
#[derive(Debug, Clone, Copy)]
pub struct DensityOperator<'a> {
    pub kind: DensityKind,
    pub kr: f64,
    /// `f_S(kr)` or `f_L(kr)` in units of `ħ/V`.
    pub scale: f64,
    pub triple: &'a AmOperatorTriple,
}

impl<'a> DensityOperator<'a> {
    pub fn new(kind: DensityKind, kr: f64, model: &RadialModel, triple: &'a AmOperatorTriple) -> Result<Self> {
        let scale = match kind {
            DensityKind::Spin => model.f_spin(kr)?,
            DensityKind::Oam => model.f_oam(kr)?,
        };
        Ok(Self { kind, kr, scale, triple })
    }

    /// Component `axis ∈ {0, 1, 2}` as a matrix.
    pub fn component(&self, axis: usize) -> OperatorMatrix {
        self.triple.components()[axis].scaled_real(self.scale)
    }
}

/// Checks `[A_α(r), B_β(r)] = iε_{αβγ} f_A(kr) B_γ(r)` for every cyclic
/// triple, where `A, B ∈ {S, L}`. The residual is relative to
/// `|f_A f_B|·max|J|` (absolute when that scale vanishes).
pub fn density_commutator_check(
    kind_a: DensityKind,
    kind_b: DensityKind,
    kr: f64,
    model: &RadialModel,
    triple: &AmOperatorTriple,
    tol: f64,
) -> Result<AlgebraReport> {
    if kr < 0.0 {
        return Err(Error::NegativeArgument(kr));
    }
    let a = DensityOperator::new(kind_a, kr, model, triple)?;
    let b = DensityOperator::new(kind_b, kr, model, triple)?;
    let mut worst: f64 = 0.0;
    for (x, y, z) in CYCLIC {
        let lhs = commutator(&a.component(x), &b.component(y))?;
        let rhs = b.component(z).scaled(I * a.scale);
        worst = worst.max(lhs.difference(&rhs)?.restricted_safe().max_abs());
    }
    let scale = (a.scale * b.scale).abs() * triple.max_abs();
    let residual = if scale > 0.0 { worst / scale } else { worst };
    let (sa, sb) = (kind_a.symbol(), kind_b.symbol());
    Ok(AlgebraReport {
        identity: format!("[{sa}_a(r), {sb}_b(r)] = i eps_abc f_{sa} {sb}_c(r) at kr={kr}"),
        max_residual: residual,
        tolerance: tol,
        pass: residual < tol,
        degenerate: false,
    })
}

/// Transverse and longitudinal AM variances in a single-photon Fock state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmVariances {
    #[serde(rename = "varJx")]
    pub var_jx: f64,
    #[serde(rename = "varJy")]
    pub var_jy: f64,
    #[serde(rename = "varJz")]
    pub var_jz: f64,
}

/// Variances of `Jx, Jy, Jz` in `|1_m⟩`, dimensionless (units of ħ²).
pub fn am_variances(m: i64) -> Result<AmVariances> {
    let projection = Projection::from_value(m)?;
    let space = build_space(&ModeLabel::triple(), DEFAULT_CUTOFF)?;
    let j = j_operators(&space)?;
    let state = fock_state(&space, &[(ModeLabel::new(projection), 1)])?;
    Ok(AmVariances {
        var_jx: variance(&state, &j.jx)?,
        var_jy: variance(&state, &j.jy)?,
        var_jz: variance(&state, &j.jz)?,
    })
}
