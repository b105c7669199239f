//! Photon twins from the `j_e = 2, m_e = 0 → j_g = 0` transition.
//!
//! The two photons travel in opposite directions and are modeled as two
//! distinguishable three-mode families (`Forward`, `Backward`), so a pair
//! state is a 3×3 amplitude array over `(m₁, m₂)` in the order `+1, 0, −1`.
//! Total projection conservation leaves three pair states:
//!
//! ```text
//! ψ₁ = |1₀;1₀⟩
//! ψ₂ = (|1₊;1₋⟩ + |1₋;1₊⟩)/√2     (even)
//! ψ₃ = (|1₊;1₋⟩ − |1₋;1₊⟩)/√2     (odd)
//! ```
//!
//! Only the even states are radiated. The entanglement of
//! `c₁ψ₁ + c₂ψ₂` is measured by `μ = |c₁|·|c₂|²`.

use std::sync::Arc;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::Serialize;

use crate::angular_algebra::su3_generators_for;
use crate::fock_core::{
    annihilation, build_space, expectation, total_number, Direction, FockSpace, HilbertSpace, ModeLabel,
    OperatorMatrix, Projection, StateVector,
};
use crate::linalg::{self, CMatrix};
use crate::optimize::{argmax, golden_section_max_by};
use crate::{Error, Execution, Result, ALGEBRA_TOL};

/// Photons in the pair sector.
pub const PAIR_CUTOFF: usize = 2;
/// Grid resolution of the entanglement maximization.
pub const OPTIMIZER_GRID: usize = 10_000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized amplitudes over `|1_{m₁};1_{m₂}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQutritState {
    amps: Array2<Complex64>,
}

impl TwoQutritState {
    pub fn new(amps: Array2<Complex64>) -> Result<Self> {
        if amps.dim() != (3, 3) {
            return Err(Error::DimensionMismatch { expected: 9, got: amps.len() });
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    pub fn product(m1: Projection, m2: Projection) -> Self {
        let mut amps = Array2::zeros((3, 3));
        amps[[m1.index(), m2.index()]] = ONE;
        Self { amps }
    }

    pub fn amps(&self) -> &Array2<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, m1: Projection, m2: Projection) -> Complex64 {
        self.amps[[m1.index(), m2.index()]]
    }

    /// Exchanges the two photons.
    pub fn swapped(&self) -> Self {
        Self { amps: self.amps.t().to_owned() }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(other.amps.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// Eigenvalue of `J_z⁽¹⁾ + J_z⁽²⁾` if the state is an eigenvector.
    pub fn total_projection(&self) -> Option<i64> {
        let mut total = None;
        for m1 in Projection::ALL {
            for m2 in Projection::ALL {
                if self.amplitude(m1, m2).norm() > 0.0 {
                    let m = m1.value() + m2.value();
                    if total.is_some_and(|t| t != m) {
                        return None;
                    }
                    total = Some(m);
                }
            }
        }
        total
    }

    fn combination(terms: &[(Projection, Projection, f64)]) -> Self {
        let mut amps = Array2::zeros((3, 3));
        for &(m1, m2, c) in terms {
            amps[[m1.index(), m2.index()]] += Complex64::new(c, 0.0);
        }
        Self { amps }
    }
}

/// The even states `ψ₁`, `ψ₂` and the odd state `ψ₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBasis {
    pub psi1: TwoQutritState,
    pub psi2: TwoQutritState,
    pub psi3: TwoQutritState,
}

impl ParityBasis {
    pub fn states(&self) -> [&TwoQutritState; 3] {
        [&self.psi1, &self.psi2, &self.psi3]
    }
}

pub fn parity_basis() -> ParityBasis {
    use Projection::{Minus, Plus, Zero};
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ParityBasis {
        psi1: TwoQutritState::product(Zero, Zero),
        psi2: TwoQutritState::combination(&[(Plus, Minus, s), (Minus, Plus, s)]),
        psi3: TwoQutritState::combination(&[(Plus, Minus, s), (Minus, Plus, -s)]),
    }
}

/// `c₁ψ₁ + c₂ψ₂` with `|c₁|² + |c₂|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiatedState {
    c1: Complex64,
    c2: Complex64,
}

impl RadiatedState {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        let norm = (c1.norm_sqr() + c2.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { c1, c2 })
    }

    /// Real coefficients `(a, √(1 − a²))` for `a ∈ [0, 1]`.
    pub fn from_modulus(c1_abs: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c1_abs) {
            return Err(Error::NotNormalized(c1_abs));
        }
        Self::new(Complex64::new(c1_abs, 0.0), Complex64::new((1.0 - c1_abs * c1_abs).sqrt(), 0.0))
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn to_two_qutrit(&self) -> TwoQutritState {
        let b = parity_basis();
        TwoQutritState { amps: b.psi1.amps.mapv(|z| z * self.c1) + b.psi2.amps.mapv(|z| z * self.c2) }
    }
}

/// `μ = |c₁|·|c₂|²`.
pub fn entanglement_measure(state: &RadiatedState) -> f64 {
    state.c1.norm() * state.c2.norm_sqr()
}

/// Measure along the constraint curve `|c₁| = a`, `|c₂|² = 1 − a²`.
pub fn measure_on_curve(a: f64) -> f64 {
    a * (1.0 - a * a)
}

/// Sign-exact comparison of [`measure_on_curve`]:
/// `μ(x) − μ(y) = (x − y)(1 − x² − xy − y²)`.
fn measure_prefers(x: f64, y: f64) -> bool {
    (x - y) * (1.0 - x * x - x * y - y * y) > 0.0
}

/// Fock space of the two photon families, forward modes first.
pub fn pair_fock_space() -> Arc<FockSpace> {
    let modes: Vec<ModeLabel> =
        [Direction::Forward, Direction::Backward].iter().flat_map(|&d| ModeLabel::tagged_triple(d)).collect();
    build_space(&modes, PAIR_CUTOFF).expect("six distinct modes")
}

/// Places the pair amplitudes on `|1_{A,m₁} 1_{B,m₂}⟩`.
pub fn embed_pair(state: &TwoQutritState, space: &Arc<FockSpace>) -> Result<StateVector> {
    let mut amps = Array1::zeros(space.dim());
    for m1 in Projection::ALL {
        for m2 in Projection::ALL {
            let mut occ = vec![0; space.modes().len()];
            occ[space.mode_index(&ModeLabel::tagged(m1, Direction::Forward))?] += 1;
            occ[space.mode_index(&ModeLabel::tagged(m2, Direction::Backward))?] += 1;
            let i = space.index_of(&occ).ok_or(Error::OccupationExceedsCutoff { total: 2, cutoff: space.cutoff() })?;
            amps[i] = state.amplitude(m1, m2);
        }
    }
    StateVector::normalized(space, amps)
}

/// Expectations of the eight SU(3) generators on photon 1 followed by the
/// eight on photon 2.
pub fn local_expectations(state: &TwoQutritState) -> [f64; 16] {
    let space = pair_fock_space();
    let psi = embed_pair(state, &space).expect("normalized pair state embeds");
    let mut out = [0.0; 16];
    for (party, direction) in [Direction::Forward, Direction::Backward].into_iter().enumerate() {
        let set = su3_generators_for(&space, &ModeLabel::tagged_triple(direction)).expect("family modes exist");
        for (g, op) in set.generators().into_iter().enumerate() {
            out[8 * party + g] = expectation(&psi, op).expect("same space").re;
        }
    }
    out
}

pub fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Result of the entanglement maximization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementOptimum {
    pub c1_abs: f64,
    pub c2_abs: f64,
    pub mu_max: f64,
    pub local_expectation_max_abs: f64,
    pub variational_pass: bool,
}

/// Threshold on the local expectations at the optimum.
pub const VARIATIONAL_TOL: f64 = 1e-8;

pub fn maximize_entanglement() -> EntanglementOptimum {
    maximize_entanglement_with(Execution::default())
}

/// Maximizes `a(1 − a²)` over a 10⁴-point grid on `[0, 1]` and refines the
/// best cell by golden-section search with a cancellation-free comparison.
pub fn maximize_entanglement_with(exec: Execution) -> EntanglementOptimum {
    let a = grid_then_golden(exec, measure_on_curve, measure_prefers);
    let state = RadiatedState::from_modulus(a).expect("a in [0, 1]");
    let local = max_abs(&local_expectations(&state.to_two_qutrit()));
    EntanglementOptimum {
        c1_abs: a,
        c2_abs: state.c2.norm(),
        mu_max: entanglement_measure(&state),
        local_expectation_max_abs: local,
        variational_pass: local < VARIATIONAL_TOL,
    }
}

/// Maximizer of an arbitrary objective of `|c₁|` using plain value
/// comparisons.
pub fn maximize_modulus<F>(objective: F, exec: Execution) -> f64
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    grid_then_golden(exec, &objective, |x, y| objective(x) > objective(y))
}

fn grid_then_golden<F, P>(exec: Execution, objective: F, prefer: P) -> f64
where
    F: Fn(f64) -> f64 + Sync + Send,
    P: Fn(f64, f64) -> bool,
{
    let n = OPTIMIZER_GRID;
    let node = |i: usize| i as f64 / (n - 1) as f64;
    let values = exec.map(n, |i| objective(node(i)));
    let best = argmax(&values).expect("non-empty grid");
    let lo = node(best.saturating_sub(1));
    let hi = node((best + 1).min(n - 1));
    golden_section_max_by(lo, hi, 1e-15, prefer)
}

/// The `|c₁|` in `(0, 1)` where every local generator expectation vanishes,
/// found by bisection on `⟨n₊ − n₀⟩` of photon 1 along the constraint curve.
pub fn variational_root() -> f64 {
    let diag = |a: f64| local_expectations(&RadiatedState::from_modulus(a).expect("a in [0, 1]").to_two_qutrit())[0];
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    let f_lo = diag(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (diag(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AtomLevel {
    Excited,
    Ground,
}

impl AtomLevel {
    fn index(self) -> usize {
        match self {
            AtomLevel::Excited => 0,
            AtomLevel::Ground => 1,
        }
    }
}

/// Two-level atom `{e, g}` tensor the two-family photon Fock space. Basis
/// index is `atom · N + field`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomFieldSpace {
    field: Arc<FockSpace>,
}

impl HilbertSpace for AtomFieldSpace {
    fn dim(&self) -> usize {
        2 * self.field.dim()
    }
}

impl AtomFieldSpace {
    pub fn new() -> Arc<Self> {
        Arc::new(Self { field: pair_fock_space() })
    }

    pub fn field(&self) -> &Arc<FockSpace> {
        &self.field
    }

    /// `I_atom ⊗ A_field`.
    pub fn lift(self: &Arc<Self>, op: &OperatorMatrix) -> Result<OperatorMatrix<AtomFieldSpace>> {
        let mut id = Array2::zeros((2, 2));
        id[[0, 0]] = ONE;
        id[[1, 1]] = ONE;
        self.kron(&id, op.entries())
    }

    /// `R_ij ⊗ I_field` with `R_ij = |i⟩⟨j|`.
    pub fn atomic(self: &Arc<Self>, i: AtomLevel, j: AtomLevel) -> Result<OperatorMatrix<AtomFieldSpace>> {
        self.kron(&atomic_matrix(i, j), &linalg::identity(self.field.dim()))
    }

    fn kron(self: &Arc<Self>, atom: &CMatrix, field: &CMatrix) -> Result<OperatorMatrix<AtomFieldSpace>> {
        let n = self.field.dim();
        let mut e = Array2::zeros((2 * n, 2 * n));
        for ((ai, aj), &a) in atom.indexed_iter() {
            if a == ZERO {
                continue;
            }
            for ((fi, fj), &f) in field.indexed_iter() {
                e[[ai * n + fi, aj * n + fj]] = a * f;
            }
        }
        OperatorMatrix::new(self.clone(), e)
    }

    /// `|atom⟩ ⊗ |field⟩`.
    pub fn product_state(
        self: &Arc<Self>,
        atom: AtomLevel,
        field: &StateVector,
    ) -> Result<StateVector<AtomFieldSpace>> {
        let n = self.field.dim();
        if field.amplitudes().len() != n {
            return Err(Error::SpaceMismatch);
        }
        let mut amps = Array1::zeros(2 * n);
        amps.slice_mut(ndarray::s![atom.index() * n..(atom.index() + 1) * n]).assign(field.amplitudes());
        StateVector::normalized(self, amps)
    }

    /// `|e⟩ ⊗ |vac⟩`.
    pub fn excited_vacuum(self: &Arc<Self>) -> StateVector<AtomFieldSpace> {
        StateVector::basis_state(self, 0).expect("index 0 exists")
    }

    /// `|g⟩ ⊗ ψ` for a pair state.
    pub fn ground_with_pair(self: &Arc<Self>, pair: &TwoQutritState) -> Result<StateVector<AtomFieldSpace>> {
        self.product_state(AtomLevel::Ground, &embed_pair(pair, &self.field)?)
    }
}

fn atomic_matrix(i: AtomLevel, j: AtomLevel) -> CMatrix {
    let mut r = Array2::zeros((2, 2));
    r[[i.index(), j.index()]] = ONE;
    r
}

/// `Σ_m a_{fwd,m} a_{bwd,−m}`.
pub fn pair_annihilator(field: &Arc<FockSpace>) -> Result<OperatorMatrix> {
    let mut sum = OperatorMatrix::zeros(field);
    for m in Projection::ALL {
        let a = annihilation(field, &ModeLabel::tagged(m, Direction::Forward))?;
        let b = annihilation(field, &ModeLabel::tagged(m.opposite(), Direction::Backward))?;
        sum = sum.sum(&a.product(&b)?)?;
    }
    Ok(sum)
}

/// `H = ω Σ a⁺a + ω₀ R_ee + γ (R_eg Σ a_m a_{−m} + h.c.)`, pairs taken one
/// photon from each family.
pub fn interaction_hamiltonian(
    space: &Arc<AtomFieldSpace>,
    omega: f64,
    omega0: f64,
    gamma_coupling: f64,
) -> Result<OperatorMatrix<AtomFieldSpace>> {
    let field = space.field();
    let free = space.lift(&total_number(field))?.scaled_real(omega);
    let atom = space.atomic(AtomLevel::Excited, AtomLevel::Excited)?.scaled_real(omega0);
    let pairs = pair_annihilator(field)?;
    let absorb =
        space.atomic(AtomLevel::Excited, AtomLevel::Ground)?.product(&space.lift(&pairs)?)?.scaled_real(gamma_coupling);
    free.sum(&atom)?.sum(&absorb)?.sum(&absorb.adjoint())?.checked_hermitian(ALGEBRA_TOL)
}

/// `N_exc = R_ee + (total photon number)/2`.
pub fn excitation_number(space: &Arc<AtomFieldSpace>) -> Result<OperatorMatrix<AtomFieldSpace>> {
    space
        .atomic(AtomLevel::Excited, AtomLevel::Excited)?
        .sum(&space.lift(&total_number(space.field()))?.scaled_real(0.5))
}

/// Evidence that the odd pair state decouples from emission.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionRuleReport {
    /// `|⟨g⊗ψ₃|H|e⊗vac⟩|`.
    pub odd_coupling: f64,
    /// Norm of `H|e⊗vac⟩` projected on `g⊗{ψ₁, ψ₂}`.
    pub even_coupling: f64,
    /// `max |(H − 2ω)|g⊗ψ₃⟩|`.
    pub eigen_residual: f64,
    pub eigenvalue: f64,
    pub times: Vec<f64>,
    /// `|⟨g⊗ψ₃|e^{−iHt}|e⊗vac⟩|` at each time.
    pub odd_overlaps: Vec<f64>,
    /// `max |[H, N_exc]|`.
    pub excitation_commutator: f64,
    pub pass: bool,
}

pub const ODD_OVERLAP_TOL: f64 = 1e-10;

pub fn selection_rule_check(
    h: &OperatorMatrix<AtomFieldSpace>,
    omega: f64,
    times: &[f64],
) -> Result<SelectionRuleReport> {
    let space = h.space().clone();
    let basis = parity_basis();
    let odd = space.ground_with_pair(&basis.psi3)?;
    let initial = space.excited_vacuum();

    let applied = h.apply(&initial)?;
    let overlap = |s: &StateVector<AtomFieldSpace>, v: &ndarray::Array1<Complex64>| -> Complex64 {
        s.amplitudes().iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
    };
    let odd_coupling = overlap(&odd, &applied).norm();
    let mut even_sq = 0.0;
    for psi in [&basis.psi1, &basis.psi2] {
        even_sq += overlap(&space.ground_with_pair(psi)?, &applied).norm_sqr();
    }

    let h_odd = h.apply(&odd)?;
    let eigenvalue = overlap(&odd, &h_odd).re;
    let target = 2.0 * omega;
    let eigen_residual =
        h_odd.iter().zip(odd.amplitudes().iter()).map(|(hv, v)| (hv - v * target).norm()).fold(0.0, f64::max);

    let mut odd_overlaps = Vec::with_capacity(times.len());
    for &t in times {
        let generator = h.entries().mapv(|z| z * Complex64::new(0.0, -t));
        let evolved = linalg::expm(&generator)?.dot(initial.amplitudes());
        odd_overlaps.push(overlap(&odd, &evolved).norm());
    }

    let n_exc = excitation_number(&space)?;
    let excitation_commutator = crate::fock_core::commutator(h, &n_exc)?.max_abs();

    let pass = odd_coupling < ALGEBRA_TOL
        && eigen_residual < ALGEBRA_TOL
        && odd_overlaps.iter().all(|&o| o < ODD_OVERLAP_TOL)
        && excitation_commutator < ALGEBRA_TOL;
    Ok(SelectionRuleReport {
        odd_coupling,
        even_coupling: even_sq.sqrt(),
        eigen_residual,
        eigenvalue,
        times: times.to_vec(),
        odd_overlaps,
        excitation_commutator,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parity_basis_is_orthonormal() {
        let b = parity_basis();
        for (i, x) in b.states().iter().enumerate() {
            for (j, y) in b.states().iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((x.inner(y) - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
            assert_eq!(x.total_projection(), Some(0));
        }
    }

    #[test]
    fn exchange_parity() {
        let b = parity_basis();
        assert_eq!(b.psi1.swapped(), b.psi1);
        assert_eq!(b.psi2.swapped(), b.psi2);
        assert_eq!(b.psi3.swapped().amps(), &b.psi3.amps().mapv(|z| -z));
    }

    #[test]
    fn measure_values() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(entanglement_measure(&RadiatedState::new(c(1.0), c(0.0)).unwrap()), 0.0);
        assert_eq!(entanglement_measure(&RadiatedState::new(c(0.0), c(1.0)).unwrap()), 0.0);
        let s = RadiatedState::new(c(1.0 / 3f64.sqrt()), c((2.0f64 / 3.0).sqrt())).unwrap();
        assert_relative_eq!(entanglement_measure(&s), 2.0 / (3.0 * 3f64.sqrt()), max_relative = 1e-15);
        assert!(matches!(RadiatedState::new(c(1.0), c(1.0)), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn measure_ignores_phases() {
        let s = RadiatedState::new(Complex64::from_polar(0.6, 1.1), Complex64::from_polar(0.8, -2.3)).unwrap();
        assert_relative_eq!(entanglement_measure(&s), 0.6 * 0.64, max_relative = 1e-15);
    }

    #[test]
    fn odd_state_local_expectations() {
        // ψ3 never puts a photon in m = 0: each reduced state is diag(1/2, 0, 1/2).
        let e = local_expectations(&parity_basis().psi3);
        for party in [0, 8] {
            assert!((e[party] - 0.5).abs() < 1e-15);
            assert!((e[party + 1] + 0.5).abs() < 1e-15);
            assert!(max_abs(&e[party + 2..party + 8]) < 1e-15);
        }
    }

    #[test]
    fn product_like_state_has_polarized_diagonal() {
        let e = local_expectations(&RadiatedState::from_modulus(1.0).unwrap().to_two_qutrit());
        // <n+ - n0> = -1 and <n0 - n-> = +1 on each photon of |1_0;1_0>.
        assert_eq!(e[0], -1.0);
        assert_eq!(e[1], 1.0);
        assert_eq!(e[8], -1.0);
        assert_eq!(e[9], 1.0);
    }

    #[test]
    fn optimum() {
        let opt = maximize_entanglement();
        assert!((opt.c1_abs - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!((opt.c2_abs - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
        assert!(opt.variational_pass);
    }

    #[test]
    fn optimizer_is_execution_independent() {
        assert_eq!(maximize_entanglement_with(Execution::Sequential), maximize_entanglement_with(Execution::Parallel));
    }

    #[test]
    fn hamiltonian_structure() {
        let space = AtomFieldSpace::new();
        assert_eq!(space.dim(), 56);
        let h = interaction_hamiltonian(&space, 1.0, 2.0, 0.1).unwrap();
        assert!(h.is_hermitian(1e-12));
        let r = selection_rule_check(&h, 1.0, &[1.0, 10.0, 100.0]).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.even_coupling > 0.1);
        assert!((r.eigenvalue - 2.0).abs() < 1e-12);
    }

    #[test]
    fn emission_populates_even_states_in_optimal_ratio() {
        // H|e,vac> = γ|g>(|+,-> + |0,0> + |-,+>) = γ|g>(ψ1 + √2 ψ2)
        let space = AtomFieldSpace::new();
        let h = interaction_hamiltonian(&space, 1.0, 2.0, 1.0).unwrap();
        let out = h.apply(&space.excited_vacuum()).unwrap();
        let b = parity_basis();
        let proj = |psi: &TwoQutritState| {
            let s = space.ground_with_pair(psi).unwrap();
            s.amplitudes().iter().zip(out.iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>()
        };
        assert_relative_eq!(proj(&b.psi1).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(proj(&b.psi2).re, 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!(proj(&b.psi3).norm(), 0.0);
    }
}
