//! Truncated multimode bosonic Fock space.
//!
//! A [`FockSpace`] enumerates every occupation tuple whose total photon number
//! does not exceed a cutoff, in lexicographic order (the vacuum is always
//! basis index 0). Ladder operators are dense complex matrices on that basis.
//! Creation operators map states at the cutoff to zero, so identities such as
//! `[a, a⁺] = 1` only hold on the *safe* subspace of total occupation
//! `≤ cutoff − 1`; see [`OperatorMatrix::restricted`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::linalg::{self, CMatrix, CVector};
use crate::{Error, Result, ALGEBRA_TOL};

/// Default total-occupation cutoff: two photons plus one ladder step.
pub const DEFAULT_CUTOFF: usize = 3;

/// Angular momentum projection of an E1 photon mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projection {
    Plus,
    Zero,
    Minus,
}

impl Projection {
    /// Canonical ordering `+1, 0, −1` used for every qutrit index.
    pub const ALL: [Projection; 3] = [Projection::Plus, Projection::Zero, Projection::Minus];

    pub fn value(self) -> i64 {
        match self {
            Projection::Plus => 1,
            Projection::Zero => 0,
            Projection::Minus => -1,
        }
    }

    pub fn from_value(m: i64) -> Result<Self> {
        match m {
            1 => Ok(Projection::Plus),
            0 => Ok(Projection::Zero),
            -1 => Ok(Projection::Minus),
            other => Err(Error::InvalidProjection(other)),
        }
    }

    /// Position in [`Projection::ALL`].
    pub fn index(self) -> usize {
        match self {
            Projection::Plus => 0,
            Projection::Zero => 1,
            Projection::Minus => 2,
        }
    }

    /// Cyclic predecessor `m − 1`, with `−1 − 1 = +1`.
    pub fn cyclic_pred(self) -> Self {
        match self {
            Projection::Plus => Projection::Zero,
            Projection::Zero => Projection::Minus,
            Projection::Minus => Projection::Plus,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Projection::Plus => Projection::Minus,
            Projection::Zero => Projection::Zero,
            Projection::Minus => Projection::Plus,
        }
    }
}

/// Propagation direction tag separating the two photons of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    pub projection: Projection,
    pub direction: Option<Direction>,
}

impl ModeLabel {
    pub const fn new(projection: Projection) -> Self {
        Self { projection, direction: None }
    }

    pub const fn tagged(projection: Projection, direction: Direction) -> Self {
        Self { projection, direction: Some(direction) }
    }

    /// The untagged triple `m = +1, 0, −1`.
    pub fn triple() -> [ModeLabel; 3] {
        Projection::ALL.map(ModeLabel::new)
    }

    /// The triple `m = +1, 0, −1` of one propagation direction.
    pub fn tagged_triple(direction: Direction) -> [ModeLabel; 3] {
        Projection::ALL.map(|p| ModeLabel::tagged(p, direction))
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.projection {
            Projection::Plus => write!(f, "m=+1")?,
            Projection::Zero => write!(f, "m=0")?,
            Projection::Minus => write!(f, "m=-1")?,
        }
        match self.direction {
            Some(Direction::Forward) => write!(f, "/fwd"),
            Some(Direction::Backward) => write!(f, "/bwd"),
            None => Ok(()),
        }
    }
}

/// Anything with a finite orthonormal basis that operators and states can
/// live on.
pub trait HilbertSpace: fmt::Debug + PartialEq + Send + Sync {
    fn dim(&self) -> usize;
}

/// Occupation-number basis for labeled bosonic modes with a total cutoff.
#[derive(Debug, Clone)]
pub struct FockSpace {
    modes: Vec<ModeLabel>,
    cutoff: usize,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.modes == other.modes && self.cutoff == other.cutoff
    }
}

impl HilbertSpace for FockSpace {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl FockSpace {
    pub fn new(modes: Vec<ModeLabel>, cutoff: usize) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::EmptyModes);
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::DuplicateMode(m.to_string()));
            }
        }
        let mut basis = Vec::new();
        let mut current = vec![0; modes.len()];
        enumerate(&mut current, 0, cutoff, &mut basis);
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(Self { modes, cutoff, basis, index })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn occupation(&self, i: usize) -> &[usize] {
        &self.basis[i]
    }

    pub fn total_occupation(&self, i: usize) -> usize {
        self.basis[i].iter().sum()
    }

    pub fn index_of(&self, occupation: &[usize]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub fn mode_index(&self, mode: &ModeLabel) -> Result<usize> {
        self.modes.iter().position(|m| m == mode).ok_or_else(|| Error::UnknownMode(mode.to_string()))
    }
}

// Lexicographic: earlier modes vary slowest.
fn enumerate(current: &mut Vec<usize>, pos: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    for n in 0..=remaining {
        current[pos] = n;
        enumerate(current, pos + 1, remaining - n, out);
    }
    current[pos] = 0;
}

/// Builds a shared Fock space.
pub fn build_space(modes: &[ModeLabel], cutoff: usize) -> Result<Arc<FockSpace>> {
    FockSpace::new(modes.to_vec(), cutoff).map(Arc::new)
}

fn same_space<S: HilbertSpace>(a: &Arc<S>, b: &Arc<S>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Dense complex matrix acting on the basis of a [`HilbertSpace`].
#[derive(Debug, Clone)]
pub struct OperatorMatrix<S: HilbertSpace = FockSpace> {
    space: Arc<S>,
    entries: CMatrix,
    hermitian: bool,
}

impl<S: HilbertSpace> OperatorMatrix<S> {
    pub fn new(space: Arc<S>, entries: CMatrix) -> Result<Self> {
        let n = space.dim();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: entries.nrows().max(entries.ncols()) });
        }
        Ok(Self { space, entries, hermitian: false })
    }

    pub fn zeros(space: &Arc<S>) -> Self {
        let n = space.dim();
        Self { space: space.clone(), entries: Array2::zeros((n, n)), hermitian: true }
    }

    pub fn identity(space: &Arc<S>) -> Self {
        Self { space: space.clone(), entries: linalg::identity(space.dim()), hermitian: true }
    }

    pub fn space(&self) -> &Arc<S> {
        &self.space
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Whether hermiticity has been verified via [`Self::checked_hermitian`].
    pub fn is_marked_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Largest entrywise deviation from `A = A⁺`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Sets the hermiticity flag after verifying it entrywise.
    pub fn checked_hermitian(mut self, tol: f64) -> Result<Self> {
        let dev = self.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space.clone(), entries: linalg::adjoint(&self.entries), hermitian: self.hermitian }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn derived(&self, entries: CMatrix) -> Self {
        Self { space: self.space.clone(), entries, hermitian: false }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(self.entries.dot(&other.entries)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { hermitian: self.hermitian && other.hermitian, ..self.derived(&self.entries + &other.entries) })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { hermitian: self.hermitian && other.hermitian, ..self.derived(&self.entries - &other.entries) })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let keeps = self.hermitian && factor.im == 0.0;
        Self { hermitian: keeps, ..self.derived(self.entries.mapv(|z| z * factor)) }
    }

    pub fn scaled_real(&self, factor: f64) -> Self {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// Raw matrix-vector product (the result is generally not normalized).
    pub fn apply(&self, state: &StateVector<S>) -> Result<CVector> {
        if !same_space(&self.space, &state.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.entries.dot(&state.amplitudes))
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check(other)?;
        Ok(linalg::max_abs(&(&self.entries - &other.entries)))
    }
}

impl OperatorMatrix<FockSpace> {
    /// `P A P` where `P` projects onto basis states with total occupation
    /// `≤ max_total`.
    pub fn restricted(&self, max_total: usize) -> Self {
        let keep: Vec<bool> = (0..self.dim()).map(|i| self.space.total_occupation(i) <= max_total).collect();
        let mut e = self.entries.clone();
        for ((i, j), z) in e.indexed_iter_mut() {
            if !(keep[i] && keep[j]) {
                *z = Complex64::new(0.0, 0.0);
            }
        }
        Self { space: self.space.clone(), entries: e, hermitian: self.hermitian }
    }

    /// Restriction to the truncation-safe subspace (total `≤ cutoff − 1`).
    pub fn restricted_safe(&self) -> Self {
        self.restricted(self.space.cutoff().saturating_sub(1))
    }
}

/// `a_m`: ⟨…, n−1, …| a |…, n, …⟩ = √n.
pub fn annihilation(space: &Arc<FockSpace>, mode: &ModeLabel) -> Result<OperatorMatrix> {
    let k = space.mode_index(mode)?;
    let n = space.dim();
    let mut e = Array2::zeros((n, n));
    for (j, occ) in space.basis().iter().enumerate() {
        if occ[k] == 0 {
            continue;
        }
        let mut lowered = occ.clone();
        lowered[k] -= 1;
        let i = space.index_of(&lowered).expect("lowered tuple is in the basis");
        e[[i, j]] = Complex64::new((occ[k] as f64).sqrt(), 0.0);
    }
    OperatorMatrix::new(space.clone(), e)
}

/// `a⁺_m`, the exact conjugate transpose of [`annihilation`]. States at the
/// cutoff are mapped to zero.
pub fn creation(space: &Arc<FockSpace>, mode: &ModeLabel) -> Result<OperatorMatrix> {
    Ok(annihilation(space, mode)?.adjoint())
}

/// `n_m = a⁺_m a_m`, diagonal with integer eigenvalues.
pub fn number(space: &Arc<FockSpace>, mode: &ModeLabel) -> Result<OperatorMatrix> {
    let k = space.mode_index(mode)?;
    let diag: Array1<Complex64> = space.basis().iter().map(|occ| Complex64::new(occ[k] as f64, 0.0)).collect();
    OperatorMatrix::new(space.clone(), Array2::from_diag(&diag))?.checked_hermitian(0.0)
}

/// Total photon number summed over every mode.
pub fn total_number(space: &Arc<FockSpace>) -> OperatorMatrix {
    let diag: Array1<Complex64> =
        (0..space.dim()).map(|i| Complex64::new(space.total_occupation(i) as f64, 0.0)).collect();
    OperatorMatrix { space: space.clone(), entries: Array2::from_diag(&diag), hermitian: true }
}

/// `AB − BA`.
pub fn commutator<S: HilbertSpace>(a: &OperatorMatrix<S>, b: &OperatorMatrix<S>) -> Result<OperatorMatrix<S>> {
    a.product(b)?.difference(&b.product(a)?)
}

/// Unit-norm vector on a [`HilbertSpace`].
#[derive(Debug, Clone)]
pub struct StateVector<S: HilbertSpace = FockSpace> {
    space: Arc<S>,
    amplitudes: CVector,
}

impl<S: HilbertSpace> StateVector<S> {
    /// Normalizes `amplitudes`.
    pub fn from_amplitudes(space: &Arc<S>, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), got: amplitudes.len() });
        }
        let norm = vector_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { space: space.clone(), amplitudes: amplitudes.mapv(|z| z / norm) })
    }

    /// Accepts `amplitudes` only if already normalized within 1e−12.
    pub fn normalized(space: &Arc<S>, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), got: amplitudes.len() });
        }
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { space: space.clone(), amplitudes })
    }

    pub fn basis_state(space: &Arc<S>, index: usize) -> Result<Self> {
        let n = space.dim();
        if index >= n {
            return Err(Error::DimensionMismatch { expected: n, got: index });
        }
        let mut amps = Array1::zeros(n);
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { space: space.clone(), amplitudes: amps })
    }

    pub fn space(&self) -> &Arc<S> {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.iter().zip(other.amplitudes.iter()).map(|(a, b)| a.conj() * b).sum())
    }
}

fn vector_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit vector at the given occupations (unlisted modes are empty).
pub fn fock_state(space: &Arc<FockSpace>, occupations: &[(ModeLabel, usize)]) -> Result<StateVector> {
    let mut occ = vec![0; space.modes().len()];
    for (mode, n) in occupations {
        occ[space.mode_index(mode)?] += n;
    }
    let total: usize = occ.iter().sum();
    if total > space.cutoff() {
        return Err(Error::OccupationExceedsCutoff { total, cutoff: space.cutoff() });
    }
    let i = space.index_of(&occ).expect("tuple within cutoff is enumerated");
    StateVector::basis_state(space, i)
}

pub fn vacuum(space: &Arc<FockSpace>) -> StateVector {
    StateVector::basis_state(space, 0).expect("vacuum is basis index 0")
}

/// `⟨ψ|A|ψ⟩`.
pub fn expectation<S: HilbertSpace>(state: &StateVector<S>, op: &OperatorMatrix<S>) -> Result<Complex64> {
    let applied = op.apply(state)?;
    Ok(state.amplitudes.iter().zip(applied.iter()).map(|(a, b)| a.conj() * b).sum())
}

/// `⟨A²⟩ − ⟨A⟩²` for hermitian `A`, clamped at zero.
pub fn variance<S: HilbertSpace>(state: &StateVector<S>, op: &OperatorMatrix<S>) -> Result<f64> {
    let dev = op.hermiticity_deviation();
    if dev > ALGEBRA_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let mean = expectation(state, op)?.re;
    let applied = op.apply(state)?;
    let second: f64 = applied.iter().map(|z| z.norm_sqr()).sum();
    Ok((second - mean * mean).max(0.0))
}
