//! Dense complex matrix kernel for dimensions up to 8.
//!
//! Everything the entanglement criteria need lives here: Kronecker
//! products, partial traces, partial transposes, a Jacobi
//! eigendecomposition for complex Hermitian matrices, fractional matrix
//! powers, and the square-root spectrum of the spin-flipped product
//! `rho * rho_tilde` that feeds the Wootters concurrence.
//!
//! Basis convention: a three-qubit basis ket |abc> maps to index
//! `4a + 2b + c`, with qubit A the most significant bit and bit value 1
//! meaning spin up. Two-qubit matrices use |xy> -> `2x + y` with the
//! first qubit of the pair most significant.

use num_complex::Complex64;

use crate::{Result, TriqError};

/// Hermiticity tolerance for [`DensityMatrix`] construction.
pub const DENSITY_HERM_TOL: f64 = 1e-12;
/// Unit-trace tolerance for [`DensityMatrix`] construction.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue a density matrix may carry (round-off band).
pub const DENSITY_PSD_TOL: f64 = -1e-10;
/// Hermiticity tolerance accepted by the eigensolver.
const EIG_HERM_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm target, scaled by the matrix norm.
const JACOBI_OFF_TOL: f64 = 1e-14;
/// Sweep cap for the Jacobi iteration.
const JACOBI_MAX_SWEEPS: usize = 200;
/// Eigenvalues of a density matrix below this are treated as exact zeros
/// when building the rank factor for the spin-flip spectrum.
const RANK_TOL: f64 = 1e-13;

/// One of the three qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitLabel {
    A,
    B,
    C,
}

impl QubitLabel {
    pub const ALL: [QubitLabel; 3] = [QubitLabel::A, QubitLabel::B, QubitLabel::C];

    /// Bit position of this qubit inside a basis index (A is the most
    /// significant bit).
    pub fn bit(self) -> usize {
        match self {
            QubitLabel::A => 2,
            QubitLabel::B => 1,
            QubitLabel::C => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            QubitLabel::A => "A",
            QubitLabel::B => "B",
            QubitLabel::C => "C",
        }
    }
}

impl std::fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// An unordered pair of qubits, in ascending label order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairLabel {
    AB,
    AC,
    BC,
}

impl PairLabel {
    pub const ALL: [PairLabel; 3] = [PairLabel::AB, PairLabel::AC, PairLabel::BC];

    /// The two member qubits, lower label first.
    pub fn qubits(self) -> (QubitLabel, QubitLabel) {
        match self {
            PairLabel::AB => (QubitLabel::A, QubitLabel::B),
            PairLabel::AC => (QubitLabel::A, QubitLabel::C),
            PairLabel::BC => (QubitLabel::B, QubitLabel::C),
        }
    }

    /// The qubit that is traced out to leave this pair.
    pub fn complement(self) -> QubitLabel {
        match self {
            PairLabel::AB => QubitLabel::C,
            PairLabel::AC => QubitLabel::B,
            PairLabel::BC => QubitLabel::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairLabel::AB => "AB",
            PairLabel::AC => "AC",
            PairLabel::BC => "BC",
        }
    }
}

impl std::fmt::Display for PairLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which qubit of a two-qubit matrix an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSide {
    First,
    Second,
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from row-major data, checking that every entry is
    /// finite.
    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(TriqError::InvalidInput(format!(
                "expected {dim}x{dim} entries, got {}",
                data.len()
            )));
        }
        let m = ComplexMatrix { dim, data };
        if !m.is_finite() {
            return Err(TriqError::InvalidInput(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> ComplexMatrix {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn conjugated(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self[(r, c)].conj())
    }

    pub fn transposed(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry, max |a_ij - conj(a_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in apply");
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product; block (i, j) of the result equals `a[i][j] * b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |r, c| {
        a[(r / nb, c / nb)] * b[(r % nb, c % nb)]
    })
}

pub fn pauli_x() -> ComplexMatrix {
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_data(2, vec![z, o, o, z]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_data(2, vec![z, -i, i, z]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_data(2, vec![o, z, z, -o]).unwrap()
}

/// The two-qubit spin-flip operator sigma_y (x) sigma_y.
pub fn sigma_y_pair() -> ComplexMatrix {
    tensor_product(&pauli_y(), &pauli_y())
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
///
/// Construction validates all three properties (Hermiticity within 1e-12,
/// trace within 1e-12 of one, smallest eigenvalue no lower than -1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(TriqError::InvalidInput(
                "density matrix entries must be finite".into(),
            ));
        }
        let herm = m.hermiticity_defect();
        if herm > DENSITY_HERM_TOL {
            return Err(TriqError::InvalidInput(format!(
                "density matrix is not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(TriqError::InvalidInput(format!(
                "density matrix trace {} is not 1",
                tr.re
            )));
        }
        let spectrum = hermitian_eigenvalues(&m)?;
        let min = spectrum.min();
        if min < DENSITY_PSD_TOL {
            return Err(TriqError::InvalidInput(format!(
                "density matrix is not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(DensityMatrix { m })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    imag_residue: f64,
}

impl Spectrum {
    /// Sorts the values descending; `imag_residue` records the largest
    /// imaginary part discarded when the values were extracted.
    pub fn from_unsorted(mut values: Vec<f64>, imag_residue: f64) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        Spectrum {
            values,
            imag_residue,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("spectrum is non-empty")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }
}

/// True when the two value lists agree pairwise after descending sort.
pub fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let sort = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|x, y| y.partial_cmp(x).expect("finite values"));
        v
    };
    sort(a)
        .iter()
        .zip(sort(b).iter())
        .all(|(x, y)| (x - y).abs() <= tol)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi
/// rotations. Returns the spectrum (descending) and a unitary whose
/// columns are the matching eigenvectors.
///
/// The input must be Hermitian within 1e-10; it is symmetrized before
/// iterating. Convergence target is an off-diagonal Frobenius norm of
/// 1e-14 relative to the matrix norm, with a cap of 200 sweeps.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    if !m.is_finite() {
        return Err(TriqError::InvalidInput(
            "eigensolver input must be finite".into(),
        ));
    }
    if m.hermiticity_defect() > EIG_HERM_TOL {
        return Err(TriqError::InvalidInput(format!(
            "eigensolver input is not Hermitian (defect {:.3e})",
            m.hermiticity_defect()
        )));
    }
    let n = m.dim();
    // Symmetrize away the sub-tolerance asymmetry.
    let mut a = ComplexMatrix::from_fn(n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b <= f64::MIN_POSITIVE {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / b;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                if t == 0.0 {
                    // tau overflowed; the rotation is numerically the
                    // identity and the entry is below round-off.
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- A R with R_pp = c, R_pq = s*phase,
                // R_qp = -s*conj(phase), R_qq = c.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * s * phase.conj();
                    a[(i, q)] = aip * s * phase + aiq * c;
                }
                // A <- R^dagger A.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * s * phase;
                    a[(q, j)] = apj * s * phase.conj() + aqj * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                // V <- V R.
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s * phase.conj();
                    v[(i, q)] = vip * s * phase + viq * c;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > tol {
        return Err(TriqError::NumericalFailure(format!(
            "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let imag_residue = order
        .iter()
        .map(|&i| a[(i, i)].im.abs())
        .fold(0.0, f64::max);
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok((
        Spectrum {
            values,
            imag_residue,
        },
        vectors,
    ))
}

/// Eigenvalues only; see [`hermitian_eig`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_eig(m).map(|(s, _)| s)
}

/// Marginal over two qubits of a three-qubit density matrix; the
/// remaining qubits keep ascending label order (AB, AC, or BC).
pub fn partial_trace(rho: &DensityMatrix, traced: QubitLabel) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(TriqError::InvalidInput(format!(
            "partial_trace expects an 8x8 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let tb = traced.bit();
    let (k1, k2) = match traced {
        QubitLabel::C => (2, 1),
        QubitLabel::B => (2, 0),
        QubitLabel::A => (1, 0),
    };
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(4, |r, c| {
        let (r1, r2) = (r >> 1, r & 1);
        let (c1, c2) = (c >> 1, c & 1);
        (0..2)
            .map(|t| {
                let ri = (r1 << k1) | (r2 << k2) | (t << tb);
                let ci = (c1 << k1) | (c2 << k2) | (t << tb);
                m[(ri, ci)]
            })
            .sum()
    });
    DensityMatrix::new(out)
}

/// Single-qubit marginal of a three-qubit density matrix.
pub fn partial_trace_single(rho: &DensityMatrix, kept: QubitLabel) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(TriqError::InvalidInput(format!(
            "partial_trace_single expects an 8x8 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let kb = kept.bit();
    let others: Vec<usize> = [2usize, 1, 0].iter().copied().filter(|&b| b != kb).collect();
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(2, |r, c| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t1 in 0..2usize {
            for t2 in 0..2usize {
                let ri = (r << kb) | (t1 << others[0]) | (t2 << others[1]);
                let ci = (c << kb) | (t1 << others[0]) | (t2 << others[1]);
                acc += m[(ri, ci)];
            }
        }
        acc
    });
    DensityMatrix::new(out)
}

/// Single-qubit marginal of a two-qubit density matrix.
pub fn pair_marginal(rho: &DensityMatrix, keep: PairSide) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(TriqError::InvalidInput(format!(
            "pair_marginal expects a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(2, |r, c| match keep {
        PairSide::First => (0..2).map(|t| m[(2 * r + t, 2 * c + t)]).sum(),
        PairSide::Second => (0..2).map(|t| m[(2 * t + r, 2 * t + c)]).sum(),
    });
    DensityMatrix::new(out)
}

/// Transposes the indices of one qubit of a two-qubit density matrix.
///
/// The result stays Hermitian with real eigenvalues but may fail to be
/// positive semidefinite; a negative eigenvalue is the entanglement
/// signal of the Peres–Horodecki criterion.
pub fn partial_transpose(rho: &DensityMatrix, side: PairSide) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(TriqError::InvalidInput(format!(
            "partial_transpose expects a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(4, |r, c| {
        let (a, x) = (r >> 1, r & 1);
        let (b, y) = (c >> 1, c & 1);
        match side {
            // out[(a,x),(b,y)] = rho[(a,y),(b,x)]
            PairSide::Second => m[(2 * a + y, 2 * b + x)],
            // out[(a,x),(b,y)] = rho[(b,x),(a,y)]
            PairSide::First => m[(2 * b + x, 2 * a + y)],
        }
    }))
}

/// `rho^q` through the eigendecomposition, with eigenvalues clamped to
/// [0, 1] before exponentiation and `0^q = 0`.
pub fn matrix_power(rho: &DensityMatrix, q: f64) -> Result<ComplexMatrix> {
    if q.is_nan() || q <= 0.0 {
        return Err(TriqError::InvalidInput(format!(
            "matrix power exponent must be positive, got {q}"
        )));
    }
    let (spectrum, v) = hermitian_eig(rho.matrix())?;
    if spectrum.min() < DENSITY_PSD_TOL {
        return Err(TriqError::NumericalFailure(format!(
            "matrix power input has eigenvalue {:.3e} below the PSD band",
            spectrum.min()
        )));
    }
    let n = rho.dim();
    let powered: Vec<f64> = spectrum
        .values()
        .iter()
        .map(|&lam| {
            // Round-off images of zero eigenvalues are snapped to zero;
            // q < 1 would otherwise lift them to sqrt scale.
            if lam <= RANK_TOL {
                0.0
            } else {
                lam.min(1.0).powf(q)
            }
        })
        .collect();
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        (0..n)
            .map(|k| v[(r, k)] * powered[k] * v[(c, k)].conj())
            .sum()
    }))
}

/// The spin-flipped matrix `(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`.
pub fn spinflip_matrix(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(TriqError::InvalidInput(format!(
            "spinflip expects a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let y = sigma_y_pair();
    Ok(&(&y * &rho.matrix().conjugated()) * &y)
}

/// Square roots of the eigenvalues of `rho * rho_tilde`, descending.
///
/// Computed as the singular values of the spin-flip overlap matrix
/// `tau = X^T (sigma_y (x) sigma_y) X` on the range factor `X` of
/// `rho = X X^dagger`: the nonzero eigenvalues of `rho * rho_tilde`
/// equal those of `tau^dagger tau` exactly, and this route keeps the
/// near-zero values at round-off scale instead of at the square root of
/// round-off. The result agrees with the eigenvalues of the Hermitian
/// matrix `sqrt_rho * rho_tilde * sqrt_rho` within 1e-9.
pub fn spinflip_sqrt_spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    if rho.dim() != 4 {
        return Err(TriqError::InvalidInput(format!(
            "spinflip expects a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let (spectrum, v) = hermitian_eig(rho.matrix())?;
    if spectrum.min() < DENSITY_PSD_TOL {
        return Err(TriqError::NumericalFailure(format!(
            "spin-flip input has eigenvalue {:.3e} below the PSD band",
            spectrum.min()
        )));
    }
    let cols: Vec<Vec<Complex64>> = spectrum
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &lam)| lam > RANK_TOL)
        .map(|(k, &lam)| {
            let w = lam.sqrt();
            (0..4).map(|r| v[(r, k)] * w).collect()
        })
        .collect();
    let r = cols.len();
    let mut sigmas = if r == 0 {
        Vec::new()
    } else {
        let y = sigma_y_pair();
        let mut tau = ComplexMatrix::zeros(r);
        for (i, xi) in cols.iter().enumerate() {
            let yxj: Vec<Vec<Complex64>> = cols.iter().map(|xj| y.apply(xj)).collect();
            for (j, yx) in yxj.iter().enumerate() {
                // transpose, not conjugate: tau_ij = x_i^T Y x_j
                tau[(i, j)] = xi.iter().zip(yx).map(|(a, b)| a * b).sum();
            }
        }
        singular_values(&tau)?
    };
    sigmas.resize(4, 0.0);
    Ok(Spectrum::from_unsorted(sigmas, spectrum.imag_residue()))
}

/// Singular values of a small complex matrix, descending.
fn singular_values(t: &ComplexMatrix) -> Result<Vec<f64>> {
    match t.dim() {
        1 => Ok(vec![t[(0, 0)].norm()]),
        2 => {
            // Cancellation-free 2x2 singular values from the Frobenius
            // norm and the determinant.
            let fro2 = (0..2)
                .flat_map(|r| (0..2).map(move |c| (r, c)))
                .map(|(r, c)| t[(r, c)].norm_sqr())
                .sum::<f64>();
            let det = (t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)]).norm();
            let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
            let s1 = (0.5 * (fro2 + disc)).sqrt();
            let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
            Ok(vec![s1, s2])
        }
        _ => {
            let gram = &t.adjoint() * t;
            let spec = hermitian_eigenvalues(&gram)?;
            Ok(spec.values().iter().map(|&l| l.max(0.0).sqrt()).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{canonical_state, CanonicalName, ParametricParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn tensor_product_identities() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = tensor_product(&i2, &i2);
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_product_sigma_y_pair_is_antidiagonal() {
        let y = sigma_y_pair();
        let expected = [
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ];
        for r in 0..4 {
            for c_ in 0..4 {
                assert!(close(y[(r, c_)].re, expected[r][c_], 1e-15));
                assert!(close(y[(r, c_)].im, 0.0, 1e-15));
            }
        }
    }

    #[test]
    fn tensor_product_projectors() {
        let mut p1 = ComplexMatrix::zeros(2);
        p1[(1, 1)] = c(1.0, 0.0);
        let mut p0 = ComplexMatrix::zeros(2);
        p0[(0, 0)] = c(1.0, 0.0);
        let t = tensor_product(&p1, &p0);
        for r in 0..4 {
            for c_ in 0..4 {
                let want = if (r, c_) == (2, 2) { 1.0 } else { 0.0 };
                assert!(close(t[(r, c_)].re, want, 1e-15));
            }
        }
    }

    #[test]
    fn partial_trace_product_state() {
        let rho = canonical_state(CanonicalName::Q1Plus).density(); // |111>
        let ab = partial_trace(&rho, QubitLabel::C).unwrap();
        for r in 0..4 {
            for c_ in 0..4 {
                let want = if (r, c_) == (3, 3) { 1.0 } else { 0.0 };
                assert!(close(ab.matrix()[(r, c_)].re, want, 1e-14));
            }
        }
    }

    #[test]
    fn partial_trace_wrr_spectrum() {
        // Marginal of the fully symmetric W-type state: (2/3, 1/3, 0, 0).
        let rho = canonical_state(CanonicalName::WRRPlus).density();
        let ab = partial_trace(&rho, QubitLabel::C).unwrap();
        let spec = hermitian_eigenvalues(ab.matrix()).unwrap();
        let want = [2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0];
        for (got, want) in spec.values().iter().zip(want.iter()) {
            assert!(close(*got, *want, 1e-12), "{got} vs {want}");
        }
    }

    #[test]
    fn partial_trace_ghz_marginal() {
        let rho = canonical_state(CanonicalName::GHZPlus).density();
        let ab = partial_trace(&rho, QubitLabel::C).unwrap();
        for r in 0..4 {
            for c_ in 0..4 {
                let want = if (r, c_) == (0, 0) || (r, c_) == (3, 3) {
                    0.5
                } else {
                    0.0
                };
                assert!(close(ab.matrix()[(r, c_)].re, want, 1e-14));
                assert!(close(ab.matrix()[(r, c_)].im, 0.0, 1e-14));
            }
        }
    }

    #[test]
    fn partial_trace_single_examples() {
        let rho = canonical_state(CanonicalName::Q1Plus).density();
        let a = partial_trace_single(&rho, QubitLabel::A).unwrap();
        assert!(close(a.matrix()[(1, 1)].re, 1.0, 1e-14));
        assert!(close(a.matrix()[(0, 0)].re, 0.0, 1e-14));

        // Family-I parametric state: rho_A eigenvalues (1-|gamma|^2, |gamma|^2).
        let p = ParametricParams::family_i(c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0)).unwrap();
        let rho = crate::states::parametric_state(&p).density();
        let a = partial_trace_single(&rho, QubitLabel::A).unwrap();
        let spec = hermitian_eigenvalues(a.matrix()).unwrap();
        let g2 = 0.64f64 * 0.64;
        assert!(close(spec.values()[0], 1.0 - g2, 1e-12));
        assert!(close(spec.values()[1], g2, 1e-12));

        let ghz = canonical_state(CanonicalName::GHZPlus).density();
        let b = partial_trace_single(&ghz, QubitLabel::B).unwrap();
        assert!(close(b.matrix()[(0, 0)].re, 0.5, 1e-14));
        assert!(close(b.matrix()[(1, 1)].re, 0.5, 1e-14));
        assert!(b.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn partial_transpose_examples() {
        // I/4 is a fixed point.
        let i4 = DensityMatrix::new(ComplexMatrix::identity(4).scaled(0.25)).unwrap();
        let pt = partial_transpose(&i4, PairSide::Second).unwrap();
        assert!(pt.max_abs_diff(i4.matrix()) < 1e-15);

        // Diagonal GHZ marginal is its own partial transpose.
        let ghz_ab = partial_trace(
            &canonical_state(CanonicalName::GHZPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let pt = partial_transpose(&ghz_ab, PairSide::Second).unwrap();
        let spec = hermitian_eigenvalues(&pt).unwrap();
        assert!(close(spec.values()[0], 0.5, 1e-12));
        assert!(close(spec.values()[1], 0.5, 1e-12));
        assert!(spec.min() >= -1e-12);

        // WRR marginal: eigenvalues (1/3, 1/3, (1 +/- sqrt(5))/6).
        let wrr_ab = partial_trace(
            &canonical_state(CanonicalName::WRRPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let pt = partial_transpose(&wrr_ab, PairSide::Second).unwrap();
        let spec = hermitian_eigenvalues(&pt).unwrap();
        let lp = (1.0 + 5.0f64.sqrt()) / 6.0;
        let lm = (1.0 - 5.0f64.sqrt()) / 6.0;
        assert!(multiset_close(
            spec.values(),
            &[1.0 / 3.0, 1.0 / 3.0, lp, lm],
            1e-12
        ));
    }

    #[test]
    fn partial_transpose_is_involution() {
        let rho = partial_trace(
            &canonical_state(CanonicalName::WRRPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let once = partial_transpose(&rho, PairSide::Second).unwrap();
        // Apply again through raw index shuffling (the intermediate may not
        // be a DensityMatrix, so transpose by hand).
        let twice = ComplexMatrix::from_fn(4, |r, c| {
            let (a, x) = (r >> 1, r & 1);
            let (b, y) = (c >> 1, c & 1);
            once[(2 * a + y, 2 * b + x)]
        });
        assert_eq!(twice, *rho.matrix());
    }

    #[test]
    fn eigenvalues_diagonal_and_pauli() {
        let mut d = ComplexMatrix::zeros(3);
        d[(0, 0)] = c(3.0, 0.0);
        d[(1, 1)] = c(1.0, 0.0);
        d[(2, 2)] = c(2.0, 0.0);
        let spec = hermitian_eigenvalues(&d).unwrap();
        assert_eq!(spec.values(), &[3.0, 2.0, 1.0]);

        let spec = hermitian_eigenvalues(&pauli_x()).unwrap();
        assert!(close(spec.values()[0], 1.0, 1e-14));
        assert!(close(spec.values()[1], -1.0, 1e-14));

        let spec = hermitian_eigenvalues(&pauli_y()).unwrap();
        assert!(close(spec.values()[0], 1.0, 1e-14));
        assert!(close(spec.values()[1], -1.0, 1e-14));
    }

    #[test]
    fn eigenvalues_wrr_small_marginal() {
        // rho_AB of the BC-symmetric doublet state: (5/6, 1/6, 0, 0).
        let rho = partial_trace(
            &canonical_state(CanonicalName::WRrPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let spec = hermitian_eigenvalues(rho.matrix()).unwrap();
        assert!(close(spec.values()[0], 5.0 / 6.0, 1e-12));
        assert!(close(spec.values()[1], 1.0 / 6.0, 1e-12));
        assert!(spec.values()[2].abs() < 1e-12);
        assert!(spec.values()[3].abs() < 1e-12);
    }

    #[test]
    fn eigen_reconstruction_residual() {
        // V Lambda V^dagger must reproduce the input to 1e-9.
        let rho = partial_trace(
            &canonical_state(CanonicalName::WRRPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let (spec, v) = hermitian_eig(rho.matrix()).unwrap();
        let rebuilt = ComplexMatrix::from_fn(4, |r, c_| {
            (0..4)
                .map(|k| v[(r, k)] * spec.values()[k] * v[(c_, k)].conj())
                .sum()
        });
        assert!(rebuilt.max_abs_diff(rho.matrix()) < 1e-9);
    }

    #[test]
    fn eigensolver_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(TriqError::InvalidInput(_))
        ));
    }

    #[test]
    fn matrix_power_examples() {
        let half = DensityMatrix::new(ComplexMatrix::identity(2).scaled(0.5)).unwrap();
        let sq = matrix_power(&half, 2.0).unwrap();
        assert!(sq.max_abs_diff(&ComplexMatrix::identity(2).scaled(0.25)) < 1e-14);

        // Eigenvalues (2/3, 1/3): trace of the square is 5/9.
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(2.0 / 3.0, 0.0);
        m[(1, 1)] = c(1.0 / 3.0, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        let sq = matrix_power(&rho, 2.0).unwrap();
        assert!(close(sq.trace().re, 5.0 / 9.0, 1e-14));

        // Identity exponent round-trips.
        let rho = partial_trace(
            &canonical_state(CanonicalName::WRRPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let p1 = matrix_power(&rho, 1.0).unwrap();
        assert!(p1.max_abs_diff(rho.matrix()) < 1e-10);

        assert!(matrix_power(&rho, 0.0).is_err());
        assert!(matrix_power(&rho, -1.0).is_err());
    }

    #[test]
    fn spinflip_family_i_rank_one() {
        // Family-I marginal: sqrt spectrum (2|beta||gamma|, 0, 0, 0).
        let p = ParametricParams::family_i(c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0)).unwrap();
        let rho = partial_trace(
            &crate::states::parametric_state(&p).density(),
            QubitLabel::C,
        )
        .unwrap();
        let spec = spinflip_sqrt_spectrum(&rho).unwrap();
        assert!(close(spec.values()[0], 2.0 * 0.48 * 0.64, 1e-12));
        for &v in &spec.values()[1..] {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn spinflip_ghz_marginal() {
        let rho = partial_trace(
            &canonical_state(CanonicalName::GHZPlus).density(),
            QubitLabel::C,
        )
        .unwrap();
        let spec = spinflip_sqrt_spectrum(&rho).unwrap();
        assert!(close(spec.values()[0], 0.5, 1e-12));
        assert!(close(spec.values()[1], 0.5, 1e-12));
        assert!(spec.values()[2].abs() < 1e-12);
        assert!(spec.values()[3].abs() < 1e-12);
    }

    #[test]
    fn spinflip_product_state_vanishes() {
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = c(1.0, 0.0); // |00><00|
        let rho = DensityMatrix::new(m).unwrap();
        let spec = spinflip_sqrt_spectrum(&rho).unwrap();
        for &v in spec.values() {
            assert!(v.abs() < 1e-14);
        }
    }

    #[test]
    fn spinflip_full_rank_mixture() {
        // Werner-like mixture keeps all four singular values active.
        let bell = {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let amps = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
            ComplexMatrix::from_fn(4, |r, c_| amps[r] * amps[c_].conj())
        };
        let mix = &bell.scaled(0.7) + &ComplexMatrix::identity(4).scaled(0.075);
        let rho = DensityMatrix::new(mix).unwrap();
        let spec = spinflip_sqrt_spectrum(&rho).unwrap();
        // Compare against the Hermitian route sqrt_rho * rho_tilde * sqrt_rho.
        let sqrt_rho = matrix_power(&rho, 0.5).unwrap();
        let herm = &(&sqrt_rho * &spinflip_matrix(&rho).unwrap()) * &sqrt_rho;
        let herm_spec = hermitian_eigenvalues(&herm).unwrap();
        let squared: Vec<f64> = spec.values().iter().map(|v| v * v).collect();
        assert!(multiset_close(&squared, herm_spec.values(), 1e-9));
    }

    #[test]
    fn spectrum_sums_match_trace() {
        let rho = canonical_state(CanonicalName::WRrMinus).density();
        let spec = hermitian_eigenvalues(rho.matrix()).unwrap();
        assert!(close(spec.sum(), 1.0, 1e-10));
    }

    #[test]
    fn density_matrix_rejects_bad_inputs() {
        // Trace != 1.
        let m = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(m).is_err());
        // Not PSD.
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(1.5, 0.0);
        m[(1, 1)] = c(-0.5, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        // Not Hermitian.
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_err());
    }
}
