//! The three entanglement criteria and their closed-form oracles.
//!
//! (i) A negative conditional Tsallis entropy
//! `S_q(X|Y) = (S_q(X) - S_q(Y)) / (1 + (1-q) S_q(Y))` is sufficient for
//! entanglement; `S_q(rho) = (Tr rho^q - 1)/(1-q)` reduces to the von
//! Neumann entropy as q -> 1.
//!
//! (ii) For two qubits a negative eigenvalue of the partial transpose is
//! necessary and sufficient (Peres–Horodecki).
//!
//! (iii) The Wootters concurrence `C = max(l1 - l2 - l3 - l4, 0)` from
//! the square-root spectrum of `rho * rho_tilde`, plus the residual
//! 3-tangle reported both as `2(l1 l2 |AB| + l1 l2 |AC|)` and in the
//! Coffman–Kundu–Wootters form `4 det(rho_A) - C(AB)^2 - C(AC)^2`.
//!
//! For the parametric families the marginal spectra, partial-transpose
//! spectra, and concurrences all have closed forms; those are exposed
//! here as independent oracles for the numeric pipeline.

use num_complex::Complex64;

use crate::linalg::{
    hermitian_eigenvalues, pair_marginal, partial_trace, partial_trace_single,
    partial_transpose, spinflip_sqrt_spectrum, ComplexMatrix, DensityMatrix, PairLabel, PairSide,
    QubitLabel, Spectrum,
};
use crate::states::{family_support, Family, ParametricParams, PureState3};
use crate::{Result, TriqError};

/// Entanglement threshold on concurrences (values above are entangled).
pub const CONCURRENCE_EPS: f64 = 1e-9;
/// Entanglement threshold on partial-transpose eigenvalues (values below
/// are entangled).
pub const PPT_EPS: f64 = -1e-9;
/// Width of the Tsallis q-window treated as the von Neumann point.
const Q_ONE_WINDOW: f64 = 1e-8;
/// Density-matrix eigenvalues below this are round-off images of exact
/// zeros; powers with q < 1 would blow the residue up to sqrt scale, so
/// they are snapped to zero before exponentiation.
const EIG_ZERO_TOL: f64 = 1e-13;

/// Tsallis entropies of a joint state and one marginal, with the
/// conditional entropy built from them.
#[derive(Debug, Clone, Copy)]
pub struct TsallisResult {
    pub q: f64,
    pub entropy_joint: f64,
    pub entropy_marginal: f64,
    pub conditional: f64,
}

/// Tsallis entropy `(Tr rho^q - 1)/(1-q)` for q != 1, von Neumann
/// entropy (natural log) within 1e-8 of q = 1.
pub fn tsallis_entropy(rho: &DensityMatrix, q: f64) -> Result<f64> {
    if q.is_nan() || q <= 0.0 {
        return Err(TriqError::InvalidInput(format!(
            "Tsallis parameter must be positive, got {q}"
        )));
    }
    let spectrum = hermitian_eigenvalues(rho.matrix())?;
    let lambdas: Vec<f64> = spectrum
        .values()
        .iter()
        .map(|&l| if l <= EIG_ZERO_TOL { 0.0 } else { l.min(1.0) })
        .collect();
    if (q - 1.0).abs() <= Q_ONE_WINDOW {
        Ok(lambdas
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.ln())
            .sum())
    } else {
        let power_sum: f64 = lambdas.iter().map(|&l| l.powf(q)).sum();
        Ok((power_sum - 1.0) / (1.0 - q))
    }
}

/// Conditional Tsallis entropy of `joint` given `marginal`.
///
/// The caller supplies the marginal (it is not re-derived here). A
/// vanishing denominator is reported as an error rather than zeroed.
pub fn conditional_tsallis(
    joint: &DensityMatrix,
    marginal: &DensityMatrix,
    q: f64,
) -> Result<TsallisResult> {
    let entropy_joint = tsallis_entropy(joint, q)?;
    let entropy_marginal = tsallis_entropy(marginal, q)?;
    let denom = 1.0 + (1.0 - q) * entropy_marginal;
    if denom.abs() <= 1e-12 {
        return Err(TriqError::DegenerateDenominator(format!(
            "1 + (1-q) S_q(marginal) = {denom:.3e} at q = {q}"
        )));
    }
    Ok(TsallisResult {
        q,
        entropy_joint,
        entropy_marginal,
        conditional: (entropy_joint - entropy_marginal) / denom,
    })
}

/// Minimum eigenvalue of the partial transpose (second qubit) and the
/// entanglement verdict it implies.
pub fn ppt_test(rho_pair: &DensityMatrix) -> Result<(f64, bool)> {
    let pt = partial_transpose(rho_pair, PairSide::Second)?;
    let spectrum = hermitian_eigenvalues(&pt)?;
    let min = spectrum.min();
    Ok((min, min < PPT_EPS))
}

/// Concurrence, partial-transpose minimum, and the underlying
/// square-root spectrum for one two-qubit density matrix.
#[derive(Debug, Clone, Copy)]
pub struct PairEntanglement {
    pub concurrence: f64,
    pub ppt_min_eigenvalue: f64,
    pub sqrt_spectrum: [f64; 4],
}

impl PairEntanglement {
    pub fn entangled(&self) -> bool {
        self.concurrence > CONCURRENCE_EPS
    }
}

fn concurrence_from_sqrt(vals: &[f64]) -> f64 {
    (vals[0] - vals[1] - vals[2] - vals[3]).max(0.0)
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(rho_pair: &DensityMatrix) -> Result<PairEntanglement> {
    let spectrum = spinflip_sqrt_spectrum(rho_pair)?;
    let mut sqrt_spectrum = [0.0; 4];
    sqrt_spectrum.copy_from_slice(spectrum.values());
    let (ppt_min, _) = ppt_test(rho_pair)?;
    Ok(PairEntanglement {
        concurrence: concurrence_from_sqrt(&sqrt_spectrum),
        ppt_min_eigenvalue: ppt_min,
        sqrt_spectrum,
    })
}

/// The residual three-way entanglement, in both published forms.
#[derive(Debug, Clone, Copy)]
pub struct TangleResult {
    /// `2 (l1 l2 of AB + l1 l2 of AC)` with l1 >= l2 the two largest
    /// square-root-spectrum values (a tripartite pure-state marginal has
    /// at most two nonzero ones).
    pub tau_paper: f64,
    /// `4 det(rho_A) - C(AB)^2 - C(AC)^2`.
    pub tau_ckw: f64,
}

/// 3-tangle of a pure three-qubit state.
pub fn three_tangle(state: &PureState3) -> Result<TangleResult> {
    let rho = state.density();
    let rho_ab = partial_trace(&rho, QubitLabel::C)?;
    let rho_ac = partial_trace(&rho, QubitLabel::B)?;
    let sab = spinflip_sqrt_spectrum(&rho_ab)?;
    let sac = spinflip_sqrt_spectrum(&rho_ac)?;
    let tau_paper =
        2.0 * (sab.values()[0] * sab.values()[1] + sac.values()[0] * sac.values()[1]);

    let rho_a = partial_trace_single(&rho, QubitLabel::A)?;
    let m = rho_a.matrix();
    // det of the 2x2 marginal taken directly; exact for the CKW term.
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let c_ab = concurrence_from_sqrt(sab.values());
    let c_ac = concurrence_from_sqrt(sac.values());
    Ok(TangleResult {
        tau_paper,
        tau_ckw: 4.0 * det - c_ab * c_ab - c_ac * c_ac,
    })
}

/// Closed-form eigenvalues of every marginal of a family-I/II state.
#[derive(Debug, Clone)]
pub struct ClosedFormSpectra {
    pub rho_ab: Spectrum,
    pub rho_ac: Spectrum,
    pub rho_bc: Spectrum,
    pub rho_a: Spectrum,
    pub rho_b: Spectrum,
    pub rho_c: Spectrum,
}

fn require_pair_family(p: &ParametricParams) -> Result<(f64, f64, f64)> {
    match p.family {
        Family::I | Family::II => {
            let g = p.gamma.expect("families I/II carry gamma");
            Ok((p.alpha.norm_sqr(), p.beta.norm_sqr(), g.norm_sqr()))
        }
        Family::III => Err(TriqError::UnsupportedFamily(
            "family III has no closed forms here; use the numeric pipeline".into(),
        )),
    }
}

/// Marginal spectra for families I and II: the two-qubit marginals are
/// `(x, 1-x, 0, 0)` with x = |alpha|^2, |beta|^2, |gamma|^2 for AB, AC,
/// BC, and the one-qubit marginals `(y, 1-y)` with y = |gamma|^2,
/// |beta|^2, |alpha|^2 for A, B, C.
pub fn closed_form_marginal_spectra(p: &ParametricParams) -> Result<ClosedFormSpectra> {
    let (a2, b2, g2) = require_pair_family(p)?;
    let pair = |x: f64| Spectrum::from_unsorted(vec![x, 1.0 - x, 0.0, 0.0], 0.0);
    let single = |x: f64| Spectrum::from_unsorted(vec![x, 1.0 - x], 0.0);
    Ok(ClosedFormSpectra {
        rho_ab: pair(a2),
        rho_ac: pair(b2),
        rho_bc: pair(g2),
        rho_a: single(g2),
        rho_b: single(b2),
        rho_c: single(a2),
    })
}

/// Closed-form spectrum of the partially transposed pair marginal:
/// for AB it is `(|beta|^2, |gamma|^2, lambda+, lambda-)` with
/// `2 lambda+- = |alpha|^2 +- sqrt(|alpha|^4 + 4|beta|^2 |gamma|^2)`;
/// AC and BC follow by the role swaps alpha<->beta and beta<->gamma.
pub fn closed_form_ppt_spectrum(p: &ParametricParams, pair: PairLabel) -> Result<Spectrum> {
    let (a2, b2, g2) = require_pair_family(p)?;
    let (diag1, diag2, base, cross) = match pair {
        PairLabel::AB => (b2, g2, a2, b2 * g2),
        PairLabel::AC => (a2, g2, b2, a2 * g2),
        PairLabel::BC => (a2, b2, g2, a2 * b2),
    };
    let root = (base * base + 4.0 * cross).sqrt();
    let lp = 0.5 * (base + root);
    let lm = 0.5 * (base - root);
    Ok(Spectrum::from_unsorted(vec![diag1, diag2, lp, lm], 0.0))
}

/// Closed-form pair concurrences `(C_AB, C_AC, C_BC) =
/// (2|beta||gamma|, 2|alpha||gamma|, 2|alpha||beta|)`.
pub fn closed_form_concurrences(p: &ParametricParams) -> Result<[f64; 3]> {
    let (a2, b2, g2) = require_pair_family(p)?;
    let (a, b, g) = (a2.sqrt(), b2.sqrt(), g2.sqrt());
    Ok([2.0 * b * g, 2.0 * a * g, 2.0 * a * b])
}

/// Lewenstein–Sanpera split of the BC marginal into a separable part and
/// a pure entangled part.
#[derive(Debug, Clone)]
pub struct LewensteinDecomposition {
    /// Weight of the separable component, `|gamma|^2`.
    pub s_max: f64,
    /// The separable component (a pure product projector here).
    pub separable_part: DensityMatrix,
    /// Two-qubit amplitudes of the entangled component; absent in the
    /// degenerate |gamma| = 1 case.
    pub entangled_part: Option<[Complex64; 4]>,
    /// Concurrence of the BC marginal itself, `2|alpha||beta|`.
    pub concurrence_of_marginal: f64,
}

impl LewensteinDecomposition {
    /// `s_max + C(BC)`, the quantity bounded by 1.
    pub fn bound_sum(&self) -> f64 {
        self.s_max + self.concurrence_of_marginal
    }
}

/// Decomposes the BC marginal of a family-I state as
/// `|gamma|^2 |11><11| + (1 - |gamma|^2) |Psi><Psi|` with
/// `|Psi> = (alpha|10> + beta|01>) / sqrt(1 - |gamma|^2)`.
///
/// Family II follows by the global spin flip (separable part |00><00|,
/// `|Psi> = (alpha|01> + beta|10>) / sqrt(1 - |gamma|^2)`) and is
/// accepted as a convenience; family III is unsupported.
pub fn lewenstein_bc(p: &ParametricParams) -> Result<LewensteinDecomposition> {
    let (a2, b2, g2) = require_pair_family(p)?;
    let gamma = p.gamma.expect("families I/II carry gamma");
    let concurrence_of_marginal = 2.0 * a2.sqrt() * b2.sqrt();

    // Two-qubit (B, C) basis indices of the separable ket and of the
    // alpha/beta kets of |Psi>.
    let (sep_index, alpha_index, beta_index) = match p.family {
        Family::I => (3usize, 2usize, 1usize),  // |11>, |10>, |01>
        Family::II => (0usize, 1usize, 2usize), // |00>, |01>, |10>
        Family::III => unreachable!("rejected above"),
    };
    let mut sep = ComplexMatrix::zeros(4);
    sep[(sep_index, sep_index)] = Complex64::new(1.0, 0.0);
    let separable_part =
        DensityMatrix::new(sep).expect("basis projector is a density matrix");

    let rest = 1.0 - g2;
    let entangled_part = if rest <= 1e-12 {
        None
    } else {
        let scale = rest.sqrt();
        let mut psi = [Complex64::new(0.0, 0.0); 4];
        psi[alpha_index] = p.alpha / scale;
        psi[beta_index] = p.beta / scale;
        Some(psi)
    };
    let s_max = if entangled_part.is_none() {
        1.0
    } else {
        gamma.norm_sqr()
    };
    Ok(LewensteinDecomposition {
        s_max,
        separable_part,
        entangled_part,
        concurrence_of_marginal,
    })
}

/// Numeric marginal spectra of a parametric state, for checking the
/// closed forms.
pub fn numeric_marginal_spectra(state: &PureState3) -> Result<ClosedFormSpectra> {
    let rho = state.density();
    let pair = |traced| -> Result<Spectrum> {
        hermitian_eigenvalues(partial_trace(&rho, traced)?.matrix())
    };
    let single = |kept| -> Result<Spectrum> {
        hermitian_eigenvalues(partial_trace_single(&rho, kept)?.matrix())
    };
    Ok(ClosedFormSpectra {
        rho_ab: pair(QubitLabel::C)?,
        rho_ac: pair(QubitLabel::B)?,
        rho_bc: pair(QubitLabel::A)?,
        rho_a: single(QubitLabel::A)?,
        rho_b: single(QubitLabel::B)?,
        rho_c: single(QubitLabel::C)?,
    })
}

/// Numeric partial-transpose spectrum of one pair marginal.
pub fn numeric_ppt_spectrum(state: &PureState3, pair: PairLabel) -> Result<Spectrum> {
    let marg = partial_trace(&state.density(), pair.complement())?;
    hermitian_eigenvalues(&partial_transpose(&marg, PairSide::Second)?)
}

/// Reconstructs a family-I/II state's amplitudes as parameters when its
/// support lies inside one family pattern.
pub fn params_from_state(state: &PureState3) -> Option<ParametricParams> {
    for family in [Family::I, Family::II, Family::III] {
        let support = family_support(family);
        if state.support_within(support) {
            let amp = state.amplitudes();
            let gamma = if family == Family::III {
                None
            } else {
                Some(amp[support[2]])
            };
            return ParametricParams::new(family, amp[support[0]], amp[support[1]], gamma).ok();
        }
    }
    None
}

/// `S_q(XY|X)` and `S_q(XY|Y)` for one pair marginal of a tripartite
/// state, per Eq.-style cyclic conditioning on single qubits.
pub fn pair_conditionals(
    rho_pair: &DensityMatrix,
    q: f64,
) -> Result<(TsallisResult, TsallisResult)> {
    let first = pair_marginal(rho_pair, PairSide::First)?;
    let second = pair_marginal(rho_pair, PairSide::Second)?;
    Ok((
        conditional_tsallis(rho_pair, &first, q)?,
        conditional_tsallis(rho_pair, &second, q)?,
    ))
}
