//! Canonical three-qubit states and their permutation symmetries.
//!
//! Three spin-1/2 particles compose into one quartet (total spin 3/2)
//! and two doublets (total spin 1/2). The quartet states |Q1+-> and
//! |Q2+-> are symmetric under every pair exchange; doublet 1 is
//! symmetric and doublet 2 anti-symmetric under exchange of B and C.
//! Recombining the two single-ket quartet states gives |GHZ+->, and the
//! remaining states are relabeled by their robustness pattern:
//! |GFR+-> = |D2+->, |WRR+-> = |Q2+->, |WRr+-> = |D1+->.
//!
//! Three parametric families cover all eight states:
//! family I is `alpha|110> + beta|101> + gamma|011>`, family II its
//! global spin flip `alpha|001> + beta|010> + gamma|100>`, and family
//! III `alpha|111> + beta|000>`. (The source text prints family II with
//! the same kets as family I; the spin-flipped kets are the unique
//! reading under which its stated parameter choices reproduce the
//! "minus" states, so that is what this module implements.)

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, DensityMatrix, PairLabel};
use crate::{Result, TriqError};

/// Squared-norm tolerance for normalized states.
pub const NORM_TOL: f64 = 1e-12;
/// Vector 2-norm tolerance deciding symmetric/anti-symmetric tags.
pub const SYMMETRY_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Normalized pure state of three qubits over the computational basis,
/// indexed by |abc> -> 4a + 2b + c.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState3 {
    amp: [Complex64; 8],
}

impl PureState3 {
    /// Wraps an amplitude vector that is already normalized within 1e-12.
    pub fn new(amp: [Complex64; 8]) -> Result<Self> {
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TriqError::InvalidInput(
                "state amplitudes must be finite".into(),
            ));
        }
        let norm_sqr: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(TriqError::InvalidInput(format!(
                "state is not normalized (|norm^2 - 1| = {:.3e})",
                (norm_sqr - 1.0).abs()
            )));
        }
        Ok(PureState3 { amp })
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn normalized(amp: [Complex64; 8]) -> Result<Self> {
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TriqError::InvalidInput(
                "state amplitudes must be finite".into(),
            ));
        }
        let norm: f64 = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-12 {
            return Err(TriqError::InvalidInput(
                "cannot normalize the zero vector".into(),
            ));
        }
        let mut amp = amp;
        for z in &mut amp {
            *z /= norm;
        }
        Ok(PureState3 { amp })
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amp
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &PureState3) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |<self|other>|, the phase-insensitive overlap.
    pub fn overlap(&self, other: &PureState3) -> f64 {
        self.inner(other).norm()
    }

    /// Rank-1 projector |psi><psi|.
    pub fn density(&self) -> DensityMatrix {
        let m = ComplexMatrix::from_fn(8, |r, c| self.amp[r] * self.amp[c].conj());
        DensityMatrix::new(m).expect("projector of a normalized state is a density matrix")
    }

    /// True when every amplitude outside `support` is below 1e-12.
    pub fn support_within(&self, support: &[usize]) -> bool {
        self.amp
            .iter()
            .enumerate()
            .all(|(i, z)| support.contains(&i) || z.norm() <= 1e-12)
    }
}

/// Tags for the sixteen named states.
///
/// `WRR` and `WRr` differ only in the case of the final letter, exactly
/// as in the physics nomenclature: RR marks robustness to the loss of
/// any qubit, Rr reduced robustness for one of the pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum CanonicalName {
    Q1Plus,
    Q1Minus,
    Q2Plus,
    Q2Minus,
    D1Plus,
    D1Minus,
    D2Plus,
    D2Minus,
    GHZPlus,
    GHZMinus,
    GFRPlus,
    GFRMinus,
    WRRPlus,
    WRRMinus,
    WRrPlus,
    WRrMinus,
}

impl CanonicalName {
    pub const ALL: [CanonicalName; 16] = [
        CanonicalName::Q1Plus,
        CanonicalName::Q1Minus,
        CanonicalName::Q2Plus,
        CanonicalName::Q2Minus,
        CanonicalName::D1Plus,
        CanonicalName::D1Minus,
        CanonicalName::D2Plus,
        CanonicalName::D2Minus,
        CanonicalName::GHZPlus,
        CanonicalName::GHZMinus,
        CanonicalName::GFRPlus,
        CanonicalName::GFRMinus,
        CanonicalName::WRRPlus,
        CanonicalName::WRRMinus,
        CanonicalName::WRrPlus,
        CanonicalName::WRrMinus,
    ];

    /// The raw spin-composition basis: quartet then the two doublets.
    pub const SPIN_BASIS: [CanonicalName; 8] = [
        CanonicalName::Q1Plus,
        CanonicalName::Q1Minus,
        CanonicalName::Q2Plus,
        CanonicalName::Q2Minus,
        CanonicalName::D1Plus,
        CanonicalName::D1Minus,
        CanonicalName::D2Plus,
        CanonicalName::D2Minus,
    ];

    /// The eight derived entangled states of the classification.
    pub const DERIVED: [CanonicalName; 8] = [
        CanonicalName::GHZPlus,
        CanonicalName::GHZMinus,
        CanonicalName::GFRPlus,
        CanonicalName::GFRMinus,
        CanonicalName::WRRPlus,
        CanonicalName::WRRMinus,
        CanonicalName::WRrPlus,
        CanonicalName::WRrMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CanonicalName::Q1Plus => "Q1+",
            CanonicalName::Q1Minus => "Q1-",
            CanonicalName::Q2Plus => "Q2+",
            CanonicalName::Q2Minus => "Q2-",
            CanonicalName::D1Plus => "D1+",
            CanonicalName::D1Minus => "D1-",
            CanonicalName::D2Plus => "D2+",
            CanonicalName::D2Minus => "D2-",
            CanonicalName::GHZPlus => "GHZ+",
            CanonicalName::GHZMinus => "GHZ-",
            CanonicalName::GFRPlus => "GFR+",
            CanonicalName::GFRMinus => "GFR-",
            CanonicalName::WRRPlus => "WRR+",
            CanonicalName::WRRMinus => "WRR-",
            CanonicalName::WRrPlus => "WRr+",
            CanonicalName::WRrMinus => "WRr-",
        }
    }

    /// Name without the +/- suffix ("GHZ", "GFR", "WRR", "WRr", ...).
    pub fn class(self) -> &'static str {
        let l = self.label();
        &l[..l.len() - 1]
    }
}

impl std::fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for CanonicalName {
    type Err = TriqError;

    /// Parses a state tag. Matching is case-insensitive except where that
    /// would be ambiguous: "WRR"/"WRr" are told apart by the case of the
    /// final letter ('R' upper -> WRR, 'r' lower -> WRr).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, plus) = match s.strip_suffix('+') {
            Some(b) => (b, true),
            None => match s.strip_suffix('-') {
                Some(b) => (b, false),
                None => {
                    return Err(TriqError::InvalidInput(format!(
                        "unknown state \"{s}\" (expected a +/- suffix, e.g. \"GHZ+\")"
                    )))
                }
            },
        };
        let upper = body.to_ascii_uppercase();
        let name = match upper.as_str() {
            "Q1" => {
                if plus {
                    CanonicalName::Q1Plus
                } else {
                    CanonicalName::Q1Minus
                }
            }
            "Q2" => {
                if plus {
                    CanonicalName::Q2Plus
                } else {
                    CanonicalName::Q2Minus
                }
            }
            "D1" => {
                if plus {
                    CanonicalName::D1Plus
                } else {
                    CanonicalName::D1Minus
                }
            }
            "D2" => {
                if plus {
                    CanonicalName::D2Plus
                } else {
                    CanonicalName::D2Minus
                }
            }
            "GHZ" => {
                if plus {
                    CanonicalName::GHZPlus
                } else {
                    CanonicalName::GHZMinus
                }
            }
            "GFR" => {
                if plus {
                    CanonicalName::GFRPlus
                } else {
                    CanonicalName::GFRMinus
                }
            }
            "WRR" => {
                // The trailing letter's case disambiguates WRR from WRr.
                let reduced = body.ends_with('r');
                match (reduced, plus) {
                    (false, true) => CanonicalName::WRRPlus,
                    (false, false) => CanonicalName::WRRMinus,
                    (true, true) => CanonicalName::WRrPlus,
                    (true, false) => CanonicalName::WRrMinus,
                }
            }
            _ => {
                return Err(TriqError::InvalidInput(format!(
                    "unknown state \"{s}\""
                )))
            }
        };
        Ok(name)
    }
}

/// Exact amplitude vector of a named state.
pub fn canonical_state(name: CanonicalName) -> PureState3 {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let s3 = 1.0 / 3.0f64.sqrt();
    let s6 = 1.0 / 6.0f64.sqrt();
    let mut amp = [c(0.0, 0.0); 8];
    // Basis indices: |abc> -> 4a + 2b + c.
    match name {
        CanonicalName::Q1Plus => amp[7] = c(1.0, 0.0), // |111>
        CanonicalName::Q1Minus => amp[0] = c(1.0, 0.0), // |000>
        CanonicalName::Q2Plus | CanonicalName::WRRPlus => {
            amp[6] = c(s3, 0.0); // |110>
            amp[5] = c(s3, 0.0); // |101>
            amp[3] = c(s3, 0.0); // |011>
        }
        CanonicalName::Q2Minus | CanonicalName::WRRMinus => {
            amp[1] = c(s3, 0.0); // |001>
            amp[2] = c(s3, 0.0); // |010>
            amp[4] = c(s3, 0.0); // |100>
        }
        CanonicalName::D1Plus | CanonicalName::WRrPlus => {
            amp[6] = c(s6, 0.0);
            amp[5] = c(s6, 0.0);
            amp[3] = c(-2.0 * s6, 0.0);
        }
        CanonicalName::D1Minus | CanonicalName::WRrMinus => {
            amp[1] = c(s6, 0.0);
            amp[2] = c(s6, 0.0);
            amp[4] = c(-2.0 * s6, 0.0);
        }
        CanonicalName::D2Plus | CanonicalName::GFRPlus => {
            amp[6] = c(s2, 0.0);
            amp[5] = c(-s2, 0.0);
        }
        CanonicalName::D2Minus | CanonicalName::GFRMinus => {
            amp[1] = c(s2, 0.0);
            amp[2] = c(-s2, 0.0);
        }
        CanonicalName::GHZPlus => {
            amp[7] = c(s2, 0.0);
            amp[0] = c(s2, 0.0);
        }
        CanonicalName::GHZMinus => {
            amp[7] = c(s2, 0.0);
            amp[0] = c(-s2, 0.0);
        }
    }
    PureState3::new(amp).expect("canonical amplitudes are normalized")
}

/// Which of the three parametric families a parameter triple targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    I,
    II,
    III,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
        })
    }
}

/// Normalized parameter triple (alpha, beta, gamma); gamma is absent for
/// family III.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricParams {
    pub family: Family,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Option<Complex64>,
}

impl ParametricParams {
    pub fn new(
        family: Family,
        alpha: Complex64,
        beta: Complex64,
        gamma: Option<Complex64>,
    ) -> Result<Self> {
        let norm_sqr = match (family, gamma) {
            (Family::I | Family::II, Some(g)) => {
                alpha.norm_sqr() + beta.norm_sqr() + g.norm_sqr()
            }
            (Family::I | Family::II, None) => {
                return Err(TriqError::InvalidInput(format!(
                    "family {family} requires a gamma parameter"
                )))
            }
            (Family::III, None) => alpha.norm_sqr() + beta.norm_sqr(),
            (Family::III, Some(_)) => {
                return Err(TriqError::InvalidInput(
                    "family III takes no gamma parameter".into(),
                ))
            }
        };
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(TriqError::InvalidInput(format!(
                "parameters are not normalized (|norm^2 - 1| = {:.3e})",
                (norm_sqr - 1.0).abs()
            )));
        }
        Ok(ParametricParams {
            family,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn family_i(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        Self::new(Family::I, alpha, beta, Some(gamma))
    }

    pub fn family_ii(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        Self::new(Family::II, alpha, beta, Some(gamma))
    }

    pub fn family_iii(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(Family::III, alpha, beta, None)
    }

    /// The documented parameter choice reproducing a derived state, when
    /// one exists (spin-basis names have none).
    pub fn for_canonical(name: CanonicalName) -> Option<Self> {
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let s3 = 1.0 / 3.0f64.sqrt();
        let s6 = 1.0 / 6.0f64.sqrt();
        let p = |family, a: f64, b: f64, g: Option<f64>| {
            ParametricParams::new(family, c(a, 0.0), c(b, 0.0), g.map(|g| c(g, 0.0)))
                .expect("documented parameter choices are normalized")
        };
        match name {
            CanonicalName::WRRPlus => Some(p(Family::I, s3, s3, Some(s3))),
            CanonicalName::WRrPlus => Some(p(Family::I, s6, s6, Some(-2.0 * s6))),
            CanonicalName::GFRPlus => Some(p(Family::I, s2, -s2, Some(0.0))),
            CanonicalName::WRRMinus => Some(p(Family::II, s3, s3, Some(s3))),
            CanonicalName::WRrMinus => Some(p(Family::II, s6, s6, Some(-2.0 * s6))),
            CanonicalName::GFRMinus => Some(p(Family::II, s2, -s2, Some(0.0))),
            CanonicalName::GHZPlus => Some(p(Family::III, s2, s2, None)),
            CanonicalName::GHZMinus => Some(p(Family::III, s2, -s2, None)),
            _ => None,
        }
    }
}

/// Basis indices carrying the amplitudes of each family, in
/// (alpha, beta, gamma) order.
pub fn family_support(family: Family) -> &'static [usize] {
    match family {
        Family::I => &[6, 5, 3],  // |110>, |101>, |011>
        Family::II => &[1, 2, 4], // |001>, |010>, |100>
        Family::III => &[7, 0],   // |111>, |000>
    }
}

/// Builds the parametric state for a normalized parameter triple.
pub fn parametric_state(p: &ParametricParams) -> PureState3 {
    let mut amp = [c(0.0, 0.0); 8];
    let support = family_support(p.family);
    amp[support[0]] = p.alpha;
    amp[support[1]] = p.beta;
    if let Some(g) = p.gamma {
        amp[support[2]] = g;
    }
    PureState3::new(amp).expect("normalized parameters give a normalized state")
}

/// Exchanges the two qubits of `pair` in every basis ket.
pub fn swap_qubits(state: &PureState3, pair: PairLabel) -> PureState3 {
    let (q1, q2) = pair.qubits();
    let (b1, b2) = (q1.bit(), q2.bit());
    let mut amp = [c(0.0, 0.0); 8];
    for (i, slot) in amp.iter_mut().enumerate() {
        let x1 = (i >> b1) & 1;
        let x2 = (i >> b2) & 1;
        let j = (i & !(1 << b1) & !(1 << b2)) | (x2 << b1) | (x1 << b2);
        *slot = state.amp[j];
    }
    PureState3 { amp }
}

/// Symmetric / anti-symmetric / non-symmetric tag of a state under one
/// pair exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryTag {
    Symmetric,
    AntiSymmetric,
    NonSymmetric,
}

impl SymmetryTag {
    pub fn label(self) -> &'static str {
        match self {
            SymmetryTag::Symmetric => "S",
            SymmetryTag::AntiSymmetric => "AS",
            SymmetryTag::NonSymmetric => "NS",
        }
    }
}

impl std::fmt::Display for SymmetryTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Tags `state` as S when P|psi> = |psi|, AS when P|psi> = -|psi>
/// (2-norm tolerance 1e-9), NS otherwise.
pub fn pair_symmetry(state: &PureState3, pair: PairLabel) -> SymmetryTag {
    let swapped = swap_qubits(state, pair);
    let dist = |sign: f64| {
        state
            .amp
            .iter()
            .zip(&swapped.amp)
            .map(|(a, b)| (a - b * sign).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    if dist(1.0) <= SYMMETRY_TOL {
        SymmetryTag::Symmetric
    } else if dist(-1.0) <= SYMMETRY_TOL {
        SymmetryTag::AntiSymmetric
    } else {
        SymmetryTag::NonSymmetric
    }
}

/// Matrix of pairwise inner products <s_i|s_j>.
pub fn gram_matrix(states: &[PureState3]) -> ComplexMatrix {
    assert!(!states.is_empty(), "gram_matrix needs at least one state");
    ComplexMatrix::from_fn(states.len(), |i, j| states[i].inner(&states[j]))
}
