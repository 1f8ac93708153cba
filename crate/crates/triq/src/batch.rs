//! Batch evaluation and the randomized consistency fuzzer.
//!
//! The per-state work is pure, so batches are evaluated with a parallel
//! map when the (default) `parallel` feature is on and with a plain
//! iterator otherwise. Results are collected in input order and every
//! aggregate is order-independent, so output is identical under either
//! execution mode and any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::classify::{analyze, StateReport};
use crate::criteria::{
    closed_form_concurrences, closed_form_marginal_spectra, closed_form_ppt_spectrum,
    concurrence, numeric_marginal_spectra, numeric_ppt_spectrum, params_from_state, three_tangle,
    CONCURRENCE_EPS, PPT_EPS,
};
use crate::linalg::{multiset_close, partial_trace, PairLabel};
use crate::random::{random_pure_state, seeded_rng};
use crate::states::{Family, PureState3};
use crate::{Result, TriqError};

/// Tolerance for closed-form versus numeric spectra in the fuzzer.
const CLOSED_FORM_TOL: f64 = 1e-9;
/// Monogamy slack: tau_ckw must stay within [-1e-10, 1 + 1e-10].
const MONOGAMY_TOL: f64 = 1e-10;

/// Maps `f` over the slice, in parallel when the `parallel` feature is
/// enabled. Output order always matches input order.
#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    items.par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is off.
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Analyzes a batch of states with the feature-selected map.
pub fn analyze_many(states: &[PureState3], q_grid: &[f64]) -> Result<Vec<StateReport>> {
    par_map(states, |s| analyze(s, q_grid)).into_iter().collect()
}

/// Always-sequential batch analysis; the benchmark baseline.
pub fn analyze_many_seq(states: &[PureState3], q_grid: &[f64]) -> Result<Vec<StateReport>> {
    states.iter().map(|s| analyze(s, q_grid)).collect()
}

/// One state that violated a property, with its amplitudes for replay.
#[derive(Debug, Clone)]
pub struct FuzzFailure {
    pub index: usize,
    pub amplitudes: [num_complex::Complex64; 8],
    pub reason: String,
}

impl FuzzFailure {
    /// Amplitudes in the `re,im re,im ...` form the CLI accepts back.
    pub fn amplitude_string(&self) -> String {
        self.amplitudes
            .iter()
            .map(|z| format!("{:?},{:?}", z.re, z.im))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Aggregate outcome of a fuzz run.
#[derive(Debug, Clone)]
pub struct FuzzSummary {
    pub count: usize,
    pub seed: u64,
    pub pass: usize,
    pub fail: usize,
    /// Pairwise PPT-vs-concurrence agreement checks executed.
    pub ppt_agreement_checks: usize,
    /// CKW monogamy range checks executed.
    pub monogamy_checks: usize,
    /// Closed-form comparisons executed (states inside a family pattern).
    pub closed_form_checks: usize,
    /// Largest |tau_paper - tau_ckw| seen; recorded, not asserted.
    pub max_tau_gap: f64,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.fail == 0
    }
}

struct SampleOutcome {
    ppt_checks: usize,
    monogamy_checks: usize,
    closed_form_checks: usize,
    tau_gap: f64,
    failure: Option<String>,
}

fn check_sample(state: &PureState3) -> SampleOutcome {
    match try_check_sample(state) {
        Ok(outcome) => outcome,
        Err(e) => SampleOutcome {
            ppt_checks: 0,
            monogamy_checks: 0,
            closed_form_checks: 0,
            tau_gap: 0.0,
            failure: Some(format!("evaluation error: {e}")),
        },
    }
}

fn try_check_sample(state: &PureState3) -> Result<SampleOutcome> {
    let mut outcome = SampleOutcome {
        ppt_checks: 0,
        monogamy_checks: 0,
        closed_form_checks: 0,
        tau_gap: 0.0,
        failure: None,
    };
    let fail = |msg: String, slot: &mut Option<String>| {
        if slot.is_none() {
            *slot = Some(msg);
        }
    };

    let rho = state.density();
    for pair in PairLabel::ALL {
        let marg = partial_trace(&rho, pair.complement())?;
        let ent = concurrence(&marg)?;
        outcome.ppt_checks += 1;
        let by_c = ent.concurrence > CONCURRENCE_EPS;
        let by_ppt = ent.ppt_min_eigenvalue < PPT_EPS;
        if by_c != by_ppt {
            fail(
                format!(
                    "{pair}: concurrence {:.3e} and PPT minimum {:.3e} disagree",
                    ent.concurrence, ent.ppt_min_eigenvalue
                ),
                &mut outcome.failure,
            );
        }
    }

    let tangle = three_tangle(state)?;
    outcome.monogamy_checks += 1;
    if tangle.tau_ckw < -MONOGAMY_TOL || tangle.tau_ckw > 1.0 + MONOGAMY_TOL {
        fail(
            format!("tau_ckw {:.3e} escapes [0, 1]", tangle.tau_ckw),
            &mut outcome.failure,
        );
    }
    outcome.tau_gap = (tangle.tau_paper - tangle.tau_ckw).abs();

    // Closed-form cross-check when the support matches a family pattern.
    if let Some(p) = params_from_state(state) {
        if matches!(p.family, Family::I | Family::II) {
            outcome.closed_form_checks += 1;
            let cf = closed_form_marginal_spectra(&p)?;
            let nm = numeric_marginal_spectra(state)?;
            let spectra_ok = [
                (&cf.rho_ab, &nm.rho_ab),
                (&cf.rho_ac, &nm.rho_ac),
                (&cf.rho_bc, &nm.rho_bc),
                (&cf.rho_a, &nm.rho_a),
                (&cf.rho_b, &nm.rho_b),
                (&cf.rho_c, &nm.rho_c),
            ]
            .iter()
            .all(|(a, b)| multiset_close(a.values(), b.values(), CLOSED_FORM_TOL));
            if !spectra_ok {
                fail("closed-form marginal spectra mismatch".into(), &mut outcome.failure);
            }
            let cs = closed_form_concurrences(&p)?;
            for (i, pair) in PairLabel::ALL.iter().enumerate() {
                let cf_ppt = closed_form_ppt_spectrum(&p, *pair)?;
                let nm_ppt = numeric_ppt_spectrum(state, *pair)?;
                if !multiset_close(cf_ppt.values(), nm_ppt.values(), CLOSED_FORM_TOL) {
                    fail(
                        format!("closed-form PPT spectrum mismatch on {pair}"),
                        &mut outcome.failure,
                    );
                }
                let marg = partial_trace(&rho, pair.complement())?;
                let ent = concurrence(&marg)?;
                if (ent.concurrence - cs[i]).abs() > CLOSED_FORM_TOL {
                    fail(
                        format!("closed-form concurrence mismatch on {pair}"),
                        &mut outcome.failure,
                    );
                }
            }
        }
    }
    Ok(outcome)
}

/// Samples `count` seeded Haar-like states and checks every cross-
/// criterion property on each. Deterministic for a given (count, seed).
pub fn run_fuzz(count: usize, seed: u64) -> Result<FuzzSummary> {
    if count == 0 {
        return Err(TriqError::InvalidInput("fuzz count must be at least 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let states: Vec<PureState3> = (0..count).map(|_| random_pure_state(&mut rng)).collect();
    let outcomes = par_map(&states, check_sample);

    let mut summary = FuzzSummary {
        count,
        seed,
        pass: 0,
        fail: 0,
        ppt_agreement_checks: 0,
        monogamy_checks: 0,
        closed_form_checks: 0,
        max_tau_gap: 0.0,
        failures: Vec::new(),
    };
    for (index, outcome) in outcomes.into_iter().enumerate() {
        summary.ppt_agreement_checks += outcome.ppt_checks;
        summary.monogamy_checks += outcome.monogamy_checks;
        summary.closed_form_checks += outcome.closed_form_checks;
        summary.max_tau_gap = summary.max_tau_gap.max(outcome.tau_gap);
        match outcome.failure {
            None => summary.pass += 1,
            Some(reason) => {
                summary.fail += 1;
                summary.failures.push(FuzzFailure {
                    index,
                    amplitudes: *states[index].amplitudes(),
                    reason,
                });
            }
        }
    }
    Ok(summary)
}
