//! Text / JSON / CSV rendering of reports.
//!
//! Every number is rounded to 12 significant digits (round half to
//! even) before serialization, and the same rounded value feeds every
//! format, so CSV, JSON, and text renderings of one report always carry
//! identical numeric values. Values close to a "nice" rational are
//! never snapped to it; the raw pipeline output is what gets printed.

use serde::Serialize;

use crate::batch::FuzzSummary;
use crate::classify::{HamiltonianReport, StateId, StateReport, TsallisRow};

/// Output format selector shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Rounds to 12 significant digits (ties to even, via the decimal
/// formatter) and re-parses, so serialized JSON carries at most those
/// digits.
pub fn round_g12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float re-parses")
}

/// Formats with 12 significant digits, plain decimal notation in the
/// human range and scientific outside it, trailing zeros trimmed but at
/// least one fractional digit kept ("0.0", "2.5", "0.666666666667").
pub fn fmt_g12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') && !s.ends_with(".0") {
                s.pop();
            }
        } else {
            s.push_str(".0");
        }
        s
    } else {
        let mut m = mantissa.to_string();
        if m.contains('.') {
            while m.ends_with('0') && !m.ends_with(".0") {
                m.pop();
            }
        }
        format!("{m}e{exp}")
    }
}

// ---------------------------------------------------------------------
// Serialized views (field order pins JSON key order).

#[derive(Serialize)]
#[serde(untagged)]
enum StateIdDoc {
    Named(String),
    Amplitudes { amplitudes: [[f64; 2]; 8] },
}

#[derive(Serialize)]
struct PairDoc {
    symmetry: String,
    concurrence: f64,
    ppt_min_eigenvalue: f64,
    robustness: String,
}

#[derive(Serialize)]
struct PairsDoc {
    #[serde(rename = "AB")]
    ab: PairDoc,
    #[serde(rename = "AC")]
    ac: PairDoc,
    #[serde(rename = "BC")]
    bc: PairDoc,
}

#[derive(Serialize)]
struct TangleDoc {
    paper: f64,
    ckw: f64,
}

#[derive(Serialize)]
struct ConditionalDoc {
    #[serde(rename = "ABC|AB")]
    abc_ab: f64,
    #[serde(rename = "ABC|AC")]
    abc_ac: f64,
    #[serde(rename = "ABC|BC")]
    abc_bc: f64,
}

#[derive(Serialize)]
struct TsallisDoc {
    q: f64,
    conditional: ConditionalDoc,
}

#[derive(Serialize)]
struct LewensteinDoc {
    s_max: f64,
    bound_s_plus_c: f64,
}

#[derive(Serialize)]
struct StateReportDoc {
    state: StateIdDoc,
    pairs: PairsDoc,
    tangle: TangleDoc,
    tsallis: Vec<TsallisDoc>,
    hamiltonian_eigenvalue: Option<f64>,
    lewenstein: Option<LewensteinDoc>,
    triangle: [f64; 3],
}

fn pair_doc(report: &StateReport, index: usize) -> PairDoc {
    let p = &report.pairs[index];
    PairDoc {
        symmetry: p.symmetry.label().to_string(),
        concurrence: round_g12(p.entanglement.concurrence),
        ppt_min_eigenvalue: round_g12(p.entanglement.ppt_min_eigenvalue),
        robustness: p.robustness.label().to_string(),
    }
}

fn report_doc(report: &StateReport) -> StateReportDoc {
    let state = match &report.state {
        StateId::Named(n) => StateIdDoc::Named(n.clone()),
        StateId::Amplitudes(amp) => {
            let mut rows = [[0.0; 2]; 8];
            for (row, z) in rows.iter_mut().zip(amp.iter()) {
                *row = [round_g12(z.re), round_g12(z.im)];
            }
            StateIdDoc::Amplitudes { amplitudes: rows }
        }
    };
    StateReportDoc {
        state,
        pairs: PairsDoc {
            ab: pair_doc(report, 0),
            ac: pair_doc(report, 1),
            bc: pair_doc(report, 2),
        },
        tangle: TangleDoc {
            paper: round_g12(report.tangle.tau_paper),
            ckw: round_g12(report.tangle.tau_ckw),
        },
        tsallis: report
            .tsallis
            .iter()
            .map(|row| TsallisDoc {
                q: round_g12(row.q),
                conditional: ConditionalDoc {
                    abc_ab: round_g12(row.conditional_abc[0]),
                    abc_ac: round_g12(row.conditional_abc[1]),
                    abc_bc: round_g12(row.conditional_abc[2]),
                },
            })
            .collect(),
        hamiltonian_eigenvalue: report.hamiltonian_eigenvalue.map(round_g12),
        lewenstein: report.lewenstein.map(|l| LewensteinDoc {
            s_max: round_g12(l.s_max),
            bound_s_plus_c: round_g12(l.bound_s_plus_c),
        }),
        triangle: [
            round_g12(report.triangle[0]),
            round_g12(report.triangle[1]),
            round_g12(report.triangle[2]),
        ],
    }
}

/// One report as a JSON object.
pub fn report_json(report: &StateReport) -> String {
    serde_json::to_string_pretty(&report_doc(report)).expect("report serializes")
}

/// Several reports as a JSON array.
pub fn reports_json(reports: &[StateReport]) -> String {
    let docs: Vec<StateReportDoc> = reports.iter().map(report_doc).collect();
    serde_json::to_string_pretty(&docs).expect("reports serialize")
}

pub const TABLE_CSV_HEADER: &str = "state,ab_symmetry,ab_concurrence,ab_robustness,\
ac_symmetry,ac_concurrence,ac_robustness,bc_symmetry,bc_concurrence,bc_robustness,tangle";

fn table_csv_row(report: &StateReport) -> String {
    let mut cells = vec![report.state.display_label()];
    for p in &report.pairs {
        cells.push(p.symmetry.label().to_string());
        cells.push(fmt_g12(round_g12(p.entanglement.concurrence)));
        cells.push(p.robustness.label().to_string());
    }
    cells.push(fmt_g12(round_g12(report.tangle.tau_paper)));
    cells.join(",")
}

/// CSV rendering of classification rows.
pub fn table_csv(reports: &[StateReport]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&table_csv_row(r));
        out.push('\n');
    }
    out
}

/// Aligned text rendering of classification rows; numeric cells carry
/// exactly the CSV values.
pub fn table_text(reports: &[StateReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8} {:<24} {:<24} {:<24} {}\n",
        "state", "AB (sym conc rob)", "AC (sym conc rob)", "BC (sym conc rob)", "tangle"
    ));
    for r in reports {
        let cell = |i: usize| {
            let p = &r.pairs[i];
            format!(
                "{:<3}{:<16}{}",
                p.symmetry.label(),
                fmt_g12(round_g12(p.entanglement.concurrence)),
                p.robustness.label()
            )
        };
        out.push_str(&format!(
            "{:<8} {:<24} {:<24} {:<24} {}\n",
            r.state.display_label(),
            cell(0),
            cell(1),
            cell(2),
            fmt_g12(round_g12(r.tangle.tau_paper))
        ));
    }
    out
}

/// Multi-line text rendering of one full report.
pub fn analyze_text(report: &StateReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("state: {}\n", report.state.display_label()));
    if let StateId::Amplitudes(amp) = &report.state {
        let joined = amp
            .iter()
            .map(|z| format!("{},{}", fmt_g12(round_g12(z.re)), fmt_g12(round_g12(z.im))))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("amplitudes: {joined}\n"));
    }
    for p in &report.pairs {
        out.push_str(&format!(
            "pair {}: symmetry {}  concurrence {}  ppt_min {}  robustness {}\n",
            p.pair,
            p.symmetry.label(),
            fmt_g12(round_g12(p.entanglement.concurrence)),
            fmt_g12(round_g12(p.entanglement.ppt_min_eigenvalue)),
            p.robustness.label()
        ));
    }
    out.push_str(&format!(
        "tangle: paper {}  ckw {}\n",
        fmt_g12(round_g12(report.tangle.tau_paper)),
        fmt_g12(round_g12(report.tangle.tau_ckw))
    ));
    for row in &report.tsallis {
        out.push_str(&format!(
            "tsallis q={}: S(ABC|AB) {}  S(ABC|AC) {}  S(ABC|BC) {}\n",
            fmt_g12(round_g12(row.q)),
            fmt_g12(round_g12(row.conditional_abc[0])),
            fmt_g12(round_g12(row.conditional_abc[1])),
            fmt_g12(round_g12(row.conditional_abc[2]))
        ));
        let labels = [("AB", "A", "B"), ("AC", "A", "C"), ("BC", "B", "C")];
        let parts: Vec<String> = labels
            .iter()
            .zip(&row.conditional_pairs)
            .flat_map(|((xy, x, y), (gx, gy))| {
                [
                    format!("S({xy}|{x}) {}", fmt_g12(round_g12(*gx))),
                    format!("S({xy}|{y}) {}", fmt_g12(round_g12(*gy))),
                ]
            })
            .collect();
        out.push_str(&format!("           {}\n", parts.join("  ")));
    }
    match report.hamiltonian_eigenvalue {
        Some(e) => out.push_str(&format!(
            "hamiltonian_eigenvalue: {}\n",
            fmt_g12(round_g12(e))
        )),
        None => out.push_str("hamiltonian_eigenvalue: n/a (not an eigenstate)\n"),
    }
    match (&report.lewenstein, &report.lewenstein_note) {
        (Some(l), _) => out.push_str(&format!(
            "lewenstein: s_max {}  s_max + C(BC) {}\n",
            fmt_g12(round_g12(l.s_max)),
            fmt_g12(round_g12(l.bound_s_plus_c))
        )),
        (None, Some(note)) => out.push_str(&format!("lewenstein: n/a ({note})\n")),
        (None, None) => out.push_str("lewenstein: n/a\n"),
    }
    out.push_str(&format!(
        "triangle: {} {} {}\n",
        fmt_g12(round_g12(report.triangle[0])),
        fmt_g12(round_g12(report.triangle[1])),
        fmt_g12(round_g12(report.triangle[2]))
    ));
    out
}

/// CSV rendering of one report: the table header plus its single row.
pub fn analyze_csv(report: &StateReport) -> String {
    table_csv(std::slice::from_ref(report))
}

// ---------------------------------------------------------------------
// q sweeps.

#[derive(Serialize)]
struct SweepDoc {
    q: f64,
    conditional: ConditionalDoc,
}

pub fn sweep_json(rows: &[TsallisRow]) -> String {
    let docs: Vec<SweepDoc> = rows
        .iter()
        .map(|row| SweepDoc {
            q: round_g12(row.q),
            conditional: ConditionalDoc {
                abc_ab: round_g12(row.conditional_abc[0]),
                abc_ac: round_g12(row.conditional_abc[1]),
                abc_bc: round_g12(row.conditional_abc[2]),
            },
        })
        .collect();
    serde_json::to_string_pretty(&docs).expect("sweep serializes")
}

pub fn sweep_csv(rows: &[TsallisRow]) -> String {
    let mut out = String::from("q,cond_ABC_AB,cond_ABC_AC,cond_ABC_BC\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_g12(round_g12(row.q)),
            fmt_g12(round_g12(row.conditional_abc[0])),
            fmt_g12(round_g12(row.conditional_abc[1])),
            fmt_g12(round_g12(row.conditional_abc[2]))
        ));
    }
    out
}

pub fn sweep_text(rows: &[TsallisRow]) -> String {
    let mut out = format!(
        "{:<16} {:<18} {:<18} {}\n",
        "q", "S_q(ABC|AB)", "S_q(ABC|AC)", "S_q(ABC|BC)"
    );
    for row in rows {
        out.push_str(&format!(
            "{:<16} {:<18} {:<18} {}\n",
            fmt_g12(round_g12(row.q)),
            fmt_g12(round_g12(row.conditional_abc[0])),
            fmt_g12(round_g12(row.conditional_abc[1])),
            fmt_g12(round_g12(row.conditional_abc[2]))
        ));
    }
    out
}

// ---------------------------------------------------------------------
// Hamiltonian verification.

#[derive(Serialize)]
struct HamiltonianRowDoc {
    state: String,
    eigenvalue: f64,
    residual: f64,
}

#[derive(Serialize)]
struct SpectrumDoc {
    eigenvalue: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct HamiltonianDoc {
    states: Vec<HamiltonianRowDoc>,
    spectrum: Vec<SpectrumDoc>,
}

pub fn hamiltonian_json(report: &HamiltonianReport) -> String {
    let doc = HamiltonianDoc {
        states: report
            .rows
            .iter()
            .map(|r| HamiltonianRowDoc {
                state: r.name.label().to_string(),
                eigenvalue: round_g12(r.eigenvalue),
                residual: round_g12(r.residual),
            })
            .collect(),
        spectrum: report
            .spectrum
            .iter()
            .map(|&(eigenvalue, multiplicity)| SpectrumDoc {
                eigenvalue: round_g12(eigenvalue),
                multiplicity,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("hamiltonian report serializes")
}

pub fn hamiltonian_csv(report: &HamiltonianReport) -> String {
    let mut out = String::from("kind,label,eigenvalue,residual,multiplicity\n");
    for r in &report.rows {
        out.push_str(&format!(
            "state,{},{},{},\n",
            r.name.label(),
            fmt_g12(round_g12(r.eigenvalue)),
            fmt_g12(round_g12(r.residual))
        ));
    }
    for &(eigenvalue, multiplicity) in &report.spectrum {
        out.push_str(&format!(
            "multiplicity,,{},,{multiplicity}\n",
            fmt_g12(round_g12(eigenvalue))
        ));
    }
    out
}

pub fn hamiltonian_text(report: &HamiltonianReport) -> String {
    let mut out = format!("{:<8} {:<16} {}\n", "state", "eigenvalue", "residual");
    for r in &report.rows {
        out.push_str(&format!(
            "{:<8} {:<16} {}\n",
            r.name.label(),
            fmt_g12(round_g12(r.eigenvalue)),
            fmt_g12(round_g12(r.residual))
        ));
    }
    let spectrum = report
        .spectrum
        .iter()
        .map(|&(v, m)| format!("{} x{m}", fmt_g12(round_g12(v))))
        .collect::<Vec<_>>()
        .join(", ");
    out.push_str(&format!("spectrum: {spectrum}\n"));
    out
}

// ---------------------------------------------------------------------
// Fuzz summaries.

#[derive(Serialize)]
struct FuzzChecksDoc {
    ppt_concurrence_agreement: usize,
    ckw_monogamy: usize,
    closed_form: usize,
}

#[derive(Serialize)]
struct FuzzFailureDoc {
    index: usize,
    amplitudes: String,
    reason: String,
}

#[derive(Serialize)]
struct FuzzDoc {
    count: usize,
    seed: u64,
    pass: usize,
    fail: usize,
    checks: FuzzChecksDoc,
    max_tau_gap: f64,
    failures: Vec<FuzzFailureDoc>,
}

pub fn fuzz_json(summary: &FuzzSummary) -> String {
    let doc = FuzzDoc {
        count: summary.count,
        seed: summary.seed,
        pass: summary.pass,
        fail: summary.fail,
        checks: FuzzChecksDoc {
            ppt_concurrence_agreement: summary.ppt_agreement_checks,
            ckw_monogamy: summary.monogamy_checks,
            closed_form: summary.closed_form_checks,
        },
        max_tau_gap: round_g12(summary.max_tau_gap),
        failures: summary
            .failures
            .iter()
            .map(|f| FuzzFailureDoc {
                index: f.index,
                amplitudes: f.amplitude_string(),
                reason: f.reason.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("fuzz summary serializes")
}

pub fn fuzz_text(summary: &FuzzSummary) -> String {
    let mut out = format!("pass: {}, fail: {}\n", summary.pass, summary.fail);
    for f in &summary.failures {
        out.push_str(&format!(
            "fail[{}]: {}\n  amplitudes: {}\n",
            f.index,
            f.reason,
            f.amplitude_string()
        ));
    }
    out
}

pub fn fuzz_csv(summary: &FuzzSummary) -> String {
    let mut out = String::from("count,seed,pass,fail\n");
    out.push_str(&format!(
        "{},{},{},{}\n",
        summary.count, summary.seed, summary.pass, summary.fail
    ));
    for f in &summary.failures {
        out.push_str(&format!(
            "# fail[{}]: {} amplitudes: {}\n",
            f.index,
            f.reason,
            f.amplitude_string()
        ));
    }
    out
}
