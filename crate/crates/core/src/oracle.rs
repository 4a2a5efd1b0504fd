//! Brute-force ground truth.
//!
//! Everything here scans instead of computing: implication by checking every
//! candidate, solutions by trying every weight matrix. Recall is evaluated
//! through the distributed form `⋁_i (x_i ∨ c_ij ∨ d_j) ∧ (w_ij ∨ d_j)`, not
//! through [`MemoryModel::recall`], so agreement between the two is a check
//! rather than a tautology.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{Element, Lattice, LatticeError};
use crate::matrix::Matrix;
use crate::memory::{
    check_storability, init_model_with, C0Mode, MemoryError, MemoryModel, PatternFamily,
    PatternPair, StorabilityViolation,
};

/// Default cap on the number of candidate weight matrices an enumeration may try.
pub const DEFAULT_CELL_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{candidates} candidates exceed the enumeration bound {bound}")]
    TooLarge { candidates: u128, bound: u64 },
    #[error("{a} ⇒ {b}: candidate set has no greatest element")]
    NoGreatest { a: String, b: String },
    #[error(transparent)]
    Memory(#[from] MemoryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Greatest `c` with `a ∧ c = a ∧ b`, found by scanning every element.
pub fn brute_implies(lattice: &Lattice, a: Element, b: Element) -> Result<Element, OracleError> {
    let target = lattice.meet(a, b)?;
    let candidates: Vec<Element> = lattice
        .elements()
        .filter(|&c| lattice.meet_raw(a, c) == target)
        .collect();
    candidates
        .iter()
        .copied()
        .find(|&g| candidates.iter().all(|&c| lattice.leq_raw(c, g)))
        .ok_or_else(|| OracleError::NoGreatest {
            a: lattice.name_raw(a),
            b: lattice.name_raw(b),
        })
}

/// Greatest `c` with `a ∧ c ≤ b`, by scan.
pub fn brute_implies_leq(
    lattice: &Lattice,
    a: Element,
    b: Element,
) -> Result<Element, OracleError> {
    lattice.check(a)?;
    lattice.check(b)?;
    let candidates: Vec<Element> = lattice
        .elements()
        .filter(|&c| lattice.leq_raw(lattice.meet_raw(a, c), b))
        .collect();
    candidates
        .iter()
        .copied()
        .find(|&g| candidates.iter().all(|&c| lattice.leq_raw(c, g)))
        .ok_or_else(|| OracleError::NoGreatest {
            a: lattice.name_raw(a),
            b: lattice.name_raw(b),
        })
}

fn recall_distributed_raw(
    l: &Lattice,
    w: &Matrix<Element>,
    c: &Matrix<Element>,
    d: &[Element],
    x: &[Element],
    j: usize,
) -> Element {
    x.iter().enumerate().fold(l.bottom(), |acc, (i, &xi)| {
        let gate = l.join_raw(l.join_raw(xi, c[(i, j)]), d[j]);
        l.join_raw(acc, l.meet_raw(gate, l.join_raw(w[(i, j)], d[j])))
    })
}

/// Recall through `⋁_i (x_i ∨ c_ij ∨ d_j) ∧ (w_ij ∨ d_j)`.
pub fn recall_distributed(model: &MemoryModel, x: &[Element]) -> Result<Vec<Element>, OracleError> {
    let l = &**model.lattice();
    check_input(model, x)?;
    Ok((0..model.m())
        .map(|j| {
            recall_distributed_raw(
                l,
                model.weights(),
                model.input_thresholds(),
                model.output_thresholds(),
                x,
                j,
            )
        })
        .collect())
}

/// Recall through `⋁_i [(x_i ∧ w_ij) ∨ (c_ij ∧ w_ij)] ∨ d_j`.
pub fn recall_split(model: &MemoryModel, x: &[Element]) -> Result<Vec<Element>, OracleError> {
    let l = &**model.lattice();
    check_input(model, x)?;
    let (w, c, d) = (
        model.weights(),
        model.input_thresholds(),
        model.output_thresholds(),
    );
    Ok((0..model.m())
        .map(|j| {
            let inner = x.iter().enumerate().fold(l.bottom(), |acc, (i, &xi)| {
                let direct = l.meet_raw(xi, w[(i, j)]);
                let raised = l.meet_raw(c[(i, j)], w[(i, j)]);
                l.join_raw(acc, l.join_raw(direct, raised))
            });
            l.join_raw(inner, d[j])
        })
        .collect())
}

fn check_input(model: &MemoryModel, x: &[Element]) -> Result<(), OracleError> {
    if x.len() != model.n() {
        return Err(MemoryError::ArityMismatch {
            what: "input pattern",
            expected: model.n(),
            found: x.len(),
        }
        .into());
    }
    for &e in x {
        model.lattice().check(e)?;
    }
    Ok(())
}

fn solves(
    l: &Lattice,
    patterns: &PatternFamily,
    w: &Matrix<Element>,
    c: &Matrix<Element>,
    d: &[Element],
) -> bool {
    patterns.pairs().iter().all(|pair| {
        (0..patterns.m()).all(|j| recall_distributed_raw(l, w, c, d, &pair.x, j) == pair.y[j])
    })
}

fn leq_matrix(l: &Lattice, a: &Matrix<Element>, b: &Matrix<Element>) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| l.leq_raw(x, y))
}

/// All weight matrices solving the family for fixed thresholds.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub lattice: Arc<Lattice>,
    pub input_thresholds: Matrix<Element>,
    pub output_thresholds: Vec<Element>,
    pub solutions: Vec<Matrix<Element>>,
    pub candidates: u64,
}

impl SolutionSet {
    /// Solutions not strictly below another solution.
    pub fn maximal(&self) -> Vec<Matrix<Element>> {
        let l = &*self.lattice;
        self.solutions
            .iter()
            .filter(|s| {
                !self
                    .solutions
                    .iter()
                    .any(|t| t != *s && leq_matrix(l, s, t))
            })
            .cloned()
            .collect()
    }
}

fn candidate_count(lattice_size: usize, cells: usize) -> u128 {
    (lattice_size as u128)
        .checked_pow(cells as u32)
        .unwrap_or(u128::MAX)
}

/// Tries every `W ∈ L^{n×m}` with `c` and `d` fixed.
pub fn enumerate_solutions(
    patterns: &PatternFamily,
    c: &Matrix<Element>,
    d: &[Element],
    cell_bound: u64,
) -> Result<SolutionSet, OracleError> {
    let lattice = patterns.lattice();
    let l = &**lattice;
    let (n, m) = (patterns.n(), patterns.m());
    // Validates shapes and membership of the thresholds.
    MemoryModel::new(
        lattice.clone(),
        Matrix::filled(n, m, l.bottom()),
        c.clone(),
        d.to_vec(),
    )?;
    let candidates = candidate_count(l.size(), n * m);
    if candidates > cell_bound as u128 {
        return Err(OracleError::TooLarge {
            candidates,
            bound: cell_bound,
        });
    }
    let elements: Vec<Element> = l.elements().collect();
    let mut digits = vec![0usize; n * m];
    let mut w = Matrix::filled(n, m, elements[0]);
    let mut solutions = Vec::new();
    loop {
        if solves(l, patterns, &w, c, d) {
            solutions.push(w.clone());
        }
        // odometer increment over row-major cells
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(SolutionSet {
                    lattice: lattice.clone(),
                    input_thresholds: c.clone(),
                    output_thresholds: d.to_vec(),
                    solutions,
                    candidates: candidates as u64,
                });
            }
            digits[pos] += 1;
            if digits[pos] == elements.len() {
                digits[pos] = 0;
                w[(pos / m, pos % m)] = elements[0];
                pos += 1;
            } else {
                w[(pos / m, pos % m)] = elements[digits[pos]];
                break;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    /// Checked and never contradicted.
    Holds,
    /// The hypothesis never applied on this instance.
    Vacuous,
    /// A counterexample was found; see the witness.
    Falsified,
    /// Not checked (instance too large to enumerate).
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

impl Verdict {
    fn new(status: VerdictStatus, detail: impl Into<String>) -> Self {
        Verdict {
            status,
            detail: detail.into(),
            witness: None,
        }
    }

    fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_falsified(&self) -> bool {
        self.status == VerdictStatus::Falsified
    }
}

/// Verdicts for the three solution theorems on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    /// Every solution satisfies `W ≤ W⁰` and `d ≤ d⁰`.
    #[serde(rename = "upper_bound")]
    pub bounds: Verdict,
    /// A solution with `c ≤ c⁰` implies `(W⁰, c⁰, d⁰)` is a solution.
    #[serde(rename = "initial_model_solves")]
    pub dominance: Verdict,
    /// The storability condition implies `(W⁰, c, d⁰)` is a solution.
    pub storability: Verdict,
    pub solutions_enumerated: Option<usize>,
}

impl TheoremReport {
    pub fn any_falsified(&self) -> bool {
        self.bounds.is_falsified()
            || self.dominance.is_falsified()
            || self.storability.is_falsified()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub c0_mode: C0Mode,
    /// Cap on the total number of `(W, c, d)` combinations enumerated.
    pub cell_bound: u64,
    /// Report the enumeration-based checks as skipped instead of failing
    /// with [`OracleError::TooLarge`].
    pub skip_if_too_large: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            c0_mode: C0Mode::PerConnection,
            cell_bound: DEFAULT_CELL_BOUND,
            skip_if_too_large: false,
        }
    }
}

fn names_matrix(l: &Lattice, m: &Matrix<Element>) -> Value {
    json!(m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|&e| l.name_raw(e)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn names_vec(l: &Lattice, v: &[Element]) -> Value {
    json!(v.iter().map(|&e| l.name_raw(e)).collect::<Vec<_>>())
}

/// Every vector in `L^m`, in odometer order.
fn all_vectors(l: &Lattice, m: usize) -> Vec<Vec<Element>> {
    let elements: Vec<Element> = l.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elements.iter().map(move |&e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn theorem_report(patterns: &PatternFamily) -> Result<TheoremReport, OracleError> {
    theorem_report_with(patterns, ReportOptions::default())
}

/// Checks the three solution theorems on one instance.
///
/// Solutions are enumerated over every `W`, with `c ∈ {0, c⁰}` and `d`
/// ranging over all of `L^m` when `|L|^m ≤ 64` (otherwise `d ∈ {0, d⁰}`).
/// Both threshold candidates satisfy `c ≤ c⁰`.
pub fn theorem_report_with(
    patterns: &PatternFamily,
    options: ReportOptions,
) -> Result<TheoremReport, OracleError> {
    let lattice = patterns.lattice();
    let l = &**lattice;
    let (n, m) = (patterns.n(), patterns.m());
    let init = init_model_with(patterns, options.c0_mode);
    let (w0, c0, d0) = (
        init.weights(),
        init.input_thresholds(),
        init.output_thresholds(),
    );

    let zero_c = Matrix::filled(n, m, l.bottom());
    let c_candidates = [zero_c, c0.clone()];
    let d_candidates: Vec<Vec<Element>> = if candidate_count(l.size(), m) <= 64 {
        all_vectors(l, m)
    } else {
        vec![vec![l.bottom(); m], d0.to_vec()]
    };
    let total = candidate_count(l.size(), n * m)
        .saturating_mul(c_candidates.len() as u128)
        .saturating_mul(d_candidates.len() as u128);

    let initial_solves = solves(l, patterns, w0, c0, d0);

    let (bounds, dominance, enumerated) = if total > options.cell_bound as u128 {
        if !options.skip_if_too_large {
            return Err(OracleError::TooLarge {
                candidates: total,
                bound: options.cell_bound,
            });
        }
        let bounds = Verdict::new(VerdictStatus::Skipped, "instance too large to enumerate");
        let dominance = if initial_solves {
            Verdict::new(VerdictStatus::Holds, "(W⁰, c⁰, d⁰) is a solution")
        } else {
            dominance_ceiling(l, patterns, &init)
        };
        (bounds, dominance, None)
    } else {
        let mut count = 0usize;
        let mut bounds_witness = None;
        let mut hypothesis_witness = None;
        for c in &c_candidates {
            for d in &d_candidates {
                let set = enumerate_solutions(patterns, c, d, u64::MAX)?;
                for w in &set.solutions {
                    count += 1;
                    let d_ok = d.iter().zip(d0).all(|(&a, &b)| l.leq_raw(a, b));
                    if bounds_witness.is_none() && !(leq_matrix(l, w, w0) && d_ok) {
                        bounds_witness = Some(
                            json!({"W": names_matrix(l, w), "c": names_matrix(l, c), "d": names_vec(l, d)}),
                        );
                    }
                    if hypothesis_witness.is_none() {
                        hypothesis_witness = Some(
                            json!({"W": names_matrix(l, w), "c": names_matrix(l, c), "d": names_vec(l, d)}),
                        );
                    }
                }
            }
        }
        let bounds = match (count, bounds_witness) {
            (0, _) => Verdict::new(
                VerdictStatus::Vacuous,
                "no solution exists among the candidates",
            ),
            (_, Some(w)) => {
                Verdict::new(VerdictStatus::Falsified, "solution above (W⁰, d⁰)").with_witness(w)
            }
            (k, None) => Verdict::new(
                VerdictStatus::Holds,
                format!("all {k} solutions lie below (W⁰, d⁰)"),
            ),
        };
        let dominance = match (hypothesis_witness, initial_solves) {
            (_, true) => Verdict::new(VerdictStatus::Holds, "(W⁰, c⁰, d⁰) is a solution"),
            (None, false) => Verdict::new(VerdictStatus::Vacuous, "no solution with c ≤ c⁰ exists"),
            (Some(mut w), false) => {
                let failing = first_failure(l, patterns, w0, c0, d0);
                w["failing"] = failing;
                Verdict::new(
                    VerdictStatus::Falsified,
                    "a solution with c ≤ c⁰ exists but (W⁰, c⁰, d⁰) is not a solution",
                )
                .with_witness(w)
            }
        };
        (bounds, dominance, Some(count))
    };

    let storability = storability_verdict(l, patterns, &init)?;
    Ok(TheoremReport {
        bounds,
        dominance,
        storability,
        solutions_enumerated: enumerated,
    })
}

/// Pattern and output where `(W, c, d)` misses its target, with the value recalled.
fn first_failure(
    l: &Lattice,
    patterns: &PatternFamily,
    w: &Matrix<Element>,
    c: &Matrix<Element>,
    d: &[Element],
) -> Value {
    for (k, pair) in patterns.pairs().iter().enumerate() {
        for j in 0..patterns.m() {
            let got = recall_distributed_raw(l, w, c, d, &pair.x, j);
            if got != pair.y[j] {
                return json!({
                    "pattern": k,
                    "output": j,
                    "expected": l.name_raw(pair.y[j]),
                    "recalled": l.name_raw(got),
                });
            }
        }
    }
    Value::Null
}

/// Without enumeration: any solution with `c ≤ c⁰` lies below `(W⁰, c⁰, d⁰)`,
/// so if that ceiling cannot reach some target no such solution exists.
fn dominance_ceiling(l: &Lattice, patterns: &PatternFamily, init: &MemoryModel) -> Verdict {
    for (k, pair) in patterns.pairs().iter().enumerate() {
        for j in 0..patterns.m() {
            let ceiling = recall_distributed_raw(
                l,
                init.weights(),
                init.input_thresholds(),
                init.output_thresholds(),
                &pair.x,
                j,
            );
            if !l.leq_raw(pair.y[j], ceiling) {
                return Verdict::new(
                    VerdictStatus::Vacuous,
                    "no solution with c ≤ c⁰ can reach every target",
                )
                .with_witness(json!({
                    "pattern": k,
                    "output": j,
                    "expected": l.name_raw(pair.y[j]),
                    "ceiling": l.name_raw(ceiling),
                }));
            }
        }
    }
    Verdict::new(
        VerdictStatus::Skipped,
        "hypothesis undecided without enumeration",
    )
}

fn violations_json(violations: &[StorabilityViolation]) -> Value {
    json!(violations
        .iter()
        .map(|v| match *v {
            StorabilityViolation::ThresholdAboveOutputMeet { output } => {
                json!({"kind": "threshold_above_output_meet", "output": output})
            }
            StorabilityViolation::Uncovered { output, pattern } => {
                json!({"kind": "uncovered", "output": output, "pattern": pattern})
            }
            StorabilityViolation::JoinBelowOutput { output, pattern } => {
                json!({"kind": "join_below_output", "output": output, "pattern": pattern})
            }
        })
        .collect::<Vec<_>>())
}

fn storability_verdict(
    l: &Lattice,
    patterns: &PatternFamily,
    init: &MemoryModel,
) -> Result<Verdict, OracleError> {
    let (n, m) = (patterns.n(), patterns.m());
    let d0 = init.output_thresholds();
    let mut passed = 0;
    for c_check in [d0.to_vec(), vec![l.bottom(); m]] {
        let report = check_storability(patterns, init, &c_check)?;
        if !report.pass {
            continue;
        }
        passed += 1;
        let broadcast = Matrix::from_fn(n, m, |_, j| c_check[j]);
        if !solves(l, patterns, init.weights(), &broadcast, d0) {
            return Ok(Verdict::new(
                VerdictStatus::Falsified,
                "storability condition holds but (W⁰, c, d⁰) is not a solution",
            )
            .with_witness(json!({
                "c": names_vec(l, &c_check),
                "failing": first_failure(l, patterns, init.weights(), &broadcast, d0),
            })));
        }
    }
    Ok(if passed == 0 {
        let report = check_storability(patterns, init, d0)?;
        Verdict::new(VerdictStatus::Vacuous, "condition not met")
            .with_witness(violations_json(&report.violations))
    } else {
        Verdict::new(
            VerdictStatus::Holds,
            "condition met and (W⁰, c, d⁰) recalls every pair",
        )
    })
}

/// Family with uniformly random components.
pub fn random_family<R: Rng + ?Sized>(
    lattice: &Arc<Lattice>,
    n: usize,
    m: usize,
    p: usize,
    rng: &mut R,
) -> PatternFamily {
    let size = lattice.size() as u64;
    let mut pick = |len: usize| -> Vec<Element> {
        (0..len)
            .map(|_| {
                lattice
                    .element(rng.gen_range(0..size))
                    .expect("index in range")
            })
            .collect()
    };
    let pairs = (0..p).map(|_| PatternPair::new(pick(n), pick(m))).collect();
    PatternFamily::new(lattice.clone(), pairs).expect("generated family is well-formed")
}

/// Rejection-samples a family that passes the storability check with
/// `c = d⁰`. Returns `None` after `max_tries` rejections.
pub fn random_storable_family<R: Rng + ?Sized>(
    lattice: &Arc<Lattice>,
    n: usize,
    m: usize,
    p: usize,
    rng: &mut R,
    max_tries: usize,
) -> Option<PatternFamily> {
    (0..max_tries).find_map(|_| {
        let family = random_family(lattice, n, m, p, rng);
        let model = init_model_with(&family, C0Mode::PerConnection);
        check_storability(&family, &model, model.output_thresholds())
            .ok()
            .filter(|r| r.pass)
            .map(|_| family)
    })
}
