//! The ∨–∧ associative memory with input and output thresholds.
//!
//! A model is a triple `(W, c, d)` of an `n × m` weight matrix, an `n × m`
//! matrix of input thresholds and a length-`m` vector of output thresholds,
//! all valued in one [`Lattice`]. Recall computes
//!
//! ```text
//! y_j = (⋁_i (x_i ∨ c_ij) ∧ w_ij) ∨ d_j
//! ```
//!
//! [`init_model`] builds the closed-form model `(W⁰, c⁰, d⁰)` from a pattern
//! family; the remaining functions check storability, solutions and bounds.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Comparison, Element, Lattice, LatticeError};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MemoryError {
    #[error("pattern family is empty")]
    EmptyFamily,
    #[error("{what}: expected length {expected}, found {found}")]
    ArityMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("values belong to a different lattice")]
    LatticeMismatch,
    #[error("(W, c, d) does not recall every stored pattern")]
    NotASolution,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn expect_len(what: &'static str, expected: usize, found: usize) -> Result<(), MemoryError> {
    if expected == found {
        Ok(())
    } else {
        Err(MemoryError::ArityMismatch {
            what,
            expected,
            found,
        })
    }
}

fn expect_member(lattice: &Lattice, values: &[Element]) -> Result<(), MemoryError> {
    if values.iter().all(|&e| lattice.contains(e)) {
        Ok(())
    } else {
        Err(MemoryError::LatticeMismatch)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPair {
    pub x: Vec<Element>,
    pub y: Vec<Element>,
}

impl PatternPair {
    pub fn new(x: Vec<Element>, y: Vec<Element>) -> Self {
        PatternPair { x, y }
    }
}

/// The training pairs `(x^k, y^k)`, `k = 0..p`, with `x^k ∈ Lⁿ` and `y^k ∈ Lᵐ`.
#[derive(Clone, Debug)]
pub struct PatternFamily {
    lattice: Arc<Lattice>,
    n: usize,
    m: usize,
    pairs: Vec<PatternPair>,
}

impl PatternFamily {
    pub fn new(lattice: Arc<Lattice>, pairs: Vec<PatternPair>) -> Result<Self, MemoryError> {
        let first = pairs.first().ok_or(MemoryError::EmptyFamily)?;
        let (n, m) = (first.x.len(), first.y.len());
        if n == 0 {
            return Err(MemoryError::ArityMismatch {
                what: "input arity",
                expected: 1,
                found: 0,
            });
        }
        if m == 0 {
            return Err(MemoryError::ArityMismatch {
                what: "output arity",
                expected: 1,
                found: 0,
            });
        }
        for pair in &pairs {
            expect_len("input pattern", n, pair.x.len())?;
            expect_len("output pattern", m, pair.y.len())?;
            expect_member(&lattice, &pair.x)?;
            expect_member(&lattice, &pair.y)?;
        }
        Ok(PatternFamily {
            lattice,
            n,
            m,
            pairs,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Input arity.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Output arity.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[PatternPair] {
        &self.pairs
    }

    fn same_lattice(&self, model: &MemoryModel) -> Result<(), MemoryError> {
        if self.lattice.id() != model.lattice.id() {
            return Err(MemoryError::LatticeMismatch);
        }
        expect_len("model input arity", self.n, model.n())?;
        expect_len("model output arity", self.m, model.m())
    }
}

/// Weights `W`, input thresholds `c` and output thresholds `d`.
#[derive(Clone, Debug)]
pub struct MemoryModel {
    lattice: Arc<Lattice>,
    weights: Matrix<Element>,
    input_thresholds: Matrix<Element>,
    output_thresholds: Vec<Element>,
}

impl MemoryModel {
    pub fn new(
        lattice: Arc<Lattice>,
        weights: Matrix<Element>,
        input_thresholds: Matrix<Element>,
        output_thresholds: Vec<Element>,
    ) -> Result<Self, MemoryError> {
        let (n, m) = weights.shape();
        expect_len("threshold rows", n, input_thresholds.rows())?;
        expect_len("threshold columns", m, input_thresholds.cols())?;
        expect_len("output thresholds", m, output_thresholds.len())?;
        if !weights
            .iter()
            .chain(input_thresholds.iter())
            .chain(output_thresholds.iter())
            .all(|&e| lattice.contains(e))
        {
            return Err(MemoryError::LatticeMismatch);
        }
        Ok(MemoryModel {
            lattice,
            weights,
            input_thresholds,
            output_thresholds,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn weights(&self) -> &Matrix<Element> {
        &self.weights
    }

    pub fn input_thresholds(&self) -> &Matrix<Element> {
        &self.input_thresholds
    }

    pub fn output_thresholds(&self) -> &[Element] {
        &self.output_thresholds
    }

    pub fn n(&self) -> usize {
        self.weights.rows()
    }

    pub fn m(&self) -> usize {
        self.weights.cols()
    }

    pub fn recall(&self, x: &[Element]) -> Result<Vec<Element>, MemoryError> {
        expect_len("input pattern", self.n(), x.len())?;
        expect_member(&self.lattice, x)?;
        Ok(self.recall_raw(x))
    }

    pub(crate) fn recall_raw(&self, x: &[Element]) -> Vec<Element> {
        (0..self.m()).map(|j| self.recall_output(x, j)).collect()
    }

    pub(crate) fn recall_output(&self, x: &[Element], j: usize) -> Element {
        let l = &*self.lattice;
        let acc = x.iter().enumerate().fold(l.bottom(), |acc, (i, &xi)| {
            let gated = l.join_raw(xi, self.input_thresholds[(i, j)]);
            l.join_raw(acc, l.meet_raw(gated, self.weights[(i, j)]))
        });
        l.join_raw(acc, self.output_thresholds[j])
    }

    /// True iff every pair of the family is recalled exactly.
    pub fn stores(&self, patterns: &PatternFamily) -> Result<bool, MemoryError> {
        patterns.same_lattice(self)?;
        Ok(patterns
            .pairs()
            .iter()
            .all(|pair| self.recall_raw(&pair.x) == pair.y))
    }
}

/// How the initial input thresholds `c⁰` are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum C0Mode {
    /// `c⁰_ij = ⋀_{k ∈ LE_ij} y_j^k`, falling back to the meet of every output
    /// component of every pattern when `LE_ij` is empty.
    #[default]
    PerConnection,
    /// As `PerConnection`, but the first branch also meets over all outputs:
    /// `⋀_{k ∈ LE_ij, j' ∈ M} y_{j'}^k`.
    Literal,
    /// One threshold for every connection: `⋀_{k ∈ P, j ∈ M} y_j^k`.
    Uniform,
}

/// Closed-form model `(W⁰, c⁰, d⁰)` with per-connection input thresholds.
pub fn init_model(patterns: &PatternFamily) -> MemoryModel {
    init_model_with(patterns, C0Mode::PerConnection)
}

pub fn init_model_with(patterns: &PatternFamily, mode: C0Mode) -> MemoryModel {
    let l = &**patterns.lattice();
    let (n, m) = (patterns.n(), patterns.m());
    let pairs = patterns.pairs();
    let meet_all =
        |items: &mut dyn Iterator<Item = Element>| items.fold(l.top(), |acc, e| l.meet_raw(acc, e));

    let d0: Vec<Element> = (0..m)
        .map(|j| meet_all(&mut pairs.iter().map(|p| p.y[j])))
        .collect();
    let w0 = Matrix::from_fn(n, m, |i, j| {
        meet_all(&mut pairs.iter().map(|p| l.implies_raw(p.x[i], p.y[j])))
    });
    let all_outputs = meet_all(&mut pairs.iter().flat_map(|p| p.y.iter().copied()));
    let c0 = Matrix::from_fn(n, m, |i, j| {
        let le: Vec<&PatternPair> = pairs.iter().filter(|p| l.leq_raw(p.x[i], p.y[j])).collect();
        if le.is_empty() || mode == C0Mode::Uniform {
            return all_outputs;
        }
        match mode {
            C0Mode::PerConnection => meet_all(&mut le.iter().map(|p| p.y[j])),
            _ => meet_all(&mut le.iter().flat_map(|p| p.y.iter().copied())),
        }
    });

    MemoryModel {
        lattice: patterns.lattice().clone(),
        weights: w0,
        input_thresholds: c0,
        output_thresholds: d0,
    }
}

/// Pattern index sets for one connection `(i, j)`. Indices are 0-based
/// positions in the family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellPartition {
    /// `x_i^k > y_j^k`
    pub g: Vec<usize>,
    /// `x_i^k = y_j^k`
    pub e: Vec<usize>,
    /// `x_i^k < y_j^k`
    pub l: Vec<usize>,
    pub ge: Vec<usize>,
    pub le: Vec<usize>,
    /// incomparable
    pub nc: Vec<usize>,
    /// Same four-way split with `x_i^k ∨ c_ij ∨ d_j` in place of `x_i^k`.
    pub tg: Vec<usize>,
    pub te: Vec<usize>,
    pub tl: Vec<usize>,
    pub tge: Vec<usize>,
    pub tle: Vec<usize>,
    pub tnc: Vec<usize>,
    /// `x_i^k ∧ y_j^k ≤ w_ij ∨ d_j`
    pub ts_g: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub cells: Matrix<CellPartition>,
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn partition_patterns(
    patterns: &PatternFamily,
    model: &MemoryModel,
) -> Result<PartitionReport, MemoryError> {
    patterns.same_lattice(model)?;
    let l = &**patterns.lattice();
    let cells = Matrix::from_fn(patterns.n(), patterns.m(), |i, j| {
        let mut cell = CellPartition::default();
        let c = model.input_thresholds[(i, j)];
        let d = model.output_thresholds[j];
        let w = model.weights[(i, j)];
        for (k, pair) in patterns.pairs().iter().enumerate() {
            let (x, y) = (pair.x[i], pair.y[j]);
            match l.compare_raw(x, y) {
                Comparison::Greater => cell.g.push(k),
                Comparison::Equal => cell.e.push(k),
                Comparison::Less => cell.l.push(k),
                Comparison::Incomparable => cell.nc.push(k),
            }
            let raised = l.join_raw(l.join_raw(x, c), d);
            match l.compare_raw(raised, y) {
                Comparison::Greater => cell.tg.push(k),
                Comparison::Equal => cell.te.push(k),
                Comparison::Less => cell.tl.push(k),
                Comparison::Incomparable => cell.tnc.push(k),
            }
            if l.leq_raw(l.meet_raw(x, y), l.join_raw(w, d)) {
                cell.ts_g.push(k);
            }
        }
        cell.ge = union_sorted(&cell.g, &cell.e);
        cell.le = union_sorted(&cell.l, &cell.e);
        cell.tge = union_sorted(&cell.tg, &cell.te);
        cell.tle = union_sorted(&cell.tl, &cell.te);
        cell
    });
    Ok(PartitionReport { cells })
}

/// One failed condition of the storability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StorabilityViolation {
    /// `c_j ≰ d⁰_j`
    ThresholdAboveOutputMeet { output: usize },
    /// No input connection covers pattern `k` for this output.
    Uncovered { output: usize, pattern: usize },
    /// The inputs covering pattern `k` join strictly below its target.
    JoinBelowOutput { output: usize, pattern: usize },
}

/// Positions are printed 1-based.
impl fmt::Display for StorabilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StorabilityViolation::ThresholdAboveOutputMeet { output } => {
                write!(
                    f,
                    "output {}: threshold exceeds the meet of its targets",
                    output + 1
                )
            }
            StorabilityViolation::Uncovered { output, pattern } => write!(
                f,
                "output {}, pattern {}: no input connection covers the target",
                output + 1,
                pattern + 1
            ),
            StorabilityViolation::JoinBelowOutput { output, pattern } => write!(
                f,
                "output {}, pattern {}: covering inputs join below the target",
                output + 1,
                pattern + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StorabilityReport {
    pub pass: bool,
    pub violations: Vec<StorabilityViolation>,
}

/// Sufficient condition for `(W⁰, c, d⁰)` to store the family, where `c` is
/// the per-output threshold `c_check` broadcast over inputs.
///
/// `model` must carry `W⁰` and `d⁰` of `patterns` (as built by [`init_model`]).
pub fn check_storability(
    patterns: &PatternFamily,
    model: &MemoryModel,
    c_check: &[Element],
) -> Result<StorabilityReport, MemoryError> {
    patterns.same_lattice(model)?;
    expect_len("threshold vector", patterns.m(), c_check.len())?;
    expect_member(patterns.lattice(), c_check)?;
    let l = &**patterns.lattice();
    let mut violations = Vec::new();
    for (j, &c) in c_check.iter().enumerate() {
        let d0 = model.output_thresholds[j];
        if !l.leq_raw(c, d0) {
            violations.push(StorabilityViolation::ThresholdAboveOutputMeet { output: j });
        }
        for (k, pair) in patterns.pairs().iter().enumerate() {
            let y = pair.y[j];
            let covering: Vec<usize> = (0..patterns.n())
                .filter(|&i| {
                    l.leq_raw(
                        l.meet_raw(pair.x[i], y),
                        l.join_raw(model.weights[(i, j)], d0),
                    )
                })
                .collect();
            if covering.is_empty() {
                violations.push(StorabilityViolation::Uncovered {
                    output: j,
                    pattern: k,
                });
            }
            let reach = covering
                .iter()
                .fold(l.bottom(), |acc, &i| l.join_raw(acc, pair.x[i]));
            if !l.leq_raw(y, reach) {
                violations.push(StorabilityViolation::JoinBelowOutput {
                    output: j,
                    pattern: k,
                });
            }
        }
    }
    Ok(StorabilityReport {
        pass: violations.is_empty(),
        violations,
    })
}

/// True iff `(W, c, d)` recalls every pair of the family exactly.
pub fn is_solution(
    weights: &Matrix<Element>,
    input_thresholds: &Matrix<Element>,
    output_thresholds: &[Element],
    patterns: &PatternFamily,
) -> Result<bool, MemoryError> {
    expect_len("weight rows", patterns.n(), weights.rows())?;
    expect_len("weight columns", patterns.m(), weights.cols())?;
    let model = MemoryModel::new(
        patterns.lattice().clone(),
        weights.clone(),
        input_thresholds.clone(),
        output_thresholds.to_vec(),
    )?;
    model.stores(patterns)
}

/// Checks `w_ij ≤ w⁰_ij` and `d_j ≤ d⁰_j` for a solution `(W, c, d)`.
pub fn verify_bounds(
    weights: &Matrix<Element>,
    input_thresholds: &Matrix<Element>,
    output_thresholds: &[Element],
    patterns: &PatternFamily,
) -> Result<bool, MemoryError> {
    if !is_solution(weights, input_thresholds, output_thresholds, patterns)? {
        return Err(MemoryError::NotASolution);
    }
    let l = &**patterns.lattice();
    let init = init_model(patterns);
    let weights_ok = weights
        .indexed()
        .all(|(ij, &w)| l.leq_raw(w, init.weights[ij]));
    let outputs_ok = output_thresholds
        .iter()
        .zip(&init.output_thresholds)
        .all(|(&d, &d0)| l.leq_raw(d, d0));
    Ok(weights_ok && outputs_ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecision {
    pub outputs: Vec<Element>,
    /// Indices of the maximal outputs, ascending.
    pub winners: Vec<usize>,
    pub winner_labels: Vec<String>,
    pub ambiguous: bool,
}

/// Recalls `x` and picks the maximal outputs under the lattice order.
///
/// Every maximal output is a winner; several winners (equal or mutually
/// incomparable) mark the decision as ambiguous.
pub fn classify(
    model: &MemoryModel,
    x: &[Element],
    labels: &[String],
) -> Result<ClassDecision, MemoryError> {
    expect_len("labels", model.m(), labels.len())?;
    let outputs = model.recall(x)?;
    let l = &**model.lattice();
    let winners: Vec<usize> = (0..outputs.len())
        .filter(|&j| {
            !outputs
                .iter()
                .any(|&other| l.compare_raw(outputs[j], other) == Comparison::Less)
        })
        .collect();
    Ok(ClassDecision {
        winner_labels: winners.iter().map(|&j| labels[j].clone()).collect(),
        ambiguous: winners.len() > 1,
        winners,
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Lattice> {
        Arc::new(Lattice::powerset(["a", "b", "c"]).unwrap())
    }

    fn family(l: &Arc<Lattice>, rows: &[(&[&str], &[&str])]) -> PatternFamily {
        let parse = |v: &[&str]| v.iter().map(|s| l.parse(s).unwrap()).collect();
        PatternFamily::new(
            l.clone(),
            rows.iter()
                .map(|(x, y)| PatternPair::new(parse(x), parse(y)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn family_validation() {
        let l = abc();
        assert_eq!(
            PatternFamily::new(l.clone(), vec![]).unwrap_err(),
            MemoryError::EmptyFamily
        );
        let a = l.parse("a").unwrap();
        let err = PatternFamily::new(
            l.clone(),
            vec![
                PatternPair::new(vec![a, a], vec![a]),
                PatternPair::new(vec![a], vec![a]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, MemoryError::ArityMismatch { .. }));
        let other = Lattice::powerset(["a"]).unwrap();
        let err =
            PatternFamily::new(l, vec![PatternPair::new(vec![other.top()], vec![a])]).unwrap_err();
        assert_eq!(err, MemoryError::LatticeMismatch);
    }

    #[test]
    fn single_pattern_with_top_input() {
        let l = abc();
        let fam = family(&l, &[(&["1", "1"], &["ab", "c"])]);
        let model = init_model(&fam);
        for i in 0..2 {
            assert_eq!(l.name(model.weights()[(i, 0)]).unwrap(), "ab");
            assert_eq!(l.name(model.weights()[(i, 1)]).unwrap(), "c");
        }
        assert_eq!(model.output_thresholds(), &fam.pairs()[0].y[..]);
    }

    #[test]
    fn output_never_below_threshold() {
        let l = abc();
        let fam = family(
            &l,
            &[(&["a", "b"], &["bc", "a"]), (&["c", "0"], &["b", "ac"])],
        );
        let model = init_model(&fam);
        for x in l.elements() {
            let y = model.recall(&[x, l.top()]).unwrap();
            for (j, &yj) in y.iter().enumerate() {
                assert!(l.leq(model.output_thresholds()[j], yj).unwrap());
            }
        }
    }

    #[test]
    fn recall_rejects_bad_input() {
        let l = abc();
        let fam = family(&l, &[(&["a", "b"], &["a"])]);
        let model = init_model(&fam);
        assert!(matches!(
            model.recall(&[l.top()]),
            Err(MemoryError::ArityMismatch { .. })
        ));
        let other = Lattice::powerset(["a"]).unwrap();
        assert_eq!(
            model.recall(&[other.top(), other.top()]),
            Err(MemoryError::LatticeMismatch)
        );
    }

    #[test]
    fn equal_inputs_and_outputs_partition() {
        let l = abc();
        let fam = family(
            &l,
            &[(&["a"], &["a"]), (&["bc"], &["bc"]), (&["0"], &["0"])],
        );
        let report = partition_patterns(&fam, &init_model(&fam)).unwrap();
        let cell = &report.cells[(0, 0)];
        assert_eq!(cell.e, vec![0, 1, 2]);
        assert!(cell.g.is_empty() && cell.l.is_empty() && cell.nc.is_empty());
        assert_eq!(cell.ge, cell.e);
        assert_eq!(cell.le, cell.e);
    }

    #[test]
    fn storability_fails_for_zero_inputs() {
        let l = abc();
        let fam = family(&l, &[(&["0", "0"], &["1"])]);
        let model = init_model(&fam);
        let report = check_storability(&fam, &model, model.output_thresholds()).unwrap();
        assert!(!report.pass);
        assert!(report
            .violations
            .contains(&StorabilityViolation::JoinBelowOutput {
                output: 0,
                pattern: 0
            }));
    }

    #[test]
    fn storability_passes_for_identical_atoms() {
        // Hand evaluation: d⁰ = (a, b), W⁰ = [[1, bc], [ac, 1]], the pattern is
        // covered on every connection, and x_1 ∨ x_2 = ab covers both outputs.
        let l = abc();
        let fam = family(&l, &[(&["a", "b"], &["a", "b"])]);
        let model = init_model(&fam);
        let names: Vec<String> = model
            .weights()
            .iter()
            .map(|&w| l.name(w).unwrap())
            .collect();
        assert_eq!(names, ["1", "bc", "ac", "1"]);
        let report = check_storability(&fam, &model, model.output_thresholds()).unwrap();
        assert!(report.pass, "{:?}", report.violations);
        assert!(model.stores(&fam).unwrap());
    }

    #[test]
    fn storability_threshold_too_high() {
        let l = abc();
        let fam = family(&l, &[(&["a", "b"], &["a", "b"])]);
        let model = init_model(&fam);
        let report = check_storability(&fam, &model, &[l.top(), l.bottom()]).unwrap();
        assert_eq!(
            report.violations,
            vec![StorabilityViolation::ThresholdAboveOutputMeet { output: 0 }]
        );
        assert!(matches!(
            check_storability(&fam, &model, &[l.top()]),
            Err(MemoryError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn zero_model_is_not_a_solution() {
        let l = abc();
        let fam = family(&l, &[(&["a", "b"], &["a", "c"])]);
        let zero = Matrix::filled(2, 2, l.bottom());
        assert!(!is_solution(&zero, &zero, &[l.bottom(); 2], &fam).unwrap());
        assert_eq!(
            verify_bounds(&zero, &zero, &[l.bottom(); 2], &fam),
            Err(MemoryError::NotASolution)
        );
    }

    #[test]
    fn initial_model_bounds_itself() {
        let l = abc();
        let fam = family(&l, &[(&["a", "b"], &["a", "b"])]);
        let m = init_model(&fam);
        assert!(verify_bounds(
            m.weights(),
            m.input_thresholds(),
            m.output_thresholds(),
            &fam
        )
        .unwrap());
    }

    #[test]
    fn classify_single_output_is_never_ambiguous() {
        let l = abc();
        let fam = family(&l, &[(&["a"], &["a"]), (&["b"], &["0"])]);
        let model = init_model(&fam);
        for x in l.elements() {
            let decision = classify(&model, &[x], &["only".to_string()]).unwrap();
            assert_eq!(decision.winners, vec![0]);
            assert!(!decision.ambiguous);
        }
        assert!(matches!(
            classify(&model, &[l.top()], &[]),
            Err(MemoryError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn c0_modes() {
        let l = abc();
        // k=0: x=a ≤ y=(ab, b)? a ≤ ab yes; a ≤ b no.
        let fam = family(&l, &[(&["a"], &["ab", "b"]), (&["b"], &["bc", "bc"])]);
        let per = init_model_with(&fam, C0Mode::PerConnection);
        let lit = init_model_with(&fam, C0Mode::Literal);
        let uni = init_model_with(&fam, C0Mode::Uniform);
        let name = |m: &MemoryModel, j| l.name(m.input_thresholds()[(0, j)]).unwrap();
        // LE_00 = {0, 1}, LE_01 = {1}
        assert_eq!(name(&per, 0), "b");
        assert_eq!(name(&per, 1), "bc");
        assert_eq!(name(&lit, 0), "b");
        assert_eq!(name(&lit, 1), "bc");
        assert_eq!(name(&uni, 0), "b");
        assert_eq!(name(&uni, 1), "b");
    }
}
