//! Iterative weight learning over atomic lattices.
//!
//! Weights are handled as generator sets. Starting from the all-top matrix,
//! each step recalls every stored input with the current weights and, for
//! each connection and pattern whose gated contribution overshoots the target
//! output, removes the generators by which `x ⇒ y(t)` exceeds `x ⇒ y`. The
//! per-pattern candidates are intersected. Iteration stops at the first
//! repeated matrix.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Element, GeneratorSet, Lattice, LatticeError};
use crate::matrix::Matrix;
use crate::memory::{MemoryError, MemoryModel, PatternFamily};

#[derive(Debug, Error)]
pub enum LearningError {
    #[error("learning requires an atomic (powerset) lattice")]
    NotAtomic,
    #[error("no fixed point after {} steps", .0.len() - 1)]
    NotConverged(Box<TrainingTrace>),
    #[error(transparent)]
    Memory(#[from] MemoryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which rule a pattern applied to a connection during one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Contribution already at or below the target; weight kept.
    Keep,
    /// Weight reduced by the implication surplus.
    Shrink,
}

/// Result of one learning step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub weights: Matrix<GeneratorSet>,
    /// Per connection, the branch taken by each pattern in index order.
    pub branches: Matrix<Vec<Branch>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainingTrace {
    steps: Vec<Matrix<GeneratorSet>>,
    branches: Vec<Matrix<Vec<Branch>>>,
    converged_at: Option<usize>,
}

impl TrainingTrace {
    /// Every iterate, starting with the all-top matrix `W(0)`.
    pub fn steps(&self) -> &[Matrix<GeneratorSet>] {
        &self.steps
    }

    /// `branches()[t]` records the step from `W(t)` to `W(t + 1)`.
    pub fn branches(&self) -> &[Matrix<Vec<Branch>>] {
        &self.branches
    }

    /// The `t` with `W(t) = W(t - 1)`, if a fixed point was reached.
    pub fn converged_at(&self) -> Option<usize> {
        self.converged_at
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_weights(&self) -> &Matrix<GeneratorSet> {
        self.steps.last().expect("trace holds W(0)")
    }

    /// True iff every iterate is a cellwise subset of its predecessor.
    pub fn is_non_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| {
            w[1].iter()
                .zip(w[0].iter())
                .all(|(next, prev)| next.is_subset(*prev))
        })
    }
}

pub fn to_elements(
    lattice: &Lattice,
    sets: &Matrix<GeneratorSet>,
) -> Result<Matrix<Element>, LearningError> {
    let mut out = Matrix::filled(sets.rows(), sets.cols(), lattice.bottom());
    for (ij, &s) in sets.indexed() {
        out[ij] = lattice
            .from_atoms(s)
            .map_err(|_| LearningError::NotAtomic)?;
    }
    Ok(out)
}

pub fn to_generator_sets(
    lattice: &Lattice,
    elements: &Matrix<Element>,
) -> Result<Matrix<GeneratorSet>, LearningError> {
    let mut out = Matrix::filled(elements.rows(), elements.cols(), GeneratorSet::empty());
    for (ij, &e) in elements.indexed() {
        out[ij] = lattice.atoms_of(e).map_err(|e| match e {
            LatticeError::NotAtomic => LearningError::NotAtomic,
            other => other.into(),
        })?;
    }
    Ok(out)
}

/// Default iteration guard for a family of `p` patterns.
pub fn default_max_steps(p: usize) -> usize {
    2 + p
}

fn check_shapes(
    patterns: &PatternFamily,
    weights: (usize, usize),
    c: &Matrix<Element>,
    d: &[Element],
) -> Result<(), LearningError> {
    let expected = (patterns.n(), patterns.m());
    for (what, found) in [("weights", weights), ("input thresholds", c.shape())] {
        if found != expected {
            return Err(MemoryError::ArityMismatch {
                what,
                expected: expected.0 * expected.1,
                found: found.0 * found.1,
            }
            .into());
        }
    }
    if d.len() != patterns.m() {
        return Err(MemoryError::ArityMismatch {
            what: "output thresholds",
            expected: patterns.m(),
            found: d.len(),
        }
        .into());
    }
    Ok(())
}

/// One application of the update rule to `W(t)`.
pub fn step(
    current: &Matrix<GeneratorSet>,
    patterns: &PatternFamily,
    c: &Matrix<Element>,
    d: &[Element],
) -> Result<StepOutcome, LearningError> {
    let lattice: &Arc<Lattice> = patterns.lattice();
    if !lattice.is_atomic() {
        return Err(LearningError::NotAtomic);
    }
    check_shapes(patterns, current.shape(), c, d)?;
    let l = &**lattice;
    let weights = to_elements(l, current)?;
    let model = MemoryModel::new(lattice.clone(), weights.clone(), c.clone(), d.to_vec())?;
    // Outputs y(t) of the current weights, recomputed every step.
    let recalled: Vec<Vec<Element>> = patterns
        .pairs()
        .iter()
        .map(|pair| model.recall(&pair.x))
        .collect::<Result<_, _>>()?;

    let (n, m) = (patterns.n(), patterns.m());
    let mut next = current.clone();
    let mut branches = Matrix::filled(n, m, Vec::with_capacity(patterns.len()));
    for (k, pair) in patterns.pairs().iter().enumerate() {
        for i in 0..n {
            for j in 0..m {
                let (x, y) = (pair.x[i], pair.y[j]);
                let w = weights[(i, j)];
                let gated = l.join_raw(l.meet_raw(l.join_raw(x, c[(i, j)]), w), d[j]);
                let candidate = if l.leq_raw(gated, y) {
                    branches[(i, j)].push(Branch::Keep);
                    current[(i, j)]
                } else {
                    branches[(i, j)].push(Branch::Shrink);
                    let reached = l.atoms_of(l.implies_raw(x, recalled[k][j]))?;
                    let wanted = l.atoms_of(l.implies_raw(x, y))?;
                    current[(i, j)].difference(reached.difference(wanted))
                };
                next[(i, j)] = next[(i, j)].intersection(candidate);
            }
        }
    }
    Ok(StepOutcome {
        weights: next,
        branches,
    })
}

/// Runs the update rule from `W(0) = 1` until two consecutive iterates agree
/// or `max_steps` updates have been applied.
pub fn train(
    patterns: &PatternFamily,
    c: &Matrix<Element>,
    d: &[Element],
    max_steps: usize,
) -> Result<TrainingTrace, LearningError> {
    let l = &**patterns.lattice();
    if !l.is_atomic() {
        return Err(LearningError::NotAtomic);
    }
    let top = l.atoms_of(l.top())?;
    let mut trace = TrainingTrace {
        steps: vec![Matrix::filled(patterns.n(), patterns.m(), top)],
        branches: Vec::new(),
        converged_at: None,
    };
    for t in 1..=max_steps {
        let outcome = step(trace.final_weights(), patterns, c, d)?;
        let fixed = &outcome.weights == trace.final_weights();
        trace.steps.push(outcome.weights);
        trace.branches.push(outcome.branches);
        if fixed {
            trace.converged_at = Some(t);
            return Ok(trace);
        }
    }
    Err(LearningError::NotConverged(Box::new(trace)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::{init_model, PatternPair};

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
    fn inputs_below_outputs_keep_top() {
        let l = Arc::new(Lattice::powerset(["a", "b", "c"]).unwrap());
        let fam = family(&l, &[(&["a", "0"], &["ab"]), (&["b", "c"], &["bc"])]);
        let model = init_model(&fam);
        let trace = train(
            &fam,
            model.input_thresholds(),
            model.output_thresholds(),
            default_max_steps(fam.len()),
        )
        .unwrap();
        assert_eq!(trace.converged_at(), Some(1));
        let top = l.atoms_of(l.top()).unwrap();
        assert!(trace.final_weights().iter().all(|&w| w == top));
        assert!(trace.branches()[0]
            .iter()
            .flatten()
            .all(|&b| b == Branch::Keep));
    }

    #[test]
    fn general_lattice_is_rejected() {
        let l = Arc::new(
            Lattice::build(&crate::lattice::LatticeSpec::general(
                ["lo", "hi"],
                [("lo", "hi")],
            ))
            .unwrap(),
        );
        let fam = family(&l, &[(&["lo"], &["hi"])]);
        let model = init_model(&fam);
        assert!(matches!(
            train(&fam, model.input_thresholds(), model.output_thresholds(), 4),
            Err(LearningError::NotAtomic)
        ));
    }

    #[test]
    fn exhausted_guard_returns_trace() {
        let l = Arc::new(Lattice::powerset(["a", "b"]).unwrap());
        let fam = family(&l, &[(&["a"], &["b"])]);
        let model = init_model(&fam);
        match train(&fam, model.input_thresholds(), model.output_thresholds(), 1) {
            Err(LearningError::NotConverged(trace)) => {
                assert_eq!(trace.len(), 2);
                assert_eq!(trace.converged_at(), None);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let l = Arc::new(Lattice::powerset(["a", "b"]).unwrap());
        let fam = family(&l, &[(&["a"], &["b"])]);
        let c = Matrix::filled(2, 1, l.bottom());
        assert!(matches!(
            train(&fam, &c, &[l.bottom()], 3),
            Err(LearningError::Memory(MemoryError::ArityMismatch { .. }))
        ));
    }
}
