//! Lattice-valued associative memory with thresholds.
//!
//! Values live in a finite distributive lattice with internal implication
//! (a Brouwer lattice). A memory stores pattern pairs `(x, y)` with
//! `x ∈ Lⁿ`, `y ∈ Lᵐ` and recalls through ∨–∧ composition with input and
//! output thresholds.
//!
//! - [`lattice`]: lattice construction, order, join/meet, implication.
//! - [`memory`]: closed-form initialization, recall, storability, classification.
//! - [`learning`]: iterative weight learning over atomic lattices.
//! - [`oracle`]: brute-force ground truth used by the test suites.
//! - [`io`]: JSON file formats.

pub mod io;
pub mod lattice;
pub mod learning;
pub mod matrix;
pub mod memory;
pub mod oracle;

pub use lattice::{Comparison, Element, GeneratorSet, Lattice, LatticeError, LatticeSpec};
pub use matrix::Matrix;
pub use memory::{
    check_storability, classify, init_model, init_model_with, is_solution, partition_patterns,
    verify_bounds, C0Mode, ClassDecision, MemoryError, MemoryModel, PatternFamily, PatternPair,
};
