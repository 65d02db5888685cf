//! Bound states of the radial Dirac equation under exact spin and pseudospin
//! symmetry for three exponential potentials (hypergeometric-type, generalized
//! Morse, Pöschl–Teller), solved with the parametric Nikiforov–Uvarov method
//! and checked against a numerical shooting solver.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod errata;
pub mod exec;
pub mod nu_engine;
pub mod oracle;
pub mod potential;
pub mod special_fn;
pub mod spectrum;
pub mod validation;
pub mod wavefunction;

pub use errata::Transcription;
pub use nu_engine::{derive_parameters, quantization_residual, NuCoefficients, NuDerived, NuError, RootBranch};
pub use potential::{
    BoundProblem, CentrifugalMode, ModelError, PotentialSpec, QuantumState, SymmetryLimit, VariableMap,
};
pub use spectrum::{solve, EnergyBranch, EnergyLevel, EquationId, SolverConfig, SpectrumError};
