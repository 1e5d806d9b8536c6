//! Analysis toolkit for bipartite correlation experiments on density
//! operators: separable representations, discrete-outcome POVM statistics,
//! Bell and CHSH inequalities with product-state bounds, their quantum
//! analogues on two-copy auxiliary states, a local hidden-variable model
//! for comparison, and deterministic sweep searches over measurement
//! settings.

pub mod classical;
pub mod error;
pub mod expectations;
pub mod inequalities;
pub mod io;
pub mod measurements;
pub mod qlinalg;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use expectations::{bob_bob_correlation, correlation, joint_probability, CorrelationRecord};
pub use inequalities::{
    bell_original, bell_restriction, chsh_report, chsh_value, condition_sor, condition_vbi,
    extended_chsh, quantum_bell_analogue, separable_bound, separable_bound_inf,
    two_term_linear_bound, BellRestriction, GammaBranch, GammaVector, InequalityReport,
    SignCondition, VbiOutcome, INEQ_TOL,
};
pub use measurements::{spin_matrix, spin_observable, DiscretePovm, OutcomeSet};
pub use qlinalg::{hermitian_eigen, kron, swap_operator, sym_tensor, ComplexMatrix, DEFAULT_TOL};
pub use states::{
    mix_representations, rho_zero, sigma1_of, sigma2_of, sigma_sym_of, DensityOperator, RepTerm,
    SeparableRepresentation,
};
pub use sweep::{
    bell_violation_sweep, chsh_sweep, quantum_analogue_sweep, separable_soundness_sweep,
    SweepConfig, SweepResult, SweepTarget,
};
