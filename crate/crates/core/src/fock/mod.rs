//! Free bosons, highest weights, and the oscillator engine used for matrix elements.

pub mod boson;
pub mod correlator;
pub mod space;

pub use boson::{boson_commutator, elementary_symmetric, hw_eigenvalue_w, p_binomial, p_number, HighestWeight};
pub use correlator::{contraction_series, group_correlator, group_correlator_with, lambda_correlator, ratio_vars, times_ratio_series, Insertion, Kernel};
pub use space::{Fock, FockVec, Mono, Point, VertexOp};
