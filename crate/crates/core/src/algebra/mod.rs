//! Exact scalar fields, polynomials and truncated series.

pub mod ctx;
pub mod cyc;
pub mod hbar;
pub mod linalg;
pub mod pade;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod scalar;
pub mod series;

pub use ctx::{Regime, ScalarCtx};
pub use cyc::Cyc;
pub use hbar::Hbar;
pub use pade::{rational_reconstruct, reconstruct_minimal, RationalFunction};
pub use poly::Poly;
pub use quad::Quad;
pub use rat::{fmt_rat, int, parse_rat, rat, Rat};
pub use scalar::Scalar;
pub use series::{LaurentWindow, PowerSeries};
