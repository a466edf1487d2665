//! Thermodynamic formalism on symmetric β-shifts.
//!
//! The crate is layered bottom-up:
//!
//! * [`number`]: exact arithmetic in `Q(β)` for rational, quadratic and cubic bases.
//! * [`sequence`]: finite words and canonical eventually periodic sequences.
//! * [`expansion`]: greedy, lazy and quasi-greedy expansions, `G(m)` and `β_T`.
//! * [`shift`]: kneading data, admissibility, cylinder bases and transitivity.
//! * [`potential`]: Hölder potentials sampled on cylinders.
//! * [`transfer`]: the discretized Ruelle operator and its Perron eigendata.
//! * [`thermo`]: pressure, entropy, Gibbs measures and zero-temperature scans.

pub mod error;
pub mod expansion;
pub mod number;
pub mod potential;
pub mod sequence;
pub mod shift;
pub mod thermo;
pub mod transfer;

pub use error::{Error, Result};
pub use expansion::{Beta, Params};
pub use potential::PotentialSpec;
pub use sequence::{lex_compare, metric_d, PeriodicSeq, Sequence, Word};
pub use shift::{Decision, Kneading, Transitivity};
pub use transfer::{build_system, BuildOptions, SolveOptions, TransferSystem};
