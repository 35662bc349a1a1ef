//! Sign-vector states of cocycle circuits on closed chains and Union Jack tori.

mod build;
mod embed;
mod lattice;
mod sweep;
mod reduce;
mod schmidt;
mod state;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::tensor_forms::TensorError;

pub use build::{build_cochain_state, build_state, Convention};
pub use embed::{apply_global_generator, check_global_symmetry, embed_g3, EmbeddedState, PadState};
pub use lattice::{build_chain, build_union_jack, Color, Lattice, LatticeKind};
pub use sweep::{symmetry_sweep, SweepReport, MAX_SWEEP_DIM};
pub use reduce::{reduce_to_union_jack, union_jack_reference, Outcomes, Reduction};
pub use schmidt::{schmidt_rank_log2, MAX_CUT_SIDE};
pub use state::{
    apply_fractional_symmetry, is_same_state, measure_z, MeasurementRecord, QubitLabel, SignState,
};

/// Largest number of qubits held in a single phase table.
pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("{0}")]
    BadLatticeSize(String),
    #[error("lattice is not closed: {0}")]
    NotClosed(String),
    #[error("form of degree {found} does not fit simplices of arity {expected}")]
    Arity { expected: usize, found: usize },
    #[error("{qubits} qubits exceeds the limit of {max}")]
    TooManyQubits { qubits: usize, max: usize },
    #[error("cocycle space of dimension {cocycles_log2} is too large to sweep")]
    SweepTooLarge { cocycles_log2: usize },
    #[error("states have different qubit labels")]
    LabelMismatch,
    #[error("qubit {0:?} is not in the state")]
    NotPresent(QubitLabel),
    #[error("operation needs a Union Jack torus")]
    UnsupportedLattice,
    #[error("a pad qubit is not in |+>, so the state has no sign-table form")]
    NotSignState,
    #[error("Schmidt rank {0} is not a power of two")]
    RankNotPowerOfTwo(usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}
