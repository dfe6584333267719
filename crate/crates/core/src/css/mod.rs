//! CSS codes, Pauli operators and exact sparse code states.

mod amplitude;
mod code;
mod pauli;
mod state;

pub use amplitude::{Cyclotomic, MAX_LEVEL};
pub use code::{css_distance, new_css, CssCode, CssDistance, STATE_DIM_CAP};
pub use pauli::PauliOperator;
pub use state::{GlobalPhase, SparseState, SPARSE_TERM_CAP};
