//! Composite Hilbert spaces, dense operators and states.

mod operator;
mod space;
mod state;

pub use operator::{elementary, embed, tensor, ElementaryKind, Operator};
pub use space::{HilbertSpace, Subsystem, SubsystemKind};
pub use state::{QuantumState, StateData};
