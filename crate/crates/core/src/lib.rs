//! Quantum mechanics on finite groupoids.
//!
//! The library builds finite groupoids of physical transitions, the
//! *-algebra of complex amplitudes on them, its fundamental representation
//! on the event Hilbert space, states and their GNS representations,
//! Hamiltonian dynamics generated by inner derivations, frame-change
//! transition functions, and the Markovian classical limit of a deformed
//! Hamiltonian.

pub mod algebra;
pub mod classical;
pub mod dynamics;
pub mod error;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod models;
pub mod representation;
pub mod spec;
pub mod states;

pub use algebra::AlgebraElement;
pub use error::{Error, Result};
pub use groupoid::{EventId, FiniteGroupoid, TransitionId};
pub use linalg::C64;
pub use representation::Operator;
// pub use spec::GroupoidSpec;
pub use states::State;
