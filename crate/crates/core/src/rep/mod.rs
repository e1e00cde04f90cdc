//! Representations: differential operators, Bargmann-Fock and Schrödinger
//! representations, GNS construction for matrix algebras, commutants and the
//! classical limit.

pub mod diffop;
pub mod gns;
pub mod quantum;

pub use diffop::{formal_adjoint, DiffOperator};
pub use quantum::{fock_inner, schroedinger_rep, wickrep, Ordering};
