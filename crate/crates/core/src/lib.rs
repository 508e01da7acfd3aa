//! Verification kit for the even subalgebra `K^λ` of Cl(4,0).
//!
//! * [`multivector`]: dense Cl(4,0) arithmetic with a derived blade table.
//! * [`even`]: quaternion pairs `q_r + q_d ε`, split-complex norms, the
//!   composition law and the 7-sphere predicate.
//! * [`bell`]: seeded Monte Carlo for the 3-sphere singlet model.
//! * [`chsh`]: Pauli operators, the CHSH operator spectrum, and outcome
//!   enumeration.

pub mod bell;
pub mod chsh;
pub mod even;
pub mod multivector;

pub use bell::{
    simulate, CorrelationEstimate, SimConfig, TrialRecord, UnitVector3,
};
pub use chsh::Operator4;
pub use even::{Hyperbolic, KElement, Orientation, Quaternion};
pub use multivector::{Blade, Multivector16};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Multivector(#[from] multivector::MultivectorError),
    #[error(transparent)]
    EvenAlgebra(#[from] even::EvenAlgebraError),
    #[error(transparent)]
    Bell(#[from] bell::BellError),
    #[error(transparent)]
    Chsh(#[from] chsh::ChshError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
