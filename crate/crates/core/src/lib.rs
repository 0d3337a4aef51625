//! Exact rational designs for symmetric classical measures, Prouhet-Tarry-Escott
//! solutions, congruence nonexistence certificates and the searches that
//! produce sporadic configurations.

pub mod certificates;
pub mod curves;
pub mod designs;
pub mod error;
pub mod families;
pub mod identities;
pub mod measures;
pub mod poly;
pub mod pte;
pub mod quadext;
pub mod rational;
pub mod search;
pub mod spectrum;

pub use designs::{compose, verify, Design, DesignReport};
pub use error::Error;
pub use measures::{moment, MeasureSpec};
pub use poly::MultiPoly;
pub use quadext::{Field, QuadExt};
pub use rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;
