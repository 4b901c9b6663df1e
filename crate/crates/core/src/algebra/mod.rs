//! Exact arithmetic over the rationals: numbers, polynomials, binary forms,
//! factorization, resultants and jet quotients.

pub mod binary_form;
pub mod field;
pub mod factor;
pub mod jet;
pub mod json;
pub mod multipoly;
pub mod rational;
pub mod resultant;
pub mod unipoly;

pub use binary_form::{BinaryForm, P1Point};
pub use factor::{FactorError, FactorList};
pub use jet::{jet_quotient_dim, stabilized_jet_dim, truncated_quotient_dim, NonStabilized};
pub use multipoly::{Monomial, MultiPoly, PolyRing};
pub use rational::{rat, ratio, Rational};
pub use resultant::{discriminant_cubic, resultant, CubicDiscriminant, ResultantError};
pub use unipoly::UniPoly;
