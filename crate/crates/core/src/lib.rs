//! Barnes-type multiple zeta functions built from the hyperbolic
//! distributions: the sinh-, cosh- and tanh-moment functions S, C and T,
//! evaluated by direct summation and by their integral representations.

pub mod continuation;
pub mod error;
pub mod hyperdist;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod selfcheck;
pub mod series;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
pub use special::ComplexValue;
