//! Left-orderings as finite descriptors with exact sign oracles.

mod cone;
mod descriptor;
mod quadratic;
mod sign;

pub use cone::{check_cone_axioms, ConeAxiom, ConeReport, ConeViolation};
pub(crate) use descriptor::ell_pow;
pub use descriptor::{compare, sign_of, OrderingDescriptor, Side, SignOracle};
pub use quadratic::QuadraticNumber;
pub use sign::Sign;
