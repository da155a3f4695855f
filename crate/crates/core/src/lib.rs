//! Exact arithmetic for left-orderings and Conradian orderings on
//! `B(1,l)`, Tararin groups `T_n`, the groups `C_n` and `Z^n`.
//!
//! Elements are kept in normal form ([`groups`]), orderings are finite
//! descriptors with exact sign oracles ([`orderings`]), and the remaining
//! modules build checks, affine dynamics and probes of ordering spaces on
//! top of those oracles.

pub mod conradian;
pub mod dynamics;
pub mod error;
pub mod groups;
pub mod orderings;
pub mod space;

pub use error::{Error, Result};
pub use groups::{Ball, Element, Family, Generator, LFraction, Word};
pub use orderings::{OrderingDescriptor, QuadraticNumber, Side, Sign, SignOracle};
