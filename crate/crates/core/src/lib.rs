//! Exact computation of the arrow polynomial of virtual knots from signed
//! Gauss codes, with the virtual-crossing and genus lower bounds that the
//! polynomial carries.

pub mod arrowpoly;
pub mod bounds;
pub mod diagram;
pub mod statesum;

pub use arrowpoly::{ArrowMonomial, ArrowPolynomial, LaurentA, PolyParseError};
pub use bounds::{BoundsReport, GenusRule, InvariantReport};
pub use diagram::{GaussCode, GaussParseError, GaussPass, MoveKind, MovePair, Sign, Strand};
pub use statesum::{Convention, CuspWord, SmoothingChoice, StateLoop, CALIBRATED};
