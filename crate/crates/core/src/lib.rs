//! Exact computations with quadratic forms, Witt and Grothendieck-Witt rings,
//! Milnor-Witt K-theory in low degrees, and quadratic zero-cycles on the
//! projective line and plane conics.

pub mod arith;
pub mod error;
pub mod expr;
pub mod factor;
pub mod fields;
pub mod json;
pub mod gersten;
pub mod linalg;
pub mod milnorwitt;
pub mod poly;
pub mod quadforms;
pub mod rational_points;
pub mod squares;
pub mod suite;
pub mod transfer;
pub mod wittgw;

pub use error::{Error, Result};
pub use fields::{Elem, Field, Place};
pub use poly::Poly;
pub use quadforms::DiagonalForm;
pub use wittgw::{Decision, GwElement, WittClass};
pub use milnorwitt::{MilnorPart, MwElement};
pub use gersten::{ClosedPoint, Curve, QuadraticZeroCycle, ZeroCycle};
pub use rational_points::{DegreeOneWitness, Lift, LiftCase, MainTheoremReport};
