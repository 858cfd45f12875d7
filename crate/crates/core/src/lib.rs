//! Exact analysis of inverse limits of piecewise-linear interval maps.
//!
//! Everything runs on exact rationals: maps, their iterates, fixed and
//! periodic sets, splitting certificates and their replay.

pub mod cli;
pub mod corpus;
pub mod decider;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod interval;
pub mod invlim;
pub mod plmap;
pub mod rational;
pub mod render;
pub mod report;
pub mod splitting;

pub use decider::{decide, ArcVerdict, Outcome};
pub use error::{Error, Result};
pub use interval::IntervalQ;
pub use plmap::{Direction, Lap, PLMap};
pub use rational::Rational;
pub use splitting::SplitCertificate;
