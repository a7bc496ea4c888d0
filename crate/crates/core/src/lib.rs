//! Exact red-blue separation by lines for points on a circle.
//!
//! The crate provides exact-rational geometry, the chunk/switch decomposition
//! of circle instances, the switch graph and its edge-cover bound, optimal
//! general-line and axis-parallel solvers, brute-force oracles, and the
//! reduction from colorful red-blue dominating set to (p,q)-axis-parallel
//! separation.

pub mod arcs;
pub mod bitset;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod reduction;
pub mod solution;
pub mod solvers;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{Color, ColoredPoint, Line, Orientation};
pub use instance::{Instance, Kind};
pub use rational::Rational;
