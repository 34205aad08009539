//! Exact computation with finite generalized Legendrian racks (GL-racks).
//!
//! * [`permutation`]: permutation arithmetic on `{0..n}`
//! * [`glrack`]: validation, derived maps, isomorphism, the text format
//! * [`decomposition`]: splitting a GL-rack along the cycles of `Δ(x) = x∗x`
//! * [`diagram`]: front-code presentations of Legendrian knots
//! * [`coloring`]: counting homomorphisms from a presentation into a GL-rack
//! * [`census`]: exhaustive enumeration of small racks and GL-racks
//! * [`verify`]: executable checks of the coloring theorems
//!
//! Elements and arcs are 0-based in the Rust API and 1-based in every text
//! format and display.

use std::fmt;

pub mod census;
pub mod coloring;
pub mod decomposition;
pub mod diagram;
pub mod examples;
pub mod glrack;
pub mod permutation;
pub mod verify;

pub use coloring::{ColoringError, ColoringReport, Method};
pub use decomposition::{DeltaDecomposition, GroupKind, QuotientQuandle};
pub use diagram::{ClassicalInvariants, FrontCode, Relation, Sign, StabilizationKind};
pub use glrack::{GlRack, RackError, ValidationReport};
pub use permutation::Permutation;

/// A text-format error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}
