//! Realizability solvers and their common verdict type.

mod brute;
mod homonymous;
mod maximal;

use std::fmt;

use thiserror::Error;

use crate::complex::ArcId;
use crate::lifting::{LiftingPicture, PictureError, SheetError};
use crate::merge::MergeError;
use crate::structure::{DecomposeError, OrderCycle};

pub use brute::{brute_force_realize, BruteForce, BruteLimits};
pub use homonymous::homonymous_recursion;
pub use maximal::{heteronymous_realization, realize_maximal};

/// Why a diagram was judged not realizable, or why a solver gave up.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("no outer arcs on a substrate that is not a square")]
    NoOuterArcs,
    #[error("least outer arcs have both colors")]
    MixedColors,
    #[error("substrate stays connected after reducing along the least outer arcs")]
    StaysConnected,
    #[error("components meet in a cycle")]
    ComponentCycle,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("ladder merge: {0}")]
    Merge(#[from] MergeError),
    #[error("clump {clump}: {reason}")]
    Clump { clump: usize, reason: Box<Reason> },
    #[error("{found} branching arcs, expected {expected}")]
    BranchingCount { found: usize, expected: i64 },
    #[error("branching data rejected: {0}")]
    Sheets(SheetError),
    #[error("picture rejected: {0}")]
    Picture(PictureError),
    #[error("assembled picture does not lift to the diagram")]
    Verification,
    #[error("no candidate picture among {0}")]
    Exhausted(String),
    #[error("enumeration limit reached: {0}")]
    Limits(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("{0}, but the diagram has weight-zero arcs, which need not lift")]
    ZeroWeightArcs(Box<Reason>),
}

impl From<OrderCycle> for Reason {
    fn from(_: OrderCycle) -> Self {
        Reason::ComponentCycle
    }
}

#[derive(Debug, Clone)]
pub enum RealizationResult {
    Realizable(Box<LiftingPicture>),
    NotRealizable(Reason),
    SolverIncomplete(Reason),
}

impl RealizationResult {
    pub fn is_realizable(&self) -> bool {
        matches!(self, RealizationResult::Realizable(_))
    }

    pub fn picture(&self) -> Option<&LiftingPicture> {
        match self {
            RealizationResult::Realizable(p) => Some(p),
            _ => None,
        }
    }

    /// Short verdict name: `realizable`, `not-realizable` or `incomplete`.
    pub fn verdict(&self) -> &'static str {
        match self {
            RealizationResult::Realizable(_) => "realizable",
            RealizationResult::NotRealizable(_) => "not-realizable",
            RealizationResult::SolverIncomplete(_) => "incomplete",
        }
    }
}

impl fmt::Display for RealizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationResult::Realizable(p) => {
                write!(f, "realizable with {} branching arcs", p.branching().len())
            }
            RealizationResult::NotRealizable(r) => write!(f, "not realizable: {r}"),
            RealizationResult::SolverIncomplete(r) => write!(f, "solver incomplete: {r}"),
        }
    }
}

/// An ordered branching diagram with its bigon diagram, before it is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Partial {
    pub branching: Vec<ArcId>,
    pub bigon: crate::bigon::WeightedBigonDiagram,
}
