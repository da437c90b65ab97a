//! Crate-wide error type.

use std::fmt;

use crate::constellation::Label;

/// Errors reported by constellation construction, cluster analysis and the
/// cluster file parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two edges leaving the same point carry the same label.
    DuplicateSiblingLabel { parent: usize, label: Label },
    /// A point was created before its parent.
    ParentAfterChild { child: usize, parent: usize },
    /// More than one point has no parent.
    MultipleRoots { first: usize, second: usize },
    /// A point index is out of range or unreachable from the root.
    Disconnected { point: usize },
    /// A multiplicity sum `M(a, b)` was requested with `a = b`.
    EqualLabels,
    /// The multiplicity vector does not match the number of points.
    MultiplicityCount { expected: usize, got: usize },
    /// An analysis operation requires every multiplicity to be positive.
    NonPositiveMultiplicity { point: usize },
    /// A linear proximity inequality fails (slack is negative).
    IdealisticViolation {
        point: usize,
        pair: (Label, Label),
        slack: i64,
    },
    /// The root cannot be queried for switch-point status.
    RootHasNoSwitchStatus,
    /// A pairwise stratum was requested for divisors that do not intersect.
    NotProximate { from: usize, to: usize },
    /// The lattice enumeration bound exceeds the configured ceiling.
    BoundOverflow { bound: u64, ceiling: u64 },
    /// A cyclotomic exponent is negative; the product is not a polynomial.
    NegativeExponent { order: u64, exponent: i64 },
    /// A cluster file line could not be parsed.
    SyntaxError { line: usize, message: String },
    /// A cluster file lists points out of creation order.
    OrderViolation { line: usize },
    /// A cluster file repeats a sibling label.
    LabelClash { line: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateSiblingLabel { parent, label } => {
                write!(f, "point {parent} has two children with label {label}")
            }
            Error::ParentAfterChild { child, parent } => {
                write!(f, "point {child} is created before its parent {parent}")
            }
            Error::MultipleRoots { first, second } => {
                write!(f, "points {first} and {second} both lack a parent")
            }
            Error::Disconnected { point } => {
                write!(f, "point {point} is out of range or unreachable")
            }
            Error::EqualLabels => write!(f, "the two labels of a multiplicity sum must differ"),
            Error::MultiplicityCount { expected, got } => {
                write!(f, "expected {expected} multiplicities, got {got}")
            }
            Error::NonPositiveMultiplicity { point } => {
                write!(f, "point {point} must have positive multiplicity")
            }
            Error::IdealisticViolation { point, pair, slack } => write!(
                f,
                "linear proximity inequality fails at point {point} for labels {{{}, {}}} (slack {slack})",
                pair.0, pair.1
            ),
            Error::RootHasNoSwitchStatus => write!(f, "the root has no switch-point status"),
            Error::NotProximate { from, to } => {
                write!(f, "point {from} is not proximate to point {to}")
            }
            Error::BoundOverflow { bound, ceiling } => write!(
                f,
                "lattice bound {bound} exceeds ceiling {ceiling} (set CLUSTERZETA_BOUND_CEILING to raise it)"
            ),
            Error::NegativeExponent { order, exponent } => write!(
                f,
                "cyclotomic exponent {exponent} at order {order} is negative"
            ),
            Error::SyntaxError { line, message } => write!(f, "line {line}: {message}"),
            Error::OrderViolation { line } => {
                write!(f, "line {line}: point ids must increase and parents must come first")
            }
            Error::LabelClash { line } => {
                write!(f, "line {line}: sibling label already used")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
