use alloc::string::String;
use core::fmt;

/// Errors shared by all modules. Each variant maps to one machine-readable
/// code in the CLI (see the companion crate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values from free groups / rings of different ranks were combined.
    RankMismatch { left: u16, right: u16 },
    /// A generator index outside 1..=rank.
    IndexOutOfRange { index: i64, rank: u16 },
    /// Text input does not conform to the grammar; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
    /// A braid operation requiring a pure braid got a non-identity permutation.
    NonPureBraid,
    /// An operation requiring a zeta-fixing endomorphism got one that moves zeta.
    BoundaryNotFixed,
    /// Inversion of the zero fraction.
    ZeroInversion,
    /// A matrix that must be invertible is singular.
    SingularMatrix,
    /// det over Z[H] was expected to be a unit (+-monomial) but is not.
    NonMonomialDeterminant,
    /// johnson_tau called below its depth precondition.
    DepthTooShallow { depth: usize, need: usize },
    /// A formula valid only for trivial homology action got sigma != I.
    HomologyActionNontrivial,
    /// Wirtinger/Alexander input with a vanishing determinant or bad shape.
    DegeneratePresentation(String),
    /// An admissible presentation failed cylinder validation.
    NotACylinder(String),
    /// A rho_1 exponent assignment gives some relator a nonzero t-degree.
    Rho1Inconsistent { relator: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "generator index {index} out of range for rank {rank}")
            }
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::NonPureBraid => write!(f, "braid is not pure (permutation is not the identity)"),
            Error::BoundaryNotFixed => write!(f, "endomorphism does not fix the boundary word"),
            Error::ZeroInversion => write!(f, "inversion of zero"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NonMonomialDeterminant => {
                write!(f, "determinant is not a +-monomial unit of Z[H]")
            }
            Error::DepthTooShallow { depth, need } => {
                write!(f, "filtration depth {depth} below required {need}")
            }
            Error::HomologyActionNontrivial => {
                write!(f, "homology action is not the identity")
            }
            Error::DegeneratePresentation(msg) => write!(f, "degenerate presentation: {msg}"),
            Error::NotACylinder(msg) => write!(f, "not a homology cylinder: {msg}"),
            Error::Rho1Inconsistent { relator } => {
                write!(f, "rho1 exponents give relator {relator} a nonzero t-degree")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
