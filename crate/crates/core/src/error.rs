//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while constructing or analyzing maps and states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A square matrix was required.
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    /// Operand shapes are incompatible; the message names the operation.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    /// Hermiticity precondition failed; carries the max entrywise deviation from H = H†.
    #[error("matrix deviates from Hermitian by {0:.3e}")]
    NotHermitian(f64),
    /// Iterative eigensolver hit its sweep cap; carries the cap.
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    /// Inverse square root of a matrix with an eigenvalue at or below the cutoff.
    #[error("matrix is not positive definite (eigenvalue {0:.3e} at or below cutoff)")]
    NotPositiveDefinite(f64),
    /// A dimension argument is out of range for the requested construction.
    #[error("bad dimension: {0}")]
    BadDim(String),
    /// The matrix fails the antisymmetric-operator invariants.
    #[error("invalid antisymmetric operator: {0}")]
    InvalidAntisym(String),
    /// The normalized map is undefined at d = 2 (the normalization divides by d − 2).
    #[error("map is trivial at d = 2; no normalized form exists")]
    TrivialMap,
    /// Family parameters outside the unit square.
    #[error("parameters (x, y) = ({x}, {y}) lie outside [0,1]^2")]
    RangeError { x: f64, y: f64 },
    /// Generator pair indices must satisfy k < l < d.
    #[error("invalid generator pair ({0}, {1})")]
    BadPair(usize, usize),
    /// A nonzero vector was required.
    #[error("vector is zero")]
    ZeroVector,
    /// A state flagged as normalized must have unit trace; carries the deviation.
    #[error("state trace deviates from 1 by {0:.3e}")]
    NotNormalized(f64),
    /// Schmidt term count k outside 1..=min(dA, dB).
    #[error("schmidt term count {k} out of range for dimension {d}")]
    BadK { k: usize, d: usize },
    /// The matrix fails the real-orthogonality precondition; carries the deviation.
    #[error("matrix deviates from real orthogonal by {0:.3e}")]
    NotOrthogonal(f64),
    /// A pairing that should be real came out with a large imaginary part.
    #[error("pairing has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
