use num_bigint::BigInt;
use thiserror::Error;

use crate::lie::Weight;
use crate::poly::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("cannot parse weight {input:?}: {reason}")]
    BadWeight { input: String, reason: String },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    BadPolynomial { input: String, reason: String },

    #[error("{source_name}:{line}: {reason}")]
    Parse {
        source_name: String,
        line: usize,
        reason: String,
    },

    #[error("fixture series {series} fails the dimension sum: expected {expected}, got {found}")]
    FixtureCorruption {
        series: String,
        expected: BigInt,
        found: BigInt,
    },

    #[error("corpus is missing the character for {0}")]
    CorpusIncomplete(Weight),

    #[error("operator maps {from} to {to}, which is not below it in the root lattice")]
    StructuralViolation { from: Monomial, to: Monomial },

    #[error("eigenvalue gap vanishes for {lower} below {top}")]
    ZeroDenominator { top: Weight, lower: Weight },

    #[error("character {weight} has non-integral coefficient on {monomial}")]
    NonIntegral { weight: Weight, monomial: Monomial },

    #[error("decomposition of {product} failed: {reason}")]
    Decomposition { product: String, reason: String },

    #[error("oracle refuses {weight}: dimension {dim} exceeds ceiling {ceiling}")]
    OracleRefusal {
        weight: Weight,
        dim: BigInt,
        ceiling: u64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
