#![doc = include_str!("../README.md")]

pub mod charsolve;
pub mod csmodel;
pub mod error;
pub mod fixtures;
pub mod lie;
pub mod oracle;
pub mod poly;
pub mod tensor;

pub use charsolve::{verify_character, CharacterTable};
pub use csmodel::{apply_delta1, build_a, build_b, Delta1Operator};
pub use error::{Error, Result};
pub use fixtures::QuadraticCorpus;
pub use lie::{cartan_matrix, dominant_weights_below, eigenvalue, weyl_dim, RootVector, Weight};
pub use poly::{Monomial, MultiPoly};
pub use tensor::{cg_decompose, monomial_decompose, CGSeries};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/operator.md")]
    mod operator {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/tensor-products.md")]
    mod tensor_products {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
