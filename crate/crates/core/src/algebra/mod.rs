//! Finite algebras and the combinatorial primitives on them: products,
//! generated subuniverses, congruences, quotients and homomorphism search.

pub mod catalog;
mod congruence;
mod finite;
mod hom;
mod signature;
mod subalgebra;

pub use congruence::{congruence_generated, is_simple, quotient, Congruence};
pub use finite::{
    decode_product_element, decode_tuple, encode_product_element, generated_subuniverse, is_subuniverse,
    product, tuple_index, validate_tables, Defect, DefectKind, FiniteAlgebra,
};
pub(crate) use finite::next_tuple;
pub use hom::{are_isomorphic, find_homomorphism, is_homomorphism, Homomorphism};
pub use signature::{is_identifier, Signature, Symbol};
pub(crate) use signature::is_variable_name;
pub use subalgebra::{all_subuniverses, subalgebras_up_to_iso, Subalgebra};
