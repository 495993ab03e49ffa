//! Structural completeness of quasivarieties generated by finite algebras.
//!
//! The quasivariety `Q(K)` generated by a finite class `K` of finite algebras
//! is studied through its free algebras `F(k)` and finitely presented
//! algebras `P_φ`, both represented as algebras of term functions. On top of
//! that sit the classification of quasi-identities (valid, admissible,
//! active, passive), the search for discriminator terms and the SC/ASC
//! verdict for discriminator varieties.
//!
//! ```
//! use scasc::algebra::catalog;
//! use scasc::discriminator::{sc_verdict, Tri, VerdictOptions};
//! use scasc::free::GeneratingClass;
//!
//! let class = GeneratingClass::single(catalog::three_element_disc_with_constants());
//! let v = sc_verdict(&class, &VerdictOptions::default()).unwrap();
//! assert_eq!((v.asc, v.sc), (Tri::Yes, Tri::No));
//! ```

pub mod admissibility;
pub mod algebra;
pub mod discriminator;
pub mod error;
pub mod free;
pub mod io;
pub mod limits;
pub mod term;

pub use error::{Error, Result};
pub use limits::Limits;
