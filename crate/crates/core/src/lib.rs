//! Exact characters of simple Lie algebras and the unique factorization of
//! tensor-product characters.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: Cartan data, Weyl group actions and corner restrictions.
//! * [`charlattice`]: the ring of formal characters, Weyl numerators,
//!   irreducible characters and degree slicing.
//! * [`tensorops`]: tensor product decompositions and PRV components.
//! * [`factorizer`]: recovery of the highest weights from a product.
//! * [`lindep`]: exact rank checks for families of spiked products.
//! * [`verify`]: replayable worked examples.

pub mod charlattice;
pub mod error;
pub mod factorizer;
pub mod linalg;
pub mod lindep;
pub mod par;
pub mod rootsys;
pub mod tensorops;
pub mod verify;

pub use charlattice::{FormalCharacter, Lattice};
pub use error::{Error, Result};
pub use par::Execution;
pub use rootsys::{Limits, LieType, RootSystem, Weight};
