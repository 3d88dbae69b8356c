//! Exact algebra for Drinfeld–Kohno Lie algebras, Brunnian subalgebras,
//! pentagon maps, double shuffle and Kashiwara–Vergne structures.
#![no_std]

extern crate alloc;

pub mod braids;
pub mod dkho;
pub mod dmr;
pub mod emergent;
pub mod error;
pub mod freelie;
pub mod krv;
pub mod linalg;
pub mod lincomb;
pub mod ncalg;
pub mod pentagon;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use freelie::LieElement;
pub use lincomb::LinComb;
pub use ncalg::NCPoly;
pub use scalar::Scalar;
