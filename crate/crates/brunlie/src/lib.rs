//! JSON formats, the on-disk subspace cache and the command-line front end
//! for `brunlie-core`.

pub use brunlie_core as core;

pub mod cache;
pub mod cli;
pub mod json;
pub mod verify;
