#![no_std]
#![allow(clippy::needless_range_loop)]
//! Decorated super-Teichmüller theory at desk scale.
//!
//! Grassmann-valued arithmetic ([`grassmann`]), `OSp(1|2)` supermatrices
//! ([`superlinalg`]), super Minkowski space and its normal forms
//! ([`minkowski`]), spin structures on trivalent fatgraphs
//! ([`fatgraph_spin`]) and λ-length/μ-invariant coordinates with super
//! Ptolemy flips, lifts and representations ([`decorated`]).

extern crate alloc;

pub mod decorated;
pub mod error;
pub mod fatgraph_spin;
pub mod grassmann;
pub mod minkowski;
pub mod sample;
pub mod superlinalg;

pub use error::Error;
pub use grassmann::{Grassmann, Parity};
pub use minkowski::{PositiveTriple, SuperVector};
pub use superlinalg::{OspElement, SuperMatrix};
