//! Exact computations for Coulomb branches of 3d N=4 gauge theories:
//! monopole-formula characters, abelian Coulomb-branch rings with their
//! flavored costalk modules, and the section modules of Kleinian surfaces.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod error;
pub mod gauge;
pub mod klein;
pub mod monopole;
pub mod poly;
pub mod report;
pub mod ring;
pub mod series;
pub mod slice;
pub mod suites;

pub use error::{Error, Result};
pub use gauge::{parse_spec, FlavorCoweight, Preset, TheorySpec};
pub use series::{BiDegree, Rational, TruncatedSeries};
