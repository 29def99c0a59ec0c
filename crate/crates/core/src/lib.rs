//! An engine for constructible cosheaves on stratified simplicial complexes.
//!
//! The pieces, bottom up:
//!
//! - [`complex`]: finite simplicial complexes with a removed closed
//!   subcomplex, star/closure/link queries, and validated stratifications.
//! - [`cosheaf`]: values and maps on cells, evaluation of open sets by
//!   colimits, costalks, transport along entrance words, gluing checks.
//! - [`zigzag`]: modules over a stratified open line and their interval
//!   barcodes via the generalized rank.
//! - [`cover`]: the glued total space of a set-valued cosheaf, covering
//!   validation, and the Reeb construction for maps onto a line.
//! - [`ingest`]: simplicial maps and their component (and homology-in-degree
//!   -zero) pushforwards.
//! - [`io`]: the JSON file formats; [`fixtures`]: the named model inputs.
//!
//! All linear algebra is exact, generic over [`field::Field`]; the concrete
//! scalars are [`Rat`] (arbitrary-precision rationals) and [`field::Fp`]
//! (integers modulo a prime chosen at run time).

pub mod complex;
pub mod cosheaf;
pub mod cover;
pub mod field;
pub mod fixtures;
pub mod ingest;
pub mod io;
pub mod linalg;
pub mod omega;
pub mod zigzag;

pub use field::{Fp, Rat};

/// Exact rational matrix.
pub type MatQ = linalg::Matrix<Rat>;
/// Prime-field matrix.
pub type MatFp = linalg::Matrix<Fp>;
/// Set-valued cosheaf.
pub type SetCosheaf = cosheaf::Cosheaf<omega::SetOmega>;
/// Rational vector-space cosheaf.
pub type RatCosheaf = cosheaf::Cosheaf<omega::VectOmega<Rat>>;
/// Prime-field vector-space cosheaf.
pub type FpCosheaf = cosheaf::Cosheaf<omega::VectOmega<Fp>>;
/// Rational zigzag module.
pub type RatZigzag = zigzag::ZigzagModule<Rat>;
