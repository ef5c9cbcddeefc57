//! Combinatorics of homogeneous (Archimedean) tilings of the hyperbolic plane.
//!
//! The crate is organised around a handful of cooperating pieces:
//!
//! - [`cyclic`] — exact cyclic vertex types `[k_1, ..., k_d]`, their rational
//!   angle sums and geometry classification, all in exact arithmetic.
//! - [`families`] — generators for the tuple families with prescribed Heesch
//!   behaviour, their prime-modified variants and the weakly aperiodic family.
//! - [`fractions`] — exhaustive solvers for the prime unit-fraction equations
//!   and the vertex corner-angle equation.
//! - [`patch`] — a half-edge representation of simply connected tiled patches
//!   with fan completion and layer-by-layer (corona) growth.
//! - [`heesch`] — exhaustive layer search with blocking certificates,
//!   constructive n-layer builders and the forced-chain verifier.
//! - [`neighborhood`] — bounded-depth enumeration of face neighbourhoods.
//! - [`aperiodicity`] — incidence censuses and the triangle/pentagon
//!   double-counting obstruction, plus dual-monotile corner forcing.
//! - [`geometry`] / [`layout`] — numeric realization: side lengths, inradii,
//!   dual tiles, and Poincaré-disk coordinates.
//! - [`doc`] / [`svg`] — patch persistence (JSON) and deterministic SVG.

pub mod aperiodicity;
pub mod cyclic;
pub mod doc;
pub mod families;
pub mod fractions;
pub mod geometry;
pub mod heesch;
pub mod layout;
pub mod neighborhood;
pub mod patch;
pub mod svg;

pub use cyclic::{CyclicType, GeometryClass};
pub use families::{EvenSizeAssignment, FamilyInstance, FamilyKind};
pub use heesch::{HeeschOutcome, HeeschResult, SearchBudget};
pub use patch::Patch;

