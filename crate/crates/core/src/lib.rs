//! A computational categorification of the Gaussian integers.
//!
//! The crate implements, at desk scale and with exact GF(2) arithmetic:
//!
//! * [`diagrams`] — a monoidal DG category of planar strand diagrams with a
//!   rewriting system computing canonical normal forms,
//! * [`twisted`] — one-sided twisted complexes over a DG base: validation,
//!   morphism differentials, cones, shifts, monoidal tensor and homotopy
//!   search,
//! * [`algebra_r`] — the six-dimensional quiver DG algebra with two vertices
//!   and all length-three paths killed,
//! * [`modules_r`] — graded left modules over that algebra, projectives,
//!   Hom-space solvers and isomorphism search,
//! * [`bimodules`] — graded bimodules, tensor products over the algebra, the
//!   functor from diagrams to bimodule maps and the induced categorical
//!   action,
//! * [`verify`] — a deterministic suite that re-proves the structural
//!   identities by computation, and
//! * [`json`] — serde descriptors for the file formats used by the CLI.
//!
//! Decategorifying, the diagram category has Grothendieck group `Z[i]` and
//! its action on modules realizes multiplication by `i` as the rotation
//! matrix `[[0,-1],[1,0]]` on `Z^2`.

pub mod algebra_r;
pub mod bimodules;
pub mod corpus;
pub mod diagrams;
pub mod gf2;
pub mod json;
pub mod modules_r;
pub mod twisted;
pub mod verify;

pub use diagrams::{hom_basis, normalize, DiagramWord, Generator, Morphism, NormalForm, ObjQ};
pub use gf2::{Gf2Matrix, Gf2Vec};
pub use twisted::GaussClass;
