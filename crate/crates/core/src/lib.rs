//! Warping degrees, warping (crossing) polynomials and their state sums for
//! knot diagrams, together with canonical orientations of plane curves.

pub mod diagram;
pub mod corpus;
pub mod poly;
pub mod planar;
pub mod statesum;
pub mod verify;
pub mod warping;

pub use diagram::{
    ArcDiagram, BasedPlanarCurve, Chirality, CrossingId, Dart, DiagramError, GaussDiagram,
    Passage, PlanarCurve, Shadow, Side, Strand,
};
pub use poly::{IntPolynomial, PolyError};
