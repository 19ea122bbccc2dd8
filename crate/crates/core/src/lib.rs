//! Poincaré polynomials of moduli of framed perverse coherent sheaves on the
//! blown-up plane, computed from torus fixed points, together with exact
//! checks of their wall-crossing generating functions.
//!
//! Fixed points are tuples of Young diagrams with marked removable boxes
//! ([`marked`]). Their tangent characters ([`character`]) give Morse indices,
//! and summing over fixed points ([`betti`]) gives truncated generating
//! series ([`laurent`]) that are compared against closed product formulas.

pub mod betti;
pub mod character;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod laurent;
pub mod marked;

pub use betti::{
    fixed_point_exponent, gen_fun_enumeration, gen_fun_product, poincare_polynomial, poincare_polynomial_with,
    verify_identity,
    FamilyParams, Grading, ModuliParams, PoincareMethod, Suite, VerifyReport, VerifyRequest,
};
pub use character::{ext1_character, morse_index, tangent_character, Character, Ext1Method};
pub use diagram::{enumerate_partitions, Cell, Partition};
pub use error::Error;
pub use exec::Execution;
pub use laurent::{LaurentPoly, QExp, QSeries, SeriesContext};
pub use marked::{enumerate_fixed_points, enumerate_marked, merge, split, DiagramPair, FixedPoint, MarkedDiagram};
