//! Dubrovnik-version Kauffman polynomials of link diagrams, Legendrian front
//! invariants, and the Thurston–Bennequin bound `tb ≤ −max-deg_x K`.
//!
//! The crate is organized around five building blocks:
//!
//! - [`laurent2`]: exact integer Laurent polynomials in two variables `x`, `y`.
//! - [`diagram`]: oriented link diagrams as PD codes, with the local skein
//!   moves (crossing switch, the two smoothings), mirrors, and split unions.
//! - [`kauffman`]: the unreduced regular-isotopy polynomial Λ and the
//!   Kauffman polynomial `K = x^{−writhe}·Λ`, computed by memoized skein
//!   recursion with a descending-diagram base case.
//! - [`front`]: Legendrian fronts as left-to-right event words; tb, rotation,
//!   resolution to diagrams, split unions, and SVG rendering.
//! - [`bounds`]: the bound `tb ≤ −max-deg_x K`, verdict reports, and the
//!   all-unknot-components obstruction.
//!
//! [`moves`] provides Reidemeister-move constructions used by the invariance
//! test suites.

pub mod bounds;
pub mod diagram;
pub mod front;
pub mod kauffman;
pub mod laurent2;
pub mod moves;

pub use bounds::{check_front, rudolph_bound, unknot_components_obstruction, BoundReport};
pub use diagram::{ComponentMap, Diagram, DiagramError};
pub use front::{random_front, FrontError, FrontEvent, FrontWord, LegendrianInvariants};
pub use kauffman::{delta, kauffman_reduced, kauffman_unreduced, lambda_regular, SkeinCache};
pub use laurent2::{Laurent2Poly, PolyError};
