//! Exact topological invariants of moduli spaces of Real vector bundles
//! over real curves.
//!
//! A real curve is a Riemann surface with an anti-holomorphic involution;
//! its topological type is the Weichold triple `(g, a, eps)`. The moduli
//! space of stable Real bundles of rank `r` with fixed determinant is a
//! closed manifold whose Betti numbers admit closed-form generating
//! functions. This crate computes those generating functions exactly, in
//! mod-2 and in odd characteristic, together with fundamental groups, and
//! cross-validates everything against a brute-force homology engine for
//! the bigraded differential algebras the formulas come from.
//!
//! Modules:
//! - [`series`]: truncated power series and polynomials with exact
//!   coefficients in `ℚ`, `𝔽_p`, or the `Z/2` character ring.
//! - [`topology`]: classification of real curves and Real bundle types.
//! - [`betti`]: every closed-form Poincaré series, evaluated exactly.
//! - [`groups`]: fundamental groups and first homology.
//! - [`dga`]: the independent homology oracle (Koszul-Tate style
//!   complexes, monomial bases, exact ranks).
//! - [`verify`]: the cross-validation suites and the distinguishability
//!   engine.

pub mod betti;
pub mod dga;
pub mod groups;
pub mod series;
pub mod topology;
pub mod verify;

pub use betti::{BettiResult, BettiWarning, SeriesOrPoly};
pub use series::{CoefficientRing, PoincarePolynomial, TruncatedSeries};
pub use topology::{RealBundle, RealCurve};
