//! Exact computation and verification of the four polynomial families that
//! appear as central coefficients of the universal central extension of the
//! DJKM current algebra `g ⊗ C[t, t⁻¹, u | u² = t⁴ − 2ct² + 1]`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: big-rational scalars, dense polynomials in `c`, truncated
//!   Laurent series in `z` with polynomial coefficients.
//! - [`families`]: the master recurrence, the four families and their index
//!   views, Gegenbauer polynomials.
//! - [`oracle`]: independent reconstruction of the elliptic families from
//!   their generating functions.
//! - [`diffops`]: linear differential operators in `c` and exact residual checks.
//! - [`cocycle`]: reduction of Kähler differentials modulo exact forms and the
//!   central 2-cocycle.
//! - [`ortho`]: Favard data, moments, Hankel determinants, nonclassicality,
//!   associated ultraspherical/Jacobi recurrences, Gauss quadrature and `₂F₁`.
//! - [`par`]: data-parallel sweep helpers (rayon behind the `parallel` feature).

pub mod cocycle;
pub mod diffops;
mod error;
pub mod exact;
pub mod families;
pub mod oracle;
pub mod ortho;
pub mod par;

pub use error::{Error, Result};
pub use exact::{LaurentSeries, Rational, RationalPoly};
pub use families::{FamilyId, IndexView, PolynomialFamily};
