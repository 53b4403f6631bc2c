//! Exact-arithmetic continued fractions for `F(x) = e^x E1(x)`.
//!
//! The expansion `F(x) = 1/(c_1 + 1/(c_2 + ...))` with `c_m = x` (odd `m`)
//! and `c_m = 2/m` (even `m`) is realized over arbitrary-precision
//! rationals: convergent polynomials and values, closed forms, determinant
//! and derivative identities, growth bounds, a Laguerre-polynomial
//! correspondence, and an independent quadrature oracle. At `x = 1` the
//! machinery specializes to certified enclosures of the Euler-Gompertz
//! constant and to the fractional-part experiments built on top of them.
//!
//! Every inequality between rationals in this crate is decided exactly;
//! oracle-mediated statements carry explicit certified error bounds.
//!
//! The default `parallel` feature runs the batch verification sweeps on
//! rayon; disabling it yields a fully sequential build with the same
//! results.

pub mod cf;
pub mod error;
pub mod exact;
pub mod gompertz;
pub mod identity;
pub mod laguerre;
pub mod oracle;
mod par;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use exact::{Enclosure, Int, Rat};
pub use poly::Poly;
pub use report::Report;
