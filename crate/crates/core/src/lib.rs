//! N-integral bases of number fields by Newton polygons modulo a composite `N`.
//!
//! All ring operations modulo `N` use "hooks": when a unit is needed and a zero
//! divisor appears instead, the computation stops and surrenders a proper divisor
//! of `N` (or a proper factor of the extension polynomial). The [`driver`] uses
//! these to refine `N` into coprime base factors until every piece is regular.

pub mod basis;
pub mod driver;
pub mod error;
pub mod extpoly;
pub mod intpoly;
pub mod matrix;
pub mod modint;
pub mod modpoly;
pub mod newton;
pub mod poly;

pub use error::Error;
pub use extpoly::{ExtPolynomial, ExtRing};
pub use intpoly::IntPolynomial;
pub use modint::{Hook, HookOutcome, ModulusContext, Ordinate, Residue};
pub use modpoly::{ModPolynomial, SquarefreeDecomposition};
pub use poly::{CoeffRing, HookedRing, Integers, Poly};
