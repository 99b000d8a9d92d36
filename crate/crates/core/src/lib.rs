//! Exact-arithmetic workbench for Dunkl-operator realizations of the Yangian
//! and the reflection algebra.
//!
//! Operators are applied to test wavefunctions whose coordinate parts are
//! rational functions of `t_i = exp(2 gamma A(q_i))`; identities are decided
//! by exact evaluation at random points (or symbolically in strict mode).

pub mod check;
pub mod config;
pub mod dunkl;
pub mod error;
pub mod field;
pub mod gcd;
pub mod hamiltonian;
pub mod hecke;
pub mod models;
pub mod params;
pub mod reflection;
pub mod registry;
pub mod phys;
pub mod poly;
pub mod ratfunc;
pub mod sampling;
pub mod series;
pub mod spin;
pub mod wave;
pub mod yangian;

pub use error::{Error, Result};
pub use field::{Field, Fp61, Fp62, Rat};
pub use poly::{LaurentPoly, Mono, VarMap};
pub use ratfunc::RatFunc;
pub use series::{expand_at_infinity, InfinitySeries};
