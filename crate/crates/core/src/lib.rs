//! 2-Selmer rank intervals for elliptic curves `y^2 = F(x)` over Q with `F`
//! an irreducible monic integer cubic.
//!
//! The lower end of the interval is the 2-rank of a modified narrow class
//! group of the cubic algebra `A = Q[T]/(F)`; the upper end exceeds it by
//! one. The crate computes everything exactly: maximal orders, class and
//! unit groups with certification flags, the square-class subgroups that
//! realise the 2-torsion, local conditions from Tate's algorithm, and
//! families of prime quadratic twists sharing the same interval.

pub mod class_units;
pub mod cli_report;
pub mod cubic_field;
pub mod curve_local;
pub mod error;
pub mod exact_arith;
pub mod selmer_bounds;
pub mod star_class;
pub mod twist_family;

pub use error::{Error, Result};
