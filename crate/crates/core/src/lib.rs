//! Factorization length distributions of numerical semigroups.
//!
//! Computes length multisets and their mean, median and mode, evaluates the
//! closed-form limits of `mean(n)/n` and `median(n)/n` for three-generated
//! semigroups, and provides drivers that check those statements numerically.

pub mod asymptotics;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod factorization;
pub mod invariants;
pub mod numeric;
pub mod semigroup;

pub use error::{Error, Result};
pub use factorization::{
    count_factorizations, factorizations, length_multiset, min_max_length, Factorization,
    LengthMultiset,
};
pub use numeric::{QuadNumber, Rational};
pub use semigroup::{Semigroup, TradeData};
