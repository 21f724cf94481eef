//! Exact rationals, partitions, and truncated symmetric-function series with
//! conversions between the power-sum, monomial and elementary bases.

pub mod partition;
pub mod rational;
pub mod series;
pub mod transition;

pub use partition::{partitions_of, partitions_up_to, Partition};
pub use rational::{fmt_rat, parse_rat, rat, Rat};
pub use series::{alternating_signs, basis_convert, f_eta_eval, series_exp, series_log, Basis, SymSeries};
