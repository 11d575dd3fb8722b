//! Exact computations with fixed point ratios of finite permutation groups,
//! and the machinery they feed: conjugacy classes, generation and spread,
//! genus screening of transitive actions, and base sizes.
//!
//! Everything is exact: group orders are big integers and every ratio is a
//! reduced big rational. Group actions follow the right-action convention
//! (`compose(p, q)` applies `p` first), matching exponent notation `a^x`.

pub mod action;
pub mod bases;
pub mod classes;
pub mod config;
pub mod error;
pub mod ff;
pub mod fpr;
pub mod genspread;
pub mod genus;
pub mod group;
pub mod matrix;
pub mod parse;
pub mod perm;
pub mod report;
pub mod reproduce;
pub mod util;

pub use error::{Error, Result};
