//! Knowledge-base driven solver for Wernick triangle construction problems.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod emit;
pub mod exec;
pub mod geom;
pub mod kb;
pub mod label;
pub mod solver;
pub mod verifier;
