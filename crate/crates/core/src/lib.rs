//! Finite-level computations around free groups and their finite quotients:
//! Stallings automata, Cayley-graph constellations, alternating-group completions
//! of inverse automata, Gaschutz p-extensions and dissolving checks.

pub mod agroup;
pub mod autom;
pub mod closure;
pub mod completion;
pub mod constellation;
pub mod corpus;
pub mod dissolve;
pub mod error;
pub mod gaschuetz;
pub mod linalg;
pub mod permgrp;
pub mod word;

pub use error::{Error, Result};
