//! Exact workbench for the fine gradings of sl(n,C): cyclotomic scalars,
//! dense linear algebra, automorphisms, gradings, normalizer quotients and
//! binary graded contractions.

pub mod autgrp;
pub mod catalog;
pub mod contractions;
pub mod cyclo;
pub mod error;
pub mod gradings;
pub mod json;
pub mod liealg;
pub mod linalg;
pub mod normalizers;
pub mod selfcheck;

pub use cyclo::{CycloNumber, Rational};
pub use error::{Error, Result};
