//! Exact integer number theory used throughout the crate.

mod characters;
mod forms;
mod pell;
mod primes;

use thiserror::Error;

pub use characters::{characters_mod, primitive_characters_mod, DirichletCharacter};
pub use forms::{class_number, hecke_class_number, reduced_forms, QuadForm};
pub use pell::{pell_fundamental, PellSolution};
pub use primes::{
    chi8, divisors, euler_phi, factorize, is_prime, is_squarefree, isqrt, j_symbol, kappa, legendre, prime_power,
    von_mangoldt, von_mangoldt_real, DEFAULT_SNAP_REL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArithError {
    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },
    #[error("{op}: formula result {value} is not within {tol:e} of an integer ({detail})")]
    Consistency {
        op: &'static str,
        value: f64,
        tol: f64,
        detail: String,
    },
}
