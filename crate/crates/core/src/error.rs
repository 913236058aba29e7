use thiserror::Error;

use crate::wigner::HalfInt;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("detuning {detuning} MHz is within 0.5 MHz of the F' = {f_prime} resonance")]
    Pole { f_prime: HalfInt, detuning: f64 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("imaginary residue {residue:e} in {what}")]
    ImaginaryResidue { what: &'static str, residue: f64 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
