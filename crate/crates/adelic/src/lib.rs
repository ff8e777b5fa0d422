//! Truncated arithmetic in the ring of integers modulo infinitely large
//! primes (the "poor man's adele ring"): elements are prime-indexed residue
//! vectors, identified up to finitely many coordinates.
//!
//! The crate provides
//! - exact modular arithmetic over prime windows ([`modular`], [`primes`]),
//! - truncated adele elements with ring operations and integer-polynomial
//!   relation scanning ([`adele`]),
//! - q-Fibonacci and Bressoud polynomial congruence verifiers ([`qpoly`]),
//! - Bernoulli, Euler, and Gregory numbers with exact and mod-p paths
//!   ([`specialnums`]),
//! - imaginary quadratic class numbers by two independent algorithms and the
//!   Cauchy/Carlitz congruence verifiers ([`classnum`]),
//! - elliptic curve reduction, Frobenius traces, and Sato-Tate angle
//!   statistics ([`ecred`]),
//! - element builders and empirical transcendence-criterion audits
//!   ([`experiments`]).
//!
//! Everything is deterministic; no randomness is used anywhere.

pub mod adele;
pub mod classnum;
pub mod config;
pub mod ecred;
pub mod error;
pub mod experiments;
pub mod modular;
pub mod primes;
pub mod qpoly;
pub mod report;
pub mod specialnums;

pub use error::{Error, Result};
pub use modular::{ReducedRational, Residue};
pub use primes::PrimeWindow;
