//! Exact Russell-type modular equations for the modular function λ.
//!
//! For an odd prime `p` write `(p + 1) / 8 = m / n` in lowest terms. The
//! functions `X = (λ(τ)λ(pτ))^{n/8}` and `Y = ((1 − λ(τ))(1 − λ(pτ)))^{n/8}`
//! satisfy a polynomial relation `Σ a_{i,h} X^i Y^h = 0` whose integer
//! coefficient matrix `A_p` vanishes for `i + h > m`. This crate builds `A_p`
//! from the partition structure of the q-expansion coefficients of `X^i Y^h`,
//! using nothing but exact rational arithmetic, and checks the identities the
//! matrices satisfy against independent oracles.
//!
//! Module map:
//!
//! * [`exact`]: big integers, rationals, dense exact linear algebra
//! * [`partitions`]: integer partitions in multiplicity form
//! * [`arith`]: divisor sums and the multiplicative weights α, β, γ, W
//! * [`bpoly`]: the partition polynomials `b_l(u, v)` and the `P_s(m)` family
//! * [`qseries`]: truncated power series and eta-quotient expansions
//! * [`modeq`]: assembly and verification of `A_p`
//! * [`ode`]: the non-linear differential equation for λ as a series identity
//! * [`format`]: text, typeset and structured renderings of `A_p`

pub mod arith;
pub mod bpoly;
pub mod error;
pub mod exact;
pub mod format;
pub mod modeq;
pub mod ode;
pub mod partitions;
pub mod qseries;
pub mod report;

pub use error::{Error, Result};
pub use exact::{ExactInteger, ExactRational, RationalMatrix};
pub use modeq::{assemble, params_for, ModularMatrix, PrimeParams};
pub use partitions::Partition;
pub use qseries::TruncatedSeries;
