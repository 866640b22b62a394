//! The differential equation
//!
//! ```text
//! 2 f'''/f'³ − 3 f''²/f'⁴ = −(f² − f + 1) / (f²(1 − f)²)
//! ```
//!
//! checked for `f = λ` as an identity of q-series. With `D = q·d/dq` every
//! τ-derivative is `(iπ)^k D^k`, and after clearing denominators each term
//! carries `(iπ)⁴`, leaving
//!
//! ```text
//! 2·D³f·Df·f²(1−f)² − 3·(D²f)²·f²(1−f)² + (f² − f + 1)·(Df)⁴ = 0.
//! ```
//!
//! Multiplying the first display by `4/27` gives the equivalent form
//! `(2/3)²(f''/f'²)² − (2/3)³ f'''/f'³ = (4/27)(1 − f + f²)/(f²(1 − f)²)`,
//! so both are covered by this one check.

use crate::exact::rat;
use crate::qseries::{lambda_series, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeResidual {
    pub residual: TruncatedSeries,
    /// Coefficients through this power of `q` are exact.
    pub effective_order: usize,
}

impl OdeResidual {
    pub fn first_nonzero(&self) -> Option<usize> {
        self.residual.truncate(self.effective_order).valuation()
    }

    pub fn vanishes(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

/// Cleared residual for an arbitrary series `f`.
pub fn residual_for(f: &TruncatedSeries) -> OdeResidual {
    let order = f.order();
    let d1 = f.q_derivative();
    let d2 = d1.q_derivative();
    let d3 = d2.q_derivative();
    let one = TruncatedSeries::one(order);
    let one_minus = &one - f;
    let f2 = f * f;
    let base = &f2 * &(&one_minus * &one_minus);
    let d1_sq = &d1 * &d1;

    let t1 = (&(&d3 * &d1) * &base).scale(&rat(2));
    let t2 = (&(&d2 * &d2) * &base).scale(&rat(3));
    let t3 = &(&(&f2 - f) + &one) * &(&d1_sq * &d1_sq);
    OdeResidual {
        residual: &(&t1 - &t2) + &t3,
        effective_order: order,
    }
}

pub fn ode_residual(order: usize) -> OdeResidual {
    residual_for(&lambda_series(order))
}
