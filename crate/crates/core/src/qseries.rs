//! Truncated power series in `q = e^{iπτ}` with exact rational coefficients,
//! and the eta-quotient expansions of λ, 1 − λ and `X^i Y^h`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, ExactRational};
use crate::modeq::PrimeParams;

/// `c_0 + c_1 q + … + c_T q^T + O(q^{T+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Series known through `q^{coeffs.len() − 1}`.
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^k` truncated at `order`.
    pub fn monomial(c: ExactRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^k`; panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &ExactRational {
        assert!(
            k <= self.order(),
            "q^{k} is beyond the truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `q^k`; the known order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `q → q^a`. Known through `a·T + a − 1`; reported at `a·T`.
    pub fn scale_q(&self, a: usize) -> Self {
        assert!(a >= 1, "scale_q needs a >= 1");
        let order = self.order() * a;
        let mut out = Self::zero(order);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * a] = c.clone();
        }
        out
    }

    /// `D = q·d/dq`.
    pub fn q_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = c0.recip();
        let t = self.order();
        let mut out = vec![inv0.clone()];
        for k in 1..=t {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `exp(S)` for `S` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let t = self.order();
        let mut out = vec![BigRational::one()];
        for l in 1..=t {
            let mut acc = BigRational::zero();
            for k in 1..=l {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * rat(k as i64) * &out[l - k];
                }
            }
            out.push(acc / rat(l as i64));
        }
        Ok(Self::new(out))
    }

    /// `S^e` for any integer `e`; negative powers need a unit constant term.
    pub fn int_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Lines of the form `c_k at q^k` for every known coefficient.
    pub fn listing(&self) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{c} at q^{k}\n"))
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    /// `16q - 128q^2 + 704q^3 + O(q^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

fn binary(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    op: impl Fn(&ExactRational, &ExactRational) -> ExactRational,
) -> TruncatedSeries {
    let t = a.order().min(b.order());
    TruncatedSeries::new((0..=t).map(|k| op(&a.coeffs[k], &b.coeffs[k])).collect())
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        binary(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        binary(self, rhs, |x, y| x - y)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let t = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); t + 1];
        for (i, a) in self.coeffs[..=t].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;

            fn $m(self, rhs: Self) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

/// `Π_{k≥1} (1 − q^{a·k})` through `q^order`.
pub fn euler_product(a: usize, order: usize) -> TruncatedSeries {
    assert!(a >= 1, "euler_product needs a >= 1");
    let mut c = vec![BigRational::zero(); order + 1];
    c[0] = BigRational::one();
    let mut step = a;
    while step <= order {
        // multiply in place by (1 − q^step), high to low
        for k in (step..=order).rev() {
            let lower = c[k - step].clone();
            c[k] -= lower;
        }
        step += a;
    }
    TruncatedSeries::new(c)
}

/// `Π_j Q(a_j τ)^{e_j}` through `q^order`.
pub fn eta_quotient(factors: &[(usize, i64)], order: usize) -> TruncatedSeries {
    factors
        .iter()
        .fold(TruncatedSeries::one(order), |acc, &(a, e)| {
            let q = euler_product(a, order)
                .int_pow(e)
                .expect("euler products are units");
            &acc * &q
        })
}

/// `λ = 16q · Q⁸(τ) Q¹⁶(4τ) / Q²⁴(2τ)` through `q^order`.
pub fn lambda_series(order: usize) -> TruncatedSeries {
    assert!(order >= 1, "lambda_series needs order >= 1");
    eta_quotient(&[(1, 8), (4, 16), (2, -24)], order - 1)
        .scale(&rat(16))
        .shift(1)
}

/// `1 − λ = Q¹⁶(τ) Q⁸(4τ) / Q²⁴(2τ)` through `q^order`.
pub fn one_minus_lambda_series(order: usize) -> TruncatedSeries {
    eta_quotient(&[(1, 16), (4, 8), (2, -24)], order)
}

/// The pair of exponents `(i, h)` in `X^i Y^h` for a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XYParams {
    pub params: PrimeParams,
    pub i: u32,
    pub h: u32,
}

impl XYParams {
    pub fn new(params: PrimeParams, i: u32, h: u32) -> Self {
        Self { params, i, h }
    }

    /// Exponents of `Q(τ), Q(4τ), Q(2τ)`; the same triple applies at `pτ`.
    pub fn eta_exponents(&self) -> [(usize, i64); 3] {
        let n = i64::from(self.params.n);
        let (i, h) = (i64::from(self.i), i64::from(self.h));
        [
            (1, n * (i + 2 * h)),
            (4, n * (2 * i + h)),
            (2, -3 * n * (i + h)),
        ]
    }
}

/// `X^i Y^h / (2^{ni} q^{mi})` assembled directly from integer powers of
/// Euler products at `τ` and `pτ`.
pub fn xy_normalized_direct(xp: &XYParams, order: usize) -> TruncatedSeries {
    let p = xp.params.p as usize;
    let exps = xp.eta_exponents();
    let mut factors: Vec<(usize, i64)> = exps.to_vec();
    factors.extend(exps.iter().map(|&(a, e)| (a * p, e)));
    eta_quotient(&factors, order)
}

/// `Σ_l b_l(i + 2h, i) q^l` through `q^order`.
pub fn xy_normalized_lemma(xp: &XYParams, order: usize) -> TruncatedSeries {
    let bc = xp.params.b_context();
    let u = rat(i64::from(xp.i + 2 * xp.h));
    let v = rat(i64::from(xp.i));
    TruncatedSeries::new(bc.b_eval_fast(order as u32, &u, &v))
}
