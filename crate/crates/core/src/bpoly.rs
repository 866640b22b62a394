//! The partition polynomials `b_l(u, v)` and the `P_s(m)` family.
//!
//! `b_l(u, v) = Σ_{w(J)=l} (−n)^{|J|} u^{J_o} v^{J_e} W_p(J)` is the
//! coefficient of `q^l` in `exp(−n Σ_k g(k) q^k)` where `g(k) = u·α_p(k)` for
//! odd `k` and `v·α_p(k)` for even `k`. Both routes are provided: the
//! partition sum is the oracle, the exponential recurrence is what the
//! matrix solver uses.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::AlphaContext;
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rat, ExactRational};
use crate::partitions::{self, DEFAULT_ENUMERATION_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BContext {
    alpha: AlphaContext,
    n: u32,
    threshold: u32,
}

impl BContext {
    pub fn new(alpha: AlphaContext, n: u32) -> Result<Self> {
        if !matches!(n, 1 | 2 | 4) {
            return Err(Error::InvalidArgument(format!(
                "n must be 1, 2 or 4 (got {n})"
            )));
        }
        Ok(Self {
            alpha,
            n,
            threshold: DEFAULT_ENUMERATION_THRESHOLD,
        })
    }

    pub fn with_threshold(mut self, threshold: u32) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn alpha(&self) -> &AlphaContext {
        &self.alpha
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    /// `b_l` as a polynomial in `u, v`, collected from the sum over partitions
    /// of `l`.
    pub fn b_poly(&self, l: u32) -> Result<BPolynomial> {
        if l > self.threshold {
            return Err(Error::AboveThreshold {
                requested: l,
                threshold: self.threshold,
            });
        }
        let alphas = self.alpha.alphas(u64::from(l));
        let minus_n = rat(-i64::from(self.n));
        let mut terms: BTreeMap<(u64, u64), ExactRational> = BTreeMap::new();
        for j in partitions::enumerate(l) {
            let w = j.iter().fold(BigRational::one(), |acc, (k, mult)| {
                acc * num_traits::pow(alphas[k as usize].clone(), mult as usize)
                    / BigRational::from_integer(factorial(u64::from(mult)))
            });
            let term = num_traits::pow(minus_n.clone(), j.norm() as usize) * w;
            *terms.entry((j.odd_count(), j.even_count())).or_default() += term;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(BPolynomial { terms })
    }

    /// `b_l(u, v)` as an explicit sum over partitions of `l`.
    pub fn b_eval(&self, l: u32, u: &ExactRational, v: &ExactRational) -> Result<ExactRational> {
        Ok(self.b_poly(l)?.eval(u, v))
    }

    /// `(b_0, …, b_max_l)` at `(u, v)` by the series-exponential recurrence
    /// `l·b_l = Σ_{k=1}^{l} (−n·k·g(k))·b_{l−k}`.
    /// The recurrence over the integers for integral `(u, v)`.
    ///
    /// `k·α_p(k)` is an integer, so every step is an exact division whenever
    /// the `b_l` themselves are integers (always the case for `u ≡ v mod 2`).
    /// Returns `None` as soon as a division is inexact.
    pub fn b_eval_integer(&self, max_l: u32, u: i64, v: i64) -> Option<Vec<BigInt>> {
        let max = max_l as usize;
        let n = i64::from(self.n);
        let f: Vec<BigInt> = (0..=max)
            .map(|k| {
                if k == 0 {
                    return BigInt::zero();
                }
                let g = if k % 2 == 1 { u } else { v };
                self.alpha.k_alpha(k as u64) * (-n * g)
            })
            .collect();
        let mut b = Vec::with_capacity(max + 1);
        b.push(BigInt::one());
        for l in 1..=max {
            let mut acc = BigInt::zero();
            for k in 1..=l {
                if !f[k].is_zero() && !b[l - k].is_zero() {
                    acc += &f[k] * &b[l - k];
                }
            }
            let (q, r) = acc.div_rem(&BigInt::from(l));
            if !r.is_zero() {
                return None;
            }
            b.push(q);
        }
        Some(b)
    }

    pub fn b_eval_fast(
        &self,
        max_l: u32,
        u: &ExactRational,
        v: &ExactRational,
    ) -> Vec<ExactRational> {
        let max = max_l as usize;
        let minus_n = rat(-i64::from(self.n));
        // f[k] = −n·k·g(k)
        let f: Vec<ExactRational> = (0..=max)
            .map(|k| {
                if k == 0 {
                    return BigRational::zero();
                }
                let g = if k % 2 == 1 { u } else { v };
                if g.is_zero() {
                    return BigRational::zero();
                }
                &minus_n * rat(k as i64) * g * self.alpha.alpha(k as u64)
            })
            .collect();
        let mut b = Vec::with_capacity(max + 1);
        b.push(BigRational::one());
        for l in 1..=max {
            let mut acc = BigRational::zero();
            for k in 1..=l {
                if !f[k].is_zero() && !b[l - k].is_zero() {
                    acc += &f[k] * &b[l - k];
                }
            }
            b.push(acc / rat(l as i64));
        }
        b
    }
}

/// `Σ c_{o,e} u^o v^e`, keyed by `(J_o, J_e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    terms: BTreeMap<(u64, u64), ExactRational>,
}

impl BPolynomial {
    pub fn coeff(&self, u_deg: u64, v_deg: u64) -> ExactRational {
        self.terms
            .get(&(u_deg, v_deg))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), &ExactRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Evaluate with `0^0 = 1`.
    pub fn eval(&self, u: &ExactRational, v: &ExactRational) -> ExactRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (&(o, e), c)| {
                acc + c
                    * num_traits::pow(u.clone(), o as usize)
                    * num_traits::pow(v.clone(), e as usize)
            })
    }
}

impl fmt::Display for BPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((o, e), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match o {
                0 => {}
                1 => write!(f, " u")?,
                _ => write!(f, " u^{o}")?,
            }
            match e {
                0 => {}
                1 => write!(f, " v")?,
                _ => write!(f, " v^{e}")?,
            }
        }
        Ok(())
    }
}

/// `P_s(m)` from `(m+s)·P_s(m) = m·(P_{s−1}(m) + P_s(m−1))`, with
/// `P_0 ≡ 1` and `P_s(0) = 0` for `s ≥ 1`.
pub fn p_poly(s: u32, m: u32) -> ExactRational {
    p_table(s, m)[s as usize][m as usize].clone()
}

/// `table[s'][m']` for `s' ≤ s`, `m' ≤ m`.
pub fn p_table(s: u32, m: u32) -> Vec<Vec<ExactRational>> {
    let (s, m) = (s as usize, m as usize);
    let mut t = vec![vec![BigRational::zero(); m + 1]; s + 1];
    t[0].fill(BigRational::one());
    for si in 1..=s {
        for mi in 1..=m {
            let sum = &t[si - 1][mi] + &t[si][mi - 1];
            t[si][mi] = sum * rat(mi as i64) / rat((mi + si) as i64);
        }
    }
    t
}

/// `c_{s,r}` with `P_s(m) = Σ_r c_{s,r}·C(m, r)`.
pub fn c_coeff(s: u32, r: u32) -> ExactRational {
    if r > s {
        return BigRational::zero();
    }
    let (s, r) = (s as usize, r as usize);
    let mut prev = vec![BigRational::one()];
    for si in 1..=s {
        let mut row = vec![BigRational::zero(); si + 1];
        for (ri, slot) in row.iter_mut().enumerate().skip(1) {
            let left = &prev[ri - 1];
            let up = prev.get(ri).cloned().unwrap_or_else(BigRational::zero);
            *slot = (left + up) * rat(ri as i64) / rat((si + ri) as i64);
        }
        prev = row;
    }
    prev[r].clone()
}

/// `Σ_{h=0}^{m} h^N (−1)^{h−1} C(m, h)`, with `0^0 = 1`.
pub fn binomial_moment(big_n: u32, m: u32) -> ExactRational {
    let mut acc = BigInt::zero();
    for h in 0..=m {
        let term =
            num_traits::pow(BigInt::from(h), big_n as usize) * binomial(u64::from(m), u64::from(h));
        if h % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    BigRational::from_integer(acc)
}
