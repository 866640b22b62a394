//! Divisor sums and the multiplicative weights built from them.
//!
//! `α_p(k)` is the coefficient of `q^k` in `−log` of the eta quotient
//! `Q(τ)Q²(4τ)Q(pτ)Q²(4pτ) / (Q³(2τ)Q³(2pτ))`, i.e. the six-term combination
//!
//! ```text
//! α_p(k) = s(k) − 3 s(k/2) + 2 s(k/4) + s(k/p) − 3 s(k/2p) + 2 s(k/4p),
//! s(x)   = σ₁(x) / x   (zero unless x is a positive integer)
//! ```
//!
//! and `β_p` is the same with coefficients `2, −3, 1` for the `(1−λ)` factor.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, ExactInteger, ExactRational};
use crate::partitions::Partition;

/// Sum of the positive divisors of `k`.
pub fn divisor_sum(k: u64) -> u64 {
    let mut total = 0;
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            total += d;
            if d != k / d {
                total += k / d;
            }
        }
        d += 1;
    }
    total
}

/// `σ₁(x)` for rational `x`; zero unless `x` is a positive integer.
pub fn sigma1(x: &ExactRational) -> ExactRational {
    if !x.is_integer() {
        return BigRational::zero();
    }
    match x.to_integer().to_u64() {
        Some(k) if k > 0 => BigRational::from_integer(BigInt::from(divisor_sum(k))),
        _ => BigRational::zero(),
    }
}

/// `σ₁(k/d) / (k/d)`, zero when `d ∤ k`.
fn scaled_sigma(k: u64, d: u64) -> ExactRational {
    if !k.is_multiple_of(d) {
        return BigRational::zero();
    }
    let q = k / d;
    BigRational::new(BigInt::from(divisor_sum(q)), BigInt::from(q))
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_odd_prime(p: u64) -> bool {
    p % 2 == 1 && is_prime(p)
}

/// Odd primes up to and including `max`.
pub fn odd_primes_up_to(max: u64) -> Vec<u64> {
    (3..=max).step_by(2).filter(|&p| is_prime(p)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlphaContext {
    p: u64,
}

impl AlphaContext {
    pub fn new(p: u64) -> Result<Self> {
        if is_odd_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::InvalidPrime(p as i64))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn combination(&self, k: u64, weights: [i64; 3]) -> ExactRational {
        assert!(k >= 1, "arithmetic weights are defined for k >= 1");
        let p = self.p;
        let mut acc = BigRational::zero();
        for (d, w) in [(1, weights[0]), (2, weights[1]), (4, weights[2])] {
            let w = BigRational::from_integer(BigInt::from(w));
            acc += &w * scaled_sigma(k, d);
            acc += &w * scaled_sigma(k, d * p);
        }
        acc
    }

    /// `α_p(k)`.
    pub fn alpha(&self, k: u64) -> ExactRational {
        self.combination(k, [1, -3, 2])
    }

    /// `k·α_p(k)`, always an integer: `Σ w_d·d·σ₁(k/d)` over `d ∈ {1, 2, 4, p, 2p, 4p}`.
    pub fn k_alpha(&self, k: u64) -> ExactInteger {
        let p = self.p;
        let mut acc: i128 = 0;
        for (d, w) in [(1, 1i128), (2, -3), (4, 2)] {
            for dd in [d, d * p] {
                if k.is_multiple_of(dd) {
                    acc += w * dd as i128 * divisor_sum(k / dd) as i128;
                }
            }
        }
        ExactInteger::from(acc)
    }

    /// `β_p(k)`; equals `2α_p(k)` for odd `k` and vanishes for even `k`.
    pub fn beta(&self, k: u64) -> ExactRational {
        self.combination(k, [2, -3, 1])
    }

    /// `γ_{p,i,h}(k) = i·α_p(k) + h·β_p(k)`, computed from the parity form.
    pub fn gamma(&self, i: u64, h: u64, k: u64) -> ExactRational {
        let coeff = if k % 2 == 1 { i + 2 * h } else { i };
        self.alpha(k) * BigRational::from_integer(BigInt::from(coeff))
    }

    /// `α_p(1), …, α_p(max)` with index 0 unused (zero).
    pub fn alphas(&self, max: u64) -> Vec<ExactRational> {
        std::iter::once(BigRational::zero())
            .chain((1..=max).map(|k| self.alpha(k)))
            .collect()
    }

    /// `W_p(J) = Π_k α_p(k)^{j_k} / j_k!`.
    pub fn weight_w(&self, j: &Partition) -> ExactRational {
        j.iter().fold(BigRational::one(), |acc, (k, mult)| {
            let num = num_traits::pow(self.alpha(u64::from(k)), mult as usize);
            acc * num / BigRational::from_integer(factorial(u64::from(mult)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn ctx(p: u64) -> AlphaContext {
        AlphaContext::new(p).unwrap()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn sigma1_values() {
        assert_eq!(sigma1(&rat(6)), rat(12));
        assert_eq!(sigma1(&ratio(5, 2)), rat(0));
        assert_eq!(sigma1(&rat(1)), rat(1));
        assert_eq!(sigma1(&rat(0)), rat(0));
        assert_eq!(sigma1(&rat(-3)), rat(0));
    }

    #[test]
    fn context_rejects_non_odd_primes() {
        for bad in [0, 1, 2, 4, 9, 15, 91] {
            assert_eq!(AlphaContext::new(bad), Err(Error::InvalidPrime(bad as i64)));
        }
        assert!(AlphaContext::new(97).is_ok());
    }

    #[test]
    fn alpha_table() {
        for p in [3, 5, 7, 11, 13, 97] {
            let c = ctx(p);
            assert_eq!(c.alpha(1), rat(1));
            assert_eq!(c.alpha(2), ratio(-3, 2));
            assert_eq!(c.alpha(4), ratio(-3, 4));
            if p != 3 {
                assert_eq!(c.alpha(3), ratio(4, 3));
            }
            if p != 5 {
                assert_eq!(c.alpha(5), ratio(6, 5));
            }
        }
        assert_eq!(ctx(5).alpha(5), ratio(11, 5));
        assert_eq!(ctx(5).alpha(10), ratio(-33, 10));
        assert_eq!(ctx(5).alpha(10), ctx(5).alpha(2) * ctx(5).alpha(5));
    }

    #[test]
    fn alpha_coprime_to_2p_is_sigma_ratio() {
        for p in [3, 5, 7, 11, 13] {
            let c = ctx(p);
            for k in 1..=200u64 {
                if gcd(k, 2 * p) == 1 {
                    assert_eq!(
                        c.alpha(k),
                        sigma1(&rat(k as i64)) / rat(k as i64),
                        "p={p} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_is_multiplicative() {
        for p in [3, 5, 7, 11, 13] {
            let c = ctx(p);
            for a in 1..=200u64 {
                for b in 1..=200 / a {
                    if gcd(a, b) == 1 {
                        assert_eq!(c.alpha(a * b), c.alpha(a) * c.alpha(b), "p={p} {a}*{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn k_alpha_matches_alpha() {
        for p in [3, 5, 7, 13] {
            let c = ctx(p);
            for k in 1..=120u64 {
                assert_eq!(
                    BigRational::from_integer(c.k_alpha(k)),
                    c.alpha(k) * rat(k as i64)
                );
            }
        }
    }

    #[test]
    fn beta_parity_law() {
        assert_eq!(ctx(5).beta(3), ratio(8, 3));
        assert_eq!(ctx(5).beta(2), rat(0));
        assert_eq!(ctx(7).beta(1), rat(2));
        for p in [3, 5, 7, 11, 13] {
            let c = ctx(p);
            for k in 1..=200u64 {
                let want = if k % 2 == 1 {
                    c.alpha(k) * rat(2)
                } else {
                    rat(0)
                };
                assert_eq!(c.beta(k), want, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn gamma_values() {
        let c = ctx(5);
        for k in 1..10 {
            assert_eq!(c.gamma(1, 0, k), c.alpha(k));
            // definition i·α + h·β against the parity shortcut
            let def = c.alpha(k) * rat(3) + c.beta(k) * rat(2);
            assert_eq!(c.gamma(3, 2, k), def);
        }
        assert_eq!(c.gamma(1, 2, 3), ratio(20, 3));
        assert_eq!(c.gamma(2, 1, 2), rat(-3));
    }

    #[test]
    fn partition_weight() {
        let c = ctx(5);
        assert_eq!(c.weight_w(&Partition::empty()), rat(1));
        assert_eq!(
            c.weight_w(&Partition::from_multiplicities([(3, 2)])),
            ratio(8, 9)
        );
        for total in 1..=12u32 {
            let j = Partition::from_multiplicities([(1, total)]);
            assert_eq!(
                c.weight_w(&j),
                BigRational::new(BigInt::one(), factorial(u64::from(total)))
            );
        }
    }

    #[test]
    fn primes() {
        assert_eq!(odd_primes_up_to(30), vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_odd_prime(2));
    }
}
