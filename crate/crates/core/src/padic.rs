//! Exact integers and rationals, the prime context, and p-adic valuations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision fraction, kept in lowest terms with a positive
/// denominator after every operation.
pub type Rational = num_rational::BigRational;

/// A validated prime `p`. Every computation in the crate is parameterized by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// `p^e`, or `None` on overflow.
    pub fn checked_pow(&self, e: u32) -> Option<u64> {
        self.p.checked_pow(e)
    }

    /// `p^e` as a rational.
    pub fn pow_rational(&self, e: u32) -> Rational {
        Rational::from_integer(num_traits::pow(self.p_big(), e as usize))
    }

    /// The powers `1, p, p^2, ...` not exceeding `limit`.
    pub fn powers_up_to(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut q = 1u64;
        while q <= limit {
            out.push(q);
            match q.checked_mul(self.p) {
                Some(next) => q = next,
                None => break,
            }
        }
        out
    }

    /// True when `m` is `p^e` for some `e >= 0`.
    pub fn is_power(&self, mut m: u64) -> bool {
        if m == 0 {
            return false;
        }
        while m.is_multiple_of(self.p) {
            m /= self.p;
        }
        m == 1
    }
}

/// Trial division; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_p_int(n: &BigInt, ctx: PrimeContext) -> Result<i64> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = ctx.p_big();
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// `ord_p(q)`: the `v` with `q = p^v * a/b`, `p` dividing neither `a` nor `b`.
pub fn ord_p(q: &Rational, ctx: PrimeContext) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(ord_p_int(q.numer(), ctx)? - ord_p_int(q.denom(), ctx)?)
}

/// Legendre's formula: `ord_p(n!) = sum_{j >= 1} floor(n / p^j)`.
pub fn legendre_valuation(n: u64, ctx: PrimeContext) -> u64 {
    let mut total = 0;
    let mut m = n;
    while m > 0 {
        m /= ctx.p();
        total += m;
    }
    total
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn factorial_int(n: u64) -> BigInt {
    BigInt::from(factorial(n))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Residue of `q` in `Z/pZ`; the denominator must be a unit mod `p`.
pub fn residue_mod_p(q: &Rational, ctx: PrimeContext) -> Result<u64> {
    let p = ctx.p_big();
    let num = q.numer().mod_floor(&p);
    let den = q.denom().mod_floor(&p);
    if den.is_zero() {
        return Err(Error::Invariant(format!(
            "denominator of {q} is divisible by p = {}",
            ctx.p()
        )));
    }
    let num = num.to_u64().expect("reduced below p");
    let den = den.to_u64().expect("reduced below p");
    Ok(mul_mod(num, inverse_mod(den, ctx.p()), ctx.p()))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of a unit `a` modulo a prime `p` (Fermat).
fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    #[test]
    fn prime_context_rejects_composites() {
        for bad in [0, 1, 4, 6, 9, 15] {
            assert_eq!(PrimeContext::new(bad), Err(Error::NotPrime(bad)));
        }
        for good in [2, 3, 5, 7, 11, 13] {
            assert!(PrimeContext::new(good).is_ok());
        }
    }

    #[test]
    fn ord_p_examples() {
        assert_eq!(ord_p(&rational(1, 1), ctx(2)), Ok(0));
        assert_eq!(ord_p(&rational(1, 3), ctx(2)), Ok(0));
        // 2! * 2^2 / 4! reduces to 1/3.
        let q = integer(2 * 4) / integer(24);
        assert_eq!(q, rational(1, 3));
        assert_eq!(ord_p(&q, ctx(2)), Ok(0));
        assert_eq!(ord_p(&rational(-12, 5), ctx(2)), Ok(2));
        assert_eq!(ord_p(&rational(5, 12), ctx(2)), Ok(-2));
    }

    #[test]
    fn ord_p_of_zero_is_an_error() {
        let err = ord_p(&rational(0, 1), ctx(3)).unwrap_err();
        assert_eq!(err.to_string(), "valuation of zero undefined");
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_valuation(0, ctx(2)), 0);
        assert_eq!(legendre_valuation(4, ctx(2)), 3);
        assert_eq!(legendre_valuation(10, ctx(3)), 4);
    }

    #[test]
    fn legendre_matches_explicit_factorials() {
        for p in [2, 3, 5, 7] {
            for n in 0..=30 {
                let explicit = ord_p_int(&factorial_int(n), ctx(p)).unwrap();
                assert_eq!(
                    legendre_valuation(n, ctx(p)) as i64,
                    explicit,
                    "p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn residues() {
        assert_eq!(residue_mod_p(&rational(1, 2), ctx(3)), Ok(2));
        assert_eq!(residue_mod_p(&rational(2, 3), ctx(2)), Ok(0));
        assert_eq!(residue_mod_p(&rational(7, 15), ctx(2)), Ok(1));
        assert_eq!(residue_mod_p(&rational(-1, 1), ctx(5)), Ok(4));
        assert!(residue_mod_p(&rational(1, 2), ctx(2)).is_err());
    }

    proptest! {
        #[test]
        fn ord_p_is_additive(
            a in (-500i64..500).prop_filter("nonzero", |v| *v != 0),
            b in 1i64..500,
            c in (-500i64..500).prop_filter("nonzero", |v| *v != 0),
            d in 1i64..500,
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
        ) {
            let x = rational(a, b);
            let y = rational(c, d);
            let ctx = ctx(p);
            prop_assert_eq!(
                ord_p(&(&x * &y), ctx).unwrap(),
                ord_p(&x, ctx).unwrap() + ord_p(&y, ctx).unwrap()
            );
        }
    }
}
