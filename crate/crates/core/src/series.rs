//! Artin-Hasse coefficients `u_n`, their reductions mod `p`, kernel slices,
//! and the Cartier / phi operator matrix.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::padic::{factorial_int, residue_mod_p};
use crate::{Error, ExactMatrix, PrimeContext, Rational, Result};

/// `u_0, ..., u_N` for a fixed prime.
///
/// Construction checks that `u_0 = 1`, that every denominator is prime to `p`
/// and that every `n! u_n` is a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    ctx: PrimeContext,
    values: Vec<Rational>,
}

impl CoefficientTable {
    pub fn new(ctx: PrimeContext, values: Vec<Rational>) -> Result<Self> {
        match values.first() {
            Some(u0) if u0.is_one() => {}
            _ => return Err(Error::Invariant("u_0 must equal 1".into())),
        }
        let table = Self { ctx, values };
        table.check_entries()?;
        Ok(table)
    }

    fn check_entries(&self) -> Result<()> {
        let p = self.ctx.p_big();
        for (n, u) in self.values.iter().enumerate() {
            if (u.denom() % &p).is_zero() {
                return Err(Error::Invariant(format!(
                    "u_{n} = {u} has a denominator divisible by p = {}",
                    self.ctx.p()
                )));
            }
            let h = u * Rational::from_integer(factorial_int(n as u64));
            if !h.is_integer() || h.numer().sign() == Sign::Minus {
                return Err(Error::Invariant(format!(
                    "{n}! * u_{n} = {h} is not a nonnegative integer"
                )));
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> PrimeContext {
        self.ctx
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Largest index held by the table.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `u_n`, with `u_n = 0` for negative `n`. Panics past the end of the table.
    pub fn u(&self, n: i64) -> Rational {
        if n < 0 {
            return Rational::zero();
        }
        self.values
            .get(n as usize)
            .unwrap_or_else(|| {
                panic!(
                    "u_{n} requested from a table ending at {}",
                    self.max_index()
                )
            })
            .clone()
    }

    /// `h_n = n! u_n`, the number of p-elements of `S_n`.
    pub fn h(&self, n: usize) -> Result<BigUint> {
        let u = self
            .values
            .get(n)
            .ok_or_else(|| Error::Precondition(format!("h_{n} needs a table through index {n}")))?;
        let h = u * Rational::from_integer(factorial_int(n as u64));
        if !h.is_integer() {
            return Err(Error::Invariant(format!(
                "{n}! * u_{n} = {h} is not an integer"
            )));
        }
        h.to_integer()
            .to_biguint()
            .ok_or_else(|| Error::Invariant(format!("{n}! * u_{n} is negative")))
    }

    /// Copy of the table with `u_index` shifted by one.
    ///
    /// The shift keeps every denominator prime to `p` and every `n! u_n`
    /// integral, so the perturbed table still passes the entry checks and only
    /// the identities themselves can catch it. Used for fault injection.
    pub fn perturbed(&self, index: usize) -> Result<Self> {
        if index > self.max_index() {
            return Err(Error::Precondition(format!(
                "cannot perturb u_{index}: table ends at {}",
                self.max_index()
            )));
        }
        let mut values = self.values.clone();
        values[index] += Rational::one();
        Ok(Self {
            ctx: self.ctx,
            values,
        })
    }
}

/// `u_0..u_N` from `u_n = (1/n) sum_{i >= 0, p^i <= n} u_{n - p^i}`, `u_0 = 1`.
pub fn u_coeffs(ctx: PrimeContext, n_max: usize) -> CoefficientTable {
    let powers = ctx.powers_up_to(n_max as u64);
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Rational::one());
    for n in 1..=n_max {
        let sum = powers
            .iter()
            .map(|&q| q as usize)
            .take_while(|&q| q <= n)
            .fold(Rational::zero(), |acc, q| acc + &values[n - q]);
        values.push(sum / Rational::from_integer(BigInt::from(n)));
    }
    CoefficientTable::new(ctx, values).expect("recursion produces a valid coefficient table")
}

/// `u_0..u_N` by exponentiating the series directly:
/// `exp(sum_k x^(p^k) / p^k) = prod_k exp(x^(p^k) / p^k)`, each factor expanded
/// as `sum_m (x^(p^k) / p^k)^m / m!` and the factors multiplied out to degree `N`.
pub fn u_via_exp(ctx: PrimeContext, n_max: usize) -> CoefficientTable {
    let mut acc = vec![Rational::zero(); n_max + 1];
    acc[0] = Rational::one();
    for q in ctx.powers_up_to(n_max as u64) {
        let q = q as usize;
        let c = Rational::new(BigInt::one(), BigInt::from(q));
        let mut factor = vec![Rational::zero(); n_max + 1];
        let mut term = Rational::one();
        let mut m = 0usize;
        while m * q <= n_max {
            factor[m * q] = term.clone();
            m += 1;
            term = term * &c / Rational::from_integer(BigInt::from(m));
        }
        acc = truncated_product(&acc, &factor, n_max);
    }
    CoefficientTable::new(ctx, acc).expect("series exponential produces a valid coefficient table")
}

fn truncated_product(a: &[Rational], b: &[Rational], n_max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n_max + 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(n_max + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Number of p-elements of `S_n`, computed as `n! u_n`.
pub fn h_n(ctx: PrimeContext, n: usize) -> Result<BigUint> {
    u_coeffs(ctx, n).h(n)
}

/// Residues `u_n mod p`.
pub fn u_mod_p(table: &CoefficientTable) -> Result<Vec<u64>> {
    table
        .values()
        .iter()
        .map(|u| residue_mod_p(u, table.ctx()))
        .collect()
}

/// First `count` terms of `(u_{p^i n + j} mod p)_{n >= 0}`.
pub fn p_kernel_slice(ctx: PrimeContext, i: u32, j: u64, count: usize) -> Result<Vec<u64>> {
    let stride = ctx.checked_pow(i).ok_or(Error::KernelOffset { i, j })?;
    if j >= stride {
        return Err(Error::KernelOffset { i, j });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let last = (count as u64 - 1)
        .checked_mul(stride)
        .and_then(|v| v.checked_add(j))
        .ok_or_else(|| Error::Precondition("kernel slice index overflows".into()))?;
    let table = u_coeffs(ctx, last as usize);
    (0..count as u64)
        .map(|n| residue_mod_p(&table.values()[(stride * n + j) as usize], ctx))
        .collect()
}

/// The Cartier operator on a truncated series: output `n` is input `p n`.
pub fn cartier(coeffs: &[Rational], ctx: PrimeContext) -> Vec<Rational> {
    coeffs.iter().step_by(ctx.p() as usize).cloned().collect()
}

/// Matrix of `f -> U_p(E f)` on `1, x, x^2, ...`: entry `(r, c)` is `u_{p c - r}`.
pub fn phi_matrix(ctx: PrimeContext, size: usize) -> ExactMatrix {
    let p = ctx.p() as usize;
    let table = u_coeffs(ctx, p * size.saturating_sub(1));
    phi_matrix_with(&table, size)
}

pub fn phi_matrix_with(table: &CoefficientTable, size: usize) -> ExactMatrix {
    let p = table.ctx().p() as i64;
    ExactMatrix::from_fn(size, size, |r, c| table.u(p * c as i64 - r as i64))
}
