//! The coefficient, binomial-weighted and pure binomial matrices, their exact
//! determinants, and the identities relating them.
//!
//! Matrix indices in the doc comments are 1-indexed: entry `(i, j)` lives at
//! row `i - 1`, column `j - 1` of the [`ExactMatrix`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::padic::{binomial, factorial_int, legendre_valuation, ord_p};
use crate::series::{phi_matrix_with, u_coeffs, CoefficientTable};
use crate::tableaux::count_tn;
use crate::{Error, ExactMatrix, PrimeContext, Rational, Result};

/// Comparison of `det(u_{pi-j})` against `prod_k k! p^k / (pk)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantReport {
    pub p: u64,
    pub ell: usize,
    pub determinant: Rational,
    pub closed_form: Rational,
    /// `ord_p` of the determinant; `None` when it vanishes.
    pub valuation: Option<i64>,
    pub matches: bool,
}

impl DeterminantReport {
    /// The determinant equals the closed form and is a p-adic unit.
    pub fn holds(&self) -> bool {
        self.matches && self.valuation == Some(0)
    }
}

fn table_for(ctx: PrimeContext, ell: usize) -> CoefficientTable {
    u_coeffs(ctx, ctx.p() as usize * ell)
}

fn require_ell(ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Precondition("matrix size must be at least 1".into()));
    }
    Ok(())
}

fn require_table(table: &CoefficientTable, ell: usize) -> Result<()> {
    require_ell(ell)?;
    let needed = table.ctx().p() as usize * ell - 1;
    if table.max_index() < needed {
        return Err(Error::Precondition(format!(
            "size {ell} needs coefficients through u_{needed}, table ends at u_{}",
            table.max_index()
        )));
    }
    Ok(())
}

/// `(u_{pi-j})_{1 <= i,j <= l}` with `u_n = 0` for `n < 0`.
pub fn matrix_u(ctx: PrimeContext, ell: usize) -> Result<ExactMatrix> {
    matrix_u_with(&table_for(ctx, ell), ell)
}

pub fn matrix_u_with(table: &CoefficientTable, ell: usize) -> Result<ExactMatrix> {
    require_table(table, ell)?;
    let p = table.ctx().p() as i64;
    Ok(ExactMatrix::from_fn(ell, ell, |r, c| {
        table.u(p * (r as i64 + 1) - (c as i64 + 1))
    }))
}

/// `(binom(pi, j) h_{pi-j})_{1 <= i,j <= l}`, `h` of a negative index being 0.
pub fn matrix_binom_h(ctx: PrimeContext, ell: usize) -> Result<ExactMatrix> {
    matrix_binom_h_with(&table_for(ctx, ell), ell)
}

pub fn matrix_binom_h_with(table: &CoefficientTable, ell: usize) -> Result<ExactMatrix> {
    require_table(table, ell)?;
    let p = table.ctx().p() as usize;
    let mut entries = Vec::with_capacity(ell * ell);
    for i in 1..=ell {
        for j in 1..=ell {
            let entry = match (p * i).checked_sub(j) {
                Some(m) => BigInt::from(binomial((p * i) as u64, j as u64) * table.h(m)?),
                None => BigInt::zero(),
            };
            entries.push(Rational::from_integer(entry));
        }
    }
    ExactMatrix::new(ell, ell, entries)
}

/// `(binom(pi, j))_{1 <= i,j <= l}`.
pub fn matrix_binom(ctx: PrimeContext, ell: usize) -> Result<ExactMatrix> {
    require_ell(ell)?;
    let p = ctx.p();
    Ok(ExactMatrix::from_fn(ell, ell, |r, c| {
        Rational::from_integer(BigInt::from(binomial(p * (r as u64 + 1), c as u64 + 1)))
    }))
}

/// `prod_{k=1}^{l} k! p^k / (pk)!`.
pub fn closed_form_main(ctx: PrimeContext, ell: usize) -> Rational {
    (1..=ell as u64).fold(Rational::one(), |acc, k| {
        let num = factorial_int(k) * num_traits::pow(ctx.p_big(), k as usize);
        acc * Rational::new(num, factorial_int(ctx.p() * k))
    })
}

pub fn verify_main(ctx: PrimeContext, ell: usize) -> Result<DeterminantReport> {
    verify_main_with(&table_for(ctx, ell), ell)
}

pub fn verify_main_with(table: &CoefficientTable, ell: usize) -> Result<DeterminantReport> {
    let ctx = table.ctx();
    let determinant = matrix_u_with(table, ell)?.determinant()?;
    let closed_form = closed_form_main(ctx, ell);
    let valuation = ord_p(&determinant, ctx).ok();
    Ok(DeterminantReport {
        p: ctx.p(),
        ell,
        matches: determinant == closed_form,
        determinant,
        closed_form,
        valuation,
    })
}

/// `p^{l(l+1)/2}`.
pub fn binomial_closed_form(ctx: PrimeContext, ell: usize) -> Rational {
    ctx.pow_rational((ell * (ell + 1) / 2) as u32)
}

/// `det(binom(pi, j)) = p^{l(l+1)/2} = p^l |T_{l-1}|`.
pub fn verify_tonne(ctx: PrimeContext, ell: usize) -> Result<bool> {
    let det = matrix_binom(ctx, ell)?.determinant()?;
    let via_tableaux =
        ctx.pow_rational(ell as u32) * Rational::from_integer(BigInt::from(count_tn(ctx, ell - 1)));
    Ok(det == binomial_closed_form(ctx, ell) && det == via_tableaux)
}

/// `det(binom(pi, j) h_{pi-j}) = det(binom(pi, j))`.
pub fn verify_binom_h_equals_binom(ctx: PrimeContext, ell: usize) -> Result<bool> {
    verify_binom_h_equals_binom_with(&table_for(ctx, ell), ell)
}

pub fn verify_binom_h_equals_binom_with(table: &CoefficientTable, ell: usize) -> Result<bool> {
    let weighted = matrix_binom_h_with(table, ell)?.determinant()?;
    let plain = matrix_binom(table.ctx(), ell)?.determinant()?;
    Ok(weighted == plain)
}

/// `det(binom(pi, j) h_{pi-j}) / prod_i (pi)!/i! = det(u_{pi-j})`.
pub fn verify_scaling_with(table: &CoefficientTable, ell: usize) -> Result<bool> {
    let p = table.ctx().p();
    let weighted = matrix_binom_h_with(table, ell)?.determinant()?;
    let scale = (1..=ell as u64).fold(Rational::one(), |acc, i| {
        acc * Rational::new(factorial_int(p * i), factorial_int(i))
    });
    Ok(weighted / scale == matrix_u_with(table, ell)?.determinant()?)
}

/// `(u_{pi-j})` is the transpose of the phi-operator matrix of size `l + 1`
/// with its first row and column removed.
pub fn verify_phi_transpose_with(table: &CoefficientTable, ell: usize) -> Result<bool> {
    let phi = phi_matrix_with(table, ell + 1);
    Ok(phi.transpose().minor(0, 0) == matrix_u_with(table, ell)?)
}

/// `ord_p(k! p^k / (kp)!) = 0`, computed with Legendre's formula.
pub fn factor_is_unit(ctx: PrimeContext, k: u64) -> bool {
    legendre_valuation(k, ctx) + k == legendre_valuation(k * ctx.p(), ctx)
}

/// Checks `det(sum_{k=1}^{l} E_{j,i-k+1} X_{i,k})_{i,j} = det(E) prod_i X_{i,1}`
/// for concrete `E` (indexed `(j, k)`) and `X` (indexed `(i, k)`); `E` at a
/// column index below 1 is 0.
pub fn triangular_product_check(e: &ExactMatrix, x: &ExactMatrix) -> Result<bool> {
    let ell = e.rows();
    for m in [e, x] {
        if m.rows() != ell || m.cols() != ell {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    require_ell(ell)?;
    let lhs = ExactMatrix::from_fn(ell, ell, |i, j| {
        // 0-indexed: column i - k of E pairs with column k of X.
        (0..=i).fold(Rational::zero(), |acc, k| {
            acc + e.get(j, i - k) * x.get(i, k)
        })
    });
    let diagonal = (0..ell).fold(Rational::one(), |acc, i| acc * x.get(i, 0));
    Ok(lhs.determinant()? == e.determinant()? * diagonal)
}

/// Checks `det(a_j b_i u_{pi-j})_{i,j} = det(a_j b_k / (pk-j)!)_{j,k}`, with
/// `1/m! = 0` for negative `m`.
pub fn weighted_factorial_check(
    ctx: PrimeContext,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<bool> {
    weighted_factorial_check_with(&table_for(ctx, alpha.len()), alpha, beta)
}

pub fn weighted_factorial_check_with(
    table: &CoefficientTable,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<bool> {
    let ell = alpha.len();
    if beta.len() != ell {
        return Err(Error::EntryCount {
            expected: ell,
            actual: beta.len(),
        });
    }
    if alpha.iter().chain(beta).any(|q| *q <= Rational::zero()) {
        return Err(Error::NonPositiveScaling);
    }
    let u = matrix_u_with(table, ell)?;
    let lhs = ExactMatrix::from_fn(ell, ell, |i, j| &alpha[j] * &beta[i] * u.get(i, j));
    let p = table.ctx().p();
    let rhs = ExactMatrix::from_fn(ell, ell, |j, k| {
        match (p * (k as u64 + 1)).checked_sub(j as u64 + 1) {
            Some(m) => &alpha[j] * &beta[k] / Rational::from_integer(factorial_int(m)),
            None => Rational::zero(),
        }
    });
    Ok(lhs.determinant()? == rhs.determinant()?)
}

/// Rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=9)),
    )
}

/// Rational with numerator and denominator in `[1, 20]`.
pub fn random_positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1i64..=20)),
        BigInt::from(rng.gen_range(1i64..=20)),
    )
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, ell: usize) -> ExactMatrix {
    ExactMatrix::from_fn(ell, ell, |_, _| random_rational(rng))
}
