//! The full identity suite over a grid of primes and sizes.
//!
//! Each check becomes a [`CaseReport`] named after the identity it exercises;
//! a failed case never aborts the run.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::determinant::{
    factor_is_unit, random_matrix, random_positive_rational, triangular_product_check,
    verify_binom_h_equals_binom_with, verify_main_with, verify_phi_transpose_with,
    verify_scaling_with, verify_tonne, weighted_factorial_check_with,
};
use crate::perm::{
    count_with_cycle_type, cycle_census, cycle_types_in, h_n_by_cycle_types, h_n_expansion,
    verify_ctn_binom, verify_ctn_recursion,
};
use crate::series::{u_coeffs, u_via_exp, CoefficientTable};
use crate::tableaux::{
    admissible_bound_sum, bijection_report, count_tn, enumerate_tn, verify_round_trip,
};
use crate::{PrimeContext, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_a47e;

/// Largest `|T_n|` the suite will enumerate.
const TABLEAUX_SUITE_LIMIT: u64 = 10_000;
/// Coefficients are cross-checked against the series exponential at least this far.
const DUAL_CONSTRUCTION_DEPTH: usize = 60;
/// `h_n` is brute-forced through this degree.
const BRUTE_FORCE_DEGREE: usize = 8;
/// Cycle-type counts are compared with the census through this degree.
const CENSUS_DEGREE: usize = 7;
/// The expansion of `h_n` is compared with `n! u_n` through this degree.
const EXPANSION_DEGREE: usize = 40;
const UNIT_FACTOR_DEPTH: u64 = 50;
const RANDOM_MAX_ELL: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub identity: String,
    pub params: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationSummary {
    pub suite: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub reports: Vec<CaseReport>,
}

impl VerificationSummary {
    pub fn all_passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// Default size grid: `p = 2` up to 8, `p = 3` up to 6, `p = 5` up to 4.
pub fn default_max_ell(p: u64) -> usize {
    match p {
        2 => 8,
        3 => 6,
        5 => 4,
        _ => 3,
    }
}

#[derive(Debug, Clone)]
pub struct Verifier {
    primes: Vec<PrimeContext>,
    max_ell: Option<usize>,
    seed: u64,
    random_trials: usize,
    perturb: Option<usize>,
}

impl Verifier {
    pub fn new(primes: Vec<PrimeContext>) -> Self {
        Self {
            primes,
            max_ell: None,
            seed: DEFAULT_SEED,
            random_trials: 100,
            perturb: None,
        }
    }

    /// Caps the matrix and tableau sizes; `None` uses [`default_max_ell`].
    pub fn max_ell(mut self, max_ell: Option<usize>) -> Self {
        self.max_ell = max_ell;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn random_trials(mut self, trials: usize) -> Self {
        self.random_trials = trials;
        self
    }

    /// Runs every coefficient-based check against a table with `u_index`
    /// shifted by one. A correct suite must then fail.
    pub fn perturb(mut self, index: Option<usize>) -> Self {
        self.perturb = index;
        self
    }

    fn ell_for(&self, ctx: PrimeContext) -> usize {
        self.max_ell.unwrap_or_else(|| default_max_ell(ctx.p()))
    }

    pub fn run(&self) -> VerificationSummary {
        let mut cases = Cases::default();
        let census: BTreeMap<usize, BTreeMap<Vec<u64>, u64>> = (0..=BRUTE_FORCE_DEGREE)
            .map(|n| (n, cycle_census(n).expect("within the brute-force bound")))
            .collect();

        for &ctx in &self.primes {
            let ell_max = self.ell_for(ctx);
            let table = match self.table(ctx, ell_max) {
                Ok(t) => t,
                Err(e) => {
                    cases.push("coefficient-table", format!("p={}", ctx.p()), Err(e));
                    continue;
                }
            };
            self.coefficient_checks(&mut cases, &table);
            self.determinant_checks(&mut cases, &table, ell_max);
            self.permutation_checks(&mut cases, &table, &census);
            self.tableaux_checks(&mut cases, ctx, ell_max);
            self.scaled_determinant_checks(&mut cases, &table, ell_max);
        }
        self.determinant_trick_checks(&mut cases);

        let reports = cases.0;
        VerificationSummary {
            suite: "artin-hasse identities".into(),
            cases_run: reports.len(),
            cases_passed: reports.iter().filter(|r| r.passed).count(),
            reports,
        }
    }

    fn table(&self, ctx: PrimeContext, ell_max: usize) -> Result<CoefficientTable> {
        let depth = DUAL_CONSTRUCTION_DEPTH
            .max(ctx.p() as usize * ell_max)
            .max(EXPANSION_DEGREE)
            .max(self.perturb.unwrap_or(0));
        let table = u_coeffs(ctx, depth);
        match self.perturb {
            Some(index) => table.perturbed(index),
            None => Ok(table),
        }
    }

    fn coefficient_checks(&self, cases: &mut Cases, table: &CoefficientTable) {
        let ctx = table.ctx();
        let depth = table.max_index();
        let params = format!("p={} N={depth}", ctx.p());
        let oracle = u_via_exp(ctx, depth);
        let first_diff = table
            .values()
            .iter()
            .zip(oracle.values())
            .position(|(a, b)| a != b);
        cases.push(
            "dual-construction",
            params.clone(),
            Ok(match first_diff {
                None => Ok(()),
                Some(n) => Err(format!(
                    "u_{n} differs: {} vs {}",
                    table.values()[n],
                    oracle.values()[n]
                )),
            }),
        );
        let p = ctx.p_big();
        let bad = table
            .values()
            .iter()
            .position(|u| (u.denom() % &p) == BigInt::from(0));
        cases.push(
            "p-integral-coefficients",
            params,
            Ok(bad.map_or(Ok(()), |n| {
                Err(format!("denominator of u_{n} divisible by p"))
            })),
        );
        let all_units = (1..=UNIT_FACTOR_DEPTH).all(|k| factor_is_unit(ctx, k));
        cases.push(
            "unit-factors",
            format!("p={} k<={UNIT_FACTOR_DEPTH}", ctx.p()),
            Ok(flag(all_units, "some k! p^k / (kp)! is not a unit")),
        );
    }

    fn determinant_checks(&self, cases: &mut Cases, table: &CoefficientTable, ell_max: usize) {
        let ctx = table.ctx();
        for ell in 1..=ell_max {
            let params = format!("p={} ell={ell}", ctx.p());
            cases.push(
                "main-determinant",
                params.clone(),
                verify_main_with(table, ell).map(|r| {
                    if r.matches {
                        Ok(())
                    } else {
                        Err(format!(
                            "det = {}, closed form = {}",
                            r.determinant, r.closed_form
                        ))
                    }
                }),
            );
            cases.push(
                "unit-determinant",
                params.clone(),
                verify_main_with(table, ell).map(|r| match r.valuation {
                    Some(0) => Ok(()),
                    Some(v) => Err(format!("ord_p = {v}")),
                    None => Err("determinant vanishes".into()),
                }),
            );
            cases.push(
                "binomial-determinant",
                params.clone(),
                verify_tonne(ctx, ell).map(|ok| flag(ok, "det binom(pi, j) != p^(l(l+1)/2)")),
            );
            cases.push(
                "weighted-binomial-determinant",
                params.clone(),
                verify_binom_h_equals_binom_with(table, ell)
                    .map(|ok| flag(ok, "det binom(pi, j) h_(pi-j) != det binom(pi, j)")),
            );
            cases.push(
                "rescaling",
                params.clone(),
                verify_scaling_with(table, ell).map(|ok| flag(ok, "row/column rescaling mismatch")),
            );
            cases.push(
                "phi-transpose",
                params,
                verify_phi_transpose_with(table, ell)
                    .map(|ok| flag(ok, "phi matrix minor mismatch")),
            );
        }
    }

    fn permutation_checks(
        &self,
        cases: &mut Cases,
        table: &CoefficientTable,
        census: &BTreeMap<usize, BTreeMap<Vec<u64>, u64>>,
    ) {
        let ctx = table.ctx();
        for (&n, counts) in census {
            let params = format!("p={} n={n}", ctx.p());
            let brute: u64 = counts
                .iter()
                .filter(|(lengths, _)| lengths.iter().all(|&c| ctx.is_power(c)))
                .map(|(_, &c)| c)
                .sum();
            let brute = BigUint::from(brute);
            let result = table.h(n).map(|series| {
                let expansion = h_n_expansion(ctx, n as u64);
                let by_types = h_n_by_cycle_types(ctx, n as u64);
                if series == brute && expansion == brute && by_types == brute {
                    Ok(())
                } else {
                    Err(format!(
                        "n! u_n = {series}, expansion = {expansion}, cycle types = {by_types}, brute force = {brute}"
                    ))
                }
            });
            cases.push("p-element-count", params.clone(), result);

            let mut failures = Vec::new();
            for t in cycle_types_in(ctx, n as u64) {
                let census_count = |m: usize| {
                    census
                        .get(&m)
                        .map(|c| BigUint::from(c.get(t.parts()).copied().unwrap_or(0)))
                };
                if t.size() < n as u64 {
                    match verify_ctn_recursion(n as u64, &t) {
                        Ok(true) => {}
                        Ok(false) => failures.push(format!("recursion fails for {t}")),
                        Err(e) => failures.push(e.to_string()),
                    }
                    // The same identity on enumerated counts.
                    if let (Some(here), Some(below)) = (census_count(n), census_count(n - 1)) {
                        if here * (n as u64 - t.size()) != below * n as u64 {
                            failures.push(format!("recursion fails on census counts for {t}"));
                        }
                    }
                }
                match verify_ctn_binom(n as u64, &t) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("binomial form fails for {t}")),
                    Err(e) => failures.push(e.to_string()),
                }
                if n <= CENSUS_DEGREE {
                    let formula = count_with_cycle_type(n as u64, &t).ok();
                    if formula != census_count(n) {
                        failures.push(format!("count of {t} disagrees with enumeration"));
                    }
                }
            }
            cases.push(
                "cycle-type-counts",
                params,
                Ok(if failures.is_empty() {
                    Ok(())
                } else {
                    Err(failures.join("; "))
                }),
            );
        }

        let mismatch = (0..=EXPANSION_DEGREE).find_map(|n| match table.h(n) {
            Ok(h) if h == h_n_expansion(ctx, n as u64) => None,
            Ok(h) => Some(format!(
                "n = {n}: n! u_n = {h}, expansion = {}",
                h_n_expansion(ctx, n as u64)
            )),
            Err(e) => Some(e.to_string()),
        });
        cases.push(
            "h-expansion",
            format!("p={} n<={EXPANSION_DEGREE}", ctx.p()),
            Ok(mismatch.map_or(Ok(()), Err)),
        );
    }

    fn tableaux_checks(&self, cases: &mut Cases, ctx: PrimeContext, ell_max: usize) {
        let limit = BigUint::from(TABLEAUX_SUITE_LIMIT);
        let sizes: Vec<usize> = (1..=ell_max)
            .take_while(|&n| count_tn(ctx, n) <= limit)
            .collect();
        let mut enumerated: BTreeMap<usize, usize> = BTreeMap::new();
        enumerated.insert(0, 1);
        for &n in &sizes {
            let params = format!("p={} n={n}", ctx.p());
            cases.push(
                "tableaux-count",
                params.clone(),
                enumerate_tn(ctx, n).map(|all| {
                    enumerated.insert(n, all.len());
                    let expected = count_tn(ctx, n);
                    flag(
                        BigUint::from(all.len()) == expected,
                        &format!("enumerated {} != {expected}", all.len()),
                    )
                }),
            );
            if n >= 2 {
                if let (Some(&a), Some(&b), Some(&c)) = (
                    enumerated.get(&n),
                    enumerated.get(&(n - 1)),
                    enumerated.get(&(n - 2)),
                ) {
                    let lhs = BigUint::from(a) * BigUint::from(c);
                    let rhs = BigUint::from(b) * BigUint::from(b) * ctx.p();
                    cases.push(
                        "tableaux-recursion",
                        params.clone(),
                        Ok(flag(lhs == rhs, "|T_n| |T_(n-2)| != |T_(n-1)|^2 p")),
                    );
                }
            }
            // Signed form: pairs with a bound below 1 count negatively.
            cases.push(
                "admissible-count",
                params.clone(),
                admissible_bound_sum(ctx, n).map(|sum| {
                    let smaller = count_tn(ctx, n - 1);
                    let expected = BigInt::from(&smaller * &smaller * ctx.p());
                    flag(
                        sum == expected,
                        &format!("signed bound total {sum}, expected {expected}"),
                    )
                }),
            );
            cases.push(
                "gluing-bijection",
                params.clone(),
                bijection_report(ctx, n).map(|r| {
                    flag(
                        r.holds() && r.constrained_triples == r.target_size,
                        &format!("{r:?}"),
                    )
                }),
            );
            cases.push(
                "truncation-round-trip",
                params,
                verify_round_trip(ctx, n).map(|ok| flag(ok, "G(L(P), F(P), P_(n,1)) != P")),
            );
        }
    }

    fn scaled_determinant_checks(
        &self,
        cases: &mut Cases,
        table: &CoefficientTable,
        ell_max: usize,
    ) {
        let ctx = table.ctx();
        let top = ell_max.min(RANDOM_MAX_ELL);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ctx.p().rotate_left(32));
        let mut failure = None;
        for trial in 0..self.random_trials {
            let ell = rng.gen_range(1..=top);
            let alpha: Vec<_> = (0..ell)
                .map(|_| random_positive_rational(&mut rng))
                .collect();
            let beta: Vec<_> = (0..ell)
                .map(|_| random_positive_rational(&mut rng))
                .collect();
            match weighted_factorial_check_with(table, &alpha, &beta) {
                Ok(true) => {}
                Ok(false) => {
                    failure = Some(Err(format!("trial {trial} (ell = {ell}) disagrees")));
                    break;
                }
                Err(e) => {
                    failure = Some(Err(e.to_string()));
                    break;
                }
            }
        }
        cases.push(
            "scaled-determinant",
            format!(
                "p={} trials={} ell<={top} seed={}",
                ctx.p(),
                self.random_trials,
                self.seed
            ),
            Ok(failure.unwrap_or(Ok(()))),
        );
    }

    fn determinant_trick_checks(&self, cases: &mut Cases) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut failure = None;
        for trial in 0..self.random_trials {
            let ell = rng.gen_range(1..=RANDOM_MAX_ELL);
            let e = random_matrix(&mut rng, ell);
            let x = random_matrix(&mut rng, ell);
            match triangular_product_check(&e, &x) {
                Ok(true) => {}
                Ok(false) => {
                    failure = Some(Err(format!("trial {trial} (ell = {ell}) disagrees")));
                    break;
                }
                Err(e) => {
                    failure = Some(Err(e.to_string()));
                    break;
                }
            }
        }
        cases.push(
            "determinant-trick",
            format!(
                "trials={} ell<={RANDOM_MAX_ELL} seed={}",
                self.random_trials, self.seed
            ),
            Ok(failure.unwrap_or(Ok(()))),
        );
    }
}

fn flag(ok: bool, why: &str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

#[derive(Default)]
struct Cases(Vec<CaseReport>);

impl Cases {
    fn push(
        &mut self,
        identity: &str,
        params: String,
        outcome: Result<std::result::Result<(), String>>,
    ) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, None),
            Ok(Err(why)) => (false, Some(why)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.0.push(CaseReport {
            identity: identity.to_string(),
            params,
            passed,
            detail,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(ps: &[u64]) -> Vec<PrimeContext> {
        ps.iter().map(|&p| PrimeContext::new(p).unwrap()).collect()
    }

    #[test]
    fn small_grid_passes() {
        let summary = Verifier::new(primes(&[2, 3]))
            .max_ell(Some(3))
            .random_trials(20)
            .run();
        let failures: Vec<_> = summary.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(summary.cases_run > 20);
    }

    #[test]
    fn perturbation_is_detected() {
        for index in [1, 3, 7, 20] {
            let summary = Verifier::new(primes(&[2]))
                .max_ell(Some(2))
                .random_trials(5)
                .perturb(Some(index))
                .run();
            assert!(
                !summary.all_passed(),
                "u_{index} perturbation went unnoticed"
            );
            assert!(summary
                .failures()
                .any(|r| r.identity == "dual-construction"));
        }
    }
}
