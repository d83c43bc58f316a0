//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p artin-hasse-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use artin_hasse::determinant::{
    closed_form_main, factor_is_unit, matrix_binom, random_matrix, random_positive_rational,
    triangular_product_check, verify_main, weighted_factorial_check,
};
use artin_hasse::padic::{factorial_int, integer, ord_p, rational};
use artin_hasse::perm::{
    count_with_cycle_type, cycle_census, cycle_types_in, h_n_bruteforce, h_n_expansion,
    verify_ctn_binom, verify_ctn_recursion,
};
use artin_hasse::series::{u_coeffs, u_via_exp};
use artin_hasse::tableaux::{
    bijection_report, count_admissible, count_tn, enumerate_tn, verify_round_trip,
    ENUMERATION_LIMIT,
};
use artin_hasse::{PrimeContext, Rational};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_261_015;
const MAIN_GRID: &[(u64, usize)] = &[(2, 8), (3, 6), (5, 4)];

type Outcome = Result<(), String>;

fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p).expect("prime")
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn main_grid() -> impl Iterator<Item = (u64, usize)> {
    MAIN_GRID
        .iter()
        .flat_map(|&(p, top)| (1..=top).map(move |ell| (p, ell)))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    for (p, ell) in main_grid() {
        let report = verify_main(ctx(p), ell).map_err(|e| e.to_string())?;
        ensure(report.matches, || {
            format!(
                "p={p} ell={ell}: det {} != {}",
                report.determinant, report.closed_form
            )
        })?;
    }
    for (ell, expected) in [
        (1, rational(1, 1)),
        (2, rational(1, 3)),
        (3, rational(1, 45)),
    ] {
        let det = verify_main(ctx(2), ell)
            .map_err(|e| e.to_string())?
            .determinant;
        ensure(det == expected, || {
            format!("p=2 ell={ell}: {det} != {expected}")
        })?;
    }
    within(start, Duration::from_secs(2))
}

fn unit_claim() -> Outcome {
    for (p, ell) in main_grid() {
        let report = verify_main(ctx(p), ell).map_err(|e| e.to_string())?;
        ensure(report.valuation == Some(0), || {
            format!("p={p} ell={ell}: ord_p = {:?}", report.valuation)
        })?;
    }
    for p in [2, 3, 5, 7] {
        for k in 1..=50u64 {
            let factor = Rational::new(
                factorial_int(k) * num_traits::pow(BigInt::from(p), k as usize),
                factorial_int(p * k),
            );
            let v = ord_p(&factor, ctx(p)).map_err(|e| e.to_string())?;
            ensure(v == 0 && factor_is_unit(ctx(p), k), || {
                format!("p={p} k={k}: ord_p = {v}")
            })?;
        }
    }
    Ok(())
}

fn tableaux_counts() -> Outcome {
    let start = Instant::now();
    let expected: &[(u64, usize, u64)] = &[
        (2, 1, 2),
        (2, 2, 8),
        (2, 3, 64),
        (2, 4, 1024),
        (3, 1, 3),
        (3, 2, 27),
        (3, 3, 729),
    ];
    for &(p, n, count) in expected {
        let listed = enumerate_tn(ctx(p), n).map_err(|e| e.to_string())?.len() as u64;
        ensure(
            listed == count && count_tn(ctx(p), n) == BigUint::from(count),
            || format!("p={p} n={n}: enumerated {listed}, expected {count}"),
        )?;
    }
    within(start, Duration::from_secs(1))
}

fn bijection_and_triples() -> Outcome {
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        let report = bijection_report(ctx(p), n).map_err(|e| e.to_string())?;
        ensure(
            report.holds() && report.constrained_triples == report.target_size,
            || format!("p={p} n={n}: {report:?}"),
        )?;
        ensure(verify_round_trip(ctx(p), n) == Ok(true), || {
            format!("p={p} n={n}: round trip")
        })?;
        let side = count_tn(ctx(p), n - 1);
        let expected = &side * &side * p;
        let count = count_admissible(ctx(p), n).map_err(|e| e.to_string())?;
        ensure(count == expected, || {
            format!("p={p} n={n}: {count} triples, expected {expected}")
        })?;
    }
    Ok(())
}

fn h_n_agreement() -> Outcome {
    let start = Instant::now();
    for p in [2, 3, 5] {
        let table = u_coeffs(ctx(p), 40);
        for n in 0..=8usize {
            let series = table.h(n).map_err(|e| e.to_string())?;
            let expansion = h_n_expansion(ctx(p), n as u64);
            let brute = BigUint::from(h_n_bruteforce(ctx(p), n).map_err(|e| e.to_string())?);
            ensure(series == brute && expansion == brute, || {
                format!("p={p} n={n}: series {series}, expansion {expansion}, brute force {brute}")
            })?;
        }
        for n in 0..=40usize {
            let series = table.h(n).map_err(|e| e.to_string())?;
            ensure(series == h_n_expansion(ctx(p), n as u64), || {
                format!("p={p} n={n}")
            })?;
        }
    }
    let table = u_coeffs(ctx(2), 5);
    ensure(
        table.h(4) == Ok(BigUint::from(16u32)) && table.h(5) == Ok(BigUint::from(56u32)),
        || "p=2 spot values h_4 = 16, h_5 = 56".into(),
    )?;
    within(start, Duration::from_secs(5))
}

fn cycle_type_identities() -> Outcome {
    let census: Vec<_> = (0..=8).map(|n| cycle_census(n).expect("n <= 9")).collect();
    for p in [2, 3, 5] {
        for n in 1..=8u64 {
            for t in cycle_types_in(ctx(p), n) {
                if t.size() < n {
                    ensure(verify_ctn_recursion(n, &t) == Ok(true), || {
                        format!("recursion p={p} n={n} t={t}")
                    })?;
                }
                ensure(verify_ctn_binom(n, &t) == Ok(true), || {
                    format!("binomial p={p} n={n} t={t}")
                })?;
                if n <= 7 {
                    let brute = |m: u64| census[m as usize].get(t.parts()).copied().unwrap_or(0);
                    let formula = count_with_cycle_type(n, &t).map_err(|e| e.to_string())?;
                    ensure(formula == BigUint::from(brute(n)), || {
                        format!("count p={p} n={n} t={t}")
                    })?;
                    if t.size() < n {
                        ensure((n - t.size()) * brute(n) == n * brute(n - 1), || {
                            format!("recursion on enumerated counts p={p} n={n} t={t}")
                        })?;
                    }
                    let base = brute(t.size());
                    let binom = artin_hasse::padic::binomial(n, t.size());
                    ensure(BigUint::from(brute(n)) == binom * base, || {
                        format!("binomial form on enumerated counts p={p} n={n} t={t}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn determinant_trick_and_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100 {
        let ell = rng.gen_range(1..=5);
        let e = random_matrix(&mut rng, ell);
        let x = random_matrix(&mut rng, ell);
        ensure(triangular_product_check(&e, &x) == Ok(true), || {
            format!("determinant trick, trial {trial}")
        })?;
    }
    for trial in 0..100 {
        let p = if trial % 2 == 0 { 2 } else { 3 };
        let ell = rng.gen_range(1..=5);
        let alpha: Vec<_> = (0..ell)
            .map(|_| random_positive_rational(&mut rng))
            .collect();
        let beta: Vec<_> = (0..ell)
            .map(|_| random_positive_rational(&mut rng))
            .collect();
        ensure(
            weighted_factorial_check(ctx(p), &alpha, &beta) == Ok(true),
            || format!("scaled identity, trial {trial} (p={p}, ell={ell})"),
        )?;
    }
    Ok(())
}

fn binomial_determinant() -> Outcome {
    for (p, ell) in main_grid() {
        let det = matrix_binom(ctx(p), ell)
            .and_then(|m| m.determinant())
            .map_err(|e| e.to_string())?;
        let closed = integer(num_traits::pow(BigInt::from(p), ell * (ell + 1) / 2));
        let tableaux = if count_tn(ctx(p), ell - 1) <= BigUint::from(ENUMERATION_LIMIT) {
            BigUint::from(
                enumerate_tn(ctx(p), ell - 1)
                    .map_err(|e| e.to_string())?
                    .len(),
            )
        } else {
            count_tn(ctx(p), ell - 1)
        };
        let via_tableaux = integer(num_traits::pow(BigInt::from(p), ell) * BigInt::from(tableaux));
        ensure(det == closed && det == via_tableaux, || {
            format!("p={p} ell={ell}: det {det}, p^(l(l+1)/2) = {closed}, p^l |T_(l-1)| = {via_tableaux}")
        })?;
    }
    Ok(())
}

fn dual_construction() -> Outcome {
    for p in [2, 3, 5, 7] {
        let recursion = u_coeffs(ctx(p), 60);
        let exponential = u_via_exp(ctx(p), 60);
        ensure(recursion == exponential, || format!("p={p}: tables differ"))?;
        let pb = BigInt::from(p);
        ensure(
            recursion
                .values()
                .iter()
                .all(|u| u.denom() % &pb != BigInt::from(0)),
            || format!("p={p}: a denominator is divisible by p"),
        )?;
    }
    ensure(closed_form_main(ctx(2), 3) == rational(1, 45), || {
        "closed form".into()
    })
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ahdet");
    let good = Command::new(bin)
        .args(["verify", "--p", "2,3", "--max-ell", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(good.status.code() == Some(0), || {
        format!("correct build exited {:?}", good.status.code())
    })?;
    for index in [1, 2, 3, 5, 8, 13, 40] {
        let bad = Command::new(bin)
            .args([
                "verify",
                "--p",
                "2,3",
                "--max-ell",
                "5",
                "--perturb-u",
                &index.to_string(),
            ])
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&bad.stdout);
        let named = stdout
            .lines()
            .any(|l| l.starts_with("FAIL ") && l.split_whitespace().nth(1).is_some());
        ensure(bad.status.code() == Some(1) && named, || {
            format!(
                "perturbing u_{index}: exit {:?}, failure named: {named}",
                bad.status.code()
            )
        })?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        (
            "main determinant equals the factorial product",
            main_theorem,
        ),
        (
            "determinants and factorial ratios are p-adic units",
            unit_claim,
        ),
        ("staircase tableaux counts", tableaux_counts),
        (
            "gluing bijection and admissible triple counts",
            bijection_and_triples,
        ),
        ("p-element counts agree three ways", h_n_agreement),
        ("cycle-type count identities", cycle_type_identities),
        (
            "determinant trick and scaled identity (randomized)",
            determinant_trick_and_scaling,
        ),
        (
            "binomial determinant equals p^(l(l+1)/2) = p^l |T_(l-1)|",
            binomial_determinant,
        ),
        (
            "recursion matches the series exponential",
            dual_construction,
        ),
        (
            "verify command exit codes and fault injection",
            cli_contract,
        ),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "PASS  criterion {:>2}: {name} ({:.2?})",
                idx + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name}: {why}", idx + 1);
            }
        }
    }
    println!(
        "{}/{} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
