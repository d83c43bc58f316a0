use artin_hasse::determinant::{binomial_closed_form, matrix_binom, matrix_binom_h, verify_main};
use artin_hasse::perm::{h_n_bruteforce, h_n_expansion, BRUTE_FORCE_MAX};
use artin_hasse::series::{p_kernel_slice, phi_matrix, u_coeffs, u_mod_p};
use artin_hasse::tableaux::{check_enumeration_size, count_tn, enumerate_tn};
use artin_hasse::{Error, PrimeContext, Verifier};
use serde_json::{json, Value};

use crate::render::{self, csv_field, fraction};
use crate::{Format, HnMethod, MatrixKind};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_) => CliError::Usage("p must be prime".into()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// One command's result in every output format.
pub struct Output {
    pub ok: bool,
    pub text: String,
    pub json: String,
    pub csv: String,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => self.json.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

fn prime(p: u64) -> Result<PrimeContext, CliError> {
    Ok(PrimeContext::new(p)?)
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

pub fn coeff(p: u64, n: usize, mod_p: bool) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    let table = u_coeffs(ctx, n);
    let params = json!({ "n": n, "mod_p": mod_p });
    if mod_p {
        let residues = u_mod_p(&table)?;
        let text: Vec<String> = residues.iter().map(u64::to_string).collect();
        Ok(Output {
            ok: true,
            text: format!("{}\n", text.join(",")),
            json: render::document("coeff", json!(p), params, json!(residues)),
            csv: lines(
                std::iter::once("n,residue".to_string())
                    .chain(residues.iter().enumerate().map(|(i, r)| format!("{i},{r}"))),
            ),
        })
    } else {
        let values = table.values();
        let text: Vec<String> = values.iter().map(ToString::to_string).collect();
        Ok(Output {
            ok: true,
            text: format!("{}\n", text.join(", ")),
            json: render::document(
                "coeff",
                json!(p),
                params,
                Value::Array(values.iter().map(fraction).collect()),
            ),
            csv: lines(
                std::iter::once("n,num,den".to_string()).chain(
                    values
                        .iter()
                        .enumerate()
                        .map(|(i, q)| format!("{i},{},{}", q.numer(), q.denom())),
                ),
            ),
        })
    }
}

pub fn hn(p: u64, n: usize, method: HnMethod) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    if method == HnMethod::Bruteforce && n > BRUTE_FORCE_MAX {
        return Err(Error::BruteForceBound {
            n,
            max: BRUTE_FORCE_MAX,
        }
        .into());
    }
    let series = || -> Result<String, CliError> { Ok(u_coeffs(ctx, n).h(n)?.to_string()) };
    let expansion = || h_n_expansion(ctx, n as u64).to_string();
    let brute = || -> Result<String, CliError> { Ok(h_n_bruteforce(ctx, n)?.to_string()) };

    let mut values: Vec<(&str, String)> = Vec::new();
    match method {
        HnMethod::Series => values.push(("series", series()?)),
        HnMethod::Expansion => values.push(("expansion", expansion())),
        HnMethod::Bruteforce => values.push(("bruteforce", brute()?)),
        HnMethod::All => {
            values.push(("series", series()?));
            values.push(("expansion", expansion()));
            if n <= BRUTE_FORCE_MAX {
                values.push(("bruteforce", brute()?));
            }
        }
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let joined: Vec<&str> = values.iter().map(|(_, v)| v.as_str()).collect();
    let text = if method == HnMethod::All {
        format!(
            "{}, {}\n",
            joined.join("/"),
            if agree { "agree" } else { "DISAGREE" }
        )
    } else {
        format!("{}\n", joined[0])
    };
    let mut result = serde_json::Map::new();
    for (name, v) in &values {
        result.insert((*name).into(), Value::String(v.clone()));
    }
    result.insert("agree".into(), Value::Bool(agree));
    let method_name = format!("{method:?}").to_lowercase();
    Ok(Output {
        ok: agree,
        text,
        json: render::document(
            "hn",
            json!(p),
            json!({ "n": n, "method": method_name }),
            Value::Object(result),
        ),
        csv: lines(
            std::iter::once("method,h_n".to_string())
                .chain(values.iter().map(|(name, v)| format!("{name},{v}"))),
        ),
    })
}

pub fn det(p: u64, ell: usize, kind: MatrixKind) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    if ell == 0 {
        return Err(CliError::Usage("--ell must be at least 1".into()));
    }
    let (name, matrix, determinant, closed_form, closed_text, valuation) = match kind {
        MatrixKind::U => {
            let report = verify_main(ctx, ell)?;
            let m = artin_hasse::determinant::matrix_u(ctx, ell)?;
            let closed = report.closed_form.to_string();
            (
                "u",
                m,
                report.determinant,
                report.closed_form,
                closed,
                report.valuation,
            )
        }
        MatrixKind::BinomH | MatrixKind::Binom => {
            let m = if kind == MatrixKind::Binom {
                matrix_binom(ctx, ell)?
            } else {
                matrix_binom_h(ctx, ell)?
            };
            let d = m.determinant()?;
            let exponent = ell * (ell + 1) / 2;
            let closed = binomial_closed_form(ctx, ell);
            let name = if kind == MatrixKind::Binom {
                "binom"
            } else {
                "binom-h"
            };
            let v = artin_hasse::padic::ord_p(&d, ctx).ok();
            (name, m, d, closed, format!("{p}^{exponent}"), v)
        }
    };
    let matches = determinant == closed_form;
    let status = if matches { "OK" } else { "MISMATCH" };
    let text = match kind {
        MatrixKind::U => {
            let v = valuation.map_or("undefined".to_string(), |v| v.to_string());
            format!("{determinant} = {closed_text}, ord_{p} = {v}, {status}\n")
        }
        _ => format!("{determinant} = {closed_text}, {status}\n"),
    };
    let result = json!({
        "matrix": render::matrix(&matrix),
        "determinant": fraction(&determinant),
        "closed_form": fraction(&closed_form),
        "valuation": valuation,
        "matches": matches,
    });
    let v = valuation.map_or(String::new(), |v| v.to_string());
    Ok(Output {
        ok: matches,
        text,
        json: render::document("det", json!(p), json!({ "ell": ell, "matrix": name }), result),
        csv: format!(
            "p,ell,matrix,determinant,closed_form,valuation,matches\n{p},{ell},{name},{determinant},{closed_form},{v},{matches}\n"
        ),
    })
}

pub fn tableaux(p: u64, n: usize, enumerate: bool) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    check_enumeration_size(ctx, n)?;
    let count = count_tn(ctx, n);
    let params = json!({ "n": n, "enumerate": enumerate });
    if !enumerate {
        return Ok(Output {
            ok: true,
            text: format!("{count}\n"),
            json: render::document(
                "tableaux",
                json!(p),
                params,
                json!({ "count": count.to_string() }),
            ),
            csv: format!("n,count\n{n},{count}\n"),
        });
    }
    let all = enumerate_tn(ctx, n)?;
    let ok = count == all.len().into();
    let listing: Vec<String> = all.iter().map(ToString::to_string).collect();
    let mut text = format!("{count}\nenumerated: {}\n", all.len());
    text.push_str(&lines(listing.iter().cloned()));
    let rows: Vec<Value> = all.iter().map(|t| json!(t.rows())).collect();
    Ok(Output {
        ok,
        text,
        json: render::document(
            "tableaux",
            json!(p),
            params,
            json!({ "count": count.to_string(), "enumerated": all.len(), "tableaux": rows }),
        ),
        csv: lines(
            std::iter::once("index,tableau".to_string()).chain(
                listing
                    .iter()
                    .enumerate()
                    .map(|(i, t)| format!("{i},{}", csv_field(t))),
            ),
        ),
    })
}

pub fn kernel(p: u64, i: u32, j: u64, count: usize) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    let residues = p_kernel_slice(ctx, i, j, count)?;
    let text: Vec<String> = residues.iter().map(u64::to_string).collect();
    Ok(Output {
        ok: true,
        text: format!("{}\n", text.join(",")),
        json: render::document(
            "kernel",
            json!(p),
            json!({ "i": i, "j": j, "count": count }),
            json!(residues),
        ),
        csv: lines(
            std::iter::once("n,residue".to_string())
                .chain(residues.iter().enumerate().map(|(n, r)| format!("{n},{r}"))),
        ),
    })
}

pub fn phi(p: u64, size: usize) -> Result<Output, CliError> {
    let ctx = prime(p)?;
    if size == 0 {
        return Err(CliError::Usage("--size must be at least 1".into()));
    }
    let m = phi_matrix(ctx, size);
    Ok(Output {
        ok: true,
        text: render::matrix_text(&m),
        json: render::document("phi", json!(p), json!({ "size": size }), render::matrix(&m)),
        csv: render::matrix_csv(&m),
    })
}

pub fn verify(
    primes: &[u64],
    max_ell: Option<usize>,
    seed: u64,
    trials: usize,
    perturb: Option<usize>,
) -> Result<Output, CliError> {
    let ctxs = primes
        .iter()
        .map(|&p| prime(p))
        .collect::<Result<Vec<_>, _>>()?;
    if max_ell == Some(0) {
        return Err(CliError::Usage("--max-ell must be at least 1".into()));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let summary = Verifier::new(ctxs)
        .max_ell(max_ell)
        .seed(seed)
        .random_trials(trials)
        .perturb(perturb)
        .run();

    let mut text = String::new();
    for r in &summary.reports {
        match (&r.passed, &r.detail) {
            (true, _) => text.push_str(&format!("PASS {} [{}]\n", r.identity, r.params)),
            (false, Some(d)) => {
                text.push_str(&format!("FAIL {} [{}]: {d}\n", r.identity, r.params))
            }
            (false, None) => text.push_str(&format!("FAIL {} [{}]\n", r.identity, r.params)),
        }
    }
    text.push_str(&format!(
        "{}/{} cases passed\n",
        summary.cases_passed, summary.cases_run
    ));

    let cases: Vec<Value> = summary
        .reports
        .iter()
        .map(|r| json!({ "identity": r.identity, "params": r.params, "passed": r.passed, "detail": r.detail }))
        .collect();
    let result = json!({
        "suite": summary.suite,
        "cases_run": summary.cases_run,
        "cases_passed": summary.cases_passed,
        "cases": cases,
    });
    let mut params = json!({ "max_ell": max_ell, "seed": seed, "trials": trials });
    if let Some(index) = perturb {
        params["perturb_u"] = json!(index);
    }
    let csv = lines(
        std::iter::once("identity,params,passed,detail".to_string()).chain(
            summary.reports.iter().map(|r| {
                format!(
                    "{},{},{},{}",
                    r.identity,
                    csv_field(&r.params),
                    r.passed,
                    csv_field(r.detail.as_deref().unwrap_or(""))
                )
            }),
        ),
    );
    Ok(Output {
        ok: summary.all_passed(),
        text,
        json: render::document("verify", json!(primes), params, result),
        csv,
    })
}
