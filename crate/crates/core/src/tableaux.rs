//! Staircase tableaux with row-dependent entry bounds, the truncation maps,
//! and the gluing bijection that counts them.
//!
//! `T_n` is the set of fillings of the staircase `(n, n-1, .., 1)` by positive
//! integers such that the entry in row `i`, column `j` (1-indexed) is at most
//!
//! ```text
//! p + sum_{k < i} (T[k][j+1] - T[k][j])
//! ```
//!
//! `T_0` holds only the empty tableau.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::{Error, PrimeContext, Result};

/// Enumeration refuses sets with more than this many members.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// A staircase-shaped filling. Row `i` (1-indexed) holds `n - i + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != n - idx {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} entries, staircase of size {n} needs {}",
                    idx + 1,
                    row.len(),
                    n - idx
                )));
            }
        }
        if rows.iter().flatten().any(|&v| v == 0) {
            return Err(Error::ShapeMismatch("entries must be positive".into()));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Staircase size `n`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `(T)_{i,j}`, 1-indexed.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows[i - 1][j - 1]
    }

    /// Upper bound for the cell `(i, j)`, read off the rows above it.
    pub fn cell_bound(&self, ctx: PrimeContext, i: usize, j: usize) -> i64 {
        cell_bound(&self.rows, ctx, i - 1, j - 1)
    }

    /// Membership in `T_n` for `n = self.size()`.
    pub fn is_member(&self, ctx: PrimeContext) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &v)| i64::from(v) <= cell_bound(&self.rows, ctx, i, j))
        })
    }

    /// `F`: drop the first block of every row.
    pub fn truncate_first(&self) -> Result<Self> {
        if self.rows.is_empty() {
            return Err(Error::EmptyTableau);
        }
        let rows = self.rows[..self.size() - 1]
            .iter()
            .map(|row| row[1..].to_vec())
            .collect();
        Ok(Self { rows })
    }

    /// `L`: drop the last block of every row.
    pub fn truncate_last(&self) -> Result<Self> {
        if self.rows.is_empty() {
            return Err(Error::EmptyTableau);
        }
        let rows = self.rows[..self.size() - 1]
            .iter()
            .map(|row| row[..row.len() - 1].to_vec())
            .collect();
        Ok(Self { rows })
    }

    pub fn first_column(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|row| row[0])
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("[]");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

// 0-indexed; only rows above `i` are read.
fn cell_bound(rows: &[Vec<u32>], ctx: PrimeContext, i: usize, j: usize) -> i64 {
    rows[..i].iter().fold(ctx.p() as i64, |acc, row| {
        acc + i64::from(row[j + 1]) - i64::from(row[j])
    })
}

/// `|T_n| = p^{n(n+1)/2}`.
pub fn count_tn(ctx: PrimeContext, n: usize) -> BigUint {
    num_traits::pow(BigUint::from(ctx.p()), n * (n + 1) / 2)
}

fn guard(ctx: PrimeContext, n: usize) -> Result<()> {
    let size = count_tn(ctx, n);
    if size > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::SizeGuard {
            what: format!("T_{n} for p = {}", ctx.p()),
            size: format!("{}^{}", ctx.p(), n * (n + 1) / 2),
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Refuses `n` when `T_n` would be too large to list.
pub fn check_enumeration_size(ctx: PrimeContext, n: usize) -> Result<()> {
    guard(ctx, n)
}

/// All of `T_n`, filled row by row, left to right, in lexicographic order.
pub fn enumerate_tn(ctx: PrimeContext, n: usize) -> Result<Vec<Tableau>> {
    guard(ctx, n)?;
    let mut rows: Vec<Vec<u32>> = (0..n).map(|i| Vec::with_capacity(n - i)).collect();
    let mut out = Vec::new();
    fill(ctx, n, 0, 0, &mut rows, &mut out);
    Ok(out)
}

fn fill(
    ctx: PrimeContext,
    n: usize,
    i: usize,
    j: usize,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Tableau>,
) {
    if i == n {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    let (next_i, next_j) = if j + 1 == n - i {
        (i + 1, 0)
    } else {
        (i, j + 1)
    };
    let bound = cell_bound(rows, ctx, i, j);
    for v in 1..=bound.max(0) as u32 {
        rows[i].push(v);
        fill(ctx, n, next_i, next_j, rows, out);
        rows[i].pop();
    }
}

/// `G(S, T, u)`: the first column of `S` glued to the left of `T`, then `u`
/// placed below the new first column.
pub fn glue(s: &Tableau, t: &Tableau, u: u32) -> Result<Tableau> {
    if s.size() != t.size() {
        return Err(Error::ShapeMismatch(format!(
            "cannot glue staircases of sizes {} and {}",
            s.size(),
            t.size()
        )));
    }
    if u == 0 {
        return Err(Error::ShapeMismatch("glued entry must be positive".into()));
    }
    let mut rows: Vec<Vec<u32>> = s
        .first_column()
        .zip(t.rows())
        .map(|(head, tail)| {
            let mut row = Vec::with_capacity(tail.len() + 1);
            row.push(head);
            row.extend_from_slice(tail);
            row
        })
        .collect();
    rows.push(vec![u]);
    Ok(Tableau { rows })
}

/// `p + sum_{k=1}^{n-1} ((T)_{k,1} - (S)_{k,1})`.
fn admissible_bound(ctx: PrimeContext, s: &Tableau, t: &Tableau) -> i64 {
    let diff: i64 = t
        .first_column()
        .zip(s.first_column())
        .map(|(a, b)| i64::from(a) - i64::from(b))
        .sum();
    ctx.p() as i64 + diff
}

/// A triple `(S, T, u)` with `S, T` in `T_{n-1}` and `1 <= u <= p + sum_k ((T)_{k,1} - (S)_{k,1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    s: Tableau,
    t: Tableau,
    u: u32,
}

impl AdmissibleTriple {
    pub fn new(ctx: PrimeContext, s: Tableau, t: Tableau, u: u32) -> Result<Self> {
        let n = s.size() + 1;
        if !is_admissible(ctx, &s, &t, u, n)? {
            return Err(Error::Precondition(format!(
                "({s}, {t}, {u}) is not {n}-admissible"
            )));
        }
        Ok(Self { s, t, u })
    }

    pub fn parts(&self) -> (&Tableau, &Tableau, u32) {
        (&self.s, &self.t, self.u)
    }

    /// Whether `F(S) = L(T)`, which makes the glued tableau land in `T_n`.
    /// Vacuous when `S` and `T` are empty.
    pub fn truncations_match(&self) -> bool {
        self.s.size() == 0 || self.s.truncate_first().ok() == self.t.truncate_last().ok()
    }

    pub fn glue(&self) -> Tableau {
        glue(&self.s, &self.t, self.u).expect("components share a size")
    }
}

pub fn is_admissible(
    ctx: PrimeContext,
    s: &Tableau,
    t: &Tableau,
    u: u32,
    n: usize,
) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("admissibility needs n >= 1".into()));
    }
    for x in [s, t] {
        if x.size() != n - 1 || !x.is_member(ctx) {
            return Err(Error::NotMember { n: n - 1 });
        }
    }
    Ok(u >= 1 && i64::from(u) <= admissible_bound(ctx, s, t))
}

/// Number of `n`-admissible triples, counted over all pairs in `T_{n-1}`.
///
/// A pair whose bound is below 1 contributes no triples. Such pairs exist once
/// `n >= 3` and `p >= 3`, and then this count exceeds `|T_{n-1}|^2 p`; the
/// signed total in [`admissible_bound_sum`] is the quantity that always equals it.
pub fn count_admissible(ctx: PrimeContext, n: usize) -> Result<BigUint> {
    let mut total = BigUint::from(0u32);
    for_each_pair_bound(ctx, n, |bound| total += bound.max(0) as u64)?;
    Ok(total)
}

/// `sum_{S, T in T_{n-1}} (p + sum_k ((T)_{k,1} - (S)_{k,1}))`, negative bounds
/// included. The differences cancel in pairs, leaving `|T_{n-1}|^2 p`.
pub fn admissible_bound_sum(ctx: PrimeContext, n: usize) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for_each_pair_bound(ctx, n, |bound| total += bound)?;
    Ok(total)
}

fn for_each_pair_bound(ctx: PrimeContext, n: usize, mut visit: impl FnMut(i64)) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("admissibility needs n >= 1".into()));
    }
    let members = enumerate_tn(ctx, n - 1)?;
    for s in &members {
        for t in &members {
            visit(admissible_bound(ctx, s, t));
        }
    }
    Ok(())
}

/// Outcome of gluing every admissible triple with `F(S) = L(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    /// Admissible triples satisfying `F(S) = L(T)`.
    pub constrained_triples: usize,
    /// Distinct tableaux produced by gluing.
    pub image_size: usize,
    /// `|T_n|` by enumeration.
    pub target_size: usize,
    /// Every glued tableau satisfied the `T_n` bounds.
    pub image_in_target: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.image_in_target && self.injective && self.surjective
    }
}

/// Exhaustively glues the admissible triples with `F(S) = L(T)` and compares
/// the image with the enumerated `T_n`.
pub fn bijection_report(ctx: PrimeContext, n: usize) -> Result<BijectionReport> {
    if n == 0 {
        return Err(Error::Precondition("the gluing map needs n >= 1".into()));
    }
    let target = enumerate_tn(ctx, n)?;
    let smaller = enumerate_tn(ctx, n - 1)?;

    // Group S by F(S) so each T only meets the S it can be glued to.
    let mut by_first: HashMap<Option<Tableau>, Vec<&Tableau>> = HashMap::new();
    for s in &smaller {
        let key = (n >= 2).then(|| s.truncate_first().expect("nonempty"));
        by_first.entry(key).or_default().push(s);
    }

    let mut image = HashSet::with_capacity(target.len());
    let mut constrained = 0usize;
    let mut injective = true;
    let mut image_in_target = true;
    for t in &smaller {
        let key = (n >= 2).then(|| t.truncate_last().expect("nonempty"));
        let Some(partners) = by_first.get(&key) else {
            continue;
        };
        for s in partners {
            let bound = admissible_bound(ctx, s, t);
            for u in 1..=bound.max(0) as u32 {
                constrained += 1;
                let glued = glue(s, t, u)?;
                image_in_target &= glued.is_member(ctx);
                injective &= image.insert(glued);
            }
        }
    }
    let surjective = image.len() == target.len() && target.iter().all(|p| image.contains(p));
    Ok(BijectionReport {
        n,
        constrained_triples: constrained,
        image_size: image.len(),
        target_size: target.len(),
        image_in_target,
        injective,
        surjective,
    })
}

pub fn verify_bijection(ctx: PrimeContext, n: usize) -> Result<bool> {
    Ok(bijection_report(ctx, n)?.holds())
}

/// For every `P` in `T_n`: `F(P)` and `L(P)` lie in `T_{n-1}` and
/// `G(L(P), F(P), (P)_{n,1}) = P`.
pub fn verify_round_trip(ctx: PrimeContext, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::EmptyTableau);
    }
    for p in enumerate_tn(ctx, n)? {
        let first = p.truncate_first()?;
        let last = p.truncate_last()?;
        if !first.is_member(ctx) || !last.is_member(ctx) {
            return Ok(false);
        }
        if glue(&last, &first, p.entry(n, 1))? != p {
            return Ok(false);
        }
    }
    Ok(true)
}
