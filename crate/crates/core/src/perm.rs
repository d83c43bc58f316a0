//! Cycle types of p-power order in `S_n` and the counts built from them.
//!
//! A [`CycleType`] lists only the nontrivial cycles; fixed points are implied
//! by the ambient degree `n`. The empty type stands for the identity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::padic::{binomial, factorial};
use crate::{Error, PrimeContext, Result};

/// Largest degree the brute-force oracles will enumerate.
pub const BRUTE_FORCE_MAX: usize = 9;

/// Multiset of cycle lengths, each a power of `p` that is at least `p`,
/// stored in descending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(ctx: PrimeContext, mut parts: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&c| c < ctx.p() || !ctx.is_power(c)) {
            return Err(Error::Precondition(format!(
                "cycle length {bad} is not a power of p = {} that is at least p",
                ctx.p()
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn identity() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of points moved, `|t|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `I^k`: cycle types of p-power order moving exactly `p k` points.
/// `k = 0` gives the identity type alone.
pub fn cycle_types_ik(ctx: PrimeContext, k: u64) -> Vec<CycleType> {
    let total = ctx.p() * k;
    let mut parts: Vec<u64> = ctx.powers_up_to(total).into_iter().skip(1).collect();
    parts.reverse();
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_into(total, &parts, &mut current, &mut out);
    out.into_iter().map(|parts| CycleType { parts }).collect()
}

// Partitions of `remaining` into the (descending) `allowed` sizes, emitted in
// lexicographically descending order.
fn partitions_into(
    remaining: u64,
    allowed: &[u64],
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (idx, &part) in allowed.iter().enumerate() {
        if part <= remaining {
            current.push(part);
            partitions_into(remaining - part, &allowed[idx..], current, out);
            current.pop();
        }
    }
}

/// `I_n`: the nontrivial cycle types of p-power order that fit in `S_n`.
pub fn cycle_types_in(ctx: PrimeContext, n: u64) -> Vec<CycleType> {
    (1..=n / ctx.p())
        .flat_map(|k| cycle_types_ik(ctx, k))
        .collect()
}

/// `C_t^n`: permutations of `S_n` whose nontrivial cycles are exactly `t`,
/// `n! / (prod_c c^{m_c} m_c!)` with the `n - |t|` fixed points counted as 1-cycles.
pub fn count_with_cycle_type(n: u64, t: &CycleType) -> Result<BigUint> {
    if t.size() > n {
        return Err(Error::Precondition(format!(
            "cycle type {t} moves {} points, more than n = {n}",
            t.size()
        )));
    }
    let mut multiplicities: BTreeMap<u64, u64> = BTreeMap::new();
    for &c in t.parts() {
        *multiplicities.entry(c).or_default() += 1;
    }
    *multiplicities.entry(1).or_default() += n - t.size();
    let centralizer = multiplicities.iter().fold(BigUint::one(), |acc, (&c, &m)| {
        acc * num_traits::pow(BigUint::from(c), m as usize) * factorial(m)
    });
    Ok(factorial(n) / centralizer)
}

/// `C_k = sum_{t in I^k} C_t^{kp}`, with `C_0 = 1`.
pub fn c_k(ctx: PrimeContext, k: u64) -> BigUint {
    cycle_types_ik(ctx, k)
        .iter()
        .map(|t| count_with_cycle_type(ctx.p() * k, t).expect("t moves exactly kp points"))
        .sum()
}

/// `h_n = sum_{k=0}^{floor(n/p)} binom(n, kp) C_k`.
pub fn h_n_expansion(ctx: PrimeContext, n: u64) -> BigUint {
    (0..=n / ctx.p())
        .map(|k| binomial(n, k * ctx.p()) * c_k(ctx, k))
        .sum()
}

/// Every permutation of `{0, .., n-1}` exactly once (Heap's algorithm).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            visit(&perm);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

fn cycle_lengths(perm: &[usize], seen: &mut [bool]) -> Vec<u64> {
    seen.iter_mut().for_each(|s| *s = false);
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

fn check_brute_force_bound(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_MAX {
        return Err(Error::BruteForceBound {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    Ok(())
}

/// Counts the elements of `S_n` whose order is a power of `p` by walking all
/// `n!` permutations and taking the lcm of their cycle lengths.
pub fn h_n_bruteforce(ctx: PrimeContext, n: usize) -> Result<u64> {
    check_brute_force_bound(n)?;
    let mut seen = vec![false; n];
    let mut count = 0u64;
    for_each_permutation(n, |perm| {
        let order = cycle_lengths(perm, &mut seen)
            .into_iter()
            .fold(1u64, |acc, len| acc.lcm(&len));
        if ctx.is_power(order) {
            count += 1;
        }
    });
    Ok(count)
}

/// Census of `S_n` by nontrivial cycle lengths (descending, fixed points
/// dropped), by enumeration. The identity appears under the empty key.
pub fn cycle_census(n: usize) -> Result<BTreeMap<Vec<u64>, u64>> {
    check_brute_force_bound(n)?;
    let mut seen = vec![false; n];
    let mut census = BTreeMap::new();
    for_each_permutation(n, |perm| {
        let mut lengths: Vec<u64> = cycle_lengths(perm, &mut seen)
            .into_iter()
            .filter(|&l| l > 1)
            .collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        *census.entry(lengths).or_insert(0) += 1;
    });
    Ok(census)
}

fn require_nontrivial(t: &CycleType) -> Result<()> {
    if t.is_identity() {
        return Err(Error::Precondition("cycle type must be nontrivial".into()));
    }
    Ok(())
}

/// Checks `(n - |t|) C_t^n = n C_t^{n-1}` for `n > |t|`.
pub fn verify_ctn_recursion(n: u64, t: &CycleType) -> Result<bool> {
    require_nontrivial(t)?;
    if n <= t.size() {
        return Err(Error::Precondition(format!(
            "need n > |t|, got n = {n}, |t| = {}",
            t.size()
        )));
    }
    let here = count_with_cycle_type(n, t)?;
    let below = count_with_cycle_type(n - 1, t)?;
    Ok(here * (n - t.size()) == below * n)
}

/// Checks `C_t^n = binom(n, |t|) C_t^{|t|}` for `n >= |t|`.
pub fn verify_ctn_binom(n: u64, t: &CycleType) -> Result<bool> {
    require_nontrivial(t)?;
    if n < t.size() {
        return Err(Error::Precondition(format!(
            "need n >= |t|, got n = {n}, |t| = {}",
            t.size()
        )));
    }
    let here = count_with_cycle_type(n, t)?;
    let base = count_with_cycle_type(t.size(), t)?;
    Ok(here == binomial(n, t.size()) * base)
}

/// `1 + sum_{t in I_n} C_t^n`.
pub fn h_n_by_cycle_types(ctx: PrimeContext, n: u64) -> BigUint {
    cycle_types_in(ctx, n)
        .iter()
        .map(|t| count_with_cycle_type(n, t).expect("types in I_n fit in S_n"))
        .fold(BigUint::one(), |acc, c| acc + c)
}
