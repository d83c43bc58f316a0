//! Shared inputs for the criterion benchmarks.

use artin_hasse::PrimeContext;

/// `(p, l)` pairs covered by the default determinant grid.
pub const DETERMINANT_GRID: &[(u64, usize)] = &[(2, 8), (3, 6), (5, 4)];

pub fn prime(p: u64) -> PrimeContext {
    PrimeContext::new(p).expect("benchmark primes are prime")
}
