//! Small integer helpers shared by the combinatorial modules.

use num_integer::Integer;

/// Non-negative gcd of a sequence; zeros are ignored and the empty gcd is 0.
pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> u64 {
    values
        .into_iter()
        .fold(0u64, |acc, v| acc.gcd(&v.unsigned_abs()))
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

/// Positive divisors of `n` in ascending order. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
