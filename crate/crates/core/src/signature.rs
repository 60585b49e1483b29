//! Stratum signatures `(k, g, κ)` and the arithmetic predicates every other
//! module builds on.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, gcd_all};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("k must be a positive integer, got {0}")]
    NonPositiveK(i64),
    #[error("genus must be non-negative, got {0}")]
    NegativeGenus(i64),
    #[error("orders sum to {actual} but k(2g-2) = {expected}")]
    SumMismatch { expected: i64, actual: i64 },
    #[error("order 0 (marked point) is not accepted here")]
    ZeroOrderForbidden,
    #[error("order {0} is not a pole")]
    NonNegativeOrder(i64),
    #[error("k = {0} is even; connected/disconnected type needs odd k")]
    EvenK(u32),
    #[error("hyperelliptic signature patterns for k = 1 are not supported")]
    KEqualsOne,
    #[error("cannot parse signature {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Whether marked points (orders equal to 0) may appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkedPoints {
    Allow,
    Forbid,
}

/// A validated stratum signature. Orders are kept sorted descending, so two
/// signatures describing the same multiset compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    k: u32,
    genus: u32,
    orders: Vec<i64>,
}

/// Validates `(k, g, orders)` and returns it in canonical form.
pub fn validate(
    k: i64,
    genus: i64,
    orders: &[i64],
    marked: MarkedPoints,
) -> Result<Signature, SignatureError> {
    if k < 1 || k > i64::from(u32::MAX) {
        return Err(SignatureError::NonPositiveK(k));
    }
    if genus < 0 || genus > i64::from(u32::MAX) {
        return Err(SignatureError::NegativeGenus(genus));
    }
    if marked == MarkedPoints::Forbid && orders.contains(&0) {
        return Err(SignatureError::ZeroOrderForbidden);
    }
    let expected = k * (2 * genus - 2);
    let actual: i64 = orders.iter().sum();
    if actual != expected {
        return Err(SignatureError::SumMismatch { expected, actual });
    }
    let mut orders = orders.to_vec();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Signature {
        k: k as u32,
        genus: genus as u32,
        orders,
    })
}

impl Signature {
    /// Builds a signature, allowing marked points.
    pub fn new(k: u32, genus: u32, orders: &[i64]) -> Result<Self, SignatureError> {
        validate(i64::from(k), i64::from(genus), orders, MarkedPoints::Allow)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub(crate) fn ki(&self) -> i64 {
        i64::from(self.k)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Orders, sorted descending.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn has_marked_points(&self) -> bool {
        self.orders.contains(&0)
    }

    pub fn require_no_marked_points(&self) -> Result<(), SignatureError> {
        if self.has_marked_points() {
            Err(SignatureError::ZeroOrderForbidden)
        } else {
            Ok(())
        }
    }

    pub fn zeros(&self) -> impl Iterator<Item = i64> + '_ {
        self.orders.iter().copied().filter(|&o| o > 0)
    }

    pub fn poles(&self) -> impl Iterator<Item = i64> + '_ {
        self.orders.iter().copied().filter(|&o| o < 0)
    }

    /// Number of entries that are actual singularities (nonzero orders).
    pub fn singularity_count(&self) -> usize {
        self.orders.iter().filter(|&&o| o != 0).count()
    }

    /// Entries `i` and `j` replaced by their sum; indices must be distinct and in range.
    pub(crate) fn merged(&self, i: usize, j: usize) -> Signature {
        let mut orders: Vec<i64> = self
            .orders
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != i && idx != j)
            .map(|(_, &o)| o)
            .collect();
        orders.push(self.orders[i] + self.orders[j]);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Signature { orders, ..*self }
    }

    /// Entry `idx` replaced by `a` and `b` one genus lower. The caller checks
    /// `a + b = orders[idx] - 2k`, which keeps the sum identity intact.
    pub(crate) fn split(&self, idx: usize, a: i64, b: i64) -> Signature {
        debug_assert!(self.genus >= 1);
        debug_assert_eq!(a + b, self.orders[idx] - 2 * self.ki());
        let mut orders: Vec<i64> = self
            .orders
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &o)| o)
            .chain([a, b])
            .collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Signature {
            k: self.k,
            genus: self.genus - 1,
            orders,
        }
    }

    /// gcd of the nonzero orders (0 when there are none).
    pub fn gcd_orders(&self) -> u64 {
        gcd_all(self.orders.iter().copied())
    }

    /// All `m > 1` dividing both `k` and every order. The stratum carries
    /// `m`-th powers of `(k/m)`-differentials exactly for these `m`.
    pub fn imprimitive_divisors(&self) -> Vec<u64> {
        let g = gcd(self.ki(), self.gcd_orders() as i64);
        crate::arith::divisors(g)
            .into_iter()
            .filter(|&m| m > 1)
            .collect()
    }

    /// Every order is strictly greater than `-k`.
    pub fn is_finite_area(&self) -> bool {
        is_finite_area(self.k, &self.orders)
    }

    /// Disconnected type for odd `k`: every order even, or the zeros are `(a)`
    /// or `(a, a)` with `gcd(a, k) = 1` and everything else an invisible pole.
    pub fn is_connected_type(&self) -> Result<bool, SignatureError> {
        if self.k.is_multiple_of(2) {
            return Err(SignatureError::EvenK(self.k));
        }
        if self.orders.iter().all(|o| o % 2 == 0) {
            return Ok(false);
        }
        let zeros: Vec<i64> = self.zeros().collect();
        let zero_shape = match zeros.as_slice() {
            [a] => Some(*a),
            [a, b] if a == b => Some(*a),
            _ => None,
        };
        if let Some(a) = zero_shape {
            let rest_invisible = self
                .orders
                .iter()
                .filter(|&&o| o <= 0)
                .all(|&o| o < 0 && is_invisible_pole(self.k, o) == Ok(true));
            if gcd(a, self.ki()) == 1 && rest_invisible {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Matches the primitive hyperelliptic signatures `(2m, 2ℓ)`, `(2m, ℓ, ℓ)`
    /// and `(m, m, ℓ, ℓ)` with `gcd(m, ℓ, k) = 1`. Only defined for `k ≠ 1`.
    pub fn hyperelliptic_signature_pattern(
        &self,
    ) -> Result<Option<HyperellipticPattern>, SignatureError> {
        if self.k == 1 {
            return Err(SignatureError::KEqualsOne);
        }
        let k = self.ki();
        let coprime = |m: i64, l: i64| gcd_all([m, l, k]) == 1;
        let o = &self.orders;
        let found = match o.len() {
            2 if o[0] % 2 == 0 && o[1] % 2 == 0 => {
                let (m, l) = (o[0] / 2, o[1] / 2);
                coprime(m, l).then_some(HyperellipticPattern::TwoEven { m, l })
            }
            3 => (0..3).find_map(|i| {
                let rest: Vec<i64> = (0..3).filter(|&j| j != i).map(|j| o[j]).collect();
                if o[i] % 2 == 0 && rest[0] == rest[1] {
                    let (m, l) = (o[i] / 2, rest[0]);
                    coprime(m, l).then_some(HyperellipticPattern::EvenAndPair { m, l })
                } else {
                    None
                }
            }),
            // Sorted descending, so the only pairing into two equal pairs is
            // (o0 = o1, o2 = o3).
            4 if o[0] == o[1] && o[2] == o[3] => {
                let (m, l) = (o[0], o[2]);
                coprime(m, l).then_some(HyperellipticPattern::TwoPairs { m, l })
            }
            _ => None,
        };
        Ok(found)
    }
}

/// One of the three primitive hyperelliptic signature shapes for `k ≠ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "kebab-case")]
pub enum HyperellipticPattern {
    /// `(2m, 2ℓ)`
    TwoEven { m: i64, l: i64 },
    /// `(2m, ℓ, ℓ)`
    EvenAndPair { m: i64, l: i64 },
    /// `(m, m, ℓ, ℓ)`
    TwoPairs { m: i64, l: i64 },
}

/// Every order is strictly greater than `-k`.
pub fn is_finite_area(k: u32, orders: &[i64]) -> bool {
    orders.iter().all(|&o| o > -i64::from(k))
}

/// A pole of order `-k + d` with `1 ≤ d | k`.
pub fn is_invisible_pole(k: u32, order: i64) -> Result<bool, SignatureError> {
    if order >= 0 {
        return Err(SignatureError::NonNegativeOrder(order));
    }
    let d = order + i64::from(k);
    Ok(d >= 1 && i64::from(k) % d == 0)
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k:{} g:{} orders:(", self.k, self.genus)?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    /// Parses `k:<int> g:<int> orders:(o1,o2,...)`, ignoring whitespace.
    /// Marked points are accepted; callers that forbid them check separately.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SignatureError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix("k:").ok_or_else(|| fail("expected `k:`"))?;
        let (k_text, rest) = rest.split_once("g:").ok_or_else(|| fail("expected `g:`"))?;
        let (g_text, rest) = rest
            .split_once("orders:")
            .ok_or_else(|| fail("expected `orders:`"))?;
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| fail("orders must be parenthesised"))?;
        let k: i64 = k_text.parse().map_err(|_| fail("k is not an integer"))?;
        let genus: i64 = g_text.parse().map_err(|_| fail("g is not an integer"))?;
        let orders = parse_order_list(inner).map_err(|r| fail(&r))?;
        validate(k, genus, &orders, MarkedPoints::Allow)
    }
}

/// Parses a comma-separated list of integers; the empty string is the empty list.
pub fn parse_order_list(text: &str) -> Result<Vec<i64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| format!("{t:?} is not an integer order"))
        })
        .collect()
}
