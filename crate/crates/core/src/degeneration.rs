//! Signature-level splits and merges, simple-degeneration existence and
//! genus-zero cylinder criteria.
//!
//! Splitting a zero `z` on a genus `g` surface produces a genus `g - 1`
//! surface where `z` is replaced by `a, b` with `a + b = z - 2k`; both new
//! orders must exceed `-k`. Merging two singularities keeps the genus and
//! replaces them by their sum, which may be 0 (a marked point).

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("cannot split a zero of order {0}; splits need z >= 2")]
    ZeroTooSmall(i64),
    #[error("({a}, {b}) is not a split of {z} for k = {k}: need a + b = {expected} and a, b > -{k}")]
    BadPair {
        z: i64,
        a: i64,
        b: i64,
        k: u32,
        expected: i64,
    },
    #[error("index {index} out of range for {len} orders")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot merge an entry with itself")]
    SameIndex,
    #[error("operation needs genus at least {min}, got {genus}")]
    WrongGenus { min: u32, genus: u32 },
    #[error("orders {0} and {1} do not have the same sign")]
    MixedSignPair(i64, i64),
    #[error("orders sum to {actual}, expected -2k = {expected}")]
    SumMismatch { expected: i64, actual: i64 },
}

/// One unordered split `a ≤ b` of a zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroSplit {
    pub a: i64,
    pub b: i64,
    /// One of the new entries has order 0.
    pub creates_marked_point: bool,
}

/// All unordered `(a, b)` with `a + b = z - 2k` and `a, b > -k`.
pub fn enumerate_zero_splits(k: u32, z: i64) -> Result<Vec<ZeroSplit>, DegenerationError> {
    if z < 2 {
        return Err(DegenerationError::ZeroTooSmall(z));
    }
    let k = i64::from(k);
    let total = z - 2 * k;
    Ok((1 - k..)
        .take_while(|&a| 2 * a <= total)
        .map(|a| (a, total - a))
        .filter(|&(_, b)| b > -k)
        .map(|(a, b)| ZeroSplit {
            a,
            b,
            creates_marked_point: a == 0 || b == 0,
        })
        .collect())
}

fn check_index(sig: &Signature, index: usize) -> Result<i64, DegenerationError> {
    sig.orders()
        .get(index)
        .copied()
        .ok_or(DegenerationError::IndexOutOfRange {
            index,
            len: sig.len(),
        })
}

/// The genus `g - 1` signature obtained by splitting `orders[zero_index]`.
pub fn split_result(
    sig: &Signature,
    zero_index: usize,
    a: i64,
    b: i64,
) -> Result<Signature, DegenerationError> {
    if sig.genus() < 1 {
        return Err(DegenerationError::WrongGenus {
            min: 1,
            genus: sig.genus(),
        });
    }
    let z = check_index(sig, zero_index)?;
    if z < 2 {
        return Err(DegenerationError::ZeroTooSmall(z));
    }
    let k = i64::from(sig.k());
    let expected = z - 2 * k;
    if a + b != expected || a <= -k || b <= -k {
        return Err(DegenerationError::BadPair {
            z,
            a,
            b,
            k: sig.k(),
            expected,
        });
    }
    Ok(sig.split(zero_index, a, b))
}

/// Same genus, entries `i` and `j` replaced by their sum.
pub fn merge_result(sig: &Signature, i: usize, j: usize) -> Result<Signature, DegenerationError> {
    check_index(sig, i)?;
    check_index(sig, j)?;
    if i == j {
        return Err(DegenerationError::SameIndex);
    }
    Ok(sig.merged(i, j))
}

/// Inverse of [`split_result`]: entries `i` and `j` of a genus `g` signature
/// are replaced by `a + b + 2k` on genus `g + 1`.
pub fn rejoin_result(sig: &Signature, i: usize, j: usize) -> Result<Signature, DegenerationError> {
    let (a, b) = (check_index(sig, i)?, check_index(sig, j)?);
    if i == j {
        return Err(DegenerationError::SameIndex);
    }
    let k = i64::from(sig.k());
    if a <= -k || b <= -k {
        return Err(DegenerationError::BadPair {
            z: a + b + 2 * k,
            a,
            b,
            k: sig.k(),
            expected: a + b,
        });
    }
    let mut orders: Vec<i64> = sig
        .orders()
        .iter()
        .enumerate()
        .filter(|&(n, _)| n != i && n != j)
        .map(|(_, &o)| o)
        .collect();
    orders.push(a + b + 2 * k);
    Ok(Signature::new(sig.k(), sig.genus() + 1, &orders).expect("rejoining preserves the degree identity"))
}

/// Whether two zeros or two poles of a primitive nonhyperelliptic component
/// can be merged while staying primitive and nonhyperelliptic. Always true in
/// positive genus; pairs of mixed sign are outside the statement and come back
/// as [`DegenerationError::MixedSignPair`].
pub fn merge_feasible_same_sign(
    sig: &Signature,
    i: usize,
    j: usize,
) -> Result<bool, DegenerationError> {
    if sig.genus() < 1 {
        return Err(DegenerationError::WrongGenus {
            min: 1,
            genus: sig.genus(),
        });
    }
    let (x, y) = (check_index(sig, i)?, check_index(sig, j)?);
    if i == j {
        return Err(DegenerationError::SameIndex);
    }
    if (x > 0 && y > 0) || (x < 0 && y < 0) {
        Ok(true)
    } else {
        Err(DegenerationError::MixedSignPair(x, y))
    }
}

/// Primitive nonhyperelliptic components in genus `>= 2` have a simple split
/// or merge, except for `Ω²M₂(5, -1)` and `Ω³M₂(6)`.
pub fn simple_degeneration_exists(sig: &Signature) -> Result<bool, DegenerationError> {
    if sig.genus() < 2 {
        return Err(DegenerationError::WrongGenus {
            min: 2,
            genus: sig.genus(),
        });
    }
    let exceptional = matches!(
        (sig.k(), sig.genus(), sig.orders()),
        (2, 2, [5, -1]) | (3, 2, [6])
    );
    Ok(!exceptional)
}

fn check_genus_zero_sum(k: u32, orders: &[i64]) -> Result<i64, DegenerationError> {
    let k = i64::from(k);
    let actual: i64 = orders.iter().sum();
    if actual != -2 * k {
        return Err(DegenerationError::SumMismatch {
            expected: -2 * k,
            actual,
        });
    }
    Ok(k)
}

/// `Ω^k M_0(κ)` has a Euclidean cylinder iff some sub-multiset of `κ` sums to
/// `-k`. Since the total is `-2k`, such a subset is automatically nonempty
/// and proper.
pub fn genus0_has_cylinder(k: u32, orders: &[i64]) -> Result<bool, DegenerationError> {
    let k = check_genus_zero_sum(k, orders)?;
    let mut sums: HashSet<i64> = HashSet::from([0]);
    for &o in orders {
        let shifted: Vec<i64> = sums.iter().map(|s| s + o).collect();
        sums.extend(shifted);
        if sums.contains(&-k) {
            return Ok(true);
        }
    }
    Ok(sums.contains(&-k))
}

/// Shape of a partial sub-multiset relative to `(-k/2, -k/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Shape {
    Halves(u8),
    Other,
}

impl Shape {
    fn push(self, is_half: bool) -> Shape {
        match self {
            Shape::Halves(n) if is_half && n < 2 => Shape::Halves(n + 1),
            _ => Shape::Other,
        }
    }
}

/// `Ω^k M_0(κ)` has a simple cylinder iff `κ` splits into two sub-multisets
/// summing to `-k`, neither of which is `(-k/2, -k/2)`.
pub fn genus0_has_simple_cylinder(k: u32, orders: &[i64]) -> Result<bool, DegenerationError> {
    let k = check_genus_zero_sum(k, orders)?;
    let half = (k % 2 == 0).then_some(-k / 2);
    // States: (sum of the chosen side, shape of chosen side, shape of the rest).
    let mut states: HashSet<(i64, Shape, Shape)> =
        HashSet::from([(0, Shape::Halves(0), Shape::Halves(0))]);
    for &o in orders {
        let is_half = Some(o) == half;
        states = states
            .into_iter()
            .flat_map(|(sum, chosen, rest)| {
                [
                    (sum + o, chosen.push(is_half), rest),
                    (sum, chosen, rest.push(is_half)),
                ]
            })
            .collect();
    }
    let pair = Shape::Halves(2);
    Ok(states
        .into_iter()
        .any(|(sum, chosen, rest)| sum == -k && chosen != pair && rest != pair))
}

/// Strata where splitting the zero need not preserve nonhyperellipticity:
///
/// * `k = 1, g = 3`: `κ` a positive partition of 4, or `κ' ∪ (-2)` or
///   `κ' ∪ (-1, -1)` with `κ' ∈ {(6), (4, 2), (2, 2, 2)}`;
/// * `k = 2, g = 3`: `κ' ∪ (-1)` with `κ' ∈ {(9), (6, 3), (3, 3, 3)}`;
/// * `k = 3, g = 3`: `(12), (8, 4), (4, 4, 4)`;
/// * `k = 1, g = 4`: `(6), (4, 2), (2, 2, 2)`.
pub fn is_exceptional_stratum(sig: &Signature) -> Result<bool, DegenerationError> {
    if sig.genus() < 3 {
        return Err(DegenerationError::WrongGenus {
            min: 3,
            genus: sig.genus(),
        });
    }
    let hit = match (sig.k(), sig.genus()) {
        (1, 3) => {
            let positive_partition_of_four = sig.orders().iter().all(|&o| o > 0);
            let zeros: Vec<i64> = sig.zeros().collect();
            let poles: Vec<i64> = sig.poles().collect();
            let six_family = matches!(zeros.as_slice(), [6] | [4, 2] | [2, 2, 2])
                && matches!(poles.as_slice(), [-2] | [-1, -1])
                && !sig.has_marked_points();
            positive_partition_of_four || six_family
        }
        (2, 3) => matches!(
            sig.orders(),
            [9, -1] | [6, 3, -1] | [3, 3, 3, -1]
        ),
        (3, 3) => matches!(sig.orders(), [12] | [8, 4] | [4, 4, 4]),
        (1, 4) => matches!(sig.orders(), [6] | [4, 2] | [2, 2, 2]),
        _ => false,
    };
    Ok(hit)
}

/// A proposed split or merge together with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationMove {
    pub kind: MoveKind,
    pub source: Signature,
    pub result: Option<Signature>,
    pub feasible: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum MoveKind {
    Split { zero_index: usize, a: i64, b: i64 },
    Merge { i: usize, j: usize },
}

impl DegenerationMove {
    /// Evaluates a move; constraint violations are recorded rather than returned.
    pub fn evaluate(source: &Signature, kind: MoveKind) -> Self {
        let outcome = match kind {
            MoveKind::Split { zero_index, a, b } => split_result(source, zero_index, a, b),
            MoveKind::Merge { i, j } => merge_result(source, i, j),
        };
        match outcome {
            Ok(result) => {
                let reason = if result.has_marked_points() {
                    "ok; result carries a marked point".to_string()
                } else {
                    "ok".to_string()
                };
                Self {
                    kind,
                    source: source.clone(),
                    result: Some(result),
                    feasible: true,
                    reason,
                }
            }
            Err(e) => Self {
                kind,
                source: source.clone(),
                result: None,
                feasible: false,
                reason: e.to_string(),
            },
        }
    }
}
