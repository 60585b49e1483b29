//! Genus-one strata.
//!
//! A genus-one stratum `Ω^k M_1(κ)` with `d = gcd(κ)` has one component for
//! each divisor `e | d`, indexed by the rotation number `r = d/e`. When only
//! two singularities are present the component with `e = 1` lies on the
//! diagonal and is empty. The component is primitive iff `gcd(k, r) = 1`.
//!
//! Marked points (orders equal to 0) are carried along but never change `d`,
//! and the emptiness rule counts singularities, not marked points.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd, gcd_all};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusOneError {
    #[error("expected a genus-one signature, got genus {0}")]
    WrongGenus(u32),
    #[error("every order is zero; the stratum has no rotation number")]
    AllOrdersZero,
    #[error("rotation {rotation} does not label a component (gcd of orders is {gcd})")]
    InvalidRotation { rotation: u64, gcd: u64 },
    #[error("index {index} out of range for {len} orders")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot merge an entry with itself")]
    SameIndex,
    #[error("entry {index} has order {order}, which is not a zero")]
    NotAZero { index: usize, order: i64 },
    #[error("split ({a1}, {a2}) of {order} needs a1 + a2 = {expected} and a1, a2 > -{k}")]
    BadPartition {
        order: i64,
        a1: i64,
        a2: i64,
        expected: i64,
        k: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusOneComponent {
    pub rotation: u64,
    pub torsion_order: u64,
    pub primitive: bool,
    pub hyperelliptic: bool,
}

fn require_genus_one(sig: &Signature) -> Result<u64, GenusOneError> {
    if sig.genus() != 1 {
        return Err(GenusOneError::WrongGenus(sig.genus()));
    }
    match sig.gcd_orders() {
        0 => Err(GenusOneError::AllOrdersZero),
        d => Ok(d),
    }
}

/// Whether rotation `r` labels a nonempty component of a genus-one stratum
/// with the given orders.
fn rotation_is_realised(orders: &[i64], rotation: u64) -> bool {
    let d = gcd_all(orders.iter().copied());
    let singularities = orders.iter().filter(|&&o| o != 0).count();
    rotation > 0 && d % rotation == 0 && !(singularities == 2 && rotation == d)
}

fn check_rotation(sig: &Signature, rotation: u64) -> Result<u64, GenusOneError> {
    let d = require_genus_one(sig)?;
    if rotation_is_realised(sig.orders(), rotation) {
        Ok(d)
    } else {
        Err(GenusOneError::InvalidRotation { rotation, gcd: d })
    }
}

/// Components of a genus-one stratum, in increasing rotation number.
pub fn components(sig: &Signature) -> Result<Vec<GenusOneComponent>, GenusOneError> {
    let d = require_genus_one(sig)?;
    let k = sig.ki();
    Ok(divisors(d)
        .into_iter()
        .filter(|&r| rotation_is_realised(sig.orders(), r))
        .map(|r| GenusOneComponent {
            rotation: r,
            torsion_order: d / r,
            primitive: gcd(k, r as i64) == 1,
            hyperelliptic: matches_hyperelliptic(sig.orders(), r as i64),
        })
        .collect())
}

/// Hyperelliptic genus-one components are exactly `Ω_r(r, r, -r, -r)`,
/// `Ω_r(2r, -r, -r)`, `Ω_r(-2r, r, r)` and `Ω_r(2r, -2r)`.
pub fn hyperelliptic_genus_one(sig: &Signature, rotation: u64) -> Result<bool, GenusOneError> {
    check_rotation(sig, rotation)?;
    Ok(matches_hyperelliptic(sig.orders(), rotation as i64))
}

fn matches_hyperelliptic(orders: &[i64], r: i64) -> bool {
    // `orders` is sorted descending, so compare against descending patterns.
    let patterns: [&[i64]; 4] = [
        &[r, r, -r, -r],
        &[2 * r, -r, -r],
        &[r, r, -2 * r],
        &[2 * r, -2 * r],
    ];
    patterns.contains(&orders)
}

/// Why two genus-one singularities cannot be merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "obstruction", rename_all = "kebab-case")]
pub enum MergeObstruction {
    /// `κ = (a, -a)`.
    OnlyTwoSingularities,
    /// `κ = (a, b, c)` with `r = |c|`.
    RemainingSingularity { c: i64 },
    /// `κ = (a, -a, b, -b)` merging `a, -a` with `r = |b|`.
    OppositePair { b: i64 },
    /// Every candidate target component is empty.
    NoAdmissibleRotation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MergeOutcome {
    Feasible {
        merged: Signature,
        rotations: Vec<u64>,
    },
    Infeasible {
        #[serde(flatten)]
        obstruction: MergeObstruction,
    },
}

/// Merges entries `i` and `j` of `Ω^k_r M_1(κ)`. When feasible, reports the
/// merged signature together with every rotation `r'` with `r | r' | gcd(κ_ij)`
/// whose component is nonempty.
pub fn merge(
    sig: &Signature,
    rotation: u64,
    i: usize,
    j: usize,
) -> Result<MergeOutcome, GenusOneError> {
    let len = sig.len();
    for index in [i, j] {
        if index >= len {
            return Err(GenusOneError::IndexOutOfRange { index, len });
        }
    }
    if i == j {
        return Err(GenusOneError::SameIndex);
    }
    check_rotation(sig, rotation)?;

    let merged = sig.merged(i, j);
    let merged_gcd = merged.gcd_orders();
    if merged_gcd == 0 {
        // Only reachable when the two merged entries are the only singularities.
        return Ok(MergeOutcome::Infeasible {
            obstruction: MergeObstruction::OnlyTwoSingularities,
        });
    }
    let rotations: Vec<u64> = divisors(merged_gcd)
        .into_iter()
        .filter(|r2| r2 % rotation == 0 && rotation_is_realised(merged.orders(), *r2))
        .collect();
    if !rotations.is_empty() {
        return Ok(MergeOutcome::Feasible { merged, rotations });
    }

    let rest: Vec<i64> = (0..len)
        .filter(|&x| x != i && x != j)
        .map(|x| sig.orders()[x])
        .collect();
    let obstruction = match rest.as_slice() {
        [c] if c.unsigned_abs() == rotation => MergeObstruction::RemainingSingularity { c: *c },
        [b, c] if sig.orders()[i] == -sig.orders()[j] && *b == -*c && b.unsigned_abs() == rotation => {
            MergeObstruction::OppositePair { b: b.abs() }
        }
        _ => MergeObstruction::NoAdmissibleRotation,
    };
    Ok(MergeOutcome::Infeasible { obstruction })
}

/// Whether a zero `a` of `Ω^k_r M_1(a, κ)` can be split into a sphere
/// `Ω^k M_0(a1, a2, κ)`: exactly when `r | gcd(k + a1, k + a2, κ)`.
pub fn split_to_sphere(
    sig: &Signature,
    rotation: u64,
    zero_index: usize,
    a1: i64,
    a2: i64,
) -> Result<bool, GenusOneError> {
    let a = zero_at(sig, zero_index)?;
    check_rotation(sig, rotation)?;
    let k = sig.ki();
    let expected = a - 2 * k;
    if a1 + a2 != expected || a1 <= -k || a2 <= -k {
        return Err(GenusOneError::BadPartition {
            order: a,
            a1,
            a2,
            expected,
            k: sig.k(),
        });
    }
    let others = sig
        .orders()
        .iter()
        .enumerate()
        .filter(|&(idx, _)| idx != zero_index)
        .map(|(_, &o)| o);
    let g = gcd_all(others.chain([k + a1, k + a2]));
    Ok(g % rotation == 0)
}

/// The split `(r - k, a - r - k)`, which works whenever `r ≠ a`.
pub fn default_split_witness(
    sig: &Signature,
    rotation: u64,
    zero_index: usize,
) -> Result<Option<(i64, i64)>, GenusOneError> {
    let a = zero_at(sig, zero_index)?;
    check_rotation(sig, rotation)?;
    let (r, k) = (rotation as i64, sig.ki());
    Ok((r != a).then_some((r - k, a - r - k)))
}

fn zero_at(sig: &Signature, index: usize) -> Result<i64, GenusOneError> {
    let len = sig.len();
    let order = *sig
        .orders()
        .get(index)
        .ok_or(GenusOneError::IndexOutOfRange { index, len })?;
    if order <= 0 {
        return Err(GenusOneError::NotAZero { index, order });
    }
    Ok(order)
}
