//! Prong-matching counts.
//!
//! A node joining a singularity of order `a` on the upper level to one of
//! order `-a - 2k` below carries `k + a` prongs on each side. Prong matchings
//! at a pair of nodes `(a, b)` form a torsor for `Z/(k+a) × Z/(k+b)`; local
//! equivalence is simultaneous rotation of both.

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;
use crate::genus_one::{self, GenusOneError};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProngError {
    #[error("order {order} is not greater than -k = -{k}")]
    OrderTooNegative { k: u32, order: i64 },
    #[error("torsor of size {size} exceeds the enumeration limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("torsion order {e} must exceed 1 and divide |a| = {a}")]
    BadTorsion { a: i64, e: i64 },
    #[error("component with rotation {rotation} is not primitive for k = {k}")]
    NotPrimitive { k: u32, rotation: u64 },
    #[error("no such genus-one component: {0}")]
    EmptyComponent(#[source] GenusOneError),
    #[error("orders do not form a genus-one signature: {0}")]
    InvalidSignature(#[from] crate::signature::SignatureError),
}

/// Upper bound on `(k+a)(k+b)` for [`enumerate_local_classes`].
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

fn prong_count(k: u32, order: i64) -> Result<u64, ProngError> {
    let p = i64::from(k) + order;
    if p < 1 {
        return Err(ProngError::OrderTooNegative { k, order });
    }
    Ok(p as u64)
}

/// Number of local equivalence classes, `gcd(k + a, k + b)`.
pub fn local_classes(k: u32, a: i64, b: i64) -> Result<u64, ProngError> {
    let (p, q) = (prong_count(k, a)?, prong_count(k, b)?);
    Ok(gcd(p as i64, q as i64))
}

/// Counts orbits of `(1, 1)` on `Z/(k+a) × Z/(k+b)` by walking each orbit.
pub fn enumerate_local_classes(k: u32, a: i64, b: i64) -> Result<u64, ProngError> {
    let (p, q) = (prong_count(k, a)?, prong_count(k, b)?);
    let size = p * q;
    if size > ENUMERATION_LIMIT {
        return Err(ProngError::TooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut seen = vec![false; size as usize];
    let mut orbits = 0;
    for start in 0..size {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        let (mut x, mut y) = (start / q, start % q);
        while !seen[(x * q + y) as usize] {
            seen[(x * q + y) as usize] = true;
            x = (x + 1) % p;
            y = (y + 1) % q;
        }
    }
    Ok(orbits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProngImage {
    /// `gcd(k + a, k - a)`, the order of the cyclic target group.
    pub delta: u64,
    /// Index of the image, 1 or 2.
    pub index: u64,
}

/// Image of the prong matching homomorphism for `Ω^k_{a/e} M_1(a, -a)`: onto
/// `Z/gcd(k+a, k-a)` unless `k` and `a` are both odd, when the index is 2.
pub fn prong_hom_image(k: u32, a: i64, e: i64) -> Result<ProngImage, ProngError> {
    if e <= 1 || a % e != 0 {
        return Err(ProngError::BadTorsion { a, e });
    }
    let ki = i64::from(k);
    let rotation = (a / e).unsigned_abs();
    if gcd(ki, rotation as i64) != 1 {
        return Err(ProngError::NotPrimitive { k, rotation });
    }
    let delta = gcd(ki + a, ki - a);
    let index = if ki % 2 == 1 && a % 2 != 0 { 2 } else { 1 };
    Ok(ProngImage { delta, index })
}

/// Global equivalence classes of prong matchings after splitting a genus-two
/// singularity into a primitive genus-one component `Ω^k_r M_1(a, b, rest)`.
///
/// * `|k + a|` when the component is hyperelliptic and the involution swaps
///   the two new singularities,
/// * 2 when `k`, `a`, `b` are odd and every other order is even,
/// * 1 otherwise.
pub fn global_classes_genus_one_split(
    k: u32,
    rotation: u64,
    a: i64,
    b: i64,
    rest: &[i64],
) -> Result<u64, ProngError> {
    let mut orders = vec![a, b];
    orders.extend_from_slice(rest);
    let sig = Signature::new(k, 1, &orders)?;
    let hyperelliptic =
        genus_one::hyperelliptic_genus_one(&sig, rotation).map_err(ProngError::EmptyComponent)?;
    if gcd(i64::from(k), rotation as i64) != 1 {
        return Err(ProngError::NotPrimitive { k, rotation });
    }
    // In every hyperelliptic genus-one pattern the involution swaps exactly
    // the pairs of equal orders, so a and b are exchanged iff a = b.
    if hyperelliptic && a == b {
        return Ok((i64::from(k) + a).unsigned_abs());
    }
    let odd = |x: i64| x % 2 != 0;
    if odd(i64::from(k)) && odd(a) && odd(b) && rest.iter().all(|&c| !odd(c)) {
        return Ok(2);
    }
    Ok(1)
}
