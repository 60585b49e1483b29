//! Batch classification and signature sweeps.
//!
//! [`Execution::Parallel`] uses rayon when the `parallel` feature is enabled
//! and silently runs sequentially otherwise, so callers never need to check
//! which build they are linked against.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::classifier::{primitive_nonhyperelliptic_components, ClassifyError, ComponentReport};
use crate::signature::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Applies `f` to every item, preserving order.
pub fn map<T, R, F>(items: &[T], execution: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Classifies each signature independently; results keep the input order.
pub fn classify_batch(
    signatures: &[Signature],
    execution: Execution,
) -> Vec<Result<ComponentReport, ClassifyError>> {
    map(signatures, execution, primitive_nonhyperelliptic_components)
}

/// Every multiset of nonzero orders in `[min, max]` with at most `max_len`
/// entries summing to `k(2g - 2)`, as validated signatures. The output order
/// is deterministic.
pub fn enumerate_signatures(k: u32, genus: u32, min: i64, max: i64, max_len: usize) -> Vec<Signature> {
    let target = i64::from(k) * (2 * i64::from(genus) - 2);
    let values: Vec<i64> = (min..=max).rev().filter(|&v| v != 0).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(&values, 0, target, max_len, &mut current, &mut |orders| {
        if let Ok(s) = Signature::new(k, genus, orders) {
            out.push(s);
        }
    });
    out
}

fn fill(
    values: &[i64],
    start: usize,
    remaining: i64,
    slots: usize,
    current: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if remaining == 0 && !current.is_empty() {
        emit(current);
    }
    if slots == 0 {
        return;
    }
    let lowest = values.last().copied().unwrap_or(0).min(0);
    let rest = (slots - 1) as i64;
    for (i, &v) in values.iter().enumerate().skip(start) {
        // Later entries lie in [lowest, v]; values are scanned descending.
        if v + rest * v.max(0) < remaining {
            break;
        }
        if remaining - v < rest * lowest {
            continue;
        }
        current.push(v);
        fill(values, i, remaining - v, slots - 1, current, emit);
        current.pop();
    }
}
