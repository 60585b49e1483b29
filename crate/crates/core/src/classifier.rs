//! Counting and labelling primitive nonhyperelliptic components.
//!
//! Genus zero and genus one are handled directly; in genus at least two the
//! answer is one component, or two distinguished by Arf invariant when `k` is
//! odd and every order is even, apart from a finite list of exceptional
//! strata and one infinite family stored in [`EXCEPTIONS`].

use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd};
use crate::framing::Parity;
use crate::genus_one::{self, GenusOneError};
use crate::signature::{Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("orders contain a marked point (order 0)")]
    ZeroOrderPresent,
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    GenusOne(#[from] GenusOneError),
}

/// Label carried by one primitive nonhyperelliptic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "label", rename_all = "kebab-case")]
pub enum ComponentDescriptor {
    Generic,
    ArfLabeled { parity: Parity },
    RelativeArfLabeled { parity: Parity },
    CubicSporadic { arf_parity: Parity, h0: u8 },
    GenusOne { rotation: u64, primitive: bool, hyperelliptic: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmptyReason {
    /// Every differential in the stratum is a power of a lower order one.
    Imprimitive,
    /// The stratum itself is empty.
    EmptyStratum,
    /// Nonempty, but every primitive component is hyperelliptic.
    OnlyHyperelliptic,
    /// Genus one: no divisor of `gcd(κ)` gives a primitive nonhyperelliptic component.
    NoGenusOneComponent,
    /// Listed exceptional stratum with no primitive nonhyperelliptic component.
    ExceptionalStratum,
}

/// How hyperelliptic components were treated in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Hyperellipticity {
    /// Genus zero: not decided.
    NotEvaluated,
    /// Genus one: hyperelliptic components were found and left out of `count`.
    Excluded { primitive_hyperelliptic: u64 },
    /// Genus at least two: hyperelliptic components are not counted.
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub signature: Signature,
    pub count: usize,
    pub components: Vec<ComponentDescriptor>,
    pub empty_reason: Option<EmptyReason>,
    pub hyperellipticity: Hyperellipticity,
}

impl ComponentReport {
    fn new(sig: &Signature, components: Vec<ComponentDescriptor>, hyp: Hyperellipticity) -> Self {
        Self {
            signature: sig.clone(),
            count: components.len(),
            components,
            empty_reason: None,
            hyperellipticity: hyp,
        }
    }

    fn empty(sig: &Signature, reason: EmptyReason, hyp: Hyperellipticity) -> Self {
        Self {
            empty_reason: Some(reason),
            ..Self::new(sig, Vec::new(), hyp)
        }
    }
}

/// Outcome recorded for an exceptional stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionOutcome {
    Empty,
    Single,
    Pair,
    Cubic,
}

/// One exceptional stratum in genus at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionRow {
    pub k: u32,
    pub genus: u32,
    pub orders: &'static [i64],
    pub outcome: ExceptionOutcome,
}

const fn row(k: u32, genus: u32, orders: &'static [i64], outcome: ExceptionOutcome) -> ExceptionRow {
    ExceptionRow {
        k,
        genus,
        orders,
        outcome,
    }
}

use ExceptionOutcome::{Cubic, Empty, Pair, Single};

/// Exceptional strata with a finite description. Orders are listed descending.
pub const EXCEPTIONS: &[ExceptionRow] = &[
    row(1, 2, &[2], Empty),
    row(1, 2, &[1, 1], Empty),
    row(2, 2, &[4], Empty),
    row(2, 2, &[3, 1], Empty),
    row(2, 2, &[2, 2], Empty),
    row(2, 2, &[2, 1, 1], Empty),
    row(2, 2, &[1, 1, 1, 1], Empty),
    row(1, 3, &[4], Single),
    row(1, 3, &[2, 2], Single),
    row(1, 2, &[4, -2], Single),
    row(1, 2, &[2, 2, -2], Single),
    row(3, 2, &[6], Single),
    row(3, 2, &[4, 2], Single),
    row(3, 2, &[2, 2, 2], Single),
    row(2, 3, &[9, -1], Pair),
    row(2, 3, &[6, 3, -1], Pair),
    row(2, 3, &[3, 3, 3, -1], Pair),
    row(2, 4, &[12], Pair),
    row(2, 4, &[9, 3], Pair),
    row(2, 4, &[6, 6], Pair),
    row(2, 4, &[6, 3, 3], Pair),
    row(2, 4, &[3, 3, 3, 3], Pair),
    row(3, 3, &[12], Cubic),
    row(3, 3, &[8, 4], Cubic),
    row(3, 3, &[4, 4, 4], Cubic),
];

/// `k = 1`, genus at least 3, zeros a partition of `2g` into even parts and
/// poles exactly `(-1, -1)`.
pub fn in_relative_arf_family(sig: &Signature) -> bool {
    sig.k() == 1
        && sig.genus() >= 3
        && sig.poles().eq([-1, -1])
        && sig.zeros().all(|z| z % 2 == 0)
        && !sig.has_marked_points()
}

fn lookup_exception(sig: &Signature) -> Option<ExceptionOutcome> {
    EXCEPTIONS
        .iter()
        .find(|r| r.k == sig.k() && r.genus == sig.genus() && r.orders == sig.orders())
        .map(|r| r.outcome)
}

fn higher_genus(sig: &Signature) -> ComponentReport {
    use ComponentDescriptor::*;
    let hyp = Hyperellipticity::OutOfScope;
    if sig.k() == 1 && sig.poles().eq([-1]) {
        return ComponentReport::empty(sig, EmptyReason::EmptyStratum, hyp);
    }
    if let Some(outcome) = lookup_exception(sig) {
        let components = match outcome {
            Empty => return ComponentReport::empty(sig, EmptyReason::ExceptionalStratum, hyp),
            Single => vec![Generic],
            Pair => vec![Generic, Generic],
            Cubic => vec![
                CubicSporadic { arf_parity: 0, h0: 0 },
                CubicSporadic { arf_parity: 1, h0: 0 },
                CubicSporadic { arf_parity: 1, h0: 1 },
            ],
        };
        return ComponentReport::new(sig, components, hyp);
    }
    if in_relative_arf_family(sig) {
        let components = vec![RelativeArfLabeled { parity: 0 }, RelativeArfLabeled { parity: 1 }];
        return ComponentReport::new(sig, components, hyp);
    }
    let components = if sig.k() % 2 == 1 && sig.orders().iter().all(|o| o % 2 == 0) {
        vec![ArfLabeled { parity: 0 }, ArfLabeled { parity: 1 }]
    } else {
        vec![Generic]
    };
    ComponentReport::new(sig, components, hyp)
}

fn genus_one_report(sig: &Signature) -> Result<ComponentReport, ClassifyError> {
    let all = genus_one::components(sig)?;
    if all.is_empty() {
        return Ok(ComponentReport::empty(
            sig,
            EmptyReason::EmptyStratum,
            Hyperellipticity::Excluded {
                primitive_hyperelliptic: 0,
            },
        ));
    }
    let excluded = all.iter().filter(|c| c.primitive && c.hyperelliptic).count() as u64;
    let hyp = Hyperellipticity::Excluded {
        primitive_hyperelliptic: excluded,
    };
    let components: Vec<_> = all
        .iter()
        .filter(|c| c.primitive && !c.hyperelliptic)
        .map(|c| ComponentDescriptor::GenusOne {
            rotation: c.rotation,
            primitive: c.primitive,
            hyperelliptic: c.hyperelliptic,
        })
        .collect();
    if components.is_empty() {
        let reason = if all.iter().any(|c| c.primitive) {
            EmptyReason::OnlyHyperelliptic
        } else {
            EmptyReason::NoGenusOneComponent
        };
        return Ok(ComponentReport::empty(sig, reason, hyp));
    }
    Ok(ComponentReport::new(sig, components, hyp))
}

/// Primitive nonhyperelliptic components of `Ω^k M_g(κ)`.
pub fn primitive_nonhyperelliptic_components(sig: &Signature) -> Result<ComponentReport, ClassifyError> {
    if sig.has_marked_points() {
        return Err(ClassifyError::ZeroOrderPresent);
    }
    match sig.genus() {
        0 => {
            let hyp = Hyperellipticity::NotEvaluated;
            if gcd(sig.gcd_orders() as i64, sig.ki()) == 1 {
                Ok(ComponentReport::new(sig, vec![ComponentDescriptor::Generic], hyp))
            } else {
                Ok(ComponentReport::empty(sig, EmptyReason::Imprimitive, hyp))
            }
        }
        1 => genus_one_report(sig),
        _ => Ok(higher_genus(sig)),
    }
}

/// One row of [`full_component_breakdown`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakdownRow {
    /// Order of the reduced differential.
    pub divisor: u32,
    pub reduced: Signature,
    pub report: ComponentReport,
}

/// For every `d | k` with `k/d` dividing every order, the primitive
/// nonhyperelliptic components of the stratum of `d`-differentials whose
/// `k/d`-th powers land in `sig`. Rows are in increasing `d`.
pub fn full_component_breakdown(sig: &Signature) -> Result<Vec<BreakdownRow>, ClassifyError> {
    if sig.has_marked_points() {
        return Err(ClassifyError::ZeroOrderPresent);
    }
    divisors(u64::from(sig.k()))
        .into_iter()
        .filter_map(|d| {
            let m = sig.ki() / d as i64;
            sig.orders()
                .iter()
                .all(|o| o % m == 0)
                .then_some((d as u32, m))
        })
        .map(|(d, m)| {
            let orders: Vec<i64> = sig.orders().iter().map(|o| o / m).collect();
            let reduced = Signature::new(d, sig.genus(), &orders)?;
            let report = primitive_nonhyperelliptic_components(&reduced)?;
            Ok(BreakdownRow {
                divisor: d,
                reduced,
                report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentDescriptor::*;

    fn report(k: u32, g: u32, orders: &[i64]) -> ComponentReport {
        primitive_nonhyperelliptic_components(&Signature::new(k, g, orders).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(report(3, 2, &[6]).count, 1);
        assert_eq!(
            report(5, 2, &[10]).components,
            vec![ArfLabeled { parity: 0 }, ArfLabeled { parity: 1 }]
        );
        assert_eq!(report(4, 2, &[8]).count, 1);
        assert_eq!(report(1, 2, &[1, 1]).count, 0);
        assert_eq!(
            report(3, 3, &[8, 4]).components,
            vec![
                CubicSporadic { arf_parity: 0, h0: 0 },
                CubicSporadic { arf_parity: 1, h0: 0 },
                CubicSporadic { arf_parity: 1, h0: 1 },
            ]
        );
        assert_eq!(
            report(1, 3, &[4, 2, -1, -1]).components,
            vec![RelativeArfLabeled { parity: 0 }, RelativeArfLabeled { parity: 1 }]
        );
        assert_eq!(report(2, 4, &[9, 3]).count, 2);
        assert_eq!(report(7, 2, &[13, 1]).components, vec![Generic]);
        assert_eq!(report(3, 0, &[1, -3, -4]).components, vec![Generic]);
        let r = report(5, 1, &[4, -4]);
        assert_eq!(
            r.components,
            vec![GenusOne { rotation: 1, primitive: true, hyperelliptic: false }]
        );
        assert_eq!(r.hyperellipticity, Hyperellipticity::Excluded { primitive_hyperelliptic: 1 });
    }

    #[test]
    fn empty_cases() {
        let r = report(1, 3, &[5, -1]);
        assert_eq!((r.count, r.empty_reason), (0, Some(EmptyReason::EmptyStratum)));
        let r = report(2, 0, &[2, -2, -2, -2]);
        assert_eq!(r.empty_reason, Some(EmptyReason::Imprimitive));
        assert_eq!(r.hyperellipticity, Hyperellipticity::NotEvaluated);
        let r = report(1, 1, &[1, -1]);
        assert_eq!(r.empty_reason, Some(EmptyReason::EmptyStratum));
        let r = report(2, 2, &[2, 2]);
        assert_eq!(r.empty_reason, Some(EmptyReason::ExceptionalStratum));
        let r = report(1, 1, &[2, -2]);
        assert_eq!(r.empty_reason, Some(EmptyReason::OnlyHyperelliptic));
    }

    #[test]
    fn minimal_genus_two_law() {
        let counts: Vec<usize> = (1..=8).map(|k| report(k, 2, &[2 * i64::from(k)]).count).collect();
        assert_eq!(counts, vec![0, 0, 1, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn relative_family_needs_genus_three() {
        assert_eq!(report(1, 2, &[4, -1, -1]).components, vec![Generic]);
        assert_eq!(report(1, 5, &[6, 4, -1, -1]).count, 2);
        assert_eq!(report(1, 4, &[5, 3, -1, -1]).components, vec![Generic]);
    }

    #[test]
    fn zero_orders_rejected() {
        let s = Signature::new(2, 2, &[5, -1, 0]).unwrap();
        assert_eq!(
            primitive_nonhyperelliptic_components(&s),
            Err(ClassifyError::ZeroOrderPresent)
        );
        assert_eq!(full_component_breakdown(&s), Err(ClassifyError::ZeroOrderPresent));
    }

    #[test]
    fn exception_rows_are_canonical() {
        for r in EXCEPTIONS {
            let s = Signature::new(r.k, r.genus, r.orders).unwrap();
            assert_eq!(s.orders(), r.orders);
        }
    }

    fn breakdown(k: u32, g: u32, orders: &[i64]) -> Vec<(u32, Vec<i64>, usize)> {
        full_component_breakdown(&Signature::new(k, g, orders).unwrap())
            .unwrap()
            .into_iter()
            .map(|r| (r.divisor, r.reduced.orders().to_vec(), r.report.count))
            .collect()
    }

    #[test]
    fn breakdown_examples() {
        assert_eq!(breakdown(5, 2, &[10]), vec![(1, vec![2], 0), (5, vec![10], 2)]);
        assert_eq!(breakdown(3, 2, &[5, 1]), vec![(3, vec![5, 1], 1)]);
        // The d = 1 reduction is Ω¹M₁(2, -2), whose only component is hyperelliptic.
        assert_eq!(
            breakdown(4, 1, &[8, -8]),
            vec![(1, vec![2, -2], 0), (2, vec![4, -4], 1), (4, vec![8, -8], 1)]
        );
    }

    #[test]
    fn breakdown_rows_revalidate() {
        for k in 1..=8u32 {
            for a in 1..=12i64 {
                let orders = [a, i64::from(k) * 2 - a];
                if orders[1] == 0 {
                    continue;
                }
                let s = Signature::new(k, 2, &orders).unwrap();
                let rows = full_component_breakdown(&s).unwrap();
                assert_eq!(rows.last().map(|r| r.divisor), Some(k));
                for r in rows {
                    assert_eq!(Signature::new(r.divisor, 2, r.reduced.orders()).unwrap(), r.reduced);
                    assert_eq!(k % r.divisor, 0);
                }
            }
        }
    }
}
