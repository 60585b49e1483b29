//! Smoothness certificates for projective plane curves.
//!
//! A curve `F = 0` is singular exactly where the three partials vanish. In
//! each affine chart the dehomogenized partials are eliminated one variable
//! at a time; if the eliminants have constant gcd there is no common zero in
//! that chart. A rational singular point is reported when one is found, and
//! anything else is left uncertified.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{rat, MultivariatePoly, PolyError};
use super::resultant::{gcd_univariate, rational_roots, resultant, ResultantError, Univariate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected three variables, got {0:?}")]
    NotTernary(Vec<String>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothnessCertificate {
    Smooth,
    /// Projective coordinates, scaled so the first nonzero one is 1.
    SingularAt([BigRational; 3]),
    NotCertified(String),
}

impl fmt::Display for SmoothnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Smooth => write!(f, "smooth"),
            Self::SingularAt([a, b, c]) => write!(f, "singular at ({a} : {b} : {c})"),
            Self::NotCertified(reason) => write!(f, "not certified: {reason}"),
        }
    }
}

/// Searches projective points with integer coordinates in `[-r, r]`.
const GRID_RADIUS: i64 = 3;

fn normalize(mut point: [BigRational; 3]) -> [BigRational; 3] {
    if let Some(lead) = point.iter().find(|c| !c.is_zero()).cloned() {
        for c in &mut point {
            *c /= &lead;
        }
    }
    point
}

fn is_common_zero(partials: &[MultivariatePoly], point: &[BigRational]) -> bool {
    partials.iter().all(|g| g.evaluate(point).is_zero())
}

/// Eliminates `eliminate` from the chart partials, returning the gcd of the
/// eliminants in the remaining variable, or `None` if every eliminant vanished.
fn chart_eliminant(
    partials: &[MultivariatePoly],
    eliminate: usize,
    keep: usize,
) -> Result<Option<Univariate>, SmoothError> {
    let name = partials[0].vars()[eliminate].clone();
    let live: Vec<&MultivariatePoly> = partials.iter().filter(|g| !g.is_zero()).collect();
    let mut eliminants: Vec<MultivariatePoly> = Vec::new();
    let (free, bound): (Vec<&MultivariatePoly>, Vec<&MultivariatePoly>) = live.into_iter().partition(|g| g.degree_in(eliminate) == Some(0));
    eliminants.extend(free.into_iter().cloned());
    for (i, a) in bound.iter().enumerate() {
        for b in &bound[i + 1..] {
            eliminants.push(resultant(a, b, &name)?);
        }
    }
    let mut acc: Option<Univariate> = None;
    for h in eliminants.iter().filter(|h| !h.is_zero()) {
        let u = h.to_univariate(keep).expect("eliminant involves only the kept variable");
        acc = Some(match acc {
            None => gcd_univariate(&u, &[]),
            Some(g) => gcd_univariate(&g, &u),
        });
    }
    Ok(acc)
}

/// Looks for a rational common zero `(u, v)` of the chart partials lying over
/// a rational root of `eliminant`.
fn rational_zero_over(
    partials: &[MultivariatePoly],
    eliminant: &[BigRational],
    keep: usize,
    eliminate: usize,
) -> Option<(BigRational, BigRational)> {
    let (roots, _) = rational_roots(eliminant);
    let keep_name = partials[0].vars()[keep].clone();
    for root in roots {
        let fibre: Vec<Univariate> = partials
            .iter()
            .map(|g| {
                g.substitute(&keep_name, &root)
                    .expect("variable exists")
                    .to_univariate(eliminate)
                    .expect("only the eliminated variable remains")
            })
            .collect();
        let common = fibre.iter().fold(Vec::new(), |acc, u| gcd_univariate(&acc, u));
        let candidates = if common.is_empty() {
            vec![BigRational::zero()]
        } else {
            rational_roots(&common).0
        };
        for other in candidates {
            let mut point = vec![BigRational::zero(); 2];
            point[keep] = root.clone();
            point[eliminate] = other.clone();
            if is_common_zero(partials, &point) {
                return Some((point[0].clone(), point[1].clone()));
            }
        }
    }
    None
}

fn grid_search(partials: &[MultivariatePoly]) -> Option<[BigRational; 3]> {
    let range = -GRID_RADIUS..=GRID_RADIUS;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let point = [rat(a), rat(b), rat(c)];
                if is_common_zero(partials, &point) {
                    return Some(normalize(point));
                }
            }
        }
    }
    None
}

/// Certifies smoothness of the projective curve `F = 0` in three variables.
pub fn smoothness_certificate(f: &MultivariatePoly) -> Result<SmoothnessCertificate, SmoothError> {
    if f.vars().len() != 3 {
        return Err(SmoothError::NotTernary(f.vars().to_vec()));
    }
    if f.homogeneous_degree().is_none() {
        return Err(SmoothError::NotHomogeneous);
    }
    let names: Vec<String> = f.vars().to_vec();
    let partials: Vec<MultivariatePoly> = names
        .iter()
        .map(|v| f.partial_derivative(v))
        .collect::<Result<_, _>>()?;
    let mut open_charts = Vec::new();
    for chart in (0..3).rev() {
        let chart_partials: Vec<MultivariatePoly> = partials
            .iter()
            .map(|g| g.dehomogenize(&names[chart]))
            .collect::<Result<_, _>>()?;
        let mut certified = false;
        let mut leftovers = Vec::new();
        for (eliminate, keep) in [(1, 0), (0, 1)] {
            match chart_eliminant(&chart_partials, eliminate, keep)? {
                Some(g) if g.len() == 1 => {
                    certified = true;
                    break;
                }
                Some(g) => leftovers.push((g, keep, eliminate)),
                None => {}
            }
        }
        if certified {
            continue;
        }
        for (g, keep, eliminate) in &leftovers {
            if let Some((u, v)) = rational_zero_over(&chart_partials, g, *keep, *eliminate) {
                let mut coords = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
                let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
                coords[chart] = BigRational::one();
                coords[others[0]] = u;
                coords[others[1]] = v;
                return Ok(SmoothnessCertificate::SingularAt(normalize(coords)));
            }
        }
        open_charts.push(names[chart].clone());
    }
    if open_charts.is_empty() {
        return Ok(SmoothnessCertificate::Smooth);
    }
    if let Some(point) = grid_search(&partials) {
        return Ok(SmoothnessCertificate::SingularAt(point));
    }
    Ok(SmoothnessCertificate::NotCertified(format!(
        "eliminants share a factor in the chart(s) {} = 1 and no rational singular point was found",
        open_charts.join(", ")
    )))
}
