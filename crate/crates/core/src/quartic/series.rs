//! Truncated power series over `Q`, branch expansions of plane curves and
//! intersection multiplicities along a branch.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use super::poly::{rat, MultivariatePoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("df/dy vanishes at the origin, so y is not a local function of x")]
    SingularBranchPoint,
    #[error("tangent line at the origin is not y = 0")]
    TangentNotHorizontal,
    #[error("series known to x^{have}, but x^{want} was requested")]
    PrecisionTooLow { have: usize, want: usize },
    #[error("expected a polynomial in exactly two variables, got {0:?}")]
    NotBivariate(Vec<String>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedPowerSeries {
    /// Series with the given coefficients `c_0..c_N`; precision is `N`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(vec![BigRational::zero(); precision + 1])
    }

    pub fn constant(c: BigRational, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if precision >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(precision + 1, BigRational::zero());
        Self::new(c)
    }

    /// Index of the first nonzero coefficient, if any is within precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative; precision drops by one.
    pub fn derivative(&self) -> Self {
        if self.precision() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Parses `a_0 + a_1 x + ... [+ O(x^{n})]`; without an `O` term the
    /// precision is the highest exponent present.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, precision) = match compact.find("O(") {
            Some(at) => {
                let tail = &compact[at..];
                let inner = tail
                    .strip_prefix("O(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| PolyError::Parse {
                        input: text.to_string(),
                        reason: "malformed O(...) term".into(),
                    })?;
                let o = MultivariatePoly::parse_in(inner, &["x"])?;
                let (exps, _) = o.terms().next().ok_or_else(|| PolyError::Parse {
                    input: text.to_string(),
                    reason: "empty O(...) term".into(),
                })?;
                let body = compact[..at].trim_end_matches('+');
                (body.to_string(), Some(exps[0] as usize))
            }
            None => (compact, None),
        };
        let p = MultivariatePoly::parse_in(&body, &["x"])?;
        let top = p.degree_in(0).unwrap_or(0) as usize;
        let precision = match precision {
            Some(n) if n == 0 || top >= n => {
                return Err(PolyError::Parse {
                    input: text.to_string(),
                    reason: "terms at or beyond the O(...) order".into(),
                })
            }
            Some(n) => n - 1,
            None => top,
        };
        let mut s = Self::zero(precision);
        for (e, c) in p.terms() {
            s.coeffs[e[0] as usize] = c.clone();
        }
        Ok(s)
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let single = MultivariatePoly::from_terms(&["x"], [(c.clone(), vec![i as u32])]).to_string();
            if parts.is_empty() {
                parts.push(single);
            } else if let Some(rest) = single.strip_prefix('-') {
                parts.push(format!("- {rest}"));
            } else {
                parts.push(format!("+ {single}"));
            }
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{} + O(x^{})", parts.join(" "), self.precision() + 1)
    }
}

fn bivariate(f: &MultivariatePoly) -> Result<(), SeriesError> {
    if f.vars().len() != 2 {
        return Err(SeriesError::NotBivariate(f.vars().to_vec()));
    }
    Ok(())
}

/// `g(x, φ(x))` at the precision of `φ`. The first variable of `g` is `x`
/// and the second is `y`.
pub fn compose(g: &MultivariatePoly, phi: &TruncatedPowerSeries) -> Result<TruncatedPowerSeries, SeriesError> {
    bivariate(g)?;
    let n = phi.precision();
    let max_y = g.degree_in(1).unwrap_or(0) as usize;
    let mut phi_powers = vec![TruncatedPowerSeries::constant(BigRational::one(), n)];
    for _ in 0..max_y {
        let next = phi_powers.last().expect("nonempty").mul(phi);
        phi_powers.push(next);
    }
    let mut out = TruncatedPowerSeries::zero(n);
    for (e, c) in g.terms() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        if i > n {
            continue;
        }
        for (m, a) in phi_powers[j].coeffs.iter().enumerate().take(n + 1 - i) {
            if !a.is_zero() {
                out.coeffs[m + i] += c * a;
            }
        }
    }
    Ok(out)
}

/// The branch `y = φ(x)` of `f = 0` through the origin, with `φ(0) = 0`,
/// computed to `x^N`.
pub fn branch_series(f: &MultivariatePoly, precision: usize) -> Result<TruncatedPowerSeries, SeriesError> {
    bivariate(f)?;
    if !f.coefficient(&[0, 0]).is_zero() {
        return Err(SeriesError::NotThroughOrigin);
    }
    let pivot = f.coefficient(&[0, 1]);
    if pivot.is_zero() {
        return Err(SeriesError::SingularBranchPoint);
    }
    let mut phi = TruncatedPowerSeries::zero(precision);
    for n in 1..=precision {
        let residual = compose(f, &phi.truncate(n))?.coeff(n);
        phi.coeffs[n] = -residual / &pivot;
    }
    Ok(phi)
}

/// Order of vanishing of a series, or a lower bound when every known
/// coefficient is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum VanishingOrder {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(n) => write!(f, "{n}"),
            Self::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

fn order_of(s: &TruncatedPowerSeries) -> VanishingOrder {
    match s.order() {
        Some(n) => VanishingOrder::Exact(n),
        None => VanishingOrder::AtLeast(s.precision() + 1),
    }
}

/// Order at `x = 0` of `g(x, φ(x))`, using `φ` through `x^N`.
pub fn vanishing_order(
    g: &MultivariatePoly,
    phi: &TruncatedPowerSeries,
    precision: usize,
) -> Result<VanishingOrder, SeriesError> {
    if phi.precision() < precision {
        return Err(SeriesError::PrecisionTooLow {
            have: phi.precision(),
            want: precision,
        });
    }
    Ok(order_of(&compose(g, &phi.truncate(precision))?))
}

/// Contact order of `f = 0` with its tangent line `y = 0` at the origin:
/// 2 for an ordinary point, 3 for a flex, at least 4 for a hyperflex.
pub fn tangent_contact_order(f: &MultivariatePoly, precision: usize) -> Result<VanishingOrder, SeriesError> {
    bivariate(f)?;
    if !f.coefficient(&[1, 0]).is_zero() {
        return Err(SeriesError::TangentNotHorizontal);
    }
    Ok(order_of(&branch_series(f, precision)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultivariatePoly {
        MultivariatePoly::parse_in(s, &["x", "y"]).unwrap()
    }

    fn ints(s: &TruncatedPowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn branch_examples() {
        assert_eq!(ints(&branch_series(&p("y - x^2"), 5).unwrap()), vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(
            ints(&branch_series(&p("y - x - y^2"), 5).unwrap()),
            vec![0, 1, 1, 2, 5, 14]
        );
        assert_eq!(branch_series(&p("y + 1"), 3), Err(SeriesError::NotThroughOrigin));
        assert_eq!(branch_series(&p("y^2 - x^3"), 3), Err(SeriesError::SingularBranchPoint));
    }

    #[test]
    fn vanishing_examples() {
        let phi = branch_series(&p("y - x^2"), 3).unwrap();
        assert_eq!(vanishing_order(&p("y"), &phi, 3), Ok(VanishingOrder::Exact(2)));
        assert_eq!(vanishing_order(&p("y - x^2"), &phi, 3), Ok(VanishingOrder::AtLeast(4)));
        assert_eq!(
            vanishing_order(&p("y"), &phi, 5),
            Err(SeriesError::PrecisionTooLow { have: 3, want: 5 })
        );
    }

    #[test]
    fn contact_examples() {
        assert_eq!(tangent_contact_order(&p("y - x^4"), 6), Ok(VanishingOrder::Exact(4)));
        assert_eq!(tangent_contact_order(&p("y - x^3 + x y"), 6), Ok(VanishingOrder::Exact(3)));
        assert_eq!(tangent_contact_order(&p("y - x"), 6), Err(SeriesError::TangentNotHorizontal));
    }

    #[test]
    fn text_roundtrip() {
        let s = TruncatedPowerSeries::parse("x^{2} + x^{6} - 2/3x^{7} + O(x^{9})").unwrap();
        assert_eq!(s.precision(), 8);
        assert_eq!(s.to_string(), "x^2 + x^6 - 2/3*x^7 + O(x^9)");
        assert_eq!(TruncatedPowerSeries::parse(&s.to_string()).unwrap(), s);
        assert!(TruncatedPowerSeries::parse("x^5 + O(x^3)").is_err());
        assert_eq!(TruncatedPowerSeries::parse("1 + x").unwrap().precision(), 1);
    }

    #[test]
    fn precision_propagates_as_minimum() {
        let a = TruncatedPowerSeries::x(5);
        let b = TruncatedPowerSeries::x(3);
        assert_eq!(a.mul(&b).precision(), 3);
        assert_eq!(a.add(&b).precision(), 3);
        assert_eq!(a.derivative().precision(), 4);
    }
}
