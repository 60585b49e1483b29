//! Checks for the two plane-quartic constructions of cubic differentials with
//! a single zero of order 12 in genus three.
//!
//! Each construction is a smooth quartic `F`, its affine part `f`, the branch
//! `y = φ(x)` at the origin and a cubic `g` meeting the branch to order 12.
//! The first also carries a conic `h` meeting it to order 6 and has an
//! ordinary tangent (contact 2); the second has a flex (contact 3).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::poly::{MultivariatePoly, PolyError};
use super::series::{branch_series, tangent_contact_order, vanishing_order, SeriesError, TruncatedPowerSeries, VanishingOrder};
use super::smooth::{smoothness_certificate, SmoothError, SmoothnessCertificate};

/// Default series precision: one past the order-12 check.
pub const DEFAULT_PRECISION: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SporadicError {
    #[error("unknown construction {0:?}; expected OddArf_h0_0 or OddArf_h0_1")]
    UnknownConstruction(String),
    #[error("fixture line {line}: {reason}")]
    Fixture { line: usize, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Smooth(#[from] SmoothError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Odd Arf invariant, `h⁰(K(-3p)) = 0`.
    OddArfH0Zero,
    /// Odd Arf invariant, `h⁰(K(-3p)) = 1`.
    OddArfH0One,
}

impl Construction {
    pub const ALL: [Construction; 2] = [Construction::OddArfH0Zero, Construction::OddArfH0One];

    pub fn name(self) -> &'static str {
        match self {
            Self::OddArfH0Zero => "OddArf_h0_0",
            Self::OddArfH0One => "OddArf_h0_1",
        }
    }

    fn fixture_text(self) -> &'static str {
        match self {
            Self::OddArfH0Zero => include_str!("../../fixtures/quartic_flex_free.txt"),
            Self::OddArfH0One => include_str!("../../fixtures/quartic_flex.txt"),
        }
    }

    /// Expected contact order of the tangent line at the origin.
    pub fn expected_contact(self) -> usize {
        match self {
            Self::OddArfH0Zero => 2,
            Self::OddArfH0One => 3,
        }
    }

    pub fn fixture(self) -> Fixture {
        Fixture::parse(self.fixture_text()).expect("embedded fixtures parse")
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = SporadicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SporadicError::UnknownConstruction(s.to_string()))
    }
}

/// The polynomials and expected branch of one construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub quartic: MultivariatePoly,
    pub affine: MultivariatePoly,
    pub expected_branch: TruncatedPowerSeries,
    pub cubic: MultivariatePoly,
    pub conic: Option<MultivariatePoly>,
}

impl Fixture {
    /// Parses `key = value` lines with keys `F`, `f`, `phi`, `g` and optional
    /// `h`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, SporadicError> {
        let (mut quartic, mut affine, mut branch, mut cubic, mut conic) = (None, None, None, None, None);
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |reason: String| SporadicError::Fixture { line: n + 1, reason };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail("expected key = value".into()))?;
            let value = value.trim();
            match key.trim() {
                "F" => quartic = Some(MultivariatePoly::parse_in(value, &["x", "y", "z"])?),
                "f" => affine = Some(MultivariatePoly::parse_in(value, &["x", "y"])?),
                "phi" => branch = Some(TruncatedPowerSeries::parse(value)?),
                "g" => cubic = Some(MultivariatePoly::parse_in(value, &["x", "y"])?),
                "h" => conic = Some(MultivariatePoly::parse_in(value, &["x", "y"])?),
                other => return Err(fail(format!("unknown key {other:?}"))),
            }
        }
        let missing = |key: &str| SporadicError::Fixture {
            line: 0,
            reason: format!("missing {key}"),
        };
        Ok(Self {
            quartic: quartic.ok_or_else(|| missing("F"))?,
            affine: affine.ok_or_else(|| missing("f"))?,
            expected_branch: branch.ok_or_else(|| missing("phi"))?,
            cubic: cubic.ok_or_else(|| missing("g"))?,
            conic,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: &str, passed: bool, expected: impl ToString, actual: impl ToString) -> Self {
        Self {
            name: name.to_string(),
            passed,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SporadicReport {
    pub construction: String,
    pub precision: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Runs every check on the embedded fixture at [`DEFAULT_PRECISION`].
pub fn verify_sporadic(construction: Construction) -> Result<SporadicReport, SporadicError> {
    verify_fixture(construction, &construction.fixture(), DEFAULT_PRECISION)
}

/// Runs every check on an arbitrary fixture, for instance a perturbed one.
pub fn verify_fixture(
    construction: Construction,
    fixture: &Fixture,
    precision: usize,
) -> Result<SporadicReport, SporadicError> {
    let mut checks = Vec::new();

    let affine = fixture.quartic.dehomogenize("z")?;
    checks.push(Check::new(
        "dehomogenization",
        affine == fixture.affine,
        &fixture.affine,
        &affine,
    ));

    let certificate = smoothness_certificate(&fixture.quartic)?;
    checks.push(Check::new(
        "smoothness",
        certificate == SmoothnessCertificate::Smooth,
        SmoothnessCertificate::Smooth,
        &certificate,
    ));

    let phi = branch_series(&fixture.affine, precision)?;
    let shared = precision.min(fixture.expected_branch.precision());
    let computed = phi.truncate(shared);
    let listed = fixture.expected_branch.truncate(shared);
    checks.push(Check::new("branch-series", computed == listed, &listed, &computed));

    let cubic = vanishing_order(&fixture.cubic, &phi, precision)?;
    checks.push(Check::new(
        "cubic-vanishing-order",
        cubic == VanishingOrder::Exact(12),
        VanishingOrder::Exact(12),
        cubic,
    ));

    if let Some(conic) = &fixture.conic {
        let order = vanishing_order(conic, &phi, precision)?;
        checks.push(Check::new(
            "conic-vanishing-order",
            order == VanishingOrder::Exact(6),
            VanishingOrder::Exact(6),
            order,
        ));
    }

    let expected_contact = VanishingOrder::Exact(construction.expected_contact());
    let contact = tangent_contact_order(&fixture.affine, precision)?;
    checks.push(Check::new(
        "tangent-contact-order",
        contact == expected_contact,
        expected_contact,
        contact,
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(SporadicReport {
        construction: construction.name().to_string(),
        precision,
        checks,
        passed,
    })
}
