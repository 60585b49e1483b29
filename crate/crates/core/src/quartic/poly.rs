//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("division is not exact")]
    NotExact,
    #[error("division by zero polynomial")]
    DivisionByZero,
}

pub type Exponents = Vec<u32>;

/// A polynomial over `Q` in a fixed, ordered list of variables. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultivariatePoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn variable(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let i = p.var_index(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, Exponents)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials use different variable lists");
    }

    /// Degree in the variable at `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(&self.var_refs(), BigRational::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.var_index(var)?;
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * rat(i64::from(e[i])));
        }
        Ok(out)
    }

    /// Substitutes `value` for `var`; the variable stays in the list with
    /// exponent 0 everywhere.
    pub fn substitute(&self, var: &str, value: &BigRational) -> Result<Self, PolyError> {
        let i = self.var_index(var)?;
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let power = std::mem::replace(&mut e2[i], 0);
            out.add_term(e2, c * pow_rat(value, power));
        }
        Ok(out)
    }

    /// Restricts to a sub-list of variables. Fails if a dropped variable
    /// actually occurs.
    pub fn restrict_vars(&self, keep: &[&str]) -> Result<Self, PolyError> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|v| self.var_index(v))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            let dropped: u32 = (0..e.len()).filter(|j| !idx.contains(j)).map(|j| e[j]).sum();
            if dropped != 0 {
                return Err(PolyError::VariableMismatch(
                    self.vars.clone(),
                    keep.iter().map(|s| s.to_string()).collect(),
                ));
            }
            out.add_term(idx.iter().map(|&j| e[j]).collect(), c.clone());
        }
        Ok(out)
    }

    /// Sets `var = 1` and removes it from the variable list.
    pub fn dehomogenize(&self, var: &str) -> Result<Self, PolyError> {
        let keep: Vec<&str> = self.vars.iter().map(String::as_str).filter(|v| *v != var).collect();
        self.substitute(var, &BigRational::one())?.restrict_vars(&keep)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len(), "point dimension must match variable count");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * pow_rat(x, k))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Coefficients of `var^0, var^1, ...` as polynomials in the same
    /// variable list (with `var` absent).
    pub fn coefficients_in(&self, index: usize) -> Vec<Self> {
        let Some(deg) = self.degree_in(index) else {
            return Vec::new();
        };
        let mut out = vec![self.zero_like(); deg as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[index], 0);
            out[k as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Dense coefficients (lowest degree first) when only the variable at
    /// `index` occurs.
    pub fn to_univariate(&self, index: usize) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); self.degree_in(index).map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != index && k != 0) {
                return None;
            }
            out[e[index] as usize] = c.clone();
        }
        Some(out)
    }

    /// Leading term in lexicographic order on exponent vectors.
    fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_vars(divisor);
        let (de, dc) = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quotient = self.zero_like();
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return Err(PolyError::NotExact);
            }
            let qe: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let qc = rc / dc;
            let mut step = self.zero_like();
            step.add_term(qe, qc);
            rem = &rem - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }

    /// Parses text such as `x^4 - x*y^3 + 3/2 x^{3} z`. Letters are single
    /// variables (lowercased); adjacent factors multiply. Variables are
    /// sorted alphabetically.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let raw = parse_terms(text)?;
        let mut names: Vec<char> = raw.iter().flat_map(|(_, f)| f.iter().map(|(v, _)| *v)).collect();
        names.sort_unstable();
        names.dedup();
        let vars: Vec<String> = names.iter().map(|c| c.to_string()).collect();
        Self::from_raw(text, &vars.iter().map(String::as_str).collect::<Vec<_>>(), raw)
    }

    /// Parses over an explicit variable list; unknown letters are errors.
    pub fn parse_in(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        let raw = parse_terms(text)?;
        Self::from_raw(text, vars, raw)
    }

    fn from_raw(text: &str, vars: &[&str], raw: Vec<RawTerm>) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        for (c, factors) in raw {
            let mut e = vec![0u32; vars.len()];
            for (v, k) in factors {
                let name = v.to_string();
                let i = vars.iter().position(|w| *w == name).ok_or_else(|| PolyError::Parse {
                    input: text.to_string(),
                    reason: format!("variable {name:?} is not one of {vars:?}"),
                })?;
                e[i] += k;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub(crate) fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

type RawTerm = (BigRational, Vec<(char, u32)>);

fn parse_terms(text: &str) -> Result<Vec<RawTerm>, PolyError> {
    let err = |reason: &str| PolyError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty input"));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < chars.len() {
        let mut sign = BigRational::one();
        while pos < chars.len() && matches!(chars[pos], '+' | '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = sign;
        let mut factors = Vec::new();
        let mut seen_factor = false;
        while pos < chars.len() && !matches!(chars[pos], '+' | '-') {
            let c = chars[pos];
            if c == '*' {
                if !seen_factor {
                    return Err(err("'*' without a left factor"));
                }
                pos += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let (num, next) = read_rational(&chars, pos).ok_or_else(|| err("bad number"))?;
                coeff *= num;
                pos = next;
            } else if c.is_ascii_alphabetic() {
                pos += 1;
                let mut power = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    let (k, next) = read_exponent(&chars, pos + 1).ok_or_else(|| err("bad exponent"))?;
                    power = k;
                    pos = next;
                }
                factors.push((c.to_ascii_lowercase(), power));
            } else {
                return Err(err(&format!("unexpected character {c:?}")));
            }
            seen_factor = true;
        }
        if !seen_factor {
            return Err(err("missing term"));
        }
        out.push((coeff, factors));
    }
    Ok(out)
}

fn read_digits(chars: &[char], mut pos: usize) -> Option<(BigInt, usize)> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    let s: String = chars[start..pos].iter().collect();
    Some((s.parse().ok()?, pos))
}

fn read_rational(chars: &[char], pos: usize) -> Option<(BigRational, usize)> {
    let (num, mut pos) = read_digits(chars, pos)?;
    let mut den = BigInt::one();
    if pos < chars.len() && chars[pos] == '/' {
        let (d, next) = read_digits(chars, pos + 1)?;
        if d.is_zero() {
            return None;
        }
        den = d;
        pos = next;
    }
    Some((BigRational::new(num, den), pos))
}

fn read_exponent(chars: &[char], pos: usize) -> Option<(u32, usize)> {
    if chars.get(pos) == Some(&'{') {
        let (k, next) = read_digits(chars, pos + 1)?;
        if chars.get(next) != Some(&'}') {
            return None;
        }
        Some((u32::try_from(k).ok()?, next + 1))
    } else {
        let (k, next) = read_digits(chars, pos)?;
        Some((u32::try_from(k).ok()?, next))
    }
}

impl fmt::Display for MultivariatePoly {
    /// Terms by decreasing total degree, each as `c*x^i*y^j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultivariatePoly {
    type Output = MultivariatePoly;
    fn add(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultivariatePoly {
    type Output = MultivariatePoly;
    fn sub(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultivariatePoly {
    type Output = MultivariatePoly;
    fn neg(self) -> MultivariatePoly {
        self.scale(&-BigRational::one())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &MultivariatePoly {
    type Output = MultivariatePoly;
    fn mul(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        self.check_vars(rhs);
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultivariatePoly {
        MultivariatePoly::parse_in(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parse_styles_agree() {
        let a = p("X^{4} - X Y^{3} + X^{3} Z");
        let b = p("x^4 - x*y^3 + x^3*z");
        let c = p("1*x^4-1*x^1*y^3+x^3z");
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(p("3/2 x^2 - 1/2 x^2"), p("x^2"));
        assert_eq!(p("2xy - xy - yx"), MultivariatePoly::zero(&["x", "y", "z"]));
    }

    #[test]
    fn parse_errors() {
        assert!(MultivariatePoly::parse("").is_err());
        assert!(MultivariatePoly::parse("x^").is_err());
        assert!(MultivariatePoly::parse("x + + ").is_err());
        assert!(MultivariatePoly::parse("x + (y)").is_err());
        assert!(MultivariatePoly::parse_in("w", &["x", "y"]).is_err());
        assert!(MultivariatePoly::parse("1/0 x").is_err());
    }

    #[test]
    fn inferred_variables_sorted() {
        let q = MultivariatePoly::parse("y - x^2").unwrap();
        assert_eq!(q.vars(), ["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["x^4 - x*y^3 + x^3*z - 2/3*y", "-x + 5", "0", "x*y*z"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("y - x^2").to_string(), "-x^2 + y");
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^4").partial_derivative("x").unwrap(), p("4x^3"));
        assert_eq!(p("x^2 - y").partial_derivative("y").unwrap(), p("-1"));
        assert!(p("x^4 - x y^3").partial_derivative("z").unwrap().is_zero());
        assert_eq!(
            p("x").partial_derivative("w"),
            Err(PolyError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn dehomogenize_example() {
        let f = p("X^{4} - X Y^{3} + X^{3} Z - Y^{3} Z - X^{2} Z^{2} - X Y Z^{2} - Y^{2} Z^{2} + Y Z^{3}");
        let g = MultivariatePoly::parse_in("x^{4} - x y^{3} + x^{3} - y^{3} - x^{2} - x y - y^{2} + y", &["x", "y"]).unwrap();
        assert_eq!(f.dehomogenize("z").unwrap(), g);
        assert_eq!(f.homogeneous_degree(), Some(4));
        assert_eq!(g.homogeneous_degree(), None);
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        let b = p("x + y");
        assert_eq!(a.div_exact(&b).unwrap(), p("x - y"));
        assert_eq!(p("x^2 + 1").div_exact(&b), Err(PolyError::NotExact));
        let prod = &p("3x^2 y - z + 1/2") * &p("x z - 7");
        assert_eq!(prod.div_exact(&p("x z - 7")).unwrap(), p("3x^2 y - z + 1/2"));
    }

    #[test]
    fn evaluation() {
        let q = p("x^2 y - 3 z");
        let v = q.evaluate(&[rat(2), rat(5), rat(1)]);
        assert_eq!(v, rat(17));
        assert_eq!(q.substitute("y", &rat(5)).unwrap(), p("5x^2 - 3z"));
    }
}
