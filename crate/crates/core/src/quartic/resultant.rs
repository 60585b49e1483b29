//! Sylvester resultants by fraction-free elimination, and the dense
//! univariate helpers used after elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use super::poly::{MultivariatePoly, PolyError};
use crate::batch::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("polynomial has degree zero in {0:?}")]
    DegreeZero(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The Sylvester matrix of `p` and `q` with respect to the variable at `index`.
pub fn sylvester_matrix(
    p: &MultivariatePoly,
    q: &MultivariatePoly,
    index: usize,
) -> Vec<Vec<MultivariatePoly>> {
    let zero = p.scale(&BigRational::zero());
    let pc = p.coefficients_in(index);
    let qc = q.coefficients_in(index);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&pc, n), (&qc, m)] {
        for s in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for (j, c) in coeffs.iter().rev().enumerate() {
                row[s + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_determinant(
    mut m: Vec<Vec<MultivariatePoly>>,
    execution: Execution,
) -> Result<MultivariatePoly, PolyError> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return Err(PolyError::DivisionByZero);
    }
    let one = MultivariatePoly::constant(
        &m[0][0].vars().iter().map(String::as_str).collect::<Vec<_>>(),
        BigRational::one(),
    );
    let mut prev = one;
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(m[0][0].scale(&BigRational::zero()));
            };
            m.swap(k, swap);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let update = |row: &mut Vec<MultivariatePoly>| -> Result<(), PolyError> {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev)?;
            }
            row[k] = lead.scale(&BigRational::zero());
            Ok(())
        };
        match execution {
            #[cfg(feature = "parallel")]
            Execution::Parallel => rest.par_iter_mut().try_for_each(update)?,
            _ => rest.iter_mut().try_for_each(update)?,
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// `Res_var(p, q)`, the determinant of the Sylvester matrix.
pub fn resultant(
    p: &MultivariatePoly,
    q: &MultivariatePoly,
    var: &str,
) -> Result<MultivariatePoly, ResultantError> {
    resultant_with(p, q, var, Execution::default())
}

pub fn resultant_with(
    p: &MultivariatePoly,
    q: &MultivariatePoly,
    var: &str,
    execution: Execution,
) -> Result<MultivariatePoly, ResultantError> {
    let i = p.var_index(var)?;
    q.var_index(var)?;
    for f in [p, q] {
        if f.degree_in(i).unwrap_or(0) == 0 {
            return Err(ResultantError::DegreeZero(var.to_string()));
        }
    }
    Ok(bareiss_determinant(sylvester_matrix(p, q, i), execution)?)
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
pub type Univariate = Vec<BigRational>;

pub fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn eval_univariate(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn remainder(a: &[BigRational], b: &[BigRational]) -> Univariate {
    let mut r = a.to_vec();
    let lead = b.last().expect("divisor must be nonzero");
    while r.len() >= b.len() {
        let factor = r.last().expect("nonempty") / lead;
        let shift = r.len() - b.len();
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &factor * c;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic gcd; the gcd of two zero polynomials is zero (empty).
pub fn gcd_univariate(a: &[BigRational], b: &[BigRational]) -> Univariate {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

/// Largest `|a_0|` for which divisors are enumerated by trial division.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// Rational roots found by the rational root test, and whether the search was
/// exhaustive (it is skipped when the integer coefficients get too large).
pub fn rational_roots(p: &[BigRational]) -> (Vec<BigRational>, bool) {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return (Vec::new(), true);
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return (roots, true);
    }
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().and_then(|c| c.abs().to_u64())) else {
        return (roots, false);
    };
    if a0 > TRIAL_DIVISION_LIMIT || an > TRIAL_DIVISION_LIMIT {
        return (roots, false);
    }
    let rp: Univariate = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    for num in small_divisors(a0) {
        for den in small_divisors(an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if eval_univariate(&rp, &x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    (roots, true)
}

fn small_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    fn p(s: &str) -> MultivariatePoly {
        MultivariatePoly::parse_in(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("y - x"), &p("y + x"), "y").unwrap(), p("2x"));
        assert_eq!(resultant(&p("y^2"), &p("y - x"), "y").unwrap(), p("x^2"));
        assert!(resultant(&p("x^2 - 2"), &p("x^2 - 2"), "x").unwrap().is_zero());
        assert_eq!(
            resultant(&p("x"), &p("y"), "y"),
            Err(ResultantError::DegreeZero("y".into()))
        );
    }

    #[test]
    fn resultant_symmetry_and_modes() {
        let a = p("x^2 y^3 - 2y + x");
        let b = p("3y^2 + x y - 1/2");
        let ab = resultant_with(&a, &b, "y", Execution::Sequential).unwrap();
        let ba = resultant_with(&b, &a, "y", Execution::Parallel).unwrap();
        // Degrees 3 and 2 in y, so the sign (-1)^6 is +1.
        assert_eq!(ab, ba);
        assert_eq!(resultant(&b, &p("y - x"), "y").unwrap(), resultant(&p("y - x"), &b, "y").unwrap());
        assert_eq!(ab, resultant_with(&a, &b, "y", Execution::Parallel).unwrap());
    }

    #[test]
    fn univariate_gcd_and_roots() {
        let a = vec![rat(-2), rat(1), rat(1)]; // (x + 2)(x - 1)
        let b = vec![rat(-1), rat(0), rat(1)]; // (x + 1)(x - 1)
        assert_eq!(gcd_univariate(&a, &b), vec![rat(-1), rat(1)]);
        let (roots, complete) = rational_roots(&[rat(0), rat(-3), rat(0), rat(4) * rat(3)]);
        assert!(complete);
        assert_eq!(roots, vec![BigRational::new((-1).into(), 2.into()), rat(0), BigRational::new(1.into(), 2.into())]);
        assert_eq!(rational_roots(&[rat(1), rat(0), rat(1)]).0, Vec::<BigRational>::new());
    }
}
