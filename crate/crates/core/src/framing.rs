//! Winding numbers, k-framings and the mod-2 invariants built from them.
//!
//! A k-framing `w` assigns an integer to every closed curve; a small loop around
//! a singularity of order `N` gets `N + k`. When `k` is odd and every order is
//! even, `w mod 2` is a framing of the closed surface and
//! `q(c) = w(c) + 1 (mod 2)` is a quadratic refinement of the mod-2
//! intersection form. The Arf invariant of that form is
//! `Σ (w(a_i) + 1)(w(b_i) + 1) mod 2` on any symplectic basis.

use serde::Serialize;
use thiserror::Error;

/// A value in `Z/2`, stored as 0 or 1.
pub type Parity = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FramingError {
    #[error("spin needs odd k, got k = {0}")]
    EvenK(u32),
    #[error("boundary value {value} at puncture {index} is even (a singularity of odd order)")]
    EvenBoundaryValue { index: usize, value: i64 },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("torsion order {e} must exceed 1 and divide |a| = {a}")]
    BadTorsion { a: i64, e: i64 },
}

fn bit(v: i64) -> Parity {
    v.rem_euclid(2) as Parity
}

/// `w(δ_q) = order + k` for a loop around a singularity.
pub fn boundary_framing_value(k: u32, order: i64) -> i64 {
    order + i64::from(k)
}

/// Framing values on a symplectic basis `(a_i, b_i)` and on the boundary loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticFramingValues {
    pub k: u32,
    pub pairs: Vec<(i64, i64)>,
    pub boundary: Vec<i64>,
}

impl SymplecticFramingValues {
    /// Boundary values are derived from the singularity orders.
    pub fn from_orders(k: u32, pairs: Vec<(i64, i64)>, orders: &[i64]) -> Self {
        let boundary = orders
            .iter()
            .map(|&o| boundary_framing_value(k, o))
            .collect();
        Self { k, pairs, boundary }
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }
}

/// `Σ (w(a_i) + 1)(w(b_i) + 1) mod 2`.
pub fn arf(pairs: &[(i64, i64)]) -> Parity {
    pairs
        .iter()
        .fold(0, |acc, &(a, b)| acc ^ (bit(a + 1) & bit(b + 1)))
}

/// Arf invariant of the mod-2 reduction, defined for odd `k` with every
/// boundary value odd.
pub fn spin(framing: &SymplecticFramingValues) -> Result<Parity, FramingError> {
    if framing.k.is_multiple_of(2) {
        return Err(FramingError::EvenK(framing.k));
    }
    if let Some((index, &value)) = framing
        .boundary
        .iter()
        .enumerate()
        .find(|(_, &v)| v % 2 == 0)
    {
        return Err(FramingError::EvenBoundaryValue { index, value });
    }
    Ok(arf(&framing.pairs))
}

/// Relative Arf invariant `w̄(s) + Σ (w(a_i) + 1)(w(b_i) + 1) mod 2`, where
/// `sbar` is the relative framing of an arc joining the two punctures.
pub fn relative_arf(sbar: i64, pairs: &[(i64, i64)]) -> Parity {
    bit(sbar) ^ arf(pairs)
}

/// A quadratic refinement of the mod-2 intersection form on `(Z/2)^{2g}`,
/// given by its values on a symplectic basis.
///
/// Vectors are written in the coordinates `(a_1, …, a_g, b_1, …, b_g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod2QuadraticForm {
    a_values: Vec<Parity>,
    b_values: Vec<Parity>,
}

impl Mod2QuadraticForm {
    pub fn new(a_values: Vec<Parity>, b_values: Vec<Parity>) -> Result<Self, FramingError> {
        if a_values.len() != b_values.len() {
            return Err(FramingError::LengthMismatch {
                expected: a_values.len(),
                got: b_values.len(),
            });
        }
        Ok(Self {
            a_values: a_values.into_iter().map(|v| v & 1).collect(),
            b_values: b_values.into_iter().map(|v| v & 1).collect(),
        })
    }

    /// The form `q(c) = w(c) + 1` of a mod-2 framing.
    pub fn from_framing(pairs: &[(i64, i64)]) -> Self {
        Self {
            a_values: pairs.iter().map(|&(a, _)| bit(a + 1)).collect(),
            b_values: pairs.iter().map(|&(_, b)| bit(b + 1)).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.a_values.len()
    }

    /// `Σ q(a_i) q(b_i)` on the defining basis.
    pub fn arf(&self) -> Parity {
        self.a_values
            .iter()
            .zip(&self.b_values)
            .fold(0, |acc, (a, b)| acc ^ (a & b))
    }

    /// Evaluates `q` by adding basis vectors one at a time with
    /// `q(x + y) = q(x) + q(y) + ⟨x, y⟩`.
    pub fn eval(&self, vector: &[Parity]) -> Result<Parity, FramingError> {
        let g = self.genus();
        if vector.len() != 2 * g {
            return Err(FramingError::LengthMismatch {
                expected: 2 * g,
                got: vector.len(),
            });
        }
        let mut partial = vec![0u8; 2 * g];
        let mut value = 0u8;
        for (idx, &coord) in vector.iter().enumerate() {
            if coord & 1 == 0 {
                continue;
            }
            let basis_value = if idx < g {
                self.a_values[idx]
            } else {
                self.b_values[idx - g]
            };
            let mut basis = vec![0u8; 2 * g];
            basis[idx] = 1;
            value ^= basis_value ^ intersection(&partial, &basis);
            partial[idx] ^= 1;
        }
        Ok(value)
    }
}

/// Evaluates a quadratic form on a vector of `2g` bits.
pub fn quadratic_eval(form: &Mod2QuadraticForm, vector: &[Parity]) -> Result<Parity, FramingError> {
    form.eval(vector)
}

/// Mod-2 algebraic intersection `Σ x_{a_i} y_{b_i} + x_{b_i} y_{a_i}` in the
/// coordinates `(a_1, …, a_g, b_1, …, b_g)`.
pub fn intersection(x: &[Parity], y: &[Parity]) -> Parity {
    let g = x.len() / 2;
    (0..g).fold(0, |acc, i| {
        acc ^ (x[i] & y[g + i] & 1) ^ (x[g + i] & y[i] & 1)
    })
}

/// k-framing value of a curve `η` of flat winding number zero on the square
/// torus model of `Ω^k_{a/e} M_1(a, -a)`: `(a/e)·⟨γ, η⟩ − a·⟨s, η⟩`, where `γ`
/// is the horizontal core curve and `s` the horizontal path between the two
/// singularities. The value does not depend on `k`.
pub fn torus_framing_value(a: i64, e: i64, gamma_pairing: i64, s_pairing: i64) -> Result<i64, FramingError> {
    if e <= 1 || a % e != 0 {
        return Err(FramingError::BadTorsion { a, e });
    }
    Ok((a / e) * gamma_pairing - a * s_pairing)
}
