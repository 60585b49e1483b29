//! Brute-force reference computations.
//!
//! Nothing here depends on `kstrata`; every function recomputes its answer
//! from first principles by exhaustive search, so the two crates can be
//! compared on small inputs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn modn(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

/// A point of `(Z/N)²`.
type Point = (i64, i64);

fn point_order((x, y): Point, n: i64) -> i64 {
    (1..=n).find(|&m| modn(m * x, n) == 0 && modn(m * y, n) == 0).unwrap_or(n)
}

/// Number of tuples `(p_1, ..., p_n)` in `(Z/N)²` with `Σ k_i p_i = 0`,
/// by dynamic programming over the partial sums.
pub fn torsion_solution_count(coefficients: &[i64], n: i64) -> u128 {
    let size = (n * n) as usize;
    let mut dist = vec![0u128; size];
    dist[0] = 1;
    for &k in coefficients {
        let mut next = vec![0u128; size];
        for (s, &count) in dist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let (sx, sy) = (s as i64 / n, s as i64 % n);
            for x in 0..n {
                for y in 0..n {
                    let t = (modn(sx + k * x, n) * n + modn(sy + k * y, n)) as usize;
                    next[t] += count;
                }
            }
        }
        dist = next;
    }
    dist[0]
}

/// The same count by enumerating every tuple. Only for small `N^{2n}`.
pub fn torsion_solution_count_exhaustive(coefficients: &[i64], n: i64) -> u128 {
    let points: Vec<Point> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let len = coefficients.len();
    let total = (points.len() as u128).pow(len as u32);
    (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut c = code;
            let (mut sx, mut sy) = (0, 0);
            for &k in coefficients {
                let (x, y) = points[(c % points.len() as u128) as usize];
                c /= points.len() as u128;
                sx += k * x;
                sy += k * y;
            }
            modn(sx, n) == 0 && modn(sy, n) == 0
        })
        .count() as u128
}

/// `N^{2(n-1)} · gcd(N, d)²` with `d = gcd(k_i)`.
pub fn torsion_solution_formula(coefficients: &[i64], n: i64) -> u128 {
    let d = coefficients.iter().fold(0, |acc, &k| gcd(acc, k));
    let g = gcd(n, d) as u128;
    (n as u128).pow(2 * (coefficients.len() as u32 - 1)) * g * g
}

/// Configurations of pairwise distinct points with `Σ k_i p_i = 0`, grouped
/// by the exact order of `Σ (k_i / d) p_i`. The first point is fixed at the
/// origin (translation acts freely on configurations), so counts are per
/// translation class.
pub fn order_classes(coefficients: &[i64], n: i64) -> BTreeMap<i64, u64> {
    let d = coefficients.iter().fold(0, |acc, &k| gcd(acc, k));
    assert!(d != 0, "coefficients must not all vanish");
    assert!(coefficients.len() <= 8, "at most eight points");
    let reduced: Vec<i64> = coefficients.iter().map(|k| k / d).collect();
    let points: Vec<Point> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let free = coefficients.len() - 1;
    let total = (points.len() as u64).pow(free as u32);
    let classes = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let mut config = [(0i64, 0i64); 8];
            for slot in config.iter_mut().take(free + 1).skip(1) {
                *slot = points[(c % points.len() as u64) as usize];
                c /= points.len() as u64;
            }
            let config = &config[..=free];
            for i in 0..config.len() {
                if config[i + 1..].contains(&config[i]) {
                    return None;
                }
            }
            let sum = |w: &[i64]| {
                let (mut sx, mut sy) = (0, 0);
                for (&k, &(x, y)) in w.iter().zip(config) {
                    sx += k * x;
                    sy += k * y;
                }
                (modn(sx, n), modn(sy, n))
            };
            if sum(coefficients) != (0, 0) {
                return None;
            }
            Some(point_order(sum(&reduced), n))
        })
        .fold(BTreeMap::new, |mut acc: BTreeMap<i64, u64>, e| {
            *acc.entry(e).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (e, c) in b {
                *a.entry(e).or_default() += c;
            }
            a
        });
    classes
}

/// Some sub-multiset (by index) sums to `-k`.
pub fn has_subset_sum(k: i64, orders: &[i64]) -> bool {
    let n = orders.len();
    (1u64..(1 << n) - 1).any(|mask| subset_sum(orders, mask) == -k)
}

fn subset_sum(orders: &[i64], mask: u64) -> i64 {
    orders
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &o)| o)
        .sum()
}

fn is_half_pair(k: i64, orders: &[i64], mask: u64) -> bool {
    let chosen: Vec<i64> = orders
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &o)| o)
        .collect();
    k % 2 == 0 && chosen.len() == 2 && chosen.iter().all(|&o| 2 * o == -k)
}

/// Some split into two parts each summing to `-k`, neither being `(-k/2, -k/2)`.
pub fn has_good_partition(k: i64, orders: &[i64]) -> bool {
    let n = orders.len();
    let full = (1u64 << n) - 1;
    (1u64..full).any(|mask| {
        subset_sum(orders, mask) == -k
            && subset_sum(orders, full ^ mask) == -k
            && !is_half_pair(k, orders, mask)
            && !is_half_pair(k, orders, full ^ mask)
    })
}

/// Orbits of `(x, y) ↦ (x + 1, y + 1)` on `Z/p × Z/q`, counted through
/// canonical representatives.
pub fn prong_orbits(p: u64, q: u64) -> u64 {
    let mut reps = BTreeSet::new();
    for x in 0..p {
        for y in 0..q {
            let rep = (0..p * q).map(|t| ((x + t) % p, (y + t) % q)).min().expect("nonempty");
            reps.insert(rep);
        }
    }
    reps.len() as u64
}

/// A vector of `(Z/2)^{2g}` as a bitmask: bit `i` is `a_{i+1}` for `i < g`
/// and `b_{i-g+1}` otherwise.
pub type Mod2Vector = u32;

/// Standard symplectic form.
pub fn omega(g: u32, x: Mod2Vector, y: Mod2Vector) -> u8 {
    let mask = (1 << g) - 1;
    let (xa, xb) = (x & mask, x >> g);
    let (ya, yb) = (y & mask, y >> g);
    (((xa & yb).count_ones() + (xb & ya).count_ones()) % 2) as u8
}

/// The quadratic refinement of [`omega`] taking `values[i]` on the `i`-th
/// standard basis vector.
pub fn quadratic_value(g: u32, values: u32, x: Mod2Vector) -> u8 {
    let mut acc: Mod2Vector = 0;
    let mut q = 0u8;
    for i in 0..2 * g {
        if x >> i & 1 == 1 {
            let e = 1 << i;
            q ^= (values >> i & 1) as u8 ^ omega(g, acc, e);
            acc |= e;
        }
    }
    q
}

/// All ordered symplectic bases `(a_1, b_1, ..., a_g, b_g)`.
pub fn symplectic_bases(g: u32) -> Vec<Vec<Mod2Vector>> {
    let dim = 2 * g;
    let vectors: Vec<Mod2Vector> = (1..1u32 << dim).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_bases(g, &vectors, &mut current, &mut out);
    out
}

fn extend_bases(g: u32, vectors: &[Mod2Vector], current: &mut Vec<Mod2Vector>, out: &mut Vec<Vec<Mod2Vector>>) {
    if current.len() == 2 * g as usize {
        out.push(current.clone());
        return;
    }
    let position = current.len();
    for &v in vectors {
        let compatible = current.iter().enumerate().all(|(j, &w)| {
            let paired = j / 2 == position / 2;
            omega(g, v, w) == u8::from(paired)
        });
        if compatible {
            current.push(v);
            extend_bases(g, vectors, current, out);
            current.pop();
        }
    }
}

/// `Σ q(a_i) q(b_i)` over a symplectic basis.
pub fn arf_in_basis(g: u32, values: u32, basis: &[Mod2Vector]) -> u8 {
    basis
        .chunks(2)
        .fold(0, |acc, pair| acc ^ (quadratic_value(g, values, pair[0]) & quadratic_value(g, values, pair[1])))
}

/// Arf invariant by majority vote: 0 iff the form has `2^{g-1}(2^g + 1)` zeros.
pub fn arf_by_counting(g: u32, values: u32) -> u8 {
    if g == 0 {
        return 0;
    }
    let zeros = (0..1u32 << (2 * g)).filter(|&x| quadratic_value(g, values, x) == 0).count();
    let even = (1usize << (g - 1)) * ((1 << g) + 1);
    u8::from(zeros != even)
}

/// Expected number of primitive nonhyperelliptic components in genus at
/// least two, keyed independently of the main classifier: orders are
/// compared in ascending order and the rules are applied as written.
pub fn expected_count(k: u32, genus: u32, orders: &[i64]) -> usize {
    assert!(genus >= 2, "table covers genus two and higher");
    let mut asc = orders.to_vec();
    asc.sort_unstable();
    let poles: Vec<i64> = asc.iter().copied().filter(|&o| o < 0).collect();
    if k == 1 && poles == [-1] {
        return 0;
    }
    match (k, genus, asc.as_slice()) {
        (1, 2, [2]) | (1, 2, [1, 1]) => return 0,
        (2, 2, [4]) | (2, 2, [1, 3]) | (2, 2, [2, 2]) | (2, 2, [1, 1, 2]) | (2, 2, [1, 1, 1, 1]) => return 0,
        (1, 3, [4]) | (1, 3, [2, 2]) => return 1,
        (1, 2, [-2, 4]) | (1, 2, [-2, 2, 2]) => return 1,
        (3, 2, [6]) | (3, 2, [2, 4]) | (3, 2, [2, 2, 2]) => return 1,
        (2, 3, [-1, 9]) | (2, 3, [-1, 3, 6]) | (2, 3, [-1, 3, 3, 3]) => return 2,
        (2, 4, [12]) | (2, 4, [3, 9]) | (2, 4, [6, 6]) | (2, 4, [3, 3, 6]) | (2, 4, [3, 3, 3, 3]) => return 2,
        (3, 3, [12]) | (3, 3, [4, 8]) | (3, 3, [4, 4, 4]) => return 3,
        _ => {}
    }
    let positives: Vec<i64> = asc.iter().copied().filter(|&o| o > 0).collect();
    if k == 1 && genus >= 3 && poles == [-1, -1] && positives.iter().all(|o| o % 2 == 0) {
        return 2;
    }
    if k % 2 == 1 && asc.iter().all(|o| o % 2 == 0) {
        2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_counts_agree() {
        assert_eq!(torsion_solution_count(&[2, -2], 4), 16 * 4);
        assert_eq!(torsion_solution_count_exhaustive(&[2, -2], 4), 64);
        assert_eq!(torsion_solution_formula(&[2, -2], 4), 64);
        assert_eq!(torsion_solution_count(&[1, 1, -2], 3), torsion_solution_formula(&[1, 1, -2], 3));
    }

    #[test]
    fn order_classes_for_a_pair() {
        // (2, -2): q = p_1 - p_2 has order 2 whenever the points differ.
        let classes = order_classes(&[2, -2], 4);
        assert_eq!(classes.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(classes[&2], 3);
    }

    #[test]
    fn partitions() {
        assert!(has_subset_sum(2, &[-1, -1, -1, -1]));
        assert!(!has_good_partition(2, &[-1, -1, -1, -1]));
        assert!(has_good_partition(3, &[1, -3, -4]));
        assert!(!has_subset_sum(2, &[6, -5, -5]));
    }

    #[test]
    fn prong_orbit_examples() {
        assert_eq!(prong_orbits(2, 2), 2);
        assert_eq!(prong_orbits(5, 1), 1);
        assert_eq!(prong_orbits(4, 6), 2);
    }

    #[test]
    fn symplectic_basis_counts() {
        // |Sp(2, F_2)| = 6 and |Sp(4, F_2)| = 720.
        assert_eq!(symplectic_bases(1).len(), 6);
        assert_eq!(symplectic_bases(2).len(), 720);
    }

    #[test]
    fn quadratic_values_refine_omega() {
        for g in 1..=2 {
            for values in 0..1u32 << (2 * g) {
                for x in 0..1u32 << (2 * g) {
                    for y in 0..1u32 << (2 * g) {
                        let lhs = quadratic_value(g, values, x ^ y);
                        let rhs = quadratic_value(g, values, x) ^ quadratic_value(g, values, y) ^ omega(g, x, y);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn expected_table_spot_checks() {
        assert_eq!(expected_count(5, 2, &[10]), 2);
        assert_eq!(expected_count(2, 4, &[3, 9]), 2);
        assert_eq!(expected_count(1, 4, &[4, 4, -1, -1]), 2);
        assert_eq!(expected_count(1, 2, &[4, -1, -1]), 1);
        assert_eq!(expected_count(1, 3, &[5, -1]), 0);
    }
}
