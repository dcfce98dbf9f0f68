//! Exact rational vectors and 3×3 matrices, plus integer lattices in Hermite
//! normal form. Everything here is small and dense; there is no attempt at
//! being generic over dimension except for [`IntLattice`].

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Q = Rational64;
pub type Vec3 = [Q; 3];
pub type Mat3 = [[Q; 3]; 3];

#[inline]
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(numer, denom)
}

#[inline]
pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn vec3(x: Q, y: Q, z: Q) -> Vec3 {
    [x, y, z]
}

pub fn zero_vec() -> Vec3 {
    [Q::zero(); 3]
}

pub fn identity() -> Mat3 {
    let mut m = [[Q::zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_from_ints(rows: [[i64; 3]; 3]) -> Mat3 {
    rows.map(|r| r.map(qi))
}

pub fn add(u: &Vec3, v: &Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub fn sub(u: &Vec3, v: &Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub fn neg(u: &Vec3) -> Vec3 {
    [-u[0], -u[1], -u[2]]
}

pub fn scale(s: Q, u: &Vec3) -> Vec3 {
    [s * u[0], s * u[1], s * u[2]]
}

pub fn dot(u: &Vec3, v: &Vec3) -> Q {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn norm_sq(u: &Vec3) -> Q {
    dot(u, u)
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Q::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn mat_sub(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn mat_add(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[Q::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn column(m: &Mat3, j: usize) -> Vec3 {
    [m[0][j], m[1][j], m[2][j]]
}

pub fn det(m: &Mat3) -> Q {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse via the adjugate; `None` for singular input.
pub fn inverse(m: &Mat3) -> Option<Mat3> {
    let d = det(m);
    if d.is_zero() {
        return None;
    }
    let mut adj = [[Q::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    Some(adj.map(|row| row.map(|x| x / d)))
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn trace(m: &Mat3) -> Q {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn is_integral(v: &Vec3) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Basis of the right null space `{x : m x = 0}`, each vector scaled to be
/// integral and primitive.
pub fn nullspace(m: &Mat3) -> Vec<Vec3> {
    let mut a = *m;
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..3).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let lead = a[row][col];
        for x in a[row].iter_mut() {
            *x /= lead;
        }
        for r in 0..3 {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..3 {
                    let sub = f * a[row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..3).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vec();
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free];
        }
        basis.push(primitive_integral(&v));
    }
    basis
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vec3]) -> usize {
    let mut a: Vec<Vec3> = rows.to_vec();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r];
        for i in (r + 1)..a.len() {
            let f = a[i][col] / lead[col];
            if !f.is_zero() {
                a[i] = sub(&a[i], &scale(f, &lead));
            }
        }
        r += 1;
    }
    r
}

/// Scale a nonzero rational vector to the primitive integer vector on the
/// same ray.
pub fn primitive_integral(v: &Vec3) -> Vec3 {
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * qi(den)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return *v;
    }
    [qi(ints[0] / g), qi(ints[1] / g), qi(ints[2] / g)]
}

/// Least common multiple of denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// Generator of the additive subgroup of Q spanned by `xs` (zero if all vanish).
pub fn rational_gcd<'a>(xs: impl IntoIterator<Item = &'a Q> + Clone) -> Q {
    let den = common_denominator(xs.clone());
    let g = xs
        .into_iter()
        .fold(0i64, |acc, x| acc.gcd(&(x * qi(den)).to_integer()));
    Q::new(g, den)
}

pub fn floor_div_q(x: Q, step: Q) -> i64 {
    (x / step).floor().to_integer()
}

/// Is `target` in the Z-span of `gens`? All vectors share the same length.
pub fn in_integer_span(gens: &[Vec<Q>], target: &[Q]) -> bool {
    let den = gens
        .iter()
        .flat_map(|g| g.iter())
        .chain(target.iter())
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let scale_int = |v: &[Q]| -> Vec<i128> {
        v.iter()
            .map(|x| (x * qi(den)).to_integer() as i128)
            .collect()
    };
    let lat = IntLattice::generated_by(target.len(), gens.iter().map(|g| scale_int(g)));
    lat.contains(&scale_int(target))
}

/// A sublattice of Z^n stored as a row basis in Hermite normal form:
/// pivots strictly increasing, pivot entries positive, entries above each
/// pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    pub fn generated_by(dim: usize, gens: impl IntoIterator<Item = Vec<i128>>) -> Self {
        let mut pending: Vec<Vec<i128>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator has wrong length"))
            .filter(|g| g.iter().any(|x| *x != 0))
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            loop {
                let Some(best) = pending
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r[col] != 0)
                    .min_by_key(|(_, r)| r[col].abs())
                    .map(|(i, _)| i)
                else {
                    break;
                };
                let pivot_row = pending[best].clone();
                let mut done = true;
                for (i, r) in pending.iter_mut().enumerate() {
                    if i == best || r[col] == 0 {
                        continue;
                    }
                    let f = Integer::div_floor(&r[col], &pivot_row[col]);
                    for c in col..dim {
                        r[c] -= f * pivot_row[c];
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
                if done {
                    let mut row = pending.swap_remove(best);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    rows.push(row);
                    pivots.push(col);
                    break;
                }
            }
            pending.retain(|r| r.iter().any(|x| *x != 0));
        }
        debug_assert!(pending.is_empty());
        // reduce entries above each pivot
        for i in 0..rows.len() {
            let (p, piv) = (pivots[i], rows[i][pivots[i]]);
            for j in 0..i {
                let f = Integer::div_floor(&rows[j][p], &piv);
                if f != 0 {
                    for c in p..dim {
                        let sub = f * rows[i][c];
                        rows[j][c] -= sub;
                    }
                }
            }
        }
        IntLattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the lattice: every pivot
    /// coordinate lands in `[0, pivot)`.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = Integer::div_floor(&out[p], &row[p]);
            if f != 0 {
                for c in p..self.dim {
                    out[c] -= f * row[c];
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let mut rest = v.to_vec();
        let mut next = 0;
        for col in 0..self.dim {
            if next < self.rows.len() && self.pivots[next] == col {
                let row = &self.rows[next];
                if rest[col] % row[col] != 0 {
                    return false;
                }
                let f = rest[col] / row[col];
                for c in col..self.dim {
                    rest[c] -= f * row[c];
                }
                next += 1;
            } else if rest[col] != 0 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Accepts `p/q`, plain integers and finite decimals such as `4.5`.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(err());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: i64 = match int.trim() {
            "" | "-" | "+" => 0,
            x => x.parse().map_err(|_| err())?,
        };
        let den = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = frac.parse().map_err(|_| err())?;
        let mag = int_part.abs() * den + frac_part;
        return Ok(Q::new(if negative { -mag } else { mag }, den));
    }
    s.parse::<i64>().map(qi).map_err(|_| err())
}

/// Always `p/q`, even for integers. Used for the space-file format.
pub fn format_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Integers as `p`, everything else as `p/q`.
pub struct Rat<'a>(pub &'a Q);

impl fmt::Display for Rat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn abs(x: Q) -> Q {
    x.abs()
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(x: Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = isqrt(*x.numer() as u64)?;
    let d = isqrt(*x.denom() as u64)?;
    Some(Q::new(n as i64, d as i64))
}

fn isqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| c * c == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("9/2").unwrap(), q(9, 2));
        assert_eq!(parse_rational("4.5").unwrap(), q(9, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational(" 3 ").unwrap(), qi(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rat_display() {
        assert_eq!(Rat(&q(4, 1)).to_string(), "4");
        assert_eq!(Rat(&q(4, 3)).to_string(), "4/3");
        assert_eq!(format_pq(&qi(0)), "0/1");
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat_from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity());
        assert!(inverse(&mat_from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]])).is_none());
    }

    #[test]
    fn nullspace_of_half_turn() {
        // I - diag(1,-1,-1) kills the x axis
        let m = mat_sub(&identity(), &mat_from_ints([[1, 0, 0], [0, -1, 0], [0, 0, -1]]));
        assert_eq!(nullspace(&m), vec![[qi(1), qi(0), qi(0)]]);
        assert_eq!(nullspace(&identity()).len(), 0);
        assert_eq!(nullspace(&[[Q::zero(); 3]; 3]).len(), 3);
    }

    #[test]
    fn hermite_membership() {
        let lat = IntLattice::generated_by(3, vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 0, 4]]);
        assert_eq!(lat.rank(), 3);
        assert!(lat.contains(&[1, 1, 0]));
        assert!(lat.contains(&[3, -1, 8]));
        assert!(!lat.contains(&[1, 0, 0]));
        assert!(!lat.contains(&[0, 0, 2]));
        // rank deficient
        let plane = IntLattice::generated_by(3, vec![vec![0, 2, 0], vec![0, 0, 4], vec![0, 2, 4]]);
        assert_eq!(plane.rank(), 2);
        assert!(!plane.contains(&[1, 0, 0]));
        assert_eq!(plane.reduce(&[5, 3, 7]), vec![5, 1, 3]);
    }

    #[test]
    fn integer_span_rational() {
        let gens = vec![vec![q(1, 2), qi(0)], vec![qi(0), qi(2)]];
        assert!(in_integer_span(&gens, &[q(3, 2), qi(-4)]));
        assert!(!in_integer_span(&gens, &[q(1, 4), qi(0)]));
        assert!(!in_integer_span(&gens, &[qi(0), qi(1)]));
    }

    #[test]
    fn gcd_and_sqrt() {
        assert_eq!(rational_gcd(&[q(1, 2), qi(2), qi(0)]), q(1, 2));
        assert_eq!(rational_gcd(&[q(2, 3), q(1, 2)]), q(1, 6));
        assert_eq!(exact_sqrt(q(9, 4)), Some(q(3, 2)));
        assert_eq!(exact_sqrt(qi(2)), None);
    }
}
