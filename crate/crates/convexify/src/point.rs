//! Points with exact rational coordinates, plus the dense exact linear
//! algebra the rest of the crate leans on (solve, kernel, determinant).

use crate::scalar::{rat, to_f64, Scalar};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &Point) -> Scalar {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        to_f64(&self.norm2()).sqrt()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.sub(other).norm()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::scalar::format_scalar(c))?;
        }
        write!(f, ")")
    }
}

/// Row-reduces `m` in place, returning pivot columns. `rhs` rows (if any)
/// are carried along. Exact fraction arithmetic throughout.
fn row_reduce(m: &mut [Vec<Scalar>], rhs: Option<&mut Vec<Scalar>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rhs = rhs;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        if let Some(v) = rhs.as_deref_mut() {
            v.swap(r, p);
        }
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        if let Some(v) = rhs.as_deref_mut() {
            v[r] = &v[r] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
                if let Some(v) = rhs.as_deref_mut() {
                    let t = &v[r] * &f;
                    v[i] = &v[i] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Solves M x = b exactly; returns None if inconsistent. If the system is
/// underdetermined, free variables are set to zero.
pub fn solve_linear(matrix: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut rhs = b.to_vec();
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let pivots = row_reduce(&mut m, Some(&mut rhs));
    // Inconsistent if a zero row has nonzero rhs.
    for (i, row) in m.iter().enumerate() {
        if row.iter().all(Scalar::is_zero) && !rhs[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rhs[r].clone();
    }
    Some(x)
}

/// A basis for the null space of M, exact.
pub fn kernel_basis(matrix: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let pivots = row_reduce(&mut m, None);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = rat(1);
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn determinant(matrix: &[Vec<Scalar>]) -> Scalar {
    let n = matrix.len();
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut det = rat(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].clone();
        for i in (c + 1)..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &inv;
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
    }
    det
}

/// Rank of the matrix (exact).
pub fn rank(matrix: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    row_reduce(&mut m, None).len()
}

/// Affine dimension of a point list: rank of differences to the first point.
pub fn affine_dim(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).0)
        .collect();
    rank(&rows)
}

/// Nonzero coefficients (mu_i) with sum mu_i * p_i = 0 and sum mu_i = 0,
/// when the points are affinely dependent; None otherwise.
pub fn affine_dependence(points: &[Point]) -> Option<Vec<Scalar>> {
    let n = points[0].dim();
    // Rows: each coordinate plus the all-ones row.
    let mut m: Vec<Vec<Scalar>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        m.push(points.iter().map(|p| p.0[j].clone()).collect());
    }
    m.push(vec![rat(1); points.len()]);
    let basis = kernel_basis(&m);
    basis.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn solve_2x2() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(-1)]];
        let x = solve_linear(&m, &[rat(3), rat(0)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
    }

    #[test]
    fn inconsistent_detected() {
        let m = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert!(solve_linear(&m, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![rat(1), rat(2), rat(3)]];
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s: Scalar = v.iter().zip(&m[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn det_and_rank() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(determinant(&m), rat(-2));
        assert_eq!(rank(&m), 2);
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(determinant(&singular), rat(0));
    }

    #[test]
    fn affine_dependence_on_segment() {
        let pts = vec![
            Point::from_i64(&[0, 0]),
            Point::from_i64(&[1, 1]),
            Point::from_i64(&[2, 2]),
        ];
        let mu = affine_dependence(&pts).unwrap();
        let sum: Scalar = mu.iter().sum();
        assert!(sum.is_zero());
        let combo: Scalar = mu.iter().zip(&pts).map(|(m, p)| m * &p.0[0]).sum();
        assert!(combo.is_zero());
        assert_eq!(affine_dim(&pts), 1);
        assert_eq!(
            affine_dim(&[Point::from_i64(&[0, 0]), Point::from_i64(&[0, 1]), Point::from_i64(&[1, 0])]),
            2
        );
        let _ = ratio(1, 2);
    }
}
