//! Smallest enclosing balls (float, Welzl) and polytope inradii
//! (Chebyshev-center LP over exact rationals).

use crate::hull::Polytope;
use crate::lp::{solve, LinearProgram, Rel};
use crate::point::Point;
use crate::scalar::{ratio, sqrt_approx, Scalar};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-10;

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Smallest ball with all boundary points on its surface: the center lies in
/// their affine hull and is equidistant from all of them.
fn ball_with_boundary(boundary: &[Vec<f64>]) -> (Vec<f64>, f64) {
    match boundary.len() {
        0 => (Vec::new(), 0.0),
        1 => (boundary[0].clone(), 0.0),
        _ => {
            let p0 = &boundary[0];
            let dirs: Vec<Vec<f64>> = boundary[1..]
                .iter()
                .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            let m = dirs.len();
            // Gram system: center = p0 + sum l_i d_i with <d_j, c - p0> = |d_j|^2 / 2.
            let mut a = vec![vec![0.0; m + 1]; m];
            for i in 0..m {
                for j in 0..m {
                    a[i][j] = dirs[i].iter().zip(&dirs[j]).map(|(x, y)| x * y).sum();
                }
                a[i][m] = a[i][i] / 2.0;
            }
            // Gaussian elimination with partial pivoting.
            for c in 0..m {
                let piv = (c..m)
                    .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
                    .unwrap();
                a.swap(c, piv);
                if a[c][c].abs() < 1e-14 {
                    // Degenerate boundary set; fall back to the first point.
                    return (p0.clone(), 0.0);
                }
                for i in 0..m {
                    if i != c {
                        let f = a[i][c] / a[c][c];
                        for j in c..=m {
                            a[i][j] -= f * a[c][j];
                        }
                    }
                }
            }
            let lambda: Vec<f64> = (0..m).map(|i| a[i][m] / a[i][i]).collect();
            let mut center = p0.clone();
            for (l, d) in lambda.iter().zip(&dirs) {
                for (cj, dj) in center.iter_mut().zip(d) {
                    *cj += l * dj;
                }
            }
            let r = dist2(&center, p0).sqrt();
            (center, r)
        }
    }
}

fn welzl(points: &mut [Vec<f64>], boundary: &mut Vec<Vec<f64>>, n: usize) -> (Vec<f64>, f64) {
    if points.is_empty() || boundary.len() == n + 1 {
        let (c, r) = ball_with_boundary(boundary);
        if c.is_empty() && !points.is_empty() {
            return (points[0].clone(), 0.0);
        }
        if c.is_empty() {
            return (vec![0.0; n], 0.0);
        }
        return (c, r);
    }
    let p = points[points.len() - 1].clone();
    let rest = points.len() - 1;
    let (c, r) = welzl(&mut points[..rest], boundary, n);
    if !c.is_empty() && dist2(&c, &p).sqrt() <= r + EPS {
        return (c, r);
    }
    boundary.push(p);
    let ans = welzl(&mut points[..rest], boundary, n);
    boundary.pop();
    ans
}

/// Smallest enclosing Euclidean ball, float precision. Deterministic: the
/// internal shuffle uses a fixed seed.
pub fn min_enclosing_ball(points: &[Point]) -> (Vec<f64>, f64) {
    let n = points[0].dim();
    let mut pts: Vec<Vec<f64>> = points.iter().map(|p| p.to_f64()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    pts.shuffle(&mut rng);
    let mut boundary = Vec::new();
    let (c, r) = welzl(&mut pts, &mut boundary, n);
    // Expand minimally so every input point is certified inside.
    let r = points
        .iter()
        .map(|p| dist2(&c, &p.to_f64()).sqrt())
        .fold(r, f64::max);
    (c, r)
}

/// Circumradius R(A) of the smallest enclosing ball.
pub fn circumradius(points: &[Point]) -> f64 {
    min_enclosing_ball(points).1
}

/// Inradius of a full-dimensional polytope via the Chebyshev-center LP
/// max r s.t. <nu_f, c> + |nu_f| r <= offset_f. The Euclidean norms |nu_f|
/// are irrational in general; they are replaced by rational approximations
/// accurate to 1e-15, so the returned radius is exact for the perturbed
/// facets and within ~1e-12 of the true value.
pub fn inradius(p: &Polytope) -> Option<Scalar> {
    if !p.is_full_dimensional() || p.facets.is_empty() {
        return None;
    }
    let n = p.dim;
    let tol = ratio(1, 1_000_000_000_000_000);
    // Variables: center (free, n) then r >= 0; maximize r.
    let mut obj = vec![Scalar::from_integer(0.into()); n + 1];
    obj[n] = ratio(1, 1);
    let mut lp = LinearProgram::maximize(obj);
    for v in 0..n {
        lp.set_free(v);
    }
    for f in &p.facets {
        let mut row = f.normal.0.clone();
        row.push(sqrt_approx(&f.normal.norm2(), &tol));
        lp.constrain(row, Rel::Le, f.offset.clone());
    }
    let (_, r) = solve(&lp).optimal()?;
    Some(r)
}
