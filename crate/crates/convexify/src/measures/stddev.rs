//! Effective standard deviation v(A) and its relatives: the pointwise
//! quantities v_A, w_A, rho_A, d_A, and the global supremum computed exactly
//! by enumerating circumcenters of affinely independent subsets. By the
//! structure theorem for v_A, the global maximizer is the projection of such
//! a circumcenter onto its simplex, so the enumeration is exhaustive.

use crate::lp::{caratheodory_reduce_quadratic, in_hull, solve, ConvexCombination, LinearProgram, Rel};
use crate::measures::MeasureResult;
use crate::point::{rank, solve_linear, Point};
use crate::scalar::{rat, ratio, sqrt_approx, to_f64, Scalar};
use crate::sets::PointSet;
use num_traits::{Signed, Zero};

/// An affinely independent subset of A whose circumsphere contains no other
/// point of A in its affine hull — the certificate behind v(A).
#[derive(Clone, Debug)]
pub struct EmptySphereSimplex {
    pub indices: Vec<usize>,
    pub circumcenter: Point,
    pub circumradius2: Scalar,
}

/// Circumcenter of affinely independent points and its squared radius: the
/// unique point of their affine hull equidistant from all of them.
pub fn circumcenter(points: &[Point]) -> Option<(Point, Scalar)> {
    let p0 = &points[0];
    if points.len() == 1 {
        return Some((p0.clone(), Scalar::zero()));
    }
    let dirs: Vec<Point> = points[1..].iter().map(|p| p.sub(p0)).collect();
    let m = dirs.len();
    // Gram system: 2 G lambda = (|d_i|^2), center = p0 + sum lambda_i d_i.
    let gram: Vec<Vec<Scalar>> = (0..m)
        .map(|i| (0..m).map(|j| rat(2) * dirs[i].dot(&dirs[j])).collect())
        .collect();
    let rhs: Vec<Scalar> = dirs.iter().map(|d| d.norm2()).collect();
    // Affine independence makes the Gram matrix invertible.
    let lambda = solve_linear(&gram, &rhs)?;
    let mut c = p0.clone();
    for (l, d) in lambda.iter().zip(&dirs) {
        c = c.add(&d.scale(l));
    }
    let r2 = c.sub(p0).norm2();
    // Verify: inconsistent (degenerate) systems can slip through solve.
    for p in points {
        if c.sub(p).norm2() != r2 {
            return None;
        }
    }
    Some((c, r2))
}

/// Euclidean projection of c onto the simplex conv(S): the minimizing face's
/// affine projection, found by exhausting faces (|S| <= n+1 keeps this tiny).
pub fn project_to_simplex(c: &Point, s: &[Point]) -> Point {
    let m = s.len();
    let mut best: Option<(Scalar, Point)> = None;
    for mask in 1u64..(1 << m) {
        let face: Vec<Point> = (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| s[i].clone())
            .collect();
        let p = project_to_affine(c, &face);
        if in_hull(&p, &face).is_none() {
            continue;
        }
        let d2 = p.sub(c).norm2();
        if best.as_ref().map_or(true, |(bd, _)| d2 < *bd) {
            best = Some((d2, p));
        }
    }
    best.expect("a vertex face is always feasible").1
}

/// Orthogonal projection of c onto the affine hull of the given points.
fn project_to_affine(c: &Point, pts: &[Point]) -> Point {
    let p0 = &pts[0];
    if pts.len() == 1 {
        return p0.clone();
    }
    let dirs: Vec<Point> = pts[1..].iter().map(|p| p.sub(p0)).collect();
    let m = dirs.len();
    let gram: Vec<Vec<Scalar>> = (0..m)
        .map(|i| (0..m).map(|j| dirs[i].dot(&dirs[j])).collect())
        .collect();
    let diff = c.sub(p0);
    let rhs: Vec<Scalar> = dirs.iter().map(|d| d.dot(&diff)).collect();
    let Some(lambda) = solve_linear(&gram, &rhs) else {
        return p0.clone(); // degenerate frame; any hull point will do
    };
    let mut p = p0.clone();
    for (l, d) in lambda.iter().zip(&dirs) {
        p = p.add(&d.scale(l));
    }
    p
}

/// v_A(x)^2, exact: minimize sum p_i |a_i|^2 - |x|^2 over convex weights
/// reproducing x. None when x is outside conv(A). Also returns the optimal
/// combination.
pub fn v_point_sq_with_witness(
    a: &PointSet,
    x: &Point,
) -> Option<(Scalar, ConvexCombination)> {
    let k = a.len();
    let obj: Vec<Scalar> = a.points.iter().map(|p| p.norm2()).collect();
    let mut lp = LinearProgram::minimize(obj);
    for j in 0..a.dim {
        let row: Vec<Scalar> = a.points.iter().map(|p| p.0[j].clone()).collect();
        lp.constrain(row, Rel::Eq, x.0[j].clone());
    }
    lp.constrain(vec![rat(1); k], Rel::Eq, rat(1));
    let (w, value) = solve(&lp).optimal()?;
    let mut pts = Vec::new();
    let mut ws = Vec::new();
    for (p, wi) in a.points.iter().zip(w) {
        if wi.is_positive() {
            pts.push(p.clone());
            ws.push(wi);
        }
    }
    Some((value - x.norm2(), ConvexCombination::new(pts, ws)))
}

pub fn v_point_sq(a: &PointSet, x: &Point) -> Option<Scalar> {
    v_point_sq_with_witness(a, x).map(|(v, _)| v)
}

/// w_A(x): like v but with linear costs |a_i - x|. The Euclidean distances
/// are irrational; rational stand-ins accurate to 1e-14 keep the LP exact
/// and the result within that accuracy.
pub fn w_point(a: &PointSet, x: &Point) -> Option<f64> {
    let tol = ratio(1, 100_000_000_000_000);
    let obj: Vec<Scalar> = a
        .points
        .iter()
        .map(|p| sqrt_approx(&p.sub(x).norm2(), &tol))
        .collect();
    let k = a.len();
    let mut lp = LinearProgram::minimize(obj);
    for j in 0..a.dim {
        let row: Vec<Scalar> = a.points.iter().map(|p| p.0[j].clone()).collect();
        lp.constrain(row, Rel::Eq, x.0[j].clone());
    }
    lp.constrain(vec![rat(1); k], Rel::Eq, rat(1));
    let (_, value) = solve(&lp).optimal()?;
    Some(to_f64(&value))
}

/// d_A(x)^2 = squared distance from x to the nearest point of A, exact.
pub fn d_point_sq(a: &PointSet, x: &Point) -> Scalar {
    a.points
        .iter()
        .map(|p| p.sub(x).norm2())
        .min()
        .expect("nonempty set")
}

/// Membership in A_x: a is visible from x in the sense that the segment from
/// a through x extends strictly beyond x inside conv(A). Decided by the LP
/// max t s.t. x + t (x - a) in conv(A).
fn in_a_x(a: &PointSet, x: &Point, p: &Point) -> bool {
    if p == x {
        return true;
    }
    let dir = x.sub(p);
    let k = a.len();
    // Variables: weights q (k), then t; maximize t.
    let mut obj = vec![Scalar::zero(); k + 1];
    obj[k] = rat(1);
    let mut lp = LinearProgram::maximize(obj);
    for j in 0..a.dim {
        let mut row: Vec<Scalar> = a.points.iter().map(|q| q.0[j].clone()).collect();
        row.push(-dir.0[j].clone());
        lp.constrain(row, Rel::Eq, x.0[j].clone());
    }
    let mut row = vec![rat(1); k];
    row.push(Scalar::zero());
    lp.constrain(row, Rel::Eq, rat(1));
    // Keep the LP bounded; only positivity of the optimum matters.
    let mut cap = vec![Scalar::zero(); k];
    cap.push(rat(1));
    lp.constrain(cap, Rel::Le, rat(1));
    match solve(&lp).optimal() {
        Some((_, t)) => t.is_positive(),
        None => false,
    }
}

/// rho_A(x)^2 = squared distance from x to the nearest point of A_x; None
/// when A_x is empty (x outside conv(A)).
pub fn rho_point_sq(a: &PointSet, x: &Point) -> Option<Scalar> {
    a.points
        .iter()
        .filter(|p| in_a_x(a, x, p))
        .map(|p| p.sub(x).norm2())
        .min()
}

/// The candidate maximizers of v_A: projections of circumcenters of all
/// affinely independent subsets onto their simplices. The true maximizer is
/// always among them.
pub fn v_candidates(a: &PointSet) -> Vec<(Vec<usize>, Point)> {
    let n = a.dim;
    let max_m = (n + 1).min(a.len());
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() >= 2 {
            let pts: Vec<Point> = cur.iter().map(|&i| a.points[i].clone()).collect();
            let rows: Vec<Vec<Scalar>> = pts[1..].iter().map(|p| p.sub(&pts[0]).0).collect();
            if rank(&rows) == pts.len() - 1 {
                if let Some((c, _)) = circumcenter(&pts) {
                    out.push((cur.clone(), project_to_simplex(&c, &pts)));
                }
            } else {
                continue; // affinely dependent; supersets are too
            }
        }
        if cur.len() < max_m {
            for i in start..a.len() {
                let mut next = cur.clone();
                next.push(i);
                stack.push((i + 1, next));
            }
        }
    }
    out
}

pub struct VResult {
    pub measure: MeasureResult,
    pub maximizer: Point,
    pub certificate: Option<EmptySphereSimplex>,
    /// True when the subset enumeration was exhaustive.
    pub exact: bool,
}

/// v(A) = sup over conv(A) of v_A, squared value exact. `budget` caps the
/// number of enumerated subsets; beyond it the result degrades to a sampled
/// lower bound flagged non-exact.
pub fn effective_stddev(a: &PointSet, budget: usize) -> VResult {
    let n = a.dim;
    let max_m = (n + 1).min(a.len());
    // Subset count: sum of binomials.
    let mut count: u128 = 0;
    for m in 2..=max_m {
        let mut b: u128 = 1;
        for j in 0..m {
            b = b.saturating_mul((a.len() - j) as u128) / (j as u128 + 1);
        }
        count = count.saturating_add(b);
    }
    let exhaustive = count <= budget as u128;
    let mut best_sq = Scalar::zero();
    let mut best_x = a.points[0].clone();
    let mut seen = 0usize;
    for (_, x) in v_candidates(a) {
        if !exhaustive && seen >= budget {
            break;
        }
        seen += 1;
        if let Some(v2) = v_point_sq(a, &x) {
            if v2 > best_sq {
                best_sq = v2;
                best_x = x;
            }
        }
    }
    let certificate = build_certificate(a, &best_x);
    let mut measure = MeasureResult::from_sq(
        best_sq.clone(),
        format!(
            "maximizer {:?}; v^2 = {}",
            best_x,
            crate::scalar::format_scalar(&best_sq)
        ),
    );
    if !exhaustive {
        measure.lower = measure.value;
        measure.upper = f64::INFINITY;
        measure.exact = None;
        measure.exact_sq = None;
        measure.certificate = format!("sampled lower bound ({budget} subsets); {}", measure.certificate);
    }
    VResult {
        measure,
        maximizer: best_x,
        certificate,
        exact: exhaustive,
    }
}

/// Reconstructs the empty-sphere simplex certificate at the maximizer: the
/// support of the optimal measure, reduced to affine independence without
/// raising its energy, lies on a sphere about its circumcenter that is empty
/// within its affine hull.
fn build_certificate(a: &PointSet, x: &Point) -> Option<EmptySphereSimplex> {
    let (_, witness) = v_point_sq_with_witness(a, x)?;
    let reduced = caratheodory_reduce_quadratic(&witness);
    let (c, r2) = circumcenter(&reduced.points)?;
    // Verify the empty-sphere property over A restricted to aff(S).
    let p0 = &reduced.points[0];
    let dirs: Vec<Point> = reduced.points[1..].iter().map(|p| p.sub(p0)).collect();
    let base_rank = dirs.len();
    for p in &a.points {
        let mut rows: Vec<Vec<Scalar>> = dirs.iter().map(|d| d.0.clone()).collect();
        rows.push(p.sub(p0).0);
        if rank(&rows) != base_rank {
            continue; // p outside aff(S)
        }
        if p.sub(&c).norm2() < r2 {
            return None; // not an empty sphere; certificate unavailable
        }
    }
    let indices = reduced
        .points
        .iter()
        .map(|p| a.points.iter().position(|q| q == p).expect("support point in A"))
        .collect();
    Some(EmptySphereSimplex {
        indices,
        circumcenter: c,
        circumradius2: r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn two_point_set_v_half() {
        let a = PointSet::from_i64(1, &[&[0], &[1]]);
        let r = effective_stddev(&a, 10_000);
        assert_eq!(r.measure.exact.clone().unwrap(), ratio(1, 2));
        assert_eq!(r.maximizer, Point::new(vec![ratio(1, 2)]));
        let cert = r.certificate.unwrap();
        assert_eq!(cert.circumradius2, ratio(1, 4));
        assert_eq!(cert.indices.len(), 2);
    }

    #[test]
    fn pointwise_chain_on_triangle() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let x = Point::new(vec![ratio(1, 2), ratio(1, 2)]);
        let d2 = d_point_sq(&a, &x);
        let rho2 = rho_point_sq(&a, &x).unwrap();
        let w = w_point(&a, &x).unwrap();
        let v2 = v_point_sq(&a, &x).unwrap();
        let d = to_f64(&d2).sqrt();
        let rho = to_f64(&rho2).sqrt();
        let v = to_f64(&v2).sqrt();
        assert!(d <= rho + 1e-9);
        assert!(rho <= w + 1e-9);
        assert!(w <= v + 1e-9);
    }

    #[test]
    fn equilateralish_triangle_v_is_circumradius() {
        // Circumcenter inside: v = circumradius, attained at the center.
        let a = PointSet::from_i64(2, &[&[0, 0], &[4, 0], &[2, 3]]);
        let (c, r2) = circumcenter(&a.points).unwrap();
        let r = effective_stddev(&a, 10_000);
        assert_eq!(r.measure.exact_sq.clone().unwrap(), r2);
        assert_eq!(r.maximizer, c);
    }

    #[test]
    fn obtuse_triangle_maximizer_on_edge() {
        // Very flat triangle: circumcenter far outside; the maximizer is the
        // midpoint of the long edge and v is half its length.
        let a = PointSet::from_i64(2, &[&[0, 0], &[10, 0], &[5, 1]]);
        let r = effective_stddev(&a, 10_000);
        assert_eq!(r.measure.exact.clone().unwrap(), rat(5));
        assert_eq!(r.maximizer, Point::from_i64(&[5, 0]));
    }

    #[test]
    fn rho_outside_hull_is_none() {
        let a = PointSet::from_i64(1, &[&[0], &[1]]);
        assert!(rho_point_sq(&a, &Point::from_i64(&[5])).is_none());
        assert!(rho_point_sq(&a, &Point::new(vec![ratio(1, 2)])).is_some());
    }

    #[test]
    fn square_v_is_half_diagonal() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let r = effective_stddev(&a, 10_000);
        assert_eq!(r.measure.exact_sq.clone().unwrap(), rat(2));
        assert_eq!(r.maximizer, Point::from_i64(&[1, 1]));
    }

    #[test]
    fn budget_flag_degrades_gracefully() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let r = effective_stddev(&a, 2);
        assert!(!r.exact);
        assert!(r.measure.upper.is_infinite());
        assert!(r.measure.lower >= 0.0);
    }
}
