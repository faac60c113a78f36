//! Schneider's non-convexity index c(A) = inf{λ ≥ 0 : A + λ conv(A) is
//! convex}. Exact in dimension 1, exact-predicate bisection in dimension 2
//! (A + λ conv(A) is convex iff (1+λ)conv(A) is covered by the translates
//! a + λ conv(A)), and certified bounds in higher dimensions.

use crate::clip::{pieces_area, polygon_ccw, subtract_convex};
use crate::lp::{solve, LinearProgram, Rel};
use crate::measures::MeasureResult;
use crate::point::{affine_dim, Point};
use crate::scalar::{format_scalar, rat, to_f64, Scalar};
use crate::sets::PointSet;
use num_traits::Zero;

/// c for a 1-D set: largest gap divided by the total hull length.
fn schneider_1d_values(xs: &mut Vec<Scalar>) -> Scalar {
    xs.sort();
    let len = xs.last().unwrap() - xs.first().unwrap();
    if len.is_zero() {
        return Scalar::zero();
    }
    let mut gap = Scalar::zero();
    for w in xs.windows(2) {
        let g = &w[1] - &w[0];
        if g > gap {
            gap = g;
        }
    }
    gap / len
}

/// Exact coverage predicate: (1+λ)conv(A) ⊆ ∪_{a∈A} (a + λ conv(A)).
pub fn covered_at(a: &PointSet, hull_poly: &[Point], lambda: &Scalar) -> bool {
    let one_plus = rat(1) + lambda;
    let big: Vec<Point> = hull_poly.iter().map(|v| v.scale(&one_plus)).collect();
    let small: Vec<Point> = hull_poly.iter().map(|v| v.scale(lambda)).collect();
    let mut pieces = vec![big];
    for p in &a.points {
        let translate: Vec<Point> = small.iter().map(|v| v.add(p)).collect();
        pieces = subtract_convex(pieces, &polygon_ccw(&translate));
        if pieces.is_empty() {
            return true;
        }
    }
    pieces_area(&pieces).is_zero()
}

/// Lower bound on c from the gauge representation
/// c(A) = sup_x inf_a ||x - a||_{conv(A) - x}, evaluated at candidate x.
pub fn gauge_lower_bound(a: &PointSet, candidates: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for x in candidates {
        let mut inner = f64::INFINITY;
        for p in &a.points {
            let t = gauge_norm_kx(a, x, p);
            if t < inner {
                inner = t;
            }
        }
        if inner.is_finite() && inner > best {
            best = inner;
        }
    }
    best
}

/// ||x - a||_{K_x} with K_x = conv(A) - x, as the exact LP
/// min Σλ_i s.t. Σλ_i v_i - (Σλ_i) x = x - a, λ ≥ 0.
fn gauge_norm_kx(a: &PointSet, x: &Point, at: &Point) -> f64 {
    let k = a.len();
    let target = x.sub(at);
    let mut lp = LinearProgram::minimize(vec![rat(1); k]);
    for j in 0..a.dim {
        let row: Vec<Scalar> = a
            .points
            .iter()
            .map(|v| &v.0[j] - &x.0[j])
            .collect();
        lp.constrain(row, Rel::Eq, target.0[j].clone());
    }
    match solve(&lp).optimal() {
        Some((_, t)) => to_f64(&t),
        None => f64::INFINITY,
    }
}

pub fn schneider_c(a: &PointSet, tol: f64) -> MeasureResult {
    if a.len() == 1 {
        return MeasureResult::exact(Scalar::zero(), "singleton is convex");
    }
    let adim = affine_dim(&a.points);
    if adim == 1 {
        // Affine invariance: project onto the carrier line exactly.
        let p0 = &a.points[0];
        let dir = a
            .points
            .iter()
            .map(|p| p.sub(p0))
            .find(|d| !d.norm2().is_zero())
            .expect("at least two distinct points");
        let d2 = dir.norm2();
        let mut xs: Vec<Scalar> = a
            .points
            .iter()
            .map(|p| p.sub(p0).dot(&dir) / &d2)
            .collect();
        let c = schneider_1d_values(&mut xs);
        return MeasureResult::exact(c, "1-D identity c = largest gap / hull length");
    }
    if a.dim == 2 && adim == 2 {
        let hull_poly = polygon_ccw(&a.hull().vertices);
        let mut lo = Scalar::zero();
        let mut hi = rat(2);
        if !covered_at(a, &hull_poly, &hi) {
            // c <= n is a theorem; treat failure as a hard error.
            panic!("coverage must hold at lambda = n = 2");
        }
        if covered_at(a, &hull_poly, &lo) {
            return MeasureResult::exact(Scalar::zero(), "A is already convex");
        }
        while to_f64(&(&hi - &lo)) > tol {
            let mid = (&lo + &hi) / rat(2);
            if covered_at(a, &hull_poly, &mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return MeasureResult::bracket(
            to_f64(&lo),
            to_f64(&hi),
            format!(
                "bisection bracket [{}, {}]",
                format_scalar(&lo),
                format_scalar(&hi)
            ),
        );
    }
    // Dimension >= 3 (or 2-D sets degenerate in higher ambient space):
    // gauge-form lower bound at candidate points, trivial upper bound n.
    let candidates: Vec<Point> = match a.average_set(2, 100_000) {
        Ok(a2) => a2.points,
        Err(_) => a.points.clone(),
    };
    let lower = gauge_lower_bound(a, &candidates);
    let upper = adim as f64;
    MeasureResult::bracket(
        lower.min(upper),
        upper,
        "lower: gauge form on candidate points; upper: c <= n",
    )
}
