//! Exact 2-D convex polygon arithmetic: CCW ordering, shoelace areas,
//! half-plane clipping, and convex-set subtraction into convex pieces.

use crate::point::Point;
use crate::scalar::{rat, Scalar};
use num_traits::{Signed, Zero};

fn cross(o: &Point, a: &Point, b: &Point) -> Scalar {
    let ax = &a.0[0] - &o.0[0];
    let ay = &a.0[1] - &o.0[1];
    let bx = &b.0[0] - &o.0[0];
    let by = &b.0[1] - &o.0[1];
    ax * by - ay * bx
}

/// Orders convex-position points counterclockwise (Andrew monotone chain,
/// exact predicates). Collinear interior points are dropped.
pub fn polygon_ccw(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the signed area (positive for CCW).
pub fn signed_area2(poly: &[Point]) -> Scalar {
    let n = poly.len();
    if n < 3 {
        return Scalar::zero();
    }
    let mut s = Scalar::zero();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        s += &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
    }
    s
}

pub fn area(poly: &[Point]) -> Scalar {
    signed_area2(poly).abs() / rat(2)
}

/// Sutherland–Hodgman clip of a convex polygon to <normal, x> <= offset.
pub fn clip_halfplane(poly: &[Point], normal: &Point, offset: &Scalar) -> Vec<Point> {
    if poly.is_empty() {
        return Vec::new();
    }
    let side = |p: &Point| normal.dot(p) - offset;
    let mut out: Vec<Point> = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let sa = side(a);
        let sb = side(b);
        let a_in = !sa.is_positive();
        let b_in = !sb.is_positive();
        if a_in {
            out.push(a.clone());
        }
        if a_in != b_in {
            // Exact crossing point: a + t (b - a) with t = sa / (sa - sb).
            let t = &sa / (&sa - &sb);
            let cr = a.add(&b.sub(a).scale(&t));
            out.push(cr);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Subtracts a convex polygon T (given by CCW vertices) from each convex
/// piece, returning convex pieces covering piece \ interior(T). With facets
/// H_1..H_m of T, the difference is the disjoint union over i of
/// piece ∩ H_1 ∩ ... ∩ H_{i-1} ∩ (complement of H_i).
pub fn subtract_convex(pieces: Vec<Vec<Point>>, t: &[Point]) -> Vec<Vec<Point>> {
    if t.len() < 3 {
        return pieces; // T has no area; nothing to remove
    }
    // Facets of T as (normal, offset) with inside = <n,x> <= off.
    let m = t.len();
    let mut facets = Vec::with_capacity(m);
    for i in 0..m {
        let a = &t[i];
        let b = &t[(i + 1) % m];
        // Outward normal of a CCW edge is (dy, -dx).
        let normal = Point::new(vec![&b.0[1] - &a.0[1], &a.0[0] - &b.0[0]]);
        let offset = normal.dot(a);
        facets.push((normal, offset));
    }
    let mut out = Vec::new();
    for piece in pieces {
        let mut inside = piece;
        for (normal, offset) in &facets {
            if inside.len() < 3 {
                break;
            }
            // Part of the current region outside this facet survives.
            let flipped = Point::new(vec![-normal.0[0].clone(), -normal.0[1].clone()]);
            let outside = clip_halfplane(&inside, &flipped, &-offset.clone());
            if area(&outside).is_positive() {
                out.push(outside);
            }
            inside = clip_halfplane(&inside, normal, offset);
        }
        // The final `inside` lies within T and is discarded.
    }
    out
}

/// Total area of a list of pairwise interior-disjoint convex pieces.
pub fn pieces_area(pieces: &[Vec<Point>]) -> Scalar {
    pieces.iter().map(|p| area(p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn square(x0: i64, y0: i64, s: i64) -> Vec<Point> {
        polygon_ccw(&[
            Point::from_i64(&[x0, y0]),
            Point::from_i64(&[x0 + s, y0]),
            Point::from_i64(&[x0 + s, y0 + s]),
            Point::from_i64(&[x0, y0 + s]),
        ])
    }

    #[test]
    fn ccw_and_area() {
        let sq = square(0, 0, 2);
        assert_eq!(sq.len(), 4);
        assert!(signed_area2(&sq).is_positive());
        assert_eq!(area(&sq), rat(4));
    }

    #[test]
    fn clip_square_in_half() {
        let sq = square(0, 0, 2);
        let half = clip_halfplane(&sq, &Point::from_i64(&[1, 0]), &rat(1));
        assert_eq!(area(&half), rat(2));
    }

    #[test]
    fn subtract_disjoint_removes_nothing() {
        let sq = square(0, 0, 1);
        let t = square(5, 5, 1);
        let rest = subtract_convex(vec![sq.clone()], &t);
        assert_eq!(pieces_area(&rest), rat(1));
    }

    #[test]
    fn subtract_contained_leaves_ring() {
        let sq = square(0, 0, 3);
        let hole = square(1, 1, 1);
        let rest = subtract_convex(vec![sq], &hole);
        assert_eq!(pieces_area(&rest), rat(8));
    }

    #[test]
    fn subtract_overlapping_half() {
        let sq = square(0, 0, 2);
        let t = square(1, 0, 2);
        let rest = subtract_convex(vec![sq], &t);
        assert_eq!(pieces_area(&rest), rat(2));
    }

    #[test]
    fn full_cover_leaves_nothing() {
        let sq = square(0, 0, 1);
        let big = square(-1, -1, 4);
        let rest = subtract_convex(vec![sq], &big);
        assert!(pieces_area(&rest).is_zero());
        let _ = ratio(1, 2);
    }
}
