//! Convex hulls with exact predicates: vertex extraction in any dimension
//! via LP membership, facet enumeration and triangulation in dimension <= 6.

use crate::lp::in_hull;
use crate::point::{affine_dim, kernel_basis, rank, solve_linear, Point};
use crate::scalar::{rat, Scalar};
use num_traits::{Signed, Zero};
use std::collections::HashSet;

/// Half-space <normal, x> <= offset supporting the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Point,
    pub offset: Scalar,
}

/// V-representation convex body. Facets and the triangulation are populated
/// only for full-dimensional bodies in ambient dimension <= 6; vertex-only
/// hulls work in any dimension.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: Vec<Facet>,
    /// Vertex-index simplices with disjoint interiors covering the body.
    pub triangulation: Vec<Vec<usize>>,
    pub affine_dim: usize,
}

pub const MAX_FACET_DIM: usize = 6;

/// Minimal vertex set: p survives iff it is not in the hull of the others.
pub fn extreme_points(points: &[Point]) -> Vec<Point> {
    let mut dedup: Vec<Point> = Vec::new();
    for p in points {
        if !dedup.contains(p) {
            dedup.push(p.clone());
        }
    }
    if dedup.len() <= 1 {
        return dedup;
    }
    let mut keep = Vec::new();
    for (i, p) in dedup.iter().enumerate() {
        let others: Vec<Point> = dedup
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if in_hull(p, &others).is_none() {
            keep.push(p.clone());
        }
    }
    keep.sort();
    keep
}

fn canonical_facet(mut normal: Point, mut offset: Scalar) -> Facet {
    // Scale so the sum of |normal| entries is 1; sign is fixed by the
    // inequality direction, so this is a canonical form for deduplication.
    let scale: Scalar = normal.0.iter().map(|c| c.abs()).sum();
    if !scale.is_zero() {
        normal = Point::new(normal.0.iter().map(|c| c / &scale).collect());
        offset = offset / scale;
    }
    Facet { normal, offset }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Supporting hyperplanes of a full-dimensional vertex set, by brute force
/// over dim-subsets spanning a hyperplane. Exact; adequate at desk scale.
fn enumerate_facets(vertices: &[Point], dim: usize) -> Vec<Facet> {
    if dim == 1 {
        let max = vertices.iter().map(|v| v.0[0].clone()).max().unwrap();
        let min = vertices.iter().map(|v| v.0[0].clone()).min().unwrap();
        return vec![
            Facet {
                normal: Point::from_i64(&[1]),
                offset: max,
            },
            Facet {
                normal: Point::from_i64(&[-1]),
                offset: -min,
            },
        ];
    }
    let mut seen: HashSet<String> = HashSet::new();
    let mut facets = Vec::new();
    for idx in subsets(vertices.len(), dim) {
        let pts: Vec<Point> = idx.iter().map(|&i| vertices[i].clone()).collect();
        let rows: Vec<Vec<Scalar>> = pts[1..].iter().map(|p| p.sub(&pts[0]).0).collect();
        if rank(&rows) != dim - 1 {
            continue;
        }
        let normal = Point::new(kernel_basis(&rows).remove(0));
        let offset = normal.dot(&pts[0]);
        let mut pos = false;
        let mut neg = false;
        for v in vertices {
            let s = normal.dot(v) - &offset;
            if s.is_positive() {
                pos = true;
            } else if s.is_negative() {
                neg = true;
            }
            if pos && neg {
                break;
            }
        }
        let facet = if !pos {
            canonical_facet(normal, offset)
        } else if !neg {
            canonical_facet(Point::new(normal.0.iter().map(|c| -c).collect()), -offset)
        } else {
            continue;
        };
        let key = format!("{:?}|{}", facet.normal, crate::scalar::format_scalar(&facet.offset));
        if seen.insert(key) {
            facets.push(facet);
        }
    }
    facets
}

/// Affine coordinates of `points` relative to a max-rank frame chosen from
/// them; output lives in R^{affine_dim}.
pub fn to_affine_coords(points: &[Point], adim: usize) -> Vec<Point> {
    let origin = &points[0];
    // Greedily pick adim direction vectors of full rank.
    let mut basis: Vec<Point> = Vec::new();
    for p in points.iter().skip(1) {
        if basis.len() == adim {
            break;
        }
        let mut cand: Vec<Vec<Scalar>> = basis.iter().map(|b| b.0.clone()).collect();
        cand.push(p.sub(origin).0);
        if rank(&cand) == basis.len() + 1 {
            basis.push(p.sub(origin));
        }
    }
    assert_eq!(basis.len(), adim, "points do not span the claimed dimension");
    let n = origin.dim();
    // Columns of M are the basis vectors; solve M t = p - origin.
    let m: Vec<Vec<Scalar>> = (0..n)
        .map(|j| basis.iter().map(|b| b.0[j].clone()).collect())
        .collect();
    points
        .iter()
        .map(|p| {
            let t = solve_linear(&m, &p.sub(origin).0)
                .expect("point outside the affine hull of the frame");
            Point::new(t)
        })
        .collect()
}

/// Triangulates a full-dimensional convex-position point set in R^m by
/// coning an apex over the facets that do not contain it.
fn triangulate_full(points: &[Point]) -> Vec<Vec<usize>> {
    let m = points[0].dim();
    if m == 0 || points.len() < m + 1 {
        return Vec::new();
    }
    if points.len() == m + 1 {
        return vec![(0..points.len()).collect()];
    }
    let facets = enumerate_facets(points, m);
    let apex = 0usize;
    let mut out = Vec::new();
    for f in &facets {
        if (f.normal.dot(&points[apex]) - &f.offset).is_zero() {
            continue;
        }
        let on: Vec<usize> = (0..points.len())
            .filter(|&i| (f.normal.dot(&points[i]) - &f.offset).is_zero())
            .collect();
        let fpts: Vec<Point> = on.iter().map(|&i| points[i].clone()).collect();
        if m == 1 {
            // A facet of a segment is a single point.
            out.push(vec![apex, on[0]]);
            continue;
        }
        let flat = to_affine_coords(&fpts, m - 1);
        for simplex in triangulate_full(&flat) {
            let mut s: Vec<usize> = simplex.into_iter().map(|i| on[i]).collect();
            s.push(apex);
            out.push(s);
        }
    }
    out
}

pub fn convex_hull(dim: usize, points: &[Point]) -> Polytope {
    let vertices = extreme_points(points);
    let adim = affine_dim(&vertices);
    let (facets, triangulation) = if adim == dim && dim <= MAX_FACET_DIM {
        let facets = enumerate_facets(&vertices, dim);
        let triangulation = triangulate_full(&vertices);
        (facets, triangulation)
    } else {
        (Vec::new(), Vec::new())
    };
    Polytope {
        dim,
        vertices,
        facets,
        triangulation,
        affine_dim: adim,
    }
}

impl Polytope {
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// Exact membership; uses facets when available, LP otherwise.
    pub fn contains(&self, x: &Point) -> bool {
        if !self.facets.is_empty() {
            self.facets
                .iter()
                .all(|f| !(f.normal.dot(x) - &f.offset).is_positive())
        } else {
            in_hull(x, &self.vertices).is_some()
        }
    }

    /// Exact volume from the triangulation; 0 for degenerate bodies.
    pub fn volume(&self) -> Scalar {
        if !self.is_full_dimensional() || self.triangulation.is_empty() {
            return Scalar::zero();
        }
        let n = self.dim;
        let nfact: Scalar = (1..=n as i64).map(rat).product();
        let mut total = Scalar::zero();
        for simplex in &self.triangulation {
            let base = &self.vertices[simplex[0]];
            let m: Vec<Vec<Scalar>> = simplex[1..]
                .iter()
                .map(|&i| self.vertices[i].sub(base).0)
                .collect();
            total += crate::point::determinant(&m).abs();
        }
        total / nfact
    }

    pub fn translate(&self, x: &Point) -> Polytope {
        let vertices: Vec<Point> = self.vertices.iter().map(|v| v.add(x)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset + f.normal.dot(x),
            })
            .collect();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            triangulation: self.triangulation.clone(),
            affine_dim: self.affine_dim,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polytope {
        assert!(s.is_positive(), "scale factor must be positive");
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: &f.offset * s,
                })
                .collect(),
            triangulation: self.triangulation.clone(),
            affine_dim: self.affine_dim,
        }
    }

    /// Hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut sums = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.add(b));
            }
        }
        convex_hull(self.dim, &sums)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn square_with_center() {
        let pts = [
            Point::from_i64(&[0, 0]),
            Point::from_i64(&[1, 0]),
            Point::from_i64(&[0, 1]),
            Point::from_i64(&[1, 1]),
            Point::new(vec![ratio(1, 2), ratio(1, 2)]),
        ];
        let p = convex_hull(2, &pts);
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets.len(), 4);
        assert_eq!(p.volume(), rat(1));
        assert!(p.contains(&Point::new(vec![ratio(1, 2), ratio(1, 2)])));
        assert!(!p.contains(&Point::from_i64(&[2, 0])));
    }

    #[test]
    fn triangle_volume_half() {
        let pts = [
            Point::from_i64(&[0, 0]),
            Point::from_i64(&[1, 0]),
            Point::from_i64(&[0, 1]),
        ];
        let p = convex_hull(2, &pts);
        assert_eq!(p.volume(), ratio(1, 2));
    }

    #[test]
    fn degenerate_segment_in_plane() {
        let pts = [
            Point::from_i64(&[0, 0]),
            Point::from_i64(&[1, 1]),
            Point::from_i64(&[2, 2]),
        ];
        let p = convex_hull(2, &pts);
        assert_eq!(p.affine_dim, 1);
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.volume(), rat(0));
    }

    #[test]
    fn cube_in_r3() {
        let mut pts = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    pts.push(Point::from_i64(&[x, y, z]));
                }
            }
        }
        let p = convex_hull(3, &pts);
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.volume(), rat(1));
    }

    #[test]
    fn simplex_sum_is_scaled_simplex() {
        let tri = convex_hull(
            2,
            &[
                Point::from_i64(&[0, 0]),
                Point::from_i64(&[1, 0]),
                Point::from_i64(&[0, 1]),
            ],
        );
        let s = tri.minkowski_sum(&tri);
        assert_eq!(s.volume(), rat(2)); // (2T) has 4x the area of T
        assert_eq!(s.vertices.len(), 3);
    }

    #[test]
    fn translate_and_scale_volume_laws() {
        let tri = convex_hull(
            2,
            &[
                Point::from_i64(&[0, 0]),
                Point::from_i64(&[2, 0]),
                Point::from_i64(&[0, 2]),
            ],
        );
        let t = tri.translate(&Point::from_i64(&[5, -3]));
        assert_eq!(t.volume(), tri.volume());
        let s = tri.scale(&ratio(3, 2));
        assert_eq!(s.volume(), ratio(9, 4) * tri.volume());
    }
}
