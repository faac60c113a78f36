//! The three compact-set carriers: finite point sets, unions of axis-aligned
//! boxes, and V-representation polytopes (see `hull`), plus gauges.

use crate::hull::{convex_hull, Facet, Polytope};
use crate::point::Point;
use crate::scalar::{rat, to_f64, Scalar};
use crate::Error;
use num_traits::{One, Signed, Zero};

/// Finite set of rational points; kept sorted and deduplicated so equality
/// is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(dim, p.dim()));
            }
        }
        points.sort();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn from_i64(dim: usize, coords: &[&[i64]]) -> Self {
        let points = coords.iter().map(|c| Point::from_i64(c)).collect();
        PointSet::new(dim, points).expect("bad literal point set")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn minkowski_sum(&self, other: &PointSet) -> Result<PointSet, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut sums = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                sums.push(a.add(b));
            }
        }
        PointSet::new(self.dim, sums)
    }

    /// The k-fold self-average A(k) = (1/k)(A + ... + A), exact.
    pub fn average_set(&self, k: usize, cap: usize) -> Result<PointSet, Error> {
        assert!(k >= 1, "k must be positive");
        // Upper bound on |A + ... + A|: multisets of size k from |A| points.
        let mut estimate = Scalar::one();
        let m = self.len() as i64;
        for j in 0..k as i64 {
            estimate = estimate * rat(m + j) / rat(j + 1);
        }
        if estimate > rat(cap as i64) {
            return Err(Error::CapExceeded {
                cap,
                estimate: crate::scalar::format_scalar(&estimate.floor()),
            });
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.minkowski_sum(self)?;
        }
        Ok(acc.scale(&(Scalar::one() / rat(k as i64))))
    }

    pub fn scale(&self, s: &Scalar) -> PointSet {
        let points = self.points.iter().map(|p| p.scale(s)).collect();
        PointSet::new(self.dim, points).expect("scaling preserves validity")
    }

    pub fn translate(&self, x: &Point) -> PointSet {
        let points = self.points.iter().map(|p| p.add(x)).collect();
        PointSet::new(self.dim, points).expect("translation preserves validity")
    }

    pub fn hull(&self) -> Polytope {
        convex_hull(self.dim, &self.points)
    }

    /// Max pairwise Euclidean distance, squared (exact).
    pub fn diam2(&self) -> Scalar {
        let mut best = Scalar::zero();
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                let d = a.sub(b).norm2();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    pub fn diam(&self) -> f64 {
        to_f64(&self.diam2()).sqrt()
    }
}

/// Finite union of axis-aligned boxes [lo, hi]; degenerate boxes allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxUnion {
    pub dim: usize,
    pub boxes: Vec<(Point, Point)>,
}

impl BoxUnion {
    pub fn new(dim: usize, mut boxes: Vec<(Point, Point)>) -> Result<Self, Error> {
        if boxes.is_empty() {
            return Err(Error::EmptySet);
        }
        for (lo, hi) in &boxes {
            if lo.dim() != dim || hi.dim() != dim {
                return Err(Error::DimensionMismatch(dim, lo.dim().max(hi.dim())));
            }
            if lo.0.iter().zip(&hi.0).any(|(l, h)| l > h) {
                return Err(Error::InvalidBox);
            }
        }
        boxes.sort();
        boxes.dedup();
        Ok(BoxUnion { dim, boxes })
    }

    pub fn interval(lo: Scalar, hi: Scalar) -> Self {
        BoxUnion::new(1, vec![(Point::new(vec![lo]), Point::new(vec![hi]))])
            .expect("bad interval literal")
    }

    pub fn minkowski_sum(&self, other: &BoxUnion) -> Result<BoxUnion, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut boxes = Vec::with_capacity(self.boxes.len() * other.boxes.len());
        for (alo, ahi) in &self.boxes {
            for (blo, bhi) in &other.boxes {
                boxes.push((alo.add(blo), ahi.add(bhi)));
            }
        }
        BoxUnion::new(self.dim, boxes)
    }

    /// A(k) for a box union: every k-fold sum of boxes is a box, and which
    /// boxes appear depends only on the multiset of choices.
    pub fn average_set(&self, k: usize) -> BoxUnion {
        assert!(k >= 1);
        let m = self.boxes.len();
        let inv_k = Scalar::one() / rat(k as i64);
        let mut boxes = Vec::new();
        // Enumerate multiplicity vectors c_1..c_m with sum k.
        fn rec(
            i: usize,
            remaining: usize,
            counts: &mut Vec<usize>,
            emit: &mut dyn FnMut(&[usize]),
        ) {
            if i + 1 == counts.len() {
                counts[i] = remaining;
                emit(counts);
                return;
            }
            for c in 0..=remaining {
                counts[i] = c;
                rec(i + 1, remaining - c, counts, emit);
            }
        }
        let mut counts = vec![0usize; m];
        rec(0, k, &mut counts, &mut |counts| {
            let mut lo = Point::zero(self.dim);
            let mut hi = Point::zero(self.dim);
            for (i, &c) in counts.iter().enumerate() {
                if c > 0 {
                    let f = rat(c as i64);
                    lo = lo.add(&self.boxes[i].0.scale(&f));
                    hi = hi.add(&self.boxes[i].1.scale(&f));
                }
            }
            boxes.push((lo.scale(&inv_k), hi.scale(&inv_k)));
        });
        BoxUnion::new(self.dim, boxes).expect("averaging preserves validity")
    }

    pub fn scale(&self, s: &Scalar) -> BoxUnion {
        assert!(s.is_positive());
        let boxes = self
            .boxes
            .iter()
            .map(|(lo, hi)| (lo.scale(s), hi.scale(s)))
            .collect();
        BoxUnion::new(self.dim, boxes).expect("scaling preserves validity")
    }

    pub fn translate(&self, x: &Point) -> BoxUnion {
        let boxes = self
            .boxes
            .iter()
            .map(|(lo, hi)| (lo.add(x), hi.add(x)))
            .collect();
        BoxUnion::new(self.dim, boxes).expect("translation preserves validity")
    }

    /// All box corners; spans the same convex hull as the union.
    pub fn corner_points(&self) -> PointSet {
        let mut pts = Vec::new();
        for (lo, hi) in &self.boxes {
            for mask in 0..(1u64 << self.dim) {
                let coords: Vec<Scalar> = (0..self.dim)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            hi.0[j].clone()
                        } else {
                            lo.0[j].clone()
                        }
                    })
                    .collect();
                pts.push(Point::new(coords));
            }
        }
        PointSet::new(self.dim, pts).expect("corners share the union's dim")
    }

    pub fn hull(&self) -> Polytope {
        self.corner_points().hull()
    }

    /// Exact volume of the union. Chooses between inclusion–exclusion
    /// (cheap for few boxes, any dimension) and a coordinate-compression
    /// sweep (cheap for many boxes in low dimension) by estimated cost.
    pub fn volume(&self) -> Scalar {
        let m = self.boxes.len();
        let ie_cost = if m < 60 { 1u128 << m } else { u128::MAX };
        let mut sweep_cells: u128 = 1;
        let axes: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| {
                let mut coords: Vec<Scalar> = self
                    .boxes
                    .iter()
                    .flat_map(|(lo, hi)| [lo.0[j].clone(), hi.0[j].clone()])
                    .collect();
                coords.sort();
                coords.dedup();
                coords
            })
            .collect();
        for a in &axes {
            sweep_cells = sweep_cells.saturating_mul((a.len() - 1).max(1) as u128);
        }
        let sweep_cost = sweep_cells.saturating_mul(m as u128);
        if ie_cost <= sweep_cost {
            self.volume_inclusion_exclusion()
        } else {
            self.volume_sweep(&axes)
        }
    }

    fn volume_inclusion_exclusion(&self) -> Scalar {
        let m = self.boxes.len();
        let mut total = Scalar::zero();
        for mask in 1u64..(1 << m) {
            let mut lo: Option<Point> = None;
            let mut hi: Option<Point> = None;
            for i in 0..m {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let (blo, bhi) = &self.boxes[i];
                lo = Some(match lo {
                    None => blo.clone(),
                    Some(l) => Point::new(
                        l.0.iter()
                            .zip(&blo.0)
                            .map(|(a, b)| a.max(b).clone())
                            .collect(),
                    ),
                });
                hi = Some(match hi {
                    None => bhi.clone(),
                    Some(h) => Point::new(
                        h.0.iter()
                            .zip(&bhi.0)
                            .map(|(a, b)| a.min(b).clone())
                            .collect(),
                    ),
                });
            }
            let (lo, hi) = (lo.unwrap(), hi.unwrap());
            let mut vol = Scalar::one();
            for (l, h) in lo.0.iter().zip(&hi.0) {
                if l >= h {
                    vol = Scalar::zero();
                    break;
                }
                vol *= h - l;
            }
            if vol.is_zero() {
                continue;
            }
            if mask.count_ones() % 2 == 1 {
                total += vol;
            } else {
                total -= vol;
            }
        }
        total
    }

    fn volume_sweep(&self, axes: &[Vec<Scalar>]) -> Scalar {
        // Every box boundary is a grid line, so each elementary cell is
        // either fully inside or fully outside each box.
        let dims: Vec<usize> = axes.iter().map(|a| a.len().saturating_sub(1)).collect();
        if dims.iter().any(|&d| d == 0) {
            return Scalar::zero();
        }
        let mut idx = vec![0usize; self.dim];
        let mut total = Scalar::zero();
        loop {
            let covered = self.boxes.iter().any(|(lo, hi)| {
                (0..self.dim).all(|j| {
                    lo.0[j] <= axes[j][idx[j]] && axes[j][idx[j] + 1] <= hi.0[j]
                })
            });
            if covered {
                let mut vol = Scalar::one();
                for j in 0..self.dim {
                    vol *= &axes[j][idx[j] + 1] - &axes[j][idx[j]];
                }
                total += vol;
            }
            // Odometer increment.
            let mut j = 0;
            loop {
                idx[j] += 1;
                if idx[j] < dims[j] {
                    break;
                }
                idx[j] = 0;
                j += 1;
                if j == self.dim {
                    return total;
                }
            }
        }
    }
}

/// Unit ball of a (possibly nonsymmetric) norm.
#[derive(Clone, Debug)]
pub enum Gauge {
    EuclideanBall(Scalar),
    PolytopeGauge(Polytope),
}

impl Gauge {
    pub fn unit_ball() -> Gauge {
        Gauge::EuclideanBall(Scalar::one())
    }

    /// l-infinity unit ball in R^n as a polytope gauge. Built directly from
    /// the known V- and H-representations; a generic hull computation over
    /// the 2^n cube corners would be far too slow for n near 6.
    pub fn linf_ball(n: usize) -> Gauge {
        let mut vertices = Vec::new();
        for mask in 0..(1u64 << n) {
            let coords: Vec<Scalar> = (0..n)
                .map(|j| if mask >> j & 1 == 1 { rat(1) } else { rat(-1) })
                .collect();
            vertices.push(Point::new(coords));
        }
        let mut facets = Vec::new();
        for j in 0..n {
            for s in [1i64, -1] {
                let mut c = vec![Scalar::zero(); n];
                c[j] = rat(s);
                facets.push(Facet { normal: Point::new(c), offset: Scalar::one() });
            }
        }
        Gauge::PolytopeGauge(Polytope {
            dim: n,
            vertices,
            facets,
            triangulation: Vec::new(),
            affine_dim: n,
        })
    }

    /// l1 unit ball (cross-polytope) in R^n, built directly from the known
    /// V- and H-representations (vertices ±e_j, facets s·x <= 1 over sign
    /// vectors s).
    pub fn l1_ball(n: usize) -> Gauge {
        let mut vertices = Vec::new();
        for j in 0..n {
            for s in [1i64, -1] {
                let mut c = vec![Scalar::zero(); n];
                c[j] = rat(s);
                vertices.push(Point::new(c));
            }
        }
        let mut facets = Vec::new();
        for mask in 0..(1u64 << n) {
            let coords: Vec<Scalar> = (0..n)
                .map(|j| if mask >> j & 1 == 1 { rat(1) } else { rat(-1) })
                .collect();
            facets.push(Facet { normal: Point::new(coords), offset: Scalar::one() });
        }
        Gauge::PolytopeGauge(Polytope {
            dim: n,
            vertices,
            facets,
            triangulation: Vec::new(),
            affine_dim: n,
        })
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Gauge::EuclideanBall(r) => {
                if r.is_positive() {
                    Ok(())
                } else {
                    Err(Error::InvalidGauge("ball radius must be positive".into()))
                }
            }
            Gauge::PolytopeGauge(p) => {
                if p.facets.is_empty() {
                    return Err(Error::InvalidGauge(
                        "polytope gauge needs facets (full-dimensional, dim <= 6)".into(),
                    ));
                }
                if p.facets.iter().all(|f| f.offset.is_positive()) {
                    Ok(())
                } else {
                    Err(Error::InvalidGauge("origin must be strictly inside".into()))
                }
            }
        }
    }

    /// Minkowski functional: least t with x in tK. Exact for polytope
    /// gauges; None for the Euclidean ball (irrational in general).
    pub fn norm_exact(&self, x: &Point) -> Option<Scalar> {
        match self {
            Gauge::EuclideanBall(_) => None,
            Gauge::PolytopeGauge(p) => {
                let mut best = Scalar::zero();
                for f in &p.facets {
                    let t = f.normal.dot(x) / &f.offset;
                    if t > best {
                        best = t;
                    }
                }
                Some(best)
            }
        }
    }

    pub fn norm(&self, x: &Point) -> f64 {
        match self {
            Gauge::EuclideanBall(r) => x.norm() / to_f64(r),
            Gauge::PolytopeGauge(_) => to_f64(&self.norm_exact(x).unwrap()),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Gauge::EuclideanBall(_) => true,
            Gauge::PolytopeGauge(p) => p
                .vertices
                .iter()
                .all(|v| p.contains(&v.scale(&rat(-1)))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn one_d_sumset() {
        let a = PointSet::from_i64(1, &[&[0], &[1]]);
        let s = a.minkowski_sum(&a).unwrap();
        assert_eq!(s, PointSet::from_i64(1, &[&[0], &[1], &[2]]));
    }

    #[test]
    fn square_corners_sum() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[1, 0]]);
        let b = PointSet::from_i64(2, &[&[0, 0], &[0, 1]]);
        let s = a.minkowski_sum(&b).unwrap();
        assert_eq!(
            s,
            PointSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
    }

    #[test]
    fn translation_preserves_cardinality() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[1, 2], &[3, 1]]);
        let t = a.translate(&Point::from_i64(&[7, -4]));
        assert_eq!(t.len(), a.len());
    }

    #[test]
    fn average_of_two_point_set() {
        let a = PointSet::from_i64(1, &[&[0], &[1]]);
        let a4 = a.average_set(4, 1_000_000).unwrap();
        let expect: Vec<Point> = (0..=4)
            .map(|j| Point::new(vec![ratio(j, 4)]))
            .collect();
        assert_eq!(a4.points, expect);
    }

    #[test]
    fn average_singleton_fixed() {
        let a = PointSet::from_i64(3, &[&[2, -1, 5]]);
        assert_eq!(a.average_set(7, 100).unwrap(), a);
    }

    #[test]
    fn average_triangle_k2_midpoints() {
        let a = PointSet::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let a2 = a.average_set(2, 1000).unwrap();
        assert_eq!(a2.len(), 6);
    }

    #[test]
    fn cap_exceeded_reports_estimate() {
        let a = PointSet::from_i64(1, &[&[0], &[1], &[3], &[7]]);
        match a.average_set(30, 100) {
            Err(Error::CapExceeded { cap, .. }) => assert_eq!(cap, 100),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_squares_volume() {
        let u = BoxUnion::new(
            2,
            vec![
                (Point::from_i64(&[0, 0]), Point::from_i64(&[1, 1])),
                (
                    Point::new(vec![ratio(1, 2), ratio(1, 2)]),
                    Point::new(vec![ratio(3, 2), ratio(3, 2)]),
                ),
            ],
        )
        .unwrap();
        assert_eq!(u.volume(), ratio(7, 4));
        assert_eq!(u.volume_inclusion_exclusion(), ratio(7, 4));
    }

    #[test]
    fn counterexample_union_volume_r12() {
        // Two products of cubes in orthogonal 6-dim blocks, averaged:
        // volume 2*(2/3)^6*(1/3)^6 - (1/3)^12.
        let zeros = Point::zero(12);
        let mut hi1 = vec![ratio(2, 3); 6];
        hi1.extend(vec![ratio(1, 3); 6]);
        let mut hi2 = vec![ratio(1, 3); 6];
        hi2.extend(vec![ratio(2, 3); 6]);
        let u = BoxUnion::new(
            12,
            vec![
                (zeros.clone(), Point::new(hi1)),
                (zeros, Point::new(hi2)),
            ],
        )
        .unwrap();
        assert_eq!(u.volume(), ratio(127, 531441));
    }

    #[test]
    fn box_average_interval_union() {
        // {0} u [1,2] averaged with k=2: boxes {0}, [1/2,1], [1,2].
        let u = BoxUnion::new(
            1,
            vec![
                (Point::from_i64(&[0]), Point::from_i64(&[0])),
                (Point::from_i64(&[1]), Point::from_i64(&[2])),
            ],
        )
        .unwrap();
        let a2 = u.average_set(2);
        assert_eq!(a2.boxes.len(), 3);
        assert_eq!(a2.volume(), ratio(3, 2));
    }

    #[test]
    fn gauge_norms() {
        let k = Gauge::linf_ball(2);
        k.validate().unwrap();
        assert_eq!(k.norm_exact(&Point::from_i64(&[2, 1])).unwrap(), rat(2));
        let l1 = Gauge::l1_ball(2);
        assert_eq!(l1.norm_exact(&Point::from_i64(&[2, 1])).unwrap(), rat(3));
        let b = Gauge::unit_ball();
        let x = Point::from_i64(&[3, 4]);
        assert!((b.norm(&x) - 5.0).abs() < 1e-12);
        assert!(k.is_symmetric() && l1.is_symmetric() && b.is_symmetric());
    }
}
