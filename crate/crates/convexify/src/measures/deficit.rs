//! Volume deficit: the volume of the hull minus the volume of the set.

use crate::hull::MAX_FACET_DIM;
use crate::measures::MeasureResult;
use crate::scalar::{format_scalar, Scalar};
use crate::sets::{BoxUnion, PointSet};
use num_traits::Zero;

/// A finite point set is Lebesgue-null, so its deficit is the hull volume.
/// Exact for dim <= 6 (or degenerate sets in any dimension, where it is 0).
pub fn volume_deficit_points(a: &PointSet) -> MeasureResult {
    let hull = a.hull();
    if hull.affine_dim < a.dim {
        return MeasureResult::exact(Scalar::zero(), "degenerate hull, volume 0");
    }
    if a.dim > MAX_FACET_DIM {
        return MeasureResult::bracket(
            0.0,
            f64::INFINITY,
            format!("exact hull volume unavailable in dim {}", a.dim),
        );
    }
    let v = hull.volume();
    MeasureResult::exact(v.clone(), format!("hull volume {}", format_scalar(&v)))
}

/// Deficit of a box union: hull volume of its corner points minus the exact
/// union volume. For dim > 6 the hull volume is available exactly only when
/// the hull is the bounding box (certified by corner membership).
pub fn volume_deficit_boxes(u: &BoxUnion) -> MeasureResult {
    let union_vol = u.volume();
    let corners = u.corner_points();
    if u.dim <= MAX_FACET_DIM {
        let hull = corners.hull();
        if hull.affine_dim < u.dim {
            return MeasureResult::exact(Scalar::zero(), "degenerate hull, volume 0");
        }
        let d = hull.volume() - union_vol;
        return MeasureResult::exact(d.clone(), format!("deficit {}", format_scalar(&d)));
    }
    // High dimension: handle the case hull = bounding box exactly.
    if let Some(bbox_vol) = bounding_box_hull_volume(u, &corners) {
        let d = bbox_vol - union_vol;
        return MeasureResult::exact(
            d.clone(),
            format!("hull is the bounding box; deficit {}", format_scalar(&d)),
        );
    }
    MeasureResult::bracket(
        0.0,
        f64::INFINITY,
        format!("exact hull volume unavailable in dim {}", u.dim),
    )
}

/// When every bounding-box corner lies in the corner set, the hull is the
/// bounding box and its volume is a product of side lengths.
fn bounding_box_hull_volume(u: &BoxUnion, corners: &PointSet) -> Option<Scalar> {
    let n = u.dim;
    let mut lo = u.boxes[0].0.clone();
    let mut hi = u.boxes[0].1.clone();
    for (blo, bhi) in &u.boxes {
        for j in 0..n {
            if blo.0[j] < lo.0[j] {
                lo.0[j] = blo.0[j].clone();
            }
            if bhi.0[j] > hi.0[j] {
                hi.0[j] = bhi.0[j].clone();
            }
        }
    }
    if n <= 20 {
        for mask in 0..(1u64 << n) {
            let corner = crate::point::Point::new(
                (0..n)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            hi.0[j].clone()
                        } else {
                            lo.0[j].clone()
                        }
                    })
                    .collect(),
            );
            if !corners.points.contains(&corner) {
                return None;
            }
        }
        let mut vol = Scalar::zero() + crate::scalar::rat(1);
        for j in 0..n {
            vol *= &hi.0[j] - &lo.0[j];
        }
        return Some(vol);
    }
    None
}
