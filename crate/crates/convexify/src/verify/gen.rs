//! Seeded random instance generators: uniform rational coordinates with
//! denominator <= 64, set sizes <= 8, dimensions <= 3 unless a statement
//! demands more. Every consumer records the seed in its report.

use super::FractionalPartition;
use crate::lp::{solve, LinearProgram, Rel};
use crate::point::Point;
use crate::scalar::{ratio, Scalar};
use crate::sets::{BoxUnion, PointSet};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform rational in [-4, 4] with denominator dividing 64.
pub fn rand_coord(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-256..=256), 64)
}

/// Uniform rational in [0, 4] with denominator dividing 64.
pub fn rand_coord_nonneg(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(0..=256), 64)
}

pub fn rand_point(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    Point::new((0..dim).map(|_| rand_coord(rng)).collect())
}

pub fn rand_point_set(rng: &mut ChaCha8Rng, dim: usize, max_size: usize) -> PointSet {
    let size = rng.gen_range(2..=max_size.max(2));
    let pts = (0..size).map(|_| rand_point(rng, dim)).collect();
    PointSet::new(dim, pts).expect("nonempty by construction")
}

/// Random axis-aligned box with positive side lengths.
pub fn rand_box(rng: &mut ChaCha8Rng, dim: usize) -> (Point, Point) {
    let lo = rand_point(rng, dim);
    let side: Vec<Scalar> = (0..dim)
        .map(|_| ratio(rng.gen_range(1..=128), 64))
        .collect();
    let hi = lo.add(&Point::new(side));
    (lo, hi)
}

pub fn rand_box_union(rng: &mut ChaCha8Rng, dim: usize, max_boxes: usize) -> BoxUnion {
    let m = rng.gen_range(1..=max_boxes.max(1));
    let boxes = (0..m).map(|_| rand_box(rng, dim)).collect();
    BoxUnion::new(dim, boxes).expect("valid boxes by construction")
}

/// Random symmetric PSD matrix M = AᵀA with rational entries.
pub fn rand_psd(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Scalar>> {
    let a: Vec<Vec<Scalar>> = (0..n)
        .map(|_| (0..n).map(|_| ratio(rng.gen_range(-16..=16), 8)).collect())
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| &a[k][i] * &a[k][j])
                        .fold(Scalar::zero(), |acc, v| acc + v)
                })
                .collect()
        })
        .collect()
}

/// Random fractional partition via a feasibility LP: candidate subsets are
/// the singletons (guaranteeing feasibility) plus random subsets; a random
/// objective picks a vertex of the feasible polytope.
pub fn rand_fractional_partition(rng: &mut ChaCha8Rng, k: usize) -> FractionalPartition {
    let mut subsets: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
    for _ in 0..2 * k {
        let s: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        if s.len() >= 2 && !subsets.contains(&s) {
            subsets.push(s);
        }
    }
    let cost: Vec<Scalar> = (0..subsets.len())
        .map(|_| ratio(rng.gen_range(1..=64), 16))
        .collect();
    let mut lp = LinearProgram::minimize(cost);
    for i in 0..k {
        let row: Vec<Scalar> = subsets
            .iter()
            .map(|s| {
                if s.contains(&i) {
                    Scalar::from_integer(1.into())
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        lp.constrain(row, Rel::Eq, Scalar::from_integer(1.into()));
    }
    let (beta, _) = solve(&lp).optimal().expect("singletons keep this feasible");
    let parts = subsets
        .into_iter()
        .zip(beta)
        .filter(|(_, b)| b.is_positive())
        .collect();
    let fp = FractionalPartition { k, parts };
    debug_assert!(fp.validate());
    fp
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn generators_are_deterministic() {
        let a = rand_point_set(&mut rng(7), 2, 8);
        let b = rand_point_set(&mut rng(7), 2, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn coords_have_bounded_denominator() {
        let mut r = rng(1);
        for _ in 0..100 {
            let c = rand_coord(&mut r);
            assert!(c.denom() <= &64.into());
            assert!(c.abs() <= ratio(4, 1));
        }
    }

    #[test]
    fn psd_matrices_have_nonnegative_diagonal_and_det() {
        let mut r = rng(2);
        for _ in 0..10 {
            let m = rand_psd(&mut r, 3);
            for i in 0..3 {
                assert!(!m[i][i].is_negative());
                for j in 0..3 {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
            assert!(!crate::point::determinant(&m).is_negative());
        }
    }

    #[test]
    fn random_partitions_validate() {
        let mut r = rng(3);
        for _ in 0..10 {
            assert!(rand_fractional_partition(&mut r, 5).validate());
        }
    }
}
