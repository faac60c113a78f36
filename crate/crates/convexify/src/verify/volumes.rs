//! Volume-side verifiers: superadditivity of volume under Minkowski
//! summation, supermodularity for convex bodies (with the non-convex 1-D
//! counterexample and its hull-corrected fix), determinant supermodularity,
//! fractional superadditivity on boxes, projection-assisted monotonicity,
//! and the high-dimensional non-monotonicity counterexample.

use super::{report_exact_ge, FractionalPartition, Verdict, VerifierReport};
use crate::hull::Polytope;
use crate::point::{determinant, Point};
use crate::scalar::{format_scalar, rat, ratio, Scalar};
use crate::sets::BoxUnion;
use num_traits::{One, Zero};

fn sum_all(sets: &[BoxUnion]) -> BoxUnion {
    let mut acc = sets[0].clone();
    for s in &sets[1..] {
        acc = acc.minkowski_sum(s).expect("dimensions agree");
    }
    acc
}

/// Vol(Σ_i A_i) >= (1/(k-1)) Σ_i Vol(Σ_{j != i} A_j), exact on box unions.
pub fn verify_refined_superadditivity(sets: &[BoxUnion]) -> VerifierReport {
    let k = sets.len();
    assert!(k >= 2);
    let lhs = sum_all(sets).volume();
    let mut rhs = Scalar::zero();
    for omit in 0..k {
        let rest: Vec<BoxUnion> = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, s)| s.clone())
            .collect();
        rhs += sum_all(&rest).volume();
    }
    rhs /= rat((k - 1) as i64);
    report_exact_ge(
        "refined-superadditivity",
        format!("{k} box unions in R^{}", sets[0].dim),
        &lhs,
        &rhs,
    )
}

/// The dimension-one case of volume superadditivity (always true there).
pub fn verify_1d_superadditivity(sets: &[BoxUnion]) -> VerifierReport {
    assert!(sets.iter().all(|s| s.dim == 1), "dimension-one verifier");
    let mut r = verify_refined_superadditivity(sets);
    r.name = "1d-superadditivity".into();
    r
}

/// Rate corollary: Vol(A(k)) >= ((k-1)/k)^{n-1} Vol(A(k-1)), exact.
pub fn verify_volume_rate(a: &BoxUnion, k: usize) -> VerifierReport {
    assert!(k >= 2);
    let n = a.dim;
    let lhs = a.average_set(k).volume();
    let factor = rat_pow(&ratio((k - 1) as i64, k as i64), n - 1);
    let rhs = factor * a.average_set(k - 1).volume();
    report_exact_ge(
        "volume-rate",
        format!("A(k) vs A(k-1), k = {k}, box union in R^{n}"),
        &lhs,
        &rhs,
    )
}

fn rat_pow(x: &Scalar, e: usize) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Vol(B1+B2+B3) + Vol(B1) >= Vol(B1+B2) + Vol(B1+B3) for convex bodies.
pub fn verify_supermodularity_convex(
    b1: &Polytope,
    b2: &Polytope,
    b3: &Polytope,
) -> VerifierReport {
    let b12 = b1.minkowski_sum(b2);
    let b13 = b1.minkowski_sum(b3);
    let b123 = b12.minkowski_sum(b3);
    let lhs = b123.volume() + b1.volume();
    let rhs = b12.volume() + b13.volume();
    report_exact_ge(
        "supermodularity-convex",
        format!("three convex bodies in R^{}", b1.dim),
        &lhs,
        &rhs,
    )
}

/// The 1-D counterexample showing supermodularity fails without convexity
/// of the first set: A = {0, 1}, B = C = [0, 1] gives exactly 3 < 4.
pub fn verify_supermodularity_counterexample() -> VerifierReport {
    let a = BoxUnion::new(
        1,
        vec![
            (Point::from_i64(&[0]), Point::from_i64(&[0])),
            (Point::from_i64(&[1]), Point::from_i64(&[1])),
        ],
    )
    .unwrap();
    let b = BoxUnion::interval(rat(0), rat(1));
    let c = b.clone();
    let abc = a.minkowski_sum(&b).unwrap().minkowski_sum(&c).unwrap();
    let lhs = abc.volume() + a.volume();
    let rhs = a.minkowski_sum(&b).unwrap().volume() + a.minkowski_sum(&c).unwrap().volume();
    let mut r = report_exact_ge(
        "supermodularity-counterexample",
        "A = {0,1}, B = C = [0,1] in R^1",
        &lhs,
        &rhs,
    );
    r.details.push(format!(
        "Vol(A+B+C) + Vol(A) = {} + {}; Vol(A+B) + Vol(A+C) = {} + {}",
        format_scalar(&abc.volume()),
        format_scalar(&a.volume()),
        format_scalar(&a.minkowski_sum(&b).unwrap().volume()),
        format_scalar(&a.minkowski_sum(&c).unwrap().volume()),
    ));
    r
}

fn conv_1d(a: &BoxUnion) -> BoxUnion {
    assert_eq!(a.dim, 1);
    let lo = a.boxes.iter().map(|(l, _)| l.0[0].clone()).min().unwrap();
    let hi = a.boxes.iter().map(|(_, h)| h.0[0].clone()).max().unwrap();
    BoxUnion::interval(lo, hi)
}

/// The corrected 1-D statement:
/// Vol(A+B+C) + Vol(conv(A)) >= Vol(A+B) + Vol(A+C), exact.
pub fn verify_1d_supermod_with_hull(
    a: &BoxUnion,
    b: &BoxUnion,
    c: &BoxUnion,
) -> VerifierReport {
    assert!(a.dim == 1 && b.dim == 1 && c.dim == 1);
    let lhs = a
        .minkowski_sum(b)
        .unwrap()
        .minkowski_sum(c)
        .unwrap()
        .volume()
        + conv_1d(a).volume();
    let rhs =
        a.minkowski_sum(b).unwrap().volume() + a.minkowski_sum(c).unwrap().volume();
    report_exact_ge(
        "1d-supermodularity-with-hull",
        "Vol(A+B+C) + Vol(conv A) vs Vol(A+B) + Vol(A+C)",
        &lhs,
        &rhs,
    )
}

fn mat_add(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

/// det(K1+K2+K3) + det(K1) >= det(K1+K2) + det(K1+K3) for PSD matrices.
pub fn verify_det_supermodularity(
    k1: &[Vec<Scalar>],
    k2: &[Vec<Scalar>],
    k3: &[Vec<Scalar>],
) -> VerifierReport {
    let k12 = mat_add(k1, k2);
    let k13 = mat_add(k1, k3);
    let k123 = mat_add(&k12, k3);
    let lhs = determinant(&k123) + determinant(k1);
    let rhs = determinant(&k12) + determinant(&k13);
    report_exact_ge(
        "det-supermodularity",
        format!("three PSD {0}x{0} matrices", k1.len()),
        &lhs,
        &rhs,
    )
}

fn box_sum(boxes: &[(Point, Point)], idx: &[usize]) -> (Point, Point) {
    let dim = boxes[0].0.dim();
    let mut lo = Point::zero(dim);
    let mut hi = Point::zero(dim);
    for &i in idx {
        lo = lo.add(&boxes[i].0);
        hi = hi.add(&boxes[i].1);
    }
    (lo, hi)
}

fn box_volume(lo: &Point, hi: &Point) -> Scalar {
    lo.0.iter()
        .zip(&hi.0)
        .map(|(l, h)| h - l)
        .fold(Scalar::one(), |acc, s| acc * s)
}

/// Vol(Σ_{i in [k]} B_i) >= Σ_S β_S Vol(Σ_{i in S} B_i) for convex boxes
/// and any fractional partition, exact.
pub fn verify_fractional_superadditivity(
    boxes: &[(Point, Point)],
    fp: &FractionalPartition,
) -> VerifierReport {
    assert_eq!(boxes.len(), fp.k);
    assert!(fp.validate(), "invalid fractional partition");
    let all: Vec<usize> = (0..fp.k).collect();
    let (lo, hi) = box_sum(boxes, &all);
    let lhs = box_volume(&lo, &hi);
    let mut rhs = Scalar::zero();
    for (s, beta) in &fp.parts {
        let (lo, hi) = box_sum(boxes, s);
        rhs += beta * box_volume(&lo, &hi);
    }
    report_exact_ge(
        "fractional-superadditivity",
        format!("{} boxes in R^{}, {} parts", fp.k, boxes[0].0.dim(), fp.parts.len()),
        &lhs,
        &rhs,
    )
}

/// Threshold n_k = min{n in kZ : n > log(k) / (log(1 + 1/k) - log(2)/k)}.
pub fn n_k_threshold(k: usize) -> usize {
    let kf = k as f64;
    let bound = kf.ln() / ((1.0 + 1.0 / kf).ln() - 2f64.ln() / kf);
    let mut n = k;
    while (n as f64) <= bound {
        n += k;
    }
    n
}

pub struct NonmonotoneOutcome {
    pub report: VerifierReport,
    pub vol_k: Scalar,
    pub vol_k1: Scalar,
    pub n_k: usize,
}

/// The non-monotonicity counterexample: A = union of k unit cubes living in
/// orthogonal d-dimensional coordinate blocks of R^{kd}. For n = kd large
/// enough, Vol(A(k+1)) < Vol(A(k)) exactly, falsifying monotonicity.
pub fn counterexample_thm_nonmonotone(k: usize, d: usize) -> NonmonotoneOutcome {
    let n = k * d;
    let boxes: Vec<(Point, Point)> = (0..k)
        .map(|i| {
            let lo = Point::zero(n);
            let mut hi = vec![Scalar::zero(); n];
            for c in hi.iter_mut().skip(i * d).take(d) {
                *c = Scalar::one();
            }
            (lo, Point::new(hi))
        })
        .collect();
    let a = BoxUnion::new(n, boxes).unwrap();
    let vol_k = a.average_set(k).volume();
    let vol_k1 = a.average_set(k + 1).volume();
    let n_k = n_k_threshold(k);
    // "Violated" here means the monotonicity conjecture is falsified by a
    // strict exact decrease.
    let verdict = if vol_k1 < vol_k {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    let report = VerifierReport {
        name: "counterexample-nonmonotone".into(),
        instance: format!("k = {k}, d = {d}, n = {n} (threshold n_{k} = {n_k})"),
        lhs: format_scalar(&vol_k1),
        rhs: format_scalar(&vol_k),
        verdict,
        exact: true,
        details: vec![format!(
            "Vol(A({})) = {}, Vol(A({})) = {}",
            k,
            format_scalar(&vol_k),
            k + 1,
            format_scalar(&vol_k1)
        )],
    };
    NonmonotoneOutcome {
        report,
        vol_k,
        vol_k1,
        n_k,
    }
}

fn project_drop_last(a: &BoxUnion) -> BoxUnion {
    let boxes = a
        .boxes
        .iter()
        .map(|(lo, hi)| {
            (
                Point::new(lo.0[..a.dim - 1].to_vec()),
                Point::new(hi.0[..a.dim - 1].to_vec()),
            )
        })
        .collect();
    BoxUnion::new(a.dim - 1, boxes).unwrap()
}

/// If A projects onto a hyperplane with the same (n-1)-volume as its hull,
/// then Vol(A(k)) >= ((k-1)/k) Vol(A(k-1)); checked for k = 2..=kmax. The
/// projection hyperplane is the last coordinate's orthogonal complement.
pub fn verify_projection_monotone(a: &BoxUnion, kmax: usize) -> VerifierReport {
    let n = a.dim;
    assert!(n >= 2);
    let proj = project_drop_last(a);
    let proj_vol = proj.volume();
    let hull_proj_vol =
        crate::hull::convex_hull(n - 1, &proj.corner_points().points).volume();
    if proj_vol != hull_proj_vol {
        return VerifierReport {
            name: "projection-monotone".into(),
            instance: format!("box union in R^{n}, projection along last axis"),
            lhs: format_scalar(&proj_vol),
            rhs: format_scalar(&hull_proj_vol),
            verdict: Verdict::InconclusiveWithBounds,
            exact: true,
            details: vec!["hypothesis unmet (projection not full), skipped".into()],
        };
    }
    let factorless: Vec<(usize, Scalar)> = (1..=kmax)
        .map(|k| (k, a.average_set(k).volume()))
        .collect();
    for w in factorless.windows(2) {
        let (km1, ref v_prev) = w[0];
        let (k, ref v_k) = w[1];
        let bound = ratio(km1 as i64, k as i64) * v_prev;
        if *v_k < bound {
            return VerifierReport {
                name: "projection-monotone".into(),
                instance: format!("box union in R^{n}, k = {k}"),
                lhs: format_scalar(v_k),
                rhs: format_scalar(&bound),
                verdict: Verdict::Violated,
                exact: true,
                details: Vec::new(),
            };
        }
    }
    VerifierReport {
        name: "projection-monotone".into(),
        instance: format!("box union in R^{n}, k <= {kmax}"),
        lhs: "Vol(A(k))".into(),
        rhs: "((k-1)/k) Vol(A(k-1))".into(),
        verdict: Verdict::Holds,
        exact: true,
        details: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::gen;

    #[test]
    fn interval_equality_case() {
        let sets = vec![
            BoxUnion::interval(rat(0), rat(1)),
            BoxUnion::interval(rat(0), rat(2)),
            BoxUnion::interval(rat(1), rat(3)),
        ];
        let r = verify_1d_superadditivity(&sets);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn gap_sets_superadditive() {
        // A1 = A2 = {0} ∪ [1,2].
        let a = BoxUnion::new(
            1,
            vec![
                (Point::from_i64(&[0]), Point::from_i64(&[0])),
                (Point::from_i64(&[1]), Point::from_i64(&[2])),
            ],
        )
        .unwrap();
        let r = verify_refined_superadditivity(&[a.clone(), a]);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn random_1d_and_2d_superadditivity() {
        let mut rng = gen::rng(11);
        for dim in [1usize, 2] {
            for _ in 0..20 {
                let sets: Vec<BoxUnion> =
                    (0..3).map(|_| gen::rand_box_union(&mut rng, dim, 3)).collect();
                assert_eq!(verify_refined_superadditivity(&sets).verdict, Verdict::Holds);
            }
        }
    }

    #[test]
    fn supermodularity_counterexample_is_3_lt_4() {
        let r = verify_supermodularity_counterexample();
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.lhs, "3");
        assert_eq!(r.rhs, "4");
    }

    #[test]
    fn hull_corrected_1d_version_holds_with_equality() {
        let a = BoxUnion::new(
            1,
            vec![
                (Point::from_i64(&[0]), Point::from_i64(&[0])),
                (Point::from_i64(&[1]), Point::from_i64(&[1])),
            ],
        )
        .unwrap();
        let b = BoxUnion::interval(rat(0), rat(1));
        let r = verify_1d_supermod_with_hull(&a, &b, &b.clone());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.lhs, r.rhs); // 4 = 4
    }

    #[test]
    fn random_convex_supermodularity() {
        let mut rng = gen::rng(5);
        for _ in 0..10 {
            let polys: Vec<Polytope> = (0..3)
                .map(|_| {
                    let (lo, hi) = gen::rand_box(&mut rng, 2);
                    BoxUnion::new(2, vec![(lo, hi)]).unwrap().hull()
                })
                .collect();
            let r = verify_supermodularity_convex(&polys[0], &polys[1], &polys[2]);
            assert_eq!(r.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn det_supermodularity_identity_case() {
        let id: Vec<Vec<Scalar>> = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let r = verify_det_supermodularity(&id, &id, &id);
        // det(3I) + det(I) = 10 >= det(2I) + det(2I) = 8.
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.lhs, "10");
        assert_eq!(r.rhs, "8");
    }

    #[test]
    fn det_supermodularity_random_psd() {
        let mut rng = gen::rng(6);
        for _ in 0..25 {
            let (k1, k2, k3) = (
                gen::rand_psd(&mut rng, 3),
                gen::rand_psd(&mut rng, 3),
                gen::rand_psd(&mut rng, 3),
            );
            assert_eq!(
                verify_det_supermodularity(&k1, &k2, &k3).verdict,
                Verdict::Holds
            );
        }
    }

    #[test]
    fn fractional_superadditivity_trivial_and_loo() {
        let mut rng = gen::rng(7);
        let boxes: Vec<(Point, Point)> = (0..4).map(|_| gen::rand_box(&mut rng, 2)).collect();
        let r = verify_fractional_superadditivity(&boxes, &FractionalPartition::trivial(4));
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.lhs, r.rhs); // trivial partition: equality
        let r = verify_fractional_superadditivity(&boxes, &FractionalPartition::leave_one_out(4));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn threshold_n2_is_12() {
        assert_eq!(n_k_threshold(2), 12);
    }

    #[test]
    fn nonmonotone_counterexample_exact_volumes() {
        let out = counterexample_thm_nonmonotone(2, 6);
        assert_eq!(out.vol_k, ratio(1, 4096));
        assert_eq!(out.vol_k1, ratio(127, 531441));
        assert_eq!(out.report.verdict, Verdict::Violated);
        assert_eq!(out.n_k, 12);
    }

    #[test]
    fn below_threshold_no_falsification() {
        let out = counterexample_thm_nonmonotone(2, 5);
        assert_eq!(out.report.verdict, Verdict::Holds);
        assert!(out.vol_k1 >= out.vol_k);
    }

    #[test]
    fn projection_monotone_staircase() {
        // Staircase with a full bottom edge: projection hypothesis holds.
        let a = BoxUnion::new(
            2,
            vec![
                (Point::from_i64(&[0, 0]), Point::from_i64(&[3, 1])),
                (Point::from_i64(&[0, 1]), Point::from_i64(&[1, 2])),
            ],
        )
        .unwrap();
        let r = verify_projection_monotone(&a, 5);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn projection_hypothesis_unmet_is_skipped() {
        let a = BoxUnion::new(
            2,
            vec![
                (Point::from_i64(&[0, 0]), Point::from_i64(&[1, 1])),
                (Point::from_i64(&[2, 0]), Point::from_i64(&[3, 1])),
            ],
        )
        .unwrap();
        let r = verify_projection_monotone(&a, 4);
        assert_eq!(r.verdict, Verdict::InconclusiveWithBounds);
        assert!(r.details[0].contains("hypothesis unmet"));
    }

    #[test]
    fn volume_rate_on_random_union() {
        let mut rng = gen::rng(9);
        for _ in 0..5 {
            let a = gen::rand_box_union(&mut rng, 2, 3);
            for k in 2..=4 {
                assert_eq!(verify_volume_rate(&a, k).verdict, Verdict::Holds);
            }
        }
    }
}
