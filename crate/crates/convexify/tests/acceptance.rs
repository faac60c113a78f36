//! Acceptance gate: one test per criterion, each printing a single
//! PASS line (a failure panics first, so the line doubles as the verdict).
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use convexify::convexification::{balance_signs, sf_decompose};
use convexify::lp::in_hull;
use convexify::measures::hausdorff::{hausdorff_bounds, hausdorff_from_hull};
use convexify::measures::schneider::schneider_c;
use convexify::measures::stddev::{effective_stddev, rho_point_sq, v_point_sq, w_point};
use convexify::point::Point;
use convexify::scalar::{parse_scalar, rat, ratio, to_f64, Scalar};
use convexify::sets::{BoxUnion, Gauge, PointSet};
use convexify::verify::{
    self,
    gen::{rand_box, rand_box_union, rand_point_set, rand_psd, rng},
    FractionalPartition, Verdict,
};
use num_traits::{One, Zero};
use std::time::Instant;

const BUDGET: usize = 2_000_000;
const CAP: usize = 200_000;

fn elapsed_under(t0: Instant, secs: f64, what: &str) {
    let dt = t0.elapsed().as_secs_f64();
    assert!(dt < secs, "{what} took {dt:.2}s, budget {secs}s");
}

#[test]
fn criterion_01_nonmonotone_counterexample() {
    let t0 = Instant::now();
    let outcome = verify::counterexample_thm_nonmonotone(2, 6);
    assert_eq!(outcome.vol_k, parse_scalar("1/4096").unwrap());
    assert_eq!(outcome.vol_k1, parse_scalar("127/531441").unwrap());
    assert!(outcome.vol_k1 < outcome.vol_k);
    assert_eq!(outcome.report.verdict, Verdict::Violated);
    assert!(outcome.report.exact);
    assert_eq!(outcome.n_k, 12);
    elapsed_under(t0, 1.0, "criterion 1");

    // The CLI command confirms the counterexample with exit code 2.
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_convexify"))
        .args(["counterexample", "thm-nonmonotone", "--k", "2", "--d", "6"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("1/4096"));
    assert!(stdout.contains("127/531441"));
    println!("ACCEPTANCE 1 PASS: Vol(A(2)) = 1/4096 > Vol(A(3)) = 127/531441 exactly; n_2 = 12; CLI exits 2");
}

#[test]
fn criterion_02_one_dimensional_rate_sharpness() {
    let t0 = Instant::now();
    let a = PointSet::from_i64(1, &[&[0], &[1]]);
    for k in 1..=64usize {
        let ak = a.average_set(k, CAP).unwrap();
        let c = schneider_c(&ak, 1e-6).exact.unwrap();
        assert_eq!(c, ratio(1, k as i64), "c(A({k}))");
        let d = hausdorff_from_hull(&ak, &Gauge::unit_ball(), 1e-6, BUDGET)
            .exact
            .unwrap();
        assert_eq!(d, ratio(1, 2 * k as i64), "d(A({k}))");
    }
    elapsed_under(t0, 1.0, "criterion 2");
    println!("ACCEPTANCE 2 PASS: c(A(k)) = 1/k and d(A(k)) = 1/(2k) exactly for k = 1..64");
}

#[test]
fn criterion_03_schneider_sharpness() {
    let t0 = Instant::now();
    let a = PointSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
    let c = schneider_c(&a, 1e-6);
    assert!(c.lower >= 2.0 - 1e-6, "lower bound {}", c.lower);
    assert!(c.upper <= 2.0 + 1e-12, "upper bound {}", c.upper);
    elapsed_under(t0, 5.0, "criterion 3");
    println!("ACCEPTANCE 3 PASS: c(three affinely independent points) in [2 - 1e-6, 2]");
}

#[test]
fn criterion_04_wegmann_chain() {
    let t0 = Instant::now();
    let mut r = rng(4);
    for trial in 0..200 {
        let a = rand_point_set(&mut r, 2, 8);
        let vres = effective_stddev(&a, BUDGET);
        assert!(vres.exact, "v not exhaustive on trial {trial}");
        let v = vres.measure.value;
        let x_star = &vres.maximizer;
        // |v - r| = 0: the pointwise value at the maximizer is the supremum.
        assert_eq!(
            v_point_sq(&a, x_star).unwrap(),
            vres.measure.exact_sq.clone().unwrap(),
            "r mismatch on trial {trial}"
        );
        // Grid = centroid, pair midpoints, and the exact maximizer.
        let mut grid: Vec<Point> = vec![x_star.clone()];
        let inv = ratio(1, a.len() as i64);
        let centroid = a
            .points
            .iter()
            .fold(Point::zero(2), |acc, p| acc.add(p))
            .scale(&inv);
        grid.push(centroid);
        for i in 0..a.len().min(4) {
            for j in i + 1..a.len().min(4) {
                grid.push(a.points[i].add(&a.points[j]).scale(&ratio(1, 2)));
            }
        }
        let sup_w = grid
            .iter()
            .filter_map(|x| w_point(&a, x))
            .fold(0.0_f64, f64::max);
        assert!((v - sup_w).abs() <= 1e-6, "w gap {} on trial {trial}", v - sup_w);
        let sup_rho = grid
            .iter()
            .filter_map(|x| rho_point_sq(&a, x))
            .map(|s| to_f64(&s).sqrt())
            .fold(0.0_f64, f64::max);
        assert!(
            (v - sup_rho).abs() <= 1e-6,
            "rho gap {} on trial {trial}",
            v - sup_rho
        );
        let d = hausdorff_bounds(&a, BUDGET);
        assert!(d.upper >= d.lower);
        assert!((d.upper - v).abs() <= 1e-12, "d upper envelope is v");
    }
    elapsed_under(t0, 30.0, "criterion 4");
    println!("ACCEPTANCE 4 PASS: Wegmann chain on 200 random 2-D sets (v = r exactly; grid w, rho within 1e-6; d bracket topped by v)");
}

#[test]
fn criterion_05_dyn_farkhi_refutation() {
    let t0 = Instant::now();
    let report = verify::counterexample_dyn_farkhi(&rat(10));
    assert_eq!(report.verdict, Verdict::Violated);
    assert!(report.exact);
    // Lower bound for d²(A+B) is 400/102 = 200/51; d²(A)+d²(B) = 200/101.
    assert_eq!(report.lhs, "200/51");
    assert_eq!(report.rhs, "200/101");
    elapsed_under(t0, 1.0, "criterion 5");
    println!("ACCEPTANCE 5 PASS: d^2(A)+d^2(B) = 200/101 < 400/102 <= d^2(A+B), violation exact at f = 10");
}

#[test]
fn criterion_06_supermodularity() {
    let t0 = Instant::now();
    let mut r = rng(6);
    for _ in 0..100 {
        let hulls: Vec<_> = (0..3)
            .map(|_| {
                let b = rand_box(&mut r, 2);
                BoxUnion::new(2, vec![b]).unwrap().hull()
            })
            .collect();
        let rep = verify::verify_supermodularity_convex(&hulls[0], &hulls[1], &hulls[2]);
        assert!(rep.holds() && rep.exact);
    }
    let ce = verify::verify_supermodularity_counterexample();
    assert_eq!(ce.verdict, Verdict::Violated);
    assert!(ce.exact);
    assert_eq!(ce.lhs, "3");
    assert_eq!(ce.rhs, "4");
    // conv(A)-corrected version holds with equality on the same instance.
    let a = BoxUnion::new(
        1,
        vec![
            (Point::from_i64(&[0]), Point::from_i64(&[0])),
            (Point::from_i64(&[1]), Point::from_i64(&[1])),
        ],
    )
    .unwrap();
    let b = BoxUnion::interval(rat(0), rat(1));
    let fixed = verify::verify_1d_supermod_with_hull(&a, &b, &b.clone());
    assert!(fixed.holds() && fixed.exact);
    assert_eq!(fixed.lhs, fixed.rhs, "equality case");
    elapsed_under(t0, 10.0, "criterion 6");
    println!("ACCEPTANCE 6 PASS: 100 convex 2-D triples supermodular exactly; 1-D counterexample 3 < 4; hull-corrected version ties");
}

#[test]
fn criterion_07_superadditivity() {
    let t0 = Instant::now();
    let mut r = rng(7);
    for _ in 0..100 {
        let sets: Vec<BoxUnion> = (0..3).map(|_| rand_box_union(&mut r, 1, 3)).collect();
        let rep = verify::verify_1d_superadditivity(&sets);
        assert!(rep.holds() && rep.exact);
    }
    for _ in 0..100 {
        let sets: Vec<BoxUnion> = (0..3).map(|_| rand_box_union(&mut r, 2, 2)).collect();
        let rep = verify::verify_refined_superadditivity(&sets);
        assert!(rep.holds() && rep.exact);
    }
    elapsed_under(t0, 20.0, "criterion 7");
    println!("ACCEPTANCE 7 PASS: superadditivity exact on 100 random 1-D and 100 random 2-D box-union triples (k = 3)");
}

/// Random vector in R^6 with small denominators and gauge norm <= 1: the
/// coordinate range is chosen per gauge so no exact normalization (which
/// inflates denominators and the cost of the exact balancing walk) is needed.
fn small_vector(r: &mut rand_chacha::ChaCha8Rng, gauge: &Gauge) -> Point {
    use rand::Rng;
    let range: i64 = match gauge {
        Gauge::EuclideanBall(_) => 26, // sqrt(6) * 26/64 < 1
        _ => 10,                       // l1: 6 * 10/64 < 1; linf: 10/64 < 1
    };
    let p = Point::new((0..6).map(|_| ratio(r.gen_range(-range..=range), 64)).collect());
    debug_assert!(gauge.norm(&p) <= 1.0);
    p
}

#[test]
fn criterion_08_discrepancy() {
    let t0 = Instant::now();
    let n = 6usize;
    // Sharpness: the standard basis under l1 forces achieved = n exactly.
    let basis: Vec<Point> = (0..n)
        .map(|i| {
            let mut c = vec![Scalar::zero(); n];
            c[i] = Scalar::one();
            Point::new(c)
        })
        .collect();
    let sharp = balance_signs(&basis, &Gauge::l1_ball(n));
    assert_eq!(sharp.achieved_exact, Some(rat(6)));

    let sqrt_n = (n as f64).sqrt();
    let mut r = rng(8);
    for trial in 0..100 {
        for (gauge, bound) in [
            (Gauge::unit_ball(), sqrt_n),     // n^{1/2}
            (Gauge::l1_ball(n), n as f64),    // n^{1/2 + 1/2}
            (Gauge::linf_ball(n), n as f64),  // n^{1/2 + 1/2}
        ] {
            let xs: Vec<Point> = (0..50).map(|_| small_vector(&mut r, &gauge)).collect();
            let res = balance_signs(&xs, &gauge);
            assert!(
                res.achieved <= bound + 1e-9,
                "trial {trial}: achieved {} over bound {bound}",
                res.achieved
            );
        }
    }
    elapsed_under(t0, 10.0, "criterion 8");
    println!("ACCEPTANCE 8 PASS: l1 basis balancing achieves exactly 6; 100 random (k = 50, n = 6) instances within sqrt(6) / 6 / 6 for l2 / l1 / linf");
}

#[test]
fn criterion_09_shapley_folkman() {
    let t0 = Instant::now();
    let mut r = rng(9);
    for trial in 0..50 {
        let sets: Vec<PointSet> = (0..10).map(|_| rand_point_set(&mut r, 3, 4)).collect();
        // Feasible target: sum of per-set centroids.
        let x = sets.iter().fold(Point::zero(3), |acc, s| {
            let inv = ratio(1, s.len() as i64);
            acc.add(&s.points.iter().fold(Point::zero(3), |a, p| a.add(p)).scale(&inv))
        });
        let dec = sf_decompose(&sets, &x).expect("feasible by construction");
        assert!(dec.fractional.len() <= 3, "trial {trial}: |I| = {}", dec.fractional.len());
        assert_eq!(dec.reconstruct(), x, "trial {trial}: reconstruction");
    }
    elapsed_under(t0, 5.0, "criterion 9");
    println!("ACCEPTANCE 9 PASS: 50 random Shapley-Folkman decompositions in R^3 (k = 10) with |I| <= 3 and exact reconstruction");
}

#[test]
fn criterion_10_containment_rate() {
    let t0 = Instant::now();
    let mut r = rng(10);
    for _ in 0..20 {
        let a = rand_point_set(&mut r, 2, 5);
        let rep = verify::verify_containment_rate(&a, 20, CAP);
        assert!(rep.holds(), "{rep:?}");
    }
    elapsed_under(t0, 10.0, "criterion 10");
    println!("ACCEPTANCE 10 PASS: hull vertices within n diam(A)/k of A(k) for 20 random 2-D sets, k <= 20");
}

#[test]
fn criterion_11_simplex_halfsum_ratio() {
    let t0 = Instant::now();
    for (n, want_sq) in [(2usize, ratio(1, 4)), (3, ratio(1, 3)), (5, ratio(2, 5))] {
        let rep = verify::simplex_halfsum_ratio(n);
        assert!(rep.holds() && rep.exact, "n = {n}: {rep:?}");
        assert_eq!(
            parse_scalar(&rep.lhs).unwrap(),
            want_sq,
            "squared ratio at n = {n}"
        );
    }
    elapsed_under(t0, 10.0, "criterion 11");
    println!("ACCEPTANCE 11 PASS: half-sum ratio d(A(2))/d(A) equals sqrt((n-1)/(2n)) exactly for n = 2, 3, 5");
}

#[test]
fn criterion_12_property_suites() {
    let t0 = Instant::now();
    let trials = 100u64;

    // Scaling / affine invariance.
    for seed in 0..trials {
        let mut r = rng(seed);
        let a = rand_point_set(&mut r, 1, 6);
        let lam = ratio(3, 2);
        let moved = a.scale(&lam).translate(&Point::new(vec![ratio(-7, 3)]));
        assert_eq!(
            schneider_c(&a, 1e-6).exact.unwrap(),
            schneider_c(&moved, 1e-6).exact.unwrap()
        );
        let b = rand_point_set(&mut r, 2, 5);
        let d1 = hausdorff_from_hull(&b, &Gauge::unit_ball(), 1e-6, BUDGET).exact_sq.unwrap();
        let d2 = hausdorff_from_hull(&b.scale(&lam), &Gauge::unit_ball(), 1e-6, BUDGET)
            .exact_sq
            .unwrap();
        assert_eq!(d2, &(&lam * &lam) * &d1);
    }

    // Inclusion monotonicity (same hull), c <= n, d <= R c, r <= 2c/(1+c) R,
    // all exact in dimension one.
    for seed in 0..trials {
        let mut r = rng(1000 + seed);
        let a = rand_point_set(&mut r, 1, 6);
        let mut pts = a.points.clone();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                pts.push(a.points[i].add(&a.points[j]).scale(&ratio(1, 2)));
            }
        }
        let b = PointSet::new(1, pts).unwrap();
        let ca = schneider_c(&a, 1e-6).exact.unwrap();
        let cb = schneider_c(&b, 1e-6).exact.unwrap();
        assert!(cb <= ca, "inclusion monotonicity of c");
        assert!(ca <= rat(1), "c <= n");
        let mut xs: Vec<Scalar> = a.points.iter().map(|p| p.0[0].clone()).collect();
        xs.sort();
        let radius = (xs.last().unwrap() - xs.first().unwrap()) / rat(2);
        let d2 = hausdorff_from_hull(&a, &Gauge::unit_ball(), 1e-6, BUDGET)
            .exact_sq
            .unwrap();
        let rc = &radius * &ca;
        assert_eq!(d2, &rc * &rc, "d <= R c (with equality in 1-D)");
        let v2 = effective_stddev(&a, BUDGET).measure.exact_sq.unwrap();
        let bound = rat(2) * &ca / (Scalar::one() + &ca) * &radius;
        assert!(v2 <= &bound * &bound, "r <= 2c/(1+c) R");
    }

    // v² subadditivity and d subadditivity, exact in 2-D.
    for seed in 0..trials {
        let mut r = rng(2000 + seed);
        let a = rand_point_set(&mut r, 2, 3);
        let b = rand_point_set(&mut r, 2, 3);
        assert!(verify::verify_v_subadditivity(&a, &b, BUDGET).holds());
        let g = Gauge::unit_ball();
        let sum = a.minkowski_sum(&b).unwrap();
        let (da, db, ds) = (
            hausdorff_from_hull(&a, &g, 1e-6, BUDGET),
            hausdorff_from_hull(&b, &g, 1e-6, BUDGET),
            hausdorff_from_hull(&sum, &g, 1e-6, BUDGET),
        );
        assert!(ds.value <= da.value + db.value + 1e-9, "d subadditivity");
    }

    // Determinant supermodularity and fractional superadditivity, exact.
    for seed in 0..trials {
        let mut r = rng(3000 + seed);
        let (k1, k2, k3) = (rand_psd(&mut r, 3), rand_psd(&mut r, 3), rand_psd(&mut r, 3));
        assert!(verify::verify_det_supermodularity(&k1, &k2, &k3).holds());
        let boxes: Vec<(Point, Point)> = (0..4).map(|_| rand_box(&mut r, 2)).collect();
        for fp in [
            FractionalPartition::trivial(4),
            FractionalPartition::leave_one_out(4),
            verify::gen::rand_fractional_partition(&mut r, 4),
        ] {
            assert!(verify::verify_fractional_superadditivity(&boxes, &fp).holds());
        }
    }

    elapsed_under(t0, 60.0, "criterion 12");
    println!("ACCEPTANCE 12 PASS: nine property suites, 100 seeded instances each, zero violations");
    // Sanity: average sets stay inside the hull (used throughout the suites).
    let a = PointSet::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2]]);
    for p in &a.average_set(3, CAP).unwrap().points {
        assert!(in_hull(p, &a.points).is_some());
    }
}
