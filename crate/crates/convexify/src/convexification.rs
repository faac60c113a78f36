//! Constructive Shapley–Folkman decomposition and vector balancing
//! (discrepancy) built on exact Carathéodory reduction in the positive cone.

use crate::lp::{
    caratheodory_reduce_conic, solve, ConvexCombination, LinearProgram, LpOutcome, Rel,
};
use crate::point::Point;
use crate::scalar::{rat, to_f64, Scalar};
use crate::sets::{Gauge, PointSet};
use crate::Error;
use num_traits::{One, Signed, Zero};

/// Decomposition of x ∈ Σ conv(A_i): all but at most n summands contribute a
/// single point; the fractional ones contribute a convex combination.
#[derive(Clone, Debug)]
pub enum SFPart {
    Single(Point),
    Mixed(ConvexCombination),
}

#[derive(Clone, Debug)]
pub struct SFDecomposition {
    pub parts: Vec<SFPart>,
    pub fractional: Vec<usize>,
    pub target: Point,
}

impl SFDecomposition {
    /// Exact sum of the per-set barycenters; equals the target by invariant.
    pub fn reconstruct(&self) -> Point {
        let dim = self.target.dim();
        let mut acc = Point::zero(dim);
        for part in &self.parts {
            acc = acc.add(&match part {
                SFPart::Single(p) => p.clone(),
                SFPart::Mixed(c) => c.barycenter(),
            });
        }
        acc
    }
}

/// Separating functional from Σ conv(A_i): when x is outside, returns nu
/// with <nu, x> strictly above the sum's support value in direction nu.
pub fn separate_from_sum(sets: &[PointSet], x: &Point) -> Option<(Point, f64)> {
    let n = x.dim();
    let k = sets.len();
    // Variables: nu (free, n), then per-set support levels t_i (free).
    // Maximize <nu,x> - sum t_i subject to <nu, a_ij> <= t_i and |nu_j| <= 1.
    let mut obj = x.0.clone();
    obj.extend(vec![rat(-1); k]);
    let mut lp = LinearProgram::maximize(obj);
    for v in 0..n + k {
        lp.set_free(v);
    }
    for (i, set) in sets.iter().enumerate() {
        for a in &set.points {
            let mut row = a.0.clone();
            row.extend(vec![Scalar::zero(); k]);
            row[n + i] = rat(-1);
            lp.constrain(row, Rel::Le, Scalar::zero());
        }
    }
    for j in 0..n {
        let mut row = vec![Scalar::zero(); n + k];
        row[j] = rat(1);
        lp.constrain(row.clone(), Rel::Le, rat(1));
        row[j] = rat(-1);
        lp.constrain(row, Rel::Le, rat(1));
    }
    let (sol, value) = solve(&lp).optimal()?;
    if value.is_positive() {
        Some((Point::new(sol[..n].to_vec()), to_f64(&value)))
    } else {
        None
    }
}

/// Shapley–Folkman: writes x ∈ Σ conv(A_i) as a sum with at most n
/// fractional summands, via the lift z_ij = (a_ij, e_i) and conic
/// Carathéodory reduction to at most n + k support points.
pub fn sf_decompose(sets: &[PointSet], x: &Point) -> Result<SFDecomposition, Error> {
    let n = x.dim();
    let k = sets.len();
    for s in sets {
        if s.dim != n {
            return Err(Error::DimensionMismatch(n, s.dim));
        }
    }
    // Joint feasibility LP: weights p_ij >= 0, sum_j p_ij = 1 per set,
    // sum_ij p_ij a_ij = x.
    let total: usize = sets.iter().map(PointSet::len).sum();
    let mut lp = LinearProgram::minimize(vec![Scalar::zero(); total]);
    for j in 0..n {
        let mut row = Vec::with_capacity(total);
        for set in sets {
            row.extend(set.points.iter().map(|a| a.0[j].clone()));
        }
        lp.constrain(row, Rel::Eq, x.0[j].clone());
    }
    let mut offset = 0;
    for set in sets {
        let mut row = vec![Scalar::zero(); total];
        for c in row.iter_mut().skip(offset).take(set.len()) {
            *c = rat(1);
        }
        lp.constrain(row, Rel::Eq, rat(1));
        offset += set.len();
    }
    let weights = match solve(&lp) {
        LpOutcome::Optimal { x: w, .. } => w,
        _ => return Err(Error::NotInHull),
    };

    // Lift to R^{n+k} and reduce in the cone.
    let mut zs: Vec<Point> = Vec::new();
    let mut ws: Vec<Scalar> = Vec::new();
    let mut idx = 0;
    for (i, set) in sets.iter().enumerate() {
        for a in &set.points {
            if weights[idx].is_positive() {
                let mut z = a.0.clone();
                z.extend((0..k).map(|t| if t == i { rat(1) } else { rat(0) }));
                zs.push(Point::new(z));
                ws.push(weights[idx].clone());
            }
            idx += 1;
        }
    }
    let owner_of = |z: &Point| -> (usize, usize) {
        let i = (n..n + k)
            .position(|t| z.0[t].is_one())
            .expect("lifted point has a set marker");
        let a = Point::new(z.0[..n].to_vec());
        let j = sets[i]
            .points
            .iter()
            .position(|p| *p == a)
            .expect("lifted point comes from its set");
        (i, j)
    };
    let (rz, rw) = caratheodory_reduce_conic(&zs, &ws);
    debug_assert!(rz.len() <= n + k);

    // Regroup by set.
    let mut per_set: Vec<Vec<(Point, Scalar)>> = vec![Vec::new(); k];
    for (z, w) in rz.iter().zip(&rw) {
        let (i, j) = owner_of(z);
        per_set[i].push((sets[i].points[j].clone(), w.clone()));
    }
    let mut parts = Vec::with_capacity(k);
    let mut fractional = Vec::new();
    for (i, bucket) in per_set.into_iter().enumerate() {
        assert!(!bucket.is_empty(), "every set keeps at least one support point");
        if bucket.len() == 1 {
            debug_assert!(bucket[0].1.is_one());
            parts.push(SFPart::Single(bucket[0].0.clone()));
        } else {
            fractional.push(i);
            let (pts, wts): (Vec<Point>, Vec<Scalar>) = bucket.into_iter().unzip();
            parts.push(SFPart::Mixed(ConvexCombination::new(pts, wts)));
        }
    }
    Ok(SFDecomposition {
        parts,
        fractional,
        target: x.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct BalanceResult {
    pub signs: Vec<i8>,
    pub achieved: f64,
    /// Exact achieved norm for polytope gauges.
    pub achieved_exact: Option<Scalar>,
}

fn signed_sum(xs: &[Point], signs: &[i8]) -> Point {
    let mut acc = Point::zero(xs[0].dim());
    for (x, &s) in xs.iter().zip(signs) {
        if s >= 0 {
            acc = acc.add(x);
        } else {
            acc = acc.sub(x);
        }
    }
    acc
}

/// Vector balancing: signs ε with ||Σ ε_i x_i||_K small. Walks a point of
/// the fractional relaxation {t ∈ [-1,1]^k : Σ t_i x_i ≈ 0} to a vertex:
/// while more than n coordinates are strictly inside (-1, 1), move along a
/// kernel direction of the active columns until a coordinate hits a bound
/// and freeze it. The walk runs in floating point — t only decides which
/// coordinates get fixed signs and which are finished exhaustively
/// (2^{<=n} patterns; greedy above n = 20); the reported norm of the final
/// signed sum is evaluated exactly.
pub fn balance_signs(xs: &[Point], gauge: &Gauge) -> BalanceResult {
    let k = xs.len();
    let n = xs[0].dim();
    let xf: Vec<Vec<f64>> = xs
        .iter()
        .map(|x| x.0.iter().map(to_f64).collect())
        .collect();
    let mut t = vec![0.0f64; k];
    let mut active: Vec<usize> = (0..k).collect();
    while active.len() > n {
        let m = active.len();
        // Row-reduce the n x m matrix of active columns to read off a
        // kernel vector (m > n guarantees one exists).
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|j| active.iter().map(|&i| xf[i][j]).collect())
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let (pr, pv) = (r..n)
                .map(|rr| (rr, a[rr][c].abs()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pv < 1e-12 {
                continue;
            }
            a.swap(r, pr);
            for rr in 0..n {
                if rr != r {
                    let f = a[rr][c] / a[r][c];
                    for cc in c..m {
                        a[rr][cc] -= f * a[r][cc];
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let Some(free) = (0..m).find(|c| !pivot_cols.contains(c)) else {
            break;
        };
        let mut w = vec![0.0f64; m];
        w[free] = 1.0;
        for (row_i, &pc) in pivot_cols.iter().enumerate() {
            if pc < free {
                w[pc] = -a[row_i][free] / a[row_i][pc];
            }
        }
        // Largest step keeping every active coordinate in [-1, 1].
        let mut theta = f64::INFINITY;
        for (ii, &i) in active.iter().enumerate() {
            if w[ii] > 1e-15 {
                theta = theta.min((1.0 - t[i]) / w[ii]);
            } else if w[ii] < -1e-15 {
                theta = theta.min((-1.0 - t[i]) / w[ii]);
            }
        }
        if !theta.is_finite() {
            break;
        }
        for (ii, &i) in active.iter().enumerate() {
            t[i] += theta * w[ii];
        }
        let before = active.len();
        active.retain(|&i| {
            if t[i] >= 1.0 - 1e-9 {
                t[i] = 1.0;
                false
            } else if t[i] <= -1.0 + 1e-9 {
                t[i] = -1.0;
                false
            } else {
                true
            }
        });
        if active.len() == before {
            break;
        }
    }
    let fractional = active;
    // Base signs from the frozen coordinates.
    let mut signs: Vec<i8> = t.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect();
    let eval_exact = |signs: &[i8]| gauge.norm_exact(&signed_sum(xs, signs));
    let eval = |signs: &[i8]| gauge.norm(&signed_sum(xs, signs));
    if fractional.len() <= 20 {
        // Exhaustive finish over the fractional coordinates.
        let m = fractional.len();
        let mut best = signs.clone();
        let mut best_val = f64::INFINITY;
        for mask in 0u64..(1 << m) {
            let mut cand = signs.clone();
            for (b, &i) in fractional.iter().enumerate() {
                cand[i] = if mask >> b & 1 == 1 { 1 } else { -1 };
            }
            let val = eval(&cand);
            if val < best_val {
                best_val = val;
                best = cand;
            }
        }
        signs = best;
    } else {
        // Greedy local search: flip any sign that improves.
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..k {
                let mut cand = signs.clone();
                cand[i] = -cand[i];
                if eval(&cand) < eval(&signs) {
                    signs = cand;
                    improved = true;
                }
            }
        }
    }
    let achieved_exact = eval_exact(&signs);
    let achieved = match &achieved_exact {
        Some(v) => to_f64(v),
        None => eval(&signs),
    };
    BalanceResult {
        signs,
        achieved,
        achieved_exact,
    }
}

/// Checks d(Σ A_i) <= (D/2) sqrt(n) with D the largest diameter, using the
/// exact 2-D value (or a certified lower bound in higher dimension).
pub struct GrinbergCheck {
    pub d_lower: f64,
    pub d_upper: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn grinberg_bound_check(sets: &[PointSet]) -> Result<GrinbergCheck, Error> {
    let n = sets[0].dim;
    let mut sum = sets[0].clone();
    for s in &sets[1..] {
        sum = sum.minkowski_sum(s)?;
    }
    let d = if n <= 2 {
        crate::measures::hausdorff::hausdorff_from_hull(
            &sum,
            &Gauge::unit_ball(),
            1e-9,
            1_000_000,
        )
    } else {
        crate::measures::hausdorff::hausdorff_bounds(&sum, 1_000_000)
    };
    let big_d = sets.iter().map(PointSet::diam).fold(0.0, f64::max);
    let bound = big_d / 2.0 * (n as f64).sqrt();
    Ok(GrinbergCheck {
        d_lower: d.lower,
        d_upper: d.upper,
        bound,
        holds: d.lower <= bound + 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn singletons_decompose_trivially() {
        let sets: Vec<PointSet> = (0..4)
            .map(|i| PointSet::from_i64(2, &[&[i, 2 * i]]))
            .collect();
        let x = Point::from_i64(&[6, 12]);
        let d = sf_decompose(&sets, &x).unwrap();
        assert!(d.fractional.is_empty());
        assert_eq!(d.reconstruct(), x);
    }

    #[test]
    fn infeasible_target_is_separated() {
        let sets = vec![
            PointSet::from_i64(1, &[&[0], &[1]]),
            PointSet::from_i64(1, &[&[0], &[1]]),
        ];
        let x = Point::from_i64(&[5]);
        assert!(matches!(sf_decompose(&sets, &x), Err(Error::NotInHull)));
        let (nu, margin) = separate_from_sum(&sets, &x).unwrap();
        assert!(margin > 0.0);
        // nu certifies: <nu,x> exceeds the sum's support function.
        let support: Scalar = sets
            .iter()
            .map(|s| s.points.iter().map(|a| nu.dot(a)).max().unwrap())
            .sum();
        assert!(nu.dot(&x) > support);
    }

    #[test]
    fn random_targets_few_fractional() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let sets: Vec<PointSet> = (0..6)
                .map(|_| {
                    let pts: Vec<Point> = (0..4)
                        .map(|_| {
                            Point::new(
                                (0..2).map(|_| ratio(rng.gen_range(-8..=8), 4)).collect(),
                            )
                        })
                        .collect();
                    PointSet::new(2, pts).unwrap()
                })
                .collect();
            // Target: sum of centroids (always feasible).
            let mut x = Point::zero(2);
            for s in &sets {
                let c = s
                    .points
                    .iter()
                    .fold(Point::zero(2), |acc, p| acc.add(p))
                    .scale(&ratio(1, s.len() as i64));
                x = x.add(&c);
            }
            let d = sf_decompose(&sets, &x).unwrap();
            assert!(d.fractional.len() <= 2, "got {:?}", d.fractional);
            assert_eq!(d.reconstruct(), x);
        }
    }

    #[test]
    fn identity_k_conv_decomposition() {
        // Identical sets: any point of k conv(A) splits with at most n
        // fractional parts.
        let a = PointSet::from_i64(2, &[&[0, 0], &[4, 0], &[0, 4]]);
        let sets = vec![a.clone(), a.clone(), a.clone(), a.clone(), a];
        let x = Point::new(vec![ratio(7, 2), ratio(5, 3)]);
        let d = sf_decompose(&sets, &x).unwrap();
        assert!(d.fractional.len() <= 2);
        assert_eq!(d.reconstruct(), x);
    }

    #[test]
    fn even_copies_cancel() {
        let xs = vec![Point::from_i64(&[1, 0]); 4];
        let r = balance_signs(&xs, &Gauge::unit_ball());
        assert!(r.achieved.abs() < 1e-12);
    }

    #[test]
    fn basis_under_l1_is_sharp() {
        let xs: Vec<Point> = (0..6)
            .map(|i| {
                let mut c = vec![rat(0); 6];
                c[i] = rat(1);
                Point::new(c)
            })
            .collect();
        let r = balance_signs(&xs, &Gauge::l1_ball(6));
        assert_eq!(r.achieved_exact.unwrap(), rat(6));
    }

    #[test]
    fn euclidean_guarantee_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let xs: Vec<Point> = (0..20)
                .map(|_| {
                    Point::new((0..3).map(|_| ratio(rng.gen_range(-16..=16), 16)).collect())
                })
                .collect();
            let max_norm = xs.iter().map(Point::norm).fold(0.0, f64::max);
            let r = balance_signs(&xs, &Gauge::unit_ball());
            assert!(r.achieved <= 3f64.sqrt() * max_norm + 1e-9);
        }
    }

    #[test]
    fn grinberg_on_segment_pairs() {
        let sets = vec![
            PointSet::from_i64(2, &[&[0, 0], &[1, 0]]),
            PointSet::from_i64(2, &[&[0, 0], &[0, 1]]),
        ];
        let g = grinberg_bound_check(&sets).unwrap();
        assert!(g.holds);
        assert!(g.d_lower <= g.d_upper + 1e-12);
    }
}
