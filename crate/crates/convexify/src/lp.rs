//! Exact rational linear programming (dense two-phase simplex, Bland's rule)
//! and Carathéodory-type support reduction. Everything here is exact: the
//! solver never touches floats, so strict-inequality verdicts downstream can
//! rely on its answers.

use crate::point::{affine_dependence, kernel_basis, Point};
use crate::scalar::{rat, Scalar};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// minimize (or maximize) objective · x subject to rows; variables are
/// nonnegative unless flagged free (free variables are split internally).
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Scalar>,
    pub maximize: bool,
    pub rows: Vec<(Vec<Scalar>, Rel, Scalar)>,
    pub free: Vec<bool>,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<Scalar>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            maximize: false,
            rows: Vec::new(),
            free: vec![false; n],
        }
    }

    pub fn maximize(objective: Vec<Scalar>) -> Self {
        let mut lp = Self::minimize(objective);
        lp.maximize = true;
        lp
    }

    pub fn constrain(&mut self, coeffs: Vec<Scalar>, rel: Rel, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.objective.len(), "row width mismatch");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Scalar>, value: Scalar },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<Scalar>, Scalar)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

/// Internal standard-form tableau: equality constraints, nonnegative
/// variables, rhs >= 0 after normalization.
struct Tableau {
    /// m x (cols+1); last column is the rhs.
    t: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Scalar {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..self.t.len() {
            if i != row && !self.t[i][col].is_zero() {
                let f = self.t[i][col].clone();
                for j in 0..=self.cols {
                    let t = &self.t[row][j] * &f;
                    self.t[i][j] = &self.t[i][j] - t;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes cost over the current feasible basis with Bland's rule.
    /// `allowed` masks columns eligible to enter. Returns false on
    /// unboundedness.
    fn run_simplex(&mut self, cost: &[Scalar], allowed: &[bool]) -> bool {
        loop {
            // Reduced costs c_j - c_B B^{-1} A_j, recomputed each round:
            // simple and exact, and cheap at the sizes this crate handles.
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        let t = &cost[b] * &self.t[i][j];
                        red = red - t;
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break; // Bland: first improving index.
                }
            }
            let Some(j) = entering else { return true };
            let mut leave: Option<usize> = None;
            for i in 0..self.t.len() {
                if self.t[i][j].is_positive() {
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            let cur = self.rhs(l) / &self.t[l][j];
                            let cand = self.rhs(i) / &self.t[i][j];
                            cand < cur || (cand == cur && self.basis[i] < self.basis[l])
                        }
                    };
                    if better {
                        leave = Some(i);
                    }
                }
            }
            let Some(i) = leave else { return false };
            self.pivot(i, j);
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n_orig = lp.objective.len();
    // Split free variables into positive parts: x = u - v.
    let n_free = lp.free.iter().filter(|&&f| f).count();
    let n = n_orig + n_free;
    let expand = |row: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n);
        out.extend(row.iter().cloned());
        for (j, &f) in lp.free.iter().enumerate() {
            if f {
                out.push(-row[j].clone());
            }
        }
        out
    };
    let mut cost = expand(&lp.objective);
    if lp.maximize {
        for c in cost.iter_mut() {
            *c = -c.clone();
        }
    }

    // Equality standard form with slacks/surpluses, rhs >= 0.
    let m = lp.rows.len();
    let n_slack = lp
        .rows
        .iter()
        .filter(|(_, rel, _)| *rel != Rel::Eq)
        .count();
    let cols = n + n_slack + m; // structurals, slacks, artificials
    let mut t: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut slack_at = n;
    for (ri, (row, rel, rhs)) in lp.rows.iter().enumerate() {
        let mut r = vec![Scalar::zero(); cols + 1];
        let exp = expand(row);
        let flip = rhs.is_negative();
        for (j, v) in exp.into_iter().enumerate() {
            r[j] = if flip { -v } else { v };
        }
        let rel = match (rel, flip) {
            (Rel::Eq, _) => Rel::Eq,
            (Rel::Le, false) | (Rel::Ge, true) => Rel::Le,
            _ => Rel::Ge,
        };
        match rel {
            Rel::Le => {
                r[slack_at] = rat(1);
                slack_at += 1;
            }
            Rel::Ge => {
                r[slack_at] = rat(-1);
                slack_at += 1;
            }
            Rel::Eq => {}
        }
        r[n + n_slack + ri] = rat(1); // artificial
        r[cols] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(r);
    }
    let basis: Vec<usize> = (0..m).map(|i| n + n_slack + i).collect();
    let mut tab = Tableau { t, basis, cols };

    // Phase 1: minimize the artificials.
    let mut phase1 = vec![Scalar::zero(); cols];
    for c in phase1.iter_mut().skip(n + n_slack) {
        *c = rat(1);
    }
    let allowed_all = vec![true; cols];
    if !tab.run_simplex(&phase1, &allowed_all) {
        unreachable!("phase 1 is bounded below by zero");
    }
    let art_sum: Scalar = (0..m)
        .filter(|&i| tab.basis[i] >= n + n_slack)
        .map(|i| tab.rhs(i).clone())
        .sum();
    if !art_sum.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (degenerate) artificials out of the basis.
    for i in 0..m {
        if tab.basis[i] >= n + n_slack {
            if let Some(j) = (0..n + n_slack).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2: original objective with artificials barred from entering.
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(n + n_slack) {
        *a = false;
    }
    let mut full_cost = vec![Scalar::zero(); cols];
    full_cost[..n].clone_from_slice(&cost[..n]);
    if !tab.run_simplex(&full_cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut xs = vec![Scalar::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            xs[b] = tab.rhs(i).clone();
        }
    }
    let mut x = xs[..n_orig].to_vec();
    let mut fi = n_orig;
    for (j, &f) in lp.free.iter().enumerate() {
        if f {
            x[j] = &x[j] - &xs[fi];
            fi += 1;
        }
    }
    let value: Scalar = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

/// A convex combination of points whose weights are positive and sum to one.
#[derive(Clone, Debug)]
pub struct ConvexCombination {
    pub points: Vec<Point>,
    pub weights: Vec<Scalar>,
}

impl ConvexCombination {
    pub fn new(points: Vec<Point>, weights: Vec<Scalar>) -> Self {
        assert_eq!(points.len(), weights.len());
        debug_assert!(weights.iter().all(Scalar::is_positive));
        debug_assert!(weights.iter().sum::<Scalar>().is_one());
        ConvexCombination { points, weights }
    }

    pub fn barycenter(&self) -> Point {
        let dim = self.points[0].dim();
        let mut acc = Point::zero(dim);
        for (p, w) in self.points.iter().zip(&self.weights) {
            acc = acc.add(&p.scale(w));
        }
        acc
    }

    /// Drops zero-weight entries (weights may hit zero during pivoting).
    fn compact(points: Vec<Point>, weights: Vec<Scalar>) -> Self {
        let mut ps = Vec::new();
        let mut ws = Vec::new();
        for (p, w) in points.into_iter().zip(weights) {
            if w.is_positive() {
                ps.push(p);
                ws.push(w);
            }
        }
        ConvexCombination {
            points: ps,
            weights: ws,
        }
    }
}

/// Exact hull-membership test: feasible iff x is a convex combination of the
/// given points; the witness reproduces x exactly.
pub fn in_hull(x: &Point, points: &[Point]) -> Option<ConvexCombination> {
    let n = x.dim();
    let k = points.len();
    let mut lp = LinearProgram::minimize(vec![Scalar::zero(); k]);
    for j in 0..n {
        let row: Vec<Scalar> = points.iter().map(|p| p.0[j].clone()).collect();
        lp.constrain(row, Rel::Eq, x.0[j].clone());
    }
    lp.constrain(vec![rat(1); k], Rel::Eq, rat(1));
    let (w, _) = solve(&lp).optimal()?;
    Some(ConvexCombination::compact(points.to_vec(), w))
}

/// If x is outside conv(points), returns (nu, t) with <nu, x> > t >= <nu, a>
/// for every input point a; None when x is inside.
pub fn separating_functional(x: &Point, points: &[Point]) -> Option<(Point, Scalar)> {
    let n = x.dim();
    // Variables: nu (free, n) and t (free); maximize <nu,x> - t subject to
    // <nu,a> - t <= 0 for all a and the box normalization |nu_j| <= 1.
    let mut obj = x.0.clone();
    obj.push(rat(-1));
    let mut lp = LinearProgram::maximize(obj);
    for v in 0..=n {
        lp.set_free(v);
    }
    for a in points {
        let mut row = a.0.clone();
        row.push(rat(-1));
        lp.constrain(row, Rel::Le, Scalar::zero());
    }
    for j in 0..n {
        let mut row = vec![Scalar::zero(); n + 1];
        row[j] = rat(1);
        lp.constrain(row.clone(), Rel::Le, rat(1));
        row[j] = rat(-1);
        lp.constrain(row, Rel::Le, rat(1));
    }
    let (sol, value) = solve(&lp).optimal()?;
    if value.is_positive() {
        let nu = Point::new(sol[..n].to_vec());
        let t = sol[n].clone();
        Some((nu, t))
    } else {
        None
    }
}

/// Picks a sign for the dependence vector so it has a positive entry and,
/// when `quadratic`, so the pivot never increases sum p_i |a_i|^2.
fn orient(mu: Vec<Scalar>, points: &[Point], quadratic: bool) -> Vec<Scalar> {
    if quadratic {
        let q: Scalar = mu
            .iter()
            .zip(points)
            .map(|(m, p)| m * &p.norm2())
            .sum();
        // Affine dependences sum to zero, so both orientations have a
        // positive entry; only the quadratic form picks the sign.
        if q.is_negative() {
            return mu.into_iter().map(|m| -m).collect();
        }
        return mu;
    }
    if mu.iter().any(Scalar::is_positive) {
        mu
    } else {
        mu.into_iter().map(|m| -m).collect()
    }
}

fn reduce_step(points: &mut Vec<Point>, weights: &mut Vec<Scalar>, mu: &[Scalar]) {
    // Largest step keeping all weights nonnegative zeroes at least one.
    let mut t: Option<Scalar> = None;
    for (w, m) in weights.iter().zip(mu) {
        if m.is_positive() {
            let cand = w / m;
            if t.as_ref().map_or(true, |cur| cand < *cur) {
                t = Some(cand);
            }
        }
    }
    let t = t.expect("dependence vector must have a positive entry");
    let mut ps = Vec::new();
    let mut ws = Vec::new();
    for ((p, w), m) in points.drain(..).zip(weights.drain(..)).zip(mu) {
        let nw = &w - &t * m;
        if nw.is_positive() {
            ps.push(p);
            ws.push(nw);
        }
    }
    *points = ps;
    *weights = ws;
}

fn caratheodory_impl(c: &ConvexCombination, quadratic: bool) -> ConvexCombination {
    let n = c.points[0].dim();
    let mut points = c.points.clone();
    let mut weights = c.weights.clone();
    while points.len() > n + 1 {
        let Some(mu) = affine_dependence(&points) else {
            break; // affinely independent already
        };
        let mu = orient(mu, &points, quadratic);
        reduce_step(&mut points, &mut weights, &mu);
    }
    ConvexCombination { points, weights }
}

/// Reduces a convex combination to at most n+1 support points in R^n,
/// preserving the barycenter exactly.
pub fn caratheodory_reduce(c: &ConvexCombination) -> ConvexCombination {
    caratheodory_impl(c, false)
}

/// Same reduction, with each pivot chosen so sum p_i |a_i|^2 never increases.
pub fn caratheodory_reduce_quadratic(c: &ConvexCombination) -> ConvexCombination {
    caratheodory_impl(c, true)
}

/// Conic Carathéodory: a positive combination sum w_i z_i in R^d is reduced
/// to at most d support points with the same sum. Used by the lifted
/// Shapley–Folkman construction.
pub fn caratheodory_reduce_conic(
    points: &[Point],
    weights: &[Scalar],
) -> (Vec<Point>, Vec<Scalar>) {
    let d = points[0].dim();
    let mut points = points.to_vec();
    let mut weights = weights.to_vec();
    while points.len() > d {
        let rows: Vec<Vec<Scalar>> = (0..d)
            .map(|j| points.iter().map(|p| p.0[j].clone()).collect())
            .collect();
        let Some(mu) = kernel_basis(&rows).into_iter().next() else {
            break; // linearly independent already
        };
        let mu = orient(mu, &points, false);
        reduce_step(&mut points, &mut weights, &mu);
    }
    (points, weights)
}
