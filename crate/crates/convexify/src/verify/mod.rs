//! Verifiers: each builds a concrete instance of one inequality, rate, or
//! counterexample, computes both sides (exactly where possible), and emits a
//! pass/fail report. A "violated" verdict is only ever produced from exact
//! rational arithmetic; float-bounded comparisons that straddle the
//! inequality come back "inconclusive" with the bounds attached.

pub mod gen;
pub mod indices;
pub mod volumes;

use crate::scalar::{format_scalar, Scalar};
use serde::{Deserialize, Serialize};

pub use indices::{
    counterexample_dyn_farkhi, simplex_halfsum_ratio, verify_c_sequence, verify_c_three_sets,
    verify_containment_rate, verify_d_gauge_consistency, verify_d_subadditivity,
    verify_dyn_farkhi_skeleton_q1, verify_v_sequence, verify_v_subadditivity,
};
pub use volumes::{
    counterexample_thm_nonmonotone, n_k_threshold, verify_1d_superadditivity,
    verify_1d_supermod_with_hull, verify_det_supermodularity,
    verify_fractional_superadditivity, verify_projection_monotone,
    verify_refined_superadditivity, verify_supermodularity_convex,
    verify_supermodularity_counterexample, verify_volume_rate, NonmonotoneOutcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    InconclusiveWithBounds,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Violated => write!(f, "violated"),
            Verdict::InconclusiveWithBounds => write!(f, "inconclusive-with-bounds"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifierReport {
    pub name: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    /// True when both sides were computed in exact rational arithmetic.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl VerifierReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Exact comparison lhs <= rhs.
pub fn report_exact_le(
    name: impl Into<String>,
    instance: impl Into<String>,
    lhs: &Scalar,
    rhs: &Scalar,
) -> VerifierReport {
    VerifierReport {
        name: name.into(),
        instance: instance.into(),
        lhs: format_scalar(lhs),
        rhs: format_scalar(rhs),
        verdict: if lhs <= rhs {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
        exact: true,
        details: Vec::new(),
    }
}

/// Exact comparison lhs >= rhs.
pub fn report_exact_ge(
    name: impl Into<String>,
    instance: impl Into<String>,
    lhs: &Scalar,
    rhs: &Scalar,
) -> VerifierReport {
    VerifierReport {
        name: name.into(),
        instance: instance.into(),
        lhs: format_scalar(lhs),
        rhs: format_scalar(rhs),
        verdict: if lhs >= rhs {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
        exact: true,
        details: Vec::new(),
    }
}

/// Bounded comparison lhs <= rhs with certified float brackets: holds when
/// even the worst case (lhs upper vs rhs lower) passes within tolerance,
/// inconclusive otherwise (never "violated" from floats).
pub fn report_bounds_le(
    name: impl Into<String>,
    instance: impl Into<String>,
    lhs: (f64, f64),
    rhs: (f64, f64),
    tol: f64,
) -> VerifierReport {
    let verdict = if lhs.1 <= rhs.0 + tol {
        Verdict::Holds
    } else {
        Verdict::InconclusiveWithBounds
    };
    VerifierReport {
        name: name.into(),
        instance: instance.into(),
        lhs: format!("[{}, {}]", lhs.0, lhs.1),
        rhs: format!("[{}, {}]", rhs.0, rhs.1),
        verdict,
        exact: false,
        details: Vec::new(),
    }
}

/// Fractional partition of [k]: weights β_S > 0 over subsets with
/// Σ_{S∋i} β_S = 1 exactly for every i.
#[derive(Clone, Debug)]
pub struct FractionalPartition {
    pub k: usize,
    pub parts: Vec<(Vec<usize>, Scalar)>,
}

impl FractionalPartition {
    pub fn validate(&self) -> bool {
        use num_traits::{One, Signed, Zero};
        if self.parts.iter().any(|(s, b)| {
            s.is_empty() || !b.is_positive() || s.iter().any(|&i| i >= self.k)
        }) {
            return false;
        }
        (0..self.k).all(|i| {
            let total: Scalar = self
                .parts
                .iter()
                .filter(|(s, _)| s.contains(&i))
                .map(|(_, b)| b.clone())
                .fold(Scalar::zero(), |acc, b| acc + b);
            total.is_one()
        })
    }

    /// The whole ground set with weight 1.
    pub fn trivial(k: usize) -> Self {
        FractionalPartition {
            k,
            parts: vec![((0..k).collect(), Scalar::from_integer(1.into()))],
        }
    }

    /// All k subsets of size k-1, each with weight 1/(k-1).
    pub fn leave_one_out(k: usize) -> Self {
        assert!(k >= 2);
        let beta = crate::scalar::ratio(1, (k - 1) as i64);
        let parts = (0..k)
            .map(|omit| {
                (
                    (0..k).filter(|&i| i != omit).collect::<Vec<_>>(),
                    beta.clone(),
                )
            })
            .collect();
        FractionalPartition { k, parts }
    }
}
