//! Command-line surface: measure rows, Minkowski sums, average-set
//! sequences with CSV/SVG output, named verifiers, balancing, decomposition,
//! counterexample reproduction, and instance generation.
//!
//! Exit codes: 0 when everything holds, 2 when a violation was confirmed by
//! exact arithmetic (a successful refutation), 1 on errors.

use crate::config::Config;
use crate::convexification::{balance_signs, separate_from_sum, sf_decompose, SFPart};
use crate::io::{load_set, save_set, set_to_json, SetKind};
use crate::measures::{deficit, measure_suite, MeasureResult};
use crate::point::Point;
use crate::report::{MeasureCell, Report, SequenceRow};
use crate::scalar::{format_scalar, parse_scalar, rat, Scalar};
use crate::sets::{BoxUnion, Gauge, PointSet};
use crate::svg::emit_plot;
use crate::verify::{self, gen, Verdict, VerifierReport};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "convexify",
    version,
    about = "Exact-rational measures of non-convexity under Minkowski summation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the measure row (delta, d, c, v, diam) of one set.
    Measure {
        #[arg(long = "in")]
        input: String,
        /// Gauge for d: l2, l1, or linf.
        #[arg(long, default_value = "l2")]
        gauge: String,
    },
    /// Minkowski sum of two or more sets of the same kind.
    Sum {
        #[arg(long = "in", required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Measures of the average sets A(k) for k = 1..kmax (CSV; optional SVG).
    Sequence {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Comma-separated subset of c,d,delta,v.
        #[arg(long, default_value = "c,d,delta")]
        measures: String,
        #[arg(long, default_value = "l2")]
        gauge: String,
        /// Also write an SVG line chart.
        #[arg(long)]
        plot: bool,
        /// Write the JSON report (and the SVG, with extension .svg) here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a named verifier over seeded random or canonical instances.
    Verify {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Verifier-specific key=value parameters (repeatable).
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Balance signs of vectors to make the signed sum small in a gauge.
    Balance {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value = "l2")]
        gauge: String,
    },
    /// Decompose a target point in a sum of convex hulls with at most
    /// n fractional summands.
    Decompose {
        #[arg(long = "in", required = true)]
        inputs: Vec<String>,
        /// Comma-separated rational coordinates of the target.
        #[arg(long)]
        target: String,
    },
    /// Reproduce a named counterexample; exits 2 when confirmed.
    Counterexample {
        /// thm-nonmonotone, dyn-farkhi, or supermodularity-1d.
        name: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        d: usize,
        #[arg(long, default_value = "10")]
        f: String,
    },
    /// Generate a seeded random instance file.
    Gen {
        /// points or boxes.
        #[arg(long, default_value = "points")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match execute(cli.command, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn parse_gauge(name: &str, dim: usize) -> Result<Gauge, crate::Error> {
    match name {
        "l2" => Ok(Gauge::unit_ball()),
        "l1" => Ok(Gauge::l1_ball(dim)),
        "linf" => Ok(Gauge::linf_ball(dim)),
        other => Err(crate::Error::InvalidGauge(format!(
            "unknown gauge {other:?}; expected l2, l1, or linf"
        ))),
    }
}

fn cells(measures: &BTreeMap<String, MeasureResult>) -> BTreeMap<String, MeasureCell> {
    measures.iter().map(|(k, m)| (k.clone(), m.into())).collect()
}

fn exit_code(reports: &[VerifierReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        2
    } else {
        0
    }
}

fn execute(cmd: Command, cfg: &Config) -> Result<i32, crate::Error> {
    match cmd {
        Command::Measure { input, gauge } => {
            let set = load_set(&input)?;
            let mut report = Report::new(format!("measure --in {input} --gauge {gauge}"), cfg.seed);
            let measures = match &set {
                SetKind::Points(a) => {
                    let k = parse_gauge(&gauge, a.dim)?;
                    measure_suite(a, &k, cfg.bisection_tol, cfg.budget)
                }
                SetKind::Boxes(u) => {
                    let mut m = BTreeMap::new();
                    m.insert("delta".to_string(), deficit::volume_deficit_boxes(u));
                    m.insert(
                        "volume".to_string(),
                        MeasureResult::exact(u.volume(), "exact box-union volume"),
                    );
                    m
                }
                SetKind::Body(_) => {
                    let mut m = BTreeMap::new();
                    for name in ["delta", "d", "c", "v"] {
                        m.insert(
                            name.to_string(),
                            MeasureResult::exact(rat(0), "convex body: measures vanish"),
                        );
                    }
                    m
                }
            };
            report.rows.push(SequenceRow {
                k: 1,
                measures: cells(&measures),
                rates: BTreeMap::new(),
            });
            print!("{}", report.to_json());
            Ok(0)
        }
        Command::Sum { inputs, out } => {
            let mut sets = inputs
                .iter()
                .map(|p| load_set(p))
                .collect::<Result<Vec<_>, _>>()?;
            if sets.len() < 2 {
                return Err(crate::Error::Input("sum needs at least two --in files".into()));
            }
            let mut acc = sets.remove(0);
            for s in sets {
                acc = match (acc, s) {
                    (SetKind::Points(a), SetKind::Points(b)) => {
                        SetKind::Points(a.minkowski_sum(&b)?)
                    }
                    (SetKind::Boxes(a), SetKind::Boxes(b)) => SetKind::Boxes(a.minkowski_sum(&b)?),
                    (SetKind::Body(a), SetKind::Body(b)) => SetKind::Body(a.minkowski_sum(&b)),
                    _ => {
                        return Err(crate::Error::Input(
                            "sum requires sets of the same kind".into(),
                        ))
                    }
                };
            }
            match out {
                Some(path) => save_set(&acc, &path)?,
                None => println!(
                    "{}",
                    serde_json::to_string_pretty(&set_to_json(&acc))?
                ),
            }
            Ok(0)
        }
        Command::Sequence {
            input,
            kmax,
            measures,
            gauge,
            plot,
            out,
        } => {
            let set = load_set(&input)?;
            let wanted: Vec<&str> = measures.split(',').map(str::trim).collect();
            let mut report = Report::new(
                format!("sequence --in {input} --kmax {kmax} --measures {measures}"),
                cfg.seed,
            );
            for k in 1..=kmax.max(1) {
                let row = match &set {
                    SetKind::Points(a) => {
                        let ak = a.average_set(k, cfg.cap)?;
                        let g = parse_gauge(&gauge, a.dim)?;
                        let all = measure_suite(&ak, &g, cfg.bisection_tol, cfg.budget);
                        all.into_iter()
                            .filter(|(name, _)| wanted.contains(&name.as_str()))
                            .collect::<BTreeMap<_, _>>()
                    }
                    SetKind::Boxes(u) => {
                        if !wanted.contains(&"delta") {
                            return Err(crate::Error::Input(
                                "box unions support only the delta measure".into(),
                            ));
                        }
                        let mut m = BTreeMap::new();
                        m.insert(
                            "delta".to_string(),
                            deficit::volume_deficit_boxes(&u.average_set(k)),
                        );
                        m
                    }
                    SetKind::Body(_) => {
                        return Err(crate::Error::Input(
                            "sequence needs a points or boxes set (a convex body is fixed under averaging)".into(),
                        ))
                    }
                };
                let mut rates = BTreeMap::new();
                for name in ["c", "d"] {
                    if let Some(m) = row.get(name) {
                        rates.insert(name.to_string(), k as f64 * m.value);
                    }
                }
                report.rows.push(SequenceRow {
                    k,
                    measures: cells(&row),
                    rates,
                });
            }
            report.flag_monotone();
            print!("{}", report.to_csv());
            if let Some(path) = &out {
                std::fs::write(path, report.to_json())?;
            }
            if plot {
                let (svg, warnings) = emit_plot(&report);
                for w in warnings {
                    eprintln!("warning: {w}");
                }
                let svg_path = match &out {
                    Some(path) => format!("{}.svg", path.trim_end_matches(".json")),
                    None => format!("{}/sequence.svg", cfg.outdir),
                };
                std::fs::write(&svg_path, svg)?;
                eprintln!("plot written to {svg_path}");
            }
            Ok(0)
        }
        Command::Verify {
            name,
            seed,
            trials,
            params,
        } => {
            let params = parse_params(&params)?;
            let reports = run_verifier(&name, seed, trials, &params, cfg)?;
            println!("{}", serde_json::to_string_pretty(&reports)?);
            summarize(&reports);
            Ok(exit_code(&reports))
        }
        Command::Balance { input, gauge } => {
            let set = load_set(&input)?;
            let a = match set {
                SetKind::Points(a) => a,
                _ => return Err(crate::Error::Input("balance needs a points set".into())),
            };
            let g = parse_gauge(&gauge, a.dim)?;
            let result = balance_signs(&a.points, &g);
            let n = a.dim as f64;
            let max_norm = a
                .points
                .iter()
                .map(|p| g.norm(p))
                .fold(0.0_f64, f64::max);
            let guarantee = match g {
                Gauge::EuclideanBall(_) => n.sqrt() * max_norm,
                _ => n * max_norm,
            };
            let doc = json!({
                "signs": result.signs,
                "achieved": result.achieved,
                "achieved_exact": result.achieved_exact.as_ref().map(format_scalar),
                "guarantee": guarantee,
                "margin": guarantee - result.achieved,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            if result.achieved > guarantee + cfg.float_tol {
                eprintln!("error: achieved norm exceeds the guarantee");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Decompose { inputs, target } => {
            let sets = inputs
                .iter()
                .map(|p| match load_set(p)? {
                    SetKind::Points(a) => Ok(a),
                    _ => Err(crate::Error::Input(format!("{p}: decompose needs points sets"))),
                })
                .collect::<Result<Vec<PointSet>, _>>()?;
            let coords = target
                .split(',')
                .map(|c| parse_scalar(c.trim()).map_err(crate::Error::Input))
                .collect::<Result<Vec<Scalar>, _>>()?;
            let x = Point::new(coords);
            match sf_decompose(&sets, &x) {
                Ok(dec) => {
                    let parts: Vec<serde_json::Value> = dec
                        .parts
                        .iter()
                        .map(|p| match p {
                            SFPart::Single(pt) => json!({
                                "kind": "single",
                                "point": pt.0.iter().map(format_scalar).collect::<Vec<_>>(),
                            }),
                            SFPart::Mixed(c) => json!({
                                "kind": "mixed",
                                "points": c.points.iter()
                                    .map(|pt| pt.0.iter().map(format_scalar).collect::<Vec<_>>())
                                    .collect::<Vec<_>>(),
                                "weights": c.weights.iter().map(format_scalar).collect::<Vec<_>>(),
                            }),
                        })
                        .collect();
                    let doc = json!({
                        "target": x.0.iter().map(format_scalar).collect::<Vec<_>>(),
                        "fractional": dec.fractional,
                        "parts": parts,
                        "reconstructs_exactly": dec.reconstruct() == x,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                    Ok(0)
                }
                Err(crate::Error::NotInHull) => {
                    let sep = separate_from_sum(&sets, &x);
                    let doc = json!({
                        "target": x.0.iter().map(format_scalar).collect::<Vec<_>>(),
                        "feasible": false,
                        "separating_functional": sep.map(|(nu, gap)| json!({
                            "nu": nu.0.iter().map(format_scalar).collect::<Vec<_>>(),
                            "gap": gap,
                        })),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                    Err(crate::Error::NotInHull)
                }
                Err(e) => Err(e),
            }
        }
        Command::Counterexample { name, k, d, f } => {
            let report = match name.as_str() {
                "thm-nonmonotone" => {
                    let outcome = verify::counterexample_thm_nonmonotone(k, d);
                    let mut r = outcome.report;
                    r.details.push(format!("n_{k} = {}", outcome.n_k));
                    r
                }
                "dyn-farkhi" => {
                    let fv = parse_scalar(&f).map_err(crate::Error::Input)?;
                    verify::counterexample_dyn_farkhi(&fv)
                }
                "supermodularity-1d" => verify::verify_supermodularity_counterexample(),
                other => {
                    return Err(crate::Error::Input(format!(
                        "unknown counterexample {other:?}; expected thm-nonmonotone, \
                         dyn-farkhi, or supermodularity-1d"
                    )))
                }
            };
            let reports = vec![report];
            println!("{}", serde_json::to_string_pretty(&reports)?);
            summarize(&reports);
            Ok(exit_code(&reports))
        }
        Command::Gen {
            kind,
            dim,
            seed,
            size,
            out,
        } => {
            let mut r = gen::rng(seed);
            let set = match kind.as_str() {
                "points" => SetKind::Points(gen::rand_point_set(&mut r, dim, size)),
                "boxes" => SetKind::Boxes(gen::rand_box_union(&mut r, dim, size.max(1))),
                other => {
                    return Err(crate::Error::Input(format!(
                        "unknown kind {other:?}; expected points or boxes"
                    )))
                }
            };
            match out {
                Some(path) => save_set(&set, &path)?,
                None => println!("{}", serde_json::to_string_pretty(&set_to_json(&set))?),
            }
            Ok(0)
        }
    }
}

fn summarize(reports: &[VerifierReport]) {
    let mut holds = 0;
    let mut violated = 0;
    let mut inconclusive = 0;
    for r in reports {
        match r.verdict {
            Verdict::Holds => holds += 1,
            Verdict::Violated => violated += 1,
            Verdict::InconclusiveWithBounds => inconclusive += 1,
        }
    }
    eprintln!("{:<32} {:<26} result", "name", "instance");
    for r in reports {
        eprintln!(
            "{:<32} {:<26} {} ({} vs {})",
            r.name,
            truncate(&r.instance, 26),
            r.verdict,
            r.lhs,
            r.rhs
        );
    }
    eprintln!("{holds} holds, {violated} violated, {inconclusive} inconclusive");
}

fn truncate(s: &str, n: usize) -> String {
    if s.len() <= n {
        s.to_string()
    } else {
        format!("{}...", &s[..n - 3])
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, crate::Error> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| crate::Error::Input(format!("--param {p:?} is not key=value")))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn param_usize(
    params: &BTreeMap<String, String>,
    key: &str,
    default: usize,
) -> Result<usize, crate::Error> {
    match params.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| crate::Error::Input(format!("--param {key}={v} is not an integer"))),
        None => Ok(default),
    }
}

fn param_scalar(
    params: &BTreeMap<String, String>,
    key: &str,
    default: &str,
) -> Result<Scalar, crate::Error> {
    let raw = params.get(key).map(String::as_str).unwrap_or(default);
    parse_scalar(raw).map_err(crate::Error::Input)
}

/// Runs the named verifier `trials` times on seeded random instances (or
/// once, for canonical single-instance statements).
pub fn run_verifier(
    name: &str,
    seed: u64,
    trials: usize,
    params: &BTreeMap<String, String>,
    cfg: &Config,
) -> Result<Vec<VerifierReport>, crate::Error> {
    let mut r = gen::rng(seed);
    let tol = cfg.bisection_tol;
    let budget = cfg.budget;
    let mut out = Vec::new();
    match name {
        "superadditivity-1d" => {
            for _ in 0..trials {
                let sets: Vec<BoxUnion> =
                    (0..3).map(|_| gen::rand_box_union(&mut r, 1, 3)).collect();
                out.push(verify::verify_1d_superadditivity(&sets));
            }
        }
        "refined-superadditivity" => {
            let dim = param_usize(params, "dim", 2)?;
            for _ in 0..trials {
                let sets: Vec<BoxUnion> = (0..3)
                    .map(|_| gen::rand_box_union(&mut r, dim, 2))
                    .collect();
                out.push(verify::verify_refined_superadditivity(&sets));
            }
        }
        "volume-rate" => {
            let dim = param_usize(params, "dim", 2)?;
            let kmax = param_usize(params, "kmax", 4)?;
            for _ in 0..trials {
                let a = gen::rand_box_union(&mut r, dim, 3);
                for k in 2..=kmax {
                    out.push(verify::verify_volume_rate(&a, k));
                }
            }
        }
        "supermodularity" => {
            let dim = param_usize(params, "dim", 2)?;
            for _ in 0..trials {
                let hulls: Vec<_> = (0..3)
                    .map(|_| {
                        let b = gen::rand_box(&mut r, dim);
                        BoxUnion::new(dim, vec![b]).unwrap().hull()
                    })
                    .collect();
                out.push(verify::verify_supermodularity_convex(
                    &hulls[0], &hulls[1], &hulls[2],
                ));
            }
        }
        "supermodularity-counterexample" => {
            out.push(verify::verify_supermodularity_counterexample());
        }
        "supermod-conv-fix" => {
            for _ in 0..trials {
                let a = gen::rand_box_union(&mut r, 1, 3);
                let b = gen::rand_box_union(&mut r, 1, 3);
                let c = gen::rand_box_union(&mut r, 1, 3);
                out.push(verify::verify_1d_supermod_with_hull(&a, &b, &c));
            }
        }
        "det-supermodularity" => {
            let n = param_usize(params, "n", 3)?;
            for _ in 0..trials {
                let k1 = gen::rand_psd(&mut r, n);
                let k2 = gen::rand_psd(&mut r, n);
                let k3 = gen::rand_psd(&mut r, n);
                out.push(verify::verify_det_supermodularity(&k1, &k2, &k3));
            }
        }
        "fractional-superadditivity" => {
            let dim = param_usize(params, "dim", 2)?;
            let k = param_usize(params, "k", 3)?;
            for _ in 0..trials {
                let boxes: Vec<(Point, Point)> =
                    (0..k).map(|_| gen::rand_box(&mut r, dim)).collect();
                let fp = gen::rand_fractional_partition(&mut r, k);
                out.push(verify::verify_fractional_superadditivity(&boxes, &fp));
            }
        }
        "c-three-sets" => {
            let dim = param_usize(params, "dim", 1)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, dim, 4);
                let b = gen::rand_point_set(&mut r, dim, 4);
                let c = gen::rand_point_set(&mut r, dim, 4);
                out.push(verify::verify_c_three_sets(&a, &b, &c, tol));
            }
        }
        "c-sequence" => {
            let kmax = param_usize(params, "kmax", 6)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, 1, 5);
                out.push(verify::verify_c_sequence(&a, kmax, tol, cfg.cap));
            }
        }
        "v-subadditivity" => {
            let dim = param_usize(params, "dim", 2)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, dim, 6);
                let b = gen::rand_point_set(&mut r, dim, 6);
                out.push(verify::verify_v_subadditivity(&a, &b, budget));
            }
        }
        "v-sequence" => {
            let kmax = param_usize(params, "kmax", 3)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, 2, 5);
                out.push(verify::verify_v_sequence(&a, kmax, budget, cfg.cap));
            }
        }
        "d-subadditivity" => {
            let dim = param_usize(params, "dim", 2)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, dim, 5);
                let b = gen::rand_point_set(&mut r, dim, 5);
                let g = Gauge::unit_ball();
                out.push(verify::verify_d_subadditivity(&a, &b, &g, tol, budget));
            }
        }
        "gauge-consistency" => {
            let dim = param_usize(params, "dim", 2)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, dim, 5);
                out.push(verify::verify_d_gauge_consistency(&a, tol, budget));
            }
        }
        "dyn-farkhi" => {
            let f = param_scalar(params, "f", "10")?;
            out.push(verify::counterexample_dyn_farkhi(&f));
        }
        "dyn-farkhi-q1" => {
            let f = param_scalar(params, "f", "1/2")?;
            out.push(verify::verify_dyn_farkhi_skeleton_q1(&f, budget));
        }
        "containment-rate" => {
            let kmax = param_usize(params, "kmax", 8)?;
            for _ in 0..trials {
                let a = gen::rand_point_set(&mut r, 2, 6);
                out.push(verify::verify_containment_rate(&a, kmax, cfg.cap));
            }
        }
        "projection-monotone" => {
            let kmax = param_usize(params, "kmax", 4)?;
            for _ in 0..trials {
                let a = gen::rand_box_union(&mut r, 2, 3);
                out.push(verify::verify_projection_monotone(&a, kmax));
            }
        }
        "simplex-halfsum" => {
            let n = param_usize(params, "n", 3)?;
            out.push(verify::simplex_halfsum_ratio(n));
        }
        "nonmonotone" => {
            let k = param_usize(params, "k", 2)?;
            let d = param_usize(params, "d", 6)?;
            out.push(verify::counterexample_thm_nonmonotone(k, d).report);
        }
        other => {
            return Err(crate::Error::Input(format!(
                "unknown verifier {other:?}; known: superadditivity-1d, \
                 refined-superadditivity, volume-rate, supermodularity, \
                 supermodularity-counterexample, supermod-conv-fix, \
                 det-supermodularity, fractional-superadditivity, c-three-sets, \
                 c-sequence, v-subadditivity, v-sequence, d-subadditivity, \
                 gauge-consistency, dyn-farkhi, dyn-farkhi-q1, containment-rate, \
                 projection-monotone, simplex-halfsum, nonmonotone"
            )))
        }
    }
    Ok(out)
}
