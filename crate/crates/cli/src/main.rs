//! `concavlab`: solvers, sweeps and reproductions from the command line.
//!
//! Exit codes: 0 success, 1 a `check` sweep found a violation, 2 bad input,
//! 3 solver did not converge, 4 a reproduction did not reproduce.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use concavlab::bodies::{Body, Box};
use concavlab::functionals::{isoperimetric_quotient, Functional};
use concavlab::geometry::io::MeasureJson;
use concavlab::inequalities::{
    lambda1_limit, lambda2_bm_search, reproduce_rem1, reproduce_rem3, reproduce_rem3_with, run_sweep, torsion_limit,
    triangle_refinement, Inequality, SweepConfig,
};
use concavlab::local::coercivity_profile;
use concavlab::mu::MuStructure;
use concavlab::reconstruction::{
    blaschke_sum, decompose, is_indecomposable, solve_minkowski, solve_minkowski_with_diagnostics, SolverConfig,
};
use concavlab::{Error, Polytope};
use serde::Serialize;
use serde_json::json;

use io::{body_arg, emit, num, opt_num, polytope_of, read_body, read_measure, CliError, CliResult, Format, Output, Table};

#[derive(Parser)]
#[command(name = "concavlab", version, about = "Concavity inequalities for convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format; CSV is available for tabular reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here and the summary to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Polytope with a prescribed surface area measure (JSON `{dim, atoms: [{dir, weight}]}`).
    SolveMinkowski {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
    },
    /// Blaschke sum of two polytopes given as JSON files.
    BlaschkeSum {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// µ-sum under a structure, with its concavity deficit.
    MuSum {
        /// volume, lambda1-box or torsion-rect.
        #[arg(long)]
        structure: MuStructure,
        /// Body descriptor (`box:1,2,3`, `rect:2,1`, ...) or `@file.json`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Seeded sweep of an inequality over random pairs.
    Check {
        /// bm, ks, mu-concavity or quant-ks.
        #[arg(long)]
        inequality: Inequality,
        /// volume, mean-width, lambda1, lambda2, torsion or capacity.
        #[arg(long)]
        functional: Functional,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Violation threshold, relative to max(1, |rhs|).
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Searches for counterexamples.
    Search {
        #[arg(long, value_enum)]
        case: SearchCase,
        #[arg(long, default_value_t = 61)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples on top of the grid (lambda2-bm).
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Reproduces a computation from the literature.
    Reproduce {
        #[arg(long, value_enum)]
        case: ReproduceCase,
        /// Highest degree for second-variation.
        #[arg(long, default_value_t = 6)]
        lmax: usize,
    },
    /// Isoperimetric quotient of a body.
    Quotient {
        #[arg(long)]
        functional: Functional,
        #[arg(long)]
        body: String,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SearchCase {
    /// λ₁ Kneser-Süss violation on boxes.
    Rem3,
    /// λ₂ Brunn-Minkowski violation on rectangles.
    Lambda2Bm,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ReproduceCase {
    /// Cap²/S diverges along prolate spheroids.
    Rem1,
    /// λ₁ Kneser-Süss fails for a pair of plates.
    Rem3,
    /// Torsion quotient of thin rectangles tends to zero.
    TorsionLimit,
    /// λ₁ quotient of thin rectangles.
    Lambda1Limit,
    /// λ₁ quotient of the equilateral triangle.
    Triangle,
    /// Second variation profile on spherical harmonics (CSV).
    SecondVariation,
    /// Blaschke decomposition of the cube; the simplex is indecomposable.
    DecomposeDemo,
}

fn solver(tol: f64) -> CliResult<SolverConfig> {
    if !(tol > 0.0) {
        return Err(CliError::Input(format!("--tol must be positive, got {tol}")));
    }
    Ok(SolverConfig::with_tol(tol))
}

fn failed_unless(ok: bool, out: Output, why: &str) -> CliResult<Output> {
    if ok {
        Ok(out)
    } else {
        Err(CliError::Failed(format!("{why}; {}", out.summary)))
    }
}

fn run(cmd: &Command) -> CliResult<Output> {
    let config = io::to_value(cmd)?;
    match cmd {
        Command::SolveMinkowski { measure, tol, max_iter } => {
            let m = read_measure(measure)?;
            let cfg = SolverConfig {
                max_iter: *max_iter,
                ..solver(*tol)?
            };
            let (p, diag) = solve_minkowski_with_diagnostics(&m, &cfg)?;
            let summary = format!(
                "{} facets, {} vertices, volume {:.12}; {} iterations, max relative area error {:.2e}",
                p.facets().len(),
                p.vertices().len(),
                p.volume(),
                diag.iters,
                diag.max_rel_area_err
            );
            Output::new(summary, &Body::Polytope(p))
        }
        Command::BlaschkeSum { a, b, tol } => {
            let (pa, pb) = (polytope_of(read_body(a)?)?, polytope_of(read_body(b)?)?);
            let s = blaschke_sum(&pa, &pb, &solver(*tol)?)?;
            let summary = format!(
                "{} facets, volume {:.12} (parts {:.12}, {:.12})",
                s.facets().len(),
                s.volume(),
                pa.volume(),
                pb.volume()
            );
            Output::new(summary, &Body::Polytope(s))
        }
        Command::MuSum { structure, a, b } => {
            let (k, l) = (body_arg(a)?, body_arg(b)?);
            let cfg = SolverConfig::default();
            let sum = structure.mu_sum(&k, &l, &cfg)?;
            let report = structure.concavity_deficit(&k, &l, &cfg)?;
            let summary = format!("{structure} sum {sum}; concavity deficit {:.6e}", report.deficit);
            Output::new(summary, &json!({ "config": config, "sum": sum, "deficit": report }))
        }
        Command::Check {
            inequality,
            functional,
            samples,
            seed,
            dim,
            tol,
        } => {
            let mut cfg = SweepConfig::new(*inequality, *functional, *samples, *seed);
            cfg.dim = *dim;
            cfg.tol = *tol;
            let s = run_sweep(&cfg)?;
            let mut summary = format!(
                "{inequality} / {functional}: {} pairs, {} failures, {} violations, min deficit {:.6e}",
                s.evaluated, s.failures, s.violations, s.min_deficit
            );
            if let (Some(lo), Some(hi)) = (s.implied_c_min, s.implied_c_max) {
                summary += &format!(", implied constant in [{lo:.4}, {hi:.4}]");
            }
            let table = Table {
                header: [
                    "index", "seed", "bodies", "lhs", "rhs", "deficit", "normalized_deficit", "implied_c", "error",
                ]
                .map(String::from)
                .to_vec(),
                rows: s
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.index.to_string(),
                            r.seed.to_string(),
                            r.bodies.join(";"),
                            num(r.lhs),
                            num(r.rhs),
                            num(r.deficit),
                            num(r.normalized_deficit),
                            opt_num(r.implied_c),
                            r.error.clone().unwrap_or_default(),
                        ]
                    })
                    .collect(),
            };
            let mut out = Output::new(summary, &s)?.with_table(table);
            if s.violated() {
                out.exit = 1;
            }
            Ok(out)
        }
        Command::Search {
            case,
            grid,
            seed,
            samples,
        } => match case {
            SearchCase::Rem3 => {
                let r = reproduce_rem3_with(*grid)?;
                let best = &r.family_best;
                let summary = format!(
                    "witness deficit {:.6e}; family minimum {:.6e} at {:?}",
                    r.witness.deficit, best.deficit, best.bodies
                );
                Output::new(summary, &json!({ "config": config, "report": r }))
            }
            SearchCase::Lambda2Bm => {
                let r = lambda2_bm_search(*grid, *samples, *seed)?;
                let summary = format!(
                    "{} pairs; best deficit {:.6e} (normalized {:.3e}) at {:?}",
                    r.evaluated, r.best.deficit, r.best.normalized_deficit, r.best.bodies
                );
                let ok = r.violation_found;
                let out = Output::new(summary, &json!({ "config": config, "report": r }))?;
                failed_unless(ok, out, "no violation found")
            }
        },
        Command::Reproduce { case, lmax } => reproduce(*case, *lmax, config),
        Command::Quotient { functional, body } => {
            let b = body_arg(body)?;
            let q = isoperimetric_quotient(*functional, &b)?;
            let summary = format!(
                "E = {:.12} ({}^{} = {:.6e} over {} {:.6e})",
                q.value, functional, q.exponent, q.numerator, q.denominator_kind, q.denominator
            );
            Output::new(summary, &json!({ "config": config, "report": q }))
        }
    }
}

#[derive(Serialize)]
struct DecomposeDemo {
    measure: MeasureJson,
    first: MeasureJson,
    second: MeasureJson,
    first_body: Body,
    second_body: Body,
    /// Largest `|m'_i + m''_i - m_i| / |m|`.
    sum_error: f64,
    simplex_indecomposable: bool,
}

fn decompose_demo() -> CliResult<DecomposeDemo> {
    let m = Box::cube(3, 1.0)?.to_polytope().surface_area_measure();
    let (a, b) = decompose(&m)?;
    let cfg = SolverConfig::default();
    let (pa, pb) = (solve_minkowski(&a, &cfg)?, solve_minkowski(&b, &cfg)?);
    let sum_error = m
        .atoms()
        .iter()
        .map(|x| (a.weight_at(&x.dir) + b.weight_at(&x.dir) - x.weight).abs() / m.total_mass())
        .fold(0.0, f64::max);
    let simplex: Vec<_> = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .iter()
        .map(|v| nalgebra::DVector::from_column_slice(v))
        .collect();
    let sm = concavlab::geometry::convex_hull(&simplex)?.surface_area_measure();
    let simplex_indecomposable = is_indecomposable(&sm)? && matches!(decompose(&sm), Err(Error::Indecomposable));
    Ok(DecomposeDemo {
        measure: (&m).into(),
        first: (&a).into(),
        second: (&b).into(),
        first_body: Body::Polytope(pa),
        second_body: Body::Polytope(pb),
        sum_error,
        simplex_indecomposable,
    })
}

fn reproduce(case: ReproduceCase, lmax: usize, config: serde_json::Value) -> CliResult<Output> {
    let wrap = |r: serde_json::Value| json!({ "config": config, "report": r });
    match case {
        ReproduceCase::Rem1 => {
            let r = reproduce_rem1()?;
            let summary = format!(
                "Cap²/S from {:.6} at a = 1 to {:.6e} at a = 1e6; growth from a = 10 {:.4e}",
                r.rows[0].quotient,
                r.rows[r.rows.len() - 1].quotient,
                r.growth
            );
            let table = Table {
                header: ["k", "a", "b", "capacity", "surface_area", "quotient"].map(String::from).to_vec(),
                rows: r
                    .rows
                    .iter()
                    .map(|x| vec![x.k.to_string(), num(x.a), num(x.b), num(x.capacity), num(x.surface_area), num(x.quotient)])
                    .collect(),
            };
            let ok = r.strictly_increasing;
            let out = Output::new(summary, &wrap(io::to_value(&r)?))?.with_table(table);
            failed_unless(ok, out, "quotient is not increasing")
        }
        ReproduceCase::Rem3 => {
            let r = reproduce_rem3()?;
            let w = &r.witness;
            let summary = format!(
                "{:?}: lhs {:.10} rhs {:.10} deficit {:.6e}",
                w.bodies, w.lhs, w.rhs, w.deficit
            );
            Output::new(summary, &wrap(io::to_value(&r)?))
        }
        ReproduceCase::TorsionLimit => {
            let r = torsion_limit()?;
            let summary = format!(
                "τ/l³ = {:.6} at l = {} (1/12 = {:.6}); slope of log E {:.4}; E from {:.4e} to {:.4e}",
                r.tau_over_l3,
                r.rows[0].l,
                1.0 / 12.0,
                r.slope,
                r.rows[0].quotient,
                r.rows[r.rows.len() - 1].quotient
            );
            let ok = (r.tau_over_l3 * 12.0 - 1.0).abs() < 1e-2 && r.slope > 0.0;
            let table = family_table(&r.rows);
            let out = Output::new(summary, &wrap(io::to_value(&r)?))?.with_table(table);
            failed_unless(ok, out, "torsion quotient does not vanish")
        }
        ReproduceCase::Lambda1Limit => {
            let r = lambda1_limit()?;
            let summary = format!(
                "limit {:.9} by quadrature, π/4 = {:.9}; literature π²/4 = {:.6}",
                r.limit_quadrature, r.limit_closed_form, r.limit_literature
            );
            let ok = (r.limit_quadrature - r.limit_closed_form).abs() < 1e-6;
            let table = family_table(&r.rows);
            let out = Output::new(summary, &wrap(io::to_value(&r)?))?.with_table(table);
            failed_unless(ok, out, "quadrature misses the closed form")
        }
        ReproduceCase::Triangle => {
            let r = triangle_refinement();
            let t = concavlab::functionals::lambda1_triangle_equilateral();
            let summary = format!(
                "E(T) = {:.10} (π/3 = {:.10}); refinement change {:.2e}; literature {:.4}",
                t.quotient, t.quotient_closed_form, r.change, t.quotient_literature
            );
            let ok = r.change < 1e-8 && (t.quotient - t.quotient_closed_form).abs() < 1e-8;
            let out = Output::new(summary, &wrap(json!({ "quotient": t, "refinement": r })))?;
            failed_unless(ok, out, "triangle quadrature did not settle")
        }
        ReproduceCase::SecondVariation => {
            let rows = coercivity_profile(lmax)?;
            let worst = rows.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
            let summary = format!(
                "l = 0..{lmax}: {:?}; max deviation from l(l+1) - 2 {:.2e}",
                rows.iter().map(|r| (r.quadrature * 1e6).round() / 1e6).collect::<Vec<_>>(),
                worst
            );
            let table = Table {
                header: ["l", "closed_form", "quadrature", "max_deviation"].map(String::from).to_vec(),
                rows: rows
                    .iter()
                    .map(|r| vec![r.l.to_string(), num(r.closed_form), num(r.quadrature), num(r.max_deviation)])
                    .collect(),
            };
            let mut out = Output::new(summary, &wrap(io::to_value(&rows)?))?.with_table(table);
            out.default_format = Format::Csv;
            failed_unless(worst < 1e-8, out, "profile deviates from the closed form")
        }
        ReproduceCase::DecomposeDemo => {
            let r = decompose_demo()?;
            let summary = format!(
                "cube split into parts of {} and {} facets; sum error {:.1e}; simplex indecomposable: {}",
                polytope_facets(&r.first_body),
                polytope_facets(&r.second_body),
                r.sum_error,
                r.simplex_indecomposable
            );
            let ok = r.simplex_indecomposable && r.sum_error < 1e-12;
            let out = Output::new(summary, &wrap(io::to_value(&r)?))?;
            failed_unless(ok, out, "decomposition check failed")
        }
    }
}

fn polytope_facets(b: &Body) -> usize {
    match b {
        Body::Polytope(p) => Polytope::facets(p).len(),
        _ => 0,
    }
}

fn family_table(rows: &[concavlab::inequalities::FamilyRow]) -> Table {
    Table {
        header: ["l", "value", "quotient"].map(String::from).to_vec(),
        rows: rows.iter().map(|r| vec![num(r.l), num(r.value), num(r.quotient)]).collect(),
    }
}

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("CONCAVLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("CONCAVLAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads()
        .and_then(|_| run(&cli.command))
        .and_then(|out| emit(&out, cli.format, cli.out.as_ref()).map(|_| out.exit));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
