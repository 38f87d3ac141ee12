//! Acceptance criteria 1-14. Run with `cargo test --test acceptance`; every
//! criterion prints one PASS/FAIL line and the binary fails if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use concavlab::bodies::{Body, Box};
use concavlab::functionals::Functional;
use concavlab::geometry::{convex_hull, random_polytope, sample_rng};
use concavlab::inequalities::{
    fraenkel_asymmetry, implied_constants, ks_deficit, lambda1_limit, quantitative_ks_report,
    reproduce_rem1, reproduce_rem3, torsion_limit, triangle_refinement,
};
use concavlab::local::coercivity_profile;
use concavlab::mu::MuStructure;
use concavlab::reconstruction::{blaschke_sum, blaschke_sum_boxes, decompose, solve_minkowski, SolverConfig};
use concavlab::{Error, Polytope};
use common::{boxed, fraenkel_grid_oracle, log_uniform, random_box, random_rect};
use nalgebra::DVector;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn c1_minkowski_round_trip() -> Outcome {
    const HAUSDORFF: f64 = 1e-6;
    const AREA_REL: f64 = 1e-8;
    const CUBE_TIME: Duration = Duration::from_secs(1);
    let mut worst_h: f64 = 0.0;
    let mut worst_a: f64 = 0.0;
    for i in 0..100 {
        let p = random_polytope(3, &mut sample_rng(1001, i)).map_err(err)?;
        let m = p.surface_area_measure();
        let q = solve_minkowski(&m, &cfg()).map_err(|e| format!("sample {i}: {e}"))?;
        worst_h = worst_h.max(p.centered().hausdorff_distance(&q));
        let mq = q.surface_area_measure();
        for a in m.atoms() {
            let got = mq.weight_at(&a.dir);
            worst_a = worst_a.max((got - a.weight).abs() / a.weight);
        }
    }
    ensure(worst_h <= HAUSDORFF, format!("hausdorff {worst_h:.2e}"))?;
    ensure(worst_a <= AREA_REL, format!("facet area error {worst_a:.2e}"))?;
    let cube = Box::cube(3, 1.0).unwrap().to_polytope();
    let start = Instant::now();
    let q = solve_minkowski(&cube.surface_area_measure(), &cfg()).map_err(err)?;
    let t = start.elapsed();
    ensure(t < CUBE_TIME, format!("cube took {t:?}"))?;
    ensure(cube.centered().hausdorff_distance(&q) <= HAUSDORFF, "cube mismatch".into())?;
    Ok(format!(
        "100 polytopes: max hausdorff {worst_h:.1e}, max facet area error {worst_a:.1e}; cube in {t:.1?}"
    ))
}

fn c2_blaschke_boxes() -> Outcome {
    const HAUSDORFF: f64 = 1e-6;
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let mut rng = sample_rng(1002, i);
        let (a, b) = (random_box(3, &mut rng), random_box(3, &mut rng));
        let general = blaschke_sum(&a.to_polytope(), &b.to_polytope(), &cfg()).map_err(err)?;
        let closed = blaschke_sum_boxes(&a, &b).map_err(err)?.to_polytope();
        worst = worst.max(general.centered().hausdorff_distance(&closed.centered()));
    }
    ensure(worst <= HAUSDORFF, format!("hausdorff {worst:.2e}"))?;
    Ok(format!("50 box pairs: max hausdorff {worst:.1e}"))
}

fn c3_kneser_suss_volume() -> Outcome {
    const DEFICIT_FLOOR: f64 = -1e-9;
    const HOMOTHETIC_REL: f64 = 1e-6;
    let mut min_deficit = f64::INFINITY;
    for i in 0..200 {
        let mut rng = sample_rng(1003, i);
        let k = Body::Polytope(random_polytope(3, &mut rng).map_err(err)?);
        let l = Body::Polytope(random_polytope(3, &mut rng).map_err(err)?);
        let r = ks_deficit(Functional::Volume, &k, &l, &cfg()).map_err(|e| format!("pair {i}: {e}"))?;
        min_deficit = min_deficit.min(r.deficit);
    }
    ensure(min_deficit >= DEFICIT_FLOOR, format!("min deficit {min_deficit:.3e}"))?;
    let mut worst_h: f64 = 0.0;
    for i in 0..20 {
        let mut rng = sample_rng(1103, i);
        let p = random_polytope(3, &mut rng).map_err(err)?;
        let t = log_uniform(&mut rng, 0.3, 3.0);
        let shift = DVector::from_vec(vec![0.5, -1.0, 2.0]);
        let q = p.dilate(t).translate(&shift);
        let r = ks_deficit(Functional::Volume, &Body::Polytope(p), &Body::Polytope(q), &cfg())
            .map_err(err)?;
        worst_h = worst_h.max(r.deficit.abs() / r.lhs);
    }
    ensure(worst_h <= HOMOTHETIC_REL, format!("homothetic |deficit|/lhs {worst_h:.2e}"))?;
    Ok(format!(
        "200 pairs: min deficit {min_deficit:.3e}; 20 homothets: max |deficit|/lhs {worst_h:.1e}"
    ))
}

fn c4_quantitative_ks() -> Outcome {
    let mut reports = Vec::new();
    let mut min_deficit = f64::INFINITY;
    for i in 0..100 {
        let mut rng = sample_rng(1004, i);
        let k = random_polytope(3, &mut rng).map_err(err)?;
        let l = random_polytope(3, &mut rng).map_err(err)?;
        let r = match quantitative_ks_report(&k, &l, &cfg()) {
            Err(e @ Error::DegenerateDeficit { .. }) => return Err(format!("pair {i}: {e}")),
            other => other.map_err(|e| format!("pair {i}: {e}"))?,
        };
        min_deficit = min_deficit.min(r.ks.deficit);
        let c = r.implied_c.ok_or(format!("pair {i}: no implied constant"))?;
        ensure(c.is_finite() && c > 0.0, format!("pair {i}: implied c {c}"))?;
        reports.push(r);
    }
    ensure(min_deficit >= 0.0, format!("min deficit {min_deficit:.3e}"))?;
    let c = implied_constants(&reports).ok_or("no constants")?;
    Ok(format!(
        "100 pairs: min deficit {min_deficit:.3e}; implied c_3 in [{:.4}, {:.4}], so c_3 >= {:.4}",
        c.min, c.max, c.max
    ))
}

fn c5_rem3() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(1);
    let start = Instant::now();
    let r = reproduce_rem3().map_err(err)?;
    let t = start.elapsed();
    ensure(t < BUDGET, format!("took {t:?}"))?;
    ensure(r.witness.deficit < 0.0, format!("witness deficit {}", r.witness.deficit))?;
    let expect = ["box:0.01,1,1", "box:0.005,2,2"];
    ensure(r.witness.bodies == expect, format!("witness {:?}", r.witness.bodies))?;
    let corner: Vec<String> = r.corner.iter().map(|c| format!("{:+.2e}", c.deficit)).collect();
    Ok(format!(
        "plate pair deficit {:.4e} (lhs/rhs {:.6}) in {t:.1?}; family minimum {:.3e} at {:?}; quoted corner j=1..4 deficits [{}] ({})",
        r.witness.deficit,
        r.witness.lhs / r.witness.rhs,
        r.family_best.normalized_deficit,
        r.family_best.bodies,
        corner.join(", "),
        if r.corner_positive { "positive" } else { "not all positive" }
    ))
}

fn c6_rem1() -> Outcome {
    const GROWTH: f64 = 1e3;
    let r = reproduce_rem1().map_err(err)?;
    ensure(r.strictly_increasing, "Cap²/S not increasing".into())?;
    let total = r.rows[6].quotient / r.rows[0].quotient;
    ensure(total > GROWTH, format!("growth {total:.3e}"))?;
    Ok(format!(
        "Cap²/S from {:.4} (ball) to {:.4e}; growth {total:.3e}",
        r.rows[0].quotient, r.rows[6].quotient
    ))
}

fn c7_mu_concavity() -> Outcome {
    const DEFICIT_FLOOR: f64 = -1e-9;
    const HOMOTHETIC_REL: f64 = 1e-6;
    let mut min_box = f64::INFINITY;
    for i in 0..500 {
        let mut rng = sample_rng(1007, i);
        let (a, b) = (random_box(3, &mut rng), random_box(3, &mut rng));
        let r = MuStructure::Lambda1Box
            .concavity_deficit(&boxed(&a), &boxed(&b), &cfg())
            .map_err(err)?;
        ensure((r.exponent - 1.5).abs() < 1e-15, format!("exponent {}", r.exponent))?;
        min_box = min_box.min(r.deficit);
    }
    let mut min_rect = f64::INFINITY;
    for i in 0..200 {
        let mut rng = sample_rng(1107, i);
        let (a, b) = (random_rect(&mut rng), random_rect(&mut rng));
        let r = MuStructure::TorsionRect
            .concavity_deficit(&Body::Rect(a), &Body::Rect(b), &cfg())
            .map_err(err)?;
        ensure((r.exponent - 0.75).abs() < 1e-15, format!("exponent {}", r.exponent))?;
        min_rect = min_rect.min(r.deficit);
    }
    ensure(min_box >= DEFICIT_FLOOR, format!("lambda1_box min deficit {min_box:.3e}"))?;
    ensure(min_rect >= DEFICIT_FLOOR, format!("torsion_rect min deficit {min_rect:.3e}"))?;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let mut rng = sample_rng(1207, i);
        let a = random_box(3, &mut rng);
        let t = log_uniform(&mut rng, 0.3, 3.0);
        let r = MuStructure::Lambda1Box
            .concavity_deficit(&boxed(&a), &boxed(&a.dilate(t)), &cfg())
            .map_err(err)?;
        worst = worst.max(r.deficit.abs() / r.lhs);
        let q = random_rect(&mut rng);
        let r = MuStructure::TorsionRect
            .concavity_deficit(&Body::Rect(q), &Body::Rect(q.dilate(t)), &cfg())
            .map_err(err)?;
        worst = worst.max(r.deficit.abs() / r.lhs);
    }
    ensure(worst <= HOMOTHETIC_REL, format!("homothetic |deficit|/lhs {worst:.2e}"))?;
    Ok(format!(
        "min deficit: 500 box pairs {min_box:.3e}, 200 rectangle pairs {min_rect:.3e}; homothets {worst:.1e}"
    ))
}

fn c8_monotonicity() -> Outcome {
    let mut exceptions = 0;
    for i in 0..200 {
        let mut rng = sample_rng(1008, i);
        let a = random_box(3, &mut rng);
        // shorter sides carry more energy on every face
        let b = Box::new(a.sides.iter().map(|s| s * log_uniform(&mut rng, 0.5, 1.0)).collect())
            .map_err(err)?;
        if !MuStructure::Lambda1Box.monotonicity_check(&boxed(&a), &boxed(&b)).map_err(err)? {
            exceptions += 1;
        }
    }
    ensure(exceptions == 0, format!("{exceptions} exceptions"))?;
    Ok("200 ordered box pairs: 0 exceptions".into())
}

fn c9_decomposition() -> Outcome {
    const SUM_TOL: f64 = 1e-10;
    let mut worst_sum: f64 = 0.0;
    let mut min_spread = f64::INFINITY;
    let mut count = 0;
    let mut i = 0;
    while count < 100 {
        let p = random_polytope(3, &mut sample_rng(1009, i)).map_err(err)?;
        i += 1;
        if p.facets().len() < 5 {
            continue;
        }
        count += 1;
        let m = p.surface_area_measure();
        let (a, b) = decompose(&m).map_err(err)?;
        ensure(a.is_alexandrov() && b.is_alexandrov(), "part not Alexandrov".into())?;
        let total = m.total_mass();
        let mut ratios = Vec::new();
        for atom in m.atoms() {
            let (wa, wb) = (a.weight_at(&atom.dir), b.weight_at(&atom.dir));
            worst_sum = worst_sum.max((wa + wb - atom.weight).abs() / total);
            ratios.push(wa / atom.weight);
        }
        let spread = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - ratios.iter().copied().fold(f64::INFINITY, f64::min);
        min_spread = min_spread.min(spread);
        solve_minkowski(&a, &cfg()).map_err(|e| format!("part 1: {e}"))?;
        solve_minkowski(&b, &cfg()).map_err(|e| format!("part 2: {e}"))?;
    }
    ensure(worst_sum <= SUM_TOL, format!("atomwise sum error {worst_sum:.2e}"))?;
    ensure(min_spread > 1e-3, format!("parts nearly proportional: {min_spread:.2e}"))?;
    let simplex = convex_hull(&[
        DVector::from_vec(vec![0.0, 0.0, 0.0]),
        DVector::from_vec(vec![1.0, 0.0, 0.0]),
        DVector::from_vec(vec![0.0, 1.0, 0.0]),
        DVector::from_vec(vec![0.0, 0.0, 1.0]),
    ])
    .map_err(err)?;
    ensure(
        matches!(decompose(&simplex.surface_area_measure()), Err(Error::Indecomposable)),
        "simplex was split".into(),
    )?;
    Ok(format!(
        "100 polytopes: sum error {worst_sum:.1e}, min ratio spread {min_spread:.3}; simplex indecomposable"
    ))
}

fn c10_torsion() -> Outcome {
    let t = torsion_limit().map_err(err)?;
    let rel = (12.0 * t.tau_over_l3 - 1.0).abs();
    ensure(rel <= 0.01, format!("tau/l³ = {:.6}", t.tau_over_l3))?;
    ensure((t.slope - 0.25).abs() <= 0.05, format!("slope {:.4}", t.slope))?;
    Ok(format!(
        "tau(R_l)/l³ = {:.6} at l=1e-3 (1/12 = {:.6}); slope of log E {:.4}; E from {:.3e} to {:.3e}",
        t.tau_over_l3,
        1.0 / 12.0,
        t.slope,
        t.rows[0].quotient,
        t.rows.last().unwrap().quotient
    ))
}

fn c11_lambda1_quotients() -> Outcome {
    const AGREE: f64 = 1e-6;
    let s = lambda1_limit().map_err(err)?;
    let d_rect = (s.limit_quadrature - s.limit_closed_form).abs();
    ensure(d_rect <= AGREE, format!("rectangle quadrature vs closed form {d_rect:.2e}"))?;
    let tri = &s.triangle;
    let d_tri = (tri.quotient - tri.quotient_closed_form).abs();
    ensure(d_tri <= AGREE, format!("triangle quadrature vs closed form {d_tri:.2e}"))?;
    let refine = triangle_refinement();
    ensure(refine.change <= 1e-8, format!("triangle refinement {:.2e}", refine.change))?;
    Ok(format!(
        "rectangle limit {:.9} vs pi/4 (literature pi²/4 = {:.4}, ratio {:.6} = pi); triangle {:.9} vs pi/3 (literature {:.4} from the unnormalized eigenfunction)",
        s.limit_quadrature,
        s.limit_literature,
        s.limit_literature / s.limit_quadrature,
        tri.quotient,
        tri.quotient_literature
    ))
}

fn c12_second_variation() -> Outcome {
    const AGREE: f64 = 1e-6;
    let rows = coercivity_profile(4).map_err(err)?;
    let expect = [-2.0, 0.0, 4.0, 10.0, 18.0];
    for (r, e) in rows.iter().zip(expect) {
        ensure(
            (r.quadrature - e).abs() <= AGREE && r.max_deviation <= AGREE,
            format!("l={}: {} vs {e} (max over m {:.2e})", r.l, r.quadrature, r.max_deviation),
        )?;
    }
    let worst = rows.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    let vals: Vec<String> = rows.iter().map(|r| format!("{:.6}", r.quadrature)).collect();
    Ok(format!("profile [{}], max deviation {worst:.1e}", vals.join(", ")))
}

fn c13_fraenkel() -> Outcome {
    const SELF_TOL: f64 = 1e-8;
    const ORACLE_TOL: f64 = 1e-4;
    let mut worst_self: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for i in 0..20 {
        let mut rng = sample_rng(1013, i);
        let k = random_polytope(3, &mut rng).map_err(err)?;
        let l = random_polytope(3, &mut rng).map_err(err)?;
        worst_self = worst_self.max(fraenkel_asymmetry(&k, &k).map_err(err)?.asymmetry);
        let t = DVector::from_vec(vec![0.3, -0.7, 0.2]);
        worst_self = worst_self.max(fraenkel_asymmetry(&k, &k.translate(&t)).map_err(err)?.asymmetry);
        let a = fraenkel_asymmetry(&k, &l).map_err(err)?.asymmetry;
        let moved = fraenkel_asymmetry(&k, &l.translate(&t)).map_err(err)?.asymmetry;
        worst_self = worst_self.max((a - moved).abs());
        worst_oracle = worst_oracle.max((a - fraenkel_grid_oracle(&k, &l)).abs());
    }
    ensure(worst_self <= SELF_TOL, format!("self/translation {worst_self:.2e}"))?;
    ensure(worst_oracle <= ORACLE_TOL, format!("oracle gap {worst_oracle:.2e}"))?;
    Ok(format!(
        "20 pairs: A(K,K), A(K,K+t), |A(K,L+t)-A(K,L)| <= {worst_self:.1e}; oracle gap {worst_oracle:.1e}"
    ))
}

fn c14_mean_width() -> Outcome {
    let cube = Box::cube(3, 1.0).unwrap().to_polytope();
    let (quad, edges) = (cube.mean_width(), cube.mean_width_edges());
    ensure((quad - 1.5).abs() <= 1e-6, format!("cube quadrature {quad}"))?;
    ensure((quad - edges).abs() <= 1e-8, format!("cube edges {edges} vs {quad}"))?;
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let mut rng = sample_rng(1014, i);
        let p: Polytope = random_polytope(3, &mut rng).map_err(err)?;
        let q = random_polytope(3, &mut rng).map_err(err)?;
        let s = p.minkowski_sum(&q).map_err(err)?;
        let (mp, mq, ms) = (p.mean_width(), q.mean_width(), s.mean_width());
        worst = worst.max((ms - mp - mq).abs() / ms);
    }
    ensure(worst <= 1e-8, format!("additivity {worst:.2e}"))?;
    Ok(format!(
        "cube M = {quad:.12} (edges {edges:.12}); 50 pairs additivity {worst:.1e}"
    ))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 14] = [
        (1, "Minkowski solver round trip", c1_minkowski_round_trip),
        (2, "Blaschke box consistency", c2_blaschke_boxes),
        (3, "Kneser-Süss for volume", c3_kneser_suss_volume),
        (4, "quantitative Kneser-Süss", c4_quantitative_ks),
        (5, "λ₁ Kneser-Süss counterexample", c5_rem3),
        (6, "capacity quotient divergence", c6_rem1),
        (7, "µ-concavity", c7_mu_concavity),
        (8, "µ-monotonicity", c8_monotonicity),
        (9, "Blaschke decomposition", c9_decomposition),
        (10, "torsion limits", c10_torsion),
        (11, "λ₁ rectangle and triangle quotients", c11_lambda1_quotients),
        (12, "second variation profile", c12_second_variation),
        (13, "Fraenkel asymmetry", c13_fraenkel),
        (14, "mean width", c14_mean_width),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS [{t:.1?}] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{t:.1?}] {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
