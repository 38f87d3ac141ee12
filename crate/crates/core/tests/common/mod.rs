//! Oracles shared by the integration tests. They are deliberately naive:
//! brute-force searches and closed forms that do not touch the solver.
#![allow(dead_code)]

use concavlab::bodies::{Body, Box, Rect};
use concavlab::geometry::SweepRng;
use concavlab::Polytope;
use nalgebra::DVector;
use rand::Rng;

pub fn log_uniform(rng: &mut SweepRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

pub fn random_box(dim: usize, rng: &mut SweepRng) -> Box {
    Box::new((0..dim).map(|_| log_uniform(rng, 0.2, 5.0)).collect()).unwrap()
}

pub fn random_rect(rng: &mut SweepRng) -> Rect {
    Rect::new(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)).unwrap()
}

pub fn boxed(b: &Box) -> Body {
    Body::Box(b.clone())
}

/// Fraenkel asymmetry by a zooming grid over translations of the centroid of
/// `λL`: a 7ⁿ grid, recentred on its best point with half the width, until
/// the width is below `1e-9` of the scale.
pub fn fraenkel_grid_oracle(k: &Polytope, l: &Polytope) -> f64 {
    let n = k.dim();
    let lambda = (k.volume() / l.volume()).powf(1.0 / n as f64);
    let lc = l.centered().dilate(lambda);
    let scale = k.scale().max(lc.scale());
    let mut center = k.centroid().clone();
    let mut half = 2.0 * scale;
    let mut best = k.overlap_volume(&lc, &center).unwrap();
    let per = 7usize;
    while half > 1e-9 * scale {
        let step = 2.0 * half / (per - 1) as f64;
        let mut next = center.clone();
        for code in 0..per.pow(n as u32) {
            let mut c = code;
            let x = DVector::from_fn(n, |i, _| {
                let d = (c % per) as f64;
                c /= per;
                center[i] - half + d * step
            });
            let v = k.overlap_volume(&lc, &x).unwrap();
            if v > best {
                best = v;
                next = x;
            }
        }
        center = next;
        half *= 0.5;
    }
    2.0 * (1.0 - best / k.volume())
}
