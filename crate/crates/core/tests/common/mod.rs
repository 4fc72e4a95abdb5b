//! Brute-force planar geometry used as independent oracles.
#![allow(dead_code)]

use std::collections::HashSet;

use radx_core::polyalg::{parse_polynomial, OneForm, Polynomial, VectorField};

pub mod random;

pub fn poly(s: &str, n: usize) -> Polynomial {
    parse_polynomial(s, n).unwrap()
}

pub fn form(src: &[&str]) -> OneForm {
    let n = src.len();
    OneForm::new(src.iter().map(|s| poly(s, n)).collect()).unwrap()
}

pub fn field(src: &[&str]) -> VectorField {
    let n = src.len();
    VectorField::new(src.iter().map(|s| poly(s, n)).collect()).unwrap()
}

/// Euler characteristic of the union of closed grid squares (side `2r/res`)
/// whose centres lie in the disc of radius `r` and satisfy `inside`.
pub fn raster_euler(inside: impl Fn(f64, f64) -> bool, r: f64, res: i64) -> i64 {
    let h = 2.0 * r / res as f64;
    let mut faces = 0i64;
    let mut verts: HashSet<(i64, i64)> = HashSet::new();
    // Edges keyed by lower-left endpoint and direction.
    let mut edges: HashSet<(i64, i64, bool)> = HashSet::new();
    for i in 0..res {
        for j in 0..res {
            let x = -r + (i as f64 + 0.5) * h;
            let y = -r + (j as f64 + 0.5) * h;
            if x * x + y * y > r * r || !inside(x, y) {
                continue;
            }
            faces += 1;
            for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                verts.insert((i + a, j + b));
            }
            edges.insert((i, j, true));
            edges.insert((i, j + 1, true));
            edges.insert((i, j, false));
            edges.insert((i + 1, j, false));
        }
    }
    verts.len() as i64 - edges.len() as i64 + faces
}

/// Closed boundary of `B_r cap {x : h_i(x) >= 0}` for linear `h_i`, as a
/// densely sampled polygon, or the circle when there are no constraints.
fn region_boundary(halfplanes: &[[f64; 2]], r: f64, samples: usize) -> Vec<Vec<[f64; 2]>> {
    let ok = |p: [f64; 2]| halfplanes.iter().all(|h| h[0] * p[0] + h[1] * p[1] >= -1e-12);
    let mut pieces = Vec::new();
    let arc: Vec<[f64; 2]> = (0..=samples)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    // Split the circle into maximal runs inside the region.
    let mut run = Vec::new();
    for p in arc {
        if ok(p) {
            run.push(p);
        } else if !run.is_empty() {
            pieces.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        pieces.push(run);
    }
    for h in halfplanes {
        // The line h . x = 0 through the origin, direction (-h1, h0).
        let l = (h[0] * h[0] + h[1] * h[1]).sqrt();
        let d = [-h[1] / l, h[0] / l];
        let seg: Vec<[f64; 2]> = (0..=samples)
            .map(|k| {
                let t = -r + 2.0 * r * k as f64 / samples as f64;
                [t * d[0], t * d[1]]
            })
            .filter(|&p| ok(p))
            .collect();
        if !seg.is_empty() {
            pieces.push(seg);
        }
    }
    pieces
}

/// Number of points where `{f = delta}` crosses the boundary of
/// `B_r cap {h_i >= 0}`, by sign changes along dense samples.
pub fn boundary_crossings(f: &Polynomial, delta: f64, halfplanes: &[[f64; 2]], r: f64) -> usize {
    let mut count = 0;
    for piece in region_boundary(halfplanes, r, 200_000) {
        let vals: Vec<f64> = piece.iter().map(|p| f.eval_f64(p) - delta).collect();
        count += vals.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
    }
    count
}

/// Euler characteristic of `{f = delta} cap B_r cap {h_i >= 0}` for a
/// planar fibre made of arcs meeting the boundary transversally.
pub fn fibre_arcs(f: &Polynomial, delta: f64, halfplanes: &[[f64; 2]], r: f64) -> i64 {
    let c = boundary_crossings(f, delta, halfplanes, r);
    assert!(c % 2 == 0, "odd crossing count {c}");
    (c / 2) as i64
}

/// Number of intervals of `{t : inside(p + t d)}` on the chord of the disc
/// of radius `r` along the line `p + t d`.
pub fn chord_intervals(inside: impl Fn(f64, f64) -> bool, p: [f64; 2], d: [f64; 2], r: f64) -> i64 {
    let samples = 200_000;
    let mut count = 0;
    let mut prev = false;
    for k in 0..=samples {
        let t = -2.0 * r + 4.0 * r * k as f64 / samples as f64;
        let (x, y) = (p[0] + t * d[0], p[1] + t * d[1]);
        let here = x * x + y * y <= r * r && inside(x, y);
        if here && !prev {
            count += 1;
        }
        prev = here;
    }
    count
}
