//! Point sets, meshes and quadrature rules on spheres.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::compiled::{dot, norm};

/// Nearly uniform points on `S^2` along a Fibonacci spiral.
pub fn fibonacci_sphere(m: usize) -> Vec<Vec<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            vec![r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Uniform random points on `S^{n-1}`.
pub fn random_sphere_points(n: usize, m: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    (0..m).map(|_| random_unit(n, rng)).collect()
}

pub fn random_unit(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let l = norm(&v);
        if l > 1e-6 {
            return v.into_iter().map(|x| x / l).collect();
        }
    }
}

/// Starting points for searches on `S^{n-1}`: a spiral for `n = 3`, the
/// circle for `n = 2`, random points otherwise.
pub fn sphere_samples(n: usize, m: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    match n {
        2 => (0..m)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => fibonacci_sphere(m),
        _ => random_sphere_points(n, m, rng),
    }
}

/// Orthonormal vectors `t_2..t_n` spanning `y^perp` with `det[y, t_2, .., t_n] > 0`.
pub fn tangent_frame(y: &[f64]) -> Vec<Vec<f64>> {
    let n = y.len();
    let mut basis: Vec<Vec<f64>> = vec![y.to_vec()];
    let mut e = 0;
    while basis.len() < n {
        let mut v = vec![0.0; n];
        v[e] = 1.0;
        e += 1;
        for b in &basis {
            let c = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
        }
        let l = norm(&v);
        if l > 1e-8 {
            basis.push(v.into_iter().map(|x| x / l).collect());
        }
    }
    if det_columns(&basis) < 0.0 {
        basis[1].iter_mut().for_each(|x| *x = -*x);
    }
    basis.remove(0);
    basis
}

/// Determinant of the matrix whose columns are `cols`.
pub fn det_columns(cols: &[Vec<f64>]) -> f64 {
    let n = cols.len();
    DMatrix::from_fn(n, n, |i, j| cols[j][i]).determinant()
}

/// Icosahedron subdivided `level` times, projected to the unit sphere.
/// Triangles are oriented counterclockwise seen from outside.
pub fn icosphere(level: u32) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|v| unit3(*v))
    .collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid = std::collections::HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let (p, q) = (verts[a], verts[b]);
                verts.push(unit3([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(tris.len() * 4);
        for [a, b, c] in tris {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        tris = next;
    }
    (verts, tris)
}

fn unit3(v: [f64; 3]) -> [f64; 3] {
    let l = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / l, v[1] / l, v[2] / l]
}

/// Signed solid angle of the geodesic triangle with unit vertices `a, b, c`.
pub fn solid_angle(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    let d = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * det.atan2(d)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_m(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 0 { 1.0 } else if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}
