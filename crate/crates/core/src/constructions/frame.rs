use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::polyalg::{Polynomial, VectorField};

/// Division algebra whose imaginary units generate the frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    Complex,
    Quaternion,
    Octonion,
}

impl FrameKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameKind::Complex => "complex-left",
            FrameKind::Quaternion => "quaternion-left",
            FrameKind::Octonion => "octonion-left",
        }
    }
}

/// A field `V` with fields `V_2, ..., V_n` spanning `V(x)^perp` so that
/// `(V, V_2, ..., V_n)` is positively oriented wherever `V(x) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    kind: FrameKind,
    base: VectorField,
    complements: Vec<VectorField>,
}

impl Frame {
    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &VectorField {
        &self.base
    }

    pub fn complements(&self) -> &[VectorField] {
        &self.complements
    }
}

// Octonion units e_1..e_7 with e_a e_b = e_c for each cyclic triple.
const FANO: [[usize; 3]; 7] = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];
const QUATERNION: [[usize; 3]; 1] = [[1, 2, 3]];

/// `e_a e_b = sign * e_c` in the algebra with the given triples.
fn unit_product(triples: &[[usize; 3]], a: usize, b: usize) -> (i64, usize) {
    if a == 0 {
        return (1, b);
    }
    if b == 0 {
        return (1, a);
    }
    if a == b {
        return (-1, 0);
    }
    for t in triples {
        for r in 0..3 {
            let (x, y, z) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
            if (x, y) == (a, b) {
                return (1, z);
            }
            if (y, x) == (a, b) {
                return (-1, z);
            }
        }
    }
    unreachable!("units {a} and {b} lie on a common triple")
}

/// Left multiplication by imaginary units: `V_{i+1} = e_i . V`. Orthogonality
/// is checked symbolically and orientation at random points.
pub fn frame_p_prime(v: &VectorField) -> Result<Frame, ConstructionError> {
    let n = v.dim();
    let (kind, triples): (FrameKind, &[[usize; 3]]) = match n {
        2 => (FrameKind::Complex, &[]),
        4 => (FrameKind::Quaternion, &QUATERNION),
        8 => (FrameKind::Octonion, &FANO),
        _ => return Err(ConstructionError::UnsupportedDimension { n }),
    };
    let complements: Vec<VectorField> = (1..n)
        .map(|i| {
            let mut comps = vec![Polynomial::zero(n); n];
            for b in 0..n {
                let (s, c) = unit_product(triples, i, b);
                comps[c] = if s > 0 { &comps[c] + v.component(b) } else { &comps[c] - v.component(b) };
            }
            VectorField::new(comps).expect("n components in n variables")
        })
        .collect();
    let frame = Frame { kind, base: v.clone(), complements };
    verify(&frame)?;
    Ok(frame)
}

fn verify(frame: &Frame) -> Result<(), ConstructionError> {
    let n = frame.dim();
    let rows: Vec<&VectorField> = std::iter::once(&frame.base).chain(&frame.complements).collect();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if !a.dot(b).is_zero() {
                return Err(ConstructionError::FrameCheck(format!("frame fields {a} and {b} are not orthogonal")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    for _ in 0..1000 {
        if checked == 100 {
            break;
        }
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let m: Vec<Vec<f64>> = rows.iter().map(|r| r.eval_f64(&x)).collect();
        let scale: f64 = m[0].iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(scale > 1e-6) {
            continue;
        }
        let det = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j] / scale).determinant();
        if !(det > 0.0) {
            return Err(ConstructionError::FrameCheck(format!("negative orientation at {x:?}")));
        }
        checked += 1;
    }
    Ok(())
}
