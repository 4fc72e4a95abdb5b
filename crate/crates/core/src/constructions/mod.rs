//! Derived vector fields: corner fields, orthogonal frames, the hypersurface
//! fields `W`, `Y`, `Gamma` and the curve fields `V(Omega)`, `W(Omega, g)`,
//! `V(dg)`, `I`.

mod frame;


use serde::{Deserialize, Serialize};

use crate::polyalg::{poly_determinant, OneForm, PolyError, Polynomial, Rational, VectorField};

pub use frame::{frame_p_prime, Frame, FrameKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("no built-in frame in dimension {n}; frames exist for n = 2, 4, 8")]
    UnsupportedDimension { n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid selector: {0}")]
    InvalidSelector(String),
    #[error("frame check failed: {0}")]
    FrameCheck(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One factor `(alpha, beta)` of a corner multi-index; `(0, 0)` is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 2]", into = "[u8; 2]")]
pub struct AlphaPair {
    alpha: u8,
    beta: u8,
}

impl AlphaPair {
    /// The three admissible pairs in lexicographic order.
    pub const ALL: [AlphaPair; 3] =
        [AlphaPair { alpha: 0, beta: 1 }, AlphaPair { alpha: 1, beta: 0 }, AlphaPair { alpha: 1, beta: 1 }];

    pub fn new(alpha: u8, beta: u8) -> Result<Self, ConstructionError> {
        match (alpha, beta) {
            (0, 1) | (1, 0) | (1, 1) => Ok(AlphaPair { alpha, beta }),
            _ => Err(ConstructionError::InvalidSelector(format!("({alpha},{beta}) is not an admissible pair"))),
        }
    }

    pub fn alpha(self) -> u8 {
        self.alpha
    }

    pub fn beta(self) -> u8 {
        self.beta
    }
}

impl TryFrom<[u8; 2]> for AlphaPair {
    type Error = ConstructionError;
    fn try_from(v: [u8; 2]) -> Result<Self, Self::Error> {
        AlphaPair::new(v[0], v[1])
    }
}

impl From<AlphaPair> for [u8; 2] {
    fn from(p: AlphaPair) -> Self {
        [p.alpha, p.beta]
    }
}

impl std::fmt::Display for AlphaPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// A corner multi-index `((alpha_1, beta_1), ..., (alpha_k, beta_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaMulti(Vec<AlphaPair>);

impl AlphaMulti {
    pub fn new(pairs: Vec<AlphaPair>) -> Self {
        AlphaMulti(pairs)
    }

    /// `((1,1), ..., (1,1))`.
    pub fn ones(k: usize) -> Self {
        AlphaMulti(vec![AlphaPair { alpha: 1, beta: 1 }; k])
    }

    /// All `3^k` multi-indices, lexicographically ordered.
    pub fn all(k: usize) -> Vec<AlphaMulti> {
        let mut out = vec![AlphaMulti(Vec::new())];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|m| {
                    AlphaPair::ALL.iter().map(move |p| {
                        let mut v = m.0.clone();
                        v.push(*p);
                        AlphaMulti(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn pairs(&self) -> &[AlphaPair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|alpha|_2 = sum beta_i`.
    pub fn beta_weight(&self) -> u32 {
        self.0.iter().map(|p| u32::from(p.beta)).sum()
    }

    /// `[eps . alpha] = sum eps_i (alpha_i + beta_i)`.
    pub fn pairing(&self, eps: &SignVector) -> u32 {
        self.0.iter().zip(eps.entries()).map(|(p, &e)| u32::from(e) * u32::from(p.alpha + p.beta)).sum()
    }
}

impl std::fmt::Display for AlphaMulti {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `eps in {0,1}^k`, selecting the orthant `(-1)^{eps_i} x_i >= 0` or the
/// sign conditions `(-1)^{eps_i} g_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct SignVector(Vec<u8>);

impl SignVector {
    pub fn new(entries: Vec<u8>) -> Result<Self, ConstructionError> {
        if let Some(bad) = entries.iter().find(|&&e| e > 1) {
            return Err(ConstructionError::InvalidSelector(format!("sign entries must be 0 or 1, got {bad}")));
        }
        Ok(SignVector(entries))
    }

    pub fn zeros(k: usize) -> Self {
        SignVector(vec![0; k])
    }

    /// All `2^k` sign vectors, lexicographically ordered.
    pub fn all(k: usize) -> Vec<SignVector> {
        (0..1usize << k).map(|bits| SignVector((0..k).map(|i| ((bits >> (k - 1 - i)) & 1) as u8).collect())).collect()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|eps| = sum eps_i`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// `eps . a = sum eps_i a_i` for a 0/1 vector `a`.
    pub fn dot(&self, a: &[u8]) -> u32 {
        self.0.iter().zip(a).map(|(&e, &x)| u32::from(e * x)).sum()
    }
}

impl TryFrom<Vec<u8>> for SignVector {
    type Error = ConstructionError;
    fn try_from(v: Vec<u8>) -> Result<Self, Self::Error> {
        SignVector::new(v)
    }
}

impl From<SignVector> for Vec<u8> {
    fn from(s: SignVector) -> Self {
        s.0
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `V(alpha) = (x_1^{alpha_1} a_1^{beta_1}, ..., x_k^{alpha_k} a_k^{beta_k}, a_{k+1}, ..., a_n)`.
pub fn corner_field(omega: &OneForm, alpha: &AlphaMulti) -> Result<VectorField, ConstructionError> {
    let n = omega.dim();
    if alpha.len() > n {
        return Err(ConstructionError::InvalidSelector(format!("corner depth {} exceeds dimension {n}", alpha.len())));
    }
    let mut comps: Vec<Polynomial> = omega.coefficients().to_vec();
    for (i, p) in alpha.pairs().iter().enumerate() {
        let x = Polynomial::var(n, i);
        comps[i] = match (p.alpha, p.beta) {
            (1, 0) => x,
            (0, 1) => comps[i].clone(),
            _ => &x * &comps[i],
        };
    }
    Ok(VectorField::new(comps)?)
}

/// Whether a vector field with an isolated zero of index `ind` admits a
/// positively oriented frame of `V(x)^perp`.
pub fn condition_p_feasible(n: usize, ind: i64) -> bool {
    matches!(n, 2 | 4 | 8) || (n % 2 == 0 && ind % 2 == 0) || (n % 2 == 1 && ind == 0)
}

fn pairings(frame: &Frame, first: Polynomial, z: &VectorField) -> Result<VectorField, ConstructionError> {
    check_dim(frame.dim(), z.dim())?;
    let mut comps = vec![first];
    comps.extend(frame.complements().iter().map(|c| c.dot(z)));
    Ok(VectorField::new(comps)?)
}

fn check_dim(expected: usize, found: usize) -> Result<(), ConstructionError> {
    if expected == found {
        Ok(())
    } else {
        Err(ConstructionError::DimensionMismatch { expected, found })
    }
}

/// `W_X = (<V, X>, <V_2, X>, ..., <V_n, X>)`. Any nonzero `X` gives the same
/// index; it need not be normalized.
pub fn w_x_field(frame: &Frame, x: &[Rational]) -> Result<VectorField, ConstructionError> {
    let n = frame.dim();
    check_dim(n, x.len())?;
    if x.iter().all(num_traits::Zero::is_zero) {
        return Err(ConstructionError::InvalidSelector("direction X must be nonzero".into()));
    }
    let constant = VectorField::new(x.iter().map(|c| Polynomial::constant(n, c.clone())).collect())?;
    pairings(frame, frame.base().dot(&constant), &constant)
}

/// `Gamma = (<V, Z>, <V_2, Z>, ..., <V_n, Z>)`.
pub fn gamma_field(frame: &Frame, z: &VectorField) -> Result<VectorField, ConstructionError> {
    check_dim(frame.dim(), z.dim())?;
    pairings(frame, frame.base().dot(z), z)
}

/// Which field carries the orthogonal frame in the hypersurface constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum HypersurfaceVariant {
    /// Frame on `grad f`; the complements are paired with `V(Omega)`.
    #[default]
    GradP,
    /// Frame on `V(Omega)`; the complements are paired with `grad f`.
    FormP,
}

impl HypersurfaceVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            HypersurfaceVariant::GradP => "grad-P",
            HypersurfaceVariant::FormP => "form-P",
        }
    }
}

/// The fields attached to a function `f` and a form `Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceFields {
    pub variant: HypersurfaceVariant,
    pub frame: Frame,
    pub grad_f: VectorField,
    pub v_omega: VectorField,
    pub w: VectorField,
    pub y: VectorField,
    pub gamma: VectorField,
}

/// `W = (f, <V(Omega), V_i>)`, `Gamma = (<grad f, V(Omega)>, <V(Omega), V_i>)`
/// and `Y = (f <grad f, V(Omega)>, <V(Omega), V_i>)` for the frame on `grad f`.
pub fn hypersurface_fields_grad_p(f: &Polynomial, omega: &OneForm) -> Result<HypersurfaceFields, ConstructionError> {
    hypersurface_fields(f, omega, HypersurfaceVariant::GradP)
}

/// The same three fields with the frame on `V(Omega)` and `grad f` paired
/// against its complements.
pub fn hypersurface_fields_form_p(f: &Polynomial, omega: &OneForm) -> Result<HypersurfaceFields, ConstructionError> {
    hypersurface_fields(f, omega, HypersurfaceVariant::FormP)
}

pub fn hypersurface_fields(
    f: &Polynomial,
    omega: &OneForm,
    variant: HypersurfaceVariant,
) -> Result<HypersurfaceFields, ConstructionError> {
    let n = omega.dim();
    check_dim(n, f.nvars())?;
    let grad_f = VectorField::gradient(f);
    let v_omega = omega.dual_field().clone();
    let (frame, paired) = match variant {
        HypersurfaceVariant::GradP => (frame_p_prime(&grad_f)?, &v_omega),
        HypersurfaceVariant::FormP => (frame_p_prime(&v_omega)?, &grad_f),
    };
    let cross = grad_f.dot(&v_omega);
    let w = pairings(&frame, f.clone(), paired)?;
    let gamma = pairings(&frame, cross.clone(), paired)?;
    let y = pairings(&frame, f * &cross, paired)?;
    Ok(HypersurfaceFields { variant, frame, grad_f, v_omega, w, y, gamma })
}

/// The fields attached to a curve `F^{-1}(0)`, a form and optionally a function `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFields {
    /// `det(a; DF)`.
    pub m: Polynomial,
    pub v_omega: VectorField,
    pub w_omega_g: Option<VectorField>,
    pub v_dg: Option<VectorField>,
    pub i: VectorField,
}

/// `det` of the matrix with first row `row` and then the rows of `DF`.
pub fn curve_minor(row: &[Polynomial], fs: &[Polynomial]) -> Result<Polynomial, ConstructionError> {
    let n = row.len();
    check_dim(n - 1, fs.len())?;
    let mut rows = vec![row.to_vec()];
    for f in fs {
        check_dim(n, f.nvars())?;
        rows.push(f.gradient());
    }
    Ok(poly_determinant(&rows, n))
}

/// `(first, f_1, ..., f_{n-1})`.
pub fn curve_field(first: Polynomial, fs: &[Polynomial]) -> Result<VectorField, ConstructionError> {
    let mut comps = vec![first];
    comps.extend(fs.iter().cloned());
    Ok(VectorField::new(comps)?)
}

/// `V(dh) = (d(h, f_1, ..., f_{n-1})/dx, f_1, ..., f_{n-1})`.
pub fn curve_differential_field(h: &Polynomial, fs: &[Polynomial]) -> Result<VectorField, ConstructionError> {
    curve_field(curve_minor(&h.gradient(), fs)?, fs)
}

pub fn curve_fields(
    fs: &[Polynomial],
    omega: &OneForm,
    g: Option<&Polynomial>,
) -> Result<CurveFields, ConstructionError> {
    let n = omega.dim();
    check_dim(n - 1, fs.len())?;
    let m = curve_minor(omega.coefficients(), fs)?;
    let v_omega = curve_field(m.clone(), fs)?;
    let (w_omega_g, v_dg) = match g {
        Some(g) => {
            check_dim(n, g.nvars())?;
            (Some(curve_field(&m * g, fs)?), Some(curve_differential_field(g, fs)?))
        }
        None => (None, None),
    };
    let i = curve_differential_field(&Polynomial::rho(n), fs)?;
    Ok(CurveFields { m, v_omega, w_omega_g, v_dg, i })
}

/// `g_1^{a_1} ... g_k^{a_k}`. The all-zero selector yields `1`, so that
/// `W(Omega, 1) = V(Omega)`; for the matching `V(0)` the caller uses `I`.
pub fn product_powers(gs: &[Polynomial], alpha: &[u8]) -> Result<Polynomial, ConstructionError> {
    check_dim(gs.len(), alpha.len())?;
    let n = gs.first().map(Polynomial::nvars).unwrap_or(0);
    let mut out = Polynomial::one(n);
    for (g, &a) in gs.iter().zip(alpha) {
        match a {
            0 => {}
            1 => out = &out * g,
            other => return Err(ConstructionError::InvalidSelector(format!("exponent {other} is not 0 or 1"))),
        }
    }
    Ok(out)
}
