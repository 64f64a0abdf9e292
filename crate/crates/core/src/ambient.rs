//! The three ambient geometries and their Hermitian/Kaehler algebra.
//!
//! Flat `C^n` is handled directly. `CP^n(4)` and `CH^n(-4)` are never
//! charted: all geometry is done at the lift level, on the unit sphere
//! `S^{2n+1}(1)` inside `C^{n+1}` or on the anti-de-Sitter quadric
//! `H_1^{2n+1}(-1)` inside `C_1^{n+1}` (one timelike complex coordinate).
//! The Hopf/pseudo-Riemannian submersion identifies the induced metric,
//! second fundamental form and mean curvature of a horizontal (Legendrian)
//! lift with those of its Lagrangian projection, so every check runs on the
//! lift.
//!
//! Sign convention fixed here: the Kaehler form is
//! `omega(u, v) = -Im <u, v>`, so the isotropy test is `Im <d_j, d_k> = 0`,
//! which does not depend on the orientation convention.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AmbientError {
    #[error("dimension mismatch: left has {left} entries, right has {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("signature mismatch between operands")]
    SignatureMismatch,
    #[error("operation requires a quadric lift model, got a flat model")]
    UnsupportedModel,
}

/// Per-coordinate signs of the ambient Hermitian form. All `+1` for `C^m`
/// and the sphere lift; first entry `-1` for the anti-de-Sitter lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature(Vec<i8>);

impl Signature {
    pub fn euclidean(m: usize) -> Self {
        assert!(m >= 1, "signature length must be at least 1");
        Signature(vec![1; m])
    }

    pub fn lorentzian(m: usize) -> Self {
        assert!(m >= 1, "signature length must be at least 1");
        let mut s = vec![1; m];
        s[0] = -1;
        Signature(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }
}

/// A point or vector of `C^m` carrying its signature.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    pub entries: Vec<Complex64>,
    pub signature: Signature,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>, signature: Signature) -> Self {
        assert_eq!(
            entries.len(),
            signature.len(),
            "entry count must match signature length"
        );
        CVector { entries, signature }
    }

    pub fn euclidean(entries: Vec<Complex64>) -> Self {
        let sig = Signature::euclidean(entries.len());
        CVector::new(entries, sig)
    }

    pub fn zeros_like(&self) -> Self {
        CVector::new(
            vec![Complex64::new(0.0, 0.0); self.entries.len()],
            self.signature.clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `J` of the ambient Kaehler structure: multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        CVector::new(
            self.entries
                .iter()
                .map(|z| Complex64::new(0.0, 1.0) * z)
                .collect(),
            self.signature.clone(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CVector::new(
            self.entries.iter().map(|z| c * z).collect(),
            self.signature.clone(),
        )
    }

    pub fn add(&self, other: &CVector) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            self.signature.clone(),
        )
    }

    pub fn sub(&self, other: &CVector) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
            self.signature.clone(),
        )
    }

    /// Euclidean (unsigned) norm of the coefficient vector, used for
    /// residual magnitudes only, never as the ambient metric.
    pub fn coeff_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Which ambient space form the construction lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ModelKind {
    /// `C^n` itself.
    Flat,
    /// `S^{2n+1}(1) in C^{n+1}` lifting `CP^n(4)`.
    SphericalLift,
    /// `H_1^{2n+1}(-1) in C_1^{n+1}` lifting `CH^n(-4)`.
    HyperbolicLift,
}

/// Ambient model: kind plus intrinsic complex dimension `n`. The embedding
/// dimension and the quadric constant are derived so the structural
/// invariants cannot be violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbientModel {
    pub kind: ModelKind,
    pub n: usize,
}

impl AmbientModel {
    pub fn flat(n: usize) -> Self {
        AmbientModel {
            kind: ModelKind::Flat,
            n,
        }
    }

    pub fn spherical(n: usize) -> Self {
        AmbientModel {
            kind: ModelKind::SphericalLift,
            n,
        }
    }

    pub fn hyperbolic(n: usize) -> Self {
        AmbientModel {
            kind: ModelKind::HyperbolicLift,
            n,
        }
    }

    /// Embedding complex dimension.
    pub fn m(&self) -> usize {
        match self.kind {
            ModelKind::Flat => self.n,
            _ => self.n + 1,
        }
    }

    /// The holomorphic sectional curvature of the represented space form
    /// is `4 * epsilon`.
    pub fn epsilon(&self) -> f64 {
        match self.kind {
            ModelKind::Flat => 0.0,
            ModelKind::SphericalLift => 1.0,
            ModelKind::HyperbolicLift => -1.0,
        }
    }

    /// Right-hand side of the quadric equation `<z, z> = sigma`.
    pub fn sigma(&self) -> f64 {
        match self.kind {
            ModelKind::Flat => 0.0,
            ModelKind::SphericalLift => 1.0,
            ModelKind::HyperbolicLift => -1.0,
        }
    }

    pub fn is_lift(&self) -> bool {
        self.kind != ModelKind::Flat
    }

    pub fn signature(&self) -> Signature {
        match self.kind {
            ModelKind::Flat => Signature::euclidean(self.n),
            ModelKind::SphericalLift => Signature::euclidean(self.n + 1),
            ModelKind::HyperbolicLift => Signature::lorentzian(self.n + 1),
        }
    }
}

/// Signature-aware Hermitian form `<u, v> = sum_a s_a u_a conj(v_a)`.
///
/// Its real part is the ambient (pseudo-)Riemannian metric; the Kaehler
/// form is `omega(u, v) = -Im <u, v>`.
pub fn herm_inner(u: &CVector, v: &CVector) -> Result<Complex64, AmbientError> {
    if u.dim() != v.dim() {
        return Err(AmbientError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    if u.signature != v.signature {
        return Err(AmbientError::SignatureMismatch);
    }
    Ok(herm_inner_unchecked(u, v))
}

/// `herm_inner` without the shape checks, for hot paths where the operands
/// come from the same immersion.
#[inline]
pub fn herm_inner_unchecked(u: &CVector, v: &CVector) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((a, b), s) in u.entries.iter().zip(&v.entries).zip(u.signature.signs()) {
        acc += (*s as f64) * a * b.conj();
    }
    acc
}

/// Real part of the Hermitian form: the ambient metric.
#[inline]
pub fn re_inner(u: &CVector, v: &CVector) -> f64 {
    herm_inner_unchecked(u, v).re
}

/// Kaehler form under the fixed convention `omega(u, v) = -Im <u, v>`.
#[inline]
pub fn kaehler_form(u: &CVector, v: &CVector) -> f64 {
    -herm_inner_unchecked(u, v).im
}

/// `| <z, z> - sigma |` for the quadric of a lift model. `<z, z>` is real
/// for any `z`, so the complex modulus equals the real deviation.
pub fn quadric_residual(z: &CVector, model: &AmbientModel) -> Result<f64, AmbientError> {
    if !model.is_lift() {
        return Err(AmbientError::UnsupportedModel);
    }
    let q = herm_inner(z, z)?;
    Ok((q - Complex64::new(model.sigma(), 0.0)).norm())
}

/// Contact-normality and isotropy residuals of a candidate Legendrian lift:
/// `(max_j |Re <i z, d_j>|, max_{j,k} |Im <d_j, d_k>|)`.
pub fn legendrian_residuals(
    z: &CVector,
    tangents: &[CVector],
    _model: &AmbientModel,
) -> Result<(f64, f64), AmbientError> {
    let iz = z.mul_i();
    let mut contact = 0.0_f64;
    for t in tangents {
        contact = contact.max(herm_inner(&iz, t)?.re.abs());
    }
    let mut isotropy = 0.0_f64;
    for (j, tj) in tangents.iter().enumerate() {
        for tk in &tangents[j..] {
            isotropy = isotropy.max(herm_inner(tj, tk)?.im.abs());
        }
    }
    Ok((contact, isotropy))
}

/// Remove from `v` its components along `z` and `iz`, with the
/// signature-corrected coefficients `Re<v, z> / <z, z>`. On the quadric
/// `<z, z> = sigma = +-1`, so the result is `Re<., z>`- and
/// `Re<., iz>`-orthogonal to the fiber plane to round-off.
pub fn horizontal_project(
    v: &CVector,
    z: &CVector,
    model: &AmbientModel,
) -> Result<CVector, AmbientError> {
    if !model.is_lift() {
        return Err(AmbientError::UnsupportedModel);
    }
    let sigma = model.sigma();
    let iz = z.mul_i();
    let cz = re_inner(v, z) / sigma;
    let ciz = re_inner(v, &iz) / sigma;
    let mut out = v.clone();
    for a in 0..out.entries.len() {
        out.entries[a] -= cz * z.entries[a] + ciz * iz.entries[a];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(re_im: &[(f64, f64)]) -> CVector {
        CVector::euclidean(re_im.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn herm_inner_unit_vector() {
        let u = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(herm_inner(&u, &u).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn herm_inner_i_e1_with_e1() {
        let u = cv(&[(0.0, 1.0), (0.0, 0.0)]);
        let v = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(herm_inner(&u, &v).unwrap(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn herm_inner_timelike_coordinate() {
        let sig = Signature::lorentzian(2);
        let u = CVector::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            sig,
        );
        assert_eq!(herm_inner(&u, &u).unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn herm_inner_rejects_mismatched_lengths() {
        let u = cv(&[(1.0, 0.0)]);
        let v = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            herm_inner(&u, &v),
            Err(AmbientError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quadric_residual_on_s3_basis_point() {
        let model = AmbientModel::spherical(1);
        let z = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(quadric_residual(&z, &model).unwrap(), 0.0);
    }

    #[test]
    fn quadric_residual_hyperbolic_identity() {
        let model = AmbientModel::hyperbolic(2);
        let th: f64 = 0.7;
        let z = CVector::new(
            vec![
                Complex64::new(th.cosh(), 0.0),
                Complex64::new(th.sinh(), 0.0),
                Complex64::new(0.0, 0.0),
            ],
            Signature::lorentzian(3),
        );
        assert!(quadric_residual(&z, &model).unwrap() < 1e-15);
    }

    #[test]
    fn quadric_residual_rejects_flat() {
        let model = AmbientModel::flat(2);
        let z = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(
            quadric_residual(&z, &model),
            Err(AmbientError::UnsupportedModel)
        );
    }

    /// The horizontal lift of the Clifford torus:
    /// `(1/sqrt3)(e^{ix}, e^{iy}, e^{-i(x+y)})` in `S^5`, with the phase sum
    /// pinned to zero so the tangents are contact-orthogonal to `iz`.
    fn torus_lift(x: f64, y: f64) -> (CVector, CVector, CVector) {
        let r = 1.0 / 3.0_f64.sqrt();
        let w = -(x + y);
        let at = |t: f64| (r * t.cos(), r * t.sin());
        let dt = |t: f64| (-r * t.sin(), r * t.cos());
        let z = cv(&[at(x), at(y), at(w)]);
        let (dwx, dwy) = (dt(w), dt(w));
        let dx = cv(&[dt(x), (0.0, 0.0), (-dwx.0, -dwx.1)]);
        let dy = cv(&[(0.0, 0.0), dt(y), (-dwy.0, -dwy.1)]);
        (z, dx, dy)
    }

    #[test]
    fn legendrian_residuals_on_flat_torus_lift() {
        let model = AmbientModel::spherical(2);
        let (z, dx, dy) = torus_lift(0.3, -0.4);
        let (contact, isotropy) = legendrian_residuals(&z, &[dx, dy], &model).unwrap();
        assert!(contact < 1e-15, "contact residual {contact}");
        assert!(isotropy < 1e-15, "isotropy residual {isotropy}");
    }

    #[test]
    fn legendrian_detector_fires_on_vertical_perturbation() {
        let model = AmbientModel::spherical(2);
        let (z, dx, _dy) = torus_lift(0.1, 0.2);
        let t = 0.05;
        let bad = dx.add(&z.mul_i().scale(Complex64::new(t, 0.0)));
        let (contact, _) = legendrian_residuals(&z, &[bad], &model).unwrap();
        let expected = t * herm_inner(&z, &z).unwrap().re.abs();
        assert!((contact - expected).abs() < 1e-14);
        assert!(contact > 0.0);
    }

    #[test]
    fn horizontal_project_kills_position_and_fiber() {
        let model = AmbientModel::spherical(1);
        let z = cv(&[(0.6, 0.0), (0.8, 0.0)]);
        let pz = horizontal_project(&z, &z, &model).unwrap();
        assert!(pz.coeff_norm() < 1e-15);

        // v = iz in AdS where <z,z> = -1: removed with sign correction.
        let h = AmbientModel::hyperbolic(1);
        let th: f64 = 0.5;
        let zh = CVector::new(
            vec![
                Complex64::new(th.cosh(), 0.0),
                Complex64::new(th.sinh(), 0.0),
            ],
            Signature::lorentzian(2),
        );
        let piz = horizontal_project(&zh.mul_i(), &zh, &h).unwrap();
        assert!(piz.coeff_norm() < 1e-15);
    }

    #[test]
    fn horizontal_project_fixes_horizontal_vectors() {
        let model = AmbientModel::spherical(1);
        let z = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        // e2 is horizontal at e1.
        let v = cv(&[(0.0, 0.0), (1.0, 0.0)]);
        let pv = horizontal_project(&v, &z, &model).unwrap();
        assert!(pv.sub(&v).coeff_norm() < 1e-15);
    }
}
