//! Shared building blocks for the warped-product families.
//!
//! Every warped-product entry is assembled from a small set of complex
//! pairs in one chart coordinate plus a telescoped weight system on the
//! space-form factor. The pairs below satisfy, in the slot signs they are
//! used with, the two identities the constructions rely on:
//! `sum s_i |phi_i|^2 = const` and `sum s_i phi_i' conj(phi_i) = 0`.

use num_complex::Complex64;

pub fn ei(x: f64) -> Complex64 {
    Complex64::new(0.0, x).exp()
}

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Oscillatory pair for slot signs `(+, +)`:
/// `A = (2a/s) e^{ix/2} sin(s x/2)`, `B = e^{ix/2} (cos(s x/2) - (i/s) sin(s x/2))`
/// with `s = sqrt(1 + 4a^2)`; `|A|^2 + |B|^2 = 1`.
pub fn spherical_pair(a: f64, x: f64) -> (Complex64, Complex64) {
    let s = (1.0 + 4.0 * a * a).sqrt();
    let half = ei(0.5 * x);
    let (sn, cs) = (0.5 * s * x).sin_cos();
    let a_comp = (2.0 * a / s) * half * sn;
    let b_comp = half * (Complex64::new(cs, 0.0) - I / s * sn);
    (a_comp, b_comp)
}

/// Oscillatory pair for slot signs `(-, +)` with `4a^2 < 1`:
/// `B = e^{ix/2} (cos(p x/2) - (i/p) sin(p x/2))`, `A = (2a/p) e^{ix/2} sin(p x/2)`
/// with `p = sqrt(1 - 4a^2)`; `-|B|^2 + |A|^2 = -1`.
pub fn trig_pair(a: f64, x: f64) -> (Complex64, Complex64) {
    let p = (1.0 - 4.0 * a * a).sqrt();
    let half = ei(0.5 * x);
    let (sn, cs) = (0.5 * p * x).sin_cos();
    let b_comp = half * (Complex64::new(cs, 0.0) - I / p * sn);
    let a_comp = (2.0 * a / p) * half * sn;
    (b_comp, a_comp)
}

/// Hyperbolic pair for slot signs `(-, +)` with `4a^2 > 1`:
/// `B = e^{ix/2} (cosh(q x/2) - (i/q) sinh(q x/2))`, `A = (2a/q) e^{ix/2} sinh(q x/2)`
/// with `q = sqrt(4a^2 - 1)`; `-|B|^2 + |A|^2 = -1`.
pub fn hyper_pair(a: f64, x: f64) -> (Complex64, Complex64) {
    let q = (4.0 * a * a - 1.0).sqrt();
    let half = ei(0.5 * x);
    let (sh, ch) = ((0.5 * q * x).sinh(), (0.5 * q * x).cosh());
    let b_comp = half * (Complex64::new(ch, 0.0) - I / q * sh);
    let a_comp = (2.0 * a / q) * half * sh;
    (b_comp, a_comp)
}

/// Parabolic pair for slot signs `(-, +)`:
/// `(e^{ix/2} (1 - ix/2), (x/2) e^{ix/2})`; `-|.|^2 + |.|^2 = -1`.
pub fn parabolic_pair(x: f64) -> (Complex64, Complex64) {
    let half = ei(0.5 * x);
    (half * (Complex64::new(1.0, -0.5 * x)), half * (0.5 * x))
}

/// Which pair a twisted coordinate uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairKind {
    /// `spherical_pair` with the named parameter.
    Spherical,
    /// `trig_pair`, requires `4a^2 < 1`.
    Trig,
    /// `hyper_pair`, requires `4a^2 > 1`.
    Hyper,
    /// `parabolic_pair`, parameter-free.
    Parabolic,
}

impl PairKind {
    pub fn eval(&self, a: f64, x: f64) -> (Complex64, Complex64) {
        match self {
            PairKind::Spherical => spherical_pair(a, x),
            PairKind::Trig => trig_pair(a, x),
            PairKind::Hyper => hyper_pair(a, x),
            PairKind::Parabolic => parabolic_pair(x),
        }
    }

    /// `-s1 |phi1'|^2 + s2 |phi2'|^2` in the slot signs of the pair: the
    /// squared twisted factor before weights.
    pub fn metric_const(&self, a: f64) -> f64 {
        match self {
            PairKind::Parabolic => 0.25,
            _ => a * a,
        }
    }
}

/// Telescoped unit-sphere weights over `angles = (phi_1, ..., phi_k)`:
/// `(sin phi_1, cos phi_1 sin phi_2, ..., prod_j cos phi_j)`, `k + 1`
/// entries summing to one in squares.
pub fn telescope(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut running = 1.0;
    for &phi in angles {
        out.push(running * phi.sin());
        running *= phi.cos();
    }
    out.push(running);
    out
}

/// Diagonal of the round metric in telescoped coordinates:
/// `g_{phi_j} = prod_{r < j} cos^2 phi_r`.
pub fn telescope_metric_diag(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut running = 1.0;
    for &phi in angles {
        out.push(running);
        running *= phi.cos() * phi.cos();
    }
    out
}

/// The three-component block mixing the hyperbolic slot with the first
/// sphere weight: with `Q = a^2 (1/2 + i x)`, `T = coth theta`, `U` the
/// first weight,
///
/// ```text
/// c1 = (1 + Q) T - Q U,   c2 = Q T + (1 - Q) U,   c3 = i a e^{ix} (T - U),
/// ```
///
/// satisfying `-|c1|^2 + |c2|^2 + |c3|^2 = U^2 - T^2`.
pub fn triple_block(a: f64, x: f64, t: f64, u: f64) -> (Complex64, Complex64, Complex64) {
    let q = Complex64::new(0.5 * a * a, a * a * x);
    let c1 = (1.0 + q) * t - q * u;
    let c2 = q * t + (1.0 - q) * u;
    let c3 = I * a * ei(x) * (t - u);
    (c1, c2, c3)
}

/// Factor kinds for analytic jets of real product immersions.
#[derive(Clone, Copy, Debug)]
pub enum Fk {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Fk {
    fn eval(self, t: f64) -> (f64, f64, f64) {
        match self {
            Fk::Sin => (t.sin(), t.cos(), -t.sin()),
            Fk::Cos => (t.cos(), -t.sin(), -t.cos()),
            Fk::Sinh => (t.sinh(), t.cosh(), t.sinh()),
            Fk::Cosh => (t.cosh(), t.sinh(), t.cosh()),
        }
    }
}

/// Analytic jet of a map whose components are products of univariate real
/// factors (at most one factor per chart coordinate and component).
pub fn real_product_jet(
    comps: &[Vec<(usize, Fk)>],
    n: usize,
    q: &[f64],
    signature: crate::ambient::Signature,
) -> crate::jets::Jet2 {
    let m = comps.len();
    assert_eq!(m, signature.len());
    let zero = Complex64::new(0.0, 0.0);
    let mut value = vec![zero; m];
    let mut grad = vec![vec![zero; m]; n];
    let mut hess = vec![vec![zero; m]; n * (n + 1) / 2];
    let packed = |j: usize, k: usize| -> usize {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        a * n - a * (a + 1) / 2 + b
    };
    for (ci, factors) in comps.iter().enumerate() {
        let evals: Vec<(usize, f64, f64, f64)> = factors
            .iter()
            .map(|&(coord, fk)| {
                let (v, d, dd) = fk.eval(q[coord]);
                (coord, v, d, dd)
            })
            .collect();
        let product: f64 = evals.iter().map(|e| e.1).product();
        value[ci] = Complex64::new(product, 0.0);
        for (a_idx, &(ca, _va, da, dda)) in evals.iter().enumerate() {
            let rest_a: f64 = evals
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != a_idx)
                .map(|(_, e)| e.1)
                .product();
            grad[ca][ci] += Complex64::new(da * rest_a, 0.0);
            hess[packed(ca, ca)][ci] += Complex64::new(dda * rest_a, 0.0);
            for (b_idx, &(cb, _vb, db, _)) in evals.iter().enumerate() {
                if b_idx <= a_idx {
                    continue;
                }
                let rest_ab: f64 = evals
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a_idx && i != b_idx)
                    .map(|(_, e)| e.1)
                    .product();
                hess[packed(ca, cb)][ci] += Complex64::new(da * db * rest_ab, 0.0);
            }
        }
    }
    let to_cv = |v: Vec<Complex64>| crate::ambient::CVector::new(v, signature.clone());
    crate::jets::Jet2::new(
        to_cv(value),
        grad.into_iter().map(to_cv).collect(),
        hess.into_iter().map(to_cv).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modsq(z: Complex64) -> f64 {
        z.norm_sqr()
    }

    #[test]
    fn pair_norm_identities() {
        for &x in &[0.0, 0.4, -1.3, 2.0] {
            let (a1, b1) = spherical_pair(0.8, x);
            assert!((modsq(a1) + modsq(b1) - 1.0).abs() < 1e-14);
            let (b2, a2) = trig_pair(0.3, x);
            assert!((-modsq(b2) + modsq(a2) + 1.0).abs() < 1e-14);
            let (b3, a3) = hyper_pair(1.1, x);
            assert!((-modsq(b3) + modsq(a3) + 1.0).abs() < 1e-13);
            let (p1, p2) = parabolic_pair(x);
            assert!((-modsq(p1) + modsq(p2) + 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pair_cross_terms_vanish() {
        // s1 phi1' conj(phi1) + s2 phi2' conj(phi2) = 0 in the slot signs,
        // checked by finite differences.
        let h = 1e-6;
        for &x in &[0.3, -0.9, 1.7] {
            for (kind, a, s1) in [
                (PairKind::Spherical, 0.8, 1.0),
                (PairKind::Trig, 0.3, -1.0),
                (PairKind::Hyper, 1.1, -1.0),
                (PairKind::Parabolic, 0.0, -1.0),
            ] {
                let (p1, p2) = kind.eval(a, x);
                let (q1, q2) = kind.eval(a, x + h);
                let (r1, r2) = kind.eval(a, x - h);
                let d1 = (q1 - r1) / (2.0 * h);
                let d2 = (q2 - r2) / (2.0 * h);
                let cross = s1 * d1 * p1.conj() + d2 * p2.conj();
                assert!(
                    cross.norm() < 1e-8,
                    "{kind:?} cross term {cross} at x = {x}"
                );
            }
        }
    }

    #[test]
    fn telescope_weights_are_unit() {
        let w = telescope(&[0.7, 1.1, 0.4]);
        assert_eq!(w.len(), 4);
        let total: f64 = w.iter().map(|v| v * v).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn triple_block_norm_identity() {
        let (a, x, t, u) = (0.9, 0.6, 1.0_f64 / 0.8_f64.tanh(), 0.55_f64.sin());
        let (c1, c2, c3) = triple_block(a, x, t, u);
        let got = -modsq(c1) + modsq(c2) + modsq(c3);
        assert!((got - (u * u - t * t)).abs() < 1e-12);
    }
}
