//! Second-order jets of closed-form immersions.
//!
//! A [`Jet2`] holds the value, all first partials and all second partials of
//! a chart map at one point. The finite-difference path uses central
//! differences of order `h^2` with one Richardson extrapolation level
//! (effective order `h^4`); families with registered analytic derivatives
//! bypass it entirely.

use crate::ambient::CVector;

/// A point in the intrinsic chart of an immersion family.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint(pub Vec<f64>);

impl ChartPoint {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<f64>> for ChartPoint {
    fn from(v: Vec<f64>) -> Self {
        ChartPoint(v)
    }
}

/// Default finite-difference step for jets.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Value, gradient and Hessian of an immersion at a chart point. The
/// Hessian is stored once per unordered index pair, so `hess(j, k)` and
/// `hess(k, j)` are the same object bit for bit.
#[derive(Debug, Clone)]
pub struct Jet2 {
    pub value: CVector,
    pub grad: Vec<CVector>,
    hess_packed: Vec<CVector>,
}

impl Jet2 {
    pub fn new(value: CVector, grad: Vec<CVector>, hess_upper: Vec<CVector>) -> Self {
        let n = grad.len();
        assert_eq!(hess_upper.len(), n * (n + 1) / 2, "packed Hessian size");
        for g in &grad {
            debug_assert_eq!(g.dim(), value.dim());
        }
        Jet2 {
            value,
            grad,
            hess_packed: hess_upper,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.grad.len()
    }

    pub fn dim_out(&self) -> usize {
        self.value.dim()
    }

    #[inline]
    fn packed_index(&self, j: usize, k: usize) -> usize {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        // Upper-triangular row-major packing.
        a * self.grad.len() - a * (a + 1) / 2 + b
    }

    pub fn hess(&self, j: usize, k: usize) -> &CVector {
        &self.hess_packed[self.packed_index(j, k)]
    }
}

/// Finite-difference jet of a chart map assumed admissible on the whole
/// stencil (callers enforce domain margins).
pub fn fd_jet(f: &dyn Fn(&[f64]) -> CVector, p: &[f64], step: f64) -> Jet2 {
    assert!(step > 0.0, "step must be positive");
    let n = p.len();
    let value = f(p);

    let eval_shift = |j: usize, dj: f64| -> CVector {
        let mut q = p.to_vec();
        q[j] += dj;
        f(&q)
    };
    let eval_shift2 = |j: usize, dj: f64, k: usize, dk: f64| -> CVector {
        let mut q = p.to_vec();
        q[j] += dj;
        q[k] += dk;
        f(&q)
    };

    let mut grad = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for j in 0..n {
        let fp = eval_shift(j, step);
        let fm = eval_shift(j, -step);
        let fph = eval_shift(j, 0.5 * step);
        let fmh = eval_shift(j, -0.5 * step);

        let d_h = central_first(&fp, &fm, step);
        let d_h2 = central_first(&fph, &fmh, 0.5 * step);
        grad.push(richardson(&d_h2, &d_h));

        let s_h = central_second(&fp, &value, &fm, step);
        let s_h2 = central_second(&fph, &value, &fmh, 0.5 * step);
        diag.push(richardson(&s_h2, &s_h));
    }

    let mut hess = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for k in j..n {
            if j == k {
                hess.push(diag[j].clone());
                continue;
            }
            let m_h = cross_stencil(&eval_shift2, j, k, step);
            let m_h2 = cross_stencil(&eval_shift2, j, k, 0.5 * step);
            hess.push(richardson(&m_h2, &m_h));
        }
    }

    Jet2::new(value, grad, hess)
}

fn central_first(fp: &CVector, fm: &CVector, h: f64) -> CVector {
    let mut out = fp.sub(fm);
    let s = 1.0 / (2.0 * h);
    for z in &mut out.entries {
        *z *= s;
    }
    out
}

fn central_second(fp: &CVector, f0: &CVector, fm: &CVector, h: f64) -> CVector {
    let mut out = fp.add(fm);
    let s = 1.0 / (h * h);
    for (z, c) in out.entries.iter_mut().zip(&f0.entries) {
        *z = (*z - 2.0 * c) * s;
    }
    out
}

fn cross_stencil(
    eval2: &dyn Fn(usize, f64, usize, f64) -> CVector,
    j: usize,
    k: usize,
    h: f64,
) -> CVector {
    let pp = eval2(j, h, k, h);
    let pm = eval2(j, h, k, -h);
    let mp = eval2(j, -h, k, h);
    let mm = eval2(j, -h, k, -h);
    let mut out = pp.sub(&pm).sub(&mp).add(&mm);
    let s = 1.0 / (4.0 * h * h);
    for z in &mut out.entries {
        *z *= s;
    }
    out
}

/// One Richardson level for an order-`h^2` central difference:
/// `(4 d(h/2) - d(h)) / 3`, effective order `h^4`.
fn richardson(d_half: &CVector, d_full: &CVector) -> CVector {
    let mut out = d_half.clone();
    for (z, f) in out.entries.iter_mut().zip(&d_full.entries) {
        *z = (4.0 * *z - f) / 3.0;
    }
    out
}

/// Largest entry-wise deviation between two jets, over value, gradient and
/// Hessian. Used to cross-check analytic derivatives against the FD path.
pub fn jet_deviation(a: &Jet2, b: &Jet2) -> f64 {
    let n = a.dim_in();
    assert_eq!(n, b.dim_in());
    let mut worst = max_entry(&a.value.sub(&b.value));
    for j in 0..n {
        worst = worst.max(max_entry(&a.grad[j].sub(&b.grad[j])));
        for k in j..n {
            worst = worst.max(max_entry(&a.hess(j, k).sub(b.hess(j, k))));
        }
    }
    worst
}

fn max_entry(v: &CVector) -> f64 {
    v.entries.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::CVector;
    use num_complex::Complex64;

    // Test map (x, y) -> (2 e^{ix}, x^2 y + i cos x) with exact jets.
    fn f(p: &[f64]) -> CVector {
        let (x, y) = (p[0], p[1]);
        CVector::euclidean(vec![
            2.0 * Complex64::new(0.0, x).exp(),
            Complex64::new(x * x * y, x.cos()),
        ])
    }

    fn exact_jet(p: &[f64]) -> Jet2 {
        let (x, y) = (p[0], p[1]);
        let e = Complex64::new(0.0, x).exp();
        let i = Complex64::new(0.0, 1.0);
        let value = f(p);
        let gx = CVector::euclidean(vec![2.0 * i * e, Complex64::new(2.0 * x * y, -x.sin())]);
        let gy = CVector::euclidean(vec![Complex64::new(0.0, 0.0), Complex64::new(x * x, 0.0)]);
        let hxx = CVector::euclidean(vec![-2.0 * e, Complex64::new(2.0 * y, -x.cos())]);
        let hxy = CVector::euclidean(vec![Complex64::new(0.0, 0.0), Complex64::new(2.0 * x, 0.0)]);
        let hyy = CVector::euclidean(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
        Jet2::new(value, vec![gx, gy], vec![hxx, hxy, hyy])
    }

    #[test]
    fn fd_matches_analytic_at_default_step() {
        let p = [0.37, -0.82];
        let fd = fd_jet(&f, &p, DEFAULT_STEP);
        let exact = exact_jet(&p);
        let dev = jet_deviation(&fd, &exact);
        assert!(dev < 1e-9, "deviation {dev}");
    }

    #[test]
    fn one_coordinate_circle_jet() {
        // 2 e^{ix} at x = 0: value (2), grad [(2i)], hess [[-2]].
        let g = |p: &[f64]| CVector::euclidean(vec![2.0 * Complex64::new(0.0, p[0]).exp()]);
        let jet = fd_jet(&g, &[0.0], DEFAULT_STEP);
        assert!((jet.value.entries[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((jet.grad[0].entries[0] - Complex64::new(0.0, 2.0)).norm() < 1e-11);
        assert!((jet.hess(0, 0).entries[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn constant_map_has_vanishing_derivatives() {
        let g = |_p: &[f64]| CVector::euclidean(vec![Complex64::new(1.5, -0.5)]);
        let jet = fd_jet(&g, &[0.2, 0.4, -0.1], 1e-3);
        for j in 0..3 {
            assert!(jet.grad[j].coeff_norm() < 1e-12);
            for k in j..3 {
                assert!(jet.hess(j, k).coeff_norm() < 1e-12);
            }
        }
    }

    #[test]
    fn halving_step_gains_at_least_eight_fold() {
        // Steps chosen well above the round-off floor so the h^4 truncation
        // term dominates.
        let p = [0.55, 0.31];
        let exact = exact_jet(&p);
        let dev_coarse = jet_deviation(&fd_jet(&f, &p, 0.04), &exact);
        let dev_fine = jet_deviation(&fd_jet(&f, &p, 0.02), &exact);
        assert!(
            dev_coarse > 8.0 * dev_fine,
            "convergence ratio {} too small",
            dev_coarse / dev_fine
        );
    }

    #[test]
    fn hessian_symmetry_is_bit_exact() {
        let p = [0.9, -0.3];
        let jet = fd_jet(&f, &p, 1e-3);
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(jet.hess(j, k), jet.hess(k, j));
            }
        }
    }
}
