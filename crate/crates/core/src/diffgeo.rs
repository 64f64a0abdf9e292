//! Intrinsic and extrinsic geometry of an immersion from second-order jets:
//! induced metric, Christoffel symbols, second fundamental form (with the
//! quadric and fiber corrections at the lift level), mean curvature,
//! curvature residuals, `div JH`, relative nullity, and the flat-ambient
//! first-variation oracle.

use crate::ambient::{herm_inner_unchecked, horizontal_project, re_inner, AmbientModel, CVector};
use crate::catalog::{BoundFamily, CatalogError};
use crate::jets::{ChartPoint, Jet2};
use crate::linalg::{singular_values, sym_eigenvalues, SquareMat};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiffGeoError {
    #[error("degenerate induced metric (min eigenvalue {min_eig:.3e})")]
    Degenerate { min_eig: f64 },
    #[error(transparent)]
    Domain(#[from] CatalogError),
    #[error("first variation requires a flat ambient")]
    CurvedAmbient,
    #[error("bump support leaves the sampled patch")]
    Support,
}

/// Outer finite-difference step for curvature and divergence stencils,
/// coarser than the jet step so composite noise stays below the check
/// tolerances.
pub const OUTER_STEP: f64 = 1e-2;

/// Default relative threshold on singular values for the nullity rank.
pub const RANK_TOL: f64 = 1e-6;

const DEGENERACY_FLOOR: f64 = 1e-9;

/// All pointwise geometry of an immersion derived from one jet.
pub struct GeometryAtPoint {
    pub n: usize,
    pub position: CVector,
    pub tangents: Vec<CVector>,
    pub g: SquareMat,
    pub g_inv: SquareMat,
    pub det_g: f64,
    pub min_eigenvalue: f64,
    /// `Gamma^l_{jk}` indexed `l * n * n + j * n + k`.
    pub christoffel: Vec<f64>,
    h_packed: Vec<CVector>,
    pub mean_curvature: CVector,
    /// Components of `JH` in the coordinate frame.
    pub jh_tangent: Vec<f64>,
}

impl GeometryAtPoint {
    pub fn h(&self, j: usize, k: usize) -> &CVector {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        &self.h_packed[a * self.n - a * (a + 1) / 2 + b]
    }

    /// Cubic form `C_{jkl} = Re <h(d_j, d_k), i d_l>`.
    pub fn cubic(&self, j: usize, k: usize, l: usize) -> f64 {
        re_inner(self.h(j, k), &self.tangents[l].mul_i())
    }

    pub fn gamma(&self, l: usize, j: usize, k: usize) -> f64 {
        self.christoffel[l * self.n * self.n + j * self.n + k]
    }
}

/// Induced metric `g_jk = Re <d_j L, d_k L>`; errors on degeneracy.
pub fn induced_metric(jet: &Jet2) -> Result<SquareMat, DiffGeoError> {
    let n = jet.dim_in();
    let g = SquareMat::from_fn(n, |j, k| re_inner(&jet.grad[j], &jet.grad[k]));
    let eigs = sym_eigenvalues(&g);
    if eigs[0] <= DEGENERACY_FLOOR {
        return Err(DiffGeoError::Degenerate { min_eig: eigs[0] });
    }
    Ok(g)
}

/// Isotropy defect `max_{j,k} |Im <d_j L, d_k L>|`: zero exactly when the
/// point is Lagrangian (Legendrian at the lift level) under the fixed
/// Kaehler convention.
pub fn lagrangian_residual(jet: &Jet2) -> f64 {
    let n = jet.dim_in();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for k in j..n {
            worst = worst.max(herm_inner_unchecked(&jet.grad[j], &jet.grad[k]).im.abs());
        }
    }
    worst
}

/// Full pointwise geometry: metric, Christoffels, second fundamental form
/// (tangential part removed; position and fiber directions projected out on
/// lifts), mean curvature and `JH` components.
pub fn second_fundamental_form(
    jet: &Jet2,
    model: &AmbientModel,
) -> Result<GeometryAtPoint, DiffGeoError> {
    let n = jet.dim_in();
    let g = induced_metric(jet)?;
    let eigs = sym_eigenvalues(&g);
    let g_inv = g
        .inverse()
        .ok_or(DiffGeoError::Degenerate { min_eig: eigs[0] })?;
    let det_g = g.det();

    let mut christoffel = vec![0.0; n * n * n];
    let mut h_packed = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for k in j..n {
            let hess = jet.hess(j, k);
            // tangential coefficients c^l = g^{lm} Re<hess, d_m>
            let mut coeffs = vec![0.0; n];
            for l in 0..n {
                for m in 0..n {
                    coeffs[l] += g_inv.get(l, m) * re_inner(hess, &jet.grad[m]);
                }
            }
            let mut normal = hess.clone();
            for l in 0..n {
                for (za, zb) in normal.entries.iter_mut().zip(&jet.grad[l].entries) {
                    *za -= coeffs[l] * zb;
                }
            }
            if model.is_lift() {
                normal = horizontal_project(&normal, &jet.value, model)
                    .expect("lift model accepts horizontal projection");
            }
            for (l, cl) in coeffs.iter().enumerate() {
                christoffel[l * n * n + j * n + k] = *cl;
                christoffel[l * n * n + k * n + j] = *cl;
            }
            h_packed.push(normal);
        }
    }

    let packed = |j: usize, k: usize| -> usize {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        a * n - a * (a + 1) / 2 + b
    };
    let mut mean = jet.value.zeros_like();
    for j in 0..n {
        for k in 0..n {
            let w = g_inv.get(j, k) / n as f64;
            for (za, zb) in mean.entries.iter_mut().zip(&h_packed[packed(j, k)].entries) {
                *za += w * zb;
            }
        }
    }

    let jh = mean.mul_i();
    let mut jh_tangent = vec![0.0; n];
    for k in 0..n {
        for l in 0..n {
            jh_tangent[k] += g_inv.get(k, l) * re_inner(&jh, &jet.grad[l]);
        }
    }

    Ok(GeometryAtPoint {
        n,
        position: jet.value.clone(),
        tangents: jet.grad.clone(),
        g,
        g_inv,
        det_g,
        min_eigenvalue: eigs[0],
        christoffel,
        h_packed,
        mean_curvature: mean,
        jh_tangent,
    })
}

/// Mean curvature vector `H = (1/n) g^{jk} h_{jk}` of a computed geometry.
pub fn mean_curvature(geom: &GeometryAtPoint) -> CVector {
    geom.mean_curvature.clone()
}

/// `n` minus the numerical rank of `X -> h(X, .)`. Singular values below
/// `rank_tol` times the largest count as zero; an absolute floor guards the
/// totally geodesic case, where the largest singular value is itself
/// finite-difference noise.
pub fn relative_nullity(geom: &GeometryAtPoint, rank_tol: f64) -> usize {
    let n = geom.n;
    let m = geom.position.dim();
    let cols = n * 2 * m;
    let mut flat = vec![0.0; n * cols];
    for j in 0..n {
        for k in 0..n {
            let h = geom.h(j, k);
            for (a, z) in h.entries.iter().enumerate() {
                flat[j * cols + k * 2 * m + 2 * a] = z.re;
                flat[j * cols + k * 2 * m + 2 * a + 1] = z.im;
            }
        }
    }
    let sv = singular_values(n, cols, &flat);
    let cutoff = (rank_tol * sv[0]).max(1e-7);
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    n - rank
}

fn geometry_at(
    handle: &BoundFamily,
    q: &[f64],
    jet_step: f64,
) -> Result<GeometryAtPoint, DiffGeoError> {
    let jet = handle.jet(&ChartPoint(q.to_vec()), jet_step)?;
    second_fundamental_form(&jet, &handle.ambient())
}

/// Max deviation of every coordinate sectional curvature from the ambient
/// constant, cross-checked against the extrinsic (Gauss) value.
///
/// Christoffel symbols are differentiated by central differences across a
/// stencil of width `step`; the intrinsic `<R(d_i, d_j) d_j, d_i>` is
/// compared both to `eps` and to
/// `Re<h_ii, h_jj> - Re<h_ij, h_ij> + eps (g_ii g_jj - g_ij^2)`.
pub fn sectional_curvature_residual(
    handle: &BoundFamily,
    p: &ChartPoint,
    step: f64,
) -> Result<f64, DiffGeoError> {
    let n = handle.n();
    let eps = handle.ambient().epsilon();
    let jet_step = crate::jets::DEFAULT_STEP;
    let center = geometry_at(handle, p.coords(), jet_step)?;

    // dGamma[a] = d/dx_a of the Christoffel block, one Richardson level to
    // tame third derivatives of the cot/coth-type symbols near the chart
    // boundary.
    let mut dgamma: Vec<Vec<f64>> = Vec::with_capacity(n);
    for a in 0..n {
        let with_width = |h: f64| -> Result<Vec<f64>, DiffGeoError> {
            let mut qp = p.coords().to_vec();
            qp[a] += h;
            let mut qm = p.coords().to_vec();
            qm[a] -= h;
            let gp = geometry_at(handle, &qp, jet_step)?;
            let gm = geometry_at(handle, &qm, jet_step)?;
            Ok(gp
                .christoffel
                .iter()
                .zip(&gm.christoffel)
                .map(|(x, y)| (x - y) / (2.0 * h))
                .collect())
        };
        let full = with_width(step)?;
        let half = with_width(0.5 * step)?;
        dgamma.push(
            half.iter()
                .zip(&full)
                .map(|(h2, h1)| (4.0 * h2 - h1) / 3.0)
                .collect(),
        );
    }

    let idx = |l: usize, j: usize, k: usize| l * n * n + j * n + k;
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            // R^l_{ijj}: coefficient of d_l in R(d_i, d_j) d_j
            let mut num = 0.0;
            for l in 0..n {
                let mut r = dgamma[i][idx(l, j, j)] - dgamma[j][idx(l, i, j)];
                for m in 0..n {
                    r += center.gamma(m, j, j) * center.gamma(l, i, m)
                        - center.gamma(m, i, j) * center.gamma(l, j, m);
                }
                num += r * center.g.get(l, i);
            }
            let denom =
                center.g.get(i, i) * center.g.get(j, j) - center.g.get(i, j) * center.g.get(i, j);
            let k_int = num / denom;
            let k_ext = (re_inner(center.h(i, i), center.h(j, j))
                - re_inner(center.h(i, j), center.h(i, j))
                + eps * denom)
                / denom;
            worst = worst.max((k_int - eps).abs()).max((k_int - k_ext).abs());
        }
    }
    Ok(worst)
}

/// Pointwise Hamiltonian-stationarity defect
/// `div JH = (1 / sqrt(det g)) d_k (sqrt(det g) (JH)^k)` by central
/// differences of width `step`.
pub fn div_jh(handle: &BoundFamily, p: &ChartPoint, step: f64) -> Result<f64, DiffGeoError> {
    let n = handle.n();
    let jet_step = crate::jets::DEFAULT_STEP;
    let center = geometry_at(handle, p.coords(), jet_step)?;
    let mut div = 0.0;
    for k in 0..n {
        let with_width = |h: f64| -> Result<f64, DiffGeoError> {
            let mut qp = p.coords().to_vec();
            qp[k] += h;
            let mut qm = p.coords().to_vec();
            qm[k] -= h;
            let gp = geometry_at(handle, &qp, jet_step)?;
            let gm = geometry_at(handle, &qm, jet_step)?;
            let fp = gp.det_g.sqrt() * gp.jh_tangent[k];
            let fm = gm.det_g.sqrt() * gm.jh_tangent[k];
            Ok((fp - fm) / (2.0 * h))
        };
        let full = with_width(step)?;
        let half = with_width(0.5 * step)?;
        div += (4.0 * half - full) / 3.0;
    }
    Ok(div / center.det_g.sqrt())
}

// ---------------------------------------------------------------------------
// structural residuals shared by the runner and the property tests
// ---------------------------------------------------------------------------

/// Normality of `h`: tangential components, plus position and fiber
/// components on lifts, of every `h(d_j, d_k)`.
pub fn h_normality_residual(geom: &GeometryAtPoint, model: &AmbientModel) -> f64 {
    let n = geom.n;
    let mut worst = 0.0_f64;
    let iz = geom.position.mul_i();
    for j in 0..n {
        for k in j..n {
            let h = geom.h(j, k);
            for t in &geom.tangents {
                worst = worst.max(re_inner(h, t).abs());
            }
            if model.is_lift() {
                worst = worst.max(re_inner(h, &geom.position).abs());
                worst = worst.max(re_inner(h, &iz).abs());
            }
        }
    }
    worst
}

/// Total-symmetry defect of the cubic form `C_{jkl}` over all permutations.
pub fn cubic_symmetry_residual(geom: &GeometryAtPoint) -> f64 {
    let n = geom.n;
    let mut worst = 0.0_f64;
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let base = geom.cubic(j, k, l);
                worst = worst
                    .max((base - geom.cubic(k, j, l)).abs())
                    .max((base - geom.cubic(j, l, k)).abs())
                    .max((base - geom.cubic(l, k, j)).abs());
            }
        }
    }
    worst
}

/// Deviation from the adapted pattern: `h(d_j, d_j) = i d_j` on the twisted
/// coordinates and `h = 0` on every other pair.
pub fn adapted_form_residual(geom: &GeometryAtPoint, twisted: &[usize]) -> f64 {
    let n = geom.n;
    let mut worst = 0.0_f64;
    for j in 0..n {
        for k in j..n {
            let h = geom.h(j, k);
            if j == k && twisted.contains(&j) {
                let target = geom.tangents[j].mul_i();
                worst = worst.max(h.sub(&target).coeff_norm());
            } else {
                worst = worst.max(h.coeff_norm());
            }
        }
    }
    worst
}

/// Symmetrized defect of the covariant derivative of `h` (the Codazzi
/// identity), by central differences across a stencil of width `step`.
pub fn codazzi_residual(
    handle: &BoundFamily,
    p: &ChartPoint,
    step: f64,
) -> Result<f64, DiffGeoError> {
    let n = handle.n();
    let model = handle.ambient();
    let jet_step = crate::jets::DEFAULT_STEP;
    let center = geometry_at(handle, p.coords(), jet_step)?;

    // D_a h_{kl}: ambient derivative of the h field projected back to the
    // normal space at p.
    let mut dh = vec![Vec::new(); n];
    for (a, slot) in dh.iter_mut().enumerate() {
        let mut qp = p.coords().to_vec();
        qp[a] += step;
        let mut qm = p.coords().to_vec();
        qm[a] -= step;
        let gp = geometry_at(handle, &qp, jet_step)?;
        let gm = geometry_at(handle, &qm, jet_step)?;
        let mut grid = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                let mut d = gp.h(k, l).sub(gm.h(k, l));
                for z in &mut d.entries {
                    *z /= 2.0 * step;
                }
                grid.push(project_normal(&d, &center, &model));
            }
        }
        *slot = grid;
    }

    let nabla = |a: usize, k: usize, l: usize| -> CVector {
        let mut out = dh[a][k * n + l].clone();
        for m in 0..n {
            let c1 = center.gamma(m, a, k);
            let c2 = center.gamma(m, a, l);
            for (z, (hm_l, hk_m)) in out
                .entries
                .iter_mut()
                .zip(center.h(m, l).entries.iter().zip(&center.h(k, m).entries))
            {
                *z -= c1 * hm_l + c2 * hk_m;
            }
        }
        out
    };

    let mut worst = 0.0_f64;
    for a in 0..n {
        for k in (a + 1)..n {
            for l in 0..n {
                let d1 = nabla(a, k, l);
                let d2 = nabla(k, a, l);
                worst = worst.max(d1.sub(&d2).coeff_norm());
            }
        }
    }
    Ok(worst)
}

fn project_normal(v: &CVector, geom: &GeometryAtPoint, model: &AmbientModel) -> CVector {
    let n = geom.n;
    let mut coeffs = vec![0.0; n];
    for l in 0..n {
        for m in 0..n {
            coeffs[l] += geom.g_inv.get(l, m) * re_inner(v, &geom.tangents[m]);
        }
    }
    let mut out = v.clone();
    for l in 0..n {
        for (za, zb) in out.entries.iter_mut().zip(&geom.tangents[l].entries) {
            *za -= coeffs[l] * zb;
        }
    }
    if model.is_lift() {
        out = horizontal_project(&out, &geom.position, model).expect("lift model");
    }
    out
}

/// Compatibility of the normal connection with `J`: the normal part of
/// `J hess_{jk}` must equal `J` applied to the tangential part of
/// `hess_{jk}`.
pub fn normal_connection_residual(jet: &Jet2, geom: &GeometryAtPoint, model: &AmbientModel) -> f64 {
    let n = geom.n;
    let mut worst = 0.0_f64;
    for j in 0..n {
        for k in j..n {
            let lhs = project_normal(&jet.hess(j, k).mul_i(), geom, model);
            let mut rhs = jet.value.zeros_like();
            for l in 0..n {
                let c = geom.gamma(l, j, k);
                for (z, t) in rhs.entries.iter_mut().zip(&geom.tangents[l].entries) {
                    *z += c * t;
                }
            }
            let rhs = rhs.mul_i();
            let lift_fix = if model.is_lift() {
                // subtract the fiber part J applied to the quadric term
                horizontal_project(&rhs, &geom.position, model).expect("lift model")
            } else {
                rhs
            };
            worst = worst.max(lhs.sub(&lift_fix).coeff_norm());
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// first variation
// ---------------------------------------------------------------------------

/// Compactly supported bump deformation for the variational oracle.
#[derive(Debug, Clone)]
pub struct BumpSpec {
    pub center: Vec<f64>,
    pub radius: f64,
    pub amplitude: f64,
}

impl BumpSpec {
    /// `f = amplitude * exp(1 - 1/(1 - s))` with `s = |q - c|^2 / r^2`,
    /// identically zero outside the support.
    pub fn value(&self, q: &[f64]) -> f64 {
        let s: f64 = q
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / (self.radius * self.radius);
        if s >= 1.0 {
            return 0.0;
        }
        self.amplitude * (1.0 - 1.0 / (1.0 - s)).exp()
    }

    pub fn gradient(&self, q: &[f64]) -> Vec<f64> {
        let r2 = self.radius * self.radius;
        let s: f64 = q
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / r2;
        if s >= 1.0 {
            return vec![0.0; q.len()];
        }
        let f = self.amplitude * (1.0 - 1.0 / (1.0 - s)).exp();
        let d = -f / ((1.0 - s) * (1.0 - s));
        q.iter()
            .zip(&self.center)
            .map(|(a, b)| d * 2.0 * (a - b) / r2)
            .collect()
    }
}

/// Quadrature points per axis for the first-variation integrals.
const VARIATION_GRID: usize = 41;

/// First variation of volume under the Hamiltonian deformation
/// `L_t = L + t J (grad f)` (gradient taken in the induced metric and
/// pushed to the ambient), versus the divergence identity
/// `- int f div(JH) dM`, both over a tensor trapezoid grid on the sampled
/// patch. The two agree for any bump; both vanish exactly when the
/// immersion is Hamiltonian-stationary.
pub fn first_variation(
    handle: &BoundFamily,
    bump: &BumpSpec,
    t_step: f64,
) -> Result<(f64, f64), DiffGeoError> {
    if handle.ambient().is_lift() {
        return Err(DiffGeoError::CurvedAmbient);
    }
    let n = handle.n();
    let margin = 0.06;
    let boxes: Vec<(f64, f64)> = handle
        .family
        .domain
        .intervals
        .iter()
        .map(|&(lo, hi)| (lo + margin, hi - margin))
        .collect();
    for (j, &(lo, hi)) in boxes.iter().enumerate() {
        if bump.center[j] - bump.radius < lo || bump.center[j] + bump.radius > hi {
            return Err(DiffGeoError::Support);
        }
    }

    let jet_step = crate::jets::DEFAULT_STEP;
    let deformed_value = |q: &[f64], t: f64| -> Result<CVector, DiffGeoError> {
        let base = handle.evaluate(q);
        if t == 0.0 {
            return Ok(base);
        }
        let grad_f = bump.gradient(q);
        if grad_f.iter().all(|&v| v == 0.0) {
            return Ok(base);
        }
        let jet = handle.jet(&ChartPoint(q.to_vec()), jet_step)?;
        let g = induced_metric(&jet)?;
        let g_inv = g
            .inverse()
            .ok_or(DiffGeoError::Degenerate { min_eig: 0.0 })?;
        let mut out = base;
        for j in 0..n {
            let mut coeff = 0.0;
            for k in 0..n {
                coeff += g_inv.get(j, k) * grad_f[k];
            }
            let push = jet.grad[j].mul_i();
            for (z, p) in out.entries.iter_mut().zip(&push.entries) {
                *z += Complex64::new(t * coeff, 0.0) * p;
            }
        }
        Ok(out)
    };

    // Quadrature over the bump's bounding box only: the integrands vanish
    // identically outside the support, and the compactly supported smooth
    // integrand makes the trapezoid rule converge superalgebraically.
    let boxes: Vec<(f64, f64)> = boxes
        .iter()
        .enumerate()
        .map(|(j, &(lo, hi))| {
            let pad = 0.05 * bump.radius;
            (
                (bump.center[j] - bump.radius - pad).max(lo),
                (bump.center[j] + bump.radius + pad).min(hi),
            )
        })
        .collect();
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut index = vec![0usize; n];
    let steps: Vec<f64> = boxes
        .iter()
        .map(|&(lo, hi)| (hi - lo) / (VARIATION_GRID - 1) as f64)
        .collect();
    loop {
        let q: Vec<f64> = (0..n)
            .map(|j| boxes[j].0 + steps[j] * index[j] as f64)
            .collect();
        let mut w = 1.0;
        for j in 0..n {
            let edge = index[j] == 0 || index[j] == VARIATION_GRID - 1;
            w *= steps[j] * if edge { 0.5 } else { 1.0 };
        }
        points.push(q);
        weights.push(w);
        let mut j = 0;
        loop {
            index[j] += 1;
            if index[j] < VARIATION_GRID {
                break;
            }
            index[j] = 0;
            j += 1;
            if j == n {
                break;
            }
        }
        if j == n {
            break;
        }
    }

    let sqrt_det_at = |q: &[f64], t: f64| -> Result<f64, DiffGeoError> {
        // gradient of the deformed map by central differences; the base
        // map contributes its (possibly analytic) jet, the deformation is
        // differentiated numerically.
        let h = 1e-4;
        let nq = q.len();
        let mut grads: Vec<CVector> = Vec::with_capacity(nq);
        for a in 0..nq {
            let mut qp = q.to_vec();
            qp[a] += h;
            let mut qm = q.to_vec();
            qm[a] -= h;
            let vp = deformed_value(&qp, t)?;
            let vm = deformed_value(&qm, t)?;
            let mut d = vp.sub(&vm);
            for z in &mut d.entries {
                *z /= 2.0 * h;
            }
            grads.push(d);
        }
        let g = SquareMat::from_fn(nq, |j, k| re_inner(&grads[j], &grads[k]));
        Ok(g.det().max(0.0).sqrt())
    };

    let mut vol_plus = 0.0;
    let mut vol_minus = 0.0;
    let mut rhs = 0.0;
    for (q, w) in points.iter().zip(&weights) {
        vol_plus += w * sqrt_det_at(q, t_step)?;
        vol_minus += w * sqrt_det_at(q, -t_step)?;
        let f = bump.value(q);
        if f != 0.0 {
            let geom = geometry_at(handle, q, jet_step)?;
            let div = div_jh(handle, &ChartPoint(q.clone()), OUTER_STEP)?;
            // div(J trace h) = n div(JH) under the trace-over-n mean
            // curvature convention used everywhere else in the crate.
            rhs += w * f * (n as f64) * div * geom.det_g.sqrt();
        }
    }
    let dvol = (vol_plus - vol_minus) / (2.0 * t_step);
    Ok((dvol, -rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{registry, GridSpec};

    fn handle(id: &str) -> BoundFamily {
        let reg = registry();
        let fam = reg.get(id).unwrap();
        reg.instantiate(id, &fam.smoke).unwrap()
    }

    #[test]
    fn torus_metric_and_isotropy() {
        let h = handle("c2-type1-circle");
        let jet = h.jet_default(&ChartPoint(vec![0.4, -0.7])).unwrap();
        let g = induced_metric(&jet).unwrap();
        assert!((g.get(0, 0) - 1.0).abs() < 1e-12); // a = 1 smoke
        assert!((g.get(1, 1) - 1.0).abs() < 1e-12);
        assert!(g.get(0, 1).abs() < 1e-14);
        assert_eq!(lagrangian_residual(&jet), 0.0);
    }

    #[test]
    fn non_lagrangian_control_has_unit_residual() {
        // (x, y) -> (x + i y, 0): Im <d_x, d_y> = -1.
        let f = |q: &[f64]| {
            CVector::euclidean(vec![Complex64::new(q[0], q[1]), Complex64::new(0.0, 0.0)])
        };
        let jet = crate::jets::fd_jet(&f, &[0.3, 0.4], 1e-3);
        assert!((lagrangian_residual(&jet) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sech_metric_at_the_wave_front() {
        // at m^2 x + y = 0 the advertised metric is diag(m^2, 1)
        let h = handle("cp2-type2-sech");
        let m = 2.0;
        let p = ChartPoint(vec![0.2, -m * m * 0.2]);
        let jet = h.jet_default(&p).unwrap();
        let g = induced_metric(&jet).unwrap();
        assert!((g.get(0, 0) - m * m).abs() < 1e-7, "g_xx = {}", g.get(0, 0));
        assert!((g.get(1, 1) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn circular_family_has_exact_adapted_pattern() {
        let h = handle("flat-wp-a");
        let jet = h.jet_default(&ChartPoint(vec![0.8, -0.5])).unwrap();
        let geom = second_fundamental_form(&jet, &h.ambient()).unwrap();
        assert!(adapted_form_residual(&geom, &[0]) < 1e-10);
        // H = (1/n) g^{11} i d_1 has length 1/(n a_1) with n = 2
        let a1 = h.params.req("a1").unwrap();
        let norm = re_inner(&geom.mean_curvature, &geom.mean_curvature).sqrt();
        assert!((norm - 1.0 / (2.0 * a1)).abs() < 1e-10, "|H| = {norm}");
        // trace identity n H = g^{jk} h_jk is exact by construction
        let mut trace = jet.value.zeros_like();
        for j in 0..2 {
            for k in 0..2 {
                let w = geom.g_inv.get(j, k);
                for (z, hh) in trace.entries.iter_mut().zip(&geom.h(j, k).entries) {
                    *z += w * hh;
                }
            }
        }
        let scaled = geom.mean_curvature.scale(Complex64::new(2.0, 0.0));
        assert!(trace.sub(&scaled).coeff_norm() < 1e-15);
    }

    #[test]
    fn totally_geodesic_family_has_vanishing_h() {
        let h = handle("cp3-null-1");
        let jet = h.jet_default(&ChartPoint(vec![0.5, 0.7, 0.9])).unwrap();
        let geom = second_fundamental_form(&jet, &h.ambient()).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..3 {
            for k in j..3 {
                worst = worst.max(geom.h(j, k).coeff_norm());
            }
        }
        assert!(worst < 1e-10, "h norm {worst}");
        assert_eq!(relative_nullity(&geom, RANK_TOL), 3);
    }

    #[test]
    fn nullity_counts_flat_directions() {
        let h = handle("flat-wp-a");
        let jet = h.jet_default(&ChartPoint(vec![0.3, 1.1])).unwrap();
        let geom = second_fundamental_form(&jet, &h.ambient()).unwrap();
        assert_eq!(relative_nullity(&geom, RANK_TOL), 1); // n - ell = 1
    }

    #[test]
    fn curvature_matches_the_space_form() {
        for (id, tol) in [("flat-wp-a", 1e-6), ("cp-wp-a", 1e-3), ("ch-wp-01", 1e-3)] {
            let h = handle(id);
            let grid = GridSpec::random(3, 7);
            for p in h.sample_domain(&grid).unwrap() {
                let r = sectional_curvature_residual(&h, &p, OUTER_STEP).unwrap();
                assert!(r < tol, "{id}: curvature residual {r}");
            }
        }
    }

    #[test]
    fn div_jh_vanishes_on_stationary_families_and_fires_on_the_control() {
        for id in ["flat-wp-a", "c2-type1-circle", "cp2-type2-sech"] {
            let h = handle(id);
            let grid = GridSpec::random(4, 11);
            for p in h.sample_domain(&grid).unwrap() {
                let d = div_jh(&h, &p, OUTER_STEP).unwrap().abs();
                assert!(d < 1e-3, "{id}: |div JH| = {d}");
            }
        }
        let control = handle("control-nonstationary-graph");
        let d = div_jh(&control, &ChartPoint(vec![0.5, 0.0]), OUTER_STEP)
            .unwrap()
            .abs();
        assert!(d > 1e-2, "control |div JH| = {d} should exceed 1e-2");
    }

    #[test]
    fn first_variation_oracle() {
        let h = handle("flat-wp-a");
        let zero = BumpSpec {
            center: vec![0.0, 0.0],
            radius: 0.8,
            amplitude: 0.0,
        };
        let (dv, rhs) = first_variation(&h, &zero, 1e-3).unwrap();
        assert_eq!(dv, 0.0);
        assert_eq!(rhs, 0.0);

        let bump = BumpSpec {
            center: vec![0.1, -0.2],
            radius: 0.9,
            amplitude: 0.5,
        };
        let (dv, _rhs) = first_variation(&h, &bump, 1e-3).unwrap();
        // patch volume: a1 = 1.5 circle times flat direction over [-1.94, 1.94]^2
        let vol = 1.5 * (2.0 * 1.94_f64).powi(2);
        assert!(dv.abs() < 1e-4 * vol, "dVol/dt = {dv}");

        let control = handle("control-nonstationary-graph");
        let (dv, rhs) = first_variation(&control, &bump, 1e-3).unwrap();
        assert!(dv.abs() > 1e-6 && rhs.abs() > 1e-6, "dv {dv}, rhs {rhs}");
        let rel = (dv - rhs).abs() / rhs.abs();
        assert!(rel < 0.05, "first-variation identity off by {rel}");
    }

    #[test]
    fn support_violation_is_rejected() {
        let h = handle("flat-wp-a");
        let bump = BumpSpec {
            center: vec![1.8, 0.0],
            radius: 0.9,
            amplitude: 0.5,
        };
        assert!(matches!(
            first_variation(&h, &bump, 1e-3),
            Err(DiffGeoError::Support)
        ));
    }

    #[test]
    fn fiber_invariance_of_residuals() {
        // all residuals computed from z and from e^{i phi} z agree
        let reg = registry();
        for id in ["cp2-type2-sech", "ch2-type2-e"] {
            let fam = reg.get(id).unwrap();
            let h = reg.instantiate(id, &fam.smoke).unwrap();
            let p = h.sample_domain(&GridSpec::random(1, 5)).unwrap()[0].clone();
            let jet = h.jet_default(&p).unwrap();
            let phi = 0.8351;
            let rot = Complex64::new(0.0, phi).exp();
            let n = jet.dim_in();
            let mut hess_rot = Vec::new();
            for j in 0..n {
                for k in j..n {
                    hess_rot.push(jet.hess(j, k).scale(rot));
                }
            }
            let rotated = Jet2::new(
                jet.value.scale(rot),
                jet.grad.iter().map(|g| g.scale(rot)).collect(),
                hess_rot,
            );
            let model = h.ambient();
            let g1 = second_fundamental_form(&jet, &model).unwrap();
            let g2 = second_fundamental_form(&rotated, &model).unwrap();
            assert!((lagrangian_residual(&jet) - lagrangian_residual(&rotated)).abs() < 1e-10);
            assert!(
                (h_normality_residual(&g1, &model) - h_normality_residual(&g2, &model)).abs()
                    < 1e-10
            );
            assert!((cubic_symmetry_residual(&g1) - cubic_symmetry_residual(&g2)).abs() < 1e-10);
            let q1 = crate::ambient::quadric_residual(&jet.value, &model).unwrap();
            let q2 = crate::ambient::quadric_residual(&rotated.value, &model).unwrap();
            assert!((q1 - q2).abs() < 1e-12);
        }
    }

    #[test]
    fn structural_invariants_on_a_lift() {
        let h = handle("ch2-type2-a");
        let p = h.sample_domain(&GridSpec::random(1, 3)).unwrap()[0].clone();
        let jet = h.jet_default(&p).unwrap();
        let model = h.ambient();
        let geom = second_fundamental_form(&jet, &model).unwrap();
        assert!(h_normality_residual(&geom, &model) < 1e-8);
        assert!(cubic_symmetry_residual(&geom) < 1e-6);
        assert!(normal_connection_residual(&jet, &geom, &model) < 1e-4);
        let cod = codazzi_residual(&h, &p, OUTER_STEP).unwrap();
        assert!(cod < 1e-2, "codazzi residual {cod}");
    }

    #[test]
    fn degenerate_point_is_reported() {
        // flat-wp-b degenerates at u = 0; probe the jet off-registry
        let reg = registry();
        let fam = reg.get("flat-wp-b").unwrap();
        let h = reg.instantiate("flat-wp-b", &fam.smoke).unwrap();
        let jet = h.fd_jet_at(&[0.5, 1e-6], 1e-7);
        assert!(matches!(
            induced_metric(&jet),
            Err(DiffGeoError::Degenerate { .. })
        ));
    }
}
