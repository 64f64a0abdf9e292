//! Complex Gamma, Bessel J of complex order, and the oscillatory quadrature
//! behind the Bessel surface evaluator.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecfunError {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(f64),
    #[error("z = 0 is outside the principal branch for this order")]
    BranchPoint,
    #[error("series did not converge within {max_terms} terms")]
    NotConverged { max_terms: usize },
    #[error("quadrature failed to reach tolerance {tol} within {budget} subintervals")]
    QuadratureBudget { tol: f64, budget: usize },
}

/// Lanczos coefficients (g = 7, 9 terms), shared with the GNU Scientific
/// Library tabulation.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Complex Gamma function: Lanczos approximation with the reflection
/// formula for `Re z < 0.5`. Relative error below `1e-12` on the desk
/// range (`|Re z|, |Im z| <= ~60`).
pub fn gamma_complex(z: Complex64) -> Result<Complex64, SpecfunError> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(SpecfunError::GammaPole(z.re));
    }
    Ok(gamma_lanczos(z))
}

fn gamma_lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (PI * z).sin();
        return PI / (s * gamma_lanczos(Complex64::new(1.0, 0.0) - z));
    }
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_P[0], 0.0);
    for (k, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(x + 0.5) * (-t).exp() * acc
}

/// Truncation policy for the Bessel series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesPolicy {
    /// Stop once a term falls below this fraction of the partial sum.
    pub rel_cutoff: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_cutoff: 1e-16,
            max_terms: 200,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_cutoff: f64, max_terms: usize) -> Self {
        assert!(rel_cutoff > 0.0, "cutoff must be positive");
        assert!(max_terms >= 1, "at least one term is required");
        SeriesPolicy {
            rel_cutoff,
            max_terms,
        }
    }
}

/// Bessel series evaluation: value plus the magnitude of the first dropped
/// term as a truncation estimate.
#[derive(Debug, Clone, Copy)]
pub struct BesselEval {
    pub value: Complex64,
    pub err_estimate: f64,
    pub terms_used: usize,
}

/// Bessel function of the first kind of complex order by its power series
///
/// ```text
/// J_nu(z) = (z/2)^nu sum_j (-1)^j (z/2)^{2j} / (j! Gamma(nu + j + 1))
/// ```
///
/// with the principal branch of `(z/2)^nu` on the cut plane. Terms are
/// produced by the two-term recurrence, so no intermediate Gamma overflow
/// can occur.
pub fn bessel_j(
    nu: Complex64,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<BesselEval, SpecfunError> {
    if z.norm() == 0.0 {
        if nu.norm() == 0.0 {
            return Ok(BesselEval {
                value: Complex64::new(1.0, 0.0),
                err_estimate: 0.0,
                terms_used: 1,
            });
        }
        if nu.re > 0.0 {
            return Ok(BesselEval {
                value: Complex64::new(0.0, 0.0),
                err_estimate: 0.0,
                terms_used: 1,
            });
        }
        return Err(SpecfunError::BranchPoint);
    }
    let half = z / 2.0;
    let q = -half * half;
    let mut term = 1.0 / gamma_complex(nu + 1.0)?;
    let mut sum = term;
    for j in 0..policy.max_terms {
        let next = term * q / ((j as f64 + 1.0) * (nu + j as f64 + 1.0));
        if next.norm() < policy.rel_cutoff * sum.norm() {
            let prefactor = half.powc(nu);
            return Ok(BesselEval {
                value: prefactor * sum,
                err_estimate: prefactor.norm() * next.norm(),
                terms_used: j + 1,
            });
        }
        term = next;
        sum += term;
    }
    Err(SpecfunError::NotConverged {
        max_terms: policy.max_terms,
    })
}

/// Budget for adaptive subdivision: the integrands are smooth and mildly
/// oscillatory on desk-scale ranges.
const QUAD_BUDGET: usize = 1 << 14;

/// `int_0^r t e^{i t^2} J_nu(t^2) dt` by adaptive composite Simpson with a
/// deterministic bisection order, to absolute tolerance `tol`.
pub fn fresnel_bessel_integral(nu: Complex64, r: f64, tol: f64) -> Result<Complex64, SpecfunError> {
    assert!(r >= 0.0, "upper limit must be nonnegative");
    assert!(tol > 0.0, "tolerance must be positive");
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let policy = SeriesPolicy::default();
    let g = |t: f64| -> Result<Complex64, SpecfunError> {
        if t == 0.0 {
            // |t^{1+2nu}| stays bounded for the orders used here; the single
            // endpoint value carries no quadrature weight in the limit.
            return Ok(Complex64::new(0.0, 0.0));
        }
        let t2 = t * t;
        let j = bessel_j(nu, Complex64::new(t2, 0.0), &policy)?;
        Ok(t * Complex64::new(0.0, t2).exp() * j.value)
    };
    adaptive_simpson(&g, 0.0, r, tol)
}

/// Integrate an arbitrary complex integrand with the same adaptive rule.
/// Exposed for the subinterval-additivity checks.
pub fn adaptive_simpson(
    g: &dyn Fn(f64) -> Result<Complex64, SpecfunError>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, SpecfunError> {
    let fa = g(a)?;
    let fm = g(0.5 * (a + b))?;
    let fb = g(b)?;
    let whole = simpson(a, b, fa, fm, fb);
    let mut used = 1usize;
    simpson_recurse(g, a, b, fa, fm, fb, whole, tol, 0, &mut used)
}

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse(
    g: &dyn Fn(f64) -> Result<Complex64, SpecfunError>,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: usize,
    used: &mut usize,
) -> Result<Complex64, SpecfunError> {
    let m = 0.5 * (a + b);
    let lm = g(0.5 * (a + m))?;
    let rm = g(0.5 * (m + b))?;
    let left = simpson(a, m, fa, lm, fm);
    let right = simpson(m, b, fm, rm, fb);
    let err = (left + right - whole).norm();
    if err < 15.0 * tol || depth >= 40 {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    *used += 2;
    if *used > QUAD_BUDGET {
        return Err(SpecfunError::QuadratureBudget {
            tol,
            budget: QUAD_BUDGET,
        });
    }
    let l = simpson_recurse(g, a, m, fa, lm, fm, left, 0.5 * tol, depth + 1, used)?;
    let r = simpson_recurse(g, m, b, fm, rm, fb, right, 0.5 * tol, depth + 1, used)?;
    Ok(l + r)
}
