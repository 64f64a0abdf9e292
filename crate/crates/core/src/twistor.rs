//! Twisted-product twistor functions and the over-determined PDE system.
//!
//! A surface-level twisted product carries two positive twistor functions
//! `f(x, y)` and `k(x, y)`. The adapted Lagrangian immersion built from the
//! pair is Hamiltonian-stationary exactly when
//!
//! ```text
//! (E1)  (k/f)_x + (f/k)_y = 0
//! ```
//!
//! the twistor form is twisted closed exactly when
//!
//! ```text
//! (E2)  f_y / k = k_x / f     (equivalently  f f_y = k k_x)
//! ```
//!
//! and the underlying surface has constant curvature `eps` exactly when
//!
//! ```text
//! (E3)  (f_y/k)_y + (k_x/f)_x = -eps f k .
//! ```
//!
//! All registered solutions carry hand-coded analytic partials; an FD
//! cross-check guards the transcriptions.

use crate::catalog::params::ParamSet;
use crate::jets::Jet2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TwistorError {
    #[error("unknown twistor solution `{0}`")]
    UnknownSolution(String),
    #[error("parameter violates `{0}`")]
    Parameter(String),
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("transform requires a traveling-wave pair (f = +-k = fhat(x+y))")]
    NotTravelingWave,
}

impl From<crate::catalog::params::ParamError> for TwistorError {
    fn from(e: crate::catalog::params::ParamError) -> Self {
        TwistorError::MissingParameter(e.to_string())
    }
}

/// Value and partials of a twistor function at a point, computed together
/// so shared subexpressions are evaluated once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deriv2 {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
}

/// A twistor function with analytic first and second partials.
#[derive(Clone)]
pub struct TwistorFn {
    eval: Arc<dyn Fn(f64, f64) -> Deriv2 + Send + Sync>,
}

impl TwistorFn {
    pub fn new(eval: impl Fn(f64, f64) -> Deriv2 + Send + Sync + 'static) -> Self {
        TwistorFn {
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, x: f64, y: f64) -> Deriv2 {
        (self.eval)(x, y)
    }

    /// Central-difference partials with one Richardson level, used only to
    /// cross-check the hand-coded analytic ones.
    pub fn fd_at(&self, x: f64, y: f64, h: f64) -> Deriv2 {
        let raw = |h: f64| -> Deriv2 {
            let v = |x: f64, y: f64| (self.eval)(x, y).v;
            Deriv2 {
                v: v(x, y),
                dx: (v(x + h, y) - v(x - h, y)) / (2.0 * h),
                dy: (v(x, y + h) - v(x, y - h)) / (2.0 * h),
                dxx: (v(x + h, y) - 2.0 * v(x, y) + v(x - h, y)) / (h * h),
                dyy: (v(x, y + h) - 2.0 * v(x, y) + v(x, y - h)) / (h * h),
                dxy: (v(x + h, y + h) - v(x + h, y - h) - v(x - h, y + h) + v(x - h, y - h))
                    / (4.0 * h * h),
            }
        };
        let full = raw(h);
        let half = raw(0.5 * h);
        let rich = |a: f64, b: f64| (4.0 * a - b) / 3.0;
        Deriv2 {
            v: full.v,
            dx: rich(half.dx, full.dx),
            dy: rich(half.dy, full.dy),
            dxx: rich(half.dxx, full.dxx),
            dxy: rich(half.dxy, full.dxy),
            dyy: rich(half.dyy, full.dyy),
        }
    }
}

/// One-dimensional profile `fhat(u)` with two derivatives; the traveling
/// ansatz plugs `u = m^2 x + y` into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `c sech(c u / sqrt2)` — curvature +1 base.
    Sech { c: f64 },
    /// `a e^{b u}` — flat base.
    Exp { a: f64, b: f64 },
    /// `c sec(c u / sqrt2)` — curvature -1 base.
    Sec { c: f64 },
    /// `c csch(c u / sqrt2)` — curvature -1 base.
    Csch { c: f64 },
    /// `sqrt2 / u` — curvature -1 base (degenerate constant of integration).
    Recip,
}

impl Profile {
    /// `(fhat, fhat', fhat'')` at `u`.
    pub fn eval(&self, u: f64) -> (f64, f64, f64) {
        let s2 = std::f64::consts::SQRT_2;
        match *self {
            Profile::Sech { c } => {
                let w = c * u / s2;
                let sech = 1.0 / w.cosh();
                let tanh = w.tanh();
                (
                    c * sech,
                    -(c * c / s2) * sech * tanh,
                    -(c * c * c / 2.0) * sech * (sech * sech - tanh * tanh),
                )
            }
            Profile::Exp { a, b } => {
                let e = a * (b * u).exp();
                (e, b * e, b * b * e)
            }
            Profile::Sec { c } => {
                let w = c * u / s2;
                let sec = 1.0 / w.cos();
                let tan = w.tan();
                (
                    c * sec,
                    (c * c / s2) * sec * tan,
                    (c * c * c / 2.0) * sec * (tan * tan + sec * sec),
                )
            }
            Profile::Csch { c } => {
                let w = c * u / s2;
                let csch = 1.0 / w.sinh();
                let coth = 1.0 / w.tanh();
                (
                    c * csch,
                    -(c * c / s2) * csch * coth,
                    (c * c * c / 2.0) * csch * (coth * coth + csch * csch),
                )
            }
            Profile::Recip => {
                let f = s2 / u;
                (f, -s2 / (u * u), 2.0 * s2 / (u * u * u))
            }
        }
    }

    /// Curvature for which the profile solves the base equation
    /// `2 (ln fhat)'' = -eps fhat^2`.
    pub fn epsilon(&self) -> f64 {
        match self {
            Profile::Sech { .. } => 1.0,
            Profile::Exp { .. } => 0.0,
            _ => -1.0,
        }
    }
}

/// Traveling-wave structure of a solution: `f = A fhat(m^2 x + y)` and
/// `k = sign * B fhat(m^2 x + y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingWave {
    pub profile: Profile,
    pub m: f64,
    pub sign: f64,
}

/// The three equations of the over-determined system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SystemEq {
    HStationary,
    TwistedClosed,
    Curvature,
}

/// Rectangular sampling window, chosen per solution strictly inside the
/// singularity-free region for its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Rect {
    pub fn sample(&self, count: usize, seed: u64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                (
                    rng.gen_range(self.x.0..self.x.1),
                    rng.gen_range(self.y.0..self.y.1),
                )
            })
            .collect()
    }
}

/// A closed-form solution pair with analytic partials.
#[derive(Clone)]
pub struct TwistorSolution {
    pub id: String,
    pub tag: String,
    pub ell: usize,
    pub epsilon: f64,
    pub params: ParamSet,
    pub f: TwistorFn,
    pub k: TwistorFn,
    pub domain: Rect,
    pub declared: Vec<SystemEq>,
    pub traveling: Option<TravelingWave>,
}

impl TwistorSolution {
    fn pair(&self, x: f64, y: f64) -> (Deriv2, Deriv2) {
        (self.f.at(x, y), self.k.at(x, y))
    }
}

fn travel_fn(profile: Profile, amplitude: f64, m: f64) -> TwistorFn {
    let m2 = m * m;
    TwistorFn::new(move |x, y| {
        let (v, d1, d2) = profile.eval(m2 * x + y);
        Deriv2 {
            v: amplitude * v,
            dx: amplitude * m2 * d1,
            dy: amplitude * d1,
            dxx: amplitude * m2 * m2 * d2,
            dxy: amplitude * m2 * d2,
            dyy: amplitude * d2,
        }
    })
}

fn constant_fn(v: f64) -> TwistorFn {
    TwistorFn::new(move |_x, _y| Deriv2 {
        v,
        dx: 0.0,
        dy: 0.0,
        dxx: 0.0,
        dxy: 0.0,
        dyy: 0.0,
    })
}

/// The separable pair built on `theta = arctan sqrt(-y/x)` on the quadrant
/// `x > 0, y < 0`:
///
/// ```text
/// f = a e^{c theta} / sqrt(x),   k = sign * a e^{c theta} / sqrt(-y).
/// ```
fn arctan_fn(a: f64, c: f64, x_slot: bool, sign: f64) -> TwistorFn {
    TwistorFn::new(move |x, y| {
        let w = (-y / x).sqrt();
        let theta = w.atan();
        let d = x - y; // = x (1 + w^2) > 0 on the quadrant
        let theta_x = -w / (2.0 * d);
        let theta_y = -1.0 / (2.0 * w * d);
        let w_x = -w / (2.0 * x);
        let w_y = -1.0 / (2.0 * w * x);
        let theta_xx = -w_x / (2.0 * d) + w / (2.0 * d * d);
        let theta_xy = -w_y / (2.0 * d) - w / (2.0 * d * d);
        let theta_yy = w_y / (2.0 * w * w * d) - 1.0 / (2.0 * w * d * d);

        // radial factor and its log-derivatives
        let (r, lr_x, lr_y, lr_xx, lr_yy) = if x_slot {
            (1.0 / x.sqrt(), -0.5 / x, 0.0, 0.5 / (x * x), 0.0)
        } else {
            (1.0 / (-y).sqrt(), 0.0, -0.5 / y, 0.0, 0.5 / (y * y))
        };

        let v = sign * a * r * (c * theta).exp();
        // ln f = const + ln r + c theta
        let lx = lr_x + c * theta_x;
        let ly = lr_y + c * theta_y;
        let lxx = lr_xx + c * theta_xx;
        let lxy = c * theta_xy;
        let lyy = lr_yy + c * theta_yy;
        Deriv2 {
            v,
            dx: v * lx,
            dy: v * ly,
            dxx: v * (lxx + lx * lx),
            dxy: v * (lxy + lx * ly),
            dyy: v * (lyy + ly * ly),
        }
    })
}

const ALL_EQS: [SystemEq; 3] = [
    SystemEq::HStationary,
    SystemEq::TwistedClosed,
    SystemEq::Curvature,
];

/// One constructible solution family in the registry.
pub struct SolutionFamily {
    pub id: &'static str,
    pub tag: &'static str,
    pub epsilon: f64,
    pub default_params: ParamSet,
    build: fn(&ParamSet) -> Result<TwistorSolution, TwistorError>,
}

impl SolutionFamily {
    pub fn build(&self, params: &ParamSet) -> Result<TwistorSolution, TwistorError> {
        (self.build)(params)
    }

    pub fn build_default(&self) -> TwistorSolution {
        (self.build)(&self.default_params).expect("default parameters are admissible")
    }
}

fn require(cond: bool, what: &str) -> Result<(), TwistorError> {
    if cond {
        Ok(())
    } else {
        Err(TwistorError::Parameter(what.to_string()))
    }
}

fn base_pair(
    id: &str,
    tag: &str,
    profile: Profile,
    params: &ParamSet,
    domain: Rect,
) -> TwistorSolution {
    let f = travel_fn(profile, 1.0, 1.0);
    TwistorSolution {
        id: id.to_string(),
        tag: tag.to_string(),
        ell: 2,
        epsilon: profile.epsilon(),
        params: params.clone(),
        f: f.clone(),
        k: f,
        domain,
        declared: ALL_EQS.to_vec(),
        traveling: Some(TravelingWave {
            profile,
            m: 1.0,
            sign: 1.0,
        }),
    }
}

fn scaled_pair(
    id: &str,
    tag: &str,
    profile: Profile,
    m: f64,
    params: &ParamSet,
    domain: Rect,
) -> TwistorSolution {
    let amp = ((1.0 + m * m) / 2.0).sqrt();
    TwistorSolution {
        id: id.to_string(),
        tag: tag.to_string(),
        ell: 2,
        epsilon: profile.epsilon(),
        params: params.clone(),
        f: travel_fn(profile, m * amp, m),
        k: travel_fn(profile, amp, m),
        domain,
        declared: ALL_EQS.to_vec(),
        traveling: Some(TravelingWave {
            profile,
            m,
            sign: 1.0,
        }),
    }
}

/// Registry of every closed-form solution family, in deterministic order.
pub fn solution_registry() -> Vec<SolutionFamily> {
    vec![
        SolutionFamily {
            id: "pair-arctan",
            tag: "separable arctan pair on the quadrant x > 0 > y",
            epsilon: 0.0,
            default_params: ParamSet::from_pairs(&[("a", 1.0), ("c", 1.0)]),
            build: |p| {
                let a = p.req("a")?;
                let c = p.req("c")?;
                require(a != 0.0, "a != 0")?;
                require(c != 0.0, "c != 0")?;
                Ok(TwistorSolution {
                    id: "pair-arctan".into(),
                    tag: "separable arctan pair on the quadrant x > 0 > y".into(),
                    ell: 2,
                    epsilon: 0.0,
                    params: p.clone(),
                    f: arctan_fn(a, c, true, 1.0),
                    k: arctan_fn(a, c, false, 1.0),
                    domain: Rect {
                        x: (0.1, 2.0),
                        y: (-2.0, -0.1),
                    },
                    declared: ALL_EQS.to_vec(),
                    traveling: None,
                })
            },
        },
        SolutionFamily {
            id: "pair-const",
            tag: "constant warped pair",
            epsilon: 0.0,
            default_params: ParamSet::from_pairs(&[("f0", 2.0), ("k0", 1.0)]),
            build: |p| {
                let f0 = p.req("f0")?;
                let k0 = p.req("k0")?;
                require(f0 > 0.0 && k0 > 0.0, "f0, k0 > 0")?;
                Ok(TwistorSolution {
                    id: "pair-const".into(),
                    tag: "constant warped pair".into(),
                    ell: 2,
                    epsilon: 0.0,
                    params: p.clone(),
                    f: constant_fn(f0),
                    k: constant_fn(k0),
                    domain: Rect {
                        x: (-1.0, 1.0),
                        y: (-1.0, 1.0),
                    },
                    declared: ALL_EQS.to_vec(),
                    traveling: None,
                })
            },
        },
        SolutionFamily {
            id: "pair-csch-base",
            tag: "traveling csch pair, unit speed",
            epsilon: -1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0)]),
            build: |p| {
                let c = p.req("c")?;
                require(c > 0.0, "c > 0")?;
                Ok(base_pair(
                    "pair-csch-base",
                    "traveling csch pair, unit speed",
                    Profile::Csch { c },
                    p,
                    Rect {
                        x: (0.2, 1.5),
                        y: (0.2, 1.5),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-csch-scaled",
            tag: "scaled csch pair",
            epsilon: -1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0), ("m", 2.0)]),
            build: |p| {
                let c = p.req("c")?;
                let m = p.req("m")?;
                require(c > 0.0, "c > 0")?;
                require(m > 0.0 && m != 1.0, "0 < m != 1")?;
                let cs = (2.0 / (1.0 + m * m)).sqrt() * c;
                Ok(scaled_pair(
                    "pair-csch-scaled",
                    "scaled csch pair",
                    Profile::Csch { c: cs },
                    m,
                    p,
                    Rect {
                        x: (0.3 / (m * m), 2.0 / (m * m)),
                        y: (0.3, 2.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-exp-base",
            tag: "traveling exponential pair, unit speed",
            epsilon: 0.0,
            default_params: ParamSet::from_pairs(&[("a", 1.0), ("b", 0.5)]),
            build: |p| {
                let a = p.req("a")?;
                let b = p.req("b")?;
                require(a != 0.0, "a != 0")?;
                Ok(base_pair(
                    "pair-exp-base",
                    "traveling exponential pair, unit speed",
                    Profile::Exp { a, b },
                    p,
                    Rect {
                        x: (-1.0, 1.0),
                        y: (-1.0, 1.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-exp-scaled",
            tag: "scaled exponential pair",
            epsilon: 0.0,
            default_params: ParamSet::from_pairs(&[("a", 1.0), ("b", 0.5), ("m", 2.0)]),
            build: |p| {
                let a = p.req("a")?;
                let b = p.req("b")?;
                let m = p.req("m")?;
                require(a != 0.0, "a != 0")?;
                require(m > 0.0 && m != 1.0, "0 < m != 1")?;
                let amp = a * (2.0 / (1.0 + m * m)).sqrt();
                Ok(scaled_pair(
                    "pair-exp-scaled",
                    "scaled exponential pair",
                    Profile::Exp { a: amp, b },
                    m,
                    p,
                    Rect {
                        x: (-1.0, 1.0),
                        y: (-1.0, 1.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-recip-base",
            tag: "traveling reciprocal pair, unit speed",
            epsilon: -1.0,
            default_params: ParamSet::new(),
            build: |p| {
                Ok(base_pair(
                    "pair-recip-base",
                    "traveling reciprocal pair, unit speed",
                    Profile::Recip,
                    p,
                    Rect {
                        x: (0.3, 2.0),
                        y: (0.3, 2.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-recip-scaled",
            tag: "scaled reciprocal pair",
            epsilon: -1.0,
            default_params: ParamSet::from_pairs(&[("m", 2.0)]),
            build: |p| {
                let m = p.req("m")?;
                require(m > 0.0 && m != 1.0, "0 < m != 1")?;
                Ok(scaled_pair(
                    "pair-recip-scaled",
                    "scaled reciprocal pair",
                    Profile::Recip,
                    m,
                    p,
                    Rect {
                        x: (0.3 / (m * m), 2.0 / (m * m)),
                        y: (0.3, 2.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-sec-base",
            tag: "traveling sec pair, unit speed",
            epsilon: -1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0)]),
            build: |p| {
                let c = p.req("c")?;
                require(c > 0.0, "c > 0")?;
                let half = 0.45 * std::f64::consts::SQRT_2 / c;
                Ok(base_pair(
                    "pair-sec-base",
                    "traveling sec pair, unit speed",
                    Profile::Sec { c },
                    p,
                    Rect {
                        x: (-half, half),
                        y: (-half, half),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-sec-scaled",
            tag: "scaled sec pair",
            epsilon: -1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0), ("m", 2.0)]),
            build: |p| {
                let c = p.req("c")?;
                let m = p.req("m")?;
                require(c > 0.0, "c > 0")?;
                require(m > 0.0 && m != 1.0, "0 < m != 1")?;
                let cs = (2.0 / (1.0 + m * m)).sqrt() * c;
                // keep |c (m^2 x + y) / sqrt(1+m^2)| below ~1.2
                let xr = 0.6 * (1.0 + m * m).sqrt() / (c * m * m);
                let yr = 0.6 * (1.0 + m * m).sqrt() / c;
                Ok(scaled_pair(
                    "pair-sec-scaled",
                    "scaled sec pair",
                    Profile::Sec { c: cs },
                    m,
                    p,
                    Rect {
                        x: (0.02 * xr, xr),
                        y: (0.02 * yr, yr),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-sech-base",
            tag: "traveling sech pair, unit speed",
            epsilon: 1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0)]),
            build: |p| {
                let c = p.req("c")?;
                require(c > 0.0, "c > 0")?;
                Ok(base_pair(
                    "pair-sech-base",
                    "traveling sech pair, unit speed",
                    Profile::Sech { c },
                    p,
                    Rect {
                        x: (-1.0, 1.0),
                        y: (-1.0, 1.0),
                    },
                ))
            },
        },
        SolutionFamily {
            id: "pair-sech-scaled",
            tag: "scaled sech pair",
            epsilon: 1.0,
            default_params: ParamSet::from_pairs(&[("c", 1.0), ("m", 2.0)]),
            build: |p| {
                let c = p.req("c")?;
                let m = p.req("m")?;
                require(c > 0.0, "c > 0")?;
                require(m > 0.0 && m != 1.0, "0 < m != 1")?;
                let cs = (2.0 / (1.0 + m * m)).sqrt() * c;
                Ok(scaled_pair(
                    "pair-sech-scaled",
                    "scaled sech pair",
                    Profile::Sech { c: cs },
                    m,
                    p,
                    Rect {
                        x: (-1.0 / (m * m), 1.0 / (m * m)),
                        y: (-1.0, 1.0),
                    },
                ))
            },
        },
    ]
}

/// Look up a solution family by id.
pub fn find_solution(id: &str) -> Result<&'static SolutionFamily, TwistorError> {
    use std::sync::OnceLock;
    static REG: OnceLock<Vec<SolutionFamily>> = OnceLock::new();
    REG.get_or_init(solution_registry)
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| TwistorError::UnknownSolution(id.to_string()))
}

// ---------------------------------------------------------------------------
// residual operators
// ---------------------------------------------------------------------------

/// Antisymmetrized twisted-closedness defect `|d_y f^2 - d_x k^2|`
/// (identically zero for a single twisted factor).
pub fn twisted_closed_residual(sol: &TwistorSolution, x: f64, y: f64) -> f64 {
    if sol.ell <= 1 {
        return 0.0;
    }
    let (f, k) = sol.pair(x, y);
    (2.0 * f.v * f.dy - 2.0 * k.v * k.dx).abs()
}

/// Hamiltonian-stationarity defect in the twistor-function form
/// `|sum_j f_j^{-4} d_j f_j^2 - sum_{i != j} (f_i f_j)^{-2} d_j f_i^2|`.
pub fn hstationary_residual(sol: &TwistorSolution, x: f64, y: f64) -> f64 {
    let (f, k) = sol.pair(x, y);
    if sol.ell <= 1 {
        return (2.0 * f.dx / (f.v * f.v * f.v)).abs();
    }
    let lhs = 2.0 * f.dx / (f.v * f.v * f.v) + 2.0 * k.dy / (k.v * k.v * k.v);
    let rhs = 2.0 * (f.v * f.dy + k.v * k.dx) / (f.v * f.v * k.v * k.v);
    (lhs - rhs).abs()
}

/// Constant-curvature defect `|(f_y/k)_y + (k_x/f)_x + eps f k|`.
pub fn curvature_residual(sol: &TwistorSolution, x: f64, y: f64) -> f64 {
    let (f, k) = sol.pair(x, y);
    let term_y = (f.dyy * k.v - f.dy * k.dy) / (k.v * k.v);
    let term_x = (k.dxx * f.v - k.dx * f.dx) / (f.v * f.v);
    (term_y + term_x + sol.epsilon * f.v * k.v).abs()
}

fn eq_residual(sol: &TwistorSolution, eq: SystemEq, x: f64, y: f64) -> f64 {
    match eq {
        SystemEq::HStationary => hstationary_residual(sol, x, y),
        SystemEq::TwistedClosed => twisted_closed_residual(sol, x, y),
        SystemEq::Curvature => curvature_residual(sol, x, y),
    }
}

/// Per-equation residual statistics over a seeded random grid.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResidualReport {
    pub solution_id: String,
    pub seed: u64,
    pub count: usize,
    pub equations: Vec<EqResidual>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EqResidual {
    pub equation: SystemEq,
    pub max: f64,
    pub rms: f64,
}

/// Evaluate every declared equation of the solution over `count` seeded
/// random domain points.
pub fn full_system_residual(sol: &TwistorSolution, count: usize, seed: u64) -> ResidualReport {
    let points = sol.domain.sample(count, seed);
    let equations = sol
        .declared
        .iter()
        .map(|&eq| {
            let mut max = 0.0_f64;
            let mut sumsq = 0.0_f64;
            for &(x, y) in &points {
                let r = eq_residual(sol, eq, x, y);
                max = max.max(r);
                sumsq += r * r;
            }
            EqResidual {
                equation: eq,
                max,
                rms: (sumsq / points.len().max(1) as f64).sqrt(),
            }
        })
        .collect();
    ResidualReport {
        solution_id: sol.id.clone(),
        seed,
        count,
        equations,
    }
}

/// Which scaling transform to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    /// `F(x,y) = c m f(m^2 x, y)`, `K(x,y) = c k(m^2 x, y)`; preserves the
    /// Hamiltonian-stationarity and twisted-closedness equations.
    Anisotropic,
    /// From a unit-speed traveling pair `f = +-k = fhat(x+y)` produce
    /// `F = m sqrt(1+m^2)/sqrt2 fhat(m^2 x + y)`,
    /// `K = +- sqrt(1+m^2)/sqrt2 fhat(m^2 x + y)`: a full solution again.
    TravelingWave,
}

pub fn scale_transform(
    sol: &TwistorSolution,
    m: f64,
    c: f64,
    mode: ScaleMode,
) -> Result<TwistorSolution, TwistorError> {
    require(m > 0.0 && m != 1.0, "0 < m != 1")?;
    require(c != 0.0, "c != 0")?;
    let m2 = m * m;
    match mode {
        ScaleMode::Anisotropic => {
            let f0 = sol.f.clone();
            let k0 = sol.k.clone();
            let reparam = move |g: &TwistorFn, x: f64, y: f64, amp: f64| -> Deriv2 {
                let d = g.at(m2 * x, y);
                Deriv2 {
                    v: amp * d.v,
                    dx: amp * m2 * d.dx,
                    dy: amp * d.dy,
                    dxx: amp * m2 * m2 * d.dxx,
                    dxy: amp * m2 * d.dxy,
                    dyy: amp * d.dyy,
                }
            };
            let rf = reparam;
            Ok(TwistorSolution {
                id: format!("{}*aniso", sol.id),
                tag: format!("{} (anisotropic rescale)", sol.tag),
                ell: sol.ell,
                epsilon: sol.epsilon,
                params: sol.params.clone(),
                f: TwistorFn::new(move |x, y| rf(&f0, x, y, c * m)),
                k: {
                    let rf = reparam;
                    TwistorFn::new(move |x, y| rf(&k0, x, y, c))
                },
                domain: Rect {
                    x: (sol.domain.x.0 / m2, sol.domain.x.1 / m2),
                    y: sol.domain.y,
                },
                // The rescale preserves the first two equations; constant
                // curvature is not preserved in general.
                declared: vec![SystemEq::HStationary, SystemEq::TwistedClosed],
                traveling: None,
            })
        }
        ScaleMode::TravelingWave => {
            let tw = sol.traveling.ok_or(TwistorError::NotTravelingWave)?;
            if tw.m != 1.0 {
                return Err(TwistorError::NotTravelingWave);
            }
            let amp = ((1.0 + m2) / 2.0).sqrt();
            // Keep m^2 x + y inside the u-range the base profile was valid
            // on, by splitting that range evenly between the two terms.
            let u0 = sol.domain.x.0 + sol.domain.y.0;
            let u1 = sol.domain.x.1 + sol.domain.y.1;
            let domain = Rect {
                x: (0.5 * u0 / m2, 0.5 * u1 / m2),
                y: (0.5 * u0, 0.5 * u1),
            };
            Ok(TwistorSolution {
                id: format!("{}*travel", sol.id),
                tag: format!("{} (traveling-wave rescale)", sol.tag),
                ell: sol.ell,
                epsilon: sol.epsilon,
                params: sol.params.clone(),
                f: travel_fn(tw.profile, m * amp, m),
                k: travel_fn(tw.profile, tw.sign * amp, m),
                domain,
                declared: ALL_EQS.to_vec(),
                traveling: Some(TravelingWave {
                    profile: tw.profile,
                    m,
                    sign: tw.sign,
                }),
            })
        }
    }
}

/// Type I (`f^2 = k^2`) versus type II (`f^2 != k^2`) over a seeded grid.
pub fn type1_classifier(sol: &TwistorSolution, count: usize, seed: u64, tol: f64) -> bool {
    sol.domain.sample(count, seed).into_iter().all(|(x, y)| {
        let (f, k) = sol.pair(x, y);
        (f.v * f.v - k.v * k.v).abs() < tol
    })
}

// ---------------------------------------------------------------------------
// lift PDE systems
// ---------------------------------------------------------------------------

fn jet_combo(jet: &Jet2, cx: Complex64, cy: Complex64) -> crate::ambient::CVector {
    let mut out = jet.grad[0].scale(cx);
    let gy = jet.grad[1].scale(cy);
    out = out.add(&gy);
    out
}

fn max_norm(v: &crate::ambient::CVector) -> f64 {
    v.entries.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// Residual of the lift PDE system of the spherical sech-metric surface:
/// with `u = (m^2 x + y)/sqrt(1+m^2)`, `T = tanh u`, `S = sech^2 u`,
///
/// ```text
/// L_xx = i L_x - m^2 (L_x - L_y) T / sqrt(1+m^2) - m^2 S L
/// L_xy =       - (L_x + m^2 L_y) T / sqrt(1+m^2)
/// L_yy = i L_y + (L_x - L_y) T / sqrt(1+m^2) - S L
/// ```
pub fn pde_system_sech_lift_residual(jet: &Jet2, p: &[f64], m: f64) -> f64 {
    assert_eq!(jet.dim_in(), 2, "surface lift expected");
    let (x, y) = (p[0], p[1]);
    let s1 = (1.0 + m * m).sqrt();
    let u = (m * m * x + y) / s1;
    let t = u.tanh();
    let s = 1.0 / (u.cosh() * u.cosh());
    let i = Complex64::new(0.0, 1.0);
    let m2 = m * m;

    let r1 = {
        let mut rhs = jet.grad[0].scale(i);
        rhs = rhs.sub(&jet_combo(
            jet,
            Complex64::new(m2 * t / s1, 0.0),
            Complex64::new(-m2 * t / s1, 0.0),
        ));
        rhs = rhs.sub(&jet.value.scale(Complex64::new(m2 * s, 0.0)));
        max_norm(&jet.hess(0, 0).sub(&rhs))
    };
    let r2 = {
        let rhs = jet_combo(
            jet,
            Complex64::new(-t / s1, 0.0),
            Complex64::new(-m2 * t / s1, 0.0),
        );
        max_norm(&jet.hess(0, 1).sub(&rhs))
    };
    let r3 = {
        let mut rhs = jet.grad[1].scale(i);
        rhs = rhs.add(&jet_combo(
            jet,
            Complex64::new(t / s1, 0.0),
            Complex64::new(-t / s1, 0.0),
        ));
        rhs = rhs.sub(&jet.value.scale(Complex64::new(s, 0.0)));
        max_norm(&jet.hess(1, 1).sub(&rhs))
    };
    r1.max(r2).max(r3)
}

/// Residual of the flat analogue system for the exponential metric
/// `e^{2b(m^2 x + y)} (m^2 dx^2 + dy^2)`:
///
/// ```text
/// L_xx = (i + b m^2) L_x - b m^2 L_y
/// L_xy = b L_x + b m^2 L_y
/// L_yy = -b L_x + (i + b) L_y
/// ```
pub fn pde_system_flat_residual(jet: &Jet2, b: f64, m: f64) -> f64 {
    assert_eq!(jet.dim_in(), 2, "surface expected");
    let i = Complex64::new(0.0, 1.0);
    let m2 = m * m;
    let r1 = max_norm(&jet.hess(0, 0).sub(&jet_combo(
        jet,
        i + b * m2,
        Complex64::new(-b * m2, 0.0),
    )));
    let r2 = max_norm(&jet.hess(0, 1).sub(&jet_combo(
        jet,
        Complex64::new(b, 0.0),
        Complex64::new(b * m2, 0.0),
    )));
    let r3 = max_norm(
        &jet.hess(1, 1)
            .sub(&jet_combo(jet, Complex64::new(-b, 0.0), i + b)),
    );
    r1.max(r2).max(r3)
}
