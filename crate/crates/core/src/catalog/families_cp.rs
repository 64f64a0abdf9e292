//! Spherical-lift families: warped products in `CP^n`, the type I and
//! type II surfaces in `CP^2`, and the constant-curvature `CP^3` families
//! with positive relative nullity.

use super::blocks::{
    ei, real_product_jet, spherical_pair, telescope, telescope_metric_diag, Fk, I,
};
use super::{
    AdmissibilityRule, CompositionKind, DomainSpec, ImmersionFamily, MetricFn, NullitySpec,
    ParamSet, ParamSpec, SingularLocus, Tier, TwistorRef,
};
use crate::ambient::AmbientModel;
use num_complex::Complex64;
use std::sync::Arc;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn base_cp(id: &'static str, lineage: &'static str, n: usize) -> ImmersionFamily {
    ImmersionFamily {
        id,
        lineage,
        ambient: AmbientModel::spherical(n),
        n,
        ell: 0,
        twisted_indices: vec![],
        param_schema: vec![],
        admissibility: vec![],
        domain: DomainSpec {
            intervals: vec![(-2.0, 2.0); n],
            singular: vec![],
        },
        evaluator: Arc::new(|_, _| unreachable!()),
        analytic_jet: None,
        advertised_metric: None,
        advertised_twistor: None,
        advertised_nullity: None,
        tier: Tier::B,
        adapted: false,
        smoke: ParamSet::new(),
        variant_of: None,
        expected_fail: false,
        notes: vec![],
        composition: None,
        inner_default: None,
    }
}

fn positive_params(ell: usize) -> (Vec<ParamSpec>, Vec<AdmissibilityRule>) {
    let schema = (0..ell)
        .map(|j| ParamSpec {
            name: Box::leak(format!("a{}", j + 1).into_boxed_str()) as &'static str,
            constraint: "a_j > 0",
            sample_range: (0.5, 1.8),
        })
        .collect();
    let admiss: Vec<AdmissibilityRule> = vec![(
        "a_j > 0",
        Arc::new(move |p: &ParamSet| (1..=ell).all(|j| p.get(&format!("a{j}")) > Some(0.0))),
    )];
    (schema, admiss)
}

/// Warped-product lift in `CP^n`: oscillatory pairs over telescoped sphere
/// weights,
/// `(A_1 w_1, ..., A_l w_l, B_1 w_1, ..., B_l w_l, trailing weights)`.
fn cp_wp(
    id: &'static str,
    lineage: &'static str,
    n: usize,
    ell: usize,
    smoke: &[(&str, f64)],
) -> ImmersionFamily {
    assert!(2 * ell <= n + 1);
    let mut fam = base_cp(id, lineage, n);
    fam.ell = ell;
    fam.twisted_indices = (0..ell).collect();
    let (schema, admiss) = positive_params(ell);
    fam.param_schema = schema;
    fam.admissibility = admiss;
    let mut intervals = vec![(-2.0, 2.0); ell];
    intervals.extend(vec![(0.2, 1.3); n - ell]);
    fam.domain.intervals = intervals;
    fam.evaluator = Arc::new(move |p, q| {
        let w = telescope(&q[ell..]);
        let mut a_comps = Vec::with_capacity(ell);
        let mut b_comps = Vec::with_capacity(ell);
        for j in 0..ell {
            let a = p.req(&format!("a{}", j + 1)).unwrap();
            let (acomp, bcomp) = spherical_pair(a, q[j]);
            a_comps.push(acomp * w[j]);
            b_comps.push(bcomp * w[j]);
        }
        let mut out = a_comps;
        out.extend(b_comps);
        out.extend(w[ell..].iter().map(|&v| c(v)));
        out
    });
    fam.advertised_metric = Some(Arc::new(move |p: &ParamSet, q: &[f64]| {
        let w = telescope(&q[ell..]);
        let angle_diag = telescope_metric_diag(&q[ell..]);
        let mut g = vec![0.0; n * n];
        for j in 0..ell {
            let a = p.req(&format!("a{}", j + 1)).unwrap();
            g[j * n + j] = a * a * w[j] * w[j];
        }
        for (i, d) in angle_diag.iter().enumerate() {
            let k = ell + i;
            g[k * n + k] = *d;
        }
        g
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(n - ell));
    fam.adapted = true;
    fam.smoke = ParamSet::from_pairs(smoke);
    fam
}

/// Losing reading of the first warped family: the first-group weight taken
/// literally as `cos theta_2`, which breaks the quadric at order one.
fn cp_wp_a_alt() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp-wp-a-alt",
        "warped-product classification in CP^n, first family (literal weight reading)",
        2,
    );
    fam.ell = 1;
    fam.twisted_indices = vec![0];
    let (schema, admiss) = positive_params(1);
    fam.param_schema = schema;
    fam.admissibility = admiss;
    fam.domain.intervals = vec![(-2.0, 2.0), (0.2, 1.3)];
    fam.evaluator = Arc::new(|p, q| {
        let a = p.req("a1").unwrap();
        let (acomp, bcomp) = spherical_pair(a, q[0]);
        let th = q[1];
        vec![acomp * th.cos(), bcomp * th.sin(), c(th.cos())]
    });
    fam.variant_of = Some("cp-wp-a");
    fam.expected_fail = true;
    fam.notes = vec!["first-group weight read literally as cos theta; fails the quadric check"];
    fam.smoke = ParamSet::from_pairs(&[("a1", 1.0)]);
    fam
}

/// Type I surface lift in `CP^2` built on the sech profile.
fn cp2_type1() -> ImmersionFamily {
    let mut fam = base_cp("cp2-type1", "type I surfaces in CP^2", 2);
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.param_schema = vec![ParamSpec {
        name: "b",
        constraint: "b > 0",
        sample_range: (0.5, 2.0),
    }];
    fam.admissibility = vec![("b > 0", Arc::new(|p: &ParamSet| p.get("b") > Some(0.0)))];
    fam.domain.intervals = vec![(-1.2, 1.2), (-1.2, 1.2)];
    // The displayed chart is the adapted one scaled by 1/b (numerically
    // h(d_j, d_j) = b J d_j there), so evaluate the display at (x/b, y/b);
    // the twistor profile becomes the sech base with c = sqrt2 / b.
    fam.evaluator = Arc::new(|p, q| {
        let b = p.req("b").unwrap();
        let alpha = 0.5 * (4.0 + b * b).sqrt();
        let (s, t) = ((q[0] + q[1]) / b, (q[0] - q[1]) / b);
        let sech = 1.0 / s.cosh();
        let phase = ei(0.5 * b * s);
        let (sn, cs) = (alpha * t).sin_cos();
        vec![
            (Complex64::new(s.tanh(), 0.5 * b)) / alpha,
            phase * sech * cs / alpha,
            phase * sech * sn / alpha,
        ]
    });
    fam.tier = Tier::A;
    fam.adapted = true;
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let b = p.req("b").unwrap();
        let s = (q[0] + q[1]) / b;
        let f2 = 2.0 / (b * b * s.cosh() * s.cosh());
        vec![f2, 0.0, 0.0, f2]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-sech-base",
        map_params: Arc::new(|p: &ParamSet| {
            ParamSet::from_pairs(&[("c", std::f64::consts::SQRT_2 / p.req("b").unwrap())])
        }),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
    fam
}

/// Type II surface lift in `CP^2` with the sech metric.
fn cp2_type2_sech() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp2-type2-sech",
        "type II traveling-wave surfaces in CP^2, sech-metric family",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.param_schema = vec![ParamSpec {
        name: "m",
        constraint: "m > 0, m != 1",
        sample_range: (1.3, 2.5),
    }];
    fam.admissibility = vec![(
        "m > 0, m != 1",
        Arc::new(|p: &ParamSet| p.get("m").is_some_and(|m| m > 0.0 && m != 1.0)),
    )];
    fam.domain.intervals = vec![(-1.0, 1.0), (-1.0, 1.0)];
    fam.evaluator = Arc::new(|p, q| {
        let m = p.req("m").unwrap();
        let (x, y) = (q[0], q[1]);
        let s1 = (1.0 + m * m).sqrt();
        let s5 = (1.0 + 5.0 * m * m).sqrt();
        let u = (m * m * x + y) / s1;
        let beta = s5 / (2.0 * s1);
        let t = x - y;
        let sech = 1.0 / u.cosh();
        let root = (2.0 + m * m).sqrt();
        let phase = ei(0.5 * (x + y));
        let (sn, cs) = (beta * t).sin_cos();
        vec![
            sech / root * (2.0 * m * root / s5) * phase * sn,
            sech / root * phase * (c(s1 * cs) - I * ((1.0 - m * m) * sn / s5)),
            (c(1.0) - I * (s1 * u.tanh())) / root,
        ]
    });
    fam.tier = Tier::A;
    fam.adapted = true;
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let m = p.req("m").unwrap();
        let u = (m * m * q[0] + q[1]) / (1.0 + m * m).sqrt();
        let s2 = 1.0 / (u.cosh() * u.cosh());
        vec![m * m * s2, 0.0, 0.0, s2]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-sech-scaled",
        map_params: Arc::new(|p: &ParamSet| {
            ParamSet::from_pairs(&[("c", 1.0), ("m", p.req("m").unwrap())])
        }),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.smoke = ParamSet::from_pairs(&[("m", 2.0)]);
    fam
}

/// Totally geodesic lift: the real unit sphere inside the complex one.
fn cp3_null_1() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp3-null-1",
        "constant-curvature classification in CP^3 with positive nullity, item 1 (totally geodesic)",
        3,
    );
    fam.domain.intervals = vec![(0.2, 1.3); 3];
    fam.evaluator = Arc::new(move |_, q| {
        let w = telescope(q);
        w.into_iter().map(c).collect()
    });
    fam.analytic_jet = Some(Arc::new(move |_, q| {
        let comps: Vec<Vec<(usize, Fk)>> = vec![
            vec![(0, Fk::Sin)],
            vec![(0, Fk::Cos), (1, Fk::Sin)],
            vec![(0, Fk::Cos), (1, Fk::Cos), (2, Fk::Sin)],
            vec![(0, Fk::Cos), (1, Fk::Cos), (2, Fk::Cos)],
        ];
        real_product_jet(&comps, 3, q, crate::ambient::Signature::euclidean(4))
    }));
    fam.advertised_metric = Some(Arc::new(|_p: &ParamSet, q: &[f64]| {
        let d = telescope_metric_diag(q);
        vec![d[0], 0.0, 0.0, 0.0, d[1], 0.0, 0.0, 0.0, d[2]]
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(3));
    fam.adapted = true; // ell = 0: the whole form must vanish
    fam.smoke = ParamSet::new();
    fam
}

/// Moebius-chart family with two linear parameters.
fn cp3_null_2() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp3-null-2",
        "constant-curvature classification in CP^3 with positive nullity, item 2",
        3,
    );
    fam.param_schema = vec![
        ParamSpec {
            name: "a",
            constraint: "a real",
            sample_range: (0.3, 1.2),
        },
        ParamSpec {
            name: "b",
            constraint: "b real",
            sample_range: (0.3, 1.2),
        },
        ParamSpec {
            name: "c",
            constraint: "b^2 + c^2 != 0",
            sample_range: (0.3, 1.2),
        },
    ];
    fam.admissibility = vec![(
        "b^2 + c^2 != 0",
        Arc::new(|p: &ParamSet| {
            let (b, cc) = (p.req("b").unwrap_or(0.0), p.req("c").unwrap_or(0.0));
            b * b + cc * cc > 0.0
        }),
    )];
    // chart (x, y, s)
    fam.domain.intervals = vec![(-0.7, 0.7), (-0.7, 0.7), (-1.5, 1.5)];
    fam.domain.singular = vec![SingularLocus {
        desc: "phi != 0 (conformal factor of the twisted direction)",
        lipschitz: 4.0,
        expr: Arc::new(|p: &ParamSet, q: &[f64]| {
            let (a, b, cc) = (
                p.req("a").unwrap(),
                p.req("b").unwrap(),
                p.req("c").unwrap(),
            );
            let (x, y) = (q[0], q[1]);
            let r2 = x * x + y * y;
            (a * (1.0 - r2) + b * x + cc * y) / (1.0 + r2)
        }),
    }];
    fam.evaluator = Arc::new(|p, q| {
        let (a, b, cc) = (
            p.req("a").unwrap(),
            p.req("b").unwrap(),
            p.req("c").unwrap(),
        );
        let (x, y, s) = (q[0], q[1], q[2]);
        let chat = (b * b + cc * cc).sqrt();
        let delta = 0.5 * (1.0 + 4.0 * a * a + chat * chat).sqrt();
        let r2 = x * x + y * y;
        let phi = (a * (1.0 - r2) + b * x + cc * y) / (1.0 + r2);
        let phase = ei(0.5 * s);
        let (sn, cs) = (delta * s).sin_cos();
        let denom = (4.0 * a * a + chat * chat).sqrt();
        let tail = (c(chat) + 2.0 * I * a) * (2.0 * phi / (chat * (4.0 * a * a + chat * chat)));
        vec![
            phi * phase * sn / delta,
            phi * phase * (c(2.0 * delta * cs) - I * sn) / (delta * denom),
            (c(2.0 * chat * x) + I * (b * (1.0 - r2))) / (chat * (1.0 + r2)) - b * tail,
            (c(2.0 * chat * y) + I * (cc * (1.0 - r2))) / (chat * (1.0 + r2)) - cc * tail,
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::from_pairs(&[("a", 1.0), ("b", 1.0), ("c", 1.0)]);
    fam
}

/// Cone over the type I (sech) surface, with the corrected second
/// component normalization `(sqrt(2b) tanh s + i)/sqrt(1+2b)`.
fn cp3_null_3() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp3-null-3",
        "constant-curvature classification in CP^3 with positive nullity, item 3",
        3,
    );
    fam.param_schema = vec![ParamSpec {
        name: "b",
        constraint: "b > 0",
        sample_range: (0.4, 1.5),
    }];
    fam.admissibility = vec![("b > 0", Arc::new(|p: &ParamSet| p.get("b") > Some(0.0)))];
    // chart (x, s, t)
    fam.domain.intervals = vec![(0.2, 1.3), (-1.2, 1.2), (-1.0, 1.0)];
    fam.evaluator = Arc::new(|p, q| {
        let b = p.req("b").unwrap();
        let (x, s, t) = (q[0], q[1], q[2]);
        let sb = (2.0 * b).sqrt();
        let rb = (1.0 + 2.0 * b).sqrt();
        let chi = rb / sb;
        let phase = ei(s / sb);
        let sech = 1.0 / s.cosh();
        let (sn, cs) = (chi * t).sin_cos();
        let cx = x.cos();
        vec![
            c(x.sin()),
            cx * (c(sb * s.tanh()) + I) / rb,
            cx * sb * phase * sech * cs / rb,
            cx * sb * phase * sech * sn / rb,
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.notes = vec![
        "second-component normalization restored to sqrt(2b) sqrt(1+2b); the \
         displayed sqrt(2+4b) closes the quadric only at b = 1",
    ];
    fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
    fam
}

/// Doubly spherical-block family; the third component is weighted by
/// `sin x` (the displayed `cos x` breaks the quadric).
fn cp3_null_4() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp3-null-4",
        "constant-curvature classification in CP^3 with positive nullity, item 4",
        3,
    );
    fam.param_schema = vec![
        ParamSpec {
            name: "a",
            constraint: "a > 0",
            sample_range: (0.5, 1.8),
        },
        ParamSpec {
            name: "b",
            constraint: "b > 0",
            sample_range: (0.5, 1.8),
        },
    ];
    fam.admissibility = vec![(
        "a, b > 0",
        Arc::new(|p: &ParamSet| p.get("a") > Some(0.0) && p.get("b") > Some(0.0)),
    )];
    // chart (x, y, z)
    fam.domain.intervals = vec![(0.2, 1.3), (-2.0, 2.0), (-2.0, 2.0)];
    fam.evaluator = Arc::new(|p, q| {
        let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
        let (x, y, z) = (q[0], q[1], q[2]);
        let (a_y, b_y) = spherical_pair(a, y);
        let (a_z, b_z) = spherical_pair(b, z);
        vec![b_y * x.cos(), a_y * x.cos(), a_z * x.sin(), b_z * x.sin()]
    });
    fam.twisted_indices = vec![1, 2];
    fam.ell = 2;
    fam.adapted = true;
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
        let x = q[0];
        let (cx, sx) = (x.cos(), x.sin());
        vec![
            1.0,
            0.0,
            0.0,
            0.0,
            a * a * cx * cx,
            0.0,
            0.0,
            0.0,
            b * b * sx * sx,
        ]
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(1));
    fam.notes = vec![
        "third component reweighted by sin x (the displayed cos x breaks the \
         quadric) and the oscillatory braces taken with -i/sqrt(1+4a^2) (the \
         displayed +i conjugate breaks the isotropy)",
    ];
    fam.smoke = ParamSet::from_pairs(&[("a", 1.0), ("b", 1.0)]);
    fam
}

/// Cone composition `(sin x, Ltilde(y, z) cos x)` over a horizontal type II
/// surface lift in `CP^2`.
fn cp3_null_5() -> ImmersionFamily {
    let mut fam = base_cp(
        "cp3-null-5",
        "constant-curvature classification in CP^3 with positive nullity, item 5 (cone over a type II surface)",
        3,
    );
    fam.domain.intervals = vec![(0.2, 1.3)];
    fam.composition = Some(CompositionKind::SphericalCone);
    fam.inner_default = Some("cp2-type2-sech");
    fam.param_schema = vec![ParamSpec {
        name: "inner.m",
        constraint: "forwarded to the inner surface",
        sample_range: (1.3, 2.5),
    }];
    fam.evaluator = Arc::new(|_, _| unreachable!("composition evaluator"));
    fam.advertised_nullity = Some(NullitySpec::Exact(1));
    fam.smoke = ParamSet::from_pairs(&[("inner.m", 2.0)]);
    fam
}

pub(super) fn families() -> Vec<ImmersionFamily> {
    vec![
        cp_wp(
            "cp-wp-a",
            "warped-product classification in CP^n, first family",
            2,
            1,
            &[("a1", 1.0)],
        ),
        cp_wp_a_alt(),
        cp_wp(
            "cp-wp-b",
            "warped-product classification in CP^n, second family",
            3,
            2,
            &[("a1", 1.0), ("a2", 0.8)],
        ),
        cp2_type1(),
        cp2_type2_sech(),
        cp3_null_1(),
        cp3_null_2(),
        cp3_null_3(),
        cp3_null_4(),
        cp3_null_5(),
    ]
}
