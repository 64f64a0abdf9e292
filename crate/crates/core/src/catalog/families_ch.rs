//! Hyperbolic-lift families: the twenty-one warped-product families in
//! `CH^n`, the five type I and five type II surfaces in `CH^2`, and the ten
//! constant-curvature `CH^3` families with positive relative nullity.
//!
//! All entries live on the anti-de-Sitter quadric `<z, z> = -1` with one
//! timelike complex coordinate (always the first slot).

use super::blocks::{
    ei, real_product_jet, telescope, telescope_metric_diag, triple_block, Fk, PairKind, I,
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

fn base_ch(id: &'static str, lineage: &'static str, n: usize) -> ImmersionFamily {
    ImmersionFamily {
        id,
        lineage,
        ambient: AmbientModel::hyperbolic(n),
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

/// Shape of the first twisted block of a warped family.
#[derive(Debug, Clone, Copy, PartialEq)]
enum FirstSlot {
    /// The timelike slot is the bare `cosh theta`; every `x_j` carries an
    /// oscillatory pair weighted into the `sinh theta` cone.
    BareReal,
    /// The first pair couples to `coth theta` (so scales with `cosh theta`)
    /// and occupies the timelike slot.
    CothPair(PairKind),
    /// The three-component block mixing `coth theta` with the first sphere
    /// weight.
    Triple,
}

struct ChWpSpec {
    id: &'static str,
    item: usize,
    n: usize,
    ell: usize,
    first: FirstSlot,
    smoke_a1: f64,
    notes: Vec<&'static str>,
}

fn pair_param_spec(kind: PairKind, name: &'static str) -> (ParamSpec, &'static str) {
    match kind {
        PairKind::Spherical => (
            ParamSpec {
                name,
                constraint: "a > 0",
                sample_range: (0.5, 1.8),
            },
            "a > 0",
        ),
        PairKind::Trig => (
            ParamSpec {
                name,
                constraint: "4a^2 < 1",
                sample_range: (0.15, 0.45),
            },
            "4a^2 < 1",
        ),
        PairKind::Hyper => (
            ParamSpec {
                name,
                constraint: "4a^2 > 1",
                sample_range: (0.6, 1.5),
            },
            "4a^2 > 1",
        ),
        PairKind::Parabolic => (
            ParamSpec {
                name,
                constraint: "unused",
                sample_range: (0.0, 1.0),
            },
            "unused",
        ),
    }
}

/// Generic warped-product family in `CH^n`, assembled from the first-slot
/// shape plus spherical pairs over telescoped weights inside the
/// `sinh theta` cone.
fn ch_wp(spec: ChWpSpec) -> ImmersionFamily {
    let ChWpSpec {
        id,
        item,
        n,
        ell,
        first,
        smoke_a1,
        notes,
    } = spec;
    let lineage: &'static str =
        Box::leak(format!("warped-product classification in CH^n, item {item}").into_boxed_str());
    let mut fam = base_ch(id, lineage, n);
    fam.ell = ell;
    fam.twisted_indices = (0..ell).collect();
    fam.notes = notes;

    let mut schema = Vec::new();
    let mut smoke = ParamSet::new();
    let first_kind = match first {
        FirstSlot::BareReal => PairKind::Spherical,
        FirstSlot::CothPair(kind) => kind,
        FirstSlot::Triple => PairKind::Spherical,
    };
    for j in 1..=ell {
        let name: &'static str = Box::leak(format!("a{j}").into_boxed_str());
        let kind = if j == 1 {
            first_kind
        } else {
            PairKind::Spherical
        };
        if j == 1 && kind == PairKind::Parabolic {
            continue; // parameter-free block
        }
        let (ps, _txt) = pair_param_spec(kind, name);
        schema.push(ps);
        smoke.set(
            name,
            if j == 1 {
                smoke_a1
            } else {
                0.8 + 0.2 * j as f64
            },
        );
    }
    fam.param_schema = schema;
    let first_for_adm = first_kind;
    let has_a1 = !(matches!(first, FirstSlot::CothPair(PairKind::Parabolic)));
    fam.admissibility = vec![(
        match first_for_adm {
            PairKind::Trig => "4 a1^2 < 1, every a_j > 0",
            PairKind::Hyper => "4 a1^2 > 1, every a_j > 0",
            _ => "every a_j > 0",
        },
        Arc::new(move |p: &ParamSet| {
            let mut ok = true;
            if has_a1 {
                if let Some(a1) = p.get("a1") {
                    ok &= a1 > 0.0;
                    match first_for_adm {
                        PairKind::Trig => ok &= 4.0 * a1 * a1 < 1.0,
                        PairKind::Hyper => ok &= 4.0 * a1 * a1 > 1.0,
                        _ => {}
                    }
                } else {
                    ok = false;
                }
            }
            for j in 2..=9 {
                if let Some(a) = p.get(&format!("a{j}")) {
                    ok &= a > 0.0;
                }
            }
            ok
        }),
    )];

    let mut intervals = vec![(-2.0, 2.0); ell];
    intervals.push((0.3, 1.5)); // hyperbolic angle
    intervals.extend(vec![(0.2, 1.3); n - ell - 1]);
    fam.domain.intervals = intervals;

    fam.evaluator = Arc::new(move |p, q| {
        let theta = q[ell];
        let (sh, ch) = (theta.sinh(), theta.cosh());
        let weights = telescope(&q[ell + 1..]);
        let mut comps: Vec<Complex64> = Vec::with_capacity(n + 1);
        let mut wpos = 0usize;
        match first {
            FirstSlot::BareReal => comps.push(c(ch)),
            FirstSlot::CothPair(kind) => {
                let a1 = if kind == PairKind::Parabolic {
                    0.0
                } else {
                    p.req("a1").unwrap()
                };
                let (b, a) = kind.eval(a1, q[0]);
                comps.push(b * ch);
                comps.push(a * ch);
            }
            FirstSlot::Triple => {
                let a1 = p.req("a1").unwrap();
                let t = ch / sh;
                let u = weights[0];
                wpos = 1;
                let (c1, c2, c3) = triple_block(a1, q[0], t, u);
                comps.push(c1 * sh);
                comps.push(c2 * sh);
                comps.push(c3 * sh);
            }
        }
        let j_start = match first {
            FirstSlot::BareReal => 1,
            _ => 2,
        };
        for j in j_start..=ell {
            let a = p.req(&format!("a{j}")).unwrap();
            let (acomp, bcomp) = PairKind::Spherical.eval(a, q[j - 1]);
            comps.push(acomp * (sh * weights[wpos]));
            comps.push(bcomp * (sh * weights[wpos]));
            wpos += 1;
        }
        for &w in &weights[wpos..] {
            comps.push(c(sh * w));
        }
        comps
    });

    fam.advertised_metric = Some(Arc::new(move |p: &ParamSet, q: &[f64]| {
        let theta = q[ell];
        let (sh, ch) = (theta.sinh(), theta.cosh());
        let weights = telescope(&q[ell + 1..]);
        let angle_diag = telescope_metric_diag(&q[ell + 1..]);
        let mut g = vec![0.0; n * n];
        let mut wpos = 0usize;
        let j_start = match first {
            FirstSlot::BareReal => 1,
            FirstSlot::CothPair(kind) => {
                let a1 = if kind == PairKind::Parabolic {
                    0.0
                } else {
                    p.req("a1").unwrap()
                };
                g[0] = kind.metric_const(a1) * ch * ch;
                2
            }
            FirstSlot::Triple => {
                // the triple block warps by cosh(theta) - sinh(theta) U
                let a1 = p.req("a1").unwrap();
                let f1 = a1 * (ch - sh * weights[0]);
                g[0] = f1 * f1;
                wpos = 1;
                2
            }
        };
        for j in j_start..=ell {
            let a = p.req(&format!("a{j}")).unwrap();
            let w = weights[wpos];
            g[(j - 1) * n + (j - 1)] = a * a * sh * sh * w * w;
            wpos += 1;
        }
        g[ell * n + ell] = 1.0;
        for (i, d) in angle_diag.iter().enumerate() {
            let k = ell + 1 + i;
            g[k * n + k] = sh * sh * d;
        }
        g
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(n - ell));
    fam.adapted = true;
    fam.smoke = smoke;
    fam
}

/// Horospherical warped family (item 8), registered at `n = 2`.
fn ch_wp_08() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch-wp-08",
        "warped-product classification in CH^n, item 8",
        2,
    );
    fam.ell = 1;
    fam.twisted_indices = vec![0];
    fam.param_schema = vec![ParamSpec {
        name: "a1",
        constraint: "a1 > 0",
        sample_range: (0.5, 1.8),
    }];
    fam.admissibility = vec![("a1 > 0", Arc::new(|p: &ParamSet| p.get("a1") > Some(0.0)))];
    fam.domain.intervals = vec![(-2.0, 2.0), (-1.0, 1.0)];
    fam.evaluator = Arc::new(|p, q| {
        let a = p.req("a1").unwrap();
        let (x, th) = (q[0], q[1]);
        let w = (c((-th).exp()) + 2.0 * I * (a * a * x * th.exp())) / (2.0 * a);
        vec![c(a * th.exp()) + w, a * (ei(x) * th.exp()), w]
    });
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let a = p.req("a1").unwrap();
        let e2 = (2.0 * q[1]).exp();
        vec![a * a * e2, 0.0, 0.0, 1.0]
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(1));
    fam.adapted = true;
    fam.smoke = ParamSet::from_pairs(&[("a1", 1.0)]);
    fam
}

fn ch_warped_families() -> Vec<ImmersionFamily> {
    use FirstSlot::*;
    use PairKind::*;
    let mut out = vec![
        ch_wp(ChWpSpec {
            id: "ch-wp-01",
            item: 1,
            n: 2,
            ell: 1,
            first: BareReal,
            smoke_a1: 1.0,
            notes: vec![
                "second oscillatory component read with the -i/sqrt(1+4a^2) brace; \
                 the displayed real brace breaks the quadric",
            ],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-02",
            item: 2,
            n: 2,
            ell: 1,
            first: CothPair(Parabolic),
            smoke_a1: 0.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-03",
            item: 3,
            n: 2,
            ell: 1,
            first: CothPair(Trig),
            smoke_a1: 0.4,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-04",
            item: 4,
            n: 2,
            ell: 1,
            first: CothPair(Hyper),
            smoke_a1: 1.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-05",
            item: 5,
            n: 3,
            ell: 2,
            first: CothPair(Parabolic),
            smoke_a1: 0.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-06",
            item: 6,
            n: 3,
            ell: 2,
            first: CothPair(Hyper),
            smoke_a1: 1.0,
            notes: vec![
                "first block restored to the paired hyperbolic form; the display \
                 drops the -i/sqrt(4a^2-1) term and one weight",
            ],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-07",
            item: 7,
            n: 3,
            ell: 2,
            first: CothPair(Trig),
            smoke_a1: 0.4,
            notes: vec![],
        }),
        ch_wp_08(),
        ch_wp(ChWpSpec {
            id: "ch-wp-09",
            item: 9,
            n: 3,
            ell: 1,
            first: BareReal,
            smoke_a1: 1.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-10",
            item: 10,
            n: 3,
            ell: 1,
            first: CothPair(Parabolic),
            smoke_a1: 0.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-11",
            item: 11,
            n: 5,
            ell: 2,
            first: CothPair(Hyper),
            smoke_a1: 1.0,
            notes: vec!["second-component amplitude read as 2 a1 (displayed 2 a2)"],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-12",
            item: 12,
            n: 5,
            ell: 2,
            first: CothPair(Trig),
            smoke_a1: 0.4,
            notes: vec![
                "first block read with trigonometric functions of sqrt(1-4a^2); \
                 the displayed hyperbolic pairing breaks the quadric",
            ],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-13",
            item: 13,
            n: 7,
            ell: 3,
            first: Triple,
            smoke_a1: 0.9,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-14",
            item: 14,
            n: 4,
            ell: 2,
            first: BareReal,
            smoke_a1: 1.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-15",
            item: 15,
            n: 4,
            ell: 2,
            first: CothPair(Parabolic),
            smoke_a1: 0.0,
            notes: vec!["trailing cone component restored (required by the quadric)"],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-16",
            item: 16,
            n: 4,
            ell: 2,
            first: CothPair(Hyper),
            smoke_a1: 1.0,
            notes: vec![
                "second-component amplitude read as 2 a1; trailing cone component restored",
            ],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-17",
            item: 17,
            n: 4,
            ell: 2,
            first: CothPair(Trig),
            smoke_a1: 0.4,
            notes: vec![
                "first block read with trigonometric functions; trailing cone \
                 component restored",
            ],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-18",
            item: 18,
            n: 6,
            ell: 3,
            first: Triple,
            smoke_a1: 0.9,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-19",
            item: 19,
            n: 5,
            ell: 3,
            first: CothPair(Parabolic),
            smoke_a1: 0.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-20",
            item: 20,
            n: 5,
            ell: 3,
            first: CothPair(Hyper),
            smoke_a1: 1.0,
            notes: vec![],
        }),
        ch_wp(ChWpSpec {
            id: "ch-wp-21",
            item: 21,
            n: 5,
            ell: 3,
            first: CothPair(Trig),
            smoke_a1: 0.4,
            notes: vec![],
        }),
    ];
    out.sort_by_key(|f| f.id);
    out
}

// ---------------------------------------------------------------------------
// type I surfaces in CH^2
// ---------------------------------------------------------------------------

/// The displayed type I charts are the adapted charts scaled by `1/b`
/// (numerically, `h(d_j, d_j) = b J d_j` in the displayed coordinates), so
/// every canonical entry evaluates the display at `(x/b, y/b)`. In the
/// adapted chart the twistor profile is the base pair with `c = sqrt2 / b`.
fn sec_domain(b_floor: f64, half_width: f64) -> DomainSpec {
    let lip = 1.5 / b_floor;
    DomainSpec {
        intervals: vec![(-half_width, half_width), (-half_width, half_width)],
        singular: vec![SingularLocus {
            desc: "cos((x + y)/b) != 0",
            lipschitz: lip,
            expr: Arc::new(|p, q| {
                let b = p.get("b").unwrap_or(2.0);
                ((q[0] + q[1]) / b).cos()
            }),
        }],
    }
}

fn conformal_metric(profile: fn(f64) -> f64) -> MetricFn {
    Arc::new(move |p: &ParamSet, q: &[f64]| {
        let b = p.get("b").unwrap_or(2.0);
        let w = profile((q[0] + q[1]) / b);
        let f2 = 2.0 / (b * b) * w * w;
        vec![f2, 0.0, 0.0, f2]
    })
}

fn scaled_base_twistor(solution_id: &'static str) -> TwistorRef {
    TwistorRef {
        solution_id,
        map_params: Arc::new(|p: &ParamSet| {
            let b = p.get("b").unwrap_or(2.0);
            ParamSet::from_pairs(&[("c", std::f64::consts::SQRT_2 / b)])
        }),
    }
}

fn ch2_type1(which: usize) -> ImmersionFamily {
    let ids = [
        "ch2-type1-1",
        "ch2-type1-2",
        "ch2-type1-3",
        "ch2-type1-4",
        "ch2-type1-5",
    ];
    let lineages = [
        "type I surfaces in CH^2, first family",
        "type I surfaces in CH^2, second family",
        "type I surfaces in CH^2, third family",
        "type I surfaces in CH^2, fourth family",
        "type I surfaces in CH^2, fifth family",
    ];
    let mut fam = base_ch(ids[which - 1], lineages[which - 1], 2);
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.tier = Tier::A;
    fam.adapted = true;
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    match which {
        1 => {
            fam.param_schema = vec![ParamSpec {
                name: "b",
                constraint: "b > 2",
                sample_range: (2.3, 4.0),
            }];
            fam.admissibility = vec![("b > 2", Arc::new(|p: &ParamSet| p.get("b") > Some(2.0)))];
            fam.domain = sec_domain(2.3, 1.3);
            fam.evaluator = Arc::new(|p, q| {
                let b = p.req("b").unwrap();
                let alpha = (0.25 * b * b - 1.0).sqrt();
                let (s, t) = ((q[0] + q[1]) / b, (q[0] - q[1]) / b);
                let sec = 1.0 / s.cos();
                let phase = ei(0.5 * b * s);
                let (sn, cs) = (alpha * t).sin_cos();
                vec![
                    (I * (0.5 * b) - s.tan()) / alpha,
                    phase * (sec * cs) / alpha,
                    phase * (sec * sn) / alpha,
                ]
            });
            fam.advertised_metric = Some(conformal_metric(|s| 1.0 / s.cos()));
            fam.advertised_twistor = Some(scaled_base_twistor("pair-sec-base"));
            fam.smoke = ParamSet::from_pairs(&[("b", 3.0)]);
        }
        2 => {
            fam.param_schema = vec![ParamSpec {
                name: "b",
                constraint: "0 < b < 2",
                sample_range: (0.4, 1.7),
            }];
            fam.admissibility = vec![(
                "0 < b < 2",
                Arc::new(|p: &ParamSet| p.get("b").is_some_and(|b| b > 0.0 && b < 2.0)),
            )];
            fam.domain = sec_domain(0.4, 0.24);
            fam.evaluator = Arc::new(|p, q| {
                let b = p.req("b").unwrap();
                let alpha = (1.0 - 0.25 * b * b).sqrt();
                let (s, t) = ((q[0] + q[1]) / b, (q[0] - q[1]) / b);
                let sec = 1.0 / s.cos();
                let phase = ei(0.5 * b * s);
                vec![
                    phase * (sec * (alpha * t).cosh()) / alpha,
                    (I * (0.5 * b) - s.tan()) / alpha,
                    phase * (sec * (alpha * t).sinh()) / alpha,
                ]
            });
            fam.advertised_metric = Some(conformal_metric(|s| 1.0 / s.cos()));
            fam.advertised_twistor = Some(scaled_base_twistor("pair-sec-base"));
            fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
        }
        3 => {
            // parameter-free: the adapted chart sits at the fixed scale b = 2
            fam.domain = sec_domain(2.0, 1.2);
            fam.evaluator = Arc::new(|_, q| {
                let (s, t) = ((q[0] + q[1]) / 2.0, (q[0] - q[1]) / 2.0);
                let sec = 1.0 / s.cos();
                let g = c(0.5 * t * t) + (-2.0 * I * s).exp() / 4.0 - I * (0.5 * s);
                let pre = ei(s) * sec;
                vec![pre * (g + 0.75), pre * t, pre * I * (g - 0.25)]
            });
            fam.advertised_metric = Some(conformal_metric(|s| 1.0 / s.cos()));
            fam.advertised_twistor = Some(scaled_base_twistor("pair-sec-base"));
            fam.smoke = ParamSet::new();
        }
        4 => {
            fam.param_schema = vec![ParamSpec {
                name: "b",
                constraint: "b > 0",
                sample_range: (0.5, 2.0),
            }];
            fam.admissibility = vec![("b > 0", Arc::new(|p: &ParamSet| p.get("b") > Some(0.0)))];
            fam.domain = DomainSpec {
                intervals: vec![(0.2, 1.0), (0.2, 1.0)],
                singular: vec![SingularLocus {
                    desc: "x + y != 0",
                    lipschitz: 1.5,
                    expr: Arc::new(|_, q| q[0] + q[1]),
                }],
            };
            fam.evaluator = Arc::new(|p, q| {
                let b = p.req("b").unwrap();
                let alpha = (0.25 * b * b + 1.0).sqrt();
                let (s, t) = ((q[0] + q[1]) / b, (q[0] - q[1]) / b);
                let csch = 1.0 / s.sinh();
                let phase = ei(0.5 * b * s);
                let (sn, cs) = (alpha * t).sin_cos();
                vec![
                    (I * (0.5 * b) + 1.0 / s.tanh()) / alpha,
                    phase * (csch * cs) / alpha,
                    phase * (csch * sn) / alpha,
                ]
            });
            fam.advertised_metric = Some(conformal_metric(|s| 1.0 / s.sinh()));
            fam.advertised_twistor = Some(scaled_base_twistor("pair-csch-base"));
            fam.notes = vec![
                "denominators read as sinh(s) to close the quadric; the display \
                 shows cosh(s)",
            ];
            fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
        }
        5 => {
            fam.domain = DomainSpec {
                intervals: vec![(0.3, 2.0), (0.3, 2.0)],
                singular: vec![SingularLocus {
                    desc: "x + y != 0",
                    lipschitz: 1.5,
                    expr: Arc::new(|_, q| q[0] + q[1]),
                }],
            };
            fam.evaluator = Arc::new(|_, q| {
                let s = q[0] + q[1];
                let r2 = 2.0_f64.sqrt();
                vec![c(2.0 / s) + I, r2 * ei(q[0]) / s, r2 * ei(q[1]) / s]
            });
            fam.advertised_metric = Some(Arc::new(|_p: &ParamSet, q: &[f64]| {
                let s = q[0] + q[1];
                let f2 = 2.0 / (s * s);
                vec![f2, 0.0, 0.0, f2]
            }) as MetricFn);
            fam.advertised_twistor = Some(TwistorRef {
                solution_id: "pair-recip-base",
                map_params: Arc::new(|_| ParamSet::new()),
            });
            fam.smoke = ParamSet::new();
        }
        _ => unreachable!(),
    }
    fam
}

// ---------------------------------------------------------------------------
// type II surfaces in CH^2
// ---------------------------------------------------------------------------

fn m_param(range: (f64, f64)) -> (Vec<ParamSpec>, Vec<AdmissibilityRule>) {
    (
        vec![ParamSpec {
            name: "m",
            constraint: "m > 0, m != 1",
            sample_range: range,
        }],
        vec![(
            "m > 0, m != 1",
            Arc::new(|p: &ParamSet| p.get("m").is_some_and(|m| m > 0.0 && m != 1.0)),
        )],
    )
}

fn ch2_type2_a() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch2-type2-a",
        "type II traveling-wave surfaces in CH^2, reciprocal family",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.tier = Tier::A;
    fam.adapted = true;
    let (schema, admiss) = m_param((1.3, 2.5));
    fam.param_schema = schema;
    fam.admissibility = admiss;
    fam.domain = DomainSpec {
        intervals: vec![(0.3, 2.0), (0.3, 2.0)],
        singular: vec![SingularLocus {
            desc: "m^2 x + y != 0",
            lipschitz: 6.0,
            expr: Arc::new(|p, q| p.req("m").unwrap().powi(2) * q[0] + q[1]),
        }],
    };
    fam.evaluator = Arc::new(|p, q| {
        let m = p.req("m").unwrap();
        let w = m * m * q[0] + q[1];
        let s1 = (1.0 + m * m).sqrt();
        vec![
            c(1.0) - I * ((1.0 + m * m) / w),
            m * s1 / w * ei(q[0]),
            s1 / w * ei(q[1]),
        ]
    });
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let m = p.req("m").unwrap();
        let w = m * m * q[0] + q[1];
        let s = 1.0 + m * m;
        vec![m * m * s / (w * w), 0.0, 0.0, s / (w * w)]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-recip-scaled",
        map_params: Arc::new(|p: &ParamSet| ParamSet::from_pairs(&[("m", p.req("m").unwrap())])),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.smoke = ParamSet::from_pairs(&[("m", 2.0)]);
    fam
}

fn ch2_type2_b() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch2-type2-b",
        "type II traveling-wave surfaces in CH^2, degenerate sec family",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.tier = Tier::A;
    fam.adapted = true;
    fam.domain = DomainSpec {
        intervals: vec![(-0.5, 0.5), (-0.5, 0.5)],
        singular: vec![SingularLocus {
            desc: "cos((x + 3y) / (2 sqrt3)) != 0",
            lipschitz: 1.0,
            expr: Arc::new(|_, q| ((q[0] + 3.0 * q[1]) / (2.0 * 3.0_f64.sqrt())).cos()),
        }],
    };
    fam.evaluator = Arc::new(|_, q| {
        let (x, y) = (q[0], q[1]);
        let v = (x + 3.0 * y) / (2.0 * 3.0_f64.sqrt());
        let sec = 1.0 / v.cos();
        let phase = ei(0.5 * (x + y));
        vec![
            (c(0.5 * (x - y)) + 2.0 * I) * phase * sec,
            c(0.5 * (x - y)) * phase * sec,
            c(3.0_f64.sqrt()) + 2.0 * I * v.tan(),
        ]
    });
    fam.advertised_metric = Some(Arc::new(|_p: &ParamSet, q: &[f64]| {
        let v = (q[0] + 3.0 * q[1]) / (2.0 * 3.0_f64.sqrt());
        let s2 = 1.0 / (v.cos() * v.cos());
        vec![s2 / 3.0, 0.0, 0.0, s2]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-sec-scaled",
        map_params: Arc::new(|_| ParamSet::from_pairs(&[("c", 1.0), ("m", 1.0 / 3.0_f64.sqrt())])),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.notes = vec![
        "sec factor applied to the first two components only, matching the \
         general sec family at m^2 = 1/3; the display wraps sech around all three",
    ];
    fam.smoke = ParamSet::new();
    fam
}

fn ch2_type2_c() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch2-type2-c",
        "type II traveling-wave surfaces in CH^2, sec family (hyperbolic cross factor)",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.adapted = true;
    fam.param_schema = vec![ParamSpec {
        name: "m",
        constraint: "3 m^2 > 1, m != 1",
        sample_range: (1.2, 2.2),
    }];
    fam.admissibility = vec![(
        "3 m^2 > 1, m != 1",
        Arc::new(|p: &ParamSet| {
            p.get("m")
                .is_some_and(|m| 3.0 * m * m > 1.0 && m != 1.0 && m > 0.0)
        }),
    )];
    fam.domain = DomainSpec {
        intervals: vec![(0.05, 0.5), (0.05, 0.5)],
        singular: vec![SingularLocus {
            desc: "cos((m^2 x + y)/sqrt(1+m^2)) != 0",
            lipschitz: 3.0,
            expr: Arc::new(|p, q| {
                let m = p.req("m").unwrap();
                ((m * m * q[0] + q[1]) / (1.0 + m * m).sqrt()).cos()
            }),
        }],
    };
    fam.evaluator = Arc::new(|p, q| {
        let m = p.req("m").unwrap();
        let (x, y) = (q[0], q[1]);
        let s1 = (1.0 + m * m).sqrt();
        let r3 = (3.0 * m * m - 1.0).sqrt();
        let u = (m * m * x + y) / s1;
        let alpha = r3 / (2.0 * s1);
        let tt = alpha * (x - y);
        let sec = 1.0 / u.cos();
        let phase = ei(0.5 * (x + y));
        vec![
            phase * sec * (c(r3 * s1 * tt.cosh()) + I * ((m * m - 1.0) * tt.sinh())) / (m * r3),
            2.0 * m / r3 * phase * sec * tt.sinh(),
            (c(1.0) + I * (s1 * u.tan())) / m,
        ]
    });
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let m = p.req("m").unwrap();
        let u = (m * m * q[0] + q[1]) / (1.0 + m * m).sqrt();
        let s2 = 1.0 / (u.cos() * u.cos());
        vec![m * m * s2, 0.0, 0.0, s2]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-sec-scaled",
        map_params: Arc::new(|p: &ParamSet| {
            ParamSet::from_pairs(&[("c", 1.0), ("m", p.req("m").unwrap())])
        }),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.smoke = ParamSet::from_pairs(&[("m", 2.0)]);
    fam
}

fn ch2_type2_d(canonical: bool) -> ImmersionFamily {
    let id: &'static str = if canonical {
        "ch2-type2-d"
    } else {
        "ch2-type2-d-alt"
    };
    let mut fam = base_ch(
        id,
        "type II traveling-wave surfaces in CH^2, sec family (trigonometric cross factor)",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.adapted = true;
    fam.param_schema = vec![ParamSpec {
        name: "m",
        constraint: "3 m^2 < 1, m > 0",
        sample_range: (0.3, 0.52),
    }];
    fam.admissibility = vec![(
        "3 m^2 < 1, m > 0",
        Arc::new(|p: &ParamSet| p.get("m").is_some_and(|m| m > 0.0 && 3.0 * m * m < 1.0)),
    )];
    fam.domain = DomainSpec {
        intervals: vec![(0.05, 0.8), (0.05, 0.8)],
        singular: vec![SingularLocus {
            desc: "cos((m^2 x + y)/sqrt(1+m^2)) != 0",
            lipschitz: 3.0,
            expr: Arc::new(|p, q| {
                let m = p.req("m").unwrap();
                ((m * m * q[0] + q[1]) / (1.0 + m * m).sqrt()).cos()
            }),
        }],
    };
    fam.evaluator = Arc::new(move |p, q| {
        let m = p.req("m").unwrap();
        let (x, y) = (q[0], q[1]);
        let s1 = (1.0 + m * m).sqrt();
        let r3 = (1.0 - 3.0 * m * m).sqrt();
        let u = (m * m * x + y) / s1;
        let beta = r3 / (2.0 * s1);
        let tau = beta * (x - y);
        let sec = 1.0 / u.cos();
        let phase = ei(0.5 * (x + y));
        let cross = if canonical { tau.sin() } else { tau.sinh() };
        vec![
            phase * sec * (c(r3 * s1 * tau.cos()) - I * ((1.0 - m * m) * tau.sin())) / (m * r3),
            2.0 * m / r3 * phase * sec * cross,
            (c(1.0) + I * (s1 * u.tan())) / m,
        ]
    });
    if canonical {
        fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
            let m = p.req("m").unwrap();
            let u = (m * m * q[0] + q[1]) / (1.0 + m * m).sqrt();
            let s2 = 1.0 / (u.cos() * u.cos());
            vec![m * m * s2, 0.0, 0.0, s2]
        }) as MetricFn);
        fam.advertised_twistor = Some(TwistorRef {
            solution_id: "pair-sec-scaled",
            map_params: Arc::new(|p: &ParamSet| {
                ParamSet::from_pairs(&[("c", 1.0), ("m", p.req("m").unwrap())])
            }),
        });
        fam.advertised_nullity = Some(NullitySpec::Exact(0));
        fam.notes = vec![
            "analytic continuation of the hyperbolic sibling through 3m^2 = 1: \
             cross factor sin(beta(x-y)) and the imaginary part entering with \
             -(1-m^2); the display shows sinh and +(1-m^2)",
        ];
    } else {
        fam.variant_of = Some("ch2-type2-d");
        fam.expected_fail = true;
        fam.notes = vec!["verbatim sinh cross factor; fails the quadric check"];
    }
    fam.smoke = ParamSet::from_pairs(&[("m", 0.4)]);
    fam
}

fn ch2_type2_e() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch2-type2-e",
        "type II traveling-wave surfaces in CH^2, csch family",
        2,
    );
    fam.ell = 2;
    fam.twisted_indices = vec![0, 1];
    fam.tier = Tier::A;
    fam.adapted = true;
    let (schema, admiss) = m_param((1.3, 2.5));
    fam.param_schema = schema;
    fam.admissibility = admiss;
    fam.domain = DomainSpec {
        intervals: vec![(0.1, 0.5), (0.3, 1.5)],
        singular: vec![SingularLocus {
            desc: "m^2 x + y != 0",
            lipschitz: 7.0,
            expr: Arc::new(|p, q| p.req("m").unwrap().powi(2) * q[0] + q[1]),
        }],
    };
    fam.evaluator = Arc::new(|p, q| {
        let m = p.req("m").unwrap();
        let (x, y) = (q[0], q[1]);
        let s1 = (1.0 + m * m).sqrt();
        let s5 = (1.0 + 5.0 * m * m).sqrt();
        let u = (m * m * x + y) / s1;
        let beta = s5 / (2.0 * s1);
        let t = x - y;
        let csch = 1.0 / u.sinh();
        let root = (2.0 + m * m).sqrt();
        let phase = ei(0.5 * (x + y));
        let (sn, cs) = (beta * t).sin_cos();
        vec![
            csch / root * (c(u.sinh()) - I * (s1 * u.cosh())),
            csch / root * phase * (c(s1 * cs) + I * ((m * m - 1.0) * sn / s5)),
            csch / root * (2.0 * m * root / s5) * phase * sn,
        ]
    });
    fam.advertised_metric = Some(Arc::new(|p: &ParamSet, q: &[f64]| {
        let m = p.req("m").unwrap();
        let u = (m * m * q[0] + q[1]) / (1.0 + m * m).sqrt();
        let s2 = 1.0 / (u.sinh() * u.sinh());
        vec![m * m * s2, 0.0, 0.0, s2]
    }) as MetricFn);
    fam.advertised_twistor = Some(TwistorRef {
        solution_id: "pair-csch-scaled",
        map_params: Arc::new(|p: &ParamSet| {
            ParamSet::from_pairs(&[("c", 1.0), ("m", p.req("m").unwrap())])
        }),
    });
    fam.advertised_nullity = Some(NullitySpec::Exact(0));
    fam.smoke = ParamSet::from_pairs(&[("m", 2.0)]);
    fam
}

// ---------------------------------------------------------------------------
// CH^3 families with positive relative nullity
// ---------------------------------------------------------------------------

fn ch3_null_1() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-1",
        "constant-curvature classification in CH^3 with positive nullity, item 1 (totally geodesic)",
        3,
    );
    fam.domain.intervals = vec![(0.3, 1.5), (0.3, 1.3), (-2.0, 2.0)];
    fam.evaluator = Arc::new(|_, q| {
        let (t1, t2, t3) = (q[0], q[1], q[2]);
        vec![
            c(t1.cosh()),
            c(t1.sinh() * t2.cos()),
            c(t1.sinh() * t2.sin() * t3.cos()),
            c(t1.sinh() * t2.sin() * t3.sin()),
        ]
    });
    fam.analytic_jet = Some(Arc::new(|_, q| {
        let comps: Vec<Vec<(usize, Fk)>> = vec![
            vec![(0, Fk::Cosh)],
            vec![(0, Fk::Sinh), (1, Fk::Cos)],
            vec![(0, Fk::Sinh), (1, Fk::Sin), (2, Fk::Cos)],
            vec![(0, Fk::Sinh), (1, Fk::Sin), (2, Fk::Sin)],
        ];
        real_product_jet(&comps, 3, q, crate::ambient::Signature::lorentzian(4))
    }));
    fam.advertised_metric = Some(Arc::new(|_p: &ParamSet, q: &[f64]| {
        let (sh, s2) = (q[0].sinh(), q[1].sin());
        vec![
            1.0,
            0.0,
            0.0,
            0.0,
            sh * sh,
            0.0,
            0.0,
            0.0,
            sh * sh * s2 * s2,
        ]
    }) as MetricFn);
    fam.advertised_nullity = Some(NullitySpec::Exact(3));
    fam.adapted = true; // ell = 0: full form vanishes
    fam.smoke = ParamSet::new();
    fam
}

fn moebius_domain() -> DomainSpec {
    DomainSpec {
        intervals: vec![(-2.0, 2.0), (-0.45, 0.45), (-0.45, 0.45)],
        singular: vec![SingularLocus {
            desc: "1 - y^2 - z^2 != 0",
            lipschitz: 2.0,
            expr: Arc::new(|_, q| 1.0 - q[1] * q[1] - q[2] * q[2]),
        }],
    }
}

fn ch3_null_2() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-2",
        "constant-curvature classification in CH^3 with positive nullity, item 2",
        3,
    );
    fam.param_schema = vec![ParamSpec {
        name: "b",
        constraint: "b real",
        sample_range: (-1.0, 1.0),
    }];
    fam.domain = moebius_domain();
    fam.evaluator = Arc::new(|p, q| {
        let b = p.req("b").unwrap();
        let (s, y, z) = (q[0], q[1], q[2]);
        let pb = (1.0 + b * b).sqrt();
        let pp = 1.0 + y * y + z * z;
        let e = 2.0 * b * y + pb * pp;
        let d = 2.0 * (1.0 - y * y - z * z);
        let phase = ei(0.5 * s);
        vec![
            (c(s) + 2.0 * I) * phase * (e / d),
            phase * (s * e / d),
            c((4.0 * pb * y + 2.0 * b * pp) / d),
            c(4.0 * z / d),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
    fam
}

fn ch3_null_3() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-3",
        "constant-curvature classification in CH^3 with positive nullity, item 3",
        3,
    );
    fam.param_schema = vec![
        ParamSpec {
            name: "a",
            constraint: "4a^2 - b^2 > 1",
            sample_range: (0.8, 1.5),
        },
        ParamSpec {
            name: "b",
            constraint: "4a^2 - b^2 > 1",
            sample_range: (0.3, 1.0),
        },
    ];
    fam.admissibility = vec![(
        "4a^2 - b^2 > 1",
        Arc::new(|p: &ParamSet| {
            let (a, b) = (p.req("a").unwrap_or(0.0), p.req("b").unwrap_or(0.0));
            4.0 * a * a - b * b > 1.0
        }),
    )];
    let mut dom = moebius_domain();
    dom.singular.push(SingularLocus {
        desc: "b y + a (1 + y^2 + z^2) != 0 (twisted conformal factor)",
        lipschitz: 4.0,
        expr: Arc::new(|p, q| {
            let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
            b * q[1] + a * (1.0 + q[1] * q[1] + q[2] * q[2])
        }),
    });
    fam.domain = dom;
    fam.evaluator = Arc::new(|p, q| {
        let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
        let (s, y, z) = (q[0], q[1], q[2]);
        let disc = (4.0 * a * a - b * b).sqrt();
        let delta = 0.5 * (4.0 * a * a - b * b - 1.0).sqrt();
        let pp = 1.0 + y * y + z * z;
        let e = b * y + a * pp;
        let f = 1.0 - y * y - z * z;
        let phase = ei(0.5 * s);
        let (sh, chh) = ((delta * s).sinh(), (delta * s).cosh());
        vec![
            phase * (e / (delta * disc * f)) * (c(2.0 * delta * chh) - I * sh),
            phase * (e * sh / (delta * f)),
            c((4.0 * a * y + b * pp) / (disc * f)),
            c(2.0 * z / f),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.notes = vec![
        "third component read as 4ay + b(1+y^2+z^2); the displayed minus sign \
         breaks the quadric",
    ];
    fam.smoke = ParamSet::from_pairs(&[("a", 1.0), ("b", 1.0)]);
    fam
}

fn ch3_null_4() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-4",
        "constant-curvature classification in CH^3 with positive nullity, item 4",
        3,
    );
    fam.param_schema = vec![
        ParamSpec {
            name: "a",
            constraint: "b^2 < 4a^2 < 1 + b^2",
            sample_range: (0.55, 0.7),
        },
        ParamSpec {
            name: "b",
            constraint: "b^2 < 4a^2 < 1 + b^2",
            sample_range: (0.9, 1.1),
        },
    ];
    fam.admissibility = vec![(
        "b^2 < 4a^2 < 1 + b^2",
        Arc::new(|p: &ParamSet| {
            let (a, b) = (p.req("a").unwrap_or(0.0), p.req("b").unwrap_or(0.0));
            let fa = 4.0 * a * a;
            b * b < fa && fa < 1.0 + b * b
        }),
    )];
    let mut dom = moebius_domain();
    dom.singular.push(SingularLocus {
        desc: "b y + a (1 + y^2 + z^2) != 0 (twisted conformal factor)",
        lipschitz: 4.0,
        expr: Arc::new(|p, q| {
            let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
            b * q[1] + a * (1.0 + q[1] * q[1] + q[2] * q[2])
        }),
    });
    fam.domain = dom;
    fam.evaluator = Arc::new(|p, q| {
        let (a, b) = (p.req("a").unwrap(), p.req("b").unwrap());
        let (s, y, z) = (q[0], q[1], q[2]);
        let disc = (4.0 * a * a - b * b).sqrt();
        let gamma = 0.5 * (1.0 + b * b - 4.0 * a * a).sqrt();
        let pp = 1.0 + y * y + z * z;
        let e = b * y + a * pp;
        let f = 1.0 - y * y - z * z;
        let phase = ei(0.5 * s);
        let (sn, cs) = (gamma * s).sin_cos();
        vec![
            phase * (e / (gamma * disc * f)) * (c(2.0 * gamma * cs) - I * sn),
            phase * (e * sn / (gamma * f)),
            c((4.0 * a * y + b * pp) / (disc * f)),
            c(2.0 * z / f),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.notes = vec![
        "admissibility tightened to b^2 < 4a^2: for 4a^2 < b^2 the displayed \
         square roots turn two components imaginary in real slots",
    ];
    fam.smoke = ParamSet::from_pairs(&[("a", 0.6), ("b", 1.0)]);
    fam
}

fn ch3_null_5() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-5",
        "constant-curvature classification in CH^3 with positive nullity, item 5",
        3,
    );
    fam.param_schema = vec![ParamSpec {
        name: "a",
        constraint: "a > 0, a != 1",
        sample_range: (1.2, 2.0),
    }];
    fam.admissibility = vec![(
        "a > 0, a != 1",
        Arc::new(|p: &ParamSet| p.get("a").is_some_and(|a| a > 0.0 && a != 1.0)),
    )];
    fam.domain = moebius_domain();
    fam.evaluator = Arc::new(|p, q| {
        let a = p.req("a").unwrap();
        let (s, y, z) = (q[0], q[1], q[2]);
        // complex square root keeps both branches a > 1 and a < 1 valid
        let ra = Complex64::new(a * a - 1.0, 0.0).sqrt();
        let w = (1.0 + y) * (1.0 + y) + z * z;
        let pp = 1.0 + y * y + z * z;
        let f = 1.0 - y * y - z * z;
        vec![
            (c(2.0 * y) - a * a * (c(1.0) + I * s) * w) / (ra * f),
            c(2.0 * z / f),
            (c(pp) + I * (a * a * s * w)) / (ra * f),
            a * Complex64::new(0.0, s).exp() * (w / f),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::from_pairs(&[("a", 1.5)]);
    fam
}

fn ch3_null_6() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-6",
        "constant-curvature classification in CH^3 with positive nullity, item 6",
        3,
    );
    fam.domain = moebius_domain();
    fam.evaluator = Arc::new(|_, q| {
        let (s, y, z) = (q[0], q[1], q[2]);
        let w = (1.0 + y) * (1.0 + y) + z * z;
        let f = 1.0 - y * y - z * z;
        let is = I * s;
        vec![
            is / 2.0 + 1.5 - I + (2.0 * I - 3.0 - is + (2.0 * I - 2.0 - is) * y) / f,
            c(2.0 * z / f),
            is / 2.0 - 0.5 - I + (1.0 + 2.0 * I - is + (2.0 + 2.0 * I - is) * y) / f,
            Complex64::new(0.0, s).exp() * (w / f),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::new();
    fam
}

fn cone_sec_domain() -> DomainSpec {
    DomainSpec {
        intervals: vec![(0.3, 1.5), (-0.6, 0.6), (-1.0, 1.0)],
        singular: vec![SingularLocus {
            desc: "cos s != 0",
            lipschitz: 1.0,
            expr: Arc::new(|_, q| q[1].cos()),
        }],
    }
}

fn ch3_null_7() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-7",
        "constant-curvature classification in CH^3 with positive nullity, item 7",
        3,
    );
    fam.param_schema = vec![ParamSpec {
        name: "b",
        constraint: "0 < 2b < 1",
        sample_range: (0.15, 0.45),
    }];
    fam.admissibility = vec![(
        "0 < 2b < 1",
        Arc::new(|p: &ParamSet| p.get("b").is_some_and(|b| b > 0.0 && 2.0 * b < 1.0)),
    )];
    fam.domain = cone_sec_domain();
    fam.evaluator = Arc::new(|p, q| {
        let b = p.req("b").unwrap();
        let (x, s, t) = (q[0], q[1], q[2]);
        let sb = (2.0 * b).sqrt();
        let rb = (1.0 - 2.0 * b).sqrt();
        let chi = rb / sb;
        let sec = 1.0 / s.cos();
        let phase = (I * (s / sb)).exp();
        let ch = x.cosh();
        let (sn, cs) = (chi * t).sin_cos();
        vec![
            ch * (c(sb * s.tan()) - I) / rb,
            ch * sb * phase * (sec * cs) / rb,
            ch * sb * phase * (sec * sn) / rb,
            c(x.sinh()),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::from_pairs(&[("b", 0.3)]);
    fam
}

fn ch3_null_8() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-8",
        "constant-curvature classification in CH^3 with positive nullity, item 8",
        3,
    );
    fam.param_schema = vec![ParamSpec {
        name: "b",
        constraint: "2b > 1",
        sample_range: (0.7, 1.5),
    }];
    fam.admissibility = vec![(
        "2b > 1",
        Arc::new(|p: &ParamSet| p.get("b").is_some_and(|b| 2.0 * b > 1.0)),
    )];
    fam.domain = cone_sec_domain();
    fam.evaluator = Arc::new(|p, q| {
        let b = p.req("b").unwrap();
        let (x, s, t) = (q[0], q[1], q[2]);
        let sb = (2.0 * b).sqrt();
        let rb = (2.0 * b - 1.0).sqrt();
        let chi = rb / sb;
        let sec = 1.0 / s.cos();
        let phase = (I * (s / sb)).exp();
        let ch = x.cosh();
        vec![
            ch * sb * phase * (sec * (chi * t).cosh()) / rb,
            ch * (c(sb * s.tan()) - I) / rb,
            ch * sb * phase * (sec * (chi * t).sinh()) / rb,
            c(x.sinh()),
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.notes = vec![
        "overall prefactor read as 1/sqrt(2b-1): the displayed 1/sqrt(1-2b) is \
         imaginary for 2b > 1 and flips the quadric sign",
    ];
    fam.smoke = ParamSet::from_pairs(&[("b", 1.0)]);
    fam
}

fn ch3_null_9() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-9",
        "constant-curvature classification in CH^3 with positive nullity, item 9",
        3,
    );
    fam.domain = cone_sec_domain();
    fam.evaluator = Arc::new(|_, q| {
        let (x, s, t) = (q[0], q[1], q[2]);
        let w = (2.0 * I * s).exp();
        let nrm = 2.0_f64.sqrt() * (1.0 + w);
        let ch = x.cosh();
        let g = c(s) + I * (t * t);
        vec![
            ch * (I + 2.0 * w * (g + I)) / nrm,
            ch * (I + 2.0 * w * g) / nrm,
            c(x.sinh()),
            ch * (2.0 * 2.0_f64.sqrt() * w * t) / nrm,
        ]
    });
    fam.advertised_nullity = Some(NullitySpec::AtLeast(1));
    fam.smoke = ParamSet::new();
    fam
}

fn ch3_null_10() -> ImmersionFamily {
    let mut fam = base_ch(
        "ch3-null-10",
        "constant-curvature classification in CH^3 with positive nullity, item 10 (cylinder over a type II surface)",
        3,
    );
    fam.domain.intervals = vec![(-1.2, 1.2)];
    fam.composition = Some(CompositionKind::HyperbolicCylinder);
    fam.inner_default = Some("ch2-type2-e");
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
    let mut out = ch_warped_families();
    for which in 1..=5 {
        out.push(ch2_type1(which));
    }
    out.push(ch2_type2_a());
    out.push(ch2_type2_b());
    out.push(ch2_type2_c());
    out.push(ch2_type2_d(true));
    out.push(ch2_type2_d(false));
    out.push(ch2_type2_e());
    out.push(ch3_null_1());
    out.push(ch3_null_2());
    out.push(ch3_null_3());
    out.push(ch3_null_4());
    out.push(ch3_null_5());
    out.push(ch3_null_6());
    out.push(ch3_null_7());
    out.push(ch3_null_8());
    out.push(ch3_null_9());
    out.push(ch3_null_10());
    out
}
