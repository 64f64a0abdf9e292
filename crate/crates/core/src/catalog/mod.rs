//! Registry of every explicit immersion family, with parameter schemas,
//! admissible domains, advertised properties and verification tier.
//!
//! Canonical entries carry the reading of each closed form that survives the
//! residual checks; where the source transcription is ambiguous or visibly
//! slipped, the literal alternative is registered as an `-alt` variant with
//! `variant_of` pointing at the canonical id, so the residuals adjudicate
//! between them instead of anyone asserting a reading silently.

pub mod params;

mod blocks;
mod families_ch;
mod families_cp;
mod families_flat;

pub use crate::ambient::ModelKind;
pub use families_flat::flat_wp_a_with_dims;
pub use params::{ParamError, ParamSet};

use crate::ambient::{AmbientModel, CVector};
use crate::jets::{fd_jet, ChartPoint, Jet2, DEFAULT_STEP};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("no family registered under id `{0}`")]
    NotFound(String),
    #[error("family `{id}`: parameters violate `{constraint}`")]
    Admissibility { id: String, constraint: String },
    #[error("family `{id}`: missing parameter `{name}`")]
    MissingParam { id: String, name: String },
    #[error("chart point violates `{predicate}` (margin {margin})")]
    Domain { predicate: String, margin: f64 },
    #[error("no admissible sample points under margin {margin}")]
    Sampling { margin: f64 },
    #[error("composition mismatch: {0}")]
    Composition(String),
}

/// Verification tier. Tier A families must pass every check hard; tier B
/// families may carry machine-readable discrepancy notes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Tier {
    A,
    B,
}

/// Advertised relative nullity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullitySpec {
    Exact(usize),
    AtLeast(usize),
}

/// One named parameter with its admissibility text and a window for random
/// admissible draws.
pub struct ParamSpec {
    pub name: &'static str,
    pub constraint: &'static str,
    pub sample_range: (f64, f64),
}

pub type ParamPredicate = Arc<dyn Fn(&ParamSet) -> bool + Send + Sync>;
/// Human-readable constraint text plus the predicate enforcing it.
pub type AdmissibilityRule = (&'static str, ParamPredicate);
pub type LocusExpr = Arc<dyn Fn(&ParamSet, &[f64]) -> f64 + Send + Sync>;

/// A locus the chart must stay away from, as a scalar expression whose
/// magnitude must exceed the margin times its Lipschitz bound.
pub struct SingularLocus {
    pub desc: &'static str,
    pub lipschitz: f64,
    pub expr: LocusExpr,
}

/// Per-coordinate sampling box plus singular loci.
pub struct DomainSpec {
    pub intervals: Vec<(f64, f64)>,
    pub singular: Vec<SingularLocus>,
}

pub type Evaluator = Arc<dyn Fn(&ParamSet, &[f64]) -> Vec<Complex64> + Send + Sync>;
pub type AnalyticJetFn = Arc<dyn Fn(&ParamSet, &[f64]) -> Jet2 + Send + Sync>;
/// Advertised induced metric, row-major `n x n`.
pub type MetricFn = Arc<dyn Fn(&ParamSet, &[f64]) -> Vec<f64> + Send + Sync>;

/// Reference to a registered twistor solution: id plus a parameter adapter.
pub struct TwistorRef {
    pub solution_id: &'static str,
    pub map_params: Arc<dyn Fn(&ParamSet) -> ParamSet + Send + Sync>,
}

/// How a composed family wraps its inner surface lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionKind {
    /// `(x, y, z) -> (sin x, Ltilde(y, z) cos x)` over a spherical inner lift.
    SphericalCone,
    /// `(x, y, z) -> (Ptilde(y, z) cosh x, sinh x)` over a hyperbolic inner lift.
    HyperbolicCylinder,
}

/// One explicit construction: parameter schema, domain, closed-form
/// evaluator and advertised properties.
pub struct ImmersionFamily {
    pub id: &'static str,
    /// Which classification item the entry transcribes (human-readable).
    pub lineage: &'static str,
    pub ambient: AmbientModel,
    pub n: usize,
    /// Number of twisted factors in the advertised decomposition.
    pub ell: usize,
    /// Chart indices of the twisted coordinates (length `ell`); empty for
    /// totally geodesic entries.
    pub twisted_indices: Vec<usize>,
    pub param_schema: Vec<ParamSpec>,
    pub admissibility: Vec<AdmissibilityRule>,
    pub domain: DomainSpec,
    pub evaluator: Evaluator,
    pub analytic_jet: Option<AnalyticJetFn>,
    pub advertised_metric: Option<MetricFn>,
    pub advertised_twistor: Option<TwistorRef>,
    pub advertised_nullity: Option<NullitySpec>,
    pub tier: Tier,
    /// Whether the chart is an adapted coordinate system, so the
    /// second-fundamental-form pattern check applies.
    pub adapted: bool,
    pub smoke: ParamSet,
    pub variant_of: Option<&'static str>,
    /// Negative controls and losing variants: failures expected by design,
    /// never counted against the exit status.
    pub expected_fail: bool,
    pub notes: Vec<&'static str>,
    pub composition: Option<CompositionKind>,
    /// Default inner family id for composition entries.
    pub inner_default: Option<&'static str>,
}

impl ImmersionFamily {
    pub fn is_control(&self) -> bool {
        self.id.starts_with("control-")
    }

    fn check_params(&self, params: &ParamSet) -> Result<(), CatalogError> {
        for spec in &self.param_schema {
            if params.get(spec.name).is_none() {
                return Err(CatalogError::MissingParam {
                    id: self.id.to_string(),
                    name: spec.name.to_string(),
                });
            }
        }
        for (constraint, pred) in &self.admissibility {
            if !pred(params) {
                return Err(CatalogError::Admissibility {
                    id: self.id.to_string(),
                    constraint: constraint.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Draw one admissible random parameter set from the schema windows.
    pub fn draw_params(&self, seed: u64) -> Result<ParamSet, CatalogError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            let mut p = ParamSet::new();
            for spec in &self.param_schema {
                p.set(
                    spec.name,
                    rng.gen_range(spec.sample_range.0..spec.sample_range.1),
                );
            }
            if self.check_params(&p).is_ok() {
                return Ok(p);
            }
        }
        Err(CatalogError::Admissibility {
            id: self.id.to_string(),
            constraint: "no admissible draw within schema windows".to_string(),
        })
    }
}

/// Sampling plan for a family domain.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    pub count: usize,
    pub mode: SampleMode,
    pub seed: u64,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SampleMode {
    Uniform,
    Random,
}

impl GridSpec {
    pub fn random(count: usize, seed: u64) -> Self {
        GridSpec {
            count,
            mode: SampleMode::Random,
            seed,
            margin: 0.05,
        }
    }
}

/// A family bound to validated parameters (and, for compositions, to a
/// bound inner surface).
pub struct BoundFamily {
    pub family: Arc<ImmersionFamily>,
    pub params: ParamSet,
    pub inner: Option<Arc<BoundFamily>>,
}

impl BoundFamily {
    pub fn id(&self) -> &'static str {
        self.family.id
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    pub fn ambient(&self) -> AmbientModel {
        self.family.ambient
    }

    /// Evaluate the immersion, wrapping the raw coordinates with the
    /// ambient signature.
    pub fn evaluate(&self, p: &[f64]) -> CVector {
        let raw = self.evaluate_raw(p);
        CVector::new(raw, self.family.ambient.signature())
    }

    fn evaluate_raw(&self, p: &[f64]) -> Vec<Complex64> {
        match self.family.composition {
            None => (self.family.evaluator)(&self.params, p),
            Some(kind) => {
                let inner = self.inner.as_ref().expect("composition has inner");
                let ivals = inner.evaluate_raw(&p[1..]);
                let x = p[0];
                match kind {
                    CompositionKind::SphericalCone => {
                        let mut out = Vec::with_capacity(ivals.len() + 1);
                        out.push(Complex64::new(x.sin(), 0.0));
                        out.extend(ivals.iter().map(|z| z * x.cos()));
                        out
                    }
                    CompositionKind::HyperbolicCylinder => {
                        let mut out: Vec<Complex64> = ivals.iter().map(|z| z * x.cosh()).collect();
                        out.push(Complex64::new(x.sinh(), 0.0));
                        out
                    }
                }
            }
        }
    }

    /// Check that `p` sits inside the admissible domain with `margin` to
    /// spare in every coordinate and against every singular locus.
    pub fn domain_check(&self, p: &[f64], margin: f64) -> Result<(), CatalogError> {
        if self.family.composition.is_some() {
            let (lo, hi) = self.family.domain.intervals[0];
            if p[0] < lo + margin || p[0] > hi - margin {
                return Err(CatalogError::Domain {
                    predicate: "composition slab coordinate out of range".to_string(),
                    margin,
                });
            }
            let inner = self.inner.as_ref().expect("composition has inner");
            return inner.domain_check(&p[1..], margin);
        }
        for (j, &(lo, hi)) in self.family.domain.intervals.iter().enumerate() {
            if p[j] < lo + margin || p[j] > hi - margin {
                return Err(CatalogError::Domain {
                    predicate: format!("coordinate {j} outside [{lo}, {hi}]"),
                    margin,
                });
            }
        }
        for locus in &self.family.domain.singular {
            if (locus.expr)(&self.params, p).abs() < margin * locus.lipschitz {
                return Err(CatalogError::Domain {
                    predicate: locus.desc.to_string(),
                    margin,
                });
            }
        }
        Ok(())
    }

    /// Second-order jet at `p`: analytic derivatives when the family
    /// registers them, central differences with Richardson refinement
    /// otherwise. Enforces a `2 * step` safety margin.
    pub fn jet(&self, p: &ChartPoint, step: f64) -> Result<Jet2, CatalogError> {
        self.domain_check(p.coords(), 2.0 * step)?;
        Ok(self.jet_unchecked(p.coords(), step))
    }

    fn jet_unchecked(&self, p: &[f64], step: f64) -> Jet2 {
        if self.family.composition.is_none() {
            if let Some(aj) = &self.family.analytic_jet {
                return aj(&self.params, p);
            }
        }
        self.fd_jet_at(p, step)
    }

    /// Always take the finite-difference path (cross-check oracle for
    /// families with analytic jets).
    pub fn fd_jet_at(&self, p: &[f64], step: f64) -> Jet2 {
        let sig = self.family.ambient.signature();
        let f = |q: &[f64]| CVector::new(self.evaluate_raw(q), sig.clone());
        fd_jet(&f, p, step)
    }

    /// Jet with the default step, after a domain check.
    pub fn jet_default(&self, p: &ChartPoint) -> Result<Jet2, CatalogError> {
        self.jet(p, DEFAULT_STEP)
    }

    /// Sample admissible chart points; reproducible from the seed.
    pub fn sample_domain(&self, grid: &GridSpec) -> Result<Vec<ChartPoint>, CatalogError> {
        let n = self.family.n;
        let boxes = self.sampling_boxes();
        if boxes
            .iter()
            .any(|&(lo, hi)| lo + grid.margin >= hi - grid.margin)
        {
            return Err(CatalogError::Sampling {
                margin: grid.margin,
            });
        }
        match grid.mode {
            SampleMode::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
                let mut out = Vec::with_capacity(grid.count);
                let mut tries = 0usize;
                while out.len() < grid.count {
                    tries += 1;
                    if tries > 500 * grid.count.max(1) {
                        return Err(CatalogError::Sampling {
                            margin: grid.margin,
                        });
                    }
                    let p: Vec<f64> = boxes
                        .iter()
                        .map(|&(lo, hi)| {
                            let l = lo + grid.margin;
                            let h = hi - grid.margin;
                            rng.gen_range(l..h)
                        })
                        .collect();
                    if self.domain_check(&p, grid.margin).is_ok() {
                        out.push(ChartPoint(p));
                    }
                }
                Ok(out)
            }
            SampleMode::Uniform => {
                let per_axis = (grid.count as f64).powf(1.0 / n as f64).ceil() as usize;
                let per_axis = per_axis.max(2);
                let mut out = Vec::new();
                let mut index = vec![0usize; n];
                loop {
                    let p: Vec<f64> = (0..n)
                        .map(|j| {
                            let (lo, hi) = boxes[j];
                            let l = lo + grid.margin;
                            let h = hi - grid.margin;
                            l + (h - l) * index[j] as f64 / (per_axis - 1) as f64
                        })
                        .collect();
                    if self.domain_check(&p, grid.margin).is_ok() {
                        out.push(ChartPoint(p));
                    }
                    let mut j = 0;
                    loop {
                        index[j] += 1;
                        if index[j] < per_axis {
                            break;
                        }
                        index[j] = 0;
                        j += 1;
                        if j == n {
                            if out.is_empty() {
                                return Err(CatalogError::Sampling {
                                    margin: grid.margin,
                                });
                            }
                            out.truncate(grid.count.max(1));
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }

    fn sampling_boxes(&self) -> Vec<(f64, f64)> {
        match self.family.composition {
            None => self.family.domain.intervals.clone(),
            Some(_) => {
                let mut boxes = vec![self.family.domain.intervals[0]];
                boxes.extend(self.inner.as_ref().unwrap().sampling_boxes());
                boxes
            }
        }
    }
}

/// Filter for registry listings.
#[derive(Debug, Default, Clone, Copy)]
pub struct FamilyFilter {
    pub ambient: Option<ModelKind>,
    pub tier: Option<Tier>,
    pub dim: Option<usize>,
    pub include_variants: bool,
    pub include_controls: bool,
}

impl FamilyFilter {
    pub fn everything() -> Self {
        FamilyFilter {
            include_variants: true,
            include_controls: true,
            ..Default::default()
        }
    }
}

pub struct Registry {
    families: BTreeMap<&'static str, Arc<ImmersionFamily>>,
}

impl Registry {
    fn build() -> Self {
        let mut families: BTreeMap<&'static str, Arc<ImmersionFamily>> = BTreeMap::new();
        for f in families_flat::families()
            .into_iter()
            .chain(families_cp::families())
            .chain(families_ch::families())
        {
            let prev = families.insert(f.id, Arc::new(f));
            assert!(prev.is_none(), "duplicate family id");
        }
        Registry { families }
    }

    pub fn get(&self, id: &str) -> Result<&Arc<ImmersionFamily>, CatalogError> {
        self.families
            .get(id)
            .ok_or_else(|| CatalogError::NotFound(id.to_string()))
    }

    /// Families passing the filter, in deterministic id order.
    pub fn list(&self, filter: &FamilyFilter) -> Vec<&Arc<ImmersionFamily>> {
        self.families
            .values()
            .filter(|f| {
                filter.ambient.is_none_or(|a| f.ambient.kind == a)
                    && filter.tier.is_none_or(|t| f.tier == t)
                    && filter.dim.is_none_or(|d| f.n == d)
                    && (filter.include_variants || f.variant_of.is_none())
                    && (filter.include_controls || !f.is_control())
            })
            .collect()
    }

    /// Canonical (non-variant, non-control) ids: the classification manifest.
    pub fn manifest_ids(&self) -> Vec<&'static str> {
        self.list(&FamilyFilter::default())
            .into_iter()
            .map(|f| f.id)
            .collect()
    }

    /// Bind a family to validated parameters. Composition entries bind
    /// their default inner family, forwarding `inner.*` parameters to it.
    pub fn instantiate(&self, id: &str, params: &ParamSet) -> Result<BoundFamily, CatalogError> {
        let family = self.get(id)?.clone();
        family.check_params(params)?;
        let inner = match family.composition {
            None => None,
            Some(_) => {
                let inner_id = family.inner_default.expect("composition default inner");
                let inner_family = self.get(inner_id)?.clone();
                let mut inner_params = inner_family.smoke.clone();
                for (k, v) in params.iter() {
                    if let Some(name) = k.strip_prefix("inner.") {
                        inner_params.set(name, v);
                    }
                }
                let bound = self.instantiate(inner_id, &inner_params)?;
                Some(Arc::new(bound))
            }
        };
        Ok(BoundFamily {
            family,
            params: params.clone(),
            inner,
        })
    }

    /// Compose a registered composition family with an explicit inner lift.
    pub fn compose_with_inner(
        &self,
        outer_id: &str,
        inner: BoundFamily,
    ) -> Result<BoundFamily, CatalogError> {
        let family = self.get(outer_id)?.clone();
        let kind = family.composition.ok_or_else(|| {
            CatalogError::Composition(format!("`{outer_id}` is not a composition family"))
        })?;
        let want = match kind {
            CompositionKind::SphericalCone => ModelKind::SphericalLift,
            CompositionKind::HyperbolicCylinder => ModelKind::HyperbolicLift,
        };
        if inner.family.ambient.kind != want {
            return Err(CatalogError::Composition(format!(
                "inner family `{}` has ambient {:?}, composition needs {:?}",
                inner.family.id, inner.family.ambient.kind, want
            )));
        }
        if inner.family.n != 2 {
            return Err(CatalogError::Composition(
                "inner family must be a surface lift".to_string(),
            ));
        }
        family.check_params(&family.smoke)?;
        Ok(BoundFamily {
            family,
            params: inner.params.clone(),
            inner: Some(Arc::new(inner)),
        })
    }

    /// Exportable manifest: one JSON object per family.
    pub fn manifest_json(&self, filter: &FamilyFilter) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .list(filter)
            .into_iter()
            .map(|f| {
                serde_json::json!({
                    "id": f.id,
                    "lineage": f.lineage,
                    "ambient": match f.ambient.kind {
                        ModelKind::Flat => "flat",
                        ModelKind::SphericalLift => "spherical-lift",
                        ModelKind::HyperbolicLift => "hyperbolic-lift",
                    },
                    "n": f.n,
                    "ell": f.ell,
                    "tier": f.tier,
                    "params": f.param_schema.iter().map(|p| {
                        serde_json::json!({ "name": p.name, "constraint": p.constraint })
                    }).collect::<Vec<_>>(),
                    "domain": f.domain.intervals.iter().map(|&(lo, hi)| {
                        serde_json::json!([lo, hi])
                    }).collect::<Vec<_>>(),
                    "variant_of": f.variant_of,
                    "expected_fail": f.expected_fail,
                    "notes": f.notes,
                })
            })
            .collect();
        serde_json::Value::Array(entries)
    }
}

/// The process-wide registry, built once.
pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(Registry::build)
}
