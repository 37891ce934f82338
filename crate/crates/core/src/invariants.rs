//! Full invariant computations.
//!
//! The localization sum for a balanced integrand is a constant function of
//! the torus weights, so instead of symbolic λ arithmetic the engine
//! evaluates the sum at independently sampled exact rational specializations
//! and demands perfect agreement. A specialization that hits a vanishing
//! denominator for some graph is discarded and resampled within a fixed
//! retry budget; two *usable* specializations that disagree are a formula
//! bug and raise an error rather than being resolved silently.
//!
//! Enumerated graph classes can be cached to disk as JSON and strictly
//! revalidated on load: any mismatch (version, degree, structure, canonical
//! key, automorphism order, ordering) marks the cache invalid, and
//! [`load_or_enumerate`] then recomputes and rewrites it instead of
//! crashing.

use crate::exactmath::Rational;
use crate::graphs::{
    enumerate_fixed_graphs, from_hex, to_hex, Edge, GraphClass, GraphError, WeightedColoredTree,
};
use crate::localization::{graph_contribution, ClassSelector, LocalizationError, TorusSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

/// Maximum number of specializations sampled per computation before the
/// run is declared systematically degenerate.
pub const RETRY_BUDGET: u32 = 32;

/// Environment variable overriding the graph-cache directory.
pub const CACHE_DIR_ENV: &str = "CONTACT_CURVES_CACHE_DIR";

/// Default project-local cache directory, used when neither an explicit
/// path nor [`CACHE_DIR_ENV`] is given.
pub const DEFAULT_CACHE_DIR: &str = ".contact-curves-cache";

const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("minimum agreement must be at least 2 (got {0})")]
    AgreementTooLow(usize),
    #[error("selector is not dimension-balanced for degree {0}")]
    UnbalancedSelector(u32),
    #[error(
        "specialization retry budget ({budget}) exhausted with {successes} usable \
         specialization(s); systematic degeneracy indicates a bug"
    )]
    RetryExhausted { budget: u32, successes: usize },
    #[error("usable specializations disagree ({first} vs {second}); refusing to pick one")]
    Disagreement { first: Rational, second: Rational },
    #[error(transparent)]
    Degenerate(#[from] LocalizationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cache(#[from] CacheInvalid),
}

/// A cache file that cannot be trusted: missing, unreadable, wrong version,
/// or failing revalidation. Callers recompute instead of crashing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph cache invalid: {reason}")]
pub struct CacheInvalid {
    pub reason: String,
}

impl CacheInvalid {
    fn new(reason: impl Into<String>) -> CacheInvalid {
        CacheInvalid {
            reason: reason.into(),
        }
    }
}

/// Which invariant to compute at a given degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    /// The contact-curve count N_d.
    Contact,
    /// The count of rational degree-d curves meeting 4d general lines.
    LineIncidence,
    /// An explicit integrand; must still be dimension-balanced.
    Custom(ClassSelector),
}

impl InvariantKind {
    pub fn selector(self, degree: u32) -> ClassSelector {
        match self {
            InvariantKind::Contact => ClassSelector::contact(degree),
            InvariantKind::LineIncidence => ClassSelector::line_incidence(degree),
            InvariantKind::Custom(sel) => sel,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            InvariantKind::Contact => "contact",
            InvariantKind::LineIncidence => "gw-lines",
            InvariantKind::Custom(_) => "custom",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantRequest {
    pub degree: u32,
    pub kind: InvariantKind,
}

impl InvariantRequest {
    pub fn new(degree: u32, kind: InvariantKind) -> Result<InvariantRequest, InvariantError> {
        let req = InvariantRequest { degree, kind };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<(), InvariantError> {
        if self.degree == 0 {
            return Err(InvariantError::DegreeZero);
        }
        if !self.kind.selector(self.degree).is_balanced_for(self.degree) {
            return Err(InvariantError::UnbalancedSelector(self.degree));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub degree: u32,
    pub kind: InvariantKind,
    pub value: Rational,
    pub is_integer: bool,
    pub graph_class_count: usize,
    pub specializations_used: Vec<TorusSpec>,
    pub elapsed_ms: u64,
}

impl InvariantResult {
    /// Render the reporting JSON. `include_timing` controls the presence of
    /// `elapsed_ms`, so reruns with the same seed can be compared
    /// byte-for-byte when it is off.
    pub fn to_json(&self, include_timing: bool) -> serde_json::Value {
        let specs: Vec<Vec<String>> = self
            .specializations_used
            .iter()
            .map(|s| s.lambdas().iter().map(|l| l.to_string()).collect())
            .collect();
        let mut obj = serde_json::json!({
            "degree": self.degree,
            "kind": self.kind.label(),
            "value": {
                "num": self.value.numer().to_string(),
                "den": self.value.denom().to_string(),
            },
            "is_integer": self.is_integer,
            "graph_classes": self.graph_class_count,
            "specializations": specs,
        });
        if include_timing {
            obj.as_object_mut()
                .expect("object literal")
                .insert("elapsed_ms".into(), self.elapsed_ms.into());
        }
        obj
    }
}

/// Deterministically sample four pairwise-distinct nonzero integer weights
/// of magnitude at most 10⁶. The same (seed, attempt) always produces the
/// same specialization; distinct attempts use distinct generator streams.
pub fn sample_specialization(seed: u64, attempt: u32) -> TorusSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    let mut values: Vec<i64> = Vec::with_capacity(4);
    while values.len() < 4 {
        let candidate = rng.gen_range(-1_000_000i64..=1_000_000);
        if candidate != 0 && !values.contains(&candidate) {
            values.push(candidate);
        }
    }
    TorusSpec::new([
        Rational::from_int(values[0]),
        Rational::from_int(values[1]),
        Rational::from_int(values[2]),
        Rational::from_int(values[3]),
    ])
    .expect("sampled weights are pairwise distinct")
}

/// Sum of [`graph_contribution`] over all classes, evaluated in parallel.
/// Exact arithmetic makes the reduction order irrelevant.
pub fn sum_contributions(
    classes: &[GraphClass],
    spec: &TorusSpec,
    selector: ClassSelector,
) -> Result<Rational, LocalizationError> {
    classes
        .par_iter()
        .map(|class| graph_contribution(class, spec, selector))
        .try_reduce(Rational::zero, |a, b| Ok(a + b))
}

/// Sequential twin of [`sum_contributions`], used to check that the
/// parallel reduction changes nothing.
pub fn sum_contributions_sequential(
    classes: &[GraphClass],
    spec: &TorusSpec,
    selector: ClassSelector,
) -> Result<Rational, LocalizationError> {
    let mut total = Rational::zero();
    for class in classes {
        total = total + graph_contribution(class, spec, selector)?;
    }
    Ok(total)
}

/// Compute an invariant by enumerating the graph classes for the requested
/// degree and cross-validating over freshly sampled specializations.
pub fn compute(
    req: &InvariantRequest,
    seed: u64,
    min_agreement: usize,
) -> Result<InvariantResult, InvariantError> {
    req.validate()?;
    let classes = enumerate_fixed_graphs(req.degree)?;
    compute_with_classes(req, &classes, seed, min_agreement)
}

/// Same as [`compute`] but over an already-obtained class list (for
/// instance from [`load_or_enumerate`]).
pub fn compute_with_classes(
    req: &InvariantRequest,
    classes: &[GraphClass],
    seed: u64,
    min_agreement: usize,
) -> Result<InvariantResult, InvariantError> {
    let start = Instant::now();
    req.validate()?;
    if min_agreement < 2 {
        return Err(InvariantError::AgreementTooLow(min_agreement));
    }
    let selector = req.kind.selector(req.degree);

    let mut agreed: Vec<(TorusSpec, Rational)> = Vec::new();
    let mut attempt: u32 = 0;
    while agreed.len() < min_agreement {
        if attempt >= RETRY_BUDGET {
            return Err(InvariantError::RetryExhausted {
                budget: RETRY_BUDGET,
                successes: agreed.len(),
            });
        }
        let spec = sample_specialization(seed, attempt);
        attempt += 1;
        match sum_contributions(classes, &spec, selector) {
            Ok(value) => agreed.push((spec, value)),
            Err(LocalizationError::SpecializationDegenerate(_)) => continue,
            Err(LocalizationError::RepeatedWeight) => continue,
        }
    }

    let value = agreed[0].1.clone();
    for (_, other) in &agreed[1..] {
        if *other != value {
            return Err(InvariantError::Disagreement {
                first: value,
                second: other.clone(),
            });
        }
    }
    Ok(InvariantResult {
        degree: req.degree,
        kind: req.kind,
        value: value.clone(),
        is_integer: value.is_integer(),
        graph_class_count: classes.len(),
        specializations_used: agreed.into_iter().map(|(s, _)| s).collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Compute an invariant at one explicitly supplied specialization. No
/// agreement checking is possible; a degenerate specialization is reported
/// as an error.
pub fn compute_with_spec(
    req: &InvariantRequest,
    spec: &TorusSpec,
) -> Result<InvariantResult, InvariantError> {
    let start = Instant::now();
    req.validate()?;
    let classes = enumerate_fixed_graphs(req.degree)?;
    let selector = req.kind.selector(req.degree);
    let value = sum_contributions(&classes, spec, selector)?;
    Ok(InvariantResult {
        degree: req.degree,
        kind: req.kind,
        value: value.clone(),
        is_integer: value.is_integer(),
        graph_class_count: classes.len(),
        specializations_used: vec![spec.clone()],
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    degree: u32,
    classes: Vec<CacheClass>,
}

#[derive(Serialize, Deserialize)]
struct CacheClass {
    colors: Vec<u8>,
    edges: Vec<[u32; 3]>,
    aut_order: u64,
    canonical: String,
}

/// Cache directory resolution: explicit override, then [`CACHE_DIR_ENV`],
/// then [`DEFAULT_CACHE_DIR`].
pub fn resolve_cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

pub fn cache_path(dir: &Path, degree: u32) -> PathBuf {
    dir.join(format!("graphs-d{}.json", degree))
}

/// Enumerate the classes for `degree` and write them to the cache file in
/// `dir`, returning exactly what was written.
pub fn cache_graphs(dir: &Path, degree: u32) -> Result<Vec<GraphClass>, InvariantError> {
    let classes = enumerate_fixed_graphs(degree)?;
    let file = CacheFile {
        format_version: CACHE_FORMAT_VERSION,
        degree,
        classes: classes
            .iter()
            .map(|class| {
                let t = &class.representative;
                CacheClass {
                    colors: t.colors().to_vec(),
                    edges: t
                        .edges()
                        .iter()
                        .map(|e| [e.u as u32, e.v as u32, e.weight])
                        .collect(),
                    aut_order: class.aut_order,
                    canonical: class.canonical_hex(),
                }
            })
            .collect(),
    };
    let body = serde_json::to_string_pretty(&file)
        .map_err(|e| CacheInvalid::new(format!("serialization failed: {}", e)))?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CacheInvalid::new(format!("cannot create cache directory: {}", e)))?;
    std::fs::write(cache_path(dir, degree), body + "\n")
        .map_err(|e| CacheInvalid::new(format!("cannot write cache file: {}", e)))?;
    Ok(classes)
}

/// Load and strictly revalidate the cached classes for `degree`. Every
/// recorded tree must be a valid canonical representative whose recomputed
/// canonical key and automorphism order match the file, keys must be
/// strictly ascending, and the total weight must equal `degree`.
pub fn load_graphs(dir: &Path, degree: u32) -> Result<Vec<GraphClass>, CacheInvalid> {
    let path = cache_path(dir, degree);
    let body = std::fs::read_to_string(&path)
        .map_err(|e| CacheInvalid::new(format!("cannot read {}: {}", path.display(), e)))?;
    let file: CacheFile = serde_json::from_str(&body)
        .map_err(|e| CacheInvalid::new(format!("malformed JSON: {}", e)))?;
    if file.format_version != CACHE_FORMAT_VERSION {
        return Err(CacheInvalid::new(format!(
            "format version {} (expected {})",
            file.format_version, CACHE_FORMAT_VERSION
        )));
    }
    if file.degree != degree {
        return Err(CacheInvalid::new(format!(
            "file is for degree {} (expected {})",
            file.degree, degree
        )));
    }
    let mut classes = Vec::with_capacity(file.classes.len());
    let mut previous_key: Option<Vec<u8>> = None;
    for (idx, entry) in file.classes.into_iter().enumerate() {
        let edges: Vec<Edge> = entry
            .edges
            .iter()
            .map(|&[u, v, w]| Edge {
                u: u as usize,
                v: v as usize,
                weight: w,
            })
            .collect();
        let tree = WeightedColoredTree::new(entry.colors, edges)
            .map_err(|e| CacheInvalid::new(format!("class {}: {}", idx, e)))?;
        if tree.total_degree() != degree {
            return Err(CacheInvalid::new(format!(
                "class {}: total weight {} (expected {})",
                idx,
                tree.total_degree(),
                degree
            )));
        }
        let rebuilt = GraphClass::from_tree(&tree);
        if rebuilt.representative != tree {
            return Err(CacheInvalid::new(format!(
                "class {}: stored tree is not in canonical form",
                idx
            )));
        }
        match from_hex(&entry.canonical) {
            Some(stored_key) if stored_key == rebuilt.canonical_key => {}
            _ => {
                return Err(CacheInvalid::new(format!(
                    "class {}: canonical key mismatch (stored {}, recomputed {})",
                    idx,
                    entry.canonical,
                    to_hex(&rebuilt.canonical_key)
                )));
            }
        }
        if rebuilt.aut_order != entry.aut_order {
            return Err(CacheInvalid::new(format!(
                "class {}: automorphism order mismatch (stored {}, recomputed {})",
                idx, entry.aut_order, rebuilt.aut_order
            )));
        }
        if let Some(prev) = &previous_key {
            if *prev >= rebuilt.canonical_key {
                return Err(CacheInvalid::new(format!(
                    "class {}: canonical keys not strictly ascending",
                    idx
                )));
            }
        }
        previous_key = Some(rebuilt.canonical_key.clone());
        classes.push(rebuilt);
    }
    Ok(classes)
}

/// Load the cached classes if the cache is present and valid; otherwise
/// recompute and rewrite the cache. Invalid caches are repaired, never
/// fatal.
pub fn load_or_enumerate(dir: &Path, degree: u32) -> Result<Vec<GraphClass>, InvariantError> {
    match load_graphs(dir, degree) {
        Ok(classes) => Ok(classes),
        Err(_) => cache_graphs(dir, degree),
    }
}
