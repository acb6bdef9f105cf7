use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::properties::{standard_properties, Property};
use super::{enumerate_filtrations, random_complex, split_seed, Infinities};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::json::ToJson;
use crate::ring::CyclicRing;
use crate::tstruct::ThomasonFiltration;

fn default_rings() -> Vec<u64> {
    vec![4, 12, 30]
}
fn default_window() -> (i64, i64) {
    (-2, 2)
}
fn default_complexes() -> usize {
    500
}
fn default_seed() -> u64 {
    1
}
fn default_degree_range() -> (i64, i64) {
    (-2, 1)
}
fn default_max_factors() -> usize {
    2
}
fn default_infinities() -> Infinities {
    Infinities::NegOnly
}

/// Suite configuration, read from a `"schema": 1` JSON document. Missing
/// fields take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema: u32,
    #[serde(default = "default_rings")]
    pub rings: Vec<u64>,
    /// Finite cutoff window `[a, b]` for enumerated and random filtrations.
    #[serde(default = "default_window")]
    pub window: (i64, i64),
    #[serde(default = "default_infinities")]
    pub infinities: Infinities,
    /// Corpus size for the properties driven by random complexes.
    #[serde(default = "default_complexes")]
    pub complexes: usize,
    /// Per-property corpus size overrides.
    #[serde(default)]
    pub case_counts: BTreeMap<String, usize>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// `None` runs every registered property.
    #[serde(default)]
    pub properties: Option<Vec<String>>,
    #[serde(default = "default_degree_range")]
    pub degree_range: (i64, i64),
    #[serde(default = "default_max_factors")]
    pub max_factors: usize,
    /// Worker threads; 0 lets the pool decide. Does not affect the report.
    #[serde(default, skip_serializing)]
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            schema: 1,
            rings: default_rings(),
            window: default_window(),
            infinities: default_infinities(),
            complexes: default_complexes(),
            case_counts: BTreeMap::new(),
            seed: default_seed(),
            properties: None,
            degree_range: default_degree_range(),
            max_factors: default_max_factors(),
            jobs: 0,
        }
    }
}

impl SuiteConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Parse {
            pointer: "/".into(),
            message: e.to_string(),
        })?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        match value.get("schema").and_then(Value::as_u64) {
            Some(1) => {}
            Some(v) => {
                return Err(Error::Parse {
                    pointer: "/schema".into(),
                    message: format!("unsupported schema version {v}"),
                })
            }
            None => {
                return Err(Error::Parse {
                    pointer: "/schema".into(),
                    message: "missing schema version".into(),
                })
            }
        }
        let config: SuiteConfig = serde_json::from_value(value).map_err(|e| Error::Parse {
            pointer: "/".into(),
            message: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let bad = |pointer: &str, message: String| Error::Parse {
            pointer: pointer.into(),
            message,
        };
        for (i, &n) in self.rings.iter().enumerate() {
            CyclicRing::new(n).map_err(|e| bad(&format!("/rings/{i}"), e.to_string()))?;
        }
        if self.window.0 > self.window.1 {
            return Err(bad("/window", "empty window".into()));
        }
        if self.degree_range.0 > self.degree_range.1 {
            return Err(bad("/degree_range", "empty degree range".into()));
        }
        let known: Vec<&str> = standard_properties().iter().map(|p| p.name()).collect();
        if let Some(props) = &self.properties {
            for (i, p) in props.iter().enumerate() {
                if !known.contains(&p.as_str()) {
                    return Err(bad(&format!("/properties/{i}"), format!("unknown property \"{p}\"")));
                }
            }
        }
        for name in self.case_counts.keys() {
            if !known.contains(&name.as_str()) {
                return Err(bad(&format!("/case_counts/{name}"), format!("unknown property \"{name}\"")));
            }
        }
        Ok(())
    }

    /// Corpus size for one property.
    pub fn corpus(&self, property: &str) -> usize {
        self.case_counts.get(property).copied().unwrap_or(self.complexes)
    }
}

/// What a property sees for one ring.
pub struct RingContext<'a> {
    pub ring: CyclicRing,
    pub ring_index: usize,
    pub config: &'a SuiteConfig,
    /// Every filtration in the configured window and infinities.
    pub filtrations: Vec<ThomasonFiltration>,
}

impl RingContext<'_> {
    fn stable_name(name: &str) -> u64 {
        name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
    }

    /// Seed for the `case`-th draw of `property`, independent of scheduling.
    pub fn seed(&self, property: &str, case: usize) -> u64 {
        split_seed(self.config.seed, &[self.ring.modulus(), Self::stable_name(property), case as u64])
    }

    /// The `i`-th complex of the shared random corpus.
    pub fn corpus_complex(&self, i: usize) -> Complex {
        let seed = split_seed(self.config.seed, &[self.ring.modulus(), 0, i as u64]);
        random_complex(&self.ring, self.config.degree_range, self.config.max_factors, seed)
    }
}

/// A failed case: what was tested and what went wrong.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exhibit {
    pub property: String,
    pub modulus: u64,
    pub case: usize,
    pub input: Value,
    pub verdict: String,
}

/// Failure payload returned by a property check.
#[derive(Clone, Debug)]
pub struct Failure {
    pub input: Value,
    pub verdict: String,
}

impl Failure {
    pub fn new(input: Value, verdict: impl Into<String>) -> Self {
        Failure {
            input,
            verdict: verdict.into(),
        }
    }

    pub fn on_complex(x: &Complex, verdict: impl Into<String>) -> Self {
        Self::new(json!({ "complex": x.to_json() }), verdict)
    }

    pub fn on_pair(x: &Complex, phi: &ThomasonFiltration, verdict: impl Into<String>) -> Self {
        Self::new(json!({ "complex": x.to_json(), "filtration": phi.to_json() }), verdict)
    }
}

pub type CaseResult = std::result::Result<(), Failure>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
}

impl Counts {
    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub rings: Vec<String>,
    pub seed: u64,
    pub config: SuiteConfig,
    pub counts: Counts,
    pub properties: BTreeMap<String, Counts>,
    pub exhibits: Vec<Exhibit>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    /// The report as JSON with the wall-time field removed, for
    /// reproducibility comparisons.
    pub fn without_time(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("wall_time_secs");
        v
    }
}

/// Run the selected properties on every configured ring.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let all = standard_properties();
    let selected: Vec<&dyn Property> = all
        .iter()
        .map(|p| p.as_ref())
        .filter(|p| config.properties.as_ref().is_none_or(|names| names.iter().any(|n| n == p.name())))
        .collect();
    let contexts: Vec<RingContext> = config
        .rings
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let ring = CyclicRing::new(n)?;
            Ok(RingContext {
                filtrations: enumerate_filtrations(&ring, config.window, config.infinities),
                ring,
                ring_index: i,
                config,
            })
        })
        .collect::<Result<_>>()?;
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for (pi, p) in selected.iter().enumerate() {
        for (ri, ctx) in contexts.iter().enumerate() {
            jobs.extend((0..p.cases(ctx)).map(|c| (pi, ri, c)));
        }
    }
    let run = || -> Vec<(usize, usize, usize, CaseResult)> {
        jobs.par_iter()
            .map(|&(pi, ri, c)| (pi, ri, c, selected[pi].check(&contexts[ri], c)))
            .collect()
    };
    let results = if config.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(run)
    };
    let mut counts = Counts::default();
    let mut properties: BTreeMap<String, Counts> =
        selected.iter().map(|p| (p.name().to_string(), Counts::default())).collect();
    let mut exhibits = Vec::new();
    for (pi, ri, case, result) in results {
        let name = selected[pi].name();
        counts.record(result.is_ok());
        properties.get_mut(name).expect("selected").record(result.is_ok());
        if let Err(f) = result {
            exhibits.push(Exhibit {
                property: name.to_string(),
                modulus: contexts[ri].ring.modulus(),
                case,
                input: f.input,
                verdict: f.verdict,
            });
        }
    }
    exhibits.sort_by(|a, b| (&a.property, a.modulus, a.case).cmp(&(&b.property, b.modulus, b.case)));
    Ok(SuiteReport {
        schema: 1,
        rings: contexts.iter().map(|c| format!("Z/{}", c.ring.modulus())).collect(),
        seed: config.seed,
        config: config.clone(),
        counts,
        properties,
        exhibits,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
