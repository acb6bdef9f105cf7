use std::collections::BTreeMap;

use serde_json::{json, Value};
use tlab::complex::{cech_tilde, cohomology, koszul, Complex};
use tlab::json::{parse_ring, FromJson, ToJson};
use tlab::lab::{enumerate_filtrations, run_suite, Infinities, SuiteConfig};
use tlab::ring::CyclicRing;
use tlab::tstruct::{
    coresolve_in_coaisle, filtration_of_generators, generators_of, truncate_t, Evidence, MembershipOracle,
    OracleRegistry, OracleSide, ThomasonFiltration, Verdict,
};
use tlab::{Error, Result};

use crate::sugar::{parse_complex, parse_complex_list};
use crate::Args;

/// Outcome of a command that ran to completion.
pub struct Outcome {
    pub result: Value,
    /// An internal consistency check failed.
    pub disagreement: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            result,
            disagreement: false,
        }
    }
}

/// Resolved inputs: flags first, then fields of the `--in` document.
pub struct Inputs<'a> {
    args: &'a Args,
    doc: Option<Value>,
}

/// Re-root a parse error found inside the document field at `prefix`.
fn under(prefix: &str, e: Error) -> Error {
    match e {
        Error::Parse { pointer, message } => Error::Parse {
            pointer: format!("{prefix}{}", pointer.trim_end_matches('/')),
            message,
        },
        other => other,
    }
}

fn missing(what: &str) -> Error {
    Error::Invalid(format!("missing required input: {what}"))
}

impl<'a> Inputs<'a> {
    pub fn new(args: &'a Args, doc: Option<Value>) -> Self {
        Inputs { args, doc }
    }

    fn doc_field(&self, key: &str) -> Option<&Value> {
        self.doc.as_ref().and_then(|d| d.get(key))
    }

    fn text(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| {
            self.doc_field(key).map(|v| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
        })
    }

    pub fn ring(&self) -> Result<CyclicRing> {
        if let Some(n) = self.args.ring {
            return CyclicRing::new(n);
        }
        match self.doc_field("ring") {
            Some(Value::Number(n)) => CyclicRing::new(n.as_u64().ok_or_else(|| missing("--ring"))?),
            Some(v) => parse_ring(v).map_err(|e| under("/ring", e)),
            None => Err(missing("--ring")),
        }
    }

    pub fn complex(&self, ring: &CyclicRing) -> Result<Complex> {
        if let Some(c) = &self.args.complex {
            return parse_complex(ring, c);
        }
        match self.doc_field("complex") {
            Some(Value::String(s)) => parse_complex(ring, s).map_err(|e| under("/complex", e)),
            Some(v) => Complex::from_json(ring, v).map_err(|e| under("/complex", e)),
            None => Err(missing("--complex")),
        }
    }

    pub fn filtration(&self, ring: &CyclicRing) -> Result<ThomasonFiltration> {
        let from_text = |text: &str| -> Result<ThomasonFiltration> {
            let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
                pointer: "/".into(),
                message: format!("filtration is not JSON: {e}"),
            })?;
            ThomasonFiltration::from_json(ring, &value)
        };
        if let Some(f) = &self.args.filtration {
            return from_text(f);
        }
        match self.doc_field("filtration") {
            Some(Value::String(s)) => from_text(s).map_err(|e| under("/filtration", e)),
            Some(v) => ThomasonFiltration::from_json(ring, v).map_err(|e| under("/filtration", e)),
            None => Err(missing("--filtration")),
        }
    }

    pub fn gens(&self, ring: &CyclicRing) -> Result<Vec<Complex>> {
        if let Some(g) = &self.args.gens {
            return parse_complex_list(ring, g);
        }
        match self.doc_field("gens") {
            Some(Value::String(s)) => parse_complex_list(ring, s).map_err(|e| under("/gens", e)),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    match v {
                        Value::String(s) => parse_complex(ring, s),
                        other => Complex::from_json(ring, other),
                    }
                    .map_err(|e| under(&format!("/gens/{i}"), e))
                })
                .collect(),
            _ => Err(missing("--gens")),
        }
    }

    pub fn elements(&self) -> Result<Vec<u64>> {
        let text = self.text(&self.args.elements, "elements").ok_or_else(|| missing("--elements"))?;
        text.trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("element `{t}` is not a non-negative integer")))
            })
            .collect()
    }
}

pub fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
    if a > b {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok((a, b))
}

fn verdict_json(name: &str, side: OracleSide, v: &Verdict) -> Value {
    json!({
        "oracle": name,
        "side": side.to_string(),
        "accepted": v.accepted,
        "witness": v.witness.map(|(k, s)| json!({ "key": k.to_string(), "degree": s })),
    })
}

fn evidence_json(e: &Evidence) -> Value {
    json!({
        "composite_zero": e.composite_zero,
        "cone_witness_acyclic": e.cone_witness_acyclic,
        "aisle": e.aisle.accepted,
        "coaisle": e.coaisle.iter().map(|(n, v)| (n.clone(), json!(v.accepted))).collect::<BTreeMap<_, _>>(),
        "hom_vanishes": e.hom_vanishes,
        "constant_agrees": e.constant_agrees,
        "all_pass": e.all_pass(),
    })
}

fn complex_report(x: &Complex) -> Value {
    json!({ "complex": x.to_json(), "cohomology": cohomology(x).to_json() })
}

pub fn koszul_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    Ok(Outcome::ok(complex_report(&koszul(&ring, &inp.elements()?))))
}

pub fn cech_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    Ok(Outcome::ok(complex_report(&cech_tilde(&ring, &inp.elements()?))))
}

pub fn cohomology_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let x = inp.complex(&ring)?;
    Ok(Outcome::ok(json!({ "cohomology": cohomology(&x).to_json() })))
}

fn parse_side(s: &str) -> Result<OracleSide> {
    match s {
        "aisle" => Ok(OracleSide::Aisle),
        "coaisle" => Ok(OracleSide::Coaisle),
        "co-t" | "co-t-coaisle" | "cot" => Ok(OracleSide::CoTCoaisle),
        other => Err(Error::Invalid(format!("unknown side `{other}` (aisle, coaisle, co-t)"))),
    }
}

pub fn member_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let x = inp.complex(&ring)?;
    let phi = inp.filtration(&ring)?;
    let registry = OracleRegistry::standard();
    let side = inp.args.side.as_deref().map(parse_side).transpose()?;
    let oracles: Vec<&dyn MembershipOracle> = match (&inp.args.oracle, side) {
        (Some(name), _) => vec![registry.get(name).ok_or_else(|| {
            Error::Invalid(format!("unknown oracle `{name}`; known: {}", registry.names().join(", ")))
        })?],
        (None, Some(s)) => registry.of_side(s).collect(),
        (None, None) => registry.iter().collect(),
    };
    let mut verdicts = Vec::new();
    let mut by_side: BTreeMap<String, Vec<bool>> = BTreeMap::new();
    for o in &oracles {
        let v = o.check(&x, &phi)?;
        by_side.entry(o.side().to_string()).or_default().push(v.accepted);
        verdicts.push(verdict_json(o.name(), o.side(), &v));
    }
    let agree = by_side.values().all(|vs| vs.iter().all(|&v| v == vs[0]));
    let members: BTreeMap<String, bool> = by_side.iter().map(|(s, vs)| (s.clone(), vs[0])).collect();
    Ok(Outcome {
        result: json!({ "verdicts": verdicts, "agree": agree, "member": members }),
        disagreement: !agree,
    })
}

pub fn truncate_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let x = inp.complex(&ring)?;
    let phi = inp.filtration(&ring)?;
    let t = truncate_t(&x, &phi)?;
    Ok(Outcome::ok(json!({
        "u_part": complex_report(&t.u_part),
        "input": complex_report(&t.input),
        "v_part": complex_report(&t.v_part),
        "evidence": evidence_json(&t.evidence),
    })))
}

pub fn classify_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let gens = inp.gens(&ring)?;
    let phi = filtration_of_generators(&ring, &gens)?;
    Ok(Outcome::ok(json!({ "filtration": phi.to_json(), "summary": phi.to_string() })))
}

pub fn generate_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let phi = inp.filtration(&ring)?;
    let gens = generators_of(&phi)?;
    let names: Vec<String> = phi
        .cutoffs()
        .iter()
        .filter_map(|(p, c)| c.finite().map(|n| format!("K({p})[{}]", -n)))
        .collect();
    Ok(Outcome::ok(json!({
        "generators": gens.iter().map(ToJson::to_json).collect::<Vec<_>>(),
        "shorthand": names,
    })))
}

pub fn resolve_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let x = inp.complex(&ring)?;
    let phi = inp.filtration(&ring)?;
    let steps = coresolve_in_coaisle(&x, &phi, inp.args.depth)?;
    let ok = steps.iter().all(|s| s.verdicts.iter().all(|(_, v)| *v));
    let ladder: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "module": s.module.to_json(),
                "degree": s.degree,
                "verdicts": s.verdicts.iter().map(|(n, v)| (n.clone(), json!(v))).collect::<BTreeMap<_, _>>(),
            })
        })
        .collect();
    Ok(Outcome {
        result: json!({ "steps": ladder, "all_accepted": ok }),
        disagreement: !ok,
    })
}

pub fn enumerate_cmd(inp: &Inputs) -> Result<Outcome> {
    let ring = inp.ring()?;
    let window = inp.args.window.unwrap_or((-2, 2));
    let inf = match inp.args.infinities.as_deref().unwrap_or("none") {
        "none" => Infinities::None,
        "neg-only" | "neg" => Infinities::NegOnly,
        "both" => Infinities::Both,
        other => return Err(Error::Invalid(format!("unknown infinities `{other}` (none, neg-only, both)"))),
    };
    let list = enumerate_filtrations(&ring, window, inf);
    Ok(Outcome::ok(json!({
        "count": list.len(),
        "filtrations": list.iter().map(ToJson::to_json).collect::<Vec<_>>(),
    })))
}

pub fn selftest_cmd(inp: &Inputs) -> Result<Outcome> {
    let mut config = match &inp.doc {
        Some(doc) => SuiteConfig::from_value(doc.clone())?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = inp.args.seed {
        config.seed = seed;
    }
    if let Some(w) = inp.args.window {
        config.window = w;
    }
    if let Some(n) = inp.args.ring {
        config.rings = vec![n];
    }
    config.jobs = inp.args.jobs;
    let report = run_suite(&config)?;
    let failed = report.counts.failed > 0;
    Ok(Outcome {
        result: serde_json::to_value(&report).expect("serializable"),
        disagreement: failed,
    })
}
