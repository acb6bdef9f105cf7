//! JSON encoding of library values. Parse errors carry a JSON pointer to
//! the offending field.

use serde_json::{json, Map, Value};

use crate::complex::{Complex, GradedModule};
use crate::error::{Error, Result};
use crate::module::{FinModule, ModuleMap};
use crate::ring::{CyclicRing, Ideal, SpecSubset};
use crate::tstruct::{Cutoff, ThomasonFiltration};

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Owned pointer plus value, so children can outlive the parent's borrow.
pub struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: String::new(),
        }
    }

    pub fn value(&self) -> &'a Value {
        self.value
    }

    pub fn pointer(&self) -> &str {
        if self.path.is_empty() {
            "/"
        } else {
            &self.path
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            pointer: self.pointer().to_string(),
            message: message.into(),
        }
    }

    /// Attach this node's location to a library error.
    pub fn wrap(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => self.error(other.to_string()),
        }
    }

    pub fn get(&self, key: &str) -> Option<Node<'a>> {
        self.value.get(key).map(|v| Node {
            value: v,
            path: format!("{}/{}", self.path, escape(key)),
        })
    }

    pub fn field(&self, key: &str) -> Result<Node<'a>> {
        if !self.value.is_object() {
            return Err(self.error("expected an object"));
        }
        self.get(key).ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, v)| Node {
                value: v,
                path: format!("{}/{i}", self.path),
            })
            .collect())
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.error("expected a non-negative integer"))
    }

    pub fn i64(&self) -> Result<i64> {
        self.value.as_i64().ok_or_else(|| self.error("expected an integer"))
    }

    pub fn u64_list(&self) -> Result<Vec<u64>> {
        self.items()?.iter().map(Node::u64).collect()
    }
}

/// Conversion to a JSON value.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

/// Parsing relative to a base ring.
pub trait FromJson: Sized {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self>;

    fn from_json(ring: &CyclicRing, value: &Value) -> Result<Self> {
        Self::from_node(ring, &Node::root(value))
    }
}

impl ToJson for CyclicRing {
    fn to_json(&self) -> Value {
        json!({ "modulus": self.modulus() })
    }
}

/// `{"modulus": n}`.
pub fn parse_ring(value: &Value) -> Result<CyclicRing> {
    let node = Node::root(value);
    let m = node.field("modulus")?;
    CyclicRing::new(m.u64()?).map_err(|e| m.wrap(e))
}

impl ToJson for SpecSubset {
    fn to_json(&self) -> Value {
        json!({ "primes": self.primes() })
    }
}

impl FromJson for SpecSubset {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        let primes = node.field("primes")?;
        for item in primes.items()? {
            let p = item.u64()?;
            if !ring.contains_prime(p) {
                return Err(item.wrap(Error::UnknownPrime(p)));
            }
        }
        Ok(SpecSubset::from_primes(primes.u64_list()?))
    }
}

impl ToJson for Ideal {
    fn to_json(&self) -> Value {
        json!({ "gen": self.generator() })
    }
}

impl FromJson for Ideal {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        Ok(ring.ideal(node.field("gen")?.u64()?))
    }
}

impl ToJson for FinModule {
    fn to_json(&self) -> Value {
        json!({ "factors": self.factors() })
    }
}

impl FromJson for FinModule {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        let factors = node.field("factors")?;
        let items = factors.items()?;
        for item in &items {
            let d = item.u64()?;
            if let Err(e) = FinModule::new(ring, vec![d]) {
                return Err(item.wrap(e));
            }
        }
        FinModule::new(ring, factors.u64_list()?).map_err(|e| factors.wrap(e))
    }
}

fn matrix_json(f: &ModuleMap) -> Value {
    json!(f.rows())
}

fn parse_matrix(source: &FinModule, target: &FinModule, node: &Node<'_>) -> Result<ModuleMap> {
    let rows: Vec<Vec<u64>> = node.items()?.iter().map(Node::u64_list).collect::<Result<_>>()?;
    ModuleMap::new(source, target, &rows).map_err(|e| match e {
        Error::IllDefined { row, col, .. } => Node {
            value: node.value,
            path: format!("{}/{row}/{col}", node.path),
        }
        .wrap(e),
        other => node.wrap(other),
    })
}

impl ToJson for ModuleMap {
    fn to_json(&self) -> Value {
        json!({
            "source": self.source().to_json(),
            "target": self.target().to_json(),
            "matrix": matrix_json(self),
        })
    }
}

impl FromJson for ModuleMap {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        let source = FinModule::from_node(ring, &node.field("source")?)?;
        let target = FinModule::from_node(ring, &node.field("target")?)?;
        parse_matrix(&source, &target, &node.field("matrix")?)
    }
}

impl ToJson for Complex {
    fn to_json(&self) -> Value {
        json!({
            "min_degree": self.min_degree(),
            "modules": self.coords().iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "differentials": self.diffs().iter().map(|d| json!({ "matrix": matrix_json(d) })).collect::<Vec<_>>(),
        })
    }
}

impl FromJson for Complex {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        let min_degree = node.field("min_degree")?.i64()?;
        let coords: Vec<FinModule> = node
            .field("modules")?
            .items()?
            .iter()
            .map(|m| FinModule::from_node(ring, m))
            .collect::<Result<_>>()?;
        let diff_nodes = match node.get("differentials") {
            Some(d) => d.items()?,
            None => Vec::new(),
        };
        if diff_nodes.len() != coords.len().saturating_sub(1) {
            return Err(node.error(format!(
                "{} modules need {} differentials, got {}",
                coords.len(),
                coords.len().saturating_sub(1),
                diff_nodes.len()
            )));
        }
        let diffs: Vec<ModuleMap> = diff_nodes
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let m = d.get("matrix").unwrap_or(Node {
                    value: d.value,
                    path: d.path.clone(),
                });
                parse_matrix(&coords[i], &coords[i + 1], &m)
            })
            .collect::<Result<_>>()?;
        Complex::new(ring, min_degree, coords, diffs).map_err(|e| match e {
            Error::NotAComplex { degree } => {
                let i = degree - min_degree - 1;
                node.get("differentials")
                    .and_then(|d| d.value.get(i as usize).map(|_| format!("{}/{i}", d.path)))
                    .map_or_else(|| node.wrap(e.clone()), |path| Node { value: node.value, path }.wrap(e.clone()))
            }
            other => node.wrap(other),
        })
    }
}

impl ToJson for GradedModule {
    fn to_json(&self) -> Value {
        let parts: Map<String, Value> = self.parts().iter().map(|(k, m)| (k.to_string(), m.to_json())).collect();
        Value::Object(parts)
    }
}

impl ToJson for Cutoff {
    fn to_json(&self) -> Value {
        match self {
            Cutoff::Finite(n) => json!(n),
            other => json!(other.to_string()),
        }
    }
}

fn parse_cutoff(node: &Node<'_>) -> Result<Cutoff> {
    match node.value {
        Value::String(s) if s == "+inf" => Ok(Cutoff::PosInf),
        Value::String(s) if s == "-inf" => Ok(Cutoff::NegInf),
        _ => node
            .i64()
            .map(Cutoff::Finite)
            .map_err(|_| node.error("expected an integer, \"+inf\" or \"-inf\"")),
    }
}

impl ToJson for ThomasonFiltration {
    fn to_json(&self) -> Value {
        let cutoffs: Vec<Value> = self
            .cutoffs()
            .iter()
            .map(|(p, c)| json!({ "prime": p, "top": c.to_json() }))
            .collect();
        json!({ "cutoffs": cutoffs })
    }
}

fn parse_set(ring: &CyclicRing, node: &Node<'_>) -> Result<SpecSubset> {
    if node.value.as_str() == Some("spec") {
        return Ok(ring.spec());
    }
    if node.value.is_object() {
        return SpecSubset::from_node(ring, node);
    }
    let primes = node.u64_list()?;
    SpecSubset::within(primes, ring).map_err(|e| node.wrap(e))
}

impl FromJson for ThomasonFiltration {
    fn from_node(ring: &CyclicRing, node: &Node<'_>) -> Result<Self> {
        if let Some(cuts) = node.get("cutoffs") {
            let mut pairs = Vec::new();
            for item in cuts.items()? {
                let p = item.field("prime")?;
                let prime = p.u64()?;
                if !ring.contains_prime(prime) {
                    return Err(p.wrap(Error::UnknownPrime(prime)));
                }
                pairs.push((prime, parse_cutoff(&item.field("top")?)?));
            }
            return ThomasonFiltration::from_cutoffs(ring, pairs).map_err(|e| cuts.wrap(e));
        }
        let jumps_node = node.field("jumps").map_err(|_| node.error("expected \"cutoffs\" or \"jumps\""))?;
        let mut jumps = Vec::new();
        for item in jumps_node.items()? {
            let pair = item.items()?;
            if pair.len() != 2 {
                return Err(item.error("expected [degree, primes]"));
            }
            jumps.push((pair[0].i64()?, parse_set(ring, &pair[1])?));
        }
        let below = node.get("below").map(|b| parse_set(ring, &b)).transpose()?;
        let above = node.get("above").map(|a| parse_set(ring, &a)).transpose()?;
        ThomasonFiltration::from_jumps(ring, &jumps, below, above).map_err(|e| jumps_node.wrap(e))
    }
}
