use std::collections::BTreeMap;

use pickroute::io::serialize_instance;
use pickroute::Instance;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the canonical instance serialization.
pub fn instance_digest(instance: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(instance).as_bytes()))
}

/// One compared instance. Maps are keyed by method name so the JSON keys
/// come out sorted.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub index: usize,
    pub digest: String,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "H")]
    pub h: u64,
    pub k: usize,
    pub costs: BTreeMap<&'static str, u64>,
    pub stages: BTreeMap<&'static str, usize>,
    pub expansions: BTreeMap<&'static str, u64>,
    /// Milliseconds per method; only filled when timings are requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<BTreeMap<&'static str, f64>>,
    /// Methods whose output failed validation, with the reason.
    pub invalid: BTreeMap<&'static str, String>,
    pub agree: bool,
}

impl RunReport {
    pub fn new(index: usize, instance: &Instance) -> Self {
        let layout = instance.layout();
        Self {
            index,
            digest: instance_digest(instance),
            m: layout.aisles(),
            n: layout.cross_aisles(),
            w: layout.aisle_pitch(),
            h: layout.subaisle_height(),
            k: instance.picks().len(),
            costs: BTreeMap::new(),
            stages: BTreeMap::new(),
            expansions: BTreeMap::new(),
            wall_ms: None,
            invalid: BTreeMap::new(),
            agree: true,
        }
    }

    /// True iff every computed cost is the same.
    pub fn costs_agree(&self) -> bool {
        let mut costs = self.costs.values();
        match costs.next() {
            None => true,
            Some(first) => costs.all(|c| c == first),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub count: usize,
    pub disagreements: usize,
    pub invalid: usize,
    pub held_karp_runs: usize,
    pub brute_force_runs: usize,
}
