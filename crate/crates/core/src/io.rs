//! JSON instance and solution files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_aisle, check_pick, DepotLocation, EdgeMultiset, Instance, PickLocation, WarehouseLayout};
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    m: i64,
    n: i64,
    #[serde(rename = "W")]
    w: i64,
    #[serde(rename = "H")]
    h: i64,
    depot: DepotRecord,
    picks: Vec<PickRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepotRecord {
    aisle: i64,
    cross_aisle: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PickRecord {
    aisle: i64,
    subaisle: i64,
    offset: i64,
}

fn index(value: i64, what: &str) -> Result<usize> {
    usize::try_from(value).map_err(|_| Error::Malformed(format!("{what} must be non-negative, got {value}")))
}

fn length(value: i64, what: &str) -> Result<u64> {
    if value < 1 {
        return Err(Error::InvalidLayout(format!("{what} must be positive, got {value}")));
    }
    Ok(value as u64)
}

/// Parses and validates an instance file, returning it in canonical order.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let m = index(file.m, "m")?;
    let n = index(file.n, "n")?;
    let layout = WarehouseLayout::new(m, n, length(file.w, "W")?, length(file.h, "H")?)?;
    let depot = DepotLocation {
        aisle: index(file.depot.aisle, "depot aisle")?,
        cross_aisle: index(file.depot.cross_aisle, "depot cross_aisle")?,
    };
    check_aisle(depot.aisle, &layout)?;
    let mut picks = Vec::with_capacity(file.picks.len());
    for p in &file.picks {
        let aisle = index(p.aisle, "pick aisle")?;
        let subaisle = index(p.subaisle, "pick subaisle")?;
        check_pick(aisle, subaisle, p.offset, &layout)?;
        picks.push(PickLocation { aisle, subaisle, offset: p.offset as u64 });
    }
    Instance::new(layout, depot, picks)
}

pub fn serialize_instance(instance: &Instance) -> String {
    let l = instance.layout();
    let file = InstanceFile {
        m: l.aisles() as i64,
        n: l.cross_aisles() as i64,
        w: l.aisle_pitch() as i64,
        h: l.subaisle_height() as i64,
        depot: DepotRecord {
            aisle: instance.depot().aisle as i64,
            cross_aisle: instance.depot().cross_aisle as i64,
        },
        picks: instance
            .picks()
            .iter()
            .map(|p| PickRecord { aisle: p.aisle as i64, subaisle: p.subaisle as i64, offset: p.offset as i64 })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

/// On-disk solution record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub cost: u64,
    pub horizontal: Vec<[u64; 3]>,
    pub vertical: Vec<[u64; 4]>,
    pub walk: Vec<[u64; 2]>,
    pub stages: u64,
    pub expansions: u64,
}

impl SolutionFile {
    pub fn from_solution(solution: &Solution) -> Self {
        Self {
            cost: solution.cost,
            horizontal: solution
                .edges
                .horizontal()
                .map(|((g, j), m)| [g as u64, j as u64, m as u64])
                .collect(),
            vertical: solution
                .edges
                .vertical()
                .map(|((a, lo, hi), m)| [a as u64, lo, hi, m as u64])
                .collect(),
            walk: solution.walk.iter().map(|&(a, p)| [a as u64, p]).collect(),
            stages: solution.stages as u64,
            expansions: solution.expansions,
        }
    }

    pub fn edges(&self) -> Result<EdgeMultiset> {
        let mut edges = EdgeMultiset::new();
        for &[g, j, m] in &self.horizontal {
            let m = u32::try_from(m).map_err(|_| Error::Malformed("multiplicity overflow".into()))?;
            edges.add_horizontal(g as usize, j as usize, m);
        }
        for &[a, lo, hi, m] in &self.vertical {
            if lo >= hi {
                return Err(Error::Malformed(format!("vertical edge with lo {lo} >= hi {hi}")));
            }
            let m = u32::try_from(m).map_err(|_| Error::Malformed("multiplicity overflow".into()))?;
            edges.add_vertical(a as usize, lo, hi, m);
        }
        Ok(edges)
    }
}

pub fn serialize_solution(solution: &Solution) -> String {
    serde_json::to_string_pretty(&SolutionFile::from_solution(solution)).expect("solution serializes")
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::generate_instance;

    #[test]
    fn minimal_file() {
        let inst = parse_instance(r#"{"m":1,"n":2,"W":1,"H":10,"depot":{"aisle":1,"cross_aisle":1},"picks":[]}"#).unwrap();
        assert!(inst.picks().is_empty());
        assert_eq!(inst.layout().subaisle_height(), 10);
    }

    #[test]
    fn rejects_invalid_files() {
        let base = |picks: &str, n: i64, h: i64| {
            format!(r#"{{"m":2,"n":{n},"W":3,"H":{h},"depot":{{"aisle":1,"cross_aisle":1}},"picks":[{picks}]}}"#)
        };
        let on_vertex = parse_instance(&base(r#"{"aisle":1,"subaisle":1,"offset":10}"#, 2, 10));
        assert!(matches!(on_vertex, Err(Error::PickOnVertex { .. })));
        assert!(on_vertex.unwrap_err().to_string().contains("pick on cross-aisle vertex"));
        assert!(matches!(
            parse_instance(&base(r#"{"aisle":1,"subaisle":1,"offset":0}"#, 2, 10)),
            Err(Error::PickOnVertex { .. })
        ));
        assert!(matches!(
            parse_instance(&base(r#"{"aisle":1,"subaisle":1,"offset":11}"#, 2, 10)),
            Err(Error::OffsetOutOfRange { .. })
        ));
        assert!(matches!(
            parse_instance(&base(r#"{"aisle":3,"subaisle":1,"offset":1}"#, 2, 10)),
            Err(Error::AisleOutOfRange { .. })
        ));
        assert!(matches!(
            parse_instance(&base(r#"{"aisle":1,"subaisle":2,"offset":1}"#, 2, 10)),
            Err(Error::SubaisleOutOfRange { .. })
        ));
        assert!(parse_instance(&base("", 1, 10)).is_err());
        assert!(parse_instance(&base("", 2, 0)).is_err());
        assert!(parse_instance(&base("", 2, -1)).is_err());
        assert!(matches!(parse_instance("{ not json"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_instance(r#"{"m":1,"n":2,"W":1,"H":10,"depot":{"aisle":1,"cross_aisle":3},"picks":[]}"#),
            Err(Error::CrossAisleOutOfRange { .. })
        ));
    }

    #[test]
    fn round_trip_seeded() {
        for seed in 0..1000u64 {
            let m = 1 + (seed % 5) as usize;
            let n = 2 + (seed % 3) as usize;
            let h = 2 + seed % 19;
            let cap = WarehouseLayout::new(m, n, 1, h).unwrap().pick_capacity() as usize;
            let k = (seed as usize * 7 % 13).min(cap);
            let inst = generate_instance(m, n, 1 + seed % 10, h, k, seed).unwrap();
            let text = serialize_instance(&inst);
            assert_eq!(parse_instance(&text).unwrap(), inst, "seed {seed}");
        }
    }
}
