//! Tables of cabled arrow polynomials. A table stores, for each named
//! diagram, its normalized arrow polynomial at a fixed list of cabling
//! depths. Looking up an unknown diagram computes the same fingerprint
//! and compares, both directly and across the A -> A^-1 mirror.

use crate::cabling::cabled_arrow_with;
use crate::engine::{EngineError, EngineOptions};
use crate::pd::PdCode;
use crate::poly::{ArrowPoly, PolyError};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    /// One polynomial per table depth, in the same order.
    pub cables: Vec<ArrowPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub cable_depths: Vec<u32>,
    pub entries: Vec<TableEntry>,
}

/// Result of matching a fingerprint against a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identification {
    /// All depths agree with this entry.
    Named(String),
    /// All depths agree with this entry's mirror image.
    Mirror(String),
    Unknown,
}

impl InvariantTable {
    pub fn new(cable_depths: Vec<u32>) -> InvariantTable {
        InvariantTable {
            cable_depths,
            entries: Vec::new(),
        }
    }

    /// Cabled polynomials of `pd` at this table's depths.
    pub fn fingerprint(
        &self,
        pd: &PdCode,
        opts: &EngineOptions,
    ) -> Result<Vec<ArrowPoly>, EngineError> {
        self.cable_depths
            .iter()
            .map(|&n| cabled_arrow_with(pd, n, opts).map(|(p, _)| p))
            .collect()
    }

    /// Compute and append one entry.
    pub fn insert(
        &mut self,
        name: &str,
        pd: &PdCode,
        opts: &EngineOptions,
    ) -> Result<(), EngineError> {
        let cables = self.fingerprint(pd, opts)?;
        self.entries.push(TableEntry {
            name: name.to_string(),
            cables,
        });
        Ok(())
    }

    /// Every entry matching a fingerprint (aligned with `cable_depths`),
    /// in entry order. An entry matching both ways reports only the
    /// direct match.
    pub fn matches(&self, polys: &[ArrowPoly]) -> Vec<Identification> {
        assert_eq!(polys.len(), self.cable_depths.len());
        let mirrored: Vec<ArrowPoly> = polys.iter().map(ArrowPoly::mirror_subst).collect();
        self.entries
            .iter()
            .filter_map(|e| {
                if e.cables == polys {
                    Some(Identification::Named(e.name.clone()))
                } else if e.cables == mirrored {
                    Some(Identification::Mirror(e.name.clone()))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Best single match: direct beats mirror, earlier entries beat later.
    pub fn identify(&self, polys: &[ArrowPoly]) -> Identification {
        let all = self.matches(polys);
        all.iter()
            .find(|m| matches!(m, Identification::Named(_)))
            .or_else(|| all.first())
            .cloned()
            .unwrap_or(Identification::Unknown)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut polys = Map::new();
                for (d, p) in self.cable_depths.iter().zip(&e.cables) {
                    polys.insert(d.to_string(), Value::String(p.to_string()));
                }
                json!({ "name": e.name, "polynomials": polys })
            })
            .collect();
        json!({ "cable_depths": self.cable_depths, "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<InvariantTable, TableError> {
        let bad = |what: &str| TableError::Malformed(what.to_string());
        let depths = v["cable_depths"]
            .as_array()
            .ok_or_else(|| bad("cable_depths missing"))?
            .iter()
            .map(|d| {
                d.as_u64()
                    .filter(|&d| d >= 1)
                    .map(|d| d as u32)
                    .ok_or_else(|| bad("cable depth must be a positive integer"))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        let mut table = InvariantTable::new(depths);
        for e in v["entries"]
            .as_array()
            .ok_or_else(|| bad("entries missing"))?
        {
            let name = e["name"]
                .as_str()
                .ok_or_else(|| bad("entry name missing"))?
                .to_string();
            let polys = e["polynomials"]
                .as_object()
                .ok_or_else(|| bad("entry polynomials missing"))?;
            let cables = table
                .cable_depths
                .iter()
                .map(|d| {
                    let text = polys
                        .get(&d.to_string())
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad(&format!("entry {name} lacks depth {d}")))?;
                    Ok(ArrowPoly::parse(text)?)
                })
                .collect::<Result<Vec<ArrowPoly>, TableError>>()?;
            table.entries.push(TableEntry { name, cables });
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::pd::parse_pd;

    fn small_table() -> InvariantTable {
        let opts = EngineOptions::default();
        let mut t = InvariantTable::new(vec![1, 2]);
        t.insert("virtual_trefoil", &parse_pd(corpus::VIRTUAL_TREFOIL).unwrap(), &opts)
            .unwrap();
        t.insert("trefoil", &parse_pd(corpus::TREFOIL).unwrap(), &opts)
            .unwrap();
        t
    }

    #[test]
    fn identify_direct_mirror_unknown() {
        let t = small_table();
        let opts = EngineOptions::default();
        let vt = parse_pd(corpus::VIRTUAL_TREFOIL).unwrap();
        let fp = t.fingerprint(&vt, &opts).unwrap();
        assert_eq!(
            t.identify(&fp),
            Identification::Named("virtual_trefoil".into())
        );
        let fp_m = t.fingerprint(&vt.mirror(), &opts).unwrap();
        assert_eq!(
            t.identify(&fp_m),
            Identification::Mirror("virtual_trefoil".into())
        );
        let other = parse_pd(corpus::KISHINO).unwrap();
        let fp_k = t.fingerprint(&other, &opts).unwrap();
        assert_eq!(t.identify(&fp_k), Identification::Unknown);
    }

    #[test]
    fn json_round_trip() {
        let t = small_table();
        let v = t.to_json();
        assert_eq!(v["cable_depths"], json!([1, 2]));
        assert!(v["entries"][1]["polynomials"]["2"].is_string());
        let back = InvariantTable::from_json(&v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn malformed_rejected() {
        assert!(InvariantTable::from_json(&json!({})).is_err());
        assert!(InvariantTable::from_json(&json!({
            "cable_depths": [0], "entries": []
        }))
        .is_err());
        assert!(InvariantTable::from_json(&json!({
            "cable_depths": [1],
            "entries": [{ "name": "x", "polynomials": {} }]
        }))
        .is_err());
    }
}
