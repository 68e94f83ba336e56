//! Browser bindings for the demo page in `www/`. Every export takes and
//! returns JSON text; failures come back as `{"error":{"kind","message"}}`
//! so the page never has to catch exceptions.

use fairshare::reductions::{parse_3dm, reduce_3dm, verify_reduction};
use fairshare::shares::{aps_exact, mms_exact, mrf_share};
use fairshare::xos::{certified_xos_bound, identical_mrf_allocation};
use fairshare::{parse_instance, rational, Error, GoodSet, Matroid, MatroidSpec, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Partition enumeration budget; smaller than the CLI default to keep the
/// page responsive.
pub const WORK_BOUND: u128 = 5_000_000;

fn respond(result: Result<Value>) -> String {
    let value =
        result.unwrap_or_else(|e| json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
    value.to_string()
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("result serializes")
}

/// MMS, APS with both certificates, and for binary XOS agents the balanced
/// allocation bound, for one agent of an instance document.
#[wasm_bindgen]
pub fn analyze_instance(instance_json: &str, agent: usize) -> String {
    respond((|| {
        let inst = parse_instance(instance_json)?;
        let v = inst.valuation(agent)?;
        let mms = mms_exact(&v, inst.n, WORK_BOUND)?;
        let aps = aps_exact(&v, inst.n)?;
        let mut out = json!({
            "n": inst.n,
            "goods": inst.goods,
            "kind": v.kind_name(),
            "mms": to_value(&mms),
            "aps": to_value(&aps),
        });
        if v.xos_family().is_some() {
            out["xos_bound"] = to_value(&certified_xos_bound(&v, inst.n, WORK_BOUND)?);
        }
        Ok(out)
    })())
}

/// Common share of `n` agents with the rank function of a matroid on `m`
/// elements, the disjoint bases behind it and a complete allocation.
#[wasm_bindgen]
pub fn matroid_share(spec_json: &str, m: usize, n: usize) -> String {
    respond((|| {
        if n == 0 {
            return Err(Error::Argument("need at least one agent".into()));
        }
        let spec: MatroidSpec =
            serde_json::from_str(spec_json).map_err(|e| Error::Parse(e.to_string()))?;
        let matroid = Matroid::new(spec, m)?;
        let (share, packing) = mrf_share(&matroid, n);
        let allocation = identical_mrf_allocation(&matroid, n);
        let values: Vec<usize> = allocation
            .bundles
            .iter()
            .map(|&b| matroid.rank(b))
            .collect();
        let copies = vec![&matroid; n];
        let union_rank = fairshare::matroid::union_rank_formula(&copies, matroid.ground_set())?;
        Ok(json!({
            "rank": matroid.full_rank(),
            "share": share,
            "bases": to_value(&packing.parts),
            "union_rank": union_rank,
            "allocation": to_value(&allocation),
            "values": values,
        }))
    })())
}

/// Reduction report for a 3DM source `{"m3":..,"triples":[..]}` with
/// `m3 <= 3`, plus the value of every triple-shaped set under the reduced
/// valuation.
#[wasm_bindgen]
pub fn verify_3dm(source_json: &str) -> String {
    respond((|| {
        let inst = parse_3dm(source_json)?;
        let report = verify_reduction(&inst)?;
        let v = reduce_3dm(&inst)?.valuation(0)?;
        let m3 = inst.m3;
        let mut cells = Vec::new();
        for x in 0..m3 {
            for y in 0..m3 {
                for z in 0..m3 {
                    let set: GoodSet = inst.triple_goods([x, y, z]);
                    cells.push(
                        json!({"triple": [x, y, z], "value": rational::format(&v.value(set))}),
                    );
                }
            }
        }
        let mut out = to_value(&report);
        out["triple_values"] = Value::Array(cells);
        Ok(out)
    })())
}
