use std::fs;
use std::path::Path;

use fairshare::enumerate::DEFAULT_WORK_BOUND;
use fairshare::generate::{random_3dm, random_additive, random_matroid, random_xos};
use fairshare::reductions::{gen_xos_lowerbound, parse_3dm, verify_reduction};
use fairshare::shares::{aps_exact, demand, mms_exact, mrf_share};
use fairshare::xos::{certified_xos_bound, identical_mrf_allocation};
use fairshare::{parse_instance, rational, Error, Instance, Rational, Result};
use serde_json::{json, Value};

use crate::{Command, GenKind};

pub const WORK_BOUND_VAR: &str = "FAIRSHARE_WORK_BOUND";

pub struct Output {
    pub json: Value,
    pub summary: String,
}

pub fn work_bound_from_env() -> std::result::Result<u128, String> {
    match std::env::var(WORK_BOUND_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| format!("{WORK_BOUND_VAR}={text:?} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_WORK_BOUND),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("result serializes")
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

pub fn run(command: Command, work_bound: u128) -> Result<Output> {
    match command {
        Command::Mms { file, agent } => {
            let inst = load(&file)?;
            let v = inst.valuation(agent)?;
            let result = mms_exact(&v, inst.n, work_bound)?;
            Ok(Output {
                summary: format!(
                    "agent {agent}: MMS = {} over {} agents",
                    result.value, inst.n
                ),
                json: to_value(&result),
            })
        }
        Command::Aps {
            file,
            agent,
            witness,
            certificate,
        } => {
            let inst = load(&file)?;
            let v = inst.valuation(agent)?;
            let result = aps_exact(&v, inst.n)?;
            let mut json = json!({"value": rational::format(&result.value)});
            if witness {
                json["witness"] = to_value(&result.witness);
            }
            if certificate {
                json["prices"] = json!(strings(&result.price_certificate));
            }
            Ok(Output {
                summary: format!(
                    "agent {agent}: APS = {} over {} agents",
                    result.value, inst.n
                ),
                json,
            })
        }
        Command::Check { file } => {
            let inst = load(&file)?;
            let mut agents = Vec::with_capacity(inst.n);
            let mut kinds = Vec::with_capacity(inst.n);
            for agent in 0..inst.n {
                let v = inst.valuation(agent)?;
                let report = v.check_properties()?;
                kinds.push(v.kind_name());
                let mut entry = to_value(&report);
                entry["agent"] = json!(agent);
                entry["kind"] = json!(v.kind_name());
                agents.push(entry);
            }
            Ok(Output {
                summary: format!(
                    "{} agents, {} goods: {}",
                    inst.n,
                    inst.m(),
                    kinds.join(", ")
                ),
                json: json!({"n": inst.n, "m": inst.m(), "agents": agents}),
            })
        }
        Command::XosBalance { file, agent } => {
            let inst = load(&file)?;
            let v = inst.valuation(agent)?;
            let bound = certified_xos_bound(&v, inst.n, work_bound)?;
            Ok(Output {
                summary: format!(
                    "agent {agent}: MMS = {}, APS <= {} (limit {})",
                    bound.mms,
                    bound.aps_upper,
                    rational::int(2) * &bound.mms + rational::one()
                ),
                json: to_value(&bound),
            })
        }
        Command::MrfAllocate { file } => {
            let inst = load(&file)?;
            if let Some(i) = (1..inst.n).find(|&i| inst.valuations[i] != inst.valuations[0]) {
                return Err(Error::ValuationClass(format!(
                    "agent {i} has a different valuation from agent 0; identical valuations required"
                )));
            }
            let matroid = inst.valuation(0)?.as_matroid()?;
            let (share, _) = mrf_share(&matroid, inst.n);
            let allocation = identical_mrf_allocation(&matroid, inst.n);
            let values: Vec<usize> = allocation
                .bundles
                .iter()
                .map(|&b| matroid.rank(b))
                .collect();
            Ok(Output {
                summary: format!("{} agents: share {share}, bundle values {values:?}", inst.n),
                json: json!({
                    "share": share.to_string(),
                    "allocation": to_value(&allocation),
                    "values": values.iter().map(usize::to_string).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Demand {
            file,
            agent,
            prices,
            budget,
        } => {
            let inst = load(&file)?;
            let v = inst.valuation(agent)?;
            let prices = parse_prices(&read(&prices)?)?;
            let budget = match budget {
                Some(text) => rational::parse(&text)?,
                None => rational::frac(1, inst.n as i64),
            };
            let (bundle, value) = demand(&v, &prices, &budget)?;
            let cost: Rational = bundle.iter().map(|g| &prices[g]).sum();
            Ok(Output {
                summary: format!("agent {agent}: bundle {bundle} worth {value} at cost {cost}"),
                json: json!({
                    "bundle": to_value(&bundle),
                    "value": rational::format(&value),
                    "cost": rational::format(&cost),
                }),
            })
        }
        Command::Gen { kind } => generate(kind),
        Command::Verify3dm { file } => {
            let inst = parse_3dm(&read(&file)?)?;
            let report = verify_reduction(&inst)?;
            if !report.consistent {
                return Err(Error::Internal(format!(
                    "reduction check failed: {}",
                    report.failures.join("; ")
                )));
            }
            Ok(Output {
                summary: format!(
                    "m3 = {}: matching {}, MMS = {}, consistent",
                    report.m3,
                    if report.matching.is_some() {
                        "found"
                    } else {
                        "absent"
                    },
                    report.mms
                ),
                json: to_value(&report),
            })
        }
    }
}

fn parse_prices(text: &str) -> Result<Vec<Rational>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = match &doc {
        Value::Array(list) => list,
        Value::Object(map) => match map.get("prices") {
            Some(Value::Array(list)) => list,
            _ => {
                return Err(Error::Parse(
                    "prices object lacks a \"prices\" array".into(),
                ))
            }
        },
        _ => return Err(Error::Parse("prices must be an array or an object".into())),
    };
    list.iter()
        .map(|item| match item {
            Value::String(s) => rational::parse(s),
            Value::Number(n) if n.is_u64() || n.is_i64() => rational::parse(&n.to_string()),
            other => Err(Error::Parse(format!(
                "price {other} is not a rational string"
            ))),
        })
        .collect()
}

fn generate(kind: GenKind) -> Result<Output> {
    let (json, summary) = match kind {
        GenKind::XosLb => {
            let inst = gen_xos_lowerbound();
            (
                to_value(&inst),
                "lower-bound instance: 3 agents, 6 goods".to_string(),
            )
        }
        GenKind::Xos {
            m,
            n,
            families,
            density,
            seed,
        } => {
            let inst = random_xos(m, n, families, density, seed)?;
            (
                to_value(&inst),
                format!("binary XOS: {n} agents, {m} goods, seed {seed}"),
            )
        }
        GenKind::Matroid {
            m,
            n,
            family,
            vertices,
            seed,
        } => {
            let family = family.map(|f| f.parse()).transpose()?;
            let inst = random_matroid(m, n, family, vertices, seed)?;
            (
                to_value(&inst),
                format!("matroid rank: {n} agents, {m} goods, seed {seed}"),
            )
        }
        GenKind::Additive { m, n, max, seed } => {
            let inst = random_additive(m, n, max, seed)?;
            (
                to_value(&inst),
                format!("additive: {n} agents, {m} goods, seed {seed}"),
            )
        }
        GenKind::ThreeDm { m3, k, seed } => {
            let inst = random_3dm(m3, k, seed)?;
            (
                to_value(&inst),
                format!("3DM: m3 = {m3}, {k} triples, seed {seed}"),
            )
        }
    };
    Ok(Output { json, summary })
}
