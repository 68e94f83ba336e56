//! 3-dimensional matching instances, their reduction to ternary submodular
//! fair division, and an end-to-end check of that reduction at small sizes.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::DEFAULT_WORK_BOUND;
use crate::error::{Error, Result};
use crate::goodset::{GoodSet, MAX_GOODS};
use crate::instance::{Allocation, Instance, ValuationSpec};
use crate::rational::{self, Rational};
use crate::shares::{aps_exact, mms_exact};
use crate::valuation::MarginalClass;

/// Largest `m3` accepted by [`verify_reduction`].
pub const MAX_VERIFY_M3: usize = 3;

/// Triples `(x, y, z)` over three parts of `m3` elements each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeDmInstance {
    pub m3: usize,
    pub triples: Vec<[usize; 3]>,
}

impl ThreeDmInstance {
    pub fn new(m3: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let inst = ThreeDmInstance { m3, triples };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m3 == 0 {
            return Err(Error::Instance("3DM instance needs m3 >= 1".into()));
        }
        if 3 * self.m3 > MAX_GOODS {
            return Err(Error::Bound {
                what: "3DM goods",
                value: 3 * self.m3 as u128,
                limit: MAX_GOODS as u128,
            });
        }
        let mut seen = HashSet::new();
        for t in &self.triples {
            if t.iter().any(|&c| c >= self.m3) {
                return Err(Error::Instance(format!(
                    "triple {t:?} out of range for m3={}",
                    self.m3
                )));
            }
            if !seen.insert(*t) {
                return Err(Error::Instance(format!("duplicate triple {t:?}")));
            }
        }
        Ok(())
    }

    /// Goods `x`, `m3 + y`, `2 m3 + z` of a triple.
    pub fn triple_goods(&self, t: [usize; 3]) -> GoodSet {
        GoodSet::from_indices([t[0], self.m3 + t[1], 2 * self.m3 + t[2]])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("3DM instance serializes")
    }
}

pub fn parse_3dm(text: &str) -> Result<ThreeDmInstance> {
    let inst: ThreeDmInstance =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    inst.validate()?;
    Ok(inst)
}

/// `m3` agents sharing the ternary valuation of `inst` over goods
/// `x0.., y0.., z0..`.
pub fn reduce_3dm(inst: &ThreeDmInstance) -> Result<Instance> {
    inst.validate()?;
    let m3 = inst.m3;
    let goods = ["x", "y", "z"]
        .iter()
        .flat_map(|p| (0..m3).map(move |i| format!("{p}{i}")))
        .collect();
    let spec = ValuationSpec::Ternary3dm {
        m3,
        triples: inst.triples.clone(),
    };
    Instance::new(m3, goods, vec![spec; m3])
}

/// First perfect matching in lexicographic order of triple indices.
pub fn solve_3dm_bruteforce(
    inst: &ThreeDmInstance,
    work_bound: u128,
) -> Result<Option<Vec<[usize; 3]>>> {
    inst.validate()?;
    let combos = binomial(inst.triples.len() as u128, inst.m3 as u128);
    if combos > work_bound {
        return Err(Error::WorkBound {
            assignments: combos,
            bound: work_bound,
        });
    }
    let sets: Vec<GoodSet> = inst.triples.iter().map(|&t| inst.triple_goods(t)).collect();
    let mut chosen = Vec::with_capacity(inst.m3);
    if search(&sets, inst.m3, 0, GoodSet::EMPTY, &mut chosen) {
        Ok(Some(chosen.iter().map(|&i| inst.triples[i]).collect()))
    } else {
        Ok(None)
    }
}

fn search(
    sets: &[GoodSet],
    need: usize,
    start: usize,
    used: GoodSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == need {
        return true;
    }
    for i in start..sets.len() {
        if sets.len() - i < need - chosen.len() {
            break;
        }
        if sets[i].is_disjoint(used) {
            chosen.push(i);
            if search(sets, need, i + 1, used.union(sets[i]), chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub m3: usize,
    pub matching: Option<Vec<[usize; 3]>>,
    #[serde(with = "rational::as_string")]
    pub mms: Rational,
    pub mms_allocation: Allocation,
    #[serde(with = "rational::as_string")]
    pub aps: Rational,
    pub submodular: bool,
    pub marginal_class: MarginalClass,
    /// Checks that failed; empty when the reduction behaved as expected.
    pub failures: Vec<String>,
    pub consistent: bool,
}

/// Solves `inst` by brute force and computes the MMS of the reduced
/// instance, checking that a matching exists exactly when the MMS is 3, that
/// the MMS is at most 5/2 otherwise, and that the shared valuation is
/// submodular with marginals in {0, 1/2, 1}.
pub fn verify_reduction(inst: &ThreeDmInstance) -> Result<ReductionReport> {
    inst.validate()?;
    if inst.m3 > MAX_VERIFY_M3 {
        return Err(Error::Bound {
            what: "m3 for reduction check",
            value: inst.m3 as u128,
            limit: MAX_VERIFY_M3 as u128,
        });
    }
    let reduced = reduce_3dm(inst)?;
    let v = reduced.valuation(0)?;
    let matching = solve_3dm_bruteforce(inst, DEFAULT_WORK_BOUND)?;
    let mms = mms_exact(&v, reduced.n, DEFAULT_WORK_BOUND)?;
    let aps = aps_exact(&v, reduced.n)?.value;
    let props = v.check_properties()?;

    let three = rational::int(3);
    let mut failures = Vec::new();
    if matching.is_some() != (mms.value == three) {
        failures.push(format!(
            "matching {} but MMS = {}",
            if matching.is_some() {
                "exists"
            } else {
                "absent"
            },
            mms.value
        ));
    }
    if matching.is_none() && mms.value > rational::frac(5, 2) {
        failures.push(format!("no matching but MMS = {} > 5/2", mms.value));
    }
    if !props.submodular {
        failures.push("valuation not submodular".into());
    }
    if props.marginal_class == MarginalClass::Other {
        failures.push("marginal outside {0, 1/2, 1}".into());
    }
    if aps < mms.value {
        failures.push(format!("APS {aps} below MMS {}", mms.value));
    }
    Ok(ReductionReport {
        m3: inst.m3,
        matching,
        mms: mms.value,
        mms_allocation: mms.allocation,
        aps,
        submodular: props.submodular,
        marginal_class: props.marginal_class,
        consistent: failures.is_empty(),
        failures,
    })
}

/// Three agents sharing the binary XOS valuation with family
/// `{{g1, g2, g3}, {g4, g5, g6}}`: MMS 1, APS 2.
pub fn gen_xos_lowerbound() -> Instance {
    let family = vec![
        GoodSet::from_indices([0, 1, 2]),
        GoodSet::from_indices([3, 4, 5]),
    ];
    let goods = (1..=6).map(|g| format!("g{g}")).collect();
    Instance::new(3, goods, vec![ValuationSpec::BinaryXos { family }; 3])
        .expect("fixed instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn inst(m3: usize, triples: &[[usize; 3]]) -> ThreeDmInstance {
        ThreeDmInstance::new(m3, triples.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ThreeDmInstance::new(0, vec![]).is_err());
        assert!(ThreeDmInstance::new(2, vec![[0, 2, 0]]).is_err());
        assert!(ThreeDmInstance::new(2, vec![[0, 1, 0], [0, 1, 0]]).is_err());
        assert!(ThreeDmInstance::new(9, vec![]).is_err());
        assert!(parse_3dm(r#"{"m3":2,"triples":[[0,0,0],[1,1,1]]}"#).is_ok());
        assert!(parse_3dm(r#"{"m3":2,"triples":[[0,0]]}"#).is_err());
    }

    #[test]
    fn reduced_shape_and_values() {
        let i = inst(2, &[[0, 0, 0], [1, 1, 1]]);
        let r = reduce_3dm(&i).unwrap();
        assert_eq!((r.n, r.m()), (2, 6));
        assert_eq!(r.goods, vec!["x0", "x1", "y0", "y1", "z0", "z1"]);
        let v = r.valuation(1).unwrap();
        assert_eq!(v.value(GoodSet::from_indices([0, 2, 4])), int(3));
        assert_eq!(v.value(GoodSet::from_indices([0, 3, 4])), frac(5, 2));
        assert_eq!(v.value(GoodSet::from_indices([0, 1, 2, 3])), int(3));
    }

    #[test]
    fn bruteforce_examples() {
        let found =
            solve_3dm_bruteforce(&inst(2, &[[0, 0, 0], [1, 1, 1]]), DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(found, Some(vec![[0, 0, 0], [1, 1, 1]]));
        let gap =
            solve_3dm_bruteforce(&inst(2, &[[0, 0, 0], [0, 1, 1]]), DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(gap, None);
        assert_eq!(
            solve_3dm_bruteforce(&inst(1, &[]), DEFAULT_WORK_BOUND).unwrap(),
            None
        );
        // earliest pair in index order wins
        let many = inst(2, &[[0, 0, 1], [0, 0, 0], [1, 1, 1], [1, 1, 0]]);
        assert_eq!(
            solve_3dm_bruteforce(&many, DEFAULT_WORK_BOUND).unwrap(),
            Some(vec![[0, 0, 1], [1, 1, 0]])
        );
        assert!(solve_3dm_bruteforce(&many, 6).is_ok());
        assert!(matches!(
            solve_3dm_bruteforce(&many, 5),
            Err(Error::WorkBound { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(27, 3), 2925);
    }

    #[test]
    fn verify_examples() {
        let r = verify_reduction(&inst(2, &[[0, 0, 0], [1, 1, 1]])).unwrap();
        assert_eq!(r.mms, int(3));
        assert!(r.consistent, "{:?}", r.failures);
        assert_eq!(r.aps, int(3));

        let r = verify_reduction(&inst(2, &[[0, 0, 0], [0, 1, 1]])).unwrap();
        assert_eq!(r.mms, frac(5, 2));
        assert!(r.matching.is_none());
        assert!(r.consistent, "{:?}", r.failures);

        let r = verify_reduction(&inst(1, &[[0, 0, 0]])).unwrap();
        assert_eq!(r.mms, int(3));
        assert!(r.consistent);

        assert!(matches!(
            verify_reduction(&inst(4, &[])),
            Err(Error::Bound { .. })
        ));
    }

    #[test]
    fn lower_bound_instance() {
        let i = gen_xos_lowerbound();
        assert_eq!((i.n, i.m()), (3, 6));
        let v = i.valuation(0).unwrap();
        assert_eq!(mms_exact(&v, 3, DEFAULT_WORK_BOUND).unwrap().value, int(1));
        assert_eq!(aps_exact(&v, 3).unwrap().value, int(2));
    }
}
