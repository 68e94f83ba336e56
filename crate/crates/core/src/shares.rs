//! Maximin share and any price share, with witnesses and certificates.
//!
//! APS is computed from its set-based program: the largest `z` for which a
//! probability distribution over sets of value at least `z` puts at most
//! `1/n` weight on every good. For a fixed `z` that is a fractional packing
//! LP; its dual, normalized onto the price simplex, is the price vector that
//! certifies no larger share is possible.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::enumerate::{check_goods, subsets, PartitionMode, Partitions};
use crate::error::{Error, Result};
use crate::goodset::GoodSet;
use crate::instance::Allocation;
use crate::lp::{self, LinearProgram, LpStatus, Relation};
use crate::matroid::{BasePacking, Matroid};
use crate::rational::{self, Rational};
use crate::valuation::{MarginalClass, Valuation, ValuationKind};

/// Largest ground set for which APS programs are built (2^m columns).
pub const MAX_APS_GOODS: usize = 20;

/// Subset values are tabulated up front below this many goods.
const TABULATE_GOODS: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MmsResult {
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    /// A complete allocation whose worst bundle attains `value`.
    pub allocation: Allocation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightedSet {
    pub set: GoodSet,
    #[serde(with = "rational::as_string")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApsResult {
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    /// Sets of value at least `value`, weights summing to 1, at most `1/n` per good.
    pub witness: Vec<WeightedSet>,
    /// Prices on the simplex under which nothing affordable with budget `1/n`
    /// reaches the next candidate share value.
    #[serde(rename = "prices", with = "rational::vec_as_string")]
    pub price_certificate: Vec<Rational>,
    /// Best value affordable at `price_certificate` with budget `1/n`.
    #[serde(skip)]
    pub certificate_demand: Rational,
}

/// Outcome of the fixed-`z` program.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<WeightedSet>),
    /// The packing optimum is below 1; `dual` (one entry per good) covers
    /// every set of value at least `z` with weight at least 1.
    Infeasible {
        packing_value: Rational,
        dual: Vec<Rational>,
    },
}

/// Values of all subsets when small enough to tabulate, else direct calls.
struct Values<'a> {
    valuation: &'a Valuation,
    table: Option<Vec<Rational>>,
}

impl<'a> Values<'a> {
    fn new(valuation: &'a Valuation) -> Result<Self> {
        let table = if valuation.goods() <= TABULATE_GOODS {
            Some(valuation.value_table()?)
        } else {
            None
        };
        Ok(Values { valuation, table })
    }

    fn get(&self, set: GoodSet) -> std::borrow::Cow<'_, Rational> {
        match &self.table {
            Some(t) => std::borrow::Cow::Borrowed(&t[set.bits() as usize]),
            None => std::borrow::Cow::Owned(self.valuation.value(set)),
        }
    }
}

/// Exact maximin share by exhaustive search over partitions into `n` bundles.
///
/// Partitions are enumerated up to relabelling (bundles are judged by one
/// valuation); the first maximizer in enumeration order is reported.
pub fn mms_exact(v: &Valuation, n: usize, work_bound: u128) -> Result<MmsResult> {
    let m = v.goods();
    let values = Values::new(v)?;
    let mut best: Option<(Rational, Vec<GoodSet>)> = None;
    for parts in Partitions::new(m, n, PartitionMode::Canonical, work_bound)? {
        let worst = parts
            .iter()
            .map(|&p| values.get(p))
            .min()
            .expect("n >= 1")
            .into_owned();
        if best.as_ref().is_none_or(|(b, _)| worst > *b) {
            best = Some((worst, parts));
        }
    }
    let (value, bundles) = best.expect("at least one partition");
    Ok(MmsResult {
        value,
        allocation: Allocation {
            bundles,
            leftover: GoodSet::EMPTY,
        },
    })
}

fn check_aps_size(v: &Valuation, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("need at least one agent".into()));
    }
    if v.goods() > MAX_APS_GOODS {
        return Err(Error::Bound {
            what: "goods for APS",
            value: v.goods() as u128,
            limit: MAX_APS_GOODS as u128,
        });
    }
    Ok(())
}

fn feasible_with_table(
    table: &[Rational],
    m: usize,
    n: usize,
    z: &Rational,
) -> Result<Feasibility> {
    if !z.is_positive() {
        return Ok(Feasibility::Feasible(vec![WeightedSet {
            set: GoodSet::EMPTY,
            weight: rational::one(),
        }]));
    }
    // A set whose value stays >= z after dropping some good is never needed:
    // its weight can move to the smaller set without breaking any capacity.
    let reaches = |s: GoodSet| table[s.bits() as usize] >= *z;
    let columns: Vec<GoodSet> = subsets(m)?
        .filter(|&s| reaches(s) && !s.iter().any(|g| reaches(s.without(g))))
        .collect();

    let mut program = LinearProgram::new(vec![rational::one(); columns.len()]);
    let capacity = Rational::new(1.into(), (n as i64).into());
    for g in 0..m {
        let row = columns
            .iter()
            .map(|c| {
                if c.contains(g) {
                    rational::one()
                } else {
                    rational::zero()
                }
            })
            .collect();
        program.add(row, Relation::Le, capacity.clone());
    }
    let solution = lp::solve(&program)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "packing LP returned {:?}",
            solution.status
        )));
    }

    let total = solution.objective_value.clone();
    if total >= rational::one() {
        let witness = columns
            .iter()
            .zip(&solution.primal)
            .filter(|(_, x)| x.is_positive())
            .map(|(&set, x)| WeightedSet {
                set,
                weight: x / &total,
            })
            .collect();
        Ok(Feasibility::Feasible(witness))
    } else {
        Ok(Feasibility::Infeasible {
            packing_value: total,
            dual: solution.dual,
        })
    }
}

/// Whether share `z` is achievable: some distribution over sets of value at
/// least `z` loads every good with at most `1/n`.
pub fn aps_feasible(v: &Valuation, n: usize, z: &Rational) -> Result<Feasibility> {
    check_aps_size(v, n)?;
    feasible_with_table(&v.value_table()?, v.goods(), n, z)
}

/// Exact any price share with a primal witness and a price certificate.
pub fn aps_exact(v: &Valuation, n: usize) -> Result<ApsResult> {
    check_aps_size(v, n)?;
    let m = v.goods();
    let table = v.value_table()?;
    let mut candidates: Vec<Rational> = table.clone();
    candidates.sort();
    candidates.dedup();

    // Feasibility is monotone in z; index `lo` is feasible, `hi` is not.
    let mut lo = candidates
        .iter()
        .rposition(|c| !c.is_positive())
        .expect("v(∅) = 0 is a candidate");
    let mut hi = candidates.len();
    let mut witness = match feasible_with_table(&table, m, n, &candidates[lo])? {
        Feasibility::Feasible(w) => w,
        Feasibility::Infeasible { .. } => unreachable!("z <= 0 is always feasible"),
    };
    let mut blocking_dual: Option<Vec<Rational>> = None;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match feasible_with_table(&table, m, n, &candidates[mid])? {
            Feasibility::Feasible(w) => {
                lo = mid;
                witness = w;
            }
            Feasibility::Infeasible { dual, .. } => {
                hi = mid;
                blocking_dual = Some(dual);
            }
        }
    }
    let value = candidates[lo].clone();

    // `blocking_dual` was recorded when `hi` last moved, so it belongs to the
    // candidate right above the share.
    let prices = match blocking_dual {
        Some(dual) => {
            let total: Rational = dual.iter().sum();
            dual.iter().map(|y| y / &total).collect()
        }
        None => uniform_prices(m),
    };
    let budget = Rational::new(1.into(), (n as i64).into());
    let (_, certificate_demand) = demand(v, &prices, &budget)?;

    Ok(ApsResult {
        value,
        witness,
        price_certificate: prices,
        certificate_demand,
    })
}

fn uniform_prices(m: usize) -> Vec<Rational> {
    (0..m)
        .map(|_| Rational::new(1.into(), (m as i64).into()))
        .collect()
}

/// Best bundle affordable within `budget` at `prices`; ties go to the smaller
/// bundle, then the smaller bitmask.
pub fn demand(
    v: &Valuation,
    prices: &[Rational],
    budget: &Rational,
) -> Result<(GoodSet, Rational)> {
    check_goods(v.goods())?;
    if budget.is_negative() {
        return Err(Error::Argument(format!("negative budget {budget}")));
    }
    if prices.len() != v.goods() {
        return Err(Error::Argument(format!(
            "{} prices for {} goods",
            prices.len(),
            v.goods()
        )));
    }
    let mut best = (GoodSet::EMPTY, v.value(GoodSet::EMPTY));
    for s in subsets(v.goods())? {
        let cost: Rational = s.iter().map(|g| &prices[g]).sum();
        if cost > *budget {
            continue;
        }
        let value = v.value(s);
        if value > best.1 || (value == best.1 && s.len() < best.0.len()) {
            best = (s, value);
        }
    }
    Ok(best)
}

/// Upper bound on APS from a single price vector on the simplex: the demand
/// value at budget `1/n`. With no goods the empty price vector is accepted.
pub fn aps_upper_from_prices(v: &Valuation, n: usize, prices: &[Rational]) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Argument("need at least one agent".into()));
    }
    if prices.iter().any(|p| p.is_negative()) {
        return Err(Error::Argument("negative price".into()));
    }
    let total: Rational = prices.iter().sum();
    if !prices.is_empty() && !total.is_one() {
        return Err(Error::Argument(format!("prices sum to {total}, not 1")));
    }
    let budget = Rational::new(1.into(), (n as i64).into());
    Ok(demand(v, prices, &budget)?.1)
}

fn require_binary_marginals(v: &Valuation) -> Result<()> {
    match v.kind() {
        ValuationKind::BinaryXos(_) | ValuationKind::MatroidRank(_) => Ok(()),
        _ => match v.check_properties()?.marginal_class {
            MarginalClass::Binary => Ok(()),
            class => Err(Error::ValuationClass(format!(
                "{} valuation has {class:?} marginals, binary required",
                v.kind_name()
            ))),
        },
    }
}

/// True iff MMS >= 1 for a binary-marginal valuation.
///
/// With identical bundles the bipartite matching of agents to unit goods
/// reduces to counting: MMS >= 1 exactly when at least `n` singletons are
/// worth 1 (each bundle then holds one, and by subadditivity is worth 1).
pub fn mms_zero_check(v: &Valuation, n: usize) -> Result<bool> {
    require_binary_marginals(v)?;
    let unit_goods = (0..v.goods())
        .filter(|&g| v.value(GoodSet::singleton(g)).is_one())
        .count();
    Ok(unit_goods >= n)
}

/// True iff APS = 0, for binary XOS valuations (equivalent to MMS = 0).
pub fn aps_zero_check(v: &Valuation, n: usize) -> Result<bool> {
    if v.xos_family().is_none() {
        return Err(Error::ValuationClass(format!(
            "APS zero check needs a binary XOS valuation, got {}",
            v.kind_name()
        )));
    }
    Ok(!mms_zero_check(v, n)?)
}

/// Share of a matroid rank valuation: the largest `z` such that the
/// truncation at `z` has `n` disjoint bases, together with those bases.
/// This is simultaneously the MMS and the APS of the rank function.
pub fn mrf_share(matroid: &Matroid, n: usize) -> (usize, BasePacking) {
    let has_bases = |z: usize| matroid.truncate(z).disjoint_bases(n).is_some();
    let (mut lo, mut hi) = (0, matroid.full_rank() + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if has_bases(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, matroid.truncate(lo).partition_into_independent(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_WORK_BOUND;
    use crate::rational::{frac, int};

    fn lower_bound() -> Valuation {
        Valuation::binary_xos(
            6,
            vec![
                GoodSet::from_indices([0, 1, 2]),
                GoodSet::from_indices([3, 4, 5]),
            ],
        )
        .unwrap()
    }

    fn k3() -> Matroid {
        Matroid::graphic(3, vec![[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn check_witness(v: &Valuation, n: usize, result: &ApsResult) {
        let total: Rational = result.witness.iter().map(|w| &w.weight).sum();
        assert_eq!(total, int(1));
        for w in &result.witness {
            assert!(w.weight.is_positive());
            assert!(v.value(w.set) >= result.value);
        }
        for g in 0..v.goods() {
            let load: Rational = result
                .witness
                .iter()
                .filter(|w| w.set.contains(g))
                .map(|w| &w.weight)
                .sum();
            assert!(load <= frac(1, n as i64));
        }
        let price_total: Rational = result.price_certificate.iter().sum();
        if v.goods() > 0 {
            assert_eq!(price_total, int(1));
        }
        assert_eq!(result.certificate_demand, result.value);
    }

    #[test]
    fn mms_examples() {
        let r = mms_exact(&lower_bound(), 3, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(r.value, int(1));
        assert!(r.allocation.is_complete(6));
        assert_eq!(r.allocation.bundles.len(), 3);

        let add = Valuation::additive(vec![int(3), int(1), int(1), int(1)]).unwrap();
        assert_eq!(
            mms_exact(&add, 2, DEFAULT_WORK_BOUND).unwrap().value,
            int(3)
        );

        assert_eq!(
            mms_exact(&add, 1, DEFAULT_WORK_BOUND).unwrap().value,
            int(6)
        );
        assert!(matches!(
            mms_exact(&add, 2, 10),
            Err(Error::WorkBound { .. })
        ));
    }

    #[test]
    fn aps_feasibility_examples() {
        let v = lower_bound();
        match aps_feasible(&v, 3, &int(2)).unwrap() {
            Feasibility::Feasible(w) => {
                assert!(w.iter().all(|s| v.value(s.set) >= int(2)));
            }
            other => panic!("expected feasible, got {other:?}"),
        }
        assert!(matches!(
            aps_feasible(&v, 3, &int(3)).unwrap(),
            Feasibility::Infeasible { .. }
        ));
        match aps_feasible(&v, 3, &int(0)).unwrap() {
            Feasibility::Feasible(w) => assert_eq!(
                w,
                vec![WeightedSet {
                    set: GoodSet::EMPTY,
                    weight: int(1)
                }]
            ),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn aps_examples() {
        let v = lower_bound();
        let r = aps_exact(&v, 3).unwrap();
        assert_eq!(r.value, int(2));
        check_witness(&v, 3, &r);

        let k3v = Valuation::matroid_rank(k3());
        let r = aps_exact(&k3v, 2).unwrap();
        assert_eq!(r.value, int(1));
        check_witness(&k3v, 2, &r);

        let add = Valuation::additive(vec![int(3), int(1), int(1), int(1)]).unwrap();
        let r = aps_exact(&add, 1).unwrap();
        assert_eq!(r.value, int(6));
        check_witness(&add, 1, &r);
    }

    #[test]
    fn aps_additive_two_agents() {
        let add = Valuation::additive(vec![int(3), int(1), int(1), int(1)]).unwrap();
        let r = aps_exact(&add, 2).unwrap();
        assert_eq!(r.value, int(3));
        check_witness(&add, 2, &r);
    }

    #[test]
    fn demand_examples() {
        let v = lower_bound();
        let sixth = vec![frac(1, 6); 6];
        let (set, value) = demand(&v, &sixth, &frac(1, 3)).unwrap();
        assert_eq!(value, int(2));
        assert_eq!(set, GoodSet::from_indices([0, 1]));

        let (set, value) = demand(&v, &vec![int(0); 6], &frac(1, 3)).unwrap();
        assert_eq!(value, int(3));
        // smallest set of value 3 wins the tie
        assert_eq!(set, GoodSet::from_indices([0, 1, 2]));

        let (set, value) = demand(&v, &sixth, &int(0)).unwrap();
        assert_eq!((set, value), (GoodSet::EMPTY, int(0)));
        assert!(demand(&v, &sixth, &int(-1)).is_err());
    }

    #[test]
    fn price_upper_bounds() {
        let v = lower_bound();
        assert_eq!(
            aps_upper_from_prices(&v, 3, &vec![frac(1, 6); 6]).unwrap(),
            int(2)
        );
        let unit = Valuation::additive(vec![int(1); 6]).unwrap();
        assert_eq!(
            aps_upper_from_prices(&unit, 3, &vec![frac(1, 6); 6]).unwrap(),
            int(2)
        );
        assert_eq!(
            aps_upper_from_prices(&v, 1, &vec![frac(1, 6); 6]).unwrap(),
            int(3)
        );
        assert!(aps_upper_from_prices(&v, 3, &vec![frac(1, 7); 6]).is_err());
    }

    #[test]
    fn zero_checks() {
        let single = Valuation::binary_xos(2, vec![GoodSet::singleton(0)]).unwrap();
        assert!(!mms_zero_check(&single, 2).unwrap());
        assert!(aps_zero_check(&single, 2).unwrap());
        assert!(mms_zero_check(&lower_bound(), 3).unwrap());
        assert!(!aps_zero_check(&lower_bound(), 3).unwrap());
        let empty = Valuation::binary_xos(0, vec![GoodSet::EMPTY]).unwrap();
        assert!(!mms_zero_check(&empty, 1).unwrap());
        assert!(!aps_zero_check(&single, 1).unwrap());

        let add = Valuation::additive(vec![int(2)]).unwrap();
        assert!(matches!(
            mms_zero_check(&add, 1),
            Err(Error::ValuationClass(_))
        ));
        assert!(matches!(
            aps_zero_check(&Valuation::matroid_rank(k3()), 1),
            Err(Error::ValuationClass(_))
        ));
    }

    #[test]
    fn mrf_share_examples() {
        let (z, packing) = mrf_share(&Matroid::uniform(3, 10).unwrap(), 3);
        assert_eq!(z, 3);
        assert!(packing.parts.iter().all(|p| p.len() == 3));
        assert_eq!(mrf_share(&k3(), 2).0, 1);
        assert_eq!(mrf_share(&k3(), 1).0, 2);
    }

    #[test]
    fn result_json_shape() {
        let r = aps_exact(&lower_bound(), 3).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["value"], "2");
        assert!(json["witness"][0]["set"].is_array());
        assert!(json["witness"][0]["weight"].is_string());
        assert_eq!(json["prices"].as_array().unwrap().len(), 6);
    }
}
