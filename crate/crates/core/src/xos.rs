//! Balanced MMS allocations for binary XOS valuations and the price vectors
//! built from them, plus the exact allocation for identical matroid rank
//! valuations.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::goodset::GoodSet;
use crate::instance::Allocation;
use crate::matroid::Matroid;
use crate::rational::{self, Rational};
use crate::shares::{aps_upper_from_prices, mms_exact, mrf_share};
use crate::valuation::{xos_witness_subset, Valuation};

/// Partial allocation with every bundle worth `mms` or `mms + 1`, no wasted
/// goods in any bundle, and leftover goods worth at most `mms`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalancedAllocation {
    pub bundles: Vec<GoodSet>,
    pub leftover: GoodSet,
    #[serde(with = "rational::as_string")]
    pub mms: Rational,
    /// Rounds of the swap phase; never more than `n - 1`.
    pub swap_rounds: usize,
}

impl BalancedAllocation {
    /// Checks the output contract against `v`, describing the first failure.
    pub fn verify(&self, v: &Valuation) -> std::result::Result<(), String> {
        let low = &self.mms;
        let high = &self.mms + rational::one();
        for (k, &b) in self.bundles.iter().enumerate() {
            let value = v.value(b);
            if value < *low || value > high {
                return Err(format!(
                    "bundle {k} = {b} has value {value}, outside [{low}, {high}]"
                ));
            }
            if !v.is_non_wasteful(b) {
                return Err(format!("bundle {k} = {b} is wasteful"));
            }
        }
        if v.value(self.leftover) > self.mms {
            return Err(format!(
                "leftover {} worth more than {}",
                self.leftover, self.mms
            ));
        }
        let allocation = Allocation {
            bundles: self.bundles.clone(),
            leftover: self.leftover,
        };
        allocation.validate(v.goods()).map_err(|e| e.to_string())?;
        if allocation.allocated().union(self.leftover) != GoodSet::full(v.goods()) {
            return Err("bundles and leftover do not cover all goods".into());
        }
        if !self.bundles.is_empty() && self.swap_rounds > self.bundles.len() - 1 {
            return Err(format!(
                "{} swap rounds for {} bundles",
                self.swap_rounds,
                self.bundles.len()
            ));
        }
        Ok(())
    }
}

fn as_count(value: &Rational) -> Result<usize> {
    value
        .to_integer()
        .to_usize()
        .filter(|_| value.is_integer())
        .ok_or_else(|| Error::Internal(format!("binary XOS value {value} is not a count")))
}

/// Non-wasteful balanced MMS allocation for a binary XOS valuation.
///
/// Starts from the MMS-defining allocation found by [`mms_exact`]. Each
/// bundle is then cut down to `mms` goods of a witness subset (every subset
/// of a witness is worth exactly its size). While the unallocated goods are
/// worth at least `mms + 1`, a witness of size `mms + 1` inside them replaces
/// the lowest-valued bundle (lowest index on ties), whose goods return to the
/// pool.
pub fn balanced_mms_allocation(
    v: &Valuation,
    n: usize,
    work_bound: u128,
) -> Result<BalancedAllocation> {
    let family = v.xos_family().ok_or_else(|| {
        Error::ValuationClass(format!(
            "balanced allocation needs binary XOS, got {}",
            v.kind_name()
        ))
    })?;
    let m = v.goods();
    let defining = mms_exact(v, n, work_bound)?;
    let mms = as_count(&defining.value)?;

    let mut bundles: Vec<GoodSet> = defining
        .allocation
        .bundles
        .iter()
        .map(|&b| xos_witness_subset(family, b).take_lowest(mms))
        .collect();
    let allocated = bundles.iter().fold(GoodSet::EMPTY, |u, b| u.union(*b));
    let mut leftover = GoodSet::full(m).difference(allocated);

    let mut swap_rounds = 0;
    while as_count(&v.value(leftover))? > mms {
        if swap_rounds + 1 > n - 1 {
            return Err(Error::Internal(format!(
                "swap phase exceeded {} rounds",
                n - 1
            )));
        }
        let incoming = xos_witness_subset(family, leftover).take_lowest(mms + 1);
        let k = (0..n)
            .min_by_key(|&k| (v.value(bundles[k]), k))
            .expect("n >= 1");
        leftover = leftover.union(bundles[k]).difference(incoming);
        bundles[k] = incoming;
        swap_rounds += 1;
    }

    let result = BalancedAllocation {
        bundles,
        leftover,
        mms: defining.value,
        swap_rounds,
    };
    result
        .verify(v)
        .map_err(|e| Error::Internal(format!("balanced allocation: {e}")))?;
    Ok(result)
}

/// `1 / (n |A_k|)` on each good of bundle `A_k`, 0 on leftover goods.
pub fn prices_from_balanced(alloc: &BalancedAllocation, m: usize) -> Result<Vec<Rational>> {
    let n = alloc.bundles.len() as i64;
    let mut prices = vec![rational::zero(); m];
    for (k, b) in alloc.bundles.iter().enumerate() {
        if b.is_empty() {
            return Err(Error::Argument(format!(
                "bundle {k} is empty; prices need nonempty bundles"
            )));
        }
        let price = rational::frac(1, n * b.len() as i64);
        for g in b.iter() {
            prices[g] = price.clone();
        }
    }
    Ok(prices)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifiedBound {
    #[serde(with = "rational::as_string")]
    pub mms: Rational,
    #[serde(with = "rational::as_string")]
    pub aps_upper: Rational,
    #[serde(with = "rational::vec_as_string")]
    pub prices: Vec<Rational>,
    pub allocation: BalancedAllocation,
}

/// `MMS <= APS <= aps_upper <= 2 MMS + 1` for a binary XOS valuation, with the
/// price vector behind `aps_upper`.
///
/// When MMS is 0 the balanced allocation holds at most `n - 1` single-good
/// bundles of value 1; spreading the whole budget over those goods makes each
/// cost more than `1/n`, leaving only goods of total value 0 affordable.
pub fn certified_xos_bound(v: &Valuation, n: usize, work_bound: u128) -> Result<CertifiedBound> {
    let m = v.goods();
    let allocation = balanced_mms_allocation(v, n, work_bound)?;
    let prices = if allocation.mms.is_positive() {
        prices_from_balanced(&allocation, m)?
    } else {
        let unit_goods = allocation
            .bundles
            .iter()
            .fold(GoodSet::EMPTY, |u, b| u.union(*b));
        let priced = if unit_goods.is_empty() {
            GoodSet::full(m)
        } else {
            unit_goods
        };
        let mut prices = vec![rational::zero(); m];
        for g in priced.iter() {
            prices[g] = rational::frac(1, priced.len() as i64);
        }
        prices
    };
    let aps_upper = aps_upper_from_prices(v, n, &prices)?;
    let limit = rational::int(2) * &allocation.mms + rational::one();
    if aps_upper > limit {
        return Err(Error::Internal(format!(
            "price bound {aps_upper} exceeds 2 MMS + 1 = {limit}"
        )));
    }
    if allocation.mms.is_zero() && !aps_upper.is_zero() {
        return Err(Error::Internal(format!(
            "zero-MMS prices leave {aps_upper} affordable"
        )));
    }
    Ok(CertifiedBound {
        mms: allocation.mms.clone(),
        aps_upper,
        prices,
        allocation,
    })
}

/// Complete allocation among `n` agents sharing the rank function of
/// `matroid`: one disjoint base of the truncation at the common share per
/// agent, remaining goods dealt round-robin in ascending order.
pub fn identical_mrf_allocation(matroid: &Matroid, n: usize) -> Allocation {
    let (_, packing) = mrf_share(matroid, n);
    let mut bundles = packing.parts;
    let used = bundles.iter().fold(GoodSet::EMPTY, |u, b| u.union(*b));
    for (i, g) in matroid.ground_set().difference(used).iter().enumerate() {
        let k = i % n;
        bundles[k] = bundles[k].with(g);
    }
    Allocation {
        bundles,
        leftover: GoodSet::EMPTY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_WORK_BOUND;
    use crate::rational::{frac, int};
    use crate::shares::aps_exact;

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

    #[test]
    fn balanced_on_lower_bound_instance() {
        let v = lower_bound();
        let a = balanced_mms_allocation(&v, 3, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(a.mms, int(1));
        assert!(a.verify(&v).is_ok());
        assert!(a.swap_rounds <= 2);
    }

    #[test]
    fn balanced_single_agent() {
        let v = Valuation::binary_xos(2, vec![GoodSet::full(2)]).unwrap();
        let a = balanced_mms_allocation(&v, 1, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(a.bundles, vec![GoodSet::full(2)]);
        assert_eq!(a.leftover, GoodSet::EMPTY);
        assert_eq!(a.mms, int(2));
    }

    #[test]
    fn balanced_with_zero_mms() {
        let v = Valuation::binary_xos(2, vec![GoodSet::singleton(0)]).unwrap();
        let a = balanced_mms_allocation(&v, 2, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(a.mms, int(0));
        assert!(a.bundles.iter().all(|b| b.len() <= 1));
        assert_eq!(v.value(a.leftover), int(0));
    }

    #[test]
    fn balanced_rejects_other_classes() {
        let v = Valuation::additive(vec![int(1)]).unwrap();
        assert!(matches!(
            balanced_mms_allocation(&v, 1, DEFAULT_WORK_BOUND),
            Err(Error::ValuationClass(_))
        ));
    }

    #[test]
    fn price_examples() {
        let pairs = BalancedAllocation {
            bundles: vec![
                GoodSet::from_indices([0, 3]),
                GoodSet::from_indices([1, 4]),
                GoodSet::from_indices([2, 5]),
            ],
            leftover: GoodSet::EMPTY,
            mms: int(1),
            swap_rounds: 0,
        };
        assert_eq!(
            prices_from_balanced(&pairs, 6).unwrap(),
            vec![frac(1, 6); 6]
        );

        let single = BalancedAllocation {
            bundles: vec![GoodSet::full(2)],
            leftover: GoodSet::EMPTY,
            mms: int(2),
            swap_rounds: 0,
        };
        assert_eq!(
            prices_from_balanced(&single, 2).unwrap(),
            vec![frac(1, 2); 2]
        );

        let mixed = BalancedAllocation {
            bundles: vec![
                GoodSet::from_indices([0]),
                GoodSet::from_indices([1, 2]),
                GoodSet::from_indices([3, 4, 5]),
            ],
            leftover: GoodSet::EMPTY,
            mms: int(1),
            swap_rounds: 0,
        };
        let prices = prices_from_balanced(&mixed, 6).unwrap();
        assert_eq!(
            prices,
            vec![
                frac(1, 3),
                frac(1, 6),
                frac(1, 6),
                frac(1, 9),
                frac(1, 9),
                frac(1, 9)
            ]
        );
        assert_eq!(prices.iter().sum::<Rational>(), int(1));

        let empty = BalancedAllocation {
            bundles: vec![GoodSet::EMPTY],
            leftover: GoodSet::EMPTY,
            mms: int(1),
            swap_rounds: 0,
        };
        assert!(prices_from_balanced(&empty, 0).is_err());
    }

    #[test]
    fn certified_bound_examples() {
        let v = lower_bound();
        let c = certified_xos_bound(&v, 3, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(c.mms, int(1));
        assert!(c.aps_upper <= int(3));
        assert!(c.aps_upper >= aps_exact(&v, 3).unwrap().value);

        let zero = Valuation::binary_xos(2, vec![GoodSet::singleton(0)]).unwrap();
        let c = certified_xos_bound(&zero, 2, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!((c.mms, c.aps_upper), (int(0), int(0)));

        let whole = Valuation::binary_xos(3, vec![GoodSet::from_indices([0, 2])]).unwrap();
        let c = certified_xos_bound(&whole, 1, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(c.aps_upper, int(2));
        assert_eq!(c.mms, int(2));
    }

    #[test]
    fn zero_mms_with_fewer_unit_goods_than_agents() {
        // three agents, one good worth anything
        let v = Valuation::binary_xos(3, vec![GoodSet::singleton(1)]).unwrap();
        let c = certified_xos_bound(&v, 3, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(c.aps_upper, int(0));
        assert_eq!(c.prices.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn identical_mrf_examples() {
        let u = Matroid::uniform(3, 10).unwrap();
        let a = identical_mrf_allocation(&u, 3);
        assert!(a.is_complete(10));
        assert!(a.bundles.iter().all(|&b| u.rank(b) == 3));

        let k3 = Matroid::graphic(3, vec![[0, 1], [1, 2], [0, 2]]).unwrap();
        let a = identical_mrf_allocation(&k3, 2);
        assert!(a.is_complete(3));
        assert!(a.bundles.iter().all(|&b| k3.rank(b) >= 1));

        let a = identical_mrf_allocation(&k3, 1);
        assert_eq!(a.bundles, vec![GoodSet::full(3)]);
    }
}
