//! Valuation oracles and exhaustive property checkers.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::{check_goods, subsets};
use crate::error::{Error, Result};
use crate::goodset::GoodSet;
use crate::matroid::Matroid;
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub enum ValuationKind {
    Additive(Vec<Rational>),
    /// `v(S) = max_f |f ∩ S|` over a nonempty family of good sets.
    BinaryXos(Vec<GoodSet>),
    MatroidRank(Matroid),
    /// One value per subset, indexed by bitmask.
    Table(Vec<Rational>),
    /// The piecewise valuation built from a 3-D matching instance. Goods
    /// `0..m3` are X, `m3..2*m3` are Y, `2*m3..3*m3` are Z; `triples` holds the
    /// good sets of the listed triples.
    Ternary3dm {
        m3: usize,
        triples: HashSet<GoodSet>,
    },
    Capped(Box<Valuation>, Rational),
}

/// A set function over goods `0..m` with `v(∅) = 0`.
#[derive(Clone, Debug)]
pub struct Valuation {
    m: usize,
    kind: ValuationKind,
}

impl Valuation {
    pub fn additive(values: Vec<Rational>) -> Result<Self> {
        check_goods(values.len())?;
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::Instance(format!("negative additive value {v}")));
        }
        Ok(Valuation {
            m: values.len(),
            kind: ValuationKind::Additive(values),
        })
    }

    pub fn binary_xos(m: usize, family: Vec<GoodSet>) -> Result<Self> {
        check_goods(m)?;
        if family.is_empty() {
            return Err(Error::Instance("binary XOS family is empty".into()));
        }
        if let Some(f) = family.iter().find(|f| !f.is_subset(GoodSet::full(m))) {
            return Err(Error::Instance(format!("family set {f} outside {m} goods")));
        }
        Ok(Valuation {
            m,
            kind: ValuationKind::BinaryXos(family),
        })
    }

    pub fn matroid_rank(matroid: Matroid) -> Self {
        Valuation {
            m: matroid.ground_size(),
            kind: ValuationKind::MatroidRank(matroid),
        }
    }

    pub fn table(m: usize, values: Vec<Rational>) -> Result<Self> {
        check_goods(m)?;
        if values.len() != 1 << m {
            return Err(Error::Instance(format!(
                "table has {} entries, expected 2^{m} = {}",
                values.len(),
                1usize << m
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::Instance(
                "table value of the empty set must be 0".into(),
            ));
        }
        Ok(Valuation {
            m,
            kind: ValuationKind::Table(values),
        })
    }

    pub fn ternary_3dm(m3: usize, triples: &[[usize; 3]]) -> Result<Self> {
        check_goods(3 * m3)?;
        let mut sets = HashSet::new();
        for t in triples {
            if t.iter().any(|&e| e >= m3) {
                return Err(Error::Instance(format!(
                    "triple {t:?} out of range for m3={m3}"
                )));
            }
            sets.insert(GoodSet::from_indices([t[0], m3 + t[1], 2 * m3 + t[2]]));
        }
        Ok(Valuation {
            m: 3 * m3,
            kind: ValuationKind::Ternary3dm { m3, triples: sets },
        })
    }

    pub fn goods(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &ValuationKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ValuationKind::Additive(_) => "additive",
            ValuationKind::BinaryXos(_) => "binary_xos",
            ValuationKind::MatroidRank(_) => "matroid",
            ValuationKind::Table(_) => "table",
            ValuationKind::Ternary3dm { .. } => "ternary_3dm",
            ValuationKind::Capped(..) => "capped",
        }
    }

    /// The explicit family, for binary XOS oracles.
    pub fn xos_family(&self) -> Option<&[GoodSet]> {
        match &self.kind {
            ValuationKind::BinaryXos(family) => Some(family),
            _ => None,
        }
    }

    pub fn value(&self, set: GoodSet) -> Rational {
        debug_assert!(set.is_subset(GoodSet::full(self.m)));
        match &self.kind {
            ValuationKind::Additive(values) => set.iter().map(|g| &values[g]).sum(),
            ValuationKind::BinaryXos(family) => rational::int(xos_value(family, set) as i64),
            ValuationKind::MatroidRank(m) => rational::int(m.rank(set) as i64),
            ValuationKind::Table(values) => values[set.bits() as usize].clone(),
            ValuationKind::Ternary3dm { triples, .. } => match set.len() {
                0 => rational::zero(),
                1 => rational::one(),
                2 => rational::int(2),
                3 if triples.contains(&set) => rational::int(3),
                3 => rational::frac(5, 2),
                _ => rational::int(3),
            },
            ValuationKind::Capped(inner, cap) => inner.value(set).min(cap.clone()),
        }
    }

    /// `v(S ∪ {g}) - v(S)`; zero when `g ∈ S`.
    pub fn marginal(&self, g: usize, set: GoodSet) -> Rational {
        if set.contains(g) {
            return rational::zero();
        }
        self.value(set.with(g)) - self.value(set)
    }

    /// Values of all `2^m` subsets, indexed by bitmask.
    pub fn value_table(&self) -> Result<Vec<Rational>> {
        Ok(subsets(self.m)?.map(|s| self.value(s)).collect())
    }

    /// `min(v, cap)` pointwise.
    pub fn capped(&self, cap: Rational) -> Result<Valuation> {
        if cap.is_negative() {
            return Err(Error::Argument(format!("negative cap {cap}")));
        }
        Ok(Valuation {
            m: self.m,
            kind: ValuationKind::Capped(Box::new(self.clone()), cap),
        })
    }

    /// Every good in `bundle` adds positive value over the rest of `bundle`.
    pub fn is_non_wasteful(&self, bundle: GoodSet) -> bool {
        bundle
            .iter()
            .all(|g| self.marginal(g, bundle.without(g)).is_positive())
    }

    /// The underlying matroid of an MRF valuation.
    pub fn as_matroid(&self) -> Result<Matroid> {
        match &self.kind {
            ValuationKind::MatroidRank(m) => Ok(m.clone()),
            _ => {
                let report = self.check_properties()?;
                if !report.is_mrf {
                    return Err(Error::ValuationClass(format!(
                        "{} valuation is not a matroid rank function",
                        self.kind_name()
                    )));
                }
                let independent = subsets(self.m)?
                    .filter(|s| !s.is_empty() && self.value(*s) == rational::int(s.len() as i64))
                    .collect();
                Ok(Matroid::from_independent_sets(self.m, independent))
            }
        }
    }

    /// Exhaustive check over all subsets.
    pub fn check_properties(&self) -> Result<PropertyReport> {
        check_goods(self.m)?;
        let table = self.value_table()?;
        let value = |s: GoodSet| &table[s.bits() as usize];
        let half = rational::frac(1, 2);

        let normalized = table[0].is_zero();
        let mut monotone_violation = None;
        let mut has_half = None;
        let mut non_ternary = None;
        let mut submodular_violation = None;

        for s in subsets(self.m)? {
            for g in (0..self.m).filter(|&g| !s.contains(g)) {
                let mg = value(s.with(g)) - value(s);
                if mg.is_negative() && monotone_violation.is_none() {
                    monotone_violation = Some(MarginalWitness::new(g, s, &mg));
                }
                if mg == half {
                    has_half.get_or_insert_with(|| MarginalWitness::new(g, s, &mg));
                } else if !mg.is_zero() && !mg.is_one() && non_ternary.is_none() {
                    non_ternary = Some(MarginalWitness::new(g, s, &mg));
                }
                if submodular_violation.is_none() {
                    for h in (0..self.m).filter(|&h| h != g && !s.contains(h)) {
                        let larger = s.with(h);
                        let mg_larger = value(larger.with(g)) - value(larger);
                        if mg < mg_larger {
                            submodular_violation = Some(SubmodularityViolation {
                                good: g,
                                smaller: s,
                                larger,
                                smaller_marginal: mg.clone(),
                                larger_marginal: mg_larger,
                            });
                            break;
                        }
                    }
                }
            }
        }

        let (marginal_class, marginal_witness) = match (non_ternary, has_half) {
            (Some(w), _) => (MarginalClass::Other, Some(w)),
            (None, Some(w)) => (MarginalClass::Ternary, Some(w)),
            (None, None) => (MarginalClass::Binary, None),
        };
        let monotone = monotone_violation.is_none();
        let submodular = submodular_violation.is_none();
        Ok(PropertyReport {
            normalized,
            monotone,
            monotone_counterexample: monotone_violation,
            marginal_class,
            marginal_witness,
            submodular,
            submodular_counterexample: submodular_violation,
            is_mrf: normalized && monotone && submodular && marginal_class == MarginalClass::Binary,
        })
    }
}

fn xos_value(family: &[GoodSet], set: GoodSet) -> usize {
    family
        .iter()
        .map(|f| f.intersection(set).len())
        .max()
        .unwrap_or(0)
}

/// A subset `W ⊆ set` with `v(W) = |W| = v(set)` under the binary XOS
/// valuation given by `family`: the intersection of `set` with the
/// lowest-index family member attaining the maximum.
pub fn xos_witness_subset(family: &[GoodSet], set: GoodSet) -> GoodSet {
    let best = xos_value(family, set);
    family
        .iter()
        .map(|f| f.intersection(set))
        .find(|w| w.len() == best)
        .unwrap_or(GoodSet::EMPTY)
}

/// Whether the explicit 0/1 family induces a binary-marginal oracle on `m` goods.
pub fn check_xos_binary(m: usize, family: &[GoodSet]) -> Result<bool> {
    let v = Valuation::binary_xos(m, family.to_vec())?;
    Ok(v.check_properties()?.marginal_class == MarginalClass::Binary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalClass {
    /// All marginals in {0, 1}.
    Binary,
    /// All marginals in {0, 1/2, 1}, some equal to 1/2.
    Ternary,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalWitness {
    pub good: usize,
    pub set: GoodSet,
    #[serde(with = "rational::as_string")]
    pub marginal: Rational,
}

impl MarginalWitness {
    fn new(good: usize, set: GoodSet, marginal: &Rational) -> Self {
        MarginalWitness {
            good,
            set,
            marginal: marginal.clone(),
        }
    }
}

/// `v(good | smaller) < v(good | larger)` with `smaller ⊂ larger`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubmodularityViolation {
    pub good: usize,
    pub smaller: GoodSet,
    pub larger: GoodSet,
    #[serde(with = "rational::as_string")]
    pub smaller_marginal: Rational,
    #[serde(with = "rational::as_string")]
    pub larger_marginal: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub normalized: bool,
    pub monotone: bool,
    pub monotone_counterexample: Option<MarginalWitness>,
    pub marginal_class: MarginalClass,
    /// A marginal of 1/2 for the ternary class, an out-of-class marginal for `other`.
    pub marginal_witness: Option<MarginalWitness>,
    pub submodular: bool,
    pub submodular_counterexample: Option<SubmodularityViolation>,
    pub is_mrf: bool,
}
