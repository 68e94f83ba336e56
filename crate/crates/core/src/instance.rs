//! Instance model and its JSON file format.

use serde::{Deserialize, Serialize};

use crate::enumerate::check_goods;
use crate::error::{Error, Result};
use crate::goodset::GoodSet;
use crate::matroid::{Matroid, MatroidSpec};
use crate::rational::{self, Rational};
use crate::valuation::Valuation;

/// Wire form of one agent's valuation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ValuationSpec {
    Additive {
        #[serde(with = "rational::vec_as_string")]
        values: Vec<Rational>,
    },
    BinaryXos {
        family: Vec<GoodSet>,
    },
    Matroid {
        matroid: MatroidSpec,
    },
    /// `values[b]` is the value of the subset with bitmask `b`.
    Table {
        #[serde(with = "rational::vec_as_string")]
        values: Vec<Rational>,
    },
    #[serde(rename = "ternary_3dm")]
    Ternary3dm {
        m3: usize,
        triples: Vec<[usize; 3]>,
    },
}

impl ValuationSpec {
    pub fn build(&self, m: usize) -> Result<Valuation> {
        match self {
            ValuationSpec::Additive { values } => {
                if values.len() != m {
                    return Err(Error::Instance(format!(
                        "additive valuation has {} values for {m} goods",
                        values.len()
                    )));
                }
                Valuation::additive(values.clone())
            }
            ValuationSpec::BinaryXos { family } => Valuation::binary_xos(m, family.clone()),
            ValuationSpec::Matroid { matroid } => {
                Ok(Valuation::matroid_rank(Matroid::new(matroid.clone(), m)?))
            }
            ValuationSpec::Table { values } => Valuation::table(m, values.clone()),
            ValuationSpec::Ternary3dm { m3, triples } => {
                if 3 * m3 != m {
                    return Err(Error::Instance(format!(
                        "ternary_3dm with m3={m3} needs {} goods, instance has {m}",
                        3 * m3
                    )));
                }
                Valuation::ternary_3dm(*m3, triples)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub goods: Vec<String>,
    pub valuations: Vec<ValuationSpec>,
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(n: usize, goods: Vec<String>, valuations: Vec<ValuationSpec>) -> Result<Self> {
        let instance = Instance {
            n,
            goods,
            valuations,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn m(&self) -> usize {
        self.goods.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Instance("need at least one agent".into()));
        }
        check_goods(self.m())?;
        if self.valuations.len() != self.n {
            return Err(Error::Instance(format!(
                "{} valuations for {} agents",
                self.valuations.len(),
                self.n
            )));
        }
        for (i, spec) in self.valuations.iter().enumerate() {
            spec.build(self.m())
                .map_err(|e| Error::Instance(format!("agent {i}: {e}")))?;
        }
        Ok(())
    }

    pub fn valuation(&self, agent: usize) -> Result<Valuation> {
        let spec = self.valuations.get(agent).ok_or_else(|| {
            Error::Argument(format!("agent {agent} out of range (n = {})", self.n))
        })?;
        spec.build(self.m())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let instance: Instance = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    instance.validate()?;
    Ok(instance)
}

/// Bundles for `n` agents plus unallocated goods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    pub bundles: Vec<GoodSet>,
    pub leftover: GoodSet,
}

impl Allocation {
    pub fn new(bundles: Vec<GoodSet>, leftover: GoodSet, m: usize) -> Result<Self> {
        let allocation = Allocation { bundles, leftover };
        allocation.validate(m)?;
        Ok(allocation)
    }

    /// Bundles pairwise disjoint, leftover disjoint from them, all inside `0..m`.
    pub fn validate(&self, m: usize) -> Result<()> {
        let ground = GoodSet::full(m);
        let mut seen = GoodSet::EMPTY;
        for (i, &b) in self
            .bundles
            .iter()
            .chain(std::iter::once(&self.leftover))
            .enumerate()
        {
            if !b.is_subset(ground) {
                return Err(Error::Instance(format!("part {i} = {b} outside {m} goods")));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::Instance(format!(
                    "part {i} = {b} overlaps earlier parts on {}",
                    b.intersection(seen)
                )));
            }
            seen = seen.union(b);
        }
        Ok(())
    }

    pub fn allocated(&self) -> GoodSet {
        self.bundles.iter().fold(GoodSet::EMPTY, |u, b| u.union(*b))
    }

    /// Every good is in some bundle.
    pub fn is_complete(&self, m: usize) -> bool {
        self.leftover.is_empty() && self.allocated() == GoodSet::full(m)
    }
}
