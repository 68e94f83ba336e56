//! Seeded random instances for tests, benchmarks and the CLI `gen` command.

use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::check_goods;
use crate::error::{Error, Result};
use crate::goodset::GoodSet;
use crate::instance::{Instance, ValuationSpec};
use crate::matroid::{Matroid, MatroidSpec};
use crate::rational;
use crate::reductions::ThreeDmInstance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidFamily {
    Uniform,
    Partition,
    Graphic,
    Linear,
}

impl MatroidFamily {
    pub const ALL: [MatroidFamily; 4] = [
        MatroidFamily::Uniform,
        MatroidFamily::Partition,
        MatroidFamily::Graphic,
        MatroidFamily::Linear,
    ];
}

impl FromStr for MatroidFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MatroidFamily::Uniform),
            "partition" => Ok(MatroidFamily::Partition),
            "graphic" => Ok(MatroidFamily::Graphic),
            "linear" | "linear_gf2" => Ok(MatroidFamily::Linear),
            other => Err(Error::Argument(format!("unknown matroid family {other:?}"))),
        }
    }
}

fn goods(m: usize) -> Vec<String> {
    (1..=m).map(|g| format!("g{g}")).collect()
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    check_goods(m)?;
    if n == 0 {
        return Err(Error::Argument("need at least one agent".into()));
    }
    Ok(())
}

/// A random set where each of `m` goods is present with probability
/// `density_pct / 100`.
pub fn random_set<R: Rng>(rng: &mut R, m: usize, density_pct: u32) -> GoodSet {
    (0..m)
        .filter(|_| rng.gen_range(0..100) < density_pct)
        .fold(GoodSet::EMPTY, GoodSet::with)
}

/// Binary XOS family of `families` random sets.
pub fn random_xos_family<R: Rng>(
    rng: &mut R,
    m: usize,
    families: usize,
    density_pct: u32,
) -> Vec<GoodSet> {
    (0..families)
        .map(|_| random_set(rng, m, density_pct))
        .collect()
}

/// Independent binary XOS valuations per agent. A density of 50 draws family
/// sets uniformly from all subsets.
pub fn random_xos(
    m: usize,
    n: usize,
    families: usize,
    density_pct: u32,
    seed: u64,
) -> Result<Instance> {
    check_shape(m, n)?;
    if families == 0 {
        return Err(Error::Argument("need at least one family set".into()));
    }
    if density_pct > 100 {
        return Err(Error::Argument(format!(
            "density {density_pct}% above 100%"
        )));
    }
    let mut rng = rng(seed);
    let valuations = (0..n)
        .map(|_| ValuationSpec::BinaryXos {
            family: random_xos_family(&mut rng, m, families, density_pct),
        })
        .collect();
    Instance::new(n, goods(m), valuations)
}

/// A random matroid on `m` elements. `vertices` only matters for graphic
/// matroids, whose edges become the `m` elements.
pub fn random_matroid_spec<R: Rng>(
    rng: &mut R,
    m: usize,
    family: MatroidFamily,
    vertices: usize,
) -> Result<MatroidSpec> {
    let spec = match family {
        MatroidFamily::Uniform => MatroidSpec::Uniform {
            rank: rng.gen_range(0..=m),
        },
        MatroidFamily::Partition => {
            let count = rng.gen_range(1..=m.max(1));
            let mut blocks = vec![Vec::new(); count];
            for g in 0..m {
                // roughly one element in eight is a loop
                if rng.gen_range(0..8) > 0 {
                    blocks[rng.gen_range(0..count)].push(g);
                }
            }
            let capacities = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
            MatroidSpec::Partition { blocks, capacities }
        }
        MatroidFamily::Graphic => {
            if vertices < 2 && m > 0 {
                return Err(Error::Argument(
                    "graphic matroid needs at least 2 vertices".into(),
                ));
            }
            let edges = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..vertices);
                    let w = (u + rng.gen_range(1..vertices)) % vertices;
                    [u.min(w), u.max(w)]
                })
                .collect();
            MatroidSpec::Graphic { vertices, edges }
        }
        MatroidFamily::Linear => {
            let rows = rng.gen_range(1..=4);
            let columns = (0..m)
                .map(|_| {
                    (0..rows)
                        .map(|_| if rng.gen_bool(0.5) { '1' } else { '0' })
                        .collect()
                })
                .collect();
            MatroidSpec::LinearGf2 { columns }
        }
    };
    Matroid::new(spec.clone(), m)?;
    Ok(spec)
}

/// All agents share one random matroid rank valuation. Without a family,
/// each draw picks one of the four uniformly.
pub fn random_matroid(
    m: usize,
    n: usize,
    family: Option<MatroidFamily>,
    vertices: usize,
    seed: u64,
) -> Result<Instance> {
    check_shape(m, n)?;
    let mut rng = rng(seed);
    let family = family.unwrap_or_else(|| MatroidFamily::ALL[rng.gen_range(0..4)]);
    let matroid = random_matroid_spec(&mut rng, m, family, vertices)?;
    Instance::new(n, goods(m), vec![ValuationSpec::Matroid { matroid }; n])
}

/// Independent additive valuations with values `a/b`, `0 <= a <= max_value`,
/// `1 <= b <= 4`.
pub fn random_additive(m: usize, n: usize, max_value: u32, seed: u64) -> Result<Instance> {
    check_shape(m, n)?;
    let mut rng = rng(seed);
    let valuations = (0..n)
        .map(|_| ValuationSpec::Additive {
            values: (0..m)
                .map(|_| {
                    let a = rng.gen_range(0..=max_value) as i64;
                    rational::frac(a, rng.gen_range(1..=4))
                })
                .collect(),
        })
        .collect();
    Instance::new(n, goods(m), valuations)
}

/// `k` distinct triples drawn without replacement, listed in ascending order.
pub fn random_3dm(m3: usize, k: usize, seed: u64) -> Result<ThreeDmInstance> {
    if m3 == 0 {
        return Err(Error::Argument("3DM needs m3 >= 1".into()));
    }
    let total = m3
        .checked_pow(3)
        .ok_or_else(|| Error::Argument(format!("m3 = {m3} too large")))?;
    if k > total {
        return Err(Error::Argument(format!(
            "{k} triples requested, only {total} exist"
        )));
    }
    let mut rng = rng(seed);
    let mut picks = sample(&mut rng, total, k).into_vec();
    picks.sort_unstable();
    let triples = picks
        .into_iter()
        .map(|t| [t / (m3 * m3), t / m3 % m3, t % m3])
        .collect();
    ThreeDmInstance::new(m3, triples)
}
