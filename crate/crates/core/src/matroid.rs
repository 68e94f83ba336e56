//! Matroid rank oracles, matroid union and disjoint-base extraction.
//!
//! [`Matroid::partition_into_independent`] is the constructive side of matroid
//! union: it splits the ground set into `n` disjoint independent sets of
//! maximum total size. [`union_rank_formula`] evaluates the min-over-subsets
//! rank formula of the union matroid and is kept as an independent check.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::enumerate::{check_goods, submasks, subsets};
use crate::error::{Error, Result};
use crate::goodset::GoodSet;

/// Wire form of a matroid; the ground size comes from the surrounding instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform {
        rank: usize,
    },
    /// Elements outside every block are loops.
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    /// Element `e` is edge `edges[e]`; self-loops are matroid loops.
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Element `e` is the GF(2) vector spelled by `columns[e]`, e.g. `"1011"`.
    LinearGf2 {
        columns: Vec<String>,
    },
    /// Independent sets listed explicitly; the empty set is implied.
    Explicit {
        independent: Vec<Vec<usize>>,
    },
    Truncation {
        inner: Box<MatroidSpec>,
        rank: usize,
    },
}

#[derive(Clone, Debug)]
enum Repr {
    Uniform(usize),
    Partition {
        blocks: Vec<GoodSet>,
        caps: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Linear(Vec<u64>),
    /// Rank of every subset, indexed by bitmask.
    Table(Vec<u8>),
    Truncation(Box<Matroid>, usize),
}

#[derive(Clone, Debug)]
pub struct Matroid {
    ground: usize,
    spec: MatroidSpec,
    repr: Repr,
}

/// `n` pairwise disjoint independent sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePacking {
    pub parts: Vec<GoodSet>,
    pub total: usize,
}

impl Matroid {
    pub fn new(spec: MatroidSpec, ground: usize) -> Result<Self> {
        check_goods(ground)?;
        let in_range = |e: usize| -> Result<()> {
            if e >= ground {
                return Err(Error::Matroid(format!(
                    "element {e} outside ground set of size {ground}"
                )));
            }
            Ok(())
        };
        let repr = match &spec {
            MatroidSpec::Uniform { rank } => Repr::Uniform(*rank),
            MatroidSpec::Partition { blocks, capacities } => {
                if blocks.len() != capacities.len() {
                    return Err(Error::Matroid(format!(
                        "{} blocks but {} capacities",
                        blocks.len(),
                        capacities.len()
                    )));
                }
                let mut seen = GoodSet::EMPTY;
                let mut masks = Vec::with_capacity(blocks.len());
                for block in blocks {
                    for &e in block {
                        in_range(e)?;
                        if seen.contains(e) {
                            return Err(Error::Matroid(format!("element {e} in two blocks")));
                        }
                        seen = seen.with(e);
                    }
                    masks.push(GoodSet::from_indices(block.iter().copied()));
                }
                Repr::Partition {
                    blocks: masks,
                    caps: capacities.clone(),
                }
            }
            MatroidSpec::Graphic { vertices, edges } => {
                if edges.len() != ground {
                    return Err(Error::Matroid(format!(
                        "graphic matroid has {} edges for {ground} goods",
                        edges.len()
                    )));
                }
                if let Some(e) = edges
                    .iter()
                    .find(|e| e[0] >= *vertices || e[1] >= *vertices)
                {
                    return Err(Error::Matroid(format!(
                        "edge {:?} uses a vertex outside 0..{vertices}",
                        e
                    )));
                }
                Repr::Graphic {
                    vertices: *vertices,
                    edges: edges.clone(),
                }
            }
            MatroidSpec::LinearGf2 { columns } => {
                if columns.len() != ground {
                    return Err(Error::Matroid(format!(
                        "linear matroid has {} columns for {ground} goods",
                        columns.len()
                    )));
                }
                Repr::Linear(
                    columns
                        .iter()
                        .map(|c| parse_bits(c))
                        .collect::<Result<_>>()?,
                )
            }
            MatroidSpec::Explicit { independent } => {
                let mut family = vec![GoodSet::EMPTY];
                for set in independent {
                    for &e in set {
                        in_range(e)?;
                    }
                    family.push(GoodSet::from_indices(set.iter().copied()));
                }
                validate_axioms(&family)?;
                Repr::Table(rank_table(ground, &family))
            }
            MatroidSpec::Truncation { inner, rank } => {
                Repr::Truncation(Box::new(Matroid::new((**inner).clone(), ground)?), *rank)
            }
        };
        Ok(Matroid { ground, spec, repr })
    }

    pub fn uniform(rank: usize, ground: usize) -> Result<Self> {
        Matroid::new(MatroidSpec::Uniform { rank }, ground)
    }

    pub fn graphic(vertices: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        let ground = edges.len();
        Matroid::new(MatroidSpec::Graphic { vertices, edges }, ground)
    }

    /// Matroid whose independent sets are exactly `family` (which must
    /// satisfy the axioms; callers establish that). The empty set is implied.
    pub(crate) fn from_independent_sets(ground: usize, family: Vec<GoodSet>) -> Self {
        let mut all = vec![GoodSet::EMPTY];
        all.extend(family.iter().copied());
        let spec = MatroidSpec::Explicit {
            independent: family.iter().map(|s| s.to_vec()).collect(),
        };
        Matroid {
            ground,
            spec,
            repr: Repr::Table(rank_table(ground, &all)),
        }
    }

    /// `min(rank, k)` pointwise.
    pub fn truncate(&self, k: usize) -> Matroid {
        Matroid {
            ground: self.ground,
            spec: MatroidSpec::Truncation {
                inner: Box::new(self.spec.clone()),
                rank: k,
            },
            repr: Repr::Truncation(Box::new(self.clone()), k),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ground_set(&self) -> GoodSet {
        GoodSet::full(self.ground)
    }

    pub fn spec(&self) -> &MatroidSpec {
        &self.spec
    }

    /// Rank of `set`, which must lie inside the ground set.
    pub fn rank(&self, set: GoodSet) -> usize {
        debug_assert!(set.is_subset(self.ground_set()));
        match &self.repr {
            Repr::Uniform(k) => set.len().min(*k),
            Repr::Partition { blocks, caps } => blocks
                .iter()
                .zip(caps)
                .map(|(b, &c)| b.intersection(set).len().min(c))
                .sum(),
            Repr::Graphic { vertices, edges } => {
                let mut forest = UnionFind::new(*vertices);
                set.iter()
                    .filter(|&e| forest.union(edges[e][0], edges[e][1]))
                    .count()
            }
            Repr::Linear(columns) => gf2_rank(set.iter().map(|e| columns[e])),
            Repr::Table(ranks) => ranks[set.bits() as usize] as usize,
            Repr::Truncation(inner, k) => inner.rank(set).min(*k),
        }
    }

    pub fn checked_rank(&self, set: GoodSet) -> Result<usize> {
        if !set.is_subset(self.ground_set()) {
            return Err(Error::Matroid(format!(
                "set {set} not inside ground set of size {}",
                self.ground
            )));
        }
        Ok(self.rank(set))
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground_set())
    }

    pub fn is_independent(&self, set: GoodSet) -> bool {
        self.rank(set) == set.len()
    }

    /// Exhaustively checks normalization, unit increase, monotonicity and
    /// submodularity of the rank function. Returns a description of the first
    /// violation.
    pub fn check_rank_axioms(&self) -> Result<std::result::Result<(), String>> {
        let ranks: Vec<usize> = subsets(self.ground)?.map(|s| self.rank(s)).collect();
        if ranks[0] != 0 {
            return Ok(Err("rank of the empty set is not 0".into()));
        }
        for s in subsets(self.ground)? {
            let rs = ranks[s.bits() as usize];
            for e in (0..self.ground).filter(|&e| !s.contains(e)) {
                let se = s.with(e);
                let step = ranks[se.bits() as usize] as isize - rs as isize;
                if !(0..=1).contains(&step) {
                    return Ok(Err(format!("rank step {step} adding {e} to {s}")));
                }
                for f in (e + 1..self.ground).filter(|&f| !s.contains(f)) {
                    let sf = s.with(f);
                    let sef = se.with(f);
                    if ranks[se.bits() as usize] + ranks[sf.bits() as usize]
                        < ranks[sef.bits() as usize] + rs
                    {
                        return Ok(Err(format!("submodularity fails at {s} with {e}, {f}")));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    /// Splits the ground set into `n` disjoint independent sets of maximum
    /// total size.
    ///
    /// Elements are inserted in ascending order. Each insertion searches the
    /// exchange graph breadth-first: an arc `y -> z` exists when `z` sits in a
    /// part `P` with `P - z + y` independent, and `y -> sink(k)` when part `k`
    /// accepts `y` directly. Sinks are tried in part order, then neighbours in
    /// element order, so the result is deterministic. An element with no
    /// augmenting path is left out.
    pub fn partition_into_independent(&self, n: usize) -> BasePacking {
        let mut parts = vec![GoodSet::EMPTY; n];
        let mut owner: Vec<Option<usize>> = vec![None; self.ground];
        if n == 0 {
            return BasePacking { parts, total: 0 };
        }

        for x in 0..self.ground {
            let Some((path, sink)) = self.augmenting_path(x, &parts, &owner) else {
                continue;
            };
            let old_owner: Vec<Option<usize>> = path.iter().map(|&y| owner[y]).collect();
            let last = *path.last().unwrap();
            parts[sink] = parts[sink].with(last);
            for i in 1..path.len() {
                let p = old_owner[i].expect("interior path node is assigned");
                parts[p] = parts[p].without(path[i]).with(path[i - 1]);
                owner[path[i - 1]] = Some(p);
            }
            owner[last] = Some(sink);
        }

        let total = parts.iter().map(|p| p.len()).sum();
        BasePacking { parts, total }
    }

    fn augmenting_path(
        &self,
        start: usize,
        parts: &[GoodSet],
        owner: &[Option<usize>],
    ) -> Option<(Vec<usize>, usize)> {
        let mut parent: Vec<Option<usize>> = vec![None; self.ground];
        let mut visited = GoodSet::singleton(start);
        let mut queue = VecDeque::from([start]);

        while let Some(y) = queue.pop_front() {
            let sink = (0..parts.len())
                .find(|&k| owner[y] != Some(k) && self.is_independent(parts[k].with(y)));
            if let Some(k) = sink {
                let mut path = vec![y];
                let mut cur = y;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some((path, k));
            }
            for z in 0..self.ground {
                let Some(k) = owner[z] else { continue };
                if visited.contains(z) || owner[y] == Some(k) {
                    continue;
                }
                if self.is_independent(parts[k].without(z).with(y)) {
                    visited = visited.with(z);
                    parent[z] = Some(y);
                    queue.push_back(z);
                }
            }
        }
        None
    }

    /// `n` pairwise disjoint bases, if they exist.
    pub fn disjoint_bases(&self, n: usize) -> Option<Vec<GoodSet>> {
        let r = self.full_rank();
        let packing = self.partition_into_independent(n);
        if packing.parts.iter().all(|p| p.len() == r) {
            Some(packing.parts)
        } else {
            None
        }
    }

    /// Tests `|E \ T| >= n * (r(E) - r(T))` for every `T`, returning the first
    /// violating `T` in ascending bitmask order.
    pub fn check_union_rank_condition(&self, n: usize) -> Result<Option<GoodSet>> {
        let full = self.ground_set();
        let r = self.full_rank();
        for t in subsets(self.ground)? {
            let outside = full.difference(t).len();
            if outside < n * (r - self.rank(t)) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

/// Rank of `set` in the union of `matroids` (all on a common ground set):
/// the minimum over `T ⊆ set` of `|set \ T| + Σ r_i(T)`.
pub fn union_rank_formula(matroids: &[&Matroid], set: GoodSet) -> Result<usize> {
    check_goods(set.span())?;
    Ok(submasks(set)
        .map(|t| set.difference(t).len() + matroids.iter().map(|m| m.rank(t)).sum::<usize>())
        .min()
        .unwrap_or(0))
}

fn parse_bits(column: &str) -> Result<u64> {
    if column.len() > 64 {
        return Err(Error::Matroid(format!(
            "column {column:?} longer than 64 bits"
        )));
    }
    column
        .chars()
        .enumerate()
        .try_fold(0u64, |acc, (i, c)| match c {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << i),
            _ => Err(Error::Matroid(format!(
                "column {column:?} is not a bitstring"
            ))),
        })
}

fn gf2_rank(vectors: impl Iterator<Item = u64>) -> usize {
    // basis[b] holds a vector whose highest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

fn validate_axioms(family: &[GoodSet]) -> Result<()> {
    let members: HashSet<GoodSet> = family.iter().copied().collect();
    for &set in family {
        if let Some(e) = set.iter().find(|&e| !members.contains(&set.without(e))) {
            return Err(Error::Matroid(format!(
                "not downward closed: {set} listed but {} is not",
                set.without(e)
            )));
        }
    }
    for &big in &members {
        for &small in members.iter().filter(|s| s.len() + 1 == big.len()) {
            let augmentable = big
                .difference(small)
                .iter()
                .any(|e| members.contains(&small.with(e)));
            if !augmentable {
                return Err(Error::Matroid(format!(
                    "exchange fails: {small} cannot be augmented from {big}"
                )));
            }
        }
    }
    Ok(())
}

/// `rank[S] = |S|` if `S` is in `family`, else the largest rank after removing
/// one element.
fn rank_table(ground: usize, family: &[GoodSet]) -> Vec<u8> {
    let members: HashSet<GoodSet> = family.iter().copied().collect();
    let mut ranks = vec![0u8; 1 << ground];
    for bits in 1..(1u32 << ground) {
        let set = GoodSet::from_bits(bits);
        ranks[bits as usize] = if members.contains(&set) {
            set.len() as u8
        } else {
            set.iter()
                .map(|e| ranks[set.without(e).bits() as usize])
                .max()
                .unwrap_or(0)
        };
    }
    ranks
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the two classes; false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
