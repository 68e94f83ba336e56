//! Corpora and brute-force oracles shared by the integration tests. Nothing
//! here calls into the solvers it is used to check.
#![allow(dead_code)]

use fairshare::generate::{random_matroid, random_xos, rng, MatroidFamily};
use fairshare::lp::{LinearProgram, Relation};
use fairshare::rational::{frac, int, one, zero};
use fairshare::shares::ApsResult;
use fairshare::xos::BalancedAllocation;
use fairshare::{GoodSet, Instance, Rational, Valuation, ValuationSpec};
use num_traits::Signed;
use rand::Rng;

/// 240 identical-matroid instances, m <= 8, n in {2, 3}, all four families.
pub fn matroid_corpus() -> Vec<Instance> {
    (0..240u64)
        .map(|seed| {
            let family = MatroidFamily::ALL[(seed % 4) as usize];
            let m = 1 + (seed as usize * 7) % 8;
            let n = 2 + (seed as usize / 4) % 2;
            let vertices = 2 + (seed as usize) % 4;
            random_matroid(m, n, Some(family), vertices, seed).expect("corpus instance")
        })
        .collect()
}

/// 240 binary XOS instances, m <= 10, n <= 3, at most 5 family sets: 200
/// with uniformly drawn family sets and 40 whose family splits the goods
/// into disjoint blocks, where APS tends to exceed MMS.
pub fn xos_corpus() -> Vec<Instance> {
    let uniform = (0..200u64).map(|seed| {
        let m = 1 + (seed as usize * 3) % 10;
        let n = 1 + (seed as usize) % 3;
        let families = 1 + (seed as usize / 3) % 5;
        random_xos(m, n, families, 50, 1000 + seed).expect("corpus instance")
    });
    let blocks = (0..40u64).map(|seed| {
        let mut r = rng(9000 + seed);
        let m = r.gen_range(4..=10);
        let n = r.gen_range(2..=3);
        let count = r.gen_range(2..=5);
        let mut family = vec![GoodSet::EMPTY; count];
        for g in 0..m {
            let b = r.gen_range(0..count);
            family[b] = family[b].with(g);
        }
        family.retain(|b| !b.is_empty());
        let goods = (0..m).map(|g| format!("g{g}")).collect();
        Instance::new(n, goods, vec![ValuationSpec::BinaryXos { family }; n])
            .expect("corpus instance")
    });
    uniform.chain(blocks).collect()
}

/// Sparse binary XOS instances where MMS = 0 is common.
pub fn sparse_xos_corpus(count: u64) -> Vec<Instance> {
    (0..count)
        .map(|seed| {
            let m = 1 + (seed as usize * 5) % 10;
            let n = 1 + (seed as usize) % 3;
            let families = 1 + (seed as usize / 3) % 4;
            random_xos(m, n, families, 15, 5000 + seed).expect("corpus instance")
        })
        .collect()
}

/// MMS by trying every assignment of goods to agents.
pub fn brute_mms(v: &Valuation, n: usize) -> Rational {
    let m = v.goods();
    let mut owner = vec![0usize; m];
    let mut best: Option<Rational> = None;
    loop {
        let mut bundles = vec![GoodSet::EMPTY; n];
        for (g, &a) in owner.iter().enumerate() {
            bundles[a] = bundles[a].with(g);
        }
        let worst = bundles.iter().map(|&b| v.value(b)).min().expect("n >= 1");
        if best.as_ref().is_none_or(|b| worst > *b) {
            best = Some(worst);
        }
        let mut g = 0;
        while g < m && owner[g] == n - 1 {
            owner[g] = 0;
            g += 1;
        }
        if g == m {
            break;
        }
        owner[g] += 1;
    }
    best.expect("at least one assignment")
}

pub fn all_subsets(m: usize) -> impl Iterator<Item = GoodSet> {
    (0u32..1 << m).map(GoodSet::from_bits)
}

/// Best value over all subsets costing at most `budget`.
pub fn brute_demand_value(v: &Valuation, prices: &[Rational], budget: &Rational) -> Rational {
    all_subsets(v.goods())
        .filter(|s| s.iter().map(|g| &prices[g]).sum::<Rational>() <= *budget)
        .map(|s| v.value(s))
        .max()
        .expect("empty set is affordable")
}

/// The witness proves APS >= value and the prices prove APS <= value.
pub fn check_aps_certificates(v: &Valuation, n: usize, aps: &ApsResult) -> Result<(), String> {
    let m = v.goods();
    let share = frac(1, n as i64);
    let mut total = zero();
    let mut load = vec![zero(); m];
    for ws in &aps.witness {
        if ws.weight.is_negative() {
            return Err(format!("negative weight on {}", ws.set));
        }
        if v.value(ws.set) < aps.value {
            return Err(format!(
                "witness set {} worth {} < {}",
                ws.set,
                v.value(ws.set),
                aps.value
            ));
        }
        total += &ws.weight;
        for g in ws.set.iter() {
            load[g] += &ws.weight;
        }
    }
    if total != one() {
        return Err(format!("witness weights sum to {total}"));
    }
    if let Some(g) = (0..m).find(|&g| load[g] > share) {
        return Err(format!("good {g} carries {} > 1/{n}", load[g]));
    }
    let prices = &aps.price_certificate;
    if prices.len() != m || prices.iter().any(|p| p.is_negative()) {
        return Err("price vector has wrong length or a negative entry".into());
    }
    if m > 0 && prices.iter().sum::<Rational>() != one() {
        return Err("prices do not sum to 1".into());
    }
    let best = brute_demand_value(v, prices, &share);
    if best != aps.value {
        return Err(format!(
            "best affordable value {best} differs from APS {}",
            aps.value
        ));
    }
    Ok(())
}

/// Contract of a balanced allocation, recomputed from scratch.
pub fn check_balanced(v: &Valuation, n: usize, a: &BalancedAllocation) -> Result<(), String> {
    let m = v.goods();
    if a.bundles.len() != n {
        return Err(format!("{} bundles for {n} agents", a.bundles.len()));
    }
    let mut seen = a.leftover;
    for (k, &b) in a.bundles.iter().enumerate() {
        if !b.is_disjoint(seen) {
            return Err(format!("bundle {k} overlaps"));
        }
        seen = seen.union(b);
        let value = v.value(b);
        if value < a.mms || value > &a.mms + one() {
            return Err(format!("bundle {k} = {b} worth {value}, mms {}", a.mms));
        }
        for g in b.iter() {
            if v.value(b) == v.value(b.without(g)) {
                return Err(format!("good {g} wasted in bundle {k} = {b}"));
            }
        }
    }
    if seen != GoodSet::full(m) {
        return Err("goods missing from bundles and leftover".into());
    }
    if v.value(a.leftover) > a.mms {
        return Err(format!(
            "leftover worth {} > mms {}",
            v.value(a.leftover),
            a.mms
        ));
    }
    if a.swap_rounds + 1 > n {
        return Err(format!("{} swap rounds with n = {n}", a.swap_rounds));
    }
    Ok(())
}

/// Random LP with at most 5 variables and 5 rows, small integer data, and a
/// bounding row so every feasible instance has a finite optimum.
pub fn random_lp(seed: u64) -> LinearProgram {
    let mut r = rng(seed);
    let vars = r.gen_range(1..=5);
    let rows = r.gen_range(0..=4);
    let mut lp = LinearProgram::new((0..vars).map(|_| int(r.gen_range(-3..=5))).collect());
    for _ in 0..rows {
        let coefficients = (0..vars).map(|_| int(r.gen_range(-3..=4))).collect();
        let relation = match r.gen_range(0..6) {
            0 => Relation::Eq,
            1 | 2 => Relation::Ge,
            _ => Relation::Le,
        };
        lp.add(coefficients, relation, int(r.gen_range(-4..=8)));
    }
    lp.add(vec![one(); vars], Relation::Le, int(r.gen_range(1..=10)));
    lp
}

/// Solves a square system exactly; `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| a[r][col] != zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..k {
            if r != col && a[r][col] != zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (cell, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *cell -= &f * p;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..k).map(|i| &b[i] / &a[i][i]).collect())
}

/// Optimum of a bounded LP over `x >= 0` by enumerating every basic
/// solution; `None` when no vertex is feasible.
pub fn vertex_optimum(lp: &LinearProgram) -> Option<Rational> {
    let vars = lp.variables();
    // every constraint as a hyperplane a.x = b
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.coefficients.clone(), c.rhs.clone()))
        .collect();
    for j in 0..vars {
        let mut e = vec![zero(); vars];
        e[j] = one();
        planes.push((e, zero()));
    }
    let feasible = |x: &[Rational]| {
        x.iter().all(|v| !v.is_negative())
            && lp.constraints.iter().all(|c| {
                let lhs: Rational = c.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    };
    let mut best: Option<Rational> = None;
    for mask in 0u32..1 << planes.len() {
        if mask.count_ones() as usize != vars {
            continue;
        }
        let chosen: Vec<_> = (0..planes.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let a = chosen.iter().map(|&i| planes[i].0.clone()).collect();
        let b = chosen.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let value: Rational = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                if best.as_ref().is_none_or(|b| value > *b) {
                    best = Some(value);
                }
            }
        }
    }
    best
}

/// Perfect matching at m3 = 2: two triples differing in every coordinate.
pub fn has_matching_m3_2(triples: &[[usize; 3]]) -> bool {
    triples
        .iter()
        .any(|s| triples.iter().any(|t| (0..3).all(|c| s[c] != t[c])))
}

/// Random point of the price simplex with small denominators.
pub fn random_simplex<R: Rng>(r: &mut R, m: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..m).map(|_| r.gen_range(0..=6)).collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return vec![frac(1, m as i64); m];
    }
    weights.iter().map(|&w| frac(w, total)).collect()
}
