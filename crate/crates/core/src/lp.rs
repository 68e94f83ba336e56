//! Exact rational linear programming.
//!
//! Dense two-phase primal simplex with Bland's rule. Every optimal solution
//! is checked before it is returned: primal feasibility, dual feasibility and
//! equality of the primal and dual objectives, all in exact arithmetic.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MAX_VARIABLES: usize = 1 << 24;
pub const MAX_ROWS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to `constraints`, `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `dual[i]` belongs to constraint `i`: nonnegative for `Le`, nonpositive for
/// `Ge`, free for `Eq`. Both vectors are empty unless the status is optimal.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub objective_value: Rational,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        if self.variables() > MAX_VARIABLES {
            return Err(Error::Bound {
                what: "LP variables",
                value: self.variables() as u128,
                limit: MAX_VARIABLES as u128,
            });
        }
        if self.constraints.len() > MAX_ROWS {
            return Err(Error::Bound {
                what: "LP rows",
                value: self.constraints.len() as u128,
                limit: MAX_ROWS as u128,
            });
        }
        if let Some(i) = self
            .constraints
            .iter()
            .position(|c| c.coefficients.len() != self.variables())
        {
            return Err(Error::Argument(format!(
                "constraint {i} has {} coefficients for {} variables",
                self.constraints[i].coefficients.len(),
                self.variables()
            )));
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the current phase.
    reduced: Vec<Rational>,
    columns: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut().filter(|v| !v.is_zero()) {
            *v *= &inv;
        }
        self.rhs[row] *= &inv;

        let support: Vec<usize> = (0..self.columns)
            .filter(|&j| !self.rows[row][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let pivot_rhs = self.rhs[row].clone();

        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.reduced[col].is_zero() {
            let factor = self.reduced[col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.reduced[j] -= delta;
            }
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    fn price(&mut self, cost: &[Rational]) {
        let mut reduced = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] -= &cost[b] * a;
                }
            }
        }
        self.reduced = reduced;
    }

    /// Maximizes `cost` from the current feasible basis. Bland's rule: lowest
    /// eligible entering column, ratio ties broken by lowest basic column.
    fn optimize(&mut self, cost: &[Rational], may_enter: impl Fn(usize) -> bool) -> Outcome {
        self.price(cost);
        loop {
            let Some(col) =
                (0..self.columns).find(|&j| may_enter(j) && self.reduced[j].is_positive())
            else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Outcome::Unbounded,
            }
        }
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let vars = lp.variables();
    let rows = lp.constraints.len();

    // Normalize to nonnegative right-hand sides.
    let mut flipped = vec![false; rows];
    let mut relations = Vec::with_capacity(rows);
    for (i, c) in lp.constraints.iter().enumerate() {
        flipped[i] = c.rhs.is_negative();
        relations.push(match (c.relation, flipped[i]) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }

    // Column layout: structural, then one slack/surplus per inequality, then
    // one artificial per Ge/Eq row.
    let mut next = vars;
    let mut slack_col = vec![None; rows];
    for (i, r) in relations.iter().enumerate() {
        if *r != Relation::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let first_artificial = next;
    let mut identity_col = vec![0; rows];
    for (i, r) in relations.iter().enumerate() {
        identity_col[i] = match r {
            Relation::Le => slack_col[i].unwrap(),
            _ => {
                next += 1;
                next - 1
            }
        };
    }
    let columns = next;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(rows),
        rhs: Vec::with_capacity(rows),
        basis: identity_col.clone(),
        reduced: Vec::new(),
        columns,
    };
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); columns];
        for (j, a) in c.coefficients.iter().enumerate() {
            row[j] = if flipped[i] { -a } else { a.clone() };
        }
        if let Some(s) = slack_col[i] {
            row[s] = if relations[i] == Relation::Ge {
                -Rational::from_integer(1.into())
            } else {
                Rational::from_integer(1.into())
            };
        }
        row[identity_col[i]] = Rational::from_integer(1.into());
        tableau.rows.push(row);
        tableau
            .rhs
            .push(if flipped[i] { -&c.rhs } else { c.rhs.clone() });
    }

    let is_artificial = |j: usize| j >= first_artificial;

    // Phase 1: drive the artificial variables to zero.
    if columns > first_artificial {
        let cost: Vec<Rational> = (0..columns)
            .map(|j| {
                if is_artificial(j) {
                    -Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        tableau.optimize(&cost, |_| true);
        let infeasibility: Rational = tableau
            .basis
            .iter()
            .zip(&tableau.rhs)
            .filter(|(b, _)| is_artificial(**b))
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                primal: Vec::new(),
                dual: Vec::new(),
                objective_value: Rational::zero(),
            });
        }
        // Pivot zero-level artificials out where a real column allows it;
        // otherwise the row is redundant and the artificial stays at zero.
        for i in 0..rows {
            if is_artificial(tableau.basis[i]) {
                if let Some(j) = (0..first_artificial).find(|&j| !tableau.rows[i][j].is_zero()) {
                    tableau.pivot(i, j);
                }
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); columns];
    cost[..vars].clone_from_slice(&lp.objective);
    if let Outcome::Unbounded = tableau.optimize(&cost, |j| !is_artificial(j)) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            dual: Vec::new(),
            objective_value: Rational::zero(),
        });
    }

    let mut primal = vec![Rational::zero(); vars];
    for (i, &b) in tableau.basis.iter().enumerate() {
        if b < vars {
            primal[b] = tableau.rhs[i].clone();
        }
    }
    // The identity column of row i has cost 0, so its reduced cost is -y_i.
    let dual: Vec<Rational> = (0..rows)
        .map(|i| {
            let y = -&tableau.reduced[identity_col[i]];
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    let objective_value: Rational = lp.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();

    let solution = LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        objective_value,
    };
    verify_optimal(lp, &solution)?;
    Ok(solution)
}

/// Checks primal feasibility, dual feasibility and zero duality gap exactly.
pub fn verify_optimal(lp: &LinearProgram, solution: &LpSolution) -> Result<()> {
    let fail = |what: String| Err(Error::Internal(format!("LP certificate: {what}")));
    if solution.primal.iter().any(|x| x.is_negative()) {
        return fail("negative primal variable".into());
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let lhs: Rational = c
            .coefficients
            .iter()
            .zip(&solution.primal)
            .map(|(a, x)| a * x)
            .sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        if !ok {
            return fail(format!("row {i} violated"));
        }
        let y = &solution.dual[i];
        let sign_ok = match c.relation {
            Relation::Le => !y.is_negative(),
            Relation::Eq => true,
            Relation::Ge => !y.is_positive(),
        };
        if !sign_ok {
            return fail(format!("dual {i} has the wrong sign"));
        }
    }
    for j in 0..lp.variables() {
        let reduced: Rational = lp
            .constraints
            .iter()
            .zip(&solution.dual)
            .filter(|(c, _)| !c.coefficients[j].is_zero())
            .map(|(c, y)| &c.coefficients[j] * y)
            .sum();
        if reduced < lp.objective[j] {
            return fail(format!("dual constraint {j} violated"));
        }
    }
    let dual_value: Rational = lp
        .constraints
        .iter()
        .zip(&solution.dual)
        .map(|(c, y)| &c.rhs * y)
        .sum();
    if dual_value != solution.objective_value {
        return fail(format!(
            "duality gap: primal {} dual {}",
            solution.objective_value, dual_value
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn single_variable() {
        let mut lp = LinearProgram::new(ints(&[1]));
        lp.add(ints(&[1]), Relation::Le, int(1));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, ints(&[1]));
        assert_eq!(s.objective_value, int(1));
        assert_eq!(s.dual, ints(&[1]));
    }

    #[test]
    fn degenerate_zero_rhs() {
        let mut lp = LinearProgram::new(ints(&[1, 1]));
        lp.add(ints(&[1, 1]), Relation::Le, int(0));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, int(0));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(ints(&[1]));
        lp.add(ints(&[1]), Relation::Ge, int(2));
        lp.add(ints(&[1]), Relation::Le, int(1));
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Infeasible);

        let mut lp = LinearProgram::new(ints(&[1, 0]));
        lp.add(ints(&[0, 1]), Relation::Le, int(1));
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // max x - y  s.t.  x + y = 4,  -x <= -1 (x >= 1),  x <= 3
        let mut lp = LinearProgram::new(ints(&[1, -1]));
        lp.add(ints(&[1, 1]), Relation::Eq, int(4));
        lp.add(ints(&[-1, 0]), Relation::Le, int(-1));
        lp.add(ints(&[1, 0]), Relation::Le, int(3));
        let s = solve(&lp).unwrap();
        assert_eq!(s.primal, ints(&[3, 1]));
        assert_eq!(s.objective_value, int(2));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(ints(&[1, 2]));
        lp.add(ints(&[1, 1]), Relation::Eq, int(2));
        lp.add(ints(&[2, 2]), Relation::Eq, int(4));
        let s = solve(&lp).unwrap();
        assert_eq!(s.objective_value, int(4));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y <= 3, x + 3y <= 4 -> (1, 1), value 2
        // then scale rhs to force fractions
        let mut lp = LinearProgram::new(ints(&[1, 1]));
        lp.add(ints(&[2, 1]), Relation::Le, int(2));
        lp.add(ints(&[1, 3]), Relation::Le, int(2));
        let s = solve(&lp).unwrap();
        assert_eq!(s.primal, vec![frac(4, 5), frac(2, 5)]);
        assert_eq!(s.objective_value, frac(6, 5));
        assert_eq!(s.dual, vec![frac(2, 5), frac(1, 5)]);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)]);
        lp.add(
            vec![frac(1, 4), int(-60), frac(-1, 25), int(9)],
            Relation::Le,
            int(0),
        );
        lp.add(
            vec![frac(1, 2), int(-90), frac(-1, 50), int(3)],
            Relation::Le,
            int(0),
        );
        lp.add(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, frac(1, 20));
    }

    #[test]
    fn size_guards() {
        let lp = LinearProgram {
            objective: ints(&[1]),
            constraints: (0..65)
                .map(|_| Constraint {
                    coefficients: ints(&[1]),
                    relation: Relation::Le,
                    rhs: int(1),
                })
                .collect(),
        };
        assert!(matches!(solve(&lp), Err(Error::Bound { .. })));
        let mut ragged = LinearProgram::new(ints(&[1, 1]));
        ragged.add(ints(&[1]), Relation::Le, int(1));
        assert!(solve(&ragged).is_err());
    }
}
