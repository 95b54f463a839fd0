//! Exact rational linear programming.
//!
//! A dense two-phase primal simplex over arbitrary-precision rationals with
//! Bland's anti-cycling pivot rule. Every optimum is exact, so "optimum
//! equals zero" is a hard branch rather than a tolerance question, and the
//! returned point is a self-certifying witness: re-substitution must satisfy
//! every constraint and reproduce the objective value exactly.
//!
//! There is no floating-point presolve and no scaling. The LPs in this crate
//! are tiny (tens of variables), so the classic dense tableau is the right
//! tool.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::model::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("a linear program needs at least one variable")]
    NoVariables,

    #[error("constraint has {got} coefficients, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("variable index {index} out of range ({num_vars} variables)")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A maximization problem over rational variables with optional per-variable
/// bounds. Construct with [`LinearProgram::maximize`], then add rows.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn maximize(objective: Vec<Rational>) -> Result<Self, LpError> {
        if objective.is_empty() {
            return Err(LpError::NoVariables);
        }
        let n = objective.len();
        Ok(LinearProgram {
            objective,
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<(), LpError> {
        if coeffs.len() != self.num_vars() {
            return Err(LpError::CoefficientLength {
                expected: self.num_vars(),
                got: coeffs.len(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn set_lower(&mut self, var: usize, bound: Rational) -> Result<(), LpError> {
        if var >= self.num_vars() {
            return Err(LpError::VariableOutOfRange {
                index: var,
                num_vars: self.num_vars(),
            });
        }
        self.lower[var] = Some(bound);
        Ok(())
    }

    pub fn set_upper(&mut self, var: usize, bound: Rational) -> Result<(), LpError> {
        if var >= self.num_vars() {
            return Err(LpError::VariableOutOfRange {
                index: var,
                num_vars: self.num_vars(),
            });
        }
        self.upper[var] = Some(bound);
        Ok(())
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .sum()
    }

    /// Exact re-substitution check of all constraints and bounds.
    pub fn verify_feasible(&self, point: &[Rational]) -> Result<bool, LpError> {
        if point.len() != self.num_vars() {
            return Err(LpError::PointLength {
                expected: self.num_vars(),
                got: point.len(),
            });
        }
        for (j, x) in point.iter().enumerate() {
            if let Some(l) = &self.lower[j] {
                if x < l {
                    return Ok(false);
                }
            }
            if let Some(u) = &self.upper[j] {
                if x > u {
                    return Ok(false);
                }
            }
        }
        for c in &self.constraints {
            let lhs: Rational = c.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Solves the program exactly. Infeasible and Unbounded are ordinary
    /// outcomes; the fixed pivot rule makes the result deterministic.
    pub fn solve(&self) -> LpOutcome {
        Standardized::build(self).map_or(LpOutcome::Infeasible, |mut std| std.solve(self))
    }
}

/// How one original variable maps onto nonnegative standard-form variables.
#[derive(Clone, Debug)]
enum VarMap {
    /// `x = shift + y`
    Shifted { col: usize, shift: Rational },
    /// `x = offset - y`
    Negated { col: usize, offset: Rational },
    /// `x = y_pos - y_neg`
    Split { pos: usize, neg: usize },
}

struct StdRow {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// The program rewritten over nonnegative variables, before slack form.
struct Standardized {
    var_map: Vec<VarMap>,
    num_std: usize,
    rows: Vec<StdRow>,
    objective: Vec<Rational>,
    constant: Rational,
}

impl Standardized {
    /// Returns `None` when a variable's bounds are contradictory (lower >
    /// upper), which settles infeasibility without the simplex.
    fn build(lp: &LinearProgram) -> Option<Standardized> {
        let n = lp.num_vars();
        let mut var_map = Vec::with_capacity(n);
        let mut extra_rows: Vec<(usize, Rational)> = Vec::new(); // y_col <= bound
        let mut num_std = 0usize;
        for j in 0..n {
            match (&lp.lower[j], &lp.upper[j]) {
                (Some(l), Some(u)) if u < l => return None,
                (Some(l), u) => {
                    if let Some(u) = u {
                        extra_rows.push((num_std, u - l));
                    }
                    var_map.push(VarMap::Shifted {
                        col: num_std,
                        shift: l.clone(),
                    });
                    num_std += 1;
                }
                (None, Some(u)) => {
                    var_map.push(VarMap::Negated {
                        col: num_std,
                        offset: u.clone(),
                    });
                    num_std += 1;
                }
                (None, None) => {
                    var_map.push(VarMap::Split {
                        pos: num_std,
                        neg: num_std + 1,
                    });
                    num_std += 2;
                }
            }
        }

        let rewrite = |coeffs: &[Rational], rhs: &Rational| -> (Vec<Rational>, Rational) {
            let mut row = vec![Rational::zero(); num_std];
            let mut rhs = rhs.clone();
            for (j, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &var_map[j] {
                    VarMap::Shifted { col, shift } => {
                        row[*col] = &row[*col] + c;
                        rhs -= c * shift;
                    }
                    VarMap::Negated { col, offset } => {
                        row[*col] = &row[*col] - c;
                        rhs -= c * offset;
                    }
                    VarMap::Split { pos, neg } => {
                        row[*pos] = &row[*pos] + c;
                        row[*neg] = &row[*neg] - c;
                    }
                }
            }
            (row, rhs)
        };

        let mut rows = Vec::with_capacity(lp.constraints.len() + extra_rows.len());
        for c in &lp.constraints {
            let (coeffs, rhs) = rewrite(&c.coeffs, &c.rhs);
            rows.push(StdRow {
                coeffs,
                relation: c.relation,
                rhs,
            });
        }
        for (col, bound) in extra_rows {
            let mut coeffs = vec![Rational::zero(); num_std];
            coeffs[col] = Rational::one();
            rows.push(StdRow {
                coeffs,
                relation: Relation::Le,
                rhs: bound,
            });
        }

        let (objective, neg_constant) = rewrite(&lp.objective, &Rational::zero());
        Some(Standardized {
            var_map,
            num_std,
            rows,
            objective,
            constant: -neg_constant,
        })
    }

    fn solve(&mut self, lp: &LinearProgram) -> LpOutcome {
        // Normalize every row to nonnegative rhs; homogeneous >= rows become
        // <= rows so that slack variables alone form the initial basis.
        for row in &mut self.rows {
            let flip = row.rhs.is_negative()
                || (row.rhs.is_zero() && row.relation == Relation::Ge);
            if flip {
                for c in &mut row.coeffs {
                    *c = -c.clone();
                }
                row.rhs = -row.rhs.clone();
                row.relation = match row.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Eq => Relation::Eq,
                    Relation::Ge => Relation::Le,
                };
            }
        }

        let m = self.rows.len();
        let ns = self.num_std;
        // Column layout: structural | slack/surplus | artificial.
        let mut n_slack = 0usize;
        let mut n_art = 0usize;
        for row in &self.rows {
            match row.relation {
                Relation::Le => n_slack += 1,
                Relation::Ge => {
                    n_slack += 1;
                    n_art += 1;
                }
                Relation::Eq => n_art += 1,
            }
        }
        let art_start = ns + n_slack;
        let ncols = ns + n_slack + n_art;

        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rational> = Vec::with_capacity(m);
        let mut basis: Vec<usize> = Vec::with_capacity(m);
        let mut slack_idx = ns;
        let mut art_idx = art_start;
        for row in &self.rows {
            let mut t = vec![Rational::zero(); ncols];
            t[..ns].clone_from_slice(&row.coeffs);
            match row.relation {
                Relation::Le => {
                    t[slack_idx] = Rational::one();
                    basis.push(slack_idx);
                    slack_idx += 1;
                }
                Relation::Ge => {
                    t[slack_idx] = -Rational::one();
                    slack_idx += 1;
                    t[art_idx] = Rational::one();
                    basis.push(art_idx);
                    art_idx += 1;
                }
                Relation::Eq => {
                    t[art_idx] = Rational::one();
                    basis.push(art_idx);
                    art_idx += 1;
                }
            }
            tab.push(t);
            rhs.push(row.rhs.clone());
        }

        let mut tableau = Tableau {
            tab,
            rhs,
            basis,
            limit: ncols,
        };

        if n_art > 0 {
            // Phase 1: maximize -sum(artificials).
            let mut cost = vec![Rational::zero(); ncols];
            for j in art_start..ncols {
                cost[j] = -Rational::one();
            }
            let mut value = Rational::zero();
            tableau.price_out(&mut cost, &mut value);
            let outcome = tableau.run(&mut cost, &mut value);
            assert!(
                outcome,
                "phase 1 objective is bounded above; simplex invariant broken"
            );
            if value.is_negative() {
                return LpOutcome::Infeasible;
            }
            tableau.drive_out_artificials(art_start);
            tableau.limit = art_start;
        }

        // Phase 2 on the real objective.
        let mut cost = vec![Rational::zero(); ncols];
        cost[..ns].clone_from_slice(&self.objective);
        let mut value = Rational::zero();
        tableau.price_out(&mut cost, &mut value);
        if !tableau.run(&mut cost, &mut value) {
            return LpOutcome::Unbounded;
        }

        // Read the vertex back in original coordinates.
        let mut std_point = vec![Rational::zero(); self.num_std];
        for (i, &b) in tableau.basis.iter().enumerate() {
            if b < self.num_std {
                std_point[b] = tableau.rhs[i].clone();
            }
        }
        let point: Vec<Rational> = self
            .var_map
            .iter()
            .map(|vm| match vm {
                VarMap::Shifted { col, shift } => shift + &std_point[*col],
                VarMap::Negated { col, offset } => offset - &std_point[*col],
                VarMap::Split { pos, neg } => &std_point[*pos] - &std_point[*neg],
            })
            .collect();
        let value = &value + &self.constant;
        debug_assert_eq!(lp.objective_value(&point), value);
        LpOutcome::Optimal { value, point }
    }
}

struct Tableau {
    tab: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns at or beyond this index are never selected to enter.
    limit: usize,
}

impl Tableau {
    /// Zeroes the cost entries of basic variables, accumulating the
    /// objective value of the current vertex.
    fn price_out(&self, cost: &mut [Rational], value: &mut Rational) {
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let f = cost[b].clone();
            for (j, a) in self.tab[i].iter().enumerate() {
                if !a.is_zero() {
                    cost[j] = &cost[j] - &(&f * a);
                }
            }
            *value = &*value + &(&f * &self.rhs[i]);
        }
    }

    /// Bland's rule simplex loop. Returns false on unboundedness.
    fn run(&mut self, cost: &mut [Rational], value: &mut Rational) -> bool {
        loop {
            let Some(entering) = (0..self.limit).find(|&j| cost[j].is_positive()) else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.tab.len() {
                let a = &self.tab[i][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, entering, cost, value);
        }
    }

    fn pivot(&mut self, row: usize, col: usize, cost: &mut [Rational], value: &mut Rational) {
        let pivot = self.tab[row][col].clone();
        if !pivot.is_one() {
            for a in &mut self.tab[row] {
                if !a.is_zero() {
                    *a = &*a / &pivot;
                }
            }
            self.rhs[row] = &self.rhs[row] / &pivot;
        }
        self.tab[row][col] = Rational::one();

        let pivot_row = std::mem::take(&mut self.tab[row]);
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.tab.len() {
            if i == row {
                continue;
            }
            let f = self.tab[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (j, a) in pivot_row.iter().enumerate() {
                if !a.is_zero() {
                    self.tab[i][j] = &self.tab[i][j] - &(&f * a);
                }
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &pivot_rhs);
        }
        if !cost.is_empty() && !cost[col].is_zero() {
            let f = cost[col].clone();
            for (j, a) in pivot_row.iter().enumerate() {
                if !a.is_zero() {
                    cost[j] = &cost[j] - &(&f * a);
                }
            }
            *value = &*value + &(&f * &pivot_rhs);
        }
        self.tab[row] = pivot_row;
        self.basis[row] = col;
    }

    /// At a zero-value phase-1 optimum, pivots basic artificials out on any
    /// nonzero structural entry; rows with none are redundant and dropped.
    fn drive_out_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.tab.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            debug_assert!(self.rhs[i].is_zero());
            match (0..art_start).find(|&j| !self.tab[i][j].is_zero()) {
                Some(j) => {
                    let mut dummy_cost = vec![];
                    let mut dummy_value = Rational::zero();
                    // cost row untouched: artificial cost entries are stale
                    // after phase 1 anyway and get rebuilt for phase 2.
                    self.pivot(i, j, &mut dummy_cost, &mut dummy_value);
                    i += 1;
                }
                None => {
                    self.tab.swap_remove(i);
                    self.rhs.swap_remove(i);
                    self.basis.swap_remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rat;

    fn outcome_value(o: &LpOutcome) -> Rational {
        o.value().expect("optimal").clone()
    }

    #[test]
    fn single_variable_box() {
        let mut lp = LinearProgram::maximize(vec![rat(1, 1)]).unwrap();
        lp.add_constraint(vec![rat(1, 1)], Relation::Le, rat(3, 2)).unwrap();
        lp.set_lower(0, rat(0, 1)).unwrap();
        let out = lp.solve();
        assert_eq!(outcome_value(&out), rat(3, 2));
        assert_eq!(out.point().unwrap(), &[rat(3, 2)]);

        assert!(lp.verify_feasible(&[rat(3, 2)]).unwrap());
        assert!(!lp.verify_feasible(&[rat(2, 1)]).unwrap());
    }

    #[test]
    fn infeasible_pair_of_bounds() {
        let mut lp = LinearProgram::maximize(vec![rat(1, 1)]).unwrap();
        lp.add_constraint(vec![rat(1, 1)], Relation::Ge, rat(2, 1)).unwrap();
        lp.add_constraint(vec![rat(1, 1)], Relation::Le, rat(1, 1)).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn face_of_optima() {
        let mut lp = LinearProgram::maximize(vec![rat(1, 1), rat(1, 1)]).unwrap();
        lp.add_constraint(vec![rat(1, 1), rat(1, 1)], Relation::Le, rat(1, 1))
            .unwrap();
        lp.set_lower(0, rat(0, 1)).unwrap();
        lp.set_lower(1, rat(0, 1)).unwrap();
        let out = lp.solve();
        assert_eq!(outcome_value(&out), rat(1, 1));
        let point = out.point().unwrap().to_vec();
        assert!(lp.verify_feasible(&point).unwrap());
        assert_eq!(lp.objective_value(&point), rat(1, 1));
        assert!(lp.verify_feasible(&[rat(1, 2), rat(1, 2)]).unwrap());
    }

    #[test]
    fn unbounded_direction() {
        let mut lp = LinearProgram::maximize(vec![rat(1, 1), rat(0, 1)]).unwrap();
        lp.add_constraint(vec![rat(0, 1), rat(1, 1)], Relation::Le, rat(5, 1))
            .unwrap();
        lp.set_lower(1, rat(0, 1)).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // maximize x - y  s.t.  x + y = 2,  x - y <= 1  (x, y free)
        let mut lp = LinearProgram::maximize(vec![rat(1, 1), rat(-1, 1)]).unwrap();
        lp.add_constraint(vec![rat(1, 1), rat(1, 1)], Relation::Eq, rat(2, 1))
            .unwrap();
        lp.add_constraint(vec![rat(1, 1), rat(-1, 1)], Relation::Le, rat(1, 1))
            .unwrap();
        let out = lp.solve();
        assert_eq!(outcome_value(&out), rat(1, 1));
        assert_eq!(out.point().unwrap(), &[rat(3, 2), rat(1, 2)]);
    }

    #[test]
    fn negative_lower_bounds() {
        // maximize -x  with  x >= -7/3
        let mut lp = LinearProgram::maximize(vec![rat(-1, 1)]).unwrap();
        lp.set_lower(0, rat(-7, 3)).unwrap();
        let out = lp.solve();
        assert_eq!(outcome_value(&out), rat(7, 3));
        assert_eq!(out.point().unwrap(), &[rat(-7, 3)]);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut lp = LinearProgram::maximize(vec![rat(1, 1)]).unwrap();
        lp.set_lower(0, rat(1, 1)).unwrap();
        lp.set_upper(0, rat(0, 1)).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    /// Beale's classic cycling instance; Bland's rule must terminate at 1/20.
    #[test]
    fn beale_degenerate_cycle() {
        let mut lp = LinearProgram::maximize(vec![rat(3, 4), rat(-150, 1), rat(1, 50), rat(-6, 1)])
            .unwrap();
        lp.add_constraint(
            vec![rat(1, 4), rat(-60, 1), rat(-1, 25), rat(9, 1)],
            Relation::Le,
            rat(0, 1),
        )
        .unwrap();
        lp.add_constraint(
            vec![rat(1, 2), rat(-90, 1), rat(-1, 50), rat(3, 1)],
            Relation::Le,
            rat(0, 1),
        )
        .unwrap();
        lp.add_constraint(
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
            Relation::Le,
            rat(1, 1),
        )
        .unwrap();
        for v in 0..4 {
            lp.set_lower(v, rat(0, 1)).unwrap();
        }
        let out = lp.solve();
        assert_eq!(outcome_value(&out), rat(1, 20));
        assert!(lp.verify_feasible(out.point().unwrap()).unwrap());
    }

    #[test]
    fn deterministic_resolve() {
        let mut lp = LinearProgram::maximize(vec![rat(2, 1), rat(3, 1), rat(1, 1)]).unwrap();
        lp.add_constraint(
            vec![rat(1, 1), rat(1, 1), rat(1, 1)],
            Relation::Le,
            rat(10, 1),
        )
        .unwrap();
        lp.add_constraint(
            vec![rat(1, 1), rat(2, 1), rat(0, 1)],
            Relation::Le,
            rat(8, 1),
        )
        .unwrap();
        for v in 0..3 {
            lp.set_lower(v, rat(0, 1)).unwrap();
        }
        assert_eq!(lp.solve(), lp.solve());
    }

    #[test]
    fn certificate_matches_objective() {
        let mut lp = LinearProgram::maximize(vec![rat(5, 3), rat(-1, 7)]).unwrap();
        lp.add_constraint(vec![rat(2, 1), rat(1, 1)], Relation::Le, rat(7, 2))
            .unwrap();
        lp.add_constraint(vec![rat(1, 1), rat(-1, 1)], Relation::Ge, rat(-2, 1))
            .unwrap();
        lp.set_lower(0, rat(0, 1)).unwrap();
        lp.set_lower(1, rat(0, 1)).unwrap();
        let out = lp.solve();
        let point = out.point().unwrap().to_vec();
        assert!(lp.verify_feasible(&point).unwrap());
        assert_eq!(&lp.objective_value(&point), out.value().unwrap());
    }

    #[test]
    fn point_length_mismatch_is_an_error() {
        let lp = LinearProgram::maximize(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(
            lp.verify_feasible(&[rat(1, 1)]).unwrap_err(),
            LpError::PointLength {
                expected: 2,
                got: 1
            }
        );
    }
}
