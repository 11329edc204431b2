//! Exact linear programming over the rationals.
//!
//! Problems are in equality standard form: `A x = b`, `x >= 0`. Phase one
//! finds a feasible basis once; every objective is then optimised from a copy
//! of that basis. Pivoting follows Bland's rule, so the method terminates even
//! on the highly degenerate polytopes met here.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// One equality row `sum(coefficient * x_var) = rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub terms: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(terms: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        Constraint { terms, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Finite { value: Rational, point: Vec<Rational> },
    Unbounded,
}

/// A simplex tableau holding a feasible basis.
#[derive(Clone, Debug)]
pub struct FeasibleBasis {
    vars: usize,
    /// `rows[i][..vars]` coefficients, `rows[i][vars]` right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    pivots: usize,
}

fn pivot(rows: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = rows[r][c].recip();
    if !inv.is_one() {
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
    }
    let support: Vec<usize> = (0..rows[r].len()).filter(|&j| !rows[r][j].is_zero()).collect();
    let pivot_row = rows[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let factor = row[c].clone();
        for &j in &support {
            row[j] -= &factor * &pivot_row[j];
        }
    }
    if !cost[c].is_zero() {
        let factor = cost[c].clone();
        for &j in &support {
            cost[j] -= &factor * &pivot_row[j];
        }
    }
}

/// Runs the simplex loop on `rows`/`cost` over the first `columns` columns.
/// `cost` holds reduced costs and, in its last slot, minus the objective.
/// Returns false when unbounded.
fn run(
    rows: &mut [Vec<Rational>],
    cost: &mut [Rational],
    basis: &mut [usize],
    columns: usize,
    pivots: &mut usize,
) -> bool {
    let rhs = rows.first().map_or(0, |r| r.len() - 1);
    loop {
        // Bland: lowest-index improving column.
        let Some(c) = (0..columns).find(|&j| cost[j].is_negative()) else {
            return true;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[c];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return false;
        };
        pivot(rows, cost, r, c);
        basis[r] = c;
        *pivots += 1;
    }
}

impl FeasibleBasis {
    /// Phase one. Returns `None` when the constraints are infeasible.
    ///
    /// Artificial variables have no tableau columns: once one leaves the
    /// basis it never re-enters, which keeps the rows from filling in.
    pub fn new(vars: usize, constraints: &[Constraint]) -> Option<Self> {
        let m = constraints.len();
        let rhs = vars;
        let mut rows = Vec::with_capacity(m);
        for con in constraints {
            let mut row = vec![Rational::zero(); vars + 1];
            for (v, coeff) in &con.terms {
                assert!(*v < vars, "variable index out of range");
                row[*v] += coeff;
            }
            row[rhs] = con.rhs.clone();
            if row[rhs].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            rows.push(row);
        }
        // Minimise the sum of artificials: reduced costs are minus the column
        // sums over original variables.
        let mut cost = vec![Rational::zero(); vars + 1];
        for row in &rows {
            for j in 0..=vars {
                cost[j] -= &row[j];
            }
        }
        let mut basis: Vec<usize> = (vars..vars + m).collect();
        let mut pivots = 0;
        run(&mut rows, &mut cost, &mut basis, vars, &mut pivots);
        if !cost[rhs].is_zero() {
            return None;
        }

        // Drive artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < rows.len() {
            if basis[i] >= vars {
                match (0..vars).find(|&j| !rows[i][j].is_zero()) {
                    Some(j) => {
                        pivot(&mut rows, &mut cost, i, j);
                        basis[i] = j;
                        pivots += 1;
                    }
                    None => {
                        rows.remove(i);
                        basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        Some(FeasibleBasis {
            vars,
            rows,
            basis,
            pivots,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Total pivots performed by phase one.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// The basic feasible solution of the current basis.
    pub fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[self.vars].clone();
        }
        x
    }

    /// Minimises `sum(coefficient * x_var)`.
    pub fn minimize(&self, objective: &[(usize, Rational)]) -> Optimum {
        let mut dense = vec![Rational::zero(); self.vars];
        for (v, c) in objective {
            dense[*v] += c;
        }
        let mut rows = self.rows.clone();
        let mut basis = self.basis.clone();
        // Reduced costs c_j - c_B B^-1 A_j; last slot is -c_B B^-1 b.
        let mut cost = dense.clone();
        cost.push(Rational::zero());
        for (row, &b) in rows.iter().zip(&basis) {
            if dense[b].is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cost[j] -= &dense[b] * v;
                }
            }
        }
        let mut pivots = 0;
        if !run(&mut rows, &mut cost, &mut basis, self.vars, &mut pivots) {
            return Optimum::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.vars];
        for (row, &b) in rows.iter().zip(&basis) {
            point[b] = row[self.vars].clone();
        }
        Optimum::Finite {
            value: -cost[self.vars].clone(),
            point,
        }
    }

    pub fn maximize(&self, objective: &[(usize, Rational)]) -> Optimum {
        let negated: Vec<(usize, Rational)> = objective.iter().map(|(v, c)| (*v, -c.clone())).collect();
        match self.minimize(&negated) {
            Optimum::Finite { value, point } => Optimum::Finite { value: -value, point },
            Optimum::Unbounded => Optimum::Unbounded,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        q(n, 1)
    }

    #[test]
    fn simplex_on_triangle() {
        // x + y + z = 1
        let cons = [Constraint::new(vec![(0, int(1)), (1, int(1)), (2, int(1))], int(1))];
        let fb = FeasibleBasis::new(3, &cons).unwrap();
        match fb.minimize(&[(0, int(1))]) {
            Optimum::Finite { value, .. } => assert_eq!(value, int(0)),
            o => panic!("{o:?}"),
        }
        match fb.maximize(&[(0, int(2)), (1, int(1))]) {
            Optimum::Finite { value, point } => {
                assert_eq!(value, int(2));
                assert_eq!(point, vec![int(1), int(0), int(0)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1, x + y = 2
        let cons = [
            Constraint::new(vec![(0, int(1)), (1, int(1))], int(1)),
            Constraint::new(vec![(0, int(1)), (1, int(1))], int(2)),
        ];
        assert!(FeasibleBasis::new(2, &cons).is_none());
        // x = -1 with x >= 0
        let cons = [Constraint::new(vec![(0, int(1))], int(-1))];
        assert!(FeasibleBasis::new(1, &cons).is_none());
    }

    #[test]
    fn redundant_rows_and_fractions() {
        // x + y = 1, 2x + 2y = 2, x - y = 1/3
        let cons = [
            Constraint::new(vec![(0, int(1)), (1, int(1))], int(1)),
            Constraint::new(vec![(0, int(2)), (1, int(2))], int(2)),
            Constraint::new(vec![(0, int(1)), (1, int(-1))], q(1, 3)),
        ];
        let fb = FeasibleBasis::new(2, &cons).unwrap();
        assert_eq!(fb.point(), vec![q(2, 3), q(1, 3)]);
    }

    #[test]
    fn unbounded() {
        // x - y = 0
        let cons = [Constraint::new(vec![(0, int(1)), (1, int(-1))], int(0))];
        let fb = FeasibleBasis::new(2, &cons).unwrap();
        assert_eq!(fb.maximize(&[(0, int(1))]), Optimum::Unbounded);
    }
}
