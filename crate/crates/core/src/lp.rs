//! Exact rational simplex for `minimize c·x subject to A x = b, x ≥ 0`.
//!
//! Dense two-phase tableau with Bland's rule, so every run terminates and no
//! floating point is involved.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Sparse equality row `Σ coeff·x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Row>,
}

/// Row-reduces a system of equalities, dropping dependent rows. Returns
/// `None` when the system is inconsistent.
pub fn independent_rows(num_vars: usize, rows: &[Row]) -> Option<Vec<Row>> {
    let mut dense: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); num_vars + 1];
            for (j, c) in &r.coeffs {
                v[*j] += c;
            }
            v[num_vars] = r.rhs.clone();
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..num_vars {
        let Some(p) = (rank..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, p);
        let pivot = dense[rank][col].clone();
        for v in dense[rank].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = dense[rank].clone();
        for (r, row) in dense.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        rank += 1;
    }
    if dense[rank..].iter().any(|r| !r[num_vars].is_zero()) {
        return None;
    }
    dense.truncate(rank);
    Some(
        dense
            .into_iter()
            .map(|v| {
                let coeffs = v[..num_vars]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, c.clone()))
                    .collect();
                Row::new(coeffs, v[num_vars].clone())
            })
            .collect(),
    )
}

struct Tableau {
    /// `rows[i]` has `width + 1` entries; the last is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let pivot = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &pivot;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            if row[col].is_zero() {
                return;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< allowed` with Bland's rule.
    fn run(&mut self, allowed: usize) -> Phase {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Phase::Unbounded,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }

    fn point(&self, num_vars: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < num_vars {
                x[b] = self.rows[i][self.width].clone();
            }
        }
        x
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn with_rows(num_vars: usize, rows: Vec<Row>) -> Self {
        LinearProgram { num_vars, rows }
    }

    pub fn add_row(&mut self, row: Row) -> &mut Self {
        self.rows.push(row);
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Phase one. Returns a tableau with a feasible basis over the original
    /// columns, or `None` if the system is infeasible.
    fn feasible_tableau(&self) -> Option<Tableau> {
        let n = self.num_vars;
        let m = self.rows.len();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, r) in self.rows.iter().enumerate() {
            let mut v = vec![Rational::zero(); width + 1];
            for (j, c) in &r.coeffs {
                v[*j] += c;
            }
            v[width] = r.rhs.clone();
            if r.rhs.is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
            v[n + i] = Rational::from_integer(1.into());
            rows.push(v);
        }
        let mut obj = vec![Rational::zero(); width + 1];
        for row in &rows {
            for j in (0..n).chain(std::iter::once(width)) {
                obj[j] -= &row[j];
            }
        }
        let mut t = Tableau {
            rows,
            obj,
            basis: (n..n + m).collect(),
            width,
        };
        t.run(width);
        if !t.obj[width].is_zero() {
            return None;
        }
        // Drive artificial variables out of the basis; rows that cannot be
        // pivoted are redundant.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        Some(t)
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        self.feasible_tableau().map(|t| t.point(self.num_vars))
    }

    /// Minimizes `objective · x`.
    pub fn minimize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars);
        let n = self.num_vars;
        let Some(mut t) = self.feasible_tableau() else {
            return LpOutcome::Infeasible;
        };
        let mut obj = vec![Rational::zero(); t.width + 1];
        obj[..n].clone_from_slice(objective);
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n && !objective[b].is_zero() {
                let cb = objective[b].clone();
                for (o, x) in obj.iter_mut().zip(&t.rows[i]) {
                    if !x.is_zero() {
                        *o -= &cb * x;
                    }
                }
            }
        }
        t.obj = obj;
        match t.run(n) {
            Phase::Unbounded => LpOutcome::Unbounded,
            Phase::Optimal => LpOutcome::Optimal {
                value: -t.obj[t.width].clone(),
                point: t.point(n),
            },
        }
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        let neg: Vec<Rational> = objective.iter().map(|c| -c.clone()).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn row(coeffs: &[(usize, i64)], rhs: i64) -> Row {
        Row::new(coeffs.iter().map(|&(j, c)| (j, int(c))).collect(), int(rhs))
    }

    #[test]
    fn small_program() {
        // x0 + x1 + x2 = 1, x0 - x1 = 0; minimize -x0 → x0 = x1 = 1/2
        let lp = LinearProgram::with_rows(
            3,
            vec![
                row(&[(0, 1), (1, 1), (2, 1)], 1),
                row(&[(0, 1), (1, -1)], 0),
            ],
        );
        match lp.minimize(&[int(-1), int(0), int(0)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(-1, 2));
                assert_eq!(point, vec![ratio(1, 2), ratio(1, 2), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram::with_rows(1, vec![row(&[(0, 1)], -1)]);
        assert_eq!(lp.minimize(&[int(1)]), LpOutcome::Infeasible);
        let lp = LinearProgram::with_rows(2, vec![row(&[(0, 1), (1, -1)], 0)]);
        assert_eq!(lp.minimize(&[int(-1), int(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let lp = LinearProgram::with_rows(
            2,
            vec![
                row(&[(0, 1), (1, 1)], 1),
                row(&[(0, 2), (1, 2)], 2),
                row(&[(0, 1)], 0),
            ],
        );
        assert_eq!(lp.feasible_point(), Some(vec![int(0), int(1)]));
    }

    #[test]
    fn independent_rows_detects_inconsistency() {
        let rows = vec![row(&[(0, 1)], 1), row(&[(0, 2)], 1)];
        assert_eq!(independent_rows(1, &rows), None);
        let rows = vec![row(&[(0, 1), (1, 1)], 1), row(&[(0, 3), (1, 3)], 3)];
        assert_eq!(independent_rows(2, &rows).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance in equality form with slacks.
        let q = |p, d| ratio(p, d);
        let rows = vec![
            Row::new(
                vec![
                    (0, q(1, 4)),
                    (1, int(-60)),
                    (2, q(-1, 25)),
                    (3, int(9)),
                    (4, int(1)),
                ],
                int(0),
            ),
            Row::new(
                vec![
                    (0, q(1, 2)),
                    (1, int(-90)),
                    (2, q(-1, 50)),
                    (3, int(3)),
                    (5, int(1)),
                ],
                int(0),
            ),
            Row::new(vec![(2, int(1)), (6, int(1))], int(1)),
        ];
        let lp = LinearProgram::with_rows(7, rows);
        let c = [
            q(-3, 4),
            int(150),
            q(-1, 50),
            int(6),
            int(0),
            int(0),
            int(0),
        ];
        match lp.minimize(&c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
