//! Dense-tableau simplex kernel shared by the capacity LP and the
//! reference LPs.
//!
//! Scope is deliberately narrow: maximize `c . x` subject to `A x <= b` /
//! `A x = b` with `x >= 0` and `b >= 0`, so the origin is always feasible
//! and no phase-one is needed. Equality rows are expanded into opposing
//! inequality pairs, which keeps both the primal and the dual pivoting
//! rules uniform.
//!
//! Pivoting is Dantzig's rule with index tie-breaks; after 500 consecutive
//! degenerate pivots it falls back to Bland's rule until progress resumes.
//! Rows can be appended after a solve (cut generation); reoptimization then
//! runs the dual simplex from the still-dual-feasible basis.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-10;
const ZERO_TOL: f64 = 1e-13;
const DEGENERATE_RATIO_TOL: f64 = 1e-11;
const BLAND_TRIGGER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RowSense {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct KernelRow {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: RowSense,
    pub rhs: f64,
}

#[derive(Debug)]
pub(crate) struct Tableau {
    n_struct: usize,
    n_cols: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    /// Reduced costs; the incumbent is optimal when all entries <= opt_tol.
    obj: Vec<f64>,
    obj_value: f64,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    opt_tol: f64,
    degenerate_streak: usize,
    bland: bool,
    pivot_limit: usize,
    pivots_taken: usize,
}

impl Tableau {
    /// Build the initial all-slack tableau. Every row must have `rhs >= 0`.
    pub fn new(n_struct: usize, objective: &[f64], rows: &[KernelRow]) -> Result<Tableau> {
        assert_eq!(objective.len(), n_struct);
        // Equality rows become opposing inequality pairs.
        let mut expanded: Vec<(Vec<(usize, f64)>, f64)> = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.rhs < 0.0 {
                return Err(Error::Numerical(format!(
                    "kernel row {r} has negative right-hand side {}; origin must be feasible",
                    row.rhs
                )));
            }
            expanded.push((row.coeffs.clone(), row.rhs));
            if row.sense == RowSense::Eq {
                let negated: Vec<(usize, f64)> =
                    row.coeffs.iter().map(|&(j, a)| (j, -a)).collect();
                expanded.push((negated, -row.rhs));
                if row.rhs != 0.0 {
                    return Err(Error::Numerical(format!(
                        "kernel equality row {r} has nonzero right-hand side {}; \
                         the origin would be infeasible",
                        row.rhs
                    )));
                }
            }
        }
        let m = expanded.len();
        let n_cols = n_struct + m;
        let mut t = Tableau {
            n_struct,
            n_cols,
            rows: Vec::with_capacity(m + 64),
            rhs: Vec::with_capacity(m + 64),
            obj: vec![0.0; n_cols],
            obj_value: 0.0,
            basis: Vec::with_capacity(m + 64),
            in_basis: vec![false; n_cols],
            opt_tol: 1e-8,
            degenerate_streak: 0,
            bland: false,
            pivot_limit: 0,
            pivots_taken: 0,
        };
        t.obj[..n_struct].copy_from_slice(objective);
        for (r, (coeffs, rhs)) in expanded.iter().enumerate() {
            let slack = n_struct + r;
            let mut dense = vec![0.0; n_cols];
            for &(j, a) in coeffs {
                assert!(j < n_struct, "row coefficient out of range");
                dense[j] += a;
            }
            dense[slack] = 1.0;
            t.rows.push(dense);
            t.rhs.push(rhs.max(0.0));
            t.basis.push(slack);
            t.in_basis[slack] = true;
        }
        t.pivot_limit = 2000 + 400 * (m + n_struct);
        Ok(t)
    }

    #[cfg(test)]
    pub fn pivots_taken(&self) -> usize {
        self.pivots_taken
    }

    /// Values of the structural variables at the current basic solution.
    pub fn primal_values(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n_struct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                x[b] = self.rhs[r];
            }
        }
        x
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let m = self.rows.len();
        let piv = self.rows[r][e];
        let inv = 1.0 / piv;
        for a in self.rows[r].iter_mut() {
            *a *= inv;
        }
        self.rhs[r] *= inv;
        // Split borrows: move the pivot row out once.
        let prow = std::mem::take(&mut self.rows[r]);
        for r2 in 0..m {
            if r2 == r {
                continue;
            }
            let f = self.rows[r2][e];
            if f.abs() > ZERO_TOL {
                let row2 = &mut self.rows[r2];
                for (a, &p) in row2.iter_mut().zip(prow.iter()) {
                    *a -= f * p;
                }
                row2[e] = 0.0;
                self.rhs[r2] -= f * self.rhs[r];
            }
        }
        let f = self.obj[e];
        if f.abs() > ZERO_TOL {
            for (a, &p) in self.obj.iter_mut().zip(prow.iter()) {
                *a -= f * p;
            }
            self.obj[e] = 0.0;
            self.obj_value += f * self.rhs[r];
        }
        self.rows[r] = prow;
        let leaving = self.basis[r];
        self.in_basis[leaving] = false;
        self.in_basis[e] = true;
        self.basis[r] = e;
        self.pivots_taken += 1;
    }

    fn entering_column(&self) -> Option<usize> {
        if self.bland {
            (0..self.n_cols).find(|&j| !self.in_basis[j] && self.obj[j] > self.opt_tol)
        } else {
            let mut best: Option<(f64, usize)> = None;
            for j in 0..self.n_cols {
                if self.in_basis[j] {
                    continue;
                }
                let d = self.obj[j];
                if d > self.opt_tol && best.map_or(true, |(bd, _)| d > bd) {
                    best = Some((d, j));
                }
            }
            best.map(|(_, j)| j)
        }
    }

    /// Two-pass ratio test: find the minimum ratio, then among rows within
    /// a small band of it pick the largest pivot element (ties by basic
    /// index). Avoiding tiny pivots keeps the tableau numerically sane.
    fn leaving_row(&self, e: usize) -> Option<usize> {
        let mut theta = f64::INFINITY;
        for r in 0..self.rows.len() {
            let a = self.rows[r][e];
            if a > PIVOT_TOL {
                theta = theta.min(self.rhs[r].max(0.0) / a);
            }
        }
        if !theta.is_finite() {
            return None;
        }
        let band = theta + 1e-9 * (1.0 + theta);
        let mut best: Option<(f64, usize, usize)> = None; // (pivot magnitude, basis, row)
        for r in 0..self.rows.len() {
            let a = self.rows[r][e];
            if a > PIVOT_TOL && self.rhs[r].max(0.0) / a <= band {
                let better = match best {
                    None => true,
                    Some((ba, bb, _)) => a > ba || (a == ba && self.basis[r] < bb),
                };
                if better {
                    best = Some((a, self.basis[r], r));
                }
            }
        }
        best.map(|(_, _, r)| r)
    }

    /// Primal simplex to optimality.
    pub fn solve_primal(&mut self) -> Result<f64> {
        self.degenerate_streak = 0;
        self.bland = false;
        self.pivots_taken = 0;
        loop {
            let Some(e) = self.entering_column() else {
                return Ok(self.obj_value);
            };
            let Some(r) = self.leaving_row(e) else {
                return Err(Error::Numerical(format!(
                    "unbounded direction on column {e}; the LP family solved here is always bounded"
                )));
            };
            let degenerate = self.rhs[r] / self.rows[r][e] <= DEGENERATE_RATIO_TOL;
            self.pivot(r, e);
            if degenerate {
                self.degenerate_streak += 1;
                if self.degenerate_streak >= BLAND_TRIGGER {
                    self.bland = true;
                }
            } else {
                self.degenerate_streak = 0;
                self.bland = false;
            }
            if self.pivots_taken > self.pivot_limit {
                return Err(Error::IterationLimit {
                    iterations: self.pivots_taken,
                    context: "primal simplex pivot limit".into(),
                });
            }
        }
    }

    /// Append a `<=` row expressed over the structural variables and restore
    /// optimality with the dual simplex.
    pub fn add_row_le(&mut self, coeffs: &[(usize, f64)], rhs: f64) -> Result<f64> {
        let slack = self.n_cols;
        self.n_cols += 1;
        for row in self.rows.iter_mut() {
            row.push(0.0);
        }
        self.obj.push(0.0);
        self.in_basis.push(true);

        let mut dense = vec![0.0; self.n_cols];
        for &(j, a) in coeffs {
            assert!(j < self.n_struct);
            dense[j] += a;
        }
        dense[slack] = 1.0;
        let mut new_rhs = rhs;
        // Express the new row in the current basis.
        for r in 0..self.rows.len() {
            let f = dense[self.basis[r]];
            if f.abs() > ZERO_TOL {
                for (a, &p) in dense.iter_mut().zip(self.rows[r].iter()) {
                    *a -= f * p;
                }
                dense[self.basis[r]] = 0.0;
                new_rhs -= f * self.rhs[r];
            }
        }
        dense[slack] = 1.0;
        self.rows.push(dense);
        self.rhs.push(new_rhs);
        self.basis.push(slack);
        self.solve_dual()
    }

    /// Dual simplex: reduced costs stay optimal, negative right-hand sides
    /// are driven out. Falls back to Bland-style index rules after a run of
    /// degenerate pivots, mirroring the primal. The pivot budget is kept
    /// deliberately tight: a dual run that large has gone numerically
    /// astray, and callers recover by rebuilding and re-solving fresh.
    fn solve_dual(&mut self) -> Result<f64> {
        let feas_tol = 1e-9;
        let budget = (2000 + (self.rows.len() + self.n_cols) / 2).min(self.pivot_limit);
        self.degenerate_streak = 0;
        self.bland = false;
        self.pivots_taken = 0;
        loop {
            let mut leaving: Option<(f64, usize, usize)> = None;
            for r in 0..self.rows.len() {
                if self.rhs[r] < -feas_tol {
                    // Dantzig: most negative rhs. Bland: smallest basic index.
                    let key = if self.bland {
                        (self.basis[r] as f64, self.basis[r], r)
                    } else {
                        (self.rhs[r], self.basis[r], r)
                    };
                    if leaving.map_or(true, |l| (key.0, key.1) < (l.0, l.1)) {
                        leaving = Some(key);
                    }
                }
            }
            let Some((_, _, r)) = leaving else {
                return Ok(self.obj_value);
            };
            // Two-pass dual ratio test; in Bland mode ties go to the
            // smallest column index instead of the largest pivot.
            let mut theta = f64::INFINITY;
            for j in 0..self.n_cols {
                if !self.in_basis[j] {
                    let a = self.rows[r][j];
                    if a < -PIVOT_TOL {
                        // Clamp drift: reduced costs are <= 0 up to noise.
                        theta = theta.min(self.obj[j].min(0.0) / a);
                    }
                }
            }
            let mut best: Option<(f64, usize)> = None; // (|pivot|, column)
            if theta.is_finite() {
                let band = theta + 1e-9 * (1.0 + theta.abs());
                for j in 0..self.n_cols {
                    if self.in_basis[j] {
                        continue;
                    }
                    let a = self.rows[r][j];
                    if a < -PIVOT_TOL && self.obj[j].min(0.0) / a <= band {
                        if self.bland {
                            best = Some((-a, j));
                            break;
                        }
                        let mag = -a;
                        let better = match best {
                            None => true,
                            Some((bm, bj)) => mag > bm || (mag == bm && j < bj),
                        };
                        if better {
                            best = Some((mag, j));
                        }
                    }
                }
            }
            let Some((_, j)) = best else {
                return Err(Error::Numerical(
                    "dual simplex found no entering column; appended row made the LP infeasible"
                        .into(),
                ));
            };
            let degenerate = self.obj[j].abs() <= self.opt_tol;
            self.pivot(r, j);
            if degenerate {
                self.degenerate_streak += 1;
                if self.degenerate_streak >= BLAND_TRIGGER {
                    self.bland = true;
                }
            } else {
                self.degenerate_streak = 0;
                self.bland = false;
            }
            if self.pivots_taken > budget {
                return Err(Error::IterationLimit {
                    iterations: self.pivots_taken,
                    context: "dual simplex pivot budget".into(),
                });
            }
        }
    }
}
