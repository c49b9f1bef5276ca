//! Exact rational linear programming: revised simplex with a dense basis
//! inverse, phase-1 feasibility, phase-2 maximization, and hooks for
//! column generation. No tolerances anywhere; Bland's rule guards
//! against cycling.

use crate::error::{Error, Result};
use crate::rational::{rone, rzero, Rat};
use num::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColKind {
    Structural(usize),
    Slack,
    Surplus,
    Artificial,
}

pub struct ExactLp {
    m: usize,
    col_entries: Vec<Vec<(usize, Rat)>>,
    col_cost: Vec<Rat>,
    col_kind: Vec<ColKind>,
    basis: Vec<usize>,
    binv: Vec<Vec<Rat>>,
    xb: Vec<Rat>,
}

/// A structural column produced by a pricing callback.
pub struct NewColumn {
    pub user_id: usize,
    pub entries: Vec<(usize, Rat)>,
    pub cost: Rat,
}

impl ExactLp {
    /// Rows are `a.x (sense) rhs` with `rhs >= 0`.
    pub fn new(rows: &[(Sense, Rat)]) -> ExactLp {
        let m = rows.len();
        let mut lp = ExactLp {
            m,
            col_entries: Vec::new(),
            col_cost: Vec::new(),
            col_kind: Vec::new(),
            basis: vec![usize::MAX; m],
            binv: (0..m)
                .map(|i| {
                    let mut row = vec![rzero(); m];
                    row[i] = rone();
                    row
                })
                .collect(),
            xb: rows.iter().map(|(_, b)| b.clone()).collect(),
        };
        for (r, (sense, b)) in rows.iter().enumerate() {
            assert!(*b >= rzero(), "rhs must be nonnegative");
            match sense {
                Sense::Le => {
                    let s = lp.push_col(vec![(r, rone())], rzero(), ColKind::Slack);
                    lp.basis[r] = s;
                }
                Sense::Ge => {
                    lp.push_col(vec![(r, -rone())], rzero(), ColKind::Surplus);
                    let a = lp.push_col(vec![(r, rone())], rzero(), ColKind::Artificial);
                    lp.basis[r] = a;
                }
                Sense::Eq => {
                    let a = lp.push_col(vec![(r, rone())], rzero(), ColKind::Artificial);
                    lp.basis[r] = a;
                }
            }
        }
        lp
    }

    fn push_col(&mut self, entries: Vec<(usize, Rat)>, cost: Rat, kind: ColKind) -> usize {
        self.col_entries.push(entries);
        self.col_cost.push(cost);
        self.col_kind.push(kind);
        self.col_kind.len() - 1
    }

    /// Register a structural column (variable >= 0) with the given
    /// objective coefficient for phase 2.
    pub fn add_column(&mut self, user_id: usize, entries: Vec<(usize, Rat)>, cost: Rat) -> usize {
        self.push_col(entries, cost, ColKind::Structural(user_id))
    }

    pub fn column_count(&self) -> usize {
        self.col_entries.len()
    }

    fn phase_cost(&self, col: usize, phase1: bool) -> Rat {
        if phase1 {
            match self.col_kind[col] {
                ColKind::Artificial => -rone(),
                _ => rzero(),
            }
        } else {
            self.col_cost[col].clone()
        }
    }

    /// Simplex duals y = c_B B^-1 for the current phase.
    fn duals(&self, phase1: bool) -> Vec<Rat> {
        let mut y = vec![rzero(); self.m];
        for (r, &bc) in self.basis.iter().enumerate() {
            let c = self.phase_cost(bc, phase1);
            if c.is_zero() {
                continue;
            }
            for i in 0..self.m {
                if !self.binv[r][i].is_zero() {
                    y[i] += &c * &self.binv[r][i];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, col: usize, y: &[Rat], phase1: bool) -> Rat {
        let mut rc = self.phase_cost(col, phase1);
        for (r, a) in &self.col_entries[col] {
            if !y[*r].is_zero() {
                rc -= &y[*r] * a;
            }
        }
        rc
    }

    /// Transform a sparse column through the basis inverse.
    fn transform(&self, entries: &[(usize, Rat)]) -> Vec<Rat> {
        let mut d = vec![rzero(); self.m];
        for (r, a) in entries {
            if a.is_zero() {
                continue;
            }
            for i in 0..self.m {
                if !self.binv[i][*r].is_zero() {
                    d[i] += &self.binv[i][*r] * a;
                }
            }
        }
        d
    }

    /// Ratio test and pivot; returns false when the column is unbounded.
    fn pivot_in(&mut self, col: usize) -> bool {
        let d = self.transform(&self.col_entries[col].clone());
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..self.m {
            if d[r] > rzero() {
                let ratio = &self.xb[r] / &d[r];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b && {
                                // Bland tie-break, preferring to evict artificials
                                let cur = leave.unwrap();
                                let art_new = self.col_kind[self.basis[r]] == ColKind::Artificial;
                                let art_cur = self.col_kind[self.basis[cur]] == ColKind::Artificial;
                                art_new && !art_cur
                                    || (art_new == art_cur && self.basis[r] < self.basis[cur])
                            })
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            return false;
        };
        // pivot on (r, col)
        let piv = d[r].clone();
        for i in 0..self.m {
            self.binv[r][i] = &self.binv[r][i] / &piv;
        }
        self.xb[r] = &self.xb[r] / &piv;
        for i in 0..self.m {
            if i == r || d[i].is_zero() {
                continue;
            }
            let f = d[i].clone();
            for j in 0..self.m {
                if !self.binv[r][j].is_zero() {
                    let delta = &f * &self.binv[r][j];
                    self.binv[i][j] -= delta;
                }
            }
            let delta = &f * &self.xb[r];
            self.xb[i] -= delta;
        }
        self.basis[r] = col;
        true
    }

    fn objective(&self, phase1: bool) -> Rat {
        let mut obj = rzero();
        for (r, &bc) in self.basis.iter().enumerate() {
            let c = self.phase_cost(bc, phase1);
            if !c.is_zero() {
                obj += &c * &self.xb[r];
            }
        }
        obj
    }

    /// Run one phase to optimality. The pricer is consulted once no
    /// registered column improves; it may add new structural columns.
    fn optimize<P>(&mut self, phase1: bool, mut pricer: P, max_pivots: usize) -> Result<()>
    where
        P: FnMut(&[Rat]) -> Option<NewColumn>,
    {
        let mut pivots = 0usize;
        loop {
            let y = self.duals(phase1);
            // Bland: smallest-index improving column among registered ones
            let mut entering = None;
            for col in 0..self.col_entries.len() {
                if self.col_kind[col] == ColKind::Artificial {
                    continue;
                }
                if !phase1 {
                    // artificials stay out in phase 2; everything else prices
                }
                if self.reduced_cost(col, &y, phase1) > rzero() {
                    entering = Some(col);
                    break;
                }
            }
            let col = match entering {
                Some(c) => c,
                None => {
                    if let Some(nc) = pricer(&y) {
                        let col = self.add_column(nc.user_id, nc.entries, nc.cost);
                        if self.reduced_cost(col, &y, phase1) <= rzero() {
                            // pricer offered a non-improving column: done
                            return Ok(());
                        }
                        col
                    } else {
                        return Ok(());
                    }
                }
            };
            if !self.pivot_in(col) {
                return Err(Error::Internal("LP unbounded".into()));
            }
            pivots += 1;
            if pivots > max_pivots {
                return Err(Error::Internal(format!(
                    "simplex exceeded {max_pivots} pivots"
                )));
            }
        }
    }

    /// Phase-1 feasibility. Returns Ok(false) when infeasible.
    pub fn feasibilize<P>(&mut self, pricer: P, max_pivots: usize) -> Result<bool>
    where
        P: FnMut(&[Rat]) -> Option<NewColumn>,
    {
        self.optimize(true, pricer, max_pivots)?;
        Ok(self.objective(true).is_zero())
    }

    /// Phase-2 maximization of the registered costs; call after a
    /// successful [`feasibilize`].
    pub fn maximize<P>(&mut self, pricer: P, max_pivots: usize) -> Result<Rat>
    where
        P: FnMut(&[Rat]) -> Option<NewColumn>,
    {
        self.optimize(false, pricer, max_pivots)?;
        Ok(self.objective(false))
    }

    /// Values of basic structural columns, keyed by user id. Ids absent
    /// from the map are zero. Duplicate user ids accumulate.
    pub fn solution(&self) -> std::collections::HashMap<usize, Rat> {
        let mut out: std::collections::HashMap<usize, Rat> = Default::default();
        for (r, &bc) in self.basis.iter().enumerate() {
            if let ColKind::Structural(uid) = self.col_kind[bc] {
                if !self.xb[r].is_zero() {
                    *out.entry(uid).or_insert_with(rzero) += &self.xb[r];
                }
            }
        }
        out
    }

    /// Current duals under phase-2 costs (for external pricing loops).
    pub fn phase2_duals(&self) -> Vec<Rat> {
        self.duals(false)
    }
}

/// Solve a pure feasibility system over a fixed set of columns.
/// Returns `None` when infeasible, otherwise the values per user id.
pub fn solve_feasibility(
    rows: &[(Sense, Rat)],
    columns: &[(usize, Vec<(usize, Rat)>)],
    max_pivots: usize,
) -> Result<Option<std::collections::HashMap<usize, Rat>>> {
    let mut lp = ExactLp::new(rows);
    for (uid, entries) in columns {
        lp.add_column(*uid, entries.clone(), rzero());
    }
    if lp.feasibilize(|_| None, max_pivots)? {
        Ok(Some(lp.solution()))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn feasible_system() {
        // x0 + x1 <= 2, x0 >= 1/2, x1 = 1/3
        let rows = vec![
            (Sense::Le, rint(2)),
            (Sense::Ge, rat(1, 2)),
            (Sense::Eq, rat(1, 3)),
        ];
        let cols = vec![
            (0, vec![(0, rone()), (1, rone())]),
            (1, vec![(0, rone()), (2, rone())]),
        ];
        let sol = solve_feasibility(&rows, &cols, 1000).unwrap().unwrap();
        let x0 = sol.get(&0).cloned().unwrap_or_else(rzero);
        let x1 = sol.get(&1).cloned().unwrap_or_else(rzero);
        assert!(x0 >= rat(1, 2));
        assert_eq!(x1, rat(1, 3));
        assert!(&x0 + &x1 <= rint(2));
    }

    #[test]
    fn infeasible_system() {
        // x0 <= 1 and x0 >= 2
        let rows = vec![(Sense::Le, rint(1)), (Sense::Ge, rint(2))];
        let cols = vec![(0, vec![(0, rone()), (1, rone())])];
        let sol = solve_feasibility(&rows, &cols, 1000).unwrap();
        assert!(sol.is_none());
    }

    #[test]
    fn phase2_maximization_exact() {
        // maximize x0 + x1 st x0 + 2 x1 <= 1, 3 x0 + x1 <= 1
        let rows = vec![(Sense::Le, rint(1)), (Sense::Le, rint(1))];
        let mut lp = ExactLp::new(&rows);
        lp.add_column(0, vec![(0, rone()), (1, rint(3))], rone());
        lp.add_column(1, vec![(0, rint(2)), (1, rone())], rone());
        assert!(lp.feasibilize(|_| None, 1000).unwrap());
        let v = lp.maximize(|_| None, 1000).unwrap();
        // optimum at intersection: x0 = 1/5, x1 = 2/5, value 3/5
        assert_eq!(v, rat(3, 5));
        let sol = lp.solution();
        assert_eq!(sol[&0], rat(1, 5));
        assert_eq!(sol[&1], rat(2, 5));
    }

    #[test]
    fn column_generation_finds_missing_column() {
        // x1 alone cannot satisfy both rows; the pricer supplies x0
        let rows = vec![(Sense::Ge, rint(1)), (Sense::Le, rzero())];
        let mut lp = ExactLp::new(&rows);
        lp.add_column(1, vec![(0, rone()), (1, rone())], rzero());
        let mut offered = false;
        let ok = lp
            .feasibilize(
                |_y| {
                    if offered {
                        None
                    } else {
                        offered = true;
                        Some(NewColumn {
                            user_id: 0,
                            entries: vec![(0, rone())],
                            cost: rzero(),
                        })
                    }
                },
                1000,
            )
            .unwrap();
        assert!(ok);
        let sol = lp.solution();
        assert_eq!(sol.get(&0).cloned().unwrap_or_else(rzero), rint(1));
    }
}
