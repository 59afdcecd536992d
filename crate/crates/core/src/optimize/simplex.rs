//! Dense two-phase tableau simplex with Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b,  x ≥ 0` over any [`Scalar`]. With
//! rationals every pivot is exact; with floats, magnitudes below
//! [`PIVOT_TOLERANCE`] are treated as zero.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, PIVOT_TOLERANCE};

const MAX_PIVOTS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct StandardLp<T> {
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    pub cost: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

struct Tableau<T> {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    cells: Vec<Vec<T>>,
    /// Reduced costs, last entry is minus the objective value.
    reduced: Vec<T>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

fn sign<T: Scalar>(x: &T) -> Ordering {
    x.sign_with(PIVOT_TOLERANCE)
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cells[row].len();
        let p = self.cells[row][col].clone();
        for j in 0..width {
            self.cells[row][j] = self.cells[row][j].clone() / p.clone();
        }
        let pivot_row = self.cells[row].clone();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row || sign(&r[col]) == Ordering::Equal {
                continue;
            }
            let f = r[col].clone();
            for j in 0..width {
                r[j] = r[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        if sign(&self.reduced[col]) != Ordering::Equal {
            let f = self.reduced[col].clone();
            for (r, p) in self.reduced.iter_mut().zip(&pivot_row) {
                *r = r.clone() - f.clone() * p.clone();
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, limit: usize) -> Result<bool> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::IterationLimit(MAX_PIVOTS));
            }
            let Some(col) = (0..limit).find(|&j| sign(&self.reduced[j]) == Ordering::Less) else {
                return Ok(true);
            };
            let rhs = self.cols;
            let mut best: Option<(usize, T)> = None;
            for (i, r) in self.cells.iter().enumerate() {
                if sign(&r[col]) != Ordering::Greater {
                    continue;
                }
                let ratio = r[rhs].clone() / r[col].clone();
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let better = match ratio.partial_cmp(&br) {
                            Some(Ordering::Less) => true,
                            Some(Ordering::Equal) => self.basis[i] < self.basis[bi],
                            _ => false,
                        };
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Ok(false),
            }
        }
    }
}

impl<T: Scalar> StandardLp<T> {
    pub fn solve(&self) -> Result<LpOutcome<T>> {
        let m = self.rows.len();
        let n = self.cost.len();
        assert_eq!(self.rhs.len(), m);
        assert!(self.rows.iter().all(|r| r.len() == n));

        // phase one: artificials n..n+m on rows with nonnegative rhs
        let total = n + m;
        let mut cells = Vec::with_capacity(m);
        for (i, (row, b)) in self.rows.iter().zip(&self.rhs).enumerate() {
            let flip = b.sign_with(0.0) == Ordering::Less;
            let mut r: Vec<T> = row
                .iter()
                .map(|a| if flip { -a.clone() } else { a.clone() })
                .collect();
            r.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            r.push(if flip { -b.clone() } else { b.clone() });
            cells.push(r);
        }
        let mut reduced = vec![T::zero(); total + 1];
        for r in &cells {
            for j in 0..n {
                reduced[j] = reduced[j].clone() - r[j].clone();
            }
            reduced[total] = reduced[total].clone() - r[total].clone();
        }
        let mut tab = Tableau {
            cells,
            reduced,
            basis: (n..total).collect(),
            cols: total,
            pivots: 0,
        };
        tab.optimize(total)?;
        // reduced[total] holds minus the phase-one objective
        if sign(&tab.reduced[total]) != Ordering::Equal {
            return Ok(LpOutcome::Infeasible);
        }

        // drive artificials out of the basis; drop redundant rows
        let mut keep = vec![true; m];
        for (i, kept) in keep.iter_mut().enumerate() {
            if tab.basis[i] < n {
                continue;
            }
            match (0..n).find(|&j| sign(&tab.cells[i][j]) != Ordering::Equal) {
                Some(j) => tab.pivot(i, j),
                None => *kept = false,
            }
        }
        let mut cells = Vec::new();
        let mut basis = Vec::new();
        for (i, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            let mut r = tab.cells[i][..n].to_vec();
            r.push(tab.cells[i][total].clone());
            cells.push(r);
            basis.push(tab.basis[i]);
        }

        // phase two
        let mut reduced: Vec<T> = self.cost.clone();
        reduced.push(T::zero());
        for (r, &b) in cells.iter().zip(&basis) {
            let cb = self.cost[b].clone();
            if cb.sign_with(0.0) == Ordering::Equal {
                continue;
            }
            for j in 0..=n {
                reduced[j] = reduced[j].clone() - cb.clone() * r[j].clone();
            }
        }
        let mut tab = Tableau {
            cells,
            reduced,
            basis,
            cols: n,
            pivots: tab.pivots,
        };
        if !tab.optimize(n)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![T::zero(); n];
        for (r, &b) in tab.cells.iter().zip(&tab.basis) {
            x[b] = r[n].clone();
        }
        let value = T::sum(x.iter().zip(&self.cost).map(|(a, c)| a.clone() * c.clone()));
        Ok(LpOutcome::Optimal { x, value })
    }
}
