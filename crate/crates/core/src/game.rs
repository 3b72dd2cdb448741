//! Finite two-player zero-sum matrix games solved by linear programming.
//!
//! The row player maximizes. Payoffs are shifted so every entry is at least 1,
//! which makes the game value positive; with `z = q / v` the column player's
//! problem becomes `max 1^T z  s.t.  A z <= 1, z >= 0`, solved here by a dense
//! tableau simplex with Bland's rule. The row player's mix is read off the
//! dual prices of the slack columns.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    payoff: Vec<f64>,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
}

impl MatrixGame {
    /// Row-major `rows x cols` payoff matrix for the row (maximizing) player.
    pub fn new(rows: usize, cols: usize, payoff: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix game needs at least one row and column".into()));
        }
        if payoff.len() != rows * cols {
            return Err(Error::LengthMismatch {
                field: "payoff",
                got: payoff.len(),
                expected: rows * cols,
            });
        }
        if payoff.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("payoff"));
        }
        Ok(MatrixGame {
            rows,
            cols,
            payoff,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged payoff matrix".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.payoff[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.payoff[i * self.cols..(i + 1) * self.cols]
    }

    /// Expected payoff of each pure row against column mix `q`.
    pub fn row_payoffs(&self, q: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(q).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Expected payoff of each pure column against row mix `p`.
    pub fn col_payoffs(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &pi) in p.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += pi * a;
            }
        }
        out
    }

    /// Payoff the row player secures with mix `p`.
    pub fn row_guarantee(&self, p: &[f64]) -> f64 {
        self.col_payoffs(p).into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Payoff the column player concedes at most with mix `q`.
    pub fn col_guarantee(&self, q: &[f64]) -> f64 {
        self.row_payoffs(q).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max_i min_j a_ij`.
    pub fn pure_maximin(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().copied().fold(f64::INFINITY, f64::min))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min_j max_i a_ij`.
    pub fn pure_minimax(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).fold(f64::NEG_INFINITY, f64::max))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumSolution {
    pub row_mix: Vec<f64>,
    pub col_mix: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

const EPS: f64 = 1e-12;

/// Optimal mixed strategies and value of a zero-sum game.
pub fn solve_zero_sum(game: &MatrixGame) -> Result<ZeroSumSolution> {
    let (m, n) = (game.rows, game.cols);
    let min = game.payoff.iter().copied().fold(f64::INFINITY, f64::min);
    let max = game.payoff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shift = 1.0 - min;

    // columns: n decision variables, m slacks, rhs
    let width = n + m + 1;
    let rhs = n + m;
    let mut tab = vec![0.0; m * width];
    for i in 0..m {
        let row = &mut tab[i * width..(i + 1) * width];
        for j in 0..n {
            row[j] = game.get(i, j) + shift;
        }
        row[n + i] = 1.0;
        row[rhs] = 1.0;
    }
    let mut obj = vec![0.0; width];
    obj[..n].fill(1.0);
    let mut basis: Vec<usize> = (n..n + m).collect();

    let max_pivots = 50 * (m + n) + 1000;
    let mut pivots = 0;
    let mut min_pivot = f64::INFINITY;
    loop {
        let Some(enter) = (0..n + m).find(|&k| obj[k] > EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = tab[i * width + enter];
            if a <= EPS {
                continue;
            }
            let ratio = tab[i * width + rhs] / a;
            leave = match leave {
                None => Some((i, ratio)),
                Some((l, best)) => {
                    let tie = (ratio - best).abs() <= EPS * (1.0 + best.abs());
                    if ratio < best && !tie || tie && basis[i] < basis[l] {
                        Some((i, ratio))
                    } else {
                        Some((l, best))
                    }
                }
            };
        }
        // the feasible region is bounded (all entries >= 1), so a leaving row exists
        let Some((r, _)) = leave else {
            return Err(Error::Simplex {
                pivots,
                min_pivot,
                payoff_range: max - min,
            });
        };
        if pivots >= max_pivots {
            return Err(Error::Simplex {
                pivots,
                min_pivot,
                payoff_range: max - min,
            });
        }
        min_pivot = min_pivot.min(tab[r * width + enter].abs());
        pivot(&mut tab, &mut obj, width, r, enter);
        basis[r] = enter;
        pivots += 1;
    }

    let mut z = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            z[b] = tab[i * width + rhs];
        }
    }
    let y: Vec<f64> = (0..m).map(|i| -obj[n + i]).collect();
    let total = -obj[rhs];
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Simplex {
            pivots,
            min_pivot,
            payoff_range: max - min,
        });
    }
    let shifted_value = 1.0 / total;
    Ok(ZeroSumSolution {
        row_mix: normalize(y),
        col_mix: normalize(z),
        value: shifted_value - shift,
        pivots,
    })
}

fn pivot(tab: &mut [f64], obj: &mut [f64], width: usize, r: usize, k: usize) {
    let p = tab[r * width + k];
    for x in &mut tab[r * width..(r + 1) * width] {
        *x /= p;
    }
    let pivot_row: Vec<f64> = tab[r * width..(r + 1) * width].to_vec();
    let m = tab.len() / width;
    for i in (0..m).filter(|&i| i != r) {
        let f = tab[i * width + k];
        if f != 0.0 {
            for (x, pr) in tab[i * width..(i + 1) * width].iter_mut().zip(&pivot_row) {
                *x -= f * pr;
            }
            tab[i * width + k] = 0.0;
        }
    }
    let f = obj[k];
    for (x, pr) in obj.iter_mut().zip(&pivot_row) {
        *x -= f * pr;
    }
    obj[k] = 0.0;
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    for x in &mut v {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        for x in &mut v {
            *x /= s;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(rows: &[Vec<f64>]) -> ZeroSumSolution {
        solve_zero_sum(&MatrixGame::from_rows(rows).unwrap()).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn matching_pennies() {
        let s = solve(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        assert!(s.value.abs() < 1e-12);
        assert!(close(&s.row_mix, &[0.5, 0.5]));
        assert!(close(&s.col_mix, &[0.5, 0.5]));
    }

    #[test]
    fn dominance() {
        let s = solve(&[vec![3.0, 2.0], vec![1.0, 0.0]]);
        assert!((s.value - 2.0).abs() < 1e-12);
        assert!(close(&s.row_mix, &[1.0, 0.0]));
        assert!(close(&s.col_mix, &[0.0, 1.0]));
    }

    #[test]
    fn equalization() {
        let s = solve(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        assert!((s.value - 2.0 / 3.0).abs() < 1e-12);
        assert!(close(&s.row_mix, &[1.0 / 3.0, 2.0 / 3.0]));
        assert!(close(&s.col_mix, &[1.0 / 3.0, 2.0 / 3.0]));
    }

    #[test]
    fn constant_and_single_entry_games() {
        let s = solve(&[vec![5.0, 5.0], vec![5.0, 5.0]]);
        assert!((s.value - 5.0).abs() < 1e-12);
        assert!((s.row_mix.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let s = solve(&[vec![-3.5]]);
        assert!((s.value + 3.5).abs() < 1e-12);
        assert_eq!(s.row_mix, vec![1.0]);
    }

    #[test]
    fn rock_paper_scissors_variant() {
        let s = solve(&[
            vec![0.0, 2.0, -1.0],
            vec![-1.0, 0.0, 1.0],
            vec![1.0, -1.0, 0.0],
        ]);
        assert!((s.value - 1.0 / 12.0).abs() < 1e-12);
        assert!(close(&s.row_mix, &[0.25, 1.0 / 3.0, 5.0 / 12.0]));
    }

    #[test]
    fn invalid_games_rejected() {
        assert!(MatrixGame::new(0, 1, vec![]).is_err());
        assert!(MatrixGame::new(1, 2, vec![1.0]).is_err());
        assert!(MatrixGame::new(1, 1, vec![f64::NAN]).is_err());
        assert!(MatrixGame::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn pure_bounds() {
        let g = MatrixGame::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert_eq!(g.pure_maximin(), -1.0);
        assert_eq!(g.pure_minimax(), 1.0);
    }
}
