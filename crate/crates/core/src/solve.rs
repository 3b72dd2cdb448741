//! Linear solves with `I - w` and `I - w^T`, shared by the dynamics and
//! centrality code.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::error::{Error, Result};
use crate::model::Network;

/// How systems `(I - w) x = b` are solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Dense LU up to `dense_limit` nodes, fixed-point iteration beyond.
    Auto,
    FixedPoint,
    DenseLu,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Fixed-point stopping tolerance (max-norm).
    pub tol: f64,
    pub max_iter: usize,
    pub dense_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Auto,
            tol: 1e-10,
            max_iter: 100_000,
            dense_limit: 512,
        }
    }
}

impl SolverConfig {
    pub fn uses_dense(&self, n: usize) -> bool {
        match self.method {
            Method::DenseLu => true,
            Method::FixedPoint => false,
            Method::Auto => n <= self.dense_limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Orientation {
    /// `x <- w x + b`
    Normal,
    /// `x <- w^T x + b`
    Transposed,
}

/// Iterates `x <- w x + b` (or with `w^T`) from `start` until converged.
///
/// When the iteration matrix has max-norm `L < 1` the loop stops once the a
/// posteriori error bound `L / (1 - L) * step` falls to `tol`; otherwise it
/// stops on `step < tol`. Returns the iterate and the number of updates.
pub(crate) fn fixed_point(
    net: &Network,
    rhs: &[f64],
    start: &[f64],
    orientation: Orientation,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, usize)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = net.n();
    check_len("rhs", rhs, n)?;
    check_len("start", start, n)?;

    let lipschitz = match orientation {
        Orientation::Normal => net.max_abs_row_sum(),
        Orientation::Transposed => max_abs_col_sum(net),
    };
    let bound_factor = (lipschitz < 1.0).then(|| lipschitz / (1.0 - lipschitz));

    let mut x = start.to_vec();
    let mut last_step = f64::INFINITY;
    for iter in 1..=max_iter {
        let mut next = match orientation {
            Orientation::Normal => net.apply(&x),
            Orientation::Transposed => net.apply_transpose(&x),
        };
        let mut step: f64 = 0.0;
        for ((nx, b), old) in next.iter_mut().zip(rhs).zip(&x) {
            *nx += b;
            step = step.max((*nx - old).abs());
        }
        if !step.is_finite() {
            return Err(Error::NoConvergence {
                iterations: iter,
                last_step: step,
            });
        }
        x = next;
        last_step = step;
        let converged = match bound_factor {
            Some(f) => f * step <= tol,
            None => step < tol,
        };
        if converged {
            return Ok((x, iter));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last_step,
    })
}

fn max_abs_col_sum(net: &Network) -> f64 {
    let mut cols = vec![0.0f64; net.n()];
    for (_, j, w) in net.edges() {
        cols[j] += w.abs();
    }
    cols.into_iter().fold(0.0, f64::max)
}

pub(crate) fn check_len(field: &'static str, v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::LengthMismatch {
            field,
            got: v.len(),
            expected: n,
        });
    }
    Ok(())
}

/// Solver for `(I - w)` and `(I - w^T)` on one network. Dense factorizations
/// are computed lazily and reused.
pub(crate) struct LinearSystem<'a> {
    net: &'a Network,
    config: SolverConfig,
    lu: OnceLock<Option<LU<f64, Dyn, Dyn>>>,
    lu_t: OnceLock<Option<LU<f64, Dyn, Dyn>>>,
}

impl<'a> LinearSystem<'a> {
    pub(crate) fn new(net: &'a Network, config: SolverConfig) -> Self {
        LinearSystem {
            net,
            config,
            lu: OnceLock::new(),
            lu_t: OnceLock::new(),
        }
    }

    pub(crate) fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Solves `(I - w) x = rhs`; `start` seeds the fixed-point path.
    pub(crate) fn solve(&self, rhs: &[f64], start: Option<&[f64]>) -> Result<Vec<f64>> {
        self.solve_oriented(rhs, start, Orientation::Normal)
    }

    /// Solves `(I - w^T) x = rhs`.
    pub(crate) fn solve_transpose(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.solve_oriented(rhs, None, Orientation::Transposed)
    }

    fn solve_oriented(
        &self,
        rhs: &[f64],
        start: Option<&[f64]>,
        orientation: Orientation,
    ) -> Result<Vec<f64>> {
        let n = self.net.n();
        check_len("rhs", rhs, n)?;
        if self.config.uses_dense(n) {
            let cell = match orientation {
                Orientation::Normal => &self.lu,
                Orientation::Transposed => &self.lu_t,
            };
            let lu = cell
                .get_or_init(|| {
                    let m = identity_minus_w(self.net);
                    let m = match orientation {
                        Orientation::Normal => m,
                        Orientation::Transposed => m.transpose(),
                    };
                    let lu = m.lu();
                    lu.is_invertible().then_some(lu)
                })
                .as_ref()
                .ok_or(Error::Singular)?;
            let x = lu
                .solve(&DVector::from_column_slice(rhs))
                .ok_or(Error::Singular)?;
            Ok(x.as_slice().to_vec())
        } else {
            let start = start.unwrap_or(rhs);
            fixed_point(
                self.net,
                rhs,
                start,
                orientation,
                self.config.tol,
                self.config.max_iter,
            )
            .map(|(x, _)| x)
        }
    }
}

fn identity_minus_w(net: &Network) -> DMatrix<f64> {
    let n = net.n();
    let mut m = DMatrix::<f64>::identity(n, n);
    for (i, j, w) in net.edges() {
        m[(i, j)] -= w;
    }
    m
}
