//! Single-phase and multiphase Katz centralities.
//!
//! With `Delta = (I - w)^-1`:
//!
//! * `r = Delta^T 1`, so `r_i = sum_j Delta_ji`: node `i`'s influence on the
//!   opinion sum at the end of the current phase;
//! * `r^(q) = Delta^T (r^(q-1) . w^0)`: influence looking `q` phases ahead.
//!   `s = r^(2)`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::model::Network;
use crate::solve::{LinearSystem, SolverConfig};

/// `r`, `s` and optionally `r^(3)`, `r^(4)`, ...
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityProfile {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    /// `higher[k]` is `r^(k + 3)`.
    pub higher: Vec<Vec<f64>>,
}

impl CentralityProfile {
    /// Computes `r^(1)` through `r^(max_order)` (at least `r` and `s`).
    pub fn compute(net: &Network, max_order: usize) -> Result<Self> {
        Centrality::new(net, SolverConfig::default()).profile(max_order)
    }

    /// `r^(q)` for `q >= 1`, if computed.
    pub fn order(&self, q: usize) -> Option<&[f64]> {
        match q {
            0 => None,
            1 => Some(&self.r),
            2 => Some(&self.s),
            q => self.higher.get(q - 3).map(Vec::as_slice),
        }
    }

    pub fn max_order(&self) -> usize {
        2 + self.higher.len()
    }
}

/// Centrality computations on one network, with memoized rows of `Delta`.
pub struct Centrality<'a> {
    net: &'a Network,
    system: LinearSystem<'a>,
    r: OnceLock<Arc<[f64]>>,
    rows: Vec<OnceLock<Arc<[f64]>>>,
}

impl<'a> Centrality<'a> {
    pub fn new(net: &'a Network, config: SolverConfig) -> Self {
        Centrality {
            net,
            system: LinearSystem::new(net, config),
            r: OnceLock::new(),
            rows: (0..net.n()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn network(&self) -> &'a Network {
        self.net
    }

    pub fn config(&self) -> &SolverConfig {
        self.system.config()
    }

    /// `r = (I - w^T)^-1 1`.
    pub fn r(&self) -> Result<Arc<[f64]>> {
        if let Some(r) = self.r.get() {
            return Ok(r.clone());
        }
        let r: Arc<[f64]> = self.system.solve_transpose(&vec![1.0; self.net.n()])?.into();
        Ok(self.r.get_or_init(|| r).clone())
    }

    /// `r^(q) = (I - w^T)^-1 (r^(q-1) . w^0)`, with `r^(1) = r`.
    pub fn order(&self, q: usize) -> Result<Vec<f64>> {
        if q == 0 {
            return Err(Error::InvalidArgument("centrality order must be >= 1".into()));
        }
        let mut cur = self.r()?.to_vec();
        for _ in 1..q {
            cur = self.next_order(&cur)?;
        }
        Ok(cur)
    }

    pub fn s(&self) -> Result<Vec<f64>> {
        self.order(2)
    }

    fn next_order(&self, prev: &[f64]) -> Result<Vec<f64>> {
        let rhs: Vec<f64> = prev.iter().zip(self.net.w0()).map(|(r, w)| r * w).collect();
        self.system.solve_transpose(&rhs)
    }

    pub fn profile(&self, max_order: usize) -> Result<CentralityProfile> {
        let r = self.r()?.to_vec();
        let s = self.next_order(&r)?;
        let mut higher = Vec::new();
        let mut prev = s.clone();
        for _ in 3..=max_order {
            let next = self.next_order(&prev)?;
            higher.push(next.clone());
            prev = next;
        }
        Ok(CentralityProfile { r, s, higher })
    }

    /// Row `j` of `Delta`: solves `(I - w)^T z = e_j`, so `z_i = Delta_ji`.
    pub fn delta_row(&self, j: usize) -> Result<Arc<[f64]>> {
        let n = self.net.n();
        let cell = self.rows.get(j).ok_or(Error::NodeOutOfRange { id: j, n })?;
        if let Some(row) = cell.get() {
            return Ok(row.clone());
        }
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let row: Arc<[f64]> = self.system.solve_transpose(&e)?.into();
        Ok(cell.get_or_init(|| row).clone())
    }

    /// `Delta * b`, i.e. the solution of `(I - w) x = b`.
    pub fn apply_delta(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.system.solve(b, None)
    }
}

pub fn katz_r(net: &Network) -> Result<Vec<f64>> {
    Ok(Centrality::new(net, SolverConfig::default()).r()?.to_vec())
}

pub fn katz_s(net: &Network) -> Result<Vec<f64>> {
    Centrality::new(net, SolverConfig::default()).s()
}

pub fn katz_multiphase(net: &Network, q: usize) -> Result<Vec<f64>> {
    Centrality::new(net, SolverConfig::default()).order(q)
}

pub fn delta_row(net: &Network, j: usize) -> Result<Vec<f64>> {
    Ok(Centrality::new(net, SolverConfig::default()).delta_row(j)?.to_vec())
}
