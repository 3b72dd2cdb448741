//! Per-phase steady states of the opinion dynamics and chaining of phases.
//!
//! Within phase `p` every node repeatedly updates
//! `v_i <- w_ii^0 v_i^(p-1) + sum_j w_ij v_j + w_ig x_i - w_ib y_i`,
//! which converges to `v^(p) = (I - w)^-1 (w^0 . v^(p-1) + w_g . x - w_b . y)`
//! whenever `w` is strictly substochastic.

use crate::error::{Error, Result};
use crate::model::{InvestmentPlan, Network, Phase};
use crate::solve::{self, check_len, LinearSystem, Orientation, SolverConfig};
use crate::strategy_dependent::camp_weights;

/// Opinions at the end of `phase` (phase 0 holds the initial biases).
#[derive(Debug, Clone, PartialEq)]
pub struct OpinionState {
    pub v: Vec<f64>,
    pub phase: usize,
}

/// Investments of both camps in one phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseInvestment {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PhaseInvestment {
    pub fn zero(n: usize) -> Self {
        PhaseInvestment {
            x: vec![0.0; n],
            y: vec![0.0; n],
        }
    }

    /// Phase `phase` of a two-phase plan pair.
    pub fn from_plans(good: &InvestmentPlan, bad: &InvestmentPlan, phase: Phase) -> Self {
        PhaseInvestment {
            x: good.phase(phase).to_vec(),
            y: bad.phase(phase).to_vec(),
        }
    }
}

/// Source of the camp weights used in each phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampWeighting {
    /// The network's fixed `w_g`, `w_b`.
    Fixed,
    /// `theta`-split weights recomputed from the previous phase's opinions.
    Dependent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRun {
    /// One state per phase, `states[k].phase == k + 1`.
    pub states: Vec<OpinionState>,
    /// `sum_i v_i^(p)` for each phase.
    pub sums: Vec<f64>,
}

impl PhaseRun {
    pub fn final_opinions(&self) -> &[f64] {
        &self.states.last().expect("at least one phase").v
    }

    pub fn final_sum(&self) -> f64 {
        *self.sums.last().expect("at least one phase")
    }
}

/// Static term `w^0 . v_prev + wg_eff . x - wb_eff . y` of one phase.
pub fn phase_rhs(
    net: &Network,
    v_prev: &[f64],
    x: &[f64],
    y: &[f64],
    wg_eff: &[f64],
    wb_eff: &[f64],
) -> Result<Vec<f64>> {
    let n = net.n();
    check_len("v_prev", v_prev, n)?;
    check_len("x", x, n)?;
    check_len("y", y, n)?;
    check_len("wg_eff", wg_eff, n)?;
    check_len("wb_eff", wb_eff, n)?;
    Ok((0..n)
        .map(|i| net.w0()[i] * v_prev[i] + wg_eff[i] * x[i] - wb_eff[i] * y[i])
        .collect())
}

/// Steady-state opinions of one phase using the default solver.
pub fn steady_state(
    net: &Network,
    v_prev: &[f64],
    x: &[f64],
    y: &[f64],
    wg_eff: &[f64],
    wb_eff: &[f64],
) -> Result<Vec<f64>> {
    steady_state_with(net, v_prev, x, y, wg_eff, wb_eff, &SolverConfig::default())
}

pub fn steady_state_with(
    net: &Network,
    v_prev: &[f64],
    x: &[f64],
    y: &[f64],
    wg_eff: &[f64],
    wb_eff: &[f64],
    config: &SolverConfig,
) -> Result<Vec<f64>> {
    let rhs = phase_rhs(net, v_prev, x, y, wg_eff, wb_eff)?;
    LinearSystem::new(net, *config).solve(&rhs, Some(v_prev))
}

/// Runs the within-phase recursion from `v = v_prev` until the max-norm
/// error bound drops below `tol`. Returns the opinions and the update count.
#[allow(clippy::too_many_arguments)]
pub fn fixed_point_iterate(
    net: &Network,
    v_prev: &[f64],
    x: &[f64],
    y: &[f64],
    wg_eff: &[f64],
    wb_eff: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, usize)> {
    let rhs = phase_rhs(net, v_prev, x, y, wg_eff, wb_eff)?;
    solve::fixed_point(net, &rhs, v_prev, Orientation::Normal, tol, max_iter)
}

/// Chains one steady-state solve per phase, feeding each phase's opinions in
/// as the next phase's biases.
pub fn run_phases(net: &Network, phases: &[PhaseInvestment], weighting: CampWeighting) -> Result<PhaseRun> {
    run_phases_with(net, phases, weighting, &SolverConfig::default())
}

pub fn run_phases_with(
    net: &Network,
    phases: &[PhaseInvestment],
    weighting: CampWeighting,
    config: &SolverConfig,
) -> Result<PhaseRun> {
    if phases.is_empty() {
        return Err(Error::InvalidArgument("at least one phase is required".into()));
    }
    let system = LinearSystem::new(net, *config);
    let mut v = net.v0().to_vec();
    let mut states = Vec::with_capacity(phases.len());
    let mut sums = Vec::with_capacity(phases.len());
    for (k, inv) in phases.iter().enumerate() {
        let (wg_eff, wb_eff) = match weighting {
            CampWeighting::Fixed => (net.wg().to_vec(), net.wb().to_vec()),
            CampWeighting::Dependent => camp_weights(net, &v)?,
        };
        let rhs = phase_rhs(net, &v, &inv.x, &inv.y, &wg_eff, &wb_eff)?;
        v = system.solve(&rhs, Some(&v))?;
        sums.push(v.iter().sum());
        states.push(OpinionState {
            v: v.clone(),
            phase: k + 1,
        });
    }
    Ok(PhaseRun { states, sums })
}

/// Two-phase run for a pair of camp plans.
pub fn run_two_phase(
    net: &Network,
    good: &InvestmentPlan,
    bad: &InvestmentPlan,
    weighting: CampWeighting,
) -> Result<PhaseRun> {
    let phases = [
        PhaseInvestment::from_plans(good, bad, Phase::First),
        PhaseInvestment::from_plans(good, bad, Phase::Second),
    ];
    run_phases(net, &phases, weighting)
}
