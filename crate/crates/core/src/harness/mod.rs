//! Experimental protocol: weight generation from a bare topology and sweeps
//! over the uniform bias weight `w_ii^0`.

mod synthetic;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::centrality::CentralityProfile;
use crate::error::{Error, Result};
use crate::model::{Budgets, Camp, Network, Phase, Topology};
use crate::solve::SolverConfig;
use crate::strategy_dependent::{single_camp_optimal, two_camp_equilibrium, DependencyCoefficients, DEFAULT_MAX_NODES};
use crate::strategy_fixed::{
    bounded_greedy, bounded_myopic_loss, evaluate_two_phase, farsighted_unbounded, myopic_loss,
};

pub use synthetic::barabasi_albert;

/// Reference weights: at `w_ii^0 = 0` each camp gets `camp_base` and the
/// edges share the rest equally; other bias weights scale everything by
/// `1 - w_ii^0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    pub camp_base: f64,
    pub w0_grid: Vec<f64>,
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme {
            camp_base: 0.1,
            w0_grid: default_grid(),
        }
    }
}

/// `{0, 0.05, ..., 0.95}`.
pub fn default_grid() -> Vec<f64> {
    (0..20).map(|i| i as f64 / 20.0).collect()
}

impl WeightScheme {
    pub fn new(camp_base: f64, w0_grid: Vec<f64>) -> Result<Self> {
        let scheme = WeightScheme { camp_base, w0_grid };
        scheme.check()?;
        Ok(scheme)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.camp_base > 0.0 && 2.0 * self.camp_base < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "camp base weight must lie in (0, 0.5), got {}",
                self.camp_base
            )));
        }
        if self.w0_grid.is_empty() {
            return Err(Error::InvalidArgument("empty w0 grid".into()));
        }
        for &w in &self.w0_grid {
            check_w0(w)?;
        }
        Ok(())
    }
}

fn check_w0(w0: f64) -> Result<()> {
    if (0.0..1.0).contains(&w0) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("bias weight must lie in [0, 1), got {w0}")))
    }
}

/// Network with uniform bias weight `w0`, zero initial opinions, edge and
/// camp weights from `scheme`, and `theta_i = 2 camp_base` (the unscaled
/// reference camp total). Arc weights in `topology` are ignored.
pub fn generate_weights(topology: &Topology, w0: f64, scheme: &WeightScheme) -> Result<Network> {
    check_w0(w0)?;
    let n = topology.n;
    let scale = 1.0 - w0;
    let base = scheme.camp_base;
    let degrees = topology.out_degrees();
    let isolated = degrees.iter().filter(|&&d| d == 0).count();
    if isolated > 0 {
        log::warn!("{isolated} node(s) without out-neighbours; only camp weights assigned");
    }
    let arcs = topology
        .arcs
        .iter()
        .map(|&(i, j, _)| (i, j, scale * (1.0 - 2.0 * base) / degrees[i] as f64));
    Network::builder(n)
        .edges(arcs)
        .w0(vec![w0; n])
        .v0(vec![0.0; n])
        .wg(vec![scale * base; n])
        .wb(vec![scale * base; n])
        .theta(vec![2.0 * base; n])
        .build()
}

/// Which optimizer a sweep runs at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Fixed camp weights, per-slot investment cap.
    Bounded,
    /// Fixed camp weights, no cap.
    Fixed,
    /// Bias-dependent weights, good camp alone.
    Dependency1,
    /// Bias-dependent weights, both camps (zero-sum game).
    Dependency2,
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounded" => Ok(SweepMode::Bounded),
            "fixed" => Ok(SweepMode::Fixed),
            "dependency1" => Ok(SweepMode::Dependency1),
            "dependency2" => Ok(SweepMode::Dependency2),
            other => Err(Error::InvalidArgument(format!(
                "unknown sweep mode '{other}' (expected bounded, fixed, dependency1 or dependency2)"
            ))),
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Bounded => "bounded",
            SweepMode::Fixed => "fixed",
            SweepMode::Dependency1 => "dependency1",
            SweepMode::Dependency2 => "dependency2",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Per-slot cap in bounded mode.
    pub cap: f64,
    /// Node guard for the two-camp game.
    pub max_nodes: usize,
    pub solver: SolverConfig,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            cap: 1.0,
            max_nodes: DEFAULT_MAX_NODES,
            solver: SolverConfig::default(),
        }
    }
}

/// One grid point. Budgets are phase totals; in the two-camp game they are
/// expectations under the equilibrium mixes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub w0: f64,
    pub k1_good: f64,
    pub k2_good: f64,
    pub k1_bad: f64,
    pub k2_bad: f64,
    pub objective: f64,
    /// Good camp's myopic loss (fixed-weight modes only).
    pub myopic_loss: Option<f64>,
}

/// Runs `mode` at every grid value of `scheme`; rows follow the grid order.
pub fn sweep_w0(
    topology: &Topology,
    scheme: &WeightScheme,
    mode: SweepMode,
    budgets: Budgets,
    options: &SweepOptions,
) -> Result<Vec<SweepRow>> {
    scheme.check()?;
    if mode == SweepMode::Dependency2 && topology.n > options.max_nodes {
        return Err(Error::TooManyNodes {
            n: topology.n,
            cap: options.max_nodes,
        });
    }
    scheme
        .w0_grid
        .par_iter()
        .map(|&w0| {
            let net = generate_weights(topology, w0, scheme)?;
            log::debug!("sweep {mode} at w0 = {w0}");
            sweep_point(&net, w0, mode, budgets, options)
        })
        .collect()
}

fn sweep_point(net: &Network, w0: f64, mode: SweepMode, budgets: Budgets, options: &SweepOptions) -> Result<SweepRow> {
    let (kg, kb) = (budgets.of(Camp::Good), budgets.of(Camp::Bad));
    match mode {
        SweepMode::Bounded | SweepMode::Fixed => {
            let cent = CentralityProfile::compute(net, 2)?;
            let (good, bad, loss) = if mode == SweepMode::Bounded {
                (
                    bounded_greedy(net, &cent, kg, Camp::Good, options.cap),
                    bounded_greedy(net, &cent, kb, Camp::Bad, options.cap),
                    bounded_myopic_loss(net, &cent, Camp::Good, kg, options.cap),
                )
            } else {
                (
                    farsighted_unbounded(net, &cent, kg, Camp::Good).to_plan(net.n()),
                    farsighted_unbounded(net, &cent, kb, Camp::Bad).to_plan(net.n()),
                    myopic_loss(net, &cent, Camp::Good, kg),
                )
            };
            Ok(SweepRow {
                w0,
                k1_good: good.phase_budget(Phase::First),
                k2_good: good.phase_budget(Phase::Second),
                k1_bad: bad.phase_budget(Phase::First),
                k2_bad: bad.phase_budget(Phase::Second),
                objective: evaluate_two_phase(net, &cent, &good, &bad),
                myopic_loss: Some(loss),
            })
        }
        SweepMode::Dependency1 => {
            let coeffs = DependencyCoefficients::with_config(net, options.solver)?;
            let (profile, value) = single_camp_optimal(&coeffs, kg)?;
            Ok(SweepRow {
                w0,
                k1_good: profile.k1,
                k2_good: profile.k2,
                k1_bad: 0.0,
                k2_bad: 0.0,
                objective: value,
                myopic_loss: None,
            })
        }
        SweepMode::Dependency2 => {
            let coeffs = DependencyCoefficients::with_config(net, options.solver)?;
            let sol = two_camp_equilibrium(&coeffs, kg, kb, options.max_nodes)?;
            let [k1_good, k2_good, k1_bad, k2_bad] = sol.expected_splits(&coeffs)?;
            Ok(SweepRow {
                w0,
                k1_good,
                k2_good,
                k1_bad,
                k2_bad,
                objective: sol.value,
                myopic_loss: None,
            })
        }
    }
}

pub const SWEEP_HEADER: [&str; 7] = ["w0", "k1_good", "k2_good", "k1_bad", "k2_bad", "objective", "myopic_loss"];

/// Writes sweep rows as CSV with a header; an absent myopic loss is an
/// empty field.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for r in rows {
        let fields = [r.w0, r.k1_good, r.k2_good, r.k1_bad, r.k2_bad, r.objective]
            .map(|v| v.to_string())
            .into_iter()
            .chain(std::iter::once(r.myopic_loss.map_or_else(String::new, |v| v.to_string())));
        w.write_record(fields).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidArgument(format!("csv: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ValidationMode;

    fn star() -> Topology {
        Topology::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 0, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn reference_weights() {
        let scheme = WeightScheme::default();
        let net = generate_weights(&star(), 0.0, &scheme).unwrap();
        assert_eq!(net.wg()[0], 0.1);
        assert_eq!(net.wb()[0], 0.1);
        assert!(net.row(0).iter().all(|&(_, w)| (w - 0.4).abs() < 1e-15));
        assert_eq!(net.theta(), &[0.2, 0.2, 0.2]);
        assert!(net.is_valid(ValidationMode::Fixed));
        assert!(net.is_valid(ValidationMode::Dependency));
    }

    #[test]
    fn scaled_weights() {
        let scheme = WeightScheme::default();
        let net = generate_weights(&star(), 0.5, &scheme).unwrap();
        assert!((net.wg()[0] - 0.05).abs() < 1e-15);
        assert!((net.wb()[0] - 0.05).abs() < 1e-15);
        assert!(net.row(0).iter().all(|&(_, w)| (w - 0.2).abs() < 1e-15));
        let total = net.wg()[0] + net.wb()[0] + net.row(0).iter().map(|e| e.1).sum::<f64>();
        assert!((total - 0.5).abs() < 1e-15);
        assert_eq!(net.theta(), &[0.2, 0.2, 0.2]);
    }

    #[test]
    fn isolated_nodes_still_get_camp_weights() {
        let topo = Topology::new(3, vec![(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let net = generate_weights(&topo, 0.2, &WeightScheme::default()).unwrap();
        assert!(net.row(2).is_empty());
        assert!((net.wg()[2] - 0.08).abs() < 1e-15);
    }

    #[test]
    fn scheme_checks() {
        assert!(WeightScheme::new(0.5, vec![0.0]).is_err());
        assert!(WeightScheme::new(0.0, vec![0.0]).is_err());
        assert!(WeightScheme::new(0.1, vec![]).is_err());
        assert!(WeightScheme::new(0.1, vec![1.0]).is_err());
        assert_eq!(default_grid().len(), 20);
        assert!((default_grid()[19] - 0.95).abs() < 1e-15);
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [SweepMode::Bounded, SweepMode::Fixed, SweepMode::Dependency1, SweepMode::Dependency2] {
            assert_eq!(m.to_string().parse::<SweepMode>().unwrap(), m);
        }
        assert!("other".parse::<SweepMode>().is_err());
    }

    #[test]
    fn zero_budget_sweep_is_zero() {
        let scheme = WeightScheme::new(0.1, vec![0.0]).unwrap();
        let budgets = Budgets::new(0.0, 0.0).unwrap();
        for mode in [SweepMode::Bounded, SweepMode::Fixed, SweepMode::Dependency1, SweepMode::Dependency2] {
            let rows = sweep_w0(&star(), &scheme, mode, budgets, &SweepOptions::default()).unwrap();
            assert_eq!(rows.len(), 1);
            assert_eq!(rows[0].objective, 0.0);
        }
    }

    #[test]
    fn csv_layout() {
        let rows = [SweepRow {
            w0: 0.5,
            k1_good: 1.0,
            k2_good: 2.0,
            k1_bad: 0.0,
            k2_bad: 3.0,
            objective: -0.25,
            myopic_loss: None,
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "w0,k1_good,k2_good,k1_bad,k2_bad,objective,myopic_loss\n0.5,1,2,0,3,-0.25,\n"
        );
    }
}
