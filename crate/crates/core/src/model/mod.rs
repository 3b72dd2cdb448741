//! Network model: topology, per-node parameters and the weight constraints
//! that guarantee the opinion dynamics converge.

mod edge_list;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub use edge_list::{load_edge_list, Topology};

/// Slack used when checking the weight constraints.
pub const VALIDATION_SLACK: f64 = 1e-12;

/// The two competing camps. The good camp pushes opinions towards +1 and
/// maximises the sum of opinions; the bad camp pushes towards -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Camp {
    Good,
    Bad,
}

impl Camp {
    pub fn sign(self) -> f64 {
        match self {
            Camp::Good => 1.0,
            Camp::Bad => -1.0,
        }
    }
}

impl fmt::Display for Camp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Camp::Good => "good",
            Camp::Bad => "bad",
        })
    }
}

/// Campaign phase in the two-phase game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    First,
    Second,
}

impl Phase {
    pub fn number(self) -> u8 {
        match self {
            Phase::First => 1,
            Phase::Second => 2,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Which set of assumptions [`Network::validate`] enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Fixed camp weights `w_g`, `w_b`; edge weights may have any sign.
    Fixed,
    /// Bias-dependent camp weights: additionally requires nonnegative edge
    /// and bias weights, `theta >= 0` and initial opinions in `[-1, 1]`.
    Dependency,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `|w_ii^0| + sum_j |w_ij| + |w_ig| + |w_ib| > 1`.
    WeightBudget { node: usize, total: f64 },
    /// `sum_j |w_ij| >= 1`.
    NotSubstochastic { node: usize, row_sum: f64 },
    NegativeEdge { node: usize, target: usize, weight: f64 },
    NegativeBiasWeight { node: usize, value: f64 },
    NegativeTheta { node: usize, value: f64 },
    OpinionOutOfRange { node: usize, value: f64 },
    BiasWeightOutOfRange { node: usize, value: f64 },
}

impl Violation {
    pub fn node(&self) -> usize {
        match *self {
            Violation::WeightBudget { node, .. }
            | Violation::NotSubstochastic { node, .. }
            | Violation::NegativeEdge { node, .. }
            | Violation::NegativeBiasWeight { node, .. }
            | Violation::NegativeTheta { node, .. }
            | Violation::OpinionOutOfRange { node, .. }
            | Violation::BiasWeightOutOfRange { node, .. } => node,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeightBudget { node, total } => {
                write!(f, "node {node}: total influence weight {total} exceeds 1")
            }
            Violation::NotSubstochastic { node, row_sum } => {
                write!(f, "node {node}: row sum of |w| is {row_sum}, not < 1")
            }
            Violation::NegativeEdge {
                node,
                target,
                weight,
            } => write!(
                f,
                "node {node}: negative edge weight {weight} to {target} under dependency assumptions"
            ),
            Violation::NegativeBiasWeight { node, value } => {
                write!(f, "node {node}: negative bias weight {value}")
            }
            Violation::NegativeTheta { node, value } => {
                write!(f, "node {node}: negative theta {value}")
            }
            Violation::OpinionOutOfRange { node, value } => {
                write!(f, "node {node}: initial opinion {value} outside [-1, 1]")
            }
            Violation::BiasWeightOutOfRange { node, value } => {
                write!(f, "node {node}: bias weight {value} outside [-1, 1]")
            }
        }
    }
}

/// Weighted directed network with every per-node parameter of the model.
///
/// `row(i)` lists `(j, w_ij)`: the weight node `i` attributes to node `j`'s
/// opinion. The network is immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    rows: Vec<Vec<(usize, f64)>>,
    w0: Vec<f64>,
    v0: Vec<f64>,
    wg: Vec<f64>,
    wb: Vec<f64>,
    theta: Vec<f64>,
}

impl Network {
    pub fn builder(n: usize) -> NetworkBuilder {
        NetworkBuilder::new(n)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, w)| (i, j, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Weight `w_ii^0` each node puts on its initial bias.
    pub fn w0(&self) -> &[f64] {
        &self.w0
    }

    pub fn v0(&self) -> &[f64] {
        &self.v0
    }

    pub fn wg(&self) -> &[f64] {
        &self.wg
    }

    pub fn wb(&self) -> &[f64] {
        &self.wb
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Fixed influence weights of `camp`.
    pub fn camp_weights(&self, camp: Camp) -> &[f64] {
        match camp {
            Camp::Good => &self.wg,
            Camp::Bad => &self.wb,
        }
    }

    /// Copy of this network with different initial opinions.
    pub fn with_v0(&self, v0: Vec<f64>) -> Result<Network> {
        check_vector("v0", &v0, self.n())?;
        Ok(Network { v0, ..self.clone() })
    }

    /// `w * v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(j, w)| w * v[j]).sum())
            .collect()
    }

    /// `w^T * v`.
    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        for (i, row) in self.rows.iter().enumerate() {
            let vi = v[i];
            if vi == 0.0 {
                continue;
            }
            for &(j, w) in row {
                out[j] += w * vi;
            }
        }
        out
    }

    /// `max_i sum_j |w_ij|`, the max-norm of `w`.
    pub fn max_abs_row_sum(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(_, w)| w.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Every violated constraint, each tagged with the offending node.
    pub fn validate(&self, mode: ValidationMode) -> Vec<Violation> {
        let mut out = Vec::new();
        for node in 0..self.n() {
            let row_sum: f64 = self.rows[node].iter().map(|&(_, w)| w.abs()).sum();
            let total = self.w0[node].abs() + row_sum + self.wg[node].abs() + self.wb[node].abs();
            if total > 1.0 + VALIDATION_SLACK {
                out.push(Violation::WeightBudget { node, total });
            }
            if row_sum > 1.0 - VALIDATION_SLACK {
                out.push(Violation::NotSubstochastic { node, row_sum });
            }
            if self.w0[node].abs() > 1.0 {
                out.push(Violation::BiasWeightOutOfRange {
                    node,
                    value: self.w0[node],
                });
            }
            if mode == ValidationMode::Dependency {
                for &(target, weight) in &self.rows[node] {
                    if weight < 0.0 {
                        out.push(Violation::NegativeEdge {
                            node,
                            target,
                            weight,
                        });
                    }
                }
                if self.w0[node] < 0.0 {
                    out.push(Violation::NegativeBiasWeight {
                        node,
                        value: self.w0[node],
                    });
                }
                if self.theta[node] < 0.0 {
                    out.push(Violation::NegativeTheta {
                        node,
                        value: self.theta[node],
                    });
                }
                if !(-1.0..=1.0).contains(&self.v0[node]) {
                    out.push(Violation::OpinionOutOfRange {
                        node,
                        value: self.v0[node],
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self, mode: ValidationMode) -> bool {
        self.validate(mode).is_empty()
    }
}

/// Builder for [`Network`]. Parameter vectors default to zeros.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    w0: Option<Vec<f64>>,
    v0: Option<Vec<f64>>,
    wg: Option<Vec<f64>>,
    wb: Option<Vec<f64>>,
    theta: Option<Vec<f64>>,
}

impl NetworkBuilder {
    pub fn new(n: usize) -> Self {
        NetworkBuilder {
            n,
            edges: Vec::new(),
            w0: None,
            v0: None,
            wg: None,
            wb: None,
            theta: None,
        }
    }

    pub fn edge(mut self, src: usize, dst: usize, weight: f64) -> Self {
        self.edges.push((src, dst, weight));
        self
    }

    pub fn edges(mut self, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        self.edges.extend(edges);
        self
    }

    pub fn w0(mut self, w0: Vec<f64>) -> Self {
        self.w0 = Some(w0);
        self
    }

    pub fn v0(mut self, v0: Vec<f64>) -> Self {
        self.v0 = Some(v0);
        self
    }

    pub fn wg(mut self, wg: Vec<f64>) -> Self {
        self.wg = Some(wg);
        self
    }

    pub fn wb(mut self, wb: Vec<f64>) -> Self {
        self.wb = Some(wb);
        self
    }

    pub fn theta(mut self, theta: Vec<f64>) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn build(self) -> Result<Network> {
        let n = self.n;
        let mut rows = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(self.edges.len());
        for (src, dst, w) in self.edges {
            for id in [src, dst] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if !w.is_finite() {
                return Err(Error::NonFinite("edge weight"));
            }
            if !seen.insert((src, dst)) {
                return Err(Error::DuplicateEdge { src, dst });
            }
            rows[src].push((dst, w));
        }
        for row in &mut rows {
            row.sort_by_key(|&(j, _)| j);
        }
        let take = |field: &'static str, v: Option<Vec<f64>>| -> Result<Vec<f64>> {
            let v = v.unwrap_or_else(|| vec![0.0; n]);
            check_vector(field, &v, n)?;
            Ok(v)
        };
        Ok(Network {
            rows,
            w0: take("w0", self.w0)?,
            v0: take("v0", self.v0)?,
            wg: take("wg", self.wg)?,
            wb: take("wb", self.wb)?,
            theta: take("theta", self.theta)?,
        })
    }
}

fn check_vector(field: &'static str, v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::LengthMismatch {
            field,
            got: v.len(),
            expected: n,
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(field));
    }
    Ok(())
}

/// Total budgets of the two camps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budgets {
    pub kg: f64,
    pub kb: f64,
}

impl Budgets {
    pub fn new(kg: f64, kb: f64) -> Result<Self> {
        for (name, k) in [("kg", kg), ("kb", kb)] {
            if !k.is_finite() || k < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "budget {name} must be finite and nonnegative, got {k}"
                )));
            }
        }
        Ok(Budgets { kg, kb })
    }

    pub fn of(&self, camp: Camp) -> f64 {
        match camp {
            Camp::Good => self.kg,
            Camp::Bad => self.kb,
        }
    }
}

/// Per-node investments of one camp in each of the two phases.
#[derive(Debug, Clone, PartialEq)]
pub struct InvestmentPlan {
    pub camp: Camp,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
}

impl InvestmentPlan {
    pub fn empty(camp: Camp, n: usize) -> Self {
        InvestmentPlan {
            camp,
            x1: vec![0.0; n],
            x2: vec![0.0; n],
        }
    }

    /// Everything on a single `(node, phase)` slot.
    pub fn single(camp: Camp, n: usize, node: usize, phase: Phase, amount: f64) -> Self {
        let mut plan = Self::empty(camp, n);
        plan.phase_mut(phase)[node] = amount;
        plan
    }

    pub fn phase(&self, phase: Phase) -> &[f64] {
        match phase {
            Phase::First => &self.x1,
            Phase::Second => &self.x2,
        }
    }

    pub fn phase_mut(&mut self, phase: Phase) -> &mut Vec<f64> {
        match phase {
            Phase::First => &mut self.x1,
            Phase::Second => &mut self.x2,
        }
    }

    /// `k^(1)` or `k^(2)`: the amount spent in `phase`.
    pub fn phase_budget(&self, phase: Phase) -> f64 {
        self.phase(phase).iter().sum()
    }

    pub fn total(&self) -> f64 {
        self.phase_budget(Phase::First) + self.phase_budget(Phase::Second)
    }

    /// Checks nonnegativity, the budget, and (if given) the per-slot bound.
    pub fn check(&self, budget: f64, bound: Option<f64>) -> Result<()> {
        if self.x1.len() != self.x2.len() {
            return Err(Error::LengthMismatch {
                field: "x2",
                got: self.x2.len(),
                expected: self.x1.len(),
            });
        }
        for &v in self.x1.iter().chain(&self.x2) {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{} camp investment {v} is not a nonnegative number",
                    self.camp
                )));
            }
            if let Some(cap) = bound {
                if v > cap + VALIDATION_SLACK {
                    return Err(Error::InvalidArgument(format!(
                        "{} camp investment {v} exceeds the per-node bound {cap}",
                        self.camp
                    )));
                }
            }
        }
        let total = self.total();
        if total > budget * (1.0 + 1e-12) + VALIDATION_SLACK {
            return Err(Error::InvalidArgument(format!(
                "{} camp spends {total}, more than its budget {budget}",
                self.camp
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(w_self: f64, w0: f64, wg: f64, wb: f64) -> Network {
        Network::builder(1)
            .edge(0, 0, w_self)
            .w0(vec![w0])
            .wg(vec![wg])
            .wb(vec![wb])
            .build()
            .unwrap()
    }

    #[test]
    fn weights_summing_to_one_are_valid() {
        let net = single(0.5, 0.4, 0.05, 0.05);
        assert!(net.validate(ValidationMode::Fixed).is_empty());
    }

    #[test]
    fn unit_row_sum_is_rejected() {
        let net = single(1.0, 0.0, 0.0, 0.0);
        let v = net.validate(ValidationMode::Fixed);
        assert!(matches!(
            v.as_slice(),
            [Violation::NotSubstochastic { node: 0, .. }]
        ));
    }

    #[test]
    fn negative_edge_only_flagged_in_dependency_mode() {
        let net = Network::builder(2)
            .edge(0, 1, -0.1)
            .edge(1, 0, 0.2)
            .build()
            .unwrap();
        assert!(net.validate(ValidationMode::Fixed).is_empty());
        let v = net.validate(ValidationMode::Dependency);
        assert_eq!(
            v,
            vec![Violation::NegativeEdge {
                node: 0,
                target: 1,
                weight: -0.1
            }]
        );
        assert_eq!(v[0].node(), 0);
    }

    #[test]
    fn dependency_mode_checks_opinions_and_theta() {
        let net = Network::builder(2)
            .v0(vec![1.5, 0.0])
            .theta(vec![0.1, -0.1])
            .w0(vec![-0.2, 0.0])
            .build()
            .unwrap();
        let v = net.validate(ValidationMode::Dependency);
        assert_eq!(v.len(), 3);
        assert!(net.validate(ValidationMode::Fixed).is_empty());
    }

    #[test]
    fn over_budget_row_is_reported_per_node() {
        let net = Network::builder(2)
            .edge(1, 0, 0.6)
            .w0(vec![0.0, 0.3])
            .wg(vec![0.0, 0.1])
            .wb(vec![0.0, 0.1])
            .build()
            .unwrap();
        let v = net.validate(ValidationMode::Fixed);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].node(), 1);
    }

    #[test]
    fn builder_rejects_bad_input() {
        assert!(matches!(
            Network::builder(2).edge(0, 1, 0.1).edge(0, 1, 0.2).build(),
            Err(Error::DuplicateEdge { src: 0, dst: 1 })
        ));
        assert!(matches!(
            Network::builder(2).edge(0, 2, 0.1).build(),
            Err(Error::NodeOutOfRange { id: 2, n: 2 })
        ));
        assert!(matches!(
            Network::builder(2).w0(vec![0.1]).build(),
            Err(Error::LengthMismatch { field: "w0", .. })
        ));
        assert!(Network::builder(1).edge(0, 0, f64::NAN).build().is_err());
    }

    #[test]
    fn apply_and_transpose() {
        let net = Network::builder(2)
            .edge(0, 1, 0.5)
            .edge(1, 1, 0.25)
            .build()
            .unwrap();
        assert_eq!(net.apply(&[1.0, 2.0]), vec![1.0, 0.5]);
        assert_eq!(net.apply_transpose(&[1.0, 2.0]), vec![0.0, 1.0]);
        assert_eq!(net.max_abs_row_sum(), 0.5);
    }

    #[test]
    fn plan_checks() {
        let plan = InvestmentPlan::single(Camp::Good, 3, 1, Phase::Second, 2.0);
        assert_eq!(plan.phase_budget(Phase::Second), 2.0);
        assert!(plan.check(2.0, None).is_ok());
        assert!(plan.check(1.5, None).is_err());
        assert!(plan.check(2.0, Some(1.0)).is_err());
        let mut neg = InvestmentPlan::empty(Camp::Bad, 2);
        neg.x1[0] = -1.0;
        assert!(neg.check(10.0, None).is_err());
        assert!(Budgets::new(-1.0, 0.0).is_err());
    }
}
