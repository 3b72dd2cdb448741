//! Strategies when the camp weights `w_g`, `w_b` are fixed.
//!
//! The two-phase opinion sum is
//! `sum_i s_i w_ii^0 v_i^0 + sum_i s_i (w_ig x_i^(1) - w_ib y_i^(1)) + sum_i r_i (w_ig x_i^(2) - w_ib y_i^(2))`,
//! which is separable across camps, nodes and phases. Every `(node, phase)`
//! slot therefore has a constant marginal value for each camp.
//!
//! Ties between slots of equal value go to phase 2, then to the lowest node id.

use std::cmp::Ordering;

use crate::centrality::CentralityProfile;
use crate::dynamics::PhaseInvestment;
use crate::error::{Error, Result};
use crate::model::{Camp, InvestmentPlan, Network, Phase};

/// A camp's pure strategy: the whole amount on one `(node, phase)` slot, or
/// nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureInvestment {
    pub camp: Camp,
    pub node: Option<usize>,
    pub phase: Option<Phase>,
    pub amount: f64,
}

impl PureInvestment {
    pub fn none(camp: Camp) -> Self {
        PureInvestment {
            camp,
            node: None,
            phase: None,
            amount: 0.0,
        }
    }

    pub fn to_plan(&self, n: usize) -> InvestmentPlan {
        match (self.node, self.phase) {
            (Some(node), Some(phase)) => InvestmentPlan::single(self.camp, n, node, phase, self.amount),
            _ => InvestmentPlan::empty(self.camp, n),
        }
    }
}

/// Marginal value of one unit invested by a camp on `node` in `phase`:
/// `s_i w_ic` for phase 1, `r_i w_ic` for phase 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSlot {
    pub node: usize,
    pub phase: Phase,
    pub coefficient: f64,
}

fn slot_order(a: &ScoredSlot, b: &ScoredSlot) -> Ordering {
    b.coefficient
        .total_cmp(&a.coefficient)
        .then_with(|| b.phase.cmp(&a.phase))
        .then_with(|| a.node.cmp(&b.node))
}

/// All `2n` slots of `camp`, best first.
pub fn scored_slots(net: &Network, cent: &CentralityProfile, camp: Camp) -> Vec<ScoredSlot> {
    let w = net.camp_weights(camp);
    let mut slots: Vec<ScoredSlot> = (0..net.n())
        .flat_map(|i| {
            [
                ScoredSlot {
                    node: i,
                    phase: Phase::First,
                    coefficient: cent.s[i] * w[i],
                },
                ScoredSlot {
                    node: i,
                    phase: Phase::Second,
                    coefficient: cent.r[i] * w[i],
                },
            ]
        })
        .collect();
    slots.sort_by(slot_order);
    slots
}

/// Optimal unbounded two-phase strategy: the whole budget on the slot with
/// the largest `max{s_i w_ic, r_i w_ic}`, or nothing if no slot is positive.
pub fn farsighted_unbounded(net: &Network, cent: &CentralityProfile, budget: f64, camp: Camp) -> PureInvestment {
    match scored_slots(net, cent, camp).first() {
        Some(best) if best.coefficient > 0.0 && budget > 0.0 => PureInvestment {
            camp,
            node: Some(best.node),
            phase: Some(best.phase),
            amount: budget,
        },
        _ => PureInvestment::none(camp),
    }
}

/// Node maximizing `r_i w_ic`, lowest id on ties, if that value is positive.
fn myopic_node(net: &Network, cent: &CentralityProfile, camp: Camp) -> Option<usize> {
    let w = net.camp_weights(camp);
    let mut best: Option<(usize, f64)> = None;
    for i in 0..net.n() {
        let c = cent.r[i] * w[i];
        if best.is_none_or(|(_, b)| c > b) {
            best = Some((i, c));
        }
    }
    best.filter(|&(_, c)| c > 0.0).map(|(i, _)| i)
}

/// Strategy of a camp that only looks at the current phase: the whole budget
/// in phase 1 on the node with the largest `r_i w_ic`.
pub fn myopic_strategy(net: &Network, cent: &CentralityProfile, budget: f64, camp: Camp) -> PureInvestment {
    match myopic_node(net, cent, camp) {
        Some(node) if budget > 0.0 => PureInvestment {
            camp,
            node: Some(node),
            phase: Some(Phase::First),
            amount: budget,
        },
        _ => PureInvestment::none(camp),
    }
}

/// How much `camp` loses by playing myopically instead of farsightedly:
/// `k (max_i max{s_i w_ic, r_i w_ic, 0} - s_î w_îc)` where `î` is the myopic
/// choice (the second term is 0 when the myopic camp does not invest).
pub fn myopic_loss(net: &Network, cent: &CentralityProfile, camp: Camp, budget: f64) -> f64 {
    let w = net.camp_weights(camp);
    let best = scored_slots(net, cent, camp)
        .first()
        .map_or(0.0, |s| s.coefficient.max(0.0));
    let realized = myopic_node(net, cent, camp).map_or(0.0, |i| cent.s[i] * w[i]);
    budget * (best - realized)
}

/// Farsighted strategy when each `(node, phase)` slot takes at most `cap`:
/// fills slots best-first while their value is positive.
pub fn bounded_greedy(net: &Network, cent: &CentralityProfile, budget: f64, camp: Camp, cap: f64) -> InvestmentPlan {
    let mut plan = InvestmentPlan::empty(camp, net.n());
    let mut remaining = budget;
    for slot in scored_slots(net, cent, camp) {
        if slot.coefficient <= 0.0 || remaining <= 0.0 {
            break;
        }
        let amount = cap.min(remaining);
        plan.phase_mut(slot.phase)[slot.node] = amount;
        remaining -= amount;
    }
    plan
}

/// Myopic strategy under the per-node bound: phase-1 investments on nodes in
/// decreasing order of `r_i w_ic`.
pub fn bounded_myopic(net: &Network, cent: &CentralityProfile, budget: f64, camp: Camp, cap: f64) -> InvestmentPlan {
    let w = net.camp_weights(camp);
    let mut order: Vec<(usize, f64)> = (0..net.n()).map(|i| (i, cent.r[i] * w[i])).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut plan = InvestmentPlan::empty(camp, net.n());
    let mut remaining = budget;
    for (node, c) in order {
        if c <= 0.0 || remaining <= 0.0 {
            break;
        }
        let amount = cap.min(remaining);
        plan.x1[node] = amount;
        remaining -= amount;
    }
    plan
}

/// Contribution of one camp's plan to its own utility (sign-adjusted share of
/// the two-phase opinion sum).
pub fn plan_value(net: &Network, cent: &CentralityProfile, plan: &InvestmentPlan) -> f64 {
    let w = net.camp_weights(plan.camp);
    (0..net.n())
        .map(|i| w[i] * (cent.s[i] * plan.x1[i] + cent.r[i] * plan.x2[i]))
        .sum()
}

/// Loss of a myopic camp in the bounded setting.
pub fn bounded_myopic_loss(net: &Network, cent: &CentralityProfile, camp: Camp, budget: f64, cap: f64) -> f64 {
    plan_value(net, cent, &bounded_greedy(net, cent, budget, camp, cap))
        - plan_value(net, cent, &bounded_myopic(net, cent, budget, camp, cap))
}

/// Decision parameter `d1 r_i + d2 s_i` when the first outcome carries
/// weight `d1` and the second weight `d2`.
pub fn multi_election_scores(cent: &CentralityProfile, d1: f64, d2: f64) -> Result<Vec<f64>> {
    if !(d1 >= 0.0 && d2 >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "election weights must be nonnegative, got ({d1}, {d2})"
        )));
    }
    Ok(cent.r.iter().zip(&cent.s).map(|(r, s)| d1 * r + d2 * s).collect())
}

/// Closed-form `sum_i v_i^(2)` for a pair of two-phase plans.
pub fn evaluate_two_phase(net: &Network, cent: &CentralityProfile, good: &InvestmentPlan, bad: &InvestmentPlan) -> f64 {
    let (wg, wb, w0, v0) = (net.wg(), net.wb(), net.w0(), net.v0());
    (0..net.n())
        .map(|i| {
            cent.s[i] * w0[i] * v0[i]
                + cent.s[i] * (wg[i] * good.x1[i] - wb[i] * bad.x1[i])
                + cent.r[i] * (wg[i] * good.x2[i] - wb[i] * bad.x2[i])
        })
        .sum()
}

/// Closed-form `sum_i v_i^(p)` after `p = phases.len()` phases:
/// `sum_i r_i^(p) w_ii^0 v_i^0 + sum_q sum_i r_i^(p-q+1) (w_ig x_i^(q) - w_ib y_i^(q))`.
pub fn evaluate_multiphase(net: &Network, cent: &CentralityProfile, phases: &[PhaseInvestment]) -> Result<f64> {
    let p = phases.len();
    if p == 0 {
        return Err(Error::InvalidArgument("at least one phase is required".into()));
    }
    let order = |q: usize| {
        cent.order(q).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "centrality order {q} not computed (have {})",
                cent.max_order()
            ))
        })
    };
    let (wg, wb, w0, v0) = (net.wg(), net.wb(), net.w0(), net.v0());
    let rp = order(p)?;
    let mut total: f64 = (0..net.n()).map(|i| rp[i] * w0[i] * v0[i]).sum();
    for (k, inv) in phases.iter().enumerate() {
        let rq = order(p - k)?;
        total += (0..net.n())
            .map(|i| rq[i] * (wg[i] * inv.x[i] - wb[i] * inv.y[i]))
            .sum::<f64>();
    }
    Ok(total)
}
