//! Bias-dependent camp weights.
//!
//! Node `i` splits a fixed total `theta_i` between the camps according to its
//! bias-weighted opinion at the start of the phase:
//! `w_ig = theta_i (1 + w_ii^0 v_i) / 2`, `w_ib = theta_i (1 - w_ii^0 v_i) / 2`.
//! The two-phase opinion sum is then multilinear in the four investment
//! vectors, so each camp may restrict itself to one phase-1 node, one phase-2
//! node and a budget split (or no investment at all). For a fixed pair of
//! node choices the sum is a quadratic in the two phase-1 budgets, concave in
//! the good camp's and convex in the bad camp's, and its saddle value is the
//! payoff of that pure profile in a finite zero-sum game.
//!
//! Notation: `c_i = w_ii^0 v_i^0`, `b_ji = r_j w_jj^0 Delta_ji`,
//! `h_i = theta_i / 2`.

use rayon::prelude::*;

use crate::centrality::Centrality;
use crate::error::{Error, Result};
use crate::game::{solve_zero_sum, MatrixGame};
use crate::model::{Camp, InvestmentPlan, Network, Phase};
use crate::solve::{check_len, SolverConfig};

/// Default node cap for [`two_camp_equilibrium`]; the payoff matrix has
/// `(n^2 + 1)^2` entries.
pub const DEFAULT_MAX_NODES: usize = 40;

/// Bracket width (relative to the budget) at which the saddle bisection stops.
pub const SADDLE_TOL: f64 = 1e-10;

/// Per-phase camp weights `(w_g, w_b)` given the opinions `v_prev` at the
/// start of the phase.
pub fn camp_weights(net: &Network, v_prev: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    check_len("v_prev", v_prev, net.n())?;
    Ok(net
        .theta()
        .iter()
        .zip(net.w0())
        .zip(v_prev)
        .map(|((&t, &w0), &v)| {
            let m = w0 * v;
            (t * (1.0 + m) / 2.0, t * (1.0 - m) / 2.0)
        })
        .unzip())
}

/// A camp's node choice: `(phase-1 node, phase-2 node)`, or `None` for no
/// investment.
pub type NodeChoice = Option<(usize, usize)>;

/// All `n^2 + 1` node choices, `None` first, then `(a, b)` in row-major order.
pub fn strategies(n: usize) -> Vec<NodeChoice> {
    std::iter::once(None)
        .chain((0..n).flat_map(|a| (0..n).map(move |b| Some((a, b)))))
        .collect()
}

/// One camp's pure strategy: `k1` on `alpha` in phase 1, `k2` on `beta` in
/// phase 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureProfile {
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub k1: f64,
    pub k2: f64,
}

impl PureProfile {
    pub fn none() -> Self {
        PureProfile {
            alpha: None,
            beta: None,
            k1: 0.0,
            k2: 0.0,
        }
    }

    pub fn new(choice: NodeChoice, k1: f64, k2: f64) -> Self {
        match choice {
            Some((a, b)) => PureProfile {
                alpha: Some(a),
                beta: Some(b),
                k1,
                k2,
            },
            None => Self::none(),
        }
    }

    pub fn choice(&self) -> NodeChoice {
        self.alpha.zip(self.beta)
    }

    pub fn to_plan(&self, camp: Camp, n: usize) -> InvestmentPlan {
        let mut plan = InvestmentPlan::empty(camp, n);
        if let Some((a, b)) = self.choice() {
            plan.phase_mut(Phase::First)[a] += self.k1;
            plan.phase_mut(Phase::Second)[b] += self.k2;
        }
        plan
    }
}

/// Constants shared by every profile evaluation on one network.
pub struct DependencyCoefficients<'a> {
    cent: Centrality<'a>,
    r: Vec<f64>,
    s: Vec<f64>,
    c: Vec<f64>,
    /// `sum_i c_i b_ji` for each `j`.
    cb: Vec<f64>,
    baseline: f64,
}

impl<'a> DependencyCoefficients<'a> {
    pub fn new(net: &'a Network) -> Result<Self> {
        Self::with_config(net, SolverConfig::default())
    }

    pub fn with_config(net: &'a Network, config: SolverConfig) -> Result<Self> {
        let cent = Centrality::new(net, config);
        let r = cent.r()?.to_vec();
        let s = cent.s()?;
        let c: Vec<f64> = net.w0().iter().zip(net.v0()).map(|(w, v)| w * v).collect();
        // sum_i c_i b_ji = r_j w_jj^0 (Delta c)_j
        let delta_c = cent.apply_delta(&c)?;
        let cb: Vec<f64> = (0..net.n())
            .map(|j| r[j] * net.w0()[j] * delta_c[j])
            .collect();
        let baseline = cb.iter().sum();
        Ok(DependencyCoefficients {
            cent,
            r,
            s,
            c,
            cb,
            baseline,
        })
    }

    pub fn network(&self) -> &'a Network {
        self.cent.network()
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// `sum_i c_i b_ji`.
    pub fn cb(&self, j: usize) -> f64 {
        self.cb[j]
    }

    /// `sum_i sum_j c_i b_ji`: the opinion sum when nobody invests.
    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    /// `b_ji = r_j w_jj^0 Delta_ji`.
    pub fn b(&self, j: usize, i: usize) -> Result<f64> {
        let row = self.cent.delta_row(j)?;
        Ok(self.r[j] * self.network().w0()[j] * row[i])
    }

    pub fn b_row(&self, j: usize) -> Result<Vec<f64>> {
        let scale = self.r[j] * self.network().w0()[j];
        Ok(self.cent.delta_row(j)?.iter().map(|d| scale * d).collect())
    }

    /// Computes (in parallel) and caches the `Delta` rows of the given nodes.
    pub fn prefetch_rows(&self, rows: &[usize]) -> Result<()> {
        rows.par_iter()
            .try_for_each(|&j| self.cent.delta_row(j).map(|_| ()))
    }

    fn half_theta(&self, i: usize) -> f64 {
        self.network().theta()[i] / 2.0
    }

    /// Two-phase opinion sum for arbitrary investment vectors.
    pub fn objective(&self, x1: &[f64], x2: &[f64], y1: &[f64], y2: &[f64]) -> Result<f64> {
        let n = self.n();
        for (field, v) in [("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)] {
            check_len(field, v, n)?;
        }
        let w0 = self.network().w0();
        let u: Vec<f64> = (0..n)
            .map(|i| {
                let h = self.half_theta(i);
                self.c[i] * (1.0 + h * x1[i] + h * y1[i]) + h * (x1[i] - y1[i])
            })
            .collect();
        let delta_u = self.cent.apply_delta(&u)?;
        Ok((0..n)
            .map(|j| {
                let h = self.half_theta(j);
                let t = 1.0 + h * x2[j] + h * y2[j];
                t * self.r[j] * w0[j] * delta_u[j] + self.r[j] * h * (x2[j] - y2[j])
            })
            .sum())
    }

    /// Two-phase opinion sum for one pure profile per camp (any splits).
    pub fn profile_value(&self, good: &PureProfile, bad: &PureProfile) -> Result<f64> {
        let mut total = self.baseline;
        let (gk1, gk2) = match good.choice() {
            Some(_) => (good.k1, good.k2),
            None => (0.0, 0.0),
        };
        let (bk1, bk2) = match bad.choice() {
            Some(_) => (bad.k1, bad.k2),
            None => (0.0, 0.0),
        };
        // phase-2 influence of each camp on a phase-1 node `i`
        let carry = |i: usize| -> Result<f64> {
            let mut v = self.s[i];
            if let Some((_, beta)) = good.choice() {
                v += gk2 * self.half_theta(beta) * self.b(beta, i)?;
            }
            if let Some((_, delta)) = bad.choice() {
                v += bk2 * self.half_theta(delta) * self.b(delta, i)?;
            }
            Ok(v)
        };
        if let Some((alpha, beta)) = good.choice() {
            total += gk2 * self.half_theta(beta) * (self.cb[beta] + self.r[beta]);
            total += gk1 * self.half_theta(alpha) * (1.0 + self.c[alpha]) * carry(alpha)?;
        }
        if let Some((gamma, delta)) = bad.choice() {
            total += bk2 * self.half_theta(delta) * (self.cb[delta] - self.r[delta]);
            total -= bk1 * self.half_theta(gamma) * (1.0 - self.c[gamma]) * carry(gamma)?;
        }
        Ok(total)
    }

    /// The profile value as a quadratic in the phase-1 budgets `(a, b)` with
    /// `k_g^(2) = kg - a` and `k_b^(2) = kb - b`. A `None` choice pins that
    /// camp's budget to zero.
    pub fn split_quadratic(&self, good: NodeChoice, bad: NodeChoice, kg: f64, kb: f64) -> Result<SplitQuadratic> {
        let (kg, p, g2, s_a, g_ba, g_bc) = match good {
            Some((alpha, beta)) => {
                let hb = self.half_theta(beta);
                (
                    kg,
                    self.half_theta(alpha) * (1.0 + self.c[alpha]),
                    hb * (self.cb[beta] + self.r[beta]),
                    self.s[alpha],
                    hb * self.b(beta, alpha)?,
                    match bad {
                        Some((gamma, _)) => hb * self.b(beta, gamma)?,
                        None => 0.0,
                    },
                )
            }
            None => (0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        };
        let (kb, q, b2, s_c, d_da, d_dc) = match bad {
            Some((gamma, delta)) => {
                let hd = self.half_theta(delta);
                (
                    kb,
                    self.half_theta(gamma) * (1.0 - self.c[gamma]),
                    hd * (self.cb[delta] - self.r[delta]),
                    self.s[gamma],
                    match good {
                        Some((alpha, _)) => hd * self.b(delta, alpha)?,
                        None => 0.0,
                    },
                    hd * self.b(delta, gamma)?,
                )
            }
            None => (0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        };
        Ok(SplitQuadratic {
            constant: self.baseline + kg * g2 + kb * b2,
            a: -g2 + p * (s_a + kg * g_ba + kb * d_da),
            b: -b2 - q * (s_c + kg * g_bc + kb * d_dc),
            aa: -p * g_ba,
            bb: q * d_dc,
            ab: -p * d_da + q * g_bc,
            kg,
            kb,
        })
    }

    /// Stationary point of the profile quadratic from the closed-form
    /// solution of both first-order conditions. `None` when the 2x2 system is
    /// singular. The point may lie outside the budget box.
    pub fn interior_split(&self, good: (usize, usize), bad: (usize, usize), kg: f64, kb: f64) -> Result<Option<(f64, f64)>> {
        let (alpha, beta) = good;
        let (gamma, delta) = bad;
        let th = |i: usize| self.network().theta()[i];
        let (ta, tb, tc, td) = (th(alpha), th(beta), th(gamma), th(delta));
        let (ca, cc) = (self.c[alpha], self.c[gamma]);
        let (b_ba, b_da, b_bc, b_dc) = (
            self.b(beta, alpha)?,
            self.b(delta, alpha)?,
            self.b(beta, gamma)?,
            self.b(delta, gamma)?,
        );
        let (sa, sc, rb, rd) = (self.s[alpha], self.s[gamma], self.r[beta], self.r[delta]);
        let (cb_b, cb_d) = (self.cb[beta], self.cb[delta]);

        let big_a = tc * td * (1.0 - cc) * b_dc;
        let big_b = 0.5 * (ta * td * (1.0 + ca) * b_da - tc * tb * (1.0 - cc) * b_bc);
        let m11 = ta * tb * (1.0 + ca) * b_ba;
        let det = big_b * big_b + m11 * big_a;
        if det == 0.0 || !det.is_finite() {
            return Ok(None);
        }
        let kg1 = (sa * ta * (1.0 + ca) * big_a - rb * tb * big_a - sc * tc * (1.0 - cc) * big_b
            + rd * td * big_b
            + kg * (ta * tb / 2.0 * (1.0 + ca) * b_ba * big_a - tc * tb / 2.0 * (1.0 - cc) * b_bc * big_b)
            + kb * (ta * td / 2.0 * (1.0 + ca) * b_da * big_a - tc * td / 2.0 * (1.0 - cc) * b_dc * big_b)
            - tb * big_a * cb_b
            - td * big_b * cb_d)
            / det;
        let r1 = -tb * (cb_b + rb) + ta * (1.0 + ca) * (sa + kg * tb / 2.0 * b_ba + kb * td / 2.0 * b_da);
        let r2 = -td * (cb_d - rd) - tc * (1.0 - cc) * (sc + kg * tb / 2.0 * b_bc + kb * td / 2.0 * b_dc);
        let kb1 = (big_b * r1 - m11 * r2) / det;
        Ok(Some((kg1, kb1)))
    }
}

/// `f(a, b) = constant + a*A + b*B + aa*a^2 + bb*b^2 + ab*a*b` on
/// `[0, kg] x [0, kb]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitQuadratic {
    pub constant: f64,
    pub a: f64,
    pub b: f64,
    pub aa: f64,
    pub bb: f64,
    pub ab: f64,
    pub kg: f64,
    pub kb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub a: f64,
    pub b: f64,
    pub value: f64,
}

impl SplitQuadratic {
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.constant + self.a * a + self.b * b + self.aa * a * a + self.bb * b * b + self.ab * a * b
    }

    pub fn grad_a(&self, a: f64, b: f64) -> f64 {
        self.a + 2.0 * self.aa * a + self.ab * b
    }

    pub fn grad_b(&self, a: f64, b: f64) -> f64 {
        self.b + 2.0 * self.bb * b + self.ab * a
    }

    /// Good camp's best `a` against a fixed `b`.
    pub fn best_a(&self, b: f64) -> f64 {
        let slope = self.a + self.ab * b;
        best_on_interval(self.aa, slope, self.kg, true)
    }

    /// Bad camp's best `b` against a fixed `a`.
    pub fn best_b(&self, a: f64) -> f64 {
        let slope = self.b + self.ab * a;
        best_on_interval(self.bb, slope, self.kb, false)
    }

    /// Saddle point of a concave-convex quadratic on the budget box.
    ///
    /// `g(a) = min_b f(a, b)` is concave and `h(b) = max_a f(a, b)` convex;
    /// both are optimized by bisection on the sign of a super/subgradient
    /// taken at the inner best response.
    pub fn saddle_by_bisection(&self) -> SaddlePoint {
        let a = bisect(self.kg, |a| self.grad_a(a, self.best_b(a)), true);
        let b = bisect(self.kb, |b| self.grad_b(self.best_a(b), b), false);
        SaddlePoint {
            a,
            b,
            value: self.eval(a, b),
        }
    }
}

/// Optimum of `curv * t^2 + slope * t` over `[0, k]`; maximizes when
/// `maximize`, else minimizes. Endpoint ties go to `t = 0`.
fn best_on_interval(curv: f64, slope: f64, k: f64, maximize: bool) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let sign = if maximize { 1.0 } else { -1.0 };
    let (curv, slope) = (sign * curv, sign * slope);
    // now maximizing curv t^2 + slope t
    if curv < 0.0 {
        (-slope / (2.0 * curv)).clamp(0.0, k)
    } else {
        let at_k = curv * k * k + slope * k;
        if at_k > 0.0 {
            k
        } else {
            0.0
        }
    }
}

/// Bisection for the optimum over `[0, k]` of a concave (when `maximize`)
/// or convex function given through its super/subgradient `grad`.
fn bisect(k: f64, grad: impl Fn(f64) -> f64, maximize: bool) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let sign = if maximize { 1.0 } else { -1.0 };
    let ascent = |t: f64| sign * grad(t);
    if ascent(0.0) <= 0.0 {
        return 0.0;
    }
    if ascent(k) >= 0.0 {
        return k;
    }
    let (mut lo, mut hi) = (0.0, k);
    let tol = SADDLE_TOL * k.max(1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let d = ascent(mid);
        if d > 0.0 {
            lo = mid;
        } else if d < 0.0 {
            hi = mid;
        } else {
            return mid;
        }
    }
    0.5 * (lo + hi)
}

/// Optimal phase-1 budget for the good camp alone on `(alpha, beta)`.
fn single_camp_split(coeffs: &DependencyCoefficients<'_>, alpha: usize, beta: usize, kg: f64) -> Result<(f64, f64)> {
    let q = coeffs.split_quadratic(Some((alpha, beta)), None, kg, 0.0)?;
    let theta = coeffs.network().theta();
    let b_ba = coeffs.b(beta, alpha)?;
    let ca = coeffs.c[alpha];
    let curvature = theta[alpha] * theta[beta] * b_ba * (ca + 1.0);
    let k1 = if curvature > 0.0 {
        let interior = kg / 2.0 + coeffs.s[alpha] / (theta[beta] * b_ba)
            - (coeffs.cb[beta] + coeffs.r[beta]) / (theta[alpha] * b_ba * (ca + 1.0));
        interior.clamp(0.0, kg)
    } else if q.eval(kg, 0.0) > q.eval(0.0, 0.0) {
        kg
    } else {
        0.0
    };
    Ok((k1, q.eval(k1, 0.0)))
}

/// Best single-camp (good camp, no opponent) pure profile and its value.
///
/// Enumerates every `(alpha, beta)` pair plus the no-investment fallback,
/// which is kept unless some pair does strictly better.
pub fn single_camp_optimal(coeffs: &DependencyCoefficients<'_>, kg: f64) -> Result<(PureProfile, f64)> {
    let n = coeffs.n();
    let mut best = (PureProfile::none(), coeffs.baseline());
    if kg <= 0.0 {
        return Ok(best);
    }
    coeffs.prefetch_rows(&(0..n).collect::<Vec<_>>())?;
    let per_alpha: Vec<(PureProfile, f64)> = (0..n)
        .into_par_iter()
        .map(|alpha| {
            let mut local: Option<(PureProfile, f64)> = None;
            for beta in 0..n {
                let (k1, value) = single_camp_split(coeffs, alpha, beta, kg)?;
                if local.is_none_or(|(_, v)| improves(value, v)) {
                    local = Some((PureProfile::new(Some((alpha, beta)), k1, kg - k1), value));
                }
            }
            Ok(local.expect("n > 0"))
        })
        .collect::<Result<_>>()?;
    for cand in per_alpha {
        if improves(cand.1, best.1) {
            best = cand;
        }
    }
    Ok(best)
}

fn improves(candidate: f64, incumbent: f64) -> bool {
    candidate > incumbent + 1e-12 * (1.0 + incumbent.abs())
}

/// Utility of one pure profile with both camps splitting optimally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOutcome {
    pub value: f64,
    pub good: PureProfile,
    pub bad: PureProfile,
}

/// `u_g((alpha, beta), (gamma, delta))`: the saddle value of the profile
/// quadratic over both camps' budget splits.
pub fn profile_utility(
    coeffs: &DependencyCoefficients<'_>,
    good: NodeChoice,
    bad: NodeChoice,
    kg: f64,
    kb: f64,
) -> Result<ProfileOutcome> {
    let (a, b, value) = match (good, bad) {
        (None, None) => (0.0, 0.0, coeffs.baseline()),
        (Some((alpha, beta)), None) => {
            let (k1, value) = single_camp_split(coeffs, alpha, beta, kg)?;
            (k1, 0.0, value)
        }
        (None, Some(_)) => {
            let q = coeffs.split_quadratic(None, bad, 0.0, kb)?;
            let b = q.best_b(0.0);
            (0.0, b, q.eval(0.0, b))
        }
        (Some(g), Some(d)) => {
            let q = coeffs.split_quadratic(good, bad, kg, kb)?;
            let interior = if q.aa < 0.0 && q.bb > 0.0 {
                coeffs
                    .interior_split(g, d, kg, kb)?
                    .filter(|&(a, b)| in_box(a, kg) && in_box(b, kb))
            } else {
                None
            };
            match interior {
                Some((a, b)) => {
                    let (a, b) = (a.clamp(0.0, kg), b.clamp(0.0, kb));
                    (a, b, q.eval(a, b))
                }
                None => {
                    let sp = q.saddle_by_bisection();
                    (sp.a, sp.b, sp.value)
                }
            }
        }
    };
    Ok(ProfileOutcome {
        value,
        good: PureProfile::new(good, a, if good.is_some() { kg - a } else { 0.0 }),
        bad: PureProfile::new(bad, b, if bad.is_some() { kb - b } else { 0.0 }),
    })
}

fn in_box(t: f64, k: f64) -> bool {
    let slack = 1e-12 * k.max(1.0);
    t >= -slack && t <= k + slack
}

/// Mixed equilibrium of the `(n^2 + 1) x (n^2 + 1)` zero-sum game.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub strategies: Vec<NodeChoice>,
    /// `payoff.get(i, j) = u_g(strategies[i], strategies[j])`.
    pub payoff: MatrixGame,
    pub row_mix: Vec<f64>,
    pub col_mix: Vec<f64>,
    pub value: f64,
    pub kg: f64,
    pub kb: f64,
}

impl GameSolution {
    /// Profiles played with positive probability, as
    /// `(row index, col index, joint probability)`.
    pub fn support_pairs(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (i, &p) in self.row_mix.iter().enumerate().filter(|(_, &p)| p > 0.0) {
            for (j, &q) in self.col_mix.iter().enumerate().filter(|(_, &q)| q > 0.0) {
                out.push((i, j, p * q));
            }
        }
        out
    }

    /// Expected `(kg1, kg2, kb1, kb2)` under the equilibrium mixes.
    pub fn expected_splits(&self, coeffs: &DependencyCoefficients<'_>) -> Result<[f64; 4]> {
        let mut acc = [0.0; 4];
        for (i, j, prob) in self.support_pairs() {
            let o = profile_utility(coeffs, self.strategies[i], self.strategies[j], self.kg, self.kb)?;
            for (slot, v) in acc.iter_mut().zip([o.good.k1, o.good.k2, o.bad.k1, o.bad.k2]) {
                *slot += prob * v;
            }
        }
        Ok(acc)
    }
}

/// Builds the payoff matrix over all pure profiles and solves the game.
pub fn two_camp_equilibrium(
    coeffs: &DependencyCoefficients<'_>,
    kg: f64,
    kb: f64,
    max_nodes: usize,
) -> Result<GameSolution> {
    let n = coeffs.n();
    if n > max_nodes {
        return Err(Error::TooManyNodes { n, cap: max_nodes });
    }
    coeffs.prefetch_rows(&(0..n).collect::<Vec<_>>())?;
    let strategies = strategies(n);
    let m = strategies.len();
    let rows: Vec<Vec<f64>> = strategies
        .par_iter()
        .map(|&g| {
            strategies
                .iter()
                .map(|&d| profile_utility(coeffs, g, d, kg, kb).map(|o| o.value))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let payoff = MatrixGame::new(m, m, rows.concat())?;
    let sol = solve_zero_sum(&payoff)?;
    Ok(GameSolution {
        strategies,
        payoff,
        row_mix: sol.row_mix,
        col_mix: sol.col_mix,
        value: sol.value,
        kg,
        kb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(theta: f64, w0: f64, v0: [f64; 2]) -> Network {
        Network::builder(2)
            .edge(0, 1, 0.5)
            .edge(1, 0, 0.5)
            .w0(vec![w0, w0])
            .v0(v0.to_vec())
            .theta(vec![theta, theta])
            .build()
            .unwrap()
    }

    #[test]
    fn camp_weight_formula() {
        let net = Network::builder(2)
            .w0(vec![0.5, 0.5])
            .theta(vec![0.2, 0.4])
            .build()
            .unwrap();
        let (g, b) = camp_weights(&net, &[0.0, 0.0]).unwrap();
        assert_eq!((g.clone(), b.clone()), (vec![0.1, 0.2], vec![0.1, 0.2]));
        let (g, b) = camp_weights(&net, &[1.0, -0.3]).unwrap();
        assert!((g[0] - 0.15).abs() < 1e-15 && (b[0] - 0.05).abs() < 1e-15);
        for i in 0..2 {
            assert!((g[i] + b[i] - net.theta()[i]).abs() < 1e-15);
        }
        assert!(camp_weights(&net, &[0.0]).is_err());
    }

    #[test]
    fn strategy_enumeration() {
        let s = strategies(2);
        assert_eq!(s, vec![None, Some((0, 0)), Some((0, 1)), Some((1, 0)), Some((1, 1))]);
    }

    #[test]
    fn zero_theta_means_no_effect() {
        let net = pair(0.0, 0.3, [0.5, -0.5]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let (profile, value) = single_camp_optimal(&coeffs, 10.0).unwrap();
        assert_eq!(profile, PureProfile::none());
        assert!(value.abs() < 1e-12);
        for g in strategies(2) {
            for d in strategies(2) {
                let o = profile_utility(&coeffs, g, d, 3.0, 2.0).unwrap();
                assert!(o.value.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_camp_two_node_example() {
        let net = pair(0.2, 0.3, [0.0, 0.0]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let (profile, value) = single_camp_optimal(&coeffs, 10.0).unwrap();
        assert_eq!(profile.k1, 0.0);
        assert_eq!(profile.k2, 10.0);
        assert!((value - 2.0).abs() < 1e-12);
        // f(k1) = 2 - 0.008 k1^2 on (alpha, beta) = (0, 0)
        let q = coeffs.split_quadratic(Some((0, 0)), None, 10.0, 0.0).unwrap();
        for k1 in [0.0, 2.5, 10.0] {
            assert!((q.eval(k1, 0.0) - (2.0 - 0.008 * k1 * k1)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_budget_single_camp() {
        let net = pair(0.2, 0.3, [0.4, 0.1]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let (profile, value) = single_camp_optimal(&coeffs, 0.0).unwrap();
        assert_eq!((profile.k1, profile.k2), (0.0, 0.0));
        assert_eq!(value, coeffs.baseline());
    }

    #[test]
    fn nobody_investing_gives_baseline() {
        let net = pair(0.2, 0.3, [0.4, 0.1]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let o = profile_utility(&coeffs, None, None, 5.0, 5.0).unwrap();
        assert_eq!(o.value, coeffs.baseline());
        // c = [0.12, 0.03], column sums of b are s = [1.2, 1.2]
        assert!((coeffs.baseline() - 1.2 * 0.15).abs() < 1e-12);
    }

    #[test]
    fn quadratic_matches_direct_profile_value() {
        let net = Network::builder(3)
            .edge(0, 1, 0.3)
            .edge(1, 2, 0.4)
            .edge(2, 0, 0.2)
            .edge(2, 1, 0.1)
            .w0(vec![0.3, 0.5, 0.2])
            .v0(vec![0.4, -0.6, 0.9])
            .theta(vec![0.2, 0.3, 0.1])
            .build()
            .unwrap();
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let (kg, kb) = (4.0, 3.0);
        for g in strategies(3) {
            for d in strategies(3) {
                let q = coeffs.split_quadratic(g, d, kg, kb).unwrap();
                for (a, b) in [(0.0, 0.0), (1.0, 2.0), (4.0, 0.5)] {
                    let gp = PureProfile::new(g, a, kg - a);
                    let bp = PureProfile::new(d, b, kb - b);
                    let direct = coeffs.profile_value(&gp, &bp).unwrap();
                    let (ea, eb) = (if g.is_some() { a } else { 0.0 }, if d.is_some() { b } else { 0.0 });
                    assert!((q.eval(ea, eb) - direct).abs() < 1e-12);
                    let gp = gp.to_plan(Camp::Good, 3);
                    let bp = bp.to_plan(Camp::Bad, 3);
                    let full = coeffs.objective(&gp.x1, &gp.x2, &bp.x1, &bp.x2).unwrap();
                    assert!((full - direct).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn interior_point_solves_first_order_conditions() {
        let net = Network::builder(3)
            .edge(0, 1, 0.4)
            .edge(1, 0, 0.4)
            .edge(1, 2, 0.3)
            .edge(2, 1, 0.5)
            .w0(vec![0.6, 0.5, 0.7])
            .v0(vec![0.1, -0.2, 0.3])
            .theta(vec![0.3, 0.3, 0.2])
            .build()
            .unwrap();
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let (kg, kb) = (10.0, 8.0);
        let q = coeffs.split_quadratic(Some((0, 1)), Some((2, 1)), kg, kb).unwrap();
        let (a, b) = coeffs.interior_split((0, 1), (2, 1), kg, kb).unwrap().unwrap();
        assert!(q.grad_a(a, b).abs() < 1e-10);
        assert!(q.grad_b(a, b).abs() < 1e-10);
    }

    #[test]
    fn bisection_finds_boundary_saddles() {
        // f = -a^2 + b^2 + 3a - 2b on [0,1]x[0,4]: a* = 1 (clamped), b* = 1
        let q = SplitQuadratic {
            constant: 0.0,
            a: 3.0,
            b: -2.0,
            aa: -1.0,
            bb: 1.0,
            ab: 0.0,
            kg: 1.0,
            kb: 4.0,
        };
        let sp = q.saddle_by_bisection();
        assert!((sp.a - 1.0).abs() < 1e-9 && (sp.b - 1.0).abs() < 1e-9);
        assert!((sp.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bisection_handles_linear_directions() {
        // bilinear f = a*b - 0.5a - 0.5b on [0,1]^2: saddle at (0.5, 0.5)
        let q = SplitQuadratic {
            constant: 0.0,
            a: -0.5,
            b: -0.5,
            aa: 0.0,
            bb: 0.0,
            ab: 1.0,
            kg: 1.0,
            kb: 1.0,
        };
        let sp = q.saddle_by_bisection();
        assert!((sp.a - 0.5).abs() < 1e-9 && (sp.b - 0.5).abs() < 1e-9);
    }

    #[test]
    fn node_cap_is_enforced() {
        let net = pair(0.2, 0.3, [0.0, 0.0]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        assert!(matches!(
            two_camp_equilibrium(&coeffs, 1.0, 1.0, 1),
            Err(Error::TooManyNodes { n: 2, cap: 1 })
        ));
    }

    #[test]
    fn constant_game_when_theta_zero() {
        let net = pair(0.0, 0.3, [0.5, 0.2]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let sol = two_camp_equilibrium(&coeffs, 2.0, 3.0, DEFAULT_MAX_NODES).unwrap();
        assert!((sol.value - coeffs.baseline()).abs() < 1e-12);
        assert!((sol.row_mix.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((sol.col_mix.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_budgets_give_baseline_value() {
        let net = pair(0.2, 0.3, [0.5, 0.2]);
        let coeffs = DependencyCoefficients::new(&net).unwrap();
        let sol = two_camp_equilibrium(&coeffs, 0.0, 0.0, DEFAULT_MAX_NODES).unwrap();
        assert!((sol.value - coeffs.baseline()).abs() < 1e-12);
    }
}
