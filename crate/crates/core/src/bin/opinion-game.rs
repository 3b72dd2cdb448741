//! Command-line front end. Results go to standard output (or `--out`) as
//! CSV; diagnostics go to standard error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use opinion_game::centrality::Centrality;
use opinion_game::dynamics::{run_phases, CampWeighting, PhaseInvestment};
use opinion_game::harness::{
    barabasi_albert, default_grid, generate_weights, sweep_w0, write_sweep_csv, SweepMode, SweepOptions,
    WeightScheme,
};
use opinion_game::model::{load_edge_list, ValidationMode};
use opinion_game::strategy_dependent::{
    profile_utility, single_camp_optimal, two_camp_equilibrium, DependencyCoefficients, NodeChoice,
    DEFAULT_MAX_NODES,
};
use opinion_game::strategy_fixed::{bounded_greedy, evaluate_two_phase, farsighted_unbounded};
use opinion_game::{Budgets, Camp, InvestmentPlan, Network, Phase, SolverConfig, Topology};

#[derive(Parser)]
#[command(name = "opinion-game", version, about = "Two-phase opinion-investment games on social networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Katz centralities: node,r,s[,r3,...]
    Centrality {
        #[command(flatten)]
        net: NetArgs,
        /// Highest multiphase order to report (2 = r and s).
        #[arg(long, default_value_t = 2)]
        orders: usize,
    },
    /// Per-phase steady-state opinions under the camps' optimal fixed-weight plans.
    SteadyState {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Number of phases to run; investments only happen in the first two.
        #[arg(long, default_value_t = 2)]
        phases: usize,
        /// Camp weights fixed or derived from the phase's initial opinions.
        #[arg(long, value_enum, default_value_t = Weighting::Fixed)]
        mode: Weighting,
    },
    /// Optimal fixed-weight strategies of both camps.
    StrategyFixed {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Bias-dependent weights: single-camp split or two-camp equilibrium.
    StrategyDep {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// 1: good camp alone; 2: zero-sum game between both camps.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        camps: u8,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Sweep the uniform bias weight over a grid.
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// bounded, fixed, dependency1 or dependency2.
        #[arg(long, default_value = "bounded")]
        mode: SweepMode,
        #[arg(long, default_value_t = 0.1)]
        camp_base: f64,
        /// Comma-separated bias weights (default 0, 0.05, ..., 0.95).
        #[arg(long, value_delimiter = ',')]
        w0_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list `src dst [weight]`; a seeded preferential-attachment graph
    /// is generated when absent.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Treat each line as an undirected edge.
    #[arg(long)]
    symmetrize: bool,
    /// Size of the generated graph.
    #[arg(long, default_value_t = 300)]
    nodes: usize,
    /// Edges added per node in the generated graph.
    #[arg(long, default_value_t = 3)]
    attach: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct NetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Uniform bias weight w_ii^0.
    #[arg(long, default_value_t = 0.5)]
    w0: f64,
    /// Uniform initial opinion.
    #[arg(long, default_value_t = 0.0)]
    v0: f64,
    #[arg(long, default_value_t = 0.1)]
    camp_base: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 100.0)]
    kg: f64,
    #[arg(long, default_value_t = 100.0)]
    kb: f64,
    /// Cap every (node, phase) investment (fixed-weight strategies only).
    #[arg(long)]
    bounded: bool,
    /// Per-slot cap used with --bounded.
    #[arg(long, default_value_t = 1.0)]
    cap: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Fixed,
    Dependency,
}

impl GraphArgs {
    fn topology(&self) -> Result<Topology> {
        match &self.graph {
            Some(path) => load_edge_list(path, self.symmetrize, 1.0)
                .with_context(|| format!("loading {}", path.display())),
            None => {
                log::info!(
                    "generating preferential-attachment graph: {} nodes, attach {}, seed {}",
                    self.nodes,
                    self.attach,
                    self.seed
                );
                Ok(barabasi_albert(self.nodes, self.attach, self.seed)?)
            }
        }
    }
}

impl NetArgs {
    fn network(&self, mode: ValidationMode) -> Result<Network> {
        let scheme = WeightScheme::new(self.camp_base, vec![self.w0])?;
        let topo = self.graph.topology()?;
        let net = generate_weights(&topo, self.w0, &scheme)?.with_v0(vec![self.v0; topo.n])?;
        for v in net.validate(mode).iter().take(5) {
            log::warn!("{v}");
        }
        Ok(net)
    }
}

impl BudgetArgs {
    fn budgets(&self) -> Result<Budgets> {
        Ok(Budgets::new(self.kg, self.kb)?)
    }

    fn plans(&self, net: &Network, cent: &opinion_game::centrality::CentralityProfile) -> (InvestmentPlan, InvestmentPlan) {
        let plan = |camp: Camp, k: f64| {
            if self.bounded {
                bounded_greedy(net, cent, k, camp, self.cap)
            } else {
                farsighted_unbounded(net, cent, k, camp).to_plan(net.n())
            }
        };
        (plan(Camp::Good, self.kg), plan(Camp::Bad, self.kb))
    }
}

fn output(out: &Option<PathBuf>) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn choice_fields(c: NodeChoice) -> [String; 2] {
    [fmt_opt(c.map(|p| p.0)), fmt_opt(c.map(|p| p.1))]
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Centrality { net, orders } => {
            if orders == 0 {
                bail!("--orders must be at least 1");
            }
            let network = net.network(ValidationMode::Fixed)?;
            let profile = Centrality::new(&network, SolverConfig::default()).profile(orders)?;
            let mut w = output(&net.out)?;
            let mut header = vec!["node".to_string(), "r".into()];
            header.extend((2..=orders).map(|q| if q == 2 { "s".to_string() } else { format!("r{q}") }));
            w.write_record(&header)?;
            for i in 0..network.n() {
                let mut rec = vec![i.to_string()];
                rec.extend((1..=orders).map(|q| profile.order(q).expect("computed order")[i].to_string()));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Command::SteadyState { net, budgets, phases, mode } => {
            if phases == 0 {
                bail!("--phases must be at least 1");
            }
            let (vmode, weighting) = match mode {
                Weighting::Fixed => (ValidationMode::Fixed, CampWeighting::Fixed),
                Weighting::Dependency => (ValidationMode::Dependency, CampWeighting::Dependent),
            };
            let network = net.network(vmode)?;
            let cent = Centrality::new(&network, SolverConfig::default()).profile(2)?;
            let (good, bad) = budgets.plans(&network, &cent);
            let n = network.n();
            let schedule: Vec<PhaseInvestment> = (0..phases)
                .map(|p| match p {
                    0 => PhaseInvestment::from_plans(&good, &bad, Phase::First),
                    1 => PhaseInvestment::from_plans(&good, &bad, Phase::Second),
                    _ => PhaseInvestment::zero(n),
                })
                .collect();
            let run = run_phases(&network, &schedule, weighting)?;
            let mut w = output(&net.out)?;
            let mut header = vec!["node".to_string()];
            header.extend((1..=phases).map(|p| format!("v{p}")));
            w.write_record(&header)?;
            for i in 0..n {
                let mut rec = vec![i.to_string()];
                rec.extend(run.states.iter().map(|s| s.v[i].to_string()));
                w.write_record(&rec)?;
            }
            w.flush()?;
            for (p, sum) in run.sums.iter().enumerate() {
                log::info!("phase {} opinion sum {sum}", p + 1);
            }
        }
        Command::StrategyFixed { net, budgets } => {
            let network = net.network(ValidationMode::Fixed)?;
            let cent = Centrality::new(&network, SolverConfig::default()).profile(2)?;
            let (good, bad) = budgets.plans(&network, &cent);
            let mut w = output(&net.out)?;
            w.write_record(["kind", "camp", "node", "phase", "amount"])?;
            for plan in [&good, &bad] {
                for phase in [Phase::First, Phase::Second] {
                    for (i, &x) in plan.phase(phase).iter().enumerate().filter(|(_, &x)| x > 0.0) {
                        w.write_record(["slot", &plan.camp.to_string(), &i.to_string(), &phase.to_string(), &x.to_string()])?;
                    }
                }
                for phase in [Phase::First, Phase::Second] {
                    let total = plan.phase_budget(phase).to_string();
                    w.write_record(["phase_budget", &plan.camp.to_string(), "", &phase.to_string(), &total])?;
                }
            }
            let objective = evaluate_two_phase(&network, &cent, &good, &bad);
            w.write_record(["objective", "", "", "", &objective.to_string()])?;
            w.flush()?;
        }
        Command::StrategyDep { net, budgets, camps, max_nodes } => {
            let network = net.network(ValidationMode::Dependency)?;
            let b = budgets.budgets()?;
            let coeffs = DependencyCoefficients::new(&network)?;
            let mut w = output(&net.out)?;
            w.write_record([
                "kind", "good_alpha", "good_beta", "bad_gamma", "bad_delta", "probability", "kg1", "kg2", "kb1", "kb2",
                "value",
            ])?;
            if camps == 1 {
                let (p, value) = single_camp_optimal(&coeffs, b.of(Camp::Good))?;
                let [a, bt] = choice_fields(p.choice());
                w.write_record(["value", "", "", "", "", "", "", "", "", "", &value.to_string()])?;
                w.write_record([
                    "profile", &a, &bt, "", "", "1", &p.k1.to_string(), &p.k2.to_string(), "0", "0", &value.to_string(),
                ])?;
            } else {
                let sol = two_camp_equilibrium(&coeffs, b.of(Camp::Good), b.of(Camp::Bad), max_nodes)?;
                w.write_record(["value", "", "", "", "", "", "", "", "", "", &sol.value.to_string()])?;
                for (i, &p) in sol.row_mix.iter().enumerate().filter(|(_, &p)| p > 0.0) {
                    let [a, bt] = choice_fields(sol.strategies[i]);
                    w.write_record(["good_support", &a, &bt, "", "", &p.to_string(), "", "", "", "", ""])?;
                }
                for (j, &q) in sol.col_mix.iter().enumerate().filter(|(_, &q)| q > 0.0) {
                    let [c, d] = choice_fields(sol.strategies[j]);
                    w.write_record(["bad_support", "", "", &c, &d, &q.to_string(), "", "", "", "", ""])?;
                }
                for (i, j, prob) in sol.support_pairs() {
                    let o = profile_utility(&coeffs, sol.strategies[i], sol.strategies[j], sol.kg, sol.kb)?;
                    let [a, bt] = choice_fields(sol.strategies[i]);
                    let [c, d] = choice_fields(sol.strategies[j]);
                    w.write_record([
                        "profile".to_string(),
                        a,
                        bt,
                        c,
                        d,
                        prob.to_string(),
                        o.good.k1.to_string(),
                        o.good.k2.to_string(),
                        o.bad.k1.to_string(),
                        o.bad.k2.to_string(),
                        o.value.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Command::Sweep { graph, budgets, mode, camp_base, w0_grid, max_nodes, out } => {
            let scheme = WeightScheme::new(camp_base, w0_grid.unwrap_or_else(default_grid))?;
            let topo = graph.topology()?;
            let options = SweepOptions {
                cap: budgets.cap,
                max_nodes,
                ..SweepOptions::default()
            };
            if mode != SweepMode::Bounded && budgets.bounded {
                log::warn!("--bounded only affects the fixed-weight sweep; use --mode bounded");
            }
            let rows = sweep_w0(&topo, &scheme, mode, budgets.budgets()?, &options)?;
            let sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
                None => Box::new(io::stdout().lock()),
            };
            write_sweep_csv(&rows, sink)?;
        }
    }
    Ok(())
}
