use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use nqs_core::channels::ChannelSpec;
use nqs_core::experiments::{
    dwf_csv, optimize_csv, run_dwf, run_optimize, run_surface, run_sweep, run_table, sweep_csv,
    table_csv, time_points, Filters, SweepConfig, REFERENCE_T, TABLE_STATES,
};
use nqs_core::measures::DiscordOptions;
use nqs_core::phase_space::QuantumNet;
use nqs_core::protection::{optimize_pq, FilterStrengths, Objective};
use nqs_core::states::StateLabel;

#[derive(Parser)]
#[command(
    name = "nqs",
    version,
    about = "Negative quantum states under non-Markovian noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation measures over a time range (CSV: t, measures, p_succ).
    Sweep(Opts),
    /// Grid-search the filter strengths (p, q).
    Optimize(Opts),
    /// Hierarchy orderings of NS1, NS2, NS3', phi+ at a reference time.
    Table(Opts),
    /// Success probability over the (p, q) grid.
    Surface(Opts),
    /// Discrete Wigner function over a time range.
    Dwf(Opts),
}

#[derive(Clone, Copy, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum ChannelKind {
    Ad,
    Rtn,
    Depol,
    Identity,
}

#[derive(Clone, Copy, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum FilterMode {
    On,
    Off,
    Both,
}

#[derive(Clone, Copy, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
enum ObjectiveKind {
    Concurrence,
    MaxFidelity,
}

/// Every option may also come from `--config`; flags win.
#[derive(Args, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Opts {
    /// JSON config file with any of the options below (snake_case keys).
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// ns1|ns2|ns3|ns3p|ns3pp|phi+|phi-|psi+|psi-|qubit-ns1|qutrit-ns1|qutrit-ns2|mixed2|mixed3|mixed4
    #[arg(long)]
    state: Option<String>,
    /// Channel family; `--config` also accepts a full `{"type": ...}` object.
    #[arg(long, value_enum)]
    #[serde(skip)]
    channel: Option<ChannelKind>,
    #[arg(skip)]
    #[serde(rename = "channel")]
    channel_spec: Option<ChannelJson>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long = "gamma-rtn")]
    gamma_rtn: Option<f64>,
    #[arg(long = "p-depol")]
    p_depol: Option<f64>,
    /// Weak-measurement strength.
    #[arg(long)]
    p: Option<f64>,
    /// Reversal strength.
    #[arg(long)]
    q: Option<f64>,
    /// Pick (p, q) by grid search at t = 0 (concurrence).
    #[arg(long)]
    auto_pq: bool,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Single time for table/surface/optimize.
    #[arg(long)]
    t: Option<f64>,
    /// Grid step for optimize/surface.
    #[arg(long)]
    step: Option<f64>,
    /// Table filter mode; `on` uses each state's reference (p, q).
    #[arg(long, value_enum)]
    filters: Option<FilterMode>,
    #[arg(long, value_enum)]
    objective: Option<ObjectiveKind>,
    /// canonical|ns1 (ns1 only for two qubits).
    #[arg(long)]
    net: Option<String>,
    /// Output path; stdout if absent.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

/// Channel as given in a config file: either a family name or a full spec.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ChannelJson {
    Kind(ChannelKind),
    Spec(ChannelSpec),
}

impl Opts {
    fn merged(self) -> Result<Opts> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let file: Opts =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(Opts {
            config: self.config,
            state: self.state.or(file.state),
            channel: self.channel,
            channel_spec: if self.channel.is_some() {
                None
            } else {
                file.channel_spec
            },
            g: self.g.or(file.g),
            gamma: self.gamma.or(file.gamma),
            b: self.b.or(file.b),
            gamma_rtn: self.gamma_rtn.or(file.gamma_rtn),
            p_depol: self.p_depol.or(file.p_depol),
            p: self.p.or(file.p),
            q: self.q.or(file.q),
            auto_pq: self.auto_pq || file.auto_pq,
            t0: self.t0.or(file.t0),
            t1: self.t1.or(file.t1),
            steps: self.steps.or(file.steps),
            t: self.t.or(file.t),
            step: self.step.or(file.step),
            filters: self.filters.or(file.filters),
            objective: self.objective.or(file.objective),
            net: self.net.or(file.net),
            out: self.out,
        })
    }

    fn state(&self) -> Result<StateLabel> {
        let s = self.state.as_deref().ok_or_else(|| {
            anyhow!(
                "--state is required; valid options: {}",
                StateLabel::ALL.join(", ")
            )
        })?;
        Ok(s.parse()?)
    }

    fn channel(&self) -> Result<ChannelSpec> {
        let kind = match (&self.channel, &self.channel_spec) {
            (Some(k), _) => *k,
            (None, Some(ChannelJson::Spec(spec))) => return Ok(*spec),
            (None, Some(ChannelJson::Kind(k))) => *k,
            (None, None) => bail!("--channel is required; valid options: ad, rtn, depol, identity"),
        };
        let spec = match kind {
            ChannelKind::Identity => ChannelSpec::Identity,
            ChannelKind::Depol => ChannelSpec::Depolarizing {
                p: self
                    .p_depol
                    .ok_or_else(|| anyhow!("--p-depol is required for depol"))?,
            },
            ChannelKind::Ad => {
                let ChannelSpec::Ad { g, gamma } = ChannelSpec::NM_AD else {
                    unreachable!()
                };
                ChannelSpec::Ad {
                    g: self.g.unwrap_or(g),
                    gamma: self.gamma.unwrap_or(gamma),
                }
            }
            ChannelKind::Rtn => {
                let ChannelSpec::Rtn { b, gamma } = ChannelSpec::NM_RTN else {
                    unreachable!()
                };
                ChannelSpec::Rtn {
                    b: self.b.unwrap_or(b),
                    gamma: self.gamma_rtn.unwrap_or(gamma),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    fn times(&self) -> (f64, f64, usize) {
        (
            self.t0.unwrap_or(0.0),
            self.t1.unwrap_or(10.0),
            self.steps.unwrap_or(101),
        )
    }

    fn filters(&self, state: StateLabel) -> Result<Filters> {
        if self.auto_pq {
            if self.p.is_some() || self.q.is_some() {
                bail!("--auto-pq conflicts with --p/--q");
            }
            let best = optimize_pq(
                &state.density(),
                &ChannelSpec::Identity,
                0.0,
                self.step.unwrap_or(0.01),
                Objective::Concurrence,
            )?;
            return Ok(Filters::Fixed(best.strengths));
        }
        match (self.p, self.q) {
            (None, None) => Ok(Filters::Off),
            (p, q) => Ok(Filters::Fixed(FilterStrengths::new(
                p.unwrap_or(0.0),
                q.unwrap_or(0.0),
            )?)),
        }
    }

    fn objective(&self) -> Objective {
        match self.objective.unwrap_or(ObjectiveKind::Concurrence) {
            ObjectiveKind::Concurrence => Objective::Concurrence,
            ObjectiveKind::MaxFidelity => Objective::MaximalFidelity,
        }
    }
}

fn run(cmd: Command) -> Result<(String, Option<PathBuf>)> {
    let (opts, f): (Opts, fn(&Opts) -> Result<String>) = match cmd {
        Command::Sweep(o) => (o, sweep),
        Command::Optimize(o) => (o, optimize),
        Command::Table(o) => (o, table),
        Command::Surface(o) => (o, surface),
        Command::Dwf(o) => (o, dwf_cmd),
    };
    let opts = opts.merged()?;
    let csv = f(&opts)?;
    Ok((csv, opts.out))
}

fn sweep(o: &Opts) -> Result<String> {
    let state = o.state()?;
    let (t_start, t_end, t_steps) = o.times();
    let cfg = SweepConfig {
        state,
        channel: o.channel()?,
        t_start,
        t_end,
        t_steps,
        filters: o.filters(state)?,
        discord: DiscordOptions::default(),
    };
    Ok(sweep_csv(&run_sweep(&cfg)?))
}

fn optimize(o: &Opts) -> Result<String> {
    let states = match &o.state {
        Some(_) => vec![o.state()?],
        None => TABLE_STATES.to_vec(),
    };
    let channel = if o.channel.is_some() || o.channel_spec.is_some() {
        o.channel()?
    } else {
        ChannelSpec::Identity
    };
    let rows = run_optimize(
        &states,
        &channel,
        o.t.unwrap_or(0.0),
        o.step.unwrap_or(0.01),
        o.objective(),
    )?;
    Ok(optimize_csv(&rows))
}

fn table(o: &Opts) -> Result<String> {
    let channel = o.channel()?;
    let t = o.t.unwrap_or(REFERENCE_T);
    let modes: &[bool] = match o.filters.unwrap_or(FilterMode::Both) {
        FilterMode::On => &[true],
        FilterMode::Off => &[false],
        FilterMode::Both => &[false, true],
    };
    let tables = modes
        .iter()
        .map(|&f| run_table(&channel, t, f))
        .collect::<nqs_core::Result<Vec<_>>>()?;
    Ok(table_csv(&tables))
}

fn surface(o: &Opts) -> Result<String> {
    Ok(run_surface(
        o.state()?,
        &o.channel()?,
        o.t.unwrap_or(REFERENCE_T),
        o.step.unwrap_or(0.01),
    )?)
}

fn dwf_cmd(o: &Opts) -> Result<String> {
    let state = o.state()?;
    let (t0, t1, steps) = o.times();
    if t1 < t0 {
        bail!("--t1 must not be below --t0");
    }
    let steps = if t1 == t0 { 1 } else { steps };
    let net = QuantumNet::by_label(state.dim(), o.net.as_deref().unwrap_or("canonical"))?;
    let rows = run_dwf(state, &o.channel()?, &time_points(t0, t1, steps), &net)?;
    Ok(dwf_csv(&rows))
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((csv, out)) => {
            let res = match out {
                Some(path) => {
                    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))
                }
                None => std::io::stdout()
                    .write_all(csv.as_bytes())
                    .map_err(Into::into),
            };
            if let Err(e) = res {
                eprintln!("error: {e:#}");
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
