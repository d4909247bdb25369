//! Time sweeps, hierarchy tables, success surfaces and DWF evolutions, with
//! CSV rendering. Everything here is deterministic for a given config.

use rayon::prelude::*;

use crate::channels::{apply_kraus, kraus_set, ChannelSpec, Locality};
use crate::error::{Error, Result};
use crate::measures::{report_with, CorrelationReport, DiscordOptions};
use crate::numerics::DensityMatrix;
use crate::phase_space::{dwf, DwfGrid, QuantumNet};
use crate::protection::{
    optimize_pq, protect_evolve, success_surface, FilterStrengths, Objective, PqOptimum,
};
use crate::states::{BellState, StateLabel, TwoQubitNs};

/// Default reference time for hierarchy tables.
pub const REFERENCE_T: f64 = 10.0;
/// Values closer than this are reported as tied ("≈").
pub const ORDER_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Filters {
    Off,
    /// Each state's reference (p, q).
    Reference,
    Fixed(FilterStrengths),
}

impl Filters {
    pub fn strengths_for(&self, state: StateLabel) -> Result<FilterStrengths> {
        match *self {
            Filters::Off => Ok(FilterStrengths::OFF),
            Filters::Reference => {
                let (p, q) = state.reference_pq().ok_or_else(|| {
                    Error::InvalidParameter(format!("no reference (p, q) for state {state}"))
                })?;
                FilterStrengths::new(p, q)
            }
            Filters::Fixed(s) => FilterStrengths::new(s.p, s.q),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub state: StateLabel,
    pub channel: ChannelSpec,
    pub t_start: f64,
    pub t_end: f64,
    pub t_steps: usize,
    pub filters: Filters,
    pub discord: DiscordOptions,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        if !self.state.is_two_qubit() {
            return Err(Error::InvalidParameter(format!(
                "state {} is not a two-qubit state",
                self.state
            )));
        }
        if !(self.t_start >= 0.0 && self.t_end > self.t_start) {
            return Err(Error::InvalidParameter(format!(
                "need 0 ≤ t_start < t_end (got {}, {})",
                self.t_start, self.t_end
            )));
        }
        if self.t_steps < 2 {
            return Err(Error::InvalidParameter("need at least 2 time steps".into()));
        }
        Ok(())
    }
}

/// Evenly spaced times including both ends; a single point if `steps == 1`.
pub fn time_points(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![t0];
    }
    let dt = (t1 - t0) / (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            if k == steps - 1 {
                t1
            } else {
                t0 + k as f64 * dt
            }
        })
        .collect()
}

/// Full report for one (state, channel, t, filters) point.
pub fn evaluate_point(
    state: StateLabel,
    channel: &ChannelSpec,
    t: f64,
    strengths: FilterStrengths,
    discord: DiscordOptions,
) -> Result<CorrelationReport> {
    let out = protect_evolve(&state.density(), channel, t, strengths)?;
    report_with(&out.state, out.success_probability, discord)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub report: CorrelationReport,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let s = cfg.filters.strengths_for(cfg.state)?;
    time_points(cfg.t_start, cfg.t_end, cfg.t_steps)
        .into_par_iter()
        .map(|t| {
            Ok(SweepRow {
                t,
                report: evaluate_point(cfg.state, &cfg.channel, t, s, cfg.discord)?,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("t,{}\n", CorrelationReport::COLUMNS.join(","));
    for row in rows {
        out.push_str(&format!(
            "{},{}\n",
            row.t,
            row.report.csv_fields().join(",")
        ));
    }
    out
}

/// States compared in the hierarchy tables, in display order.
pub const TABLE_STATES: [StateLabel; 4] = [
    StateLabel::TwoQubit(TwoQubitNs::Ns1),
    StateLabel::TwoQubit(TwoQubitNs::Ns2),
    StateLabel::TwoQubit(TwoQubitNs::Ns3p),
    StateLabel::Bell(BellState::PhiPlus),
];

/// (report column, larger-is-better).
pub const TABLE_MEASURES: [(&str, bool); 6] = [
    ("concurrence", true),
    ("discord", true),
    ("steering_2", true),
    ("steering_3", true),
    ("max_fidelity", true),
    ("fidelity_deviation", false),
];

fn display_name(s: StateLabel) -> &'static str {
    match s {
        StateLabel::TwoQubit(TwoQubitNs::Ns1) => "NS1",
        StateLabel::TwoQubit(TwoQubitNs::Ns2) => "NS2",
        StateLabel::TwoQubit(TwoQubitNs::Ns3) => "NS3",
        StateLabel::TwoQubit(TwoQubitNs::Ns3p) => "NS3'",
        StateLabel::TwoQubit(TwoQubitNs::Ns3pp) => "NS3''",
        StateLabel::Bell(_) => "BS",
        _ => "?",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyRow {
    pub measure: &'static str,
    pub higher_is_better: bool,
    pub values: Vec<(StateLabel, Option<f64>)>,
    pub ordering: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyTable {
    pub channel: ChannelSpec,
    pub reference_t: f64,
    pub filters: bool,
    pub rows: Vec<HierarchyRow>,
}

impl HierarchyTable {
    pub fn value(&self, measure: &str, state: StateLabel) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.measure == measure)?
            .values
            .iter()
            .find(|(s, _)| *s == state)?
            .1
    }
}

/// Best-first ordering string; neighbours within the margin are joined by "≈".
pub fn ordering_string(values: &[(StateLabel, Option<f64>)], higher_is_better: bool) -> String {
    let mut present: Vec<(usize, StateLabel, f64)> = values
        .iter()
        .enumerate()
        .filter_map(|(i, (s, v))| v.map(|v| (i, *s, v)))
        .collect();
    present.sort_by(|a, b| {
        let o = if higher_is_better {
            b.2.total_cmp(&a.2)
        } else {
            a.2.total_cmp(&b.2)
        };
        o.then(a.0.cmp(&b.0))
    });
    let rel = if higher_is_better { " > " } else { " < " };
    let mut s = String::new();
    for (k, (_, st, v)) in present.iter().enumerate() {
        if k > 0 {
            let prev = present[k - 1].2;
            s.push_str(if (prev - v).abs() <= ORDER_MARGIN {
                " ≈ "
            } else {
                rel
            });
        }
        s.push_str(display_name(*st));
    }
    for (st, v) in values {
        if v.is_none() {
            s.push_str(&format!(" ; {} n/a", display_name(*st)));
        }
    }
    s
}

pub fn run_table(channel: &ChannelSpec, reference_t: f64, filters: bool) -> Result<HierarchyTable> {
    channel.validate()?;
    if !(reference_t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "reference time must be positive, got {reference_t}"
        )));
    }
    let mode = if filters {
        Filters::Reference
    } else {
        Filters::Off
    };
    let reports: Vec<CorrelationReport> = TABLE_STATES
        .par_iter()
        .map(|&s| {
            evaluate_point(
                s,
                channel,
                reference_t,
                mode.strengths_for(s)?,
                DiscordOptions::default(),
            )
        })
        .collect::<Result<_>>()?;
    let rows = TABLE_MEASURES
        .iter()
        .map(|&(m, hib)| {
            let values: Vec<(StateLabel, Option<f64>)> = TABLE_STATES
                .iter()
                .zip(&reports)
                .map(|(&s, r)| (s, r.get(m)))
                .collect();
            HierarchyRow {
                measure: m,
                higher_is_better: hib,
                ordering: ordering_string(&values, hib),
                values,
            }
        })
        .collect();
    Ok(HierarchyTable {
        channel: *channel,
        reference_t,
        filters,
        rows,
    })
}

pub fn table_csv(tables: &[HierarchyTable]) -> String {
    let mut out = String::from("measure,filters,t");
    for s in TABLE_STATES {
        out.push_str(&format!(",{s}"));
    }
    out.push_str(",ordering\n");
    for tbl in tables {
        for row in &tbl.rows {
            out.push_str(&format!(
                "{},{},{}",
                row.measure,
                if tbl.filters { "on" } else { "off" },
                tbl.reference_t
            ));
            for (_, v) in &row.values {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(&v.to_string());
                }
            }
            out.push_str(&format!(",{}\n", row.ordering));
        }
    }
    out
}

/// Grid-search (p, q) per state for `objective` at time `t`.
pub fn run_optimize(
    states: &[StateLabel],
    channel: &ChannelSpec,
    t: f64,
    step: f64,
    objective: Objective,
) -> Result<Vec<(StateLabel, PqOptimum)>> {
    channel.validate()?;
    states
        .iter()
        .map(|&s| {
            if !s.is_two_qubit() {
                return Err(Error::InvalidParameter(format!(
                    "state {s} is not two-qubit"
                )));
            }
            Ok((s, optimize_pq(&s.density(), channel, t, step, objective)?))
        })
        .collect()
}

pub fn optimize_csv(rows: &[(StateLabel, PqOptimum)]) -> String {
    let mut out = String::from("state,p,q,objective,p_succ\n");
    for (s, o) in rows {
        out.push_str(&format!(
            "{s},{},{},{},{}\n",
            o.strengths.p, o.strengths.q, o.objective, o.success_probability
        ));
    }
    out
}

pub fn run_surface(state: StateLabel, channel: &ChannelSpec, t: f64, step: f64) -> Result<String> {
    if !state.is_two_qubit() {
        return Err(Error::InvalidParameter(format!(
            "state {state} is not two-qubit"
        )));
    }
    let cells = success_surface(&state.density(), channel, t, step)?;
    let mut out = String::from("p,q,p_succ\n");
    for c in cells {
        out.push_str(&format!("{},{},{}\n", c.p, c.q, c.success_probability));
    }
    Ok(out)
}

/// DWF of `state` evolved under `channel` (no filters) at each time.
pub fn run_dwf(
    state: StateLabel,
    channel: &ChannelSpec,
    times: &[f64],
    net: &QuantumNet,
) -> Result<Vec<(f64, DwfGrid)>> {
    let rho0 = state.density();
    if rho0.dim() != net.n {
        return Err(Error::DimensionMismatch {
            expected: net.n,
            found: rho0.dim(),
        });
    }
    let (local_dim, loc) = if net.n == 4 {
        (2, Locality::TwoLocal)
    } else {
        (net.n, Locality::Single)
    };
    times
        .par_iter()
        .map(|&t| {
            let ks = kraus_set(channel, t, local_dim)?;
            let rho = DensityMatrix::from_unnormalized(apply_kraus(rho0.matrix(), &ks, loc)?)?;
            Ok((t, dwf(&rho, net)?))
        })
        .collect()
}

pub fn dwf_csv(rows: &[(f64, DwfGrid)]) -> String {
    let mut out = String::from("t,q,p,w,sum\n");
    for (t, g) in rows {
        let sum = g.sum();
        for q in 0..g.n {
            for p in 0..g.n {
                out.push_str(&format!("{t},{q},{p},{},{sum}\n", g.get((q, p))));
            }
        }
    }
    out
}
