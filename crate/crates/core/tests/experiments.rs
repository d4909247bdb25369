use nqs_core::channels::ChannelSpec;
use nqs_core::experiments::{
    dwf_csv, run_dwf, run_surface, run_sweep, run_table, sweep_csv, time_points, Filters,
    SweepConfig, TABLE_STATES,
};
use nqs_core::measures::DiscordOptions;
use nqs_core::phase_space::QuantumNet;
use nqs_core::states::{BellState, StateLabel, TwoQubitNs};

fn cfg(state: StateLabel, channel: ChannelSpec, t1: f64, steps: usize) -> SweepConfig {
    SweepConfig {
        state,
        channel,
        t_start: 0.0,
        t_end: t1,
        t_steps: steps,
        filters: Filters::Off,
        discord: DiscordOptions::default(),
    }
}

const BELL: StateLabel = StateLabel::Bell(BellState::PhiPlus);

#[test]
fn two_steps_two_rows() {
    let rows = run_sweep(&cfg(TABLE_STATES[0], ChannelSpec::NM_AD, 1.0, 2)).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(sweep_csv(&rows).lines().count(), 3);
}

#[test]
fn ns3p_matches_bell_at_zero() {
    let ns = run_sweep(&cfg(
        StateLabel::TwoQubit(TwoQubitNs::Ns3p),
        ChannelSpec::NM_AD,
        1.0,
        2,
    ))
    .unwrap();
    let bs = run_sweep(&cfg(BELL, ChannelSpec::NM_AD, 1.0, 2)).unwrap();
    assert!((ns[0].report.concurrence - bs[0].report.concurrence).abs() < 2e-2);
}

#[test]
fn bell_concurrence_oscillates_under_rtn() {
    let rows = run_sweep(&cfg(BELL, ChannelSpec::NM_RTN, 200.0, 401)).unwrap();
    let c: Vec<f64> = rows.iter().map(|r| r.report.concurrence).collect();
    let rises = c.windows(2).filter(|w| w[1] > w[0] + 1e-9).count();
    let falls = c.windows(2).filter(|w| w[1] < w[0] - 1e-9).count();
    assert!(rises > 0 && falls > 0);
}

#[test]
fn table_matches_sweep_exactly() {
    for filters in [false, true] {
        let tbl = run_table(&ChannelSpec::NM_RTN, 4.0, filters).unwrap();
        for s in TABLE_STATES {
            let mut c = cfg(s, ChannelSpec::NM_RTN, 4.0, 2);
            if filters {
                c.filters = Filters::Reference;
            }
            let rows = run_sweep(&c).unwrap();
            let rep = rows.last().unwrap().report;
            for row in &tbl.rows {
                assert_eq!(tbl.value(row.measure, s), rep.get(row.measure));
            }
        }
    }
}

#[test]
fn table_rejects_nonpositive_time() {
    assert!(run_table(&ChannelSpec::NM_AD, 0.0, false).is_err());
}

#[test]
fn surface_grid() {
    let csv = run_surface(BELL, &ChannelSpec::NM_AD, 0.0, 0.5).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "p,q,p_succ");
    let origin: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&origin[..2], &[0.0, 0.0]);
    assert!((origin[2] - 1.0).abs() < 1e-12);
}

#[test]
fn dwf_qubit_negative_at_zero() {
    let net = QuantumNet::canonical(2).unwrap();
    let rows = run_dwf(StateLabel::QubitNs1, &ChannelSpec::NM_AD, &[0.0, 5.0], &net).unwrap();
    assert!(rows[0].1.min() < 0.0);
    for (_, g) in &rows {
        assert!((g.sum() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn dwf_mixed_is_flat_under_rtn() {
    for n in [2, 3, 4] {
        let net = QuantumNet::canonical(n).unwrap();
        let times = time_points(0.0, 30.0, 7);
        let rows = run_dwf(StateLabel::Mixed(n), &ChannelSpec::NM_RTN, &times, &net).unwrap();
        for (_, g) in &rows {
            for &w in &g.values {
                assert!((w - 1.0 / (n * n) as f64).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn dwf_single_block() {
    let net = QuantumNet::canonical(4).unwrap();
    let rows = run_dwf(BELL, &ChannelSpec::NM_AD, &time_points(2.0, 2.0, 1), &net).unwrap();
    assert_eq!(dwf_csv(&rows).lines().count(), 17);
}

#[test]
fn dwf_dimension_checked() {
    let net = QuantumNet::canonical(3).unwrap();
    assert!(run_dwf(BELL, &ChannelSpec::NM_AD, &[0.0], &net).is_err());
}
