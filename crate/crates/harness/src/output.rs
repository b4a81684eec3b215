//! CSV and JSON writers for match reports.

use std::io::Write;

use serde::Serialize;

use crate::tournament::{GameResult, MatchReport};
use crate::HarnessError;

/// Header row: `seed,seat_perm,winner,reward_0,reward_1[,reward_2],plies,millis`.
pub fn csv_header(players: usize) -> Vec<String> {
    let mut h = vec!["seed".to_string(), "seat_perm".into(), "winner".into()];
    h.extend((0..players).map(|i| format!("reward_{i}")));
    h.extend(["plies".to_string(), "millis".into()]);
    h
}

/// One row per game. `seat_perm` lists the agent in each seat joined by
/// `-`; `winner` is the winning agent's index, empty when rewards are shared.
pub fn write_csv<W: Write>(
    out: W,
    players: usize,
    results: &[GameResult],
    timing: bool,
) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(players))?;
    for r in results {
        let mut row = vec![
            r.seed.to_string(),
            r.seat_perm
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join("-"),
            r.winner().map(|a| a.to_string()).unwrap_or_default(),
        ];
        row.extend(r.rewards.iter().map(|x| x.to_string()));
        row.push(r.plies.to_string());
        row.push(if timing { r.millis } else { 0 }.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Plain-text summary, one line per agent.
pub fn summary(report: &MatchReport) -> String {
    let mut s = format!(
        "{}: {} games, {} playouts per move, {} codes\n",
        report.game, report.games, report.playouts, report.code_mode
    );
    for (i, a) in report.agents.iter().enumerate() {
        let seats: Vec<String> = a
            .seats
            .iter()
            .map(|x| {
                format!(
                    "seat {} {:.2}% ({})",
                    x.seat,
                    100.0 * x.mean_reward,
                    x.games
                )
            })
            .collect();
        s += &format!(
            "  agent {i} {:<28} {:6.2} ± {:.2}%  wins {:4}  [{}]\n",
            a.agent,
            100.0 * a.mean_reward,
            100.0 * a.half_width,
            a.wins,
            seats.join(", ")
        );
    }
    s
}
