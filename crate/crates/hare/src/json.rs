//! JSON documents written next to a reduced instance.

use hare_core::compress::{Assignment, Reduction};
use hare_core::fasthare::RunReport;
use hare_core::model::Spin;
use serde::{Deserialize, Serialize};

/// The reduction function: how every original spin is recovered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub n: usize,
    pub assignments: Vec<AssignmentDoc>,
    pub offset: i64,
}

/// One original spin. `rep` is the 1-based spin of the reduced instance it
/// follows (0 when fixed); `sign` 1 means it takes the opposite value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub spin: usize,
    pub rep: usize,
    pub sign: u8,
    pub fixed: Option<i64>,
}

impl MapDoc {
    pub fn new(r: &Reduction) -> Self {
        MapDoc {
            n: r.num_original(),
            assignments: r
                .assignments
                .iter()
                .enumerate()
                .map(|(i, a)| AssignmentDoc {
                    spin: i + 1,
                    rep: a.rep.map_or(0, |k| k + 1),
                    sign: a.sign.into(),
                    fixed: a.fixed.map(Spin::value),
                })
                .collect(),
            offset: r.offset,
        }
    }

    pub fn assignments(&self) -> Vec<Assignment> {
        self.assignments
            .iter()
            .map(|a| Assignment {
                rep: a.rep.checked_sub(1),
                sign: a.sign == 1,
                fixed: a.fixed.map(|v| if v > 0 { Spin::Up } else { Spin::Down }),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub rounds: usize,
    pub merges: usize,
    pub flips: usize,
    pub weak_merges: usize,
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub fixed_spins: usize,
    pub offset: i64,
    pub reduction_ratio_logical: f64,
    pub time_ms: f64,
    pub refreshes: usize,
    pub work: u64,
}

impl ReportDoc {
    pub fn new(r: &RunReport, time_ms: f64) -> Self {
        ReportDoc {
            rounds: r.rounds,
            merges: r.merges,
            flips: r.flips,
            weak_merges: r.weak_merges,
            nodes_before: r.nodes_before,
            nodes_after: r.nodes_after,
            edges_before: r.edges_before,
            edges_after: r.edges_after,
            fixed_spins: r.fixed_spins,
            offset: r.offset,
            reduction_ratio_logical: r.reduction_ratio(),
            time_ms,
            refreshes: r.refreshes,
            work: r.work,
        }
    }
}

pub fn to_string(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}
