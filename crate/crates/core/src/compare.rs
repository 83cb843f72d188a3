//! FCFS versus round-robin on one workload.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::engine::{run_scenario, RunError};
use crate::report::{RunStatus, SimulationReport, SCHEMA_VERSION};
use crate::scheduler::Policy;

/// Round robin minus FCFS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolicyDeltas {
    pub total_execution_cost: f64,
    pub makespan: f64,
    pub mean_turnaround: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub status: RunStatus,
    pub fcfs: SimulationReport,
    pub round_robin: SimulationReport,
    /// Absent when either side failed.
    pub deltas: Option<PolicyDeltas>,
}

impl ComparisonReport {
    pub fn sides(&self) -> [&SimulationReport; 2] {
        [&self.fcfs, &self.round_robin]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

/// Runs `config` once per policy, identical in everything but the policy.
/// The two runs execute on separate threads.
pub fn compare_policies(config: &ScenarioConfig) -> ComparisonReport {
    let fcfs_cfg = config.clone().with_policy(Policy::Fcfs);
    let rr_cfg = config.clone().with_policy(Policy::RoundRobin);
    let (fcfs, rr) = thread::scope(|s| {
        let a = s.spawn(|| run_scenario(&fcfs_cfg));
        let b = s.spawn(|| run_scenario(&rr_cfg));
        (
            a.join().expect("fcfs run panicked"),
            b.join().expect("round-robin run panicked"),
        )
    });
    let unwrap = |r: Result<SimulationReport, RunError>| r.unwrap_or_else(|e| *e.report);
    let fcfs = unwrap(fcfs);
    let round_robin = unwrap(rr);
    let ok = fcfs.is_completed() && round_robin.is_completed();
    let deltas = ok.then_some(PolicyDeltas {
        total_execution_cost: round_robin.totals.total_execution_cost
            - fcfs.totals.total_execution_cost,
        makespan: round_robin.totals.makespan - fcfs.totals.makespan,
        mean_turnaround: round_robin.totals.mean_turnaround - fcfs.totals.mean_turnaround,
    });
    ComparisonReport {
        schema_version: SCHEMA_VERSION,
        status: if ok {
            RunStatus::Completed
        } else {
            RunStatus::Failed
        },
        fcfs,
        round_robin,
        deltas,
    }
}
