//! Per-run results.

use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::engine::Event;
use crate::model::{CloudletId, Mi, SimTime, VmId};
use crate::scheduler::Slice;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudletRecord {
    pub cloudlet_id: CloudletId,
    pub length: Mi,
    pub vm_id: Option<VmId>,
    pub attempts: u32,
    pub retransmissions: u32,
    pub delivered_at: Option<SimTime>,
    pub completion_time: Option<SimTime>,
    /// Completion minus arrival at the VM.
    pub turnaround: Option<SimTime>,
    /// Share of the execution cost: VM total cost times this cloudlet's service time.
    pub execution_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VmRecord {
    pub vm_id: VmId,
    pub rate: f64,
    pub total_cost: f64,
    pub created_at: SimTime,
    pub selected: bool,
    pub cloudlets: usize,
    pub busy_time: SimTime,
    pub idle_time: SimTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceRecord {
    pub vm_id: VmId,
    #[serde(flatten)]
    pub slice: Slice,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RunTotals {
    pub makespan: SimTime,
    /// Time the last cloudlet was delivered to its VM.
    pub transfer_completion: SimTime,
    pub total_execution_cost: f64,
    pub total_attempts: u64,
    pub total_retransmissions: u64,
    pub mean_turnaround: SimTime,
    pub executed_cloudlets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub schema_version: u32,
    pub status: RunStatus,
    pub error: Option<String>,
    pub rng_seed: u64,
    pub config: ScenarioConfig,
    pub cloudlets: Vec<CloudletRecord>,
    pub vms: Vec<VmRecord>,
    pub totals: RunTotals,
    pub slices: Vec<SliceRecord>,
    pub events: Vec<Event>,
}

impl SimulationReport {
    pub fn is_completed(&self) -> bool {
        self.status == RunStatus::Completed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn frame_arrivals(&self) -> Vec<(SimTime, CloudletId)> {
        self.events
            .iter()
            .filter_map(|e| e.frame_arrival().map(|id| (e.at, id)))
            .collect()
    }
}

/// Sum over VMs of total cost times busy time.
pub fn compute_execution_cost(vms: &[VmRecord]) -> f64 {
    vms.iter().map(|v| v.total_cost * v.busy_time).sum()
}
