//! Domain entities shared by every stage of a run, plus splitting a task into
//! cloudlets and reassembling it once they have all executed.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{total_cost, BandwidthMode, CostWeights};

/// Simulation time, in abstract time-units.
pub type SimTime = f64;

/// Work amount in machine instructions (MI).
pub type Mi = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaskId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CloudletId(pub u32);

impl fmt::Display for CloudletId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VmId(pub u32);

impl fmt::Display for VmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vm{}", self.0)
    }
}

/// A unit of user work submitted to the cloud coordinator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub id: TaskId,
    pub total_length: Mi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CloudletStatus {
    Created,
    Delivered,
    Executed,
}

/// A fixed-size fragment of a task, the unit of transfer and execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cloudlet {
    pub id: CloudletId,
    pub length: Mi,
    pub parent: TaskId,
    pub status: CloudletStatus,
}

impl Cloudlet {
    pub fn new(id: u32, length: Mi, parent: TaskId) -> Self {
        Self {
            id: CloudletId(id),
            length,
            parent,
            status: CloudletStatus::Created,
        }
    }

    pub fn executed(mut self) -> Self {
        self.status = CloudletStatus::Executed;
        self
    }
}

/// Link characteristics between the VM manager and a VM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkMetrics {
    pub hop_count: u32,
    /// Fixed per-transfer delay in time-units.
    pub network_delay: f64,
    /// MI per time-unit; strictly positive.
    pub bandwidth: f64,
    pub security_cost: f64,
}

impl LinkMetrics {
    pub fn new(hop_count: u32, network_delay: f64, bandwidth: f64, security_cost: f64) -> Self {
        Self {
            hop_count,
            network_delay,
            bandwidth,
            security_cost,
        }
    }

    /// Returns the name of the first field that breaks the link invariants.
    pub fn invalid_field(&self) -> Option<(&'static str, &'static str)> {
        if !self.network_delay.is_finite() || self.network_delay < 0.0 {
            return Some(("network_delay", "must be finite and >= 0"));
        }
        if !self.bandwidth.is_finite() || self.bandwidth <= 0.0 {
            return Some(("bandwidth", "must be finite and > 0"));
        }
        if !self.security_cost.is_finite() || self.security_cost < 0.0 {
            return Some(("security_cost", "must be finite and >= 0"));
        }
        None
    }

    /// One-way latency of moving `length` MI across this link.
    pub fn latency(&self, length: Mi) -> SimTime {
        self.network_delay + length as f64 / self.bandwidth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VmState {
    Requested,
    Granted,
    Created,
    Busy,
    Idle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VirtualMachine {
    pub id: VmId,
    /// MI per time-unit.
    pub rate: f64,
    pub link: LinkMetrics,
    pub weights: CostWeights,
    pub bandwidth_mode: BandwidthMode,
    pub total_cost: f64,
    pub state: VmState,
    pub created_at: SimTime,
}

impl VirtualMachine {
    /// Recomputes the cost from the stored link and weights.
    pub fn recompute_cost(&self) -> f64 {
        total_cost(&self.link, &self.weights, self.bandwidth_mode)
    }

    pub fn is_available(&self) -> bool {
        matches!(self.state, VmState::Created | VmState::Idle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("task {0:?} has zero length")]
    ZeroLengthTask(TaskId),
    #[error("cloudlet size must be positive")]
    InvalidSize,
    #[error("task would split into more than u32::MAX cloudlets")]
    TooManyCloudlets,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombineError {
    #[error("cloudlet {0} is missing from the executed set")]
    MissingCloudlet(CloudletId),
    #[error("cloudlet {0} appears more than once in the executed set")]
    DuplicateCloudlet(CloudletId),
    #[error("cloudlet {0} has not executed")]
    NotExecuted(CloudletId),
    #[error("cloudlet {id} belongs to task {found:?}, expected {expected:?}")]
    ForeignCloudlet {
        id: CloudletId,
        found: TaskId,
        expected: TaskId,
    },
    #[error("no cloudlets to combine")]
    Empty,
}

/// Divides `task` into cloudlets of `cloudlet_size` MI; the last one carries
/// the remainder when the length does not divide evenly.
pub fn split_task(task: &Task, cloudlet_size: Mi) -> Result<Vec<Cloudlet>, SplitError> {
    if task.total_length == 0 {
        return Err(SplitError::ZeroLengthTask(task.id));
    }
    if cloudlet_size == 0 {
        return Err(SplitError::InvalidSize);
    }
    let full = task.total_length / cloudlet_size;
    let rem = task.total_length % cloudlet_size;
    let count = full + u64::from(rem > 0);
    if count > u64::from(u32::MAX) {
        return Err(SplitError::TooManyCloudlets);
    }
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..full {
        out.push(Cloudlet::new(i as u32, cloudlet_size, task.id));
    }
    if rem > 0 {
        out.push(Cloudlet::new(full as u32, rem, task.id));
    }
    Ok(out)
}

/// Reassembles the task `expected` from its executed cloudlets.
///
/// The executed set must cover IDs `0..n` exactly once. The smallest offending
/// ID is reported when it does not.
pub fn combine_cloudlets(executed: &[Cloudlet], expected: TaskId) -> Result<Task, CombineError> {
    if executed.is_empty() {
        return Err(CombineError::Empty);
    }
    let mut seen = BTreeSet::new();
    let mut dup: Option<CloudletId> = None;
    let mut total: Mi = 0;
    for c in executed {
        if c.parent != expected {
            return Err(CombineError::ForeignCloudlet {
                id: c.id,
                found: c.parent,
                expected,
            });
        }
        if c.status != CloudletStatus::Executed {
            return Err(CombineError::NotExecuted(c.id));
        }
        if !seen.insert(c.id) {
            dup = Some(dup.map_or(c.id, |d| d.min(c.id)));
            continue;
        }
        total += c.length;
    }
    if let Some(id) = dup {
        return Err(CombineError::DuplicateCloudlet(id));
    }
    // Dense IDs: the largest seen ID bounds the cloudlet count.
    let max = seen.iter().next_back().map(|c| c.0).unwrap_or(0);
    if let Some(hole) = (0..=max).map(CloudletId).find(|id| !seen.contains(id)) {
        return Err(CombineError::MissingCloudlet(hole));
    }
    Ok(Task {
        id: expected,
        total_length: total,
    })
}

/// Like [`combine_cloudlets`], but also checks the count against the number of
/// cloudlets the task was split into, catching a missing tail.
pub fn combine_expecting(
    executed: &[Cloudlet],
    expected: TaskId,
    count: usize,
) -> Result<Task, CombineError> {
    let task = combine_cloudlets(executed, expected)?;
    if executed.len() < count {
        return Err(CombineError::MissingCloudlet(CloudletId(executed.len() as u32)));
    }
    Ok(task)
}
