//! Per-VM total cost and the cost-ordered VM list used for dispatch.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{LinkMetrics, VirtualMachine, VmId, VmState};

/// Weights applied to hop count, network delay, bandwidth and security cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        Self::uniform(1.0)
    }
}

impl CostWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn uniform(w: f64) -> Self {
        Self::new(w, w, w, w)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.alpha * k, self.beta * k, self.gamma * k, self.delta * k)
    }

    pub fn validate(&self) -> Result<(), &'static str> {
        let all = [self.alpha, self.beta, self.gamma, self.delta];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err("weights must be finite and >= 0");
        }
        if all.iter().all(|w| *w == 0.0) {
            return Err("weights must not all be zero");
        }
        Ok(())
    }
}

/// How bandwidth enters the cost sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthMode {
    /// Raw bandwidth is added, so faster links cost more.
    #[default]
    Literal,
    /// `1 / bandwidth` is added instead.
    Reciprocal,
}

/// Weighted sum of the four link factors.
pub fn total_cost(link: &LinkMetrics, w: &CostWeights, mode: BandwidthMode) -> f64 {
    let bw = match mode {
        BandwidthMode::Literal => link.bandwidth,
        BandwidthMode::Reciprocal => 1.0 / link.bandwidth,
    };
    w.alpha * f64::from(link.hop_count)
        + w.beta * link.network_delay
        + w.gamma * bw
        + w.delta * link.security_cost
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("no virtual machines available for prioritization")]
    EmptyVmPool,
    #[error("{0} has no valid total cost")]
    CostNotPopulated(VmId),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedVm {
    pub vm_id: VmId,
    pub total_cost: f64,
}

/// VMs ordered by ascending total cost, ties by ascending ID. Lower cost
/// means higher priority; no numeric priority is exposed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrioritizedVmList(Vec<RankedVm>);

impl PrioritizedVmList {
    pub fn as_slice(&self) -> &[RankedVm] {
        &self.0
    }

    pub fn ids(&self) -> Vec<VmId> {
        self.0.iter().map(|r| r.vm_id).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn prioritize_vms<'a, I>(vms: I) -> Result<PrioritizedVmList, CostError>
where
    I: IntoIterator<Item = &'a VirtualMachine>,
{
    let mut ranked = Vec::new();
    for vm in vms {
        if !vm.total_cost.is_finite() || vm.total_cost < 0.0 {
            return Err(CostError::CostNotPopulated(vm.id));
        }
        ranked.push(RankedVm {
            vm_id: vm.id,
            total_cost: vm.total_cost,
        });
    }
    if ranked.is_empty() {
        return Err(CostError::EmptyVmPool);
    }
    ranked.sort_by(|a, b| {
        a.total_cost
            .total_cmp(&b.total_cost)
            .then(a.vm_id.cmp(&b.vm_id))
    });
    Ok(PrioritizedVmList(ranked))
}

/// Head of the prioritized list: the lowest-cost VM.
pub fn select_vm(list: &PrioritizedVmList) -> Result<VmId, CostError> {
    list.0.first().map(|r| r.vm_id).ok_or(CostError::EmptyVmPool)
}

/// Prioritizes the available VMs of `pool`, selects the head and marks it busy.
pub fn dispatch_next(pool: &mut [VirtualMachine]) -> Result<VmId, CostError> {
    let list = prioritize_vms(pool.iter().filter(|vm| vm.is_available()))?;
    let chosen = select_vm(&list)?;
    if let Some(vm) = pool.iter_mut().find(|vm| vm.id == chosen) {
        vm.state = VmState::Busy;
    }
    Ok(chosen)
}
