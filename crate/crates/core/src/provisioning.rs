//! Resource provisioner / resource provider handshake gating VM creation.
//!
//! The provider owns a [`ResourcePool`]. The VM manager asks for a demand,
//! receives a [`ResourceGrant`] when every kind fits, and creates a VM from the
//! grant. Releasing a grant returns its quantities to the pool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{total_cost, BandwidthMode, CostWeights};
use crate::model::{LinkMetrics, SimTime, VirtualMachine, VmId, VmState};

/// Resource kinds, ordered as they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResourceKind {
    /// MI per time-unit.
    CpuRate,
    Memory,
}

pub type Resources = BTreeMap<ResourceKind, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GrantId(pub u32);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceGrant {
    pub id: GrantId,
    pub resources: Resources,
    pub granted_at: SimTime,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProvisionError {
    #[error("insufficient {0:?}: requested more than available")]
    InsufficientResources(ResourceKind),
    #[error("demand for {0:?} must be finite and > 0")]
    InvalidDemand(ResourceKind),
    #[error("demand is empty")]
    EmptyDemand,
    #[error("grant {0:?} is not outstanding")]
    UnknownGrant(GrantId),
    #[error("grant {0:?} carries no cpu_rate")]
    MissingCpuRate(GrantId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResourcePool {
    initial: Resources,
    available: Resources,
    outstanding: BTreeMap<GrantId, Resources>,
    next_grant: u32,
}

impl ResourcePool {
    pub fn new(capacity: Resources) -> Self {
        Self {
            initial: capacity.clone(),
            available: capacity,
            outstanding: BTreeMap::new(),
            next_grant: 0,
        }
    }

    pub fn available(&self, kind: ResourceKind) -> f64 {
        self.available.get(&kind).copied().unwrap_or(0.0)
    }

    pub fn initial(&self, kind: ResourceKind) -> f64 {
        self.initial.get(&kind).copied().unwrap_or(0.0)
    }

    /// Sum of quantities of `kind` held by outstanding grants.
    pub fn granted(&self, kind: ResourceKind) -> f64 {
        self.outstanding
            .values()
            .filter_map(|r| r.get(&kind))
            .sum()
    }

    pub fn outstanding(&self) -> usize {
        self.outstanding.len()
    }

    /// Grants `demand` if every kind fits; the pool is left untouched otherwise.
    pub fn request_resources(
        &mut self,
        demand: &Resources,
        now: SimTime,
    ) -> Result<ResourceGrant, ProvisionError> {
        if demand.is_empty() {
            return Err(ProvisionError::EmptyDemand);
        }
        for (&kind, &qty) in demand {
            if !qty.is_finite() || qty <= 0.0 {
                return Err(ProvisionError::InvalidDemand(kind));
            }
        }
        // BTreeMap iteration gives cpu_rate before memory.
        for (&kind, &qty) in demand {
            if qty > self.available(kind) {
                return Err(ProvisionError::InsufficientResources(kind));
            }
        }
        for (&kind, &qty) in demand {
            *self.available.entry(kind).or_insert(0.0) -= qty;
        }
        let id = GrantId(self.next_grant);
        self.next_grant += 1;
        self.outstanding.insert(id, demand.clone());
        Ok(ResourceGrant {
            id,
            resources: demand.clone(),
            granted_at: now,
        })
    }

    pub fn release(&mut self, grant: &ResourceGrant) -> Result<(), ProvisionError> {
        let held = self
            .outstanding
            .remove(&grant.id)
            .ok_or(ProvisionError::UnknownGrant(grant.id))?;
        for (kind, qty) in held {
            *self.available.entry(kind).or_insert(0.0) += qty;
        }
        Ok(())
    }
}

/// Creates a VM from a grant, computing its total cost once.
pub fn create_vm(
    id: VmId,
    grant: &ResourceGrant,
    link: LinkMetrics,
    weights: CostWeights,
    mode: BandwidthMode,
) -> Result<VirtualMachine, ProvisionError> {
    let rate = grant
        .resources
        .get(&ResourceKind::CpuRate)
        .copied()
        .ok_or(ProvisionError::MissingCpuRate(grant.id))?;
    Ok(VirtualMachine {
        id,
        rate,
        link,
        weights,
        bandwidth_mode: mode,
        total_cost: total_cost(&link, &weights, mode),
        state: VmState::Created,
        created_at: grant.granted_at,
    })
}
