//! Deterministic discrete-event loop for one scenario run.
//!
//! A run walks the full workflow: the task is submitted and split, VMs are
//! provisioned and costed, the lowest-cost VM is selected, cloudlets cross the
//! lossy link under stop-and-wait, the VM schedules them, and the executed
//! cloudlets are combined back into the task.
//!
//! Events are ordered by `(at, seq)`; `seq` is the insertion counter, so equal
//! timestamps replay in the order they were scheduled. All randomness comes
//! from the run's single [`LossSource`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, DispatchMode, ScenarioConfig};
use crate::cost::{dispatch_next, prioritize_vms, CostError};
use crate::model::{
    combine_expecting, split_task, Cloudlet, CloudletId, CombineError, SimTime, SplitError, Task,
    TaskId, VirtualMachine, VmId, VmState,
};
use crate::provisioning::{create_vm, ProvisionError, ResourcePool};
use crate::report::{
    compute_execution_cost, CloudletRecord, RunStatus, RunTotals, SimulationReport, SliceRecord,
    VmRecord, SCHEMA_VERSION,
};
use crate::scheduler::{schedule, ExecutionTrace, ReadyCloudlet};
use crate::transfer::{
    receive_cloudlet, send_id_list, transmit_cloudlet, LossSource, Response, SeededLoss,
    TransferError, TransferOutcome, TransferState,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Provision(#[from] ProvisionError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Combine(#[from] CombineError),
    #[error("event queue is empty")]
    EmptyQueue,
    #[error("cannot schedule an event at {at} before the clock at {now}")]
    BackInTime { at: SimTime, now: SimTime },
    #[error("cloudlet {0} executed twice")]
    DuplicateExecution(CloudletId),
    #[error("run ended before the task completed")]
    Incomplete,
}

/// A failed run together with whatever was recorded before the failure.
#[derive(Debug, Error)]
#[error("{error}")]
pub struct RunError {
    #[source]
    pub error: SimError,
    pub report: Box<SimulationReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    TaskSubmitted,
    CloudletsReady,
    VmCreated {
        vm: VmId,
    },
    IdListSent {
        vm: VmId,
    },
    FrameArrival {
        vm: VmId,
        cloudlet: CloudletId,
    },
    Ack {
        vm: VmId,
        cloudlet: CloudletId,
    },
    /// Timer for the retransmission following `attempt`.
    RetransmitDue {
        vm: VmId,
        cloudlet: CloudletId,
        attempt: u32,
    },
    SliceComplete {
        vm: VmId,
        cloudlet: CloudletId,
        index: usize,
    },
    CloudletExecuted {
        vm: VmId,
        cloudlet: CloudletId,
    },
    TaskComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub at: SimTime,
    pub seq: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl Event {
    pub fn new(at: SimTime, seq: u64, kind: EventKind) -> Self {
        Self { at, seq, kind }
    }

    pub fn frame_arrival(&self) -> Option<CloudletId> {
        match self.kind {
            EventKind::FrameArrival { cloudlet, .. } => Some(cloudlet),
            _ => None,
        }
    }
}

// Heap entry: reversed so the max-heap pops the earliest (at, seq).
#[derive(Debug)]
struct Pending(Event);

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .at
            .total_cmp(&self.0.at)
            .then(other.0.seq.cmp(&self.0.seq))
    }
}

/// Pending events ordered by time, then insertion sequence.
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<Pending>,
    next_seq: u64,
}

impl EventQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, at: SimTime, kind: EventKind) -> u64 {
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Pending(Event::new(at, seq, kind)));
        seq
    }

    /// Inserts a pre-sequenced event. Later pushes get larger sequence numbers.
    pub fn insert(&mut self, event: Event) {
        self.next_seq = self.next_seq.max(event.seq + 1);
        self.heap.push(Pending(event));
    }

    pub fn pop(&mut self) -> Option<Event> {
        self.heap.pop().map(|p| p.0)
    }

    pub fn peek(&self) -> Option<&Event> {
        self.heap.peek().map(|p| &p.0)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

/// Per-VM transfer and execution progress.
#[derive(Debug, Default)]
struct Lane {
    batches: VecDeque<Vec<Cloudlet>>,
    state: Option<TransferState>,
    pending: VecDeque<Cloudlet>,
    in_flight: Option<Cloudlet>,
    finished: Vec<TransferState>,
    delivered: Vec<ReadyCloudlet>,
    assigned: usize,
    executed: usize,
    trace: Option<ExecutionTrace>,
}

#[derive(Debug, Clone, Default)]
struct Progress {
    vm: Option<VmId>,
    attempts: u32,
    delivered_at: Option<SimTime>,
    completion: Option<SimTime>,
    service: SimTime,
}

pub struct Simulation {
    cfg: ScenarioConfig,
    queue: EventQueue,
    clock: SimTime,
    losses: Box<dyn LossSource + Send>,
    task: Task,
    cloudlets: Vec<Cloudlet>,
    pool: ResourcePool,
    vms: Vec<VirtualMachine>,
    vms_pending: usize,
    lanes: BTreeMap<VmId, Lane>,
    progress: Vec<Progress>,
    slices: Vec<SliceRecord>,
    executed: Vec<Cloudlet>,
    executed_ids: BTreeSet<CloudletId>,
    finishing_slices: usize,
    log: Vec<Event>,
    reassembled: Option<Task>,
    completed_at: Option<SimTime>,
    failure: Option<String>,
}

impl Simulation {
    /// Sets up a run whose losses are drawn from the configured probability and seed.
    pub fn new(cfg: ScenarioConfig) -> Result<Self, SimError> {
        let losses = SeededLoss::new(cfg.channel.loss_probability, cfg.rng_seed);
        Self::with_losses(cfg, Box::new(losses))
    }

    pub fn with_losses(
        mut cfg: ScenarioConfig,
        losses: Box<dyn LossSource + Send>,
    ) -> Result<Self, SimError> {
        cfg.apply_defaults();
        cfg.validate()?;
        let mut sim = Self::unchecked(cfg, losses);
        sim.queue.push(0.0, EventKind::TaskSubmitted);
        Ok(sim)
    }

    fn unchecked(cfg: ScenarioConfig, losses: Box<dyn LossSource + Send>) -> Self {
        let pool = ResourcePool::new(cfg.capacity());
        let task = Task {
            id: TaskId(0),
            total_length: cfg.task.total_length,
        };
        Self {
            cfg,
            queue: EventQueue::new(),
            clock: 0.0,
            losses,
            task,
            cloudlets: Vec::new(),
            pool,
            vms: Vec::new(),
            vms_pending: 0,
            lanes: BTreeMap::new(),
            progress: Vec::new(),
            slices: Vec::new(),
            executed: Vec::new(),
            executed_ids: BTreeSet::new(),
            finishing_slices: 0,
            log: Vec::new(),
            reassembled: None,
            completed_at: None,
            failure: None,
        }
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn clock(&self) -> SimTime {
        self.clock
    }

    pub fn pending_events(&self) -> usize {
        self.queue.len()
    }

    pub fn processed(&self) -> &[Event] {
        &self.log
    }

    pub fn cloudlets(&self) -> &[Cloudlet] {
        &self.cloudlets
    }

    pub fn vms(&self) -> &[VirtualMachine] {
        &self.vms
    }

    pub fn pool(&self) -> &ResourcePool {
        &self.pool
    }

    /// The reassembled task, once the run has completed.
    pub fn reassembled(&self) -> Option<&Task> {
        self.reassembled.as_ref()
    }

    /// Every batch transfer state of `vm`, finished ones first.
    pub fn transfer_states(&self, vm: VmId) -> Vec<&TransferState> {
        self.lanes
            .get(&vm)
            .map(|l| l.finished.iter().chain(l.state.as_ref()).collect())
            .unwrap_or_default()
    }

    pub fn execution_trace(&self, vm: VmId) -> Option<&ExecutionTrace> {
        self.lanes.get(&vm).and_then(|l| l.trace.as_ref())
    }

    /// Schedules an event from outside the loop, e.g. to script a race.
    pub fn inject(&mut self, at: SimTime, kind: EventKind) -> Result<u64, SimError> {
        self.schedule(at, kind)
    }

    fn schedule(&mut self, at: SimTime, kind: EventKind) -> Result<u64, SimError> {
        if at < self.clock {
            return Err(SimError::BackInTime {
                at,
                now: self.clock,
            });
        }
        Ok(self.queue.push(at, kind))
    }

    /// Pops the earliest event, advances the clock to it and applies it.
    pub fn step(&mut self) -> Result<Event, SimError> {
        let event = self.queue.pop().ok_or(SimError::EmptyQueue)?;
        debug_assert!(event.at >= self.clock);
        self.clock = event.at;
        self.log.push(event);
        if let Err(e) = self.handle(event.kind) {
            self.failure = Some(e.to_string());
            return Err(e);
        }
        Ok(event)
    }

    /// Runs to completion.
    pub fn run(&mut self) -> Result<(), SimError> {
        while !self.queue.is_empty() {
            self.step()?;
        }
        if self.reassembled.is_none() {
            self.failure = Some(SimError::Incomplete.to_string());
            return Err(SimError::Incomplete);
        }
        Ok(())
    }

    fn handle(&mut self, kind: EventKind) -> Result<(), SimError> {
        match kind {
            EventKind::TaskSubmitted => {
                self.cloudlets = split_task(&self.task, self.cfg.task.cloudlet_size)?;
                self.progress = vec![Progress::default(); self.cloudlets.len()];
                self.schedule(self.clock, EventKind::CloudletsReady)?;
            }
            EventKind::CloudletsReady => self.provision()?,
            EventKind::VmCreated { .. } => {
                self.vms_pending -= 1;
                if self.vms_pending == 0 {
                    self.dispatch()?;
                }
            }
            EventKind::IdListSent { vm } => self.send_next(vm)?,
            EventKind::FrameArrival { vm, cloudlet } => self.on_frame(vm, cloudlet)?,
            EventKind::Ack { vm, cloudlet } => self.on_ack(vm, cloudlet)?,
            EventKind::RetransmitDue {
                vm,
                cloudlet,
                attempt,
            } => self.on_retransmit_due(vm, cloudlet, attempt)?,
            EventKind::SliceComplete { vm, index, .. } => self.on_slice(vm, index)?,
            EventKind::CloudletExecuted { vm, cloudlet } => self.on_executed(vm, cloudlet)?,
            EventKind::TaskComplete => {
                let task = combine_expecting(&self.executed, self.task.id, self.cloudlets.len())?;
                debug_assert_eq!(task, self.task);
                self.reassembled = Some(task);
                self.completed_at = Some(self.clock);
            }
        }
        Ok(())
    }

    fn provision(&mut self) -> Result<(), SimError> {
        let candidates = self.cfg.vm_pool.clone();
        for (i, c) in candidates.iter().enumerate() {
            let grant = self.pool.request_resources(&c.demand, self.clock)?;
            let vm = create_vm(
                VmId(i as u32),
                &grant,
                c.link,
                self.cfg.weights,
                self.cfg.bandwidth_mode,
            )?;
            self.vms.push(vm);
            self.vms_pending += 1;
            self.schedule(self.clock, EventKind::VmCreated { vm: vm.id })?;
        }
        Ok(())
    }

    fn dispatch(&mut self) -> Result<(), SimError> {
        let mut assignment: BTreeMap<VmId, Vec<Cloudlet>> = BTreeMap::new();
        match self.cfg.dispatch {
            DispatchMode::Single => {
                let vm = dispatch_next(&mut self.vms)?;
                assignment.insert(vm, self.cloudlets.clone());
            }
            DispatchMode::Spread => {
                let order = prioritize_vms(self.vms.iter())?.ids();
                for (i, c) in self.cloudlets.iter().enumerate() {
                    let vm = order[i % order.len()];
                    assignment.entry(vm).or_default().push(*c);
                }
                for vm in assignment.keys() {
                    self.vms[vm.0 as usize].state = VmState::Busy;
                }
            }
        }
        let batch_size = self.cfg.channel.batch_size;
        for (vm, cloudlets) in assignment {
            for c in &cloudlets {
                self.progress[c.id.0 as usize].vm = Some(vm);
            }
            let lane = Lane {
                assigned: cloudlets.len(),
                batches: cloudlets.chunks(batch_size).map(<[_]>::to_vec).collect(),
                ..Lane::default()
            };
            self.lanes.insert(vm, lane);
            self.start_batch(vm)?;
        }
        Ok(())
    }

    fn lane(&mut self, vm: VmId) -> &mut Lane {
        self.lanes.get_mut(&vm).expect("lane exists for dispatched VM")
    }

    fn start_batch(&mut self, vm: VmId) -> Result<(), SimError> {
        let batch_size = self.cfg.channel.batch_size;
        let lane = self.lane(vm);
        let Some(mut batch) = lane.batches.pop_front() else {
            return Ok(());
        };
        let predicted = send_id_list(&batch)?;
        lane.state = Some(TransferState::new(predicted, batch_size)?);
        batch.sort_by_key(|c| c.id);
        lane.pending = batch.into();
        self.schedule(self.clock, EventKind::IdListSent { vm })?;
        Ok(())
    }

    fn send_next(&mut self, vm: VmId) -> Result<(), SimError> {
        let lane = self.lane(vm);
        let Some(c) = lane.pending.pop_front() else {
            return Ok(());
        };
        lane.in_flight = Some(c);
        self.transmit(vm, c)
    }

    fn transmit(&mut self, vm: VmId, c: Cloudlet) -> Result<(), SimError> {
        let link = self.vms[vm.0 as usize].link;
        let ch = self.cfg.channel;
        let now = self.clock;
        let state = self
            .lanes
            .get_mut(&vm)
            .and_then(|l| l.state.as_mut())
            .expect("batch in progress");
        let attempt = state.attempts(c.id) + 1;
        let lost = self.losses.is_lost(c.id, attempt);
        let outcome = transmit_cloudlet(state, &c, &link, now, lost)?;
        self.progress[c.id.0 as usize].attempts = state.attempts(c.id);
        match outcome {
            TransferOutcome::Delivered { at } => {
                self.schedule(at, EventKind::FrameArrival { vm, cloudlet: c.id })?;
            }
            TransferOutcome::Lost => {
                let at = state.retransmit_at(c.id, &ch, now)?;
                self.schedule(
                    at,
                    EventKind::RetransmitDue {
                        vm,
                        cloudlet: c.id,
                        attempt,
                    },
                )?;
            }
        }
        Ok(())
    }

    fn on_frame(&mut self, vm: VmId, id: CloudletId) -> Result<(), SimError> {
        let Some(frame) = self.cloudlets.get(id.0 as usize).copied() else {
            return Ok(());
        };
        let ch = self.cfg.channel;
        let now = self.clock;
        let Some(lane) = self.lanes.get_mut(&vm) else {
            return Ok(());
        };
        let Some(state) = lane.state.as_mut() else {
            return Ok(());
        };
        match receive_cloudlet(state, &frame) {
            Response::Ack(id) => {
                self.schedule(now, EventKind::Ack { vm, cloudlet: id })?;
            }
            Response::RetransmitRequest(id) => {
                if lane.in_flight.map(|c| c.id) == Some(id) {
                    let attempt = state.attempts(id);
                    let at = state.retransmit_at(id, &ch, now)?;
                    self.schedule(
                        at,
                        EventKind::RetransmitDue {
                            vm,
                            cloudlet: id,
                            attempt,
                        },
                    )?;
                }
            }
        }
        Ok(())
    }

    fn on_ack(&mut self, vm: VmId, id: CloudletId) -> Result<(), SimError> {
        let now = self.clock;
        let Some(lane) = self.lanes.get_mut(&vm) else {
            return Ok(());
        };
        let c = match lane.in_flight {
            Some(c) if c.id == id => c,
            // Re-ACK of a frame already accounted for.
            _ => return Ok(()),
        };
        lane.in_flight = None;
        lane.delivered.push(ReadyCloudlet::from_cloudlet(&c, now));
        self.progress[id.0 as usize].delivered_at = Some(now);

        if !lane.pending.is_empty() {
            return self.send_next(vm);
        }
        if let Some(done) = lane.state.take() {
            lane.finished.push(done);
        }
        if !lane.batches.is_empty() {
            return self.start_batch(vm);
        }
        self.start_execution(vm)
    }

    fn on_retransmit_due(
        &mut self,
        vm: VmId,
        id: CloudletId,
        attempt: u32,
    ) -> Result<(), SimError> {
        let Some(lane) = self.lanes.get(&vm) else {
            return Ok(());
        };
        let live = match (&lane.in_flight, &lane.state) {
            (Some(c), Some(state)) => {
                c.id == id && state.attempts(id) == attempt && !state.received().contains(&id)
            }
            _ => false,
        };
        if !live {
            // Stale timer: the cloudlet was delivered or already resent.
            return Ok(());
        }
        let c = lane.in_flight.expect("checked above");
        self.transmit(vm, c)
    }

    fn start_execution(&mut self, vm: VmId) -> Result<(), SimError> {
        let now = self.clock;
        let rate = self.vms[vm.0 as usize].rate;
        let cfg = self.cfg.scheduler;
        let lane = self.lane(vm);
        let trace = schedule(&cfg, &lane.delivered, rate, now);
        let events: Vec<(SimTime, EventKind)> = trace
            .slices
            .iter()
            .enumerate()
            .map(|(index, s)| {
                (
                    s.end,
                    EventKind::SliceComplete {
                        vm,
                        cloudlet: s.cloudlet_id,
                        index,
                    },
                )
            })
            .collect();
        lane.trace = Some(trace);
        for (at, kind) in events {
            self.schedule(at, kind)?;
        }
        Ok(())
    }

    fn on_slice(&mut self, vm: VmId, index: usize) -> Result<(), SimError> {
        let slice = self.lanes[&vm].trace.as_ref().expect("trace scheduled").slices[index];
        self.slices.push(SliceRecord { vm_id: vm, slice });
        self.progress[slice.cloudlet_id.0 as usize].service += slice.duration();
        if slice.finishes {
            self.schedule(
                self.clock,
                EventKind::CloudletExecuted {
                    vm,
                    cloudlet: slice.cloudlet_id,
                },
            )?;
            self.finishing_slices += 1;
            if self.finishing_slices == self.cloudlets.len() {
                self.schedule(self.clock, EventKind::TaskComplete)?;
            }
        }
        Ok(())
    }

    fn on_executed(&mut self, vm: VmId, id: CloudletId) -> Result<(), SimError> {
        if !self.executed_ids.insert(id) {
            return Err(SimError::DuplicateExecution(id));
        }
        self.executed.push(self.cloudlets[id.0 as usize].executed());
        self.progress[id.0 as usize].completion = Some(self.clock);
        let lane = self.lane(vm);
        lane.executed += 1;
        if lane.executed == lane.assigned {
            self.vms[vm.0 as usize].state = VmState::Idle;
        }
        Ok(())
    }

    /// Snapshot of the run so far. Complete once [`Simulation::run`] succeeds.
    pub fn report(&self) -> SimulationReport {
        let makespan = self.completed_at.unwrap_or(self.clock);
        let selected: BTreeSet<VmId> = self.lanes.keys().copied().collect();

        let mut vms: Vec<VmRecord> = self
            .vms
            .iter()
            .map(|vm| {
                let busy: SimTime = self
                    .slices
                    .iter()
                    .filter(|s| s.vm_id == vm.id)
                    .map(|s| s.slice.duration())
                    .sum();
                VmRecord {
                    vm_id: vm.id,
                    rate: vm.rate,
                    total_cost: vm.total_cost,
                    created_at: vm.created_at,
                    selected: selected.contains(&vm.id),
                    cloudlets: self.lanes.get(&vm.id).map_or(0, |l| l.assigned),
                    busy_time: busy,
                    idle_time: (makespan - vm.created_at) - busy,
                }
            })
            .collect();
        vms.sort_by_key(|v| v.vm_id);

        let cloudlets: Vec<CloudletRecord> = self
            .cloudlets
            .iter()
            .zip(&self.progress)
            .map(|(c, p)| {
                let cost = p.vm.map_or(0.0, |vm| self.vms[vm.0 as usize].total_cost);
                CloudletRecord {
                    cloudlet_id: c.id,
                    length: c.length,
                    vm_id: p.vm,
                    attempts: p.attempts,
                    retransmissions: p.attempts.saturating_sub(1),
                    delivered_at: p.delivered_at,
                    completion_time: p.completion,
                    turnaround: p.completion.zip(p.delivered_at).map(|(c, d)| c - d),
                    execution_cost: cost * p.service,
                }
            })
            .collect();

        let turnarounds: Vec<f64> = cloudlets.iter().filter_map(|c| c.turnaround).collect();
        let totals = RunTotals {
            makespan,
            transfer_completion: cloudlets
                .iter()
                .filter_map(|c| c.delivered_at)
                .fold(0.0, f64::max),
            total_execution_cost: compute_execution_cost(&vms),
            total_attempts: cloudlets.iter().map(|c| u64::from(c.attempts)).sum(),
            total_retransmissions: cloudlets.iter().map(|c| u64::from(c.retransmissions)).sum(),
            mean_turnaround: if turnarounds.is_empty() {
                0.0
            } else {
                turnarounds.iter().sum::<f64>() / turnarounds.len() as f64
            },
            executed_cloudlets: self.executed.len(),
        };

        let completed = self.reassembled.is_some() && self.failure.is_none();
        SimulationReport {
            schema_version: SCHEMA_VERSION,
            status: if completed {
                RunStatus::Completed
            } else {
                RunStatus::Failed
            },
            error: self.failure.clone(),
            rng_seed: self.cfg.rng_seed,
            config: self.cfg.clone(),
            cloudlets,
            vms,
            totals,
            slices: self.slices.clone(),
            events: self.log.clone(),
        }
    }
}

/// Runs a whole scenario. A failed run still carries its partial report.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<SimulationReport, RunError> {
    run_with(cfg, |cfg| Simulation::new(cfg.clone()))
}

/// Like [`run_scenario`] with an explicit loss source in place of the seeded one.
pub fn run_scenario_with_losses(
    cfg: &ScenarioConfig,
    losses: Box<dyn LossSource + Send>,
) -> Result<SimulationReport, RunError> {
    let mut losses = Some(losses);
    run_with(cfg, move |cfg| {
        Simulation::with_losses(cfg.clone(), losses.take().expect("called once"))
    })
}

fn run_with<F>(cfg: &ScenarioConfig, build: F) -> Result<SimulationReport, RunError>
where
    F: FnOnce(&ScenarioConfig) -> Result<Simulation, SimError>,
{
    let mut sim = match build(cfg) {
        Ok(sim) => sim,
        Err(error) => {
            let mut sim = Simulation::unchecked(cfg.clone(), Box::new(SeededLoss::new(0.0, 0)));
            sim.failure = Some(error.to_string());
            return Err(RunError {
                error,
                report: Box::new(sim.report()),
            });
        }
    };
    match sim.run() {
        Ok(()) => Ok(sim.report()),
        Err(error) => Err(RunError {
            error,
            report: Box::new(sim.report()),
        }),
    }
}
