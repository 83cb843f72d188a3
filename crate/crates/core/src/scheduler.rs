//! Cloudlet execution on a single VM under first-come-first-serve or
//! round-robin with a fixed time quantum.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Cloudlet, CloudletId, Mi, SimTime};

pub const DEFAULT_TIME_QUANTUM: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchedulerError {
    #[error("invalid scheduling choice {0}: expected 1 (FCFS) or 2 (round robin)")]
    InvalidChoice(i64),
}

/// Numbered as the user-facing choice: 1 = FCFS, 2 = round robin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Policy {
    Fcfs,
    RoundRobin,
}

impl Policy {
    pub fn choice(self) -> i64 {
        match self {
            Policy::Fcfs => 1,
            Policy::RoundRobin => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Policy::Fcfs => "fcfs",
            Policy::RoundRobin => "round_robin",
        }
    }
}

impl TryFrom<i64> for Policy {
    type Error = SchedulerError;

    fn try_from(choice: i64) -> Result<Self, Self::Error> {
        match choice {
            1 => Ok(Policy::Fcfs),
            2 => Ok(Policy::RoundRobin),
            other => Err(SchedulerError::InvalidChoice(other)),
        }
    }
}

impl From<Policy> for i64 {
    fn from(p: Policy) -> i64 {
        p.choice()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchedulerConfig {
    pub policy: Policy,
    /// Time quantum in time-units; used by round robin only.
    #[serde(default = "default_tq")]
    pub tq: f64,
}

fn default_tq() -> f64 {
    DEFAULT_TIME_QUANTUM
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        Self {
            policy: Policy::Fcfs,
            tq: DEFAULT_TIME_QUANTUM,
        }
    }
}

impl SchedulerConfig {
    pub fn with_tq(mut self, tq: f64) -> Self {
        self.tq = tq;
        self
    }
}

pub fn choose_policy(choice: i64) -> Result<SchedulerConfig, SchedulerError> {
    Ok(SchedulerConfig {
        policy: Policy::try_from(choice)?,
        tq: DEFAULT_TIME_QUANTUM,
    })
}

/// A cloudlet waiting on a VM since `arrival`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadyCloudlet {
    pub id: CloudletId,
    pub length: Mi,
    pub arrival: SimTime,
}

impl ReadyCloudlet {
    pub fn new(id: u32, length: Mi, arrival: SimTime) -> Self {
        Self {
            id: CloudletId(id),
            length,
            arrival,
        }
    }

    pub fn from_cloudlet(c: &Cloudlet, arrival: SimTime) -> Self {
        Self {
            id: c.id,
            length: c.length,
            arrival,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    pub cloudlet_id: CloudletId,
    pub start: SimTime,
    pub end: SimTime,
    /// MI served during the slice.
    pub work: f64,
    /// The cloudlet finished at the end of this slice.
    pub finishes: bool,
}

impl Slice {
    pub fn duration(&self) -> SimTime {
        self.end - self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Completion {
    pub cloudlet_id: CloudletId,
    pub arrival: SimTime,
    pub completion: SimTime,
    pub turnaround: SimTime,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExecutionTrace {
    /// Chronological, non-overlapping.
    pub slices: Vec<Slice>,
    /// One entry per cloudlet, in queue order.
    pub completions: Vec<Completion>,
}

impl ExecutionTrace {
    pub fn completion_times(&self) -> Vec<SimTime> {
        self.completions.iter().map(|c| c.completion).collect()
    }

    pub fn busy_time(&self) -> SimTime {
        self.slices.iter().map(Slice::duration).sum()
    }

    pub fn service_time(&self, id: CloudletId) -> SimTime {
        self.slices
            .iter()
            .filter(|s| s.cloudlet_id == id)
            .map(Slice::duration)
            .sum()
    }

    pub fn mean_turnaround(&self) -> SimTime {
        if self.completions.is_empty() {
            return 0.0;
        }
        self.completions.iter().map(|c| c.turnaround).sum::<f64>() / self.completions.len() as f64
    }

    /// Merges back-to-back slices of the same cloudlet, as happens when a
    /// preempted cloudlet is the only one left.
    pub fn coalesced(&self) -> Vec<Slice> {
        let mut out: Vec<Slice> = Vec::with_capacity(self.slices.len());
        for s in &self.slices {
            match out.last_mut() {
                Some(prev) if prev.cloudlet_id == s.cloudlet_id && prev.end == s.start => {
                    prev.end = s.end;
                    prev.work += s.work;
                    prev.finishes = s.finishes;
                }
                _ => out.push(*s),
            }
        }
        out
    }

    /// Time at which the VM goes idle, or `None` for an empty trace.
    pub fn end(&self) -> Option<SimTime> {
        self.slices.last().map(|s| s.end)
    }
}

pub fn schedule(
    cfg: &SchedulerConfig,
    queue: &[ReadyCloudlet],
    rate: f64,
    start: SimTime,
) -> ExecutionTrace {
    match cfg.policy {
        Policy::Fcfs => schedule_fcfs(queue, rate, start),
        Policy::RoundRobin => schedule_rr(queue, rate, cfg.tq, start),
    }
}

/// Runs each cloudlet to completion in queue order. `rate` is in MI per
/// time-unit and must be positive.
pub fn schedule_fcfs(queue: &[ReadyCloudlet], rate: f64, start: SimTime) -> ExecutionTrace {
    assert!(rate > 0.0, "VM rate must be positive");
    let mut trace = ExecutionTrace::default();
    let mut t = start;
    for c in queue {
        t = t.max(c.arrival);
        let end = t + c.length as f64 / rate;
        trace.slices.push(Slice {
            cloudlet_id: c.id,
            start: t,
            end,
            work: c.length as f64,
            finishes: true,
        });
        trace.completions.push(Completion {
            cloudlet_id: c.id,
            arrival: c.arrival,
            completion: end,
            turnaround: end - c.arrival,
        });
        t = end;
    }
    trace
}

/// Round robin with quantum `tq` time-units.
///
/// A cloudlet that finishes within (or exactly at the end of) its quantum
/// releases the VM immediately and is not requeued. Cloudlets arriving during
/// a slice join the tail ahead of the preempted one.
pub fn schedule_rr(queue: &[ReadyCloudlet], rate: f64, tq: f64, start: SimTime) -> ExecutionTrace {
    assert!(rate > 0.0, "VM rate must be positive");
    assert!(tq > 0.0, "time quantum must be positive");
    let quantum_work = tq * rate;
    let mut completions: Vec<Option<Completion>> = vec![None; queue.len()];
    let mut slices = Vec::new();
    let mut ready: VecDeque<(usize, f64)> = VecDeque::new();
    let mut next = 0;
    let mut t = start;

    let admit = |t: SimTime, next: &mut usize, ready: &mut VecDeque<(usize, f64)>| {
        while *next < queue.len() && queue[*next].arrival <= t {
            ready.push_back((*next, queue[*next].length as f64));
            *next += 1;
        }
    };

    loop {
        admit(t, &mut next, &mut ready);
        let Some((idx, remaining)) = ready.pop_front() else {
            if next < queue.len() {
                t = t.max(queue[next].arrival);
                continue;
            }
            break;
        };
        let c = &queue[idx];
        if remaining <= quantum_work {
            let dur = if remaining == quantum_work {
                tq
            } else {
                remaining / rate
            };
            let end = t + dur;
            slices.push(Slice {
                cloudlet_id: c.id,
                start: t,
                end,
                work: remaining,
                finishes: true,
            });
            completions[idx] = Some(Completion {
                cloudlet_id: c.id,
                arrival: c.arrival,
                completion: end,
                turnaround: end - c.arrival,
            });
            t = end;
        } else {
            let end = t + tq;
            slices.push(Slice {
                cloudlet_id: c.id,
                start: t,
                end,
                work: quantum_work,
                finishes: false,
            });
            t = end;
            admit(t, &mut next, &mut ready);
            ready.push_back((idx, remaining - quantum_work));
        }
    }

    ExecutionTrace {
        slices,
        completions: completions.into_iter().flatten().collect(),
    }
}
