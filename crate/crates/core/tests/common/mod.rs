//! Test-only oracles and generators, independent of the scheduler and engine
//! code paths they check.

#![allow(dead_code)]

use std::collections::VecDeque;

use bvcf::config::{DispatchMode, ScenarioConfig, TaskSpec, VmCandidate};
use bvcf::cost::{BandwidthMode, CostWeights};
use bvcf::model::LinkMetrics;
use bvcf::provisioning::ResourceKind;
use bvcf::scheduler::{Policy, SchedulerConfig};
use bvcf::transfer::{ChannelConfig, RetryLimit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(cloudlet index, start, end)` in integer time-units.
pub type StepSlice = (usize, u64, u64);

/// Round robin advanced one MI (one time-unit at rate 1) at a time.
pub fn brute_rr(lengths: &[u64], tq: u64) -> (Vec<StepSlice>, Vec<u64>) {
    let mut remaining = lengths.to_vec();
    let mut done = vec![0u64; lengths.len()];
    let mut queue: VecDeque<usize> = (0..lengths.len()).collect();
    let mut slices = Vec::new();
    let mut t = 0u64;
    while let Some(i) = queue.pop_front() {
        let start = t;
        let mut used = 0;
        while used < tq && remaining[i] > 0 {
            remaining[i] -= 1;
            used += 1;
            t += 1;
        }
        slices.push((i, start, t));
        if remaining[i] == 0 {
            done[i] = t;
        } else {
            queue.push_back(i);
        }
    }
    (slices, done)
}

/// First-come-first-serve advanced one MI at a time.
pub fn brute_fcfs(lengths: &[u64]) -> (Vec<StepSlice>, Vec<u64>) {
    let mut done = vec![0u64; lengths.len()];
    let mut slices = Vec::new();
    let mut t = 0u64;
    for (i, &len) in lengths.iter().enumerate() {
        let start = t;
        let mut left = len;
        while left > 0 {
            left -= 1;
            t += 1;
        }
        slices.push((i, start, t));
        done[i] = t;
    }
    (slices, done)
}

pub fn mean(xs: &[u64]) -> f64 {
    xs.iter().sum::<u64>() as f64 / xs.len() as f64
}

/// Calls `f` for every queue of 1..=max_n lengths drawn from 1..=max_len.
pub fn for_each_queue(max_n: usize, max_len: u64, mut f: impl FnMut(&[u64])) {
    for n in 1..=max_n {
        let mut q = vec![1u64; n];
        loop {
            f(&q);
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                if q[k] < max_len {
                    q[k] += 1;
                    break;
                }
                q[k] = 1;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
}

/// Random scenario whose every quantity is a small dyadic rational, so all
/// simulated times are exact in binary floating point.
pub fn dyadic_scenario(rng: &mut ChaCha8Rng) -> ScenarioConfig {
    let n_vms = rng.gen_range(1..=4);
    let vm_pool = (0..n_vms)
        .map(|_| VmCandidate {
            link: LinkMetrics::new(
                rng.gen_range(0..6),
                f64::from(rng.gen_range(0..10u32)),
                f64::from(1u32 << rng.gen_range(0..7)),
                f64::from(rng.gen_range(0..6u32)),
            ),
            demand: [
                (ResourceKind::CpuRate, f64::from(1u32 << rng.gen_range(0..5))),
                (ResourceKind::Memory, f64::from(rng.gen_range(1..9u32))),
            ]
            .into_iter()
            .collect(),
        })
        .collect();
    let mut cfg = ScenarioConfig {
        task: TaskSpec {
            total_length: rng.gen_range(1..=300),
            cloudlet_size: rng.gen_range(1..=40),
        },
        vm_pool,
        resource_pool: None,
        weights: CostWeights::new(
            f64::from(rng.gen_range(0..8u32)) / 4.0,
            f64::from(rng.gen_range(0..8u32)) / 4.0,
            f64::from(rng.gen_range(1..8u32)) / 4.0,
            f64::from(rng.gen_range(0..8u32)) / 4.0,
        ),
        bandwidth_mode: if rng.gen_bool(0.5) {
            BandwidthMode::Literal
        } else {
            BandwidthMode::Reciprocal
        },
        channel: ChannelConfig {
            loss_probability: f64::from(rng.gen_range(0..7u32)) / 10.0,
            unit_time: [0.5, 1.0, 2.0][rng.gen_range(0..3)],
            max_retries: RetryLimit::Unlimited,
            batch_size: rng.gen_range(1..=12),
        },
        scheduler: SchedulerConfig {
            policy: if rng.gen_bool(0.5) {
                Policy::Fcfs
            } else {
                Policy::RoundRobin
            },
            tq: f64::from(rng.gen_range(1..=12u32)),
        },
        dispatch: if rng.gen_bool(0.7) {
            DispatchMode::Single
        } else {
            DispatchMode::Spread
        },
        rng_seed: rng.gen(),
    };
    cfg.apply_defaults();
    cfg
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reusable buffers for running the step oracles over millions of queues.
#[derive(Default)]
pub struct StepOracle {
    remaining: Vec<u64>,
    queue: VecDeque<usize>,
    pub slices: Vec<StepSlice>,
    pub done: Vec<u64>,
}

impl StepOracle {
    pub fn rr(&mut self, lengths: &[u64], tq: u64) {
        self.remaining.clear();
        self.remaining.extend_from_slice(lengths);
        self.done.clear();
        self.done.resize(lengths.len(), 0);
        self.slices.clear();
        self.queue.clear();
        self.queue.extend(0..lengths.len());
        let mut t = 0u64;
        while let Some(i) = self.queue.pop_front() {
            let start = t;
            let mut used = 0;
            while used < tq && self.remaining[i] > 0 {
                self.remaining[i] -= 1;
                used += 1;
                t += 1;
            }
            self.slices.push((i, start, t));
            if self.remaining[i] == 0 {
                self.done[i] = t;
            } else {
                self.queue.push_back(i);
            }
        }
    }

    pub fn fcfs(&mut self, lengths: &[u64]) {
        self.done.clear();
        self.slices.clear();
        let mut t = 0u64;
        for (i, &len) in lengths.iter().enumerate() {
            let start = t;
            let mut left = len;
            while left > 0 {
                left -= 1;
                t += 1;
            }
            self.slices.push((i, start, t));
            self.done.push(t);
        }
    }

    /// True when `trace` has exactly the oracle's slices and completions.
    pub fn matches(&self, trace: &bvcf::scheduler::ExecutionTrace) -> bool {
        trace.slices.len() == self.slices.len()
            && trace.completions.len() == self.done.len()
            && trace.slices.iter().zip(&self.slices).all(|(s, &(i, a, b))| {
                s.cloudlet_id.0 as usize == i && s.start == a as f64 && s.end == b as f64
            })
            && trace
                .completions
                .iter()
                .zip(&self.done)
                .all(|(c, &d)| c.completion == d as f64)
    }
}
