//! Stop-and-wait cloudlet transfer between the VM manager and a VM.
//!
//! The manager first sends the sorted ID list of the batch (the predicted
//! sequence). It then sends each cloudlet and waits: the VM acknowledges an ID
//! it expects, and a lost or unexpected frame triggers a retransmission after
//! `unit_time`. Control messages are lossless and instantaneous.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::model::{Cloudlet, CloudletId, CloudletStatus, LinkMetrics, SimTime};

pub const DEFAULT_BATCH_SIZE: usize = 10;
pub const DEFAULT_MAX_RETRIES: u32 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("cannot transfer an empty batch")]
    EmptyBatch,
    #[error("batch of {len} cloudlets exceeds batch size {batch_size}")]
    BatchTooLarge { len: usize, batch_size: usize },
    #[error("cloudlet {0} is not in the predicted sequence")]
    UnexpectedCloudlet(CloudletId),
    #[error("cloudlet {0} exceeded its retransmission limit")]
    RetryLimitExceeded(CloudletId),
}

/// Cap on retransmissions per cloudlet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetryLimit {
    Limited(u32),
    Unlimited,
}

impl Default for RetryLimit {
    fn default() -> Self {
        RetryLimit::Limited(DEFAULT_MAX_RETRIES)
    }
}

impl RetryLimit {
    fn allows(&self, retransmissions_so_far: u32) -> bool {
        match *self {
            RetryLimit::Limited(max) => retransmissions_so_far < max,
            RetryLimit::Unlimited => true,
        }
    }
}

// Serialized as a positive integer or the string "unlimited".
impl Serialize for RetryLimit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RetryLimit::Limited(n) => s.serialize_u32(*n),
            RetryLimit::Unlimited => s.serialize_str("unlimited"),
        }
    }
}

impl<'de> Deserialize<'de> for RetryLimit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RetryLimit;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"unlimited\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RetryLimit, E> {
                u32::try_from(v)
                    .ok()
                    .filter(|n| *n > 0)
                    .map(RetryLimit::Limited)
                    .ok_or_else(|| E::invalid_value(de::Unexpected::Unsigned(v), &self))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RetryLimit, E> {
                match u64::try_from(v) {
                    Ok(u) => self.visit_u64(u),
                    Err(_) => Err(E::invalid_value(de::Unexpected::Signed(v), &self)),
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RetryLimit, E> {
                if v == "unlimited" {
                    Ok(RetryLimit::Unlimited)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Channel and protocol parameters for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    /// Independent per-transmission loss probability.
    #[serde(default)]
    pub loss_probability: f64,
    /// Wait before a lost cloudlet is retransmitted.
    #[serde(default = "default_unit_time")]
    pub unit_time: f64,
    #[serde(default)]
    pub max_retries: RetryLimit,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
}

fn default_unit_time() -> f64 {
    1.0
}

fn default_batch_size() -> usize {
    DEFAULT_BATCH_SIZE
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            loss_probability: 0.0,
            unit_time: default_unit_time(),
            max_retries: RetryLimit::default(),
            batch_size: DEFAULT_BATCH_SIZE,
        }
    }
}

impl ChannelConfig {
    pub fn lossless() -> Self {
        Self::default()
    }

    pub fn with_loss(mut self, p: f64) -> Self {
        self.loss_probability = p;
        self
    }

    pub fn with_max_retries(mut self, limit: RetryLimit) -> Self {
        self.max_retries = limit;
        self
    }

    /// Returns `(field, reason)` for the first invalid field.
    pub fn invalid_field(&self) -> Option<(&'static str, &'static str)> {
        if !(0.0..=1.0).contains(&self.loss_probability) {
            return Some(("loss_probability", "outside [0,1]"));
        }
        if !self.unit_time.is_finite() || self.unit_time <= 0.0 {
            return Some(("unit_time", "must be positive"));
        }
        if self.batch_size == 0 {
            return Some(("batch_size", "must be positive"));
        }
        if self.max_retries == RetryLimit::Limited(0) {
            return Some(("max_retries", "must be positive"));
        }
        None
    }
}

/// Decides whether each transmission attempt is lost.
pub trait LossSource {
    /// `attempt` counts from 1.
    fn is_lost(&mut self, cloudlet: CloudletId, attempt: u32) -> bool;
}

/// Independent Bernoulli losses drawn from a seeded generator.
#[derive(Debug, Clone)]
pub struct SeededLoss {
    p: f64,
    rng: ChaCha8Rng,
}

impl SeededLoss {
    pub fn new(p: f64, seed: u64) -> Self {
        Self {
            p,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl LossSource for SeededLoss {
    fn is_lost(&mut self, _: CloudletId, _: u32) -> bool {
        // One draw per attempt, whatever p is, keeps the stream aligned.
        self.rng.gen::<f64>() < self.p
    }
}

/// Deterministic losses for tests and walkthroughs.
#[derive(Debug, Clone, Default)]
pub struct ScriptedLoss {
    sequence: VecDeque<bool>,
    keyed: BTreeSet<(CloudletId, u32)>,
}

impl ScriptedLoss {
    /// Outcomes consumed in transmission order, `true` meaning lost. Every
    /// attempt after the script runs out is delivered.
    pub fn sequence<I: IntoIterator<Item = bool>>(outcomes: I) -> Self {
        Self {
            sequence: outcomes.into_iter().collect(),
            keyed: BTreeSet::new(),
        }
    }

    /// Loses exactly the listed `(cloudlet, attempt)` pairs.
    pub fn attempts<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        Self {
            sequence: VecDeque::new(),
            keyed: pairs
                .into_iter()
                .map(|(id, a)| (CloudletId(id), a))
                .collect(),
        }
    }

    pub fn first_attempts<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Self::attempts(ids.into_iter().map(|id| (id, 1)))
    }
}

impl LossSource for ScriptedLoss {
    fn is_lost(&mut self, cloudlet: CloudletId, attempt: u32) -> bool {
        if let Some(lost) = self.sequence.pop_front() {
            return lost;
        }
        self.keyed.contains(&(cloudlet, attempt))
    }
}

impl<L: LossSource + ?Sized> LossSource for Box<L> {
    fn is_lost(&mut self, cloudlet: CloudletId, attempt: u32) -> bool {
        (**self).is_lost(cloudlet, attempt)
    }
}

/// Sorted, duplicate-free IDs the VM expects in a batch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedSequenceList(Vec<CloudletId>);

impl PredictedSequenceList {
    pub fn ids(&self) -> &[CloudletId] {
        &self.0
    }

    pub fn contains(&self, id: CloudletId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn send_id_list(cloudlets: &[Cloudlet]) -> Result<PredictedSequenceList, TransferError> {
    if cloudlets.is_empty() {
        return Err(TransferError::EmptyBatch);
    }
    let mut ids: Vec<CloudletId> = cloudlets.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids.dedup();
    Ok(PredictedSequenceList(ids))
}

/// Receiver and sender bookkeeping for one batch.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferState {
    predicted: PredictedSequenceList,
    received: BTreeSet<CloudletId>,
    attempts: BTreeMap<CloudletId, u32>,
    batch_size: usize,
}

impl TransferState {
    pub fn new(predicted: PredictedSequenceList, batch_size: usize) -> Result<Self, TransferError> {
        if predicted.is_empty() {
            return Err(TransferError::EmptyBatch);
        }
        if predicted.len() > batch_size {
            return Err(TransferError::BatchTooLarge {
                len: predicted.len(),
                batch_size,
            });
        }
        Ok(Self {
            predicted,
            received: BTreeSet::new(),
            attempts: BTreeMap::new(),
            batch_size,
        })
    }

    pub fn predicted(&self) -> &PredictedSequenceList {
        &self.predicted
    }

    pub fn received(&self) -> &BTreeSet<CloudletId> {
        &self.received
    }

    pub fn batch_size(&self) -> usize {
        self.batch_size
    }

    pub fn attempts(&self, id: CloudletId) -> u32 {
        self.attempts.get(&id).copied().unwrap_or(0)
    }

    /// Retransmissions so far: attempts minus one.
    pub fn retransmit_counter(&self, id: CloudletId) -> u32 {
        self.attempts(id).saturating_sub(1)
    }

    pub fn total_attempts(&self) -> u64 {
        self.attempts.values().map(|&a| u64::from(a)).sum()
    }

    pub fn total_retransmissions(&self) -> u64 {
        self.attempts
            .values()
            .map(|&a| u64::from(a.saturating_sub(1)))
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.received.len() == self.predicted.len()
    }

    /// Time of the retransmission that follows a loss observed at `now`, or
    /// `RetryLimitExceeded` when the cap has been reached.
    pub fn retransmit_at(
        &self,
        id: CloudletId,
        ch: &ChannelConfig,
        now: SimTime,
    ) -> Result<SimTime, TransferError> {
        if ch.max_retries.allows(self.retransmit_counter(id)) {
            Ok(now + ch.unit_time)
        } else {
            Err(TransferError::RetryLimitExceeded(id))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransferOutcome {
    Delivered { at: SimTime },
    Lost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Response {
    Ack(CloudletId),
    RetransmitRequest(CloudletId),
}

/// Sends one attempt of `cloudlet`. `lost` is the channel draw for this
/// attempt; on delivery the frame lands after the link latency.
pub fn transmit_cloudlet(
    state: &mut TransferState,
    cloudlet: &Cloudlet,
    link: &LinkMetrics,
    now: SimTime,
    lost: bool,
) -> Result<TransferOutcome, TransferError> {
    if !state.predicted.contains(cloudlet.id) {
        return Err(TransferError::UnexpectedCloudlet(cloudlet.id));
    }
    *state.attempts.entry(cloudlet.id).or_insert(0) += 1;
    if lost {
        Ok(TransferOutcome::Lost)
    } else {
        Ok(TransferOutcome::Delivered {
            at: now + link.latency(cloudlet.length),
        })
    }
}

/// VM side: ACK an expected frame, re-ACK a duplicate, ask for anything else
/// to be resent.
pub fn receive_cloudlet(state: &mut TransferState, frame: &Cloudlet) -> Response {
    if !state.predicted.contains(frame.id) {
        return Response::RetransmitRequest(frame.id);
    }
    state.received.insert(frame.id);
    Response::Ack(frame.id)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeliveredCloudlet {
    pub cloudlet: Cloudlet,
    pub delivered_at: SimTime,
    pub attempts: u32,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeliveredBatch {
    /// Delivery order.
    pub cloudlets: Vec<DeliveredCloudlet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferStats {
    pub attempts: u64,
    pub retransmissions: u64,
    pub completion_time: SimTime,
}

/// Transfers one batch end to end with stop-and-wait, starting at `now`.
pub fn run_batch_transfer<L: LossSource + ?Sized>(
    cloudlets: &[Cloudlet],
    link: &LinkMetrics,
    ch: &ChannelConfig,
    losses: &mut L,
    now: SimTime,
) -> Result<(DeliveredBatch, TransferStats), TransferError> {
    let predicted = send_id_list(cloudlets)?;
    let mut state = TransferState::new(predicted, ch.batch_size)?;
    let mut order: Vec<Cloudlet> = cloudlets.to_vec();
    order.sort_by_key(|c| c.id);
    order.dedup_by_key(|c| c.id);

    let mut t = now;
    let mut batch = DeliveredBatch::default();
    for c in &order {
        loop {
            let lost = losses.is_lost(c.id, state.attempts(c.id) + 1);
            match transmit_cloudlet(&mut state, c, link, t, lost)? {
                TransferOutcome::Delivered { at } => match receive_cloudlet(&mut state, c) {
                    Response::Ack(_) => {
                        t = at;
                        let mut delivered = *c;
                        delivered.status = CloudletStatus::Delivered;
                        batch.cloudlets.push(DeliveredCloudlet {
                            cloudlet: delivered,
                            delivered_at: at,
                            attempts: state.attempts(c.id),
                        });
                        break;
                    }
                    Response::RetransmitRequest(id) => {
                        t = state.retransmit_at(id, ch, at)?;
                    }
                },
                TransferOutcome::Lost => {
                    t = state.retransmit_at(c.id, ch, t)?;
                }
            }
        }
    }
    debug_assert!(state.is_complete());
    let stats = TransferStats {
        attempts: state.total_attempts(),
        retransmissions: state.total_retransmissions(),
        completion_time: t,
    };
    Ok((batch, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TaskId;
    use proptest::prelude::*;

    fn batch(ids: &[u32]) -> Vec<Cloudlet> {
        ids.iter().map(|&i| Cloudlet::new(i, 10, TaskId(0))).collect()
    }

    fn link() -> LinkMetrics {
        LinkMetrics::new(1, 2.0, 100.0, 0.0)
    }

    fn state_for(ids: &[u32]) -> TransferState {
        TransferState::new(send_id_list(&batch(ids)).unwrap(), DEFAULT_BATCH_SIZE).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn id_list_is_sorted() {
        let p = send_id_list(&batch(&[3, 1, 2])).unwrap();
        assert_eq!(p.ids(), &[CloudletId(1), CloudletId(2), CloudletId(3)]);
        let p = send_id_list(&batch(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9])).unwrap();
        assert_eq!(p.ids().len(), 10);
        assert!(p.ids().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(send_id_list(&[]), Err(TransferError::EmptyBatch));
    }

    #[test]
    fn id_list_drops_duplicates() {
        let p = send_id_list(&batch(&[2, 2, 1])).unwrap();
        assert_eq!(p.ids(), &[CloudletId(1), CloudletId(2)]);
    }

    #[test]
    fn lossless_latency() {
        let mut s = state_for(&[0]);
        let c = batch(&[0])[0];
        match transmit_cloudlet(&mut s, &c, &link(), 0.0, false).unwrap() {
            TransferOutcome::Delivered { at } => assert!(close(at, 2.1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn transmit_rejects_unpredicted() {
        let mut s = state_for(&[0]);
        let c = batch(&[5])[0];
        assert_eq!(
            transmit_cloudlet(&mut s, &c, &link(), 0.0, false),
            Err(TransferError::UnexpectedCloudlet(CloudletId(5)))
        );
    }

    #[test]
    fn scripted_lose_then_deliver() {
        // lost at 0, resent at 0 + 1, lands at 1 + 2.1
        let ch = ChannelConfig::lossless();
        let mut losses = ScriptedLoss::sequence([true, false]);
        let (b, stats) = run_batch_transfer(&batch(&[0]), &link(), &ch, &mut losses, 0.0).unwrap();
        assert!(close(b.cloudlets[0].delivered_at, 3.1));
        assert_eq!(b.cloudlets[0].attempts, 2);
        assert_eq!(stats.retransmissions, 1);
        assert!(close(stats.completion_time, 3.1));
    }

    #[test]
    fn counter_tracks_attempts() {
        let mut s = state_for(&[0]);
        let c = batch(&[0])[0];
        assert_eq!(
            transmit_cloudlet(&mut s, &c, &link(), 0.0, true).unwrap(),
            TransferOutcome::Lost
        );
        assert_eq!(s.retransmit_at(c.id, &ChannelConfig::lossless(), 0.0), Ok(1.0));
        transmit_cloudlet(&mut s, &c, &link(), 1.0, false).unwrap();
        assert_eq!(s.retransmit_counter(c.id), 1);
    }

    #[test]
    fn retry_cap_allows_max_plus_one_attempts() {
        let ch = ChannelConfig::lossless()
            .with_loss(1.0)
            .with_max_retries(RetryLimit::Limited(3));
        let mut s = state_for(&[0]);
        let c = batch(&[0])[0];
        let mut attempts = 0;
        let mut t = 0.0;
        let err = loop {
            attempts += 1;
            assert_eq!(
                transmit_cloudlet(&mut s, &c, &link(), t, true).unwrap(),
                TransferOutcome::Lost
            );
            match s.retransmit_at(c.id, &ch, t) {
                Ok(next) => t = next,
                Err(e) => break e,
            }
        };
        assert_eq!(attempts, 4);
        assert_eq!(err, TransferError::RetryLimitExceeded(CloudletId(0)));
    }

    #[test]
    fn receive_acks_expected_frame() {
        let mut s = state_for(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let f = batch(&[0])[0];
        assert_eq!(receive_cloudlet(&mut s, &f), Response::Ack(CloudletId(0)));
        assert!(s.received().contains(&CloudletId(0)));
    }

    #[test]
    fn receive_requests_resend_of_unknown_frame() {
        let mut s = state_for(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let f = batch(&[42])[0];
        assert_eq!(
            receive_cloudlet(&mut s, &f),
            Response::RetransmitRequest(CloudletId(42))
        );
        assert!(s.received().is_empty());
    }

    #[test]
    fn duplicate_frame_is_reacked() {
        let mut s = state_for(&[0, 1]);
        let f = batch(&[0])[0];
        receive_cloudlet(&mut s, &f);
        let before = s.received().clone();
        assert_eq!(receive_cloudlet(&mut s, &f), Response::Ack(CloudletId(0)));
        assert_eq!(s.received(), &before);
    }

    #[test]
    fn lossless_batch() {
        let ids: Vec<u32> = (0..10).collect();
        let (b, stats) = run_batch_transfer(
            &batch(&ids),
            &link(),
            &ChannelConfig::lossless(),
            &mut ScriptedLoss::default(),
            0.0,
        )
        .unwrap();
        assert_eq!(b.cloudlets.len(), 10);
        assert_eq!(stats.attempts, 10);
        assert_eq!(stats.retransmissions, 0);
    }

    #[test]
    fn scripted_first_attempt_losses() {
        let ids: Vec<u32> = (0..10).collect();
        let (b, stats) = run_batch_transfer(
            &batch(&ids),
            &link(),
            &ChannelConfig::lossless(),
            &mut ScriptedLoss::first_attempts([2, 7]),
            0.0,
        )
        .unwrap();
        assert_eq!(stats.attempts, 12);
        assert_eq!(stats.retransmissions, 2);
        assert_eq!(b.cloudlets[2].attempts, 2);
        assert_eq!(b.cloudlets[7].attempts, 2);
        // 10 latencies of 2.1 plus two waits of 1.
        assert!(close(stats.completion_time, 23.0));
    }

    #[test]
    fn always_lossy_single_cloudlet_fails() {
        let ch = ChannelConfig::lossless()
            .with_loss(1.0)
            .with_max_retries(RetryLimit::Limited(5));
        let mut losses = SeededLoss::new(1.0, 1);
        assert_eq!(
            run_batch_transfer(&batch(&[0]), &link(), &ch, &mut losses, 0.0),
            Err(TransferError::RetryLimitExceeded(CloudletId(0)))
        );
    }

    #[test]
    fn oversize_batch_rejected() {
        let ids: Vec<u32> = (0..11).collect();
        let r = run_batch_transfer(
            &batch(&ids),
            &link(),
            &ChannelConfig::lossless(),
            &mut ScriptedLoss::default(),
            0.0,
        );
        assert_eq!(
            r,
            Err(TransferError::BatchTooLarge {
                len: 11,
                batch_size: 10
            })
        );
    }

    #[test]
    fn retry_limit_serde() {
        let v: RetryLimit = serde_json::from_str("\"unlimited\"").unwrap();
        assert_eq!(v, RetryLimit::Unlimited);
        let v: RetryLimit = serde_json::from_str("7").unwrap();
        assert_eq!(v, RetryLimit::Limited(7));
        assert!(serde_json::from_str::<RetryLimit>("0").is_err());
        assert!(serde_json::from_str::<RetryLimit>("\"forever\"").is_err());
        assert_eq!(serde_json::to_string(&RetryLimit::Unlimited).unwrap(), "\"unlimited\"");
    }

    proptest! {
        #[test]
        fn exactly_once_and_counter_law(
            n in 1u32..=10,
            p in 0.0f64..0.95,
            seed in any::<u64>(),
        ) {
            let ids: Vec<u32> = (0..n).collect();
            let ch = ChannelConfig::lossless().with_loss(p).with_max_retries(RetryLimit::Unlimited);
            let mut losses = SeededLoss::new(p, seed);
            let (b, stats) = run_batch_transfer(&batch(&ids), &link(), &ch, &mut losses, 0.0).unwrap();
            let got: Vec<u32> = b.cloudlets.iter().map(|d| d.cloudlet.id.0).collect();
            prop_assert_eq!(got, ids);
            let counters: u64 = b.cloudlets.iter().map(|d| u64::from(d.attempts - 1)).sum();
            prop_assert_eq!(stats.retransmissions, counters);
            prop_assert_eq!(stats.attempts, u64::from(n) + counters);
        }

        #[test]
        fn completion_monotone_in_losses(
            base in prop::collection::btree_set((0u32..10, 1u32..4), 0..8),
            extra in prop::collection::btree_set((0u32..10, 1u32..4), 0..8),
        ) {
            // Keyed losses only take effect on contiguous attempt prefixes, so
            // close both sets downward before comparing.
            let close_down = |s: &BTreeSet<(u32, u32)>| -> BTreeSet<(u32, u32)> {
                s.iter().flat_map(|&(id, a)| (1..=a).map(move |k| (id, k))).collect()
            };
            let small = close_down(&base);
            let large: BTreeSet<_> = close_down(&base.union(&extra).copied().collect());
            let ids: Vec<u32> = (0..10).collect();
            let ch = ChannelConfig::lossless();
            let run = |losses: &BTreeSet<(u32, u32)>| {
                let mut src = ScriptedLoss::attempts(losses.iter().copied());
                run_batch_transfer(&batch(&ids), &link(), &ch, &mut src, 0.0).unwrap().1
            };
            let a = run(&small);
            let b = run(&large);
            prop_assert!(a.completion_time <= b.completion_time);
            prop_assert_eq!(a.retransmissions, small.len() as u64);
            prop_assert_eq!(b.retransmissions, large.len() as u64);
        }
    }
}
