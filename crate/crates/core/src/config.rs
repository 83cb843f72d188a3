//! Scenario configuration: one JSON document describes one run.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{BandwidthMode, CostWeights};
use crate::model::{LinkMetrics, Mi};
use crate::provisioning::{ResourceKind, Resources};
use crate::scheduler::{Policy, SchedulerConfig};
use crate::transfer::ChannelConfig;

pub const DEFAULT_CLOUDLET_SIZE: Mi = 10;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ConfigError {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub total_length: Mi,
    #[serde(default = "default_cloudlet_size")]
    pub cloudlet_size: Mi,
}

fn default_cloudlet_size() -> Mi {
    DEFAULT_CLOUDLET_SIZE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VmCandidate {
    pub link: LinkMetrics,
    pub demand: Resources,
}

/// How delivered cloudlets are spread over the prioritized VMs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DispatchMode {
    /// The whole task goes to the single lowest-cost VM.
    #[default]
    Single,
    /// Cloudlet `i` goes to the `i mod n`-th VM of the prioritized list.
    Spread,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub task: TaskSpec,
    pub vm_pool: Vec<VmCandidate>,
    /// Provider capacity. Defaults to the sum of all candidate demands.
    #[serde(default)]
    pub resource_pool: Option<Resources>,
    #[serde(default)]
    pub weights: CostWeights,
    #[serde(default)]
    pub bandwidth_mode: BandwidthMode,
    #[serde(default)]
    pub channel: ChannelConfig,
    #[serde(default)]
    pub scheduler: SchedulerConfig,
    #[serde(default)]
    pub dispatch: DispatchMode,
    #[serde(default)]
    pub rng_seed: u64,
}

impl ScenarioConfig {
    /// One 100 MI task in ten 10 MI cloudlets, three VMs with distinct links,
    /// unit weights, 20% loss, seed 42, FCFS.
    pub fn default_scenario() -> Self {
        let vm = |link: LinkMetrics, cpu: f64, mem: f64| VmCandidate {
            link,
            demand: [(ResourceKind::CpuRate, cpu), (ResourceKind::Memory, mem)]
                .into_iter()
                .collect(),
        };
        let mut cfg = Self {
            task: TaskSpec {
                total_length: 100,
                cloudlet_size: DEFAULT_CLOUDLET_SIZE,
            },
            vm_pool: vec![
                vm(LinkMetrics::new(2, 10.0, 100.0, 5.0), 10.0, 8.0),
                vm(LinkMetrics::new(3, 20.0, 1000.0, 4.0), 20.0, 16.0),
                vm(LinkMetrics::new(1, 5.0, 50.0, 2.0), 5.0, 4.0),
            ],
            resource_pool: Some(
                [(ResourceKind::CpuRate, 100.0), (ResourceKind::Memory, 64.0)]
                    .into_iter()
                    .collect(),
            ),
            weights: CostWeights::default(),
            bandwidth_mode: BandwidthMode::Literal,
            channel: ChannelConfig::default().with_loss(0.2),
            scheduler: SchedulerConfig::default(),
            dispatch: DispatchMode::Single,
            rng_seed: 42,
        };
        cfg.apply_defaults();
        cfg
    }

    pub fn with_policy(mut self, policy: Policy) -> Self {
        self.scheduler.policy = policy;
        self
    }

    pub fn with_loss(mut self, p: f64) -> Self {
        self.channel.loss_probability = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    /// Fills in fields whose default depends on the rest of the document.
    pub fn apply_defaults(&mut self) {
        if self.resource_pool.is_none() {
            let mut total = Resources::new();
            for c in &self.vm_pool {
                for (&kind, &qty) in &c.demand {
                    *total.entry(kind).or_insert(0.0) += qty;
                }
            }
            self.resource_pool = Some(total);
        }
    }

    pub fn capacity(&self) -> Resources {
        self.resource_pool.clone().unwrap_or_default()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn bad(field: impl Into<String>, reason: &str) -> ConfigError {
            ConfigError::validation(field, reason)
        }
        if self.task.total_length == 0 {
            return Err(bad("task.total_length", "must be positive"));
        }
        if self.task.cloudlet_size == 0 {
            return Err(bad("task.cloudlet_size", "must be positive"));
        }
        if self.vm_pool.is_empty() {
            return Err(bad("vm_pool", "at least one VM candidate is required"));
        }
        for (i, c) in self.vm_pool.iter().enumerate() {
            if let Some((field, reason)) = c.link.invalid_field() {
                return Err(bad(format!("vm_pool[{i}].link.{field}"), reason));
            }
            match c.demand.get(&ResourceKind::CpuRate) {
                Some(q) if q.is_finite() && *q > 0.0 => {}
                _ => return Err(bad(format!("vm_pool[{i}].demand.cpu_rate"), "must be positive")),
            }
            if let Some(q) = c.demand.get(&ResourceKind::Memory) {
                if !q.is_finite() || *q <= 0.0 {
                    return Err(bad(format!("vm_pool[{i}].demand.memory"), "must be positive"));
                }
            }
        }
        if let Some(pool) = &self.resource_pool {
            for (kind, q) in pool {
                if !q.is_finite() || *q < 0.0 {
                    let name = serde_json::to_value(kind)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_owned))
                        .unwrap_or_default();
                    return Err(bad(format!("resource_pool.{name}"), "must be finite and >= 0"));
                }
            }
        }
        if let Err(reason) = self.weights.validate() {
            return Err(bad("weights", reason));
        }
        if let Some((field, reason)) = self.channel.invalid_field() {
            return Err(bad(format!("channel.{field}"), reason));
        }
        if !self.scheduler.tq.is_finite() || self.scheduler.tq <= 0.0 {
            return Err(bad("scheduler.tq", "must be positive"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses and validates a scenario document, applying defaults.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg: ScenarioConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    cfg.apply_defaults();
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig, ConfigError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::RetryLimit;

    const MINIMAL: &str = r#"{
        "task": {"total_length": 100},
        "vm_pool": [{"link": {"hop_count": 2, "network_delay": 10, "bandwidth": 100, "security_cost": 5},
                     "demand": {"cpu_rate": 10}}]
    }"#;

    fn field_of(e: ConfigError) -> (String, String) {
        match e {
            ConfigError::Validation { field, reason } => (field, reason),
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn minimal_file_gets_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.task.cloudlet_size, 10);
        assert_eq!(cfg.weights, CostWeights::uniform(1.0));
        assert_eq!(cfg.scheduler.tq, 10.0);
        assert_eq!(cfg.scheduler.policy, Policy::Fcfs);
        assert_eq!(cfg.channel.batch_size, 10);
        assert_eq!(cfg.channel.max_retries, RetryLimit::Limited(100));
        assert_eq!(cfg.channel.loss_probability, 0.0);
        assert_eq!(cfg.bandwidth_mode, BandwidthMode::Literal);
        assert_eq!(cfg.dispatch, DispatchMode::Single);
        assert_eq!(cfg.capacity()[&ResourceKind::CpuRate], 10.0);
    }

    #[test]
    fn loss_out_of_range() {
        let text = MINIMAL.replacen('{', r#"{"channel": {"loss_probability": 1.5},"#, 1);
        let (field, reason) = field_of(parse_config(&text).unwrap_err());
        assert_eq!(field, "channel.loss_probability");
        assert_eq!(reason, "outside [0,1]");
    }

    #[test]
    fn zero_quantum() {
        let text = MINIMAL.replacen('{', r#"{"scheduler": {"policy": 2, "tq": 0},"#, 1);
        let (field, reason) = field_of(parse_config(&text).unwrap_err());
        assert_eq!(field, "scheduler.tq");
        assert_eq!(reason, "must be positive");
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = MINIMAL.replacen('{', r#"{"sheduler": {},"#, 1);
        assert!(matches!(parse_config(&text), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn bad_policy_number_is_parse_error() {
        let text = MINIMAL.replacen('{', r#"{"scheduler": {"policy": 3},"#, 1);
        assert!(matches!(parse_config(&text), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn parse_error_reports_location() {
        match parse_config("{\n  \"task\": ") {
            Err(ConfigError::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_bandwidth_rejected() {
        let text = MINIMAL.replace("\"bandwidth\": 100", "\"bandwidth\": 0");
        let (field, _) = field_of(parse_config(&text).unwrap_err());
        assert_eq!(field, "vm_pool[0].link.bandwidth");
    }

    #[test]
    fn empty_pool_rejected() {
        let text = r#"{"task": {"total_length": 10}, "vm_pool": []}"#;
        let (field, _) = field_of(parse_config(text).unwrap_err());
        assert_eq!(field, "vm_pool");
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_config("/nonexistent/scenario.json"),
            Err(ConfigError::Io { .. })
        ));
    }

    #[test]
    fn default_scenario_round_trips() {
        let cfg = ScenarioConfig::default_scenario();
        cfg.validate().unwrap();
        assert_eq!(parse_config(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn unlimited_retries_round_trip() {
        let mut cfg = parse_config(MINIMAL).unwrap();
        cfg.channel.max_retries = RetryLimit::Unlimited;
        assert_eq!(parse_config(&cfg.to_json()).unwrap(), cfg);
    }
}
