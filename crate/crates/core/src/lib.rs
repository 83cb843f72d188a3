//! Discrete-event simulator of a broker / virtual-machine communication
//! framework for cloudlet execution.
//!
//! A user task is split into cloudlets, VMs are provisioned and ranked by a
//! weighted link cost, the cheapest VM receives the cloudlets over a lossy
//! link with ACK/retransmit, and the VM executes them first-come-first-serve
//! or round robin. Runs are deterministic for a given seed.

pub mod cli;
pub mod compare;
pub mod config;
pub mod cost;
pub mod engine;
pub mod model;
pub mod output;
pub mod provisioning;
pub mod report;
pub mod scheduler;
pub mod transfer;

pub use compare::{compare_policies, ComparisonReport};
pub use config::{load_config, parse_config, ScenarioConfig};
pub use engine::{run_scenario, RunError, SimError, Simulation};
pub use output::{emit_report, Format};
pub use report::{RunStatus, SimulationReport};
