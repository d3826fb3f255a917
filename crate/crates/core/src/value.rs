//! Coalition-value models: how much work a coalition does on a task in one
//! tick.
//!
//! Values are generated lazily and memoized per `(coalition, task)`; the
//! full table over the power set of agents is never materialized. Every
//! value is a pure function of `(model, coalition, task)`: the draw uses a
//! dedicated ChaCha8 stream derived from the model seed, the coalition
//! bitset and the task id, so caches built independently (or queried in a
//! different order) agree bit-for-bit.
//!
//! Draw recipe per `(C, v)` query, in stream order:
//!
//! 1. empty coalition: 0, no draws;
//! 2. base value: NDCS kinds sample `Normal(|C|, |C|^(1/4))` once, clamped
//!    at 0; agent-based kinds sample `U(0, 2 * p_a)` per member in id
//!    order and sum (`p_a ~ U(0, 10)` is drawn per agent from its own
//!    stream at cache construction);
//! 3. urgency/congestion kinds then draw, if the base is positive: a coin
//!    against `deadline / (t_max + 1)` and on success `r ~ U(base/10,
//!    base/4)`, then a coin against `|C| / (|A| + 1)` and on success
//!    `q ~ U(base/10, base/4)`; both are subtracted and the result is
//!    clamped at 0.
//!
//! The perturbation draws are decided once per `(C, v)` and memoized with
//! the value, never re-rolled.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::coalition::Coalition;
use crate::model::{Instance, TaskId};
use crate::seeding;

/// Entry of an explicit value table: (coalition, task, value per tick).
pub type TableEntry = (Coalition, TaskId, f64);

/// Configuration of a coalition-value distribution.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum ValueModel {
    /// Normally distributed coalition structures: `N(|C|, |C|^(1/4))`.
    Ndcs { seed: u64 },
    /// Sum of per-member in-coalition performances.
    AgentBased { seed: u64 },
    /// NDCS with urgency and congestion perturbations.
    UcNdcs { seed: u64 },
    /// Agent-based with urgency and congestion perturbations.
    UcAgentBased { seed: u64 },
    /// Explicit table with a default for missing entries; for tests and
    /// hand-built micro instances.
    Table { entries: Vec<TableEntry>, default: f64 },
}

impl ValueModel {
    pub fn ndcs(seed: u64) -> Self {
        ValueModel::Ndcs { seed }
    }

    pub fn agent_based(seed: u64) -> Self {
        ValueModel::AgentBased { seed }
    }

    pub fn uc_ndcs(seed: u64) -> Self {
        ValueModel::UcNdcs { seed }
    }

    pub fn uc_agent_based(seed: u64) -> Self {
        ValueModel::UcAgentBased { seed }
    }

    pub fn table(entries: Vec<TableEntry>, default: f64) -> Self {
        ValueModel::Table { entries, default }
    }
}

/// The four named random distributions, as they appear in configuration
/// files and result metadata.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ValueDistribution {
    Ndcs,
    AgentBased,
    UcNdcs,
    UcAgentBased,
}

impl ValueDistribution {
    pub fn model(self, seed: u64) -> ValueModel {
        match self {
            ValueDistribution::Ndcs => ValueModel::Ndcs { seed },
            ValueDistribution::AgentBased => ValueModel::AgentBased { seed },
            ValueDistribution::UcNdcs => ValueModel::UcNdcs { seed },
            ValueDistribution::UcAgentBased => ValueModel::UcAgentBased { seed },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ValueDistribution::Ndcs => "ndcs",
            ValueDistribution::AgentBased => "agent_based",
            ValueDistribution::UcNdcs => "uc_ndcs",
            ValueDistribution::UcAgentBased => "uc_agent_based",
        }
    }

    pub const ALL: [ValueDistribution; 4] = [
        ValueDistribution::Ndcs,
        ValueDistribution::AgentBased,
        ValueDistribution::UcNdcs,
        ValueDistribution::UcAgentBased,
    ];
}

const TAG_VALUE: &str = "coalition-value";
const TAG_PERF: &str = "agent-perf";

/// Memoizing view of an instance's value model. Confine one cache to one
/// simulation thread; queries are referentially transparent given the
/// seed, so independent caches agree.
pub struct ValueCache<'a> {
    instance: &'a Instance,
    memo: BTreeMap<(Coalition, TaskId), f64>,
    /// `p_a` per agent; populated for the agent-based kinds.
    agent_perf: Vec<f64>,
    table: BTreeMap<(Coalition, TaskId), f64>,
    table_default: f64,
}

impl<'a> ValueCache<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let mut agent_perf = Vec::new();
        let mut table = BTreeMap::new();
        let mut table_default = 0.0;
        match &instance.values {
            ValueModel::AgentBased { seed } | ValueModel::UcAgentBased { seed } => {
                let mut rng = seeding::stream(*seed, TAG_PERF, &[]);
                agent_perf = (0..instance.agents.len()).map(|_| rng.gen_range(0.0..10.0)).collect();
            }
            ValueModel::Table { entries, default } => {
                table_default = *default;
                for (c, v, u) in entries {
                    table.insert((*c, *v), *u);
                }
            }
            _ => {}
        }
        ValueCache { instance, memo: BTreeMap::new(), agent_perf, table, table_default }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    /// Individual performance `p_a` of an agent under the agent-based
    /// kinds; 0 otherwise.
    pub fn agent_performance(&self, agent: usize) -> f64 {
        self.agent_perf.get(agent).copied().unwrap_or(0.0)
    }

    /// The coalition value `u(C, v)`: work done per tick, always >= 0,
    /// 0 for the empty coalition.
    pub fn value(&mut self, coalition: &Coalition, task: TaskId) -> f64 {
        if coalition.is_empty() {
            return 0.0;
        }
        if let Some(v) = self.memo.get(&(*coalition, task)) {
            return *v;
        }
        let value = self.generate(coalition, task);
        self.memo.insert((*coalition, task), value);
        value
    }

    fn generate(&self, coalition: &Coalition, task: TaskId) -> f64 {
        let (seed, base_kind, perturbed) = match &self.instance.values {
            ValueModel::Ndcs { seed } => (*seed, BaseKind::Ndcs, false),
            ValueModel::AgentBased { seed } => (*seed, BaseKind::AgentBased, false),
            ValueModel::UcNdcs { seed } => (*seed, BaseKind::Ndcs, true),
            ValueModel::UcAgentBased { seed } => (*seed, BaseKind::AgentBased, true),
            ValueModel::Table { .. } => {
                let v = self
                    .table
                    .get(&(*coalition, task))
                    .copied()
                    .unwrap_or(self.table_default);
                return if v > 0.0 { v } else { 0.0 };
            }
        };
        let words = coalition.words();
        let mut rng = seeding::stream(
            seed,
            TAG_VALUE,
            &[task.0 as u64, words[0], words[1], words[2], words[3]],
        );
        let base = match base_kind {
            BaseKind::Ndcs => {
                let n = coalition.len() as f64;
                let sigma = libm::pow(n, 0.25);
                let draw = Normal::new(n, sigma).expect("finite parameters").sample(&mut rng);
                if draw > 0.0 {
                    draw
                } else {
                    0.0
                }
            }
            BaseKind::AgentBased => {
                let mut sum = 0.0;
                for a in coalition.iter() {
                    let p = self.agent_perf.get(a.0 as usize).copied().unwrap_or(0.0);
                    if p > 0.0 {
                        sum += rng.gen_range(0.0..2.0 * p);
                    }
                }
                sum
            }
        };
        if !perturbed || base <= 0.0 {
            return base;
        }
        let deadline = self.instance.task(task).deadline as f64;
        let t_max = self.instance.t_max() as f64;
        let n_agents = self.instance.agents.len() as f64;
        let mut value = base;
        let p_urgent = deadline / (t_max + 1.0);
        if rng.gen::<f64>() < p_urgent {
            value -= rng.gen_range(base / 10.0..base / 4.0);
        }
        let p_congested = coalition.len() as f64 / (n_agents + 1.0);
        if rng.gen::<f64>() < p_congested {
            value -= rng.gen_range(base / 10.0..base / 4.0);
        }
        if value > 0.0 {
            value
        } else {
            0.0
        }
    }
}

enum BaseKind {
    Ndcs,
    AgentBased,
}
