use serde::{Deserialize, Serialize};

pub const PIPELINE_VERSION: &str = "split-first-v1";

/// Counters and hits of one search run. Each `passed_*` counter counts the
/// candidates that survived that filter and every filter before it in the
/// cascade.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: u32,
    pub n: usize,
    pub shard: u64,
    pub total_shards: u64,
    pub tested: u64,
    pub passed_newton: u64,
    pub passed_rootless: u64,
    pub passed_squarefree: u64,
    pub split: u64,
    pub irreducible: u64,
    pub hits: Vec<String>,
    pub seed_or_space: String,
    pub pipeline: String,
    pub wall_time_s: f64,
}

impl SearchReport {
    pub fn new(q: u32, n: usize, shard: u64, total_shards: u64, seed_or_space: String) -> Self {
        SearchReport {
            q,
            n,
            shard,
            total_shards,
            seed_or_space,
            pipeline: PIPELINE_VERSION.into(),
            ..Default::default()
        }
    }

    /// Fold another shard's counters and hits into this one.
    pub fn merge(&mut self, o: &SearchReport) {
        self.tested += o.tested;
        self.passed_newton += o.passed_newton;
        self.passed_rootless += o.passed_rootless;
        self.passed_squarefree += o.passed_squarefree;
        self.split += o.split;
        self.irreducible += o.irreducible;
        self.hits.extend(o.hits.iter().cloned());
        self.wall_time_s += o.wall_time_s;
    }

    /// The counters in cascade-independent order, for comparisons.
    pub fn counters(&self) -> [u64; 6] {
        [
            self.tested,
            self.passed_rootless,
            self.passed_newton,
            self.passed_squarefree,
            self.split,
            self.irreducible,
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
