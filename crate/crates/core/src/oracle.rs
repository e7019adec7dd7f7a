//! Ground truth by configuration enumeration: the fuzzy set of critical
//! path lengths computed directly from the extension principle, plus a
//! seeded sampling approximation with an AREA-based stopping rule.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decimal::pow10;
use crate::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration, BELIEF_FRAC_DIGITS};
use crate::network::{NetworkError, ProjectNetwork};

pub const DEFAULT_CONFIG_CAP: u128 = 10_000_000;
pub const DEFAULT_TOLERANCE: &str = "0.001";
pub const DEFAULT_BATCH_SIZE: u64 = 64;
pub const DEFAULT_MAX_BATCHES: u64 = 10_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{count} configurations exceed the cap of {cap}")]
    ConfigurationCapExceeded { count: u128, cap: u128 },
    #[error("invalid sampling parameters: {0}")]
    InvalidSamplingParams(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// One crisp duration choice per activity, with the derived belief
/// (minimum over the chosen beliefs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    /// One chosen support point per activity, in activity order.
    pub choices: Vec<(Duration, Belief)>,
}

impl Configuration {
    pub fn durations(&self) -> Vec<Duration> {
        self.choices.iter().map(|&(d, _)| d).collect()
    }

    /// Minimum of the beliefs of all chosen durations.
    pub fn belief(&self) -> Belief {
        self.choices.iter().map(|&(_, b)| b).min().expect("non-empty")
    }
}

/// Iterator over all configurations in lexicographic order: the first
/// activity varies slowest, support points in ascending duration order.
pub struct ConfigurationIter<'a> {
    net: &'a ProjectNetwork,
    strides: Vec<u128>,
    sizes: Vec<u128>,
    next: u128,
    total: u128,
}

impl<'a> ConfigurationIter<'a> {
    pub fn total(&self) -> u128 {
        self.total
    }

    /// Decodes the configuration at a lexicographic index. Index-addressed
    /// access is what makes partitioned (parallel) enumeration produce
    /// bit-identical results to the sequential scan.
    pub fn at(&self, idx: u128) -> Configuration {
        let choices = self
            .net
            .activities()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let digit = (idx / self.strides[k]) % self.sizes[k];
                a.duration.points()[digit as usize]
            })
            .collect();
        Configuration { choices }
    }
}

impl Iterator for ConfigurationIter<'_> {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.next >= self.total {
            return None;
        }
        let c = self.at(self.next);
        self.next += 1;
        Some(c)
    }
}

/// All configurations of the network, capped.
pub fn enumerate_configurations(
    net: &ProjectNetwork,
    cap: u128,
) -> Result<ConfigurationIter<'_>, OracleError> {
    let count = net.configuration_count();
    if count > cap {
        return Err(OracleError::ConfigurationCapExceeded { count, cap });
    }
    let sizes: Vec<u128> = net
        .activities()
        .iter()
        .map(|a| a.duration.len() as u128)
        .collect();
    let mut strides = vec![1u128; sizes.len()];
    for k in (0..sizes.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * sizes[k + 1];
    }
    Ok(ConfigurationIter { net, strides, sizes, next: 0, total: count })
}

/// The extension-principle fuzzy set of critical path lengths: for each
/// configuration take the crisp critical path length and the configuration
/// belief, then keep the maximum belief per distinct length.
pub fn oracle_cp_set(
    net: &ProjectNetwork,
    cap: u128,
) -> Result<DiscreteFuzzyQuantity, OracleError> {
    let mut agg: BTreeMap<Duration, Belief> = BTreeMap::new();
    for config in enumerate_configurations(net, cap)? {
        let length = net
            .crisp_forward_pass(&config.durations())
            .expect("configuration covers all activities")
            .cp_length;
        let belief = config.belief();
        agg.entry(length)
            .and_modify(|b| *b = (*b).max(belief))
            .or_insert(belief);
    }
    Ok(DiscreteFuzzyQuantity::new(agg.into_iter().collect())
        .expect("normal configuration exists"))
}

/// One row of the configuration table: the chosen durations, every
/// start-to-finish path length, the critical path length, and the belief.
#[derive(Debug, Clone)]
pub struct ConfigTableRow {
    pub configuration: Configuration,
    pub path_lengths: Vec<Duration>,
    pub cp_length: Duration,
    pub belief: Belief,
}

/// Full configuration table (one row per configuration, path columns from
/// path enumeration), plus the enumerated paths themselves.
pub fn configuration_table(
    net: &ProjectNetwork,
    config_cap: u128,
    path_cap: usize,
) -> Result<(Vec<Vec<usize>>, Vec<ConfigTableRow>), OracleError> {
    let paths = net.enumerate_paths(path_cap)?;
    let mut rows = Vec::new();
    for configuration in enumerate_configurations(net, config_cap)? {
        let durations = configuration.durations();
        let path_lengths = paths
            .iter()
            .map(|p| {
                p.iter().fold(Duration::ZERO, |acc, &i| {
                    acc.checked_add(durations[i]).expect("duration overflow")
                })
            })
            .collect::<Vec<_>>();
        let cp_length = *path_lengths.iter().max().expect("at least one path");
        let belief = configuration.belief();
        rows.push(ConfigTableRow { configuration, path_lengths, cp_length, belief });
    }
    Ok((paths, rows))
}

/// One convergence snapshot taken at the end of a batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub samples: u64,
    /// AREA in raw units (duration raw x belief raw over 10^9).
    pub area_raw: i128,
    /// Increase over the previous snapshot; `None` for the first batch.
    pub delta_raw: Option<i128>,
}

#[derive(Debug, Clone)]
pub struct SampleOutcome {
    /// Estimated fuzzy set of critical path lengths. May lack a belief-1
    /// point if sampling stopped before a full-belief configuration was
    /// drawn; see `is_normal`.
    pub points: Vec<(Duration, Belief)>,
    pub is_normal: bool,
    pub trace: Vec<TraceEntry>,
}

impl SampleOutcome {
    pub fn quantity(&self) -> Option<DiscreteFuzzyQuantity> {
        DiscreteFuzzyQuantity::new(self.points.clone()).ok()
    }
}

/// Random configuration sampling with the AREA stopping rule: draw
/// configurations (one uniformly chosen support point per activity),
/// score each exactly like the exhaustive oracle, and stop once the
/// relative AREA change between consecutive batches drops below the
/// tolerance (or at `max_batches`).
///
/// The i-th sample's choices derive only from `(seed, i)`, so the trace and
/// estimate are reproducible regardless of how the work is scheduled.
pub fn sample_cp_set(
    net: &ProjectNetwork,
    seed: u64,
    tolerance_raw: i128,
    batch_size: u64,
    max_batches: u64,
) -> Result<SampleOutcome, OracleError> {
    if tolerance_raw <= 0 {
        return Err(OracleError::InvalidSamplingParams("tolerance must be > 0".into()));
    }
    if batch_size == 0 {
        return Err(OracleError::InvalidSamplingParams("batch size must be >= 1".into()));
    }
    let mut agg: BTreeMap<Duration, Belief> = BTreeMap::new();
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut drawn: u64 = 0;
    let tol_scale = pow10(BELIEF_FRAC_DIGITS);

    for _batch in 0..max_batches {
        for _ in 0..batch_size {
            let config = draw_configuration(net, seed, drawn);
            drawn += 1;
            let length = net
                .crisp_forward_pass(&config.durations())
                .expect("configuration covers all activities")
                .cp_length;
            let belief = config.belief();
            agg.entry(length)
                .and_modify(|b| *b = (*b).max(belief))
                .or_insert(belief);
        }
        let area_raw: i128 = agg.iter().map(|(&d, &b)| d.raw() as i128 * b.raw()).sum();
        let prev = trace.last().map(|t| t.area_raw);
        let delta_raw = prev.map(|p| area_raw - p);
        trace.push(TraceEntry { samples: drawn, area_raw, delta_raw });
        if let (Some(prev_area), Some(delta)) = (prev, delta_raw) {
            // relative change |delta| / prev < tolerance, compared exactly;
            // a zero previous area counts as not yet converged
            if prev_area > 0 && delta.abs() * tol_scale < tolerance_raw * prev_area {
                break;
            }
        }
    }

    let points: Vec<(Duration, Belief)> = agg.into_iter().collect();
    let is_normal = points.iter().any(|&(_, b)| b.is_one());
    Ok(SampleOutcome { points, is_normal, trace })
}

fn draw_configuration(net: &ProjectNetwork, seed: u64, index: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let choices = net
        .activities()
        .iter()
        .map(|a| {
            let points = a.duration.points();
            points[rng.gen_range(0..points.len())]
        })
        .collect();
    Configuration { choices }
}
