//! Seeded random instance generation, used by the survey command and the
//! property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration, DEFAULT_BELIEF_PRECISION};
use crate::network::{ActivityInput, ProjectNetwork};

#[derive(Debug, Clone, Copy)]
pub enum NetworkShape {
    /// Every activity has at most one predecessor and one successor.
    Chain,
    /// Random DAG over declaration order; dummies are inserted as needed.
    Dag,
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub max_activities: usize,
    pub max_points: usize,
    pub max_value: u64,
    pub shape: NetworkShape,
}

impl Default for GenParams {
    fn default() -> Self {
        Self { max_activities: 6, max_points: 3, max_value: 9, shape: NetworkShape::Dag }
    }
}

/// A random discrete fuzzy quantity: up to `max_points` distinct duration
/// values, beliefs on a tenths grid with exactly the normality constraint
/// (at least one belief 1).
pub fn random_quantity(rng: &mut impl Rng, max_points: usize, max_value: u64) -> DiscreteFuzzyQuantity {
    let k = rng.gen_range(1..=max_points.min((max_value + 1) as usize));
    let mut values: Vec<u64> = (0..=max_value).collect();
    values.shuffle(rng);
    values.truncate(k);
    values.sort_unstable();
    let normal_at = rng.gen_range(0..k);
    let points = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let belief = if i == normal_at {
                Belief::ONE
            } else {
                Belief::from_millis(rng.gen_range(1..=10) * 100).unwrap()
            };
            (Duration::from_raw(v), belief)
        })
        .collect();
    DiscreteFuzzyQuantity::new(points).expect("generated points are valid")
}

/// A random validated network at duration scale 0.
pub fn random_network(rng: &mut impl Rng, params: GenParams) -> ProjectNetwork {
    let n = rng.gen_range(1..=params.max_activities);
    let mut inputs = Vec::with_capacity(n);
    for i in 0..n {
        let predecessors: Vec<String> = match params.shape {
            NetworkShape::Chain => {
                if i == 0 {
                    vec![]
                } else {
                    vec![format!("a{}", i)]
                }
            }
            NetworkShape::Dag => (0..i)
                .filter(|_| rng.gen_bool(0.4))
                .map(|j| format!("a{}", j + 1))
                .collect(),
        };
        inputs.push(ActivityInput {
            id: format!("a{}", i + 1),
            label: String::new(),
            predecessors,
            duration: random_quantity(rng, params.max_points, params.max_value),
            is_dummy: false,
        });
    }
    ProjectNetwork::build(inputs, 0, DEFAULT_BELIEF_PRECISION).expect("generated network is valid")
}
