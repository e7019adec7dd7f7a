use std::collections::BTreeMap;
use std::fmt;

use super::belief::{Belief, BeliefError};
use super::duration::{Duration, DurationError};

/// A discrete fuzzy quantity: a finite, normal membership function over
/// non-negative durations.
///
/// Points are kept sorted by duration with strictly increasing values, every
/// belief is in (0, 1], and at least one point has belief 1. Quantities are
/// immutable; every operation returns a new value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteFuzzyQuantity {
    points: Vec<(Duration, Belief)>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QuantityError {
    #[error("empty support: a fuzzy quantity needs at least one point")]
    EmptySupport,
    #[error("not normal: no point has belief 1")]
    NonNormal,
    #[error("duplicate duration {0} in support")]
    DuplicateDuration(String),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error(transparent)]
    Duration(#[from] DurationError),
    #[error("malformed point `{0}`: expected `value/belief`")]
    MalformedPoint(String),
}

impl DiscreteFuzzyQuantity {
    /// Validates, sorts, and wraps a raw point list.
    pub fn new(mut points: Vec<(Duration, Belief)>) -> Result<Self, QuantityError> {
        if points.is_empty() {
            return Err(QuantityError::EmptySupport);
        }
        points.sort_by_key(|&(d, _)| d);
        for pair in points.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(QuantityError::DuplicateDuration(pair[0].0.raw().to_string()));
            }
        }
        if !points.iter().any(|&(_, b)| b.is_one()) {
            return Err(QuantityError::NonNormal);
        }
        Ok(Self { points })
    }

    /// The crisp quantity `d/1`.
    pub fn certain(d: Duration) -> Self {
        Self { points: vec![(d, Belief::ONE)] }
    }

    pub fn points(&self) -> &[(Duration, Belief)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: non-empty
    }

    pub fn belief_of(&self, d: Duration) -> Option<Belief> {
        self.points
            .binary_search_by_key(&d, |&(v, _)| v)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn min_support(&self) -> Duration {
        self.points[0].0
    }

    pub fn max_support(&self) -> Duration {
        self.points[self.points.len() - 1].0
    }

    /// Extension-principle addition: mu(z) = max over x+y=z of min(mu_a(x), mu_b(y)).
    pub fn fuzzy_add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x.checked_add(y).expect("duration overflow in fuzzy_add"))
    }

    /// Extension-principle maximum: mu(z) = max over max(x,y)=z of min(mu_a(x), mu_b(y)).
    pub fn fuzzy_max(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x.max(y))
    }

    fn combine(&self, other: &Self, op: impl Fn(Duration, Duration) -> Duration) -> Self {
        let mut merged: BTreeMap<Duration, Belief> = BTreeMap::new();
        for &(x, bx) in &self.points {
            for &(y, by) in &other.points {
                let z = op(x, y);
                let b = bx.min(by);
                merged
                    .entry(z)
                    .and_modify(|cur| *cur = (*cur).max(b))
                    .or_insert(b);
            }
        }
        // inputs are normal, so the pair of belief-1 points yields a belief-1 output
        let points = merged.into_iter().collect();
        Self { points }
    }

    /// Sum of duration x belief over all points, in raw units
    /// (duration raw scale times the belief scale of 10^9).
    pub fn area_raw(&self) -> i128 {
        self.points
            .iter()
            .map(|&(d, b)| d.raw() as i128 * b.raw())
            .sum()
    }

    /// Renders the paper-style literal `v1/b1, v2/b2, ...`.
    pub fn format(&self, scale: u32) -> String {
        self.points
            .iter()
            .map(|&(d, b)| format!("{}/{}", d.format(scale), b))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for DiscreteFuzzyQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(0))
    }
}

/// Parses the `v1/b1, v2/b2, ...` literal syntax.
///
/// Points with belief exactly 0 are stripped (they are not part of the
/// support) and reported in the returned warning list.
pub fn parse_quantity_literal(
    s: &str,
    scale: u32,
    belief_precision: u32,
) -> Result<(DiscreteFuzzyQuantity, Vec<String>), QuantityError> {
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (v, b) = part
            .split_once('/')
            .ok_or_else(|| QuantityError::MalformedPoint(part.to_string()))?;
        let d = Duration::parse(v, scale)?;
        if is_zero_literal(b) {
            warnings.push(format!("stripped zero-belief point `{part}`"));
            continue;
        }
        let belief = Belief::parse(b, belief_precision)?;
        points.push((d, belief));
    }
    let q = DiscreteFuzzyQuantity::new(points)?;
    Ok((q, warnings))
}

pub(crate) fn is_zero_literal(s: &str) -> bool {
    let s = s.trim();
    !s.is_empty() && s.chars().all(|c| c == '0' || c == '.') && s.matches('.').count() <= 1
}
