//! The fuzzy forward recursion: fuzzy earliest starts and finishes computed
//! compositionally with fuzzy max and fuzzy addition, plus optional
//! provenance tracking that records which partial configurations can
//! realize each support point.

use crate::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration};
use crate::network::ProjectNetwork;

pub const DEFAULT_CONFIG_CAP: u128 = 10_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ForwardError {
    #[error("provenance requires enumerating {count} configurations, above the cap of {cap}")]
    ProvenanceCapExceeded { count: u128, cap: u128 },
}

/// Per-activity fuzzy earliest start and finish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySchedule {
    pub es: Vec<DiscreteFuzzyQuantity>,
    pub ef: Vec<DiscreteFuzzyQuantity>,
    pub cp_set: DiscreteFuzzyQuantity,
}

/// A partial configuration: one chosen duration per activity in some
/// ancestor set, sorted by activity index.
pub type Witness = Vec<(usize, Duration)>;

/// One support point of an earliest-finish quantity together with every
/// partial configuration over the activity's ancestors that attains its
/// value with at least its belief.
///
/// The witness list may be empty: that happens exactly when the point's
/// belief was inflated by a cross-configuration fuzzy-max comparison and no
/// single configuration realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenancePoint {
    pub duration: Duration,
    pub belief: Belief,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone)]
pub struct ProvenantSchedule {
    pub schedule: FuzzySchedule,
    /// Indexed like the activity list: annotated points of each `ef`.
    pub ef_points: Vec<Vec<ProvenancePoint>>,
}

/// Fuzzy forward recursion. The earliest start of the start activity is the
/// crisp 0/1; every other earliest start is the fuzzy max of the predecessor
/// earliest finishes, folded left in predecessor declaration order; the
/// earliest finish adds the activity's own fuzzy duration. The fuzzy set of
/// critical path lengths is the earliest finish of the finish activity.
pub fn fuzzy_forward_recursion(net: &ProjectNetwork) -> FuzzySchedule {
    let zero = DiscreteFuzzyQuantity::certain(Duration::ZERO);
    let n = net.len();
    let mut es: Vec<Option<DiscreteFuzzyQuantity>> = vec![None; n];
    let mut ef: Vec<Option<DiscreteFuzzyQuantity>> = vec![None; n];
    for &i in net.topological_order() {
        let start = net
            .predecessors(i)
            .iter()
            .fold(None::<DiscreteFuzzyQuantity>, |acc, &j| {
                let pred_ef = ef[j].as_ref().expect("topological order");
                Some(match acc {
                    None => pred_ef.clone(),
                    Some(acc) => acc.fuzzy_max(pred_ef),
                })
            })
            .unwrap_or_else(|| zero.clone());
        let finish = start.fuzzy_add(&net.activity(i).duration);
        es[i] = Some(start);
        ef[i] = Some(finish);
    }
    let es: Vec<_> = es.into_iter().map(Option::unwrap).collect();
    let ef: Vec<_> = ef.into_iter().map(Option::unwrap).collect();
    let cp_set = ef[net.finish()].clone();
    FuzzySchedule { es, ef, cp_set }
}

/// Enumerates all assignments over a set of activities (which must be closed
/// under predecessors within itself for the evaluation to make sense) and
/// hands each to `visit` along with its minimum belief.
///
/// The assignment buffer is full-length and reused; entries outside `vars`
/// stay `None`.
pub(crate) fn for_each_assignment(
    net: &ProjectNetwork,
    vars: &[usize],
    mut visit: impl FnMut(&[Option<(Duration, Belief)>], Belief),
) {
    let n = net.len();
    let mut buf: Vec<Option<(Duration, Belief)>> = vec![None; n];
    let radices: Vec<usize> = vars.iter().map(|&v| net.activity(v).duration.len()).collect();
    let total: u128 = radices.iter().map(|&r| r as u128).product();
    for mut idx in 0..total {
        let mut min_belief = Belief::ONE;
        for (k, &v) in vars.iter().enumerate() {
            let r = radices[k] as u128;
            let choice = (idx % r) as usize;
            idx /= r;
            let (d, b) = net.activity(v).duration.points()[choice];
            buf[v] = Some((d, b));
            min_belief = min_belief.min(b);
        }
        visit(&buf, min_belief);
    }
}

/// Crisp earliest finish of `target` under a partial assignment covering its
/// ancestors.
pub(crate) fn crisp_ef_restricted(
    net: &ProjectNetwork,
    assignment: &[Option<(Duration, Belief)>],
    target: usize,
) -> Duration {
    let mut ef: Vec<Option<Duration>> = vec![None; net.len()];
    for &i in net.topological_order() {
        let Some((t, _)) = assignment[i] else { continue };
        let es = net
            .predecessors(i)
            .iter()
            .filter_map(|&j| ef[j])
            .max()
            .unwrap_or(Duration::ZERO);
        ef[i] = Some(es.checked_add(t).expect("duration overflow"));
        if i == target {
            break;
        }
    }
    ef[target].expect("assignment covers target")
}

fn witness_of(vars: &[usize], assignment: &[Option<(Duration, Belief)>]) -> Witness {
    vars.iter().map(|&v| (v, assignment[v].unwrap().0)).collect()
}

/// Annotates the support points of `target`'s earliest finish with every
/// witness over its ancestor set.
pub(crate) fn ef_witness_points(
    net: &ProjectNetwork,
    ancestors: &[usize],
    target: usize,
    ef: &DiscreteFuzzyQuantity,
) -> Vec<ProvenancePoint> {
    let mut out: Vec<ProvenancePoint> = ef
        .points()
        .iter()
        .map(|&(duration, belief)| ProvenancePoint { duration, belief, witnesses: vec![] })
        .collect();
    for_each_assignment(net, ancestors, |assignment, min_belief| {
        let value = crisp_ef_restricted(net, assignment, target);
        for point in out.iter_mut() {
            if point.duration == value && min_belief >= point.belief {
                point.witnesses.push(witness_of(ancestors, assignment));
            }
        }
    });
    for point in out.iter_mut() {
        point.witnesses.sort();
    }
    out
}

/// Fuzzy forward recursion with exhaustive witness sets attached to every
/// earliest-finish support point. Values are identical to
/// [`fuzzy_forward_recursion`]; only the annotations are added.
pub fn fuzzy_forward_with_provenance(
    net: &ProjectNetwork,
    cap: u128,
) -> Result<ProvenantSchedule, ForwardError> {
    let count = net.configuration_count();
    if count > cap {
        return Err(ForwardError::ProvenanceCapExceeded { count, cap });
    }
    let schedule = fuzzy_forward_recursion(net);
    let ancestor_sets = net.ancestor_sets();
    let ef_points = (0..net.len())
        .map(|i| ef_witness_points(net, &ancestor_sets[i], i, &schedule.ef[i]))
        .collect();
    Ok(ProvenantSchedule { schedule, ef_points })
}
