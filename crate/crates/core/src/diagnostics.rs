//! Comparison of the fuzzy forward recursion against the
//! configuration-enumeration oracle, and the cross-configuration analysis
//! that explains where the recursion's fuzzy max inflates beliefs.

use std::collections::BTreeSet;

use crate::forward::{
    crisp_ef_restricted, ef_witness_points, for_each_assignment, fuzzy_forward_recursion,
    ForwardError, Witness,
};
use crate::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration};
use crate::network::ProjectNetwork;

/// One row of the per-length comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub length: Duration,
    pub recursion: Option<Belief>,
    pub oracle: Option<Belief>,
    /// recursion - oracle in raw belief units, absent beliefs counted as 0.
    pub delta_raw: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub rows: Vec<DiscrepancyRow>,
    pub mismatches: usize,
    pub max_delta_raw: i128,
    pub supports_identical: bool,
}

/// Per-length comparison of the recursion's fuzzy set of critical path
/// lengths against the oracle's. A row appears for every length in the
/// union of the two supports.
pub fn compare_cp_sets(
    recursion: &DiscreteFuzzyQuantity,
    oracle: &DiscreteFuzzyQuantity,
) -> DiscrepancyReport {
    let lengths: BTreeSet<Duration> = recursion
        .points()
        .iter()
        .chain(oracle.points())
        .map(|&(d, _)| d)
        .collect();
    let rows: Vec<DiscrepancyRow> = lengths
        .into_iter()
        .map(|length| {
            let r = recursion.belief_of(length);
            let o = oracle.belief_of(length);
            let delta_raw = r.map_or(0, |b| b.raw()) - o.map_or(0, |b| b.raw());
            DiscrepancyRow { length, recursion: r, oracle: o, delta_raw }
        })
        .collect();
    let mismatches = rows.iter().filter(|r| r.delta_raw != 0).count();
    let max_delta_raw = rows.iter().map(|r| r.delta_raw).max().unwrap_or(0);
    let supports_identical = rows.iter().all(|r| r.recursion.is_some() && r.oracle.is_some());
    DiscrepancyReport { rows, mismatches, max_delta_raw, supports_identical }
}

/// One side of a fuzzy-max combination: a support point of an
/// earliest-finish quantity (or of a fold accumulator spanning several
/// predecessors), with its witness set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperandPoint {
    /// Ids of the predecessor activities whose earliest finishes this
    /// operand covers.
    pub source_ids: Vec<String>,
    pub value: Duration,
    pub belief: Belief,
    pub witnesses: Vec<Witness>,
}

/// A fuzzy-max combination whose two operand points cannot be realized by
/// any common configuration: every witness pair disagrees on at least one
/// shared ancestor. These are the comparisons through which the forward
/// recursion can inflate beliefs; a finding is potential evidence, not
/// proof, of an actual discrepancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossConfigurationFinding {
    pub merge_id: String,
    pub left: OperandPoint,
    pub right: OperandPoint,
    pub result_value: Duration,
    pub result_belief: Belief,
    /// Shared ancestor on which the witness sets disagree.
    pub conflict_id: String,
    pub left_choices: Vec<Duration>,
    pub right_choices: Vec<Duration>,
}

/// Runs the provenance-tracking recursion and, at every merge activity,
/// inspects each fuzzy-max combination that contributes a point to the
/// earliest start. Emits a finding when the combined operand points share
/// no consistent assignment of their common ancestors.
pub fn explain_discrepancies(
    net: &ProjectNetwork,
    cap: u128,
) -> Result<Vec<CrossConfigurationFinding>, ForwardError> {
    let count = net.configuration_count();
    if count > cap {
        return Err(ForwardError::ProvenanceCapExceeded { count, cap });
    }
    let schedule = fuzzy_forward_recursion(net);
    let ancestor_sets = net.ancestor_sets();
    let mut findings = Vec::new();

    for &m in net.topological_order() {
        let preds = net.predecessors(m);
        if preds.len() < 2 {
            continue;
        }
        // left fold over predecessor earliest finishes, mirroring the
        // recursion's own fold order
        let first = preds[0];
        let mut acc_quantity = schedule.ef[first].clone();
        let mut acc_vars: Vec<usize> = ancestor_sets[first].clone();
        let mut acc_preds: Vec<usize> = vec![first];
        let mut acc_witnesses: Vec<Vec<Witness>> =
            ef_witness_points(net, &acc_vars, first, &acc_quantity)
                .into_iter()
                .map(|p| p.witnesses)
                .collect();

        for &j in &preds[1..] {
            let right_quantity = &schedule.ef[j];
            let right_vars = &ancestor_sets[j];
            let right_witnesses: Vec<Vec<Witness>> =
                ef_witness_points(net, right_vars, j, right_quantity)
                    .into_iter()
                    .map(|p| p.witnesses)
                    .collect();

            let result = acc_quantity.fuzzy_max(right_quantity);
            let shared: Vec<usize> = acc_vars
                .iter()
                .copied()
                .filter(|v| right_vars.contains(v))
                .collect();

            for &(z, rb) in result.points() {
                for (pi, &(pv, pb)) in acc_quantity.points().iter().enumerate() {
                    for (qi, &(qv, qb)) in right_quantity.points().iter().enumerate() {
                        if pv.max(qv) != z || pb.min(qb) != rb {
                            continue;
                        }
                        let lw = &acc_witnesses[pi];
                        let rw = &right_witnesses[qi];
                        if witnesses_compatible(lw, rw, &shared) {
                            continue;
                        }
                        let conflict = conflict_ancestor(lw, rw, &shared, net);
                        findings.push(CrossConfigurationFinding {
                            merge_id: net.id_of(m).to_string(),
                            left: OperandPoint {
                                source_ids: acc_preds.iter().map(|&p| net.id_of(p).to_string()).collect(),
                                value: pv,
                                belief: pb,
                                witnesses: lw.clone(),
                            },
                            right: OperandPoint {
                                source_ids: vec![net.id_of(j).to_string()],
                                value: qv,
                                belief: qb,
                                witnesses: rw.clone(),
                            },
                            result_value: z,
                            result_belief: rb,
                            conflict_id: conflict.id,
                            left_choices: conflict.left_choices,
                            right_choices: conflict.right_choices,
                        });
                    }
                }
            }

            // extend the accumulator for the next fold step
            acc_vars = merge_sorted(&acc_vars, right_vars);
            acc_preds.push(j);
            acc_quantity = result;
            acc_witnesses = accumulator_witnesses(net, &acc_vars, &acc_preds, &acc_quantity);
        }
    }
    Ok(findings)
}

/// Two witness sets are compatible when some pair agrees on every shared
/// ancestor. An empty witness set on either side means the point itself was
/// already unrealizable, which is never compatible.
fn witnesses_compatible(left: &[Witness], right: &[Witness], shared: &[usize]) -> bool {
    left.iter().any(|lw| {
        right.iter().any(|rw| {
            shared
                .iter()
                .all(|&v| choice_of(lw, v) == choice_of(rw, v))
        })
    })
}

fn choice_of(w: &Witness, var: usize) -> Option<Duration> {
    w.iter().find(|&&(v, _)| v == var).map(|&(_, d)| d)
}

struct Conflict {
    id: String,
    left_choices: Vec<Duration>,
    right_choices: Vec<Duration>,
}

/// Picks the first shared ancestor whose chosen-duration sets are disjoint
/// between the two witness sets; falls back to the first shared ancestor
/// when the incompatibility is only joint.
fn conflict_ancestor(
    left: &[Witness],
    right: &[Witness],
    shared: &[usize],
    net: &ProjectNetwork,
) -> Conflict {
    let choices = |ws: &[Witness], v: usize| -> Vec<Duration> {
        let set: BTreeSet<Duration> = ws.iter().filter_map(|w| choice_of(w, v)).collect();
        set.into_iter().collect()
    };
    let picked = shared
        .iter()
        .copied()
        .find(|&v| {
            let l = choices(left, v);
            let r = choices(right, v);
            !l.is_empty() && !r.is_empty() && l.iter().all(|d| !r.contains(d))
        })
        .or_else(|| shared.first().copied());
    match picked {
        Some(v) => Conflict {
            id: net.id_of(v).to_string(),
            left_choices: choices(left, v),
            right_choices: choices(right, v),
        },
        None => Conflict { id: String::new(), left_choices: vec![], right_choices: vec![] },
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

/// Witness sets for a fold accumulator: the crisp value of the accumulator
/// under an assignment is the max of the covered predecessors' crisp
/// earliest finishes.
fn accumulator_witnesses(
    net: &ProjectNetwork,
    vars: &[usize],
    preds: &[usize],
    quantity: &DiscreteFuzzyQuantity,
) -> Vec<Vec<Witness>> {
    let mut out: Vec<Vec<Witness>> = vec![vec![]; quantity.len()];
    for_each_assignment(net, vars, |assignment, min_belief| {
        let value = preds
            .iter()
            .map(|&p| crisp_ef_restricted(net, assignment, p))
            .max()
            .expect("at least one predecessor");
        for (k, &(v, b)) in quantity.points().iter().enumerate() {
            if v == value && min_belief >= b {
                out[k].push(vars.iter().map(|&x| (x, assignment[x].unwrap().0)).collect());
            }
        }
    });
    for ws in out.iter_mut() {
        ws.sort();
    }
    out
}
