//! Project network model: activities, predecessor sets, validation,
//! crisp forward pass, and path enumeration.

use std::collections::HashMap;

use crate::fuzzy::{DiscreteFuzzyQuantity, Duration, DEFAULT_BELIEF_PRECISION};

pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("network has no activities")]
    EmptyNetwork,
    #[error("duplicate activity id `{0}`")]
    DuplicateId(String),
    #[error("activity `{activity}` references unknown predecessor `{predecessor}`")]
    UnknownPredecessor { activity: String, predecessor: String },
    #[error("cycle detected: {}", .cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },
    #[error("dummy activity `{0}` must have duration 0/1")]
    DummyDurationNotZero(String),
    #[error("no duration given for activity `{0}`")]
    MissingDuration(String),
    #[error("path count exceeds cap of {cap}")]
    PathCapExceeded { cap: usize },
}

/// One activity before network assembly.
#[derive(Debug, Clone)]
pub struct ActivityInput {
    pub id: String,
    pub label: String,
    pub predecessors: Vec<String>,
    pub duration: DiscreteFuzzyQuantity,
    pub is_dummy: bool,
}

#[derive(Debug, Clone)]
pub struct Activity {
    pub id: String,
    pub label: String,
    pub duration: DiscreteFuzzyQuantity,
    pub is_dummy: bool,
}

/// A validated acyclic project network with unique start and finish.
#[derive(Debug, Clone)]
pub struct ProjectNetwork {
    activities: Vec<Activity>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    topo: Vec<usize>,
    start: usize,
    finish: usize,
    scale: u32,
    belief_precision: u32,
}

/// Earliest start/finish times for one crisp duration assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispSchedule {
    pub es: Vec<Duration>,
    pub ef: Vec<Duration>,
    pub cp_length: Duration,
}

impl ProjectNetwork {
    /// Assembles and validates a network.
    ///
    /// If the inputs have several start (no-predecessor) or finish
    /// (no-successor) activities, zero-duration dummies are inserted to make
    /// them unique.
    pub fn build(
        inputs: Vec<ActivityInput>,
        scale: u32,
        belief_precision: u32,
    ) -> Result<Self, NetworkError> {
        if inputs.is_empty() {
            return Err(NetworkError::EmptyNetwork);
        }
        let mut inputs = inputs;

        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, a) in inputs.iter().enumerate() {
            if index.insert(a.id.clone(), i).is_some() {
                return Err(NetworkError::DuplicateId(a.id.clone()));
            }
        }
        for a in &inputs {
            for p in &a.predecessors {
                if !index.contains_key(p) {
                    return Err(NetworkError::UnknownPredecessor {
                        activity: a.id.clone(),
                        predecessor: p.clone(),
                    });
                }
            }
            if a.is_dummy {
                let zero = DiscreteFuzzyQuantity::certain(Duration::ZERO);
                if a.duration != zero {
                    return Err(NetworkError::DummyDurationNotZero(a.id.clone()));
                }
            }
        }

        let fresh_id = |inputs: &[ActivityInput], base: &str| -> String {
            let mut id = base.to_string();
            while inputs.iter().any(|a| a.id == id) {
                id.insert(0, '_');
            }
            id
        };

        let starts: Vec<String> = inputs
            .iter()
            .filter(|a| a.predecessors.is_empty())
            .map(|a| a.id.clone())
            .collect();
        if starts.len() > 1 {
            let id = fresh_id(&inputs, "start");
            for a in inputs.iter_mut() {
                if starts.contains(&a.id) {
                    a.predecessors.push(id.clone());
                }
            }
            inputs.insert(
                0,
                ActivityInput {
                    id,
                    label: "dummy start".to_string(),
                    predecessors: vec![],
                    duration: DiscreteFuzzyQuantity::certain(Duration::ZERO),
                    is_dummy: true,
                },
            );
        }

        let is_pred = |inputs: &[ActivityInput], id: &str| {
            inputs.iter().any(|a| a.predecessors.iter().any(|p| p == id))
        };
        let finishes: Vec<String> = inputs
            .iter()
            .filter(|a| !is_pred(&inputs, &a.id))
            .map(|a| a.id.clone())
            .collect();
        if finishes.len() > 1 {
            let id = fresh_id(&inputs, "finish");
            inputs.push(ActivityInput {
                id,
                label: "dummy finish".to_string(),
                predecessors: finishes,
                duration: DiscreteFuzzyQuantity::certain(Duration::ZERO),
                is_dummy: true,
            });
        }

        // re-index after insertions
        let index: HashMap<String, usize> = inputs
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        let n = inputs.len();
        let mut preds: Vec<Vec<usize>> = vec![vec![]; n];
        let mut succs: Vec<Vec<usize>> = vec![vec![]; n];
        for (i, a) in inputs.iter().enumerate() {
            for p in &a.predecessors {
                let j = index[p];
                preds[i].push(j);
                succs[j].push(i);
            }
        }

        let topo = toposort(&preds, &succs).map_err(|cycle| NetworkError::CycleDetected {
            cycle: cycle.into_iter().map(|i| inputs[i].id.clone()).collect(),
        })?;

        let start_nodes: Vec<usize> = (0..n).filter(|&i| preds[i].is_empty()).collect();
        let finish_nodes: Vec<usize> = (0..n).filter(|&i| succs[i].is_empty()).collect();
        // after dummy insertion and acyclicity these are unique
        debug_assert_eq!(start_nodes.len(), 1);
        debug_assert_eq!(finish_nodes.len(), 1);

        let activities = inputs
            .into_iter()
            .map(|a| Activity {
                id: a.id,
                label: a.label,
                duration: a.duration,
                is_dummy: a.is_dummy,
            })
            .collect();

        Ok(Self {
            activities,
            preds,
            succs,
            topo,
            start: start_nodes[0],
            finish: finish_nodes[0],
            scale,
            belief_precision,
        })
    }

    pub fn len(&self) -> usize {
        self.activities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.activities.is_empty()
    }

    pub fn activities(&self) -> &[Activity] {
        &self.activities
    }

    pub fn activity(&self, i: usize) -> &Activity {
        &self.activities[i]
    }

    pub fn id_of(&self, i: usize) -> &str {
        &self.activities[i].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.activities.iter().position(|a| a.id == id)
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.preds[i]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succs[i]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn finish(&self) -> usize {
        self.finish
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn belief_precision(&self) -> u32 {
        self.belief_precision
    }

    /// Topological order; ties broken by declaration order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Number of crisp duration configurations (product of support sizes).
    pub fn configuration_count(&self) -> u128 {
        self.activities
            .iter()
            .map(|a| a.duration.len() as u128)
            .product()
    }

    /// Crisp forward recursion: ES of the start activity is 0, ES is the max
    /// of predecessor EFs, EF = ES + t. The EF of the finish activity is the
    /// critical path length.
    pub fn crisp_forward_pass(&self, durations: &[Duration]) -> Result<CrispSchedule, NetworkError> {
        if durations.len() != self.len() {
            let missing = self
                .activities
                .get(durations.len())
                .map(|a| a.id.clone())
                .unwrap_or_default();
            return Err(NetworkError::MissingDuration(missing));
        }
        let mut es = vec![Duration::ZERO; self.len()];
        let mut ef = vec![Duration::ZERO; self.len()];
        for &i in &self.topo {
            es[i] = self.preds[i]
                .iter()
                .map(|&j| ef[j])
                .max()
                .unwrap_or(Duration::ZERO);
            ef[i] = es[i].checked_add(durations[i]).expect("duration overflow");
        }
        let cp_length = ef[self.finish];
        Ok(CrispSchedule { es, ef, cp_length })
    }

    /// All start-to-finish paths as activity index sequences, in a
    /// deterministic depth-first order. Errors out past `cap` paths.
    pub fn enumerate_paths(&self, cap: usize) -> Result<Vec<Vec<usize>>, NetworkError> {
        let mut paths = Vec::new();
        let mut stack = vec![self.start];
        self.dfs_paths(self.start, &mut stack, &mut paths, cap)?;
        Ok(paths)
    }

    fn dfs_paths(
        &self,
        node: usize,
        stack: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), NetworkError> {
        if node == self.finish {
            if paths.len() >= cap {
                return Err(NetworkError::PathCapExceeded { cap });
            }
            paths.push(stack.clone());
            return Ok(());
        }
        for &next in &self.succs[node] {
            stack.push(next);
            self.dfs_paths(next, stack, paths, cap)?;
            stack.pop();
        }
        Ok(())
    }

    /// Critical path lengths when every activity takes its smallest,
    /// respectively largest, support duration. Valid bounds because the
    /// critical path length is monotone in every activity duration.
    pub fn extreme_lengths(&self) -> (Duration, Duration) {
        let mins: Vec<Duration> = self.activities.iter().map(|a| a.duration.min_support()).collect();
        let maxs: Vec<Duration> = self.activities.iter().map(|a| a.duration.max_support()).collect();
        let lo = self.crisp_forward_pass(&mins).expect("lengths match").cp_length;
        let hi = self.crisp_forward_pass(&maxs).expect("lengths match").cp_length;
        (lo, hi)
    }

    /// Ancestor sets (all activities on some path into `i`, including `i`
    /// itself), sorted ascending, one per activity.
    pub fn ancestor_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<bool>> = vec![vec![false; self.len()]; self.len()];
        for &i in &self.topo {
            sets[i][i] = true;
            for p in 0..self.preds[i].len() {
                let j = self.preds[i][p];
                let (a, b) = if j < i {
                    let (lo, hi) = sets.split_at_mut(i);
                    (&mut hi[0], &lo[j])
                } else {
                    let (lo, hi) = sets.split_at_mut(j);
                    (&mut lo[i], &hi[0])
                };
                for (k, &set) in b.iter().enumerate() {
                    if set {
                        a[k] = true;
                    }
                }
            }
        }
        sets.into_iter()
            .map(|flags| flags.iter().enumerate().filter(|(_, &f)| f).map(|(k, _)| k).collect())
            .collect()
    }
}

/// Kahn's algorithm with declaration-order tie-breaking; on failure returns
/// a witness cycle.
fn toposort(preds: &[Vec<usize>], succs: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let n = preds.len();
    let mut indegree: Vec<usize> = preds.iter().map(|p| p.len()).collect();
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&i| indegree[i] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &j in &succs[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    Err(find_cycle(preds))
}

fn find_cycle(preds: &[Vec<usize>]) -> Vec<usize> {
    // DFS over predecessor edges; a node revisited on the current stack
    // closes a cycle.
    let n = preds.len();
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    let mut stack: Vec<usize> = Vec::new();

    fn visit(i: usize, preds: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[i] = 1;
        stack.push(i);
        for &j in &preds[i] {
            match state[j] {
                0 => {
                    if let Some(c) = visit(j, preds, state, stack) {
                        return Some(c);
                    }
                }
                1 => {
                    let pos = stack.iter().position(|&k| k == j).unwrap();
                    let mut cycle: Vec<usize> = stack[pos..].to_vec();
                    cycle.push(j);
                    return Some(cycle);
                }
                _ => {}
            }
        }
        stack.pop();
        state[i] = 2;
        None
    }

    for i in 0..n {
        if state[i] == 0 {
            if let Some(c) = visit(i, preds, &mut state, &mut stack) {
                return c;
            }
        }
    }
    unreachable!("find_cycle called on an acyclic graph")
}

/// Builds the counterexample network used throughout the tests: a1 fans out
/// to a2 and a3, which join at the dummy finish a4.
pub fn figure1_network() -> ProjectNetwork {
    use crate::fuzzy::parse_quantity_literal;
    let q = |s: &str| parse_quantity_literal(s, 0, 3).unwrap().0;
    let act = |id: &str, preds: &[&str], dur: &str, dummy: bool| ActivityInput {
        id: id.to_string(),
        label: String::new(),
        predecessors: preds.iter().map(|s| s.to_string()).collect(),
        duration: q(dur),
        is_dummy: dummy,
    };
    ProjectNetwork::build(
        vec![
            act("a1", &[], "3/0.5, 5/1", false),
            act("a2", &["a1"], "3/0.2, 5/0.5, 7/1", false),
            act("a3", &["a1"], "2/0.1, 4/1, 6/0.1", false),
            act("a4", &["a2", "a3"], "0/1", true),
        ],
        0,
        DEFAULT_BELIEF_PRECISION,
    )
    .unwrap()
}
