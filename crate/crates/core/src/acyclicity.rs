//! Acyclicity and strong acyclicity.
//!
//! A relation is strongly acyclic when every cycle `x1 ≿ x2 ≿ ... ≿ xn ≿ x1`
//! consists of indifferences only. Equivalently, no strict pair `x ≻ y` has
//! both endpoints in the same strongly connected component of `≿`: such an
//! edge closes a cycle through any path `y ⇝ x`, and conversely every edge
//! of a cycle joins two vertices of one component.

use std::collections::VecDeque;
use std::fmt;

use crate::relation::Relation;

/// A cycle of `≿` containing at least one strict step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// `cycle[k] ≿ cycle[k + 1]`, wrapping around.
    pub cycle: Vec<String>,
    /// Position `k` with `cycle[k] ≻ cycle[k + 1]`.
    pub violation_index: usize,
}

impl CycleWitness {
    pub fn strict_pair(&self) -> (&str, &str) {
        let n = self.cycle.len();
        let k = self.violation_index;
        (&self.cycle[k], &self.cycle[(k + 1) % n])
    }

    /// Re-checks the witness against `r`: every step is related and the
    /// marked step is strict.
    pub fn replay(&self, r: &Relation) -> bool {
        let n = self.cycle.len();
        if n == 0 || self.violation_index >= n {
            return false;
        }
        let Some(idx) = self
            .cycle
            .iter()
            .map(|l| r.index_of(l))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let steps_ok = (0..n).all(|k| r.contains(idx[k], idx[(k + 1) % n]));
        let k = self.violation_index;
        steps_ok && r.strictly(idx[k], idx[(k + 1) % n])
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.strict_pair();
        write!(f, "cycle: {} ; strict: {x}>{y}", self.cycle.join(" "))
    }
}

/// `true` iff the strict part `≻` has no directed cycle.
pub fn is_acyclic(r: &Relation) -> bool {
    // ≻ is irreflexive, so a singleton component never carries a loop.
    let strict = r.asymmetric_part();
    let dag = strict.condensation();
    dag.component_count() == r.len()
}

pub fn is_strongly_acyclic(r: &Relation) -> bool {
    find_strict_cycle(r).is_none()
}

/// `Ok(())` when strongly acyclic, otherwise a shortest witness cycle through
/// the first offending strict edge (row-major order).
pub fn check_strong_acyclicity(r: &Relation) -> Result<(), CycleWitness> {
    match find_strict_cycle(r) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

pub fn find_strict_cycle(r: &Relation) -> Option<CycleWitness> {
    let dag = r.condensation();
    let (x, y) = r
        .pairs()
        .find(|&(x, y)| dag.same_component(x, y) && !r.contains(y, x))?;
    let back = shortest_path_within(r, &dag, y, x);
    // x ≻ y, then y ⇝ x back to the start.
    let mut cycle: Vec<usize> = Vec::with_capacity(back.len());
    cycle.push(x);
    cycle.extend(&back[..back.len() - 1]);
    // Rotate so the smallest position comes first.
    let start = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(start);
    let violation_index = (cycle.len() - start) % cycle.len();
    Some(CycleWitness {
        cycle: cycle.iter().map(|&v| r.label(v).to_string()).collect(),
        violation_index,
    })
}

/// BFS from `from` to `to` restricted to the component both lie in.
/// Returns the vertex sequence `from, ..., to`.
fn shortest_path_within(
    r: &Relation,
    dag: &crate::relation::CondensationDag,
    from: usize,
    to: usize,
) -> Vec<usize> {
    let comp = dag.component_of(from);
    let mut parent = vec![usize::MAX; r.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for w in r.successors(v) {
            if parent[w] == usize::MAX && dag.component_of(w) == comp {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    assert!(parent[to] != usize::MAX, "endpoints share a component");
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// `strongly acyclic ⇒ acyclic`, evaluated on `r`. Always `true`; exists for
/// the property suites.
pub fn implies_acyclic_check(r: &Relation) -> bool {
    !is_strongly_acyclic(r) || is_acyclic(r)
}
