//! Finite binary relations over a labeled universe.
//!
//! A [`Relation`] is an immutable square boolean matrix indexed by element
//! position; `contains(i, j)` reads "element i is weakly preferred to j".
//! The derived parts (indifference, strict preference, comparability and
//! incomparability), the standard order properties, both closures and the
//! strongly connected component condensation all live here.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::{BitMatrix, BitSet, Ones};
use crate::error::{Error, Result};

/// Ordered list of distinct element labels with a reverse index.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Universe {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if !is_valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// `a, b, ..., z` for up to 26 elements, `e0, e1, ...` beyond that.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
    } else {
        (0..n).map(|i| format!("e{i}")).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    universe: Arc<Universe>,
    adj: BitMatrix,
}

impl Relation {
    /// Builds a relation from its labels and the list of related pairs
    /// `(x, y)`, each meaning `x ≿ y`. Duplicate pairs collapse.
    pub fn new<S, A, B>(labels: impl IntoIterator<Item = S>, pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self>
    where
        S: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let universe = Universe::new(labels)?;
        let mut adj = BitMatrix::new(universe.len());
        for (x, y) in pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = universe
                .index_of(x)
                .ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
            let j = universe
                .index_of(y)
                .ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
            adj.set(i, j);
        }
        Ok(Relation {
            universe: Arc::new(universe),
            adj,
        })
    }

    /// Builds a relation on `labels` from a cell predicate over positions.
    pub fn from_fn<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let universe = Universe::new(labels)?;
        let adj = BitMatrix::from_fn(universe.len(), f);
        Ok(Relation {
            universe: Arc::new(universe),
            adj,
        })
    }

    /// Same universe, new matrix.
    pub fn with_cells(&self, f: impl FnMut(usize, usize) -> bool) -> Relation {
        self.derive(BitMatrix::from_fn(self.len(), f))
    }

    fn derive(&self, adj: BitMatrix) -> Relation {
        debug_assert_eq!(adj.size(), self.len());
        Relation {
            universe: Arc::clone(&self.universe),
            adj,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn labels(&self) -> &[String] {
        self.universe.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.universe.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.universe.index_of(label)
    }

    pub(crate) fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub(crate) fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.require_index(l.as_ref())).collect()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.adj.size()
    }

    /// Always false: the universe is nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `x ≿ y` by position.
    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.adj.get(x, y)
    }

    /// `x ≻ y`: weakly preferred and not the other way round.
    #[inline]
    pub fn strictly(&self, x: usize, y: usize) -> bool {
        self.adj.get(x, y) && !self.adj.get(y, x)
    }

    /// `x ∼ y`.
    #[inline]
    pub fn indifferent(&self, x: usize, y: usize) -> bool {
        self.adj.get(x, y) && self.adj.get(y, x)
    }

    /// `x ⋈ y`.
    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.adj.get(x, y) && !self.adj.get(y, x)
    }

    /// Number of related pairs.
    pub fn pair_count(&self) -> usize {
        self.adj.count_ones()
    }

    /// All related pairs as positions, row-major.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.adj.row_ones(i).map(move |j| (i, j)))
    }

    /// Elements `y` with `x ≿ y`, ascending.
    pub fn successors(&self, x: usize) -> Ones<'_> {
        self.adj.row_ones(x)
    }

    /// Weak lower contour set `LW(x) = { z | x ≿ z }`.
    pub fn lower_weak(&self, x: usize) -> BitSet {
        self.adj.row_set(x)
    }

    /// Strict lower contour set `LS(x) = { z | x ≻ z }`.
    pub fn lower_strict(&self, x: usize) -> BitSet {
        let mut s = self.adj.row_set(x);
        for z in self.adj.row_ones(x) {
            if self.adj.get(z, x) {
                s.remove(z);
            }
        }
        s
    }

    /// `∼`: pairs related both ways.
    pub fn symmetric_part(&self) -> Relation {
        self.derive(self.adj.zip_transpose(|a, t| a & t))
    }

    /// `≻`: pairs related in exactly the forward direction.
    pub fn asymmetric_part(&self) -> Relation {
        self.derive(self.adj.zip_transpose(|a, t| a & !t))
    }

    /// `⌢`: pairs related in at least one direction.
    pub fn comparable_part(&self) -> Relation {
        self.derive(self.adj.zip_transpose(|a, t| a | t))
    }

    /// `⋈`: pairs related in neither direction.
    pub fn incomparable_part(&self) -> Relation {
        self.derive(self.adj.zip_transpose(|a, t| !(a | t)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.adj.get(i, i))
    }

    pub fn is_complete(&self) -> bool {
        self.comparable_part().pair_count() == self.len() * self.len()
    }

    /// Checks `x ≿ y ∧ y ≿ z ⇒ x ≿ z` as row inclusion: every successor's
    /// row must be contained in the row of its predecessor.
    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|i| self.adj.row_ones(i).all(|j| self.adj.row_subset(j, i)))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// `true` iff no two distinct elements are indifferent.
    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| i == j || !self.adj.get(j, i))
    }

    pub fn reflexive_closure(&self) -> Relation {
        let mut adj = self.adj.clone();
        adj.set_diagonal();
        self.derive(adj)
    }

    /// Smallest transitive superset, by bit-parallel Warshall iteration.
    pub fn transitive_closure(&self) -> Relation {
        let mut adj = self.adj.clone();
        adj.close_transitively();
        self.derive(adj)
    }

    /// `true` iff every pair of `self` is also in `other`.
    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.len() == other.len() && (0..self.len()).all(|i| self.adj.row_subset_of(i, &other.adj))
    }

    /// Strongly connected components of the digraph `i → j` iff `i ≿ j`.
    pub fn condensation(&self) -> CondensationDag {
        CondensationDag::of(&self.adj)
    }
}

impl BitMatrix {
    fn row_subset_of(&self, i: usize, other: &BitMatrix) -> bool {
        self.row(i).iter().zip(other.row(i)).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(i, j)| format!("{}>={}", self.label(i), self.label(j)))
            .collect();
        f.debug_struct("Relation")
            .field("labels", &self.labels())
            .field("pairs", &pairs)
            .finish()
    }
}

/// Quotient of a digraph by its strongly connected components.
///
/// Components are numbered in the order Tarjan's algorithm closes them,
/// which is a reverse topological order: every DAG edge goes from a higher
/// component id to a lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationDag {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    dag_edges: Vec<BitSet>,
}

impl CondensationDag {
    fn of(adj: &BitMatrix) -> Self {
        let n = adj.size();
        let components = tarjan(adj);
        let mut component_of = vec![usize::MAX; n];
        for (c, members) in components.iter().enumerate() {
            for &v in members {
                component_of[v] = c;
            }
        }
        let k = components.len();
        let mut dag_edges = vec![BitSet::new(k); k];
        for i in 0..n {
            let ci = component_of[i];
            for j in adj.row_ones(i) {
                let cj = component_of[j];
                if ci != cj {
                    dag_edges[ci].insert(cj);
                }
            }
        }
        CondensationDag {
            components,
            component_of,
            dag_edges,
        }
    }

    /// Components in reverse topological order, members ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, element: usize) -> usize {
        self.component_of[element]
    }

    pub fn same_component(&self, x: usize, y: usize) -> bool {
        self.component_of[x] == self.component_of[y]
    }

    /// Components directly below `c` in the DAG.
    pub fn successors(&self, c: usize) -> Ones<'_> {
        self.dag_edges[c].iter()
    }

    pub fn dag_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.components.len()).flat_map(move |c| self.successors(c).map(move |d| (c, d)))
    }

    /// Length of the longest DAG path starting at each component.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0usize; self.components.len()];
        // Successors always carry smaller ids, so ascending order is a valid
        // evaluation order.
        for c in 0..self.components.len() {
            height[c] = self
                .successors(c)
                .map(|d| height[d] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }
}

/// Iterative Tarjan SCC over packed adjacency rows.
fn tarjan(adj: &BitMatrix) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.size();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (vertex, successor iterator)
    let mut call: Vec<(usize, Ones<'_>)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, adj.row_ones(root)));

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(w) = top.1.next() {
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, adj.row_ones(w)));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _)) = call.last() {
                let parent = *parent;
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                components.push(members);
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> Relation {
        Relation::new(["a", "b", "c"], [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")]).unwrap()
    }

    fn acyclic_not_strong() -> Relation {
        Relation::new(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("c", "a")]).unwrap()
    }

    fn pair_list(r: &Relation) -> Vec<(String, String)> {
        r.pairs()
            .map(|(i, j)| (r.label(i).to_string(), r.label(j).to_string()))
            .collect()
    }

    fn owned(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Relation::new(["a", "a"], Vec::<(&str, &str)>::new()).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Relation::new(["a"], [("a", "z")]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(
            Relation::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap_err(),
            Error::EmptyUniverse
        );
        assert!(matches!(
            Relation::new(["a b"], Vec::<(&str, &str)>::new()),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn single_element_empty_relation() {
        let r = Relation::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.pair_count(), 0);
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let r = Relation::new(["a", "b"], [("a", "b"), ("a", "b")]).unwrap();
        assert_eq!(pair_list(&r), owned(&[("a", "b")]));
    }

    #[test]
    fn parts_of_example_relations() {
        let r = example1();
        assert_eq!(pair_list(&r.asymmetric_part()), owned(&[("a", "b"), ("b", "c")]));
        assert_eq!(pair_list(&acyclic_not_strong().asymmetric_part()), owned(&[("c", "a")]));

        let full = Relation::from_fn(["a", "b"], |_, _| true).unwrap();
        assert_eq!(full.incomparable_part().pair_count(), 0);
    }

    #[test]
    fn properties() {
        let r = example1();
        assert!(r.is_reflexive());
        assert!(!r.is_transitive());
        assert!(!r.is_complete());

        let full = Relation::from_fn(["a", "b", "c"], |_, _| true).unwrap();
        assert!(full.is_reflexive() && full.is_complete() && full.is_transitive() && full.is_preorder());

        let diag = Relation::from_fn(["a", "b", "c"], |i, j| i == j).unwrap();
        assert!(diag.is_reflexive() && diag.is_transitive() && !diag.is_complete());
    }

    #[test]
    fn reflexive_closure_cases() {
        let empty = Relation::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(pair_list(&empty.reflexive_closure()), owned(&[("a", "a"), ("b", "b")]));
        assert_eq!(example1().reflexive_closure(), example1());
        let r = acyclic_not_strong().reflexive_closure();
        assert_eq!(r.pair_count(), 8);
        assert!(r.is_reflexive());
    }

    #[test]
    fn transitive_closure_cases() {
        let closed = acyclic_not_strong().transitive_closure();
        assert_eq!(closed.pair_count(), 9);

        let r = example1();
        let tc = r.transitive_closure();
        let added: Vec<_> = tc.pairs().filter(|&(i, j)| !r.contains(i, j)).collect();
        assert_eq!(added, vec![(0, 2)]);
        assert_eq!(tc.transitive_closure(), tc);
    }

    #[test]
    fn condensation_cases() {
        let diag = Relation::from_fn(["a", "b", "c"], |i, j| i == j).unwrap();
        let dag = diag.condensation();
        assert_eq!(dag.component_count(), 3);
        assert_eq!(dag.dag_edges().count(), 0);

        let dag = acyclic_not_strong().condensation();
        assert_eq!(dag.components(), &[vec![0, 1, 2]]);

        let r = example1();
        let dag = r.condensation();
        assert_eq!(dag.component_count(), 3);
        let mut edges: Vec<(usize, usize)> = dag
            .dag_edges()
            .map(|(c, d)| (dag.components()[c][0], dag.components()[d][0]))
            .collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert_eq!(dag.heights()[dag.component_of(0)], 2);
    }

    #[test]
    fn contour_sets() {
        let r = example1().transitive_closure();
        assert_eq!(r.lower_weak(0).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(r.lower_strict(0).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(r.lower_strict(2).len(), 0);
    }

    #[test]
    fn default_label_scheme() {
        assert_eq!(default_labels(3), vec!["a", "b", "c"]);
        assert_eq!(default_labels(27)[26], "e26");
    }
}
