//! Hypergraphs and their average state.
//!
//! Reading the hyperedges as successive states of an evolving system, the
//! average state is the most-intersection of the edge list: the vertices that
//! appear in more than half of the edges. A hypergraph whose average state is
//! empty is balanced.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::collections::{
    most_intersect_estimated, most_intersect_finite, most_intersect_over,
    EstimatedMostIntersection, IndexedFamily,
};
use crate::density::{Density, EstimatorPolicy};
use crate::{Error, Result};

/// A finite hypergraph. The edge list is a multiset of non-empty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph<V> {
    vertices: Vec<V>,
    edges: Vec<BTreeSet<V>>,
}

impl<V: Ord + Clone + fmt::Debug> Hypergraph<V> {
    pub fn new(vertices: Vec<V>, edges: Vec<BTreeSet<V>>) -> Result<Self> {
        let known: BTreeSet<&V> = vertices.iter().collect();
        if known.len() != vertices.len() {
            return Err(Error::InvalidHypergraph("repeated vertex".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidHypergraph("no hyperedges".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidHypergraph(format!("hyperedge {i} is empty")));
            }
            if let Some(v) = e.iter().find(|v| !known.contains(v)) {
                return Err(Error::InvalidHypergraph(format!(
                    "hyperedge {i} mentions unknown vertex {v:?}"
                )));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Takes the vertex list to be every vertex mentioned by an edge, in order
    /// of first appearance.
    pub fn from_edges(edges: Vec<BTreeSet<V>>) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut seen = BTreeSet::new();
        for e in &edges {
            for v in e {
                if seen.insert(v.clone()) {
                    vertices.push(v.clone());
                }
            }
        }
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn edges(&self) -> &[BTreeSet<V>] {
        &self.edges
    }

    /// `|V|`.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// `|E|`, counting repeated edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn average_state(&self) -> BTreeSet<V> {
        most_intersect_finite(&self.edges).expect("edge list is non-empty")
    }

    pub fn is_balanced(&self) -> bool {
        self.average_state().is_empty()
    }
}

/// A hypergraph with countably many vertices and hyperedges: the edge `e_j`
/// contains `v` exactly when the family's `A_j` does.
pub struct InfiniteHypergraph<F> {
    edges: F,
}

impl<F: IndexedFamily> InfiniteHypergraph<F> {
    pub fn new(edges: F) -> Self {
        Self { edges }
    }

    pub fn edge_family(&self) -> &F {
        &self.edges
    }

    pub fn in_edge(&self, vertex: &F::Element, edge: u64) -> bool {
        self.edges.contains(vertex, edge)
    }

    /// Vertices in most edges, each with the density of the edges holding it.
    pub fn average_state(
        &self,
        candidates: impl IntoIterator<Item = F::Element>,
    ) -> Result<BTreeMap<F::Element, Density>> {
        most_intersect_over(&self.edges, candidates)
    }

    /// Partial-density fallback over the family's own candidate pool.
    pub fn estimated_average_state(
        &self,
        n: u64,
        policy: &EstimatorPolicy,
    ) -> EstimatedMostIntersection<F::Element> {
        most_intersect_estimated(&self.edges, n, policy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::Family;
    use crate::density::EventuallyPeriodicSet;
    use crate::Element;
    use alloc::vec;

    fn edge(vs: &[&'static str]) -> BTreeSet<&'static str> {
        vs.iter().copied().collect()
    }

    fn example() -> Hypergraph<&'static str> {
        Hypergraph::new(
            vec!["v1", "v2", "v3", "v4", "v5", "v6"],
            vec![
                edge(&["v1", "v4"]),
                edge(&["v4", "v5"]),
                edge(&["v1", "v2", "v3"]),
                edge(&["v2", "v3", "v6"]),
                edge(&["v3", "v4", "v6"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_hypergraph() {
        let h = example();
        assert_eq!((h.order(), h.size()), (6, 5));
        let avg = h.average_state();
        assert_eq!(avg, edge(&["v3", "v4"]));
        assert!(!h.is_balanced());
        assert!(!h.edges().contains(&avg));
    }

    #[test]
    fn small_shapes() {
        let h = Hypergraph::new(vec!["v"], vec![edge(&["v"])]).unwrap();
        assert_eq!((h.order(), h.size()), (1, 1));
        assert!(!h.is_balanced());

        let k3 = Hypergraph::new(
            vec!["a", "b", "c"],
            vec![edge(&["a", "b"]), edge(&["b", "c"]), edge(&["a", "c"])],
        )
        .unwrap();
        assert_eq!((k3.order(), k3.size()), (3, 3));

        let h = Hypergraph::from_edges(vec![edge(&["a"]), edge(&["a"]), edge(&["b"])]).unwrap();
        assert_eq!(h.average_state(), edge(&["a"]));
    }

    #[test]
    fn exactly_half_is_balanced() {
        let h = Hypergraph::from_edges(vec![
            edge(&["a"]),
            edge(&["a", "b"]),
            edge(&["b"]),
            edge(&["c"]),
        ])
        .unwrap();
        for v in ["a", "b"] {
            let count = h.edges().iter().filter(|e| e.contains(v)).count();
            assert_eq!(2 * count, h.size());
        }
        assert!(h.average_state().is_empty());
        assert!(h.is_balanced());
    }

    #[test]
    fn disjoint_edges_are_balanced() {
        let h =
            Hypergraph::from_edges(vec![edge(&["a"]), edge(&["b", "c"]), edge(&["d"])]).unwrap();
        assert!(h.is_balanced());
    }

    #[test]
    fn invalid_inputs() {
        assert!(Hypergraph::<&str>::new(vec!["a"], vec![]).is_err());
        assert!(Hypergraph::new(vec!["a"], vec![BTreeSet::new()]).is_err());
        assert!(Hypergraph::new(vec!["a"], vec![edge(&["b"])]).is_err());
        assert!(Hypergraph::new(vec!["a", "a"], vec![edge(&["a"])]).is_err());
    }

    #[test]
    fn infinite_average_state() {
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        let non_threes = EventuallyPeriodicSet::multiples_of(3).unwrap().complement();
        let table = [
            (Element::sym("even"), evens),
            (Element::sym("late"), EventuallyPeriodicSet::at_least(7)),
            (Element::sym("two_thirds"), non_threes),
        ]
        .into_iter()
        .collect();
        let h = InfiniteHypergraph::new(Family::periodic_table(table, []));
        let avg = h
            .average_state([
                Element::sym("even"),
                Element::sym("late"),
                Element::sym("two_thirds"),
            ])
            .unwrap();
        assert_eq!(avg.len(), 2);
        assert_eq!(avg[&Element::sym("late")], Density::ONE);
        assert_eq!(
            avg[&Element::sym("two_thirds")],
            Density::new(2, 3).unwrap()
        );
        assert!(h.in_edge(&Element::sym("even"), 4));
    }
}
