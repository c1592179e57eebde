//! Plain undirected simple graphs on vertices `0..n`, used both for hosts
//! and for guests.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: 0 }
    }

    /// Builds a graph from an edge list; duplicates are merged, self-loops
    /// rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range for n={n}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut total = 0;
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
            total += row.len();
        }
        Ok(Graph { adj, edges: total / 2 })
    }

    /// Builds from already symmetric, sorted, deduplicated rows.
    pub(crate) fn from_sorted_rows(adj: Vec<Vec<u32>>) -> Self {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            let u = u as u32;
            row.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Copy with one edge removed (no-op when absent).
    pub fn without_edge(&self, u: u32, v: u32) -> Graph {
        let mut adj = self.adj.clone();
        adj[u as usize].retain(|&x| x != v);
        adj[v as usize].retain(|&x| x != u);
        Graph::from_sorted_rows(adj)
    }

    /// Induced subgraph on `vertices` (sorted ascending), relabelled
    /// `0..vertices.len()` in that order.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut row: Vec<u32> = self.adj[v as usize]
                    .iter()
                    .filter_map(|&x| {
                        let l = local[x as usize];
                        (l != u32::MAX).then_some(l)
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Graph::from_sorted_rows(adj)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as u32];
            let mut stack = vec![s as u32];
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
        assert!(g.is_forest());
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.without_edge(1, 2).edge_count(), 2);
    }
}
