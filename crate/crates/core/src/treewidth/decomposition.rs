//! Tree decompositions: validation, restriction, normalization and a
//! random partial k-tree generator that produces a graph together with a
//! decomposition of width `w`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bags indexed `0..bags.len()`, each sorted; `edges` joins bag indices and
/// must form a tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<u32>>,
    pub edges: Vec<(u32, u32)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<u32>>, edges: Vec<(u32, u32)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// Largest bag size minus one (`-1` style width 0 for no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Checks the three decomposition axioms for `g`, plus that the bag
    /// graph is a tree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.bags.len();
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        if k == 0 {
            return if g.n() == 0 { Ok(()) } else { bad("no bags".into()) };
        }
        if self.edges.len() + 1 != k {
            return bad(format!("{} bags but {} tree edges", k, self.edges.len()));
        }
        for &(a, b) in &self.edges {
            if a as usize >= k || b as usize >= k || a == b {
                return bad(format!("bad tree edge ({a},{b})"));
            }
        }
        let adj = self.tree_adjacency();
        let order = bfs_order(&adj, 0);
        if order.len() != k {
            return bad("decomposition tree is not connected".into());
        }
        let mut where_: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v as usize >= g.n() {
                    return bad(format!("bag {x} names vertex {v} outside the graph"));
                }
                where_[v as usize].push(x as u32);
            }
        }
        if let Some(v) = where_.iter().position(Vec::is_empty) {
            return bad(format!("vertex coverage: vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            let (a, b) = (&where_[u as usize], &where_[v as usize]);
            if !a.iter().any(|x| b.binary_search(x).is_ok()) {
                return bad(format!("edge coverage: edge ({u},{v}) is in no bag"));
            }
        }
        // per-vertex connectivity: the bags holding v induce |bags|-1 tree edges
        let mut inner = vec![0usize; g.n()];
        for &(a, b) in &self.edges {
            for &v in &self.bags[a as usize] {
                if self.bags[b as usize].binary_search(&v).is_ok() {
                    inner[v as usize] += 1;
                }
            }
        }
        for v in 0..g.n() {
            if inner[v] + 1 != where_[v].len() {
                return bad(format!("connectivity: bags containing vertex {v} are not connected"));
            }
        }
        Ok(())
    }

    /// Every bag has `w+1` vertices and adjacent bags share exactly `w`.
    pub fn is_normal(&self, w: usize) -> bool {
        self.bags.iter().all(|b| b.len() == w + 1)
            && self.edges.iter().all(|&(a, b)| {
                intersection_len(&self.bags[a as usize], &self.bags[b as usize]) == w
            })
    }

    /// Intersects every bag with the sorted vertex set `keep`; the result
    /// decomposes the induced subgraph on `keep`.
    pub fn restrict(&self, keep: &[u32]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().copied().filter(|v| keep.binary_search(v).is_ok()).collect())
            .collect();
        TreeDecomposition { bags, edges: self.edges.clone() }
    }
}

fn intersection_len(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.binary_search(v).is_ok()).count()
}

fn bfs_order(adj: &[Vec<u32>], root: u32) -> Vec<u32> {
    let mut seen = vec![false; adj.len()];
    let mut order = vec![root];
    seen[root as usize] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                order.push(y);
            }
        }
    }
    order
}

/// Mutable decomposition tree with tombstones, used while normalizing.
struct Work {
    bags: Vec<Vec<u32>>,
    adj: Vec<Vec<u32>>,
    alive: Vec<bool>,
}

impl Work {
    fn from(td: &TreeDecomposition) -> Self {
        Work { bags: td.bags.clone(), adj: td.tree_adjacency(), alive: vec![true; td.bags.len()] }
    }

    /// Merges `gone` into `keep` (adjacent), giving `keep` the bag `bag`.
    fn contract(&mut self, keep: u32, gone: u32, bag: Vec<u32>) {
        let moved = std::mem::take(&mut self.adj[gone as usize]);
        for y in moved {
            if y == keep {
                continue;
            }
            for e in self.adj[y as usize].iter_mut() {
                if *e == gone {
                    *e = keep;
                }
            }
            self.adj[keep as usize].push(y);
        }
        self.adj[keep as usize].retain(|&y| y != gone);
        self.bags[keep as usize] = bag;
        self.bags[gone as usize].clear();
        self.alive[gone as usize] = false;
    }

    /// Contracts edges whose endpoint bags satisfy `pred(small, large)`,
    /// keeping the second bag, until none remain.
    fn contract_while(&mut self, pred: impl Fn(&[u32], &[u32]) -> bool) {
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..self.bags.len() as u32 {
                if !self.alive[x as usize] {
                    continue;
                }
                let hit = self.adj[x as usize]
                    .iter()
                    .copied()
                    .find(|&y| pred(&self.bags[x as usize], &self.bags[y as usize]));
                if let Some(y) = hit {
                    let bag = self.bags[y as usize].clone();
                    self.contract(y, x, bag);
                    changed = true;
                }
            }
        }
    }

    fn root(&self) -> Option<u32> {
        (0..self.bags.len() as u32)
            .filter(|&x| self.alive[x as usize])
            .max_by_key(|&x| (self.bags[x as usize].len(), std::cmp::Reverse(x)))
    }

    fn finish(self) -> TreeDecomposition {
        let mut index = vec![u32::MAX; self.bags.len()];
        let mut bags = Vec::new();
        for (x, slot) in index.iter_mut().enumerate() {
            if self.alive[x] {
                *slot = bags.len() as u32;
                bags.push(self.bags[x].clone());
            }
        }
        let mut edges = Vec::new();
        for x in 0..self.bags.len() {
            if self.alive[x] {
                for &y in &self.adj[x] {
                    if (x as u32) < y {
                        edges.push((index[x], index[y as usize]));
                    }
                }
            }
        }
        edges.sort_unstable();
        TreeDecomposition { bags, edges }
    }
}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut u: Vec<u32> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Normal form without validating against a graph. The decomposition must
/// already satisfy the axioms, have width at most `w`, and cover at least
/// `w+1` vertices.
pub(crate) fn normalize_bags(td: &TreeDecomposition, w: usize) -> Result<TreeDecomposition> {
    if td.width() > w {
        return Err(Error::InvalidDecomposition(format!("width {} exceeds {w}", td.width())));
    }
    let mut work = Work::from(td);
    work.contract_while(is_subset);

    let root = work.root().ok_or_else(|| Error::InvalidDecomposition("no bags".into()))?;
    // grow the root bag to w+1 from its neighbours
    while work.bags[root as usize].len() < w + 1 {
        let Some(&nb) = work.adj[root as usize].first() else {
            return Err(Error::InvalidDecomposition(format!(
                "fewer than {} vertices to fill a bag",
                w + 1
            )));
        };
        let merged = union_sorted(&work.bags[root as usize], &work.bags[nb as usize]);
        if merged.len() <= w + 1 {
            work.contract(root, nb, merged);
        } else {
            let need = w + 1 - work.bags[root as usize].len();
            let extra: Vec<u32> = work.bags[nb as usize]
                .iter()
                .copied()
                .filter(|v| work.bags[root as usize].binary_search(v).is_err())
                .take(need)
                .collect();
            let grown = union_sorted(&work.bags[root as usize], &extra);
            work.bags[root as usize] = grown;
        }
    }
    // top-down: fill every bag from its (already full) parent
    let order = bfs_order(&work.adj, root);
    let mut parent = vec![u32::MAX; work.bags.len()];
    for &x in &order {
        for &y in &work.adj[x as usize] {
            if y != parent[x as usize] {
                parent[y as usize] = x;
            }
        }
    }
    for &x in order.iter().skip(1) {
        let p = parent[x as usize] as usize;
        let need = (w + 1).saturating_sub(work.bags[x as usize].len());
        if need > 0 {
            let extra: Vec<u32> = work.bags[p]
                .iter()
                .copied()
                .filter(|v| work.bags[x as usize].binary_search(v).is_err())
                .take(need)
                .collect();
            work.bags[x as usize] = union_sorted(&work.bags[x as usize], &extra);
        }
    }
    work.contract_while(|a, b| a == b);

    // subdivide edges whose bags differ in more than one vertex
    let td = work.finish();
    let mut bags = td.bags.clone();
    let mut edges = Vec::new();
    for &(a, b) in &td.edges {
        let (ba, bb) = (&td.bags[a as usize], &td.bags[b as usize]);
        let out: Vec<u32> = ba.iter().copied().filter(|v| bb.binary_search(v).is_err()).collect();
        let inn: Vec<u32> = bb.iter().copied().filter(|v| ba.binary_search(v).is_err()).collect();
        let mut prev = a;
        let mut cur = ba.clone();
        for i in 0..out.len().saturating_sub(1) {
            cur.retain(|&v| v != out[i]);
            cur.push(inn[i]);
            cur.sort_unstable();
            let id = bags.len() as u32;
            bags.push(cur.clone());
            edges.push((prev, id));
            prev = id;
        }
        edges.push((prev, b));
    }
    let out = TreeDecomposition { bags, edges };
    if !out.is_normal(w) {
        return Err(Error::Postcondition {
            branch: "normalize",
            detail: "normalized decomposition is not normal".into(),
        });
    }
    Ok(out)
}

/// Validates `td` against `g`, then returns a normal decomposition of
/// width exactly `w` (every bag `w+1` vertices, adjacent bags sharing `w`).
pub fn normalize_decomposition(g: &Graph, td: &TreeDecomposition, w: usize) -> Result<TreeDecomposition> {
    td.validate(g)?;
    if g.n() < w + 1 {
        return Err(Error::Precondition(format!("graph has {} < w+1 = {} vertices", g.n(), w + 1)));
    }
    let out = normalize_bags(td, w)?;
    out.validate(g)?;
    Ok(out)
}

/// Random partial `w`-tree on `n` vertices with its natural width-`w`
/// decomposition. Each k-tree edge survives with probability `keep_prob`;
/// vertex labels are shuffled.
pub fn generate_partial_ktree(n: usize, w: usize, seed: u64, keep_prob: f64) -> Result<(Graph, TreeDecomposition)> {
    if w == 0 || n < w + 1 {
        return Err(Error::InvalidArgument(format!("need w >= 1 and n >= w+1, got n={n} w={w}")));
    }
    if !(0.0..=1.0).contains(&keep_prob) {
        return Err(Error::InvalidArgument(format!("keep_prob {keep_prob} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<u32> = (0..n as u32).collect();
    label.shuffle(&mut rng);
    let first: Vec<u32> = (0..=w as u32).collect();
    let mut edges = Vec::new();
    for i in 0..first.len() {
        for j in i + 1..first.len() {
            edges.push((first[i], first[j]));
        }
    }
    let mut bags = vec![first];
    let mut tree = Vec::new();
    for v in (w + 1) as u32..n as u32 {
        let host = rng.gen_range(0..bags.len());
        let drop = rng.gen_range(0..=w);
        let mut bag: Vec<u32> = bags[host]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &x)| x)
            .collect();
        for &u in &bag {
            edges.push((u, v));
        }
        bag.push(v);
        tree.push((host as u32, bags.len() as u32));
        bags.push(bag);
    }
    let kept: Vec<(u32, u32)> = edges
        .into_iter()
        .filter(|_| rng.gen_bool(keep_prob))
        .map(|(a, b)| (label[a as usize], label[b as usize]))
        .collect();
    let bags = bags
        .into_iter()
        .map(|b| b.into_iter().map(|x| label[x as usize]).collect())
        .collect();
    Ok((Graph::from_edges(n, kept)?, TreeDecomposition::new(bags, tree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn natural_path_decomposition_is_normal() {
        let g = path(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        td.validate(&g).unwrap();
        assert!(td.is_normal(1));
        let n = normalize_decomposition(&g, &td, 1).unwrap();
        assert_eq!(n.bags.len(), 3);
    }

    #[test]
    fn axioms_are_named() {
        let g = path(3);
        let miss_v = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        let e = miss_v.validate(&g).unwrap_err().to_string();
        assert!(e.contains("vertex coverage"), "{e}");
        let miss_e = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        assert!(miss_e.validate(&g).unwrap_err().to_string().contains("edge coverage"));
        let split = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![0]],
            vec![(0, 1), (1, 2)],
        );
        assert!(split.validate(&g).unwrap_err().to_string().contains("connectivity"));
    }

    #[test]
    fn small_bags_padded_and_duplicates_contracted() {
        let g = path(4);
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 1], vec![1, 2], vec![2, 3], vec![3]],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        );
        td.validate(&g).unwrap();
        let n = normalize_decomposition(&g, &td, 2).unwrap();
        assert!(n.is_normal(2));
        assert!(n.bags.windows(1).all(|b| b[0].len() == 3));
        let n1 = normalize_decomposition(&g, &td, 1).unwrap();
        assert!(n1.is_normal(1));
        assert_eq!(n1.bags.len(), 3);
    }

    #[test]
    fn wide_swaps_are_subdivided() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![3, 4, 5]], vec![(0, 1)]);
        let n = normalize_decomposition(&g, &td, 2).unwrap();
        assert!(n.is_normal(2));
        assert_eq!(n.bags.len(), 4);
    }

    #[test]
    fn ktree_edge_count_and_validity() {
        for w in 1..=4 {
            for seed in 0..50 {
                let n = 5 + (seed as usize % 20) + w;
                let (g, td) = generate_partial_ktree(n, w, seed, 1.0).unwrap();
                assert_eq!(g.edge_count(), w * n - w * (w + 1) / 2);
                td.validate(&g).unwrap();
                let (h, td2) = generate_partial_ktree(n, w, seed, 0.5).unwrap();
                td2.validate(&h).unwrap();
                assert!(normalize_decomposition(&h, &td2, w).unwrap().is_normal(w));
            }
        }
        let (g, _) = generate_partial_ktree(10, 1, 3, 0.0).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn restriction_stays_valid() {
        let (g, td) = generate_partial_ktree(30, 3, 9, 0.7).unwrap();
        let keep: Vec<u32> = (0..30).filter(|v| v % 3 != 0).collect();
        let sub = td.restrict(&keep);
        let norm = normalize_bags(&sub, 3).unwrap();
        assert!(norm.is_normal(3));
        // relabel to check against the induced subgraph
        let h = g.induced(&keep);
        let local = |v: u32| keep.binary_search(&v).unwrap() as u32;
        let relabeled = TreeDecomposition::new(
            norm.bags.iter().map(|b| b.iter().map(|&v| local(v)).collect()).collect(),
            norm.edges.clone(),
        );
        relabeled.validate(&h).unwrap();
    }
}
