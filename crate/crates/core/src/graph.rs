//! Finite simple undirected graphs on the vertex set `0..n`.
//!
//! Adjacency is kept in compressed form: the neighbours of `v` are the sorted
//! slice `targets[offsets[v]..offsets[v + 1]]`. Arcs are numbered in that same
//! order, so arc ids enumerate `(tail, head)` pairs lexicographically.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered pair of adjacent vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub fn reverse(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tail, self.head)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges, in either
    /// orientation, are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Sorts and deduplicates each list; the caller guarantees symmetry and
    /// the absence of loops.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// The cycle `C_n` with edges `{i, i+1 mod n}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::param(format!("cycle length must be at least 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &edges)
    }

    /// `kK_1`, the graph on `k` isolated vertices.
    pub fn edgeless(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("edgeless graph needs at least one vertex"));
        }
        Ok(Self::empty(k))
    }

    /// The lexicographic product `g[h]`; vertex `(x, y)` has index `x * |V(h)| + y`.
    pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Self> {
        if g.order() == 0 || h.order() == 0 {
            return Err(Error::param("lexicographic product needs nonempty factors"));
        }
        let k = h.order();
        let mut adj = vec![Vec::new(); g.order() * k];
        for x in 0..g.order() {
            for y in 0..k {
                let list = &mut adj[x * k + y];
                for &v in g.neighbors(x) {
                    list.extend((0..k).map(|w| v * k + w));
                }
                list.extend(h.neighbors(y).iter().map(|&w| x * k + w));
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn size(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// All arcs sorted by `(tail, head)`; the position in this sequence is the arc id.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.order()).flat_map(move |u| self.neighbors(u).iter().map(move |&v| Arc::new(u, v)))
    }

    pub fn arc_id(&self, tail: usize, head: usize) -> Option<usize> {
        if tail >= self.order() {
            return None;
        }
        self.neighbors(tail)
            .binary_search(&head)
            .ok()
            .map(|i| self.offsets[tail] + i)
    }

    pub fn arc(&self, id: usize) -> Arc {
        let tail = self.offsets.partition_point(|&o| o <= id) - 1;
        Arc::new(tail, self.targets[id])
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.order()).all(|v| self.degree(v) == k)
    }

    /// The common degree, if every vertex has the same one.
    pub fn valency(&self) -> Option<usize> {
        let d = if self.order() == 0 { 0 } else { self.degree(0) };
        self.is_regular(d).then_some(d)
    }

    /// Subgraph induced on `vertices`, relabelled by position in the slice.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Self::from_adjacency_unchecked(adj)
    }

    /// True when `map` (a bijection on `0..n`) sends every edge of `self`
    /// onto an edge of `other`.
    pub fn maps_edges_into(&self, other: &Graph, map: &[usize]) -> bool {
        self.order() == other.order()
            && self.size() == other.size()
            && map.len() == self.order()
            && self
                .edges()
                .all(|(u, v)| other.has_edge(map[u], map[v]))
    }
}
