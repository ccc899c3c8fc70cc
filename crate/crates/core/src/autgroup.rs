//! Automorphism groups and isomorphism by backtracking over equitable partitions.
//!
//! Every node of the search tree carries an equitable ordered partition whose
//! cells are addressed by creation id; refinement is label-equivariant, so an
//! automorphism maps a node's partition and trace onto those of its image.
//! The leftmost path is fixed, and at each level, deepest first, the orbit of
//! the path vertex under the pointwise stabilizer of the path prefix is
//! completed by looking for leaves equivalent to the leftmost leaf. The group
//! order is the product of those orbit lengths.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::Hasher;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::UnionFind;

/// Disjoint cells covering `0..n`, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// The partition with a single cell (none when `n == 0`).
    pub fn unit(n: usize) -> Self {
        let cells = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
        OrderedPartition { cells }
    }

    /// Checks that `cells` are nonempty, disjoint, and cover `0..n`.
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::param("partition cells must be nonempty"));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(Error::param(format!("vertex {v} lies in two cells")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::param(format!("vertex {v} lies in no cell")));
        }
        let cells = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(OrderedPartition { cells })
    }

    /// One cell per distinct color, ordered by color value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let mut keys: Vec<usize> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut cells = vec![Vec::new(); keys.len()];
        for (v, c) in colors.iter().enumerate() {
            cells[keys.binary_search(c).unwrap()].push(v);
        }
        OrderedPartition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

/// The coarsest equitable refinement of `p`. Cells keep their position; a
/// split cell is replaced by its part of least neighbour count and the other
/// parts are appended in increasing count order.
pub fn refine(x: &Graph, p: &OrderedPartition) -> OrderedPartition {
    let mut state = State::from_partition(x.order(), p);
    state.refine_all(x);
    OrderedPartition { cells: state.cells }
}

#[derive(Clone)]
struct State {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl State {
    fn from_partition(n: usize, p: &OrderedPartition) -> Self {
        let mut cell_of = vec![0; n];
        for (i, cell) in p.cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        State {
            cells: p.cells.clone(),
            cell_of,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }

    /// First largest non-singleton cell.
    fn target_cell(&self) -> usize {
        let mut best = usize::MAX;
        let mut size = 1;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > size {
                best = i;
                size = c.len();
            }
        }
        best
    }

    fn refine_all(&mut self, x: &Graph) -> u64 {
        let queue = (0..self.cells.len()).collect();
        self.refine(x, queue)
    }

    fn individualize(&mut self, x: &Graph, cell: usize, v: usize) -> u64 {
        let id = self.cells.len();
        self.cells[cell].retain(|&w| w != v);
        self.cells.push(vec![v]);
        self.cell_of[v] = id;
        let mut h = DefaultHasher::new();
        h.write_usize(cell);
        let t = self.refine(x, VecDeque::from([id]));
        h.write_u64(t);
        h.finish()
    }

    /// Refines to equitability from the given splitter queue; returns a hash
    /// of the sequence of splits performed.
    fn refine(&mut self, x: &Graph, mut queue: VecDeque<usize>) -> u64 {
        let n = self.cell_of.len();
        let mut h = DefaultHasher::new();
        let mut in_queue = vec![false; self.cells.len()];
        for &c in &queue {
            in_queue[c] = true;
        }
        let mut count = vec![0u32; n];
        let mut touched = Vec::new();
        let mut hits = vec![0usize; self.cells.len()];
        let mut hit_cells = Vec::new();
        while let Some(w) = queue.pop_front() {
            in_queue[w] = false;
            if self.is_discrete() {
                break;
            }
            for &v in &self.cells[w] {
                for &u in x.neighbors(v) {
                    if count[u] == 0 {
                        touched.push(u);
                    }
                    count[u] += 1;
                }
            }
            for &u in &touched {
                let c = self.cell_of[u];
                if hits[c] == 0 {
                    hit_cells.push(c);
                }
                hits[c] += 1;
            }
            hit_cells.sort_unstable();
            h.write_usize(w);
            for &c in &hit_cells {
                let first = count[self.cells[c][0]];
                let uniform =
                    hits[c] == self.cells[c].len() && self.cells[c].iter().all(|&v| count[v] == first);
                hits[c] = 0;
                if uniform {
                    h.write_u32(first);
                    continue;
                }
                let mut members = std::mem::take(&mut self.cells[c]);
                members.sort_unstable_by_key(|&v| (count[v], v));
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for v in members {
                    if last != Some(count[v]) {
                        last = Some(count[v]);
                        parts.push(Vec::new());
                        h.write_u32(count[v]);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                let mut largest = 0;
                for (i, part) in parts.iter().enumerate() {
                    h.write_usize(part.len());
                    if part.len() > parts[largest].len() {
                        largest = i;
                    }
                }
                let was_queued = in_queue[c];
                let mut ids = Vec::with_capacity(parts.len());
                for (i, part) in parts.into_iter().enumerate() {
                    let id = if i == 0 {
                        c
                    } else {
                        self.cells.push(Vec::new());
                        in_queue.push(false);
                        hits.push(0);
                        self.cells.len() - 1
                    };
                    for &v in &part {
                        self.cell_of[v] = id;
                    }
                    self.cells[id] = part;
                    ids.push(id);
                }
                for (i, &id) in ids.iter().enumerate() {
                    if !in_queue[id] && (was_queued || i != largest) {
                        in_queue[id] = true;
                        queue.push_back(id);
                    }
                }
            }
            for &u in &touched {
                count[u] = 0;
            }
            touched.clear();
            hit_cells.clear();
        }
        h.write_usize(self.cells.len());
        h.finish()
    }

    /// Vertex in each cell of a discrete partition, by cell id.
    fn labelling(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c[0]).collect()
    }
}

/// The leftmost root-to-leaf path of a search tree.
struct Path {
    states: Vec<State>,
    targets: Vec<usize>,
    chosen: Vec<usize>,
    traces: Vec<u64>,
    leaf: Vec<usize>,
}

impl Path {
    fn leftmost(x: &Graph, start: &OrderedPartition) -> Path {
        let mut state = State::from_partition(x.order(), start);
        let mut traces = vec![state.refine_all(x)];
        let mut states = Vec::new();
        let mut targets = Vec::new();
        let mut chosen = Vec::new();
        while !state.is_discrete() {
            let t = state.target_cell();
            let v = state.cells[t].iter().copied().min().unwrap();
            let mut child = state.clone();
            traces.push(child.individualize(x, t, v));
            states.push(state);
            targets.push(t);
            chosen.push(v);
            state = child;
        }
        let leaf = state.labelling();
        Path {
            states,
            targets,
            chosen,
            traces,
            leaf,
        }
    }
}

/// Depth-first search below `state` (at `level`) for leaves whose traces match
/// `guide`; `accept` decides each candidate leaf labelling. `prune(level, w)`
/// may skip a branch vertex.
fn search_leaves(
    x: &Graph,
    state: &State,
    level: usize,
    guide: &Path,
    prune: &mut dyn FnMut(usize, &State, usize) -> bool,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if state.is_discrete() {
        return level == guide.chosen.len() && accept(&state.labelling());
    }
    if level >= guide.targets.len() {
        return false;
    }
    let t = state.target_cell();
    if t != guide.targets[level] {
        return false;
    }
    let mut branch = state.cells[t].clone();
    branch.sort_unstable();
    for w in branch {
        if prune(level, state, w) {
            continue;
        }
        let mut child = state.clone();
        if child.individualize(x, t, w) != guide.traces[level + 1] {
            continue;
        }
        if search_leaves(x, &child, level + 1, guide, prune, accept) {
            return true;
        }
    }
    false
}

fn is_automorphism(x: &Graph, images: &[usize]) -> bool {
    x.maps_edges_into(x, images)
}

struct Search {
    path: Path,
    gens: Vec<Permutation>,
    /// Level at which each generator was found; it fixes `path.chosen[..level]`.
    found_at: Vec<usize>,
    orbit_lengths: Vec<usize>,
}

fn run_search(x: &Graph, start: &OrderedPartition) -> Search {
    let n = x.order();
    let path = Path::leftmost(x, start);
    let depth = path.chosen.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut found_at = Vec::new();
    let mut orbit_lengths = vec![1; depth];
    let mut uf = UnionFind::new(n);
    for k in (0..depth).rev() {
        let state = &path.states[k];
        let vk = path.chosen[k];
        let mut cell = state.cells[path.targets[k]].clone();
        cell.sort_unstable();
        let mut failed: Vec<usize> = Vec::new();
        for w in cell {
            if uf.find(w) == uf.find(vk) || failed.iter().any(|&f| uf.find(f) == uf.find(w)) {
                continue;
            }
            let mut child = state.clone();
            if child.individualize(x, path.targets[k], w) != path.traces[k + 1] {
                failed.push(w);
                continue;
            }
            let mut found = None;
            let leaf = &path.leaf;
            let ok = search_leaves(
                x,
                &child,
                k + 1,
                &path,
                &mut |_, _, _| false,
                &mut |lab| {
                    let mut images = vec![0; n];
                    for (c, &v) in leaf.iter().enumerate() {
                        images[v] = lab[c];
                    }
                    if is_automorphism(x, &images) {
                        found = Some(images);
                        true
                    } else {
                        false
                    }
                },
            );
            match found {
                Some(images) if ok => {
                    for (v, &img) in images.iter().enumerate() {
                        uf.union(v, img);
                    }
                    gens.push(Permutation::from_images_unchecked(images));
                    found_at.push(k);
                }
                _ => failed.push(w),
            }
        }
        orbit_lengths[k] = uf.class_size(vk);
    }
    Search {
        path,
        gens,
        found_at,
        orbit_lengths,
    }
}

impl Search {
    fn order(&self) -> BigUint {
        self.orbit_lengths
            .iter()
            .fold(BigUint::one(), |acc, &l| acc * BigUint::from(l))
    }

    fn into_group(self, n: usize) -> PermGroup {
        let order = self.order();
        PermGroup::with_known_order(n, self.gens, order, self.path.chosen)
    }
}

/// Generators and order of `Aut(x)`.
pub fn automorphism_group(x: &Graph) -> PermGroup {
    run_search(x, &OrderedPartition::unit(x.order())).into_group(x.order())
}

/// Automorphisms of `x` that preserve every color class.
pub fn automorphism_group_colored(x: &Graph, colors: &[usize]) -> Result<PermGroup> {
    if colors.len() != x.order() {
        return Err(Error::param(format!(
            "{} colors for {} vertices",
            colors.len(),
            x.order()
        )));
    }
    Ok(run_search(x, &OrderedPartition::from_colors(colors)).into_group(x.order()))
}

fn degree_sequence(x: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..x.order()).map(|v| x.degree(v)).collect();
    d.sort_unstable();
    d
}

/// A bijection `phi` with `{u,v} ∈ E(x) ⇔ {phi(u),phi(v)} ∈ E(y)`, if one exists.
pub fn are_isomorphic(x: &Graph, y: &Graph) -> Option<Permutation> {
    let n = x.order();
    if n != y.order() || x.size() != y.size() || degree_sequence(x) != degree_sequence(y) {
        return None;
    }
    let unit = OrderedPartition::unit(n);
    let guide = Path::leftmost(x, &unit);
    let own = run_search(y, &unit);
    let mut root = State::from_partition(n, &unit);
    if root.refine_all(y) != guide.traces[0] {
        return None;
    }
    // Along y's own leftmost path, branch only on orbit representatives of the
    // pointwise stabilizer of the path prefix.
    let reps: Vec<Vec<bool>> = (0..own.path.chosen.len())
        .map(|k| {
            let mut uf = UnionFind::new(n);
            for (g, &lvl) in own.gens.iter().zip(&own.found_at) {
                if lvl >= k {
                    for v in 0..n {
                        uf.union(v, g.apply(v));
                    }
                }
            }
            let mut least = vec![usize::MAX; n];
            for v in 0..n {
                let r = uf.find(v);
                least[r] = least[r].min(v);
            }
            (0..n).map(|v| least[uf.find(v)] == v).collect()
        })
        .collect();
    let mut prune = |level: usize, state: &State, w: usize| -> bool {
        let on_path = level < own.path.states.len()
            && state.cells == own.path.states[level].cells;
        on_path && !reps[level][w]
    };
    let mut witness = None;
    search_leaves(y, &root, 0, &guide, &mut prune, &mut |lab| {
        let mut images = vec![0; n];
        for (c, &v) in guide.leaf.iter().enumerate() {
            images[v] = lab[c];
        }
        if x.maps_edges_into(y, &images) {
            witness = Some(images);
            true
        } else {
            false
        }
    });
    witness.map(Permutation::from_images_unchecked)
}
