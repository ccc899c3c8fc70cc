//! Voltage assignments over finite abelian groups, derived covering graphs,
//! quotients by group orbits, and lifting of automorphism groups along covers.
//!
//! The derived vertex `(u, g)` has index `u * |K| + rank(g)`. Each edge stores
//! its voltage on the arc from its smaller to its larger endpoint; the reverse
//! arc carries the negation.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::Rng;

use crate::autgroup::automorphism_group_colored;
use crate::error::{Error, Result};
use crate::families::{FiniteAbelianGroup, GroupElement};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::symmetry::{transitivity_profile, TransitivityProfile};
use crate::util::UnionFind;

/// Edge numbers in the order of [`Graph::edges`], addressed by `(min, max)`.
fn edge_numbering(x: &Graph) -> Vec<(usize, usize)> {
    x.edges().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    base: Graph,
    group: FiniteAbelianGroup,
    edges: Vec<(usize, usize)>,
    volts: Vec<GroupElement>,
}

impl VoltageAssignment {
    /// Identity voltage on every arc.
    pub fn identity(base: Graph, group: FiniteAbelianGroup) -> Self {
        let edges = edge_numbering(&base);
        let volts = vec![group.identity(); edges.len()];
        VoltageAssignment {
            base,
            group,
            edges,
            volts,
        }
    }

    /// Uniformly random voltages on every edge.
    pub fn random<R: Rng + ?Sized>(base: Graph, group: FiniteAbelianGroup, rng: &mut R) -> Self {
        let mut xi = Self::identity(base, group);
        for v in xi.volts.iter_mut() {
            *v = xi.group.random(rng);
        }
        xi
    }

    /// Identity on the arcs of `tree`, uniformly random elsewhere.
    pub fn random_t_reduced<R: Rng + ?Sized>(
        base: Graph,
        group: FiniteAbelianGroup,
        tree: &SpanningTree,
        rng: &mut R,
    ) -> Self {
        let mut xi = Self::identity(base, group);
        for (i, &(u, v)) in xi.edges.iter().enumerate() {
            if !tree.contains(u, v) {
                xi.volts[i] = xi.group.random(rng);
            }
        }
        xi
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    fn edge_index(&self, u: usize, v: usize) -> Result<usize> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search(&key)
            .map_err(|_| Error::NotAnEdge(u, v))
    }

    /// `ξ(u, v)`; the reverse arc carries the inverse.
    pub fn voltage(&self, u: usize, v: usize) -> Result<GroupElement> {
        let g = &self.volts[self.edge_index(u, v)?];
        Ok(if u < v { g.clone() } else { self.group.neg(g) })
    }

    /// Sets `ξ(u, v) = g` and `ξ(v, u) = -g`.
    pub fn set(&mut self, u: usize, v: usize, g: GroupElement) -> Result<()> {
        self.group.check(&g)?;
        let i = self.edge_index(u, v)?;
        self.volts[i] = if u < v { g } else { self.group.neg(&g) };
        Ok(())
    }

    /// Reads `group k1 k2 ...` and then `u v g1 g2 ...` lines over `base`;
    /// unlisted edges carry the identity. Blank lines and `#` comments are skipped.
    pub fn parse(base: Graph, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `group k1 k2 ...` line"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("group") {
            return Err(Error::parse(hl, "first line must start with `group`"));
        }
        let orders = fields
            .map(|f| f.parse::<usize>().map_err(|e| Error::parse(hl, format!("`{f}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if orders.is_empty() {
            return Err(Error::parse(hl, "group needs at least one cyclic factor"));
        }
        let group = FiniteAbelianGroup::new(orders).map_err(|e| Error::parse(hl, e.to_string()))?;
        let mut xi = Self::identity(base, group);
        for (ln, line) in lines {
            let nums = line
                .split_whitespace()
                .map(|f| f.parse::<i64>().map_err(|e| Error::parse(ln, format!("`{f}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if nums.len() != 2 + xi.group.orders().len() || nums[0] < 0 || nums[1] < 0 {
                return Err(Error::parse(
                    ln,
                    format!("expected `u v` and {} residues", xi.group.orders().len()),
                ));
            }
            let g = xi.group.element(&nums[2..])?;
            xi.set(nums[0] as usize, nums[1] as usize, g)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        Ok(xi)
    }

    /// Inverse of [`parse`](Self::parse); identity voltages are omitted.
    pub fn to_text(&self) -> String {
        let mut out = String::from("group");
        for k in self.group.orders() {
            write!(out, " {k}").unwrap();
        }
        out.push('\n');
        for (&(u, v), g) in self.edges.iter().zip(&self.volts) {
            if !self.group.is_identity(g) {
                write!(out, "{u} {v}").unwrap();
                for x in g {
                    write!(out, " {x}").unwrap();
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn is_t_reduced(&self, tree: &SpanningTree) -> bool {
        tree.edges
            .iter()
            .all(|&(u, v)| self.voltage(u, v).map(|g| self.group.is_identity(&g)).unwrap_or(false))
    }

    /// Vertex index of `(u, g)` in the derived graph.
    pub fn lift_index(&self, u: usize, g: &[usize]) -> usize {
        u * self.group.size() + self.group.rank(g)
    }
}

/// Breadth-first spanning tree rooted at 0, scanning neighbours in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `(parent, child)` pairs in discovery order.
    edges: Vec<(usize, usize)>,
    parent: Vec<Option<usize>>,
}

impl SpanningTree {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.parent.get(v) == Some(&Some(u)) || self.parent.get(u) == Some(&Some(v))
    }
}

pub fn spanning_tree(x: &Graph) -> Result<SpanningTree> {
    let n = x.order();
    let mut parent = vec![None; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 0 {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in x.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    edges.push((u, v));
                    queue.push_back(v);
                }
            }
        }
        if edges.len() + 1 != n {
            return Err(Error::Disconnected);
        }
    }
    Ok(SpanningTree { edges, parent })
}

/// `X ×_ξ K`: `(u, g) ~ (v, g + ξ(u, v))` for every arc `(u, v)`.
pub fn derived_graph(xi: &VoltageAssignment) -> Graph {
    let k = xi.group.size();
    let mut adj = vec![Vec::new(); xi.base.order() * k];
    for (&(u, v), volt) in xi.edges.iter().zip(&xi.volts) {
        for g in xi.group.elements() {
            let a = xi.lift_index(u, &g);
            let b = xi.lift_index(v, &xi.group.add(&g, volt));
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

/// True when `fibre_of` maps the neighbourhood of every vertex of `cover`
/// bijectively onto the neighbourhood of its image in `base`.
pub fn is_local_bijection(cover: &Graph, base: &Graph, fibre_of: &[usize]) -> bool {
    (0..cover.order()).all(|v| {
        let mut img: Vec<usize> = cover.neighbors(v).iter().map(|&w| fibre_of[w]).collect();
        img.sort_unstable();
        img.windows(2).all(|w| w[0] != w[1]) && img == base.neighbors(fibre_of[v])
    })
}

/// Fibre index of each derived vertex.
pub fn projection(xi: &VoltageAssignment) -> Vec<usize> {
    let k = xi.group.size();
    (0..xi.base.order() * k).map(|v| v / k).collect()
}

/// `K` acting on the derived graph by `(u, g) ↦ (u, g + h)`, one generator per
/// cyclic factor.
pub fn voltage_action(xi: &VoltageAssignment) -> PermGroup {
    let k = xi.group.size();
    let n = xi.base.order();
    let gens = (0..xi.group.orders().len())
        .filter(|&i| xi.group.orders()[i] > 1)
        .map(|i| {
            let mut e = xi.group.identity();
            e[i] = 1;
            let images = (0..n * k)
                .map(|v| {
                    let g = xi.group.add(&xi.group.unrank(v % k), &e);
                    xi.lift_index(v / k, &g)
                })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermGroup::with_known_order(n * k, gens, BigUint::from(k), Vec::new())
}

/// Potentials `φ` with `φ(root) = 0` and `φ(child) = φ(parent) + ξ(parent, child)`.
fn potentials(xi: &VoltageAssignment, tree: &SpanningTree) -> Result<Vec<GroupElement>> {
    let mut phi = vec![xi.group.identity(); xi.base.order()];
    for &(p, c) in &tree.edges {
        phi[c] = xi.group.add(&phi[p], &xi.voltage(p, c)?);
    }
    Ok(phi)
}

/// `ξ'(u, v) = ξ(u, v) + φ(u) - φ(v)`, which vanishes on tree arcs.
pub fn t_reduce(xi: &VoltageAssignment, tree: &SpanningTree) -> Result<VoltageAssignment> {
    if tree.parent.len() != xi.base.order() {
        return Err(Error::param("spanning tree is for a different base graph"));
    }
    let phi = potentials(xi, tree)?;
    let mut out = xi.clone();
    for (i, &(u, v)) in xi.edges.iter().enumerate() {
        let shifted = xi.group.add(&xi.volts[i], &xi.group.sub(&phi[u], &phi[v]));
        out.volts[i] = shifted;
    }
    Ok(out)
}

/// The isomorphism `(u, g) ↦ (u, g - φ(u))` from `derived_graph(ξ)` onto
/// `derived_graph(t_reduce(ξ, tree))`.
pub fn t_reduction_isomorphism(xi: &VoltageAssignment, tree: &SpanningTree) -> Result<Permutation> {
    let phi = potentials(xi, tree)?;
    let k = xi.group.size();
    let images = (0..xi.base.order() * k)
        .map(|v| {
            let u = v / k;
            xi.lift_index(u, &xi.group.sub(&xi.group.unrank(v % k), &phi[u]))
        })
        .collect();
    Ok(Permutation::from_images_unchecked(images))
}

/// For a `T`-reduced assignment on a connected base, with `T` the breadth-first
/// tree: the cover is connected iff the cotree voltages generate `K`.
pub fn is_connected_cover(xi: &VoltageAssignment) -> Result<bool> {
    let tree = spanning_tree(&xi.base)?;
    if let Some(&(u, v)) = tree
        .edges
        .iter()
        .find(|&&(u, v)| !xi.group.is_identity(&xi.voltage(u, v).unwrap()))
    {
        return Err(Error::NotTReduced(u, v));
    }
    let cotree: Vec<GroupElement> = xi
        .edges
        .iter()
        .zip(&xi.volts)
        .filter(|(&(u, v), _)| !tree.contains(u, v))
        .map(|(_, g)| g.clone())
        .collect();
    Ok(xi.group.generated_by(&cotree))
}

fn check_automorphisms(x: &Graph, n: &PermGroup) -> Result<()> {
    if n.degree() != x.order() {
        return Err(Error::DegreeMismatch {
            expected: x.order(),
            found: n.degree(),
        });
    }
    for (index, g) in n.generators().iter().enumerate() {
        if !x.maps_edges_into(x, g.images()) {
            return Err(Error::NotAnAutomorphism { index });
        }
    }
    Ok(())
}

/// `X/N`: one vertex per orbit, ordered by least element, with orbits adjacent
/// when some edge joins them. Returns the quotient and the orbit of each vertex.
pub fn quotient_graph(x: &Graph, n: &PermGroup) -> Result<(Graph, Vec<usize>)> {
    check_automorphisms(x, n)?;
    let orbits = n.all_orbits();
    let mut orbit_of = vec![0; x.order()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            orbit_of[v] = i;
        }
    }
    let edges: Vec<(usize, usize)> = x
        .edges()
        .map(|(u, v)| (orbit_of[u], orbit_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    Ok((Graph::from_edge_list(orbits.len(), &edges)?, orbit_of))
}

/// True when `n` is semiregular on vertices and no vertex has two neighbours
/// in one orbit or a neighbour in its own orbit. The last condition rules out
/// edge inversions, so `n` is then also semiregular on edges and the quotient
/// keeps every vertex degree.
pub fn is_regular_covering(x: &Graph, n: &PermGroup) -> Result<bool> {
    check_automorphisms(x, n)?;
    let all: Vec<usize> = (0..x.order()).collect();
    if !n.is_semiregular(&all) {
        return Ok(false);
    }
    let mut orbit_of = vec![0; x.order()];
    for (i, o) in n.all_orbits().iter().enumerate() {
        for &v in o {
            orbit_of[v] = i;
        }
    }
    Ok((0..x.order()).all(|u| {
        let mut seen: Vec<usize> = x.neighbors(u).iter().map(|&w| orbit_of[w]).collect();
        seen.push(orbit_of[u]);
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }))
}

/// Automorphisms of `cover` that permute the given fibres among themselves.
/// Computed as the color-preserving automorphisms of `cover` with one extra
/// vertex per fibre joined to all of that fibre.
pub fn fibre_preserving_group(cover: &Graph, fibres: &[Vec<usize>]) -> Result<PermGroup> {
    let n = cover.order();
    let mut edges: Vec<(usize, usize)> = cover.edges().collect();
    let mut covered = vec![false; n];
    for (f, fibre) in fibres.iter().enumerate() {
        if fibre.is_empty() {
            return Err(Error::param("empty fibre"));
        }
        for &v in fibre {
            if v >= n || covered[v] {
                return Err(Error::param("fibres must partition the vertex set"));
            }
            covered[v] = true;
            edges.push((v, n + f));
        }
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::param("fibres must partition the vertex set"));
    }
    let augmented = Graph::from_edge_list(n + fibres.len(), &edges)?;
    let mut colors = vec![0; n];
    colors.resize(n + fibres.len(), 1);
    let full = automorphism_group_colored(&augmented, &colors)?;
    let gens = full
        .generators()
        .iter()
        .map(|g| Permutation::from_images_unchecked(g.images()[..n].to_vec()))
        .collect();
    let base = full.base().into_iter().filter(|&b| b < n).collect();
    Ok(PermGroup::with_known_order(n, gens, full.order(), base))
}

/// The permutation induced on fibres by a fibre-preserving permutation.
pub fn project_permutation(g: &Permutation, fibres: &[Vec<usize>], fibre_of: &[usize]) -> Result<Permutation> {
    let images = fibres
        .iter()
        .map(|fibre| {
            let target = fibre_of[g.apply(fibre[0])];
            if fibre.iter().any(|&v| fibre_of[g.apply(v)] != target) {
                Err(Error::param("permutation does not preserve the fibres"))
            } else {
                Ok(target)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}

/// The group induced on fibres.
pub fn project_group(g: &PermGroup, fibres: &[Vec<usize>], fibre_of: &[usize]) -> Result<PermGroup> {
    let gens = g
        .generators()
        .iter()
        .map(|s| project_permutation(s, fibres, fibre_of))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(fibres.len(), gens)
}

/// Preimage in `g` of a subgroup `h` of its projection, by sampling random
/// elements of `g` until the expected order `|kernel| * |h|` is reached.
pub fn lift_subgroup<R: Rng + ?Sized>(
    g: &PermGroup,
    fibres: &[Vec<usize>],
    fibre_of: &[usize],
    h: &PermGroup,
    rng: &mut R,
) -> Result<PermGroup> {
    let image = project_group(g, fibres, fibre_of)?;
    for (index, s) in h.generators().iter().enumerate() {
        if !image.contains(s) {
            return Err(Error::NotAnAutomorphism { index });
        }
    }
    let kernel = g.order() / image.order();
    let target = kernel * h.order();
    let mut gens: Vec<Permutation> = Vec::new();
    for _ in 0..100_000 {
        let cand = PermGroup::new(g.degree(), gens.clone())?;
        if cand.order() == target {
            return Ok(cand);
        }
        let x = g.random_element(rng);
        if h.contains(&project_permutation(&x, fibres, fibre_of)?) && !cand.contains(&x) {
            gens.push(x);
        }
    }
    Err(Error::GroupTooLarge(format!("preimage of order {target} not reached by sampling")))
}

/// One instance of the correspondence between half-arc-transitivity of a
/// group on a regular cover and of its projection on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCheck {
    pub cover_group_order: BigUint,
    pub kernel_order: BigUint,
    pub cover_profile: TransitivityProfile,
    pub base_profile: TransitivityProfile,
}

impl LiftCheck {
    /// The kernel is the voltage group and the two half-arc-transitivity flags agree.
    pub fn holds(&self, voltage_group_order: usize) -> bool {
        self.kernel_order == BigUint::from(voltage_group_order)
            && self.cover_profile.half_arc_transitive == self.base_profile.half_arc_transitive
    }
}

/// Compares `g` acting on the cover with its projection acting on the base.
pub fn lift_check(xi: &VoltageAssignment, g: &PermGroup) -> Result<LiftCheck> {
    let cover = derived_graph(xi);
    let fibre_of = projection(xi);
    let fibres = fibres_of(xi);
    let image = project_group(g, &fibres, &fibre_of)?;
    Ok(LiftCheck {
        cover_group_order: g.order(),
        kernel_order: g.order() / image.order(),
        cover_profile: transitivity_profile(&cover, g)?,
        base_profile: transitivity_profile(&xi.base, &image)?,
    })
}

/// Fibres of the derived graph, indexed by base vertex.
pub fn fibres_of(xi: &VoltageAssignment) -> Vec<Vec<usize>> {
    let k = xi.group.size();
    (0..xi.base.order())
        .map(|u| (u * k..(u + 1) * k).collect())
        .collect()
}

/// How consecutive blocks of a cyclic sequence of 4-sets are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerPattern {
    /// Every layer induces an 8-cycle.
    EightCycles,
    /// Every layer is two 4-cycles and the pairs chain into two cycles.
    Disconnected,
    /// Every layer is two 4-cycles inducing one pairing per block: `C_{2p}[2K_1]`.
    LexCycle,
    /// Every layer is two 4-cycles and the two pairings of each block differ: `C(2;p,2)`.
    PraegerXu,
    /// Layers of different kinds.
    Mixed,
}

/// Classifies `x` whose vertices are split into `blocks` of size 4 arranged
/// in a cycle, each vertex having two neighbours in each adjacent block and
/// none elsewhere.
pub fn classify_layers(x: &Graph, blocks: &[Vec<usize>]) -> Result<LayerPattern> {
    let p = blocks.len();
    if p < 3 {
        return Err(Error::param("need at least three blocks"));
    }
    let mut block_of = vec![usize::MAX; x.order()];
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != 4 {
            return Err(Error::param(format!("block {i} has {} vertices", b.len())));
        }
        for &v in b {
            if v >= x.order() || block_of[v] != usize::MAX {
                return Err(Error::param("blocks must partition the vertex set"));
            }
            block_of[v] = i;
        }
    }
    if block_of.contains(&usize::MAX) {
        return Err(Error::param("blocks must partition the vertex set"));
    }
    for v in 0..x.order() {
        let i = block_of[v];
        let fwd = x.neighbors(v).iter().filter(|&&w| block_of[w] == (i + 1) % p).count();
        let back = x.neighbors(v).iter().filter(|&&w| block_of[w] == (i + p - 1) % p).count();
        if fwd != 2 || back != 2 || x.degree(v) != 4 {
            return Err(Error::param(format!("vertex {v} is not joined 2+2 to adjacent blocks")));
        }
    }
    // pairing of block i induced by the layer towards block i+1 (right) or i-1 (left)
    let mut right = Vec::with_capacity(p);
    let mut left = vec![Vec::new(); p];
    let mut eight = 0;
    for i in 0..p {
        let j = (i + 1) % p;
        let verts: Vec<usize> = blocks[i].iter().chain(&blocks[j]).copied().collect();
        let layer = x.induced_subgraph(&verts);
        let comps = layer.components();
        if comps.len() == 1 {
            eight += 1;
            right.push(Vec::new());
            continue;
        }
        let mut uf = UnionFind::new(x.order());
        for c in &comps {
            for w in c.windows(2) {
                uf.union(verts[w[0]], verts[w[1]]);
            }
        }
        right.push(pairing(&mut uf, &blocks[i]));
        left[j] = pairing(&mut uf, &blocks[j]);
    }
    if eight == p {
        return Ok(LayerPattern::EightCycles);
    }
    if eight > 0 {
        return Ok(LayerPattern::Mixed);
    }
    let same = (0..p).filter(|&i| left[i] == right[i]).count();
    if same == p {
        Ok(if x.is_connected() {
            LayerPattern::LexCycle
        } else {
            LayerPattern::Disconnected
        })
    } else if same == 0 {
        Ok(LayerPattern::PraegerXu)
    } else {
        Ok(LayerPattern::Mixed)
    }
}

/// The partner of the least vertex of `block` under the pairing given by `uf`.
fn pairing(uf: &mut UnionFind, block: &[usize]) -> Vec<usize> {
    let mut b = block.to_vec();
    b.sort_unstable();
    let partner = b[1..].iter().copied().find(|&w| uf.find(w) == uf.find(b[0])).unwrap();
    vec![b[0], partner]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{lex_cycle, praeger_xu, wreath};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(k: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(k).unwrap()
    }

    #[test]
    fn trees() {
        assert_eq!(spanning_tree(&Graph::cycle(4).unwrap()).unwrap().edges().len(), 3);
        let w = spanning_tree(&wreath(6).unwrap()).unwrap();
        assert_eq!(w.edges().len(), 11);
        assert!(spanning_tree(&Graph::empty(1)).unwrap().edges().is_empty());
        assert_eq!(spanning_tree(&Graph::edgeless(2).unwrap()), Err(Error::Disconnected));
    }

    #[test]
    fn trivial_voltages_give_copies() {
        let xi = VoltageAssignment::identity(Graph::cycle(4).unwrap(), z(3));
        let d = derived_graph(&xi);
        assert_eq!(d.components().len(), 3);
        assert!(!is_connected_cover(&xi).unwrap());
    }

    #[test]
    fn cyclic_cover_of_a_cycle() {
        let mut xi = VoltageAssignment::identity(Graph::cycle(4).unwrap(), z(3));
        // the BFS tree from 0 omits edge {2, 3}
        xi.set(3, 2, vec![2]).unwrap();
        assert_eq!(xi.voltage(2, 3).unwrap(), vec![1]);
        let d = derived_graph(&xi);
        assert!(d.is_connected() && d.is_regular(2) && d.order() == 12);
        assert!(is_connected_cover(&xi).unwrap());
        assert!(is_local_bijection(&d, xi.base(), &projection(&xi)));
    }

    #[test]
    fn reduction_telescopes_around_a_cycle() {
        let base = Graph::cycle(4).unwrap();
        let tree = spanning_tree(&base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xi = VoltageAssignment::random(base.clone(), z(3), &mut rng);
        let red = t_reduce(&xi, &tree).unwrap();
        assert!(red.is_t_reduced(&tree));
        let total = [(0, 1), (1, 2), (2, 3), (3, 0)]
            .iter()
            .fold(vec![0], |acc, &(u, v)| z(3).add(&acc, &xi.voltage(u, v).unwrap()));
        // the only cotree edge is {2, 3}; its reduced voltage is the walk 0-1-2-3-0
        assert_eq!(red.voltage(2, 3).unwrap(), total);
        assert_eq!(t_reduce(&red, &tree).unwrap(), red);
        let phi = t_reduction_isomorphism(&xi, &tree).unwrap();
        assert!(derived_graph(&xi).maps_edges_into(&derived_graph(&red), phi.images()));
        assert_eq!(is_connected_cover(&xi).is_err(), !xi.is_t_reduced(&tree));
    }

    #[test]
    fn voltage_file_round_trip() {
        let base = wreath(6).unwrap();
        let text = "group 5\n# one voltage\n0 1 3\n7 0 1\n";
        let xi = VoltageAssignment::parse(base.clone(), text).unwrap();
        assert_eq!(xi.voltage(1, 0).unwrap(), vec![2]);
        assert_eq!(xi.voltage(0, 7).unwrap(), vec![4]);
        assert_eq!(VoltageAssignment::parse(base.clone(), &xi.to_text()).unwrap(), xi);
        assert!(VoltageAssignment::parse(base.clone(), "group\n").is_err());
        assert!(VoltageAssignment::parse(base.clone(), "grp 5\n").is_err());
        assert!(VoltageAssignment::parse(base.clone(), "group 5\n0 2 1\n").is_err());
        assert!(VoltageAssignment::parse(base, "group 5\n0 1\n").is_err());
    }

    #[test]
    fn quotients() {
        let c6 = Graph::cycle(6).unwrap();
        let half = PermGroup::new(6, vec![Permutation::from_cycles(6, &[&[0, 3], &[1, 4], &[2, 5]]).unwrap()])
            .unwrap();
        let (q, map) = quotient_graph(&c6, &half).unwrap();
        assert_eq!(q, Graph::cycle(3).unwrap());
        assert_eq!(map, vec![0, 1, 2, 0, 1, 2]);
        assert!(is_regular_covering(&c6, &half).unwrap());
        let (same, _) = quotient_graph(&c6, &PermGroup::trivial(6)).unwrap();
        assert_eq!(same, c6);
        assert!(is_regular_covering(&c6, &PermGroup::trivial(6)).unwrap());
        let flip = PermGroup::new(6, vec![Permutation::from_images(vec![1, 0, 5, 4, 3, 2]).unwrap()]).unwrap();
        assert!(!is_regular_covering(&c6, &flip).unwrap());
        let bad = PermGroup::new(6, vec![Permutation::from_cycles(6, &[&[0, 2]]).unwrap()]).unwrap();
        assert!(quotient_graph(&c6, &bad).is_err());
    }

    #[test]
    fn layer_patterns() {
        let blocks = |p: usize| -> Vec<Vec<usize>> { (0..p).map(|i| (4 * i..4 * i + 4).collect()).collect() };
        assert_eq!(classify_layers(&praeger_xu(5).unwrap(), &blocks(5)).unwrap(), LayerPattern::PraegerXu);
        let p = 5;
        let lex = lex_cycle(2 * p).unwrap();
        let lex_blocks: Vec<Vec<usize>> = (0..p)
            .map(|i| vec![2 * i, 2 * i + 1, 2 * (i + p), 2 * (i + p) + 1])
            .collect();
        assert_eq!(classify_layers(&lex, &lex_blocks).unwrap(), LayerPattern::LexCycle);
        let two = lex_cycle(p).unwrap();
        let mut edges: Vec<(usize, usize)> = two.edges().collect();
        edges.extend(two.edges().map(|(u, v)| (u + 2 * p, v + 2 * p)));
        let double = Graph::from_edge_list(4 * p, &edges).unwrap();
        let double_blocks: Vec<Vec<usize>> = (0..p)
            .map(|i| vec![2 * i, 2 * i + 1, 2 * p + 2 * i, 2 * p + 2 * i + 1])
            .collect();
        assert_eq!(classify_layers(&double, &double_blocks).unwrap(), LayerPattern::Disconnected);
        assert!(classify_layers(&praeger_xu(5).unwrap(), &blocks(4)[..3]).is_err());
    }
}
