//! Transitivity of a group action on vertices, edges and arcs; the oriented
//! graph of a half-arc-transitive action and its alternating cycles.

use std::fmt;

use num_bigint::BigUint;

use crate::autgroup::automorphism_group;
use crate::error::{Error, Result};
use crate::graph::{Arc, Graph};
use crate::group::{arc_permutation, PermGroup};
use crate::perm::Permutation;
use crate::util::UnionFind;

/// Transitivity of one action. Transitivity on an empty set holds vacuously.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransitivityProfile {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub half_arc_transitive: bool,
}

fn arc_images(x: &Graph, gens: &[Permutation]) -> Result<Vec<Permutation>> {
    gens.iter()
        .enumerate()
        .map(|(index, g)| {
            if g.degree() != x.order() {
                return Err(Error::DegreeMismatch {
                    expected: x.order(),
                    found: g.degree(),
                });
            }
            arc_permutation(x, g).ok_or(Error::NotAnAutomorphism { index })
        })
        .collect()
}

/// Arc-orbit forest of the group generated by `gens`; with `reversal`, each
/// arc is also joined to its reverse, giving edge orbits.
fn arc_classes(x: &Graph, arc_gens: &[Permutation], reversal: bool) -> UnionFind {
    let mut uf = UnionFind::new(x.arc_count());
    for g in arc_gens {
        for a in 0..x.arc_count() {
            uf.union(a, g.apply(a));
        }
    }
    if reversal {
        for (id, a) in x.arcs().enumerate() {
            let r = x.arc_id(a.head, a.tail).unwrap();
            uf.union(id, r);
        }
    }
    uf
}

fn profile_from_gens(x: &Graph, gens: &[Permutation]) -> Result<TransitivityProfile> {
    let arc_gens = arc_images(x, gens)?;
    let mut vertices = UnionFind::new(x.order());
    for g in gens {
        for v in 0..x.order() {
            vertices.union(v, g.apply(v));
        }
    }
    let vertex_transitive = vertices.count() <= 1;
    let arc_transitive = arc_classes(x, &arc_gens, false).count() <= 1;
    let edge_transitive = arc_classes(x, &arc_gens, true).count() <= 1;
    Ok(TransitivityProfile {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        half_arc_transitive: vertex_transitive && edge_transitive && !arc_transitive,
    })
}

/// Fails if some generator of `g` is not an automorphism of `x`.
pub fn transitivity_profile(x: &Graph, g: &PermGroup) -> Result<TransitivityProfile> {
    profile_from_gens(x, g.generators())
}

pub fn is_half_arc_transitive(x: &Graph) -> bool {
    transitivity_profile(x, &automorphism_group(x))
        .expect("automorphism generators act on the graph")
        .half_arc_transitive
}

/// The two arc orbits of a half-arc-transitive action. `chosen` is the orbit
/// of the least arc in `(tail, head)` order and `other` holds the reverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    chosen: Vec<Arc>,
    other: Vec<Arc>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Orientation {
    fn from_chosen(n: usize, chosen: Vec<Arc>, other: Vec<Arc>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for a in &chosen {
            out[a.tail].push(a.head);
            inn[a.head].push(a.tail);
        }
        Orientation {
            chosen,
            other,
            out,
            inn,
        }
    }

    pub fn chosen_orbit(&self) -> &[Arc] {
        &self.chosen
    }

    pub fn other_orbit(&self) -> &[Arc] {
        &self.other
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }
}

/// Splits the arcs of `x` into the two orbits of a `g`-half-arc-transitive action.
pub fn orientation(x: &Graph, g: &PermGroup) -> Result<Orientation> {
    let profile = transitivity_profile(x, g)?;
    if !profile.half_arc_transitive {
        return Err(Error::NotHalfArcTransitive(format!("{profile:?}")));
    }
    let arc_gens = arc_images(x, g.generators())?;
    let mut uf = arc_classes(x, &arc_gens, false);
    let root = uf.find(0);
    let (mut chosen, mut other) = (Vec::new(), Vec::new());
    for (id, a) in x.arcs().enumerate() {
        if uf.find(id) == root {
            chosen.push(a);
        } else {
            other.push(a);
        }
    }
    Ok(Orientation::from_chosen(x.order(), chosen, other))
}

/// Alternating cycles of a 2-in 2-out orientation and their attachment data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingStructure {
    /// Vertex sequences; consecutive vertices alternate between being a
    /// common head and a common tail of the two incident arcs.
    pub cycles: Vec<Vec<usize>>,
    pub radius: usize,
    pub attachment_number: usize,
    pub tightly_attached: bool,
}

fn other_of(pair: &[usize], v: usize) -> usize {
    if pair[0] == v {
        pair[1]
    } else {
        pair[0]
    }
}

/// Every arc of `o` lies on exactly one alternating cycle. Fails unless the
/// orientation is 2-in 2-out, the cycles have a common length, and adjacent
/// cycles meet in a common number of vertices.
pub fn alternating_structure(x: &Graph, o: &Orientation) -> Result<AlternatingStructure> {
    let n = x.order();
    for v in 0..n {
        if o.out[v].len() != 2 || o.inn[v].len() != 2 {
            return Err(Error::UnbalancedOrientation(v));
        }
    }
    let mut cycle_of_arc = vec![usize::MAX; x.arc_count()];
    // cycle through v in which v is a common head / a common tail
    let mut head_cycle = vec![usize::MAX; n];
    let mut tail_cycle = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    for start in &o.chosen {
        let sid = x.arc_id(start.tail, start.head).unwrap();
        if cycle_of_arc[sid] != usize::MAX {
            continue;
        }
        let c = cycles.len();
        let mut verts = Vec::new();
        let (mut tail, mut head) = (start.tail, start.head);
        loop {
            // arc tail -> head, entered at the tail in its tail role
            let id = x.arc_id(tail, head).unwrap();
            cycle_of_arc[id] = c;
            verts.push(tail);
            tail_cycle[tail] = c;
            verts.push(head);
            head_cycle[head] = c;
            let next_tail = other_of(&o.inn[head], tail);
            let next_head = other_of(&o.out[next_tail], head);
            let nid = x.arc_id(next_tail, next_head).unwrap();
            cycle_of_arc[x.arc_id(next_tail, head).unwrap()] = c;
            if nid == sid {
                break;
            }
            tail = next_tail;
            head = next_head;
        }
        cycles.push(verts);
    }
    let lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
    if lengths.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InconsistentAlternation(format!("cycle lengths {lengths:?}")));
    }
    let radius = lengths.first().copied().unwrap_or(0) / 2;
    let sets: Vec<Vec<bool>> = cycles
        .iter()
        .map(|c| {
            let mut s = vec![false; n];
            for &v in c {
                s[v] = true;
            }
            s
        })
        .collect();
    let mut attachment = None;
    for v in 0..n {
        let (a, b) = (head_cycle[v], tail_cycle[v]);
        let meet = (0..n).filter(|&w| sets[a][w] && sets[b][w]).count();
        match attachment {
            None => attachment = Some(meet),
            Some(m) if m != meet => {
                return Err(Error::InconsistentAlternation(format!(
                    "attachment sets of sizes {m} and {meet}"
                )))
            }
            _ => {}
        }
    }
    let attachment_number = attachment.unwrap_or(0);
    Ok(AlternatingStructure {
        cycles,
        radius,
        attachment_number,
        tightly_attached: attachment_number == radius,
    })
}

/// Vertex-stabilizer order, and whether a half-arc-transitive action with
/// attachment sets of size at least 3 was present to force it to be 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCheck {
    pub stabilizer_order: BigUint,
    pub hypotheses_met: bool,
}

pub fn stabilizer_order_check(x: &Graph, g: &PermGroup) -> Result<StabilizerCheck> {
    if x.order() == 0 {
        return Err(Error::param("empty graph"));
    }
    let profile = transitivity_profile(x, g)?;
    let stabilizer_order = g.order() / BigUint::from(g.orbit(0).len());
    let hypotheses_met = profile.half_arc_transitive
        && x.is_connected()
        && x.is_regular(4)
        && orientation(x, g)
            .and_then(|o| alternating_structure(x, &o))
            .map(|s| s.attachment_number >= 3)
            .unwrap_or(false);
    Ok(StabilizerCheck {
        stabilizer_order,
        hypotheses_met,
    })
}

/// Outcome of the bounded search for a half-arc-transitive subgroup.
#[derive(Debug)]
pub enum HatSearch {
    Found(PermGroup),
    /// Every candidate subgroup was checked; none is half-arc-transitive.
    /// Subgroups needing three or more generators were not considered.
    NoneAmongCandidates,
    /// The budget ran out first; nothing is known.
    Unknown,
}

/// Cap on `|Aut(x)|` for explicit element enumeration.
pub const HAT_SEARCH_ELEMENT_LIMIT: usize = 20_000;

/// Closes single elements, then pairs `(a, b)` with `a < b`, of `Aut(x)` in
/// sorted order, testing at most `budget` candidates. Returns the
/// half-arc-transitive candidate of least order, stopping early at order
/// `|E(x)|`, the least order an edge-transitive group can have.
pub fn find_hat_subgroup(x: &Graph, budget: usize) -> Result<HatSearch> {
    let aut = automorphism_group(x);
    let elems = match aut.elements(HAT_SEARCH_ELEMENT_LIMIT) {
        Ok(e) => e,
        Err(_) => return Ok(HatSearch::Unknown),
    };
    let floor = BigUint::from(x.size());
    let mut best: Option<PermGroup> = None;
    let mut tried = 0usize;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            if tried >= budget {
                return Ok(best.map_or(HatSearch::Unknown, HatSearch::Found));
            }
            tried += 1;
            let gens: Vec<Permutation> = if i == j {
                vec![elems[i].clone()]
            } else {
                vec![elems[i].clone(), elems[j].clone()]
            };
            let hat = profile_from_gens(x, &gens)
                .map(|p| p.half_arc_transitive)
                .unwrap_or(false);
            if !hat {
                continue;
            }
            let h = PermGroup::new(x.order(), gens)?;
            if best.as_ref().is_none_or(|b| h.order() < b.order()) {
                if h.order() == floor {
                    return Ok(HatSearch::Found(h));
                }
                best = Some(h);
            }
        }
    }
    Ok(best.map_or(HatSearch::NoneAmongCandidates, HatSearch::Found))
}

/// Full symmetry summary of a graph under its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub n: usize,
    pub edges: usize,
    pub regular: Option<usize>,
    pub profile: TransitivityProfile,
    pub aut_order: BigUint,
    /// Present when the automorphism group is half-arc-transitive.
    pub alternating: Option<(usize, usize, bool)>,
}

pub fn analyze(x: &Graph) -> Result<Analysis> {
    let aut = automorphism_group(x);
    let profile = transitivity_profile(x, &aut)?;
    let alternating = if profile.half_arc_transitive {
        orientation(x, &aut)
            .and_then(|o| alternating_structure(x, &o))
            .ok()
            .map(|s| (s.radius, s.attachment_number, s.tightly_attached))
    } else {
        None
    };
    Ok(Analysis {
        n: x.order(),
        edges: x.size(),
        regular: x.valency(),
        profile,
        aut_order: aut.order(),
        alternating,
    })
}

impl fmt::Display for Analysis {
    /// `key=value` lines in a fixed order; `-` marks absent values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.profile;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "edges={}", self.edges)?;
        match self.regular {
            Some(k) => writeln!(f, "regular={k}")?,
            None => writeln!(f, "regular=none")?,
        }
        writeln!(f, "vt={}", p.vertex_transitive)?;
        writeln!(f, "et={}", p.edge_transitive)?;
        writeln!(f, "at={}", p.arc_transitive)?;
        writeln!(f, "hat={}", p.half_arc_transitive)?;
        writeln!(f, "aut_order={}", self.aut_order)?;
        match self.alternating {
            Some((r, a, t)) => {
                writeln!(f, "radius={r}")?;
                writeln!(f, "attachment={a}")?;
                writeln!(f, "tight={t}")
            }
            None => {
                writeln!(f, "radius=-")?;
                writeln!(f, "attachment=-")?;
                writeln!(f, "tight=-")
            }
        }
    }
}
