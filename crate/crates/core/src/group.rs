//! Finitely generated permutation groups.
//!
//! Order and membership queries go through a base and strong generating set
//! built by Schreier–Sims: random Schreier generators obtained by product
//! replacement seed the chain, and a deterministic pass over all Schreier
//! generators then completes it. When the group order is already known (as it
//! is for groups produced by the automorphism search), the random phase stops
//! as soon as the chain reaches that order, which certifies completeness.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::util::UnionFind;

const CHAIN_SEED: u64 = 0x5eed_0f5c_4e1e_75aa;

struct Level {
    base: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `inv_rep[b]` is the inverse of a coset representative mapping the base point to `b`.
    inv_rep: Vec<Option<Permutation>>,
}

struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, base_hint: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_hint {
            if b < degree && chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(chain.empty_level(b));
            }
        }
        chain
    }

    fn empty_level(&self, base: usize) -> Level {
        let mut inv_rep = vec![None; self.degree];
        inv_rep[base] = Some(Permutation::identity(self.degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            inv_rep,
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn fixes_prefix(&self, g: &Permutation, depth: usize) -> bool {
        self.levels[..depth].iter().all(|l| g.apply(l.base) == l.base)
    }

    fn recompute_level(&mut self, depth: usize) {
        let base = self.levels[depth].base;
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&s| self.fixes_prefix(&self.strong[s], depth))
            .collect();
        let mut level = self.empty_level(base);
        let mut queue = VecDeque::from([base]);
        while let Some(b) = queue.pop_front() {
            for &s in &gens {
                let c = self.strong[s].apply(b);
                if level.inv_rep[c].is_none() {
                    let rep = self.strong_inv[s].then(level.inv_rep[b].as_ref().unwrap());
                    level.inv_rep[c] = Some(rep);
                    level.orbit.push(c);
                    queue.push_back(c);
                }
            }
        }
        level.gens = gens;
        self.levels[depth] = level;
    }

    /// Strips `g` through the levels from `from` on; returns the residue and the
    /// level at which stripping stopped (`levels.len()` if it went through).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (depth, level) in self.levels.iter().enumerate().skip(from) {
            match &level.inv_rep[g.apply(level.base)] {
                None => return (g, depth),
                Some(inv) => g = g.then(inv),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    fn add_strong(&mut self, g: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let b = g.first_moved_point().expect("residue is not the identity");
            self.levels.push(self.empty_level(b));
        }
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        for d in 0..=depth {
            self.recompute_level(d);
        }
    }

    fn rep(&self, depth: usize, point: usize) -> Permutation {
        self.levels[depth].inv_rep[point]
            .as_ref()
            .expect("point lies in the basic orbit")
            .inverse()
    }

    /// Checks every Schreier generator from the deepest level upward, adding
    /// residues until the chain is closed.
    fn complete(&mut self) {
        let mut depth = self.levels.len() as isize - 1;
        while depth >= 0 {
            let d = depth as usize;
            let mut residue = None;
            'scan: for &b in &self.levels[d].orbit {
                let u = self.rep(d, b);
                for &s in &self.levels[d].gens {
                    let c = self.strong[s].apply(b);
                    let h = u
                        .then(&self.strong[s])
                        .then(self.levels[d].inv_rep[c].as_ref().unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift(h, d + 1);
                    if !res.is_identity() {
                        residue = Some((res, j));
                        break 'scan;
                    }
                }
            }
            match residue {
                Some((res, j)) => {
                    self.add_strong(res, j);
                    depth = j as isize;
                }
                None => depth -= 1,
            }
        }
    }

    fn build(
        degree: usize,
        gens: &[Permutation],
        base_hint: &[usize],
        known_order: Option<&BigUint>,
    ) -> StabChain {
        let mut chain = StabChain::new(degree, base_hint);
        for g in gens {
            let (res, j) = chain.sift(g.clone(), 0);
            if !res.is_identity() {
                chain.add_strong(res, j);
            }
        }
        if chain.strong.is_empty() {
            return chain;
        }
        let mut pr = ProductReplacement::new(gens, CHAIN_SEED);
        let mut streak = 0;
        let mut rounds = 0usize;
        loop {
            if let Some(target) = known_order {
                if &chain.order() == target {
                    return chain;
                }
            } else if streak >= 40 {
                break;
            }
            if rounds > 20_000 {
                break;
            }
            rounds += 1;
            let (res, j) = chain.sift(pr.next_element(), 0);
            if res.is_identity() {
                streak += 1;
            } else {
                streak = 0;
                chain.add_strong(res, j);
            }
        }
        chain.complete();
        chain
    }
}

/// Product replacement with an accumulator ("rattle"), seeded deterministically.
struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    fn new(gens: &[Permutation], seed: u64) -> Self {
        let degree = gens[0].degree();
        let mut state: Vec<Permutation> = gens.to_vec();
        while state.len() < 10 {
            state.push(gens[state.len() % gens.len()].clone());
        }
        let mut pr = ProductReplacement {
            state,
            acc: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    fn next_element(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            self.state[i].then(&other)
        } else {
            other.then(&self.state[i])
        };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and never changes afterwards.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Vec<usize>,
    known_order: Option<BigUint>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_hint: self.base_hint.clone(),
            known_order: self.known_order.clone().or_else(|| self.chain.get().map(|c| c.order())),
            chain: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for PermGroup {
    /// One generator per line in one-line image form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl PermGroup {
    /// The group generated by `gens` acting on `0..degree`.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            base_hint: Vec::new(),
            known_order: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    /// For generator sets whose group order is already certified elsewhere.
    pub(crate) fn with_known_order(
        degree: usize,
        gens: Vec<Permutation>,
        order: BigUint,
        base_hint: Vec<usize>,
    ) -> Self {
        PermGroup {
            degree,
            generators: gens,
            base_hint,
            known_order: Some(order),
            chain: OnceLock::new(),
        }
    }

    /// Parses one permutation per nonempty line.
    pub fn parse_generators(degree: usize, text: &str) -> Result<Self> {
        let gens = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                l.parse::<Permutation>()
                    .map_err(|e| Error::parse(i + 1, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            StabChain::build(
                self.degree,
                &self.generators,
                &self.base_hint,
                self.known_order.as_ref(),
            )
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.chain().strong
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().sift(g.clone(), 0).0.is_identity()
    }

    /// Orbits of the whole domain, sorted, ordered by least point.
    pub fn all_orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        uf.classes()
    }

    /// Orbits restricted to `domain`, with empty restrictions dropped.
    pub fn orbits(&self, domain: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.degree];
        for &x in domain {
            if x < self.degree {
                inside[x] = true;
            }
        }
        self.all_orbits()
            .into_iter()
            .map(|o| o.into_iter().filter(|&x| inside[x]).collect::<Vec<_>>())
            .filter(|o| !o.is_empty())
            .collect()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self, domain: &[usize]) -> bool {
        self.orbits(domain).len() == 1
    }

    /// The subgroup fixing `v`.
    pub fn point_stabilizer(&self, v: usize) -> Result<PermGroup> {
        if v >= self.degree {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.degree,
            });
        }
        let order = self.order();
        let mut hint = vec![v];
        hint.extend(self.base().into_iter().filter(|&b| b != v));
        let chain = StabChain::build(self.degree, &self.chain().strong, &hint, Some(&order));
        let orbit_len = chain.levels.first().map_or(1, |l| l.orbit.len());
        let gens: Vec<Permutation> = chain
            .strong
            .iter()
            .filter(|g| g.apply(v) == v)
            .cloned()
            .collect();
        let stab_order = order / BigUint::from(orbit_len);
        let hint = chain.levels.iter().skip(1).map(|l| l.base).collect();
        Ok(PermGroup::with_known_order(self.degree, gens, stab_order, hint))
    }

    /// True when every element fixing a point of `domain` fixes all of
    /// `domain`; `domain` is assumed to be a union of orbits.
    pub fn is_semiregular(&self, domain: &[usize]) -> bool {
        let orbits = self.orbits(domain);
        orbits.iter().all(|orbit| {
            let stab = self.point_stabilizer(orbit[0]).expect("orbit point in range");
            stab.generators()
                .iter()
                .all(|g| domain.iter().all(|&x| g.apply(x) == x))
        })
    }

    /// A uniformly distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let mut g = Permutation::identity(self.degree);
        for (depth, level) in chain.levels.iter().enumerate().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(&chain.rep(depth, b));
        }
        g
    }

    /// Every element, sorted by image list. Fails when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::GroupTooLarge(order.to_string()));
        }
        let chain = self.chain();
        let mut out = vec![Permutation::identity(self.degree)];
        for depth in (0..chain.levels.len()).rev() {
            let reps: Vec<Permutation> = chain.levels[depth]
                .orbit
                .iter()
                .map(|&b| chain.rep(depth, b))
                .collect();
            out = out
                .iter()
                .flat_map(|g| reps.iter().map(move |r| g.then(r)))
                .collect();
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Some element of prime order `p`, if `p` divides the group order.
    pub fn element_of_prime_order<R: Rng + ?Sized>(&self, p: u64, rng: &mut R) -> Option<Permutation> {
        if !(self.order() % BigUint::from(p)).is_zero_like() {
            return None;
        }
        loop {
            let g = self.random_element(rng);
            let o = g.order();
            if o.is_multiple_of(p) {
                return Some(g.pow(o / p));
            }
        }
    }
}

trait ZeroLike {
    fn is_zero_like(&self) -> bool;
}

impl ZeroLike for BigUint {
    fn is_zero_like(&self) -> bool {
        self.bits() == 0
    }
}

/// The permutation induced on `x.arcs()` (indexed by arc id) by each generator.
pub fn arc_permutation(x: &Graph, g: &Permutation) -> Option<Permutation> {
    let mut images = Vec::with_capacity(x.arc_count());
    for a in x.arcs() {
        images.push(x.arc_id(g.apply(a.tail), g.apply(a.head))?);
    }
    Some(Permutation::from_images_unchecked(images))
}

/// The induced action on the arc set, with arcs numbered in `(tail, head)` order.
pub fn action_on_arcs(g: &PermGroup, x: &Graph) -> Result<PermGroup> {
    if g.degree() != x.order() {
        return Err(Error::DegreeMismatch {
            expected: x.order(),
            found: g.degree(),
        });
    }
    let gens = g
        .generators()
        .iter()
        .enumerate()
        .map(|(index, s)| arc_permutation(x, s).ok_or(Error::NotAnAutomorphism { index }))
        .collect::<Result<Vec<_>>>()?;
    let faithful = x.order() > 0 && (0..x.order()).all(|v| x.degree(v) > 0);
    Ok(match (faithful, g.known_order.clone().or_else(|| g.chain.get().map(|c| c.order()))) {
        (true, Some(order)) => PermGroup::with_known_order(x.arc_count(), gens, order, Vec::new()),
        _ => PermGroup::new(x.arc_count(), gens)?,
    })
}
