//! Named tetravalent graph families and the arithmetic predicates that
//! classify them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A direct product `Z_{k1} × ... × Z_{kt}`, written additively. Elements are
/// residue tuples; ranks enumerate them in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

pub type GroupElement = Vec<usize>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::param("cyclic factor orders must be at least 1"));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(k: usize) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn check(&self, g: &[usize]) -> Result<()> {
        if g.len() != self.orders.len() || g.iter().zip(&self.orders).any(|(&x, &k)| x >= k) {
            return Err(Error::BadElement(g.to_vec()));
        }
        Ok(())
    }

    /// Reduces arbitrary integers into an element.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(Error::BadElement(residues.iter().map(|&x| x as usize).collect()));
        }
        Ok(residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &k)| x.rem_euclid(k as i64) as usize)
            .collect())
    }

    pub fn add(&self, a: &[usize], b: &[usize]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &k)| (x + y) % k)
            .collect()
    }

    pub fn neg(&self, a: &[usize]) -> GroupElement {
        a.iter().zip(&self.orders).map(|(&x, &k)| (k - x) % k).collect()
    }

    pub fn sub(&self, a: &[usize], b: &[usize]) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn is_identity(&self, a: &[usize]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, a: &[usize]) -> usize {
        a.iter().zip(&self.orders).fold(0, |acc, (&x, &k)| acc * k + x)
    }

    pub fn unrank(&self, mut r: usize) -> GroupElement {
        let mut out = vec![0; self.orders.len()];
        for (slot, &k) in out.iter_mut().zip(&self.orders).rev() {
            *slot = r % k;
            r /= k;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(|r| self.unrank(r))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        self.orders.iter().map(|&k| rng.gen_range(0..k)).collect()
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_size(&self, gens: &[GroupElement]) -> usize {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut stack = vec![self.identity()];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let r = self.rank(&y);
                if !seen[r] {
                    seen[r] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    pub fn generated_by(&self, gens: &[GroupElement]) -> bool {
        self.subgroup_size(gens) == self.size()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|k| format!("Z{k}")).collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("x"))
        }
    }
}

/// `Cay(G, S)`: vertex `rank(x)`, with `x ~ x + s` for `s ∈ S`.
pub fn cayley(g: &FiniteAbelianGroup, s: &[GroupElement]) -> Result<Graph> {
    for x in s {
        g.check(x)?;
        if g.is_identity(x) {
            return Err(Error::param("connection set contains the identity"));
        }
        if !s.contains(&g.neg(x)) {
            return Err(Error::param(format!(
                "connection set is not closed under inverses: {x:?}"
            )));
        }
    }
    let adj = g
        .elements()
        .map(|x| s.iter().map(|y| g.rank(&g.add(&x, y))).collect())
        .collect();
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inverse_mod(r: u64, n: u64) -> Option<u64> {
    let e = (r as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

fn is_plus_minus_one(x: u64, n: u64) -> bool {
    x % n == 1 % n || (x + 1).is_multiple_of(n)
}

fn check_x_params(r: i64, m: usize, n: usize) -> Result<u64> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::param(format!("n must be an odd integer >= 3, got {n}")));
    }
    if m < 3 {
        return Err(Error::param(format!("m must be at least 3, got {m}")));
    }
    let n64 = n as u64;
    let r = r.rem_euclid(n as i64) as u64;
    if r.gcd(&n64) != 1 {
        return Err(Error::param(format!("r = {r} is not a unit modulo {n}")));
    }
    if !is_plus_minus_one(pow_mod(r, m as u64, n64), n64) {
        return Err(Error::param(format!("r^m is not ±1 modulo n for (r;m,n) = ({r};{m},{n})")));
    }
    Ok(r)
}

/// `X(r;m,n)`: vertex `u_i^j` is `i*n + j`, adjacent to `u_{i+1}^{j ± r^i}`.
/// `r` is reduced modulo `n`.
pub fn x_rmn(r: i64, m: usize, n: usize) -> Result<Graph> {
    let r = check_x_params(r, m, n)?;
    let mut edges = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        let step = pow_mod(r, i as u64, n as u64) as usize;
        let next = (i + 1) % m;
        for j in 0..n {
            edges.push((i * n + j, next * n + (j + step) % n));
            edges.push((i * n + j, next * n + (j + n - step) % n));
        }
    }
    Graph::from_edge_list(m * n, &edges)
}

/// `R_6(5,4)`: `S_i = i`, `Q_i = 6 + i`, with rim `S_iS_{i+1}`, spokes
/// `S_iQ_i` and `S_{i+5}Q_i`, hub `Q_iQ_{i+4}`.
pub fn rose_window_6_5_4() -> Graph {
    let mut edges = Vec::with_capacity(24);
    for i in 0..6 {
        edges.push((i, (i + 1) % 6));
        edges.push((i, 6 + i));
        edges.push(((i + 5) % 6, 6 + i));
        edges.push((6 + i, 6 + (i + 4) % 6));
    }
    Graph::from_edge_list(12, &edges).expect("fixed edge list is valid")
}

/// `W(n,2)`: `E_i = i`, `F_i = n + i`; every vertex over `i` meets both over `i+1`.
pub fn wreath(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param(format!("wreath graph needs n >= 3, got {n}")));
    }
    let mut edges = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        edges.extend([(i, j), (i, n + j), (n + i, j), (n + i, n + j)]);
    }
    Graph::from_edge_list(2 * n, &edges)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::param(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `C(2;p,2)`: vertex `(i,(x,y))` is `4i + 2x + y`, adjacent to `(i+1,(y,z))`.
pub fn praeger_xu(p: usize) -> Result<Graph> {
    check_odd_prime(p as u64)?;
    let mut edges = Vec::with_capacity(4 * p);
    for i in 0..p {
        let j = (i + 1) % p;
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    edges.push((4 * i + 2 * x + y, 4 * j + 2 * y + z));
                }
            }
        }
    }
    Graph::from_edge_list(4 * p, &edges)
}

/// `C_n[2K_1]`.
pub fn lex_cycle(n: usize) -> Result<Graph> {
    Graph::lexicographic_product(&Graph::cycle(n)?, &Graph::edgeless(2)?)
}

/// Least element of multiplicative order 4 modulo a prime `p ≡ 1 (mod 4)`.
pub fn least_order_four(p: u64) -> Option<u64> {
    (2..p).find(|&w| pow_mod(w, 2, p) == p - 1)
}

fn check_ca_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::param(format!("{p} is not a prime congruent to 1 mod 4")));
    }
    Ok(())
}

/// `CA^variant_{4p}` built from a given element `w` of order 4 in `Z_p^*`.
pub fn ca_graph_with(p: usize, variant: u8, w: u64) -> Result<Graph> {
    check_ca_prime(p as u64)?;
    if pow_mod(w, 2, p as u64) != p as u64 - 1 {
        return Err(Error::param(format!("{w} does not have order 4 modulo {p}")));
    }
    let two_p = 2 * p as u64;
    let e = match variant {
        0 => (w * w) % two_p,
        1 => w % two_p,
        _ => return Err(Error::param(format!("CA variant must be 0 or 1, got {variant}"))),
    } as i64;
    let g = FiniteAbelianGroup::new(vec![2 * p, 2])?;
    let s = [[1, 0], [-1, 0], [e, 1], [-e, 1]]
        .iter()
        .map(|x| g.element(x))
        .collect::<Result<Vec<_>>>()?;
    cayley(&g, &s)
}

/// `CA^variant_{4p}` on `Z_{2p} × Z_2` with `w` the least element of order 4.
pub fn ca_graph(p: usize, variant: u8) -> Result<Graph> {
    check_ca_prime(p as u64)?;
    let w = least_order_four(p as u64).expect("p ≡ 1 mod 4 has an element of order 4");
    ca_graph_with(p, variant, w)
}

/// Which exceptional case excludes `X(r;m,n)` from being a tightly attached
/// half-arc-transitive graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TightHatExclusion {
    /// `r^2 = ±1 (mod n)`.
    SquareIsUnit,
    /// `m = 3`, `n = 7`, with `r ∈ {±2, ±2^{-1}}`.
    ThreeSeven,
    /// `m = 6`, `n = 7k`, with the unique admissible root `q` of `x^2 + x - 2`.
    SixSevenK,
}

impl fmt::Display for TightHatExclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TightHatExclusion::SquareIsUnit => "r^2 = ±1",
            TightHatExclusion::ThreeSeven => "(r;m,n) = (2;3,7) up to r -> ±r^±1",
            TightHatExclusion::SixSevenK => "(r;m,n) = (r;6,7k) with unique q",
        })
    }
}

/// `None` when no exception applies, which predicts a tightly attached
/// half-arc-transitive graph of radius `n`.
pub fn tight_hat_predicate(r: i64, m: usize, n: usize) -> Result<Option<TightHatExclusion>> {
    let r = check_x_params(r, m, n)?;
    let n64 = n as u64;
    if is_plus_minus_one(r * r % n64, n64) {
        return Ok(Some(TightHatExclusion::SquareIsUnit));
    }
    if m == 3 && n == 7 && [2, 3, 4, 5].contains(&r) {
        return Ok(Some(TightHatExclusion::ThreeSeven));
    }
    if m == 6 && n.is_multiple_of(7) {
        let k = n / 7;
        if k % 2 == 1 && !k.is_multiple_of(7) && pow_mod(r, 6, n64) == 1 {
            let ri = inverse_mod(r, n64).expect("r is a unit");
            let mut candidates = vec![r, n64 - r, ri, n64 - ri];
            candidates.sort_unstable();
            candidates.dedup();
            let roots = candidates
                .iter()
                .filter(|&&q| {
                    (q * q + q + n64 - 2).is_multiple_of(n64) && (7 * (q + n64 - 1)).is_multiple_of(n64) && q % 7 == 5
                })
                .count();
            if roots == 1 {
                return Ok(Some(TightHatExclusion::SixSevenK));
            }
        }
    }
    Ok(None)
}

/// True iff `p ≡ 1 (mod 8)`, the condition for a half-arc-transitive
/// tetravalent graph of order `4p`.
pub fn has_unit_of_order_eight(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    Ok(p % 8 == 1)
}

/// Parsed family specifier: `x:r,m,n`, `rw6`, `wreath:n`, `px:p`, `ca0:p`,
/// `ca1:p`, `lex-cycle:n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    X { r: i64, m: usize, n: usize },
    RoseWindow,
    Wreath(usize),
    PraegerXu(usize),
    Ca { p: usize, variant: u8 },
    LexCycle(usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::X { r, m, n } => x_rmn(r, m, n),
            FamilySpec::RoseWindow => Ok(rose_window_6_5_4()),
            FamilySpec::Wreath(n) => wreath(n),
            FamilySpec::PraegerXu(p) => praeger_xu(p),
            FamilySpec::Ca { p, variant } => ca_graph(p, variant),
            FamilySpec::LexCycle(n) => lex_cycle(n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::X { r, m, n } => write!(f, "x:{r},{m},{n}"),
            FamilySpec::RoseWindow => f.write_str("rw6"),
            FamilySpec::Wreath(n) => write!(f, "wreath:{n}"),
            FamilySpec::PraegerXu(p) => write!(f, "px:{p}"),
            FamilySpec::Ca { p, variant } => write!(f, "ca{variant}:{p}"),
            FamilySpec::LexCycle(n) => write!(f, "lex-cycle:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = |want: usize| -> Result<Vec<i64>> {
            let vals = args
                .split(',')
                .filter(|a| !a.trim().is_empty())
                .map(|a| {
                    a.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::param(format!("`{a}` in `{s}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != want {
                return Err(Error::param(format!(
                    "`{s}` needs {want} parameter(s), found {}",
                    vals.len()
                )));
            }
            Ok(vals)
        };
        let natural = |v: i64| -> Result<usize> {
            usize::try_from(v).map_err(|_| Error::param(format!("negative parameter {v} in `{s}`")))
        };
        Ok(match tag {
            "x" => {
                let v = nums(3)?;
                FamilySpec::X {
                    r: v[0],
                    m: natural(v[1])?,
                    n: natural(v[2])?,
                }
            }
            "rw6" => {
                nums(0)?;
                FamilySpec::RoseWindow
            }
            "wreath" => FamilySpec::Wreath(natural(nums(1)?[0])?),
            "px" => FamilySpec::PraegerXu(natural(nums(1)?[0])?),
            "ca0" | "ca1" => FamilySpec::Ca {
                p: natural(nums(1)?[0])?,
                variant: (tag == "ca1") as u8,
            },
            "lex-cycle" => FamilySpec::LexCycle(natural(nums(1)?[0])?),
            _ => return Err(Error::param(format!("unknown family `{tag}`"))),
        })
    }
}
