//! The verification battery: each criterion recomputes a published value or a
//! structural property from scratch and reports what it measured.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::autgroup::{are_isomorphic, automorphism_group};
use crate::coverings::{
    derived_graph, is_connected_cover, is_local_bijection, is_regular_covering, projection,
    quotient_graph, spanning_tree, voltage_action, VoltageAssignment,
};
use crate::families::{
    ca_graph, lex_cycle, praeger_xu, tight_hat_predicate, rose_window_6_5_4, wreath, x_rmn,
    FiniteAbelianGroup, TightHatExclusion,
};
use crate::graph::Graph;
use crate::symmetry::{
    alternating_structure, find_hat_subgroup, orientation, stabilizer_order_check,
    transitivity_profile, HatSearch,
};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    /// Passed and within its time limit.
    pub fn ok(&self) -> bool {
        self.passed && self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} ({:.2}s, limit {}s)",
            if self.ok() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

fn timed(
    id: u32,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce() -> (bool, String),
) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = body();
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_secs),
    }
}

/// Counts adjacency-preserving bijections by exhaustive backtracking.
pub fn brute_force_automorphism_count(x: &Graph) -> u64 {
    fn extend(x: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = map.len();
        if v == x.order() {
            return 1;
        }
        let mut total = 0;
        for img in 0..x.order() {
            if used[img] || x.degree(img) != x.degree(v) {
                continue;
            }
            if (0..v).all(|u| x.has_edge(u, v) == x.has_edge(map[u], img)) {
                used[img] = true;
                map.push(img);
                total += extend(x, map, used);
                map.pop();
                used[img] = false;
            }
        }
        total
    }
    extend(x, &mut Vec::new(), &mut vec![false; x.order()])
}

fn aut_order(x: &Graph) -> BigUint {
    automorphism_group(x).order()
}

pub fn criterion_rose_window() -> CriterionResult {
    timed(1, "|Aut(R6(5,4))| = 48", 1, || {
        let o = aut_order(&rose_window_6_5_4());
        (o == BigUint::from(48u32), format!("order {o}"))
    })
}

pub fn criterion_wreath() -> CriterionResult {
    timed(2, "|Aut(W(6,2))| = 768 and W(6,2) ≅ C6[2K1]", 1, || {
        let w = wreath(6).unwrap();
        let o = aut_order(&w);
        let iso = are_isomorphic(&w, &lex_cycle(6).unwrap()).is_some();
        (
            o == BigUint::from(768u32) && iso,
            format!("order {o}, isomorphic {iso}"),
        )
    })
}

pub fn criterion_hat_subgroups() -> CriterionResult {
    timed(3, "W(6,2), R6(5,4) arc-transitive with half-arc-transitive subgroups", 60, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, x) in [("W(6,2)", wreath(6).unwrap()), ("R6(5,4)", rose_window_6_5_4())] {
            let at = transitivity_profile(&x, &automorphism_group(&x))
                .map(|p| p.arc_transitive)
                .unwrap_or(false);
            let found = match find_hat_subgroup(&x, 5_000_000) {
                Ok(HatSearch::Found(h)) => Some(h.order()),
                _ => None,
            };
            ok &= at && found.is_some();
            parts.push(format!(
                "{name}: at={at}, subgroup order {}",
                found.map_or("none".to_string(), |o| o.to_string())
            ));
        }
        (ok, parts.join("; "))
    })
}

pub fn criterion_x_2_12_13() -> CriterionResult {
    timed(4, "X(2;12,13) half-arc-transitive, |Aut| = 312, radius 13, tight, |A_v| = 2", 120, || {
        let x = x_rmn(2, 12, 13).unwrap();
        let aut = automorphism_group(&x);
        let profile = transitivity_profile(&x, &aut).unwrap();
        let order = aut.order();
        let alt = orientation(&x, &aut).and_then(|o| alternating_structure(&x, &o));
        let stab = stabilizer_order_check(&x, &aut).unwrap();
        let (radius, tight) = alt.as_ref().map_or((0, false), |s| (s.radius, s.tightly_attached));
        let ok = profile.half_arc_transitive
            && order == BigUint::from(312u32)
            && radius == 13
            && tight
            && stab.hypotheses_met
            && stab.stabilizer_order == BigUint::from(2u32);
        (
            ok,
            format!(
                "hat={}, order {order}, radius {radius}, tight {tight}, stabilizer {}",
                profile.half_arc_transitive, stab.stabilizer_order
            ),
        )
    })
}

/// Every `(r, m, n)` with `3 <= m <= 6`, odd `3 <= n <= 15`, `r` a unit with `r^m = ±1`.
pub fn tight_hat_grid() -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    for n in (3..=15usize).step_by(2) {
        for m in 3..=6usize {
            for r in 1..n as i64 {
                if tight_hat_predicate(r, m, n).is_ok() {
                    out.push((r, m, n));
                }
            }
        }
    }
    out
}

/// True when the full automorphism group is half-arc-transitive with tightly
/// attached alternating cycles of radius `n`.
pub fn tightly_attached_hat_of_radius(x: &Graph, n: usize) -> bool {
    let aut = automorphism_group(x);
    match transitivity_profile(x, &aut) {
        Ok(p) if p.half_arc_transitive => orientation(x, &aut)
            .and_then(|o| alternating_structure(x, &o))
            .map(|s| s.tightly_attached && s.radius == n)
            .unwrap_or(false),
        _ => false,
    }
}

pub fn criterion_tight_hat_sweep() -> CriterionResult {
    timed(5, "tightly-attached predicate equals computed structure on the grid", 600, || {
        let grid = tight_hat_grid();
        type Row = ((i64, usize, usize), bool, Option<TightHatExclusion>);
        let rows: Vec<Row> = grid
            .par_iter()
            .map(|&(r, m, n)| {
                let computed = tightly_attached_hat_of_radius(&x_rmn(r, m, n).unwrap(), n);
                ((r, m, n), computed, tight_hat_predicate(r, m, n).unwrap())
            })
            .collect();
        let mismatches: Vec<String> = rows
            .iter()
            .filter(|(_, computed, exc)| *computed != exc.is_none())
            .map(|((r, m, n), computed, _)| format!("({r};{m},{n}) computed {computed}"))
            .collect();
        let x237 = x_rmn(2, 3, 7).unwrap();
        let at237 = transitivity_profile(&x237, &automorphism_group(&x237))
            .map(|p| p.arc_transitive)
            .unwrap_or(false);
        let hats = rows.iter().filter(|(_, c, _)| *c).count();
        (
            mismatches.is_empty() && at237,
            format!(
                "{} triples, {hats} half-arc-transitive, {} mismatches{}; X(2;3,7) arc-transitive {at237}",
                rows.len(),
                mismatches.len(),
                if mismatches.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", mismatches.join(", "))
                }
            ),
        )
    })
}

pub fn criterion_order_eight_members() -> CriterionResult {
    timed(6, "X(2;4,17) half-arc-transitive, X(5;4,13) not", 60, || {
        let hat = |x: &Graph| {
            transitivity_profile(x, &automorphism_group(x))
                .map(|p| p.half_arc_transitive)
                .unwrap_or(false)
        };
        let a = hat(&x_rmn(2, 4, 17).unwrap());
        let b = hat(&x_rmn(5, 4, 13).unwrap());
        (a && !b, format!("X(2;4,17) hat={a}, X(5;4,13) hat={b}"))
    })
}

/// Every family member with fewer than 27 vertices that the constructors accept.
pub fn small_family_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in (3..27usize).step_by(2) {
        for m in 3..27usize {
            if m * n >= 27 {
                break;
            }
            for r in 1..n as i64 {
                if let Ok(x) = x_rmn(r, m, n) {
                    out.push((format!("x:{r},{m},{n}"), x));
                }
            }
        }
    }
    out.push(("rw6".into(), rose_window_6_5_4()));
    for n in 3..=13 {
        out.push((format!("wreath:{n}"), wreath(n).unwrap()));
        out.push((format!("lex-cycle:{n}"), lex_cycle(n).unwrap()));
    }
    for p in [3, 5] {
        out.push((format!("px:{p}"), praeger_xu(p).unwrap()));
    }
    for v in 0..2 {
        out.push((format!("ca{v}:5"), ca_graph(5, v).unwrap()));
    }
    out
}

pub fn criterion_small_graphs() -> CriterionResult {
    timed(7, "no family graph on fewer than 27 vertices is half-arc-transitive", 30, || {
        let graphs = small_family_graphs();
        let bad: Vec<&str> = graphs
            .par_iter()
            .filter(|(_, x)| {
                transitivity_profile(x, &automorphism_group(x))
                    .map(|p| p.half_arc_transitive)
                    .unwrap_or(true)
            })
            .map(|(name, _)| name.as_str())
            .collect();
        (
            bad.is_empty(),
            format!("{} graphs checked, half-arc-transitive: {bad:?}", graphs.len()),
        )
    })
}

/// One round-trip sample; `Err` names the first failed check.
pub fn covering_round_trip(xi: &VoltageAssignment) -> std::result::Result<(), String> {
    let base = xi.base();
    let k = xi.group().size();
    let cover = derived_graph(xi);
    if cover.order() != base.order() * k || cover.size() != base.size() * k {
        return Err(format!("cover has {} vertices, {} edges", cover.order(), cover.size()));
    }
    if !is_local_bijection(&cover, base, &projection(xi)) {
        return Err("projection is not a local bijection".into());
    }
    let action = voltage_action(xi);
    if !is_regular_covering(&cover, &action).map_err(|e| e.to_string())? {
        return Err("voltage action is not a regular covering".into());
    }
    let (q, _) = quotient_graph(&cover, &action).map_err(|e| e.to_string())?;
    if are_isomorphic(&q, base).is_none() {
        return Err("quotient is not isomorphic to the base".into());
    }
    let predicted = is_connected_cover(xi).map_err(|e| e.to_string())?;
    if predicted != cover.is_connected() {
        return Err(format!("connectivity predicted {predicted}"));
    }
    Ok(())
}

pub fn covering_bases() -> Vec<(&'static str, Graph)> {
    vec![
        ("C4", Graph::cycle(4).unwrap()),
        ("W(6,2)", wreath(6).unwrap()),
        ("R6(5,4)", rose_window_6_5_4()),
        ("C(2;5,2)", praeger_xu(5).unwrap()),
    ]
}

pub fn criterion_covering_round_trip(seed: u64) -> CriterionResult {
    timed(8, "covering round trip on 100 seeded T-reduced assignments", 300, || {
        let bases = covering_bases();
        let failures: Vec<String> = (0..100u64)
            .into_par_iter()
            .filter_map(|i| {
                let (name, base) = &bases[(i % 4) as usize];
                let k = if (i / 4) % 2 == 0 { 3 } else { 5 };
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                let tree = spanning_tree(base).unwrap();
                let xi = VoltageAssignment::random_t_reduced(
                    base.clone(),
                    FiniteAbelianGroup::cyclic(k).unwrap(),
                    &tree,
                    &mut rng,
                );
                covering_round_trip(&xi)
                    .err()
                    .map(|e| format!("sample {i} ({name}, Z{k}): {e}"))
            })
            .collect();
        (
            failures.is_empty(),
            format!("100 samples, seed {seed}, {} failures {failures:?}", failures.len()),
        )
    })
}

/// Fixture graphs on at most 12 vertices.
pub fn small_fixtures() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("rw6".into(), rose_window_6_5_4()),
        ("wreath:6".into(), wreath(6).unwrap()),
        ("C12".into(), Graph::cycle(12).unwrap()),
        (
            "K4".into(),
            Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        ),
        (
            "Petersen".into(),
            Graph::from_edge_list(
                10,
                &[
                    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                ],
            )
            .unwrap(),
        ),
        ("P3".into(), Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap()),
        ("empty5".into(), Graph::empty(5)),
    ];
    for n in 3..=11 {
        out.push((format!("C{n}"), Graph::cycle(n).unwrap()));
    }
    for n in 3..=6 {
        out.push((format!("wreath:{n}"), wreath(n).unwrap()));
        out.push((format!("lex-cycle:{n}"), lex_cycle(n).unwrap()));
    }
    for (r, m) in [(1, 3), (2, 3), (1, 4)] {
        out.push((format!("x:{r},{m},3"), x_rmn(r, m, 3).unwrap()));
    }
    out
}

pub fn criterion_oracle() -> CriterionResult {
    timed(9, "automorphism orders match brute force on graphs of order <= 12", 120, || {
        let fixtures = small_fixtures();
        let bad: Vec<String> = fixtures
            .par_iter()
            .filter_map(|(name, x)| {
                let fast = aut_order(x);
                let slow = brute_force_automorphism_count(x);
                (fast != BigUint::from(slow)).then(|| format!("{name}: {fast} vs {slow}"))
            })
            .collect();
        (
            bad.is_empty(),
            format!("{} fixtures, mismatches {bad:?}", fixtures.len()),
        )
    })
}

pub fn criterion_x_32_12_61() -> CriterionResult {
    timed(10, "X(32;12,61) half-arc-transitive with |Aut| = 1464", 1800, || {
        let x = x_rmn(32, 12, 61).unwrap();
        let aut = automorphism_group(&x);
        let hat = transitivity_profile(&x, &aut)
            .map(|p| p.half_arc_transitive)
            .unwrap_or(false);
        let order = aut.order();
        (
            hat && order == BigUint::from(1464u32),
            format!("hat={hat}, order {order}"),
        )
    })
}

/// Criteria 1 to 9, plus 10 when `big` is set.
pub fn run_all(big: bool, seed: u64) -> Vec<CriterionResult> {
    let mut out = vec![
        criterion_rose_window(),
        criterion_wreath(),
        criterion_hat_subgroups(),
        criterion_x_2_12_13(),
        criterion_tight_hat_sweep(),
        criterion_order_eight_members(),
        criterion_small_graphs(),
        criterion_covering_round_trip(seed),
        criterion_oracle(),
    ];
    if big {
        out.push(criterion_x_32_12_61());
    }
    out
}
