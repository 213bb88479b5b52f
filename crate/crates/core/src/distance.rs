//! Code distance: `d_min = min(δ, δ*)`.
//!
//! `δ` is the length of a shortest cycle of the map whose edge vector lies
//! outside the row space of `H_Z`; `δ*` is the same for the dual graph against
//! `H_X`. Both come from a breadth-first search from every node. The oracle
//! instead enumerates edge subsets by weight, straight from the CSS
//! definition, and shares no code with the search.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::css::CssCode;
use crate::gf2::{BitVec, Rref};
use crate::map::PolygonalMap;

/// Default cap on the number of subsets the oracle may enumerate.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("k = 0: the code has no logical qubits, so no distance")]
    NoNontrivialCycle,
    #[error("oracle at weight cap {cap} needs {subsets} subsets, over the budget of {budget}")]
    MethodTooExpensive {
        cap: usize,
        subsets: u128,
        budget: u128,
    },
    #[error("no logical operator of weight ≤ {cap}")]
    Unresolved { cap: usize },
}

/// A cycle given by its edge indices (sorted).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub edges: Vec<usize>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `u-v,…` with 1-based endpoints.
    pub fn render(&self, edges: &[(usize, usize)]) -> String {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|&e| format!("{}-{}", edges[e].0 + 1, edges[e].1 + 1))
            .collect();
        parts.join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bfs,
    Oracle { cap: usize, budget: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub d_min: usize,
    /// Shortest nontrivial cycle of the map. The oracle fills in whichever
    /// side it found first.
    pub delta: Option<Witness>,
    /// Shortest nontrivial cycle of the dual, as primal edge indices.
    pub delta_star: Option<Witness>,
}

/// Shortest cycle of a (multi)graph whose edge vector is not in the row space
/// of `rref`. Edge `i` joins `ends[i]`. Returns `None` if every cycle is in it.
///
/// From each root a BFS tree is grown; every non-tree edge closes the cycle
/// "tree path, edge, tree path". Candidates whose two tree paths share a vertex
/// besides the root are skipped. A shortest nontrivial cycle is always simple
/// and always arises this way from one of its own vertices.
pub fn shortest_nontrivial_in_graph(
    num_nodes: usize,
    ends: &[(usize, usize)],
    rref: &Rref,
) -> Option<Witness> {
    let mut adj = vec![Vec::new(); num_nodes];
    for (e, &(u, v)) in ends.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    (0..num_nodes)
        .into_par_iter()
        .filter_map(|root| shortest_from_root(root, &adj, ends, rref))
        .min_by(|a, b| (a.len(), &a.edges).cmp(&(b.len(), &b.edges)))
}

fn shortest_from_root(
    root: usize,
    adj: &[Vec<(usize, usize)>],
    ends: &[(usize, usize)],
    rref: &Rref,
) -> Option<Witness> {
    let n = adj.len();
    let mut depth = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut branch = vec![usize::MAX; n];
    depth[root] = 0;
    branch[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(w, e) in &adj[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent_edge[w] = e;
                branch[w] = if u == root { w } else { branch[u] };
                queue.push_back(w);
            }
        }
    }

    let mut candidates: Vec<(usize, usize)> = (0..ends.len())
        .filter(|&e| {
            let (u, w) = ends[e];
            parent_edge[u] != e
                && parent_edge[w] != e
                && depth[u] != usize::MAX
                && (u == root || w == root || branch[u] != branch[w])
        })
        .map(|e| (depth[ends[e].0] + depth[ends[e].1] + 1, e))
        .collect();
    candidates.sort_unstable();

    let path_edges = |mut x: usize, out: &mut Vec<usize>| {
        while x != root {
            let e = parent_edge[x];
            out.push(e);
            let (a, b) = ends[e];
            x = if a == x { b } else { a };
        }
    };

    let mut best: Option<Witness> = None;
    for (len, e) in candidates {
        if best.as_ref().is_some_and(|b| b.len() < len) {
            break;
        }
        let mut edges = vec![e];
        path_edges(ends[e].0, &mut edges);
        path_edges(ends[e].1, &mut edges);
        edges.sort_unstable();
        let mut v = BitVec::from_indices(rref.cols(), edges.iter().copied());
        rref.reduce(&mut v);
        if v.is_zero() {
            continue;
        }
        let w = Witness { edges };
        if best.as_ref().map_or(true, |b| w < *b) {
            best = Some(w);
        }
    }
    best
}

/// `δ`: the shortest cycle of `map` outside the row space of `hz_rref`.
pub fn shortest_nontrivial_cycle(
    map: &PolygonalMap,
    hz_rref: &Rref,
) -> Result<Witness, DistanceError> {
    shortest_nontrivial_in_graph(map.num_vertices(), map.edges(), hz_rref)
        .ok_or(DistanceError::NoNontrivialCycle)
}

/// `δ*`: the shortest cycle of the dual graph (faces joined across edges)
/// outside the row space of `hx_rref`, reported in primal edge indices.
pub fn shortest_nontrivial_dual_cycle(
    map: &PolygonalMap,
    hx_rref: &Rref,
) -> Result<Witness, DistanceError> {
    let ends: Vec<(usize, usize)> = (0..map.num_edges())
        .map(|e| {
            let [f, g] = map.edge_faces(e);
            (f, g)
        })
        .collect();
    shortest_nontrivial_in_graph(map.num_faces(), &ends, hx_rref)
        .ok_or(DistanceError::NoNontrivialCycle)
}

pub fn distance(
    code: &CssCode,
    map: &PolygonalMap,
    method: Method,
) -> Result<DistanceResult, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::NoNontrivialCycle);
    }
    match method {
        Method::Bfs => {
            let (delta, delta_star) = rayon::join(
                || shortest_nontrivial_cycle(map, &code.hz().rref()),
                || shortest_nontrivial_dual_cycle(map, &code.hx().rref()),
            );
            let (delta, delta_star) = (delta?, delta_star?);
            Ok(DistanceResult {
                d_min: delta.len().min(delta_star.len()),
                delta: Some(delta),
                delta_star: Some(delta_star),
            })
        }
        Method::Oracle { cap, budget } => match oracle_distance(code, cap, budget)? {
            OracleOutcome::Found { d, witness, dual } => Ok(DistanceResult {
                d_min: d,
                delta: (!dual).then(|| witness.clone()),
                delta_star: dual.then_some(witness),
            }),
            OracleOutcome::Unresolved(cap) => Err(DistanceError::Unresolved { cap }),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// A logical operator of weight `d`. `dual` marks an element of
    /// `ker H_Z \ rowspace H_X` (a dual cycle); otherwise it is in
    /// `ker H_X \ rowspace H_Z`.
    Found {
        d: usize,
        witness: Witness,
        dual: bool,
    },
    /// Nothing of weight ≤ cap.
    Unresolved(usize),
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Least weight `w ≤ cap` of a vector in `ker H_X \ rowspace H_Z` or
/// `ker H_Z \ rowspace H_X`, by exhaustive enumeration.
pub fn oracle_distance(
    code: &CssCode,
    cap: usize,
    budget: u128,
) -> Result<OracleOutcome, DistanceError> {
    let n = code.n();
    let cap = cap.max(1);
    let subsets = binomial(n, cap);
    if subsets > budget {
        return Err(DistanceError::MethodTooExpensive {
            cap,
            subsets,
            budget,
        });
    }
    if code.k() == 0 {
        return Ok(OracleOutcome::Unresolved(cap));
    }
    let x_cols: Vec<BitVec> = (0..n).map(|e| code.hx().column(e)).collect();
    let z_cols: Vec<BitVec> = (0..n).map(|e| code.hz().column(e)).collect();
    let hz_rref = code.hz().rref();
    let hx_rref = code.hx().rref();
    let search = Search {
        n,
        x_cols: &x_cols,
        z_cols: &z_cols,
        hz_rref: &hz_rref,
        hx_rref: &hx_rref,
    };
    for w in 1..=cap.min(n) {
        let hit = (0..=n - w).into_par_iter().find_map_first(|first| {
            let mut chosen = vec![first];
            search.descend(w, &mut chosen, x_cols[first].clone(), z_cols[first].clone())
        });
        if let Some((edges, dual)) = hit {
            return Ok(OracleOutcome::Found {
                d: w,
                witness: Witness { edges },
                dual,
            });
        }
    }
    Ok(OracleOutcome::Unresolved(cap))
}

struct Search<'a> {
    n: usize,
    x_cols: &'a [BitVec],
    z_cols: &'a [BitVec],
    hz_rref: &'a Rref,
    hx_rref: &'a Rref,
}

impl Search<'_> {
    /// Extends `chosen` (increasing indices) to `w` elements; `sx`, `sz` are
    /// the running syndromes `H_X·x` and `H_Z·x`.
    fn descend(
        &self,
        w: usize,
        chosen: &mut Vec<usize>,
        sx: BitVec,
        sz: BitVec,
    ) -> Option<(Vec<usize>, bool)> {
        if chosen.len() == w {
            return self.check(chosen, &sx, &sz);
        }
        let last = *chosen.last().expect("non-empty");
        let remaining = w - chosen.len();
        for e in last + 1..=self.n - remaining {
            let mut nx = sx.clone();
            nx.xor_assign(&self.x_cols[e]);
            let mut nz = sz.clone();
            nz.xor_assign(&self.z_cols[e]);
            chosen.push(e);
            let hit = self.descend(w, chosen, nx, nz);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    fn check(&self, chosen: &[usize], sx: &BitVec, sz: &BitVec) -> Option<(Vec<usize>, bool)> {
        let x = || BitVec::from_indices(self.n, chosen.iter().copied());
        if sx.is_zero() && !self.hz_rref.in_rowspace(&x()).expect("length n") {
            return Some((chosen.to_vec(), false));
        }
        if sz.is_zero() && !self.hx_rref.in_rowspace(&x()).expect("length n") {
            return Some((chosen.to_vec(), true));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::build_css;
    use crate::generators::{builtin, gen_odd, Builtin, OddFamilyParams};

    fn tetrahedron() -> PolygonalMap {
        PolygonalMap::from_one_based(&[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]])
            .unwrap()
    }

    fn assert_valid_witness(code: &CssCode, w: &Witness, dual: bool) {
        let v = BitVec::from_indices(code.n(), w.edges.iter().copied());
        let (check, boundary) = if dual {
            (code.hz(), code.hx())
        } else {
            (code.hx(), code.hz())
        };
        assert!(check.mul_vec(&v).unwrap().is_zero(), "not a cycle");
        assert!(!boundary.rref().in_rowspace(&v).unwrap(), "trivial");
    }

    #[test]
    fn n1_distance_three() {
        let m = builtin(Builtin::N1);
        let c = build_css(&m).unwrap();
        let r = distance(&c, &m, Method::Bfs).unwrap();
        assert_eq!(r.d_min, 3);
        assert_eq!(r.delta.as_ref().unwrap().len(), 3);
        assert_valid_witness(&c, r.delta.as_ref().unwrap(), false);
        assert_valid_witness(&c, r.delta_star.as_ref().unwrap(), true);
        let o = oracle_distance(&c, 4, DEFAULT_BUDGET).unwrap();
        assert!(matches!(o, OracleOutcome::Found { d: 3, .. }));
    }

    #[test]
    fn k3_distance_four() {
        let m = builtin(Builtin::K3);
        let c = build_css(&m).unwrap();
        let r = distance(&c, &m, Method::Bfs).unwrap();
        assert_eq!(r.d_min, 4);
        assert!(r.delta.unwrap().len() >= 4);
        assert!(r.delta_star.unwrap().len() >= 4);
        assert_eq!(
            oracle_distance(&c, 3, DEFAULT_BUDGET).unwrap(),
            OracleOutcome::Unresolved(3)
        );
        match oracle_distance(&c, 4, DEFAULT_BUDGET).unwrap() {
            OracleOutcome::Found { d, witness, dual } => {
                assert_eq!(d, 4);
                assert_valid_witness(&c, &witness, dual);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sphere_has_no_distance() {
        let t = tetrahedron();
        let c = build_css(&t).unwrap();
        assert_eq!(
            distance(&c, &t, Method::Bfs),
            Err(DistanceError::NoNontrivialCycle)
        );
        assert_eq!(
            shortest_nontrivial_cycle(&t, &c.hz().rref()),
            Err(DistanceError::NoNontrivialCycle)
        );
    }

    #[test]
    fn odd_3_0_girth_matches_witness_cycle() {
        let p = OddFamilyParams::new(3, 0).unwrap();
        let m = gen_odd(&p).unwrap();
        let c = build_css(&m).unwrap();
        let w = shortest_nontrivial_cycle(&m, &c.hz().rref()).unwrap();
        assert_eq!(w.len(), 4);
        let known = m.cycle_edges(&p.witness_cycle()).unwrap();
        let v = BitVec::from_indices(c.n(), known);
        assert!(!c.hz().rref().in_rowspace(&v).unwrap());
    }

    #[test]
    fn budget_guard() {
        let m = builtin(Builtin::K3);
        let c = build_css(&m).unwrap();
        assert_eq!(
            oracle_distance(&c, 4, 1000),
            Err(DistanceError::MethodTooExpensive {
                cap: 4,
                subsets: 91_390,
                budget: 1000
            })
        );
        assert!(matches!(
            distance(
                &c,
                &m,
                Method::Oracle {
                    cap: 3,
                    budget: DEFAULT_BUDGET
                }
            ),
            Err(DistanceError::Unresolved { cap: 3 })
        ));
    }

    #[test]
    fn dual_route_agrees_with_dual_map() {
        // δ* through the face graph equals δ of the dual map itself
        for m in [
            builtin(Builtin::N1),
            gen_odd(&OddFamilyParams::new(3, 1).unwrap()).unwrap(),
        ] {
            let c = build_css(&m).unwrap();
            let star = shortest_nontrivial_dual_cycle(&m, &c.hx().rref()).unwrap();
            let dual = m.dual().unwrap();
            let dc = build_css(&dual).unwrap();
            let direct = shortest_nontrivial_cycle(&dual, &dc.hz().rref()).unwrap();
            assert_eq!(star.len(), direct.len());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(40, 4), 91_390);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(126, 3), 325_500);
    }

    #[test]
    fn witness_rendering() {
        let w = Witness { edges: vec![0, 2] };
        assert_eq!(w.render(&[(0, 1), (0, 2), (1, 4)]), "1-2,2-5");
    }
}
