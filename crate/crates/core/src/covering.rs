//! Cyclic covers.
//!
//! Cutting a map along a two-sided cycle `C = (c_0, …, c_{k-1})` duplicates
//! every cycle vertex: the corners at `c_i` split into two arcs at the cycle
//! edges, and each arc goes to its own clone. The result has two boundary
//! cycles `A` and `B`. The d-th cover glues `d` copies of the cut map in a
//! ring, `B` of copy `t` onto `A` of copy `t + 1`.

use thiserror::Error;

use crate::css::build_css;
use crate::gf2::BitVec;
use crate::map::{MapError, PolygonalMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("no homologically nontrivial two-sided cycle exists")]
    NoSuchCycle,
    #[error("cycle {} is one-sided", one_based(.cycle))]
    OneSidedCycle { cycle: Vec<usize> },
    #[error("{} is not a cycle of the map: {reason}", one_based(.cycle))]
    NotACycle { cycle: Vec<usize>, reason: String },
    #[error("gluing along {} gives a disconnected cover", one_based(.cycle))]
    DisconnectedCover { cycle: Vec<usize> },
    #[error("fold count must be at least 1")]
    InvalidFolds,
    #[error("cover is not a valid map: {0}")]
    Map(MapError),
}

fn one_based(cycle: &[usize]) -> String {
    let parts: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// The cutting cycle (0-based vertex ids) and the number of sheets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    cycle: Vec<usize>,
    d: usize,
}

impl CoverSpec {
    pub fn new(cycle: Vec<usize>, d: usize) -> Result<Self, CoverError> {
        if d == 0 {
            return Err(CoverError::InvalidFolds);
        }
        Ok(Self { cycle, d })
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// A map cut open along a cycle of length `k`.
///
/// The A-side clone of `c_i` keeps id `c_i`; the B-side clone is `V + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub num_vertices: usize,
    pub faces: Vec<Vec<usize>>,
    pub boundary_a: Vec<usize>,
    pub boundary_b: Vec<usize>,
    /// For each face, which side (`Some(false)` = A, `Some(true)` = B) it
    /// lies on at each cycle vertex it contains, in face order.
    sides: Vec<Vec<Option<bool>>>,
}

impl CutResult {
    /// Distinct edges of the cut complex, each with the number of faces it borders.
    pub fn edge_multiplicities(&self) -> Vec<((usize, usize), usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (u, v) = (f[i], f[(i + 1) % f.len()]);
                *counts.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        counts.into_iter().collect()
    }
}

fn check_cycle(map: &PolygonalMap, cycle: &[usize]) -> Result<Vec<usize>, CoverError> {
    let fail = |reason: &str| CoverError::NotACycle {
        cycle: cycle.to_vec(),
        reason: reason.to_string(),
    };
    if cycle.len() < 3 {
        return Err(fail("needs at least 3 vertices"));
    }
    if cycle.iter().any(|&v| v >= map.num_vertices()) {
        return Err(fail("vertex out of range"));
    }
    let mut seen = vec![false; map.num_vertices()];
    for &v in cycle {
        if std::mem::replace(&mut seen[v], true) {
            return Err(fail("repeated vertex"));
        }
    }
    map.cycle_edges(cycle)
        .ok_or_else(|| fail("consecutive vertices are not adjacent"))
}

/// Side assignment of every face at every cycle vertex.
///
/// `side[i]` maps each face at `c_i` to `false` (A) or `true` (B). The A side
/// at `c_0` is the arc holding the first face of edge `c_0 c_1`; it is carried
/// along each cycle edge by the face shared with the next vertex.
fn assign_sides(
    map: &PolygonalMap,
    cycle: &[usize],
    edges: &[usize],
) -> Result<Vec<Vec<(usize, bool)>>, CoverError> {
    let k = cycle.len();
    // arcs[i]: faces at c_i, split by the two cycle edges
    let arcs: Vec<[Vec<usize>; 2]> = (0..k)
        .map(|i| {
            let rot = map.rotation(cycle[i]);
            let (e_prev, e_next) = (edges[(i + k - 1) % k], edges[i]);
            let start = rot
                .iter()
                .position(|c| c.edge == e_prev)
                .expect("cycle edge");
            let mut halves = [Vec::new(), Vec::new()];
            let mut half = 0;
            for j in 0..rot.len() {
                let c = rot[(start + j) % rot.len()];
                if j > 0 && c.edge == e_next {
                    half = 1;
                }
                halves[half].push(c.face);
            }
            halves
        })
        .collect();

    let arc_of = |i: usize, f: usize| -> usize {
        if arcs[i][0].contains(&f) {
            0
        } else {
            1
        }
    };

    // a_arc[i] = index of the arc at c_i that is side A
    let mut a_arc = vec![0usize; k];
    let f0 = map.edge_faces(edges[0])[0];
    a_arc[0] = arc_of(0, f0);
    for i in 0..k {
        let e = edges[i];
        let f = map.edge_faces(e)[0];
        let f_side_a = arc_of(i, f) == a_arc[i];
        let j = (i + 1) % k;
        let f_arc_next = arc_of(j, f);
        let want = if f_side_a { f_arc_next } else { 1 - f_arc_next };
        if j == 0 {
            if want != a_arc[0] {
                return Err(CoverError::OneSidedCycle {
                    cycle: cycle.to_vec(),
                });
            }
        } else {
            a_arc[j] = want;
        }
    }

    Ok((0..k)
        .map(|i| {
            let mut out = Vec::new();
            for (arc, faces) in arcs[i].iter().enumerate() {
                out.extend(faces.iter().map(|&f| (f, arc != a_arc[i])));
            }
            out
        })
        .collect())
}

/// Cuts `map` along `cycle` (0-based vertex ids).
pub fn cut_along(map: &PolygonalMap, cycle: &[usize]) -> Result<CutResult, CoverError> {
    let edges = check_cycle(map, cycle)?;
    let sides = assign_sides(map, cycle, &edges)?;
    let v = map.num_vertices();
    let mut position = vec![None; v];
    for (i, &c) in cycle.iter().enumerate() {
        position[c] = Some(i);
    }

    let mut faces = Vec::with_capacity(map.num_faces());
    let mut face_sides = Vec::with_capacity(map.num_faces());
    for (fi, face) in map.faces().iter().enumerate() {
        let mut out = Vec::with_capacity(face.len());
        let mut fs = Vec::with_capacity(face.len());
        for &x in face {
            match position[x] {
                Some(i) => {
                    let b = sides[i]
                        .iter()
                        .find(|&&(f, _)| f == fi)
                        .map(|&(_, b)| b)
                        .expect("face at cycle vertex");
                    out.push(if b { v + i } else { x });
                    fs.push(Some(b));
                }
                None => {
                    out.push(x);
                    fs.push(None);
                }
            }
        }
        faces.push(out);
        face_sides.push(fs);
    }

    Ok(CutResult {
        num_vertices: v + cycle.len(),
        faces,
        boundary_a: cycle.to_vec(),
        boundary_b: (0..cycle.len()).map(|i| v + i).collect(),
        sides: face_sides,
    })
}

/// Glues `spec.d()` copies of `map` cut along `spec.cycle()` into a ring.
///
/// Vertex `x` of copy `t` gets id `t·V + x`; the B-side clone of a cycle
/// vertex in copy `t` is its A-side clone in copy `t + 1 (mod d)`. With
/// `d = 1` this returns the original face lists.
pub fn d_cover(map: &PolygonalMap, spec: &CoverSpec) -> Result<PolygonalMap, CoverError> {
    let cut = cut_along(map, spec.cycle())?;
    let (v, d) = (map.num_vertices(), spec.d());
    let mut faces = Vec::with_capacity(d * map.num_faces());
    for t in 0..d {
        for (fi, face) in map.faces().iter().enumerate() {
            faces.push(
                face.iter()
                    .zip(&cut.sides[fi])
                    .map(|(&x, side)| match side {
                        Some(true) => ((t + 1) % d) * v + x,
                        _ => t * v + x,
                    })
                    .collect(),
            );
        }
    }
    PolygonalMap::from_faces(faces).map_err(|e| match e {
        MapError::Disconnected { .. } => CoverError::DisconnectedCover {
            cycle: spec.cycle().to_vec(),
        },
        other => CoverError::Map(other),
    })
}

/// Whether `cycle` is two-sided (cutting along it gives two boundary cycles).
pub fn is_two_sided(map: &PolygonalMap, cycle: &[usize]) -> Result<bool, CoverError> {
    let edges = check_cycle(map, cycle)?;
    match assign_sides(map, cycle, &edges) {
        Ok(_) => Ok(true),
        Err(CoverError::OneSidedCycle { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// All simple cycles of exactly `len` vertices, each once.
///
/// A cycle is listed from its least vertex, in the direction whose second
/// vertex is smaller than its last.
pub fn simple_cycles(map: &PolygonalMap, len: usize) -> Vec<Vec<usize>> {
    fn extend(
        map: &PolygonalMap,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let (start, last) = (path[0], *path.last().expect("non-empty"));
        if path.len() == len {
            if path[1] < last && map.edge_index(last, start).is_some() {
                out.push(path.clone());
            }
            return;
        }
        let mut next: Vec<usize> = map
            .neighbors(last)
            .filter(|&w| w > start && !on_path[w])
            .collect();
        next.sort_unstable();
        for w in next {
            path.push(w);
            on_path[w] = true;
            extend(map, len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }

    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut on_path = vec![false; map.num_vertices()];
    for s in 0..map.num_vertices() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(map, len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

/// A shortest cycle that is homologically nontrivial over Z₂ and two-sided.
///
/// Among cycles of the least length, the one with the lexicographically least
/// sorted edge-index list wins. The cycle is returned from its least vertex,
/// heading to the smaller of its two cycle neighbors.
pub fn find_gluing_cycle(map: &PolygonalMap) -> Result<Vec<usize>, CoverError> {
    // χ ≥ 1 means the sphere or the projective plane; neither has one
    if map.euler_characteristic() >= 1 {
        return Err(CoverError::NoSuchCycle);
    }
    let code = build_css(map).map_err(|_| CoverError::NoSuchCycle)?;
    let rref = code.hz().rref();
    let n = map.num_edges();
    for len in 3..=map.num_vertices() {
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for cycle in simple_cycles(map, len) {
            let mut edges = map.cycle_edges(&cycle).expect("enumerated cycle");
            edges.sort_unstable();
            if best.as_ref().is_some_and(|(e, _)| *e <= edges) {
                continue;
            }
            let in_space = rref
                .in_rowspace(&BitVec::from_indices(n, edges.iter().copied()))
                .expect("length n");
            if in_space || !is_two_sided(map, &cycle)? {
                continue;
            }
            best = Some((edges, cycle));
        }
        if let Some((_, cycle)) = best {
            return Ok(cycle);
        }
    }
    Err(CoverError::NoSuchCycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{builtin, gen_odd, Builtin, OddFamilyParams};

    fn tetrahedron() -> PolygonalMap {
        PolygonalMap::from_one_based(&[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]])
            .unwrap()
    }

    fn counts(m: &PolygonalMap) -> (usize, usize, usize, i64) {
        (
            m.num_vertices(),
            m.num_edges(),
            m.num_faces(),
            m.euler_characteristic(),
        )
    }

    #[test]
    fn gluing_cycles_of_builtins() {
        let n1 = builtin(Builtin::N1);
        assert_eq!(find_gluing_cycle(&n1).unwrap(), vec![0, 1, 5]);
        let k3 = builtin(Builtin::K3);
        assert_eq!(find_gluing_cycle(&k3).unwrap(), vec![1, 2, 15, 9]);
        assert_eq!(
            find_gluing_cycle(&tetrahedron()),
            Err(CoverError::NoSuchCycle)
        );
    }

    #[test]
    fn n1_cut_counts() {
        let n1 = builtin(Builtin::N1);
        let cycle = find_gluing_cycle(&n1).unwrap();
        let cut = cut_along(&n1, &cycle).unwrap();
        let edges = cut.edge_multiplicities();
        assert_eq!(
            (cut.num_vertices, edges.len(), cut.faces.len()),
            (15, 45, 28)
        );
        let boundary: Vec<_> = edges
            .iter()
            .filter(|(_, c)| *c == 1)
            .map(|(e, _)| *e)
            .collect();
        assert_eq!(boundary.len(), 6);
        assert!(edges.iter().all(|(_, c)| *c == 1 || *c == 2));
        for side in [&cut.boundary_a, &cut.boundary_b] {
            assert_eq!(side.len(), 3);
            for i in 0..3 {
                let (u, v) = (side[i], side[(i + 1) % 3]);
                assert!(boundary.contains(&(u.min(v), u.max(v))));
            }
        }
    }

    #[test]
    fn k3_has_a_one_sided_nontrivial_cycle() {
        let k3 = builtin(Builtin::K3);
        let found = (5..=8)
            .flat_map(|len| simple_cycles(&k3, len))
            .find(|c| !is_two_sided(&k3, c).unwrap())
            .expect("a one-sided cycle");
        assert!(matches!(
            cut_along(&k3, &found),
            Err(CoverError::OneSidedCycle { .. })
        ));
        // one-sided cycles are never null-homologous
        let code = build_css(&k3).unwrap();
        let v = BitVec::from_indices(40, k3.cycle_edges(&found).unwrap());
        assert!(!code.hz().rref().in_rowspace(&v).unwrap());
    }

    #[test]
    fn separating_face_cut_on_tetrahedron() {
        let t = tetrahedron();
        let cut = cut_along(&t, &[0, 1, 2]).unwrap();
        assert_eq!(cut.num_vertices, 7);
        assert_eq!(cut.edge_multiplicities().len(), 9);
        // two sheets glued along a separating cycle fall apart
        let spec = CoverSpec::new(vec![0, 1, 2], 2).unwrap();
        assert!(matches!(
            d_cover(&t, &spec),
            Err(CoverError::DisconnectedCover { .. })
        ));
    }

    #[test]
    fn bad_cycles_and_folds() {
        let n1 = builtin(Builtin::N1);
        assert!(matches!(
            cut_along(&n1, &[0, 1]),
            Err(CoverError::NotACycle { .. })
        ));
        assert!(matches!(
            cut_along(&n1, &[0, 1, 1]),
            Err(CoverError::NotACycle { .. })
        ));
        assert!(matches!(
            cut_along(&n1, &[0, 1, 99]),
            Err(CoverError::NotACycle { .. })
        ));
        let far = (0..12)
            .find(|&v| n1.edge_index(0, v).is_none() && v != 0)
            .unwrap();
        let mid = n1
            .neighbors(0)
            .find(|&w| n1.edge_index(w, far).is_some())
            .unwrap();
        assert!(matches!(
            cut_along(&n1, &[0, mid, far]),
            Err(CoverError::NotACycle { .. })
        ));
        assert_eq!(
            CoverSpec::new(vec![0, 1, 5], 0),
            Err(CoverError::InvalidFolds)
        );
    }

    #[test]
    fn single_sheet_is_the_base() {
        for m in [builtin(Builtin::N1), builtin(Builtin::K3)] {
            let cycle = find_gluing_cycle(&m).unwrap();
            let c = d_cover(&m, &CoverSpec::new(cycle, 1).unwrap()).unwrap();
            assert_eq!(c.faces(), m.faces());
            assert!(c.is_isomorphic(&m));
        }
    }

    #[test]
    fn covers_scale_and_keep_type() {
        let bases = [
            builtin(Builtin::N1),
            builtin(Builtin::K3),
            gen_odd(&OddFamilyParams::new(3, 0).unwrap()).unwrap(),
        ];
        for m in bases {
            let cycle = find_gluing_cycle(&m).unwrap();
            let (v, e, f, chi) = counts(&m);
            for d in 1..=3 {
                let c = d_cover(&m, &CoverSpec::new(cycle.clone(), d).unwrap()).unwrap();
                assert_eq!(counts(&c), (d * v, d * e, d * f, d as i64 * chi));
                assert_eq!(c.vertex_type(), m.vertex_type());
            }
        }
    }

    #[test]
    fn n1_covers_are_orientable() {
        let n1 = builtin(Builtin::N1);
        let cycle = find_gluing_cycle(&n1).unwrap();
        for d in 1..=3 {
            let c = d_cover(&n1, &CoverSpec::new(cycle.clone(), d).unwrap()).unwrap();
            assert!(c.is_orientable());
        }
    }

    #[test]
    fn simple_cycle_counts() {
        // K4 has 4 triangles and 3 four-cycles
        let t = tetrahedron();
        assert_eq!(simple_cycles(&t, 3).len(), 4);
        assert_eq!(simple_cycles(&t, 4).len(), 3);
    }
}
