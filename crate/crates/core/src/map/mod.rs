//! Polygonal maps on closed surfaces.
//!
//! A [`PolygonalMap`] is given by its faces, each a cyclic sequence of
//! distinct vertex ids. Construction validates that the faces close up into a
//! surface without boundary: every edge borders exactly two faces, every
//! vertex neighborhood is a single disk, and the edge graph is connected.
//!
//! No global orientation is chosen anywhere, so non-orientable surfaces are
//! handled the same way as orientable ones.
//!
//! Vertex ids are 0-based in memory. Error messages and the text format in
//! [`io`] use 1-based ids.

mod io;
mod iso;
mod vertex_type;

use std::collections::HashMap;

use thiserror::Error;

pub use io::{parse_map, to_map_string, to_map_string_with_comments, MapFile};
pub use vertex_type::{MapType, VertexType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map has no faces")]
    Empty,
    #[error("face {face} has {len} vertices; faces need at least 3")]
    FaceTooShort { face: usize, len: usize },
    #[error("vertex {} repeats within face {face}", .vertex + 1)]
    RepeatedVertexInFace { face: usize, vertex: usize },
    #[error("vertex ids are not contiguous: {} is unused but {} is present", .missing + 1, .max + 1)]
    NonContiguous { missing: usize, max: usize },
    #[error("edge {}-{} lies on {count} face boundaries; a closed surface needs exactly 2", .u + 1, .v + 1)]
    OpenEdge { u: usize, v: usize, count: usize },
    #[error("vertex {} is pinched: its corners form {cycles} separate cycles", .vertex + 1)]
    PinchedVertex { vertex: usize, cycles: usize },
    #[error("edge graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One corner of a vertex rotation: the edge leaving the vertex and the face
/// that follows it. Consecutive corners share the face's second edge, so the
/// face of corner `i` lies between `edge` of corner `i` and `edge` of corner
/// `i + 1` (cyclically).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub edge: usize,
    pub face: usize,
}

#[derive(Debug, Clone)]
pub struct PolygonalMap {
    num_vertices: usize,
    faces: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_lookup: HashMap<(usize, usize), usize>,
    edge_faces: Vec<[usize; 2]>,
    rotations: Vec<Vec<Corner>>,
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl PolygonalMap {
    /// Builds and validates a map from 0-based face lists.
    pub fn from_faces(faces: Vec<Vec<usize>>) -> Result<Self, MapError> {
        if faces.is_empty() {
            return Err(MapError::Empty);
        }
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(MapError::FaceTooShort {
                    face: fi,
                    len: f.len(),
                });
            }
            let mut seen = f.clone();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(MapError::RepeatedVertexInFace {
                    face: fi,
                    vertex: w[0],
                });
            }
        }

        let max = faces.iter().flatten().copied().max().expect("non-empty");
        let mut present = vec![false; max + 1];
        for &v in faces.iter().flatten() {
            present[v] = true;
        }
        if let Some(missing) = present.iter().position(|p| !p) {
            return Err(MapError::NonContiguous { missing, max });
        }
        let num_vertices = max + 1;

        let mut incidence: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                incidence
                    .entry(key(f[i], f[(i + 1) % f.len()]))
                    .or_default()
                    .push(fi);
            }
        }
        let mut edges: Vec<(usize, usize)> = incidence.keys().copied().collect();
        edges.sort_unstable();
        if let Some(&(u, v)) = edges.iter().find(|e| incidence[e].len() != 2) {
            return Err(MapError::OpenEdge {
                u,
                v,
                count: incidence[&(u, v)].len(),
            });
        }
        let edge_lookup: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let edge_faces = edges
            .iter()
            .map(|e| {
                let fs = &incidence[e];
                [fs[0], fs[1]]
            })
            .collect();

        let rotations = build_rotations(num_vertices, &faces, &edge_lookup)?;

        let map = Self {
            num_vertices,
            faces,
            edges,
            edge_lookup,
            edge_faces,
            rotations,
        };
        let components = map.edge_graph_components();
        if components != 1 {
            return Err(MapError::Disconnected { components });
        }
        Ok(map)
    }

    /// Builds a map from 1-based face lists, as printed in the literature and
    /// stored in `.map` files.
    pub fn from_one_based(faces: &[Vec<usize>]) -> Result<Self, MapError> {
        let mut zero_based = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            let mut g = Vec::with_capacity(f.len());
            for &v in f {
                if v == 0 {
                    return Err(MapError::Parse {
                        line: fi + 1,
                        message: "vertex ids are 1-based; found 0".into(),
                    });
                }
                g.push(v - 1);
            }
            zero_based.push(g);
        }
        Self::from_faces(zero_based)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Faces converted to 1-based ids.
    pub fn faces_one_based(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .map(|f| f.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Edges as `(min, max)` pairs, sorted; an edge's index is its position.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&key(u, v)).copied()
    }

    /// The two faces on either side of edge `e`.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    pub fn rotation(&self, v: usize) -> &[Corner] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Neighbors of `v`, in rotation order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotations[v].iter().map(move |c| {
            let (a, b) = self.edges[c.edge];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    /// Edge indices along the boundary of face `f`, in face order.
    pub fn face_edges(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        (0..face.len())
            .map(|i| self.edge_lookup[&key(face[i], face[(i + 1) % face.len()])])
            .collect()
    }

    /// Edge indices of a closed walk through `cycle`, or `None` if some
    /// consecutive pair is not an edge.
    pub fn cycle_edges(&self, cycle: &[usize]) -> Option<Vec<usize>> {
        (0..cycle.len())
            .map(|i| self.edge_index(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Type of the face cycle around `v`.
    pub fn vertex_type_at(&self, v: usize) -> VertexType {
        let sizes: Vec<usize> = self.rotations[v]
            .iter()
            .map(|c| self.faces[c.face].len())
            .collect();
        VertexType::from_face_sizes(&sizes)
    }

    /// The common vertex type, if every vertex has the same one.
    pub fn vertex_type(&self) -> MapType {
        let first = self.vertex_type_at(0);
        for v in 1..self.num_vertices {
            let t = self.vertex_type_at(v);
            if t != first {
                return MapType::Mixed {
                    first: (0, first),
                    second: (v, t),
                };
            }
        }
        MapType::SemiEquivelar(first)
    }

    /// Dual map: one vertex per face of `self` (same index), one face per
    /// vertex of `self`, traversing that vertex's rotation.
    ///
    /// Fails only when two faces of `self` share more than one edge, since
    /// the dual edge graph would then have parallel edges.
    pub fn dual(&self) -> Result<PolygonalMap, MapError> {
        let faces = self
            .rotations
            .iter()
            .map(|rot| rot.iter().map(|c| c.face).collect())
            .collect();
        PolygonalMap::from_faces(faces)
    }

    /// Whether the faces can be oriented so every edge is traversed once in
    /// each direction.
    pub fn is_orientable(&self) -> bool {
        // flip[f] = whether face f is traversed against its stored order
        let mut flip: Vec<Option<bool>> = vec![None; self.faces.len()];
        let mut stack = Vec::new();
        for start in 0..self.faces.len() {
            if flip[start].is_some() {
                continue;
            }
            flip[start] = Some(false);
            stack.push(start);
            while let Some(f) = stack.pop() {
                let face = &self.faces[f];
                for i in 0..face.len() {
                    let (a, b) = (face[i], face[(i + 1) % face.len()]);
                    let e = self.edge_lookup[&key(a, b)];
                    let g = self.other_face(e, f);
                    let same_direction = self.traverses(g, a, b);
                    let want = flip[f].expect("visited") ^ same_direction;
                    match flip[g] {
                        None => {
                            flip[g] = Some(want);
                            stack.push(g);
                        }
                        Some(got) if got != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_isomorphic(&self, other: &PolygonalMap) -> bool {
        iso::is_isomorphic(self, other)
    }

    /// The face across edge `e` from face `f`.
    pub fn other_face(&self, e: usize, f: usize) -> usize {
        let [a, b] = self.edge_faces[e];
        if a == f {
            b
        } else {
            a
        }
    }

    /// Whether face `f` steps directly from `a` to `b` in its stored order.
    fn traverses(&self, f: usize, a: usize, b: usize) -> bool {
        let face = &self.faces[f];
        let i = face.iter().position(|&x| x == a).expect("vertex on face");
        face[(i + 1) % face.len()] == b
    }

    fn edge_graph_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.num_vertices;
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        components
    }
}

/// Orders the corners around each vertex by walking across shared edges.
fn build_rotations(
    num_vertices: usize,
    faces: &[Vec<usize>],
    edge_lookup: &HashMap<(usize, usize), usize>,
) -> Result<Vec<Vec<Corner>>, MapError> {
    // (face, previous neighbor, next neighbor) for every corner at a vertex
    let mut corners: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); num_vertices];
    for (fi, f) in faces.iter().enumerate() {
        let n = f.len();
        for i in 0..n {
            corners[f[i]].push((fi, f[(i + n - 1) % n], f[(i + 1) % n]));
        }
    }

    let mut rotations = Vec::with_capacity(num_vertices);
    for (v, cs) in corners.iter().enumerate() {
        // every neighbor appears in exactly two corners (edges are 2-sided)
        let mut by_neighbor: HashMap<usize, [usize; 2]> = HashMap::new();
        for (ci, &(_, p, n)) in cs.iter().enumerate() {
            for w in [p, n] {
                by_neighbor
                    .entry(w)
                    .and_modify(|slot| slot[1] = ci)
                    .or_insert([ci, usize::MAX]);
            }
        }

        // walks one corner cycle starting at `start`, returning (corner, entry neighbor) pairs
        let walk = |start: usize, visited: &mut [bool]| {
            let mut out = Vec::new();
            let (mut ci, mut entry) = (start, cs[start].1);
            while !visited[ci] {
                visited[ci] = true;
                let (_, p, n) = cs[ci];
                let exit = if p == entry { n } else { p };
                out.push((ci, entry));
                let [a, b] = by_neighbor[&exit];
                ci = if a == ci { b } else { a };
                entry = exit;
            }
            out
        };

        let mut visited = vec![false; cs.len()];
        let cycle = walk(0, &mut visited);
        if cycle.len() != cs.len() {
            let mut cycles = 1;
            while let Some(start) = visited.iter().position(|x| !x) {
                walk(start, &mut visited);
                cycles += 1;
            }
            return Err(MapError::PinchedVertex { vertex: v, cycles });
        }
        let rotation: Vec<Corner> = cycle
            .into_iter()
            .map(|(ci, entry)| Corner {
                edge: edge_lookup[&key(v, entry)],
                face: cs[ci].0,
            })
            .collect();
        rotations.push(rotation);
    }
    Ok(rotations)
}
