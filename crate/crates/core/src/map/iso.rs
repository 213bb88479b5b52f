//! Map isomorphism by flag propagation.
//!
//! A map isomorphism is fixed by the image of one flag (a face together with a
//! starting position and a direction). We anchor one flag of the first map and
//! try every flag of the second: each attempt propagates the face alignment
//! across shared edges, and fails as soon as a vertex or face assignment
//! clashes.

use super::PolygonalMap;

pub(super) fn is_isomorphic(a: &PolygonalMap, b: &PolygonalMap) -> bool {
    if a.num_vertices() != b.num_vertices()
        || a.num_edges() != b.num_edges()
        || a.num_faces() != b.num_faces()
    {
        return false;
    }
    let profile = |m: &PolygonalMap| {
        let mut sizes: Vec<usize> = m.faces().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let mut degrees: Vec<usize> = (0..m.num_vertices()).map(|v| m.degree(v)).collect();
        degrees.sort_unstable();
        (sizes, degrees)
    };
    if profile(a) != profile(b) {
        return false;
    }

    let anchor_len = a.face(0).len();
    for (g, face) in b.faces().iter().enumerate() {
        if face.len() != anchor_len {
            continue;
        }
        for offset in 0..anchor_len {
            for forward in [true, false] {
                if Propagation::new(a, b).run(Alignment {
                    from: 0,
                    to: g,
                    offset,
                    forward,
                }) {
                    return true;
                }
            }
        }
    }
    false
}

/// Face `from` of the first map sent to face `to` of the second, with
/// position `i` going to `offset ± i`.
#[derive(Clone, Copy)]
struct Alignment {
    from: usize,
    to: usize,
    offset: usize,
    forward: bool,
}

impl Alignment {
    fn image(&self, i: usize, len: usize) -> usize {
        if self.forward {
            (self.offset + i) % len
        } else {
            (self.offset + len - i % len) % len
        }
    }
}

struct Propagation<'m> {
    a: &'m PolygonalMap,
    b: &'m PolygonalMap,
    vertex_to: Vec<Option<usize>>,
    vertex_from: Vec<Option<usize>>,
    face_to: Vec<Option<usize>>,
    face_from: Vec<Option<usize>>,
}

impl<'m> Propagation<'m> {
    fn new(a: &'m PolygonalMap, b: &'m PolygonalMap) -> Self {
        Self {
            a,
            b,
            vertex_to: vec![None; a.num_vertices()],
            vertex_from: vec![None; b.num_vertices()],
            face_to: vec![None; a.num_faces()],
            face_from: vec![None; b.num_faces()],
        }
    }

    fn assign_vertex(&mut self, va: usize, vb: usize) -> bool {
        match (self.vertex_to[va], self.vertex_from[vb]) {
            (None, None) => {
                self.vertex_to[va] = Some(vb);
                self.vertex_from[vb] = Some(va);
                true
            }
            (Some(x), Some(y)) => x == vb && y == va,
            _ => false,
        }
    }

    fn run(mut self, seed: Alignment) -> bool {
        self.face_to[seed.from] = Some(seed.to);
        self.face_from[seed.to] = Some(seed.from);
        let mut queue = vec![seed];
        while let Some(al) = queue.pop() {
            let fa = self.a.face(al.from);
            let fb = self.b.face(al.to);
            let len = fa.len();
            for i in 0..len {
                if !self.assign_vertex(fa[i], fb[al.image(i, len)]) {
                    return false;
                }
            }
            for i in 0..len {
                let (u, w) = (fa[i], fa[(i + 1) % len]);
                let (u_img, w_img) = (fb[al.image(i, len)], fb[al.image(i + 1, len)]);
                let ea = self.a.edge_index(u, w).expect("face edge");
                let eb = self.b.edge_index(u_img, w_img).expect("face edge");
                let ga = self.a.other_face(ea, al.from);
                let gb = self.b.other_face(eb, al.to);
                match (self.face_to[ga], self.face_from[gb]) {
                    (Some(x), Some(y)) => {
                        if x != gb || y != ga {
                            return false;
                        }
                        continue;
                    }
                    (None, None) => {}
                    _ => return false,
                }
                let Some(next) = self.align_across(ga, gb, (u, w), (u_img, w_img)) else {
                    return false;
                };
                self.face_to[ga] = Some(gb);
                self.face_from[gb] = Some(ga);
                queue.push(next);
            }
        }
        self.face_to.iter().all(Option::is_some)
    }

    /// Alignment of face `ga` onto `gb` that sends edge `(u, w)` to
    /// `(u_img, w_img)` endpoint by endpoint.
    fn align_across(
        &self,
        ga: usize,
        gb: usize,
        (u, w): (usize, usize),
        (u_img, w_img): (usize, usize),
    ) -> Option<Alignment> {
        let fa = self.a.face(ga);
        let fb = self.b.face(gb);
        let len = fa.len();
        if fb.len() != len {
            return None;
        }
        let pos = |f: &[usize], x: usize| f.iter().position(|&y| y == x).expect("on face");
        let (p, q) = (pos(fa, u), pos(fa, w));
        let (p_img, q_img) = (pos(fb, u_img), pos(fb, w_img));
        let step_a = (q + len - p) % len == 1;
        let step_b = (q_img + len - p_img) % len == 1;
        let forward = step_a == step_b;
        let offset = if forward {
            (p_img + len - p) % len
        } else {
            (p_img + p) % len
        };
        Some(Alignment {
            from: ga,
            to: gb,
            offset,
            forward,
        })
    }
}
