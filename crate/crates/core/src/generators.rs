//! Parametric self-dual equivelar maps and the built-in catalog.
//!
//! Both families live on the cyclic group `Z_N`: face `F_j` is a fixed
//! offset pattern translated by `j`. The offsets come from the sequence
//! `a_{2n-1} = 3^(n-1) - 1`, `a_{2n} = 2·3^(n-1) - 1`, with the last one or two
//! entries shifted by multiples of `m2`.
//!
//! Labels follow the usual `1..=N` convention (`N` standing for 0), so the
//! first face of the odd family at `(m1, m2) = (3, 0)` is `(1, 2, 3, 6, 9)`.
//! Every constructed face list is run through full map validation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::map::{MapError, PolygonalMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("m1 must be ≥ 3 (got {0})")]
    M1TooSmall(u32),
    #[error("parameters ({m1}, {m2}) overflow the vertex count")]
    TooLarge { m1: u32, m2: u64 },
    #[error("parameters ({m1}, {m2}) do not yield a valid map: {source}")]
    DegenerateParams {
        m1: u32,
        m2: u64,
        #[source]
        source: MapError,
    },
    #[error("unknown built-in map {0:?} (known: n1, k3)")]
    UnknownName(String),
}

/// `a_i` for `i ≥ 1`.
pub fn a_sequence(i: u32) -> u64 {
    assert!(i >= 1, "sequence is 1-indexed");
    let n = i.div_ceil(2);
    let p = 3u64.pow(n - 1);
    if i % 2 == 1 {
        p - 1
    } else {
        2 * p - 1
    }
}

fn pow3(e: u32) -> Option<u64> {
    3u64.checked_pow(e)
}

/// Parameters of the `[(2m1-1)^(2m1-1)]` family on `2·(3^(m1-1) + 2·m2 - 1)` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddFamilyParams {
    m1: u32,
    m2: u64,
}

/// Parameters of the `[(2m1)^(2m1)]` family on `3^m1 + 2·m2 - 1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvenFamilyParams {
    m1: u32,
    m2: u64,
}

impl OddFamilyParams {
    pub fn new(m1: u32, m2: u64) -> Result<Self, GenError> {
        if m1 < 3 {
            return Err(GenError::M1TooSmall(m1));
        }
        let p = Self { m1, m2 };
        p.checked_base().ok_or(GenError::TooLarge { m1, m2 })?;
        Ok(p)
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u64 {
        self.m2
    }

    fn checked_base(&self) -> Option<u64> {
        let b = pow3(self.m1 - 1)?.checked_add(self.m2.checked_mul(2)?)? - 1;
        // 2·b vertices, (2m1-1)·b edges
        b.checked_mul(2 * self.m1 as u64)?;
        Some(b)
    }

    /// `3^(m1-1) + 2·m2 - 1`; the vertex count is twice this.
    pub fn base(&self) -> u64 {
        self.checked_base().expect("checked in new")
    }

    pub fn vertex_count(&self) -> u64 {
        2 * self.base()
    }

    pub fn face_size(&self) -> usize {
        2 * self.m1 as usize - 1
    }

    /// Offsets `a_1, …, a_{2m1-1}` with the last two shifted by `m2` and `2·m2`.
    pub fn offsets(&self) -> Vec<u64> {
        let len = self.face_size() as u32;
        let mut offs: Vec<u64> = (1..=len).map(a_sequence).collect();
        let l = offs.len();
        offs[l - 2] += self.m2;
        offs[l - 1] += 2 * self.m2;
        offs
    }

    /// The 4-cycle `C(3^(m1-1)+2m2, 1, 2, 3^(m1-1)+2m2+1)`, 0-based.
    pub fn witness_cycle(&self) -> [usize; 4] {
        let b = self.base() as usize + 1;
        [b - 1, 0, 1, b]
    }
}

impl EvenFamilyParams {
    pub fn new(m1: u32, m2: u64) -> Result<Self, GenError> {
        if m1 < 3 {
            return Err(GenError::M1TooSmall(m1));
        }
        let p = Self { m1, m2 };
        p.checked_vertices().ok_or(GenError::TooLarge { m1, m2 })?;
        Ok(p)
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u64 {
        self.m2
    }

    fn checked_vertices(&self) -> Option<u64> {
        let n = pow3(self.m1)?.checked_add(self.m2.checked_mul(2)?)? - 1;
        n.checked_mul(self.m1 as u64)?;
        Some(n)
    }

    pub fn vertex_count(&self) -> u64 {
        self.checked_vertices().expect("checked in new")
    }

    pub fn face_size(&self) -> usize {
        2 * self.m1 as usize
    }

    /// Offsets `a_1, …, a_{2m1}` with the last shifted by `m2`.
    pub fn offsets(&self) -> Vec<u64> {
        let len = self.face_size() as u32;
        let mut offs: Vec<u64> = (1..=len).map(a_sequence).collect();
        *offs.last_mut().expect("non-empty") += self.m2;
        offs
    }

    /// The 4-cycle `C(2·3^(m1-1)+m2, 1, 2, 2·3^(m1-1)+m2+1)`, 0-based.
    pub fn witness_cycle(&self) -> [usize; 4] {
        let b = (2 * 3u64.pow(self.m1 - 1) + self.m2) as usize;
        [b - 1, 0, 1, b]
    }
}

/// Faces `F_j = (j + o_1, …, j + o_L) mod N` for `j = 1..=N`, as 0-based ids.
fn translate_faces(n: u64, offsets: &[u64]) -> Vec<Vec<usize>> {
    (1..=n)
        .map(|j| offsets.iter().map(|o| ((j + o - 1) % n) as usize).collect())
        .collect()
}

pub fn odd_faces(p: &OddFamilyParams) -> Vec<Vec<usize>> {
    translate_faces(p.vertex_count(), &p.offsets())
}

pub fn even_faces(p: &EvenFamilyParams) -> Vec<Vec<usize>> {
    translate_faces(p.vertex_count(), &p.offsets())
}

pub fn gen_odd(p: &OddFamilyParams) -> Result<PolygonalMap, GenError> {
    PolygonalMap::from_faces(odd_faces(p)).map_err(|source| GenError::DegenerateParams {
        m1: p.m1,
        m2: p.m2,
        source,
    })
}

pub fn gen_even(p: &EvenFamilyParams) -> Result<PolygonalMap, GenError> {
    PolygonalMap::from_faces(even_faces(p)).map_err(|source| GenError::DegenerateParams {
        m1: p.m1,
        m2: p.m2,
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// 12-vertex `[3^7]` triangulation of the double torus.
    N1,
    /// 20-vertex `[4^3,5^1]` map on the non-orientable surface with χ = −1.
    K3,
}

impl Builtin {
    pub const ALL: [Builtin; 2] = [Builtin::N1, Builtin::K3];

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::N1 => "n1",
            Builtin::K3 => "k3",
        }
    }

    /// The face list, 1-based.
    pub fn faces(&self) -> &'static [&'static [usize]] {
        match self {
            Builtin::N1 => N1_FACES,
            Builtin::K3 => K3_FACES,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "n1" => Ok(Builtin::N1),
            "k3" => Ok(Builtin::K3),
            _ => Err(GenError::UnknownName(s.to_string())),
        }
    }
}

pub fn builtin(which: Builtin) -> PolygonalMap {
    let faces: Vec<Vec<usize>> = which.faces().iter().map(|f| f.to_vec()).collect();
    PolygonalMap::from_one_based(&faces).expect("built-in maps are valid")
}

pub fn builtin_by_name(name: &str) -> Result<PolygonalMap, GenError> {
    Ok(builtin(name.parse()?))
}

const N1_FACES: &[&[usize]] = &[
    &[1, 2, 3],
    &[1, 2, 4],
    &[1, 3, 5],
    &[1, 4, 6],
    &[1, 5, 7],
    &[1, 6, 8],
    &[1, 7, 8],
    &[2, 3, 6],
    &[2, 4, 7],
    &[2, 6, 9],
    &[2, 7, 10],
    &[2, 9, 10],
    &[3, 5, 9],
    &[3, 6, 11],
    &[3, 9, 12],
    &[3, 11, 12],
    &[4, 6, 9],
    &[4, 7, 8],
    &[4, 8, 12],
    &[4, 9, 12],
    &[5, 7, 11],
    &[5, 9, 10],
    &[5, 10, 12],
    &[5, 11, 12],
    &[6, 8, 11],
    &[7, 10, 11],
    &[8, 10, 11],
    &[8, 10, 12],
];

// The second face is [3, 4, 19, 17, 16]. With 18 in place of 17 the list does
// not close up: vertex 18 would lie on five faces and edge 16-18 on three.
const K3_FACES: &[&[usize]] = &[
    &[1, 2, 10, 9, 8],
    &[3, 4, 19, 17, 16],
    &[5, 11, 13, 15, 14],
    &[6, 7, 20, 18, 12],
    &[1, 2, 3, 4],
    &[1, 4, 5, 6],
    &[1, 6, 7, 8],
    &[2, 3, 12, 11],
    &[2, 10, 13, 11],
    &[3, 12, 18, 16],
    &[4, 5, 14, 19],
    &[5, 6, 12, 11],
    &[7, 8, 14, 19],
    &[7, 19, 17, 20],
    &[8, 9, 15, 14],
    &[9, 10, 16, 17],
    &[9, 15, 20, 17],
    &[10, 13, 18, 16],
    &[13, 15, 20, 18],
];
