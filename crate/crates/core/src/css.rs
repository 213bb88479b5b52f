//! CSS codes from maps.
//!
//! Qubits sit on edges. `H_X` is the vertex-edge incidence matrix (one X-type
//! stabilizer per vertex) and `H_Z` the face-edge incidence matrix (one Z-type
//! stabilizer per face). Because every edge has two endpoints and borders two
//! faces, `H_X · H_Zᵀ = 0`, and the number of logical qubits is the dimension
//! of the first Z₂-homology, `k = n − rank H_X − rank H_Z = 2 − χ`.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::gf2::BitMatrix;
use crate::map::{MapType, PolygonalMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CssError {
    #[error("rank count gives k = {from_ranks} but 2 - chi = {from_euler}")]
    RankMismatch { from_ranks: i64, from_euler: i64 },
}

#[derive(Debug, Clone)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    edges: Vec<(usize, usize)>,
    euler: i64,
    rank_x: usize,
    rank_z: usize,
}

impl CssCode {
    /// Assembles a code from parts without checking the chain condition.
    /// [`verify_css`] reports what is wrong with such a code.
    pub fn from_parts(
        hx: BitMatrix,
        hz: BitMatrix,
        edges: Vec<(usize, usize)>,
        euler: i64,
    ) -> Self {
        let rank_x = hx.rank();
        let rank_z = hz.rank();
        Self {
            hx,
            hz,
            edges,
            euler,
            rank_x,
            rank_z,
        }
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// Edge list of the underlying map; column `j` is edge `edges()[j]`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank_x - self.rank_z
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    /// Replaces `H_X`, recomputing its rank. Used to inject faults.
    pub fn with_hx(mut self, hx: BitMatrix) -> Self {
        self.rank_x = hx.rank();
        self.hx = hx;
        self
    }
}

pub fn build_css(map: &PolygonalMap) -> Result<CssCode, CssError> {
    let n = map.num_edges();
    let mut hx = BitMatrix::zeros(map.num_vertices(), n);
    for (e, &(u, v)) in map.edges().iter().enumerate() {
        hx.set(u, e, true);
        hx.set(v, e, true);
    }
    let mut hz = BitMatrix::zeros(map.num_faces(), n);
    for f in 0..map.num_faces() {
        for e in map.face_edges(f) {
            hz.set(f, e, true);
        }
    }
    let code = CssCode::from_parts(hx, hz, map.edges().to_vec(), map.euler_characteristic());
    let from_ranks = code.n() as i64 - code.rank_x as i64 - code.rank_z as i64;
    let from_euler = 2 - code.euler;
    if from_ranks != from_euler {
        return Err(CssError::RankMismatch {
            from_ranks,
            from_euler,
        });
    }
    Ok(code)
}

/// Why a code failed [`verify_css`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CssViolation {
    /// `H_X · H_Zᵀ` is nonzero at (vertex row, face column).
    NonCommuting { row: usize, col: usize },
    /// `k` from ranks disagrees with `2 − χ`.
    DimensionMismatch { k: i64, expected: i64 },
}

impl fmt::Display for CssViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CssViolation::NonCommuting { row, col } => {
                write!(f, "H_X·H_Z^T is nonzero at row {row}, column {col}")
            }
            CssViolation::DimensionMismatch { k, expected } => {
                write!(f, "k = {k} from ranks, but 2 - chi = {expected}")
            }
        }
    }
}

/// Checks `H_X · H_Zᵀ = 0` and `k = 2 − χ`.
pub fn verify_css(code: &CssCode) -> Result<(), CssViolation> {
    let product = code
        .hx
        .mul(&code.hz.transpose())
        .expect("both matrices have n columns");
    if let Some((row, col)) = product.first_nonzero() {
        return Err(CssViolation::NonCommuting { row, col });
    }
    let k = code.n() as i64 - code.rank_x as i64 - code.rank_z as i64;
    if k != 2 - code.euler {
        return Err(CssViolation::DimensionMismatch {
            k,
            expected: 2 - code.euler,
        });
    }
    Ok(())
}

/// Edge supports of the vertex (X-type) and face (Z-type) stabilizers.
pub fn stabilizer_supports(code: &CssCode) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let supports = |m: &BitMatrix| {
        m.row_vecs()
            .iter()
            .map(|r| r.iter_ones().collect())
            .collect()
    };
    (supports(&code.hx), supports(&code.hz))
}

/// `[[n, k, d]]`, with `d` unknown when the distance was not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: u64,
    pub k: u64,
    pub d: Option<u64>,
}

impl CodeParams {
    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.k, self.n)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{},{},{}]]", self.n, self.k, d),
            None => write!(f, "[[{},{},?]]", self.n, self.k),
        }
    }
}

/// Which construction produced a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Builtin(String),
    OddFamily {
        m1: u32,
        m2: u64,
    },
    EvenFamily {
        m1: u32,
        m2: u64,
    },
    /// `cycle` is 1-based.
    Cover {
        base: Box<Provenance>,
        folds: usize,
        cycle: Vec<usize>,
    },
    File(String),
    /// Free-form label, e.g. read back from a `# src=` comment.
    Label(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Builtin(name) => write!(f, "builtin:{name}"),
            Provenance::OddFamily { m1, m2 } => write!(f, "odd({m1},{m2})"),
            Provenance::EvenFamily { m1, m2 } => write!(f, "even({m1},{m2})"),
            Provenance::Cover { base, folds, cycle } => {
                let c: Vec<String> = cycle.iter().map(usize::to_string).collect();
                write!(f, "cover({base};d={folds};cycle={})", c.join("-"))
            }
            Provenance::File(path) => write!(f, "file:{path}"),
            Provenance::Label(s) => f.write_str(s),
        }
    }
}

/// One row of a code table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub params: CodeParams,
    pub euler: i64,
    pub map_type: MapType,
    pub provenance: Provenance,
}

impl CodeReport {
    pub fn new(
        code: &CssCode,
        map: &PolygonalMap,
        d_min: Option<usize>,
        provenance: Provenance,
    ) -> Self {
        Self {
            params: CodeParams {
                n: code.n() as u64,
                k: code.k() as u64,
                d: d_min.map(|d| d as u64),
            },
            euler: code.euler(),
            map_type: map.vertex_type(),
            provenance,
        }
    }
}

/// `k / n` in lowest terms.
pub fn encoding_rate(report: &CodeReport) -> Ratio<u64> {
    report.params.rate()
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} chi={} type={} rate={} src={}",
            self.params,
            self.euler,
            self.map_type,
            encoding_rate(self),
            self.provenance
        )
    }
}

/// Parameter formulas for the constructed families.
pub mod formulas {
    use num_rational::Ratio;

    use super::CodeParams;

    /// `[[(2m1−1)·B, 2 + (2m1−5)·B, 4]]` with `B = 3^(m1−1) + 2m2 − 1`.
    pub fn odd_family(m1: u32, m2: u64) -> CodeParams {
        let b = 3u64.pow(m1 - 1) + 2 * m2 - 1;
        CodeParams {
            n: (2 * m1 as u64 - 1) * b,
            k: 2 + (2 * m1 as u64 - 5) * b,
            d: Some(4),
        }
    }

    /// `χ = (5 − 2m1)·B`.
    pub fn odd_family_euler(m1: u32, m2: u64) -> i64 {
        let b = (3u64.pow(m1 - 1) + 2 * m2 - 1) as i64;
        (5 - 2 * m1 as i64) * b
    }

    /// `[[m1·B, 2 + (m1−2)·B, 4]]` with `B = 3^m1 + 2m2 − 1`.
    pub fn even_family(m1: u32, m2: u64) -> CodeParams {
        let b = 3u64.pow(m1) + 2 * m2 - 1;
        CodeParams {
            n: m1 as u64 * b,
            k: 2 + (m1 as u64 - 2) * b,
            d: Some(4),
        }
    }

    /// `χ = (2 − m1)·B`.
    pub fn even_family_euler(m1: u32, m2: u64) -> i64 {
        let b = (3u64.pow(m1) + 2 * m2 - 1) as i64;
        (2 - m1 as i64) * b
    }

    /// `[[42d, 2(1+d), 3]]` for the d-fold covers of the `[3^7]` double torus.
    pub fn n1_cover(d: u64) -> CodeParams {
        CodeParams {
            n: 42 * d,
            k: 2 * (1 + d),
            d: Some(3),
        }
    }

    /// `[[40d, 2+d, 4]]` for the d-fold covers of the `[4^3,5^1]` map.
    pub fn k3_cover(d: u64) -> CodeParams {
        CodeParams {
            n: 40 * d,
            k: 2 + d,
            d: Some(4),
        }
    }

    /// Limit of `k/n` as `d → ∞`.
    pub fn n1_cover_rate_limit() -> Ratio<u64> {
        Ratio::new(1, 21)
    }

    pub fn k3_cover_rate_limit() -> Ratio<u64> {
        Ratio::new(1, 40)
    }
}
