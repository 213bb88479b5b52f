use std::fmt;

/// Cyclic face-size pattern around a vertex, run-length encoded as
/// `(face_size, multiplicity)` pairs and canonicalized to the lexicographically
/// least sequence over all rotations and reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexType {
    runs: Vec<(usize, usize)>,
}

impl VertexType {
    /// Builds the type from the face sizes met going once around a vertex.
    pub fn from_face_sizes(sizes: &[usize]) -> Self {
        assert!(!sizes.is_empty(), "vertex with no faces");
        if sizes.iter().all(|&s| s == sizes[0]) {
            return Self {
                runs: vec![(sizes[0], sizes.len())],
            };
        }
        // start at a run boundary so no run wraps around the end
        let n = sizes.len();
        let start = (0..n)
            .find(|&i| sizes[i] != sizes[(i + n - 1) % n])
            .expect("at least two sizes");
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for k in 0..n {
            let s = sizes[(start + k) % n];
            match runs.last_mut() {
                Some((size, count)) if *size == s => *count += 1,
                _ => runs.push((s, 1)),
            }
        }
        Self::canonical(runs)
    }

    pub fn from_runs(runs: Vec<(usize, usize)>) -> Self {
        Self::canonical(runs)
    }

    fn canonical(runs: Vec<(usize, usize)>) -> Self {
        let n = runs.len();
        let mut best = runs.clone();
        for reversed in [false, true] {
            let seq: Vec<(usize, usize)> = if reversed {
                runs.iter().rev().copied().collect()
            } else {
                runs.clone()
            };
            for shift in 0..n {
                let candidate: Vec<(usize, usize)> = (0..n).map(|i| seq[(shift + i) % n]).collect();
                if candidate < best {
                    best = candidate;
                }
            }
        }
        Self { runs: best }
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// All faces at the vertex have one size.
    pub fn is_equivelar(&self) -> bool {
        self.runs.len() == 1
    }

    pub fn degree(&self) -> usize {
        self.runs.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (size, mult)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{size}^{mult}")?;
        }
        f.write_str("]")
    }
}

/// Outcome of asking a map for its vertex type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapType {
    /// Every vertex has this type.
    SemiEquivelar(VertexType),
    /// Two vertices (0-based ids) whose types differ.
    Mixed {
        first: (usize, VertexType),
        second: (usize, VertexType),
    },
}

impl MapType {
    pub fn semi_equivelar(&self) -> Option<&VertexType> {
        match self {
            MapType::SemiEquivelar(t) => Some(t),
            MapType::Mixed { .. } => None,
        }
    }
}

impl fmt::Display for MapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapType::SemiEquivelar(t) => t.fmt(f),
            MapType::Mixed { .. } => f.write_str("mixed"),
        }
    }
}
