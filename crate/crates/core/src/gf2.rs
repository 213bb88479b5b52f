//! Dense linear algebra over GF(2).
//!
//! Rows are bit-packed into `u64` words so that row operations are word-wide
//! XORs. Sizes in this crate stay in the hundreds of columns, where a dense
//! representation is both simpler and faster than a sparse one.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Vector with ones exactly at `indices`. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Parity of the overlap with `other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense binary matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from 0/1 entries; any nonzero entry is a one.
    pub fn from_dense<R: AsRef<[u8]>>(entries: &[R]) -> Result<Self, Gf2Error> {
        let cols = entries.first().map_or(0, |r| r.as_ref().len());
        let rows = entries
            .iter()
            .map(|r| {
                let r = r.as_ref();
                BitVec::from_indices(
                    r.len(),
                    r.iter()
                        .enumerate()
                        .filter(|(_, x)| **x != 0)
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// GF(2) product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.iter_ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVec::from_indices(
            self.rows,
            (0..self.rows).filter(|&r| self.data[r].dot(v)),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// First nonzero cell in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter_ones().next().map(|c| (r, c)))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVec::count_ones).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.data.iter().map(BitVec::count_ones).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.data {
            for c in row.iter_ones() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.len() {
                break;
            }
            let Some(p) = (rank..m.len()).find(|&r| m[r].get(c)) else {
                continue;
            };
            m.swap(rank, p);
            let (head, tail) = m.split_at_mut(rank);
            let (pivot_row, below) = tail.split_first_mut().expect("rank < rows");
            for row in head.iter_mut().chain(below.iter_mut()) {
                if row.get(c) {
                    row.xor_assign(pivot_row);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref {
            echelon: BitMatrix {
                rows: self.rows,
                cols: self.cols,
                data: m,
            },
            pivots,
        }
    }

    /// A basis of `{ v : self · v = 0 }`, of size `cols - rank`.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (i, &p) in rref.pivots.iter().enumerate() {
                    if rref.echelon.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a [`BitMatrix`].
///
/// The first `rank` rows of `echelon` are the nonzero echelon rows; row `i`
/// has its leading one in column `pivots[i]`, and that column is zero in every
/// other row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    echelon: BitMatrix,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn echelon(&self) -> &BitMatrix {
        &self.echelon
    }

    pub fn cols(&self) -> usize {
        self.echelon.cols
    }

    /// Reduces `v` against the echelon rows in place; the result is zero iff
    /// `v` was in the row space.
    pub fn reduce(&self, v: &mut BitVec) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&self.echelon.data[i]);
            }
        }
    }

    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        if v.len() != self.cols() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols(),
                found: v.len(),
            });
        }
        let mut w = v.clone();
        self.reduce(&mut w);
        Ok(w.is_zero())
    }
}

/// Renders the sparse `.spm` text form: a `rows cols` header, then one
/// `i j` line per nonzero entry, 0-based and sorted by `(i, j)`.
pub fn to_spm(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows, m.cols);
    for (r, row) in m.data.iter().enumerate() {
        for c in row.iter_ones() {
            out.push_str(&format!("{r} {c}\n"));
        }
    }
    out
}

pub fn parse_spm(text: &str) -> Result<BitMatrix, Gf2Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let parse_pair = |line: usize, s: &str| -> Result<(usize, usize), Gf2Error> {
        let mut it = s.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Gf2Error::Parse {
                line,
                message: format!("expected two non-negative integers, got {s:?}"),
            }),
        }
    };
    let (line, header) = lines.next().ok_or(Gf2Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (rows, cols) = parse_pair(line, header)?;
    let mut m = BitMatrix::zeros(rows, cols);
    for (line, l) in lines {
        let (r, c) = parse_pair(line, l)?;
        if r >= rows || c >= cols {
            return Err(Gf2Error::Parse {
                line,
                message: format!("entry ({r}, {c}) outside {rows}x{cols}"),
            });
        }
        m.set(r, c, true);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rref() {
        let r = BitMatrix::identity(3).rref();
        assert_eq!(r.rank(), 3);
        assert_eq!(r.pivots(), &[0, 1, 2]);
        assert!(BitMatrix::identity(3).nullspace_basis().is_empty());
    }

    #[test]
    fn identity_is_left_unit() {
        let m = BitMatrix::from_dense(&[[1u8, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 1]]).unwrap();
        assert_eq!(BitMatrix::identity(3).mul(&m).unwrap(), m);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = BitMatrix::zeros(2, 3);
        let b = BitMatrix::zeros(2, 3);
        assert_eq!(
            a.mul(&b),
            Err(Gf2Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn rowspace_rejects_wrong_length() {
        let r = BitMatrix::identity(4).rref();
        assert!(r.in_rowspace(&BitVec::zeros(3)).is_err());
        assert!(r.in_rowspace(&BitVec::zeros(4)).unwrap());
    }

    #[test]
    fn rowspace_membership() {
        let m = BitMatrix::from_dense(&[[1u8, 1, 0, 0], [0, 1, 1, 0]]).unwrap();
        let r = m.rref();
        assert!(r.in_rowspace(&BitVec::from_indices(4, [0, 2])).unwrap());
        assert!(!r.in_rowspace(&BitVec::from_indices(4, [0])).unwrap());
        assert!(!r.in_rowspace(&BitVec::from_indices(4, [3])).unwrap());
    }

    #[test]
    fn cycle_graph_incidence_rank() {
        // vertex-edge incidence of a 5-cycle: rank V-1, one-dimensional kernel
        let mut m = BitMatrix::zeros(5, 5);
        for e in 0..5 {
            m.set(e, e, true);
            m.set((e + 1) % 5, e, true);
        }
        assert_eq!(m.rank(), 4);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].count_ones(), 5);
    }

    #[test]
    fn spm_round_trip_and_format() {
        let m = BitMatrix::from_dense(&[[0u8, 1, 0], [1, 0, 1]]).unwrap();
        let s = to_spm(&m);
        assert_eq!(s, "2 3\n0 1\n1 0\n1 2\n");
        assert_eq!(parse_spm(&s).unwrap(), m);
    }

    #[test]
    fn spm_rejects_out_of_range() {
        assert!(matches!(
            parse_spm("2 2\n2 0\n"),
            Err(Gf2Error::Parse { line: 2, .. })
        ));
        assert!(parse_spm("").is_err());
        assert!(parse_spm("2 x\n").is_err());
    }

    #[test]
    fn iter_ones_crosses_word_boundary() {
        let v = BitVec::from_indices(130, [0, 63, 64, 127, 129]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(v.count_ones(), 5);
    }

    fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVec::from_bools(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in matrix(12, 80)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn nullspace_is_a_full_rank_kernel(m in matrix(10, 70)) {
            let basis = m.nullspace_basis();
            prop_assert_eq!(basis.len(), m.cols() - m.rank());
            for v in &basis {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            if !basis.is_empty() {
                let b = BitMatrix::from_rows(m.cols(), basis.clone()).unwrap();
                prop_assert_eq!(b.rank(), basis.len());
            }
        }

        #[test]
        fn rows_lie_in_their_rowspace(m in matrix(10, 70)) {
            let r = m.rref();
            for row in m.row_vecs() {
                prop_assert!(r.in_rowspace(row).unwrap());
            }
        }

        #[test]
        fn mul_is_associative(
            (a, b, c) in (1usize..7, 1usize..7, 1usize..7, 1usize..7).prop_flat_map(|(p, q, r, s)| {
                (matrix_exact(p, q), matrix_exact(q, r), matrix_exact(r, s))
            })
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn spm_round_trips(m in matrix(8, 40)) {
            prop_assert_eq!(parse_spm(&to_spm(&m)).unwrap(), m);
        }
    }

    fn matrix_exact(r: usize, c: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
            move |rows| {
                BitMatrix::from_rows(c, rows.iter().map(|b| BitVec::from_bools(b)).collect())
                    .unwrap()
            },
        )
    }
}
