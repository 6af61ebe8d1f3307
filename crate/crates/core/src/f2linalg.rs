//! Bit-packed linear algebra over F2.
//!
//! Vectors and matrices are stored as 64-bit words, least significant bit
//! first. Matrices are row-major; every row starts on a word boundary and the
//! padding bits past `cols` are kept at zero so that word-level comparisons and
//! popcounts are exact.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A dense vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    /// Builds a vector from raw words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `'0'`/`'1'` characters; character `i` is bit `i`.
    pub fn parse01(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string {s:?}"))),
            }
        }
        Ok(v)
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
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
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "BitVec length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "BitVec length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn not_assign(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.clear_padding();
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "BitVec length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Copies the selected bits, in the given order, into a new vector.
    pub fn select(&self, indices: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(indices.len());
        for (j, &i) in indices.iter().enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    pub fn to_string01(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_string01())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}

/// A dense row-major matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors that all have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(0, cols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    /// Parses rows written as `'0'`/`'1'` strings.
    pub fn from_row_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows.iter().map(|s| BitVec::parse01(s)).collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(cols, &parsed)
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
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn push_row(&mut self, row: &BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row of length {} pushed into matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row.words());
        self.rows += 1;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {}-column and {}-column matrices",
                self.cols, other.cols
            )));
        }
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        Ok(m)
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, j, true);
                }
            }
        }
        m
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(0, self.cols);
        for &r in rows {
            m.data.extend_from_slice(self.row_words(r));
            m.rows += 1;
        }
        m
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in BitVec::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                let src = other.row_words(k).to_vec();
                for (d, s) in out.row_words_mut(r).iter_mut().zip(&src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// `x · M` for a row vector `x` of length `rows`.
    pub fn left_mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = BitVec::zeros(self.cols);
        for r in x.iter_ones() {
            for (d, s) in out.words_mut().iter_mut().zip(self.row_words(r)) {
                *d ^= s;
            }
        }
        Ok(out)
    }

    /// `M · xᵀ` for a vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Gaussian elimination in place, restricted to pivots in columns
    /// `< pivot_limit`. Returns the pivot columns; rows `0..pivots.len()` hold
    /// the reduced rows and the remaining rows are zero on the pivot range.
    fn eliminate(&mut self, pivot_limit: usize, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..pivot_limit {
            if rank == self.rows {
                break;
            }
            let wi = c / WORD;
            let bit = 1u64 << (c % WORD);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.stride + wi] & bit != 0) else {
                continue;
            };
            self.swap_rows(rank, p);
            let start = if reduced { 0 } else { rank + 1 };
            for r in start..self.rows {
                if r != rank && self.data[r * self.stride + wi] & bit != 0 {
                    self.xor_rows(r, rank);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped, and its pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols, true);
        m.rows = pivots.len();
        m.data.truncate(m.rows * m.stride);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(m.cols, false).len()
    }

    /// Basis of `{x : M·xᵀ = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BitMatrix::zeros(0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = BitVec::zeros(self.cols);
            x.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, free) {
                    x.set(p, true);
                }
            }
            basis.push_row(&x).expect("kernel vector has matrix width");
        }
        basis
    }

    /// `dim(rowspace(A) ∩ rowspace(B))`.
    pub fn row_space_meet_dim(&self, other: &BitMatrix) -> Result<usize> {
        let stacked = self.stack(other)?;
        Ok(self.rank() + other.rank() - stacked.rank())
    }

    /// The Gram matrix `G·Gᵀ`.
    pub fn gram(&self) -> BitMatrix {
        let mut g = BitMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let parity = self
                    .row_words(i)
                    .iter()
                    .zip(self.row_words(j))
                    .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
                if parity & 1 == 1 {
                    g.set(i, j, true);
                    g.set(j, i, true);
                }
            }
        }
        g
    }

    /// One `x` with `x · M = y`, or `None` when `y` is not in the row space.
    pub fn solve_preimage(&self, y: &BitVec) -> Result<Option<BitVec>> {
        if y.len() != self.cols {
            return Err(Error::Dimension(format!(
                "target of length {} for a matrix with {} columns",
                y.len(),
                self.cols
            )));
        }
        // [M | I] tracks which original rows make up each reduced row.
        let width = self.cols + self.rows;
        let mut aug = BitMatrix::zeros(self.rows, width);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols + r, true);
        }
        let pivots = aug.eliminate(self.cols, true);
        let mut residual = y.clone();
        let mut combo = BitVec::zeros(self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            if residual.get(p) {
                for c in 0..width {
                    if aug.get(i, c) {
                        if c < self.cols {
                            residual.flip(c);
                        } else {
                            combo.flip(c - self.cols);
                        }
                    }
                }
            }
        }
        Ok(residual.is_zero().then_some(combo))
    }

    /// Reduces `v` against a matrix already in RREF with the given pivots.
    pub fn reduce_against_rref(&self, pivots: &[usize], v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (i, &p) in pivots.iter().enumerate() {
            if v.get(p) {
                for (d, s) in v.words_mut().iter_mut().zip(self.row_words(i)) {
                    *d ^= s;
                }
            }
        }
        v
    }

    /// Text form: a `rows cols` line followed by one `0`/`1` line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            s.push_str(&self.row(r).to_string01());
            s.push('\n');
        }
        s
    }

    /// Parses [`BitMatrix::to_text`] output. Blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing \"rows cols\" header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad matrix header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("matrix header {header:?} must be \"rows cols\"")));
        };
        let mut m = BitMatrix::zeros(0, cols);
        for line in lines {
            let v = BitVec::parse01(line)?;
            if v.len() != cols {
                return Err(Error::Parse(format!("row {line:?} has {} bits, expected {cols}", v.len())));
            }
            m.push_row(&v)?;
        }
        if m.rows != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {}", m.rows)));
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strs(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = BitMatrix::identity(2).rref();
        assert_eq!(r, BitMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = m(&["11", "11"]).rref();
        assert_eq!(r, m(&["11"]));
        assert_eq!(p, vec![0]);

        let (r, p) = m(&["011", "110", "101"]).rref();
        assert_eq!(r, m(&["101", "011"]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(m(&["011", "110", "101"]).rank(), 2);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(3).kernel_basis().rows(), 0);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().rows(), 3);
        assert_eq!(m(&["11"]).kernel_basis(), m(&["11"]));
        assert_eq!(BitMatrix::zeros(0, 4).kernel_basis().rows(), 4);
    }

    #[test]
    fn meet_examples() {
        let i2 = BitMatrix::identity(2);
        assert_eq!(i2.row_space_meet_dim(&i2).unwrap(), 2);
        assert_eq!(m(&["10"]).row_space_meet_dim(&m(&["01"])).unwrap(), 0);
        assert_eq!(m(&["110", "011"]).row_space_meet_dim(&m(&["101"])).unwrap(), 1);
        assert!(matches!(
            m(&["10"]).row_space_meet_dim(&m(&["101"])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(BitMatrix::identity(3).gram(), BitMatrix::identity(3));
        assert_eq!(m(&["111"]).gram(), m(&["1"]));
        assert_eq!(m(&["1100", "0110"]).gram(), m(&["01", "10"]));
    }

    #[test]
    fn mul_and_preimage_examples() {
        let a = m(&["101", "011", "111"]);
        assert_eq!(a.mul(&BitMatrix::identity(3)).unwrap(), a);
        assert!(a.mul(&BitMatrix::identity(2)).is_err());

        let y = BitVec::parse01("1011").unwrap();
        assert_eq!(BitMatrix::identity(4).solve_preimage(&y).unwrap(), Some(y.clone()));

        let x = m(&["110", "011"]).solve_preimage(&BitVec::parse01("101").unwrap()).unwrap();
        assert_eq!(x, Some(BitVec::parse01("11").unwrap()));
        let none = m(&["110", "011"]).solve_preimage(&BitVec::parse01("100").unwrap()).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let a = m(&["1010", "0111"]);
        assert_eq!(BitMatrix::from_text(&a.to_text()).unwrap(), a);
        assert!(BitMatrix::from_text("2 3\n101\n").is_err());
        assert!(BitMatrix::from_text("1 3\n1x1\n").is_err());
        assert_eq!(BitMatrix::from_text("0 7\n").unwrap(), BitMatrix::zeros(0, 7));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let cols = 150;
        let mut a = BitMatrix::zeros(3, cols);
        for c in [0, 63, 64, 127, 128, 149] {
            a.set(0, c, true);
        }
        a.set(1, 64, true);
        a.set(2, 149, true);
        let (r, p) = a.rref();
        assert_eq!(p, vec![0, 64, 149]);
        assert_eq!(r.rows(), 3);
        assert_eq!(a.kernel_basis().rows(), cols - 3);
        let t = a.transpose().transpose();
        assert_eq!(t, a);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = BitMatrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    m.set(i / c, i % c, b);
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_preserves_rank(a in arb_matrix(12, 90)) {
            let (r, p) = a.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(&rr, &r);
            prop_assert_eq!(&pp, &p);
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(a.rank(), p.len());
            prop_assert_eq!(a.row_space_meet_dim(&r).unwrap(), p.len());
        }

        #[test]
        fn kernel_is_annihilated(a in arb_matrix(12, 90)) {
            let k = a.kernel_basis();
            prop_assert_eq!(k.rank() + a.rank(), a.cols());
            for row in k.row_vecs() {
                prop_assert!(a.mul_vec(&row).unwrap().is_zero());
            }
        }

        #[test]
        fn stacked_rank_bound(a in arb_matrix(8, 20), extra in arb_matrix(8, 20)) {
            let b = extra.select_columns(&(0..a.cols()).map(|c| c % extra.cols()).collect::<Vec<_>>());
            let stacked = a.stack(&b).unwrap().rank();
            prop_assert!(stacked <= a.rank() + b.rank());
            let meet = a.row_space_meet_dim(&b).unwrap();
            prop_assert_eq!(stacked == a.rank() + b.rank(), meet == 0);
        }

        #[test]
        fn gram_is_symmetric(a in arb_matrix(10, 70)) {
            prop_assert!(a.gram().is_symmetric());
        }

        #[test]
        fn preimage_solves(a in arb_matrix(10, 40), seed in any::<u64>()) {
            let mut x = BitVec::zeros(a.rows());
            for i in 0..a.rows() {
                x.set(i, (seed >> (i % 64)) & 1 == 1);
            }
            let y = a.left_mul_vec(&x).unwrap();
            let sol = a.solve_preimage(&y).unwrap().expect("y lies in the row space");
            prop_assert_eq!(a.left_mul_vec(&sol).unwrap(), y);
        }
    }
}
