//! Binary linear codes held as RREF generator matrices, with Reed-Muller
//! construction, puncturing, shortening, duality and hull computations.

use std::fmt;

use crate::boolfun::monomials_up_to;
use crate::error::{Error, Result};
use crate::f2linalg::{BitMatrix, BitVec};
use crate::gf2m::FieldGF2n;

/// Codes with more rows than this are refused by [`LinearCode::min_weight`].
pub const MAX_ENUMERATION_DIM: usize = 24;

/// Binary `[ℓ, k]` code; the generator is always in RREF without zero rows.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: BitMatrix,
}

/// Truth-table point index of each RM column: `[0, α^0, α^1, …]`.
///
/// For `n = 1` the field is GF(2) and the enumeration is `[0, 1]`.
pub fn column_points(n: usize) -> Result<Vec<usize>> {
    match n {
        0 => Err(Error::OutOfRange("n = 0".into())),
        1 => Ok(vec![0, 1]),
        _ => Ok(column_points_in(&FieldGF2n::new(n)?)),
    }
}

pub fn column_points_in(field: &FieldGF2n) -> Vec<usize> {
    field.enumerate_points().iter().map(|e| e.point_index()).collect()
}

/// Inverse of [`column_points`]: column of each truth-table point.
pub fn point_columns(points: &[usize]) -> Vec<usize> {
    let mut cols = vec![0; points.len()];
    for (j, &p) in points.iter().enumerate() {
        cols[p] = j;
    }
    cols
}

impl LinearCode {
    pub fn from_generator(gen: &BitMatrix) -> Self {
        Self { gen: gen.rref().0 }
    }

    pub fn zero(length: usize) -> Self {
        Self {
            gen: BitMatrix::zeros(0, length),
        }
    }

    pub fn full(length: usize) -> Self {
        Self {
            gen: BitMatrix::identity(length),
        }
    }

    /// `RM(d, n)` with columns in the default field enumeration.
    pub fn rm(d: usize, n: usize) -> Result<Self> {
        Self::rm_on_points(d, n, &column_points(n)?)
    }

    /// `RM(d, n)` with columns enumerated in a given field.
    pub fn rm_with_field(d: usize, field: &FieldGF2n) -> Result<Self> {
        Self::rm_on_points(d, field.degree(), &column_points_in(field))
    }

    /// `RM(e, n)` for any integer `e`: the zero code below 0, the full
    /// space from `n` on.
    pub fn rm_clamped(e: i64, n: usize, points: &[usize]) -> Result<Self> {
        if e < 0 {
            return Ok(Self::zero(points.len()));
        }
        Self::rm_on_points((e as usize).min(n), n, points)
    }

    /// Rows are the monomials of degree ≤ d evaluated at `points[j]`.
    pub fn rm_on_points(d: usize, n: usize, points: &[usize]) -> Result<Self> {
        if d > n {
            return Err(Error::OutOfRange(format!("RM order {d} exceeds n = {n}")));
        }
        if points.len() != 1 << n {
            return Err(Error::Dimension(format!("{} points for n = {n}", points.len())));
        }
        let monomials = monomials_up_to(n, d);
        let mut gen = BitMatrix::zeros(monomials.len(), points.len());
        for (r, &m) in monomials.iter().enumerate() {
            for (c, &p) in points.iter().enumerate() {
                if p & m == m {
                    gen.set(r, c, true);
                }
            }
        }
        Ok(Self::from_generator(&gen))
    }

    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn dual(&self) -> Self {
        Self::from_generator(&self.gen.kernel_basis())
    }

    fn check_coords(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mark = vec![false; self.length()];
        for &c in s {
            if c >= self.length() {
                return Err(Error::OutOfRange(format!(
                    "coordinate {c} for a code of length {}",
                    self.length()
                )));
            }
            mark[c] = true;
        }
        Ok(mark)
    }

    /// Deletes the coordinates in `s`.
    pub fn puncture(&self, s: &[usize]) -> Result<Self> {
        let mark = self.check_coords(s)?;
        let keep: Vec<usize> = (0..self.length()).filter(|&c| !mark[c]).collect();
        Ok(Self::from_generator(&self.gen.select_columns(&keep)))
    }

    /// Keeps only the coordinates in `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        self.check_coords(keep)?;
        Ok(Self::from_generator(&self.gen.select_columns(keep)))
    }

    /// Codewords vanishing on `s`, with `s` then deleted.
    pub fn shorten(&self, s: &[usize]) -> Result<Self> {
        let mark = self.check_coords(s)?;
        let on_s: Vec<usize> = (0..self.length()).filter(|&c| mark[c]).collect();
        let keep: Vec<usize> = (0..self.length()).filter(|&c| !mark[c]).collect();
        let combos = self.gen.select_columns(&on_s).transpose().kernel_basis();
        let words = combos.mul(&self.gen)?;
        Ok(Self::from_generator(&words.select_columns(&keep)))
    }

    /// `k − rank(G·Gᵀ)`.
    pub fn hull_dim(&self) -> usize {
        self.dim() - self.gen.gram().rank()
    }

    /// `dim(C ∩ C^⊥)` computed from the dual directly.
    pub fn hull_dim_direct(&self) -> usize {
        self.gen
            .row_space_meet_dim(self.dual().generator())
            .expect("same length")
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dim() == 0
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gen.gram().is_zero()
    }

    pub fn is_even_like(&self) -> bool {
        (0..self.dim()).all(|r| self.gen.row(r).count_ones() % 2 == 0)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        if v.len() != self.length() {
            return false;
        }
        let pivots: Vec<usize> = (0..self.dim())
            .map(|r| self.gen.row(r).first_one().expect("no zero rows"))
            .collect();
        self.gen.reduce_against_rref(&pivots, v).is_zero()
    }

    /// Minimum nonzero weight; `None` for the zero code.
    ///
    /// Enumerates the code itself when `k ≤ 24`, otherwise the dual (if it is
    /// small enough) and recovers the weights through the MacWilliams identity.
    pub fn min_weight(&self) -> Result<Option<usize>> {
        let k = self.dim();
        if k <= MAX_ENUMERATION_DIM {
            let counts = weight_counts(&self.gen);
            return Ok((1..counts.len()).find(|&w| counts[w] > 0));
        }
        let r = self.length() - k;
        if r > MAX_ENUMERATION_DIM || self.length() > 96 {
            return Err(Error::SearchSpace(format!(
                "dimension {k} and codimension {r} both exceed the enumeration limit {MAX_ENUMERATION_DIM}"
            )));
        }
        let dual = weight_counts(self.dual().generator());
        let len = self.length();
        let scale = 1i128 << r;
        for j in 1..=len {
            let total: i128 = (0..=len).map(|i| dual[i] as i128 * krawtchouk(len, j, i)).sum();
            debug_assert_eq!(total % scale, 0);
            if total != 0 {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Header line plus the matrix text format.
    pub fn to_text(&self) -> String {
        format!(
            "# code length={} dim={} lcd={} hull={}\n{}",
            self.length(),
            self.dim(),
            self.is_lcd(),
            self.hull_dim(),
            self.gen.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Ok(Self::from_generator(&BitMatrix::from_text(text)?))
    }
}

/// Number of codewords of each weight, by Gray-code enumeration of the rows.
fn weight_counts(gen: &BitMatrix) -> Vec<u64> {
    let rows = gen.row_vecs();
    let mut counts = vec![0u64; gen.cols() + 1];
    let mut word = BitVec::zeros(gen.cols());
    counts[0] = 1;
    for i in 1u64..1u64 << rows.len() {
        word.xor_assign(&rows[i.trailing_zeros() as usize]);
        counts[word.count_ones()] += 1;
    }
    counts
}

/// `K_j(i) = Σ_s (−1)^s C(i, s) C(len − i, j − s)`.
fn krawtchouk(len: usize, j: usize, i: usize) -> i128 {
    let c = |a: usize, b: usize| crate::boolfun::binomial(a, b) as i128;
    (0..=j.min(i))
        .filter(|&s| j - s <= len - i)
        .map(|s| if s % 2 == 0 { 1 } else { -1 } * c(i, s) * c(len - i, j - s))
        .sum()
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] {:?}", self.length(), self.dim(), self.gen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::rm_dimension;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_code<R: Rng>(rng: &mut R, k: usize, len: usize) -> LinearCode {
        let mut m = BitMatrix::zeros(k, len);
        for r in 0..k {
            for c in 0..len {
                m.set(r, c, rng.gen());
            }
        }
        LinearCode::from_generator(&m)
    }

    #[test]
    fn rm_examples() {
        let r = LinearCode::rm(0, 4).unwrap();
        assert_eq!((r.length(), r.dim()), (16, 1));
        assert_eq!(r.generator().row(0), BitVec::ones(16));
        let r = LinearCode::rm(1, 3).unwrap();
        assert_eq!((r.length(), r.dim()), (8, 4));
        assert_eq!(LinearCode::rm(4, 4).unwrap(), LinearCode::full(16));
        assert!(LinearCode::rm(5, 4).is_err());
        assert_eq!(LinearCode::rm(1, 1).unwrap(), LinearCode::full(2));
    }

    #[test]
    fn column_maps() {
        let pts = column_points(3).unwrap();
        assert_eq!(&pts[..4], &[0, 1, 2, 4]);
        assert_eq!(pts[4], 0b011);
        let cols = point_columns(&pts);
        for (j, &p) in pts.iter().enumerate() {
            assert_eq!(cols[p], j);
        }
    }

    #[test]
    fn rm_dimensions_and_duals() {
        for n in 1..=8 {
            for d in 0..=n {
                let c = LinearCode::rm(d, n).unwrap();
                assert_eq!(c.dim(), rm_dimension(n, d));
                let expected = if d == n {
                    LinearCode::zero(1 << n)
                } else {
                    LinearCode::rm(n - d - 1, n).unwrap()
                };
                assert_eq!(c.dual(), expected, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(LinearCode::full(5).dual(), LinearCode::zero(5));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let c = random_code(&mut rng, 4, 9);
            let d = c.dual();
            assert_eq!(c.dim() + d.dim(), 9);
            assert!(c.generator().mul(&d.generator().transpose()).unwrap().is_zero());
            assert_eq!(d.dual(), c);
        }
    }

    #[test]
    fn puncture_shorten_examples() {
        let c = LinearCode::rm(1, 3).unwrap();
        assert_eq!(c.puncture(&[]).unwrap(), c);
        assert_eq!(LinearCode::full(6).shorten(&[1, 4]).unwrap(), LinearCode::full(4));
        assert!(c.puncture(&[8]).is_err());
        // shortening a repetition code kills it
        assert_eq!(LinearCode::rm(0, 3).unwrap().shorten(&[0]).unwrap().dim(), 0);
    }

    #[test]
    fn hull_examples() {
        assert!(LinearCode::full(4).is_lcd());
        let r = LinearCode::rm(1, 3).unwrap();
        assert_eq!(r.hull_dim(), 4);
        assert_eq!(r.hull_dim_direct(), 4);
        assert!(r.is_self_orthogonal() && !r.is_lcd());
    }

    #[test]
    fn even_like_examples() {
        assert!(LinearCode::rm(0, 3).unwrap().is_even_like());
        let c = LinearCode::from_generator(&BitMatrix::from_row_strs(&["1000", "0110"]).unwrap());
        assert!(!c.is_even_like());
    }

    #[test]
    fn min_weight_examples() {
        let rep = LinearCode::from_generator(&BitMatrix::from_row_strs(&["1111111"]).unwrap());
        assert_eq!(rep.min_weight().unwrap(), Some(7));
        assert_eq!(LinearCode::rm(1, 3).unwrap().min_weight().unwrap(), Some(4));
        for n in 1..=5 {
            for d in 0..=n {
                let w = LinearCode::rm(d, n).unwrap().min_weight().unwrap();
                assert_eq!(w, Some(1 << (n - d)));
            }
        }
        assert_eq!(LinearCode::zero(3).min_weight().unwrap(), None);
        assert_eq!(LinearCode::full(25).min_weight().unwrap(), Some(1));
        let mut big = BitMatrix::zeros(30, 60);
        for i in 0..30 {
            big.set(i, i, true);
            big.set(i, 59 - i, true);
        }
        assert!(LinearCode::from_generator(&big).min_weight().is_err());
    }

    #[test]
    fn contains_and_text() {
        let c = LinearCode::rm(1, 3).unwrap();
        assert!(c.contains(&BitVec::ones(8)));
        assert!(!c.contains(&BitVec::parse01("10000000").unwrap()));
        let text = c.to_text();
        assert!(text.starts_with("# code length=8 dim=4 lcd=false hull=4\n"));
        assert_eq!(LinearCode::from_text(&text).unwrap(), c);
    }

    #[test]
    fn macwilliams_path_matches_direct_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let c = random_code(&mut rng, 26, 30);
            let direct = weight_counts(c.generator());
            let expected = (1..direct.len()).find(|&w| direct[w] > 0);
            assert_eq!(c.min_weight().unwrap(), expected);
        }
    }

    proptest! {
        #[test]
        fn puncture_shorten_duality(seed in any::<u64>(), len in 2usize..=32, k in 0usize..=32, mask in any::<u32>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_code(&mut rng, k.min(len), len);
            let s: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
            prop_assert_eq!(c.puncture(&s).unwrap().dual(), c.dual().shorten(&s).unwrap());
            prop_assert_eq!(c.shorten(&s).unwrap().dual(), c.dual().puncture(&s).unwrap());
        }

        #[test]
        fn hull_by_gram_matches_intersection(seed in any::<u64>(), len in 1usize..=24, k in 0usize..=24) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_code(&mut rng, k.min(len), len);
            prop_assert_eq!(c.hull_dim(), c.hull_dim_direct());
            if c.is_lcd() && c.is_even_like() {
                prop_assert_eq!(c.dim() % 2, 0);
            }
        }
    }
}
