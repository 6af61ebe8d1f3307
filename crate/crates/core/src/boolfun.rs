//! Boolean functions as truth tables, their algebraic normal forms, and the
//! secondary constructions used by the immunity analysis.
//!
//! Point `i` of a truth table encodes `(x_1, …, x_n)` with `x_j` equal to bit
//! `j-1` of `i`. ANF coefficient `m` belongs to the monomial `∏ x_j` over the
//! set bits of `m`. With this convention the Möbius transform is the usual
//! radix-2 butterfly and `x_n` selects the upper half of the table.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::f2linalg::{BitMatrix, BitVec};

pub const MAX_VARS: usize = 16;

/// Positions inside a 64-bit word whose index has bit `i` set.
const HIGH_HALF: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// `DEGREE_MASK[d]` has bit `p` set iff `popcount(p) == d`, for `p < 64`.
pub(crate) const DEGREE_MASK: [u64; 7] = {
    let mut masks = [0u64; 7];
    let mut p = 0;
    while p < 64 {
        masks[(p as u64).count_ones() as usize] |= 1u64 << p;
        p += 1;
    }
    masks
};

/// In-place binary Möbius transform of a `2^n`-bit table. It is an involution.
pub(crate) fn mobius_words(words: &mut [u64], n: usize) {
    for (i, &mask) in HIGH_HALF.iter().enumerate().take(n.min(6)) {
        let s = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w << s) & mask;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= l;
            }
        }
    }
}

/// Möbius transform of a single-word table (`n ≤ 6`).
#[inline]
pub fn mobius_u64(mut w: u64, n: usize) -> u64 {
    for (i, &mask) in HIGH_HALF.iter().enumerate().take(n) {
        w ^= (w << (1u32 << i)) & mask;
    }
    w
}

/// Degree of a single-word ANF; `0` for the zero polynomial.
#[inline]
pub fn anf_degree_u64(anf: u64) -> usize {
    (0..7).rev().find(|&d| anf & DEGREE_MASK[d] != 0).unwrap_or(0)
}

/// Maximum popcount of a set position, `None` when no bit is set.
pub(crate) fn max_weight_position(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0)
        .map(|(wi, &w)| wi.count_ones() as usize + anf_degree_u64(w))
        .max()
}

/// Monomial masks of degree at most `d`, sorted by degree then mask.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<usize> {
    let mut ms: Vec<usize> = (0..1usize << n).filter(|m| m.count_ones() as usize <= d).collect();
    ms.sort_by_key(|&m| (m.count_ones(), m));
    ms
}

/// `Σ_{i ≤ d} C(n, i)`.
pub fn rm_dimension(n: usize, d: usize) -> usize {
    (0..=d.min(n)).map(|i| binomial(n, i)).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_vars(n: usize) -> Result<()> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("variable count {n} (expected 1..={MAX_VARS})")))
    }
}

/// An `n`-variable Boolean function held as its truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    tt: BitVec,
}

/// Algebraic normal form coefficients, indexed by monomial mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    n: usize,
    coeffs: BitVec,
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Self {
            n,
            tt: BitVec::zeros(1 << n),
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Self {
            n,
            tt: BitVec::ones(1 << n),
        })
    }

    pub fn from_truth_table(n: usize, tt: BitVec) -> Result<Self> {
        check_vars(n)?;
        if tt.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "truth table of {} bits for {n} variables",
                tt.len()
            )));
        }
        Ok(Self { n, tt })
    }

    /// Single-word constructor for `n ≤ 6`; bits past `2^n` are ignored.
    pub fn from_u64(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::OutOfRange(format!("from_u64 needs n <= 6, got {n}")));
        }
        check_vars(n)?;
        Ok(Self {
            n,
            tt: BitVec::from_words(1 << n, vec![bits]),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_vars(n)?;
        let mut tt = BitVec::zeros(1 << n);
        for x in 0..1usize << n {
            if f(x) {
                tt.set(x, true);
            }
        }
        Ok(Self { n, tt })
    }

    pub fn from_support(n: usize, points: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_vars(n)?;
        let mut tt = BitVec::zeros(1 << n);
        for p in points {
            if p >= 1 << n {
                return Err(Error::OutOfRange(format!("point {p} for {n} variables")));
            }
            tt.set(p, true);
        }
        Ok(Self { n, tt })
    }

    /// The coordinate function `x_j`, `1 ≤ j ≤ n`.
    pub fn variable(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::OutOfRange(format!("variable x{j} for {n} variables")));
        }
        Self::from_fn(n, |x| x >> (j - 1) & 1 == 1)
    }

    /// Indicator of the single point `a`.
    pub fn delta(a: usize, n: usize) -> Result<Self> {
        Self::from_support(n, [a])
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_vars(n)?;
        let words = (0..(1usize << n).div_ceil(64)).map(|_| rng.gen()).collect();
        Ok(Self {
            n,
            tt: BitVec::from_words(1 << n, words),
        })
    }

    /// Uniformly random function of weight exactly `w`.
    pub fn random_of_weight<R: Rng + ?Sized>(n: usize, w: usize, rng: &mut R) -> Result<Self> {
        check_vars(n)?;
        if w > 1 << n {
            return Err(Error::OutOfRange(format!("weight {w} on {n} variables")));
        }
        Self::from_support(n, rand::seq::index::sample(rng, 1 << n, w).into_iter())
    }

    /// Uniformly random function of degree at most `d`.
    pub fn random_of_degree_at_most<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        check_vars(n)?;
        let mut coeffs = BitVec::zeros(1 << n);
        for m in monomials_up_to(n, d) {
            if rng.gen::<bool>() {
                coeffs.set(m, true);
            }
        }
        Ok(Anf { n, coeffs }.to_function())
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn truth_table(&self) -> &BitVec {
        &self.tt
    }

    /// Low word of the truth table; the whole table when `n ≤ 6`.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.tt.words()[0]
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.tt.get(x)
    }

    pub fn anf(&self) -> Anf {
        let mut coeffs = self.tt.clone();
        mobius_words(coeffs.words_mut(), self.n);
        Anf { n: self.n, coeffs }
    }

    /// Algebraic degree; `0` for the zero function.
    pub fn degree(&self) -> usize {
        self.anf().degree()
    }

    pub fn weight(&self) -> usize {
        self.tt.count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.tt.iter_ones().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.tt.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.weight() == 1 << self.n
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::VariableCount(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut tt = self.tt.clone();
        tt.xor_assign(&other.tt);
        Ok(Self { n: self.n, tt })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut tt = self.tt.clone();
        tt.and_assign(&other.tt);
        Ok(Self { n: self.n, tt })
    }

    /// `1 + f`.
    pub fn complement(&self) -> Self {
        let mut tt = self.tt.clone();
        tt.not_assign();
        Self { n: self.n, tt }
    }

    /// The function whose ANF holds exactly the monomials missing from `f`,
    /// i.e. `f + δ_0`.
    pub fn algebraic_complement(&self) -> Self {
        let mut tt = self.tt.clone();
        tt.flip(0);
        Self { n: self.n, tt }
    }

    /// `f ∘ M`, i.e. `x ↦ f(A·x + b)`.
    pub fn apply_affine(&self, map: &AffineMap) -> Result<Self> {
        if map.n != self.n {
            return Err(Error::VariableCount(self.n, map.n));
        }
        let mut tt = BitVec::zeros(1 << self.n);
        for x in 0..1usize << self.n {
            if self.tt.get(map.apply(x)) {
                tt.set(x, true);
            }
        }
        Ok(Self { n: self.n, tt })
    }

    /// `(x_n + 1)·f0 + x_n·f1` on `n` variables, with `f0, f1` on `n - 1`.
    pub fn concatenate(f0: &Self, f1: &Self) -> Result<Self> {
        f0.same_vars(f1)?;
        let n = f0.n + 1;
        check_vars(n)?;
        let half = 1usize << f0.n;
        let mut tt = BitVec::zeros(1 << n);
        for x in f0.tt.iter_ones() {
            tt.set(x, true);
        }
        for x in f1.tt.iter_ones() {
            tt.set(half + x, true);
        }
        Ok(Self { n, tt })
    }

    /// `x_n + f(x_1, …, x_{n-1})`.
    pub fn bar(&self) -> Result<Self> {
        Self::concatenate(self, &self.complement())
    }

    /// The same function viewed on `m ≥ n` variables (independent of the new ones).
    pub fn lift(&self, m: usize) -> Result<Self> {
        check_vars(m)?;
        if m < self.n {
            return Err(Error::OutOfRange(format!("cannot lift {} variables to {m}", self.n)));
        }
        let mask = (1usize << self.n) - 1;
        Self::from_fn(m, |x| self.tt.get(x & mask))
    }

    /// Restriction to `x_n = bit`, as an `(n-1)`-variable function.
    pub fn half(&self, bit: bool) -> Result<Self> {
        let n = self.n - 1;
        check_vars(n)?;
        let off = if bit { 1usize << n } else { 0 };
        Self::from_fn(n, |x| self.tt.get(off + x))
    }

    /// `n:HEX` with point 0 as the least significant bit.
    pub fn to_hex(&self) -> String {
        let digits = (1usize << self.n).div_ceil(4);
        let mut s = format!("{}:", self.n);
        for k in (0..digits).rev() {
            let mut v = 0u32;
            for b in 0..4 {
                let p = 4 * k + b;
                if p < self.tt.len() && self.tt.get(p) {
                    v |= 1 << b;
                }
            }
            s.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
        }
        s
    }

    fn parse_hex(n: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim_start_matches("0x").trim_start_matches("0X");
        if hex.is_empty() {
            return Err(Error::Parse("empty hex truth table".into()));
        }
        let len = 1usize << n;
        let mut tt = BitVec::zeros(len);
        for (k, c) in hex.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let p = 4 * k + b;
                    if p >= len {
                        return Err(Error::Parse(format!(
                            "hex table {hex:?} has bits beyond the {len} points of {n} variables"
                        )));
                    }
                    tt.set(p, true);
                }
            }
        }
        Ok(Self { n, tt })
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    /// Accepts `n:HEX` or `n:{i1,i2,...}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n_str, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("function {s:?} must look like n:HEX or n:{{i,...}}")))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable count {n_str:?}")))?;
        check_vars(n)?;
        let body = body.trim();
        if let Some(inner) = body.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unterminated support list {body:?}")))?;
            let points = inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad support point {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Self::from_support(n, points)
        } else {
            Self::parse_hex(n, body)
        }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({})", self.to_hex())
    }
}

impl Anf {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Self {
            n,
            coeffs: BitVec::zeros(1 << n),
        })
    }

    pub fn from_coeffs(n: usize, coeffs: BitVec) -> Result<Self> {
        check_vars(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "ANF of {} coefficients for {n} variables",
                coeffs.len()
            )));
        }
        Ok(Self { n, coeffs })
    }

    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut a = Self::zero(n)?;
        for m in monomials {
            if m >= 1 << n {
                return Err(Error::OutOfRange(format!("monomial mask {m} for {n} variables")));
            }
            a.coeffs.flip(m);
        }
        Ok(a)
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> bool {
        self.coeffs.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Maximum monomial degree; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        max_weight_position(self.coeffs.words()).unwrap_or(0)
    }

    pub fn to_function(&self) -> BooleanFunction {
        let mut tt = self.coeffs.clone();
        mobius_words(tt.words_mut(), self.n);
        BooleanFunction { n: self.n, tt }
    }

    /// Flips every coefficient.
    pub fn complement_all(&self) -> Anf {
        let mut coeffs = self.coeffs.clone();
        coeffs.not_assign();
        Anf { n: self.n, coeffs }
    }

    pub fn monomials(&self) -> Vec<usize> {
        self.coeffs.iter_ones().collect()
    }
}

impl fmt::Display for Anf {
    /// Polynomial form such as `x1x2+x3+1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ms = self.monomials();
        if ms.is_empty() {
            return f.write_str("0");
        }
        ms.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
        let terms: Vec<String> = ms
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n)
                        .filter(|j| m >> j & 1 == 1)
                        .map(|j| format!("x{}", j + 1))
                        .collect()
                }
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf({})", self)
    }
}

/// An affine automorphism `x ↦ A·x + b` of F2^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    n: usize,
    matrix: BitMatrix,
    row_masks: Vec<usize>,
    translation: usize,
}

impl AffineMap {
    /// Rejects singular `A`. Column `j` of `A` acts on `x_{j+1}`.
    pub fn new(matrix: BitMatrix, translation: usize) -> Result<Self> {
        let n = matrix.rows();
        check_vars(n)?;
        if matrix.cols() != n {
            return Err(Error::Dimension(format!("affine matrix must be square, got {n}x{}", matrix.cols())));
        }
        if translation >= 1 << n {
            return Err(Error::OutOfRange(format!("translation {translation} for {n} variables")));
        }
        if matrix.rank() != n {
            return Err(Error::Singular(format!("affine matrix has rank {} < {n}", matrix.rank())));
        }
        let row_masks = (0..n)
            .map(|r| (0..n).filter(|&c| matrix.get(r, c)).fold(0usize, |acc, c| acc | 1 << c))
            .collect();
        Ok(Self {
            n,
            matrix,
            row_masks,
            translation,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(BitMatrix::identity(n), 0)
    }

    pub fn translation(n: usize, b: usize) -> Result<Self> {
        Self::new(BitMatrix::identity(n), b)
    }

    /// Random invertible map, by rejection sampling of `A`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_vars(n)?;
        loop {
            let mut a = BitMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    a.set(r, c, rng.gen());
                }
            }
            if a.rank() == n {
                let b = rng.gen_range(0..1usize << n);
                return Self::new(a, b);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.row_masks
            .iter()
            .enumerate()
            .fold(self.translation, |acc, (r, &mask)| acc ^ (((x & mask).count_ones() as usize & 1) << r))
    }
}

/// A function `h` with `deg(h) ≤ d`, `h(one) = 1` and `h(a) = 0` for every
/// `a` in `zeros`, if the interpolation system is solvable.
pub fn interpolate_low_degree(zeros: &[usize], one: usize, d: usize, n: usize) -> Result<Option<Anf>> {
    check_vars(n)?;
    if zeros.contains(&one) {
        return Err(Error::Precondition(format!("point {one} is required to be both 0 and 1")));
    }
    if let Some(&bad) = zeros.iter().chain([&one]).find(|&&p| p >= 1 << n) {
        return Err(Error::OutOfRange(format!("point {bad} for {n} variables")));
    }
    let monomials = monomials_up_to(n, d);
    let points: Vec<usize> = zeros.iter().copied().chain([one]).collect();
    // rows: monomials, columns: evaluation points
    let mut eval = BitMatrix::zeros(monomials.len(), points.len());
    for (r, &m) in monomials.iter().enumerate() {
        for (c, &p) in points.iter().enumerate() {
            if p & m == m {
                eval.set(r, c, true);
            }
        }
    }
    let mut target = BitVec::zeros(points.len());
    target.set(points.len() - 1, true);
    let Some(x) = eval.solve_preimage(&target)? else {
        return Ok(None);
    };
    Anf::from_monomials(n, x.iter_ones().map(|i| monomials[i])).map(Some)
}
