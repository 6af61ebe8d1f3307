//! Annihilators, algebraic immunity, the fast immunity profile and fast
//! algebraic immunity.
//!
//! `FAI(f)` follows the definition: the minimum of `deg(g) + deg(f·g)` over
//! `g ∉ {0, 1}` with `f·g ≠ 0`. It is computed layer by layer from the spaces
//! `MUL_k(f) = {f·g : deg g ≤ k}`. The profile formula `min_k (k + μ_k(f))`
//! also admits `g = 1`; both values are reported and they differ exactly when
//! `g = 1` would be the unique optimum.
//!
//! [`fai_direct`] and [`ai_direct`] are enumeration oracles that share no code
//! with the linear-algebra path beyond truth-table arithmetic.

use serde::Serialize;

use crate::boolfun::{anf_degree_u64, binomial, mobius_u64, monomials_up_to, rm_dimension, Anf, BooleanFunction};
use crate::error::{Error, Result};
use crate::f2linalg::{BitMatrix, BitVec};

/// Monomial counts above this make the enumeration oracles refuse to run.
pub const MAX_DIRECT_MONOMIALS: usize = 28;

/// Evaluation matrix: one row per support point, one column per monomial.
fn support_evaluation(points: &[usize], monomials: &[usize]) -> BitMatrix {
    let mut m = BitMatrix::zeros(points.len(), monomials.len());
    for (r, &x) in points.iter().enumerate() {
        for (c, &mono) in monomials.iter().enumerate() {
            if x & mono == mono {
                m.set(r, c, true);
            }
        }
    }
    m
}

fn anf_from_combination(n: usize, monomials: &[usize], x: &BitVec) -> Anf {
    Anf::from_monomials(n, x.iter_ones().map(|i| monomials[i])).expect("monomials fit n")
}

/// Basis of the annihilators of `f` of degree at most `e`, as ANFs.
pub fn annihilator_basis(f: &BooleanFunction, e: usize) -> Vec<Anf> {
    let n = f.num_vars();
    let monomials = monomials_up_to(n, e);
    let kernel = support_evaluation(&f.support(), &monomials).kernel_basis();
    kernel
        .row_vecs()
        .iter()
        .map(|x| anf_from_combination(n, &monomials, x))
        .collect()
}

/// Lowest degree of a nonzero annihilator; `None` when only `0` annihilates
/// `f` (i.e. `f` is the all-ones function). `lda(0) = 0`.
pub fn lda(f: &BooleanFunction) -> Option<usize> {
    let n = f.num_vars();
    let support = f.support();
    (0..=n).find(|&e| {
        let monomials = monomials_up_to(n, e);
        support_evaluation(&support, &monomials).rank() < monomials.len()
    })
}

/// A verified nonzero annihilator of degree at most `e`.
pub fn annihilator_witness(f: &BooleanFunction, e: usize) -> Option<Anf> {
    let g = annihilator_basis(f, e).into_iter().next()?;
    let product = f.multiply(&g.to_function()).expect("same variable count");
    assert!(product.is_zero() && !g.is_zero(), "annihilator check failed for {f}");
    Some(g)
}

/// `min(lda(f), lda(1 + f))`.
pub fn ai(f: &BooleanFunction) -> usize {
    match (lda(f), lda(&f.complement())) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("f and 1+f cannot both be all-ones"),
    }
}

/// Columns ordered by decreasing monomial degree (ties by mask).
fn graded_order(n: usize) -> Vec<usize> {
    let mut cols: Vec<usize> = (0..1usize << n).collect();
    cols.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    cols
}

/// `MUL_k(f)` with enough bookkeeping to read off degrees and solve for `g`.
struct MulSpace {
    n: usize,
    monomials: Vec<usize>,
    /// Row `i` is the ANF of `f · monomials[i]`.
    products: BitMatrix,
    /// RREF of `products` with columns in [`graded_order`].
    graded: BitMatrix,
    /// Degree of each pivot of `graded`; non-increasing.
    pivot_degrees: Vec<usize>,
    order: Vec<usize>,
}

impl MulSpace {
    fn new(f: &BooleanFunction, k: usize) -> Self {
        let n = f.num_vars();
        let monomials = monomials_up_to(n, k);
        let mut products = BitMatrix::zeros(0, 1 << n);
        for &m in &monomials {
            let mono = BooleanFunction::from_fn(n, |x| x & m == m).expect("valid n");
            let fm = f.multiply(&mono).expect("same n");
            products.push_row(fm.anf().coeffs()).expect("row width");
        }
        let order = graded_order(n);
        let (graded, pivots) = products.select_columns(&order).rref();
        let pivot_degrees = pivots.iter().map(|&c| order[c].count_ones() as usize).collect();
        Self {
            n,
            monomials,
            products,
            graded,
            pivot_degrees,
            order,
        }
    }

    fn dim(&self) -> usize {
        self.graded.rows()
    }

    /// Dimension of the annihilators of degree ≤ k.
    fn annihilator_dim(&self) -> usize {
        self.monomials.len() - self.dim()
    }

    /// `μ_k(f)`: minimum degree of a nonzero element.
    fn min_degree(&self) -> Option<usize> {
        self.pivot_degrees.last().copied()
    }

    /// Graded row `i` back in natural ANF coordinates.
    fn element(&self, i: usize) -> BitVec {
        let mut v = BitVec::zeros(1 << self.n);
        for (c, &m) in self.order.iter().enumerate() {
            if self.graded.get(i, c) {
                v.set(m, true);
            }
        }
        v
    }

    /// Rows whose elements have degree ≤ d form a suffix of the graded RREF.
    fn rows_of_degree_at_most(&self, d: usize) -> std::ops::Range<usize> {
        let start = self.pivot_degrees.partition_point(|&deg| deg > d);
        start..self.dim()
    }

    /// Smallest `d` for which some element of degree ≤ d has a preimage
    /// `g ≠ 1`, together with a graded row index of such an element.
    fn min_degree_excluding_one(&self, f_anf: &BitVec) -> Option<(usize, usize)> {
        let mu = self.min_degree()?;
        if self.annihilator_dim() > 0 {
            // every coset g0 + Ann_k(f) holds something other than 1
            return Some((mu, self.dim() - 1));
        }
        // g ↦ f·g is injective on RM(k); only the element f comes from g = 1
        let mut degrees: Vec<usize> = self.pivot_degrees.clone();
        degrees.dedup();
        for d in degrees.into_iter().rev() {
            let rows = self.rows_of_degree_at_most(d);
            if let Some(i) = rows.clone().rev().find(|&i| self.element(i) != *f_anf) {
                return Some((d, i));
            }
            if rows.len() >= 2 {
                unreachable!("two distinct basis rows cannot both equal f");
            }
        }
        None
    }

    /// A `g` of degree ≤ k with `f·g = v`, preferring `g ≠ 1`.
    fn preimage_avoiding_one(&self, v: &BitVec) -> BitVec {
        let x = self
            .products
            .solve_preimage(v)
            .expect("width matches")
            .expect("element of MUL_k has a preimage");
        let one_only = x.count_ones() == 1 && self.monomials[x.first_one().unwrap()] == 0;
        if !one_only {
            return x;
        }
        let ann = self.products.transpose().kernel_basis();
        let mut x = x;
        x.xor_assign(&ann.row(0));
        x
    }
}

/// RREF basis of `MUL_k(f)` in natural ANF coordinates.
pub fn mul_space_basis(f: &BooleanFunction, k: usize) -> BitMatrix {
    let n = f.num_vars();
    let monomials = monomials_up_to(n, k);
    let mut products = BitMatrix::zeros(0, 1 << n);
    for &m in &monomials {
        let mono = BooleanFunction::from_fn(n, |x| x & m == m).expect("valid n");
        products
            .push_row(f.multiply(&mono).expect("same n").anf().coeffs())
            .expect("row width");
    }
    products.rref().0
}

/// `μ_k(f)`; `None` when `MUL_k(f) = {0}`.
pub fn mu(f: &BooleanFunction, k: usize) -> Result<Option<usize>> {
    let n = f.num_vars();
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("profile index k = {k} (expected 1..={n})")));
    }
    Ok(MulSpace::new(f, k).min_degree())
}

/// The fast immunity profile `(μ_1(f), …, μ_n(f))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImmunityProfile {
    pub n: usize,
    pub mu: Vec<Option<usize>>,
}

impl ImmunityProfile {
    pub fn is_non_increasing(&self) -> bool {
        self.mu.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => a >= b,
            (None, None) => true,
            _ => false,
        })
    }

    /// `min_k (k + μ_k)`, the profile formula for FAI (admits `g = 1`).
    pub fn fai_formula(&self) -> Option<usize> {
        self.mu
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|m| i + 1 + m))
            .min()
    }

    pub fn min_mu(&self) -> Option<usize> {
        self.mu.iter().flatten().copied().min()
    }
}

impl std::fmt::Display for ImmunityProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .mu
            .iter()
            .map(|m| m.map_or_else(|| "⊥".to_string(), |v| v.to_string()))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn profile(f: &BooleanFunction) -> ImmunityProfile {
    let n = f.num_vars();
    ImmunityProfile {
        n,
        mu: (1..=n).map(|k| MulSpace::new(f, k).min_degree()).collect(),
    }
}

/// A `g` achieving FAI, with its product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaiWitness {
    pub g: Anf,
    pub fg: Anf,
    pub total: usize,
}

impl FaiWitness {
    pub fn deg_g(&self) -> usize {
        self.g.degree()
    }

    pub fn deg_fg(&self) -> usize {
        self.fg.degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaiResult {
    pub fai: usize,
    pub witness: FaiWitness,
    /// `min_k (k + μ_k(f))`.
    pub profile_formula: usize,
}

impl FaiResult {
    /// True when the profile formula disagrees with the definition.
    pub fn formula_diverges(&self) -> bool {
        self.profile_formula != self.fai
    }
}

/// Fast algebraic immunity with a verified optimal witness.
pub fn fai(f: &BooleanFunction) -> Result<FaiResult> {
    if f.is_zero() {
        return Err(Error::UndefinedFai);
    }
    let n = f.num_vars();
    let f_anf = f.anf();
    let mut best: Option<(usize, FaiWitness)> = None;
    let mut formula = usize::MAX;
    for k in 1..=n {
        let bound = best.as_ref().map_or(usize::MAX, |b| b.0);
        if k >= bound && k >= formula {
            break;
        }
        let space = MulSpace::new(f, k);
        if let Some(mu) = space.min_degree() {
            formula = formula.min(k + mu);
        }
        if k >= bound {
            continue;
        }
        let Some((d, row)) = space.min_degree_excluding_one(f_anf.coeffs()) else {
            continue;
        };
        if k + d >= bound {
            continue;
        }
        let v = space.element(row);
        let x = space.preimage_avoiding_one(&v);
        let g = anf_from_combination(n, &space.monomials, &x);
        let fg = Anf::from_coeffs(n, v).expect("width");
        let witness = verify_witness(f, g, fg)?;
        debug_assert!(witness.total <= k + d);
        best = Some((witness.total, witness));
    }
    let (fai, witness) = best.expect("a nonzero function always has an admissible multiplier");
    Ok(FaiResult {
        fai,
        witness,
        profile_formula: formula,
    })
}

fn verify_witness(f: &BooleanFunction, g: Anf, fg: Anf) -> Result<FaiWitness> {
    let g_fn = g.to_function();
    let product = f.multiply(&g_fn)?;
    assert!(!g.is_zero() && !g_fn.is_one(), "FAI witness must avoid 0 and 1 for {f}");
    assert!(!product.is_zero(), "FAI witness must not annihilate {f}");
    assert_eq!(product.anf(), fg, "FAI witness product mismatch for {f}");
    let total = g.degree() + fg.degree();
    Ok(FaiWitness { g, fg, total })
}

/// `min(FAI(f), FAI(1 + f))`; constants are rejected.
pub fn ffai(f: &BooleanFunction) -> Result<usize> {
    if f.is_constant() {
        return Err(Error::Constant("FAI of f and 1+f both need a nonzero argument".into()));
    }
    Ok(fai(f)?.fai.min(fai(&f.complement())?.fai))
}

/// `FAI(f) ≥ n`.
pub fn is_pai(f: &BooleanFunction) -> Result<bool> {
    Ok(fai(f)?.fai >= f.num_vars())
}

/// Visits every ANF spanned by `monomials` (Gray-code order, zero first),
/// passing `(anf, truth_table)` as single words. Requires `n ≤ 6`.
fn for_each_span_u64(n: usize, monomials: &[usize], mut visit: impl FnMut(u64, u64)) {
    let mono_tt: Vec<u64> = monomials
        .iter()
        .map(|&m| (0..1usize << n).filter(|x| x & m == m).fold(0u64, |acc, x| acc | 1 << x))
        .collect();
    let (mut anf, mut tt) = (0u64, 0u64);
    visit(anf, tt);
    for i in 1u64..1u64 << monomials.len() {
        let t = i.trailing_zeros() as usize;
        anf ^= 1u64 << monomials[t];
        tt ^= mono_tt[t];
        visit(anf, tt);
    }
}

fn guard(n: usize, monomials: usize) -> Result<()> {
    if n > 6 {
        return Err(Error::SearchSpace(format!("enumeration oracles support n <= 6, got {n}")));
    }
    if monomials > MAX_DIRECT_MONOMIALS {
        return Err(Error::SearchSpace(format!(
            "{monomials} monomials exceed the limit of {MAX_DIRECT_MONOMIALS}"
        )));
    }
    Ok(())
}

fn direct_search(f_tt: u64, n: usize, cap: usize) -> Result<Option<usize>> {
    let monomials = monomials_up_to(n, cap);
    guard(n, monomials.len())?;
    let one = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    let mut best: Option<usize> = None;
    for_each_span_u64(n, &monomials, |g_anf, g_tt| {
        if g_anf == 0 || g_tt == one {
            return;
        }
        let prod = f_tt & g_tt;
        if prod == 0 {
            return;
        }
        let total = anf_degree_u64(g_anf) + anf_degree_u64(mobius_u64(prod, n));
        if best.is_none_or(|b| total < b) {
            best = Some(total);
        }
    });
    Ok(best)
}

/// FAI by exhaustive enumeration of `g` with `deg g ≤ min(cap, ⌊n/2⌋)`.
///
/// An optimal `g` never has degree above `deg(f·g)`, so the search is exact
/// whenever it finds a value `≤ n`. Otherwise the search is widened to
/// `deg g ≤ ⌊(n+1)/2⌋`, which covers every function because an affine
/// multiplier always gives a value `≤ n + 1`. A `cap` below those degrees
/// gives an upper bound only.
pub fn fai_direct(f: &BooleanFunction, cap: usize) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::UndefinedFai);
    }
    let n = f.num_vars();
    let tt = f.low_word();
    let narrow = cap.min(n / 2);
    let found = direct_search(tt, n, narrow)?;
    if let Some(v) = found.filter(|&v| v <= n) {
        return Ok(v);
    }
    let wide = cap.min(n.div_ceil(2));
    let found = if wide > narrow { direct_search(tt, n, wide)? } else { found };
    found.ok_or_else(|| Error::SearchSpace(format!("no admissible g of degree <= {cap}")))
}

/// AI by enumerating every `g` of degree ≤ e for e = 0, 1, … until some
/// nonzero `g` annihilates `f` or `1 + f`.
pub fn ai_direct(f: &BooleanFunction) -> Result<usize> {
    let n = f.num_vars();
    let tt = f.low_word();
    let full = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    for e in 0..=n {
        let monomials = monomials_up_to(n, e);
        guard(n, monomials.len())?;
        let mut hit = false;
        for_each_span_u64(n, &monomials, |g_anf, g_tt| {
            if g_anf != 0 && (g_tt & tt == 0 || g_tt & !tt & full == 0) {
                hit = true;
            }
        });
        if hit {
            return Ok(e);
        }
    }
    unreachable!("g = 1 + f or g = f annihilates at degree n")
}

/// Per-function analysis record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionReport {
    pub tt: String,
    pub n: usize,
    pub deg: usize,
    pub wt: usize,
    pub ai: usize,
    pub lda_f: Option<usize>,
    pub lda_fc: Option<usize>,
    pub profile: Vec<Option<usize>>,
    pub fai: usize,
    pub ffai: Option<usize>,
    pub witness_g: String,
    pub witness_total: usize,
    pub profile_formula: usize,
}

pub fn analyze(f: &BooleanFunction) -> Result<FunctionReport> {
    let result = fai(f)?;
    let ffai = if f.is_constant() {
        None
    } else {
        Some(result.fai.min(fai(&f.complement())?.fai))
    };
    Ok(FunctionReport {
        tt: f.to_hex(),
        n: f.num_vars(),
        deg: f.degree(),
        wt: f.weight(),
        ai: ai(f),
        lda_f: lda(f),
        lda_fc: lda(&f.complement()),
        profile: profile(f).mu,
        fai: result.fai,
        ffai,
        witness_g: result.witness.g.to_string(),
        witness_total: result.witness.total,
        profile_formula: result.profile_formula,
    })
}

/// Number of monomials of degree exactly `d` on `n` variables.
pub fn monomial_count(n: usize, d: usize) -> usize {
    binomial(n, d)
}

/// Dimension of `RM(k, n)`, i.e. the number of candidate multipliers of degree ≤ k.
pub fn multiplier_dimension(n: usize, k: usize) -> usize {
    rm_dimension(n, k)
}
