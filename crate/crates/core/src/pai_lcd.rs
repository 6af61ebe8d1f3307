//! Punctured Reed-Muller codes on the support of a Boolean function:
//! dimension tests for AI, meet tests for FAI, LCD tests for perfect
//! algebraic immunity, and LCD codes extracted from such functions.
//!
//! `RM(e, n)^D̄` below is `RM(e, n)` with every coordinate outside the support
//! `D` deleted.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::{rm_dimension, BooleanFunction};
use crate::codes::{column_points, column_points_in, point_columns, LinearCode};
use crate::error::{Error, Result};
use crate::gf2m::FieldGF2n;
use crate::immunity::fai;

/// Point enumeration `P_0, …, P_{2^n−1}` shared by every code built here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    n: usize,
    points: Vec<usize>,
    columns: Vec<usize>,
}

impl Enumeration {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self::from_points(n, column_points(n)?))
    }

    pub fn with_field(field: &FieldGF2n) -> Self {
        Self::from_points(field.degree(), column_points_in(field))
    }

    fn from_points(n: usize, points: Vec<usize>) -> Self {
        let columns = point_columns(&points);
        Self { n, points, columns }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Truth-table index of column `j`.
    pub fn point(&self, j: usize) -> usize {
        self.points[j]
    }

    /// Column of truth-table index `x`.
    pub fn column(&self, x: usize) -> usize {
        self.columns[x]
    }

    fn check(&self, f: &BooleanFunction) -> Result<()> {
        if f.num_vars() != self.n {
            return Err(Error::VariableCount(f.num_vars(), self.n));
        }
        Ok(())
    }

    pub fn support_columns(&self, f: &BooleanFunction) -> Result<SupportColumns> {
        self.check(f)?;
        let mut cols: Vec<usize> = f.support().into_iter().map(|x| self.columns[x]).collect();
        cols.sort_unstable();
        Ok(SupportColumns { n: self.n, cols })
    }

    /// The function whose support is the given column set.
    pub fn function_of(&self, support: &SupportColumns) -> Result<BooleanFunction> {
        BooleanFunction::from_support(self.n, support.cols.iter().map(|&j| self.points[j]))
    }

    /// `RM(e, n)` restricted to the support columns; `e` is clamped.
    pub fn punctured_rm(&self, e: i64, support: &SupportColumns) -> Result<LinearCode> {
        LinearCode::rm_clamped(e, self.n, &self.points)?.restrict(&support.cols)
    }

    pub fn ai_exceeds_via_dims(&self, f: &BooleanFunction, e: usize) -> Result<bool> {
        self.check(f)?;
        if f.is_constant() {
            return Err(Error::Constant("the support test needs a nonconstant function".into()));
        }
        if e > self.n {
            return Err(Error::OutOfRange(format!("e = {e} exceeds n = {}", self.n)));
        }
        let full = rm_dimension(self.n, e);
        let on = self.support_columns(f)?;
        let off = self.support_columns(&f.complement())?;
        Ok(self.punctured_rm(e as i64, &on)?.dim() == full && self.punctured_rm(e as i64, &off)?.dim() == full)
    }

    /// True iff `RM(e,n)^D̄ ∩ (RM(e+n−s,n)^D̄)^⊥ = {0}` for every `1 ≤ e ≤ n`.
    pub fn fai_at_least_via_codes(&self, f: &BooleanFunction, s: usize) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::UndefinedFai);
        }
        if f.degree() + 1 < s {
            return Err(Error::Precondition(format!(
                "deg(f) = {} is below s - 1 = {}",
                f.degree(),
                s.saturating_sub(1)
            )));
        }
        let support = self.support_columns(f)?;
        let n = self.n as i64;
        for e in 1..=n {
            let low = self.punctured_rm(e, &support)?;
            let high = self.punctured_rm(e + n - s as i64, &support)?.dual();
            if low.generator().row_space_meet_dim(high.generator())? > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// LCD status of `RM(e,n)^D̄` for `e = 1..=n`.
    pub fn lcd_profile(&self, f: &BooleanFunction) -> Result<Vec<bool>> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::UndefinedFai);
        }
        let support = self.support_columns(f)?;
        (1..=self.n as i64)
            .map(|e| Ok(self.punctured_rm(e, &support)?.is_lcd()))
            .collect()
    }

    pub fn is_pai_via_lcd(&self, f: &BooleanFunction) -> Result<bool> {
        Ok(self.lcd_profile(f)?.into_iter().all(|b| b))
    }

    /// `RM(e,n)^D̄` for a perfect algebraic immune `f` and `1 ≤ e ≤ (n−1)/2`.
    pub fn lcd_from_pai(&self, f: &BooleanFunction, e: usize) -> Result<LinearCode> {
        self.check(f)?;
        let value = fai(f)?.fai;
        if value < self.n {
            return Err(Error::NotPai { fai: value, n: self.n });
        }
        if e == 0 || 2 * e > self.n - 1 {
            return Err(Error::OutOfRange(format!(
                "e = {e} (expected 1..={})",
                (self.n - 1) / 2
            )));
        }
        self.punctured_rm(e as i64, &self.support_columns(f)?)
    }

    pub fn certificate(&self, f: &BooleanFunction) -> Result<PaiCertificate> {
        let value = fai(f)?.fai;
        let per_e_lcd = self.lcd_profile(f)?;
        Ok(PaiCertificate {
            tt: f.to_hex(),
            weight: f.weight(),
            fai: value,
            pai_by_def: value >= self.n,
            pai_by_lcd: per_e_lcd.iter().all(|&b| b),
            per_e_lcd,
        })
    }

    /// Columns of `{α^ℓ, …, α^{ℓ+m−1}}`, with `0` adjoined when `n` is a
    /// power of two. `m` defaults to `2^{n−1}`.
    pub fn carlet_feng_support(&self, offset: i64, m: Option<usize>) -> Result<SupportColumns> {
        let n = self.n;
        let with_zero = match carlet_feng_shape(n) {
            Some(z) => z,
            None => {
                return Err(Error::Dimension(format!(
                    "n = {n} is neither a power of two nor one more than a power of two"
                )))
            }
        };
        let group = (1usize << n) - 1;
        let m = m.unwrap_or(1 << (n - 1));
        if m > group {
            return Err(Error::OutOfRange(format!("m = {m} exceeds 2^n - 1 = {group}")));
        }
        let start = offset.rem_euclid(group as i64) as usize;
        let mut cols: Vec<usize> = (0..m).map(|i| 1 + (start + i) % group).collect();
        if with_zero {
            cols.push(0);
        }
        cols.sort_unstable();
        Ok(SupportColumns { n, cols })
    }

    pub fn carlet_feng_report(&self, offset: i64, m: Option<usize>) -> Result<CarletFengReport> {
        let support = self.carlet_feng_support(offset, m)?;
        let f = self.function_of(&support)?;
        let weight = support.cols.len();
        let certificate = self.certificate(&f)?;
        let lcd_codes = if certificate.pai_by_def {
            (1..=(self.n - 1) / 2)
                .map(|e| {
                    let c = self.lcd_from_pai(&f, e)?;
                    Ok((c.length(), c.dim(), c.is_lcd()))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(CarletFengReport {
            n: self.n,
            offset,
            m: m.unwrap_or(1 << (self.n - 1)),
            weight_parity_expected: weight % 2 == usize::from(self.n.is_power_of_two()),
            support: support.cols,
            weight,
            certificate,
            lcd_codes,
        })
    }
}

/// `Some(true)` for `n = 2^τ`, `Some(false)` for `n = 2^τ + 1`, `τ ≥ 1`.
pub fn carlet_feng_shape(n: usize) -> Option<bool> {
    if n >= 2 && n.is_power_of_two() {
        Some(true)
    } else if n >= 3 && (n - 1).is_power_of_two() {
        Some(false)
    } else {
        None
    }
}

/// Column indices `{j : f(P_j) = 1}`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportColumns {
    pub n: usize,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaiCertificate {
    pub tt: String,
    pub weight: usize,
    pub fai: usize,
    pub pai_by_def: bool,
    pub pai_by_lcd: bool,
    pub per_e_lcd: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarletFengReport {
    pub n: usize,
    pub offset: i64,
    pub m: usize,
    pub support: Vec<usize>,
    pub weight: usize,
    /// Even weight for `n = 2^τ + 1`, odd for `n = 2^τ`.
    pub weight_parity_expected: bool,
    pub certificate: PaiCertificate,
    /// `(length, dim, lcd)` of `RM(e,n)^D̄` for `1 ≤ e ≤ (n−1)/2`, PAI only.
    pub lcd_codes: Vec<(usize, usize, bool)>,
}

pub fn support_columns(f: &BooleanFunction) -> Result<SupportColumns> {
    Enumeration::new(f.num_vars())?.support_columns(f)
}

pub fn ai_exceeds_via_dims(f: &BooleanFunction, e: usize) -> Result<bool> {
    Enumeration::new(f.num_vars())?.ai_exceeds_via_dims(f, e)
}

pub fn fai_at_least_via_codes(f: &BooleanFunction, s: usize) -> Result<bool> {
    Enumeration::new(f.num_vars())?.fai_at_least_via_codes(f, s)
}

pub fn is_pai_via_lcd(f: &BooleanFunction) -> Result<bool> {
    Enumeration::new(f.num_vars())?.is_pai_via_lcd(f)
}

pub fn lcd_from_pai(f: &BooleanFunction, e: usize) -> Result<LinearCode> {
    Enumeration::new(f.num_vars())?.lcd_from_pai(f, e)
}

pub fn carlet_feng_support(n: usize, offset: i64, m: Option<usize>) -> Result<SupportColumns> {
    Enumeration::new(n)?.carlet_feng_support(offset, m)
}

/// Every perfect algebraic immune function on `n ≤ 4` variables, by
/// exhaustive search, in truth-table order.
pub fn pai_search_exhaustive(n: usize) -> Result<Vec<BooleanFunction>> {
    if n == 0 || n > 4 {
        return Err(Error::SearchSpace(format!("exhaustive search needs 1 <= n <= 4, got {n}")));
    }
    let count = 1u64 << (1 << n);
    let found: Vec<u64> = (1..count)
        .into_par_iter()
        .filter(|&bits| {
            let f = BooleanFunction::from_u64(n, bits).expect("n <= 4");
            fai(&f).expect("nonzero").fai >= n
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|b| BooleanFunction::from_u64(n, b).expect("n <= 4"))
        .collect())
}

/// PAI functions among the cyclic supports of every offset (when `n` has the
/// right shape) and `samples` seeded random balanced functions, deduplicated.
pub fn pai_search_sampled(en: &Enumeration, samples: usize, seed: u64) -> Result<Vec<BooleanFunction>> {
    let n = en.num_vars();
    let mut candidates = Vec::new();
    if carlet_feng_shape(n).is_some() {
        for l in 0..(1i64 << n) - 1 {
            candidates.push(en.function_of(&en.carlet_feng_support(l, None)?)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        candidates.push(BooleanFunction::random_of_weight(n, 1 << (n - 1), &mut rng)?);
    }
    let mut seen = std::collections::HashSet::new();
    candidates.retain(|f| seen.insert(f.to_hex()));
    Ok(candidates
        .into_par_iter()
        .filter(|f| fai(f).map(|r| r.fai >= n).unwrap_or(false))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immunity::ai;

    fn bf(s: &str) -> BooleanFunction {
        s.parse().unwrap()
    }

    #[test]
    fn support_column_examples() {
        assert_eq!(support_columns(&BooleanFunction::one(3).unwrap()).unwrap().cols, (0..8).collect::<Vec<_>>());
        assert_eq!(support_columns(&BooleanFunction::delta(0, 3).unwrap()).unwrap().cols, vec![0]);
        assert_eq!(support_columns(&BooleanFunction::delta(1, 3).unwrap()).unwrap().cols, vec![1]);
        let en = Enumeration::new(4).unwrap();
        let f = bf("4:6B9D");
        let s = en.support_columns(&f).unwrap();
        assert_eq!(s.cols.len(), f.weight());
        assert_eq!(en.function_of(&s).unwrap(), f);
    }

    #[test]
    fn ai_dimension_examples() {
        let maj = bf("3:E8");
        assert!(ai_exceeds_via_dims(&maj, 1).unwrap());
        assert!(!ai_exceeds_via_dims(&maj, 2).unwrap());
        assert!(ai_exceeds_via_dims(&BooleanFunction::one(3).unwrap(), 1).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let f = BooleanFunction::random(5, &mut rng).unwrap();
            if f.is_constant() {
                continue;
            }
            for e in 0..=5 {
                assert_eq!(ai_exceeds_via_dims(&f, e).unwrap(), ai(&f) > e);
            }
        }
    }

    #[test]
    fn fai_code_test_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let f = BooleanFunction::random(4, &mut rng).unwrap();
            if !f.is_zero() {
                assert!(fai_at_least_via_codes(&f, 1).unwrap());
            }
        }
        let one = BooleanFunction::one(4).unwrap();
        assert!(matches!(fai_at_least_via_codes(&one, 2), Err(Error::Precondition(_))));
        assert!(!is_pai_via_lcd(&BooleanFunction::one(3).unwrap()).unwrap());
    }

    #[test]
    fn carlet_feng_examples() {
        let s = carlet_feng_support(5, 0, Some(16)).unwrap();
        assert_eq!(s.cols, (1..=16).collect::<Vec<_>>());
        let s = carlet_feng_support(4, 0, Some(8)).unwrap();
        assert_eq!(s.cols, (0..=8).collect::<Vec<_>>());
        assert_eq!(carlet_feng_support(4, 0, None).unwrap().cols.len(), 9);
        // wraps around the cyclic group
        let s = carlet_feng_support(3, 5, Some(4)).unwrap();
        assert_eq!(s.cols, vec![1, 2, 6, 7]);
        assert!(matches!(carlet_feng_support(6, 0, None), Err(Error::Dimension(_))));
        assert!(carlet_feng_support(3, 0, Some(8)).is_err());
    }

    #[test]
    fn sampled_search_finds_cyclic_supports() {
        let en = Enumeration::new(5).unwrap();
        let found = pai_search_sampled(&en, 20, 1).unwrap();
        assert!(found.len() >= 31);
        assert!(found.iter().all(|f| fai(f).unwrap().fai >= 5));
    }

    #[test]
    fn lcd_from_pai_refuses_non_pai() {
        let r = lcd_from_pai(&BooleanFunction::one(5).unwrap(), 1);
        assert!(matches!(r, Err(Error::NotPai { fai: 2, n: 5 })));
    }
}
