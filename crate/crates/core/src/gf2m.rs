//! Arithmetic in GF(2^n) for 2 ≤ n ≤ 16 using log/antilog tables.
//!
//! Elements are stored in the polynomial basis: bit `i` of the value is the
//! coefficient of `x^i`. The generator α is always the class of `x`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 16;

/// An element of GF(2^n) in polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Truth-table point index: variable `x_j` takes the coefficient of `x^(j-1)`.
    #[inline]
    pub fn point_index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(2^n) built on a primitive modulus.
#[derive(Clone, Debug)]
pub struct FieldGF2n {
    n: usize,
    modulus: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Multiplicative order of `x` modulo `modulus`, or `None` if `x` never
/// returns to 1 within `2^n - 1` steps.
fn order_of_x(n: usize, modulus: u32) -> Option<u32> {
    let top = 1u32 << n;
    let group = top - 1;
    let mut v = 1u32;
    for k in 1..=group {
        v <<= 1;
        if v & top != 0 {
            v ^= modulus;
        }
        if v == 1 {
            return Some(k);
        }
    }
    None
}

/// True iff `modulus` (with its degree-`n` term) is a primitive polynomial.
pub fn is_primitive(n: usize, modulus: u32) -> bool {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return false;
    }
    let top = 1u32 << n;
    if modulus & top == 0 || modulus >> (n + 1) != 0 || modulus & 1 == 0 {
        return false;
    }
    order_of_x(n, modulus) == Some(top - 1)
}

impl FieldGF2n {
    /// The field on the numerically smallest primitive polynomial of degree `n`.
    pub fn new(n: usize) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let top = 1u32 << n;
        let modulus = (top + 1..2 * top)
            .step_by(2)
            .find(|&m| is_primitive(n, m))
            .expect("a primitive polynomial exists for every degree");
        Ok(Self::build(n, modulus))
    }

    /// The field on a caller-supplied modulus, validated for primitivity.
    pub fn with_modulus(n: usize, modulus: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        if !is_primitive(n, modulus) {
            return Err(Error::NotPrimitive { n, modulus });
        }
        Ok(Self::build(n, modulus))
    }

    fn build(n: usize, modulus: u32) -> Self {
        let top = 1u32 << n;
        let group = (top - 1) as usize;
        let mut exp = Vec::with_capacity(group);
        let mut log = vec![0u32; top as usize];
        let mut v = 1u32;
        for k in 0..group {
            exp.push(v);
            log[v as usize] = k as u32;
            v <<= 1;
            if v & top != 0 {
                v ^= modulus;
            }
        }
        debug_assert_eq!(v, 1);
        Self { n, modulus, exp, log }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Modulus as a bit mask including the leading term.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `2^n - 1`.
    pub fn group_order(&self) -> usize {
        self.exp.len()
    }

    /// α^j with the exponent reduced modulo `2^n - 1`.
    pub fn alpha_pow(&self, j: i64) -> FieldElement {
        let q = self.group_order() as i64;
        FieldElement(self.exp[j.rem_euclid(q) as usize])
    }

    /// Discrete logarithm base α of a nonzero element.
    pub fn log(&self, e: FieldElement) -> Option<usize> {
        (!e.is_zero()).then(|| self.log[e.0 as usize] as usize)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[s % self.group_order()])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// `[0, α^0, α^1, …, α^(2^n - 2)]`.
    pub fn enumerate_points(&self) -> Vec<FieldElement> {
        std::iter::once(FieldElement::ZERO)
            .chain(self.exp.iter().map(|&v| FieldElement(v)))
            .collect()
    }

    /// Human-readable modulus, e.g. `x^3+x+1`.
    pub fn modulus_string(&self) -> String {
        poly_string(self.modulus)
    }
}

pub fn poly_string(mask: u32) -> String {
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if mask >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Period of the powers of x, computed by plain polynomial reduction.
    fn period_by_reduction(n: usize, modulus: u32) -> usize {
        let mut v = 1u32;
        for k in 1..(1usize << n) {
            v <<= 1;
            if v >> n & 1 == 1 {
                v ^= modulus;
            }
            if v == 1 {
                return k;
            }
        }
        0
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldGF2n::new(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldGF2n::new(3).unwrap().modulus(), 0b1011);
        assert_eq!(FieldGF2n::new(4).unwrap().modulus(), 0b10011);
        assert_eq!(period_by_reduction(3, 0b1011), 7);
        assert_eq!(period_by_reduction(4, 0b10011), 15);
        // x^4+x^3+x^2+x+1 is irreducible but x has order 5
        assert_eq!(period_by_reduction(4, 0b11111), 5);
        assert!(!is_primitive(4, 0b11111));
        assert_eq!(FieldGF2n::new(3).unwrap().modulus_string(), "x^3+x+1");
    }

    #[test]
    fn every_default_modulus_is_primitive() {
        for n in MIN_DEGREE..=MAX_DEGREE {
            let f = FieldGF2n::new(n).unwrap();
            assert_eq!(period_by_reduction(n, f.modulus()), (1 << n) - 1, "n = {n}");
            // nothing smaller is primitive
            for m in ((1u32 << n) + 1..f.modulus()).step_by(2) {
                assert!(period_by_reduction(n, m) != (1 << n) - 1);
            }
        }
    }

    #[test]
    fn degree_range_and_modulus_validation() {
        assert_eq!(FieldGF2n::new(1).unwrap_err(), Error::UnsupportedDegree(1));
        assert_eq!(FieldGF2n::new(17).unwrap_err(), Error::UnsupportedDegree(17));
        assert!(FieldGF2n::with_modulus(4, 0b11001).is_ok()); // x^4+x^3+1
        assert!(matches!(
            FieldGF2n::with_modulus(4, 0b11111),
            Err(Error::NotPrimitive { .. })
        ));
        assert!(FieldGF2n::with_modulus(4, 0b1011).is_err());
    }

    #[test]
    fn alpha_powers() {
        let f = FieldGF2n::new(3).unwrap();
        assert_eq!(f.alpha_pow(0), FieldElement(0b001));
        assert_eq!(f.alpha_pow(3), FieldElement(0b011));
        assert_eq!(f.alpha_pow(7), FieldElement::ONE);
        assert_eq!(f.alpha_pow(-1), f.alpha_pow(6));
    }

    #[test]
    fn point_enumeration() {
        let f = FieldGF2n::new(2).unwrap();
        let pts: Vec<u32> = f.enumerate_points().iter().map(|e| e.0).collect();
        assert_eq!(pts, vec![0b00, 0b01, 0b10, 0b11]);

        let f = FieldGF2n::new(3).unwrap();
        let pts = f.enumerate_points();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], FieldElement(0));
        assert_eq!(pts[1], FieldElement(1));
        assert_eq!(FieldElement(0b011).point_index(), 3);

        for n in MIN_DEGREE..=12 {
            let f = FieldGF2n::new(n).unwrap();
            let mut idx: Vec<usize> = f.enumerate_points().iter().map(|e| e.point_index()).collect();
            idx.sort_unstable();
            assert_eq!(idx, (0..1usize << n).collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn log_table_multiplication(n in 2usize..=16, i in any::<i32>(), j in any::<i32>()) {
            let f = FieldGF2n::new(n).unwrap();
            let (i, j) = (i as i64, j as i64);
            prop_assert_eq!(f.mul(f.alpha_pow(i), f.alpha_pow(j)), f.alpha_pow(i + j));
            let a = f.alpha_pow(i);
            prop_assert_eq!(f.alpha_pow(f.log(a).unwrap() as i64), a);
        }
    }
}
