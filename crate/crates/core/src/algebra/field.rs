//! A minimal field interface shared by the rationals and simple algebraic
//! extensions `Q[theta] / (phi)`, so that local computations at an irrational
//! point can run exactly.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;

pub trait FieldElem: Clone + PartialEq + fmt::Debug {
    fn vanishes(&self) -> bool;
    /// The zero of the field `self` belongs to.
    fn zero_like(&self) -> Self;
    /// A rational number embedded in the field `self` belongs to.
    fn embed(&self, r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Panics on zero.
    fn inverse(&self) -> Self;

    fn one_like(&self) -> Self {
        self.embed(&Rational::one())
    }

    fn negated(&self) -> Self {
        self.zero_like().minus(self)
    }
}

impl FieldElem for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// `Q[theta] / (modulus)` for an irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    /// The modulus is made monic. Irreducibility is the caller's promise;
    /// inverses of zero divisors panic.
    pub fn new(modulus: &UniPoly) -> Arc<Self> {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1),
            "modulus must be non-constant"
        );
        Arc::new(Self {
            modulus: modulus.monic(),
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("non-constant")
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// The class of `theta`.
    pub fn generator(self: &Arc<Self>) -> NfElem {
        NfElem::new(self, UniPoly::x())
    }

    pub fn constant(self: &Arc<Self>, r: Rational) -> NfElem {
        NfElem::new(self, UniPoly::constant(r))
    }
}

#[derive(Clone, PartialEq)]
pub struct NfElem {
    field: Arc<NumberField>,
    value: UniPoly,
}

impl NfElem {
    pub fn new(field: &Arc<NumberField>, value: UniPoly) -> Self {
        let value = value.div_rem(&field.modulus).1;
        Self {
            field: Arc::clone(field),
            value,
        }
    }

    /// Canonical representative of degree below the field degree.
    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    fn with(&self, value: UniPoly) -> Self {
        Self::new(&self.field, value)
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.value, self.field.modulus)
    }
}

impl FieldElem for NfElem {
    fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.with(UniPoly::zero())
    }
    fn embed(&self, r: &Rational) -> Self {
        self.with(UniPoly::constant(r.clone()))
    }
    fn plus(&self, other: &Self) -> Self {
        self.with(&self.value + &other.value)
    }
    fn minus(&self, other: &Self) -> Self {
        self.with(&self.value - &other.value)
    }
    fn times(&self, other: &Self) -> Self {
        self.with(&self.value * &other.value)
    }
    fn inverse(&self) -> Self {
        assert!(!self.value.is_zero(), "inverse of zero");
        // Extended Euclid: track s with s * value = r (mod modulus).
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.value.clone());
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert_eq!(r0.degree(), Some(0), "element is a zero divisor");
        self.with(s0.scale(&r0.leading().recip()))
    }
}

/// Dense univariate polynomials over a [`FieldElem`], ascending, trimmed.
pub(crate) fn trim<E: FieldElem>(mut p: Vec<E>) -> Vec<E> {
    while p.last().is_some_and(FieldElem::vanishes) {
        p.pop();
    }
    p
}

pub(crate) fn poly_derivative<E: FieldElem>(p: &[E]) -> Vec<E> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&c.embed(&Rational::from_integer((i as i64).into()))))
            .collect(),
    )
}

pub(crate) fn poly_rem<E: FieldElem>(a: &[E], b: &[E]) -> Vec<E> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let d = b.len() - 1;
    let inv = b[d].inverse();
    let mut rem = trim(a.to_vec());
    while rem.len() > d {
        let k = rem.len() - 1 - d;
        let c = rem[rem.len() - 1].times(&inv);
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].minus(&c.times(bj));
        }
        rem.pop();
        rem = trim(rem);
    }
    rem
}

/// Monic gcd; empty for two zero inputs.
pub(crate) fn poly_gcd<E: FieldElem>(a: &[E], b: &[E]) -> Vec<E> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    match x.last() {
        None => x,
        Some(lc) => {
            let inv = lc.inverse();
            x.iter().map(|c| c.times(&inv)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    #[test]
    fn gaussian_integers_over_q() {
        let k = NumberField::new(&UniPoly::from_integers(&[1, 0, 1]));
        let i = k.generator();
        let minus_one = i.times(&i);
        assert_eq!(minus_one, k.constant(rat(-1)));
        let z = i.plus(&k.constant(rat(2)));
        let w = z.inverse();
        assert_eq!(z.times(&w), k.constant(rat(1)));
        // 1 / (2 + i) = (2 - i) / 5
        assert_eq!(w, k.constant(ratio(2, 5)).minus(&i.times(&k.constant(ratio(1, 5)))));
    }

    #[test]
    fn gcd_finds_double_root() {
        let k = NumberField::new(&UniPoly::from_integers(&[-2, 0, 1]));
        let r2 = k.generator();
        let one = k.constant(rat(1));
        // (u - sqrt2)^2 (u + 1)
        let lin = vec![r2.negated(), one.clone()];
        let p = mul(&mul(&lin, &lin), &[one.clone(), one.clone()]);
        let g = poly_gcd(&p, &poly_derivative(&p));
        assert_eq!(g, lin);
    }

    fn mul<E: FieldElem>(a: &[E], b: &[E]) -> Vec<E> {
        let z = a[0].zero_like();
        let mut out = vec![z; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].plus(&x.times(y));
            }
        }
        trim(out)
    }
}
