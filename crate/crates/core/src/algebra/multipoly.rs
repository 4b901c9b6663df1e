//! Sparse multivariate polynomials over the rationals with a weighted grading.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{display_rational, pow, Rational};

/// Variable names and their positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights = vec![1; vars.len()];
        Arc::new(Self { vars, weights })
    }

    /// Panics if a weight is zero or the lengths differ.
    pub fn weighted<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        weights: impl IntoIterator<Item = u32>,
    ) -> Arc<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights: Vec<u32> = weights.into_iter().collect();
        assert_eq!(vars.len(), weights.len(), "one weight per variable");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Arc::new(Self { vars, weights })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the variables of a [`PolyRing`].
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, value: Rational) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(vec![0; ring.nvars()], value);
        out
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut exp = vec![0; ring.nvars()];
        exp[index] = 1;
        Self::from_terms(ring, [(exp, Rational::one())])
    }

    /// All variables of the ring, in order.
    pub fn vars(ring: &Arc<PolyRing>) -> Vec<Self> {
        (0..ring.nvars()).map(|i| Self::var(ring, i)).collect()
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut out = Self::zero(ring);
        for (exp, coef) in terms {
            out.add_term(exp, coef);
        }
        out
    }

    fn add_term(&mut self, exp: Vec<u32>, coef: Rational) {
        assert_eq!(exp.len(), self.ring.nvars(), "exponent length mismatch");
        if coef.is_zero() {
            return;
        }
        let key = Monomial(exp);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += coef;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coef);
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exp.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Lowest total degree of a nonzero term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&self.ring.weights))
            .max()
    }

    /// True when every term has the same weighted degree (zero counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self
            .terms
            .keys()
            .map(|m| m.weighted_degree(&self.ring.weights));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.filter_terms(|m| m.total_degree() == degree)
    }

    /// Terms of total degree strictly below `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        self.filter_terms(|m| m.total_degree() < bound)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32]) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(exp).map(|(a, b)| a + b).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[var] -= 1;
            out.add_term(exp, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * pow(x, e))
            })
            .sum()
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a ring,
    /// which becomes the ring of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images
            .first()
            .map(|p| Arc::clone(&p.ring))
            .expect("compose needs at least one variable");
        assert!(
            images.iter().all(|p| p.ring == target),
            "images must share a ring"
        );
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Replaces variable `var` by a constant, keeping the ring.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut exp = m.0.clone();
            let e = std::mem::replace(&mut exp[var], 0);
            out.add_term(exp, c * pow(value, e));
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let mut exp = m.0.clone();
            let k = std::mem::replace(&mut exp[var], 0) as usize;
            out[k].add_term(exp, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.ring, divisor.ring, "ring mismatch");
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !lead_m.divides(m) {
                return None;
            }
            let exp: Vec<u32> = m.0.iter().zip(&lead_m.0).map(|(a, b)| a - b).collect();
            let coef = c / lead_c;
            let step = divisor.mul_monomial(&exp).scale(&coef);
            quot.add_term(exp, coef);
            rem = &rem - &step;
        }
        Some(quot)
    }

    /// Same polynomial viewed in a different ring with the same number of variables.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Self {
        assert_eq!(ring.nvars(), self.nvars(), "variable count mismatch");
        Self {
            ring: Arc::clone(ring),
            terms: self.terms.clone(),
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exp = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coef)) in self.terms().enumerate() {
            let negative = coef.is_negative();
            let magnitude = coef.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = exp
                .iter()
                .zip(self.ring.vars())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", display_rational(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", display_rational(&magnitude))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
