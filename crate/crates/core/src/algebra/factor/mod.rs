//! Rational factorization of univariate polynomials and binary forms.

mod modp;
mod zassenhaus;

use num_traits::One;

use super::rational::{pow, Rational};
use super::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    Zero,
}

/// `unit * prod(factor^multiplicity)`; factors are pairwise non-associate
/// and irreducible over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList<P> {
    pub unit: Rational,
    pub factors: Vec<(P, u32)>,
}

impl<P> FactorList<P> {
    /// Sum of `degree(factor) * multiplicity`.
    pub fn total_degree(&self, degree: impl Fn(&P) -> usize) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| degree(f) * *m as usize)
            .sum()
    }
}

impl UniPoly {
    /// Complete factorization over the rationals. Factors are primitive
    /// integer polynomials with positive leading coefficient, sorted by
    /// degree then coefficients.
    pub fn factor(&self) -> Result<FactorList<UniPoly>, FactorError> {
        if self.is_zero() {
            return Err(FactorError::Zero);
        }
        let mut factors = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            let (_, prim) = part.primitive_integer();
            for g in zassenhaus::factor_squarefree(&prim) {
                factors.push((UniPoly::from_bigints(&g), mult));
            }
        }
        factors.sort_by(|(a, ma), (b, mb)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().cmp(b.coeffs()))
                .then_with(|| ma.cmp(mb))
        });
        let denom = factors
            .iter()
            .fold(Rational::one(), |acc, (g, m)| acc * pow(&g.leading(), *m));
        Ok(FactorList {
            unit: self.leading() / denom,
            factors,
        })
    }

    pub fn is_irreducible(&self) -> bool {
        match self.factor() {
            Ok(list) => list.factors.len() == 1 && list.factors[0].1 == 1,
            Err(_) => false,
        }
    }
}

/// Product of a factor list, for round-trip checks.
pub fn expand_unipoly(list: &FactorList<UniPoly>) -> UniPoly {
    list.factors.iter().fold(
        UniPoly::constant(list.unit.clone()),
        |acc, (g, m)| &acc * &g.pow(*m),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn factor_round_trip() {
        let a = UniPoly::from_integers(&[1, 2]);
        let b = UniPoly::from_integers(&[-3, 0, 1]);
        let f = (&(&a.pow(2) * &b) * &UniPoly::x()).scale(&ratio(-5, 3));
        let list = f.factor().unwrap();
        assert_eq!(expand_unipoly(&list), f);
        assert_eq!(list.factors.len(), 3);
        assert_eq!(list.factors[1], (a, 2));
        assert_eq!(list.factors[2], (b, 1));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(UniPoly::zero().factor(), Err(FactorError::Zero));
    }

    #[test]
    fn constant_factors_to_unit() {
        let list = UniPoly::from_integers(&[7]).factor().unwrap();
        assert!(list.factors.is_empty());
        assert_eq!(list.unit, ratio(7, 1));
    }
}
