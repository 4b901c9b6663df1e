//! Homogeneous forms in two variables `(s, t)` and points of the projective line.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::factor::{FactorError, FactorList};
use super::multipoly::{MultiPoly, PolyRing};
use super::rational::{display_rational, Rational};
use super::unipoly::UniPoly;

/// A point `[s : t]` of the projective line, normalized to `[s/t : 1]`
/// or `[1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    s: Rational,
    t: Rational,
}

impl P1Point {
    /// Panics if both coordinates vanish.
    pub fn new(s: Rational, t: Rational) -> Self {
        if t.is_zero() {
            assert!(!s.is_zero(), "[0:0] is not a point");
            Self {
                s: Rational::one(),
                t: Rational::zero(),
            }
        } else {
            Self {
                s: s / &t,
                t: Rational::one(),
            }
        }
    }

    /// The affine point `[x : 1]`.
    pub fn affine(x: Rational) -> Self {
        Self {
            s: x,
            t: Rational::one(),
        }
    }

    pub fn infinity() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn is_infinity(&self) -> bool {
        self.t.is_zero()
    }

    /// The linear form `t0*s - s0*t` vanishing exactly at this point.
    pub fn vanishing_form(&self) -> BinaryForm {
        BinaryForm::from_coeffs(vec![-self.s.clone(), self.t.clone()])
    }

    /// Image under the matrix `[[a, b], [c, d]]` acting on column vectors.
    pub fn transform(&self, m: &[[Rational; 2]; 2]) -> Self {
        Self::new(
            &m[0][0] * &self.s + &m[0][1] * &self.t,
            &m[1][0] * &self.s + &m[1][1] * &self.t,
        )
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", display_rational(&self.s), display_rational(&self.t))
    }
}

/// `sum_i c_i s^i t^(d-i)`, stored as the dehomogenization `f(s, 1)` together
/// with the degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    dehom: UniPoly,
}

impl BinaryForm {
    /// Panics if the polynomial degree exceeds the form degree.
    pub fn new(degree: u32, dehom: UniPoly) -> Self {
        assert!(
            dehom.degree().map_or(true, |d| d as u32 <= degree),
            "dehomogenization exceeds the form degree"
        );
        Self { degree, dehom }
    }

    /// `coeffs[i]` multiplies `s^i t^(d-i)`, with `d = coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let degree = coeffs.len().saturating_sub(1) as u32;
        Self::new(degree, UniPoly::new(coeffs))
    }

    pub fn zero(degree: u32) -> Self {
        Self::new(degree, UniPoly::zero())
    }

    pub fn constant(value: Rational) -> Self {
        Self::new(0, UniPoly::constant(value))
    }

    pub fn s() -> Self {
        Self::new(1, UniPoly::x())
    }

    pub fn t() -> Self {
        Self::new(1, UniPoly::one())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dehomogenized(&self) -> &UniPoly {
        &self.dehom
    }

    pub fn is_zero(&self) -> bool {
        self.dehom.is_zero()
    }

    /// Coefficient of `s^i t^(d-i)`.
    pub fn coeff(&self, i: u32) -> Rational {
        self.dehom.coeff(i as usize)
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..=self.degree).map(|i| self.coeff(i)).collect()
    }

    pub fn eval(&self, point: &P1Point) -> Rational {
        if point.is_infinity() {
            self.coeff(self.degree)
        } else {
            self.dehom.eval(point.s())
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.degree, self.dehom.scale(c))
    }

    /// Panics on a degree mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        Self::new(self.degree, &self.dehom + &other.dehom)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "subtracting forms of different degree");
        Self::new(self.degree, &self.dehom - &other.dehom)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.degree + other.degree, &self.dehom * &other.dehom)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self::new(self.degree * exp, self.dehom.pow(exp))
    }

    /// Multiplicity of the root `[1 : 0]`, i.e. the power of `t` dividing the form.
    pub fn t_valuation(&self) -> Option<u32> {
        self.dehom.degree().map(|d| self.degree - d as u32)
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.degree - divisor.degree));
        }
        if self.t_valuation()? < divisor.t_valuation()? {
            return None;
        }
        let q = self.dehom.div_exact(&divisor.dehom)?;
        Some(Self::new(self.degree - divisor.degree, q))
    }

    /// Largest `k` with `factor^k | self`; `None` for the zero form.
    pub fn valuation(&self, factor: &Self) -> Option<u32> {
        assert!(factor.degree > 0, "valuation needs a non-constant factor");
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut current = self.clone();
        while let Some(q) = current.div_exact(factor) {
            current = q;
            k += 1;
        }
        Some(k)
    }

    /// `f(a s + b t, c s + d t)` for the matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[Rational; 2]; 2]) -> Self {
        let new_s = BinaryForm::from_coeffs(vec![m[0][1].clone(), m[0][0].clone()]);
        let new_t = BinaryForm::from_coeffs(vec![m[1][1].clone(), m[1][0].clone()]);
        let mut out = BinaryForm::zero(self.degree);
        for i in 0..=self.degree {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let term = new_s.pow(i).mul(&new_t.pow(self.degree - i)).scale(&c);
            out = out.add(&term);
        }
        out
    }

    /// The form as a polynomial in a two-variable ring `(s, t)`.
    pub fn to_multipoly(&self, ring: &Arc<PolyRing>) -> MultiPoly {
        assert_eq!(ring.nvars(), 2, "binary forms live in two variables");
        MultiPoly::from_terms(
            ring,
            (0..=self.degree).map(|i| (vec![i, self.degree - i], self.coeff(i))),
        )
    }

    /// Reads a homogeneous (unweighted) polynomial in two variables. The
    /// degree of a zero polynomial is taken as `zero_degree`.
    pub fn from_multipoly(poly: &MultiPoly, zero_degree: u32) -> Option<Self> {
        if poly.nvars() != 2 {
            return None;
        }
        let degree = poly.total_degree().unwrap_or(zero_degree);
        let mut coeffs = vec![Rational::zero(); degree as usize + 1];
        for (exp, c) in poly.terms() {
            if exp[0] + exp[1] != degree {
                return None;
            }
            coeffs[exp[0] as usize] = c.clone();
        }
        Some(Self::new(degree, UniPoly::new(coeffs)))
    }

    /// The root of a linear form.
    pub fn linear_root(&self) -> Option<P1Point> {
        if self.degree != 1 || self.is_zero() {
            return None;
        }
        Some(P1Point::new(-self.coeff(0), self.coeff(1)))
    }

    /// Square-free decomposition over the algebraic closure: pairwise coprime
    /// square-free parts with multiplicities. The `t` power, if any, is its
    /// own part.
    pub fn squarefree_decomposition(&self) -> Vec<(BinaryForm, u32)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        if let Some(k) = self.t_valuation().filter(|&k| k > 0) {
            out.push((BinaryForm::t(), k));
        }
        for (part, m) in self.dehom.squarefree_decomposition() {
            let d = part.degree().unwrap_or(0) as u32;
            out.push((BinaryForm::new(d, part), m));
        }
        out
    }

    /// Multiplicities of the distinct roots over the algebraic closure,
    /// largest first.
    pub fn root_multiplicities(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .squarefree_decomposition()
            .into_iter()
            .flat_map(|(part, m)| std::iter::repeat(m).take(part.degree as usize))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.root_multiplicities().iter().all(|&m| m == 1)
    }

    /// Complete factorization over the rationals. Factors are primitive
    /// integer forms whose highest nonzero `s`-coefficient is positive,
    /// sorted by degree then coefficients; `t` sorts before `s`-monic
    /// linear forms of the same degree by coefficient order.
    pub fn factor(&self) -> Result<FactorList<BinaryForm>, FactorError> {
        let list = self.dehom.factor()?;
        let mut factors: Vec<(BinaryForm, u32)> = list
            .factors
            .into_iter()
            .map(|(g, m)| {
                let d = g.degree().unwrap_or(0) as u32;
                (BinaryForm::new(d, g), m)
            })
            .collect();
        if let Some(k) = self.t_valuation().filter(|&k| k > 0) {
            factors.push((BinaryForm::t(), k));
        }
        factors.sort_by(|(a, ma), (b, mb)| {
            a.degree
                .cmp(&b.degree)
                .then_with(|| a.coeffs().cmp(&b.coeffs()))
                .then_with(|| ma.cmp(mb))
        });
        Ok(FactorList {
            unit: list.unit,
            factors,
        })
    }

    /// Normalizes to a primitive integer form with positive leading
    /// `s`-coefficient (or positive `t` coefficient for multiples of `t^d`).
    pub fn primitive(&self) -> Self {
        let (_, prim) = self.dehom.primitive_integer();
        Self::new(self.degree, UniPoly::from_bigints(&prim))
    }
}

/// Product of a binary-form factor list.
pub fn expand_forms(list: &FactorList<BinaryForm>) -> BinaryForm {
    list.factors.iter().fold(
        BinaryForm::constant(list.unit.clone()),
        |acc, (g, m)| acc.mul(&g.pow(*m)),
    )
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            let j = self.degree - i;
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("s".to_string()),
                _ => parts.push(format!("s^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("t".to_string()),
                _ => parts.push(format!("t^{j}")),
            }
            if parts.is_empty() {
                write!(f, "{}", display_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", display_rational(&mag))?;
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn t_power_and_evaluation() {
        // s t^2
        let f = form(&[0, 1, 0, 0]);
        assert_eq!(f.t_valuation(), Some(2));
        assert_eq!(f.eval(&P1Point::infinity()), rat(0));
        assert_eq!(f.eval(&P1Point::affine(rat(3))), rat(3));
        assert_eq!(f.to_string(), "s*t^2");
    }

    #[test]
    fn substitution_swaps_variables() {
        // s^2 t -> t^2 s under s <-> t
        let f = form(&[0, 0, 1]).mul(&BinaryForm::t());
        let swap = [[rat(0), rat(1)], [rat(1), rat(0)]];
        assert_eq!(f.substitute(&swap), form(&[0, 1, 0, 0]));
    }

    #[test]
    fn valuation_counts_repeated_factors() {
        let l = form(&[1, 1]); // s + t
        let f = l.pow(3).mul(&BinaryForm::t());
        assert_eq!(f.valuation(&l), Some(3));
        assert_eq!(f.valuation(&BinaryForm::t()), Some(1));
        assert_eq!(f.valuation(&BinaryForm::s()), Some(0));
        assert_eq!(BinaryForm::zero(3).valuation(&l), None);
    }

    #[test]
    fn root_multiplicities_over_closure() {
        // (s^2 + t^2)^2 * s
        let f = form(&[1, 0, 1]).pow(2).mul(&BinaryForm::s());
        assert_eq!(f.root_multiplicities(), vec![2, 2, 1]);
    }

    #[test]
    fn linear_roots() {
        assert_eq!(BinaryForm::t().linear_root(), Some(P1Point::infinity()));
        assert_eq!(BinaryForm::s().linear_root(), Some(P1Point::affine(rat(0))));
        let p = P1Point::affine(rat(5));
        assert_eq!(p.vanishing_form().linear_root(), Some(p));
    }
}
