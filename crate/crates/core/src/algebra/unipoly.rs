//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, display_rational, integer_content, Rational};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `f(x + shift)`.
    pub fn shift(&self, shift: &Rational) -> Self {
        let step = Self::new(vec![shift.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - d];
        for k in (0..n - d).rev() {
            let c = &rem[k + d] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: monic, pairwise coprime parts with
    /// their multiplicities. Constants are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
    }

    /// `(content, primitive)` with `self = content * primitive`, the primitive
    /// part having coprime integer coefficients and a positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = integer_content(&ints);
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// Rational roots with multiplicity, ascending.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        let mut roots: Vec<(Rational, u32)> = match self.factor() {
            Ok(list) => list
                .factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, m)| (-g.coeff(0) / g.coeff(1), *m))
                .collect(),
            Err(_) => Vec::new(),
        };
        roots.sort();
        roots
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{}", display_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", display_rational(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    #[test]
    fn division_and_gcd() {
        let f = UniPoly::from_integers(&[-1, 0, 1]); // x^2 - 1
        let g = UniPoly::from_integers(&[-1, 1]); // x - 1
        assert_eq!(f.div_exact(&g).unwrap(), UniPoly::from_integers(&[1, 1]));
        assert_eq!(f.gcd(&g), g);
        let (q, r) = UniPoly::from_integers(&[1, 0, 1]).div_rem(&g);
        assert_eq!(q, UniPoly::from_integers(&[1, 1]));
        assert_eq!(r, UniPoly::constant(rat(2)));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)^3 x
        let a = UniPoly::from_integers(&[-1, 1]);
        let b = UniPoly::from_integers(&[2, 1]);
        let f = &(&a.pow(2) * &b.pow(3)) * &UniPoly::x();
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(UniPoly::x(), 1), (a, 2), (b, 3)]);
    }

    #[test]
    fn shift_and_primitive() {
        let f = UniPoly::from_integers(&[0, 0, 1]);
        assert_eq!(f.shift(&rat(1)), UniPoly::from_integers(&[1, 2, 1]));
        let g = UniPoly::new(vec![ratio(-1, 2), ratio(3, 4)]);
        let (c, p) = g.primitive_integer();
        assert_eq!(c, ratio(1, 4));
        assert_eq!(p, vec![BigInt::from(-2), BigInt::from(3)]);
    }
}
