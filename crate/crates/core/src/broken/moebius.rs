//! Four points on a line: the `j`-invariant, and the affine map matching two
//! cubic divisors once the fourth point is sent to infinity.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::rational::{cbrt_exact, display_rational, sqrt_exact};
use crate::algebra::{BinaryForm, P1Point, Rational, UniPoly};

/// `j` of four distinct points, or the multiplicity pattern when points
/// collide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum J4 {
    Value(Rational),
    Degenerate(Vec<u32>),
}

impl fmt::Display for J4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            J4::Value(j) => write!(f, "{}", display_rational(j)),
            J4::Degenerate(pattern) => {
                let parts: Vec<String> = pattern.iter().map(u32::to_string).collect();
                write!(f, "degenerate {}", parts.join("+"))
            }
        }
    }
}

impl Serialize for J4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `j = 1728 * 4 I^3 / (4 I^3 - J^2)` from the classical invariants of the
/// quartic `a x^4 + b x^3 + c x^2 + d x + e`; for four distinct points
/// this equals `256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)` in any cross-ratio `l`.
pub fn j_invariant_4pts(quartic: &BinaryForm) -> J4 {
    assert!(quartic.degree() == 4 && !quartic.is_zero(), "expected a nonzero quartic");
    let pattern = quartic.root_multiplicities();
    if pattern.len() < 4 {
        return J4::Degenerate(pattern);
    }
    let [e, d, c, b, a] = [0, 1, 2, 3, 4].map(|i| quartic.coeff(i));
    let i = r(12) * &a * &e - r(3) * &b * &d + &c * &c;
    let j = r(72) * &a * &c * &e + r(9) * &b * &c * &d
        - r(27) * &a * &d * &d
        - r(27) * &e * &b * &b
        - r(2) * &c * &c * &c;
    let four_i3 = r(4) * &i * &i * &i;
    let disc = &four_i3 - &j * &j;
    debug_assert!(!disc.is_zero(), "distinct roots give a nonzero discriminant");
    J4::Value(r(1728) * four_i3 / disc)
}

/// [`j_invariant_4pts`] of the divisor of four points.
pub fn j_invariant_points(points: &[P1Point; 4]) -> J4 {
    let quartic = points
        .iter()
        .fold(BinaryForm::constant(Rational::one()), |acc, p| acc.mul(&p.vanishing_form()));
    j_invariant_4pts(&quartic)
}

/// `(c, P, Q)` with `f(v) = lc * ((v - c)^3 + P (v - c) + Q)`.
pub fn depress_cubic(f: &UniPoly) -> (Rational, Rational, Rational) {
    assert_eq!(f.degree(), Some(3), "expected a cubic");
    let [a0, a1, a2, a3] = [0, 1, 2, 3].map(|i| f.coeff(i));
    let centroid = -&a2 / (r(3) * &a3);
    let p = (r(3) * &a3 * &a1 - &a2 * &a2) / (r(3) * &a3 * &a3);
    let q = (r(2) * &a2 * &a2 * &a2 - r(9) * &a3 * &a2 * &a1 + r(27) * &a3 * &a3 * &a0)
        / (r(27) * &a3 * &a3 * &a3);
    (centroid, p, q)
}

/// The affine map `v -> alpha v + beta`, as the matrix `[[alpha, beta],
/// [0, 1]]` on `[v:1]`, carrying the roots of `f1` onto those of `f2` with
/// multiplicities. Only rational maps are found. When the depressed cubic
/// has `Q = 0` the map is determined up to `v -> -v` about the centroid and
/// the positive scale is taken.
pub fn moebius_to_fixing_infinity(f1: &UniPoly, f2: &UniPoly) -> Option<[[Rational; 2]; 2]> {
    let (c1, p1, q1) = depress_cubic(f1);
    let (c2, p2, q2) = depress_cubic(f2);
    if p1.is_zero() != p2.is_zero() || q1.is_zero() != q2.is_zero() {
        return None;
    }
    let alpha = match (p1.is_zero(), q1.is_zero()) {
        (false, false) => &q2 * &p1 / (&q1 * &p2),
        (true, false) => cbrt_exact(&(&q2 / &q1))?,
        (false, true) => sqrt_exact(&(&p2 / &p1))?,
        (true, true) => Rational::one(),
    };
    let a2 = &alpha * &alpha;
    if p2 != &a2 * &p1 || q2 != &a2 * &alpha * &q1 {
        return None;
    }
    let beta = &c2 - &alpha * &c1;
    Some([[alpha, beta], [Rational::zero(), Rational::one()]])
}
