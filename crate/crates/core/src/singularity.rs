//! Plane curve germs at rational points: multiplicity, Milnor number,
//! ADE recognition and contact orders with lines.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::field::{poly_derivative, poly_gcd, trim, FieldElem};
use crate::algebra::jet::{stabilized_jet_dim_over, Terms};
use crate::algebra::{MultiPoly, PolyRing, Rational, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonAdeReason {
    /// Multiplicity four or more.
    HighMultiplicity(u32),
    /// The Jacobian quotient never stabilized.
    NonIsolated,
    /// Triple point with a cubed tangent line and Milnor number above 8.
    CubicConeMilnor(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityType {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    NonAde(NonAdeReason),
}

impl SingularityType {
    pub fn is_ade(self) -> bool {
        !matches!(self, SingularityType::NonAde(_))
    }

    /// Smooth or `A_n`.
    pub fn is_at_worst_a(self) -> bool {
        matches!(self, SingularityType::Smooth | SingularityType::A(_))
    }

    /// Number of local branches, read off the type.
    pub fn branches(self) -> Option<u32> {
        use SingularityType::*;
        match self {
            Smooth => Some(1),
            A(n) => Some(if n % 2 == 1 { 2 } else { 1 }),
            D(n) => Some(if n % 2 == 0 { 3 } else { 2 }),
            E6 | E8 => Some(1),
            E7 => Some(2),
            NonAde(_) => None,
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SingularityType::*;
        match self {
            Smooth => write!(f, "smooth"),
            A(n) => write!(f, "A{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => write!(f, "E6"),
            E7 => write!(f, "E7"),
            E8 => write!(f, "E8"),
            NonAde(NonAdeReason::HighMultiplicity(m)) => write!(f, "non-ADE(multiplicity {m})"),
            NonAde(NonAdeReason::NonIsolated) => write!(f, "non-ADE(non-isolated)"),
            NonAde(NonAdeReason::CubicConeMilnor(mu)) => write!(f, "non-ADE(triple point, mu {mu})"),
        }
    }
}

impl Serialize for SingularityType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermReport {
    pub multiplicity: u32,
    /// Root multiplicities of the tangent cone over the algebraic closure,
    /// largest first.
    pub tangent_cone_pattern: Vec<u32>,
    /// `None` when the Jacobian quotient did not stabilize.
    pub milnor: Option<u32>,
    #[serde(rename = "type")]
    pub kind: SingularityType,
    pub delta: Option<u32>,
    pub branches: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("expected a nonzero polynomial in two variables")]
    NotPlaneCurve,
}

/// A plane germ at the origin: exponent pairs to nonzero coefficients.
pub type Germ<E> = BTreeMap<[u32; 2], E>;

/// `f(x + a, y + b)`, moving `(a, b)` to the origin.
pub fn translate_to_origin(f: &MultiPoly, pt: &[Rational; 2]) -> MultiPoly {
    let ring = f.ring();
    let shifted: Vec<MultiPoly> = (0..2)
        .map(|i| &MultiPoly::var(ring, i) + &MultiPoly::constant(ring, pt[i].clone()))
        .collect();
    f.compose(&shifted)
}

/// Powers `(z + a)^k` for `k <= n`, as dense coefficient vectors.
fn shifted_powers<E: FieldElem>(a: &E, n: u32) -> Vec<Vec<E>> {
    let one = a.one_like();
    let mut out = vec![vec![one.clone()]];
    for _ in 0..n {
        let prev = out.last().expect("nonempty");
        let mut next = vec![a.zero_like(); prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] = next[i].plus(&c.times(a));
            next[i + 1] = next[i + 1].plus(c);
        }
        out.push(next);
    }
    out
}

/// The germ of a rational plane curve at a point with coordinates in any
/// field containing the rationals.
pub fn germ_at<E: FieldElem>(f: &MultiPoly, pt: &[E; 2]) -> Germ<E> {
    assert_eq!(f.nvars(), 2, "plane curve");
    let dx = f.degree_in(0).unwrap_or(0);
    let dy = f.degree_in(1).unwrap_or(0);
    let px = shifted_powers(&pt[0], dx);
    let py = shifted_powers(&pt[1], dy);
    let mut out: Germ<E> = BTreeMap::new();
    for (exp, c) in f.terms() {
        let c = pt[0].embed(c);
        for (i, a) in px[exp[0] as usize].iter().enumerate() {
            let ca = c.times(a);
            if ca.vanishes() {
                continue;
            }
            for (j, b) in py[exp[1] as usize].iter().enumerate() {
                let key = [i as u32, j as u32];
                let term = ca.times(b);
                let sum = match out.get(&key) {
                    Some(old) => old.plus(&term),
                    None => term,
                };
                if sum.vanishes() {
                    out.remove(&key);
                } else {
                    out.insert(key, sum);
                }
            }
        }
    }
    out
}

fn germ_from_poly(g: &MultiPoly) -> Germ<Rational> {
    g.terms()
        .map(|(e, c)| ([e[0], e[1]], c.clone()))
        .collect()
}

fn germ_order<E>(g: &Germ<E>) -> Option<u32> {
    g.keys().map(|e| e[0] + e[1]).min()
}

fn germ_partial<E: FieldElem>(g: &Germ<E>, var: usize) -> Terms<E> {
    g.iter()
        .filter(|(e, _)| e[var] > 0)
        .map(|(e, c)| {
            let mut d = e.to_vec();
            d[var] -= 1;
            (d, c.times(&c.embed(&Rational::from_integer(e[var].into()))))
        })
        .collect()
}

fn check_plane(f: &MultiPoly) -> Result<(), GermError> {
    if f.nvars() != 2 || f.is_zero() {
        Err(GermError::NotPlaneCurve)
    } else {
        Ok(())
    }
}

/// Order of vanishing of `f` at `pt`; zero off the curve.
///
/// Panics if `f` is zero or not in two variables.
pub fn multiplicity_at(f: &MultiPoly, pt: &[Rational; 2]) -> u32 {
    check_plane(f).expect("plane curve");
    translate_to_origin(f, pt).order().expect("nonzero")
}

/// Milnor number at `pt`, `None` for a non-isolated singularity.
pub fn milnor_number(f: &MultiPoly, pt: &[Rational; 2]) -> Option<u32> {
    germ_milnor(&germ_from_poly(&translate_to_origin(f, pt)))
}

fn germ_milnor<E: FieldElem>(g: &Germ<E>) -> Option<u32> {
    stabilized_jet_dim_over(&[germ_partial(g, 0), germ_partial(g, 1)], 2)
        .ok()
        .map(|d| d as u32)
}

/// Root multiplicities of a binary form `sum c_i x^i y^(m-i)` over the
/// algebraic closure, largest first. Uses that `deg g_(k-1) - deg g_k`
/// counts roots of multiplicity at least `k`, where `g_k = gcd(g_(k-1), g_(k-1)')`.
fn form_pattern<E: FieldElem>(coeffs: &[E], m: u32) -> Vec<u32> {
    let p = trim(coeffs.to_vec());
    let mut pattern = Vec::new();
    let at_infinity = m - (p.len() as u32 - 1);
    if at_infinity > 0 {
        pattern.push(at_infinity);
    }
    let mut at_least = Vec::new();
    let mut g = p;
    while g.len() > 1 {
        let next = poly_gcd(&g, &poly_derivative(&g));
        at_least.push(g.len() - next.len());
        g = next;
    }
    for k in 0..at_least.len() {
        let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        pattern.extend(std::iter::repeat(k as u32 + 1).take(exactly));
    }
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    pattern
}

/// Recognizes a germ at the origin among the ADE normal forms.
pub fn classify_germ<E: FieldElem>(g: &Germ<E>) -> Result<GermReport, GermError> {
    let m = germ_order(g).ok_or(GermError::NotPlaneCurve)?;
    if m == 0 {
        return Err(GermError::NotOnCurve);
    }
    let some = g.values().next().expect("nonzero germ");
    let cone: Vec<E> = (0..=m)
        .map(|i| g.get(&[i, m - i]).cloned().unwrap_or_else(|| some.zero_like()))
        .collect();
    let pattern = form_pattern(&cone, m);
    let milnor = if m == 1 { Some(0) } else { germ_milnor(g) };
    let kind = match (m, milnor) {
        (1, _) => SingularityType::Smooth,
        (_, None) => SingularityType::NonAde(NonAdeReason::NonIsolated),
        (2, Some(mu)) => SingularityType::A(mu),
        (3, Some(mu)) if pattern.len() >= 2 => SingularityType::D(mu),
        (3, Some(6)) => SingularityType::E6,
        (3, Some(7)) => SingularityType::E7,
        (3, Some(8)) => SingularityType::E8,
        (3, Some(mu)) => SingularityType::NonAde(NonAdeReason::CubicConeMilnor(mu)),
        _ => SingularityType::NonAde(NonAdeReason::HighMultiplicity(m)),
    };
    let branches = kind.branches();
    let delta = match (milnor, branches) {
        (Some(mu), Some(r)) => Some((mu + r - 1) / 2),
        _ => None,
    };
    Ok(GermReport {
        multiplicity: m,
        tangent_cone_pattern: pattern,
        milnor,
        kind,
        delta,
        branches,
    })
}

/// Recognizes the germ of `f` at `pt` among the ADE normal forms.
pub fn classify_singularity(f: &MultiPoly, pt: &[Rational; 2]) -> Result<GermReport, GermError> {
    check_plane(f)?;
    classify_germ(&germ_from_poly(&translate_to_origin(f, pt)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contact {
    Finite(u32),
    Infinite,
}

/// Converts a polynomial in a single variable.
pub(crate) fn to_unipoly(p: &MultiPoly) -> UniPoly {
    assert_eq!(p.nvars(), 1, "expected a univariate polynomial");
    let n = p.degree_in(0).map_or(0, |d| d as usize + 1);
    let mut coeffs = vec![Rational::zero(); n];
    for (exp, c) in p.terms() {
        coeffs[exp[0] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

/// Order of `f` along the affine line `line` (degree one in two variables)
/// at `pt`, which must lie on the line.
pub fn contact_multiplicity(f: &MultiPoly, line: &MultiPoly, pt: &[Rational; 2]) -> Contact {
    let a = line.coefficient(&[1, 0]);
    let b = line.coefficient(&[0, 1]);
    assert!(
        !(a.is_zero() && b.is_zero()),
        "line must have a linear part"
    );
    assert!(line.evaluate(pt).is_zero(), "point must lie on the line");
    let ring = PolyRing::new(["lambda"]);
    let lambda = MultiPoly::var(&ring, 0);
    let x = &MultiPoly::constant(&ring, pt[0].clone()) + &lambda.scale(&-b);
    let y = &MultiPoly::constant(&ring, pt[1].clone()) + &lambda.scale(&a);
    let restricted = to_unipoly(&f.compose(&[x, y]));
    match restricted.order_at_zero() {
        Some(k) => Contact::Finite(k as u32),
        None => Contact::Infinite,
    }
}

/// Convenience: the point `(0, 0)`.
pub fn origin() -> [Rational; 2] {
    [Rational::zero(), Rational::zero()]
}

/// Convenience: `(x, y)` as rationals.
pub fn point(x: Rational, y: Rational) -> [Rational; 2] {
    [x, y]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn xy() -> (MultiPoly, MultiPoly) {
        let ring = PolyRing::new(["x", "y"]);
        (MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1))
    }

    #[test]
    fn multiplicities() {
        let (x, y) = xy();
        assert_eq!(multiplicity_at(&(&x.pow(2) + &y.pow(3)), &origin()), 2);
        assert_eq!(multiplicity_at(&(&x + &y), &origin()), 1);
        assert_eq!(multiplicity_at(&(&(&x * &y) * &(&x + &y)), &origin()), 3);
        assert_eq!(multiplicity_at(&(&x + &y), &point(rat(1), rat(0))), 0);
    }

    #[test]
    fn milnor_numbers() {
        let (x, y) = xy();
        assert_eq!(milnor_number(&(&x.pow(2) + &y.pow(3)), &origin()), Some(2));
        assert_eq!(milnor_number(&(&x.pow(3) + &y.pow(5)), &origin()), Some(8));
        let d4 = &y * &(&x.pow(2) + &y.pow(2));
        assert_eq!(milnor_number(&d4, &origin()), Some(4));
        assert_eq!(milnor_number(&(&x.pow(2) * &y), &origin()), None);
    }

    #[test]
    fn recognizes_types() {
        let (x, y) = xy();
        let a2 = classify_singularity(&(&x.pow(2) + &y.pow(3)), &origin()).unwrap();
        assert_eq!((a2.kind, a2.delta), (SingularityType::A(2), Some(1)));
        let e7 = classify_singularity(&(&x * &(&x.pow(2) + &y.pow(3))), &origin()).unwrap();
        assert_eq!((e7.kind, e7.delta), (SingularityType::E7, Some(4)));
        let d4 = classify_singularity(&(&(&x * &y) * &(&x + &y)), &origin()).unwrap();
        assert_eq!((d4.kind, d4.delta), (SingularityType::D(4), Some(3)));
        assert_eq!(d4.tangent_cone_pattern, vec![1, 1, 1]);
        let quad = classify_singularity(&(&x.pow(4) + &y.pow(4)), &origin()).unwrap();
        assert_eq!(quad.kind, SingularityType::NonAde(NonAdeReason::HighMultiplicity(4)));
        assert_eq!(
            classify_singularity(&(&x + &y), &point(rat(1), rat(1))),
            Err(GermError::NotOnCurve)
        );
    }

    #[test]
    fn cubed_cone_beyond_e8() {
        let (x, y) = xy();
        let germ = classify_singularity(&(&x.pow(3) + &y.pow(6)), &origin()).unwrap();
        assert_eq!(germ.kind, SingularityType::NonAde(NonAdeReason::CubicConeMilnor(10)));
    }

    #[test]
    fn contact_orders() {
        let (x, y) = xy();
        let parabola = &y - &x.pow(2);
        assert_eq!(contact_multiplicity(&parabola, &y, &origin()), Contact::Finite(2));
        assert_eq!(contact_multiplicity(&parabola, &x, &origin()), Contact::Finite(1));
        let cusp = &x.pow(2) + &y.pow(3);
        assert_eq!(contact_multiplicity(&cusp, &x, &origin()), Contact::Finite(3));
        assert_eq!(contact_multiplicity(&(&x * &y), &x, &origin()), Contact::Infinite);
    }
}
