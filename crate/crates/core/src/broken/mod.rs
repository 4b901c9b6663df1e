//! Components of broken surfaces: a plane cubic `C`, a line `l` and a point
//! `p` on `l` off `C`. The double cover of the plane branched along `C`,
//! fibered by the lines through `p`, is glued to another one along `l`.

mod component;
mod glue;
mod moebius;

pub use component::{
    branch_profile, classify_component, detect_nonnormal, gluing_fiber_type, interior_fibers,
    BranchProfile, ComponentError, ComponentReport, DivisorPoint, InteriorFiber, Normality,
};
pub use glue::{
    glue, inverse, projectively_equal, BrokenType, GlueError, GlueOutcome, GluingCertificate,
    MatchedPoint, Matrix2,
};
pub use moebius::{
    depress_cubic, j_invariant_4pts, j_invariant_points, moebius_to_fixing_infinity, J4,
};

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{common_denominator, integer_content};
use crate::algebra::{MultiPoly, PolyRing, Rational};

pub type Vec3 = [Rational; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn is_null(v: &Vec3) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn combine(a: &Rational, x: &Vec3, b: &Rational, y: &Vec3) -> Vec3 {
    [0, 1, 2].map(|i| a * &x[i] + b * &y[i])
}

/// Scales a nonzero vector to coprime integers with the first nonzero
/// entry positive.
pub fn normalize(v: &Vec3) -> Vec3 {
    let den = common_denominator(v.iter());
    let ints: Vec<_> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = integer_content(ints.iter());
    if g.is_zero() {
        return v.clone();
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    [0, 1, 2].map(|i| Rational::from_integer(&ints[i] / &g))
}

pub(crate) fn vec3_strings(v: &Vec3) -> [String; 3] {
    v.clone().map(|c| crate::algebra::rational::format_rational(&c))
}

pub(crate) fn ser_vec3<S: serde::Serializer>(v: &Vec3, s: S) -> Result<S::Ok, S::Error> {
    vec3_strings(v).serialize(s)
}

pub(crate) fn ser_opt_vec3<S: serde::Serializer>(v: &Option<Vec3>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(vec3_strings).serialize(s)
}

/// Branch data of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentData {
    pub cubic: MultiPoly,
    pub line: MultiPoly,
    pub point: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    WrongArity,
    NotCubic,
    NotLinear,
    ZeroPoint,
    PointOffLine,
    PointOnCurve,
    LineInCurve,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Violation::WrongArity => "cubic and line must be forms in three variables",
            Violation::NotCubic => "cubic is not a nonzero homogeneous cubic",
            Violation::NotLinear => "line is not a nonzero linear form",
            Violation::ZeroPoint => "point has all coordinates zero",
            Violation::PointOffLine => "point does not lie on the line",
            Violation::PointOnCurve => "point lies on the cubic",
            Violation::LineInCurve => "line is a component of the cubic",
        };
        f.write_str(text)
    }
}

fn is_form_of_degree(f: &MultiPoly, d: u32) -> bool {
    !f.is_zero() && f.terms().all(|(e, _)| e.iter().sum::<u32>() == d)
}

impl ComponentData {
    /// Coefficients `(l0, l1, l2)` of the line.
    pub fn line_coeffs(&self) -> Vec3 {
        [0, 1, 2].map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            self.line.coefficient(&e)
        })
    }

    pub fn cubic_at(&self, v: &Vec3) -> Rational {
        self.cubic.evaluate(v)
    }

    /// `C` restricted to the line through `x` and `y`, as a polynomial in
    /// `(a, b)` for the point `a x + b y`.
    pub(crate) fn cubic_on_span(&self, x: &Vec3, y: &Vec3) -> MultiPoly {
        let ring = PolyRing::new(["a", "b"]);
        let a = MultiPoly::var(&ring, 0);
        let b = MultiPoly::var(&ring, 1);
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| &a.scale(&x[i]) + &b.scale(&y[i]))
            .collect();
        self.cubic.compose(&images)
    }
}

/// Every violated invariant, in a fixed order.
pub fn validate_component(data: &ComponentData) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if data.cubic.nvars() != 3 || data.line.nvars() != 3 {
        return Err(vec![Violation::WrongArity]);
    }
    let cubic_ok = is_form_of_degree(&data.cubic, 3);
    let line_ok = is_form_of_degree(&data.line, 1);
    if !cubic_ok {
        out.push(Violation::NotCubic);
    }
    if !line_ok {
        out.push(Violation::NotLinear);
    }
    let p = &data.point;
    if is_null(p) {
        out.push(Violation::ZeroPoint);
    } else {
        if line_ok && !dot(&data.line_coeffs(), p).is_zero() {
            out.push(Violation::PointOffLine);
        }
        if cubic_ok && data.cubic_at(p).is_zero() {
            out.push(Violation::PointOnCurve);
        }
    }
    if cubic_ok && line_ok {
        let [k1, k2] = kernel_basis(&data.line_coeffs());
        if data.cubic_on_span(&k1, &k2).is_zero() {
            out.push(Violation::LineInCurve);
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn pivot(l: &Vec3) -> usize {
    l.iter().position(|c| !c.is_zero()).expect("nonzero line")
}

fn unit(i: usize) -> Vec3 {
    [0, 1, 2].map(|j| if i == j { Rational::one() } else { Rational::zero() })
}

pub(crate) fn kernel_basis(l: &Vec3) -> [Vec3; 2] {
    let i = pivot(l);
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    others
        .iter()
        .map(|&j| combine(&l[i], &unit(j), &-&l[j], &unit(i)))
        .collect::<Vec<_>>()
        .try_into()
        .expect("two kernel vectors")
}

/// Coordinates `X = s e1 + t e2 + u p` adapted to the data: `l` becomes
/// `s = 0`, `p` becomes `[0:0:1]`, and the lines through `p` are the points
/// `[s:t]`. On `l` the point `a p + b e2` has coordinate `[a:b]`, so `p` is
/// the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub p: Vec3,
}

impl Frame {
    /// Assumes the data validates.
    pub fn new(data: &ComponentData) -> Self {
        let l = data.line_coeffs();
        let p = data.point.clone();
        let e1 = unit(pivot(&l));
        let e2 = kernel_basis(&l)
            .into_iter()
            .find(|k| !is_null(&cross(k, &p)))
            .expect("the kernel of l is two-dimensional");
        Self { e1, e2, p }
    }

    pub fn point(&self, s: &Rational, t: &Rational, u: &Rational) -> Vec3 {
        [0, 1, 2].map(|i| s * &self.e1[i] + t * &self.e2[i] + u * &self.p[i])
    }

    /// The point of `l` with line coordinate `[a:b]`.
    pub fn point_on_line(&self, a: &Rational, b: &Rational) -> Vec3 {
        combine(a, &self.p, b, &self.e2)
    }

    /// The line through `p` indexed by `[s:t]`, as a linear form.
    pub fn member(&self, s: &Rational, t: &Rational) -> Vec3 {
        normalize(&cross(&self.p, &self.point(s, t, &Rational::zero())))
    }

    /// The line `u = alpha s + beta t` of the frame, as a linear form.
    pub fn graph_line(&self, alpha: &Rational, beta: &Rational) -> Vec3 {
        let x = self.point(&Rational::one(), &Rational::zero(), alpha);
        let y = self.point(&Rational::zero(), &Rational::one(), beta);
        normalize(&cross(&x, &y))
    }

    /// `C(s e1 + t e2 + u p)` in the ring `(s, t, u)`.
    pub fn cubic(&self, data: &ComponentData) -> MultiPoly {
        let ring: Arc<PolyRing> = PolyRing::new(["s", "t", "u"]);
        let [s, t, u]: [MultiPoly; 3] = MultiPoly::vars(&ring).try_into().expect("three variables");
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| &(&s.scale(&self.e1[i]) + &t.scale(&self.e2[i])) + &u.scale(&self.p[i]))
            .collect();
        data.cubic.compose(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    pub(crate) fn plane(terms: &[([u32; 3], i64)]) -> MultiPoly {
        let ring = PolyRing::new(["x", "y", "z"]);
        MultiPoly::from_terms(&ring, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    fn data(cubic: &[([u32; 3], i64)], line: &[([u32; 3], i64)], p: [i64; 3]) -> ComponentData {
        ComponentData {
            cubic: plane(cubic),
            line: plane(line),
            point: p.map(rat),
        }
    }

    #[test]
    fn validation_names_each_violation() {
        // y^2 z - x^3 - x z^2 - z^3, line y = 0
        let cubic = [([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], -1), ([0, 0, 3], -1)];
        let line = [([0, 1, 0], 1)];
        assert_eq!(validate_component(&data(&cubic, &line, [1, 0, 0])), Ok(()));
        assert_eq!(
            validate_component(&data(&cubic, &line, [1, 1, 0])),
            Err(vec![Violation::PointOffLine])
        );
        let on_curve = data(&cubic, &[([1, 0, 0], 1)], [0, 1, 0]);
        assert_eq!(validate_component(&on_curve), Err(vec![Violation::PointOnCurve]));
        let with_line = data(&[([0, 1, 2], 1), ([1, 1, 1], 1)], &line, [1, 0, 0]);
        assert_eq!(validate_component(&with_line), Err(vec![Violation::PointOnCurve, Violation::LineInCurve]));
        assert_eq!(
            validate_component(&data(&cubic, &line, [0, 0, 0])),
            Err(vec![Violation::ZeroPoint])
        );
    }

    #[test]
    fn frame_sends_l_to_s_zero() {
        let d = data(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)], &[([1, 0, 0], 1), ([0, 1, 0], -2)], [2, 1, 0]);
        let frame = Frame::new(&d);
        let l = d.line_coeffs();
        assert!(dot(&l, &frame.e2).is_zero());
        assert!(!dot(&l, &frame.e1).is_zero());
        let c = frame.cubic(&d);
        assert_eq!(c.coefficient(&[0, 0, 3]), d.cubic_at(&d.point));
        assert_eq!(normalize(&[rat(-2), rat(4), rat(0)]), [rat(1), rat(-2), rat(0)]);
    }
}
