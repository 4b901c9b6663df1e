use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::component::{classify_component, ComponentError, ComponentReport};
use super::moebius::{moebius_to_fixing_infinity, J4};
use super::{normalize, vec3_strings, ComponentData, Frame, Vec3};
use crate::algebra::rational::{display_rational, format_rational};
use crate::algebra::{BinaryForm, Rational};
use crate::kodaira::KodairaType;

pub type Matrix2 = [[Rational; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BrokenType {
    BI,
    BII,
    BIII,
}

impl fmt::Display for BrokenType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrokenType::BI => "B_I",
            BrokenType::BII => "B_II",
            BrokenType::BIII => "B_III",
        })
    }
}

impl Serialize for BrokenType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlueError {
    #[error("component {index}: {error}")]
    Component { index: usize, error: ComponentError },
    #[error("gluing fibers {0} and {1} do not form a legal pair")]
    TypePair(KodairaType, KodairaType),
    #[error("special divisors differ: j = {0} against j = {1}")]
    JMismatch(J4, J4),
    #[error("no rational isomorphism of the lines matches the special divisors")]
    NoIsomorphism,
}

impl GlueError {
    /// Whether the inputs were valid components that simply do not glue.
    pub fn is_incompatibility(&self) -> bool {
        !matches!(self, GlueError::Component { .. })
    }
}

/// One point (or conjugate set of points) of `C1` meet `l1` and its image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchedPoint {
    pub from: String,
    pub to: String,
    pub multiplicity: u32,
}

/// The isomorphism `l1 -> l2`. On line `i` the coordinate `[a:b]` names the
/// point `a p_i + b e_i`; `tau` acts on column vectors `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingCertificate {
    #[serde(serialize_with = "ser_matrix")]
    pub tau: Matrix2,
    #[serde(serialize_with = "ser_frames")]
    pub line_frames: [(Vec3, Vec3); 2],
    pub matched_points: Vec<MatchedPoint>,
}

fn ser_matrix<S: Serializer>(m: &Matrix2, s: S) -> Result<S::Ok, S::Error> {
    m.clone()
        .map(|row| row.map(|c| format_rational(&c)))
        .serialize(s)
}

fn ser_frames<S: Serializer>(frames: &[(Vec3, Vec3); 2], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct LineFrame {
        p: [String; 3],
        e: [String; 3],
    }
    frames
        .iter()
        .map(|(p, e)| LineFrame {
            p: vec3_strings(p),
            e: vec3_strings(e),
        })
        .collect::<Vec<_>>()
        .serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlueOutcome {
    pub broken_type: BrokenType,
    pub gluing_fibers: [KodairaType; 2],
    pub j4: J4,
    pub certificate: GluingCertificate,
    #[serde(skip)]
    pub components: [ComponentReport; 2],
}

pub fn inverse(m: &Matrix2) -> Matrix2 {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    assert!(!det.is_zero(), "singular matrix");
    [
        [&m[1][1] / &det, -&m[0][1] / &det],
        [-&m[1][0] / &det, &m[0][0] / &det],
    ]
}

/// Whether two matrices agree up to a nonzero scalar.
pub fn projectively_equal(a: &Matrix2, b: &Matrix2) -> bool {
    let entries = |m: &Matrix2| [m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()];
    let (x, y) = (entries(a), entries(b));
    (0..4).all(|i| (0..4).all(|j| &x[i] * &y[j] == &x[j] * &y[i]))
}

fn broken_type(a: KodairaType, b: KodairaType) -> Option<BrokenType> {
    use KodairaType::*;
    match (a, b) {
        (IStar(0), IStar(0)) => Some(BrokenType::BI),
        (IStar(n), N1) | (N1, IStar(n)) if n >= 1 => Some(BrokenType::BII),
        (N1, N1) => Some(BrokenType::BIII),
        _ => None,
    }
}

fn proportional(f: &BinaryForm, g: &BinaryForm) -> bool {
    f.degree() == g.degree()
        && (0..=f.degree()).all(|i| (0..=f.degree()).all(|j| f.coeff(i) * g.coeff(j) == f.coeff(j) * g.coeff(i)))
}

fn describe(frame: &Frame, factor: &BinaryForm) -> String {
    match factor.linear_root() {
        Some(pt) => {
            let v = normalize(&frame.point_on_line(pt.s(), pt.t()));
            format!("[{}]", v.map(|c| display_rational(&c)).join(":"))
        }
        None => format!("roots of {} in [a:b]", factor.primitive()),
    }
}

fn matched_points(frames: [&Frame; 2], divisor: &BinaryForm, tau: &Matrix2) -> Vec<MatchedPoint> {
    let back = inverse(tau);
    let mut out = vec![MatchedPoint {
        from: describe(frames[0], &BinaryForm::t()),
        to: describe(frames[1], &BinaryForm::t()),
        multiplicity: 1,
    }];
    for (factor, m) in divisor.factor().expect("nonzero divisor").factors {
        let image = factor.substitute(&back).primitive();
        out.push(MatchedPoint {
            from: describe(frames[0], &factor),
            to: describe(frames[1], &image),
            multiplicity: m,
        });
    }
    out
}

/// Glues two components along their lines, sending `p1` to `p2` and the
/// special divisor of the first onto that of the second.
pub fn glue(c1: &ComponentData, c2: &ComponentData) -> Result<GlueOutcome, GlueError> {
    let classify = |index: usize, c: &ComponentData| {
        classify_component(c).map_err(|error| GlueError::Component { index, error })
    };
    let r1 = classify(1, c1)?;
    let r2 = classify(2, c2)?;
    let kind = broken_type(r1.gluing_type, r2.gluing_type)
        .ok_or(GlueError::TypePair(r1.gluing_type, r2.gluing_type))?;
    if r1.j4 != r2.j4 {
        return Err(GlueError::JMismatch(r1.j4.clone(), r2.j4.clone()));
    }
    let (d1, d2) = (&r1.profile.divisor, &r2.profile.divisor);
    let tau = moebius_to_fixing_infinity(d1.dehomogenized(), d2.dehomogenized())
        .ok_or(GlueError::NoIsomorphism)?;
    if !proportional(&d2.substitute(&tau), d1) {
        return Err(GlueError::NoIsomorphism);
    }
    let certificate = GluingCertificate {
        matched_points: matched_points([&r1.frame, &r2.frame], d1, &tau),
        line_frames: [
            (r1.frame.p.clone(), r1.frame.e2.clone()),
            (r2.frame.p.clone(), r2.frame.e2.clone()),
        ],
        tau,
    };
    Ok(GlueOutcome {
        broken_type: kind,
        gluing_fibers: [r1.gluing_type, r2.gluing_type],
        j4: r1.j4.clone(),
        certificate,
        components: [r1, r2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::{MultiPoly, PolyRing};

    fn plane(terms: &[([u32; 3], i64)]) -> MultiPoly {
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

    fn top() -> ComponentData {
        data(&[([2, 1, 0], 1)], &[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], -1)], [1, 1, 2])
    }

    fn bottom() -> ComponentData {
        data(
            &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)],
            &[([1, 0, 0], 1), ([0, 1, 0], -2)],
            [2, 1, 1],
        )
    }

    /// `(x - r0 z)(x - r1 z)(x - r2 z) + y^3 + y z^2` with `l: y = 0` and
    /// `p = [1:0:0]`; the divisor on `l` sits at `x / z = r_i`.
    fn three_points(roots: [i64; 3]) -> ComponentData {
        let [a, b, c] = roots;
        let cubic = [
            ([3, 0, 0], 1),
            ([2, 0, 1], -(a + b + c)),
            ([1, 0, 2], a * b + b * c + a * c),
            ([0, 0, 3], -a * b * c),
            ([0, 3, 0], 1),
            ([0, 1, 2], 1),
        ];
        data(&cubic, &[([0, 1, 0], 1)], [1, 0, 0])
    }

    #[test]
    fn example_pair_glues_as_b_ii() {
        let out = glue(&top(), &bottom()).unwrap();
        assert_eq!(out.broken_type, BrokenType::BII);
        assert_eq!(out.gluing_fibers, [KodairaType::N1, KodairaType::IStar(2)]);
        let back = glue(&bottom(), &top()).unwrap();
        assert_eq!(back.broken_type, BrokenType::BII);
        assert!(projectively_equal(&back.certificate.tau, &inverse(&out.certificate.tau)));
    }

    #[test]
    fn identical_components_glue_by_identity() {
        let c = three_points([0, 1, 3]);
        let out = glue(&c, &c).unwrap();
        assert_eq!(out.broken_type, BrokenType::BI);
        let id = [[rat(1), rat(0)], [rat(0), rat(1)]];
        assert!(projectively_equal(&out.certificate.tau, &id));
        let c = top();
        let out = glue(&c, &c).unwrap();
        assert_eq!(out.broken_type, BrokenType::BIII);
        assert!(projectively_equal(&out.certificate.tau, &id));
    }

    #[test]
    fn mismatched_j_is_incompatible() {
        let err = glue(&three_points([0, 1, 3]), &three_points([0, 1, -1])).unwrap_err();
        assert_eq!(err, GlueError::JMismatch(J4::Value(Rational::new(21952.into(), 9.into())), J4::Value(rat(1728))));
        assert!(err.is_incompatibility());
    }

    #[test]
    fn illegal_type_pair() {
        let err = glue(&three_points([0, 1, 3]), &bottom()).unwrap_err();
        assert_eq!(err, GlueError::TypePair(KodairaType::IStar(0), KodairaType::IStar(2)));
    }

    #[test]
    fn moved_divisor_glues() {
        // {0, 1, 3} and {2, 4, 8} differ by v -> 2v + 2.
        let out = glue(&three_points([0, 1, 3]), &three_points([2, 4, 8])).unwrap();
        assert_eq!(out.broken_type, BrokenType::BI);
        assert_eq!(out.certificate.matched_points.len(), 4);
    }
}
