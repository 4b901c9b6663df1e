use serde::Serialize;

use num_traits::Zero;

use super::moebius::{j_invariant_4pts, J4};
use super::{ser_opt_vec3, validate_component, ComponentData, Frame, Vec3, Violation};
use crate::algebra::{BinaryForm, MultiPoly, P1Point, Rational};
use crate::kodaira::KodairaType;
use crate::pencil::{LineLocus, TrigonalPencil};
use crate::singularity::{classify_singularity, point, GermReport, SingularityType};
use crate::weierstrass::{classify_all, FactorFiber, WeierstrassModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComponentError {
    #[error("invalid component: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("unsupported degeneration: {0}")]
    Unsupported(String),
    #[error("gluing profile not realizable: {0}")]
    NotRealizable(String),
    #[error("interior fiber on {line}: {detail}")]
    InvalidInterior { line: LineLocus, detail: String },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A point of the special divisor on `l`, with plane coordinates when it is
/// rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorPoint {
    #[serde(serialize_with = "ser_opt_vec3")]
    pub point: Option<Vec3>,
    pub multiplicity: u32,
}

/// How `C` meets the gluing line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchProfile {
    /// `C(a p + b e2)` as a binary cubic in `(a, b)`.
    #[serde(serialize_with = "ser_display")]
    pub divisor: BinaryForm,
    pub pattern: Vec<u32>,
    pub contact: u32,
    /// Germ of `C` at the non-transverse point, if any, for reduced `C`.
    pub germ: Option<GermReport>,
    pub points: Vec<DivisorPoint>,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normality {
    Normal,
    /// `C = s^2 r`; the `N1` fiber is the line through `p` and `r` meet `s`.
    NonNormal {
        #[serde(serialize_with = "super::ser_vec3")]
        double_line: Vec3,
        #[serde(serialize_with = "super::ser_vec3")]
        simple_line: Vec3,
        #[serde(serialize_with = "super::ser_vec3")]
        n1_line: Vec3,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteriorFiber {
    /// The member `[s:t]` of the pencil of lines through `p`.
    pub member: LineLocus,
    /// Its equation in the plane, for rational members.
    #[serde(serialize_with = "ser_opt_vec3")]
    pub line: Option<Vec3>,
    pub degree: u32,
    pub disc_mult: u32,
    pub contact: u32,
    pub singularity: Option<SingularityType>,
    pub kodaira: KodairaType,
    pub oracle_type: KodairaType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub normal: bool,
    pub normality: Normality,
    pub gluing_type: KodairaType,
    /// The gluing fiber from the valuation table, for normal components.
    pub gluing_oracle_type: Option<KodairaType>,
    pub profile: BranchProfile,
    /// `p` with multiplicity one followed by `C` meet `l`.
    pub special_divisor: Vec<DivisorPoint>,
    pub j4: J4,
    pub interior_fibers: Vec<InteriorFiber>,
    /// `e(gluing) + sum e(interior)`, for normal components.
    pub euler_total: Option<u32>,
    #[serde(skip)]
    pub frame: Frame,
}

struct Prepared {
    frame: Frame,
    pencil: TrigonalPencil,
}

fn prepare(data: &ComponentData) -> Result<Prepared, ComponentError> {
    validate_component(data).map_err(ComponentError::Invalid)?;
    let frame = Frame::new(data);
    let pencil = TrigonalPencil::new(&frame.cubic(data), 1).expect("validated cubic with C(p) != 0");
    Ok(Prepared { frame, pencil })
}

/// The member `s = 0` of the pencil.
fn gluing_member() -> P1Point {
    P1Point::affine(Rational::zero())
}

fn profile_of(prep: &Prepared) -> BranchProfile {
    let divisor = BinaryForm::from_coeffs((0..4).map(|k| prep.pencil.coeff(k).coeff(0)).collect());
    let pattern = divisor.root_multiplicities();
    let contact = pattern.first().copied().unwrap_or(1);
    let roots = divisor.dehomogenized().rational_roots();
    let mut points: Vec<DivisorPoint> = roots
        .iter()
        .map(|(a, m)| DivisorPoint {
            point: Some(super::normalize(&prep.frame.point_on_line(a, &Rational::from_integer(1.into())))),
            multiplicity: *m,
        })
        .collect();
    let found: u32 = points.iter().map(|p| p.multiplicity).sum();
    points.extend((found..3).map(|_| DivisorPoint { point: None, multiplicity: 1 }));
    points.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity));
    // A repeated root of a rational cubic is rational. On a non-reduced
    // cubic the germ there is not isolated and is left out.
    let reduced = !prep.pencil.discriminant().is_zero();
    let germ = roots.iter().find(|(_, m)| reduced && *m >= 2).map(|(a, _)| {
        classify_singularity(&prep.pencil.chart(true), &point(Rational::zero(), a.clone()))
            .expect("the contact point lies on the curve")
    });
    BranchProfile {
        divisor,
        pattern,
        contact,
        germ,
        points,
    }
}

pub fn branch_profile(data: &ComponentData) -> Result<BranchProfile, ComponentError> {
    Ok(profile_of(&prepare(data)?))
}

/// Gluing fiber of a normal component: transverse at three points gives
/// `I0*`, and contact two at an `A_{n-1}` point (smooth for `n = 1`) plus a
/// transverse point gives `In*`.
pub fn gluing_fiber_type(profile: &BranchProfile) -> Result<KodairaType, ComponentError> {
    let pattern = || format!("{:?}", profile.pattern);
    if !profile.pattern.contains(&1) {
        return Err(ComponentError::NotRealizable(format!(
            "no transverse point on the gluing line (contact pattern {})",
            pattern()
        )));
    }
    if profile.contact == 1 {
        return Ok(KodairaType::IStar(0));
    }
    let kind = profile.germ.as_ref().map(|g| g.kind);
    match kind {
        Some(SingularityType::Smooth) => Ok(KodairaType::IStar(1)),
        Some(SingularityType::A(m)) => Ok(KodairaType::IStar(m + 1)),
        other => Err(ComponentError::NotRealizable(format!(
            "contact {} at a {} point",
            profile.contact,
            other.map_or("unknown".to_string(), |k| k.to_string())
        ))),
    }
}

fn normality_of(prep: &Prepared) -> Result<Normality, ComponentError> {
    let pencil = &prep.pencil;
    if !pencil.discriminant().is_zero() {
        return Ok(Normality::Normal);
    }
    let (p, q) = pencil.depressed();
    if p.is_zero() {
        // Then q vanishes too, and C is a triple line.
        return Err(ComponentError::Unsupported("the cubic is a triple line".into()));
    }
    let r = |n: i64| Rational::from_integer(n.into());
    // u^3 + p u + q = (u - d)^2 (u + 2d) with p = -3 d^2, q = 2 d^3.
    let d = q
        .scale(&r(-3))
        .div_exact(&p.scale(&r(2)))
        .expect("a double root is a linear form");
    let shift = pencil.coeff(2).scale(&(r(3) * pencil.leading()).recip());
    let double = d.sub(&shift);
    let simple = d.scale(&r(-2)).sub(&shift);
    let ring = crate::algebra::PolyRing::new(["s", "t", "u"]);
    let as_graph = |f: &BinaryForm| -> MultiPoly {
        let [s, t, u]: [MultiPoly; 3] = MultiPoly::vars(&ring).try_into().expect("three variables");
        &(&u - &s.scale(&f.coeff(1))) - &t.scale(&f.coeff(0))
    };
    let rebuilt = (&as_graph(&double).pow(2) * &as_graph(&simple)).scale(&pencil.leading());
    let framed = MultiPoly::from_terms(
        &ring,
        (0..4).flat_map(|k| {
            let a = pencil.coeff(k);
            (0..=a.degree()).map(move |i| (vec![i, a.degree() - i, k as u32], a.coeff(i)))
        }),
    );
    assert_eq!(rebuilt, framed, "non-reduced cubic splits as a double line and a line");
    let root = d.linear_root().expect("d is a nonzero linear form");
    let frame = &prep.frame;
    Ok(Normality::NonNormal {
        double_line: frame.graph_line(&double.coeff(1), &double.coeff(0)),
        simple_line: frame.graph_line(&simple.coeff(1), &simple.coeff(0)),
        n1_line: frame.member(root.s(), root.t()),
    })
}

pub fn detect_nonnormal(data: &ComponentData) -> Result<Normality, ComponentError> {
    normality_of(&prepare(data)?)
}

/// The valuation table applied to the pencil twisted along `l`.
fn oracle_fibers(pencil: &TrigonalPencil) -> Vec<FactorFiber> {
    let (p, q) = pencil.depressed();
    let model = WeierstrassModel::new(p, q).expect("normal component");
    classify_all(&model.twisted(&BinaryForm::s())).expect("twisted model of a normal component is minimal")
}

fn interior_of(prep: &Prepared, oracle: &[FactorFiber]) -> Result<Vec<InteriorFiber>, ComponentError> {
    let pencil = &prep.pencil;
    let disc = pencil.discriminant();
    let gluing = LineLocus::Point(gluing_member());
    let factors = disc.factor().expect("normal component").factors;
    let mut out = Vec::new();
    for (factor, mult) in factors {
        let member = LineLocus::from_factor(&factor);
        if member == gluing {
            continue;
        }
        let invalid = |detail: String| ComponentError::InvalidInterior {
            line: member.clone(),
            detail,
        };
        let row = pencil.fiber_row(&member).map_err(|e| invalid(e.to_string()))?;
        if !row.kodaira.is_a_type() {
            return Err(invalid(format!("fiber of type {} away from the gluing line", row.kodaira)));
        }
        let oracle_type = oracle
            .iter()
            .find(|f| f.locus.form() == member.form())
            .map(|f| f.kodaira)
            .expect("the oracle covers every factor");
        let line = match &member {
            LineLocus::Point(pt) => Some(prep.frame.member(pt.s(), pt.t())),
            LineLocus::Factor(_) => None,
        };
        out.push(InteriorFiber {
            degree: member.degree(),
            line,
            member,
            disc_mult: mult,
            contact: row.contact,
            singularity: row.germ.map(|g| g.kind),
            kodaira: row.kodaira,
            oracle_type,
        });
    }
    Ok(out)
}

/// Non-transverse lines through `p` other than `l`, for a normal component.
pub fn interior_fibers(data: &ComponentData) -> Result<Vec<InteriorFiber>, ComponentError> {
    let prep = prepare(data)?;
    if normality_of(&prep)? != Normality::Normal {
        return Err(ComponentError::Unsupported(
            "interior fibers are only computed for normal components".into(),
        ));
    }
    interior_of(&prep, &oracle_fibers(&prep.pencil))
}

pub fn classify_component(data: &ComponentData) -> Result<ComponentReport, ComponentError> {
    let prep = prepare(data)?;
    let normality = normality_of(&prep)?;
    let profile = profile_of(&prep);
    let quartic = profile.divisor.mul(&BinaryForm::t());
    let j4 = j_invariant_4pts(&quartic);
    let mut special_divisor = vec![DivisorPoint {
        point: Some(super::normalize(&prep.frame.p)),
        multiplicity: 1,
    }];
    special_divisor.extend(profile.points.iter().cloned());
    let (gluing_type, gluing_oracle_type, interior_fibers, euler_total) = match normality {
        Normality::Normal => {
            let gluing = gluing_fiber_type(&profile)?;
            let oracle = oracle_fibers(&prep.pencil);
            let gluing_oracle = oracle
                .iter()
                .find(|f| f.locus == LineLocus::Point(gluing_member()))
                .map(|f| f.kodaira);
            let interior = interior_of(&prep, &oracle)?;
            let total = gluing.euler().expect("star fiber")
                + interior
                    .iter()
                    .map(|f| f.kodaira.euler().expect("Weierstrass type") * f.degree)
                    .sum::<u32>();
            (gluing, gluing_oracle, interior, Some(total))
        }
        Normality::NonNormal { .. } => {
            if !profile.pattern.contains(&1) {
                return Err(ComponentError::NotRealizable(
                    "the gluing line passes through the meeting point of the double and simple lines".into(),
                ));
            }
            (KodairaType::N1, None, Vec::new(), None)
        }
    };
    Ok(ComponentReport {
        normal: normality == Normality::Normal,
        normality,
        gluing_type,
        gluing_oracle_type,
        profile,
        special_divisor,
        j4,
        interior_fibers,
        euler_total,
        frame: prep.frame,
    })
}
