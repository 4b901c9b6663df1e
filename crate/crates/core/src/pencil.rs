//! Trigonal pencils `a3 u^3 + a2 u^2 + a1 u + a0` over a line `P^1[s:t]`,
//! with `a_k` a binary form of degree `w(3 - k)` and `a3` a nonzero constant.
//!
//! The branch sextic on the quadric cone is the case `w = 2`; a plane cubic
//! seen from a point off the curve is the case `w = 1`. Every member of the
//! pencil meets the curve in three points, and the local branch-curve rules
//! are evaluated here for both settings.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::field::{poly_derivative, poly_gcd, trim, FieldElem, NfElem, NumberField};
use crate::algebra::{discriminant_cubic, BinaryForm, MultiPoly, P1Point, PolyRing, Rational, UniPoly};
use crate::kodaira::KodairaType;
use crate::singularity::{classify_germ, germ_at, GermReport, SingularityType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("expected a polynomial in three variables")]
    WrongArity,
    #[error("term of weighted degree {found} in a form of degree {expected}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("the coefficient of u^3 vanishes")]
    LeadingVanishes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalPencil {
    weight: u32,
    /// `coeffs[k]` multiplies `u^k`.
    coeffs: [BinaryForm; 4],
}

/// Where a member of the pencil sits: a rational point of `P^1`, or the
/// roots of an irreducible binary form of degree at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineLocus {
    Point(P1Point),
    Factor(BinaryForm),
}

impl LineLocus {
    /// A linear factor becomes its root.
    pub fn from_factor(factor: &BinaryForm) -> Self {
        match factor.linear_root() {
            Some(pt) => LineLocus::Point(pt),
            None => LineLocus::Factor(factor.clone()),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            LineLocus::Point(_) => 1,
            LineLocus::Factor(f) => f.degree(),
        }
    }

    /// The primitive integer form vanishing on the locus.
    pub fn form(&self) -> BinaryForm {
        match self {
            LineLocus::Point(p) => p.vanishing_form().primitive(),
            LineLocus::Factor(f) => f.primitive(),
        }
    }
}

impl std::fmt::Display for LineLocus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LineLocus::Point(p) => write!(f, "{p}"),
            LineLocus::Factor(g) => write!(f, "{g}"),
        }
    }
}

impl Serialize for LineLocus {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of the branch-curve rules on one member of the pencil.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    /// Largest contact multiplicity of the member with the curve.
    pub contact: u32,
    /// Germ at the unique non-transverse point, if any.
    pub germ: Option<GermReport>,
    pub kodaira: KodairaType,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiberRuleError {
    #[error("branch curve has a non-ADE germ ({0}) on the line")]
    NonAde(SingularityType),
    #[error("no fiber type for contact {contact} at a {singularity} point")]
    Gap {
        contact: u32,
        singularity: SingularityType,
    },
}

/// The row lookup: contact order of the member with the curve and the germ
/// of the curve at the contact point. The `D` and `E` rows accept any
/// contact of at least two, since a triple point always has contact three.
pub fn fiber_rule(contact: u32, germ: SingularityType) -> Result<KodairaType, FiberRuleError> {
    use SingularityType::*;
    let gap = || FiberRuleError::Gap {
        contact,
        singularity: germ,
    };
    match (contact, germ) {
        (1, Smooth) => Ok(KodairaType::I(0)),
        (2, Smooth) => Ok(KodairaType::I(1)),
        (2, A(n)) => Ok(KodairaType::I(n + 1)),
        (3, Smooth) => Ok(KodairaType::II),
        (3, A(1)) => Ok(KodairaType::III),
        (3, A(2)) => Ok(KodairaType::IV),
        (c, D(n)) if c >= 2 && n >= 4 => Ok(KodairaType::IStar(n - 4)),
        (c, E6) if c >= 2 => Ok(KodairaType::IVStar),
        (c, E7) if c >= 2 => Ok(KodairaType::IIIStar),
        (c, E8) if c >= 2 => Ok(KodairaType::IIStar),
        (_, NonAde(_)) => Err(FiberRuleError::NonAde(germ)),
        _ => Err(gap()),
    }
}

impl TrigonalPencil {
    /// Reads `h(s, t, u)` with `u` of weight `w` and weighted degree `3w`.
    pub fn new(h: &MultiPoly, weight: u32) -> Result<Self, PencilError> {
        if h.nvars() != 3 {
            return Err(PencilError::WrongArity);
        }
        let expected = 3 * weight;
        let mut coeffs: Vec<Vec<Rational>> = (0..4)
            .map(|k| vec![Rational::zero(); (weight * (3 - k) + 1) as usize])
            .collect();
        for (exp, c) in h.terms() {
            let found = exp[0] + exp[1] + weight * exp[2];
            if found != expected || exp[2] > 3 {
                return Err(PencilError::NotHomogeneous { expected, found });
            }
            coeffs[exp[2] as usize][exp[0] as usize] = c.clone();
        }
        let coeffs: Vec<BinaryForm> = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| BinaryForm::new(weight * (3 - k as u32), UniPoly::new(c)))
            .collect();
        let coeffs: [BinaryForm; 4] = coeffs.try_into().expect("four coefficients");
        if coeffs[3].is_zero() {
            return Err(PencilError::LeadingVanishes);
        }
        Ok(Self { weight, coeffs })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Coefficient of `u^k`, a binary form of degree `w(3 - k)`.
    pub fn coeff(&self, k: usize) -> &BinaryForm {
        &self.coeffs[k]
    }

    /// The constant coefficient of `u^3`.
    pub fn leading(&self) -> Rational {
        self.coeffs[3].coeff(0)
    }

    /// The cubic in `u` cut out on the member through `pt`.
    pub fn restrict(&self, pt: &P1Point) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a.eval(pt)).collect())
    }

    /// Discriminant of the cubic in `u`, a binary form of degree `6w`.
    pub fn discriminant(&self) -> BinaryForm {
        let ring = PolyRing::new(["s", "t"]);
        let a: Vec<MultiPoly> = self.coeffs.iter().map(|f| f.to_multipoly(&ring)).collect();
        let d = discriminant_cubic(&a[3], &a[2], &a[1], &a[0]);
        BinaryForm::from_multipoly(&d.value, 6 * self.weight).expect("discriminant is a binary form")
    }

    /// `(p, q)` of the depressed cubic `v^3 + p v + q` after dividing by
    /// `a3` and shifting `u = v - a2 / (3 a3)`.
    pub fn depressed(&self) -> (BinaryForm, BinaryForm) {
        let [a0, a1, a2, _] = &self.coeffs;
        let a3 = self.leading();
        let r = |n: i64| Rational::from_integer(n.into());
        // p = (3 a3 a1 - a2^2) / (3 a3^2)
        let p = a1
            .scale(&(r(3) * &a3))
            .sub(&a2.pow(2))
            .scale(&(r(3) * &a3 * &a3).recip());
        // q = (2 a2^3 - 9 a3 a2 a1 + 27 a3^2 a0) / (27 a3^3)
        let q = a2
            .pow(3)
            .scale(&r(2))
            .sub(&a2.mul(a1).scale(&(r(9) * &a3)))
            .add(&a0.scale(&(r(27) * &a3 * &a3)))
            .scale(&(r(27) * &a3 * &a3 * &a3).recip());
        (p, q)
    }

    /// The curve in the affine chart `t = 1` (coordinates `(s, u)`) or
    /// `s = 1` (coordinates `(t, u)`).
    pub fn chart(&self, t_chart: bool) -> MultiPoly {
        let ring = PolyRing::new(if t_chart { ["s", "u"] } else { ["t", "u"] });
        let mut terms = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate() {
            let d = a.degree();
            for i in 0..=d {
                let c = a.coeff(i);
                let x_exp = if t_chart { i } else { d - i };
                terms.push((vec![x_exp, k as u32], c));
            }
        }
        MultiPoly::from_terms(&ring, terms)
    }

    /// Applies the branch-curve rules to the member at `locus`.
    pub fn fiber_row(&self, locus: &LineLocus) -> Result<FiberRow, FiberRuleError> {
        match locus {
            LineLocus::Point(pt) => {
                if pt.is_infinity() {
                    fiber_row_in_chart(&self.chart(false), Rational::zero())
                } else {
                    fiber_row_in_chart(&self.chart(true), pt.s().clone())
                }
            }
            LineLocus::Factor(f) => {
                assert!(
                    f.t_valuation() == Some(0),
                    "irreducible factors of degree two or more are coprime to t"
                );
                let field: Arc<NumberField> = NumberField::new(f.dehomogenized());
                fiber_row_in_chart::<NfElem>(&self.chart(true), field.generator())
            }
        }
    }
}

/// Branch-curve rules on the vertical line `x = x0` of a plane chart with
/// coordinates `(x, u)`.
fn fiber_row_in_chart<E: FieldElem>(chart: &MultiPoly, x0: E) -> Result<FiberRow, FiberRuleError> {
    let deg_u = chart.degree_in(1).unwrap_or(0) as usize;
    let mut restricted = vec![x0.zero_like(); deg_u + 1];
    let mut powers = vec![x0.one_like()];
    for (exp, c) in chart.terms() {
        while powers.len() <= exp[0] as usize {
            let next = powers.last().expect("nonempty").times(&x0);
            powers.push(next);
        }
        let j = exp[1] as usize;
        restricted[j] = restricted[j].plus(&x0.embed(c).times(&powers[exp[0] as usize]));
    }
    let restricted = trim(restricted);
    let g = poly_gcd(&restricted, &poly_derivative(&restricted));
    let (contact, u0) = match g.len() {
        0 | 1 => {
            return Ok(FiberRow {
                contact: 1,
                germ: None,
                kodaira: KodairaType::I(0),
            })
        }
        // g = u - u0
        2 => (2, g[0].negated()),
        // g = (u - u0)^2 = u^2 - 2 u0 u + u0^2
        3 => (3, g[1].times(&x0.embed(&Rational::new((-1).into(), 2.into())))),
        _ => unreachable!("a cubic has at most a triple root"),
    };
    let germ = classify_germ(&germ_at(chart, &[x0, u0])).expect("contact point lies on the curve");
    let kodaira = fiber_rule(contact, germ.kind)?;
    Ok(FiberRow {
        contact,
        germ: Some(germ),
        kodaira,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn sextic(terms: &[([u32; 3], i64)]) -> MultiPoly {
        let ring = PolyRing::weighted(["s", "t", "u"], [1, 1, 2]);
        MultiPoly::from_terms(&ring, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn reads_coefficients() {
        // u^3 - s^2 t^2 u
        let f = sextic(&[([0, 0, 3], 1), ([2, 2, 1], -1)]);
        let pencil = TrigonalPencil::new(&f, 2).unwrap();
        assert_eq!(pencil.coeff(1).coeffs(), vec![rat(0), rat(0), rat(-1), rat(0), rat(0)]);
        assert_eq!(pencil.leading(), rat(1));
        let r = pencil.restrict(&P1Point::affine(rat(1)));
        assert_eq!(r, UniPoly::from_integers(&[0, -1, 0, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        let f = sextic(&[([6, 0, 0], 1)]);
        assert_eq!(TrigonalPencil::new(&f, 2), Err(PencilError::LeadingVanishes));
        let f = sextic(&[([0, 0, 3], 1), ([1, 0, 0], 1)]);
        assert!(matches!(
            TrigonalPencil::new(&f, 2),
            Err(PencilError::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn depressed_coefficients() {
        // u^3 + 3 s^2 u^2: p = -3 s^4, q = 2 s^6
        let f = sextic(&[([0, 0, 3], 1), ([2, 0, 2], 3)]);
        let (p, q) = TrigonalPencil::new(&f, 2).unwrap().depressed();
        assert_eq!(p.coeff(4), rat(-3));
        assert_eq!(q.coeff(6), rat(2));
        assert_eq!(p.dehomogenized().coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn rule_rows() {
        use SingularityType::*;
        assert_eq!(fiber_rule(2, Smooth), Ok(KodairaType::I(1)));
        assert_eq!(fiber_rule(2, A(3)), Ok(KodairaType::I(4)));
        assert_eq!(fiber_rule(3, A(2)), Ok(KodairaType::IV));
        assert_eq!(fiber_rule(3, D(6)), Ok(KodairaType::IStar(2)));
        assert_eq!(fiber_rule(3, E7), Ok(KodairaType::IIIStar));
        assert!(fiber_rule(3, A(3)).is_err());
    }

    #[test]
    fn irrational_member_is_classified_exactly() {
        // u^3 + s^6 + t^6: the members s^2 + t^2 = 0 have a triple contact
        // at a smooth point.
        let f = sextic(&[([0, 0, 3], 1), ([6, 0, 0], 1), ([0, 6, 0], 1)]);
        let pencil = TrigonalPencil::new(&f, 2).unwrap();
        let factor = BinaryForm::from_coeffs(vec![rat(1), rat(0), rat(1)]);
        let line = pencil.fiber_row(&LineLocus::Factor(factor)).unwrap();
        assert_eq!((line.contact, line.kodaira), (3, KodairaType::II));
        let generic = pencil.fiber_row(&LineLocus::Point(P1Point::affine(rat(2)))).unwrap();
        assert_eq!(generic.kodaira, KodairaType::I(0));
    }
}
