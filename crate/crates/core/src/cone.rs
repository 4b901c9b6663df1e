//! Branch curves on the quadric cone `x0 x2 = x1^2`.
//!
//! The cone is `P(1,1,2)` via `(s, t, u) -> (s^2, st, t^2, u)`, and a cubic
//! `g` cuts out the branch curve `F(s, t, u) = g(s^2, st, t^2, u) = 0` of
//! weighted degree six. Ruling lines are the points `[s:t]`; each meets the
//! curve in the three roots of a cubic in `u`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::rational::format_rational;
use crate::algebra::{BinaryForm, MultiPoly, P1Point, PolyRing, Rational, UniPoly};
use crate::kodaira::KodairaType;
use crate::pencil::{LineLocus, PencilError, FiberRuleError, TrigonalPencil};
use crate::singularity::{GermReport, SingularityType};
use crate::weierstrass::{
    depressed_model, kodaira_from_valuations, ValuationTriple, WeierstrassError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("expected a cubic in four variables, found {0} variables")]
    WrongArity(usize),
    #[error("expected a nonzero homogeneous cubic")]
    NotCubic,
    #[error("the branch curve passes through the cone point")]
    ConePoint,
    #[error("discriminant vanishes identically: the branch curve contains a ruling line or is non-reduced")]
    NonReduced,
    #[error("line {line}: {source}")]
    Line { line: LineLocus, source: FiberRuleError },
}

impl From<WeierstrassError> for ConeError {
    fn from(err: WeierstrassError) -> Self {
        match err {
            WeierstrassError::NonReduced => ConeError::NonReduced,
            // A model with a constant u^3 coefficient is always minimal.
            other => unreachable!("depressed model of a cone sextic: {other}"),
        }
    }
}

/// A cubic form in `x0, x1, x2, x3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeBranchData {
    g: MultiPoly,
}

impl ConeBranchData {
    pub fn new(g: MultiPoly) -> Result<Self, ConeError> {
        if g.nvars() != 4 {
            return Err(ConeError::WrongArity(g.nvars()));
        }
        if g.is_zero() || g.terms().any(|(e, _)| e.iter().sum::<u32>() != 3) {
            return Err(ConeError::NotCubic);
        }
        Ok(Self { g })
    }

    pub fn cubic(&self) -> &MultiPoly {
        &self.g
    }
}

/// `F(s, t, u)` with weights `(1, 1, 2)` and weighted degree six.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSextic {
    f: MultiPoly,
}

impl WeightedSextic {
    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn pencil(&self) -> Result<TrigonalPencil, ConeError> {
        TrigonalPencil::new(&self.f, 2).map_err(|e| match e {
            PencilError::LeadingVanishes => ConeError::ConePoint,
            other => unreachable!("parametrized sextics are well formed: {other}"),
        })
    }
}

pub fn sextic_ring() -> std::sync::Arc<PolyRing> {
    PolyRing::weighted(["s", "t", "u"], [1, 1, 2])
}

pub fn parametrize(data: &ConeBranchData) -> WeightedSextic {
    let ring = sextic_ring();
    let [s, t, u]: [MultiPoly; 3] = MultiPoly::vars(&ring).try_into().expect("three variables");
    let images = [s.pow(2), &s * &t, t.pow(2), u];
    WeightedSextic {
        f: data.g.compose(&images),
    }
}

/// Whether the curve avoids the cone point `[0:0:0:1]`.
pub fn cone_point_check(f: &WeightedSextic) -> bool {
    !f.f.coefficient(&[0, 0, 3]).is_zero()
}

pub fn restrict_to_line(f: &WeightedSextic, line: &P1Point) -> Result<UniPoly, ConeError> {
    Ok(f.pencil()?.restrict(line))
}

/// The degree-12 form whose roots are the ruling lines meeting the curve
/// non-transversally.
pub fn discriminant_form(f: &WeightedSextic) -> Result<BinaryForm, ConeError> {
    let disc = f.pencil()?.discriminant();
    if disc.is_zero() {
        return Err(ConeError::NonReduced);
    }
    debug_assert_eq!(disc.degree(), 12);
    Ok(disc)
}

/// A point of the contact divisor on one line. `u` is given when the point
/// is rational on a rational line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactPoint {
    #[serde(serialize_with = "serialize_opt_rational")]
    pub u: Option<Rational>,
    pub multiplicity: u32,
}

fn serialize_opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineRecord {
    pub line: LineLocus,
    /// Number of conjugate lines in the record.
    pub degree: u32,
    pub disc_mult: u32,
    pub contact: Vec<ContactPoint>,
    pub singularity: Option<SingularityType>,
    #[serde(skip)]
    pub germ: Option<GermReport>,
    pub kodaira: KodairaType,
    pub euler: u32,
}

impl LineRecord {
    pub fn max_contact(&self) -> u32 {
        self.contact.iter().map(|c| c.multiplicity).max().unwrap_or(1)
    }
}

fn contact_divisor(pencil: &TrigonalPencil, locus: &LineLocus, max_contact: u32) -> Vec<ContactPoint> {
    let pattern: &[u32] = match max_contact {
        1 => &[1, 1, 1],
        2 => &[2, 1],
        _ => &[3],
    };
    let LineLocus::Point(pt) = locus else {
        return pattern
            .iter()
            .map(|&m| ContactPoint { u: None, multiplicity: m })
            .collect();
    };
    // A repeated root of a rational cubic is rational, so whatever is left
    // after the rational roots consists of simple points.
    let mut out: Vec<ContactPoint> = pencil
        .restrict(pt)
        .rational_roots()
        .into_iter()
        .map(|(u, m)| ContactPoint { u: Some(u), multiplicity: m })
        .collect();
    let found: u32 = out.iter().map(|c| c.multiplicity).sum();
    out.extend((found..3).map(|_| ContactPoint { u: None, multiplicity: 1 }));
    out.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity));
    out
}

fn line_record(pencil: &TrigonalPencil, disc: &BinaryForm, locus: LineLocus) -> Result<LineRecord, ConeError> {
    let line = pencil
        .fiber_row(&locus)
        .map_err(|source| ConeError::Line { line: locus.clone(), source })?;
    let disc_mult = disc.valuation(&locus.form()).expect("discriminant is nonzero");
    Ok(LineRecord {
        contact: contact_divisor(pencil, &locus, line.contact),
        degree: locus.degree(),
        disc_mult,
        singularity: line.germ.as_ref().map(|g| g.kind),
        germ: line.germ,
        euler: line.kodaira.euler().expect("cone fibers are Weierstrass types"),
        kodaira: line.kodaira,
        line: locus,
    })
}

pub fn classify_line(f: &WeightedSextic, line: &P1Point) -> Result<LineRecord, ConeError> {
    let pencil = f.pencil()?;
    let disc = discriminant_form(f)?;
    line_record(&pencil, &disc, LineLocus::Point(line.clone()))
}

/// One record per irreducible factor of the discriminant form.
pub fn classify_all_lines(f: &WeightedSextic) -> Result<Vec<LineRecord>, ConeError> {
    let pencil = f.pencil()?;
    let disc = discriminant_form(f)?;
    let factors = disc.factor().expect("discriminant is nonzero").factors;
    factors
        .par_iter()
        .map(|(factor, _)| line_record(&pencil, &disc, LineLocus::from_factor(factor)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnstableReason {
    ConePoint,
    NonReduced,
    NonASingularity {
        line: LineLocus,
        singularity: SingularityType,
    },
    Unclassified {
        line: LineLocus,
        detail: String,
    },
}

impl std::fmt::Display for UnstableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnstableReason::ConePoint => write!(f, "cone point on the branch curve"),
            UnstableReason::NonReduced => write!(f, "non-reduced branch curve"),
            UnstableReason::NonASingularity { line, singularity } => {
                write!(f, "{singularity} singularity on line {line}")
            }
            UnstableReason::Unclassified { line, detail } => write!(f, "line {line}: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GitVerdict {
    Stable,
    Unstable { reason: UnstableReason },
}

impl GitVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, GitVerdict::Stable)
    }
}

/// Stable iff the curve avoids the cone point and has only `A_n` germs.
pub fn git_stable(data: &ConeBranchData) -> GitVerdict {
    git_verdict(&classify_all_lines(&parametrize(data)))
}

/// [`git_stable`] read off an existing run of [`classify_all_lines`].
pub fn git_verdict(outcome: &Result<Vec<LineRecord>, ConeError>) -> GitVerdict {
    let unstable = |reason| GitVerdict::Unstable { reason };
    match outcome {
        Err(ConeError::ConePoint) => unstable(UnstableReason::ConePoint),
        Err(ConeError::NonReduced) => unstable(UnstableReason::NonReduced),
        Err(ConeError::Line { line, source: FiberRuleError::NonAde(singularity) }) => {
            unstable(UnstableReason::NonASingularity { line: line.clone(), singularity: *singularity })
        }
        Err(ConeError::Line { line, source }) => unstable(UnstableReason::Unclassified {
            line: line.clone(),
            detail: source.to_string(),
        }),
        Err(other) => unreachable!("parametrized data is well formed: {other}"),
        Ok(records) => records
            .iter()
            .find_map(|r| {
                r.singularity.filter(|s| !s.is_at_worst_a()).map(|singularity| {
                    unstable(UnstableReason::NonASingularity { line: r.line.clone(), singularity })
                })
            })
            .unwrap_or(GitVerdict::Stable),
    }
}

/// `a = rational + epsilon_order * epsilon` for an infinitesimal `epsilon > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicCoefficient {
    #[serde(serialize_with = "serialize_rational")]
    pub rational: Rational,
    pub epsilon_order: i32,
}

fn serialize_rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedLine {
    pub line: LineLocus,
    pub degree: u32,
    pub weight: u32,
}

/// `F = a sum m_i F_i` and `L = a sum (m_i - 1) l_i`. The line weights are
/// given twice, once with `m_i` the discriminant multiplicity and once with
/// `m_i` the contact multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StablePairReport {
    pub coefficient: SymbolicCoefficient,
    pub fiber_divisor: Vec<WeightedLine>,
    pub line_divisor_discriminant: Vec<WeightedLine>,
    pub line_divisor_contact: Vec<WeightedLine>,
    pub fiber_total: u32,
    pub line_total_discriminant: u32,
    pub line_total_contact: u32,
}

pub fn stable_pair_report(records: &[LineRecord]) -> StablePairReport {
    let weighted = |weight: &dyn Fn(&LineRecord) -> u32| -> Vec<WeightedLine> {
        records
            .iter()
            .map(|r| WeightedLine {
                line: r.line.clone(),
                degree: r.degree,
                weight: weight(r),
            })
            .collect()
    };
    let total = |lines: &[WeightedLine]| lines.iter().map(|l| l.weight * l.degree).sum::<u32>();
    let fiber_divisor = weighted(&|r| r.disc_mult);
    let line_divisor_discriminant = weighted(&|r| r.disc_mult - 1);
    let line_divisor_contact = weighted(&|r| r.max_contact() - 1);
    let fiber_total = total(&fiber_divisor);
    assert_eq!(fiber_total, 12, "discriminant multiplicities must sum to 12");
    StablePairReport {
        coefficient: SymbolicCoefficient {
            rational: Rational::new(1.into(), 12.into()),
            epsilon_order: 1,
        },
        fiber_total,
        line_total_discriminant: total(&line_divisor_discriminant),
        line_total_contact: total(&line_divisor_contact),
        fiber_divisor,
        line_divisor_discriminant,
        line_divisor_contact,
    }
}

/// Branch-curve rules against the valuation table for one discriminant factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckRecord {
    pub factor: LineLocus,
    pub degree: u32,
    pub valuations: ValuationTriple,
    pub oracle_type: Option<KodairaType>,
    pub branch_type: Option<KodairaType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub agree: bool,
}

pub fn crosscheck(f: &WeightedSextic) -> Result<Vec<CrosscheckRecord>, ConeError> {
    let pencil = f.pencil()?;
    let model = depressed_model(&pencil)?;
    let factors = model.delta.factor().expect("delta is nonzero").factors;
    Ok(factors
        .par_iter()
        .map(|(factor, _)| {
            let locus = LineLocus::from_factor(factor);
            let valuations = model.valuations(factor);
            let oracle = kodaira_from_valuations(valuations);
            let branch = pencil.fiber_row(&locus);
            let detail = match (&oracle, &branch) {
                (Err(e), _) => Some(format!("oracle: {e}")),
                (_, Err(e)) => Some(format!("branch rule: {e}")),
                _ => None,
            };
            let oracle_type = oracle.ok();
            let branch_type = branch.ok().map(|l| l.kodaira);
            CrosscheckRecord {
                degree: locus.degree(),
                factor: locus,
                valuations,
                agree: oracle_type.is_some() && oracle_type == branch_type,
                oracle_type,
                branch_type,
                detail,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use KodairaType::*;

    fn cubic(terms: &[([u32; 4], i64)]) -> ConeBranchData {
        let ring = PolyRing::new(["x0", "x1", "x2", "x3"]);
        ConeBranchData::new(MultiPoly::from_terms(
            &ring,
            terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))),
        ))
        .unwrap()
    }

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn parametrize_examples() {
        let f = parametrize(&cubic(&[([0, 0, 0, 3], 1), ([1, 0, 1, 1], -1)]));
        let ring = sextic_ring();
        let expected = MultiPoly::from_terms(&ring, [(vec![0, 0, 3], rat(1)), (vec![2, 2, 1], rat(-1))]);
        assert_eq!(f.poly(), &expected);
        assert!(cone_point_check(&f));
        let f = parametrize(&cubic(&[([3, 0, 0, 0], 1)]));
        assert_eq!(f.poly(), &MultiPoly::from_terms(&ring, [(vec![6, 0, 0], rat(1))]));
        assert!(!cone_point_check(&f));
    }

    #[test]
    fn rejects_non_cubics() {
        let ring = PolyRing::new(["x0", "x1", "x2", "x3"]);
        let quad = MultiPoly::from_terms(&ring, [(vec![2, 0, 0, 0], rat(1))]);
        assert_eq!(ConeBranchData::new(quad), Err(ConeError::NotCubic));
        let ring3 = PolyRing::new(["x", "y", "z"]);
        assert_eq!(
            ConeBranchData::new(MultiPoly::var(&ring3, 0).pow(3)),
            Err(ConeError::WrongArity(3))
        );
    }

    #[test]
    fn isotrivial_sextic() {
        let f = parametrize(&cubic(&[([0, 0, 0, 3], 1), ([3, 0, 0, 0], 1), ([0, 0, 3, 0], 1)]));
        assert_eq!(
            restrict_to_line(&f, &P1Point::infinity()).unwrap(),
            UniPoly::from_integers(&[1, 0, 0, 1])
        );
        let six = form(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(discriminant_form(&f).unwrap(), six.pow(2).scale(&rat(-27)));
        let records = classify_all_lines(&f).unwrap();
        assert_eq!(records.iter().map(|r| r.degree).sum::<u32>(), 6);
        assert!(records.iter().all(|r| r.kodaira == II && r.disc_mult == 2));
        assert_eq!(records.iter().map(|r| r.euler * r.degree).sum::<u32>(), 12);
        let report = stable_pair_report(&records);
        assert!(report.fiber_divisor.iter().all(|w| w.weight == 2));
        assert!(git_stable(&cubic(&[([0, 0, 0, 3], 1), ([3, 0, 0, 0], 1), ([0, 0, 3, 0], 1)])).is_stable());
        assert!(crosscheck(&f).unwrap().iter().all(|r| r.agree));
    }

    #[test]
    fn two_star_lines() {
        let data = cubic(&[([0, 0, 0, 3], 1), ([1, 0, 1, 1], -1)]);
        let f = parametrize(&data);
        assert_eq!(discriminant_form(&f).unwrap(), form(&[0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0]));
        let records = classify_all_lines(&f).unwrap();
        assert_eq!(records.len(), 2);
        for r in &records {
            assert_eq!(r.disc_mult, 6);
            assert_eq!(r.kodaira, IStar(0));
            assert_eq!(r.singularity, Some(SingularityType::D(4)));
            assert_eq!(r.contact, vec![ContactPoint { u: Some(rat(0)), multiplicity: 3 }]);
        }
        let line = classify_line(&f, &P1Point::affine(rat(1))).unwrap();
        assert_eq!(line.kodaira, I(0));
        assert_eq!(line.contact.len(), 3);
        assert!(matches!(
            git_stable(&data),
            GitVerdict::Unstable { reason: UnstableReason::NonASingularity { .. } }
        ));
        let report = stable_pair_report(&records);
        assert_eq!(report.fiber_total, 12);
        assert_eq!(report.line_total_discriminant, 10);
        assert_eq!(report.line_total_contact, 4);
    }

    #[test]
    fn cone_point_and_non_reduced() {
        let data = cubic(&[([3, 0, 0, 0], 1), ([0, 0, 3, 0], 1)]);
        assert_eq!(
            git_stable(&data),
            GitVerdict::Unstable { reason: UnstableReason::ConePoint }
        );
        // (x3 + x0)^2 (x3 - 2 x0): a double component.
        let data = cubic(&[([0, 0, 0, 3], 1), ([2, 0, 0, 1], -3), ([3, 0, 0, 0], -2)]);
        assert_eq!(discriminant_form(&parametrize(&data)), Err(ConeError::NonReduced));
    }
}
