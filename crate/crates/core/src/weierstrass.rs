//! Fiber types from the depressed Weierstrass model `y^2 = v^3 + p v + q`
//! and the orders of `p`, `q` and `Delta = -4p^3 - 27q^2` along each
//! irreducible factor of the discriminant.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{BinaryForm, Rational};
use crate::kodaira::KodairaType;
use crate::pencil::{LineLocus, TrigonalPencil};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("discriminant vanishes identically: the branch curve is non-reduced")]
    NonReduced,
    #[error("non-minimal valuations {0}")]
    NonMinimal(ValuationTriple),
    #[error("valuations {0} cannot come from a Weierstrass model")]
    Inconsistent(ValuationTriple),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub p: BinaryForm,
    pub q: BinaryForm,
    pub delta: BinaryForm,
}

impl WeierstrassModel {
    /// Checks `delta = -4p^3 - 27q^2` is nonzero.
    pub fn new(p: BinaryForm, q: BinaryForm) -> Result<Self, WeierstrassError> {
        let delta = p
            .pow(3)
            .scale(&Rational::from_integer((-4).into()))
            .sub(&q.pow(2).scale(&Rational::from_integer(27.into())));
        if delta.is_zero() {
            return Err(WeierstrassError::NonReduced);
        }
        Ok(Self { p, q, delta })
    }

    /// Quadratic twist by `form`: `(p, q) -> (form^2 p, form^3 q)`.
    pub fn twisted(&self, form: &BinaryForm) -> Self {
        Self {
            p: self.p.mul(&form.pow(2)),
            q: self.q.mul(&form.pow(3)),
            delta: self.delta.mul(&form.pow(6)),
        }
    }

    pub fn valuations(&self, factor: &BinaryForm) -> ValuationTriple {
        let v = |f: &BinaryForm| match f.valuation(factor) {
            Some(k) => Valuation::Finite(k),
            None => Valuation::Infinite,
        };
        ValuationTriple {
            v_p: v(&self.p),
            v_q: v(&self.q),
            v_delta: self.delta.valuation(factor).expect("delta is nonzero"),
        }
    }
}

/// The model of a pencil after normalizing `a3 = 1` and removing `u^2`.
pub fn depressed_model(pencil: &TrigonalPencil) -> Result<WeierstrassModel, WeierstrassError> {
    let (p, q) = pencil.depressed();
    WeierstrassModel::new(p, q)
}

/// Order of a form along a factor; the zero form has infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }

    pub fn is(self, k: u32) -> bool {
        self == Valuation::Finite(k)
    }

    fn times(self, k: u32) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use Valuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u32(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValuationTriple {
    pub v_p: Valuation,
    pub v_q: Valuation,
    pub v_delta: u32,
}

impl ValuationTriple {
    pub fn new(v_p: Valuation, v_q: Valuation, v_delta: u32) -> Self {
        Self { v_p, v_q, v_delta }
    }

    /// `v_delta = min(3 v_p, 2 v_q)` unless the two terms can cancel.
    pub fn is_consistent(&self) -> bool {
        let a = self.v_p.times(3);
        let b = self.v_q.times(2);
        let d = Valuation::Finite(self.v_delta);
        if a == b {
            d >= a
        } else {
            d == a.min(b)
        }
    }

    pub fn is_minimal(&self) -> bool {
        !(self.v_p.at_least(4) && self.v_q.at_least(6))
    }
}

impl fmt::Display for ValuationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v_p, self.v_q, self.v_delta)
    }
}

/// The characteristic-zero Kodaira table.
pub fn kodaira_from_valuations(v: ValuationTriple) -> Result<KodairaType, WeierstrassError> {
    use KodairaType::*;
    if !v.is_consistent() {
        return Err(WeierstrassError::Inconsistent(v));
    }
    if !v.is_minimal() {
        return Err(WeierstrassError::NonMinimal(v));
    }
    let (p, q, d) = (v.v_p, v.v_q, v.v_delta);
    if d == 0 || p.is(0) || q.is(0) {
        return Ok(I(d));
    }
    let kind = if q.is(1) {
        II
    } else if p.is(1) {
        III
    } else if q.is(2) {
        IV
    } else if d == 6 {
        IStar(0)
    } else if p.is(2) && q.is(3) {
        IStar(d - 6)
    } else if q.is(4) {
        IVStar
    } else if p.is(3) {
        IIIStar
    } else {
        // Consistency and minimality leave only v_q = 5 with v_p >= 4.
        debug_assert!(q.is(5) && p.at_least(4));
        IIStar
    };
    Ok(kind)
}

/// Oracle record for one irreducible factor of the discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorFiber {
    pub locus: LineLocus,
    pub valuations: ValuationTriple,
    pub kodaira: KodairaType,
}

impl FactorFiber {
    /// Euler number times the number of geometric members.
    pub fn euler_total(&self) -> u32 {
        self.kodaira.euler().unwrap_or(0) * self.locus.degree()
    }
}

/// Classifies every irreducible factor of `delta`.
pub fn classify_all(model: &WeierstrassModel) -> Result<Vec<FactorFiber>, WeierstrassError> {
    let list = model
        .delta
        .factor()
        .expect("delta is nonzero by construction");
    list.factors
        .iter()
        .map(|(factor, _)| {
            let valuations = model.valuations(factor);
            Ok(FactorFiber {
                locus: LineLocus::from_factor(factor),
                valuations,
                kodaira: kodaira_from_valuations(valuations)?,
            })
        })
        .collect()
}
