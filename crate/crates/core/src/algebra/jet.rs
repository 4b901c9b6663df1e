//! Dimensions of local jet quotients `O / (I + m^N)` at the origin.
//!
//! In the truncated ring `Q[x, y] / m^N` every element with a nonzero
//! constant term is a unit, so the ideal generated there by `I` is spanned
//! by the products `x^a y^b * f` for generators `f`. The dimension is the
//! number of monomials of degree `< N` minus the rank of that span.

use std::collections::BTreeMap;

use super::field::FieldElem;
use super::multipoly::MultiPoly;
use super::rational::Rational;

/// Truncation orders tried in turn by [`stabilized_jet_dim`].
pub const JET_SCHEDULE: [u32; 5] = [4, 8, 16, 32, 64];

/// The quotient dimension was still growing at the last order tried, which
/// happens exactly when the ideal does not contain a power of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("jet quotient dimension not stabilized at order {order} (dimension {dim})")]
pub struct NonStabilized {
    pub order: u32,
    pub dim: usize,
}

/// Key ordering monomials by total degree first, so that pivots sit on the
/// lowest-order term of each row.
type Key = (u32, Vec<u32>);

/// A generator as a list of `(exponent, coefficient)` pairs.
pub type Terms<E> = Vec<(Vec<u32>, E)>;

fn monomials_below(nvars: usize, order: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if order > 0 {
        rec(&mut Vec::new(), nvars, order - 1, &mut out);
    }
    out
}

fn count_monomials(nvars: usize, order: u32) -> usize {
    // C(order - 1 + nvars, nvars)
    let n = order as usize;
    if n == 0 {
        return 0;
    }
    (1..=nvars).fold(1usize, |acc, k| acc * (n - 1 + k) / k)
}

fn to_terms(f: &MultiPoly) -> Terms<Rational> {
    f.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect()
}

/// `dim K[[vars]] / (gens + m^order)` over the field of the coefficients.
pub fn truncated_quotient_dim_over<E: FieldElem>(
    gens: &[Terms<E>],
    nvars: usize,
    order: u32,
) -> usize {
    let total = count_monomials(nvars, order);
    let mut pivots: BTreeMap<Key, BTreeMap<Key, E>> = BTreeMap::new();
    for f in gens {
        let Some(ord) = f
            .iter()
            .filter(|(_, c)| !c.vanishes())
            .map(|(e, _)| e.iter().sum::<u32>())
            .min()
        else {
            continue;
        };
        if ord >= order {
            continue;
        }
        for shift in monomials_below(nvars, order - ord) {
            let mut row: BTreeMap<Key, E> = BTreeMap::new();
            for (exp, c) in f {
                let e: Vec<u32> = exp.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let d: u32 = e.iter().sum();
                if d < order && !c.vanishes() {
                    row.insert((d, e), c.clone());
                }
            }
            while let Some((lead, c)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) {
                match pivots.get(&lead) {
                    Some(pivot) => {
                        for (k, v) in pivot {
                            let next = match row.get(k) {
                                Some(old) => old.minus(&c.times(v)),
                                None => c.times(v).negated(),
                            };
                            if next.vanishes() {
                                row.remove(k);
                            } else {
                                row.insert(k.clone(), next);
                            }
                        }
                    }
                    None => {
                        let inv = c.inverse();
                        for v in row.values_mut() {
                            *v = v.times(&inv);
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
    }
    total - pivots.len()
}

/// `dim Q[[vars]] / (gens + m^order)`, exact.
pub fn truncated_quotient_dim(gens: &[MultiPoly], order: u32) -> usize {
    let Some(first) = gens.first() else {
        return 0;
    };
    let terms: Vec<_> = gens.iter().map(to_terms).collect();
    truncated_quotient_dim_over(&terms, first.nvars(), order)
}

/// [`stabilized_jet_dim`] over an arbitrary coefficient field.
pub fn stabilized_jet_dim_over<E: FieldElem>(
    gens: &[Terms<E>],
    nvars: usize,
) -> Result<usize, NonStabilized> {
    let mut last = None;
    for &n in &JET_SCHEDULE {
        let low = truncated_quotient_dim_over(gens, nvars, n);
        let high = truncated_quotient_dim_over(gens, nvars, n + 1);
        if low == high {
            return Ok(low);
        }
        last = Some(NonStabilized { order: n, dim: low });
    }
    Err(last.expect("schedule is nonempty"))
}

/// The quotient dimension at order `n`, accepted only when it agrees with
/// the dimension at order `n + 1`. By Nakayama that equality means
/// `m^n` already lies in the ideal, so the value is the local dimension.
pub fn jet_quotient_dim(gens: &[MultiPoly], n: u32) -> Result<usize, NonStabilized> {
    let low = truncated_quotient_dim(gens, n);
    let high = truncated_quotient_dim(gens, n + 1);
    if low == high {
        Ok(low)
    } else {
        Err(NonStabilized { order: n, dim: low })
    }
}

/// Runs [`jet_quotient_dim`] along [`JET_SCHEDULE`].
pub fn stabilized_jet_dim(gens: &[MultiPoly]) -> Result<usize, NonStabilized> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let terms: Vec<_> = gens.iter().map(to_terms).collect();
    stabilized_jet_dim_over(&terms, first.nvars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::PolyRing;
    use crate::algebra::rational::rat;

    fn xy() -> (MultiPoly, MultiPoly) {
        let ring = PolyRing::new(["x", "y"]);
        (MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1))
    }

    #[test]
    fn monomial_ideals() {
        let (x, y) = xy();
        for n in 2..8 {
            assert_eq!(jet_quotient_dim(&[x.clone(), y.pow(2)], n), Ok(2));
        }
        let gens = [x.pow(2).scale(&rat(3)), y.pow(4).scale(&rat(5))];
        for n in 6..10 {
            assert_eq!(jet_quotient_dim(&gens, n), Ok(8));
        }
        assert_eq!(stabilized_jet_dim(&gens), Ok(8));
    }

    #[test]
    fn non_isolated_never_stabilizes() {
        let (x, _) = xy();
        let zero = MultiPoly::zero(x.ring());
        let err = stabilized_jet_dim(&[x.scale(&rat(2)), zero]).unwrap_err();
        assert_eq!(err.order, 64);
        assert_eq!(err.dim, 64);
    }

    #[test]
    fn unit_generator_kills_everything() {
        let (x, _) = xy();
        let unit = &MultiPoly::one(x.ring()) + &x;
        assert_eq!(stabilized_jet_dim(&[unit]), Ok(0));
    }

    #[test]
    fn d4_jacobian() {
        // y(x^2 + y^2): partials 2xy and x^2 + 3y^2.
        let (x, y) = xy();
        let fx = (&x * &y).scale(&rat(2));
        let fy = &x.pow(2) + &y.pow(2).scale(&rat(3));
        assert_eq!(stabilized_jet_dim(&[fx, fy]), Ok(4));
    }

    #[test]
    fn monomial_count_matches_enumeration() {
        for n in 0..10 {
            assert_eq!(count_monomials(2, n), monomials_below(2, n).len());
            assert_eq!(count_monomials(3, n), monomials_below(3, n).len());
        }
    }
}
