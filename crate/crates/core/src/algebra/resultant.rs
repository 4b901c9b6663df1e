//! Sylvester resultants and the cubic discriminant.

use super::multipoly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResultantError {
    #[error("resultant is undefined when an input is the zero polynomial")]
    Undefined,
}

/// Determinant by fraction-free (Bareiss) elimination; entries share a ring.
fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(n > 0, "empty determinant");
    let ring = m[0][0].ring().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester resultant of `f` and `g` with respect to variable `var`.
///
/// Convention: `res(f, g) = lc(f)^deg(g) * prod g(alpha)` over the roots
/// `alpha` of `f`, so `res(x^2, x + 1) = 1`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, ResultantError> {
    if f.is_zero() || g.is_zero() {
        return Err(ResultantError::Undefined);
    }
    let ring = f.ring().clone();
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    if m == 0 && n == 0 {
        return Ok(MultiPoly::one(&ring));
    }
    if m == 0 {
        return Ok(fc[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(gc[0].pow(m as u32));
    }
    let size = m + n;
    let zero = MultiPoly::zero(&ring);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_determinant(rows))
}

/// Discriminant of `a3 u^3 + a2 u^2 + a1 u + a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicDiscriminant {
    pub value: MultiPoly,
    /// Set when `a3` is identically zero: the value is then the classical
    /// formula evaluated at a degenerate cubic.
    pub degenerate: bool,
}

/// `a2^2 a1^2 - 4 a3 a1^3 - 4 a2^3 a0 - 27 a3^2 a0^2 + 18 a3 a2 a1 a0`,
/// so the depressed cubic `u^3 + p u + q` has discriminant `-4p^3 - 27q^2`.
pub fn discriminant_cubic(
    a3: &MultiPoly,
    a2: &MultiPoly,
    a1: &MultiPoly,
    a0: &MultiPoly,
) -> CubicDiscriminant {
    let ring = a3.ring().clone();
    let c = |k: i64| MultiPoly::constant(&ring, super::rational::rat(k));
    let terms = [
        &a2.pow(2) * &a1.pow(2),
        &(a3 * &a1.pow(3)) * &c(-4),
        &(&a2.pow(3) * a0) * &c(-4),
        &(&a3.pow(2) * &a0.pow(2)) * &c(-27),
        &(&(&(a3 * a2) * a1) * a0) * &c(18),
    ];
    let value = terms
        .iter()
        .fold(MultiPoly::zero(&ring), |acc, t| &acc + t);
    CubicDiscriminant {
        value,
        degenerate: a3.is_zero(),
    }
}
