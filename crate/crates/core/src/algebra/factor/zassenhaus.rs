//! Factorization of square-free primitive integer polynomials: Berlekamp
//! modulo a small prime, linear Hensel lifting, then subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{PolyP, PrimeField};

type IntPoly = Vec<BigInt>;

/// Number of admissible primes tried before settling on the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 6;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn reduce(a: &[BigInt], p: u64) -> PolyP {
    let m = BigInt::from(p);
    let mut out: PolyP = a
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn lift_to_int(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn mod_poly(a: &[BigInt], m: &BigInt) -> IntPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn primitive(a: IntPoly) -> IntPoly {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        return a;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Exact division over the integers, `None` on any non-integral step.
pub(crate) fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let d = b.len().checked_sub(1)?;
    let lc = &b[d];
    let mut rem = a.to_vec();
    if rem.len() <= d {
        return rem.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for k in (0..rem.len() - d).rev() {
        let (c, r) = rem[k + d].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem[..d].iter().all(Zero::is_zero).then(|| trim(quot))
}

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Bound on the coefficients of `lc(f) * g` for any factor `g` of `f`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let n = f.len() - 1;
    let lc = f[n].abs();
    (BigInt::one() << n) * norm * lc
}

/// Lifts `f = g*h (mod p)` to `f = G*H (mod p^k)`, with `f` monic modulo
/// `p^k` and `g`, `h` monic.
fn hensel_pair(
    field: PrimeField,
    f: &[BigInt],
    g: &PolyP,
    h: &PolyP,
    k: u32,
) -> (IntPoly, IntPoly) {
    let p = BigInt::from(field.p);
    let (s, t) = field.bezout(g, h);
    let mut big_g = lift_to_int(g);
    let mut big_h = lift_to_int(h);
    let mut modulus = p.clone();
    for _ in 1..k {
        let next = &modulus * &p;
        let diff: Vec<BigInt> = {
            let prod = mul_int(&big_g, &big_h);
            let n = f.len().max(prod.len());
            (0..n)
                .map(|i| {
                    let a = f.get(i).cloned().unwrap_or_default();
                    let b = prod.get(i).cloned().unwrap_or_default();
                    (a - b).mod_floor(&next) / &modulus
                })
                .collect()
        };
        let e = reduce(&diff, field.p);
        let (q, r) = field.div_rem(&field.mul_poly(&t, &e), g);
        let hc = field.add_poly(&field.mul_poly(&s, &e), &field.mul_poly(&q, h));
        for (i, c) in r.iter().enumerate() {
            big_g[i] += &modulus * BigInt::from(*c);
        }
        for (i, c) in hc.iter().enumerate() {
            big_h[i] += &modulus * BigInt::from(*c);
        }
        modulus = next;
    }
    (big_g, big_h)
}

fn hensel_multi(
    field: PrimeField,
    f: &[BigInt],
    factors: &[PolyP],
    k: u32,
    modulus: &BigInt,
) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![mod_poly(f, modulus)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[PolyP]| fs.iter().fold(vec![1u64], |acc, g| field.mul_poly(&acc, g));
    let g = prod(&factors[..mid]);
    let h = prod(&factors[mid..]);
    let (big_g, big_h) = hensel_pair(field, f, &g, &h, k);
    let mut out = hensel_multi(field, &mod_poly(&big_g, modulus), &factors[..mid], k, modulus);
    out.extend(hensel_multi(
        field,
        &mod_poly(&big_h, modulus),
        &factors[mid..],
        k,
        modulus,
    ));
    out
}

/// Irreducible factors over the integers of a primitive, square-free
/// polynomial with positive leading coefficient and degree at least one.
/// Output factors are primitive with positive leading coefficient.
pub(crate) fn factor_squarefree(f: &[BigInt]) -> Vec<IntPoly> {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].clone();

    let mut best: Option<(PrimeField, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in primes() {
        if tried == PRIME_CANDIDATES {
            break;
        }
        if (&lc % p).is_zero() {
            continue;
        }
        let field = PrimeField::new(p);
        let fp = reduce(&f, p);
        if !field.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let modular = field.berlekamp(&field.monic(&fp));
        if modular.len() == 1 {
            return vec![f];
        }
        if best.as_ref().map_or(true, |(_, b)| modular.len() < b.len()) {
            best = Some((field, modular));
        }
    }
    let (field, modular) = best.expect("some prime is admissible");

    let bound = coefficient_bound(&f) * 2;
    let p = BigInt::from(field.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lc_inv = lc
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);
    let monic_f: IntPoly = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let mut lifted = hensel_multi(field, &monic_f, &modular, k, &modulus);

    let mut remaining = f;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc_rem = remaining.last().expect("nonzero").clone();
            let candidate = subset
                .iter()
                .fold(vec![lc_rem], |acc, &i| mod_poly(&mul_int(&acc, &lifted[i]), &modulus));
            let candidate = primitive(symmetric(&candidate, &modulus));
            if let Some(quot) = div_exact_int(&remaining, &candidate) {
                hit = Some((subset, candidate, quot));
                break;
            }
        }
        match hit {
            Some((subset, candidate, quot)) => {
                found.push(candidate);
                remaining = quot;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(primitive(remaining));
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

/// Lexicographic k-subsets of `0..n`.
struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> IntPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subsets_enumerate_binomial_count() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }

    #[test]
    fn splits_product_of_quadratics() {
        // (x^2 + 1)(x^2 - 2)(3x + 5)
        let f = mul_int(&mul_int(&ints(&[1, 0, 1]), &ints(&[-2, 0, 1])), &ints(&[5, 3]));
        let factors = factor_squarefree(&f);
        assert_eq!(factors, vec![ints(&[5, 3]), ints(&[-2, 0, 1]), ints(&[1, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_style_irreducible_stays_whole() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
        let f = ints(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
    }

    #[test]
    fn cyclotomic_twelve() {
        // x^6 + 1 = (x^2 + 1)(x^4 - x^2 + 1)
        let f = ints(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(
            factor_squarefree(&f),
            vec![ints(&[1, 0, 1]), ints(&[1, 0, -1, 0, 1])]
        );
    }

    #[test]
    fn exact_integer_division() {
        assert_eq!(div_exact_int(&ints(&[-1, 0, 1]), &ints(&[1, 1])), Some(ints(&[-1, 1])));
        assert_eq!(div_exact_int(&ints(&[1, 0, 1]), &ints(&[1, 1])), None);
        assert_eq!(div_exact_int(&ints(&[1, 2]), &ints(&[0, 2])), None);
    }
}
