//! Polynomials over a small prime field and Berlekamp's factorization.

/// Coefficients in ascending degree, reduced into `0..p`, no trailing zeros.
pub(crate) type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 31));
        Self { p }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut out = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        out
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn trim(self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn scale(self, a: &[u64], c: u64) -> PolyP {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let d = b.len() - 1;
        let inv = self.inv(b[d]);
        let mut rem = a.to_vec();
        if rem.len() <= d {
            return (Vec::new(), self.trim(rem));
        }
        let mut quot = vec![0; rem.len() - d];
        for k in (0..rem.len() - d).rev() {
            let c = self.mul(rem[k + d], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    rem[k + j] = self.sub(rem[k + j], self.mul(c, bj));
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (self.trim(quot), self.trim(rem))
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> PolyP {
        self.div_rem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> PolyP {
        let mut x = self.trim(a.to_vec());
        let mut y = self.trim(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(s, t)` with `s*a + t*b = 1`, assuming `gcd(a, b) = 1`.
    pub fn bezout(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], Vec::new());
        let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        assert_eq!(r0.len(), 1, "bezout called on non-coprime inputs");
        let inv = self.inv(r0[0]);
        (self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(self, a: &[u64]) -> PolyP {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    fn powmod(self, base: &[u64], mut exp: u64, modulus: &[u64]) -> PolyP {
        let mut out: PolyP = vec![1];
        let mut b = self.rem(base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.rem(&self.mul_poly(&out, &b), modulus);
            }
            b = self.rem(&self.mul_poly(&b, &b), modulus);
            exp >>= 1;
        }
        out
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        let da = self.derivative(a);
        !da.is_empty() && self.gcd(a, &da).len() == 1
    }

    /// Berlekamp factorization of a monic square-free polynomial into monic
    /// irreducible factors, sorted.
    pub fn berlekamp(self, f: &[u64]) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.to_vec()];
        }
        // Row i of Q holds x^(i p) mod f.
        let xp = self.powmod(&[0, 1], self.p, f);
        let mut rows: Vec<PolyP> = Vec::with_capacity(n);
        let mut current: PolyP = vec![1];
        for _ in 0..n {
            rows.push(current.clone());
            current = self.rem(&self.mul_poly(&current, &xp), f);
        }
        // Kernel of (Q - I)^T.
        let mut mat = vec![vec![0u64; n]; n];
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                let q = *row.get(j).unwrap_or(&0);
                mat[j][i] = if i == j { self.sub(q, 1) } else { q };
            }
        }
        let basis = self.kernel(mat, n);
        let r = basis.len();
        let mut factors: Vec<PolyP> = vec![f.to_vec()];
        for v in &basis {
            if factors.len() == r {
                break;
            }
            let v = self.trim(v.clone());
            if v.len() <= 1 {
                continue;
            }
            for s in 0..self.p {
                if factors.len() == r {
                    break;
                }
                let shifted = self.sub_poly(&v, &[s]);
                let mut next = Vec::with_capacity(factors.len() + 1);
                for u in factors.drain(..) {
                    if u.len() <= 2 {
                        next.push(u);
                        continue;
                    }
                    let g = self.gcd(&u, &shifted);
                    if g.len() > 1 && g.len() < u.len() {
                        let h = self.monic(&self.div_rem(&u, &g).0);
                        next.push(g);
                        next.push(h);
                    } else {
                        next.push(u);
                    }
                }
                factors = next;
            }
        }
        factors.sort();
        factors
    }

    fn kernel(self, mut mat: Vec<Vec<u64>>, n: usize) -> Vec<Vec<u64>> {
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| mat[r][col] != 0) else {
                continue;
            };
            mat.swap(row, pr);
            let inv = self.inv(mat[row][col]);
            for x in mat[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..n {
                if r != row && mat[r][col] != 0 {
                    let factor = mat[r][col];
                    for c in 0..n {
                        let delta = self.mul(factor, mat[row][c]);
                        mat[r][c] = self.sub(mat[r][c], delta);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; n];
                v[fc] = 1;
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = self.sub(0, mat[r][fc]);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_x4_minus_1_mod_5() {
        let field = PrimeField::new(5);
        // x^4 - 1 = (x-1)(x-2)(x-3)(x-4) mod 5
        let f = vec![4, 0, 0, 0, 1];
        let factors = field.berlekamp(&f);
        assert_eq!(factors.len(), 4);
        let product = factors
            .iter()
            .fold(vec![1], |acc, g| field.mul_poly(&acc, g));
        assert_eq!(product, f);
    }

    #[test]
    fn berlekamp_keeps_irreducible() {
        let field = PrimeField::new(7);
        // x^2 + 1 is irreducible mod 7 (7 = 3 mod 4).
        assert_eq!(field.berlekamp(&[1, 0, 1]), vec![vec![1, 0, 1]]);
    }

    #[test]
    fn bezout_identity() {
        let field = PrimeField::new(11);
        let a = vec![1, 1, 1];
        let b = vec![3, 1];
        let (s, t) = field.bezout(&a, &b);
        let lhs = field.add_poly(&field.mul_poly(&s, &a), &field.mul_poly(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
