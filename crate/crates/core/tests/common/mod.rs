#![allow(dead_code)]

use delpezzo_core::algebra::{rat, ratio, MultiPoly, PolyRing, Rational};
use delpezzo_core::broken::ComponentData;
use delpezzo_core::cone::{parametrize, sextic_ring, ConeBranchData};
use delpezzo_core::singularity::SingularityType;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn plane_xy() -> (MultiPoly, MultiPoly) {
    let ring = PolyRing::new(["x", "y"]);
    (MultiPoly::var(&ring, 0), MultiPoly::var(&ring, 1))
}

/// The simple-singularity normal forms with the type they define.
pub fn normal_forms() -> Vec<(SingularityType, MultiPoly)> {
    let (x, y) = plane_xy();
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((SingularityType::A(n), &y.pow(2) + &x.pow(n + 1)));
    }
    for n in 4..=8 {
        out.push((SingularityType::D(n), &(&x.pow(2) * &y) + &y.pow(n - 1)));
    }
    out.push((SingularityType::E6, &x.pow(3) + &y.pow(4)));
    out.push((SingularityType::E7, &x.pow(3) + &(&x * &y.pow(3))));
    out.push((SingularityType::E8, &x.pow(3) + &y.pow(5)));
    out
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-7..=7), rng.gen_range(1..=4))
}

/// `f(A (v - c))` for a random invertible `A` and centre `c`; the germ of
/// `f` at the origin moves to `c`.
pub fn random_affine_image(f: &MultiPoly, rng: &mut ChaCha8Rng) -> (MultiPoly, [Rational; 2]) {
    let (x, y) = plane_xy();
    let ring = x.ring().clone();
    let m = loop {
        let m = [0; 4].map(|_| small_rational(rng));
        if &m[0] * &m[3] != &m[1] * &m[2] {
            break m;
        }
    };
    let c = [small_rational(rng), small_rational(rng)];
    let dx = &x - &MultiPoly::constant(&ring, c[0].clone());
    let dy = &y - &MultiPoly::constant(&ring, c[1].clone());
    let images = [
        &dx.scale(&m[0]) + &dy.scale(&m[1]),
        &dx.scale(&m[2]) + &dy.scale(&m[3]),
    ];
    (f.compose(&images), c)
}

/// A cubic on the cone from the terms `(i, j, k, c)` of `c s^i t^j u^k`; the
/// result parametrizes back to that sextic.
pub fn cone_cubic(terms: &[(u32, u32, u32, i64)]) -> ConeBranchData {
    let ring = PolyRing::new(["x0", "x1", "x2", "x3"]);
    let cubic = MultiPoly::from_terms(
        &ring,
        terms.iter().map(|&(i, j, k, c)| {
            assert_eq!(i + j + 2 * k, 6, "weighted degree six");
            let b = i % 2;
            (vec![(i - b) / 2, b, (j - b) / 2, k], rat(c))
        }),
    );
    let data = ConeBranchData::new(cubic).expect("homogeneous cubic");
    let sextic = MultiPoly::from_terms(&sextic_ring(), terms.iter().map(|&(i, j, k, c)| (vec![i, j, k], rat(c))));
    assert_eq!(parametrize(&data).poly(), &sextic);
    data
}

/// Cone fixtures covering every row of the branch-curve table, with the
/// fiber types expected from the valuations of `u^3 + A u + B` (degree of
/// each fiber locus counted).
pub fn table_fixtures() -> Vec<(&'static str, ConeBranchData, Vec<(&'static str, u32)>)> {
    vec![
        ("u^3 + s^5 t", cone_cubic(&[(0, 0, 3, 1), (5, 1, 0, 1)]), vec![("II", 1), ("II*", 1)]),
        ("u^3 + s^3 t u", cone_cubic(&[(0, 0, 3, 1), (3, 1, 1, 1)]), vec![("III", 1), ("III*", 1)]),
        ("u^3 + s^4 t^2", cone_cubic(&[(0, 0, 3, 1), (4, 2, 0, 1)]), vec![("IV", 1), ("IV*", 1)]),
        ("u^3 + s^3 t^3", cone_cubic(&[(0, 0, 3, 1), (3, 3, 0, 1)]), vec![("I0*", 2)]),
        (
            "u^3 - 3 s^2 t^2 u + 2 s^3 t^3 + s t^5",
            cone_cubic(&[(0, 0, 3, 1), (2, 2, 1, -3), (3, 3, 0, 2), (1, 5, 0, 1)]),
            vec![("I1", 2), ("I2*", 1), ("II", 1)],
        ),
        (
            "u^3 - 3 s^2 t^2 u + 2 s^3 t^3 + t^6",
            cone_cubic(&[(0, 0, 3, 1), (2, 2, 1, -3), (3, 3, 0, 2), (0, 6, 0, 1)]),
            vec![("I1", 3), ("I3*", 1)],
        ),
        (
            "u^3 - 3 s^4 u + 2 s^6 + s^3 t^3",
            cone_cubic(&[(0, 0, 3, 1), (4, 0, 1, -3), (6, 0, 0, 2), (3, 3, 0, 1)]),
            vec![("I0*", 1), ("I1", 3), ("I3", 1)],
        ),
        (
            "u^3 - 3 s^4 u + 2 s^6 + s^5 t",
            cone_cubic(&[(0, 0, 3, 1), (4, 0, 1, -3), (6, 0, 0, 2), (5, 1, 0, 1)]),
            vec![("I1", 2), ("II*", 1)],
        ),
        (
            "u^3 - 3 s^4 u + 2 s^6 + s^2 t^4",
            cone_cubic(&[(0, 0, 3, 1), (4, 0, 1, -3), (6, 0, 0, 2), (2, 4, 0, 1)]),
            vec![("I1", 4), ("I4", 1), ("IV", 1)],
        ),
        ("u^3 + s^6 + t^6", cone_cubic(&[(0, 0, 3, 1), (6, 0, 0, 1), (0, 6, 0, 1)]), vec![("II", 6)]),
    ]
}

/// `u^3 - 3 h^2 u + 2 h^3 + extra` with `h = s^2 + t^2`.
fn near_triple(extra: &[(u32, u32, u32, i64)]) -> ConeBranchData {
    let mut terms = vec![(0, 0, 3, 1), (4, 0, 1, -3), (2, 2, 1, -6), (0, 4, 1, -3)];
    terms.extend([(6, 0, 0, 2), (4, 2, 0, 6), (2, 4, 0, 6), (0, 6, 0, 2)]);
    terms.extend_from_slice(extra);
    // merge repeated monomials
    let mut merged: Vec<(u32, u32, u32, i64)> = Vec::new();
    for (i, j, k, c) in terms {
        match merged.iter_mut().find(|m| (m.0, m.1, m.2) == (i, j, k)) {
            Some(m) => m.3 += c,
            None => merged.push((i, j, k, c)),
        }
    }
    merged.retain(|m| m.3 != 0);
    cone_cubic(&merged)
}

/// Cubics whose branch curves carry only `A_n` germs.
pub fn all_a_fixtures() -> Vec<(&'static str, ConeBranchData)> {
    vec![
        ("u^3 + s^6 + t^6", cone_cubic(&[(0, 0, 3, 1), (6, 0, 0, 1), (0, 6, 0, 1)])),
        ("two I3 fibers", near_triple(&[(3, 3, 0, 1)])),
        ("I2 and I4 fibers", near_triple(&[(4, 2, 0, 1)])),
    ]
}

pub fn plane(terms: &[([u32; 3], i64)]) -> MultiPoly {
    let ring = PolyRing::new(["x", "y", "z"]);
    MultiPoly::from_terms(&ring, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
}

/// Upper component of the worked example: `x^2 y`, `l: x + y = z`,
/// `p = [1:1:2]`.
pub fn example_top() -> ComponentData {
    ComponentData {
        cubic: plane(&[([2, 1, 0], 1)]),
        line: plane(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], -1)]),
        point: [1, 1, 2].map(rat),
    }
}

/// Lower component: the nodal cubic `y^2 z = x^3 + x^2 z`, `l: x = 2y`
/// through the node, `p = [2:1:1]`.
pub fn example_bottom() -> ComponentData {
    ComponentData {
        cubic: plane(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]),
        line: plane(&[([1, 0, 0], 1), ([0, 1, 0], -2)]),
        point: [2, 1, 1].map(rat),
    }
}
