use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{draw_int, draw_rational, monomials};
use crate::algebra::{rat, MultiPoly, PolyRing, Rational};
use crate::broken::{
    classify_component, detect_nonnormal, kernel_basis, normalize, validate_component, BrokenType,
    ComponentData, Matrix2, Normality, Vec3,
};
use crate::kodaira::KodairaType;

/// Shape of a generated component. `Random` draws every coefficient; the
/// other templates place a prescribed germ of `C` on `l`, then move the
/// whole configuration by a random projective transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Template {
    Random,
    /// `l` tangent to smooth `C` with contact two.
    Tangent,
    /// `l` through a node, off both branch tangents.
    Node,
    /// `l` through a cusp, off the cusp tangent.
    Cusp,
    /// `l` through the tacnode of a conic and a tangent line.
    Tacnode,
    /// `C = s^2 r` with `l` avoiding `s = r = 0`.
    DoubleLine,
}

impl Template {
    pub const NORMAL: [Template; 5] = [
        Template::Random,
        Template::Tangent,
        Template::Node,
        Template::Cusp,
        Template::Tacnode,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSample {
    pub index: usize,
    pub template: Template,
    pub data: ComponentData,
    /// Draws discarded before this one was accepted.
    pub redraws: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSample {
    pub index: usize,
    pub expected: BrokenType,
    pub first: ComponentData,
    pub second: ComponentData,
}

fn plane_ring() -> std::sync::Arc<PolyRing> {
    PolyRing::new(["x", "y", "z"])
}

fn form(terms: Vec<(Vec<u32>, Rational)>) -> MultiPoly {
    MultiPoly::from_terms(&plane_ring(), terms)
}

fn random_form(rng: &mut ChaCha8Rng, height: u32, degree: u32) -> MultiPoly {
    form(monomials(3, degree).into_iter().map(|e| (e, draw_rational(rng, height))).collect())
}

fn nonzero(rng: &mut ChaCha8Rng, height: u32) -> Rational {
    loop {
        let c = draw_int(rng, height);
        if c != 0 {
            return rat(c);
        }
    }
}

fn linear(c: &Vec3) -> MultiPoly {
    form(monomials(3, 1).into_iter().zip(c.iter().cloned()).collect())
}

fn random_vec(rng: &mut ChaCha8Rng, height: u32) -> Vec3 {
    loop {
        let v = [0, 1, 2].map(|_| draw_rational(rng, height));
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// A random point of the line `l`, possibly on `C`.
fn point_on(rng: &mut ChaCha8Rng, height: u32, l: &Vec3) -> Vec3 {
    let [k1, k2] = kernel_basis(l);
    loop {
        let (a, b) = (draw_rational(rng, height), draw_rational(rng, height));
        if !(a.is_zero() && b.is_zero()) {
            return normalize(&[0, 1, 2].map(|i| &a * &k1[i] + &b * &k2[i]));
        }
    }
}

fn det3(m: &[Vec3; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn random_gl3(rng: &mut ChaCha8Rng, height: u32) -> [Vec3; 3] {
    loop {
        let m = [0, 1, 2].map(|_| [0, 1, 2].map(|_| draw_rational(rng, height)));
        if !det3(&m).is_zero() {
            return m;
        }
    }
}

/// `(C o A, l o A, A^-1 p)`: the same configuration in new coordinates.
fn transform(data: &ComponentData, a: &[Vec3; 3]) -> ComponentData {
    let images: Vec<MultiPoly> = a.iter().map(linear).collect();
    let det = det3(a);
    // adjugate / det, computed row by row
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &a[r0][c0] * &a[r1][c1] - &a[r0][c1] * &a[r1][c0]
    };
    let inv: [Vec3; 3] = [0, 1, 2].map(|i| [0, 1, 2].map(|j| cof(j, i) / &det));
    let p = &data.point;
    let moved = [0, 1, 2].map(|i| (0..3).fold(Rational::zero(), |acc, j| acc + &inv[i][j] * &p[j]));
    ComponentData {
        cubic: data.cubic.compose(&images),
        line: data.line.compose(&images),
        point: normalize(&moved),
    }
}

fn template_data(rng: &mut ChaCha8Rng, height: u32, template: Template) -> ComponentData {
    let e = |x: u32, y: u32, z: u32| vec![x, y, z];
    let (cubic, line) = match template {
        Template::Random => {
            let line = random_vec(rng, height);
            let cubic = random_form(rng, height, 3);
            let point = point_on(rng, height, &line);
            return ComponentData { cubic, line: linear(&line), point };
        }
        Template::Tangent => {
            // y q + x^2 (a x + b z) with q(0, 0, 1) != 0 and b != 0
            let q = &random_form(rng, height, 2) + &form(vec![(e(0, 0, 2), nonzero(rng, height))]);
            let rest = form(vec![(e(3, 0, 0), draw_rational(rng, height)), (e(2, 0, 1), nonzero(rng, height))]);
            let y = form(vec![(e(0, 1, 0), rat(1))]);
            (&(&y * &q) + &rest, [rat(0), rat(1), rat(0)])
        }
        Template::Node | Template::Cusp => {
            // q(x, y) z + f(x, y)
            let q = if template == Template::Node {
                loop {
                    let [a, b, c] = [0, 1, 2].map(|_| draw_rational(rng, height));
                    if !(&b * &b - rat(4) * &a * &c).is_zero() {
                        break form(vec![(e(2, 0, 1), a), (e(1, 1, 1), b), (e(0, 2, 1), c)]);
                    }
                }
            } else {
                form(vec![(e(0, 2, 1), nonzero(rng, height))])
            };
            let mut f = vec![(e(3, 0, 0), nonzero(rng, height))];
            f.extend([e(2, 1, 0), e(1, 2, 0), e(0, 3, 0)].map(|m| (m, draw_rational(rng, height))));
            (&q + &form(f), [nonzero(rng, height), draw_rational(rng, height), rat(0)])
        }
        Template::Tacnode => {
            // y (y z + a x^2 + b x y + c y^2), a != 0
            let conic = form(vec![
                (e(0, 1, 1), rat(1)),
                (e(2, 0, 0), nonzero(rng, height)),
                (e(1, 1, 0), draw_rational(rng, height)),
                (e(0, 2, 0), draw_rational(rng, height)),
            ]);
            let y = form(vec![(e(0, 1, 0), rat(1))]);
            (&y * &conic, [nonzero(rng, height), draw_rational(rng, height), rat(0)])
        }
        Template::DoubleLine => {
            let (s, r) = loop {
                let (s, r) = (random_vec(rng, height), random_vec(rng, height));
                if !crate::broken::is_null(&crate::broken::cross(&s, &r)) {
                    break (s, r);
                }
            };
            let cubic = &linear(&s).pow(2) * &linear(&r);
            let line = random_vec(rng, height);
            let point = point_on(rng, height, &line);
            return ComponentData { cubic, line: linear(&line), point };
        }
    };
    let point = point_on(rng, height, &line);
    let base = ComponentData { cubic, line: linear(&line), point };
    transform(&base, &random_gl3(rng, height))
}

/// Whether a draw realizes its template: valid data, with the prescribed
/// germ on `l` for the constructed templates.
fn accept(data: &ComponentData, template: Template) -> bool {
    if validate_component(data).is_err() {
        return false;
    }
    let normal = matches!(detect_nonnormal(data), Ok(Normality::Normal));
    match template {
        Template::Random => normal,
        Template::DoubleLine => !normal && classify_component(data).is_ok(),
        _ => {
            normal
                && crate::broken::branch_profile(data).is_ok_and(|p| {
                    p.pattern == [2, 1]
                        && match (template, p.germ.map(|g| g.kind)) {
                            (Template::Tangent, Some(k)) => k == crate::singularity::SingularityType::Smooth,
                            (Template::Node, Some(k)) => k == crate::singularity::SingularityType::A(1),
                            (Template::Cusp, Some(k)) => k == crate::singularity::SingularityType::A(2),
                            (Template::Tacnode, Some(k)) => k == crate::singularity::SingularityType::A(3),
                            _ => false,
                        }
                })
        }
    }
}

fn draw_component(rng: &mut ChaCha8Rng, height: u32, template: Template) -> (ComponentData, usize) {
    let mut redraws = 0;
    loop {
        let data = template_data(rng, height, template);
        if accept(&data, template) {
            return (data, redraws);
        }
        redraws += 1;
    }
}

/// `count` valid normal components, cycling through [`Template::NORMAL`].
pub fn component_corpus(seed: u64, count: usize, height: u32) -> Vec<ComponentSample> {
    assert!(height > 0, "height bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let template = Template::NORMAL[index % Template::NORMAL.len()];
            let (data, redraws) = draw_component(&mut rng, height, template);
            ComponentSample { index, template, data, redraws }
        })
        .collect()
}

/// A component that classifies with the given gluing fiber family.
fn draw_classified(rng: &mut ChaCha8Rng, height: u32, template: Template, want: fn(KodairaType) -> bool) -> ComponentData {
    loop {
        let (data, _) = draw_component(rng, height, template);
        if classify_component(&data).is_ok_and(|r| want(r.gluing_type)) {
            return data;
        }
    }
}

/// Pairs that glue, cycling through `B_I`, `B_II`, `B_III`. A `B_I` pair is
/// a component and a projective image of it; the others combine double-line
/// components with normal components carrying a contact point.
pub fn glue_pair_corpus(seed: u64, count: usize, height: u32) -> Vec<PairSample> {
    assert!(height > 0, "height bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let contact = [Template::Tangent, Template::Node, Template::Cusp, Template::Tacnode];
    (0..count)
        .map(|index| {
            let (expected, first, second) = match index % 3 {
                0 => {
                    let c = draw_classified(&mut rng, height, Template::Random, |k| k == KodairaType::IStar(0));
                    let image = transform(&c, &random_gl3(&mut rng, height));
                    (BrokenType::BI, c, image)
                }
                1 => {
                    let n1 = draw_classified(&mut rng, height, Template::DoubleLine, |k| k == KodairaType::N1);
                    let template = contact[(index / 3) % contact.len()];
                    let star = draw_classified(&mut rng, height, template, |k| matches!(k, KodairaType::IStar(n) if n > 0));
                    if rng.gen_bool(0.5) {
                        (BrokenType::BII, n1, star)
                    } else {
                        (BrokenType::BII, star, n1)
                    }
                }
                _ => {
                    let a = draw_classified(&mut rng, height, Template::DoubleLine, |k| k == KodairaType::N1);
                    let b = draw_classified(&mut rng, height, Template::DoubleLine, |k| k == KodairaType::N1);
                    (BrokenType::BIII, a, b)
                }
            };
            PairSample { index, expected, first, second }
        })
        .collect()
}

/// A random invertible `2 x 2` integer matrix.
pub fn random_moebius(rng: &mut ChaCha8Rng, height: u32) -> Matrix2 {
    loop {
        let m = [[0; 2]; 2].map(|row| row.map(|_: i32| draw_rational(rng, height)));
        if &m[0][0] * &m[1][1] != &m[0][1] * &m[1][0] {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broken::{branch_profile, glue, gluing_fiber_type};

    #[test]
    fn transform_preserves_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for template in Template::NORMAL {
            let (data, _) = draw_component(&mut rng, 3, template);
            let moved = transform(&data, &random_gl3(&mut rng, 3));
            let (a, b) = (branch_profile(&data).unwrap(), branch_profile(&moved).unwrap());
            assert_eq!(a.pattern, b.pattern);
            assert_eq!(gluing_fiber_type(&a), gluing_fiber_type(&b));
        }
    }

    #[test]
    fn templates_give_their_rows() {
        let expected = [
            (Template::Tangent, KodairaType::IStar(1)),
            (Template::Node, KodairaType::IStar(2)),
            (Template::Cusp, KodairaType::IStar(3)),
            (Template::Tacnode, KodairaType::IStar(4)),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (template, kind) in expected {
            let (data, _) = draw_component(&mut rng, 4, template);
            assert_eq!(gluing_fiber_type(&branch_profile(&data).unwrap()), Ok(kind));
        }
    }

    #[test]
    fn small_pair_corpus_glues() {
        for pair in glue_pair_corpus(5, 6, 3) {
            let out = glue(&pair.first, &pair.second).unwrap();
            assert_eq!(out.broken_type, pair.expected);
        }
    }
}
