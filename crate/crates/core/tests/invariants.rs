mod common;

use delpezzo_core::algebra::binary_form::expand_forms;
use delpezzo_core::algebra::{rat, resultant, truncated_quotient_dim, BinaryForm, MultiPoly, PolyRing, Rational};
use delpezzo_core::cone::{classify_all_lines, git_stable, parametrize, ConeBranchData};
use delpezzo_core::kodaira::KodairaType;
use delpezzo_core::singularity::classify_singularity;
use delpezzo_core::weierstrass::{kodaira_from_valuations, Valuation, ValuationTriple, WeierstrassError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn univariate(roots: &[i64], lead: i64) -> MultiPoly {
    let ring = PolyRing::new(["x"]);
    let x = MultiPoly::var(&ring, 0);
    roots.iter().fold(MultiPoly::constant(&ring, rat(lead)), |acc, &r| {
        &acc * &(&x - &MultiPoly::constant(&ring, rat(r)))
    })
}

fn constant_value(p: &MultiPoly) -> Rational {
    p.coefficient(&[0])
}

fn binary(coeffs: &[i64]) -> BinaryForm {
    BinaryForm::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `res(f, g) = a^n b^m prod (alpha_i - beta_j)` and swapping the
    /// arguments multiplies by `(-1)^(m n)`.
    #[test]
    fn resultant_matches_root_product(
        alphas in prop::collection::vec(-5i64..=5, 1..4),
        betas in prop::collection::vec(-5i64..=5, 1..4),
        a in prop_oneof![-3i64..=-1, 1i64..=3],
        b in prop_oneof![-3i64..=-1, 1i64..=3],
    ) {
        let (m, n) = (alphas.len() as u32, betas.len() as u32);
        let f = univariate(&alphas, a);
        let g = univariate(&betas, b);
        let mut expected = delpezzo_core::algebra::rational::pow(&rat(a), n)
            * delpezzo_core::algebra::rational::pow(&rat(b), m);
        for x in &alphas {
            for y in &betas {
                expected *= rat(x - y);
            }
        }
        let fg = constant_value(&resultant(&f, &g, 0).unwrap());
        let gf = constant_value(&resultant(&g, &f, 0).unwrap());
        prop_assert_eq!(&fg, &expected);
        let sign = if (m * n) % 2 == 0 { rat(1) } else { rat(-1) };
        prop_assert_eq!(gf, sign * expected);
    }

    #[test]
    fn factorization_round_trips(
        pieces in prop::collection::vec((prop::collection::vec(-4i64..=4, 2..4), 1u32..3), 1..4),
        unit in prop_oneof![-6i64..=-1, 1i64..=6],
    ) {
        let mut f = BinaryForm::constant(rat(unit));
        for (coeffs, m) in &pieces {
            let piece = binary(coeffs);
            prop_assume!(!piece.is_zero());
            f = f.mul(&piece.pow(*m));
        }
        let list = f.factor().unwrap();
        prop_assert_eq!(expand_forms(&list), f.clone());
        let total: u32 = list.factors.iter().map(|(g, m)| g.degree() * m).sum();
        prop_assert_eq!(total, f.degree());
        for (g, _) in &list.factors {
            prop_assert!(g.degree() >= 1);
        }
    }

    /// The truncated quotient can only grow with the truncation order.
    #[test]
    fn jet_dimension_is_monotone(
        coeffs in prop::collection::vec(-3i64..=3, 9),
        order in 1u32..7,
    ) {
        let (x, _) = common::plane_xy();
        let ring = x.ring().clone();
        let exps = [[2, 0], [1, 1], [0, 2], [3, 0], [2, 1], [1, 2], [0, 3], [4, 0], [0, 4]];
        let f = MultiPoly::from_terms(&ring, exps.iter().zip(&coeffs).map(|(e, &c)| (e.to_vec(), rat(c))));
        prop_assume!(!f.is_zero());
        let gens = [f.derivative(0), f.derivative(1)];
        let low = truncated_quotient_dim(&gens, order);
        let high = truncated_quotient_dim(&gens, order + 1);
        prop_assert!(low <= high);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Types survive any invertible rational affine change of coordinates.
    #[test]
    fn singularity_type_is_affine_invariant(index in 0usize..16, seed in any::<u64>()) {
        let forms = common::normal_forms();
        let (kind, f) = &forms[index % forms.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, c) = common::random_affine_image(f, &mut rng);
        prop_assert_eq!(classify_singularity(&g, &c).unwrap().kind, *kind);
    }
}

#[test]
fn kodaira_table_is_total_on_minimal_triples() {
    let range = |k: u32| (0..=k).map(Valuation::Finite).chain([Valuation::Infinite]);
    let mut classified = 0;
    for v_p in range(5) {
        for v_q in range(7) {
            for v_delta in 0..=12 {
                let v = ValuationTriple::new(v_p, v_q, v_delta);
                match kodaira_from_valuations(v) {
                    Ok(kind) => {
                        assert!(v.is_consistent() && v.is_minimal());
                        // Euler number equals the order of the discriminant.
                        assert_eq!(kind.euler(), Some(v_delta), "{v}");
                        classified += 1;
                    }
                    Err(WeierstrassError::Inconsistent(_)) => assert!(!v.is_consistent()),
                    Err(WeierstrassError::NonMinimal(_)) => assert!(v.is_consistent() && !v.is_minimal()),
                    Err(e) => panic!("unexpected {e}"),
                }
            }
        }
    }
    assert!(classified > 0);
}

/// `g(Sym^2(M) x, x3)`, whose sextic is `f(M (s, t), u)`.
fn substitute(data: &ConeBranchData, m: [[i64; 2]; 2]) -> ConeBranchData {
    let [[a, b], [c, d]] = m;
    let g = data.cubic();
    let ring = g.ring().clone();
    let x: Vec<MultiPoly> = MultiPoly::vars(&ring);
    let comb = |k: [i64; 3]| {
        (0..3).fold(MultiPoly::zero(&ring), |acc, i| &acc + &x[i].scale(&rat(k[i])))
    };
    let images = [
        comb([a * a, 2 * a * b, b * b]),
        comb([a * c, a * d + b * c, b * d]),
        comb([c * c, 2 * c * d, d * d]),
        x[3].clone(),
    ];
    ConeBranchData::new(g.compose(&images)).unwrap()
}

fn fiber_multiset(data: &ConeBranchData) -> Option<Vec<(KodairaType, u32)>> {
    let mut out: Vec<(KodairaType, u32)> = classify_all_lines(&parametrize(data))
        .ok()?
        .iter()
        .map(|r| (r.kodaira, r.degree))
        .collect();
    out.sort_by_key(|(k, d)| (k.to_string(), *d));
    Some(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Reparametrizing the ruling by `M` keeps the verdict and the fibers.
    #[test]
    fn git_verdict_is_invariant_under_ruling_changes(
        index in 0usize..13,
        m in [[-2i64..=2, -2i64..=2], [-2i64..=2, -2i64..=2]],
    ) {
        prop_assume!(m[0][0] * m[1][1] != m[0][1] * m[1][0]);
        let mut fixtures: Vec<ConeBranchData> =
            common::table_fixtures().into_iter().map(|(_, d, _)| d).collect();
        fixtures.extend(common::all_a_fixtures().into_iter().map(|(_, d)| d));
        let data = &fixtures[index % fixtures.len()];
        let moved = substitute(data, m);
        prop_assert_eq!(git_stable(data).is_stable(), git_stable(&moved).is_stable());
        prop_assert_eq!(fiber_multiset(data), fiber_multiset(&moved));
    }
}
