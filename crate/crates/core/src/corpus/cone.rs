use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{draw_rational, monomials};
use crate::algebra::rational::display_rational;
use crate::algebra::{discriminant_cubic, ratio, MultiPoly, PolyRing};
use crate::cone::{
    classify_all_lines, crosscheck, discriminant_form, git_verdict, parametrize, ConeBranchData,
};
use crate::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub height: u32,
    pub count: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0,
            height: 5,
            count: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Rejections {
    pub cone_point: usize,
    pub non_reduced: usize,
}

/// Accepted cubics with their draw numbers. Draws with a zero `x3^3`
/// coefficient or an identically vanishing discriminant are skipped.
pub fn draw_cone_cubics(config: &CorpusConfig) -> (Vec<(usize, ConeBranchData)>, Rejections) {
    assert!(config.height > 0, "height bound must be positive");
    let ring = PolyRing::new(["x0", "x1", "x2", "x3"]);
    let exps = monomials(4, 3);
    let apex = vec![0, 0, 0, 3];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rejected = Rejections::default();
    let mut out = Vec::with_capacity(config.count);
    let mut draw = 0;
    while out.len() < config.count {
        let coeffs: Vec<_> = exps.iter().map(|_| draw_rational(&mut rng, config.height)).collect();
        draw += 1;
        let g = MultiPoly::from_terms(&ring, exps.iter().cloned().zip(coeffs));
        if g.coefficient(&apex).is_zero() {
            rejected.cone_point += 1;
            continue;
        }
        let data = ConeBranchData::new(g).expect("nonzero homogeneous cubic");
        if discriminant_form(&parametrize(&data)).is_err() {
            rejected.non_reduced += 1;
            continue;
        }
        out.push((draw, data));
    }
    (out, rejected)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeSample {
    pub index: usize,
    pub draw: usize,
    pub cubic: MultiPoly,
    /// Total degree of the discriminant of the sextic in `u`, when it is a
    /// nonzero form in `(s, t)`.
    pub disc_degree: Option<u32>,
    pub multiplicity_sum: u32,
    pub euler_sum: Option<u32>,
    pub fibers: BTreeMap<String, u32>,
    pub oracle_factors: usize,
    pub oracle_agreed: usize,
    pub git_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConeSample {
    pub fn invariants_hold(&self) -> bool {
        self.error.is_none()
            && self.disc_degree == Some(12)
            && self.multiplicity_sum == 12
            && self.euler_sum == Some(12)
            && self.oracle_agreed == self.oracle_factors
    }
}

fn direct_disc_degree(data: &ConeBranchData) -> Option<u32> {
    let f = parametrize(data);
    let u = f.poly().coefficients_in(2);
    let coeff = |k: usize| u.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(f.poly().ring()));
    let disc = discriminant_cubic(&coeff(3), &coeff(2), &coeff(1), &coeff(0)).value;
    (!disc.is_zero() && disc.is_homogeneous() && disc.degree_in(2) == Some(0))
        .then(|| disc.total_degree().expect("nonzero"))
}

fn analyze(index: usize, draw: usize, data: &ConeBranchData) -> ConeSample {
    let f = parametrize(data);
    let disc = discriminant_form(&f).expect("accepted draws have a nonzero discriminant");
    let multiplicity_sum = disc
        .factor()
        .expect("nonzero")
        .factors
        .iter()
        .map(|(g, m)| g.degree() * m)
        .sum();
    let outcome = classify_all_lines(&f);
    let verdict = git_verdict(&outcome);
    let mut fibers = BTreeMap::new();
    let (euler_sum, mut error) = match &outcome {
        Ok(records) => {
            for r in records {
                *fibers.entry(r.kodaira.to_string()).or_insert(0) += r.degree;
            }
            (Some(records.iter().map(|r| r.euler * r.degree).sum()), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let (oracle_factors, oracle_agreed) = match crosscheck(&f) {
        Ok(rows) => (rows.len(), rows.iter().filter(|r| r.agree).count()),
        Err(e) => {
            error.get_or_insert_with(|| e.to_string());
            (0, 0)
        }
    };
    ConeSample {
        index,
        draw,
        cubic: data.cubic().clone(),
        disc_degree: direct_disc_degree(data),
        multiplicity_sum,
        euler_sum,
        fibers,
        oracle_factors,
        oracle_agreed,
        git_stable: verdict.is_stable(),
        error,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleAgreement {
    pub factors: usize,
    pub agreed: usize,
    /// `agreed / factors` in lowest terms, `"1"` for an empty corpus.
    pub rate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub height: u32,
    pub count: usize,
    pub draws: usize,
    pub rejected: Rejections,
    pub disc_degree_histogram: BTreeMap<String, usize>,
    pub multiplicity_sum_histogram: BTreeMap<u32, usize>,
    pub euler_sum_histogram: BTreeMap<String, usize>,
    pub oracle_agreement: OracleAgreement,
    pub fiber_types: BTreeMap<String, u32>,
    pub git_stable: usize,
    pub failures: Vec<usize>,
    pub invariants_hold: bool,
    pub samples: Vec<ConeSample>,
}

fn key(v: Option<u32>) -> String {
    v.map_or_else(|| "none".to_string(), |d| d.to_string())
}

/// Draws the corpus and classifies every sample. Samples are analysed in
/// parallel and reported in index order.
pub fn run_corpus(config: &CorpusConfig) -> CorpusReport {
    let (accepted, rejected) = draw_cone_cubics(config);
    let draws = accepted.last().map_or(0, |(d, _)| *d);
    let mut samples: Vec<ConeSample> = accepted
        .par_iter()
        .enumerate()
        .map(|(i, (draw, data))| analyze(i, *draw, data))
        .collect();
    samples.sort_by_key(|s| s.index);
    let mut disc_degree_histogram = BTreeMap::new();
    let mut multiplicity_sum_histogram = BTreeMap::new();
    let mut euler_sum_histogram = BTreeMap::new();
    let mut fiber_types = BTreeMap::new();
    for s in &samples {
        *disc_degree_histogram.entry(key(s.disc_degree)).or_insert(0) += 1;
        *multiplicity_sum_histogram.entry(s.multiplicity_sum).or_insert(0) += 1;
        *euler_sum_histogram.entry(key(s.euler_sum)).or_insert(0) += 1;
        for (label, n) in &s.fibers {
            *fiber_types.entry(label.clone()).or_insert(0) += n;
        }
    }
    let factors = samples.iter().map(|s| s.oracle_factors).sum();
    let agreed = samples.iter().map(|s| s.oracle_agreed).sum();
    let rate = if factors == 0 {
        "1".to_string()
    } else {
        display_rational(&ratio(agreed as i64, factors as i64))
    };
    let failures: Vec<usize> = samples.iter().filter(|s| !s.invariants_hold()).map(|s| s.index).collect();
    CorpusReport {
        schema: SCHEMA,
        command: "corpus",
        seed: config.seed,
        height: config.height,
        count: config.count,
        draws,
        rejected,
        disc_degree_histogram,
        multiplicity_sum_histogram,
        euler_sum_histogram,
        oracle_agreement: OracleAgreement { factors, agreed, rate },
        fiber_types,
        git_stable: samples.iter().filter(|s| s.git_stable).count(),
        invariants_hold: failures.is_empty(),
        failures,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let report = run_corpus(&CorpusConfig { count: 0, ..Default::default() });
        assert!(report.invariants_hold);
        assert!(report.samples.is_empty());
        assert_eq!(report.oracle_agreement.rate, "1");
    }

    #[test]
    fn first_draw_is_generic() {
        let report = run_corpus(&CorpusConfig { count: 1, ..Default::default() });
        let s = &report.samples[0];
        assert!(s.invariants_hold(), "{s:?}");
        assert_eq!(s.fibers, BTreeMap::from([("I1".to_string(), 12)]));
        assert_eq!(s.oracle_factors, s.oracle_agreed);
    }

    #[test]
    fn draws_are_reproducible() {
        let config = CorpusConfig { seed: 7, height: 2, count: 5 };
        let (a, ra) = draw_cone_cubics(&config);
        let (b, rb) = draw_cone_cubics(&config);
        assert_eq!(a, b);
        assert_eq!(ra, rb);
    }
}
