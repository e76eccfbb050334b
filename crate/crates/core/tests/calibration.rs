mod common;

use boolcube::analysis::corpus::submodular_corpus;
use boolcube::analysis::{census_experiment, hockey_tail_experiment, lipschitz_sum_experiment, DegreeRule};
use boolcube::numeric::derive_seed;
use boolcube::zoo::{hockey_stick, random_talagrand_mdnf};
use boolcube::CubeFunction;
use common::*;

const HOCKEY_KS: [usize; 5] = [2, 8, 12, 16, 20];
const TALAGRAND_K: usize = 16;
const TALAGRAND_SEEDS: usize = 200;
const LIPSCHITZ_ALPHAS: [f64; 4] = [0.05, 0.1, 0.2, 0.4];
const CENSUS_EPS: [f64; 4] = [0.05, 0.1, 0.2, 0.3];

fn named_corpus(count: usize, seed: u64) -> Vec<(String, CubeFunction)> {
    submodular_corpus(count, 8, seed)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (format!("{}-{i}", m.kind.as_str()), m.function))
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn compute() -> Calibration {
    let hockey: Vec<HockeyFixture> = HOCKEY_KS
        .iter()
        .map(|&k| {
            let d = k / 2;
            let tail = hockey_tail_exact(k, d);
            HockeyFixture { k, d, tail, scaled: tail * k as f64 * (d as f64).powf(1.5) }
        })
        .collect();
    let hockey_scaled_min = hockey.iter().map(|h| h.scaled).fold(f64::INFINITY, f64::min);

    let root = (TALAGRAND_K as f64).sqrt();
    let alpha = 1.0 / root;
    let (mut ns, mut tails, mut failures) = (Vec::new(), Vec::new(), 0);
    for index in 0..TALAGRAND_SEEDS {
        let h = random_talagrand_mdnf(TALAGRAND_K, derive_seed(0, index as u64)).unwrap().to_table().unwrap();
        let v = noise_by_operator(h.values(), TALAGRAND_K, alpha);
        let d = ((v * root / 2.0).floor() as usize).min(TALAGRAND_K);
        let tail = tail_of(&recursive_transform(h.values()), d);
        if 4.0 * tail < 2.0 * (v - alpha * d as f64) - 1e-9 {
            failures += 1;
        }
        ns.push(v);
        tails.push(tail);
    }
    let talagrand = TalagrandFixture {
        k: TALAGRAND_K,
        seeds: TALAGRAND_SEEDS,
        master_seed: 0,
        alpha,
        ns_min: min(&ns),
        ns_mean: mean(&ns),
        ns_max: max(&ns),
        tail_min: min(&tails),
        tail_mean: mean(&tails),
        tail_max: max(&tails),
        chain_failures: failures,
        ns_mean_floor: 0.02,
    };

    let corpus = named_corpus(50, 0);
    let lipschitz = lipschitz_sum_experiment(&corpus, &LIPSCHITZ_ALPHAS).unwrap();
    let census = census_experiment(&corpus, &CENSUS_EPS, None).unwrap();
    Calibration {
        hockey,
        hockey_scaled_min,
        talagrand,
        lipschitz_corpus: (50, 0),
        lipschitz_alphas: LIPSCHITZ_ALPHAS.to_vec(),
        lipschitz_max_ratio: lipschitz.iter().map(|r| r.ratio).filter(|r| r.is_finite()).fold(0.0, f64::max),
        census_eps: CENSUS_EPS.to_vec(),
        census_max_statistic: census.iter().map(|r| r.statistic).fold(0.0, f64::max),
    }
}

#[test]
#[ignore = "rewrites the checked-in fixture"]
fn regenerate_calibration() {
    let text = serde_json::to_string_pretty(&compute()).unwrap();
    std::fs::write(calibration_path(), text + "\n").unwrap();
}

#[test]
fn exact_hockey_tail_matches_definition_sum() {
    for k in 1..=8 {
        let f = hockey_stick(k, k).unwrap();
        let coeffs = definition_sum(f.values());
        for d in 0..=k {
            let exact = hockey_tail_exact(k, d);
            assert!((exact - tail_of(&coeffs, d)).abs() < 1e-14, "k={k} d={d}");
        }
    }
    assert_eq!(hockey_tail_exact(2, 1), 1.0 / 16.0);
}

#[test]
fn noise_oracles_agree() {
    for k in 2..=6 {
        for seed in 0..5 {
            let h = random_talagrand_mdnf(k, seed).unwrap().to_table().unwrap();
            for alpha in [0.05, 0.2, 0.5] {
                let a = noise_direct(h.values(), k, alpha);
                let b = noise_by_operator(h.values(), k, alpha);
                assert!((a - b).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn recursive_transform_matches_definition_sum() {
    let values: Vec<f64> = (0..64).map(|x| ((x * 37 % 11) as f64) / 7.0).collect();
    let a = recursive_transform(&values);
    let b = definition_sum(&values);
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-13));
}

#[test]
fn library_hockey_tails_match_fixture() {
    let cal = load_calibration();
    let ks: Vec<usize> = cal.hockey.iter().map(|h| h.k).collect();
    let rows = hockey_tail_experiment(&ks, DegreeRule::HalfK).unwrap();
    for (row, fix) in rows.iter().zip(&cal.hockey) {
        assert_eq!(row.d, fix.d);
        assert!((row.tail - fix.tail).abs() <= 1e-12, "k={}", row.k);
    }
}

#[test]
fn lipschitz_and_census_within_frozen_constants() {
    let cal = load_calibration();
    let (count, seed) = cal.lipschitz_corpus;
    let corpus = named_corpus(count, seed);
    let rows = lipschitz_sum_experiment(&corpus, &cal.lipschitz_alphas).unwrap();
    for r in rows.iter().filter(|r| r.ratio.is_finite()) {
        assert!(r.ratio <= cal.lipschitz_max_ratio * (1.0 + 1e-9), "{} alpha={}", r.name, r.alpha);
    }
    let census = census_experiment(&corpus, &cal.census_eps, None).unwrap();
    for r in &census {
        assert!(r.statistic <= cal.census_max_statistic * (1.0 + 1e-9) + 1e-12, "{} eps={}", r.name, r.eps);
    }
}
