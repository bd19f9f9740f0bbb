//! Goodness of fit for the built-in samplers on 10^5 draws.
//!
//! Each sampler is tested on several seeds and judged by pass rate, since a
//! correct sampler still fails a single test at rate `ALPHA`.

use dsim_core::analysis::{chi_square_integer, ks_one_sample};
use dsim_core::distributions::Distribution;
use dsim_core::rng::substream;

const DRAWS: usize = 100_000;
const ALPHA: f64 = 0.01;
const SEEDS: u64 = 20;
/// Three or more rejections in 20 has probability about 1e-3 for a correct sampler.
const MIN_PASSES: usize = 18;

#[test]
fn integer_samplers_fit_their_pmf() {
    for (i, spec) in [
        "geometric:p=0.7",
        "geometric:p=0.05",
        "zipf:s=3",
        "zipf:s=2.2",
    ]
    .iter()
    .enumerate()
    {
        let d = Distribution::parse(spec).unwrap();
        let d = d.as_integer().unwrap();
        let passes = (0..SEEDS)
            .filter(|&s| {
                let mut rng = substream(100 + i as u64, s);
                let xs: Vec<u64> = (0..DRAWS).map(|_| d.sample(&mut rng)).collect();
                chi_square_integer(&xs, d.as_ref(), 5.0, ALPHA)
                    .unwrap()
                    .pass
            })
            .count();
        assert!(passes >= MIN_PASSES, "{spec}: {passes}/{SEEDS}");
    }
}

#[test]
fn continuous_samplers_fit_their_cdf() {
    for (i, spec) in [
        "triangular",
        "uniform",
        "exp:lambda=1",
        "exp:lambda=0.25",
        "pareto_flat:c=2,lambda=2",
        "pareto_flat:c=1.3,lambda=1.5",
    ]
    .iter()
    .enumerate()
    {
        let d = Distribution::parse(spec).unwrap();
        let f = d.as_continuous().unwrap();
        let passes = (0..SEEDS)
            .filter(|&s| {
                let mut rng = substream(200 + i as u64, s);
                let xs: Vec<f64> = (0..DRAWS).map(|_| f.sample(&mut rng)).collect();
                ks_one_sample(&xs, |x| f.cdf(x), ALPHA).unwrap().pass
            })
            .count();
        assert!(passes >= MIN_PASSES, "{spec}: {passes}/{SEEDS}");
    }
}

#[test]
fn point_mass_is_constant() {
    let d = Distribution::parse("point:x=4").unwrap();
    let d = d.as_integer().unwrap();
    let mut rng = substream(1, 0);
    assert!((0..1000).all(|_| d.sample(&mut rng) == 4));
}
