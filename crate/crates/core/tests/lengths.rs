//! Monte-Carlo lengths against the closed-form bounds, and numeric checks on
//! the majorant used by the half-line bound.

use dsim_core::analysis::quadrature::integrate;
use dsim_core::analysis::{
    check_majorization, empirical_length, exp_tail_bound, halfline_bound, unit_interval_bound,
    Majorant, SchemeInput,
};
use dsim_core::bitcodes::Scheme;
use dsim_core::distributions::{Distribution, Exponential, MonotonePdf, ParetoFlat};

fn input(scheme: Scheme, spec: &str) -> SchemeInput {
    SchemeInput::new(scheme, &Distribution::parse(spec).unwrap()).unwrap()
}

#[test]
fn geometric_mean_length_range() {
    let stats =
        empirical_length(&input(Scheme::Integer, "geometric:p=0.7"), 10_000, 100, 21).unwrap();
    let bound = exp_tail_bound(1.5, (10.0f64 / 3.0).ln(), 10_000).unwrap();
    assert!((100.0..=400.0).contains(&stats.mean), "{}", stats.mean);
    assert!(stats.mean <= bound);
}

#[test]
fn triangular_mean_under_unit_bound() {
    let stats =
        empirical_length(&input(Scheme::UnitInterval, "triangular"), 10_000, 50, 22).unwrap();
    assert!(stats.mean <= unit_interval_bound(2.0, 10_000).unwrap());
}

#[test]
fn pareto_mean_under_halfline_bound() {
    let p = ParetoFlat::new(2.0, 2.0).unwrap();
    let stats = empirical_length(
        &input(Scheme::HalfLine, "pareto_flat:c=2,lambda=2"),
        10_000,
        50,
        23,
    )
    .unwrap();
    assert!(stats.mean <= halfline_bound(2.0, 2.0, p.f0(), 10_000).unwrap());
}

#[test]
fn pareto_flat_reference_values() {
    let p = ParetoFlat::new(2.0, 2.0).unwrap();
    assert!((p.majorant().t0() - 6f64.sqrt()).abs() < 1e-12);
    assert!((p.f0() - 0.272166).abs() < 1e-6);
    let t0 = p.majorant().t0();
    // the flat part and the power tail together carry unit mass
    let mass = integrate(|x| p.pdf(x), 0.0, t0, 1e-14)
        + integrate(|u| p.pdf(t0 / u) * t0 / (u * u), 0.0, 1.0, 1e-14);
    assert!((mass - 1.0).abs() < 1e-10, "{mass}");
}

/// `∫ √g` over `[0, ∞)`, folding the tail onto `(0, 1]` with `x = t/u`.
fn integral_sqrt(g: impl Fn(f64) -> f64, t: f64) -> f64 {
    integrate(|x| g(x).sqrt(), 0.0, t, 1e-12)
        + integrate(|u| g(t / u).sqrt() * t / (u * u), 0.0, 1.0, 1e-12)
}

#[test]
fn concave_functional_respects_majorization() {
    // f ≻ f* and φ = -√ concave give ∫φ(f) ≥ ∫φ(f*), i.e. ∫√f ≤ ∫√f*
    let grid: Vec<f64> = (1..=200).map(|i| f64::from(i) * 0.1).collect();
    let m = Majorant::new(2.0, 2.0).unwrap();
    for f in [
        Box::new(Exponential::new(1.0).unwrap()) as Box<dyn MonotonePdf>,
        Box::new(Exponential::new(3.0).unwrap()),
        Box::new(ParetoFlat::new(1.5, 3.0).unwrap()),
    ] {
        assert!(check_majorization(f.as_ref(), &m, &grid), "{}", f.name());
        let lhs = integral_sqrt(|x| f.pdf(x), 4.0);
        let rhs = integral_sqrt(|x| m.eval(x), m.t0());
        assert!(lhs <= rhs, "{}: {lhs} > {rhs}", f.name());
    }
    // exp(1) has ∫√f = 2 exactly
    let e = Exponential::new(1.0).unwrap();
    assert!((integral_sqrt(|x| e.pdf(x), 4.0) - 2.0).abs() < 1e-8);
}
