use super::quadrature::integrate;
use super::Majorant;
use crate::distributions::MonotonePdf;

/// True iff `∫₀ˣ f ≥ ∫₀ˣ f* - 1e-9` at every grid point, with the left side
/// computed by adaptive quadrature.
pub fn check_majorization(f: &dyn MonotonePdf, m: &Majorant, grid: &[f64]) -> bool {
    let mut points: Vec<f64> = grid.iter().copied().filter(|x| *x > 0.0).collect();
    points.sort_by(f64::total_cmp);
    // integrate piecewise between grid points, splitting at the majorant knee
    let mut acc = 0.0;
    let mut prev = 0.0;
    for x in points {
        let mut lo = prev;
        if lo < m.t0() && m.t0() < x {
            acc += integrate(|t| f.pdf(t), lo, m.t0(), 1e-13);
            lo = m.t0();
        }
        acc += integrate(|t| f.pdf(t), lo, x, 1e-13);
        prev = x;
        if acc < m.cumulative(x) - 1e-9 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Exponential, ParetoFlat};

    fn grid() -> Vec<f64> {
        (1..=200).map(|i| i as f64 * 0.1).collect()
    }

    #[test]
    fn majorant_against_itself() {
        let p = ParetoFlat::new(2.0, 2.0).unwrap();
        assert!(check_majorization(&p, p.majorant(), &grid()));
        let q = ParetoFlat::new(1.3, 1.5).unwrap();
        assert!(check_majorization(&q, q.majorant(), &grid()));
    }

    #[test]
    fn exponential_majorizes() {
        let m = Majorant::new(2.0, 2.0).unwrap();
        assert!(check_majorization(
            &Exponential::new(1.0).unwrap(),
            &m,
            &grid()
        ));
    }

    #[test]
    fn heavier_tail_fails() {
        // tail 4x^-2 exceeds the 2x^-2 the majorant assumes
        let heavy = ParetoFlat::new(4.0, 2.0).unwrap();
        let m = Majorant::new(2.0, 2.0).unwrap();
        assert!(!check_majorization(&heavy, &m, &grid()));
        // a slow exponential also violates (2, 2) somewhere on [0, 20]
        let slow = Exponential::new(0.2).unwrap();
        assert!(!check_majorization(&slow, &m, &grid()));
    }
}
