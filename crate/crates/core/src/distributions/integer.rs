use super::{IntegerDistribution, TailCertificate};
use crate::error::{invalid, Result};

/// `P(X = x) = p(1-p)^{x-1}` on `{1, 2, ...}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometric {
    p: f64,
    ln_q: f64,
}

impl Geometric {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("geometric needs p in (0, 1), got {p}")));
        }
        Ok(Self {
            p,
            ln_q: (-p).ln_1p(),
        })
    }
}

impl IntegerDistribution for Geometric {
    fn name(&self) -> String {
        format!("geometric:p={}", self.p)
    }

    fn pmf(&self, x: u64) -> f64 {
        if x == 0 {
            return 0.0;
        }
        self.p * (self.ln_q * (x - 1) as f64).exp()
    }

    fn tail(&self, x: u64) -> f64 {
        (self.ln_q * x as f64).exp()
    }

    fn quantile(&self, u: f64) -> u64 {
        // smallest x with (1-p)^x ≤ 1-u
        let x = ((-u).ln_1p() / self.ln_q).ceil();
        if x < 1.0 {
            1
        } else if x >= 9.2e18 {
            i64::MAX as u64
        } else {
            x as u64
        }
    }

    /// Exact tail is `e^{-λx}` with `λ = -ln(1-p)`; `c = 1.5` keeps `c > 1`.
    fn certificate(&self) -> Option<TailCertificate> {
        Some(TailCertificate::exponential(1.5, -self.ln_q))
    }
}

/// Hurwitz zeta `ζ(s, q) = Σ_{k≥0} (k+q)^{-s}` for `s > 1`, `q > 0`.
///
/// Direct summation up to `q + k ≥ 24`, then an Euler–Maclaurin tail with
/// four Bernoulli corrections.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    let mut sum = 0.0;
    let mut base = q;
    while base < 24.0 {
        sum += base.powf(-s);
        base += 1.0;
    }
    let n = base;
    let np = n.powf(-s);
    let inv2 = 1.0 / (n * n);
    let mut tail = n * np / (s - 1.0) + 0.5 * np;
    let mut rising = s; // s(s+1)...(s+2j-2)
    let mut pow = np / n; // N^{-s-2j+1}
                          // B_{2j}/(2j)!
    const COEFFS: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    for (j, coeff) in COEFFS.iter().enumerate() {
        tail += coeff * rising * pow;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        pow *= inv2;
    }
    sum + tail
}

const ZIPF_TABLE: usize = 256;

/// `P(X = x) ∝ x^{-s}` on `{1, 2, ...}`, `s > 2`.
#[derive(Clone, Debug)]
pub struct Zipf {
    s: f64,
    zeta: f64,
    /// `tails[x] = P(X > x)` for `x ≤ ZIPF_TABLE`.
    tails: Vec<f64>,
}

impl Zipf {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 2.0 && s.is_finite()) {
            return Err(invalid(format!("zipf needs s > 2, got {s}")));
        }
        let zeta = hurwitz_zeta(s, 1.0);
        let tails = (0..=ZIPF_TABLE)
            .map(|x| hurwitz_zeta(s, x as f64 + 1.0) / zeta)
            .collect();
        Ok(Self { s, zeta, tails })
    }

    pub fn normalizer(&self) -> f64 {
        self.zeta
    }
}

impl IntegerDistribution for Zipf {
    fn name(&self) -> String {
        format!("zipf:s={}", self.s)
    }

    fn pmf(&self, x: u64) -> f64 {
        if x == 0 {
            return 0.0;
        }
        (x as f64).powf(-self.s) / self.zeta
    }

    fn tail(&self, x: u64) -> f64 {
        match self.tails.get(x as usize) {
            Some(&t) => t,
            None => hurwitz_zeta(self.s, x as f64 + 1.0) / self.zeta,
        }
    }

    fn quantile(&self, u: f64) -> u64 {
        let v = 1.0 - u;
        // first x with tail(x) ≤ v
        if self.tails[ZIPF_TABLE] <= v {
            let idx = self.tails[1..].partition_point(|&t| t > v);
            return idx as u64 + 1;
        }
        let mut lo = ZIPF_TABLE as u64; // tail(lo) > v
        let mut hi = lo * 2;
        while self.tail(hi) > v {
            lo = hi;
            if hi >= 1 << 62 {
                return hi;
            }
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.tail(mid) > v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// `Σ_{k>x} k^{-s} ≤ x^{1-s}/(s-1)` and `(s-1)ζ(s) > 1`, so `c = 1.5`,
    /// `λ = s - 1` holds with room.
    fn certificate(&self) -> Option<TailCertificate> {
        Some(TailCertificate::power(1.5, self.s - 1.0))
    }
}

/// All mass on a single positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointMass {
    at: u64,
}

impl PointMass {
    pub fn new(at: u64) -> Result<Self> {
        if at == 0 {
            return Err(invalid("point mass must sit on a positive integer"));
        }
        Ok(Self { at })
    }
}

impl IntegerDistribution for PointMass {
    fn name(&self) -> String {
        format!("point:x={}", self.at)
    }

    fn pmf(&self, x: u64) -> f64 {
        if x == self.at {
            1.0
        } else {
            0.0
        }
    }

    fn tail(&self, x: u64) -> f64 {
        if x < self.at {
            1.0
        } else {
            0.0
        }
    }

    fn quantile(&self, _u: f64) -> u64 {
        self.at
    }

    fn certificate(&self) -> Option<TailCertificate> {
        // c·e^{-x/at} ≥ 1 on [0, at) once c ≥ e
        let lambda = 1.0 / self.at as f64;
        Some(TailCertificate::exponential(
            std::f64::consts::E * 1.01,
            lambda,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_reference_values() {
        // ζ(3) (Apéry), ζ(4) = π⁴/90
        assert!((hurwitz_zeta(3.0, 1.0) - 1.202_056_903_159_594_2).abs() < 1e-14);
        let pi = std::f64::consts::PI;
        assert!((hurwitz_zeta(4.0, 1.0) - pi.powi(4) / 90.0).abs() < 1e-14);
        // ζ(2, 1/2) = 3ζ(2)... only for s > 1; check ζ(s, q) - ζ(s, q+1) = q^{-s}
        for &q in &[1.0, 3.5, 23.0, 24.0, 1000.0] {
            let d = hurwitz_zeta(3.0, q) - hurwitz_zeta(3.0, q + 1.0);
            assert!((d - q.powf(-3.0)).abs() < 1e-13 * q.powf(-3.0).max(1e-3));
        }
    }

    #[test]
    fn zeta_against_brute_force() {
        // brute-force partial sum plus integral tail, far enough out to be accurate
        let s = 2.5;
        let m = 2_000_000u64;
        let mut direct = 0.0;
        for k in (1..=m).rev() {
            direct += (k as f64).powf(-s);
        }
        let mf = m as f64 + 0.5;
        direct += mf.powf(1.0 - s) / (s - 1.0);
        assert!((hurwitz_zeta(s, 1.0) - direct).abs() < 1e-12);
    }

    #[test]
    fn geometric_basics() {
        let g = Geometric::new(0.7).unwrap();
        assert!((g.pmf(1) - 0.7).abs() < 1e-15);
        for x in 0..30u64 {
            assert!((g.tail(x) - 0.3f64.powi(x as i32)).abs() < 1e-14);
        }
        let total: f64 = (1..200).map(|x| g.pmf(x)).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert_eq!(g.quantile(0.0), 1);
        assert_eq!(g.quantile(0.69), 1);
        assert_eq!(g.quantile(0.71), 2);
        assert!(Geometric::new(1.0).is_err());
    }

    #[test]
    fn zipf_basics() {
        let z = Zipf::new(3.0).unwrap();
        let total: f64 = (1..100_000).map(|x| z.pmf(x)).sum::<f64>() + z.tail(99_999);
        assert!((total - 1.0).abs() < 1e-12);
        assert!((z.tail(0) - 1.0).abs() < 1e-15);
        // tail consistency across the table boundary
        for x in 250..270u64 {
            let diff = z.tail(x) - z.tail(x + 1);
            assert!((diff - z.pmf(x + 1)).abs() < 1e-15);
        }
        // quantile is the generalized inverse of the CDF
        for &u in &[0.0, 0.5, 0.83, 0.9, 0.99, 0.9999, 0.999_999_9, 1.0 - 1e-15] {
            let x = z.quantile(u);
            assert!(1.0 - z.tail(x) >= u - 1e-15);
            if x > 1 {
                assert!(1.0 - z.tail(x - 1) < u + 1e-15);
            }
        }
    }

    #[test]
    fn point_mass() {
        let p = PointMass::new(4).unwrap();
        assert_eq!(p.quantile(0.3), 4);
        assert_eq!(p.tail(3), 1.0);
        assert_eq!(p.tail(4), 0.0);
        assert!(PointMass::new(0).is_err());
        let cert = p.certificate().unwrap();
        for x in 0..20 {
            assert!(p.tail(x) <= cert.bound_at(x as f64));
        }
    }
}
