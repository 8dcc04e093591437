use super::gamma::gamma_real;
use super::zeta::zeta_any;
use crate::error::{domain, Error, Result};

/// Series/expansion crossover in z.
const Z_CROSSOVER: f64 = 0.9;
/// Half-spacing of the interpolation stencil around integer orders.
const NEAR_INT_DELTA: f64 = 1e-4;
/// Terms kept in the ζ(s-k) μ^k/k! expansion.
const EXPANSION_TERMS: usize = 30;

#[derive(Debug, Clone)]
enum Kind {
    /// Non-integer order: singular term Γ(1-s)(-μ)^{s-1}.
    General { gamma_1ms: f64 },
    /// Integer order n >= 2: logarithmic term with H_{n-1}.
    Integer { n: usize, harmonic: f64, fact: f64 },
    /// s = 1: closed form.
    One,
    /// Order within NEAR_INT_DELTA of an integer; Lagrange interpolation in s.
    NearInteger { nodes: Box<[BoseFunction; 5]>, offset: f64 },
}

/// Polylogarithm Li_s evaluated on [0, 1] with a fixed order.
///
/// Precomputes ζ(s-k) so repeated evaluation at one order is cheap.
#[derive(Debug, Clone)]
pub struct BoseFunction {
    s: f64,
    zetas: Vec<f64>,
    kind: Kind,
}

impl BoseFunction {
    pub fn new(s: f64) -> Self {
        let n = s.round();
        let off = s - n;
        if off == 0.0 && n == 1.0 {
            return BoseFunction {
                s,
                zetas: Vec::new(),
                kind: Kind::One,
            };
        }
        if off != 0.0 && off.abs() < NEAR_INT_DELTA && n >= 1.0 {
            let node = |k: f64| Self::general(n + k * NEAR_INT_DELTA);
            let nodes = Box::new([node(-2.0), node(-1.0), Self::new(n), node(1.0), node(2.0)]);
            return BoseFunction {
                s,
                zetas: Vec::new(),
                kind: Kind::NearInteger {
                    nodes,
                    offset: off / NEAR_INT_DELTA,
                },
            };
        }
        if off == 0.0 && n >= 2.0 {
            let n = n as usize;
            let harmonic = (1..n).map(|k| 1.0 / k as f64).sum();
            let fact = (1..n).map(|k| k as f64).product();
            let zetas = (0..EXPANSION_TERMS)
                .map(|k| if k == n - 1 { 0.0 } else { zeta_any(s - k as f64) })
                .collect();
            return BoseFunction {
                s,
                zetas,
                kind: Kind::Integer { n, harmonic, fact },
            };
        }
        Self::general(s)
    }

    fn general(s: f64) -> Self {
        let zetas = (0..EXPANSION_TERMS).map(|k| zeta_any(s - k as f64)).collect();
        let gamma_1ms = if (1.0 - s) <= 0.0 && (1.0 - s) == (1.0 - s).floor() {
            f64::NAN
        } else {
            gamma_real(1.0 - s)
        };
        BoseFunction {
            s,
            zetas,
            kind: Kind::General { gamma_1ms },
        }
    }

    pub fn order(&self) -> f64 {
        self.s
    }

    /// Li_s(z) for z in [0, 1].
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return domain(format!("polylog argument must lie in [0, 1], got {z}"));
        }
        if z == 0.0 {
            return Ok(0.0);
        }
        if z <= Z_CROSSOVER {
            return Ok(self.series(z));
        }
        self.expansion(z.ln())
    }

    /// Li_s(e^μ) for μ <= 0.
    pub fn eval_mu(&self, mu: f64) -> Result<f64> {
        if mu.is_nan() || mu > 0.0 {
            return domain(format!("polylog requires ln z <= 0, got {mu}"));
        }
        if mu == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        let z = mu.exp();
        if z <= Z_CROSSOVER {
            return Ok(self.series(z));
        }
        self.expansion(mu)
    }

    fn series(&self, z: f64) -> f64 {
        let s = self.s;
        if let Kind::One = self.kind {
            return -(-z).ln_1p();
        }
        let mut sum = 0.0;
        let mut zl = 1.0;
        for l in 1..100_000usize {
            let lf = l as f64;
            zl *= z;
            let t = zl * lf.powf(-s);
            sum += t;
            // Ratio of consecutive terms is z·(l/(l+1))^s.
            let ratio = if s >= 0.0 { z } else { z * ((lf + 1.0) / lf).powf(-s) };
            if ratio < 1.0 && t * ratio / (1.0 - ratio) <= 1e-17 * sum {
                break;
            }
            if zl == 0.0 {
                break;
            }
        }
        sum
    }

    fn expansion(&self, mu: f64) -> Result<f64> {
        let s = self.s;
        match &self.kind {
            Kind::One => {
                if mu == 0.0 {
                    return Err(Error::DivergentValue("Li_1(1)".into()));
                }
                Ok(-(-mu.exp_m1()).ln())
            }
            Kind::NearInteger { nodes, offset } => {
                let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
                let mut vals = [0.0; 5];
                for (v, node) in vals.iter_mut().zip(nodes.iter()) {
                    *v = node.expansion(mu)?;
                }
                let mut out = 0.0;
                for i in 0..5 {
                    let mut w = 1.0;
                    for j in 0..5 {
                        if i != j {
                            w *= (offset - xs[j]) / (xs[i] - xs[j]);
                        }
                    }
                    out += w * vals[i];
                }
                Ok(out)
            }
            Kind::General { gamma_1ms } => {
                if mu == 0.0 {
                    if s > 1.0 {
                        return Ok(self.zetas[0]);
                    }
                    return Err(Error::DivergentValue(format!("Li_{s}(1)")));
                }
                let singular = gamma_1ms * (-mu).powf(s - 1.0);
                Ok(singular + self.regular(mu, usize::MAX))
            }
            Kind::Integer { n, harmonic, fact } => {
                if mu == 0.0 {
                    return Ok(self.zetas[0]);
                }
                let log_term = mu.powi(*n as i32 - 1) / fact * (harmonic - (-mu).ln());
                Ok(log_term + self.regular(mu, n - 1))
            }
        }
    }

    /// Σ_k ζ(s-k) μ^k / k!, skipping index `skip`.
    fn regular(&self, mu: f64, skip: usize) -> f64 {
        let mut sum = 0.0;
        let mut pow = 1.0;
        for (k, zk) in self.zetas.iter().enumerate() {
            if k > 0 {
                pow *= mu / k as f64;
            }
            if k == skip {
                continue;
            }
            let t = zk * pow;
            sum += t;
            if k > 4 && t.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    }
}

/// Li_s(z) = Σ_{l>=1} z^l / l^s for z in [0, 1].
pub fn polylog(s: f64, z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return domain(format!("polylog argument must lie in [0, 1], got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 && s <= 1.0 {
        return Err(Error::DivergentValue(format!("Li_{s}(1) diverges for s <= 1")));
    }
    BoseFunction::new(s).eval(z)
}

/// Li_s(e^μ) for μ <= 0; keeps full accuracy as μ -> 0.
pub fn polylog_exp(s: f64, mu: f64) -> Result<f64> {
    if mu == 0.0 && s <= 1.0 {
        return Err(Error::DivergentValue(format!("Li_{s}(1) diverges for s <= 1")));
    }
    BoseFunction::new(s).eval_mu(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    fn direct(s: f64, z: f64, terms: usize) -> f64 {
        let mut acc = 0.0;
        for l in (1..=terms).rev() {
            let lf = l as f64;
            acc += (lf * z.ln() - s * lf.ln()).exp();
        }
        acc
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn special_values() {
        for &s in &[0.5, 1.0, 2.0, 3.7] {
            assert_eq!(polylog(s, 0.0).unwrap(), 0.0);
        }
        assert!(rel(polylog(2.0, 1.0).unwrap(), PI * PI / 6.0) < 1e-14);
        let li2_half = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
        assert!(rel(polylog(2.0, 0.5).unwrap(), li2_half) < 1e-14);
        assert!(rel(polylog(2.0, 0.5).unwrap(), direct(2.0, 0.5, 200)) < 1e-14);
        // Li3(1/2) = (7/8)ζ(3) - (π²/12) ln 2 + ln³2 / 6
        let li3_half = 0.875 * zeta(3.0).unwrap() - PI * PI / 12.0 * LN_2 + LN_2.powi(3) / 6.0;
        assert!(rel(polylog(3.0, 0.5).unwrap(), li3_half) < 1e-14);
        assert!(rel(polylog(1.5, 1.0).unwrap(), 2.612_375_348_685_488) < 1e-13);
    }

    #[test]
    fn errors() {
        assert!(matches!(polylog(1.0, 1.0), Err(Error::DivergentValue(_))));
        assert!(matches!(polylog(0.5, 1.0), Err(Error::DivergentValue(_))));
        assert!(matches!(polylog(2.0, 1.5), Err(Error::DomainError(_))));
        assert!(matches!(polylog(2.0, -0.1), Err(Error::DomainError(_))));
    }

    #[test]
    fn expansion_against_long_series() {
        for &s in &[0.3, 0.5, 1.3, 1.5, 2.0, 2.5, 3.0, 3.5] {
            for &z in &[0.9000001, 0.93, 0.97, 0.99] {
                let terms = 1_000_000;
                let d = direct(s, z, terms);
                assert!(rel(polylog(s, z).unwrap(), d) < 1e-10, "s={s} z={z}");
            }
        }
    }

    #[test]
    fn crossover_overlap() {
        for &s in &[0.3, 0.5, 1.0, 1.3, 1.5, 2.0, 2.5, 3.0, 4.2] {
            let f = BoseFunction::new(s);
            let mu = Z_CROSSOVER.ln();
            let a = f.series(Z_CROSSOVER);
            let b = f.expansion(mu).unwrap();
            assert!(rel(a, b) < 1e-10, "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn near_integer_orders_are_continuous() {
        for &n in &[1.0, 2.0, 3.0] {
            for &z in &[0.95, 0.999] {
                let exact = polylog(n, z).unwrap();
                for &e in &[1e-9, 3e-6, 5e-5, 2e-4] {
                    let lo = polylog(n - e, z).unwrap();
                    let hi = polylog(n + e, z).unwrap();
                    let slope_scale = 10.0 * e * (1.0 + exact.abs());
                    assert!((lo - exact).abs() < slope_scale, "n={n} z={z} e={e}");
                    assert!((hi - exact).abs() < slope_scale, "n={n} z={z} e={e}");
                    assert!(lo >= hi);
                }
            }
        }
    }

    #[test]
    fn limit_at_unity() {
        // Li_s(1-ε) = ζ(s) - ε ζ(s-1) + O(ε² ...) for s > 2, and
        // Li_2(1-ε) = ζ(2) - ε(1 - ln ε) + O(ε²).
        let eps = 1e-8;
        for &s in &[2.5, 3.0, 4.0] {
            let v = polylog(s, 1.0 - eps).unwrap();
            let mut expect = zeta(s).unwrap() - eps * zeta(s - 1.0).unwrap();
            if s.fract() != 0.0 {
                expect += gamma_real(1.0 - s) * eps.powf(s - 1.0);
            }
            assert!((v - expect).abs() < 1e-12, "s={s}");
        }
        let v = polylog(2.0, 1.0 - eps).unwrap();
        let expect = zeta(2.0).unwrap() - eps * (1.0 - eps.ln());
        assert!((v - expect).abs() < 1e-12);
        for &s in &[2.0, 2.5, 3.0, 4.0] {
            let v = polylog(s, 1.0 - 1e-10).unwrap();
            assert!(rel(v, zeta(s).unwrap()) < 1e-8);
        }
    }

    #[test]
    fn singular_orders_near_unity() {
        // Li_{1/2}(e^μ) ≈ √(π/(-μ)) + ζ(1/2) for small μ.
        let mu = -1e-8;
        let v = polylog_exp(0.5, mu).unwrap();
        let lead = (PI / -mu).sqrt() - 1.460_354_508_809_586_8;
        assert!(rel(v, lead) < 1e-10);
    }

    #[test]
    fn log_form_matches_z_form() {
        for &s in &[0.5, 1.5, 2.0, 3.0] {
            for &mu in &[-3.0, -0.2, -0.05, -1e-3] {
                let a = polylog_exp(s, mu).unwrap();
                let b = polylog(s, f64::exp(mu)).unwrap();
                assert!(rel(a, b) < 1e-13);
            }
        }
    }

    proptest! {
        #[test]
        fn monotone_in_z(s in 0.2f64..4.0, z1 in 0.0f64..0.999, dz in 1e-4f64..0.5) {
            let z2 = (z1 + dz).min(0.9999);
            prop_assume!(z2 > z1);
            prop_assert!(polylog(s, z2).unwrap() > polylog(s, z1).unwrap());
        }

        #[test]
        fn order_one_is_log(z in 0.0f64..0.999) {
            let v = polylog(1.0, z).unwrap();
            let exact = -(1.0 - z).ln();
            prop_assert!((v - exact).abs() <= 1e-12 * exact.abs().max(1e-300) + 1e-300);
        }

        #[test]
        fn matches_direct_summation(s in 0.2f64..4.0, z in 0.0f64..0.9) {
            let d = direct(s, z, 2000);
            prop_assert!(rel(polylog(s, z).unwrap(), d) < 1e-12);
        }
    }
}
