//! Generalized Laguerre and Jacobi polynomials, their derivatives, and log-gamma.
//!
//! Polynomials are evaluated with upward three-term recurrences in the degree.
//! Degrees are capped at [`MAX_DEGREE`]; the bound-state code never needs
//! asymptotic regimes.

use crate::error::{domain, parameter, Result};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: u32 = 200;

/// Polynomial value and first derivative with respect to its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyEval {
    pub value: f64,
    pub d1: f64,
}

fn check_degree(n: u32) -> Result<()> {
    if n > MAX_DEGREE {
        return parameter(format!("polynomial degree {n} exceeds the supported maximum {MAX_DEGREE}"));
    }
    Ok(())
}

fn check_index(name: &str, a: f64) -> Result<()> {
    if !(a > -1.0) || !a.is_finite() {
        return parameter(format!("polynomial parameter {name} = {a} must be finite and > -1"));
    }
    Ok(())
}

fn laguerre_raw(n: u32, a: f64, y: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - y) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn jacobi_raw(n: u32, a: f64, b: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s;
        let c2 = (s + 1.0) * ((s + 2.0) * s * t + a * a - b * b);
        let c3 = 2.0 * (kf + a) * (kf + b) * (s + 2.0);
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L_n^(a)(y)` and its derivative `-L_{n-1}^(a+1)(y)`.
pub fn laguerre(n: u32, a: f64, y: f64) -> Result<PolyEval> {
    check_degree(n)?;
    check_index("a", a)?;
    if !(y >= 0.0) || !y.is_finite() {
        return domain(format!("Laguerre argument {y} must be finite and >= 0"));
    }
    let d1 = if n == 0 { 0.0 } else { -laguerre_raw(n - 1, a + 1.0, y) };
    Ok(PolyEval { value: laguerre_raw(n, a, y), d1 })
}

/// Jacobi polynomial `P_n^(a,b)(t)` and its derivative `(n+a+b+1)/2 · P_{n-1}^(a+1,b+1)(t)`.
pub fn jacobi(n: u32, a: f64, b: f64, t: f64) -> Result<PolyEval> {
    check_degree(n)?;
    check_index("a", a)?;
    check_index("b", b)?;
    if !(t.abs() <= 1.0) {
        return domain(format!("Jacobi argument {t} outside [-1, 1]"));
    }
    let d1 = if n == 0 { 0.0 } else { 0.5 * (n as f64 + a + b + 1.0) * jacobi_raw(n - 1, a + 1.0, b + 1.0, t) };
    Ok(PolyEval { value: jacobi_raw(n, a, b, t), d1 })
}

/// Normalized Taylor coefficients `L^(k)(y)/k!`, `k = 0..=order`, from the
/// identity `d^k/dy^k L_n^(a) = (-1)^k L_{n-k}^(a+k)`.
pub fn laguerre_taylor(n: u32, a: f64, y: f64, order: usize) -> Result<Vec<f64>> {
    laguerre(n, a, y)?;
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            fact *= k as f64;
        }
        let deriv = if k as u32 > n {
            0.0
        } else {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * laguerre_raw(n - k as u32, a + k as f64, y)
        };
        out.push(deriv / fact);
    }
    Ok(out)
}

/// Normalized Taylor coefficients of `P_n^(a,b)` at `t`, from
/// `d^k/dt^k P_n^(a,b) = prod_{j=1..k} (n+a+b+j)/2 · P_{n-k}^(a+k,b+k)`.
pub fn jacobi_taylor(n: u32, a: f64, b: f64, t: f64, order: usize) -> Result<Vec<f64>> {
    jacobi(n, a, b, t)?;
    let mut out = Vec::with_capacity(order + 1);
    let mut factor = 1.0;
    for k in 0..=order {
        if k > 0 {
            factor *= 0.5 * (n as f64 + a + b + k as f64) / k as f64;
        }
        let c = if k as u32 > n { 0.0 } else { factor * jacobi_raw(n - k as u32, a + k as f64, b + k as f64, t) };
        out.push(c);
    }
    Ok(out)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// Stirling corrections B_{2k} / (2k (2k-1) x^{2k-1}).
fn stirling_tail(x: f64) -> f64 {
    let z = 1.0 / (x * x);
    let series = 1.0 / 12.0
        + z * (-1.0 / 360.0
            + z * (1.0 / 1260.0
                + z * (-1.0 / 1680.0 + z * (1.0 / 1188.0 + z * (-691.0 / 360_360.0 + z * (1.0 / 156.0))))));
    series / x
}

fn log_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // ln Γ(x) = ln Γ(x+1) - ln x keeps the Lanczos sum in its accurate range
        return log_gamma_unchecked(x + 1.0) - x.ln();
    }
    if x >= 10.0 {
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail(x);
    }
    let xm = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    HALF_LN_2PI + (xm + 0.5) * t.ln() - t + sum.ln()
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma argument {x} must be finite and > 0"));
    }
    Ok(log_gamma_unchecked(x))
}

/// `ln Γ(x + d) - ln Γ(x)` without the cancellation of two large logarithms.
pub fn log_gamma_ratio(x: f64, d: f64) -> Result<f64> {
    if !(x > 0.0) || !(x + d > 0.0) || !x.is_finite() || !d.is_finite() {
        return domain(format!("log_gamma_ratio arguments x = {x}, x + d = {} must be > 0", x + d));
    }
    if x.min(x + d) < 30.0 {
        return Ok(log_gamma_unchecked(x + d) - log_gamma_unchecked(x));
    }
    let l1p = (d / x).ln_1p();
    Ok(d * x.ln() + (x + d - 0.5) * l1p - d + stirling_tail(x + d) - stirling_tail(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_low_order_examples() {
        let e = laguerre(0, 0.5, 3.7).unwrap();
        assert_eq!((e.value, e.d1), (1.0, 0.0));
        // L_1^(a)(y) = 1 + a - y
        assert!((laguerre(1, 0.5, 2.0).unwrap().value + 0.5).abs() < 1e-15);
        // L_2^(a)(y) = (a+1)(a+2)/2 - (a+2) y + y^2/2
        let a: f64 = 0.5;
        let y: f64 = 1.0;
        let explicit = (a + 1.0) * (a + 2.0) / 2.0 - (a + 2.0) * y + y * y / 2.0;
        assert!((explicit + 0.125).abs() < 1e-15);
        assert!((laguerre(2, a, y).unwrap().value - explicit).abs() < 1e-15);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, 1.3, 0.2, -0.4).unwrap().value, 1.0);
        assert!(jacobi(1, 1.0, 1.0, 0.0).unwrap().value.abs() < 1e-15);
        // P_n^(a,b)(1) = Γ(n+a+1) / (n! Γ(a+1)), evaluated through the gamma function
        let endpoint = (log_gamma(3.0 + 0.7 + 1.0).unwrap() - log_gamma(4.0).unwrap() - log_gamma(1.7).unwrap()).exp();
        assert!((endpoint - 3.7 * 2.7 * 1.7 / 6.0).abs() < 1e-13);
        let v = jacobi(3, 0.7, 1.1, 1.0).unwrap().value;
        assert!((v - endpoint).abs() < 1e-12 * endpoint);
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        let half = 0.5 * std::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - half).abs() < 1e-14);
        assert!((half - 0.5723649).abs() < 1e-7);
    }

    #[test]
    fn parameter_and_domain_errors() {
        assert!(matches!(laguerre(3, -1.0, 1.0), Err(crate::Error::Parameter(_))));
        assert!(matches!(laguerre(201, 0.0, 1.0), Err(crate::Error::Parameter(_))));
        assert!(matches!(jacobi(2, 0.0, -1.5, 0.0), Err(crate::Error::Parameter(_))));
        assert!(matches!(jacobi(2, 0.0, 0.0, 1.01), Err(crate::Error::Domain(_))));
        assert!(matches!(log_gamma(0.0), Err(crate::Error::Domain(_))));
        assert!(matches!(log_gamma(-2.5), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn log_gamma_integer_factorials() {
        let mut lf = 0.0;
        for n in 1..=170u32 {
            // ln Γ(n+1) = ln n!
            lf += (n as f64).ln();
            let lg = log_gamma(n as f64 + 1.0).unwrap();
            assert!((lg - lf).abs() < 1e-13 * lf.max(1.0), "n = {n}");
        }
    }

    #[test]
    fn log_gamma_ratio_agrees_with_difference() {
        for &(x, d) in &[(0.3, 1.7), (12.0, 0.5), (35.0, 2.25), (1.0e6, 0.75), (4.0e5, -0.5)] {
            let direct = log_gamma(x + d).unwrap() - log_gamma(x).unwrap();
            let ratio = log_gamma_ratio(x, d).unwrap();
            assert!((direct - ratio).abs() < 1e-9 * direct.abs().max(1.0), "{x} {d}");
        }
        // Γ(x+1)/Γ(x) = x exactly
        let r = log_gamma_ratio(2.5e5, 1.0).unwrap();
        assert!((r - 2.5e5f64.ln()).abs() < 1e-14 * r);
    }

    #[test]
    fn taylor_coefficients_match_derivative_identities() {
        let c = laguerre_taylor(4, 0.3, 1.2, 3).unwrap();
        let e = laguerre(4, 0.3, 1.2).unwrap();
        assert_eq!(c[0], e.value);
        assert!((c[1] - e.d1).abs() < 1e-14);
        let c = jacobi_taylor(5, 0.4, 1.5, -0.3, 6).unwrap();
        let e = jacobi(5, 0.4, 1.5, -0.3).unwrap();
        assert!((c[1] - e.d1).abs() < 1e-13);
        assert_eq!(c[6], 0.0);
    }
}
