//! Truncated Taylor expansions ("jets") at a point.
//!
//! A [`Jet`] stores the normalized coefficients `c[k] = f^(k)(q0) / k!` of a
//! function around a base point, up to a tracked order. Arithmetic on jets is
//! exact Taylor arithmetic, so chaining coordinate maps, prefactors and
//! differential operators keeps analytic derivatives without finite
//! differences.

use std::ops::{Add, Mul, Neg, Sub};

/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 6;

const LEN: usize = MAX_ORDER + 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
    order: usize,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = [0.0; LEN];
        c[0] = value;
        Jet { c, order: order.min(MAX_ORDER) }
    }

    /// The identity function `q ↦ q` expanded at `point`.
    pub fn variable(point: f64, order: usize) -> Self {
        let mut j = Jet::constant(point, order);
        if j.order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn zero(order: usize) -> Self {
        Jet::constant(0.0, order)
    }

    /// Build from normalized Taylor coefficients; entries past `MAX_ORDER` are ignored.
    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least a value");
        let mut c = [0.0; LEN];
        let order = (coeffs.len() - 1).min(MAX_ORDER);
        c[..=order].copy_from_slice(&coeffs[..=order]);
        Jet { c, order }
    }

    /// Build from plain derivatives `[f, f', f'', ...]`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        let mut j = Jet::from_coeffs(derivs);
        let mut fact = 1.0;
        for k in 1..=j.order {
            fact *= k as f64;
            j.c[k] /= fact;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.order]
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the base point (zero above the tracked order is not implied).
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k <= self.order, "derivative {k} requested from a jet of order {}", self.order);
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    pub fn truncate(mut self, order: usize) -> Self {
        let order = order.min(self.order);
        for k in order + 1..LEN {
            self.c[k] = 0.0;
        }
        self.order = order;
        self
    }

    /// Jet of the first derivative; the order drops by one.
    pub fn diff(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate a jet of order 0");
        let mut c = [0.0; LEN];
        for k in 0..self.order {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c, order: self.order - 1 }
    }

    pub fn scale(mut self, s: f64) -> Self {
        for v in self.c.iter_mut() {
            *v *= s;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&v| v == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|v| v.is_finite())
    }

    /// Evaluate `g(self)` given the Taylor coefficients of `g` at `self.value()`.
    pub fn compose(&self, outer: &[f64]) -> Self {
        let order = self.order.min(outer.len().saturating_sub(1));
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut result = Jet::constant(outer[0], order);
        let mut power = Jet::constant(1.0, order);
        for a in outer.iter().take(order + 1).skip(1) {
            power = power * delta;
            for i in 0..=order {
                result.c[i] += a * power.c[i];
            }
        }
        result
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        let mut outer = [0.0; LEN];
        let mut fact = 1.0;
        for (k, o) in outer.iter_mut().enumerate().take(self.order + 1) {
            if k > 0 {
                fact *= k as f64;
            }
            *o = e / fact;
        }
        self.compose(&outer[..=self.order])
    }

    pub fn ln(&self) -> Self {
        let u = self.c[0];
        let mut outer = [0.0; LEN];
        outer[0] = u.ln();
        let mut upow = 1.0;
        for (k, o) in outer.iter_mut().enumerate().take(self.order + 1).skip(1) {
            upow *= u;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *o = sign / (k as f64 * upow);
        }
        self.compose(&outer[..=self.order])
    }

    pub fn powf(&self, p: f64) -> Self {
        let u = self.c[0];
        let mut outer = [0.0; LEN];
        let mut binom = 1.0;
        for (k, o) in outer.iter_mut().enumerate().take(self.order + 1) {
            if k > 0 {
                binom *= (p - (k - 1) as f64) / k as f64;
            }
            *o = binom * u.powf(p - k as f64);
        }
        self.compose(&outer[..=self.order])
    }

    pub fn recip(&self) -> Self {
        let u = self.c[0];
        let mut outer = [0.0; LEN];
        let mut term = 1.0 / u;
        for o in outer.iter_mut().take(self.order + 1) {
            *o = term;
            term *= -1.0 / u;
        }
        self.compose(&outer[..=self.order])
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(order);
        for k in 0..=order {
            out.c[k] = self.c[k] + rhs.c[k];
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(order);
        for i in 0..=order {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..=order - i {
                out.c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        out
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        (-rhs) + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn exp_of_sin_like_polynomial() {
        // d^k/dq^k exp(2q) at q = 0.3 is 2^k e^0.6
        let q = Jet::variable(0.3, 6);
        let e = (q * 2.0).exp();
        for k in 0..=6 {
            assert!(close(e.derivative(k), 2f64.powi(k as i32) * 0.6f64.exp(), 1e-14));
        }
    }

    #[test]
    fn powf_matches_falling_factorials() {
        let q = Jet::variable(1.7, 4);
        let p = q.powf(2.5);
        let expect = [
            1.7f64.powf(2.5),
            2.5 * 1.7f64.powf(1.5),
            2.5 * 1.5 * 1.7f64.powf(0.5),
            2.5 * 1.5 * 0.5 * 1.7f64.powf(-0.5),
            2.5 * 1.5 * 0.5 * -0.5 * 1.7f64.powf(-1.5),
        ];
        for (k, e) in expect.iter().enumerate() {
            assert!(close(p.derivative(k), *e, 1e-13), "k={k}");
        }
    }

    #[test]
    fn ln_recip_and_product_rule() {
        let q = Jet::variable(0.8, 5);
        let f = 1.0 + q * q * 0.5;
        let lhs = f.ln().diff();
        let rhs = f.diff() * f.recip().truncate(4);
        for k in 0..=4 {
            assert!(close(lhs.coeffs()[k], rhs.coeffs()[k], 1e-13));
        }
    }

    #[test]
    fn diff_lowers_order() {
        let j = Jet::from_derivatives(&[1.0, 2.0, 6.0]);
        let d = j.diff();
        assert_eq!(d.order(), 1);
        assert_eq!(d.value(), 2.0);
        assert_eq!(d.derivative(1), 6.0);
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = Jet::variable(1.0, 4);
        let b = Jet::variable(2.0, 2);
        assert_eq!((a * b).order(), 2);
        assert_eq!((a + b).order(), 2);
    }
}
