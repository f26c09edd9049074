//! Scalar products of the three families and the double-exponential
//! quadrature that evaluates them.
//!
//! Oscillator: `∫₀^∞ g h dr`. Morse: `(1/2)∫ g h e^{-x} dx`. Coulomb:
//! `(1/2)∫₀^∞ g h dR/R`. Deformed states use the same measures.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{parameter, Error, Result};
use crate::operators::{Domain, SmoothFunction};
use crate::systems::Family;

pub const MIN_LEVEL: u32 = 1;
pub const MAX_LEVEL: u32 = 12;
const BASE_NODES: usize = 64;

// outer limits of the transformed variable
const HALF_LINE_T: f64 = 4.5;
const REAL_LINE_T: f64 = 2.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measure {
    pub family: Family,
    pub domain: Domain,
}

impl Measure {
    pub fn for_family(family: Family) -> Self {
        let domain = match family {
            Family::Morse => Domain::REAL_LINE,
            _ => Domain::HALF_LINE,
        };
        Measure { family, domain }
    }

    pub fn weight(&self, q: f64) -> f64 {
        match self.family {
            Family::Oscillator => 1.0,
            Family::Morse => 0.5 * (-q).exp(),
            Family::Coulomb => 0.5 / q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// `q = exp((π/2) sinh t)` onto `(0, ∞)`.
    ExpSinh,
    /// `q = sinh((π/2) sinh t)` onto `ℝ`.
    SinhSinh,
}

/// Nodes and weights on the open domain; the weights already include the
/// measure density and the Jacobian of the transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub transform: Transform,
}

pub fn quadrature_rule(measure: &Measure, level: u32) -> Result<QuadratureRule> {
    if !(MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        return parameter(format!("quadrature level {level} outside [{MIN_LEVEL}, {MAX_LEVEL}]"));
    }
    let count = BASE_NODES << level;
    let (transform, t_max) = match measure.domain {
        d if d == Domain::REAL_LINE => (Transform::SinhSinh, REAL_LINE_T),
        _ => (Transform::ExpSinh, HALF_LINE_T),
    };
    let h = 2.0 * t_max / count as f64;
    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for j in 0..count {
        let t = -t_max + (j as f64 + 0.5) * h;
        let u = FRAC_PI_2 * t.sinh();
        let du = FRAC_PI_2 * t.cosh();
        let (q, jac) = match transform {
            Transform::ExpSinh => {
                let q = u.exp();
                (q, q * du)
            }
            Transform::SinhSinh => (u.sinh(), u.cosh() * du),
        };
        if !measure.domain.contains(q) {
            continue;
        }
        let w = h * jac * measure.weight(q);
        if w > 0.0 && w.is_finite() {
            nodes.push(q);
            weights.push(w);
        }
    }
    Ok(QuadratureRule { nodes, weights, transform })
}

/// Pairwise summation, fixed order.
fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

struct Estimate {
    value: f64,
    scale: f64,
    tail: f64,
}

fn estimate<G: Fn(f64) -> Result<f64>>(rule: &QuadratureRule, integrand: &G) -> Result<Estimate> {
    let mut terms = Vec::with_capacity(rule.nodes.len());
    for (&q, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = w * integrand(q)?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("integrand is not finite at {q}")));
        }
        terms.push(v);
    }
    let abs: Vec<f64> = terms.iter().map(|v| v.abs()).collect();
    let k = 4.min(terms.len());
    let tail = abs[..k].iter().chain(&abs[abs.len() - k..]).fold(0.0f64, |m, &v| m.max(v));
    Ok(Estimate { value: pairwise_sum(&terms), scale: pairwise_sum(&abs), tail })
}

/// `∫ integrand dμ` with level escalation until two successive levels agree
/// within `rtol` (relative to `∫|integrand| dμ`) and the truncated tails are negligible.
pub fn integrate<G: Fn(f64) -> Result<f64>>(measure: &Measure, integrand: G, rtol: f64) -> Result<f64> {
    if !(rtol >= 1e-12) {
        return parameter(format!("rtol = {rtol} must be >= 1e-12"));
    }
    let mut previous = estimate(&quadrature_rule(measure, MIN_LEVEL)?, &integrand)?.value;
    let mut last = previous;
    for level in MIN_LEVEL + 1..=MAX_LEVEL {
        let current = estimate(&quadrature_rule(measure, level)?, &integrand)?;
        let scale = current.scale.max(f64::MIN_POSITIVE);
        let settled = (current.value - last).abs() <= rtol * scale;
        let tails_ok = current.tail <= rtol * scale * 1e-2;
        if level >= 3 && settled && tails_ok {
            return Ok(current.value);
        }
        previous = last;
        last = current.value;
    }
    Err(Error::Convergence { previous, last })
}

pub fn inner_product<F, G>(measure: &Measure, f: &F, g: &G, rtol: f64) -> Result<f64>
where
    F: SmoothFunction + ?Sized,
    G: SmoothFunction + ?Sized,
{
    integrate(measure, |q| Ok(f.value(q)? * g.value(q)?), rtol)
}

pub fn norm<F: SmoothFunction + ?Sized>(measure: &Measure, f: &F, rtol: f64) -> Result<f64> {
    Ok(inner_product(measure, f, f, rtol)?.sqrt())
}
