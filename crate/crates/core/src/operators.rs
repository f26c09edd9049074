//! Pointwise kinetic operators and Hamiltonians acting on functions that
//! expose their Taylor jets.

use serde::Serialize;

use crate::error::{domain, parameter, Result};
use crate::jet::{Jet, MAX_ORDER};
use crate::systems::{BoundState, DeformingProfile, SystemSpec};

/// An interval of the real line with open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub upper_open: bool,
}

impl Domain {
    pub const REAL_LINE: Domain =
        Domain { lower: f64::NEG_INFINITY, upper: f64::INFINITY, lower_open: true, upper_open: true };
    pub const HALF_LINE: Domain = Domain { lower: 0.0, upper: f64::INFINITY, lower_open: true, upper_open: true };

    pub fn contains(&self, q: f64) -> bool {
        if !q.is_finite() {
            return false;
        }
        let lo = if self.lower_open { q > self.lower } else { q >= self.lower };
        let hi = if self.upper_open { q < self.upper } else { q <= self.upper };
        lo && hi
    }

    pub fn check(&self, q: f64) -> Result<()> {
        if self.contains(q) {
            Ok(())
        } else {
            domain(format!("point {q} lies outside {}", self))
        }
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_open { '(' } else { '[' },
            self.lower,
            self.upper,
            if self.upper_open { ')' } else { ']' }
        )
    }
}

/// Value and first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// A function on an interval that can report its Taylor expansion at any interior point.
pub trait SmoothFunction {
    /// Taylor jet of the function at `point` up to `order` derivatives.
    fn taylor(&self, point: f64, order: usize) -> Result<Jet>;

    fn domain(&self) -> Domain;

    fn value(&self, point: f64) -> Result<f64> {
        Ok(self.taylor(point, 0)?.value())
    }

    fn sample(&self, point: f64) -> Result<Sample> {
        let j = self.taylor(point, 2)?;
        Ok(Sample { value: j.value(), d1: j.derivative(1), d2: j.derivative(2) })
    }
}

/// A function that is (a multiple of) the bound state with a known index.
///
/// Deformed generators use the index to evaluate their δ factors as scalars.
pub trait SpectralFunction: SmoothFunction {
    fn spectral_index(&self) -> u32;
}

impl<T: SmoothFunction + ?Sized> SmoothFunction for &T {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        (**self).taylor(point, order)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
}

impl<T: SpectralFunction + ?Sized> SpectralFunction for &T {
    fn spectral_index(&self) -> u32 {
        (**self).spectral_index()
    }
}

impl<T: SmoothFunction + ?Sized> SmoothFunction for Box<T> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        (**self).taylor(point, order)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
}

/// A function given by a closure over jets, e.g. `|q| (-*q * *q).exp()`.
#[derive(Clone)]
pub struct JetFunction<F> {
    f: F,
    domain: Domain,
}

impl<F: Fn(&Jet) -> Jet> JetFunction<F> {
    pub fn new(domain: Domain, f: F) -> Self {
        JetFunction { f, domain }
    }
}

impl<F: Fn(&Jet) -> Jet> SmoothFunction for JetFunction<F> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        self.domain.check(point)?;
        Ok((self.f)(&Jet::variable(point, order)))
    }
    fn domain(&self) -> Domain {
        self.domain
    }
}

/// Jet of the variable at `point` for an operator consuming `loss` derivatives.
pub(crate) fn operator_variable(point: f64, order: usize, loss: usize) -> Result<Jet> {
    if order + loss > MAX_ORDER {
        return parameter(format!(
            "operator nesting needs {} derivatives, at most {MAX_ORDER} are tracked",
            order + loss
        ));
    }
    Ok(Jet::variable(point, order + loss))
}

/// `a = f g' + f' g / 2`, so that `π g = -i a`.
pub fn pi_jet(profile: &DeformingProfile, q: &Jet, g: &Jet) -> Jet {
    let f = profile.jet(q);
    f * g.diff() + f.diff() * *g * 0.5
}

/// `π² g = -f² g'' - 2 f f' g' - (f f''/2 + f'²/4) g`.
pub fn pi_squared_jet(profile: &DeformingProfile, q: &Jet, g: &Jet) -> Jet {
    let f = profile.jet(q);
    let f1 = f.diff();
    let f2 = f1.diff();
    let g1 = g.diff();
    let g2 = g1.diff();
    -(f * f * g2) - f * f1 * g1 * 2.0 - (f * f2 * 0.5 + f1 * f1 * 0.25) * *g
}

/// `H g = π² g + V_n g` with the raw potential of hierarchy member `member`.
pub fn hamiltonian_jet(spec: &SystemSpec, member: u32, q: &Jet, g: &Jet) -> Jet {
    pi_squared_jet(&spec.profile(), q, g) + spec.potential_jet(member, q) * *g
}

/// Real coefficient `a` with `(π g)(point) = -i a`.
pub fn apply_pi<F: SmoothFunction + ?Sized>(profile: &DeformingProfile, g: &F, point: f64) -> Result<f64> {
    let gj = g.taylor(point, 1)?;
    Ok(pi_jet(profile, &Jet::variable(point, 1), &gj).value())
}

pub fn apply_pi_squared<F: SmoothFunction + ?Sized>(profile: &DeformingProfile, g: &F, point: f64) -> Result<f64> {
    let gj = g.taylor(point, 2)?;
    Ok(pi_squared_jet(profile, &Jet::variable(point, 2), &gj).value())
}

pub fn apply_hamiltonian<F: SmoothFunction + ?Sized>(spec: &SystemSpec, member: u32, g: &F, point: f64) -> Result<f64> {
    spec.domain().check(point)?;
    let gj = g.taylor(point, 2)?;
    if gj.is_zero() {
        return Ok(0.0);
    }
    Ok(hamiltonian_jet(spec, member, &Jet::variable(point, 2), &gj).value())
}

/// `max |H ψ_n - E ψ_n| / max |ψ_n|` over `grid`.
pub fn eigen_residual(spec: &SystemSpec, n: u32, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return parameter("eigen_residual needs a non-empty grid");
    }
    let state = BoundState::new(*spec, n)?;
    let energy = state.energy();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &p in grid {
        let s = state.sample(p)?;
        let h = apply_hamiltonian(spec, n, &state, p)?;
        worst = worst.max((h - energy * s.value).abs());
        scale = scale.max(s.value.abs());
    }
    if scale == 0.0 {
        return domain("the state vanishes on the whole grid");
    }
    Ok(worst / scale)
}

/// Image of a function under a differential operator, itself a smooth function.
///
/// `loss` is the order of the operator; the closure receives the variable jet and
/// the input jet, both carrying `loss` extra derivatives.
pub struct Applied<F, Op> {
    inner: F,
    loss: usize,
    op: Op,
    index: u32,
}

impl<F, Op> Applied<F, Op>
where
    F: SmoothFunction,
    Op: Fn(&Jet, &Jet) -> Jet,
{
    pub fn new(inner: F, loss: usize, index: u32, op: Op) -> Self {
        Applied { inner, loss, op, index }
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F, Op> SmoothFunction for Applied<F, Op>
where
    F: SmoothFunction,
    Op: Fn(&Jet, &Jet) -> Jet,
{
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        let q = operator_variable(point, order, self.loss)?;
        let g = self.inner.taylor(point, order + self.loss)?;
        if g.is_zero() {
            return Ok(Jet::zero(order));
        }
        Ok((self.op)(&q, &g).truncate(order))
    }

    fn domain(&self) -> Domain {
        self.inner.domain()
    }
}

impl<F, Op> SpectralFunction for Applied<F, Op>
where
    F: SmoothFunction,
    Op: Fn(&Jet, &Jet) -> Jet,
{
    fn spectral_index(&self) -> u32 {
        self.index
    }
}

/// `ca·a + cb·b`; keeps the spectral index of `a`.
pub struct Sum<A, B> {
    pub a: A,
    pub ca: f64,
    pub b: B,
    pub cb: f64,
}

impl<A: SmoothFunction, B: SmoothFunction> SmoothFunction for Sum<A, B> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        let a = self.a.taylor(point, order)?;
        let b = self.b.taylor(point, order)?;
        Ok(a * self.ca + b * self.cb)
    }

    fn domain(&self) -> Domain {
        self.a.domain()
    }
}

impl<A: SpectralFunction, B: SmoothFunction> SpectralFunction for Sum<A, B> {
    fn spectral_index(&self) -> u32 {
        self.a.spectral_index()
    }
}
