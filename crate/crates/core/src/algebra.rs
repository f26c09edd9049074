//! su(1,1) generator realizations on the bound states of each family.
//!
//! Constant mass: the second-order operators `K_i`, `M_i`, `N_i`. Deformed:
//! `K^(α)_i`, `M^(α)_i`, `N^(α)_i`, whose δ factors are evaluated as scalars on
//! the eigenstate they act on.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::measures::{inner_product, norm, Measure};
use crate::operators::{operator_variable, pi_jet, pi_squared_jet, Domain, SmoothFunction, SpectralFunction};
use crate::systems::{BoundState, Family, MassKind, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Zero,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn generator(self) -> Generator {
        match self {
            Direction::Plus => Generator::Plus,
            Direction::Minus => Generator::Minus,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }
}

/// Placement of the `A^(α)_±` factor relative to the δ factors of a deformed ladder generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorOrder {
    /// `A_± (δ±1) √((δ±2)/δ)`.
    Left,
    /// `(δ∓1) √(δ/(δ∓2)) A_±`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnirrepLabel {
    /// Lowest weight, `μ` of the `n = 0` state.
    pub k: f64,
    pub casimir: f64,
}

/// One scalar identity checked on the state `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub identity: &'static str,
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityResidual {
    fn new(identity: &'static str, n: u32, lhs: f64, rhs: f64) -> Self {
        IdentityResidual { identity, n, lhs, rhs, residual: (lhs - rhs).abs() }
    }
}

/// The three su(1,1) generators realized for one system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSet {
    spec: SystemSpec,
    order: FactorOrder,
}

impl GeneratorSet {
    pub fn new(spec: SystemSpec) -> Self {
        GeneratorSet { spec, order: FactorOrder::Left }
    }

    pub fn with_order(mut self, order: FactorOrder) -> Self {
        self.order = order;
        self
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn factor_order(&self) -> FactorOrder {
        self.order
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn mass_kind(&self) -> MassKind {
        self.spec.mass_kind()
    }

    fn alpha(&self) -> f64 {
        self.spec.alpha()
    }

    fn deformed(&self) -> bool {
        self.alpha() > 0.0
    }

    /// `Λ` with `α/Λ` the deformation of the commutation relations.
    pub fn big_lambda(&self) -> f64 {
        let a = self.alpha();
        match self.spec {
            SystemSpec::Oscillator(s) => s.lambda(),
            SystemSpec::Morse(s) => 0.5 * (4.0 * s.lambda_abs() - a),
            SystemSpec::Coulomb(s) => 0.5 * (4.0 * s.kappa() + a),
        }
    }

    /// Weight eigenvalue `μ_n` of the state `n`.
    pub fn weight(&self, n: u32) -> f64 {
        let nf = n as f64;
        let a = self.alpha();
        match self.spec {
            SystemSpec::Oscillator(s) if a == 0.0 => 0.5 * (s.l + 1.5) + nf,
            SystemSpec::Oscillator(s) => s.energy(n) / (4.0 * s.lambda()),
            SystemSpec::Morse(s) if a == 0.0 => s.member_a(n) + 0.5,
            SystemSpec::Morse(s) => 2.0 / (4.0 * s.lambda_abs() - a) * (s.b * (2.0 * s.member_a(n) + 1.0) - a / 8.0),
            SystemSpec::Coulomb(s) if a == 0.0 => nf + s.lcal + 1.0,
            SystemSpec::Coulomb(s) => 2.0 / (4.0 * s.kappa() + a) * (2.0 * s.member_z(n) - a / 8.0),
        }
    }

    fn not_applicable<T>(&self) -> Result<T> {
        Err(Error::NotApplicable("δ is defined only for a deformed realization (alpha > 0)".into()))
    }

    /// `δ` on the state `n`, from its square-root definition in the weight generator.
    pub fn delta(&self, n: u32) -> Result<f64> {
        if !self.deformed() {
            return self.not_applicable();
        }
        let a = self.alpha();
        let mu = self.weight(n);
        let arg = match self.spec {
            SystemSpec::Oscillator(s) => {
                let q = s.lambda() / a;
                4.0 * q * mu + q * (q - 1.0) + s.l * (s.l + 1.0)
            }
            SystemSpec::Morse(s) => {
                let q = s.lambda_abs() / a;
                2.0 * (4.0 * s.lambda_abs() - a) / a * mu + 4.0 * q * (q - 1.0) - 4.0 * s.epsilon() + 0.5
            }
            SystemSpec::Coulomb(s) => {
                let k = s.kappa();
                2.0 / a * (4.0 * k + a) * mu + 4.0 * k * k / (a * a) + 4.0 * s.lcal * (s.lcal + 1.0) + 0.5
            }
        };
        Ok(arg.sqrt())
    }

    /// `δ` on the state `n` in closed form, linear in `n` with slope 2.
    pub fn delta_closed_form(&self, n: u32) -> Result<f64> {
        if !self.deformed() {
            return self.not_applicable();
        }
        let a = self.alpha();
        let nf = n as f64;
        Ok(match self.spec {
            SystemSpec::Oscillator(s) => s.lambda() / a + s.l + 1.0 + 2.0 * nf,
            SystemSpec::Morse(s) => 2.0 * s.lambda_abs() / a + 2.0 * s.sqrt_abs_epsilon() + 2.0 * nf,
            SystemSpec::Coulomb(s) => 2.0 * s.kappa() / a + 2.0 * s.lcal + 2.0 + 2.0 * nf,
        })
    }

    /// Closed-form coefficient `c` in `X_± ψ_n = c ψ_{n±1}`.
    pub fn ladder_coefficient(&self, n: u32, direction: Direction) -> f64 {
        match direction {
            Direction::Plus => self.raising_coefficient(n as f64),
            Direction::Minus if n == 0 => 0.0,
            Direction::Minus => self.raising_coefficient(n as f64 - 1.0),
        }
    }

    fn raising_coefficient(&self, n: f64) -> f64 {
        let a = self.alpha();
        match self.spec {
            SystemSpec::Oscillator(s) if a == 0.0 => ((n + 1.0) * (n + s.l + 1.5)).sqrt(),
            SystemSpec::Oscillator(s) => {
                let q = s.lambda() / a;
                a / s.lambda() * ((n + 1.0) * (n + s.l + 1.5) * (n + q + s.l + 1.0) * (n + q + 0.5)).sqrt()
            }
            SystemSpec::Morse(s) if a == 0.0 => ((n + 1.0) * (n + 2.0 * s.a0 + 1.0)).sqrt(),
            SystemSpec::Morse(s) => {
                let lam = s.lambda_abs();
                let c = (2.0 * s.a0 + 1.0) * s.b / lam;
                2.0 / (4.0 * lam - a)
                    * ((n + 1.0) * (n + c)).sqrt()
                    * ((2.0 * lam + a * (n + c - 1.0)) * (2.0 * lam + a * n)).sqrt()
            }
            SystemSpec::Coulomb(s) if a == 0.0 => ((n + 1.0) * (n + 2.0 * s.lcal + 2.0)).sqrt(),
            SystemSpec::Coulomb(s) => {
                let (l, z) = (s.lcal, s.z0);
                2.0 / (4.0 * z - a * (l + 1.0))
                    * ((n + 1.0) * (n + 2.0 * l + 2.0) * (2.0 * z + a * (l + 1.0) * (n + 2.0 * l + 1.0))).sqrt()
                    * (2.0 * z + a * (l + 1.0) * n).sqrt()
            }
        }
    }

    pub fn unirrep(&self) -> UnirrepLabel {
        UnirrepLabel { k: self.weight(0), casimir: self.casimir_value() }
    }

    /// Eigenvalue of the Casimir operator on the whole representation.
    pub fn casimir_value(&self) -> f64 {
        let a = self.alpha();
        match self.spec {
            SystemSpec::Oscillator(s) if a == 0.0 => 0.25 * (s.l + 1.5) * (s.l - 0.5),
            SystemSpec::Oscillator(s) => {
                let lam = s.lambda();
                0.25 * (1.0 - a / lam) * (s.l + 1.5) * (s.l - 0.5)
                    - 3.0 * a * a / (16.0 * lam * lam) * s.l * (s.l + 1.0)
            }
            SystemSpec::Morse(s) if a == 0.0 => s.a0 * s.a0 - 0.25,
            SystemSpec::Morse(s) => {
                let x = 4.0 * s.lambda_abs() - a;
                let eps = -s.epsilon();
                (1.0 - 2.0 * a / x) * (eps - 0.25) - 3.0 * a * a / (x * x) * (eps - 1.0 / 16.0)
            }
            SystemSpec::Coulomb(s) if a == 0.0 => s.lcal * (s.lcal + 1.0),
            SystemSpec::Coulomb(s) => {
                let x = 4.0 * s.kappa() + a;
                (1.0 - 2.0 * a / x - 3.0 * a * a / (x * x)) * s.lcal * (s.lcal + 1.0) - 9.0 * a * a / (16.0 * x * x)
            }
        }
    }

    /// The Casimir combination evaluated with the closed-form weights and ladder coefficients on state `n`.
    pub fn casimir_on_state(&self, n: u32) -> Result<f64> {
        let mu = self.weight(n);
        let c = self.ladder_coefficient(n, Direction::Minus);
        if !self.deformed() {
            return Ok(-c * c + mu * (mu - 1.0));
        }
        let (a, big) = (self.alpha(), self.big_lambda());
        let d = self.delta(n)?;
        Ok(-c * c + mu * mu - a / big * (d - 1.25) * mu - a * a / (8.0 * big * big) * d)
    }

    /// Apply a generator to a function carrying a bound-state index.
    pub fn apply<F: SpectralFunction>(&self, which: Generator, f: F) -> Result<GeneratorImage<F>> {
        let m = f.spectral_index();
        let (index, vanishes) = match which {
            Generator::Zero => (m, false),
            Generator::Plus => (m + 1, false),
            Generator::Minus if m == 0 => (0, true),
            Generator::Minus => (m - 1, false),
        };
        let mut scalars = DeformedScalars::default();
        if self.deformed() && which != Generator::Zero && !vanishes {
            let dir = if which == Generator::Plus { Direction::Plus } else { Direction::Minus };
            let s = dir.sign();
            let delta = self.delta(m)?;
            let factor = match self.order {
                FactorOrder::Left => (delta + s) * ((delta + 2.0 * s) / delta).sqrt(),
                FactorOrder::Right => {
                    let d = self.delta(index)?;
                    (d - s) * (d / (d - 2.0 * s)).sqrt()
                }
            };
            scalars = DeformedScalars { delta, factor };
        }
        Ok(GeneratorImage { set: *self, which, inner: f, index, vanishes, scalars })
    }

    /// `A^(α)_±` alone applied to a state, with δ taken on that state.
    pub fn apply_a_operator<F: SpectralFunction>(&self, direction: Direction, f: F) -> Result<AOperatorImage<F>> {
        let delta = self.delta(f.spectral_index())?;
        Ok(AOperatorImage { set: *self, direction, delta, inner: f })
    }

    /// Casimir operator applied pointwise by composing generator actions.
    pub fn apply_casimir<F: SpectralFunction>(&self, f: F) -> Result<CasimirImage<F>> {
        let delta = if self.deformed() { self.delta(f.spectral_index())? } else { 0.0 };
        Ok(CasimirImage { set: *self, inner: f, delta })
    }

    /// `⟨ψ_{n±1}, X_± ψ_n⟩` by quadrature; for the minus direction on `n = 0` the norm of `X_- ψ_0`.
    pub fn matrix_element_numeric(&self, n: u32, direction: Direction, rtol: f64) -> Result<f64> {
        let measure = Measure::for_family(self.family());
        let state = BoundState::new(self.spec, n)?;
        let image = self.apply(direction.generator(), state)?;
        if direction == Direction::Minus && n == 0 {
            return norm(&measure, &image, rtol);
        }
        let target = match direction {
            Direction::Plus => n + 1,
            Direction::Minus => n - 1,
        };
        inner_product(&measure, &BoundState::new(self.spec, target)?, &image, rtol)
    }

    /// Scalar commutator and Casimir identities on states `0..=n_max`.
    pub fn commutator_residuals(&self, n_max: u32) -> Result<Vec<IdentityResidual>> {
        let mut out = Vec::new();
        let casimir = self.casimir_value();
        for n in 0..=n_max {
            let mu = self.weight(n);
            let (up, down, comm) = if self.deformed() {
                let (a, big) = (self.alpha(), self.big_lambda());
                let d = self.delta(n)?;
                (a / big * (d + 1.0), -a / big * (d - 1.0), -a * d / big * (2.0 * mu + a / (4.0 * big)))
            } else {
                (1.0, -1.0, -2.0 * mu)
            };
            out.push(IdentityResidual::new("weight_spacing_up", n, self.weight(n + 1) - mu, up));
            if n > 0 {
                out.push(IdentityResidual::new("weight_spacing_down", n, self.weight(n - 1) - mu, down));
            }
            let lower = match n {
                0 => 0.0,
                _ => self.ladder_coefficient(n, Direction::Minus) * self.ladder_coefficient(n - 1, Direction::Plus),
            };
            let lhs =
                lower - self.ladder_coefficient(n, Direction::Plus) * self.ladder_coefficient(n + 1, Direction::Minus);
            out.push(IdentityResidual::new("plus_minus_commutator", n, lhs, comm));
            out.push(IdentityResidual::new("casimir", n, self.casimir_on_state(n)?, casimir));
        }
        Ok(out)
    }

    /// Largest pointwise deviation, relative to `max |ψ_n|` on the grid, of
    /// `[X_0, X_±] ψ_n` and `[X_+, X_-] ψ_n` from their right-hand sides.
    pub fn commutator_pointwise(&self, n: u32, grid: &[f64]) -> Result<f64> {
        let state = BoundState::new(self.spec, n)?;
        let deformed = self.deformed();
        let (a, big) = if deformed { (self.alpha(), self.big_lambda()) } else { (0.0, 1.0) };
        let d = if deformed { self.delta(n)? } else { 0.0 };
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &p in grid {
            scale = scale.max(state.value(p)?.abs());
        }
        for dir in [Direction::Plus, Direction::Minus] {
            let s = dir.sign();
            let g = dir.generator();
            let coeff = if deformed { s * a / big * (d + s) } else { s };
            let zero_after = self.apply(Generator::Zero, self.apply(g, state)?)?;
            let after_zero = self.apply(g, self.apply(Generator::Zero, state)?)?;
            let rhs = self.apply(g, state)?;
            for &p in grid {
                let lhs = zero_after.value(p)? - after_zero.value(p)?;
                worst = worst.max((lhs - coeff * rhs.value(p)?).abs());
            }
        }
        let pm = self.apply(Generator::Plus, self.apply(Generator::Minus, state)?)?;
        let mp = self.apply(Generator::Minus, self.apply(Generator::Plus, state)?)?;
        let k0 = self.apply(Generator::Zero, state)?;
        for &p in grid {
            let lhs = pm.value(p)? - mp.value(p)?;
            let rhs = if deformed {
                -a * d / big * (2.0 * k0.value(p)? + a / (4.0 * big) * state.value(p)?)
            } else {
                -2.0 * k0.value(p)?
            };
            worst = worst.max((lhs - rhs).abs());
        }
        if scale == 0.0 {
            return Err(Error::Domain("the state vanishes on the whole grid".into()));
        }
        Ok(worst / scale)
    }

    fn action_jet(&self, which: Generator, sc: &DeformedScalars, q: &Jet, g: &Jet) -> Jet {
        if self.deformed() {
            match which {
                Generator::Zero => self.deformed_zero(q, g),
                Generator::Plus => self.deformed_ladder(Direction::Plus, sc.delta, q, g) * sc.factor,
                Generator::Minus => self.deformed_ladder(Direction::Minus, sc.delta, q, g) * sc.factor,
            }
        } else {
            self.constant_action(which, q, g)
        }
    }

    fn constant_action(&self, which: Generator, q: &Jet, g: &Jet) -> Jet {
        let g1 = g.diff();
        let g2 = g1.diff();
        match self.spec {
            SystemSpec::Oscillator(s) => {
                let w = s.omega;
                let cent = q.recip() * q.recip() * (s.l * (s.l + 1.0));
                let harm = *q * *q * (0.25 * w * w);
                match which {
                    Generator::Zero => (-g2 + (cent + harm) * *g) * (0.5 / w),
                    Generator::Plus | Generator::Minus => {
                        let sg = if which == Generator::Plus { 1.0 } else { -1.0 };
                        let dil = *q * g1 + *g * 0.5;
                        (g2 - cent * *g + harm * *g - dil * (sg * w)) * (0.5 / w)
                    }
                }
            }
            SystemSpec::Morse(s) => {
                let ex = q.exp();
                let emx2 = (*q * -2.0).exp() * (s.b * s.b);
                let eps = s.epsilon();
                match which {
                    Generator::Zero => ex * (-g2 + emx2 * *g - *g * eps) * (0.5 / s.b),
                    Generator::Plus | Generator::Minus => {
                        let sg = if which == Generator::Plus { 1.0 } else { -1.0 };
                        ex * (g2 + emx2 * *g + *g * eps) * (0.5 / s.b) + (g1 - *g * 0.5) * sg
                    }
                }
            }
            SystemSpec::Coulomb(s) => {
                let k = s.kappa();
                let cent = q.recip() * q.recip() * (s.lcal * (s.lcal + 1.0));
                let e = s.energy();
                match which {
                    Generator::Zero => *q * (-g2 + cent * *g - *g * e) * (0.5 / k),
                    Generator::Plus | Generator::Minus => {
                        let sg = if which == Generator::Plus { 1.0 } else { -1.0 };
                        *q * (g2 - cent * *g - *g * e) * (0.5 / k) - *q * g1 * sg
                    }
                }
            }
        }
    }

    fn deformed_zero(&self, q: &Jet, g: &Jet) -> Jet {
        let a = self.alpha();
        let profile = self.spec.profile();
        let p2 = pi_squared_jet(&profile, q, g);
        match self.spec {
            SystemSpec::Oscillator(s) => (p2 + self.spec.potential_jet(0, q) * *g) * (0.25 / s.lambda()),
            SystemSpec::Morse(s) => {
                let emx = (-*q).exp();
                let pot = emx * emx * (s.b * s.b) - emx * (a / 8.0) - s.epsilon();
                q.exp() * (p2 + pot * *g) * (2.0 / (4.0 * s.lambda_abs() - a))
            }
            SystemSpec::Coulomb(s) => {
                let inv = q.recip();
                let pot = inv * inv * (s.lcal * (s.lcal + 1.0)) - inv * (a / 8.0) - s.energy();
                *q * (p2 + pot * *g) * (2.0 / (4.0 * s.kappa() + a))
            }
        }
    }

    /// `A^(α)_± g` with δ given as a scalar.
    fn a_operator(&self, dir: Direction, delta: f64, q: &Jet, g: &Jet) -> Jet {
        let a = self.alpha();
        let s = dir.sign();
        let profile = self.spec.profile();
        let f = profile.jet(q);
        let finv = f.recip();
        let t = 1.0 - finv * 2.0;
        let pa = pi_jet(&profile, q, g);
        let g = g.truncate(pa.order());
        let c = match self.spec {
            SystemSpec::Oscillator(sp) => {
                let r = sp.lambda() / a;
                (r - sp.l - 1.0) * (r + sp.l)
            }
            SystemSpec::Morse(sp) => {
                let r = 2.0 * sp.lambda_abs() / a;
                let e = 2.0 * sp.sqrt_abs_epsilon();
                (r - e - 1.0) * (r + e - 1.0)
            }
            SystemSpec::Coulomb(sp) => {
                let r = 2.0 * sp.kappa() / a;
                (r - 2.0 * sp.lcal - 1.0) * (r + 2.0 * sp.lcal + 1.0)
            }
        };
        let common = -(t * g) * (4.0 * a * (1.0 - s * delta)) + g * (4.0 * a * c / (1.0 + s * delta));
        let head = match self.family() {
            Family::Oscillator => -(*q * finv * pa) * (8.0 * a) + t * g * (4.0 * a),
            Family::Morse => finv * pa * (16.0 * a) - finv * g * (8.0 * a),
            Family::Coulomb => -(*q * finv * pa) * (16.0 * a) + *q * finv * g * (8.0 * a * a),
        };
        head + common
    }

    fn ladder_denominator(&self) -> f64 {
        let a = self.alpha();
        match self.spec {
            SystemSpec::Oscillator(s) => 16.0 * s.lambda(),
            SystemSpec::Morse(s) => 8.0 * (4.0 * s.lambda_abs() - a),
            SystemSpec::Coulomb(s) => 8.0 * (4.0 * s.kappa() + a),
        }
    }

    fn deformed_ladder(&self, dir: Direction, delta: f64, q: &Jet, g: &Jet) -> Jet {
        self.a_operator(dir, delta, q, g) * (dir.sign() / self.ladder_denominator())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct DeformedScalars {
    delta: f64,
    factor: f64,
}

/// Result of applying one generator; again a function with a bound-state index.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorImage<F> {
    set: GeneratorSet,
    which: Generator,
    inner: F,
    index: u32,
    vanishes: bool,
    scalars: DeformedScalars,
}

impl<F> GeneratorImage<F> {
    fn loss(&self) -> usize {
        if self.set.deformed() && self.which != Generator::Zero {
            1
        } else {
            2
        }
    }
}

impl<F: SpectralFunction> SmoothFunction for GeneratorImage<F> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        if self.vanishes {
            self.inner.domain().check(point)?;
            return Ok(Jet::zero(order));
        }
        let loss = self.loss();
        let q = operator_variable(point, order, loss)?;
        let g = self.inner.taylor(point, order + loss)?;
        if g.is_zero() {
            return Ok(Jet::zero(order));
        }
        Ok(self.set.action_jet(self.which, &self.scalars, &q, &g).truncate(order))
    }

    fn domain(&self) -> Domain {
        self.inner.domain()
    }
}

impl<F: SpectralFunction> SpectralFunction for GeneratorImage<F> {
    fn spectral_index(&self) -> u32 {
        self.index
    }
}

/// `A^(α)_± g`, without the δ factors and the overall constant.
#[derive(Debug, Clone, Copy)]
pub struct AOperatorImage<F> {
    set: GeneratorSet,
    direction: Direction,
    delta: f64,
    inner: F,
}

impl<F: SpectralFunction> SmoothFunction for AOperatorImage<F> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        let q = operator_variable(point, order, 1)?;
        let g = self.inner.taylor(point, order + 1)?;
        if g.is_zero() {
            return Ok(Jet::zero(order));
        }
        Ok(self.set.a_operator(self.direction, self.delta, &q, &g).truncate(order))
    }

    fn domain(&self) -> Domain {
        self.inner.domain()
    }
}

/// Casimir operator image: `-X_+X_- + X_0(X_0-1)`, or its deformed analogue.
#[derive(Debug, Clone, Copy)]
pub struct CasimirImage<F> {
    set: GeneratorSet,
    inner: F,
    delta: f64,
}

impl<F: SpectralFunction> SmoothFunction for CasimirImage<F> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        let set = &self.set;
        let f = &self.inner;
        let pm = set.apply(Generator::Plus, set.apply(Generator::Minus, f)?)?.taylor(point, order)?;
        let k0 = set.apply(Generator::Zero, f)?;
        let k00 = set.apply(Generator::Zero, k0)?.taylor(point, order)?;
        let k0 = k0.taylor(point, order)?;
        if !set.deformed() {
            return Ok(-pm + k00 - k0);
        }
        let (a, big) = (set.alpha(), set.big_lambda());
        let g = f.taylor(point, order)?;
        Ok(-pm + k00 - k0 * (a / big * (self.delta - 1.25)) - g * (a * a / (8.0 * big * big) * self.delta))
    }

    fn domain(&self) -> Domain {
        self.inner.domain()
    }
}

impl<F: SpectralFunction> SpectralFunction for CasimirImage<F> {
    fn spectral_index(&self) -> u32 {
        self.inner.spectral_index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ho_pdm() -> GeneratorSet {
        GeneratorSet::new(SystemSpec::oscillator(3f64.sqrt(), 0.0, 1.0).unwrap())
    }

    #[test]
    fn ladder_examples() {
        let ho = GeneratorSet::new(SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap());
        assert!((ho.ladder_coefficient(0, Direction::Plus) - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(ho.ladder_coefficient(0, Direction::Minus), 0.0);
        let c = GeneratorSet::new(SystemSpec::coulomb(0.0, 1.0, 0.1).unwrap());
        let expect = 2.0 / 3.9 * (1.0f64 * 2.0 * 2.1).sqrt() * 2f64.sqrt();
        assert!((c.ladder_coefficient(0, Direction::Plus) - expect).abs() < 1e-14);
        assert!((ho_pdm().ladder_coefficient(0, Direction::Plus) - 2.0 / 3.0 * 7.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn unirrep_examples() {
        let u = GeneratorSet::new(SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap()).unirrep();
        assert_eq!(u.k, 0.75);
        assert_eq!(u.casimir, -0.1875);
        let m = GeneratorSet::new(SystemSpec::morse(0.25, 0.25, 0.0).unwrap()).unirrep();
        assert_eq!((m.k, m.casimir), (0.75, -0.1875));
        assert!((ho_pdm().unirrep().casimir + 0.0625).abs() < 1e-15);
    }

    #[test]
    fn delta_examples() {
        let g = ho_pdm();
        assert!((g.delta(0).unwrap() - 2.5).abs() < 1e-14);
        assert!((g.delta(1).unwrap() - 4.5).abs() < 1e-14);
        for n in 0..=10 {
            assert!((g.delta(n + 1).unwrap() - g.delta(n).unwrap() - 2.0).abs() < 1e-10);
            assert!((g.delta(n).unwrap() - g.delta_closed_form(n).unwrap()).abs() < 1e-12);
        }
        let flat = GeneratorSet::new(SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap());
        assert!(matches!(flat.delta(0), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn weight_spacing_example() {
        let g = ho_pdm();
        let lhs = g.weight(1) - g.weight(0);
        assert!((lhs - 14.0 / 6.0).abs() < 1e-14);
        assert!((2.0 / 3.0 * (g.delta(0).unwrap() + 1.0) - lhs).abs() < 1e-14);
    }

    #[test]
    fn deformed_raising_on_ground_state() {
        let g = ho_pdm();
        let spec = *g.spec();
        let p0 = BoundState::new(spec, 0).unwrap();
        let p1 = BoundState::new(spec, 1).unwrap();
        for order in [FactorOrder::Left, FactorOrder::Right] {
            let img = g.with_order(order).apply(Generator::Plus, p0).unwrap();
            for i in 1..40 {
                let r = i as f64 * 0.1;
                let lhs = img.value(r).unwrap();
                assert!((lhs - 1.825742 * p1.value(r).unwrap()).abs() < 1e-6, "{order:?} r={r}");
            }
        }
    }

    #[test]
    fn lowering_annihilates_ground_state() {
        let g = GeneratorSet::new(SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap());
        let p0 = BoundState::new(*g.spec(), 0).unwrap();
        let img = g.apply(Generator::Minus, p0).unwrap();
        for i in 1..40 {
            let r = i as f64 * 0.1;
            assert!(img.value(r).unwrap().abs() < 1e-12);
        }
    }
}
