//! The six system families: radial oscillator, Morse and radial Coulomb, each
//! with constant mass or with the position-dependent mass `M = 1/f²`.
//!
//! Units follow `ħ = 1`, `m₀ = 1/2`. A deformation `alpha == 0` selects the
//! constant-mass realization everywhere.

use serde::Serialize;

use crate::error::{domain, parameter, Result};
use crate::jet::Jet;
use crate::operators::{Domain, SmoothFunction, SpectralFunction};
use crate::specfun::{jacobi_taylor, laguerre_taylor, log_gamma, log_gamma_ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Oscillator,
    Morse,
    Coulomb,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Oscillator => "ho",
            Family::Morse => "morse",
            Family::Coulomb => "coulomb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MassKind {
    Constant,
    Pdm,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return parameter(format!("deformation alpha = {alpha} must be finite and >= 0"));
    }
    Ok(())
}

fn half_integer_warning(name: &str, v: f64) -> Option<String> {
    let twice = 2.0 * v;
    if (twice - twice.round()).abs() > 1e-12 {
        Some(format!(
            "{name} = {v} is neither integer nor half-integer; no physical angular momentum corresponds to it"
        ))
    } else {
        None
    }
}

/// Radial oscillator `-d²/dr² + L(L+1)/r² + ω²r²/4`, optionally deformed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorSpec {
    pub omega: f64,
    pub l: f64,
    pub alpha: f64,
}

impl OscillatorSpec {
    pub fn new(omega: f64, l: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(omega > 0.0) || !omega.is_finite() {
            return parameter(format!("oscillator frequency omega = {omega} must be > 0"));
        }
        if !(l >= -0.5) || !l.is_finite() {
            return parameter(format!("oscillator L = {l} must be >= -1/2"));
        }
        Ok(OscillatorSpec { omega, l, alpha })
    }

    /// `Δ_HO = √(ω² + α²)`.
    pub fn delta(&self) -> f64 {
        self.omega.hypot(self.alpha)
    }

    /// `λ_HO = (α + Δ_HO)/2`.
    pub fn lambda(&self) -> f64 {
        0.5 * (self.alpha + self.delta())
    }

    pub fn energy(&self, n: u32) -> f64 {
        let n = n as f64;
        let l = self.l;
        if self.alpha == 0.0 {
            self.omega * (2.0 * n + l + 1.5)
        } else {
            let a = self.alpha;
            a * (4.0 * n * n + 4.0 * n * (l + 1.0) + l + 1.0) + (4.0 * n + 2.0 * l + 3.0) * self.lambda()
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        half_integer_warning("L", self.l).into_iter().collect()
    }
}

/// Morse hierarchy `-d²/dx² + B²e^{-2x} - B(2A_n+1)e^{-x}` sharing one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorseSpec {
    pub a0: f64,
    pub b: f64,
    pub alpha: f64,
}

impl MorseSpec {
    pub fn new(a0: f64, b: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(a0 > 0.0) || !a0.is_finite() {
            return parameter(format!("Morse A0 = {a0} must be > 0"));
        }
        if !(b > 0.0) || !b.is_finite() {
            return parameter(format!("Morse B = {b} must be > 0"));
        }
        let spec = MorseSpec { a0, b, alpha };
        if spec.sqrt_abs_epsilon() < 0.0 {
            return parameter(format!(
                "deformed Morse hierarchy needs (2A0+1)B >= |lambda_M|; got {} < {}",
                (2.0 * a0 + 1.0) * b,
                spec.lambda_abs()
            ));
        }
        Ok(spec)
    }

    /// `Δ_M = √(4B² + α²)`.
    pub fn delta(&self) -> f64 {
        (2.0 * self.b).hypot(self.alpha)
    }

    /// `|λ_M| = (α + Δ_M)/2`; equals `B` at zero deformation.
    pub fn lambda_abs(&self) -> f64 {
        if self.alpha == 0.0 {
            self.b
        } else {
            0.5 * (self.alpha + self.delta())
        }
    }

    /// `√|ε|`, which is `A0` for constant mass.
    pub fn sqrt_abs_epsilon(&self) -> f64 {
        if self.alpha == 0.0 {
            self.a0
        } else {
            let lam = self.lambda_abs();
            ((2.0 * self.a0 + 1.0) * self.b - lam) / (2.0 * lam)
        }
    }

    pub fn epsilon(&self) -> f64 {
        let s = self.sqrt_abs_epsilon();
        -s * s
    }

    /// Potential parameter `A_n` of the n-th hierarchy member.
    pub fn member_a(&self, n: u32) -> f64 {
        let n = n as f64;
        if self.alpha == 0.0 {
            return self.a0 + n;
        }
        let (a, b, lam) = (self.alpha, self.b, self.lambda_abs());
        (a * n + lam) / lam * self.a0 + n * (2.0 * b * b + a * b + a * lam * (n + 1.0)) / (2.0 * b * lam)
    }
}

/// Coulomb hierarchy `-d²/dR² + 𝓛(𝓛+1)/R² - 2Z_n/R` sharing one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombSpec {
    pub lcal: f64,
    pub z0: f64,
    pub alpha: f64,
}

impl CoulombSpec {
    pub fn new(lcal: f64, z0: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(lcal > -0.5) || !lcal.is_finite() {
            return parameter(format!("Coulomb 𝓛 = {lcal} must be > -1/2"));
        }
        if !(z0 > 0.0) || !z0.is_finite() {
            return parameter(format!("Coulomb Z0 = {z0} must be > 0"));
        }
        let spec = CoulombSpec { lcal, z0, alpha };
        if !(spec.kappa() > 0.0) {
            return parameter(format!(
                "deformed Coulomb hierarchy needs Z0/(𝓛+1) > alpha/2; got {} <= {}",
                z0 / (lcal + 1.0),
                alpha / 2.0
            ));
        }
        Ok(spec)
    }

    /// The Morse-side constant `|λ_M| = Z0/(𝓛+1)`.
    pub fn lambda_abs(&self) -> f64 {
        self.z0 / (self.lcal + 1.0)
    }

    /// `√|𝓔|`.
    pub fn kappa(&self) -> f64 {
        self.lambda_abs() - 0.5 * self.alpha
    }

    pub fn energy(&self) -> f64 {
        let k = self.kappa();
        -k * k
    }

    /// Morse parameter `B` with `𝓔 = -B² - α²/4`; `None` when that `B` is not real.
    pub fn morse_b(&self) -> Option<f64> {
        let k = self.kappa();
        let b2 = k * k - 0.25 * self.alpha * self.alpha;
        (b2 > 0.0).then(|| b2.sqrt())
    }

    /// Atomic number `Z_n` of the n-th hierarchy member.
    pub fn member_z(&self, n: u32) -> f64 {
        let n = n as f64;
        let l = self.lcal;
        self.z0 * (n + l + 1.0) / (l + 1.0) + 0.5 * self.alpha * n * (n + 2.0 * l + 1.0)
    }

    pub fn warnings(&self) -> Vec<String> {
        half_integer_warning("𝓛", self.lcal).into_iter().collect()
    }
}

/// Parameters of one family, constant mass when `alpha == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SystemSpec {
    #[serde(rename = "ho")]
    Oscillator(OscillatorSpec),
    Morse(MorseSpec),
    Coulomb(CoulombSpec),
}

impl SystemSpec {
    pub fn oscillator(omega: f64, l: f64, alpha: f64) -> Result<Self> {
        OscillatorSpec::new(omega, l, alpha).map(SystemSpec::Oscillator)
    }

    pub fn morse(a0: f64, b: f64, alpha: f64) -> Result<Self> {
        MorseSpec::new(a0, b, alpha).map(SystemSpec::Morse)
    }

    pub fn coulomb(lcal: f64, z0: f64, alpha: f64) -> Result<Self> {
        CoulombSpec::new(lcal, z0, alpha).map(SystemSpec::Coulomb)
    }

    pub fn family(&self) -> Family {
        match self {
            SystemSpec::Oscillator(_) => Family::Oscillator,
            SystemSpec::Morse(_) => Family::Morse,
            SystemSpec::Coulomb(_) => Family::Coulomb,
        }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            SystemSpec::Oscillator(s) => s.alpha,
            SystemSpec::Morse(s) => s.alpha,
            SystemSpec::Coulomb(s) => s.alpha,
        }
    }

    pub fn mass_kind(&self) -> MassKind {
        if self.alpha() == 0.0 {
            MassKind::Constant
        } else {
            MassKind::Pdm
        }
    }

    /// Same parameters with a different deformation.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        match *self {
            SystemSpec::Oscillator(s) => SystemSpec::oscillator(s.omega, s.l, alpha),
            SystemSpec::Morse(s) => SystemSpec::morse(s.a0, s.b, alpha),
            SystemSpec::Coulomb(s) => SystemSpec::coulomb(s.lcal, s.z0, alpha),
        }
    }

    pub fn domain(&self) -> Domain {
        match self.family() {
            Family::Morse => Domain::REAL_LINE,
            _ => Domain::HALF_LINE,
        }
    }

    pub fn profile(&self) -> DeformingProfile {
        DeformingProfile { family: self.family(), alpha: self.alpha() }
    }

    /// Energy of state `n`; Morse and Coulomb hierarchies share one energy for all members.
    pub fn energy(&self, n: u32) -> f64 {
        match self {
            SystemSpec::Oscillator(s) => s.energy(n),
            SystemSpec::Morse(s) => s.epsilon(),
            SystemSpec::Coulomb(s) => s.energy(),
        }
    }

    /// `A_n` (Morse) or `Z_n` (Coulomb) of hierarchy member `n`; `None` for the oscillator.
    pub fn member_parameter(&self, n: u32) -> Option<f64> {
        match self {
            SystemSpec::Oscillator(_) => None,
            SystemSpec::Morse(s) => Some(s.member_a(n)),
            SystemSpec::Coulomb(s) => Some(s.member_z(n)),
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        match self {
            SystemSpec::Oscillator(s) => s.warnings(),
            SystemSpec::Morse(_) => Vec::new(),
            SystemSpec::Coulomb(s) => s.warnings(),
        }
    }

    /// Raw potential of member `member` (no ordering terms) as a jet in the coordinate.
    pub fn potential_jet(&self, member: u32, q: &Jet) -> Jet {
        match self {
            SystemSpec::Oscillator(s) => {
                let inv = q.recip();
                inv * inv * (s.l * (s.l + 1.0)) + *q * *q * (0.25 * s.omega * s.omega)
            }
            SystemSpec::Morse(s) => {
                let e = (-*q).exp();
                e * e * (s.b * s.b) - e * (s.b * (2.0 * s.member_a(member) + 1.0))
            }
            SystemSpec::Coulomb(s) => {
                let inv = q.recip();
                inv * inv * (s.lcal * (s.lcal + 1.0)) - inv * (2.0 * s.member_z(member))
            }
        }
    }
}

/// Deforming function `f` of a family: `1+αr²`, `1+αe^{-x}` or `1+αR`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformingProfile {
    pub family: Family,
    pub alpha: f64,
}

impl DeformingProfile {
    pub fn jet(&self, q: &Jet) -> Jet {
        match self.family {
            Family::Oscillator => 1.0 + *q * *q * self.alpha,
            Family::Morse => 1.0 + (-*q).exp() * self.alpha,
            Family::Coulomb => 1.0 + *q * self.alpha,
        }
    }

    /// `(f, f', f'')` at a point.
    pub fn eval(&self, q: f64) -> (f64, f64, f64) {
        let j = self.jet(&Jet::variable(q, 2));
        (j.value(), j.derivative(1), j.derivative(2))
    }
}

/// Mass, effective potential and deforming function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassPotential {
    pub mass: f64,
    pub v_eff: f64,
    pub f: f64,
    pub f1: f64,
    pub f2: f64,
}

/// Mass `1/f²` and effective potential of the flux form `-d (1/M) d + V_eff`.
pub fn mass_and_potential(spec: &SystemSpec, member: u32, point: f64) -> Result<MassPotential> {
    spec.domain().check(point)?;
    let (f, f1, f2) = spec.profile().eval(point);
    let v = spec.potential_jet(member, &Jet::constant(point, 0)).value();
    // the ordering terms of π² are the difference between V_eff and V
    let v_eff = v - 0.5 * f * f2 - 0.25 * f1 * f1;
    Ok(MassPotential { mass: 1.0 / (f * f), v_eff, f, f1, f2 })
}

// exp() of anything below this is zero in binary64
const UNDERFLOW_LOG: f64 = -745.2;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Poly {
    Laguerre { a: f64 },
    Jacobi { a: f64, b: f64 },
}

/// A closed-form eigenfunction of one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    spec: SystemSpec,
    n: u32,
    energy: f64,
    log_norm: f64,
    sign: f64,
    poly: Poly,
}

impl BoundState {
    pub fn new(spec: SystemSpec, n: u32) -> Result<Self> {
        crate::specfun::laguerre(n, 0.0, 0.0)?;
        let nf = n as f64;
        let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
        let ln2 = std::f64::consts::LN_2;
        let lfact = log_gamma(nf + 1.0)?;
        let (log_norm_sq, sign, poly) = match spec {
            SystemSpec::Oscillator(s) if s.alpha == 0.0 => {
                let l = s.l;
                let lnn = ln2 + (l + 1.5) * (0.5 * s.omega).ln() + lfact - log_gamma(nf + l + 1.5)?;
                (lnn, alt, Poly::Laguerre { a: l + 0.5 })
            }
            SystemSpec::Oscillator(s) => {
                let (l, a) = (s.l, s.alpha);
                let q = s.lambda() / a;
                let lnn = ln2
                    + (l + 1.5) * a.ln()
                    + lfact
                    + (q + 2.0 * nf + l + 1.0).ln()
                    + log_gamma_ratio(q + nf + 0.5, l + 0.5)?
                    - log_gamma(nf + l + 1.5)?;
                (lnn, 1.0, Poly::Jacobi { a: q - 0.5, b: l + 0.5 })
            }
            SystemSpec::Morse(s) if s.alpha == 0.0 => {
                let a0 = s.a0;
                let lnn = ln2 + (2.0 * a0 + 1.0) * (2.0 * s.b).ln() + lfact - log_gamma(nf + 2.0 * a0 + 1.0)?;
                (lnn, alt, Poly::Laguerre { a: 2.0 * a0 })
            }
            SystemSpec::Morse(s) => {
                let a = s.alpha;
                let q = 2.0 * s.lambda_abs() / a;
                let se = s.sqrt_abs_epsilon();
                let lnn = ln2
                    + (2.0 * se + 1.0) * a.ln()
                    + lfact
                    + (q + 2.0 * nf + 2.0 * se).ln()
                    + log_gamma_ratio(q + nf, 2.0 * se)?
                    - log_gamma(nf + 2.0 * se + 1.0)?;
                (lnn, 1.0, Poly::Jacobi { a: q - 1.0, b: 2.0 * se })
            }
            SystemSpec::Coulomb(s) if s.alpha == 0.0 => {
                let l = s.lcal;
                let lnn = ln2 + 2.0 * (l + 1.0) * (2.0 * s.kappa()).ln() + lfact - log_gamma(nf + 2.0 * l + 2.0)?;
                (lnn, alt, Poly::Laguerre { a: 2.0 * l + 1.0 })
            }
            SystemSpec::Coulomb(s) => {
                let (l, a) = (s.lcal, s.alpha);
                let q = 2.0 * s.kappa() / a;
                let lnn = ln2
                    + (2.0 * l + 2.0) * a.ln()
                    + lfact
                    + (q + 2.0 * nf + 2.0 * l + 2.0).ln()
                    + log_gamma_ratio(q + nf + 1.0, 2.0 * l + 1.0)?
                    - log_gamma(nf + 2.0 * l + 2.0)?;
                (lnn, 1.0, Poly::Jacobi { a: q, b: 2.0 * l + 1.0 })
            }
        };
        Ok(BoundState { spec, n, energy: spec.energy(n), log_norm: 0.5 * log_norm_sq, sign, poly })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn mass_kind(&self) -> MassKind {
        self.spec.mass_kind()
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Normalization coefficient including its sign.
    pub fn norm_coeff(&self) -> f64 {
        self.sign * self.log_norm.exp()
    }

    /// Exponent `p` of the `q^p` factor at the origin, the logarithm of the
    /// remaining prefactor, and the polynomial argument, both as jets.
    fn prefactor_and_argument(&self, q: &Jet) -> (f64, Jet, Jet) {
        let f = self.spec.profile().jet(q);
        match self.spec {
            SystemSpec::Oscillator(s) if s.alpha == 0.0 => {
                (s.l + 1.0, -(*q * *q * (0.25 * s.omega)), *q * *q * (0.5 * s.omega))
            }
            SystemSpec::Oscillator(s) => {
                let p = (s.lambda() + (s.l + 2.0) * s.alpha) / (2.0 * s.alpha);
                (s.l + 1.0, -(f.ln() * p), 1.0 - f.recip() * 2.0)
            }
            SystemSpec::Morse(s) if s.alpha == 0.0 => {
                let e = (-*q).exp();
                (0.0, *q * (-s.a0) - e * s.b, e * (2.0 * s.b))
            }
            SystemSpec::Morse(s) => {
                let se = s.sqrt_abs_epsilon();
                let p = s.lambda_abs() / s.alpha + se + 0.5;
                (0.0, *q * (-se) - f.ln() * p, 1.0 - f.recip() * 2.0)
            }
            SystemSpec::Coulomb(s) if s.alpha == 0.0 => {
                let k = s.kappa();
                (s.lcal + 1.0, -(*q * k), *q * (2.0 * k))
            }
            SystemSpec::Coulomb(s) => {
                let p = s.kappa() / s.alpha + s.lcal + 1.5;
                (s.lcal + 1.0, -(f.ln() * p), 1.0 - f.recip() * 2.0)
            }
        }
    }
}

impl SmoothFunction for BoundState {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        self.spec.domain().check(point)?;
        let q = Jet::variable(point, order);
        let (power, g, u) = self.prefactor_and_argument(&q);
        // q^p = point^p (q/point)^p keeps the expansion exact near the origin
        let log_power = if power == 0.0 { 0.0 } else { power * point.ln() };
        let log_amp = g.value() + log_power + self.log_norm;
        if log_amp.is_nan() {
            return domain(format!("state evaluation failed at {point}"));
        }
        if log_amp < UNDERFLOW_LOG {
            return Ok(Jet::zero(q.order()));
        }
        let outer = match self.poly {
            Poly::Laguerre { a } => laguerre_taylor(self.n, a, u.value(), q.order())?,
            Poly::Jacobi { a, b } => jacobi_taylor(self.n, a, b, u.value().clamp(-1.0, 1.0), q.order())?,
        };
        let poly = u.compose(&outer);
        let mut amp = (g + log_power + self.log_norm).exp() * poly;
        if power != 0.0 {
            amp = amp * q.scale(1.0 / point).powf(power);
        }
        Ok(amp.scale(self.sign))
    }

    fn domain(&self) -> Domain {
        self.spec.domain()
    }
}

impl SpectralFunction for BoundState {
    fn spectral_index(&self) -> u32 {
        self.n
    }
}

/// Potential held fixed while reading a hierarchy backwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FixedPotential {
    /// Morse member with `A_n = a_bar` and parameter `B`.
    Morse { a_bar: f64, b: f64 },
    /// Coulomb member with `Z_n = z_bar` and `𝓛`.
    Coulomb { z_bar: f64, lcal: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedSpectrum {
    /// `(n̄, energy)` pairs in increasing energy order.
    pub levels: Vec<(u32, f64)>,
    pub warnings: Vec<String>,
}

/// Bound-state energies of a single Morse or Coulomb Hamiltonian.
///
/// Deformed spectra keep `n̄` while the level stays bound and the sequence keeps
/// rising; the first violation ends it. `max_count` truncates the infinite
/// constant-mass Coulomb series.
pub fn spectrum_fixed_potential(potential: FixedPotential, alpha: f64, max_count: u32) -> Result<FixedSpectrum> {
    check_alpha(alpha)?;
    if max_count < 1 {
        return parameter("max_count must be >= 1");
    }
    // (numerator, denominator) with energy = -(num/den)², num > 0 for a bound level
    let level: Box<dyn Fn(f64) -> (f64, f64)> = match potential {
        FixedPotential::Morse { a_bar, b } => {
            if !(a_bar > 0.0) {
                return parameter(format!("fixed Morse parameter A = {a_bar} must be > 0"));
            }
            if !(b > 0.0) {
                return parameter(format!("Morse B = {b} must be > 0"));
            }
            let lam = if alpha == 0.0 { b } else { 0.5 * (alpha + (2.0 * b).hypot(alpha)) };
            Box::new(move |n| {
                ((2.0 * a_bar + 1.0) * b - alpha * n * n - (2.0 * n + 1.0) * lam, 2.0 * (alpha * n + lam))
            })
        }
        FixedPotential::Coulomb { z_bar, lcal } => {
            if !(z_bar > 0.0) {
                return parameter(format!("fixed Coulomb Z = {z_bar} must be > 0"));
            }
            if !(lcal > -0.5) {
                return parameter(format!("Coulomb 𝓛 = {lcal} must be > -1/2"));
            }
            Box::new(move |n| (2.0 * z_bar - alpha * (n * n + (lcal + 1.0) * (2.0 * n + 1.0)), 2.0 * (n + lcal + 1.0)))
        }
    };
    let mut levels: Vec<(u32, f64)> = Vec::new();
    for nbar in 0..max_count {
        let (num, den) = level(nbar as f64);
        if !(num > 0.0) {
            break;
        }
        let e = -(num / den) * (num / den);
        if let Some(&(_, prev)) = levels.last() {
            if !(e > prev) {
                break;
            }
        }
        levels.push((nbar, e));
    }
    let mut warnings = Vec::new();
    if alpha > 0.0 {
        if let FixedPotential::Morse { a_bar, .. } = potential {
            let constant_count = (a_bar.ceil() as u32).min(max_count);
            if (levels.len() as u32) < constant_count {
                warnings.push(format!(
                    "deformation alpha = {alpha} truncates the Morse spectrum to {} levels (constant mass: {constant_count})",
                    levels.len()
                ));
            }
        }
    }
    Ok(FixedSpectrum { levels, warnings })
}

/// Closed-form eigenstate of level `nbar` of a fixed Morse or Coulomb Hamiltonian.
///
/// The level is the member `nbar` of the hierarchy whose member `nbar` has the
/// requested potential; its energy is the `nbar`-th entry of
/// [`spectrum_fixed_potential`].
pub fn fixed_potential_state(potential: FixedPotential, alpha: f64, nbar: u32) -> Result<BoundState> {
    check_alpha(alpha)?;
    let n = nbar as f64;
    let spec = match potential {
        FixedPotential::Morse { a_bar, b } => {
            if !(b > 0.0) {
                return parameter(format!("Morse B = {b} must be > 0"));
            }
            let a0 = if alpha == 0.0 {
                a_bar - n
            } else {
                let lam = 0.5 * (alpha + (2.0 * b).hypot(alpha));
                let shift = n * (2.0 * b * b + alpha * b + alpha * lam * (n + 1.0)) / (2.0 * b * lam);
                (a_bar - shift) * lam / (alpha * n + lam)
            };
            SystemSpec::morse(a0, b, alpha)?
        }
        FixedPotential::Coulomb { z_bar, lcal } => {
            let z0 = (z_bar - 0.5 * alpha * n * (n + 2.0 * lcal + 1.0)) * (lcal + 1.0) / (n + lcal + 1.0);
            SystemSpec::coulomb(lcal, z0, alpha)?
        }
    };
    BoundState::new(spec, nbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_energies() {
        let s = OscillatorSpec::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(s.energy(0), 1.5);
        let p = OscillatorSpec::new(3f64.sqrt(), 0.0, 1.0).unwrap();
        assert!((p.lambda() - 1.5).abs() < 1e-15);
        assert!((p.energy(0) - 5.5).abs() < 1e-13);
        assert!((p.energy(1) - 19.5).abs() < 1e-13);
    }

    #[test]
    fn oscillator_state_near_origin() {
        let spec = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        let psi = BoundState::new(spec, 1).unwrap();
        for q in [1e-8, 1e-6, 1e-4] {
            let s = psi.sample(q).unwrap();
            let v = spec.potential_jet(1, &Jet::constant(q, 0)).value();
            let residual = -s.d2 + (v - psi.energy()) * s.value;
            assert!(residual.abs() <= 1e-12 * (s.d2.abs() + psi.energy() * s.value.abs()), "q = {q}: {residual}");
            assert!((s.value / q - s.d1).abs() <= 1e-6 * s.d1.abs());
        }
    }

    #[test]
    fn morse_energy_is_member_independent() {
        let s = SystemSpec::morse(0.25, 0.25, 0.0).unwrap();
        for n in 0..4 {
            assert_eq!(s.energy(n), -0.0625);
        }
    }

    #[test]
    fn mass_and_potential_examples() {
        let ho = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        assert_eq!(mass_and_potential(&ho, 0, 2.3).unwrap().mass, 1.0);
        let c = SystemSpec::coulomb(0.0, 1.0, 0.1).unwrap();
        let mp = mass_and_potential(&c, 0, 10.0).unwrap();
        assert!((mp.mass - 0.25).abs() < 1e-15);
        assert!((mp.f - 2.0).abs() < 1e-15 && (mp.f1 - 0.1).abs() < 1e-15);
        let p = SystemSpec::oscillator(3f64.sqrt(), 0.0, 1.0).unwrap();
        let mp = mass_and_potential(&p, 0, 1.0).unwrap();
        assert!((mp.v_eff + 2.25).abs() < 1e-14);
        assert!(matches!(mass_and_potential(&p, 0, -1.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn effective_potentials_match_displayed_forms() {
        let (a0, b, al) = (0.7, 0.4, 0.3);
        let m = SystemSpec::morse(a0, b, al).unwrap();
        let an = m.member_parameter(2).unwrap();
        let x: f64 = 0.35;
        let expect = (b * b - 0.75 * al * al) * (-2.0 * x).exp() - (b * (2.0 * an + 1.0) + al / 2.0) * (-x).exp();
        assert!((mass_and_potential(&m, 2, x).unwrap().v_eff - expect).abs() < 1e-14);
        let c = SystemSpec::coulomb(0.3, 1.2, 0.1).unwrap();
        let z = c.member_parameter(1).unwrap();
        let r: f64 = 1.7;
        let expect = 0.3 * 1.3 / (r * r) - 2.0 * z / r - 0.01 / 4.0;
        assert!((mass_and_potential(&c, 1, r).unwrap().v_eff - expect).abs() < 1e-14);
    }

    #[test]
    fn ground_states_match_hand_expansions() {
        // ψ0(r) = 𝒩 r e^{-r²/4} with 𝒩 = (1/2)^{3/4} √(2/Γ(3/2))
        let ho = BoundState::new(SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap(), 0).unwrap();
        let gamma_3_2 = 0.5 * std::f64::consts::PI.sqrt();
        let norm = 0.5f64.powf(0.75) * (2.0 / gamma_3_2).sqrt();
        assert!((ho.norm_coeff() - norm).abs() < 1e-14);
        assert!((ho.sample(1.0).unwrap().value - norm * (-0.25f64).exp()).abs() < 1e-14);

        // φ0(x) = 𝒩 exp(-A0 x - B e^{-x})
        let m = BoundState::new(SystemSpec::morse(0.25, 0.25, 0.0).unwrap(), 0).unwrap();
        let s = m.sample(0.0).unwrap();
        let v = m.norm_coeff() * (-0.25f64).exp();
        assert!((s.value - v).abs() < 1e-14);
        assert!((s.d1 - v * (-0.25 + 0.25)).abs() < 1e-14);
    }

    #[test]
    fn norm_coefficients_carry_alternating_sign() {
        let spec = SystemSpec::coulomb(0.5, 1.0, 0.0).unwrap();
        for n in 0..4 {
            let st = BoundState::new(spec, n).unwrap();
            assert_eq!(st.norm_coeff() < 0.0, n % 2 == 1);
        }
    }

    #[test]
    fn fixed_potential_spectra() {
        let m = spectrum_fixed_potential(FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 0.0, 10).unwrap();
        let e: Vec<f64> = m.levels.iter().map(|l| l.1).collect();
        assert_eq!(e, vec![-6.25, -2.25, -0.25]);
        let c = spectrum_fixed_potential(FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.0 }, 0.0, 3).unwrap();
        let e: Vec<f64> = c.levels.iter().map(|l| l.1).collect();
        assert_eq!(e[0], -1.0);
        assert_eq!(e[1], -0.25);
        assert!((e[2] + 1.0 / 9.0).abs() < 1e-15);
        let small = spectrum_fixed_potential(FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 1e-8, 10).unwrap();
        assert_eq!(small.levels.len(), 3);
        for (a, b) in small.levels.iter().zip(m.levels.iter()) {
            assert!((a.1 - b.1).abs() < 1e-6);
        }
        assert!(spectrum_fixed_potential(FixedPotential::Morse { a_bar: 0.0, b: 1.0 }, 0.0, 3).is_err());
        assert!(spectrum_fixed_potential(FixedPotential::Coulomb { z_bar: -1.0, lcal: 0.0 }, 0.0, 3).is_err());
    }

    #[test]
    fn fixed_potential_states_reproduce_levels() {
        for (pot, alpha) in [
            (FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 0.0),
            (FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 0.1),
            (FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.0 }, 0.0),
            (FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.5 }, 0.1),
        ] {
            let spectrum = spectrum_fixed_potential(pot, alpha, 4).unwrap();
            for &(nbar, e) in &spectrum.levels {
                let st = fixed_potential_state(pot, alpha, nbar).unwrap();
                assert!((st.energy() - e).abs() < 1e-12 * (1.0 + e.abs()));
                let member = st.spec().member_parameter(nbar).unwrap();
                let fixed = match pot {
                    FixedPotential::Morse { a_bar, .. } => a_bar,
                    FixedPotential::Coulomb { z_bar, .. } => z_bar,
                };
                assert!((member - fixed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deformed_coulomb_spectrum_is_finite() {
        // -(1/m - 0.05 m)², m = n̄+1; bound while 1/m > 0.05 m
        let s = spectrum_fixed_potential(FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.0 }, 0.1, 100).unwrap();
        assert_eq!(s.levels.len(), 4);
        for &(n, e) in &s.levels {
            let m = n as f64 + 1.0;
            let expect = -(1.0 / m - 0.05 * m).powi(2);
            assert!((e - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(SystemSpec::oscillator(0.0, 0.0, 0.0).is_err());
        assert!(SystemSpec::oscillator(1.0, -0.6, 0.0).is_err());
        assert!(SystemSpec::morse(0.25, -1.0, 0.0).is_err());
        assert!(SystemSpec::coulomb(-0.5, 1.0, 0.0).is_err());
        assert!(SystemSpec::coulomb(0.0, 0.1, 0.5).is_err());
        assert!(SystemSpec::oscillator(1.0, 0.3, 0.0).unwrap().warnings().len() == 1);
        assert!(SystemSpec::oscillator(1.0, 1.5, 0.0).unwrap().warnings().is_empty());
    }
}
