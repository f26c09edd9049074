//! Point canonical transformations: oscillator → Morse → Coulomb.
//!
//! `φ(x) = e^{x/4} ψ(e^{-x/2})`, `χ(R) = √R φ(-ln R)` and their composite
//! `χ(R) = R^{1/4} ψ(√R)`. The deforming function is carried along unchanged,
//! so each map works for constant and position-dependent mass alike.

use serde::Serialize;

use crate::error::{parameter, Result};
use crate::jet::Jet;
use crate::operators::{Domain, SmoothFunction, SpectralFunction};
use crate::systems::{Family, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mapping {
    OscillatorToMorse,
    MorseToCoulomb,
    OscillatorToCoulomb,
}

impl Mapping {
    pub fn between(source: Family, target: Family) -> Result<Self> {
        match (source, target) {
            (Family::Oscillator, Family::Morse) => Ok(Mapping::OscillatorToMorse),
            (Family::Morse, Family::Coulomb) => Ok(Mapping::MorseToCoulomb),
            (Family::Oscillator, Family::Coulomb) => Ok(Mapping::OscillatorToCoulomb),
            (s, t) => parameter(format!("no forward transformation from {} to {}", s.name(), t.name())),
        }
    }

    pub fn source(self) -> Family {
        match self {
            Mapping::MorseToCoulomb => Family::Morse,
            _ => Family::Oscillator,
        }
    }

    pub fn target(self) -> Family {
        match self {
            Mapping::OscillatorToMorse => Family::Morse,
            _ => Family::Coulomb,
        }
    }

    fn domain_of(family: Family) -> Domain {
        match family {
            Family::Morse => Domain::REAL_LINE,
            _ => Domain::HALF_LINE,
        }
    }

    /// Source coordinate as a function of the target coordinate.
    pub fn coordinate_jet(self, y: &Jet) -> Jet {
        match self {
            Mapping::OscillatorToMorse => (*y * -0.5).exp(),
            Mapping::MorseToCoulomb => -y.ln(),
            Mapping::OscillatorToCoulomb => y.sqrt(),
        }
    }

    /// Multiplier applied to the source function.
    pub fn prefactor_jet(self, y: &Jet) -> Jet {
        match self {
            Mapping::OscillatorToMorse => (*y * 0.25).exp(),
            Mapping::MorseToCoulomb => y.sqrt(),
            Mapping::OscillatorToCoulomb => y.powf(0.25),
        }
    }

    /// Target coordinate as a function of the source coordinate.
    pub fn inverse_coordinate_jet(self, q: &Jet) -> Jet {
        match self {
            Mapping::OscillatorToMorse => q.ln() * -2.0,
            Mapping::MorseToCoulomb => (-*q).exp(),
            Mapping::OscillatorToCoulomb => *q * *q,
        }
    }

    /// Multiplier that undoes the forward prefactor, as a function of the source coordinate.
    pub fn inverse_prefactor_jet(self, q: &Jet) -> Jet {
        match self {
            Mapping::OscillatorToMorse => q.sqrt(),
            Mapping::MorseToCoulomb => (*q * 0.5).exp(),
            Mapping::OscillatorToCoulomb => q.powf(-0.5),
        }
    }

    pub fn map_point(self, y: f64) -> f64 {
        self.coordinate_jet(&Jet::constant(y, 0)).value()
    }
}

/// Target-side parameters produced by a forward map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MappedParameters {
    pub spec: SystemSpec,
    /// Hierarchy member carrying the image of the source state.
    pub member: u32,
    /// `A_n` or `Z_n` of that member.
    pub member_parameter: f64,
    /// Fixed energy of the target hierarchy.
    pub energy: f64,
}

fn oscillator_to_morse(source: &SystemSpec) -> Result<SystemSpec> {
    let SystemSpec::Oscillator(s) = *source else {
        return parameter("expected an oscillator specification");
    };
    let a = s.alpha;
    if a == 0.0 {
        return SystemSpec::morse(0.5 * (s.l + 0.5), 0.25 * s.omega, 0.0);
    }
    let disc = s.omega * s.omega - 3.0 * a * a;
    if !(disc > 0.0) {
        return parameter(format!(
            "PDM Morse image undefined: omega² = {} must exceed 3 alpha² = {}",
            s.omega * s.omega,
            3.0 * a * a
        ));
    }
    let b = 0.25 * disc.sqrt();
    let lam = 0.5 * (s.lambda() + 0.5 * a);
    SystemSpec::morse(0.5 * ((2.0 * s.l + 3.0) * lam / (2.0 * b) - 1.0), b, a)
}

fn morse_to_coulomb(source: &SystemSpec) -> Result<SystemSpec> {
    let SystemSpec::Morse(s) = *source else {
        return parameter("expected a Morse specification");
    };
    let lcal = s.sqrt_abs_epsilon() - 0.5;
    SystemSpec::coulomb(lcal, s.b * (s.a0 + 0.5), s.alpha)
}

/// Target specification whose hierarchy member `n` is the image of source state `n`.
pub fn map_parameters(source: &SystemSpec, n: u32, target: Family) -> Result<MappedParameters> {
    let mapping = Mapping::between(source.family(), target)?;
    let spec = match mapping {
        Mapping::OscillatorToMorse => oscillator_to_morse(source)?,
        Mapping::MorseToCoulomb => morse_to_coulomb(source)?,
        Mapping::OscillatorToCoulomb => morse_to_coulomb(&oscillator_to_morse(source)?)?,
    };
    Ok(MappedParameters {
        spec,
        member: n,
        member_parameter: spec.member_parameter(n).expect("targets are hierarchies"),
        energy: spec.energy(n),
    })
}

/// Target specifications of members `0..=n_max`, sharing one energy.
pub fn hierarchy(source: &SystemSpec, target: Family, n_max: u32) -> Result<Vec<MappedParameters>> {
    (0..=n_max).map(|n| map_parameters(source, n, target)).collect()
}

/// Image of a source-side function under a forward or inverse map.
#[derive(Debug, Clone, Copy)]
pub struct Transported<F> {
    mapping: Mapping,
    inverse: bool,
    inner: F,
}

impl<F: SmoothFunction> Transported<F> {
    pub fn mapping(&self) -> Mapping {
        self.mapping
    }
}

/// `t(y) = prefactor(y) · f(c(y))` on the target domain.
pub fn map_function<F: SmoothFunction>(mapping: Mapping, f: F) -> Transported<F> {
    Transported { mapping, inverse: false, inner: f }
}

/// Alias of [`map_function`] for bound states and generator images.
pub fn map_state<F: SpectralFunction>(mapping: Mapping, state: F) -> Transported<F> {
    map_function(mapping, state)
}

/// Pull a target-side function back to the source domain.
pub fn inverse_map_function<F: SmoothFunction>(mapping: Mapping, g: F) -> Transported<F> {
    Transported { mapping, inverse: true, inner: g }
}

impl<F: SmoothFunction> SmoothFunction for Transported<F> {
    fn taylor(&self, point: f64, order: usize) -> Result<Jet> {
        self.domain().check(point)?;
        let y = Jet::variable(point, order);
        let (c, pref) = if self.inverse {
            (self.mapping.inverse_coordinate_jet(&y), self.mapping.inverse_prefactor_jet(&y))
        } else {
            (self.mapping.coordinate_jet(&y), self.mapping.prefactor_jet(&y))
        };
        let inner = self.inner.taylor(c.value(), order)?;
        if inner.is_zero() {
            return Ok(Jet::zero(order));
        }
        Ok(pref * c.compose(inner.coeffs()))
    }

    fn domain(&self) -> Domain {
        let family = if self.inverse { self.mapping.source() } else { self.mapping.target() };
        Mapping::domain_of(family)
    }
}

impl<F: SpectralFunction> SpectralFunction for Transported<F> {
    fn spectral_index(&self) -> u32 {
        self.inner.spectral_index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::BoundState;

    #[test]
    fn parameter_examples() {
        let ho = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        let m = map_parameters(&ho, 0, Family::Morse).unwrap();
        assert_eq!(m.spec, SystemSpec::morse(0.25, 0.25, 0.0).unwrap());
        assert_eq!(m.energy, -0.0625);
        let c = map_parameters(&m.spec, 0, Family::Coulomb).unwrap();
        let SystemSpec::Coulomb(cs) = c.spec else { panic!() };
        assert_eq!((cs.lcal, cs.z0), (-0.25, 0.1875));
        assert!((c.energy + 0.0625).abs() < 1e-15);
        let pdm = SystemSpec::coulomb(0.0, 1.0, 0.1).unwrap();
        assert!((pdm.member_parameter(1).unwrap() - 2.1).abs() < 1e-15);
    }

    #[test]
    fn pdm_oscillator_to_morse_needs_real_b() {
        let bad = SystemSpec::oscillator(3f64.sqrt(), 0.0, 1.0).unwrap();
        assert!(map_parameters(&bad, 0, Family::Morse).is_err());
        let ok = SystemSpec::oscillator(1.0, 0.0, 0.3).unwrap();
        let m = map_parameters(&ok, 0, Family::Morse).unwrap();
        let SystemSpec::Morse(ms) = m.spec else { panic!() };
        assert!((ms.b - 0.25 * 0.73f64.sqrt()).abs() < 1e-15);
        assert!((m.energy + 0.0625).abs() < 1e-13);
    }

    #[test]
    fn hierarchy_examples() {
        let ho = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        let a: Vec<f64> = hierarchy(&ho, Family::Morse, 2).unwrap().iter().map(|m| m.member_parameter).collect();
        assert_eq!(a, vec![0.25, 1.25, 2.25]);
        let morse = SystemSpec::morse(0.25, 0.25, 0.0).unwrap();
        let z: Vec<f64> = hierarchy(&morse, Family::Coulomb, 2).unwrap().iter().map(|m| m.member_parameter).collect();
        for (got, want) in z.iter().zip([0.1875, 0.4375, 0.6875]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn mapped_ground_state_equals_direct_state() {
        let ho = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        let psi = BoundState::new(ho, 0).unwrap();
        let phi = BoundState::new(SystemSpec::morse(0.25, 0.25, 0.0).unwrap(), 0).unwrap();
        let mapped = map_state(Mapping::OscillatorToMorse, psi);
        for i in 0..100 {
            let x = -4.0 + 0.1 * i as f64;
            assert!((mapped.value(x).unwrap() - phi.value(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let ho = SystemSpec::oscillator(1.3, 0.5, 0.2).unwrap();
        let psi = BoundState::new(ho, 2).unwrap();
        for mapping in [Mapping::OscillatorToMorse, Mapping::OscillatorToCoulomb] {
            let back = inverse_map_function(mapping, map_function(mapping, psi));
            for r in [0.2, 0.9, 2.5] {
                let (a, b) = (back.sample(r).unwrap(), psi.sample(r).unwrap());
                assert!((a.value - b.value).abs() < 1e-13);
                assert!((a.d2 - b.d2).abs() < 1e-11);
            }
        }
    }
}
