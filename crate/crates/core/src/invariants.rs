//! Module-level invariants that do not belong to a single system.

use crate::algebra::{Direction, Generator, GeneratorSet};
use crate::error::Result;
use crate::jet::Jet;
use crate::measures::{integrate, Measure};
use crate::operators::{pi_squared_jet, Applied, Domain, JetFunction, SmoothFunction};
use crate::oracle::{default_grid, discretize, lowest_eigenvalues};
use crate::pct::map_parameters;
use crate::report::{canonical_systems, check_grid, closed_form_levels, pointwise_gap, Entry};
use crate::specfun::{jacobi, laguerre, log_gamma, log_gamma_ratio};
use crate::systems::{spectrum_fixed_potential, BoundState, DeformingProfile, Family, FixedPotential, SystemSpec};

const DEGREES: [u32; 8] = [0, 1, 2, 5, 10, 20, 35, 50];

fn ln_binomial(x: f64, k: u32) -> Result<f64> {
    Ok(log_gamma_ratio(x - k as f64 + 1.0, k as f64)? - log_gamma(k as f64 + 1.0)?)
}

/// `L_n^(a)(y)` by its explicit sum, with the sum of absolute terms.
pub fn laguerre_explicit(n: u32, a: f64, y: f64) -> Result<(f64, f64)> {
    let mut term = ln_binomial(n as f64 + a, n)?.exp();
    let (mut sum, mut abs) = (term, term.abs());
    for k in 1..=n {
        let kf = k as f64;
        term *= -y * (n as f64 - kf + 1.0) / (kf * (a + kf));
        sum += term;
        abs += term.abs();
    }
    Ok((sum, abs))
}

/// `P_n^(a,b)(t)` by its explicit sum, with the sum of absolute terms.
pub fn jacobi_explicit(n: u32, a: f64, b: f64, t: f64) -> Result<(f64, f64)> {
    let (u, v) = (0.5 * (t - 1.0), 0.5 * (t + 1.0));
    let (mut sum, mut abs) = (0.0, 0.0);
    for s in 0..=n {
        let c = (ln_binomial(n as f64 + a, n - s)? + ln_binomial(n as f64 + b, s)?).exp();
        let term = c * u.powi(s as i32) * v.powi((n - s) as i32);
        sum += term;
        abs += term.abs();
    }
    Ok((sum, abs))
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    items.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?.abs())))
}

pub fn polynomial_entries() -> Vec<Entry> {
    let lag_params = [-0.5, 0.0, 1.5, 7.25];
    let ys = [0.1, 1.0, 3.7, 9.0];
    let jac_params = [(-0.5, -0.5), (0.0, 0.0), (1.5, 0.25), (4.0, -0.75)];
    let ts = [-0.95, -0.3, 0.0, 0.6, 0.99];
    let mut lag = Vec::new();
    let mut lag_d = Vec::new();
    let mut jac = Vec::new();
    let mut jac_d = Vec::new();
    for &n in &DEGREES {
        for &a in &lag_params {
            for &y in &ys {
                lag.push(laguerre(n, a, y).and_then(|p| {
                    let (s, scale) = laguerre_explicit(n, a, y)?;
                    Ok((p.value - s) / scale)
                }));
                if n > 0 {
                    lag_d.push(laguerre(n, a, y).and_then(|p| {
                        let (s, scale) = laguerre_explicit(n - 1, a + 1.0, y)?;
                        Ok((p.d1 + s) / scale)
                    }));
                }
            }
        }
        for &(a, b) in &jac_params {
            for &t in &ts {
                jac.push(jacobi(n, a, b, t).and_then(|p| {
                    let (s, scale) = jacobi_explicit(n, a, b, t)?;
                    Ok((p.value - s) / scale)
                }));
                if n > 0 {
                    jac_d.push(jacobi(n, a, b, t).and_then(|p| {
                        let (s, scale) = jacobi_explicit(n - 1, a + 1.0, b + 1.0, t)?;
                        let c = 0.5 * (n as f64 + a + b + 1.0);
                        Ok((p.d1 - c * s) / (c * scale))
                    }));
                }
            }
        }
    }
    let endpoints = DEGREES.iter().flat_map(|&n| {
        [(-0.5, 0.3), (2.7, 1.0)].into_iter().flat_map(move |(a, b)| {
            let want = || ln_binomial(n as f64 + a, n).map(f64::exp);
            [
                laguerre(n, a, 0.0).and_then(|p| Ok(p.value / want()? - 1.0)),
                jacobi(n, a, b, 1.0).and_then(|p| Ok(p.value / want()? - 1.0)),
            ]
        })
    });
    vec![
        Entry::new("laguerre recurrence vs explicit sum", max_over(lag), 1e-10),
        Entry::new("laguerre derivative identity", max_over(lag_d), 1e-10),
        Entry::new("jacobi recurrence vs explicit sum", max_over(jac), 1e-10),
        Entry::new("jacobi derivative identity", max_over(jac_d), 1e-10),
        Entry::new("polynomial endpoint values", max_over(endpoints), 1e-11),
        Entry::new(
            "log_gamma reference values",
            max_over([
                log_gamma(0.5).map(|v| v - 0.5 * std::f64::consts::PI.ln()),
                log_gamma(10.0).map(|v| v - 362_880f64.ln()),
                log_gamma(1.0),
            ]),
            1e-13,
        ),
    ]
}

pub fn spectrum_entries() -> Vec<Entry> {
    let morse = spectrum_fixed_potential(FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 0.0, 100).map(|s| {
        let e: Vec<f64> = s.levels.iter().map(|l| l.1).collect();
        if e.len() != 3 {
            return f64::INFINITY;
        }
        e.iter().zip([-6.25, -2.25, -0.25]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    });
    let coulomb = spectrum_fixed_potential(FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.0 }, 0.0, 20)
        .map(|s| s.levels.iter().map(|&(n, e)| (e + 1.0 / ((n + 1) as f64).powi(2)).abs()).fold(0.0, f64::max));
    vec![Entry::new("morse A=2.5 B=1 spectrum", morse, 1e-14), Entry::new("coulomb Z=1 spectrum", coulomb, 1e-15)]
}

const LIMIT_ALPHA: f64 = 1e-6;

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn limit_entries() -> Vec<Entry> {
    let bases =
        [SystemSpec::oscillator(1.0, 0.5, 0.0), SystemSpec::morse(2.5, 1.0, 0.0), SystemSpec::coulomb(0.0, 1.0, 0.0)];
    let mut out = Vec::new();
    for base in bases.into_iter().map(|s| s.expect("valid")) {
        let name = base.family().name();
        let Ok(deformed) = base.with_alpha(LIMIT_ALPHA) else { continue };
        let (s0, s1) = (GeneratorSet::new(base), GeneratorSet::new(deformed));
        out.push(Entry::new(
            format!("{name} energies alpha->0"),
            Ok((0..=5).map(|n| relative(deformed.energy(n), base.energy(n))).fold(0.0, f64::max)),
            1e-4,
        ));
        out.push(Entry::new(
            format!("{name} ladder coefficients alpha->0"),
            Ok((0..=5)
                .map(|n| relative(s1.ladder_coefficient(n, Direction::Plus), s0.ladder_coefficient(n, Direction::Plus)))
                .fold(0.0, f64::max)),
            1e-4,
        ));
        let actions = (|| {
            let grid = check_grid(&base, 6, 100)?;
            let mut worst: f64 = 0.0;
            for n in 0..=5 {
                let (p0, p1) = (BoundState::new(base, n)?, BoundState::new(deformed, n)?);
                for g in [Generator::Zero, Generator::Plus, Generator::Minus] {
                    let floor =
                        grid.iter().try_fold(0.0f64, |m, &q| Ok::<_, crate::Error>(m.max(p0.value(q)?.abs())))?;
                    worst = worst.max(pointwise_gap(&s1.apply(g, p1)?, &s0.apply(g, p0)?, &grid, floor)?);
                }
            }
            Ok(worst)
        })();
        out.push(Entry::new(format!("{name} generator actions alpha->0"), actions, 1e-4));
    }
    out
}

pub fn pct_entries() -> Vec<Entry> {
    let ho = SystemSpec::oscillator(1.3, 0.5, 0.0).expect("valid");
    let r = (|| {
        let morse = map_parameters(&ho, 0, Family::Morse)?.spec;
        let coulomb = map_parameters(&morse, 0, Family::Coulomb)?.spec;
        let sets = [GeneratorSet::new(ho), GeneratorSet::new(morse), GeneratorSet::new(coulomb)];
        let mut worst: f64 = 0.0;
        for s in &sets[1..] {
            worst = worst.max(relative(s.unirrep().k, sets[0].unirrep().k));
            worst = worst.max((s.casimir_value() - sets[0].casimir_value()).abs());
            for n in 0..=5 {
                let (a, b) = (s.ladder_coefficient(n, Direction::Plus), sets[0].ladder_coefficient(n, Direction::Plus));
                worst = worst.max(relative(a, b));
            }
        }
        Ok(worst)
    })();
    vec![Entry::new("algebraic data invariant along ho->morse->coulomb", r, 1e-12)]
}

fn bump(center: f64, width: f64, domain: Domain) -> JetFunction<impl Fn(&Jet) -> Jet> {
    JetFunction::new(domain, move |q: &Jet| {
        let z = (*q - center) * (1.0 / width);
        (-(z * z)).exp()
    })
}

/// `<g, π² h> - <π² g, h>` under `dq` for each deforming profile.
pub fn symmetry_entries() -> Vec<Entry> {
    let mut out = Vec::new();
    for (family, c) in [(Family::Oscillator, 4.0), (Family::Morse, 0.5), (Family::Coulomb, 3.0)] {
        let measure = Measure::for_family(family);
        let profile = DeformingProfile { family, alpha: 0.3 };
        let domain = measure.domain;
        let (g, h) = (bump(c, 0.6, domain), bump(c + 0.4, 0.8, domain));
        let pg = Applied::new(&g, 2, 0, |q: &Jet, f: &Jet| pi_squared_jet(&profile, q, f));
        let ph = Applied::new(&h, 2, 0, |q: &Jet, f: &Jet| pi_squared_jet(&profile, q, f));
        let r = (|| {
            let plain = |q: f64| 1.0 / measure.weight(q);
            let a = integrate(&measure, |q| Ok(g.value(q)? * ph.value(q)? * plain(q)), 1e-12)?;
            let b = integrate(&measure, |q| Ok(pg.value(q)? * h.value(q)? * plain(q)), 1e-12)?;
            Ok((a - b) / a.abs().max(b.abs()))
        })();
        out.push(Entry::new(format!("{} deformed kinetic operator symmetric", family.name()), r, 1e-9));
    }
    out
}

/// `(E(h) - E) / (E(h/2) - E)` for the lowest level on the default grid bounds.
pub fn richardson_ratio(spec: &SystemSpec, coarse: usize) -> Result<f64> {
    let exact = closed_form_levels(spec, 0, 1)?[0];
    let grid = default_grid(spec, 0)?;
    let lowest = |count: usize| -> Result<f64> {
        Ok(lowest_eigenvalues(&discretize(spec, 0, &grid.with_count(count)?)?, 1, 1e-12)?[0])
    };
    Ok((lowest(coarse)? - exact) / (lowest(2 * coarse - 1)? - exact))
}

pub fn richardson_entries() -> Vec<Entry> {
    canonical_systems()
        .iter()
        .map(|s| {
            Entry::new(
                format!("richardson ratio - 4, {} alpha={}", s.family().name(), s.alpha()),
                richardson_ratio(s, 1001).map(|r| r - 4.0),
                0.5,
            )
        })
        .collect()
}

pub fn library_invariants() -> Vec<Entry> {
    let mut out = polynomial_entries();
    out.extend(spectrum_entries());
    out.extend(limit_entries());
    out.extend(pct_entries());
    out.extend(symmetry_entries());
    out.extend(richardson_entries());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_sums_match_small_cases() {
        // L_2^(0)(y) = 1 - 2y + y²/2
        let (v, _) = laguerre_explicit(2, 0.0, 3.0).unwrap();
        assert!((v - (1.0 - 6.0 + 4.5)).abs() < 1e-14);
        // P_1^(a,b)(t) = (a+1) + (a+b+2)(t-1)/2
        let (v, _) = jacobi_explicit(1, 0.5, 1.5, 0.2).unwrap();
        assert!((v - (1.5 + 4.0 * (-0.4))).abs() < 1e-14);
    }

    #[test]
    fn all_library_invariants_pass() {
        let failing: Vec<Entry> = library_invariants().into_iter().filter(|e| !e.pass).collect();
        assert!(failing.is_empty(), "{failing:#?}");
    }
}
