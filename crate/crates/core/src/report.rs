//! Verification reports: every closed-form claim about a system checked
//! numerically, each entry carrying its value, tolerance and verdict.

use serde::Serialize;

use crate::algebra::{Direction, FactorOrder, Generator, GeneratorSet};
use crate::error::{parameter, Result};
use crate::measures::{inner_product, norm, Measure};
use crate::operators::{eigen_residual, SmoothFunction};
use crate::oracle::{count_below, default_grid, discretize, lowest_eigenvalues, support};
use crate::pct::{map_parameters, map_state, Mapping};
use crate::systems::{spectrum_fixed_potential, BoundState, Family, FixedPotential, SystemSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Quadrature tolerance used by all report integrals.
pub const QUADRATURE_RTOL: f64 = 1e-11;
/// Points of the pointwise check grids.
pub const CHECK_POINTS: usize = 200;
/// Highest state index used by quadrature and ladder checks.
pub const LADDER_MAX: u32 = 5;
/// Check grids cover the states down to this fraction of their peaks.
pub const SUPPORT_RATIO: f64 = 1e-4;
/// Upper end of Morse check grids; the Morse generators carry `e^x`.
pub const MORSE_X_MAX: f64 = 14.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    /// `None` when the quantity could not be computed.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Entry {
    pub fn new(name: impl Into<String>, value: Result<f64>, tolerance: f64) -> Self {
        match value {
            Ok(v) => Entry { name: name.into(), value: Some(v), tolerance, pass: v.abs() <= tolerance, error: None },
            Err(e) => Entry { name: name.into(), value: None, tolerance, pass: false, error: Some(e.to_string()) },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub eigen_residual: f64,
    pub orthonormality: f64,
    pub ladder: f64,
    pub annihilation: f64,
    pub commutator: f64,
    pub casimir: f64,
    pub mapping: f64,
    pub oracle: f64,
}

impl Tolerances {
    pub fn for_spec(spec: &SystemSpec) -> Self {
        let deformed = spec.alpha() > 0.0;
        Tolerances {
            eigen_residual: 1e-9,
            orthonormality: 1e-7,
            ladder: 1e-7,
            annihilation: 1e-8,
            commutator: if deformed { 1e-7 } else { 1e-10 },
            casimir: if deformed { 1e-7 } else { 1e-10 },
            mapping: if deformed { 1e-9 } else { 1e-12 },
            oracle: if deformed { 2e-3 } else { 5e-4 },
        }
    }

    /// Replace every analytic tolerance by `tol`; the oracle keeps its discretization tolerance.
    pub fn with_analytic(self, tol: f64) -> Self {
        Tolerances {
            eigen_residual: tol,
            orthonormality: tol,
            ladder: tol,
            annihilation: tol,
            commutator: tol,
            casimir: tol,
            mapping: tol,
            oracle: self.oracle,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Sections {
    pub eigen_residuals: Vec<Entry>,
    pub orthonormality: Vec<Entry>,
    pub ladder: Vec<Entry>,
    pub commutators: Vec<Entry>,
    pub casimir: Vec<Entry>,
    pub mapping: Vec<Entry>,
    pub oracle: Vec<Entry>,
}

impl Sections {
    fn all(&self) -> impl Iterator<Item = &Entry> {
        [
            &self.eigen_residuals,
            &self.orthonormality,
            &self.ladder,
            &self.commutators,
            &self.casimir,
            &self.mapping,
            &self.oracle,
        ]
        .into_iter()
        .flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: &'static str,
    pub spec: SystemSpec,
    pub n_max: u32,
    pub tolerances: Tolerances,
    pub sections: Sections,
    /// Checks skipped because they do not apply, with the reason.
    pub notes: Vec<String>,
    pub pass: bool,
}

/// Aggregate of `verify` over a fixed set of systems plus module-level invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub systems: Vec<VerificationReport>,
    pub invariants: Vec<Entry>,
    pub pass: bool,
}

/// `count` check points spanning states `0..=n_max` down to [`SUPPORT_RATIO`] of
/// their peaks; geometric on the half line, uniform on the real line up to [`MORSE_X_MAX`].
pub fn check_grid(spec: &SystemSpec, n_max: u32, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return parameter("a check grid needs at least two points");
    }
    let mut bounds: Option<(f64, f64)> = None;
    for n in 0..=n_max {
        if let Some((lo, hi)) = support(&BoundState::new(*spec, n)?, spec.family(), SUPPORT_RATIO)? {
            bounds = Some(bounds.map_or((lo, hi), |(a, b)| (a.min(lo), b.max(hi))));
        }
    }
    let (lo, mut hi) = bounds.ok_or_else(|| crate::Error::Domain("the states vanish on every sample".into()))?;
    if spec.family() == Family::Morse {
        hi = hi.min(MORSE_X_MAX.max(lo + 1.0));
    }
    let t = |i: usize| i as f64 / (count - 1) as f64;
    Ok(if spec.family() == Family::Morse {
        (0..count).map(|i| lo + (hi - lo) * t(i)).collect()
    } else {
        (0..count).map(|i| lo * (hi / lo).powf(t(i))).collect()
    })
}

/// `max |f - g| / max(|g|, floor)` over `grid`.
pub fn pointwise_gap<F, G>(f: &F, g: &G, grid: &[f64], floor: f64) -> Result<f64>
where
    F: SmoothFunction + ?Sized,
    G: SmoothFunction + ?Sized,
{
    let mut worst: f64 = 0.0;
    let mut scale = floor;
    for &p in grid {
        let (a, b) = (f.value(p)?, g.value(p)?);
        worst = worst.max((a - b).abs());
        scale = scale.max(b.abs());
    }
    if scale == 0.0 {
        return Err(crate::Error::Domain("reference function vanishes on the grid".into()));
    }
    Ok(worst / scale)
}

fn peak<F: SmoothFunction + ?Sized>(f: &F, grid: &[f64]) -> Result<f64> {
    grid.iter().try_fold(0.0f64, |m, &p| Ok(m.max(f.value(p)?.abs())))
}

pub fn verify(spec: &SystemSpec, n_max: u32, tol: Option<f64>) -> VerificationReport {
    let base = Tolerances::for_spec(spec);
    let tolerances = tol.map_or(base, |t| base.with_analytic(t));
    let mut notes = Vec::new();
    let sections = Sections {
        eigen_residuals: eigen_section(spec, n_max, &tolerances),
        orthonormality: orthonormality_section(spec, n_max, &tolerances),
        ladder: ladder_section(spec, n_max, &tolerances),
        commutators: commutator_section(spec, n_max, &tolerances),
        casimir: casimir_section(spec, n_max, &tolerances),
        mapping: mapping_section(spec, n_max, &tolerances, &mut notes),
        oracle: oracle_section(spec, n_max, &tolerances, &mut notes),
    };
    let pass = sections.all().all(|e| e.pass);
    VerificationReport { version: VERSION, spec: *spec, n_max, tolerances, sections, notes, pass }
}

pub fn eigen_section(spec: &SystemSpec, n_max: u32, t: &Tolerances) -> Vec<Entry> {
    (0..=n_max)
        .map(|n| {
            let r = check_grid(spec, n, CHECK_POINTS).and_then(|g| eigen_residual(spec, n, &g));
            Entry::new(format!("n={n}"), r, t.eigen_residual)
        })
        .collect()
}

pub fn orthonormality_section(spec: &SystemSpec, n_max: u32, t: &Tolerances) -> Vec<Entry> {
    let measure = Measure::for_family(spec.family());
    let top = n_max.min(LADDER_MAX);
    let mut out = Vec::new();
    for m in 0..=top {
        for n in m..=top {
            let r = (|| {
                let g =
                    inner_product(&measure, &BoundState::new(*spec, m)?, &BoundState::new(*spec, n)?, QUADRATURE_RTOL)?;
                Ok(g - if m == n { 1.0 } else { 0.0 })
            })();
            out.push(Entry::new(format!("<{m}|{n}>"), r, t.orthonormality));
        }
    }
    out
}

fn orderings(spec: &SystemSpec) -> Vec<(GeneratorSet, &'static str)> {
    let set = GeneratorSet::new(*spec);
    if spec.alpha() > 0.0 {
        vec![(set.with_order(FactorOrder::Left), " left"), (set.with_order(FactorOrder::Right), " right")]
    } else {
        vec![(set, "")]
    }
}

pub fn ladder_section(spec: &SystemSpec, n_max: u32, t: &Tolerances) -> Vec<Entry> {
    let mut out = Vec::new();
    for (set, label) in orderings(spec) {
        for n in 0..=n_max.min(LADDER_MAX) {
            for dir in [Direction::Plus, Direction::Minus] {
                let numeric = set.matrix_element_numeric(n, dir, QUADRATURE_RTOL);
                let name = format!("{}{label} n={n}", if dir == Direction::Plus { "plus" } else { "minus" });
                if dir == Direction::Minus && n == 0 {
                    out.push(Entry::new(name, numeric, t.annihilation));
                } else {
                    let closed = set.ladder_coefficient(n, dir);
                    out.push(Entry::new(name, numeric.map(|v| v - closed), t.ladder));
                }
            }
        }
    }
    if spec.alpha() > 0.0 {
        let set = GeneratorSet::new(*spec);
        let r = (|| {
            let ground = BoundState::new(*spec, 0)?;
            let image = set.apply_a_operator(Direction::Minus, ground)?;
            let grid = check_grid(spec, 0, CHECK_POINTS)?;
            let zero = crate::operators::JetFunction::new(spec.domain(), |q: &crate::jet::Jet| {
                crate::jet::Jet::zero(q.order())
            });
            pointwise_gap(&image, &zero, &grid, peak(&ground, &grid)?)
        })();
        out.push(Entry::new("A_minus n=0", r, t.annihilation));
    }
    out
}

pub fn commutator_section(spec: &SystemSpec, n_max: u32, t: &Tolerances) -> Vec<Entry> {
    let top = n_max.min(LADDER_MAX);
    let mut out = Vec::new();
    let set = GeneratorSet::new(*spec);
    match set.commutator_residuals(top) {
        Ok(rs) => out.extend(
            rs.iter()
                .filter(|r| r.identity != "casimir")
                .map(|r| Entry::new(format!("{} n={}", r.identity, r.n), Ok(r.residual), t.commutator)),
        ),
        Err(e) => out.push(Entry::new("scalar identities", Err(e), t.commutator)),
    }
    if spec.alpha() > 0.0 {
        for n in 0..=top {
            let r = set.delta(n).and_then(|d| Ok(d - set.delta_closed_form(n)?));
            out.push(Entry::new(format!("delta n={n}"), r, t.commutator));
        }
    }
    for (set, label) in orderings(spec) {
        for n in 0..=top {
            let r = check_grid(spec, n + 1, CHECK_POINTS).and_then(|g| set.commutator_pointwise(n, &g));
            out.push(Entry::new(format!("pointwise{label} n={n}"), r, t.commutator));
        }
    }
    out
}

/// Pointwise entries are relative to the larger of `max |ψ|` and `max |X_0² ψ|`.
pub fn casimir_section(spec: &SystemSpec, n_max: u32, t: &Tolerances) -> Vec<Entry> {
    let top = n_max.min(LADDER_MAX);
    let mut out = Vec::new();
    for (set, label) in orderings(spec) {
        let c = set.casimir_value();
        for n in 0..=top {
            out.push(Entry::new(format!("scalar{label} n={n}"), set.casimir_on_state(n).map(|v| v - c), t.casimir));
            let r = (|| {
                let state = BoundState::new(*spec, n)?;
                let grid = check_grid(spec, n + 1, CHECK_POINTS)?;
                let image = set.apply_casimir(state)?;
                let square = set.apply(Generator::Zero, set.apply(Generator::Zero, state)?)?;
                let scale = peak(&state, &grid)?.max(peak(&square, &grid)?);
                let worst = grid.iter().try_fold(0.0f64, |m, &p| -> Result<f64> {
                    Ok(m.max((image.value(p)? - c * state.value(p)?).abs()))
                })?;
                Ok(worst / scale)
            })();
            out.push(Entry::new(format!("pointwise{label} n={n}"), r, t.casimir));
        }
    }
    out
}

fn generator_name(g: Generator) -> &'static str {
    match g {
        Generator::Zero => "0",
        Generator::Plus => "+",
        Generator::Minus => "-",
    }
}

pub fn mapping_section(spec: &SystemSpec, n_max: u32, t: &Tolerances, notes: &mut Vec<String>) -> Vec<Entry> {
    let targets: &[Family] = match spec.family() {
        Family::Oscillator => &[Family::Morse, Family::Coulomb],
        Family::Morse => &[Family::Coulomb],
        Family::Coulomb => {
            notes.push("mapping: no forward transformation starts from the Coulomb family".into());
            &[]
        }
    };
    let mut out = Vec::new();
    for &target in targets {
        let Ok(mapping) = Mapping::between(spec.family(), target) else { continue };
        let tag = format!("{}->{}", spec.family().name(), target.name());
        let target_spec = match map_parameters(spec, 0, target) {
            Ok(mp) => mp.spec,
            Err(e) => {
                notes.push(format!("mapping {tag}: {e}"));
                continue;
            }
        };
        let measure = Measure::for_family(target);
        for n in 0..=n_max.min(LADDER_MAX) {
            let state = |n: u32| BoundState::new(*spec, n);
            let direct = |n: u32| BoundState::new(target_spec, n);
            let grid = check_grid(&target_spec, n + 1, CHECK_POINTS);
            let r = (|| {
                pointwise_gap(&map_state(mapping, state(n)?), &direct(n)?, grid.as_ref().map_err(Clone::clone)?, 0.0)
            })();
            out.push(Entry::new(format!("{tag} state n={n}"), r, t.mapping));
            let r = (|| Ok(norm(&measure, &map_state(mapping, state(n)?), QUADRATURE_RTOL)?.powi(2) - 1.0))();
            out.push(Entry::new(format!("{tag} norm n={n}"), r, t.orthonormality));
            if spec.alpha() > 0.0 {
                continue;
            }
            let (source_set, target_set) = (GeneratorSet::new(*spec), GeneratorSet::new(target_spec));
            for g in [Generator::Zero, Generator::Plus, Generator::Minus] {
                let r = (|| {
                    let grid = grid.as_ref().map_err(Clone::clone)?;
                    let conjugated = map_state(mapping, source_set.apply(g, state(n)?)?);
                    let image = target_set.apply(g, direct(n)?)?;
                    pointwise_gap(&conjugated, &image, grid, peak(&direct(n)?, grid)?)
                })();
                out.push(Entry::new(format!("{tag} generator {} n={n}", generator_name(g)), r, t.mapping.max(1e-9)));
            }
        }
    }
    if spec.alpha() > 0.0 && !targets.is_empty() {
        notes.push("mapping: generator conjugation is checked for constant mass only".into());
    }
    out
}

/// Member-0 fixed potential of a Morse or Coulomb hierarchy.
pub fn member_potential(spec: &SystemSpec, member: u32) -> Option<FixedPotential> {
    match spec {
        SystemSpec::Oscillator(_) => None,
        SystemSpec::Morse(s) => Some(FixedPotential::Morse { a_bar: s.member_a(member), b: s.b }),
        SystemSpec::Coulomb(s) => Some(FixedPotential::Coulomb { z_bar: s.member_z(member), lcal: s.lcal }),
    }
}

/// Closed-form levels of hierarchy member `member` (the oscillator ignores it), at most `max`.
pub fn closed_form_levels(spec: &SystemSpec, member: u32, max: u32) -> Result<Vec<f64>> {
    match member_potential(spec, member) {
        None => Ok((0..max).map(|n| spec.energy(n)).collect()),
        Some(p) => Ok(spectrum_fixed_potential(p, spec.alpha(), max)?.levels.iter().map(|l| l.1).collect()),
    }
}

const ORACLE_LEVELS: u32 = 5;
const FINITE_COUNT_CAP: u32 = 100_000;

pub fn oracle_section(spec: &SystemSpec, n_max: u32, t: &Tolerances, notes: &mut Vec<String>) -> Vec<Entry> {
    let mut out = Vec::new();
    let run = || -> Result<(Vec<f64>, Vec<f64>, usize)> {
        let exact = closed_form_levels(spec, 0, ORACLE_LEVELS.min(n_max + 1))?;
        if exact.is_empty() {
            return Ok((exact, Vec::new(), 0));
        }
        let dh = discretize(spec, 0, &default_grid(spec, 0)?)?;
        Ok((exact.clone(), lowest_eigenvalues(&dh, exact.len(), 1e-12)?, count_below(&dh, 0.0)))
    };
    match run() {
        Ok((exact, _, _)) if exact.is_empty() => notes.push("oracle: the member-0 potential binds no level".into()),
        Ok((exact, found, negative)) => {
            for (n, (e, f)) in exact.iter().zip(&found).enumerate() {
                out.push(Entry::new(format!("level n={n}"), Ok(f - e), t.oracle));
            }
            let finite = match spec {
                SystemSpec::Oscillator(_) => false,
                SystemSpec::Morse(_) => true,
                SystemSpec::Coulomb(_) => spec.alpha() > 0.0,
            };
            if finite {
                let r = closed_form_levels(spec, 0, FINITE_COUNT_CAP).map(|l| negative as f64 - l.len() as f64);
                out.push(Entry::new("bound count", r, 0.0));
            }
        }
        Err(e) => out.push(Entry::new("levels", Err(e), t.oracle)),
    }
    out
}

/// Systems covered by `verify --all`.
pub fn canonical_systems() -> Vec<SystemSpec> {
    [
        SystemSpec::oscillator(1.0, 0.0, 0.0),
        SystemSpec::oscillator(1.0, 0.5, 0.3),
        SystemSpec::morse(2.5, 1.0, 0.0),
        SystemSpec::morse(2.5, 1.0, 0.1),
        SystemSpec::coulomb(0.0, 1.0, 0.0),
        SystemSpec::coulomb(0.0, 1.0, 0.1),
    ]
    .into_iter()
    .map(|s| s.expect("canonical parameters are valid"))
    .collect()
}

pub fn verify_all(n_max: u32, tol: Option<f64>) -> SuiteReport {
    let systems: Vec<VerificationReport> = canonical_systems().iter().map(|s| verify(s, n_max, tol)).collect();
    let invariants = crate::invariants::library_invariants();
    let pass = systems.iter().all(|r| r.pass) && invariants.iter().all(|e| e.pass);
    SuiteReport { version: VERSION, systems, invariants, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_report_passes() {
        let spec = SystemSpec::oscillator(1.0, 0.0, 0.0).unwrap();
        let r = verify(&spec, 3, Some(1e-8));
        let failing: Vec<_> = r.sections.all().filter(|e| !e.pass).collect();
        assert!(r.pass, "{failing:?}");
        assert_eq!(r.sections.eigen_residuals.len(), 4);
        assert!(!r.sections.mapping.is_empty());
    }

    #[test]
    fn failing_entry_fails_report() {
        let e = Entry::new("x", Ok(2.0), 1.0);
        assert!(!e.pass);
        let e = Entry::new("x", Err(crate::Error::Domain("d".into())), 1.0);
        assert!(!e.pass && e.value.is_none());
    }

    #[test]
    fn check_grid_is_ordered_and_positive() {
        let spec = SystemSpec::coulomb(0.0, 1.0, 0.0).unwrap();
        let g = check_grid(&spec, 3, 50).unwrap();
        assert!(g[0] > 0.0 && g.windows(2).all(|w| w[0] < w[1]));
    }
}
