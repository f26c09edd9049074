//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use su11_core::algebra::GeneratorSet;
use su11_core::invariants::{limit_entries, richardson_ratio};
use su11_core::oracle::{count_below, default_grid, discretize, lowest_eigenvalues, GridSpec};
use su11_core::report::{
    canonical_systems, casimir_section, closed_form_levels, commutator_section, eigen_section, ladder_section,
    mapping_section, orthonormality_section, Entry, Tolerances,
};
use su11_core::systems::{spectrum_fixed_potential, FixedPotential, SystemSpec};

const ALPHAS: [f64; 4] = [0.0, 0.05, 0.3, 1.0];

fn bases() -> Vec<SystemSpec> {
    [
        SystemSpec::oscillator(1.0, 0.0, 0.0),
        SystemSpec::oscillator(2.0, 1.5, 0.0),
        SystemSpec::morse(2.5, 1.0, 0.0),
        SystemSpec::morse(1.2, 0.7, 0.0),
        SystemSpec::coulomb(0.0, 1.0, 0.0),
        SystemSpec::coulomb(1.0, 2.0, 0.0),
    ]
    .into_iter()
    .map(|s| s.unwrap())
    .collect()
}

/// Every admissible `(base, α)` combination.
fn sweep() -> Vec<SystemSpec> {
    bases().iter().flat_map(|b| ALPHAS.iter().filter_map(move |&a| b.with_alpha(a).ok())).collect()
}

fn label(spec: &SystemSpec) -> String {
    match spec {
        SystemSpec::Oscillator(s) => format!("ho(omega={}, L={}, alpha={})", s.omega, s.l, s.alpha),
        SystemSpec::Morse(s) => format!("morse(A0={}, B={}, alpha={})", s.a0, s.b, s.alpha),
        SystemSpec::Coulomb(s) => format!("coulomb(Lcal={}, Z0={}, alpha={})", s.lcal, s.z0, s.alpha),
    }
}

struct Outcome {
    checks: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: 0, worst: 0.0, failures: Vec::new() }
    }

    fn absorb(&mut self, context: &str, entries: &[Entry]) {
        for e in entries {
            self.checks += 1;
            if let Some(v) = e.value {
                if e.tolerance > 0.0 {
                    self.worst = self.worst.max(v.abs() / e.tolerance);
                }
            }
            if !e.pass {
                self.failures.push(format!(
                    "{context} {}: {:?} (tol {:e}) {}",
                    e.name,
                    e.value,
                    e.tolerance,
                    e.error.clone().unwrap_or_default()
                ));
            }
        }
    }

    fn check(&mut self, context: &str, name: &str, value: f64, tolerance: f64) {
        self.absorb(context, &[Entry::new(name, Ok(value), tolerance)]);
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    for spec in sweep() {
        out.absorb(&label(&spec), &eigen_section(&spec, 8, &Tolerances::for_spec(&spec)));
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for spec in sweep() {
        out.absorb(&label(&spec), &orthonormality_section(&spec, 5, &Tolerances::for_spec(&spec)));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for spec in sweep() {
        out.absorb(&label(&spec), &ladder_section(&spec, 5, &Tolerances::for_spec(&spec)));
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for spec in sweep() {
        let t = Tolerances::for_spec(&spec);
        out.absorb(&label(&spec), &commutator_section(&spec, 5, &t));
        out.absorb(&label(&spec), &casimir_section(&spec, 5, &t));
        let set = GeneratorSet::new(spec);
        let c = set.casimir_value();
        let spread = (0..=5).map(|n| (set.casimir_on_state(n).unwrap() - c).abs()).fold(0.0, f64::max);
        out.check(&label(&spec), "casimir n-independence", spread, t.casimir);
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    for spec in sweep() {
        let mut notes = Vec::new();
        out.absorb(&label(&spec), &mapping_section(&spec, 5, &Tolerances::for_spec(&spec), &mut notes));
    }
    out
}

fn oracle_levels(spec: &SystemSpec, k: usize) -> Vec<f64> {
    let dh = discretize(spec, 0, &default_grid(spec, 0).unwrap()).unwrap();
    lowest_eigenvalues(&dh, k, 1e-12).unwrap()
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let morse = spectrum_fixed_potential(FixedPotential::Morse { a_bar: 2.5, b: 1.0 }, 0.0, 100).unwrap();
    out.check("morse A=2.5 B=1", "level count", morse.levels.len() as f64 - 3.0, 0.0);
    for (&(_, e), want) in morse.levels.iter().zip([-6.25, -2.25, -0.25]) {
        out.check("morse A=2.5 B=1", "closed-form level", e - want, 1e-14);
    }
    let coulomb = spectrum_fixed_potential(FixedPotential::Coulomb { z_bar: 1.0, lcal: 0.0 }, 0.0, 10).unwrap();
    for &(n, e) in &coulomb.levels {
        out.check("coulomb Z=1", "closed-form level", e + 1.0 / ((n + 1) as f64).powi(2), 1e-15);
    }

    let systems = [
        SystemSpec::morse(2.5, 1.0, 0.0),
        SystemSpec::morse(2.5, 1.0, 0.1),
        SystemSpec::morse(2.5, 1.0, 0.3),
        SystemSpec::coulomb(0.0, 1.0, 0.0),
        SystemSpec::coulomb(1.0, 2.0, 0.0),
        SystemSpec::coulomb(0.0, 1.0, 0.1),
        SystemSpec::coulomb(0.0, 1.0, 0.3),
        SystemSpec::oscillator(1.0, 0.0, 0.0),
        SystemSpec::oscillator(3f64.sqrt(), 0.0, 1.0),
    ];
    for spec in systems.into_iter().map(|s| s.unwrap()) {
        let tol = Tolerances::for_spec(&spec).oracle;
        let exact = closed_form_levels(&spec, 0, 5).unwrap();
        let found = oracle_levels(&spec, exact.len());
        for (n, (e, f)) in exact.iter().zip(&found).enumerate() {
            out.check(&label(&spec), &format!("oracle level {n}"), f - e, tol);
        }
    }

    // Deformed Coulomb binds finitely many levels: the count matches the closed
    // form and does not grow with the grid.
    for alpha in [0.1, 0.3] {
        let spec = SystemSpec::coulomb(0.0, 1.0, alpha).unwrap();
        let bound = closed_form_levels(&spec, 0, 100_000).unwrap().len();
        let grid = default_grid(&spec, 0).unwrap();
        let wider = GridSpec::new(grid.q_min, 4.0 * grid.q_max, grid.count).unwrap().with_coordinate(grid.coordinate);
        for (tag, g) in [("default grid", grid), ("4x wider grid", wider)] {
            let negative = count_below(&discretize(&spec, 0, &g).unwrap(), 0.0);
            out.check(
                &label(&spec),
                &format!("finite count on {tag} ({negative} vs {bound})"),
                negative as f64 - bound as f64,
                0.0,
            );
        }
    }
    // Constant-mass Coulomb: the count is limited only by the grid.
    let spec = SystemSpec::coulomb(0.0, 1.0, 0.0).unwrap();
    let count_on =
        |q_max: f64| count_below(&discretize(&spec, 0, &GridSpec::new(1e-3, q_max, 16000).unwrap()).unwrap(), 0.0);
    let (narrow, wide) = (count_on(200.0), count_on(1600.0));
    out.check(
        &label(&spec),
        &format!("count grows with the grid ({narrow} -> {wide})"),
        if wide > narrow { 0.0 } else { 1.0 },
        0.0,
    );
    // Constant-mass Morse: negative count equals the closed-form count.
    let spec = SystemSpec::morse(2.5, 1.0, 0.0).unwrap();
    let negative = count_below(&discretize(&spec, 0, &GridSpec::new(-6.0, 40.0, 8000).unwrap()).unwrap(), 0.0);
    out.check(&label(&spec), "negative count", negative as f64 - 3.0, 0.0);
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    out.absorb("alpha = 1e-6", &limit_entries());
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let mut systems = canonical_systems();
    systems.push(SystemSpec::oscillator(3f64.sqrt(), 0.0, 1.0).unwrap());
    for spec in systems {
        let r = richardson_ratio(&spec, 1001);
        out.absorb(&label(&spec), &[Entry::new("ratio - 4", r.map(|r| r - 4.0), 0.5)]);
    }
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("eigen-residuals of all six families", criterion_1),
        ("orthonormality of 6x6 Gram matrices", criterion_2),
        ("ladder coefficients and lowest-weight annihilation", criterion_3),
        ("commutator and Casimir identities", criterion_4),
        ("point canonical transformations", criterion_5),
        ("fixed-potential spectra and oracle agreement", criterion_6),
        ("alpha -> 0 limits", criterion_7),
        ("oracle Richardson convergence", criterion_8),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = run();
        let pass = o.failures.is_empty() && o.checks > 0;
        all &= pass;
        println!(
            "{} criterion {}: {name} ({} checks, worst |value|/tol {:.2e}, {:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            o.checks,
            o.worst,
            start.elapsed().as_secs_f64()
        );
        for f in o.failures.iter().take(20) {
            println!("    {f}");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
