//! Command-line front end. All inputs are dimensionless (`ħ = 1`, `m₀ = 1/2`).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use su11_core::operators::SmoothFunction;
use su11_core::oracle::{
    count_below, default_grid, discretize, lowest_eigenvalues, GridCoordinate, GridSpec, DEFAULT_COUNT,
};
use su11_core::pct::{hierarchy, map_parameters, Mapping};
use su11_core::report::{check_grid, closed_form_levels, verify, verify_all, Tolerances, VERSION};
use su11_core::systems::{spectrum_fixed_potential, BoundState, Family, FixedPotential, SystemSpec};
use su11_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "su11",
    version,
    about = "Closed-form spectra, su(1,1) checks and point canonical maps (units: hbar = 1, m0 = 1/2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels: oscillator states, or the levels of one fixed Morse/Coulomb potential (--A/--Z are A̅/Z̅).
    Spectrum(Common),
    /// Tabulate value, d1, d2 of state --n on a grid.
    State(Common),
    /// Verification report for one system, or the whole suite with --all.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        all: bool,
    },
    /// Parameters of the image of state --n under a point canonical transformation.
    Map {
        #[arg(long, value_enum)]
        from: FamilyArg,
        #[arg(long, value_enum)]
        to: FamilyArg,
        #[command(flatten)]
        common: Common,
    },
    /// Members 0..=--nmax of a Morse or Coulomb hierarchy, or the hierarchy reached from --family via --to.
    Hierarchy {
        #[arg(long, value_enum)]
        to: Option<FamilyArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Finite-difference levels of hierarchy member --n against the closed forms.
    OracleCompare(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ho,
    Morse,
    Coulomb,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Ho => Family::Oscillator,
            FamilyArg::Morse => Family::Morse,
            FamilyArg::Coulomb => Family::Coulomb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    #[arg(long = "L", allow_negative_numbers = true)]
    l: Option<f64>,
    #[arg(long = "A", allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long = "Z", allow_negative_numbers = true)]
    z: Option<f64>,
    #[arg(long = "Lcal", allow_negative_numbers = true)]
    lcal: Option<f64>,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long = "grid-min", allow_negative_numbers = true)]
    grid_min: Option<f64>,
    #[arg(long = "grid-max", allow_negative_numbers = true)]
    grid_max: Option<f64>,
    #[arg(long = "grid-count")]
    grid_count: Option<usize>,
}

/// Invalid input; exits with [`EXIT_USAGE`].
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<Output, Failure>;

struct Output {
    text: String,
    pass: bool,
}

fn require(v: Option<f64>, flag: &str, family: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for family {family}")))
}

impl Common {
    fn family(&self, fallback: Option<FamilyArg>) -> Result<FamilyArg, Failure> {
        self.family.or(fallback).ok_or_else(|| Failure::Usage("--family is required".into()))
    }

    fn spec_for(&self, family: FamilyArg) -> Result<SystemSpec, Failure> {
        let spec = match family {
            FamilyArg::Ho => {
                SystemSpec::oscillator(require(self.omega, "omega", "ho")?, self.l.unwrap_or(0.0), self.alpha)
            }
            FamilyArg::Morse => {
                SystemSpec::morse(require(self.a, "A", "morse")?, require(self.b, "B", "morse")?, self.alpha)
            }
            FamilyArg::Coulomb => {
                SystemSpec::coulomb(self.lcal.unwrap_or(0.0), require(self.z, "Z", "coulomb")?, self.alpha)
            }
        };
        Ok(spec?)
    }

    fn spec(&self) -> Result<SystemSpec, Failure> {
        self.spec_for(self.family(None)?)
    }

    fn tol(&self) -> Result<Option<f64>, Failure> {
        match self.tol {
            Some(t) if !(t > 0.0) || !t.is_finite() => Err(Failure::Usage(format!("--tol {t} must be positive"))),
            t => Ok(t),
        }
    }

    fn json_only(&self, command: &str) -> Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(Failure::Usage(format!("{command} produces a nested report; --format csv is for tables")));
        }
        Ok(())
    }

    fn explicit_grid(&self, spec: &SystemSpec, fallback: Option<GridSpec>) -> Result<Option<GridSpec>, Failure> {
        if self.grid_min.is_none() && self.grid_max.is_none() && self.grid_count.is_none() {
            return Ok(fallback);
        }
        let base = match fallback {
            Some(g) => g,
            None => GridSpec::new(0.0, 1.0, DEFAULT_COUNT)?,
        };
        let grid = GridSpec::new(
            self.grid_min.unwrap_or(base.q_min),
            self.grid_max.unwrap_or(base.q_max),
            self.grid_count.unwrap_or(base.count),
        )?;
        let coordinate = match (spec.family(), spec.alpha() > 0.0) {
            (_, false) => GridCoordinate::Physical,
            _ => base.coordinate,
        };
        Ok(Some(grid.with_coordinate(coordinate)))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn spectrum(c: &Common) -> Outcome {
    let family = c.family(None)?;
    let alpha = c.alpha;
    let (system, levels, warnings): (Value, Vec<(u32, f64)>, Vec<String>) = match family {
        FamilyArg::Ho => {
            let spec = c.spec_for(family)?;
            let top = c.nmax.unwrap_or(5);
            (serde_json::to_value(spec).unwrap(), (0..=top).map(|n| (n, spec.energy(n))).collect(), spec.warnings())
        }
        FamilyArg::Morse | FamilyArg::Coulomb => {
            let potential = if family == FamilyArg::Morse {
                FixedPotential::Morse { a_bar: require(c.a, "A", "morse")?, b: require(c.b, "B", "morse")? }
            } else {
                FixedPotential::Coulomb { z_bar: require(c.z, "Z", "coulomb")?, lcal: c.lcal.unwrap_or(0.0) }
            };
            let infinite = family == FamilyArg::Coulomb && alpha == 0.0;
            let cap = match c.nmax {
                Some(m) => m + 1,
                None if infinite => 10,
                None => 100_000,
            };
            let s = spectrum_fixed_potential(potential, alpha, cap)?;
            let mut warnings = s.warnings.clone();
            if infinite {
                warnings.push(format!("the constant-mass Coulomb spectrum is infinite; showing {cap} levels"));
            }
            let system = json!({ "potential": potential, "alpha": alpha });
            (system, s.levels, warnings)
        }
    };
    let text = match c.format {
        Format::Csv => csv(&["n", "energy"], levels.iter().map(|&(n, e)| vec![n.to_string(), num(e)])),
        Format::Json => to_json(&json!({
            "version": VERSION,
            "system": system,
            "levels": levels.iter().map(|&(n, e)| json!({"n": n, "energy": e})).collect::<Vec<_>>(),
            "warnings": warnings,
        })),
    };
    Ok(Output { text, pass: true })
}

fn state(c: &Common) -> Outcome {
    let spec = c.spec()?;
    let psi = BoundState::new(spec, c.n)?;
    let default = check_grid(&spec, c.n, 101)?;
    let (lo, hi, count) = (
        c.grid_min.unwrap_or(default[0]),
        c.grid_max.unwrap_or(default[default.len() - 1]),
        c.grid_count.unwrap_or(101),
    );
    if count < 2 || !(lo < hi) {
        return Err(Failure::Usage(format!("grid [{lo}, {hi}] with {count} points is not usable")));
    }
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let q = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        let s = psi.sample(q)?;
        rows.push((q, s));
    }
    let text = match c.format {
        Format::Csv => csv(
            &["q", "value", "d1", "d2"],
            rows.iter().map(|(q, s)| vec![num(*q), num(s.value), num(s.d1), num(s.d2)]),
        ),
        Format::Json => to_json(&json!({
            "version": VERSION,
            "system": spec,
            "n": c.n,
            "energy": psi.energy(),
            "warnings": spec.warnings(),
            "samples": rows.iter().map(|(q, s)| json!({"q": q, "value": s.value, "d1": s.d1, "d2": s.d2})).collect::<Vec<_>>(),
        })),
    };
    Ok(Output { text, pass: true })
}

fn run_verify(c: &Common, all: bool) -> Outcome {
    c.json_only("verify")?;
    let n_max = c.nmax.unwrap_or(5);
    let tol = c.tol()?;
    if all {
        let r = verify_all(n_max, tol);
        return Ok(Output { text: to_json(&r), pass: r.pass });
    }
    let r = verify(&c.spec()?, n_max, tol);
    Ok(Output { text: to_json(&r), pass: r.pass })
}

fn map(from: FamilyArg, to: FamilyArg, c: &Common) -> Outcome {
    c.json_only("map")?;
    if c.family.is_some_and(|f| f != from) {
        return Err(Failure::Usage("--family disagrees with --from".into()));
    }
    let source = c.spec_for(from)?;
    let mapping = Mapping::between(from.into(), to.into())?;
    let image = map_parameters(&source, c.n, to.into())?;
    Ok(Output {
        text: to_json(&json!({
            "version": VERSION,
            "mapping": mapping,
            "source": source,
            "n": c.n,
            "source_energy": source.energy(c.n),
            "target": image.spec,
            "member": image.member,
            "member_parameter": image.member_parameter,
            "energy": image.energy,
        })),
        pass: true,
    })
}

fn run_hierarchy(to: Option<FamilyArg>, c: &Common) -> Outcome {
    let n_max = c.nmax.unwrap_or(5);
    let source = c.spec()?;
    let rows: Vec<(u32, f64, f64)> = match to {
        Some(t) => {
            hierarchy(&source, t.into(), n_max)?.iter().map(|m| (m.member, m.member_parameter, m.energy)).collect()
        }
        None => {
            if source.family() == Family::Oscillator {
                return Err(Failure::Usage(
                    "the oscillator is not a hierarchy; pass --to morse or --to coulomb".into(),
                ));
            }
            (0..=n_max).map(|n| (n, source.member_parameter(n).expect("hierarchy family"), source.energy(n))).collect()
        }
    };
    let target: Value = match to {
        Some(t) => serde_json::to_value(map_parameters(&source, 0, t.into())?.spec).unwrap(),
        None => serde_json::to_value(source).unwrap(),
    };
    let parameter = match target["family"].as_str() {
        Some("morse") => "A_n",
        _ => "Z_n",
    };
    let text = match c.format {
        Format::Csv => {
            csv(&["n", parameter, "energy"], rows.iter().map(|&(n, p, e)| vec![n.to_string(), num(p), num(e)]))
        }
        Format::Json => to_json(&json!({
            "version": VERSION,
            "source": source,
            "hierarchy": target,
            "members": rows.iter().map(|&(n, p, e)| json!({"n": n, "parameter": p, "energy": e})).collect::<Vec<_>>(),
        })),
    };
    Ok(Output { text, pass: true })
}

fn oracle_compare(c: &Common) -> Outcome {
    let spec = c.spec()?;
    let member = c.n;
    let k = (c.nmax.unwrap_or(4) + 1).min(10);
    let exact = closed_form_levels(&spec, member, k)?;
    if exact.is_empty() {
        return Err(Failure::Usage(format!("member {member} binds no level")));
    }
    let grid = match c.explicit_grid(&spec, None)? {
        Some(g) if c.grid_min.is_some() && c.grid_max.is_some() => g,
        _ => c.explicit_grid(&spec, Some(default_grid(&spec, member)?))?.expect("fallback grid"),
    };
    let dh = discretize(&spec, member, &grid)?;
    let found = lowest_eigenvalues(&dh, exact.len(), 1e-12)?;
    let tol = c.tol()?.unwrap_or(Tolerances::for_spec(&spec).oracle);
    let rows: Vec<(usize, f64, f64, f64)> =
        exact.iter().zip(&found).enumerate().map(|(n, (&e, &f))| (n, e, f, f - e)).collect();
    let pass = rows.iter().all(|r| r.3.abs() <= tol);
    let text = match c.format {
        Format::Csv => csv(
            &["n", "closed_form", "oracle", "difference"],
            rows.iter().map(|&(n, e, f, d)| vec![n.to_string(), num(e), num(f), num(d)]),
        ),
        Format::Json => to_json(&json!({
            "version": VERSION,
            "system": spec,
            "member": member,
            "grid": grid,
            "tolerance": tol,
            "negative_eigenvalues": count_below(&dh, 0.0),
            "levels": rows.iter().map(|&(n, e, f, d)| json!({"n": n, "closed_form": e, "oracle": f, "difference": d})).collect::<Vec<_>>(),
            "pass": pass,
        })),
    };
    Ok(Output { text, pass })
}

/// Parse `args` (including the program name), execute, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Spectrum(c) => spectrum(c),
        Command::State(c) => state(c),
        Command::Verify { common, all } => run_verify(common, *all),
        Command::Map { from, to, common } => map(*from, *to, common),
        Command::Hierarchy { to, common } => run_hierarchy(*to, common),
        Command::OracleCompare(c) => oracle_compare(c),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.pass {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
