//! Finite-difference eigenvalues of `-d/dq f² d/dq + V_eff`, independent of
//! the closed forms.
//!
//! The flux form is discretized on a uniform grid in a coordinate `s`: the
//! physical one, the natural one with `ds = dq/f`, or `s = ln q` on the half
//! line. With `w = dq/ds` and
//! `c = f²/w` the symmetric tridiagonal matrix has diagonal
//! `(c_{i-1/2} + c_{i+1/2})/(h² w_i) + V_eff(q_i)` and off-diagonal
//! `-c_{i+1/2}/(h² √(w_i w_{i+1}))`. Both ends carry Dirichlet conditions.

use serde::Serialize;

use crate::error::{parameter, Error, Result};
use crate::operators::SmoothFunction;
use crate::systems::{fixed_potential_state, mass_and_potential, BoundState, Family, FixedPotential, SystemSpec};

pub const MIN_COUNT: usize = 100;
pub const DEFAULT_COUNT: usize = 16000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridCoordinate {
    /// Uniform in `q`.
    Physical,
    /// Uniform in `s = ∫ dq/f`, which turns algebraic tails into exponential ones.
    Natural,
    /// Uniform in `s = ln q`; half-line families only.
    Logarithmic,
}

/// Grid between `q_min` and `q_max` (physical coordinates), endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub count: usize,
    pub coordinate: GridCoordinate,
}

impl GridSpec {
    pub fn new(q_min: f64, q_max: f64, count: usize) -> Result<Self> {
        if count < MIN_COUNT {
            return parameter(format!("grid count {count} is below {MIN_COUNT}"));
        }
        if !(q_min < q_max) || !q_min.is_finite() || !q_max.is_finite() {
            return parameter(format!("grid bounds [{q_min}, {q_max}] are not an interval"));
        }
        Ok(GridSpec { q_min, q_max, count, coordinate: GridCoordinate::Physical })
    }

    pub fn with_coordinate(mut self, coordinate: GridCoordinate) -> Self {
        self.coordinate = coordinate;
        self
    }

    pub fn with_count(self, count: usize) -> Result<Self> {
        GridSpec::new(self.q_min, self.q_max, count).map(|g| g.with_coordinate(self.coordinate))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteHamiltonian {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    /// Physical positions of the unknowns.
    pub nodes: Vec<f64>,
    pub h: f64,
}

/// `s(q)`, `q(s)` and `w = dq/ds` of a grid coordinate.
struct CoordinateMap {
    coordinate: GridCoordinate,
    family: Family,
    alpha: f64,
}

impl CoordinateMap {
    fn s_of_q(&self, q: f64) -> f64 {
        let a = self.alpha;
        match (self.coordinate, self.family) {
            (GridCoordinate::Physical, _) => q,
            (GridCoordinate::Logarithmic, _) => q.ln(),
            (GridCoordinate::Natural, Family::Oscillator) => (a.sqrt() * q).atan() / a.sqrt(),
            (GridCoordinate::Natural, Family::Morse) => (q.exp() + a).ln(),
            (GridCoordinate::Natural, Family::Coulomb) => (a * q).ln_1p() / a,
        }
    }

    fn q_of_s(&self, s: f64) -> f64 {
        let a = self.alpha;
        match (self.coordinate, self.family) {
            (GridCoordinate::Physical, _) => s,
            (GridCoordinate::Logarithmic, _) => s.exp(),
            (GridCoordinate::Natural, Family::Oscillator) => (a.sqrt() * s).tan() / a.sqrt(),
            (GridCoordinate::Natural, Family::Morse) => (s.exp() - a).ln(),
            (GridCoordinate::Natural, Family::Coulomb) => (a * s).exp_m1() / a,
        }
    }

    fn w(&self, q: f64, f: f64) -> f64 {
        match self.coordinate {
            GridCoordinate::Physical => 1.0,
            GridCoordinate::Natural => f,
            GridCoordinate::Logarithmic => q,
        }
    }
}

fn check_domain(spec: &SystemSpec, grid: &GridSpec) -> Result<()> {
    if spec.family() != Family::Morse && !(grid.q_min > 0.0) {
        return parameter(format!("half-line grid needs q_min > 0, got {}", grid.q_min));
    }
    if spec.family() == Family::Morse && grid.coordinate == GridCoordinate::Logarithmic {
        return parameter("the logarithmic coordinate needs a half-line family");
    }
    if grid.count < MIN_COUNT {
        return parameter(format!("grid count {} is below {MIN_COUNT}", grid.count));
    }
    Ok(())
}

pub fn discretize(spec: &SystemSpec, member: u32, grid: &GridSpec) -> Result<DiscreteHamiltonian> {
    check_domain(spec, grid)?;
    let coordinate = match grid.coordinate {
        GridCoordinate::Natural if spec.alpha() == 0.0 => GridCoordinate::Physical,
        c => c,
    };
    let map = CoordinateMap { coordinate, family: spec.family(), alpha: spec.alpha() };
    let (s_min, s_max) = (map.s_of_q(grid.q_min), map.s_of_q(grid.q_max));
    let h = (s_max - s_min) / (grid.count - 1) as f64;
    // c = f²/w at each midpoint
    let c_at = |s: f64| -> Result<f64> {
        let q = map.q_of_s(s);
        let mp = mass_and_potential(spec, member, q)?;
        Ok(mp.f * mp.f / map.w(q, mp.f))
    };
    let interior = grid.count - 2;
    let mut nodes = Vec::with_capacity(interior);
    let mut diagonal = Vec::with_capacity(interior);
    let mut weights = Vec::with_capacity(interior);
    let mut mids = Vec::with_capacity(interior + 1);
    for i in 0..=interior {
        mids.push(c_at(s_min + (i as f64 + 0.5) * h)?);
    }
    for i in 1..=interior {
        let q = map.q_of_s(s_min + i as f64 * h);
        let mp = mass_and_potential(spec, member, q)?;
        let w = map.w(q, mp.f);
        nodes.push(q);
        weights.push(w);
        diagonal.push((mids[i - 1] + mids[i]) / (h * h * w) + mp.v_eff);
    }
    let off_diagonal = (0..interior.saturating_sub(1))
        .map(|i| -mids[i + 1] / (h * h * (weights[i] * weights[i + 1]).sqrt()))
        .collect();
    Ok(DiscreteHamiltonian { diagonal, off_diagonal, nodes, h })
}

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
pub fn count_below(dh: &DiscreteHamiltonian, x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in dh.diagonal.iter().enumerate() {
        let b2 = if i == 0 { 0.0 } else { dh.off_diagonal[i - 1] * dh.off_diagonal[i - 1] };
        d = (a - x) - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (a.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(dh: &DiscreteHamiltonian) -> (f64, f64) {
    let n = dh.diagonal.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { dh.off_diagonal[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { dh.off_diagonal[i].abs() } else { 0.0 };
        lo = lo.min(dh.diagonal[i] - left - right);
        hi = hi.max(dh.diagonal[i] + left + right);
    }
    (lo, hi)
}

const MAX_BISECTIONS: usize = 400;

/// The `k` smallest eigenvalues, each bracketed to within `tol·max(1, |λ|)`.
pub fn lowest_eigenvalues(dh: &DiscreteHamiltonian, k: usize, tol: f64) -> Result<Vec<f64>> {
    if !(1..=10).contains(&k) {
        return parameter(format!("k = {k} outside [1, 10]"));
    }
    if !(tol >= 1e-12) {
        return parameter(format!("tol = {tol} must be >= 1e-12"));
    }
    if k > dh.diagonal.len() {
        return parameter("k exceeds the matrix size");
    }
    let (glo, ghi) = gershgorin(dh);
    let mut out = Vec::with_capacity(k);
    let mut unconverged = Vec::new();
    for j in 0..k {
        let (mut lo, mut hi) = (glo, ghi);
        let mut steps = 0;
        while hi - lo > tol * lo.abs().max(hi.abs()).max(1.0) {
            if steps == MAX_BISECTIONS {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if count_below(dh, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
        }
        if hi - lo > tol * lo.abs().max(hi.abs()).max(1.0) {
            unconverged.push((lo, hi));
        }
        out.push(0.5 * (lo + hi));
    }
    if !unconverged.is_empty() {
        return Err(Error::Bisection { brackets: unconverged });
    }
    Ok(out)
}

// |ψ|/max|ψ| below this at both grid ends
const EDGE_RATIO: f64 = 1e-10;

fn samples(family: Family) -> Vec<f64> {
    match family {
        Family::Morse => (0..=4000).map(|i| -60.0 + 0.1 * i as f64).collect(),
        _ => (0..=800).map(|i| 10f64.powf(-8.0 + 16.0 * i as f64 / 800.0)).collect(),
    }
}

/// Interval outside which `|f| < ratio · max |f|`, scanned on a fixed sample set.
pub fn support<F: SmoothFunction>(f: &F, family: Family, ratio: f64) -> Result<Option<(f64, f64)>> {
    extent(f, &samples(family), ratio)
}

fn extent<F: SmoothFunction>(f: &F, samples: &[f64], ratio: f64) -> Result<Option<(f64, f64)>> {
    let values: Vec<f64> = samples.iter().map(|&q| f.value(q).map(f64::abs)).collect::<Result<_>>()?;
    let peak = values.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(None);
    }
    let first = values.iter().position(|&v| v >= ratio * peak).unwrap_or(0);
    let last = values.iter().rposition(|&v| v >= ratio * peak).unwrap_or(values.len() - 1);
    let lo = samples[first.saturating_sub(1)];
    let hi = samples[(last + 1).min(samples.len() - 1)];
    Ok(Some((lo, hi)))
}

/// Grid covering the closed-form states `n ≤ 5` of the member Hamiltonian (or
/// as many as it binds) down to `1e-10` of their peak at both ends; natural
/// coordinates for deformed systems.
pub fn default_grid(spec: &SystemSpec, member: u32) -> Result<GridSpec> {
    const LEVELS: u32 = 6;
    let mut bounds: Option<(f64, f64)> = None;
    let mut widen = |b: Option<(f64, f64)>| {
        if let Some((lo, hi)) = b {
            bounds = Some(match bounds {
                None => (lo, hi),
                Some((a, c)) => (a.min(lo), c.max(hi)),
            });
        }
    };
    match spec.family() {
        Family::Oscillator => {
            for n in 0..LEVELS {
                widen(support(&BoundState::new(*spec, n)?, Family::Oscillator, EDGE_RATIO)?);
            }
        }
        Family::Morse | Family::Coulomb => {
            let potential = match spec {
                SystemSpec::Morse(s) => FixedPotential::Morse { a_bar: s.member_a(member), b: s.b },
                SystemSpec::Coulomb(s) => FixedPotential::Coulomb { z_bar: s.member_z(member), lcal: s.lcal },
                SystemSpec::Oscillator(_) => unreachable!(),
            };
            let levels = crate::systems::spectrum_fixed_potential(potential, spec.alpha(), LEVELS)?;
            for &(nbar, _) in &levels.levels {
                widen(support(&fixed_potential_state(potential, spec.alpha(), nbar)?, spec.family(), EDGE_RATIO)?);
            }
        }
    }
    let (lo, hi) = bounds.ok_or_else(|| Error::Domain("no bound state to size the grid".into()))?;
    let coordinate = match (spec.family(), spec.alpha() > 0.0) {
        (_, false) => GridCoordinate::Physical,
        (Family::Oscillator, true) => GridCoordinate::Logarithmic,
        _ => GridCoordinate::Natural,
    };
    Ok(GridSpec::new(lo, hi, DEFAULT_COUNT)?.with_coordinate(coordinate))
}
