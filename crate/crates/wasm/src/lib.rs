//! Browser bindings. Every export returns a JSON string.

use serde_json::{json, Value};
use su11_core::operators::SmoothFunction;
use su11_core::pct::hierarchy;
use su11_core::report::check_grid;
use su11_core::systems::{
    mass_and_potential, spectrum_fixed_potential, BoundState, Family, FixedPotential, SystemSpec,
};
use wasm_bindgen::prelude::*;

fn spec(family: &str, p1: f64, p2: f64, alpha: f64) -> Result<SystemSpec, String> {
    let s = match family {
        "ho" => SystemSpec::oscillator(p1, p2, alpha),
        "morse" => SystemSpec::morse(p1, p2, alpha),
        "coulomb" => SystemSpec::coulomb(p2, p1, alpha),
        other => return Err(format!("unknown family {other}")),
    };
    s.map_err(|e| e.to_string())
}

/// Samples of state `n`, its probability density and the effective potential of its member.
///
/// `p1, p2` are `(omega, L)`, `(A0, B)` or `(Z0, Lcal)`.
pub fn state_table(family: &str, p1: f64, p2: f64, alpha: f64, n: u32, count: usize) -> Result<String, String> {
    let spec = spec(family, p1, p2, alpha)?;
    let psi = BoundState::new(spec, n).map_err(|e| e.to_string())?;
    let grid = check_grid(&spec, n, count.clamp(2, 4000)).map_err(|e| e.to_string())?;
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    let mut rows = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let q = lo + (hi - lo) * i as f64 / (grid.len() - 1) as f64;
        let value = psi.sample(q).map_err(|e| e.to_string())?.value;
        let v = mass_and_potential(&spec, n, q).map_err(|e| e.to_string())?.v_eff;
        rows.push(json!([q, value, v]));
    }
    Ok(json!({ "energy": psi.energy(), "warnings": spec.warnings(), "rows": rows }).to_string())
}

/// Bound levels of one Morse (`a`, `b`) or Coulomb (`a` = Z, `b` = Lcal) potential.
pub fn fixed_levels(family: &str, a: f64, b: f64, alpha: f64, cap: u32) -> Result<String, String> {
    let potential = match family {
        "morse" => FixedPotential::Morse { a_bar: a, b },
        "coulomb" => FixedPotential::Coulomb { z_bar: a, lcal: b },
        other => return Err(format!("no fixed-potential spectrum for {other}")),
    };
    let s = spectrum_fixed_potential(potential, alpha, cap.min(1000)).map_err(|e| e.to_string())?;
    let levels: Vec<Value> = s.levels.iter().map(|&(n, e)| json!({ "n": n, "energy": e })).collect();
    Ok(json!({ "levels": levels, "warnings": s.warnings }).to_string())
}

/// Oscillator states `0..=n_max` and their Morse and Coulomb images.
pub fn chain(omega: f64, l: f64, alpha: f64, n_max: u32) -> Result<String, String> {
    let source = SystemSpec::oscillator(omega, l, alpha).map_err(|e| e.to_string())?;
    let n_max = n_max.min(50);
    let morse = hierarchy(&source, Family::Morse, n_max).map_err(|e| e.to_string())?;
    let coulomb = hierarchy(&source, Family::Coulomb, n_max).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = morse
        .iter()
        .zip(&coulomb)
        .enumerate()
        .map(|(n, (m, c))| {
            json!({
                "n": n,
                "oscillator_energy": source.energy(n as u32),
                "morse_a": m.member_parameter,
                "morse_energy": m.energy,
                "coulomb_z": c.member_parameter,
                "coulomb_energy": c.energy,
            })
        })
        .collect();
    Ok(json!({ "source": source, "morse": morse.first().map(|m| m.spec), "coulomb": coulomb.first().map(|c| c.spec), "rows": rows }).to_string())
}

#[wasm_bindgen(js_name = stateTable)]
pub fn state_table_js(family: &str, p1: f64, p2: f64, alpha: f64, n: u32, count: usize) -> Result<String, JsError> {
    state_table(family, p1, p2, alpha, n, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fixedLevels)]
pub fn fixed_levels_js(family: &str, a: f64, b: f64, alpha: f64, cap: u32) -> Result<String, JsError> {
    fixed_levels(family, a, b, alpha, cap).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = chain)]
pub fn chain_js(omega: f64, l: f64, alpha: f64, n_max: u32) -> Result<String, JsError> {
    chain(omega, l, alpha, n_max).map_err(|e| JsError::new(&e))
}
