//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>` so
//! it can be tested natively.

use tropicalis::calculus::{
    cole_hopf_evolve, gap_table, hopf_lax_step, legendre, CorpusFunction, HJState, LegendreMode, Orientation,
    SampledFunction, XiGrid,
};
use tropicalis::semiring::deformed_add;
use wasm_bindgen::prelude::*;

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// `u ⊕_h v` for `n` values of `u` spread over `[lo, hi]`.
pub fn deformed_curve(v: f64, h: f64, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if n < 2 || !(lo < hi) {
        return Err("need n >= 2 and lo < hi".into());
    }
    (0..n)
        .map(|i| {
            let u = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            deformed_add(u, v, h).map_err(|e| e.to_string())
        })
        .collect()
}

#[wasm_bindgen(js_name = deformedCurve)]
pub fn deformed_curve_js(v: f64, h: f64, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, JsError> {
    deformed_curve(v, h, lo, hi, n).map_err(js)
}

fn preset(name: &str) -> Result<SampledFunction, String> {
    let f: fn(f64) -> f64 = match name {
        "neg_quad" => |x| -x * x / 2.0,
        "neg_abs" => |x| -x.abs(),
        "tent" => |x| 1.0 - (x - 0.5).abs().min(1.5),
        "double_well" => |x| -(x * x - 1.0).powi(2),
        other => return Err(format!("unknown function {other:?}")),
    };
    SampledFunction::on_interval(-2.0, 2.0, 0.01, Orientation::MaxPlus, f).map_err(|e| e.to_string())
}

/// Legendre transform of a preset function sampled on `[-2, 2]`.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Transform {
    xs: Vec<f64>,
    phi: Vec<f64>,
    xis: Vec<f64>,
    values: Vec<f64>,
    mode: String,
    note: Option<String>,
}

#[wasm_bindgen]
impl Transform {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn xis(&self) -> Vec<f64> {
        self.xis.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn mode(&self) -> String {
        self.mode.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn note(&self) -> Option<String> {
        self.note.clone()
    }
}

pub fn legendre_preset(name: &str, xi_lo: f64, xi_hi: f64, fast: bool) -> Result<Transform, String> {
    let phi = preset(name)?;
    let grid = XiGrid::new(xi_lo, xi_hi, (xi_hi - xi_lo) / 200.0).map_err(|e| e.to_string())?;
    let mode = if fast { LegendreMode::Fast } else { LegendreMode::Brute };
    let r = legendre(&phi, &grid, false, mode).map_err(|e| e.to_string())?;
    Ok(Transform {
        xs: phi.xs(),
        phi: phi.values().to_vec(),
        xis: r.transform.xs(),
        values: r.transform.values().to_vec(),
        mode: match r.mode {
            LegendreMode::Fast => "fast".into(),
            LegendreMode::Brute => "brute".into(),
        },
        note: r.note,
    })
}

#[wasm_bindgen(js_name = legendrePreset)]
pub fn legendre_preset_js(name: &str, xi_lo: f64, xi_hi: f64, fast: bool) -> Result<Transform, JsError> {
    legendre_preset(name, xi_lo, xi_hi, fast).map_err(js)
}

/// Hopf-Lax and Cole-Hopf profiles on `[-3, 3]` plus the gap table.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Profiles {
    xs: Vec<f64>,
    initial: Vec<f64>,
    hopf_lax: Vec<f64>,
    cole_hopf: Vec<f64>,
    hs: Vec<f64>,
    gaps: Vec<f64>,
}

#[wasm_bindgen]
impl Profiles {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn initial(&self) -> Vec<f64> {
        self.initial.clone()
    }
    #[wasm_bindgen(getter, js_name = hopfLax)]
    pub fn hopf_lax(&self) -> Vec<f64> {
        self.hopf_lax.clone()
    }
    #[wasm_bindgen(getter, js_name = coleHopf)]
    pub fn cole_hopf(&self) -> Vec<f64> {
        self.cole_hopf.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn hs(&self) -> Vec<f64> {
        self.hs.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn gaps(&self) -> Vec<f64> {
        self.gaps.clone()
    }
}

pub fn hj_profiles(init: &str, t: f64, h: f64) -> Result<Profiles, String> {
    let err = |e: tropicalis::Error| e.to_string();
    let s0 = init.parse::<CorpusFunction>().map_err(err)?.sampled();
    let hl = hopf_lax_step(&HJState::new(s0.clone(), 1.0).map_err(err)?, t).map_err(err)?;
    let ch = cole_hopf_evolve(&s0, t, h).map_err(err)?;
    let keep: Vec<usize> = (0..s0.len()).filter(|&i| s0.x(i).abs() <= 3.0 + 1e-9).collect();
    let pick = |v: &[f64]| keep.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let hs: Vec<f64> = (0..4).map(|k| h / f64::from(1 << k)).collect();
    let rows = gap_table(&s0, t, &hs, (-2.0, 2.0)).map_err(err)?;
    Ok(Profiles {
        xs: keep.iter().map(|&i| s0.x(i)).collect(),
        initial: pick(s0.values()),
        hopf_lax: pick(hl.s.values()),
        cole_hopf: pick(ch.values()),
        hs,
        gaps: rows.iter().map(|r| r.gap).collect(),
    })
}

#[wasm_bindgen(js_name = hjProfiles)]
pub fn hj_profiles_js(init: &str, t: f64, h: f64) -> Result<Profiles, JsError> {
    hj_profiles(init, t, h).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_approaches_max() {
        let lo = deformed_curve(0.0, 1.0, -3.0, 3.0, 61).unwrap();
        let hi = deformed_curve(0.0, 0.01, -3.0, 3.0, 61).unwrap();
        for (i, (a, b)) in lo.iter().zip(&hi).enumerate() {
            let m = f64::max(-3.0 + 0.1 * i as f64, 0.0);
            assert!(a - m <= 2f64.ln() + 1e-12 && a >= &m);
            assert!(b - m <= 0.01 * 2f64.ln() + 1e-12);
        }
        assert!(deformed_curve(0.0, 0.0, -1.0, 1.0, 3).is_err());
        assert!(deformed_curve(0.0, 1.0, 1.0, 1.0, 3).is_err());
    }

    #[test]
    fn quadratic_conjugate() {
        let t = legendre_preset("neg_quad", -1.5, 1.5, true).unwrap();
        assert_eq!(t.mode, "fast");
        for (xi, v) in t.xis.iter().zip(&t.values) {
            assert!((v - xi * xi / 2.0).abs() < 1e-3);
        }
        let w = legendre_preset("double_well", -1.0, 1.0, true).unwrap();
        assert_eq!(w.mode, "brute");
        assert!(w.note.is_some());
        assert!(legendre_preset("nope", -1.0, 1.0, false).is_err());
    }

    #[test]
    fn profiles_and_gaps() {
        let p = hj_profiles("abs", 1.0, 0.2).unwrap();
        assert_eq!(p.xs.len(), 601);
        assert_eq!(p.hopf_lax.len(), p.cole_hopf.len());
        assert!(p.gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(hj_profiles("cubic", 1.0, 0.2).is_err());
    }
}
