//! Plain-text scenario files: one `key = value` pair per line, `#` starts
//! a comment, unknown keys are rejected, missing keys keep the defaults of
//! [`DoubleSlitConfig::default`].
//!
//! ```text
//! # biased double slit with a which-way detector
//! grid.x_min   = -20
//! grid.x_max   = 20
//! grid.n_points = 4096
//! slit.d          = 6.0
//! slit.half_width = 1.0
//! slit.sigma      = 0.5
//! amp.c1_re = 0.6
//! amp.c2_re = 0.8
//! detector = true
//! seed = 42
//! ```

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::scenarios::DoubleSlitConfig;

/// Parses the scenario-file format into a config. The result is not yet
/// validated against the geometric invariants; `build_double_slit` does
/// that.
pub fn parse_scenario_file(text: &str) -> Result<DoubleSlitConfig> {
    let mut cfg = DoubleSlitConfig::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {line_no}: expected `key = value`, got `{line}`"
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if seen.iter().any(|k| k == key) {
            return Err(Error::Config(format!(
                "line {line_no}: duplicate key `{key}`"
            )));
        }
        seen.push(key.to_string());
        apply(&mut cfg, key, value).map_err(|e| Error::Config(format!("line {line_no}: {e}")))?;
    }
    Ok(cfg)
}

fn apply(cfg: &mut DoubleSlitConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    let float = |v: &str| -> std::result::Result<f64, String> {
        let x: f64 = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
        if !x.is_finite() {
            return Err(format!("`{v}` is not finite"));
        }
        Ok(x)
    };
    match key {
        "grid.x_min" => cfg.x_min = float(value)?,
        "grid.x_max" => cfg.x_max = float(value)?,
        "grid.n_points" => {
            cfg.n_points = value
                .parse()
                .map_err(|_| format!("`{value}` is not a point count"))?
        }
        "slit.d" => cfg.slit_distance = float(value)?,
        "slit.half_width" => cfg.half_width = float(value)?,
        "slit.sigma" => cfg.sigma = float(value)?,
        "amp.c1_re" => cfg.c1 = C64::new(float(value)?, cfg.c1.im),
        "amp.c1_im" => cfg.c1 = C64::new(cfg.c1.re, float(value)?),
        "amp.c2_re" => cfg.c2 = C64::new(float(value)?, cfg.c2.im),
        "amp.c2_im" => cfg.c2 = C64::new(cfg.c2.re, float(value)?),
        "detector" => {
            cfg.detector = match value {
                "true" => true,
                "false" => false,
                other => return Err(format!("`{other}` is not `true` or `false`")),
            }
        }
        "seed" => {
            cfg.seed = value
                .parse()
                .map_err(|_| format!("`{value}` is not a 64-bit seed"))?
        }
        unknown => return Err(format!("unknown key `{unknown}`")),
    }
    Ok(())
}
