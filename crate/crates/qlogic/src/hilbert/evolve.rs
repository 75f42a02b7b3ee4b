//! Spectral free-particle propagation on a periodic grid (ħ = m = 1).

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::hilbert::{Space, StateVector};
use crate::tol;

/// Evolves `v` for time `t` under `H = k²/2`: transform to the discrete
/// frequency basis, multiply each mode by `exp(−i·k²·t/2)`, transform back.
/// The norm is preserved up to roundoff.
///
/// A periodic grid wraps fast components around; the call fails when more
/// than [`tol::EPS_WRAP`] of the spectral probability travels far enough
/// (`|k|·|t|`) to reach a grid boundary from the initial support.
pub fn free_evolve(v: &StateVector, t: f64) -> Result<StateVector> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime);
    }
    let Space::Grid(grid) = v.space() else {
        return Err(Error::InvariantViolation(
            "free evolution requires a position-grid state",
        ));
    };
    if t == 0.0 {
        return Ok(v.clone());
    }
    let n = grid.n_points();
    let dx = grid.spacing();

    let mut buf: Vec<C64> = v.amps().iter().cloned().collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);

    check_wraparound(v, &buf, t, dx)?;

    let two_pi = std::f64::consts::TAU;
    for (j, mode) in buf.iter_mut().enumerate() {
        let f = if j <= n / 2 {
            j as f64
        } else {
            j as f64 - n as f64
        };
        let k = two_pi * f / (n as f64 * dx);
        *mode *= C64::from_polar(1.0, -k * k * t / 2.0);
    }

    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let amps = nalgebra::DVector::from_iterator(n, buf.into_iter().map(|x| x * scale));
    Ok(StateVector::from_dvector(v.space().clone(), amps))
}

/// Estimates the spectral probability that reaches a boundary within `t`.
fn check_wraparound(v: &StateVector, spectrum: &[C64], t: f64, dx: f64) -> Result<()> {
    let n = spectrum.len();
    let amps = v.amps();
    let max_amp = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
    if max_amp == 0.0 {
        return Ok(());
    }
    let occupied: Vec<usize> = (0..n)
        .filter(|&i| amps[i].norm() > max_amp * 1e-9)
        .collect();
    let first = *occupied.first().unwrap();
    let last = *occupied.last().unwrap();
    let gap = (first as f64).min((n - 1 - last) as f64) * dx;

    let total: f64 = spectrum.iter().map(|x| x.norm_sqr()).sum();
    let two_pi = std::f64::consts::TAU;
    let mut reaching = 0.0;
    for (j, mode) in spectrum.iter().enumerate() {
        let f = if j <= n / 2 {
            j as f64
        } else {
            j as f64 - n as f64
        };
        let k = two_pi * f / (n as f64 * dx);
        if k.abs() * t.abs() >= gap {
            reaching += mode.norm_sqr();
        }
    }
    let fraction = reaching / total;
    if fraction > tol::EPS_WRAP {
        return Err(Error::WrapAround(fraction));
    }
    Ok(())
}
