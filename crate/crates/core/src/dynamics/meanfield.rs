//! Mean-field Faraday rotation of the Stokes vector and the collective spin,
//! including the rank-2 (a2) terms. Operator products are factorized into
//! products of means.

use crate::error::{Error, Result};
use crate::polarizability::TensorCoeffs;

type V3 = [f64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

/// Rotates v about `axis` by |axis| * t (Rodrigues).
fn rotate(v: V3, axis: V3, t: f64) -> V3 {
    let w = norm(axis);
    if w == 0.0 || t == 0.0 {
        return v;
    }
    let k = axis.map(|x| x / w);
    let (s, c) = (w * t).sin_cos();
    let kxv = cross(k, v);
    let kv = dot(k, v);
    std::array::from_fn(|i| v[i] * c + kxv[i] * s + k[i] * kv * (1.0 - c))
}

/// Axis about which the Stokes vector turns.
fn stokes_axis(j: V3, t: &TensorCoeffs) -> V3 {
    let [jx, jy, jz] = j;
    [-t.a2 * (jx * jx - jy * jy), -2.0 * t.a2 * jx * jy, t.a1 * jz]
}

/// dj/dt per unit coupling; always orthogonal to j.
fn spin_velocity(j: V3, s: V3, t: &TensorCoeffs) -> V3 {
    let [jx, jy, jz] = j;
    let [sx, sy, sz] = s;
    let s0 = norm(s);
    let (a1, a2) = (t.a1, t.a2);
    let (ayz, axz, axy) = (2.0 * jy * jz, 2.0 * jx * jz, 2.0 * jx * jy);
    [
        a2 * ayz * sx - a2 * axz * sy - a1 * jy * sz - a2 * ayz * s0,
        a2 * axz * sx + a2 * ayz * sy + a1 * jx * sz + a2 * axz * s0,
        -2.0 * a2 * axy * sx + 2.0 * a2 * (jx * jx - jy * jy) * sy,
    ]
}

/// Integrates the coupled rotation for a total coupling `strength`
/// (g times the interaction length) in `steps` equal steps. Each step is
/// an exact rotation about the instantaneous axes, so |S| and |j| only
/// change by rounding.
///
/// Returns (stokes_out, spin_out).
pub fn mean_field_rotation(
    spin: V3,
    stokes: V3,
    coeffs: &TensorCoeffs,
    strength: f64,
    steps: usize,
) -> Result<(V3, V3)> {
    let finite = spin.iter().chain(&stokes).all(|x| x.is_finite())
        && strength.is_finite()
        && coeffs.a1.is_finite()
        && coeffs.a2.is_finite();
    if !finite {
        return Err(Error::InvalidInput("mean-field inputs must be finite".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("need at least one step".into()));
    }
    let dt = strength / steps as f64;
    let (mut s, mut j) = (stokes, spin);
    for _ in 0..steps {
        let axis_s = stokes_axis(j, coeffs);
        let jj = dot(j, j);
        let axis_j = if jj > 0.0 {
            cross(j, spin_velocity(j, s, coeffs)).map(|x| x / jj)
        } else {
            [0.0; 3]
        };
        s = rotate(s, axis_s, dt);
        j = rotate(j, axis_j, dt);
    }
    Ok((s, j))
}
