//! Polynomial expressions for Cs-133, F = 4, in terms of a0, a1, a2, b1, b2.
//! They are an independent check on the general sums.

use super::{Alpha2Cartesian, Axis, ByOrientation, Orientation, ScatteringCoeffs};
use crate::error::Result;
use crate::polarizability::TensorCoeffs;
use crate::wigner::HalfInt;

pub fn closed_form_cs(t: &TensorCoeffs) -> Result<ScatteringCoeffs> {
    let TensorCoeffs { a0, a1, a2, b1, b2, .. } = *t;
    let r = (77.0f64 / 5.0).sqrt();
    let q1 = a1 * a1;

    let a_x = (a0 * a0 + 4.0 * q1 + 56.0 * a1 * a2 - 112.0 / 3.0 * a0 * a2
        + 4900.0 / 9.0 * a2 * a2
        + 140.0 / 9.0 * (b1 * b1 + 77.0 / 5.0 * b2 * b2 + 2.0 * r * b1 * b2))
        / (4.0 * q1);
    let a_y = (a0 * a0 + 18.0 * q1 - 28.0 * a1 * a2 + 56.0 / 3.0 * a0 * a2
        + 2170.0 / 9.0 * a2 * a2
        + 70.0 / 9.0 * (b1 * b1 + 539.0 / 15.0 * b2 * b2 - 2.0 * r * b1 * b2))
        / (4.0 * q1);

    let b_x_par = (q1 + 14.0 * a2 * a1 + 49.0 * a2 * a2
        + 140.0 / 9.0 * (b1 * b1 + 77.0 / 5.0 * b2 * b2 + 2.0 * r * b1 * b2))
        / (2.0 * q1);
    let b_y_par = (q1 - 98.0 * a2 * a1 + 273.0 * a2 * a2
        + 245.0 / 9.0 * (b1 * b1 + 55.0 / 3.0 * b2 * b2 + 2.0 * (55.0f64 / 7.0).sqrt() * b1 * b2))
        / (4.0 * q1);
    let b_x_orth = (q1 - 14.0 * a2 * a1 + 105.0 * a2 * a2
        + 140.0 / 9.0 * (b1 * b1 + 539.0 / 15.0 * b2 * b2 - 2.0 * r * b1 * b2))
        / (4.0 * q1);
    let b_y_orth = (q1 + 56.0 * a2 * a1 - 35.0 * a2 * a2
        + 175.0 / 18.0 * (b1 * b1 + 693.0 / 25.0 * b2 * b2 - 2.0 / 5.0 * r * b1 * b2))
        / (2.0 * q1);

    let c_x_par = (q1 + 14.0 * a2 * a1 + 49.0 * a2 * a2
        + 560.0 / 9.0 * (b1 * b1 + 77.0 / 5.0 * b2 * b2 + 2.0 * r * b1 * b2))
        / q1;
    let c_y_par = (4.0 * q1 + 308.0 * a2 * a2
        + 35.0 / 6.0 * (b1 * b1 + 1001.0 / 45.0 * b2 * b2 + 2.0 / 3.0 * r * b1 * b2))
        / q1;
    let orth_b = 175.0 / 18.0 * (b1 * b1 + 693.0 / 25.0 * b2 * b2 - 2.0 / 5.0 * r * b1 * b2);
    let c_x_orth = (q1 - 14.0 * a2 * a1 + 161.0 * a2 * a2
        + 560.0 / 9.0 * (b1 * b1 + 539.0 / 15.0 * b2 * b2 - 2.0 * r * b1 * b2))
        / (2.0 * q1);
    let c_y_orth = (9.0 * q1 - 14.0 * a2 * a1 + 63.0 * a2 * a2 + orth_b) / (2.0 * q1);
    let c_z_orth = (q1 + 14.0 * a2 * a1 + 651.0 * a2 * a2 + orth_b) / (2.0 * q1);

    let b = ByOrientation::from_fn(|o, axis| match (o, axis) {
        (Orientation::Parallel, Axis::X) => b_x_par,
        (Orientation::Parallel, _) => b_y_par,
        (Orientation::Orthogonal, Axis::Y) => b_y_orth,
        (Orientation::Orthogonal, _) => b_x_orth,
    });
    let c = ByOrientation::from_fn(|o, axis| match (o, axis) {
        (Orientation::Parallel, Axis::X) => c_x_par,
        (Orientation::Parallel, _) => c_y_par,
        (Orientation::Orthogonal, Axis::X) => c_x_orth,
        (Orientation::Orthogonal, Axis::Y) => c_y_orth,
        (Orientation::Orthogonal, Axis::Z) => c_z_orth,
    });

    // raw quantities follow by undoing the F a1^2 normalization
    let norm = 4.0 * q1;
    let alpha2 = Alpha2Cartesian {
        xx: a_x * norm,
        yy: a_y * norm,
        xy: 0.0,
    };
    let xi = ByOrientation::from_fn(|o, a| b.get(o, a) * norm);
    let zeta2 = ByOrientation::from_fn(|o, a| c.get(o, a) * norm);
    let out = ScatteringCoeffs::from_raw(t.detuning, HalfInt::int(4), a1, alpha2, xi, zeta2)?;
    debug_assert!((out.a_x - a_x).abs() <= 1e-12 * a_x.abs());
    Ok(out)
}
