//! Scalar, vector and rank-2 parts of the ground-state polarizability.

use crate::atom::AtomSpec;
use crate::error::{Error, Result};
use crate::wigner::{wigner_6j, HalfInt};

/// Minimum distance (MHz) kept from any resonance.
pub const POLE_GUARD_MHZ: f64 = 0.5;

/// Detuning from the reference excited level, in MHz. Negative is blue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detuning {
    Mhz(f64),
    /// The |Delta| -> infinity limit: every resonance factor is 1.
    Infinite,
}

impl From<f64> for Detuning {
    fn from(d: f64) -> Self {
        Detuning::Mhz(d)
    }
}

impl Detuning {
    pub fn mhz(self) -> f64 {
        match self {
            Detuning::Mhz(d) => d,
            Detuning::Infinite => f64::NEG_INFINITY,
        }
    }

    /// 1 / (1 - delta/Delta)
    pub fn resonance_factor(self, splitting_mhz: f64) -> f64 {
        match self {
            Detuning::Mhz(d) => 1.0 / (1.0 - splitting_mhz / d),
            Detuning::Infinite => 1.0,
        }
    }

    pub fn check(self, atom: &AtomSpec) -> Result<()> {
        let Detuning::Mhz(d) = self else {
            return Ok(());
        };
        if !d.is_finite() {
            return Err(Error::InvalidInput(format!("detuning {d} is not finite")));
        }
        for level in atom.excited_levels() {
            if (d - level.splitting_mhz).abs() < POLE_GUARD_MHZ {
                return Err(Error::Pole {
                    f_prime: level.f,
                    detuning: d,
                });
            }
        }
        Ok(())
    }
}

pub fn c_coeff(k: u32, f: HalfInt) -> Result<f64> {
    let fv = f.value();
    if fv < 0.5 {
        return Err(Error::Domain(format!("c_k needs F >= 1/2, got {f}")));
    }
    match k {
        0 => Ok(1.0),
        1 => Ok(1.0 / (2.0 * fv * (fv + 1.0)).sqrt()),
        2 if fv >= 1.0 => {
            let d = 10.0 * fv * (fv + 1.0) * (2.0 * fv - 1.0) * (2.0 * fv + 3.0);
            Ok(3.0 / d.sqrt())
        }
        2 => Err(Error::Domain(format!("c_2 is undefined for F = {f}"))),
        _ => Err(Error::Domain(format!("rank k = {k} is not 0, 1 or 2"))),
    }
}

fn check_manifolds(atom: &AtomSpec, f: HalfInt, f_tilde: HalfInt) -> Result<()> {
    for x in [f, f_tilde] {
        if !atom.is_ground_manifold(x) {
            return Err(Error::Domain(format!("F = {x} is not a ground manifold of {}", atom.name())));
        }
    }
    Ok(())
}

/// a_k^{F F~} divided by c_k(F). This is the weight that multiplies the
/// pair of CG coefficients in a matrix element, and it stays defined where
/// c_k is not (k = 2 on F = 1/2).
pub fn reduced_coeff(
    atom: &AtomSpec,
    f: HalfInt,
    f_tilde: HalfInt,
    k: u32,
    detuning: Detuning,
) -> Result<f64> {
    check_manifolds(atom, f, f_tilde)?;
    if k > 2 {
        return Err(Error::Domain(format!("rank k = {k} is not 0, 1 or 2")));
    }
    detuning.check(atom)?;
    let (i, j, jp) = (atom.nuclear_spin(), atom.ground_j(), atom.excited_j());
    let kk = HalfInt::int(k as i32);
    let one = HalfInt::ONE;
    let mut sum = 0.0;
    for level in atom.excited_levels() {
        let fp = level.f;
        let w = wigner_6j(jp, fp, i, f, j, one)
            * wigner_6j(jp, fp, i, f_tilde, j, one)
            * wigner_6j(f, kk, f_tilde, one, fp, one);
        if w == 0.0 {
            continue;
        }
        // (-1)^F (-1)^F' combined so half-integer F stays real
        sum += (f + fp).phase() * fp.multiplicity() * detuning.resonance_factor(level.splitting_mhz) * w;
    }
    Ok(-((2 * k + 1) as f64) * (f.multiplicity() / 3.0).sqrt() * sum)
}

pub fn a_coeff(
    atom: &AtomSpec,
    f: HalfInt,
    f_tilde: HalfInt,
    k: u32,
    detuning: impl Into<Detuning>,
) -> Result<f64> {
    let detuning = detuning.into();
    let c = c_coeff(k, f)?;
    Ok(c * reduced_coeff(atom, f, f_tilde, k, detuning)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorCoeffs {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub detuning: Detuning,
}

/// The other ground manifold used for the b channel: F - 1 when it exists,
/// otherwise F + 1.
pub fn partner_manifold(atom: &AtomSpec, f: HalfInt) -> Option<HalfInt> {
    [f - HalfInt::ONE, f + HalfInt::ONE]
        .into_iter()
        .find(|&x| atom.is_ground_manifold(x))
}

pub fn tensor_coeffs(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<TensorCoeffs> {
    let detuning = detuning.into();
    check_manifolds(atom, f, f)?;
    detuning.check(atom)?;
    // the rank-2 operator does not exist on F = 1/2
    let rank2 = f.twice() >= 2;
    let a = |f_tilde, k| -> Result<f64> {
        if k == 2 && !rank2 {
            return Ok(0.0);
        }
        a_coeff(atom, f, f_tilde, k, detuning)
    };
    let (b1, b2) = match partner_manifold(atom, f) {
        Some(ft) => (a(ft, 1)?, a(ft, 2)?),
        None => (0.0, 0.0),
    };
    Ok(TensorCoeffs {
        a0: a(f, 0)?,
        a1: a(f, 1)?,
        a2: a(f, 2)?,
        b1,
        b2,
        detuning,
    })
}

pub fn asymptotic_coeffs(atom: &AtomSpec, f: HalfInt) -> Result<TensorCoeffs> {
    tensor_coeffs(atom, f, Detuning::Infinite)
}
