//! Spontaneous-emission coefficients for a spin pumped into |F, F> along x.
//!
//! Lab frame: the spin (and quantization axis) points along x, light
//! propagates along z. In spherical components lab x is e_0, lab y is
//! (e_-1 - e_+1)/sqrt 2 and lab z is i (e_-1 + e_+1)/sqrt 2.
//!
//! Everything is normalized by F a1^2:
//! A = <alpha^2>/(F a1^2), B = Xi/(F a1^2), C = <zeta^2>/(F a1^2).

mod closed_form;
mod engine;

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::atom::AtomSpec;
use crate::error::{Error, Result};
use crate::polarizability::{c_coeff, Detuning};
use crate::wigner::HalfInt;

pub use closed_form::closed_form_cs;
use engine::Engine;

const IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// light polarized along the spin
    Parallel,
    /// light polarized along y, spin along x
    Orthogonal,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Parallel, Orientation::Orthogonal];

    fn polarization(self) -> Axis {
        match self {
            Orientation::Parallel => Axis::X,
            Orientation::Orthogonal => Axis::Y,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Parallel => "par",
            Orientation::Orthogonal => "orth",
        })
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "par" | "parallel" => Ok(Orientation::Parallel),
            "orth" | "orthogonal" | "perp" => Ok(Orientation::Orthogonal),
            _ => Err(Error::InvalidInput(format!(
                "orientation {s:?}: only 'par' and 'orth' are supported"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Expansion coefficients over spherical components -1, 0, +1.
    fn spherical(self) -> [Complex64; 3] {
        let z = Complex64::new(0.0, 0.0);
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        match self {
            Axis::X => [z, Complex64::new(1.0, 0.0), z],
            Axis::Y => [r, z, -r],
            Axis::Z => [i, z, i],
        }
    }
}

/// 3x3 array over spherical indices p, q in {-1, 0, +1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalMatrix {
    entries: [[Complex64; 3]; 3],
}

impl SphericalMatrix {
    fn from_fn(mut f: impl FnMut(i32, i32) -> Complex64) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (a, row) in entries.iter_mut().enumerate() {
            for (b, x) in row.iter_mut().enumerate() {
                *x = f(a as i32 - 1, b as i32 - 1);
            }
        }
        SphericalMatrix { entries }
    }

    pub fn get(&self, p: i32, q: i32) -> Complex64 {
        self.entries[(p + 1) as usize][(q + 1) as usize]
    }

    /// e* . M . e for a lab-frame polarization axis.
    pub fn project(&self, pol: Axis) -> Complex64 {
        let c = pol.spherical();
        let mut sum = Complex64::new(0.0, 0.0);
        for p in 0..3 {
            for q in 0..3 {
                sum += c[p].conj() * c[q] * self.entries[p][q];
            }
        }
        sum
    }
}

/// Spherical matrices for every pair of spin components (mu, nu).
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentTable {
    m: [[SphericalMatrix; 3]; 3],
}

impl ComponentTable {
    pub fn get(&self, mu: i32, nu: i32) -> &SphericalMatrix {
        &self.m[(mu + 1) as usize][(nu + 1) as usize]
    }

    /// <O_a O_b> for lab axes a, b, projected on a polarization.
    pub fn cartesian(&self, a: Axis, b: Axis, pol: Axis) -> Complex64 {
        let (ua, ub) = (a.spherical(), b.spherical());
        let mut sum = Complex64::new(0.0, 0.0);
        for mu in 0..3 {
            for nu in 0..3 {
                if ua[mu].norm() == 0.0 || ub[nu].norm() == 0.0 {
                    continue;
                }
                sum += ua[mu] * ub[nu] * self.m[mu][nu].project(pol);
            }
        }
        sum
    }
}

fn real(z: Complex64, what: &'static str) -> Result<f64> {
    if z.im.abs() > IMAG_TOL * z.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            what,
            residue: z.im,
        });
    }
    Ok(z.re)
}

fn engine(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<Engine> {
    let detuning = detuning.into();
    detuning.check(atom)?;
    Engine::new(atom, f, detuning)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn alpha2_spherical(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<SphericalMatrix> {
    let eng = engine(atom, f, detuning)?;
    Ok(alpha2_matrix(&eng))
}

fn alpha2_matrix(eng: &Engine) -> SphericalMatrix {
    let e = eng.stretched();
    SphericalMatrix::from_fn(|p, q| {
        if p != q {
            return re(0.0);
        }
        re(eng.alpha2(e, e, p, q))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha2Cartesian {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
}

pub fn alpha2_cartesian(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<Alpha2Cartesian> {
    alpha2_from_matrix(&alpha2_spherical(atom, f, detuning)?)
}

fn alpha2_from_matrix(m: &SphericalMatrix) -> Result<Alpha2Cartesian> {
    let xx = m.get(0, 0);
    let yy = (m.get(-1, -1) + m.get(1, 1)) * 0.5;
    // x* . M . y with y = (e_-1 - e_+1)/sqrt 2
    let xy = (m.get(0, -1) - m.get(0, 1)) * FRAC_1_SQRT_2;
    Ok(Alpha2Cartesian {
        xx: real(xx, "<alpha^2>_xx")?,
        yy: real(yy, "<alpha^2>_yy")?,
        xy: real(xy, "<alpha^2>_xy")?,
    })
}

/// <zeta_mu zeta_nu>_pq with zeta_mu = i [alpha, j_mu].
pub fn zeta2(
    atom: &AtomSpec,
    f: HalfInt,
    detuning: impl Into<Detuning>,
    mu: i32,
    nu: i32,
) -> Result<SphericalMatrix> {
    check_component(mu)?;
    check_component(nu)?;
    let eng = engine(atom, f, detuning)?;
    Ok(zeta2_matrix(&eng, mu, nu))
}

fn check_component(mu: i32) -> Result<()> {
    if (-1..=1).contains(&mu) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("spherical index {mu} outside -1..=1")))
    }
}

fn zeta2_matrix(eng: &Engine, mu: i32, nu: i32) -> SphericalMatrix {
    let e = eng.stretched();
    let i = Complex64::new(0.0, 1.0);
    SphericalMatrix::from_fn(|p, q| {
        // |F F> must be returned to itself
        if p - q != mu + nu {
            return re(0.0);
        }
        let mut sum = re(0.0);
        for s in -1..=1 {
            for c in eng.all_states() {
                let left = eng.commutator(e, c, p, s, mu);
                if left == 0.0 {
                    continue;
                }
                let right = eng.commutator(c, e, s, q, nu);
                sum += (i * left) * (i * right);
            }
        }
        sum
    })
}

fn zeta2_table(eng: &Engine) -> ComponentTable {
    let m = std::array::from_fn(|a| std::array::from_fn(|b| zeta2_matrix(eng, a as i32 - 1, b as i32 - 1)));
    ComponentTable { m }
}

/// <xi_mu j_nu>_pq for every (mu, nu).
pub fn xi_j_table(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<ComponentTable> {
    let eng = engine(atom, f, detuning)?;
    Ok(xi_table(&eng))
}

fn xi_table(eng: &Engine) -> ComponentTable {
    let m = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let (mu, nu) = (a as i32 - 1, b as i32 - 1);
            SphericalMatrix::from_fn(|p, q| {
                if p - q != mu + nu {
                    return re(0.0);
                }
                re(eng.xi_j(p, q, mu, nu))
            })
        })
    });
    ComponentTable { m }
}

/// Values per orientation and axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ByOrientation {
    values: [[f64; 3]; 2],
}

impl ByOrientation {
    pub fn get(&self, orientation: Orientation, axis: Axis) -> f64 {
        self.values[orientation.index()][axis as usize]
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        ByOrientation {
            values: self.values.map(|row| row.map(&f)),
        }
    }

    pub(crate) fn from_fn(mut f: impl FnMut(Orientation, Axis) -> f64) -> Self {
        let mut values = [[0.0; 3]; 2];
        for o in Orientation::BOTH {
            for a in Axis::ALL {
                values[o.index()][a as usize] = f(o, a);
            }
        }
        ByOrientation { values }
    }
}

fn project(m: &SphericalMatrix, o: Orientation) -> Complex64 {
    m.project(o.polarization())
}

/// Xi_i = <xi_i j_i>/<j_i^2> with <j_x^2> = F^2 and <j_y^2> = <j_z^2> = F/2.
fn xi_from_table(t: &ComponentTable, f: f64) -> Result<ByOrientation> {
    let mut err = None;
    let out = ByOrientation::from_fn(|o, axis| {
        let pr = |mu, nu| project(t.get(mu, nu), o);
        let v = match axis {
            Axis::X => pr(0, 0) / (f * f),
            Axis::Y => (pr(-1, -1) - pr(-1, 1) - pr(1, -1) + pr(1, 1)) / f,
            Axis::Z => -(pr(-1, -1) + pr(-1, 1) + pr(1, -1) + pr(1, 1)) / f,
        };
        real(v, "Xi").unwrap_or_else(|e| {
            err.get_or_insert(e);
            f64::NAN
        })
    });
    err.map_or(Ok(out), Err)
}

fn zeta2_from_table(t: &ComponentTable) -> Result<ByOrientation> {
    let mut err = None;
    let out = ByOrientation::from_fn(|o, axis| {
        let pr = |mu, nu| project(t.get(mu, nu), o);
        let v = match axis {
            Axis::X => pr(0, 0),
            Axis::Y => (pr(-1, -1) - pr(-1, 1) - pr(1, -1) + pr(1, 1)) * 0.5,
            Axis::Z => -(pr(-1, -1) + pr(-1, 1) + pr(1, -1) + pr(1, 1)) * 0.5,
        };
        real(v, "<zeta^2>").unwrap_or_else(|e| {
            err.get_or_insert(e);
            f64::NAN
        })
    });
    err.map_or(Ok(out), Err)
}

/// Xi over axis and orientation.
pub fn xi_decay(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<ByOrientation> {
    xi_from_table(&xi_j_table(atom, f, detuning)?, f.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoeffs {
    pub detuning: Detuning,
    pub f: HalfInt,
    pub a1: f64,
    pub a_x: f64,
    pub a_y: f64,
    pub b: ByOrientation,
    pub c: ByOrientation,
    pub alpha2: Alpha2Cartesian,
    pub xi: ByOrientation,
    pub zeta2: ByOrientation,
}

impl ScatteringCoeffs {
    fn from_raw(
        detuning: Detuning,
        f: HalfInt,
        a1: f64,
        alpha2: Alpha2Cartesian,
        xi: ByOrientation,
        zeta2: ByOrientation,
    ) -> Result<Self> {
        if a1 == 0.0 || !a1.is_finite() {
            return Err(Error::Domain(format!("a1 = {a1}: coefficients are normalized by a1^2")));
        }
        let norm = f.value() * a1 * a1;
        Ok(ScatteringCoeffs {
            detuning,
            f,
            a1,
            a_x: alpha2.xx / norm,
            a_y: alpha2.yy / norm,
            b: xi.map(|x| x / norm),
            c: zeta2.map(|x| x / norm),
            alpha2,
            xi,
            zeta2,
        })
    }

    /// Light decay coefficient for a mode polarized along `axis` (x or y).
    pub fn a(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.a_x,
            _ => self.a_y,
        }
    }
}

pub fn assemble(atom: &AtomSpec, f: HalfInt, detuning: impl Into<Detuning>) -> Result<ScatteringCoeffs> {
    let detuning = detuning.into();
    let eng = engine(atom, f, detuning)?;
    let a1 = c_coeff(1, f)? * crate::polarizability::reduced_coeff(atom, f, f, 1, detuning)?;
    let alpha2 = alpha2_from_matrix(&alpha2_matrix(&eng))?;
    let xi = xi_from_table(&xi_table(&eng), f.value())?;
    let zeta2 = zeta2_from_table(&zeta2_table(&eng))?;
    ScatteringCoeffs::from_raw(detuning, f, a1, alpha2, xi, zeta2)
}

/// Both sides of <[zeta_y, zeta_z]> = (i/2)(Xi_y + Xi_z - Xi_x) <j_x>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseCommutator {
    /// Im <[zeta_y, zeta_z]> from the noise matrices.
    pub from_noise: f64,
    /// (F/2)(Xi_y + Xi_z - Xi_x) from the decay contractions.
    pub from_decay: f64,
    /// <{zeta_y, zeta_z}>, which should vanish.
    pub anticommutator: Complex64,
    /// Canonical commutator Im <[F_X, F_P]> in units of kappa^2/d, i.e.
    /// B_y + B_z - B_x = (Gamma_X + Gamma_P) d/kappa^2.
    pub canonical: f64,
    /// The same quantity from the noise side: (2/F) from_noise / (F a1^2).
    pub canonical_from_noise: f64,
}

pub fn noise_commutator(
    atom: &AtomSpec,
    f: HalfInt,
    detuning: impl Into<Detuning>,
    orientation: Orientation,
) -> Result<NoiseCommutator> {
    let detuning = detuning.into();
    let eng = engine(atom, f, detuning)?;
    let fv = f.value();
    let pol = orientation.polarization();

    let z = zeta2_table(&eng);
    let yz = z.cartesian(Axis::Y, Axis::Z, pol);
    let zy = z.cartesian(Axis::Z, Axis::Y, pol);
    let comm = yz - zy;
    if comm.re.abs() > IMAG_TOL * comm.im.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            what: "<[zeta_y, zeta_z]> should be imaginary",
            residue: comm.re,
        });
    }

    let xi = xi_from_table(&xi_table(&eng), fv)?;
    let g = |a| xi.get(orientation, a);
    let from_decay = 0.5 * fv * (g(Axis::Y) + g(Axis::Z) - g(Axis::X));

    let a1 = c_coeff(1, f)? * crate::polarizability::reduced_coeff(atom, f, f, 1, detuning)?;
    let norm = fv * a1 * a1;
    Ok(NoiseCommutator {
        from_noise: comm.im,
        from_decay,
        anticommutator: yz + zy,
        canonical: 2.0 * from_decay / (fv * norm),
        canonical_from_noise: 2.0 * comm.im / (fv * norm),
    })
}
