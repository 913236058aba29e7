//! Solving the unit-gain constraint kappa_A = 1 and maximizing the memory
//! fidelity over detuning at fixed optical depth.

use crate::atom::AtomSpec;
use crate::dynamics::{ideal_fidelity, MemoryResult, PhotonRatio, ProtocolConfig, ProtocolModel};
use crate::error::{Error, Result};
use crate::polarizability::Detuning;
use crate::scatter::{Axis, Orientation};
use crate::wigner::HalfInt;

pub const KAPPA_MAX: f64 = 10.0;
pub const KAPPA_TOL: f64 = 1e-10;
/// Bracketing scan resolution on [0, kappa_max].
const KAPPA_SCAN: usize = 400;

/// Smallest kappa in (0, kappa_max] with kappa_A(kappa) = 1.
pub fn solve_kappa(model: &ProtocolModel) -> Result<f64> {
    solve_kappa_within(model, KAPPA_MAX)
}

pub fn solve_kappa_within(model: &ProtocolModel, kappa_max: f64) -> Result<f64> {
    if !(kappa_max.is_finite() && kappa_max > 0.0) {
        return Err(Error::InvalidInput(format!("kappa_max {kappa_max} must be positive")));
    }
    let excess = |k: f64| model.kappa_a(k).map(|a| a - 1.0);
    // kappa_A(0) = 0, so the first sign change on the scan brackets the root
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=KAPPA_SCAN {
        let k = kappa_max * i as f64 / KAPPA_SCAN as f64;
        if excess(k)? >= 0.0 {
            hi = Some(k);
            break;
        }
        lo = k;
    }
    let Some(mut hi) = hi else {
        return Err(Error::NoSolution(format!(
            "kappa_A < 1 for every kappa <= {kappa_max} (d = {}, Delta = {} MHz): optical depth too low",
            model.config.optical_depth,
            model.config.detuning.mhz()
        )));
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let e = excess(mid)?;
        if e.abs() < 1e-3 * KAPPA_TOL {
            return Ok(mid);
        }
        if e < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let k = 0.5 * (lo + hi);
    let e = excess(k)?;
    if e.abs() >= KAPPA_TOL {
        return Err(Error::Internal(format!(
            "bisection stalled at kappa = {k} with residual {e:e}"
        )));
    }
    Ok(k)
}

/// Which side of the line the detuning search covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    /// Delta < 0, beyond the highest excited level. No poles.
    #[default]
    Blue,
    /// Delta > 0; crosses the excited-level poles, which count as infeasible.
    Red,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Blue => -1.0,
            Side::Red => 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    pub atom: AtomSpec,
    pub f: HalfInt,
    pub optical_depth: f64,
    pub orientation: Orientation,
    pub photon_ratio: PhotonRatio,
    pub side: Side,
    /// search range in log10 |Delta / MHz|
    pub log_range: (f64, f64),
    pub scan_points: usize,
    /// fidelity tolerance
    pub tol: f64,
}

impl OptimizeOptions {
    pub fn new(atom: AtomSpec, f: HalfInt, optical_depth: f64, orientation: Orientation) -> Self {
        OptimizeOptions {
            atom,
            f,
            optical_depth,
            orientation,
            photon_ratio: PhotonRatio::Coupled,
            side: Side::Blue,
            log_range: (2.0, 7.0),
            scan_points: 32,
            tol: 1e-6,
        }
    }

    fn config(&self, detuning: f64) -> ProtocolConfig {
        ProtocolConfig {
            atom: self.atom.clone(),
            f: self.f,
            detuning: Detuning::Mhz(detuning),
            optical_depth: self.optical_depth,
            photon_ratio: self.photon_ratio,
            orientation: self.orientation,
            kappa: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.log_range;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("bad detuning range 10^{a} .. 10^{b}")));
        }
        if self.scan_points < 3 {
            return Err(Error::InvalidInput("need at least 3 scan points".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        self.config(-1.0e6).validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumPoint {
    pub d: f64,
    pub detuning: f64,
    /// N_p / N_a at the optimum
    pub ratio: f64,
    pub kappa: f64,
    pub fidelity: f64,
    pub memory: MemoryResult,
}

/// Close to resonance some B coefficients, or the canonical combinations
/// B_y - B_x/2 and B_z - B_x/2, turn negative. The unit-gain constraint is
/// then met through spurious spin gain, so such detunings are rejected.
fn check_decay_signs(model: &ProtocolModel) -> Result<()> {
    let c = &model.coeffs;
    let o = model.config.orientation;
    let named = [
        ("A_x", c.a_x),
        ("A_y", c.a_y),
        ("B_x", c.b.get(o, Axis::X)),
        ("B_y", c.b.get(o, Axis::Y)),
        ("B_z", c.b.get(o, Axis::Z)),
        ("B_y - B_x/2", c.b.get(o, Axis::Y) - c.b.get(o, Axis::X) / 2.0),
        ("B_z - B_x/2", c.b.get(o, Axis::Z) - c.b.get(o, Axis::X) / 2.0),
    ];
    match named.iter().find(|(_, v)| *v < 0.0) {
        Some((name, v)) => Err(Error::Domain(format!(
            "{name} = {v:.6} < 0 at Delta = {} MHz; the decay model does not apply",
            model.config.detuning.mhz()
        ))),
        None => Ok(()),
    }
}

/// Memory run at one detuning with kappa solved for kappa_A = 1.
pub fn evaluate(opts: &OptimizeOptions, detuning: f64) -> Result<OptimumPoint> {
    let model = ProtocolModel::new(opts.config(detuning))?;
    check_decay_signs(&model)?;
    let kappa = solve_kappa(&model)?;
    let memory = model.run(kappa)?;
    Ok(OptimumPoint {
        d: opts.optical_depth,
        detuning,
        ratio: model.with_kappa(kappa).photon_ratio_value(&model.coeffs),
        kappa,
        fidelity: memory.fidelity,
        memory,
    })
}

/// Maximizes fidelity over log |Delta|: a coarse scan picks the lobe,
/// golden-section refines it.
pub fn optimize_fidelity(opts: &OptimizeOptions) -> Result<OptimumPoint> {
    opts.validate()?;
    let sign = opts.side.sign();
    let at = |x: f64| -> Result<Option<OptimumPoint>> {
        match evaluate(opts, sign * 10f64.powf(x)) {
            Ok(p) => Ok(Some(p)),
            Err(Error::NoSolution(_) | Error::Pole { .. } | Error::Domain(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let score = |p: &Option<OptimumPoint>| p.as_ref().map_or(f64::NEG_INFINITY, |p| p.fidelity);

    let (x0, x1) = opts.log_range;
    let n = opts.scan_points;
    let xs: Vec<f64> = (0..n).map(|i| x0 + (x1 - x0) * i as f64 / (n - 1) as f64).collect();
    let mut scan = Vec::with_capacity(n);
    for &x in &xs {
        scan.push(at(x)?);
    }
    let top = scan.iter().map(&score).fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Err(Error::NoSolution(format!(
            "kappa_A = 1 cannot be met at d = {} anywhere in the detuning range",
            opts.optical_depth
        )));
    }
    // ties go to the larger |Delta|
    let i = (0..n).rev().find(|&i| score(&scan[i]) >= top - opts.tol).unwrap();
    let mut best = scan[i].unwrap();

    let (mut a, mut b) = (xs[i.saturating_sub(1)], xs[(i + 1).min(n - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut pc, mut pd) = (at(c)?, at(d)?);
    while b - a > 1e-6 {
        if score(&pc) > score(&pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - g * (b - a);
            pc = at(c)?;
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + g * (b - a);
            pd = at(d)?;
        }
    }
    for p in [pc, pd].into_iter().flatten() {
        if p.fidelity > best.fidelity {
            best = p;
        }
    }
    debug_assert!(best.fidelity <= ideal_fidelity() + 1e-12);
    Ok(best)
}
