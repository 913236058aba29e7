//! Direct-mapping quantum memory with decay: rates, transfer gains,
//! Gaussian variance propagation and fidelity.
//!
//! Mode labels: x is the strong classical pulse, y the quantum mode. In the
//! parallel geometry the strong pulse is polarized along the spin (lab x);
//! in the orthogonal geometry it is polarized along lab y, so the quantum
//! mode then has the polarization of the spin.

mod meanfield;

pub use meanfield::mean_field_rotation;

use crate::atom::AtomSpec;
use crate::error::{Error, Result};
use crate::polarizability::Detuning;
use crate::scatter::{Axis, Orientation, ScatteringCoeffs};
use crate::wigner::HalfInt;

/// sqrt(2/3), the ideal direct-mapping fidelity for coherent states.
pub fn ideal_fidelity() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

/// How the photon-to-atom ratio r = N_p / N_a is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhotonRatio {
    /// r follows from kappa, d and Delta through the scattering cross
    /// section: kappa^2 = (F/8) a1^2 d^2 (gamma/Delta)^2 r.
    Coupled,
    /// r held at the given value.
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    pub atom: AtomSpec,
    pub f: HalfInt,
    pub detuning: Detuning,
    pub optical_depth: f64,
    pub photon_ratio: PhotonRatio,
    pub orientation: Orientation,
    pub kappa: f64,
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.optical_depth.is_finite() && self.optical_depth > 0.0) {
            return Err(Error::InvalidInput(format!(
                "optical depth {} must be positive",
                self.optical_depth
            )));
        }
        if let PhotonRatio::Fixed(r) = self.photon_ratio {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidInput(format!("photon ratio {r} must be positive")));
            }
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(Error::InvalidInput(format!("kappa {} must be >= 0", self.kappa)));
        }
        if !self.atom.is_ground_manifold(self.f) {
            return Err(Error::InvalidInput(format!("F = {} is not a ground manifold", self.f)));
        }
        self.detuning.check(&self.atom)
    }

    fn strong_axis(&self) -> Axis {
        match self.orientation {
            Orientation::Parallel => Axis::X,
            Orientation::Orthogonal => Axis::Y,
        }
    }

    fn quantum_axis(&self) -> Axis {
        match self.orientation {
            Orientation::Parallel => Axis::Y,
            Orientation::Orthogonal => Axis::X,
        }
    }

    /// (gamma/Delta)^2 with gamma = (2J'+1) gamma_rad.
    fn scattering_ratio(&self) -> f64 {
        match self.detuning {
            Detuning::Mhz(d) => (self.atom.gamma_mhz() / d).powi(2),
            Detuning::Infinite => 0.0,
        }
    }

    /// 2 (kappa^2/d) / r, the prefactor of the light decay.
    fn light_prefactor(&self, coeffs: &ScatteringCoeffs) -> f64 {
        let k2d = self.kappa * self.kappa / self.optical_depth;
        match self.photon_ratio {
            PhotonRatio::Fixed(r) => 2.0 * k2d / r,
            PhotonRatio::Coupled => {
                let fa = self.f.value() * coeffs.a1 * coeffs.a1;
                fa * self.optical_depth * self.scattering_ratio() / 4.0
            }
        }
    }

    /// N_p / N_a implied by the configuration.
    pub fn photon_ratio_value(&self, coeffs: &ScatteringCoeffs) -> f64 {
        match self.photon_ratio {
            PhotonRatio::Fixed(r) => r,
            PhotonRatio::Coupled => {
                let fa = self.f.value() * coeffs.a1 * coeffs.a1;
                let d = self.optical_depth;
                8.0 * self.kappa * self.kappa / (fa * d * d * self.scattering_ratio())
            }
        }
    }
}

/// Pulse-integrated decay rates and atomic Langevin noise.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DecayRates {
    /// gamma_x: strong pulse
    pub light_x: f64,
    /// gamma_y: quantum mode
    pub light_y: f64,
    pub spin_x: f64,
    pub spin_y: f64,
    pub spin_z: f64,
    /// Gamma_X = Gamma_y - Gamma_x / 2
    pub canonical_x: f64,
    /// Gamma_P = Gamma_z - Gamma_x / 2
    pub canonical_p: f64,
    /// <F_X^2>
    pub noise_x: f64,
    /// <F_P^2>
    pub noise_p: f64,
}

impl DecayRates {
    pub fn zero() -> Self {
        DecayRates::default()
    }

    /// Build from the five rates and two noises; fills in Gamma_X, Gamma_P.
    pub fn new(light: [f64; 2], spin: [f64; 3], noise: [f64; 2]) -> Self {
        DecayRates {
            light_x: light[0],
            light_y: light[1],
            spin_x: spin[0],
            spin_y: spin[1],
            spin_z: spin[2],
            canonical_x: spin[1] - spin[0] / 2.0,
            canonical_p: spin[2] - spin[0] / 2.0,
            noise_x: noise[0],
            noise_p: noise[1],
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        DecayRates::new(
            [self.light_x * s, self.light_y * s],
            [self.spin_x * s, self.spin_y * s, self.spin_z * s],
            [self.noise_x * s, self.noise_p * s],
        )
    }
}

pub fn decay_rates(config: &ProtocolConfig, coeffs: &ScatteringCoeffs) -> Result<DecayRates> {
    config.validate()?;
    if coeffs.f != config.f || coeffs.detuning != config.detuning {
        return Err(Error::InvalidInput(
            "scattering coefficients were computed for another F or detuning".into(),
        ));
    }
    let k2d = config.kappa * config.kappa / config.optical_depth;
    let light = config.light_prefactor(coeffs);
    let o = config.orientation;
    let f = config.f.value();
    Ok(DecayRates::new(
        [
            light * coeffs.a(config.strong_axis()),
            light * coeffs.a(config.quantum_axis()),
        ],
        [
            k2d * coeffs.b.get(o, Axis::X),
            k2d * coeffs.b.get(o, Axis::Y),
            k2d * coeffs.b.get(o, Axis::Z),
        ],
        [
            2.0 / f * k2d * coeffs.c.get(o, Axis::Y),
            2.0 / f * k2d * coeffs.c.get(o, Axis::Z),
        ],
    ))
}

/// (1 - e^-x)/x
pub fn h(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0
    } else {
        -(-x).exp_m1() / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferGains {
    pub kappa_l: f64,
    pub kappa_a: f64,
}

pub fn transfer_gains(rates: &DecayRates, kappa: f64) -> TransferGains {
    let r = rates;
    TransferGains {
        kappa_l: kappa
            * h((r.spin_x + 2.0 * r.canonical_p) / 2.0)
            * h((r.light_x - r.light_y) / 2.0)
            * (-r.light_y / 2.0).exp(),
        kappa_a: kappa
            * h((r.spin_x - 2.0 * r.canonical_x) / 2.0)
            * h((r.light_x + r.light_y) / 2.0)
            * (-r.canonical_x).exp(),
    }
}

/// Output means of the stored atomic quadratures as linear maps of the inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanMap {
    /// X_A^out = x_from_p_light P_L + x_from_x_atom X_A
    pub x_from_p_light: f64,
    pub x_from_x_atom: f64,
    /// P_A'^out = p_from_x_light X_L + p_from_p_atom P_A
    pub p_from_x_light: f64,
    pub p_from_p_atom: f64,
}

impl MeanMap {
    /// (X_A^out, P_A'^out) for input means (X_L, P_L, X_A, P_A).
    pub fn apply(&self, x_light: f64, p_light: f64, x_atom: f64, p_atom: f64) -> (f64, f64) {
        (
            self.x_from_p_light * p_light + self.x_from_x_atom * x_atom,
            self.p_from_x_light * x_light + self.p_from_p_atom * p_atom,
        )
    }
}

/// Noise variances of the four input-output channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelNoise {
    pub x_light: f64,
    pub p_light: f64,
    pub x_atom: f64,
    pub p_atom: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryResult {
    pub kappa: f64,
    pub kappa_l: f64,
    pub kappa_a: f64,
    /// feedback gain nu = e^{gamma_y/2}
    pub nu: f64,
    pub rates: DecayRates,
    pub means: MeanMap,
    pub noise: ChannelNoise,
    pub var_x: f64,
    pub var_p: f64,
    pub fidelity: f64,
}

/// Propagates coherent inputs (variance 1/2) through storage and feedback.
pub fn propagate_memory(kappa: f64, rates: &DecayRates, gains: &TransferGains) -> Result<MemoryResult> {
    let r = rates;
    let nu = (r.light_y / 2.0).exp();
    let k2 = kappa * kappa;
    let noise = ChannelNoise {
        x_light: r.light_y / 2.0 + k2 / 3.0 * r.noise_p,
        p_light: r.light_y / 2.0,
        x_atom: r.noise_x + k2 / 6.0 * r.light_y,
        p_atom: r.noise_p,
    };
    let means = MeanMap {
        x_from_p_light: gains.kappa_a,
        x_from_x_atom: (-r.canonical_x).exp(),
        p_from_x_light: -nu * (-r.light_y / 2.0).exp(),
        p_from_p_atom: (-r.canonical_p).exp() - nu * gains.kappa_l,
    };
    let var_x = (-2.0 * r.canonical_x).exp() / 2.0 + gains.kappa_a.powi(2) / 2.0 + noise.x_atom;
    let var_p = means.p_from_p_atom.powi(2) / 2.0
        + nu * nu * (-r.light_y).exp() / 2.0
        + noise.p_atom
        + nu * nu * noise.x_light;
    if !(var_x >= 0.0 && var_p >= 0.0) || !var_x.is_finite() || !var_p.is_finite() {
        return Err(Error::Internal(format!(
            "output variances ({var_x}, {var_p}) are not non-negative; decay inputs are inconsistent"
        )));
    }
    let fidelity = 1.0 / ((0.5 + var_x) * (0.5 + var_p)).sqrt();
    Ok(MemoryResult {
        kappa,
        kappa_l: gains.kappa_l,
        kappa_a: gains.kappa_a,
        nu,
        rates: *rates,
        means,
        noise,
        var_x,
        var_p,
        fidelity,
    })
}

/// First-order fidelity for small decay, assuming kappa_A = 1.
pub fn fidelity_approx(rates: &DecayRates) -> f64 {
    let r = rates;
    ideal_fidelity()
        * (1.0 - 11.0 / 36.0 * r.light_y - (r.noise_x + 2.0 * r.noise_p - r.canonical_x) / 3.0)
}

/// Coefficients of the fidelity deficit,
/// F ~ sqrt(2/3) (1 - c_L (gamma/Delta)^2 d - c_A / d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficitCoeffs {
    pub c_l: f64,
    pub c_a: f64,
}

pub fn deficit_coefficients(coeffs: &ScatteringCoeffs, orientation: Orientation) -> DeficitCoeffs {
    let f = coeffs.f.value();
    let fa = f * coeffs.a1;
    let o = orientation;
    let quantum = match o {
        Orientation::Parallel => coeffs.alpha2.yy,
        Orientation::Orthogonal => coeffs.alpha2.xx,
    };
    let bracket = coeffs.zeta2.get(o, Axis::Y) + 2.0 * coeffs.zeta2.get(o, Axis::Z)
        - f / 2.0 * (coeffs.xi.get(o, Axis::Y) - coeffs.xi.get(o, Axis::X) / 2.0);
    DeficitCoeffs {
        c_l: 11.0 / 12.0 * quantum / (f * coeffs.a1 * coeffs.a1),
        c_a: 2.0 / (3.0 * fa * fa) * bracket,
    }
}

/// A configuration with its scattering coefficients computed once, so
/// that kappa can be varied cheaply.
#[derive(Debug, Clone)]
pub struct ProtocolModel {
    pub config: ProtocolConfig,
    pub coeffs: ScatteringCoeffs,
}

impl ProtocolModel {
    pub fn new(config: ProtocolConfig) -> Result<Self> {
        config.validate()?;
        let coeffs = crate::scatter::assemble(&config.atom, config.f, config.detuning)?;
        Ok(ProtocolModel { config, coeffs })
    }

    pub fn with_kappa(&self, kappa: f64) -> ProtocolConfig {
        ProtocolConfig {
            kappa,
            ..self.config.clone()
        }
    }

    pub fn rates(&self, kappa: f64) -> Result<DecayRates> {
        decay_rates(&self.with_kappa(kappa), &self.coeffs)
    }

    pub fn kappa_a(&self, kappa: f64) -> Result<f64> {
        Ok(transfer_gains(&self.rates(kappa)?, kappa).kappa_a)
    }

    pub fn run(&self, kappa: f64) -> Result<MemoryResult> {
        let rates = self.rates(kappa)?;
        propagate_memory(kappa, &rates, &transfer_gains(&rates, kappa))
    }
}
