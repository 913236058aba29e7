//! Atomic level data: spins, hyperfine manifolds, excited-state splittings.
//!
//! The config format is line oriented:
//!
//! ```text
//! [atom]
//! name = Cs133-D2
//! I = 7/2
//! J = 1/2
//! Jp = 3/2
//! F = 4
//! gamma_rad_MHz = 5.234
//! lambda_nm = 852.347
//!
//! [excited]
//! 5 = 0
//! 4 = 251.0916
//! ```
//!
//! Each `[excited]` line maps an F' value to its splitting below the
//! reference level (the one with splitting 0). `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::wigner::{triangle_ok, HalfInt};

const CS133_D2: &str = include_str!("../data/cs133_d2.atom");
const RB87_D2: &str = include_str!("../data/rb87_d2.atom");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitedLevel {
    pub f: HalfInt,
    /// delta_F' in MHz; the detuning from this level is Delta - delta_F'.
    pub splitting_mhz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomSpec {
    name: String,
    nuclear_spin: HalfInt,
    ground_j: HalfInt,
    excited_j: HalfInt,
    ground_f: HalfInt,
    excited_levels: Vec<ExcitedLevel>,
    gamma_rad_mhz: f64,
    lambda_nm: f64,
}

impl AtomSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        nuclear_spin: HalfInt,
        ground_j: HalfInt,
        excited_j: HalfInt,
        ground_f: HalfInt,
        mut excited_levels: Vec<ExcitedLevel>,
        gamma_rad_mhz: f64,
        lambda_nm: f64,
    ) -> Result<Self> {
        excited_levels.sort_by_key(|l| std::cmp::Reverse(l.f));
        let spec = AtomSpec {
            name: name.into(),
            nuclear_spin,
            ground_j,
            excited_j,
            ground_f,
            excited_levels,
            gamma_rad_mhz,
            lambda_nm,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn nuclear_spin(&self) -> HalfInt {
        self.nuclear_spin
    }
    pub fn ground_j(&self) -> HalfInt {
        self.ground_j
    }
    pub fn excited_j(&self) -> HalfInt {
        self.excited_j
    }
    pub fn ground_f(&self) -> HalfInt {
        self.ground_f
    }
    pub fn excited_levels(&self) -> &[ExcitedLevel] {
        &self.excited_levels
    }
    pub fn gamma_rad_mhz(&self) -> f64 {
        self.gamma_rad_mhz
    }
    pub fn lambda_nm(&self) -> f64 {
        self.lambda_nm
    }

    /// Same atom pumped into another ground manifold.
    pub fn with_ground_f(&self, f: HalfInt) -> Result<Self> {
        let mut out = self.clone();
        out.ground_f = f;
        out.validate()?;
        Ok(out)
    }

    /// gamma = (2J'+1) gamma_rad, the rate that multiplies the
    /// single-atom scattering probability.
    pub fn gamma_mhz(&self) -> f64 {
        self.excited_j.multiplicity() * self.gamma_rad_mhz
    }

    /// Resonant cross section 3 lambda^2 / 2 pi, in m^2.
    pub fn cross_section_m2(&self) -> f64 {
        let lambda = self.lambda_nm * 1e-9;
        3.0 * lambda * lambda / (2.0 * std::f64::consts::PI)
    }

    /// F values allowed for the ground state, ascending.
    pub fn ground_manifolds(&self) -> Vec<HalfInt> {
        coupled_range(self.nuclear_spin, self.ground_j)
    }

    pub fn is_ground_manifold(&self, f: HalfInt) -> bool {
        self.ground_manifolds().contains(&f)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        let name = self.name.trim();
        if name.is_empty() || name != self.name || self.name.contains(['\n', '#', '=']) {
            return fail(format!("bad atom name {:?}", self.name));
        }
        if self.nuclear_spin.twice() < 0 {
            return fail("nuclear spin I must be non-negative".into());
        }
        if self.ground_j.twice() <= 0 || self.excited_j.twice() <= 0 {
            return fail("J and J' must be positive".into());
        }
        if !triangle_ok(self.ground_j, HalfInt::ONE, self.excited_j) {
            return fail(format!(
                "J = {} -> J' = {} is not a dipole transition",
                self.ground_j, self.excited_j
            ));
        }
        if !self.is_ground_manifold(self.ground_f) {
            return fail(format!(
                "F = {} is not in |I - J| .. I + J for I = {}, J = {}",
                self.ground_f, self.nuclear_spin, self.ground_j
            ));
        }
        if !(self.gamma_rad_mhz.is_finite() && self.gamma_rad_mhz > 0.0) {
            return fail(format!("gamma_rad_MHz = {} must be positive", self.gamma_rad_mhz));
        }
        if !(self.lambda_nm.is_finite() && self.lambda_nm > 0.0) {
            return fail(format!("lambda_nm = {} must be positive", self.lambda_nm));
        }

        let ground = self.ground_manifolds();
        let expected: BTreeSet<HalfInt> = coupled_range(self.nuclear_spin, self.excited_j)
            .into_iter()
            .filter(|fp| ground.iter().any(|&fg| (fp.twice() - fg.twice()).abs() <= 2))
            .collect();
        let mut seen = BTreeSet::new();
        for level in &self.excited_levels {
            if !seen.insert(level.f) {
                return fail(format!("excited level F' = {} listed twice", level.f));
            }
            if !expected.contains(&level.f) {
                return fail(format!("F' = {} is not an excited hyperfine level", level.f));
            }
            if !level.splitting_mhz.is_finite() {
                return fail(format!("splitting of F' = {} is not finite", level.f));
            }
        }
        if let Some(missing) = expected.difference(&seen).next() {
            return fail(format!("excited level F' = {missing} is missing"));
        }
        let zeros = self
            .excited_levels
            .iter()
            .filter(|l| l.splitting_mhz == 0.0)
            .count();
        if zeros != 1 {
            return fail(format!("need exactly one reference level with splitting 0, found {zeros}"));
        }
        for (i, a) in self.excited_levels.iter().enumerate() {
            for b in &self.excited_levels[i + 1..] {
                if a.splitting_mhz == b.splitting_mhz {
                    return fail(format!("F' = {} and F' = {} share a splitting", a.f, b.f));
                }
            }
        }
        Ok(())
    }

    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[atom]");
        let _ = writeln!(s, "name = {}", self.name);
        let _ = writeln!(s, "I = {}", self.nuclear_spin);
        let _ = writeln!(s, "J = {}", self.ground_j);
        let _ = writeln!(s, "Jp = {}", self.excited_j);
        let _ = writeln!(s, "F = {}", self.ground_f);
        let _ = writeln!(s, "gamma_rad_MHz = {}", self.gamma_rad_mhz);
        let _ = writeln!(s, "lambda_nm = {}", self.lambda_nm);
        let _ = writeln!(s, "\n[excited]");
        for level in &self.excited_levels {
            let _ = writeln!(s, "{} = {}", level.f, level.splitting_mhz);
        }
        s
    }
}

fn coupled_range(a: HalfInt, b: HalfInt) -> Vec<HalfInt> {
    let lo = (a.twice() - b.twice()).abs();
    let hi = a.twice() + b.twice();
    (lo..=hi).step_by(2).map(HalfInt::from_twice).collect()
}

pub fn builtin_cesium_d2() -> AtomSpec {
    load_atom(CS133_D2).expect("bundled cesium data is valid")
}

pub fn builtin_rubidium87_d2() -> AtomSpec {
    load_atom(RB87_D2).expect("bundled rubidium data is valid")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["cs", "cs133", "cs133-d2", "rb87", "rb87-d2"];

pub fn builtin(name: &str) -> Option<AtomSpec> {
    match name.to_ascii_lowercase().as_str() {
        "cs" | "cs133" | "cs133-d2" => Some(builtin_cesium_d2()),
        "rb87" | "rb87-d2" => Some(builtin_rubidium87_d2()),
        _ => None,
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Atom,
    Excited,
}

pub fn load_atom(text: &str) -> Result<AtomSpec> {
    let mut section = Section::None;
    let mut name = None;
    let mut fields: [Option<HalfInt>; 4] = [None; 4];
    let mut gamma = None;
    let mut lambda = None;
    let mut levels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            section = match rest.strip_suffix(']').map(str::trim) {
                Some("atom") => Section::Atom,
                Some("excited") => Section::Excited,
                _ => return Err(perr(format!("unknown section {line}"))),
            };
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| perr(format!("expected 'key = value', got {line:?}")))?;
        if value.is_empty() {
            return Err(perr(format!("empty value for {key}")));
        }
        let half = |v: &str| v.parse::<HalfInt>().map_err(|e| perr(e.to_string()));
        let real = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| perr(format!("{v:?} is not a number")))
        };

        match section {
            Section::None => return Err(perr("key outside of a section".into())),
            Section::Atom => {
                let slot = match key {
                    "name" => {
                        set_once(&mut name, value.to_string(), key, line_no)?;
                        continue;
                    }
                    "gamma_rad_MHz" => {
                        set_once(&mut gamma, real(value)?, key, line_no)?;
                        continue;
                    }
                    "lambda_nm" => {
                        set_once(&mut lambda, real(value)?, key, line_no)?;
                        continue;
                    }
                    "I" => 0,
                    "J" => 1,
                    "Jp" => 2,
                    "F" => 3,
                    _ => return Err(perr(format!("unknown key {key:?} in [atom]"))),
                };
                set_once(&mut fields[slot], half(value)?, key, line_no)?;
            }
            Section::Excited => {
                let f = half(key)?;
                levels.push(ExcitedLevel {
                    f,
                    splitting_mhz: real(value)?,
                });
            }
        }
    }

    let need = |what: &str| Error::Validation(format!("missing key {what}"));
    AtomSpec::new(
        name.ok_or_else(|| need("name"))?,
        fields[0].ok_or_else(|| need("I"))?,
        fields[1].ok_or_else(|| need("J"))?,
        fields[2].ok_or_else(|| need("Jp"))?,
        fields[3].ok_or_else(|| need("F"))?,
        levels,
        gamma.ok_or_else(|| need("gamma_rad_MHz"))?,
        lambda.ok_or_else(|| need("lambda_nm"))?,
    )
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Parse {
            line,
            msg: format!("duplicate key {key}"),
        });
    }
    *slot = Some(value);
    Ok(())
}
