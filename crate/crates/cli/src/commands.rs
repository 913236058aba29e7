use faraday_core::atom::AtomSpec;
use faraday_core::dynamics::{
    ideal_fidelity, mean_field_rotation, propagate_memory, transfer_gains, DecayRates, MemoryResult, PhotonRatio,
};
use faraday_core::optimize::{evaluate, optimize_fidelity, OptimizeOptions, OptimumPoint, Side};
use faraday_core::polarizability::tensor_coeffs;
use faraday_core::scatter::{assemble, closed_form_cs, Axis, Orientation, ScatteringCoeffs};
use faraday_core::wigner::HalfInt;
use faraday_core::Error;

use crate::grid::Grid;
use crate::table::{num, Table};
use crate::{atoms, Common, Failure, MeanfieldArgs, MemoryArgs, Sweep};

struct Setup {
    atom: AtomSpec,
    source: String,
    f: HalfInt,
}

fn setup(common: &Common) -> Result<Setup, Failure> {
    let (atom, source) = atoms::resolve(&common.atom)?;
    let f = match &common.f {
        Some(s) => s.parse::<HalfInt>()?,
        None => atom.ground_f(),
    };
    if !atom.is_ground_manifold(f) {
        let have: Vec<String> = atom.ground_manifolds().iter().map(|f| f.to_string()).collect();
        return Err(Failure::usage(format!(
            "F = {f} is not a ground manifold of {} (have {})",
            atom.name(),
            have.join(", ")
        )));
    }
    Ok(Setup { atom, source, f })
}

fn open(common: &Common, command: &str, s: &Setup) -> Result<Table, Failure> {
    let mut t = Table::open(common.out.as_deref())?;
    t.comment("faraday", format!("{} {command}", env!("CARGO_PKG_VERSION")))?;
    t.comment("atom", format!("{} ({})", s.atom.name(), s.source))?;
    t.comment("F", s.f)?;
    Ok(t)
}

/// Row outcome, used for the status column and the exit code.
#[derive(Default)]
struct Tally {
    ok: usize,
    poles: usize,
    failed: usize,
    first_error: Option<String>,
}

impl Tally {
    fn status(&mut self, res: &Result<(), Error>) -> &'static str {
        match res {
            Ok(()) => {
                self.ok += 1;
                "ok"
            }
            Err(e) => {
                self.first_error.get_or_insert_with(|| e.to_string());
                if matches!(e, Error::Pole { .. }) {
                    self.poles += 1;
                    return "pole";
                }
                self.failed += 1;
                match e {
                    Error::NoSolution(_) => "infeasible",
                    Error::Domain(_) => "domain",
                    _ => "error",
                }
            }
        }
    }

    /// Pole rows give 4; a table with no valid row gives 3.
    fn finish(self) -> Result<(), Failure> {
        let msg = self.first_error.unwrap_or_default();
        if self.poles > 0 {
            Err(Failure::pole(format!("{} grid point(s) at a resonance; first: {msg}", self.poles)))
        } else if self.ok == 0 {
            Err(Failure::infeasible(format!("no grid point is feasible; first: {msg}")))
        } else {
            Ok(())
        }
    }
}

fn nan_row(lead: &[f64], width: usize, status: &str) -> Vec<String> {
    let mut row: Vec<String> = lead.iter().map(|&x| num(x)).collect();
    row.extend(std::iter::repeat_n("nan".to_string(), width));
    row.push(status.into());
    row
}

pub fn coeffs(common: &Common, grid: &Grid) -> Result<(), Failure> {
    let s = setup(common)?;
    let mut t = open(common, "coeffs", &s)?;
    t.comment("grid (-Delta MHz)", grid)?;
    t.header(&["detuning_MHz_neg", "a0", "a1", "a2", "b1", "b2", "status"])?;
    let mut tally = Tally::default();
    for v in grid.values() {
        match tensor_coeffs(&s.atom, s.f, -v) {
            Ok(c) => {
                let mut row: Vec<String> = [v, c.a0, c.a1, c.a2, c.b1, c.b2].iter().map(|&x| num(x)).collect();
                row.push(tally.status(&Ok(())).into());
                t.row(&row)?;
            }
            Err(e) => {
                let st = tally.status(&Err(e));
                t.row(&nan_row(&[v], 5, st))?;
            }
        }
    }
    t.finish()?;
    tally.finish()
}

const SCATTER_COLS: [&str; 12] = [
    "A_x", "A_y", "B_x_par", "B_y_par", "B_z_par", "B_x_orth", "B_y_orth", "B_z_orth", "C_y_par", "C_z_par",
    "C_y_orth", "C_z_orth",
];

fn scatter_values(c: &ScatteringCoeffs) -> [f64; 12] {
    use Axis::{X, Y, Z};
    use Orientation::{Orthogonal as O, Parallel as P};
    [
        c.a_x,
        c.a_y,
        c.b.get(P, X),
        c.b.get(P, Y),
        c.b.get(P, Z),
        c.b.get(O, X),
        c.b.get(O, Y),
        c.b.get(O, Z),
        c.c.get(P, Y),
        c.c.get(P, Z),
        c.c.get(O, Y),
        c.c.get(O, Z),
    ]
}

/// The closed forms are written for I = 7/2, J = 1/2 -> J' = 3/2, F = 4.
fn oracle_applies(s: &Setup) -> bool {
    s.atom.nuclear_spin() == HalfInt::from_twice(7)
        && s.atom.ground_j() == HalfInt::from_twice(1)
        && s.atom.excited_j() == HalfInt::from_twice(3)
        && s.f == HalfInt::int(4)
}

pub fn scatter(common: &Common, grid: &Grid, oracle: bool) -> Result<(), Failure> {
    let s = setup(common)?;
    if oracle && !oracle_applies(&s) {
        return Err(Failure::usage("--oracle needs an I = 7/2, J = 1/2 -> 3/2 atom with F = 4"));
    }
    let mut t = open(common, "scatter", &s)?;
    t.comment("grid (-Delta MHz)", grid)?;
    t.comment("normalization", "F a1^2")?;
    let mut cols = vec!["detuning_MHz_neg".to_string()];
    cols.extend(SCATTER_COLS.iter().map(|c| c.to_string()));
    if oracle {
        cols.extend(SCATTER_COLS.iter().map(|c| format!("{c}_closed")));
    }
    cols.push("status".into());
    t.header(&cols.iter().map(String::as_str).collect::<Vec<_>>())?;

    let width = if oracle { 24 } else { 12 };
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for v in grid.values() {
        let computed = assemble(&s.atom, s.f, -v).and_then(|c| {
            let closed = if oracle {
                Some(closed_form_cs(&tensor_coeffs(&s.atom, s.f, -v)?)?)
            } else {
                None
            };
            Ok((c, closed))
        });
        match computed {
            Ok((c, closed)) => {
                let vals = scatter_values(&c);
                let mut row = vec![num(v)];
                row.extend(vals.iter().map(|&x| num(x)));
                if let Some(closed) = closed {
                    let cv = scatter_values(&closed);
                    for (a, b) in vals.iter().zip(&cv) {
                        worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
                    }
                    row.extend(cv.iter().map(|&x| num(x)));
                }
                row.push(tally.status(&Ok(())).into());
                t.row(&row)?;
            }
            Err(e) => {
                let st = tally.status(&Err(e));
                t.row(&nan_row(&[v], width, st))?;
            }
        }
    }
    t.finish()?;
    if oracle {
        eprintln!("max relative deviation from closed forms: {worst:.3e}");
    }
    tally.finish()
}

fn options(s: &Setup, args: &MemoryArgs, d: f64) -> Result<OptimizeOptions, Failure> {
    let mut o = OptimizeOptions::new(s.atom.clone(), s.f, d, args.orientation.into());
    if let Some(r) = args.ratio {
        if !(r.is_finite() && r > 0.0) {
            return Err(Failure::usage(format!("--ratio {r} must be positive")));
        }
        o.photon_ratio = PhotonRatio::Fixed(r);
    }
    if args.red {
        o.side = Side::Red;
    }
    Ok(o)
}

fn ratio_label(args: &MemoryArgs) -> String {
    match args.ratio {
        Some(r) => r.to_string(),
        None => "coupled to kappa".into(),
    }
}

fn report_rows(t: &mut Table, rows: &[(&str, f64)], m: &MemoryResult) -> std::io::Result<()> {
    t.header(&["quantity", "value"])?;
    let r = &m.rates;
    let mem = [
        ("kappa", m.kappa),
        ("kappa_L", m.kappa_l),
        ("kappa_A", m.kappa_a),
        ("nu", m.nu),
        ("gamma_x", r.light_x),
        ("gamma_y", r.light_y),
        ("Gamma_x", r.spin_x),
        ("Gamma_y", r.spin_y),
        ("Gamma_z", r.spin_z),
        ("Gamma_X", r.canonical_x),
        ("Gamma_P", r.canonical_p),
        ("F_X^2", r.noise_x),
        ("F_P^2", r.noise_p),
        ("var_X", m.var_x),
        ("var_P", m.var_p),
        ("fidelity", m.fidelity),
    ];
    for (k, v) in rows.iter().chain(&mem) {
        t.row(&[k.to_string(), num(*v)])?;
    }
    Ok(())
}

const SWEEP_COLS: [&str; 14] = [
    "d",
    "detuning_MHz_neg",
    "ratio",
    "kappa",
    "kappa_L",
    "kappa_A",
    "gamma_x",
    "gamma_y",
    "Gamma_X",
    "Gamma_P",
    "var_X",
    "var_P",
    "fidelity",
    "status",
];

fn sweep_row(p: &OptimumPoint) -> Vec<String> {
    let m = &p.memory;
    let mut row: Vec<String> = [
        p.d,
        -p.detuning,
        p.ratio,
        p.kappa,
        m.kappa_l,
        m.kappa_a,
        m.rates.light_x,
        m.rates.light_y,
        m.rates.canonical_x,
        m.rates.canonical_p,
        m.var_x,
        m.var_p,
        m.fidelity,
    ]
    .iter()
    .map(|&x| num(x))
    .collect();
    row.push("ok".into());
    row
}

pub fn memory(args: &MemoryArgs) -> Result<(), Failure> {
    let s = setup(&args.common)?;
    if !(args.d.is_finite() && args.d > 0.0) {
        return Err(Failure::usage(format!("--d {} must be positive", args.d)));
    }

    if args.zero_decay {
        let rates = DecayRates::zero();
        let m = propagate_memory(1.0, &rates, &transfer_gains(&rates, 1.0))?;
        let mut t = open(&args.common, "memory", &s)?;
        t.comment("mode", "zero decay")?;
        report_rows(&mut t, &[("ideal_fidelity", ideal_fidelity())], &m)?;
        return Ok(t.finish()?);
    }

    if let Some(sweep) = args.sweep {
        let grid = args.grid.expect("clap enforces --grid with --sweep");
        if sweep == Sweep::Detuning && args.optimize {
            return Err(Failure::usage("--optimize cannot be combined with --sweep detuning"));
        }
        let mut t = open(&args.common, "memory", &s)?;
        t.comment("orientation", args.orientation.to_possible_value_name())?;
        t.comment("ratio", ratio_label(args))?;
        match sweep {
            Sweep::D => {
                t.comment("grid (d)", grid)?;
                if args.optimize {
                    t.comment("mode", format!("optimized over detuning ({} side)", side_name(args)))?;
                } else {
                    t.comment("Delta (MHz)", args.detuning)?;
                }
            }
            Sweep::Detuning => {
                t.comment("grid (-Delta MHz)", grid)?;
                t.comment("d", args.d)?;
            }
        }
        t.header(&SWEEP_COLS)?;
        let mut tally = Tally::default();
        for v in grid.values() {
            let (d, delta) = match sweep {
                Sweep::D => (v, args.detuning),
                Sweep::Detuning => (args.d, -v),
            };
            if !(d.is_finite() && d > 0.0) {
                return Err(Failure::usage(format!("optical depth {d} in the grid must be positive")));
            }
            let opts = options(&s, args, d)?;
            let res = if args.optimize { optimize_fidelity(&opts) } else { evaluate(&opts, delta) };
            match res {
                Ok(p) => {
                    tally.status(&Ok(()));
                    t.row(&sweep_row(&p))?;
                }
                Err(e) => {
                    let st = tally.status(&Err(e));
                    let lead = if args.optimize { vec![d, f64::NAN] } else { vec![d, -delta] };
                    t.row(&nan_row(&lead, SWEEP_COLS.len() - 3, st))?;
                }
            }
        }
        t.finish()?;
        return tally.finish();
    }

    let opts = options(&s, args, args.d)?;
    let p = if args.optimize { optimize_fidelity(&opts)? } else { evaluate(&opts, args.detuning)? };
    let mut t = open(&args.common, "memory", &s)?;
    t.comment("orientation", args.orientation.to_possible_value_name())?;
    t.comment("ratio", ratio_label(args))?;
    if args.optimize {
        t.comment("mode", format!("optimized over detuning ({} side)", side_name(args)))?;
    }
    report_rows(
        &mut t,
        &[("d", p.d), ("detuning_MHz", p.detuning), ("ratio", p.ratio), ("ideal_fidelity", ideal_fidelity())],
        &p.memory,
    )?;
    Ok(t.finish()?)
}

fn side_name(args: &MemoryArgs) -> &'static str {
    if args.red {
        "red"
    } else {
        "blue"
    }
}

trait ValueName {
    fn to_possible_value_name(&self) -> String;
}

impl<T: clap::ValueEnum> ValueName for T {
    fn to_possible_value_name(&self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

fn vec3(s: &str, what: &str) -> Result<[f64; 3], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("--{what} '{s}' must be three comma-separated numbers")))?;
    v.try_into()
        .map_err(|_| Failure::usage(format!("--{what} '{s}' must have exactly three components")))
}

pub fn meanfield(args: &MeanfieldArgs) -> Result<(), Failure> {
    let s = setup(&args.common)?;
    let spin = vec3(&args.spin, "spin")?;
    let stokes = vec3(&args.stokes, "stokes")?;
    let coeffs = tensor_coeffs(&s.atom, s.f, args.detuning)?;
    let (s_out, j_out) = mean_field_rotation(spin, stokes, &coeffs, args.strength, args.steps)?;
    let norm = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut t = open(&args.common, "meanfield", &s)?;
    t.comment("Delta (MHz)", args.detuning)?;
    t.comment("strength", args.strength)?;
    t.comment("steps", args.steps)?;
    t.header(&["quantity", "value"])?;
    let rows = [
        ("S_x", s_out[0]),
        ("S_y", s_out[1]),
        ("S_z", s_out[2]),
        ("j_x", j_out[0]),
        ("j_y", j_out[1]),
        ("j_z", j_out[2]),
        ("|S|", norm(s_out)),
        ("|j|", norm(j_out)),
        ("|S| drift", norm(s_out) - norm(stokes)),
        ("|j| drift", norm(j_out) - norm(spin)),
    ];
    for (k, v) in rows {
        t.row(&[k.to_string(), num(v)])?;
    }
    Ok(t.finish()?)
}
