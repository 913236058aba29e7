//! Independent reference implementations for the integration tests.
//! Nothing here calls into the crate's angular-momentum kernel.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use faraday_core::atom::AtomSpec;
use faraday_core::wigner::HalfInt;
use nalgebra::DMatrix;
use num_complex::Complex64;

type Vector = HashMap<i32, f64>; // keyed by twice m1; m2 follows from M

/// Clebsch-Gordan table for j1 x j2, built from the highest-weight state
/// by repeated lowering and Gram-Schmidt. Keys: (J2, M2, m1_2), twice values.
fn build_table(j1: i32, j2: i32) -> HashMap<(i32, i32, i32), f64> {
    let lower = |j: i32, m: i32| {
        let (j, m) = (j as f64 / 2.0, m as f64 / 2.0);
        (j * (j + 1.0) - m * (m - 1.0)).max(0.0).sqrt()
    };
    let mut states: HashMap<(i32, i32), Vector> = HashMap::new();
    let mut jj = j1 + j2;
    while jj >= (j1 - j2).abs() {
        // highest weight of J: orthogonal to the larger J at the same M
        let mut top: Option<Vector> = None;
        let mut m1 = j1;
        while m1 >= -j1 && top.is_none() {
            let m2 = jj - m1;
            if m2.abs() <= j2 {
                let mut v: Vector = HashMap::from([(m1, 1.0)]);
                // two passes keep the projection residue at rounding level
                for _ in 0..2 {
                    let mut big = jj + 2;
                    while big <= j1 + j2 {
                        let u = &states[&(big, jj)];
                        let dot: f64 = u.iter().map(|(k, x)| x * v.get(k).unwrap_or(&0.0)).sum();
                        for (k, x) in u {
                            *v.entry(*k).or_default() -= dot * x;
                        }
                        big += 2;
                    }
                }
                let n = v.values().map(|x| x * x).sum::<f64>().sqrt();
                if n > 1e-8 {
                    // Condon-Shortley: <j1 j1, j2 J-j1 | J J> > 0
                    let s = if v.get(&j1).copied().unwrap_or(0.0) < 0.0 { -1.0 } else { 1.0 };
                    v.values_mut().for_each(|x| *x *= s / n);
                    top = Some(v);
                }
            }
            m1 -= 2;
        }
        let mut v = top.expect("highest weight state");
        let mut mm = jj;
        states.insert((jj, mm), v.clone());
        while mm > -jj {
            let mut w: Vector = HashMap::new();
            for (&m1, &x) in &v {
                let m2 = mm - m1;
                if m1 > -j1 {
                    *w.entry(m1 - 2).or_default() += x * lower(j1, m1);
                }
                if m2 > -j2 {
                    *w.entry(m1).or_default() += x * lower(j2, m2);
                }
            }
            let norm = lower(jj, mm);
            w.values_mut().for_each(|x| *x /= norm);
            mm -= 2;
            states.insert((jj, mm), w.clone());
            v = w;
        }
        jj -= 2;
    }
    let mut out = HashMap::new();
    for ((jj, mm), v) in states {
        for (m1, x) in v {
            out.insert((jj, mm, m1), x);
        }
    }
    out
}

thread_local! {
    static TABLES: RefCell<HashMap<(i32, i32), HashMap<(i32, i32, i32), f64>>> = RefCell::new(HashMap::new());
}

/// <j1 m1, j2 m2 | J M>, all arguments twice their value.
pub fn cg2(j1: i32, m1: i32, j2: i32, m2: i32, jj: i32, mm: i32) -> f64 {
    if m1 + m2 != mm || m1.abs() > j1 || m2.abs() > j2 || mm.abs() > jj {
        return 0.0;
    }
    if (j1 + m1) % 2 != 0 || (j2 + m2) % 2 != 0 || (jj + mm) % 2 != 0 {
        return 0.0;
    }
    if jj > j1 + j2 || jj < (j1 - j2).abs() || (j1 + j2 + jj) % 2 != 0 {
        return 0.0;
    }
    TABLES.with(|t| {
        let mut t = t.borrow_mut();
        let table = t.entry((j1, j2)).or_insert_with(|| build_table(j1, j2));
        table.get(&(jj, mm, m1)).copied().unwrap_or(0.0)
    })
}

pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    cg2(j1.twice(), m1.twice(), j2.twice(), m2.twice(), j.twice(), m.twice())
}

/// Twice-values from j down to -j.
pub fn proj2(j2: i32) -> impl Iterator<Item = i32> {
    (0..=j2).map(move |k| j2 - 2 * k)
}

fn couple2(a: i32, b: i32) -> impl Iterator<Item = i32> {
    let lo = (a - b).abs();
    (0..=(a + b - lo) / 2).map(move |k| lo + 2 * k)
}

pub type CMat = DMatrix<Complex64>;

/// Every quantity the scattering engine reports, computed from explicit
/// operator matrices in the full ground x excited hyperfine basis.
#[derive(Debug, Clone)]
pub struct DenseResult {
    pub alpha2_xx: f64,
    pub alpha2_yy: f64,
    pub alpha2_xy: Complex64,
    /// [orientation][axis]: par = 0, orth = 1; x, y, z
    pub xi: [[f64; 3]; 2],
    pub zeta2: [[f64; 3]; 2],
    /// <[zeta_y, zeta_z]> for each orientation
    pub commutator: [Complex64; 2],
}

pub fn dense(atom: &AtomSpec, f: HalfInt, detuning: f64) -> DenseResult {
    let (i2, j2, jp2) = (atom.nuclear_spin().twice(), atom.ground_j().twice(), atom.excited_j().twice());
    let ground: Vec<(i32, i32)> = couple2(i2, j2).flat_map(|ff| proj2(ff).map(move |m| (ff, m))).collect();
    let excited: Vec<(i32, i32)> = couple2(i2, jp2).flat_map(|ff| proj2(ff).map(move |m| (ff, m))).collect();
    let (ng, ne) = (ground.len(), excited.len());

    // spherical dipole components <F' m'| d_q |F m> with <J'||d||J> = 1
    let dq = |q: i32| {
        let mut d = CMat::zeros(ne, ng);
        for (a, &(fp, mp)) in excited.iter().enumerate() {
            for (b, &(fg, m)) in ground.iter().enumerate() {
                let mut s = 0.0;
                for mj in proj2(j2) {
                    let mi = m - mj;
                    let mjp = mj + 2 * q;
                    if mi.abs() > i2 || mjp.abs() > jp2 || mp != mjp + mi {
                        continue;
                    }
                    s += cg2(j2, mj, i2, mi, fg, m) * cg2(jp2, mjp, i2, mi, fp, mp) * cg2(j2, mj, 2, 2 * q, jp2, mjp);
                }
                d[(a, b)] = Complex64::new(s, 0.0);
            }
        }
        d
    };
    let d: HashMap<i32, CMat> = (-1..=1).map(|q| (q, dq(q))).collect();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let e: HashMap<i32, [Complex64; 3]> = HashMap::from([
        (1, [-one * r, -i * r, zero]),
        (0, [zero, zero, one]),
        (-1, [one * r, -i * r, zero]),
    ]);
    let dc: Vec<CMat> = (0..3)
        .map(|c| (-1..=1).fold(CMat::zeros(ne, ng), |acc, q| acc + &d[&q] * e[&q][c].conj()))
        .collect();

    let mut weighted = CMat::zeros(ne, ne);
    for (a, &(fp, _)) in excited.iter().enumerate() {
        let lvl = atom
            .excited_levels()
            .iter()
            .find(|l| l.f.twice() == fp)
            .expect("excited level present");
        let res = 1.0 / (1.0 - lvl.splitting_mhz / detuning);
        weighted[(a, a)] = Complex64::new(res / (jp2 as f64 + 1.0), 0.0);
    }
    let alpha: Vec<Vec<CMat>> = (0..3)
        .map(|p| (0..3).map(|q| dc[p].adjoint() * &weighted * &dc[q]).collect())
        .collect();

    // spin of the pumped manifold, quantized along primed z
    let f2 = f.twice();
    let mut jz = CMat::zeros(ng, ng);
    let mut jplus = CMat::zeros(ng, ng);
    for (a, &(fa, ma)) in ground.iter().enumerate() {
        if fa != f2 {
            continue;
        }
        jz[(a, a)] = Complex64::new(ma as f64 / 2.0, 0.0);
        for (b, &(fb, mb)) in ground.iter().enumerate() {
            if fb == f2 && ma == mb + 2 {
                let (fv, mv) = (f2 as f64 / 2.0, mb as f64 / 2.0);
                jplus[(a, b)] = Complex64::new((fv * (fv + 1.0) - mv * (mv + 1.0)).sqrt(), 0.0);
            }
        }
    }
    let jx = (&jplus + jplus.adjoint()) * Complex64::new(0.5, 0.0);
    let jy = (&jplus - jplus.adjoint()) * Complex64::new(0.0, -0.5);
    // lab x = primed z, lab y = primed x, lab z = primed y
    let lab_index = [2usize, 0, 1];
    let spins = [jz, jx, jy];
    let psi = {
        let k = ground.iter().position(|&(fa, m)| fa == f2 && m == f2).unwrap();
        let mut v = DMatrix::<Complex64>::zeros(ng, 1);
        v[(k, 0)] = one;
        v
    };
    let ex = |op: &CMat| -> Complex64 { (psi.adjoint() * op * &psi)[(0, 0)] };
    let prod = |x: &Vec<Vec<CMat>>, y: &Vec<Vec<CMat>>, p: usize, q: usize| {
        (0..3).fold(CMat::zeros(ng, ng), |acc, s| acc + &x[p][s] * &y[s][q])
    };

    let (lx, ly) = (lab_index[0], lab_index[1]);
    let alpha2_xx = ex(&prod(&alpha, &alpha, lx, lx)).re;
    let alpha2_yy = ex(&prod(&alpha, &alpha, ly, ly)).re;
    let alpha2_xy = ex(&prod(&alpha, &alpha, lx, ly));

    let zeta: Vec<Vec<Vec<CMat>>> = spins
        .iter()
        .map(|j| {
            (0..3)
                .map(|p| (0..3).map(|q| (&alpha[p][q] * j - j * &alpha[p][q]) * i).collect())
                .collect()
        })
        .collect();

    let mut xi = [[0.0; 3]; 2];
    let mut zeta2 = [[0.0; 3]; 2];
    let mut commutator = [zero; 2];
    for (o, &pol) in [lx, ly].iter().enumerate() {
        let a2 = prod(&alpha, &alpha, pol, pol);
        for axis in 0..3 {
            let j = &spins[axis];
            let z = &zeta[axis];
            zeta2[o][axis] = ex(&prod(z, z, pol, pol)).re;
            let sandwich = (0..3).fold(CMat::zeros(ng, ng), |acc, s| acc + &alpha[pol][s] * j * &alpha[s][pol]);
            let x = &a2 * j + j * &a2 - sandwich * Complex64::new(2.0, 0.0);
            xi[o][axis] = (ex(&(x * j)) / ex(&(j * j))).re;
        }
        let (zy, zz) = (&zeta[1], &zeta[2]);
        commutator[o] = ex(&(prod(zy, zz, pol, pol) - prod(zz, zy, pol, pol)));
    }
    DenseResult {
        alpha2_xx,
        alpha2_yy,
        alpha2_xy,
        xi,
        zeta2,
        commutator,
    }
}
