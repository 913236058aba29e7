//! Matrix elements between ground hyperfine states, summed over
//! intermediate states. Nothing is stored as a matrix: each element is a
//! short sum of Clebsch-Gordan products weighted by a_k / c_k.
//!
//! Conventions: the quantization axis is the spin direction, spherical
//! indices p, q label the polarization components, and the initial state is
//! the stretched |F, F>.

use crate::atom::AtomSpec;
use crate::error::Result;
use crate::polarizability::{reduced_coeff, Detuning};
use crate::wigner::{clebsch_gordan, HalfInt};

const ONE: HalfInt = HalfInt::ONE;

/// A ground state |F_idx, m>; index 0 is the pumped manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct State {
    pub manifold: usize,
    pub m: HalfInt,
}

pub(crate) fn sph(i: i32) -> HalfInt {
    HalfInt::int(i)
}

pub(crate) struct Engine {
    /// (F~, a_k/c_k for k = 0, 1, 2); entry 0 is F itself.
    manifolds: Vec<(HalfInt, [f64; 3])>,
    spin_norm: f64,
}

impl Engine {
    pub fn new(atom: &AtomSpec, f: HalfInt, detuning: Detuning) -> Result<Self> {
        let mut manifolds = Vec::new();
        let mut others: Vec<HalfInt> = atom
            .ground_manifolds()
            .into_iter()
            .filter(|&x| x != f && (x.twice() - f.twice()).abs() <= 4)
            .collect();
        others.insert(0, f);
        for ft in others {
            let mut w = [0.0; 3];
            for (k, wk) in w.iter_mut().enumerate() {
                *wk = reduced_coeff(atom, f, ft, k as u32, detuning)?;
            }
            manifolds.push((ft, w));
        }
        let fv = f.value();
        Ok(Engine {
            manifolds,
            spin_norm: (fv * (fv + 1.0)).sqrt(),
        })
    }

    pub fn f(&self) -> HalfInt {
        self.manifolds[0].0
    }

    pub fn stretched(&self) -> State {
        State {
            manifold: 0,
            m: self.f(),
        }
    }

    /// Every state of every manifold that couples to F.
    pub fn all_states(&self) -> impl Iterator<Item = State> + '_ {
        self.manifolds.iter().enumerate().flat_map(|(i, (ft, _))| {
            ft.projections().map(move |m| State { manifold: i, m })
        })
    }

    pub fn f_states(&self) -> impl Iterator<Item = State> {
        self.f().projections().map(|m| State { manifold: 0, m })
    }

    /// <F~ n| alpha_pq |F m>, ket in the pumped manifold.
    fn alpha_from_f(&self, manifold: usize, n: HalfInt, m: HalfInt, p: i32, q: i32) -> f64 {
        let l = n - m;
        if l != sph(q - p) {
            return 0.0;
        }
        let (ft, w) = &self.manifolds[manifold];
        let f = self.f();
        let mut sum = 0.0;
        for (k, wk) in w.iter().enumerate() {
            if *wk == 0.0 {
                continue;
            }
            let kk = HalfInt::int(k as i32);
            sum += wk
                * clebsch_gordan(f, m, kk, l, *ft, n)
                * clebsch_gordan(ONE, sph(p), kk, l, ONE, sph(q));
        }
        sum
    }

    /// <a| alpha_pq |b>. The block between two foreign manifolds never
    /// enters the products below and is reported as zero.
    pub fn alpha(&self, a: State, b: State, p: i32, q: i32) -> f64 {
        if b.manifold == 0 {
            self.alpha_from_f(a.manifold, a.m, b.m, p, q)
        } else if a.manifold == 0 {
            // hermiticity: <F m|alpha_pq|F~ n> = <F~ n|alpha_qp|F m>*
            self.alpha_from_f(b.manifold, b.m, a.m, q, p)
        } else {
            0.0
        }
    }

    /// <a| j_mu |b>; the spin acts only inside the pumped manifold.
    pub fn spin(&self, a: State, b: State, mu: i32) -> f64 {
        if a.manifold != 0 || b.manifold != 0 {
            return 0.0;
        }
        let f = self.f();
        self.spin_norm * clebsch_gordan(f, b.m, ONE, sph(mu), f, a.m)
    }

    /// <a| (alpha^2)_pq |b> = sum_s sum_c <a|alpha_ps|c><c|alpha_sq|b>
    pub fn alpha2(&self, a: State, b: State, p: i32, q: i32) -> f64 {
        let mut sum = 0.0;
        for s in -1..=1 {
            for c in self.all_states() {
                let left = self.alpha(a, c, p, s);
                if left == 0.0 {
                    continue;
                }
                sum += left * self.alpha(c, b, s, q);
            }
        }
        sum
    }

    /// <a| [alpha_pq, j_mu] |b>
    pub fn commutator(&self, a: State, b: State, p: i32, q: i32, mu: i32) -> f64 {
        let mut sum = 0.0;
        for m in self.f_states() {
            sum += self.alpha(a, m, p, q) * self.spin(m, b, mu);
            sum -= self.spin(a, m, mu) * self.alpha(m, b, p, q);
        }
        sum
    }

    /// <F F| xi_mu(pq) j_nu |F F> with
    /// xi_mu = alpha^2 j_mu + j_mu alpha^2 - 2 alpha j_mu alpha.
    pub fn xi_j(&self, p: i32, q: i32, mu: i32, nu: i32) -> f64 {
        let e = self.stretched();
        let mut sum = 0.0;
        for m in self.f_states() {
            let jv = self.spin(m, e, nu);
            if jv == 0.0 {
                continue;
            }
            for m2 in self.f_states() {
                // alpha^2 j_mu j_nu + j_mu alpha^2 j_nu
                sum += self.alpha2(e, m2, p, q) * self.spin(m2, m, mu) * jv;
                sum += self.spin(e, m2, mu) * self.alpha2(m2, m, p, q) * jv;
            }
            // -2 alpha_ps j_mu alpha_sq, spin restricted to F
            for s in -1..=1 {
                for m1 in self.f_states() {
                    let left = self.alpha(e, m1, p, s);
                    if left == 0.0 {
                        continue;
                    }
                    for m2 in self.f_states() {
                        let mid = self.spin(m1, m2, mu);
                        if mid == 0.0 {
                            continue;
                        }
                        sum -= 2.0 * left * mid * self.alpha(m2, m, s, q) * jv;
                    }
                }
            }
        }
        sum
    }
}
