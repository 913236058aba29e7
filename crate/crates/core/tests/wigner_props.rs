//! Symmetry, orthogonality and sum-rule properties of the angular-momentum
//! kernel. The exact Racah layer is checked exactly; the cached f64 layer
//! against a lowering-operator construction.

mod common;

use faraday_core::wigner::racah::{six_j, three_j};
use faraday_core::wigner::{
    clebsch_gordan, triangle_ok, wigner_3j, wigner_3j_exact, wigner_6j, HalfInt, SignedSqrt,
};
use proptest::prelude::*;

const JMAX2: i32 = 8; // j <= 4

fn h(t: i32) -> HalfInt {
    HalfInt::from_twice(t)
}

fn negated(s: SignedSqrt, odd: bool) -> SignedSqrt {
    if odd && !s.is_zero() {
        SignedSqrt {
            negative: !s.negative,
            square: s.square,
        }
    } else {
        s
    }
}

fn same(a: &SignedSqrt, b: &SignedSqrt) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

/// (j1, j2, j3) triads with all j <= 4 and integral sum.
fn triads() -> Vec<(i32, i32, i32)> {
    let mut out = Vec::new();
    for a in 0..=JMAX2 {
        for b in 0..=JMAX2 {
            for c in (a - b).abs()..=(a + b).min(JMAX2) {
                if (a + b + c) % 2 == 0 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn proj(j: i32) -> impl Iterator<Item = i32> {
    common::proj2(j)
}

#[test]
fn three_j_symmetries_exact() {
    for (a, b, c) in triads() {
        let odd = ((a + b + c) / 2) % 2 == 1;
        for ma in proj(a) {
            for mb in proj(b) {
                let mc = -ma - mb;
                if mc.abs() > c {
                    continue;
                }
                let v = three_j(a, b, c, ma, mb, mc);
                assert!(same(&v, &three_j(b, c, a, mb, mc, ma)), "cyclic {a} {b} {c}");
                assert!(same(&negated(v.clone(), odd), &three_j(b, a, c, mb, ma, mc)), "swap {a} {b} {c}");
                assert!(same(&negated(v, odd), &three_j(a, b, c, -ma, -mb, -mc)), "m flip {a} {b} {c}");
            }
        }
    }
}

#[test]
fn six_j_symmetries_exact() {
    let t = triads();
    for &(a, b, c) in &t {
        for d in 0..=JMAX2 {
            for e in 0..=JMAX2 {
                for f in 0..=JMAX2 {
                    if !(triangle_ok(h(a), h(e), h(f)) && triangle_ok(h(d), h(b), h(f)) && triangle_ok(h(d), h(e), h(c))) {
                        continue;
                    }
                    let v = six_j(a, b, c, d, e, f);
                    assert!(same(&v, &six_j(b, a, c, e, d, f)), "swap columns");
                    assert!(same(&v, &six_j(b, c, a, e, f, d)), "cycle columns");
                    assert!(same(&v, &six_j(d, e, c, a, b, f)), "swap rows in two columns");
                }
            }
        }
    }
}

#[test]
fn cg_orthogonality() {
    for j1 in 0..=JMAX2 {
        for j2 in 0..=JMAX2 {
            let js: Vec<i32> = ((j1 - j2).abs()..=j1 + j2).step_by(2).collect();
            // sum over m1, m2 at fixed (J, M), (J', M)
            for &ja in &js {
                for &jb in &js {
                    for m in proj(ja.min(jb)) {
                        let mut s = 0.0;
                        for m1 in proj(j1) {
                            let m2 = m - m1;
                            s += clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(ja), h(m))
                                * clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jb), h(m));
                        }
                        let want = if ja == jb { 1.0 } else { 0.0 };
                        assert!((s - want).abs() <= 1e-13, "{j1} {j2} {ja} {jb} {m}: {s}");
                    }
                }
            }
            // sum over (J, M) at fixed (m1, m2), (m1', m2')
            for m1 in proj(j1) {
                for m2 in proj(j2) {
                    for n1 in proj(j1) {
                        let n2 = m1 + m2 - n1;
                        if n2.abs() > j2 {
                            continue;
                        }
                        let s: f64 = js
                            .iter()
                            .map(|&jj| {
                                clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jj), h(m1 + m2))
                                    * clebsch_gordan(h(j1), h(n1), h(j2), h(n2), h(jj), h(m1 + m2))
                            })
                            .sum();
                        let want = if m1 == n1 { 1.0 } else { 0.0 };
                        assert!((s - want).abs() <= 1e-13);
                    }
                }
            }
        }
    }
}

#[test]
fn cg_matches_lowering_construction() {
    for j1 in 0..=JMAX2 {
        for j2 in 0..=JMAX2 {
            for jj in ((j1 - j2).abs()..=j1 + j2).step_by(2) {
                for m1 in proj(j1) {
                    for m2 in proj(j2) {
                        let got = clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jj), h(m1 + m2));
                        let want = common::cg2(j1, m1, j2, m2, jj, m1 + m2);
                        assert!((got - want).abs() <= 1e-13, "<{j1} {m1}, {j2} {m2} | {jj}>: {got} vs {want}");
                    }
                }
            }
        }
    }
}

#[test]
fn six_j_orthogonality() {
    for a in 0..=JMAX2 {
        for b in 0..=JMAX2 {
            for c in 0..=JMAX2 {
                for d in 0..=JMAX2 {
                    for f in 0..=JMAX2 {
                        for g in 0..=JMAX2 {
                            // sum_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d g} = delta_fg
                            let mut s = 0.0;
                            for x in 0..=2 * JMAX2 {
                                let u = wigner_6j(h(a), h(b), h(x), h(c), h(d), h(f));
                                if u == 0.0 {
                                    continue;
                                }
                                s += (x as f64 + 1.0) * (f as f64 + 1.0) * u * wigner_6j(h(a), h(b), h(x), h(c), h(d), h(g));
                            }
                            let valid = triangle_ok(h(a), h(d), h(f)) && triangle_ok(h(c), h(b), h(f));
                            let want = if f == g && valid && s != 0.0 { 1.0 } else { 0.0 };
                            assert!((s - want).abs() <= 1e-13, "{a} {b} {c} {d} {f} {g}: {s}");
                        }
                    }
                }
            }
        }
    }
}

/// sum_{k,l} (2k+1) (1 1 k; -q p l)(1 1 k; -q~ p~ l) = delta_{p p~} delta_{q q~}
#[test]
fn rank_completeness_all_81_combinations() {
    let one = HalfInt::ONE;
    let mut checked = 0;
    for p in -1..=1 {
        for q in -1..=1 {
            for pt in -1..=1 {
                for qt in -1..=1 {
                    let mut s = 0.0;
                    for k in 0..=2 {
                        for l in -k..=k {
                            s += (2 * k + 1) as f64
                                * wigner_3j(one, one, HalfInt::int(k), HalfInt::int(-q), HalfInt::int(p), HalfInt::int(l))
                                * wigner_3j(one, one, HalfInt::int(k), HalfInt::int(-qt), HalfInt::int(pt), HalfInt::int(l));
                        }
                    }
                    let want = if p == pt && q == qt { 1.0 } else { 0.0 };
                    assert!((s - want).abs() <= 1e-13, "p={p} q={q} p~={pt} q~={qt}: {s}");
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 81);
}

/// Contraction of three 3j symbols into a 3j times a 6j.
#[test]
fn three_3j_contraction() {
    let lim: i32 = 4; // j, l <= 2
    let mut checked = 0;
    for j1 in 0..=lim {
        for j2 in 0..=lim {
            for j3 in (j1 - j2).abs()..=(j1 + j2).min(lim) {
                if (j1 + j2 + j3) % 2 != 0 {
                    continue;
                }
                for l1 in 0..=lim {
                    for l2 in 0..=lim {
                        for l3 in 0..=lim {
                            if !(triangle_ok(h(l2), h(l3), h(j1)) && triangle_ok(h(l3), h(l1), h(j2)) && triangle_ok(h(l1), h(l2), h(j3))) {
                                continue;
                            }
                            let sixj = wigner_6j(h(j1), h(j2), h(j3), h(l1), h(l2), h(l3));
                            for m1 in proj(j1) {
                                for m2 in proj(j2) {
                                    let m3 = -m1 - m2;
                                    if m3.abs() > j3 {
                                        continue;
                                    }
                                    let mut s = 0.0;
                                    for u1 in proj(l1) {
                                        for u2 in proj(l2) {
                                            for u3 in proj(l3) {
                                                let ph = (l1 + l2 + l3 - u1 - u2 - u3) / 2;
                                                let sign = if ph.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                                                let t = wigner_3j(h(l2), h(l3), h(j1), h(-u2), h(u3), h(m1));
                                                if t == 0.0 {
                                                    continue;
                                                }
                                                s += sign
                                                    * t
                                                    * wigner_3j(h(l3), h(l1), h(j2), h(-u3), h(u1), h(m2))
                                                    * wigner_3j(h(l1), h(l2), h(j3), h(-u1), h(u2), h(m3));
                                            }
                                        }
                                    }
                                    let want = wigner_3j(h(j1), h(j2), h(j3), h(m1), h(m2), h(m3)) * sixj;
                                    assert!((s - want).abs() <= 1e-13);
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn large_j_sum_rule() {
    // sum_{m1, m2} (j1 j2 j3; m1 m2 m3)^2 = 1 over all m3 and j-independent of size
    for (a, b, c) in [(40, 38, 30), (51, 49, 60), (60, 60, 60)] {
        let mut s = 0.0;
        for m1 in proj(a) {
            for m2 in proj(b) {
                let m3 = -m1 - m2;
                if m3.abs() <= c {
                    s += wigner_3j_exact(h(a), h(b), h(c), h(m1), h(m2), h(m3)).to_f64().powi(2);
                }
            }
        }
        assert!((s - 1.0).abs() < 1e-12, "{a} {b} {c}: {s}");
    }
}

proptest! {
    #[test]
    fn half_int_text_round_trip(t in -200i32..200) {
        let x = h(t);
        let back: HalfInt = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
        prop_assert_eq!(HalfInt::try_from_f64(x.value()).unwrap(), x);
    }

    #[test]
    fn cached_and_exact_agree(j1 in 0i32..=20, j2 in 0i32..=20, k in 0i32..=40, i1 in 0i32..=40, i2 in 0i32..=40) {
        let lo = (j1 - j2).abs();
        let j3 = lo + 2 * (k % ((j1 + j2 - lo) / 2 + 1));
        let m1 = -j1 + 2 * (i1 % (j1 + 1));
        let m2 = -j2 + 2 * (i2 % (j2 + 1));
        let m3 = -m1 - m2;
        let exact = wigner_3j_exact(h(j1), h(j2), h(j3), h(m1), h(m2), h(m3)).to_f64();
        let cached = wigner_3j(h(j1), h(j2), h(j3), h(m1), h(m2), h(m3));
        prop_assert!((exact - cached).abs() <= 1e-15);
    }

    #[test]
    fn cg_against_oracle_random(j1 in 0i32..=14, j2 in 0i32..=14, k in 0i32..=40, i1 in 0i32..=40, i2 in 0i32..=40) {
        let lo = (j1 - j2).abs();
        let jj = lo + 2 * (k % ((j1 + j2 - lo) / 2 + 1));
        let m1 = -j1 + 2 * (i1 % (j1 + 1));
        let m2 = -j2 + 2 * (i2 % (j2 + 1));
        let got = clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jj), h(m1 + m2));
        let want = common::cg2(j1, m1, j2, m2, jj, m1 + m2);
        // the float Gram-Schmidt oracle itself drifts to ~1e-11 by j = 7
        prop_assert!((got - want).abs() <= 1e-10, "{} vs {}", got, want);
    }

    #[test]
    fn invalid_arguments_give_zero(j1 in 0i32..=8, j2 in 0i32..=8, j3 in 0i32..=8, m1 in -9i32..=9, m2 in -9i32..=9, m3 in -9i32..=9) {
        let valid = HalfInt::pair_ok(h(j1), h(m1)) && HalfInt::pair_ok(h(j2), h(m2)) && HalfInt::pair_ok(h(j3), h(m3))
            && m1 + m2 + m3 == 0 && triangle_ok(h(j1), h(j2), h(j3));
        if !valid {
            prop_assert_eq!(wigner_3j(h(j1), h(j2), h(j3), h(m1), h(m2), h(m3)), 0.0);
        }
    }
}
