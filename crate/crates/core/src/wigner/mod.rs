//! Wigner 3j and 6j symbols and Clebsch-Gordan coefficients.
//!
//! Values come from exact Racah sums (sign times the square root of a
//! rational) and are rounded to `f64` once. Results are memoized under a
//! canonical ordering of the arguments, so symmetric requests share an entry.

mod half_int;
pub mod racah;

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

pub use half_int::HalfInt;
pub use racah::SignedSqrt;

type Memo = LazyLock<RwLock<HashMap<[i32; 6], f64>>>;

static MEMO_3J: Memo = LazyLock::new(|| RwLock::new(HashMap::new()));
static MEMO_6J: Memo = LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn triangle_ok(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    racah::triangle2(j1.twice(), j2.twice(), j3.twice())
}

/// Exact value of the 3j symbol.
pub fn wigner_3j_exact(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> SignedSqrt {
    racah::three_j(
        j1.twice(),
        j2.twice(),
        j3.twice(),
        m1.twice(),
        m2.twice(),
        m3.twice(),
    )
}

/// Exact value of the 6j symbol `{j1 j2 j3; j4 j5 j6}`.
pub fn wigner_6j_exact(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> SignedSqrt {
    racah::six_j(
        j1.twice(),
        j2.twice(),
        j3.twice(),
        j4.twice(),
        j5.twice(),
        j6.twice(),
    )
}

const PERMS: [([usize; 3], bool); 6] = [
    ([0, 1, 2], false),
    ([1, 2, 0], false),
    ([2, 0, 1], false),
    ([1, 0, 2], true),
    ([0, 2, 1], true),
    ([2, 1, 0], true),
];

/// Canonical 3j key and the sign relating it to the requested symbol.
fn canonical_3j(j: [i32; 3], m: [i32; 3]) -> ([i32; 6], f64) {
    // odd permutations and m -> -m each pick up (-1)^(j1+j2+j3)
    let odd_sign = if ((j[0] + j[1] + j[2]) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let mut best: Option<([i32; 6], f64)> = None;
    for (p, odd) in PERMS {
        for flip in [false, true] {
            let s = if flip { -1 } else { 1 };
            let key = [
                j[p[0]],
                j[p[1]],
                j[p[2]],
                s * m[p[0]],
                s * m[p[1]],
                s * m[p[2]],
            ];
            let sign = if odd ^ flip { odd_sign } else { 1.0 };
            if best.is_none_or(|(b, _)| key < b) {
                best = Some((key, sign));
            }
        }
    }
    best.unwrap()
}

fn canonical_6j(a: [i32; 6]) -> [i32; 6] {
    // columns (a0,a3), (a1,a4), (a2,a5)
    let cols = [(a[0], a[3]), (a[1], a[4]), (a[2], a[5])];
    let mut best = a;
    for (p, _) in PERMS {
        let c = [cols[p[0]], cols[p[1]], cols[p[2]]];
        for swap in [[false; 3], [true, true, false], [true, false, true], [false, true, true]] {
            let mut key = [0; 6];
            for i in 0..3 {
                let (u, l) = if swap[i] { (c[i].1, c[i].0) } else { c[i] };
                key[i] = u;
                key[i + 3] = l;
            }
            if key < best {
                best = key;
            }
        }
    }
    best
}

fn memo_get(memo: &Memo, key: &[i32; 6], compute: impl FnOnce() -> f64) -> f64 {
    if let Some(v) = memo.read().unwrap().get(key) {
        return *v;
    }
    let v = compute();
    memo.write().unwrap().insert(*key, v);
    v
}

pub fn wigner_3j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> f64 {
    if (m1 + m2 + m3) != HalfInt::ZERO
        || !triangle_ok(j1, j2, j3)
        || !HalfInt::pair_ok(j1, m1)
        || !HalfInt::pair_ok(j2, m2)
        || !HalfInt::pair_ok(j3, m3)
    {
        return 0.0;
    }
    let (key, sign) = canonical_3j(
        [j1.twice(), j2.twice(), j3.twice()],
        [m1.twice(), m2.twice(), m3.twice()],
    );
    let v = memo_get(&MEMO_3J, &key, || {
        racah::three_j(key[0], key[1], key[2], key[3], key[4], key[5]).to_f64()
    });
    sign * v
}

pub fn wigner_6j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> f64 {
    let a = [
        j1.twice(),
        j2.twice(),
        j3.twice(),
        j4.twice(),
        j5.twice(),
        j6.twice(),
    ];
    if !(racah::triangle2(a[0], a[1], a[2])
        && racah::triangle2(a[0], a[4], a[5])
        && racah::triangle2(a[3], a[1], a[5])
        && racah::triangle2(a[3], a[4], a[2]))
    {
        return 0.0;
    }
    let key = canonical_6j(a);
    memo_get(&MEMO_6J, &key, || {
        racah::six_j(key[0], key[1], key[2], key[3], key[4], key[5]).to_f64()
    })
}

/// `C^{J M}_{j1 m1, j2 m2}` in the Condon-Shortley convention.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> f64 {
    if m1 + m2 != m {
        return 0.0;
    }
    let w = wigner_3j(j1, j2, j, m1, m2, -m);
    if w == 0.0 {
        return 0.0;
    }
    (j1 - j2 + m).phase() * j.multiplicity().sqrt() * w
}
