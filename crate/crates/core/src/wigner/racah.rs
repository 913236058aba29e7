//! Exact Racah sums. Everything here works on twice-values.

use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A number of the form `sign * sqrt(square)` with `square` a non-negative rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSqrt {
    pub negative: bool,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        SignedSqrt {
            negative: false,
            square: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        // the rational is rounded once, then sqrt rounds once more
        let v = self.square.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }
}

static FACTORIALS: LazyLock<RwLock<Vec<BigUint>>> =
    LazyLock::new(|| RwLock::new(vec![BigUint::one()]));

fn factorial(n: i32) -> BigUint {
    debug_assert!(n >= 0);
    let n = n as usize;
    if let Some(f) = FACTORIALS.read().unwrap().get(n) {
        return f.clone();
    }
    let mut table = FACTORIALS.write().unwrap();
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigUint::from(k);
        table.push(next);
    }
    table[n].clone()
}

fn fact_int(n: i32) -> BigInt {
    BigInt::from(factorial(n))
}

/// Triangle condition on twice-values.
pub fn triangle2(a: i32, b: i32, c: i32) -> bool {
    a >= 0 && b >= 0 && c >= 0 && c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0
}

/// Δ(abc)^2 from twice-values, assuming the triangle holds.
fn delta_sq(a: i32, b: i32, c: i32) -> BigRational {
    let num = fact_int((a + b - c) / 2) * fact_int((a - b + c) / 2) * fact_int((-a + b + c) / 2);
    BigRational::new(num, fact_int((a + b + c) / 2 + 1))
}

fn combine(prefactor: BigRational, sum: BigRational, negative_phase: bool) -> SignedSqrt {
    if sum.is_zero() {
        return SignedSqrt::zero();
    }
    let negative = sum.is_negative() ^ negative_phase;
    let square = prefactor * &sum * &sum;
    SignedSqrt { negative, square }
}

/// Exact 3j symbol from twice-values.
pub fn three_j(j1: i32, j2: i32, j3: i32, m1: i32, m2: i32, m3: i32) -> SignedSqrt {
    let pair = |j: i32, m: i32| j >= 0 && m.abs() <= j && (j - m) % 2 == 0;
    if m1 + m2 + m3 != 0
        || !triangle2(j1, j2, j3)
        || !pair(j1, m1)
        || !pair(j2, m2)
        || !pair(j3, m3)
    {
        return SignedSqrt::zero();
    }

    let mut pre = delta_sq(j1, j2, j3);
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        pre *= BigRational::from_integer(fact_int((j + m) / 2) * fact_int((j - m) / 2));
    }

    // t runs over integers; work with twice-values and halve at the end
    let t_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let t_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = BigRational::zero();
    let mut t = t_min;
    while t <= t_max {
        let den = fact_int(t / 2)
            * fact_int((j3 - j2 + t + m1) / 2)
            * fact_int((j3 - j1 + t - m2) / 2)
            * fact_int((j1 + j2 - j3 - t) / 2)
            * fact_int((j1 - t - m1) / 2)
            * fact_int((j2 - t + m2) / 2);
        let term = BigRational::new(BigInt::one(), den);
        if (t / 2) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t += 2;
    }

    let phase = (j1 - j2 - m3) / 2;
    combine(pre, sum, phase.rem_euclid(2) == 1)
}

/// Exact 6j symbol `{j1 j2 j3; j4 j5 j6}` from twice-values.
pub fn six_j(j1: i32, j2: i32, j3: i32, j4: i32, j5: i32, j6: i32) -> SignedSqrt {
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if triads.iter().any(|&(a, b, c)| !triangle2(a, b, c)) {
        return SignedSqrt::zero();
    }
    let mut pre = BigRational::one();
    for &(a, b, c) in &triads {
        pre *= delta_sq(a, b, c);
    }

    let a: Vec<i32> = triads.iter().map(|&(x, y, z)| (x + y + z) / 2).collect();
    let b = [
        (j1 + j2 + j4 + j5) / 2,
        (j2 + j3 + j5 + j6) / 2,
        (j3 + j1 + j6 + j4) / 2,
    ];
    let t_min = *a.iter().max().unwrap();
    let t_max = *b.iter().min().unwrap();
    let mut sum = BigRational::zero();
    for t in t_min..=t_max {
        let mut den = BigInt::one();
        for &ai in &a {
            den *= fact_int(t - ai);
        }
        for &bi in &b {
            den *= fact_int(bi - t);
        }
        let term = BigRational::new(fact_int(t + 1), den);
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    combine(pre, sum, false)
}
