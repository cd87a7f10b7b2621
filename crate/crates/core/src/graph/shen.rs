//! Shen's girth bound `3·⌈ln((2+√7)/3)·n/d⌉` evaluated exactly.
//!
//! The constant is enclosed in a rational interval `[lo, hi] / 10^digits`
//! computed in fixed point with outward rounding, so the ceiling is decided
//! by integer comparisons only.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::GraphError;

const BASE_DIGITS: u32 = 60;
const NEAR_INTEGER: f64 = 1e-9;

/// Enclosure of ln((2+√7)/3) scaled by `10^digits`.
#[derive(Debug, Clone)]
struct Enclosure {
    digits: u32,
    lo: BigUint,
    hi: BigUint,
}

fn base_enclosure() -> &'static Enclosure {
    static CELL: OnceLock<Enclosure> = OnceLock::new();
    CELL.get_or_init(|| enclose(BASE_DIGITS))
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

// ln(x) = 2·atanh(y) with y = (x-1)/(x+1) = (√7-1)/(√7+5) for x = (2+√7)/3.
fn enclose(digits: u32) -> Enclosure {
    let scale = BigUint::from(10u32).pow(digits);
    let scale2 = &scale * &scale;

    // floor(√7·scale) <= √7·scale < floor + 1
    let sqrt7_lo = (BigUint::from(7u32) * &scale2).sqrt();
    let sqrt7_hi = &sqrt7_lo + 1u32;

    // y is increasing in √7, so the endpoints bound it.
    let y_lo = ((&sqrt7_lo - &scale) * &scale) / (&sqrt7_lo + &scale * 5u32);
    let y_hi = ceil_div(
        &((&sqrt7_hi - &scale) * &scale),
        &(&sqrt7_hi + &scale * 5u32),
    );

    let y2_lo = (&y_lo * &y_lo) / &scale;
    let y2_hi = ceil_div(&(&y_hi * &y_hi), &scale);

    // Lower bound: truncated series with every term rounded down.
    let mut sum_lo = BigUint::zero();
    let mut pow = y_lo.clone();
    let mut j = 1u32;
    while !pow.is_zero() {
        sum_lo += &pow / j;
        pow = (&pow * &y2_lo) / &scale;
        j += 2;
    }

    // Upper bound: terms rounded up until they drop below one unit, then the
    // geometric tail (ratio y^2 < 1/2) is at most one further term.
    let mut sum_hi = BigUint::zero();
    let mut pow = y_hi.clone();
    let mut j = 1u32;
    loop {
        let term = ceil_div(&pow, &BigUint::from(j));
        let done = term <= BigUint::one();
        sum_hi += &term;
        if done {
            sum_hi += 2u32;
            break;
        }
        pow = ceil_div(&(&pow * &y2_hi), &scale);
        j += 2;
    }

    Enclosure {
        digits,
        lo: sum_lo * 2u32,
        hi: sum_hi * 2u32,
    }
}

/// Rigorous lower and upper bounds of `ln((2+√7)/3)` as `f64`, for reporting.
pub fn shen_ratio_bounds() -> (f64, f64) {
    let e = base_enclosure();
    let scale = 10f64.powi(e.digits as i32);
    (to_f64(&e.lo) / scale, to_f64(&e.hi) / scale)
}

fn to_f64(x: &BigUint) -> f64 {
    x.to_string().parse().unwrap_or(f64::INFINITY)
}

// floor(c·n/d) for the enclosure, if both endpoints agree and the value is
// not within NEAR_INTEGER of an integer boundary.
fn decided_floor(e: &Enclosure, n: u64, d: u64) -> Option<BigUint> {
    let denom = BigUint::from(d) * BigUint::from(10u32).pow(e.digits);
    let (q_lo, r_lo) = (&e.lo * n).div_rem(&denom);
    let (q_hi, r_hi) = (&e.hi * n).div_rem(&denom);
    if q_lo != q_hi {
        return None;
    }
    let frac_lo = to_f64(&r_lo) / to_f64(&denom);
    let frac_hi = to_f64(&r_hi) / to_f64(&denom);
    if frac_lo < NEAR_INTEGER || frac_hi > 1.0 - NEAR_INTEGER {
        // Close to an integer: only trust it when the enclosure is very tight.
        if e.digits < 4 * BASE_DIGITS {
            return None;
        }
    }
    Some(q_lo)
}

/// Girth bound for an oriented graph on `n` vertices with minimum outdegree at
/// least `d`.
pub fn shen_girth_bound(n: u64, d: u64) -> Result<u64, GraphError> {
    if d < 1 || d >= n {
        return Err(GraphError::InvalidDegree { n, d });
    }
    let mut floor = decided_floor(base_enclosure(), n, d);
    let mut digits = 2 * BASE_DIGITS;
    while floor.is_none() {
        floor = decided_floor(&enclose(digits), n, d);
        digits *= 2;
    }
    // The constant is irrational, so c·n/d is never an integer and the ceiling
    // is floor + 1.
    let ceil = floor.unwrap() + 1u32;
    let ceil: u64 = ceil.try_into().expect("bound fits in u64");
    Ok(3 * ceil)
}

/// Smallest integer `d` with `d >= 63n/(32k)`.
pub fn corollary_shen_threshold(n: u64, k: u64) -> Result<u64, GraphError> {
    if k < 7 {
        return Err(GraphError::KTooSmall(k));
    }
    let num = 63 * n as u128;
    let den = 32 * k as u128;
    Ok(num.div_ceil(den) as u64)
}
