//! Number theory behind the length composition: the minimal non-divisor of
//! the target length, normalised Bézout witnesses, the explicit winding
//! counts, and a general nonnegative solver for small lengths.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("target length must be positive")]
    ZeroLength,
    #[error("walk lengths must be positive (got {l1}, {l2})")]
    ZeroWalkLength { l1: u64, l2: u64 },
    #[error("h = {h} does not divide {ell}")]
    HNotDividesEll { h: u64, ell: BigUint },
    #[error("winding counts u = {u}, v = {v} are not both nonnegative")]
    NegativeWinding { u: BigInt, v: BigInt },
}

/// Target length together with the smallest `k >= 3` that does not divide it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCondition {
    #[serde(with = "crate::decimal")]
    pub ell: BigUint,
    pub k: u64,
}

impl StarCondition {
    /// Whether `k` is a prime power, which every minimal non-divisor is.
    pub fn k_is_prime_power(&self) -> bool {
        is_prime_power(self.k)
    }

    /// `k >= 7` and `ell >= 10^7·k^6`.
    pub fn in_asymptotic_regime(&self) -> bool {
        self.k >= 7 && self.ell >= BigUint::from(10u32).pow(7) * BigUint::from(self.k).pow(6)
    }
}

pub fn is_prime_power(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= k && k % p != 0 {
        p += 1;
    }
    if k % p != 0 {
        return true;
    }
    let mut rest = k;
    while rest % p == 0 {
        rest /= p;
    }
    rest == 1
}

/// Smallest `k >= 3` with `k ∤ ell`.
pub fn minimal_nondivisor(ell: &BigUint) -> Result<StarCondition, ArithError> {
    if ell.is_zero() {
        return Err(ArithError::ZeroLength);
    }
    let mut k = 3u64;
    while (ell % k).is_zero() {
        k += 1;
    }
    Ok(StarCondition {
        ell: ell.clone(),
        k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bezout {
    pub h: u64,
    pub q: u64,
    pub p: i128,
}

/// `h = gcd(2·l1, l2)` with `q·2·l1 + p·l2 = h`, taking the smallest `q >= 0`
/// (so in particular `q < l2`, and then `-p < 2·l1`).
pub fn bezout_qp(l1: u64, l2: u64) -> Result<Bezout, ArithError> {
    if l1 == 0 || l2 == 0 {
        return Err(ArithError::ZeroWalkLength { l1, l2 });
    }
    let a = 2 * l1 as i128;
    let b = l2 as i128;
    let e = a.extended_gcd(&b);
    let h = e.gcd;
    let period = b / h;
    let q = e.x.rem_euclid(period);
    let p = (h - q * a) / b;
    debug_assert_eq!(q * a + p * b, h);
    Ok(Bezout {
        h: h as u64,
        q: q as u64,
        p,
    })
}

/// Arithmetic witnesses of the explicit winding counts `u`, `v` with
/// `u·l1 + v·l2 = ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposerCertificate {
    pub l1: u64,
    pub l2: u64,
    pub h: u64,
    pub q: u64,
    #[serde(with = "crate::decimal")]
    pub p: i128,
    #[serde(with = "crate::decimal")]
    pub ell: BigUint,
    #[serde(with = "crate::decimal")]
    pub ell_prime: BigUint,
    #[serde(with = "crate::decimal")]
    pub r: BigUint,
    #[serde(with = "crate::decimal")]
    pub u: BigUint,
    #[serde(with = "crate::decimal")]
    pub v: BigUint,
}

impl ComposerCertificate {
    /// Rechecks every identity the certificate claims.
    pub fn verify(&self) -> bool {
        let Ok(b) = bezout_qp(self.l1, self.l2) else {
            return false;
        };
        let s = BigUint::from(2 * self.l1 + self.l2);
        b.h == self.h
            && b.q == self.q
            && b.p == self.p
            && &self.ell_prime * self.h == self.ell
            && self.r == &self.ell_prime / &s
            && &self.u * self.l1 + &self.v * self.l2 == self.ell
    }
}

/// The explicit choice `ell' = ell/h`, `r = ⌊ell'/(2·l1+l2)⌋`,
/// `u = 2rh + (ell' - (2·l1+l2)r)·2q`, `v = rh + (ell' - (2·l1+l2)r)·p`.
///
/// `u·l1 + v·l2 = ell` holds whenever `h | ell`; `v` can be negative when
/// `ell` is small compared with the walk lengths.
pub fn paper_compose(l1: u64, l2: u64, ell: &BigUint) -> Result<ComposerCertificate, ArithError> {
    let Bezout { h, q, p } = bezout_qp(l1, l2)?;
    let (ell_prime, rem) = ell.div_rem(&BigUint::from(h));
    if !rem.is_zero() {
        return Err(ArithError::HNotDividesEll {
            h,
            ell: ell.clone(),
        });
    }
    let s = BigUint::from(2 * l1 + l2);
    let (r, leftover) = ell_prime.div_rem(&s);
    let rh = BigInt::from(&r * h);
    let leftover = BigInt::from(leftover);
    let u: BigInt = &rh * 2u32 + &leftover * (2 * q);
    let v: BigInt = rh + &leftover * p;

    let total = &u * l1 + &v * l2;
    assert_eq!(total, BigInt::from(ell.clone()), "winding identity failed");

    match (u.to_biguint(), v.to_biguint()) {
        (Some(u), Some(v)) => Ok(ComposerCertificate {
            l1,
            l2,
            h,
            q,
            p,
            ell: ell.clone(),
            ell_prime,
            r,
            u,
            v,
        }),
        _ => Err(ArithError::NegativeWinding { u, v }),
    }
}

/// Some `(u, v)` with `u, v >= 0`, `u + v >= 1` and `u·l1 + v·l2 = ell`, namely
/// the one with the smallest `v`; `None` if no such pair exists.
pub fn solve_nonneg(l1: u64, l2: u64, ell: &BigUint) -> Option<(BigUint, BigUint)> {
    if l1 == 0 || l2 == 0 || ell.is_zero() {
        return None;
    }
    let g = l1.gcd(&l2);
    let (e, rem) = ell.div_rem(&BigUint::from(g));
    if !rem.is_zero() {
        return None;
    }
    let (a, b) = (l1 / g, l2 / g);
    // smallest v >= 0 with v·b ≡ e (mod a)
    let v = if a == 1 {
        0u64
    } else {
        let inv = (b as i128).extended_gcd(&(a as i128)).x.rem_euclid(a as i128) as u128;
        let e_mod = (&e % a).to_u64().expect("residue below a") as u128;
        ((e_mod * inv) % a as u128) as u64
    };
    let used = BigUint::from(v) * b;
    if used > e {
        return None;
    }
    let u = (e - used) / a;
    Some((u, BigUint::from(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn minimal_nondivisor_examples() {
        assert_eq!(minimal_nondivisor(&big(12)).unwrap().k, 5);
        assert_eq!(minimal_nondivisor(&big(420)).unwrap().k, 8);
        assert_eq!(minimal_nondivisor(&big(7)).unwrap().k, 3);
        assert_eq!(minimal_nondivisor(&big(1)).unwrap().k, 3);
        assert_eq!(minimal_nondivisor(&big(0)), Err(ArithError::ZeroLength));
    }

    #[test]
    fn minimal_nondivisor_is_prime_power() {
        for ell in 1..=1_000_000u64 {
            let k = minimal_nondivisor(&big(ell)).unwrap().k;
            assert!(is_prime_power(k), "ell={ell} k={k}");
        }
    }

    #[test]
    fn regime_flag() {
        let k7 = StarCondition { ell: big(10_000_000 * 117_649), k: 7 };
        assert!(k7.in_asymptotic_regime());
        let small = minimal_nondivisor(&big(10_020)).unwrap();
        assert_eq!(small.k, 7);
        assert!(!small.in_asymptotic_regime());
        assert!(small.k_is_prime_power());
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_qp(5, 9).unwrap(), Bezout { h: 1, q: 1, p: -1 });
        assert_eq!(bezout_qp(3, 6).unwrap(), Bezout { h: 6, q: 0, p: 1 });
        assert_eq!(bezout_qp(4, 4).unwrap(), Bezout { h: 4, q: 0, p: 1 });
    }

    #[test]
    fn explicit_composition_examples() {
        let c = paper_compose(5, 9, &big(1900)).unwrap();
        assert_eq!((c.u.clone(), c.v.clone()), (big(200), big(100)));
        assert_eq!(c.r, big(100));
        assert!(c.verify());
        let c = paper_compose(5, 9, &big(1903)).unwrap();
        assert_eq!((c.u.clone(), c.v.clone()), (big(206), big(97)));
        assert_eq!(
            paper_compose(5, 9, &big(24)),
            Err(ArithError::NegativeWinding {
                u: BigInt::from(12),
                v: BigInt::from(-4)
            })
        );
        assert!(matches!(
            paper_compose(4, 4, &big(10)),
            Err(ArithError::HNotDividesEll { h: 4, .. })
        ));
    }

    #[test]
    fn certificate_json_uses_decimal_strings() {
        let c = paper_compose(5, 9, &big(1903)).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["u"], "206");
        assert_eq!(json["p"], "-1");
        let back: ComposerCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn solve_nonneg_examples() {
        assert_eq!(solve_nonneg(5, 9, &big(19)), Some((big(2), big(1))));
        assert_eq!(solve_nonneg(5, 9, &big(20)), Some((big(4), big(0))));
        assert_eq!(solve_nonneg(5, 9, &big(7)), None);
        assert_eq!(solve_nonneg(4, 4, &big(10)), None);
        assert_eq!(solve_nonneg(1, 1, &big(0)), None);
    }

    // Reachability table over 0..=limit for sums of l1 and l2.
    fn representable(l1: usize, l2: usize, limit: usize) -> Vec<bool> {
        let mut rep = vec![false; limit + 1];
        rep[0] = true;
        for e in 1..=limit {
            rep[e] = (e >= l1 && rep[e - l1]) || (e >= l2 && rep[e - l2]);
        }
        rep
    }

    #[test]
    fn solve_nonneg_matches_exhaustive_small() {
        for l1 in 1..=30usize {
            for l2 in 1..=30usize {
                let rep = representable(l1, l2, 400);
                for (ell, &expected) in rep.iter().enumerate().skip(1) {
                    let got = solve_nonneg(l1 as u64, l2 as u64, &big(ell as u64));
                    assert_eq!(got.is_some(), expected, "l1={l1} l2={l2} ell={ell}");
                    if let Some((u, v)) = got {
                        assert_eq!(u * l1 + v * l2, big(ell as u64));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bezout_postconditions(l1 in 1u64..1_000_000, l2 in 1u64..1_000_000) {
            let b = bezout_qp(l1, l2).unwrap();
            prop_assert_eq!(b.h, (2 * l1).gcd(&l2));
            prop_assert_eq!(b.q as i128 * 2 * l1 as i128 + b.p * l2 as i128, b.h as i128);
            prop_assert!(b.q < l2);
            prop_assert!(-b.p < 2 * l1 as i128);
        }

        #[test]
        fn compose_identity_holds_even_when_negative(
            l1 in 1u64..5_000, l2 in 1u64..5_000, mult in 1u64..1_000_000_000_000
        ) {
            let h = (2 * l1).gcd(&l2);
            let ell = big(h) * mult;
            match paper_compose(l1, l2, &ell) {
                Ok(c) => prop_assert!(c.verify()),
                Err(ArithError::NegativeWinding { u, v }) => {
                    prop_assert_eq!(u * l1 + v * l2, BigInt::from(ell));
                }
                Err(e) => prop_assert!(false, "unexpected {}", e),
            }
        }
    }
}
