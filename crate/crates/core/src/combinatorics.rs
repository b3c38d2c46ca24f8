//! Exact integer combinatorics, generic over the integer type.
//!
//! Upper arguments are signed: `binom(-1, k) = (-1)^k` and friends are needed
//! when `q = p` makes `q/p - 2 = -1` appear inside the counting formulas.
//! Fixed-width types overflow like any other arithmetic on them; use
//! [`crate::Count`] when the values are not known to be small.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Signed exact integers usable by the formulas in this crate
/// (`i64`, `i128`, [`num_bigint::BigInt`], ...).
pub trait ExactInt: Clone + Debug + Integer + Signed + FromPrimitive {
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("value fits the integer type")
    }
}

impl<T: Clone + Debug + Integer + Signed + FromPrimitive> ExactInt for T {}

/// `(-1)^n`.
pub fn sign<T: ExactInt>(n: u64) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// `(x)_k = x (x - 1) ... (x - k + 1)`, with `(x)_0 = 1` for every `x`.
pub fn falling_factorial<T: ExactInt>(x: i64, k: u64) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_i64_exact(x - i as i64);
    }
    acc
}

pub fn factorial<T: ExactInt>(k: u64) -> T {
    falling_factorial(k as i64, k)
}

/// Generalized binomial `(x)_k / k!`.
pub fn binom<T: ExactInt>(x: i64, k: u64) -> T {
    if x < 0 {
        // binom(x, k) = (-1)^k binom(k - x - 1, k)
        let upper = k as i64 - x - 1;
        return sign::<T>(k) * binom::<T>(upper, k);
    }
    let x_u = x as u64;
    if k > x_u {
        return T::zero();
    }
    let k = k.min(x_u - k);
    let mut acc = T::one();
    for i in 0..k {
        // acc = binom(x, i) here, and binom(x, i) (x - i) = (i + 1) binom(x, i + 1)
        acc = acc * T::from_i64_exact(x - i as i64) / T::from_u64(i + 1).unwrap();
    }
    acc
}

/// `sum_{j=0}^{m} (-1)^j binom(r, j)`, evaluated as `(-1)^m binom(r - 1, m)`.
pub fn alt_prefix_sum<T: ExactInt>(r: i64, m: u64) -> T {
    sign::<T>(m) * binom::<T>(r - 1, m)
}

/// Term-by-term evaluation of [`alt_prefix_sum`].
pub fn alt_prefix_sum_direct<T: ExactInt>(r: i64, m: u64) -> T {
    (0..=m).fold(T::zero(), |acc, j| acc + sign::<T>(j) * binom::<T>(r, j))
}

/// `sum_{j=0}^{k} -(-1)^{floor(j/p)} binom(a, floor(j/p))` in closed form:
/// `-p (-1)^n binom(a - 1, n) + (p - 1 - r) (-1)^n binom(a, n)` with
/// `k = n p + r`, `0 <= r < p`.
pub fn block_alt_sum<T: ExactInt>(a: i64, k: u64, p: u64) -> T {
    let (n, r) = (k / p, k % p);
    let s = sign::<T>(n);
    let p_t = T::from_u64(p).unwrap();
    let rest = T::from_u64(p - 1 - r).unwrap();
    -(p_t * s.clone() * binom::<T>(a - 1, n)) + rest * s * binom::<T>(a, n)
}

/// Term-by-term evaluation of [`block_alt_sum`].
pub fn block_alt_sum_direct<T: ExactInt>(a: i64, k: u64, p: u64) -> T {
    (0..=k).fold(T::zero(), |acc, j| {
        acc - sign::<T>(j / p) * binom::<T>(a, j / p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial::<i64>(5, 2), 20);
        assert_eq!(falling_factorial::<i64>(0, 0), 1);
        assert_eq!(falling_factorial::<i64>(-1, 3), -6);
        assert_eq!(falling_factorial::<i64>(3, 5), 0);
    }

    #[test]
    fn binom_examples() {
        // 124*123*122*121*120 / 120
        assert_eq!(binom::<BigInt>(124, 5), big(124 * 123 * 122 * 121));
        assert_eq!(binom::<BigInt>(124, 5), big(225_150_024));
        assert_eq!(binom::<i64>(-1, 4), 1);
        assert_eq!(binom::<i64>(-1, 3), -1);
        assert_eq!(binom::<i64>(3, 5), 0);
        assert_eq!(binom::<i64>(0, 0), 1);
        assert_eq!(binom::<i64>(-3, 2), 6);
    }

    #[test]
    fn binom_times_factorial_is_falling_factorial() {
        for x in -50..=50i64 {
            for k in 0..=50u64 {
                let lhs = binom::<BigInt>(x, k) * factorial::<BigInt>(k);
                assert_eq!(lhs, falling_factorial::<BigInt>(x, k), "x={x} k={k}");
            }
        }
    }

    #[test]
    fn pascal_rule() {
        for x in -30..=60i64 {
            for k in 1..=40u64 {
                assert_eq!(
                    binom::<BigInt>(x, k),
                    binom::<BigInt>(x - 1, k - 1) + binom::<BigInt>(x - 1, k)
                );
            }
        }
    }

    #[test]
    fn integer_types_agree() {
        for x in -20..=40i64 {
            for k in 0..=15u64 {
                let b = binom::<BigInt>(x, k);
                assert_eq!(BigInt::from(binom::<i128>(x, k)), b);
                assert_eq!(BigInt::from(binom::<i64>(x, k)), b);
            }
        }
    }

    #[test]
    fn alt_prefix_sum_examples() {
        assert_eq!(alt_prefix_sum::<i64>(4, 2), 3);
        assert_eq!(alt_prefix_sum::<i64>(0, 0), 1);
        let lhs = alt_prefix_sum_direct::<BigInt>(127, 5);
        assert_eq!(lhs, -binom::<BigInt>(126, 5));
        assert_eq!(alt_prefix_sum::<BigInt>(127, 5), lhs);
    }

    #[test]
    fn alt_prefix_sum_identity_grid() {
        for r in -20..=200i64 {
            for m in 0..=60u64 {
                assert_eq!(
                    alt_prefix_sum::<BigInt>(r, m),
                    alt_prefix_sum_direct::<BigInt>(r, m),
                    "r={r} m={m}"
                );
            }
        }
    }

    #[test]
    fn block_alt_sum_examples() {
        for a in [-3i64, 0, 1, 7, 63] {
            assert_eq!(block_alt_sum::<i64>(a, 0, 2), -1);
        }
        // literal: j = 0..5, floor(j/2) = 0,0,1,1,2,2
        let literal = -2 * 1 + 2 * 63 - 2 * 1953;
        assert_eq!(block_alt_sum_direct::<i64>(63, 5, 2), literal);
        assert_eq!(block_alt_sum::<i64>(63, 5, 2), literal);
    }

    #[test]
    fn block_alt_sum_identity_and_bound_grid() {
        for p in [2u64, 3, 5, 7] {
            for a in -5..=100i64 {
                for k in 0..=100u64 {
                    let closed = block_alt_sum::<BigInt>(a, k, p);
                    assert_eq!(closed, block_alt_sum_direct::<BigInt>(a, k, p), "a={a} k={k} p={p}");
                    if a >= 0 {
                        assert!(closed <= BigInt::from(p) * binom::<BigInt>(a, k / p));
                    }
                }
            }
        }
    }
}
