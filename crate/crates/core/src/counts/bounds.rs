//! Error bounds for `|q N(k, b, D) - binom(n, k)|`, all scaled by `q` so every
//! comparison is an integer comparison.

use crate::combinatorics::{binom, sign};
use crate::Count;

use super::CountsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMode {
    /// Any exclusion set, `p < q`.
    General,
    /// `p < q` and, after translating `a_1` to zero, `{b, a_2, ..., a_c}` is F_p-independent.
    Independent,
    /// `q = p`; the comparison is shifted by `(-1)^k binom(k + c - 1, c - 1)`.
    PrimeField,
}

impl BoundMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMode::General => "general",
            BoundMode::Independent => "independent",
            BoundMode::PrimeField => "prime_field",
        }
    }
}

/// `|error + shift| <= scaled`, where `error = q N - binom(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub mode: BoundMode,
    /// `q` times the bound.
    pub scaled: Count,
    /// Zero outside prime-field mode.
    pub shift: Count,
}

impl Bound {
    pub fn holds(&self, error: &Count) -> bool {
        let shifted: Count = error + &self.shift;
        num_traits::Signed::abs(&shifted) <= self.scaled
    }
}

/// `(q - p) binom(k + c - 2, c - 2) binom(q/p - 1, floor(k/p))`.
pub fn general_kernel_bound(q: u64, p: u64, c: u64, k: u64) -> Count {
    assert!(c >= 2);
    Count::from(q - p)
        * binom::<Count>((k + c - 2) as i64, c - 2)
        * binom::<Count>((q / p) as i64 - 1, k / p)
}

/// `p max_{0<=j<=k} binom(k + c - 2 - j, c - 2) binom(q/p - 1, floor(j/p))`.
pub fn independent_kernel_bound(q: u64, p: u64, c: u64, k: u64) -> Count {
    assert!(c >= 2);
    let m1 = (q / p) as i64 - 1;
    let best = (0..=k)
        .map(|j| binom::<Count>((k + c - 2 - j) as i64, c - 2) * binom::<Count>(m1, j / p))
        .max()
        .unwrap_or_default();
    Count::from(p) * best
}

/// The bound for `|D| = n <= q - 2` and `k >= 0` in the requested mode.
pub fn error_bound(q: u64, p: u64, n: u64, k: u64, mode: BoundMode) -> Result<Bound, CountsError> {
    let fits_field = match mode {
        BoundMode::General | BoundMode::Independent => p < q,
        BoundMode::PrimeField => p == q,
    };
    if !fits_field || n + 2 > q {
        return Err(CountsError::BoundNotApplicable { mode, q, p, n });
    }
    let c = q - n;
    let zero = Count::from(0);
    Ok(match mode {
        BoundMode::General => Bound {
            mode,
            scaled: general_kernel_bound(q, p, c, k),
            shift: zero,
        },
        BoundMode::Independent => Bound {
            mode,
            scaled: independent_kernel_bound(q, p, c, k),
            shift: zero,
        },
        BoundMode::PrimeField => Bound {
            mode,
            scaled: Count::from(q) * binom::<Count>((k + c - 2) as i64, c - 2),
            shift: sign::<Count>(k) * binom::<Count>((k + c - 1) as i64, c - 1),
        },
    })
}
