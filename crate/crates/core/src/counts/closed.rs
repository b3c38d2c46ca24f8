//! Closed forms for `D = F_q`, `F_q^*` and `F_q \ {0, 1}`.

use crate::combinatorics::{binom, sign};
use crate::gf::{Field, FieldElement};
use crate::Count;

use super::{exact_div_q, CountsError, FieldOrder};

/// `v(b) = q - 1` at `b = 0` and `-1` elsewhere.
pub fn v_weight(field: &Field, b: FieldElement) -> i64 {
    if b.is_zero() {
        field.q() as i64 - 1
    } else {
        -1
    }
}

fn check_k(k: u64, max: u64) -> Result<(), CountsError> {
    if k > max {
        return Err(CountsError::KOutOfRange { k, max });
    }
    Ok(())
}

/// `N(k, b, F_q)`: `binom(q, k) / q` when `p ∤ k`, otherwise
/// `(binom(q, k) + (-1)^{k + k/p} v(b) binom(q/p, k/p)) / q`.
pub fn count_full_field(field: &Field, k: u64, b: FieldElement) -> Result<Count, CountsError> {
    field.check(b)?;
    let (q, p) = (field.q() as u64, field.p() as u64);
    check_k(k, q)?;
    let mut num = binom::<Count>(q as i64, k);
    if k.is_multiple_of(p) {
        let m = (q / p) as i64;
        num += sign::<Count>(k + k / p) * Count::from(v_weight(field, b)) * binom::<Count>(m, k / p);
    }
    exact_div_q(num, q, "q N(k, b, F_q)")
}

/// `N(k, b, F_q^*) = (binom(q - 1, k) + (-1)^{k + floor(k/p)} v(b) binom(q/p - 1, floor(k/p))) / q`.
pub fn count_punctured_field(
    field: &Field,
    k: u64,
    b: FieldElement,
) -> Result<Count, CountsError> {
    field.check(b)?;
    let (q, p) = (field.q() as u64, field.p() as u64);
    check_k(k, q - 1)?;
    let m = (q / p) as i64;
    let n = k / p;
    let num = binom::<Count>(q as i64 - 1, k)
        + sign::<Count>(k + n) * Count::from(v_weight(field, b)) * binom::<Count>(m - 1, n);
    exact_div_q(num, q, "q N(k, b, F_q^*)")
}

/// `N(k, b, F_q \ {0, 1}) = (binom(q - 2, k) + (-1)^k R^2_k) / q - (-1)^k S(k, k·1 - b)`.
pub fn count_two_removed(field: &Field, k: u64, b: FieldElement) -> Result<Count, CountsError> {
    field.check(b)?;
    let q = field.q() as u64;
    if q <= 2 {
        return Err(CountsError::FieldTooSmall);
    }
    check_k(k, q - 2)?;
    let order = FieldOrder::of(field);
    let s_arg = field.sub(field.from_int((k % field.p() as u64) as i64), b);
    let sk = sign::<Count>(k);
    let num = binom::<Count>(q as i64 - 2, k) + sk.clone() * order.r2::<Count>(k)
        - sk * Count::from(q) * order.s_kb_at::<Count>(field, k, s_arg);
    exact_div_q(num, q, "q N(k, b, F_q \\ {0, 1})")
}
