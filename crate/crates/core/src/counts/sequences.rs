//! Auxiliary integer sequences of the counting formulas.
//!
//! With `m = q/p`:
//!
//! * `d_k = -(-1)^{k + floor(k/p)} k! binom(m - 1, floor(k/p))`, the gap
//!   `M(k,1,F_q^*) - M(k,0,F_q^*)` between ordered solution counts;
//! * `R^1_k = (-1)^k d_k / k! = -(-1)^{floor(k/p)} binom(m - 1, floor(k/p))`;
//! * `R^c_k = sum_{j<=k} R^{c-1}_j`, the error kernel for `c` excluded points;
//! * `S(k, b)`, the partial sum of `R^1_i` over `i <= k` with `i ≡ b (mod p)`,
//!   and `0` when `b` lies outside the prime field.

use crate::combinatorics::{binom, factorial, sign, ExactInt};
use crate::gf::{is_prime, Field, FieldElement};

use super::CountsError;

/// The pair `(q, p)` the sequences depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldOrder {
    q: u64,
    p: u64,
}

impl FieldOrder {
    pub fn new(q: u64, p: u64) -> Result<Self, CountsError> {
        let mut t = q;
        while t > 1 && t.is_multiple_of(p) {
            t /= p;
        }
        if !is_prime(p) || q < p || t != 1 {
            return Err(CountsError::InvalidOrder { q, p });
        }
        Ok(Self { q, p })
    }

    pub fn of(field: &Field) -> Self {
        Self {
            q: field.q() as u64,
            p: field.p() as u64,
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_prime_field(&self) -> bool {
        self.q == self.p
    }

    /// `q / p` as a signed integer, the upper argument source for every binomial here.
    fn m(&self) -> i64 {
        (self.q / self.p) as i64
    }

    fn check_d_range(&self, k: u64) -> Result<(), CountsError> {
        if k > self.q - 1 {
            return Err(CountsError::KOutOfRange { k, max: self.q - 1 });
        }
        Ok(())
    }

    /// `d_k` by its closed form, `0 <= k <= q - 1`.
    pub fn d_seq<T: ExactInt>(&self, k: u64) -> Result<T, CountsError> {
        self.check_d_range(k)?;
        let n = k / self.p;
        Ok(-(sign::<T>(k + n) * factorial::<T>(k) * binom::<T>(self.m() - 1, n)))
    }

    /// `d_0, ..., d_k` from `d_0 = -1`, `d_1 = 1`, `d_k = -k d_{k-1}` when
    /// `p ∤ k` and `d_k = (q - k) d_{k-1}` when `p | k`.
    pub fn d_seq_by_recursion<T: ExactInt>(&self, k: u64) -> Result<Vec<T>, CountsError> {
        self.check_d_range(k)?;
        let mut out = vec![-T::one()];
        if k >= 1 {
            out.push(T::one());
        }
        for j in 2..=k {
            let prev = out[j as usize - 1].clone();
            let factor = if j % self.p == 0 {
                T::from_i64_exact((self.q - j) as i64)
            } else {
                -T::from_i64_exact(j as i64)
            };
            out.push(factor * prev);
        }
        Ok(out)
    }

    pub fn r1<T: ExactInt>(&self, k: u64) -> T {
        let n = k / self.p;
        -(sign::<T>(n) * binom::<T>(self.m() - 1, n))
    }

    /// `R^2_k` in closed form:
    /// `-p (-1)^n binom(m - 2, n) + (p - 1 - r) (-1)^n binom(m - 1, n)`, `k = n p + r`.
    pub fn r2<T: ExactInt>(&self, k: u64) -> T {
        crate::combinatorics::block_alt_sum::<T>(self.m() - 1, k, self.p)
    }

    /// `R^c_k` for `c >= 1`, as the single sum
    /// `-sum_{j=0}^{k} (-1)^{floor(j/p)} binom(k + c - 2 - j, c - 2) binom(m - 1, floor(j/p))`
    /// (`R^1` directly). In a prime field with `k < p` this collapses to
    /// `-binom(k + c - 1, c - 1)`, which is what gets returned there.
    pub fn r_c<T: ExactInt>(&self, c: u64, k: u64) -> Result<T, CountsError> {
        if c == 0 {
            return Err(CountsError::ZeroKernelOrder);
        }
        if c == 1 {
            return Ok(self.r1(k));
        }
        if self.is_prime_field() && k < self.p {
            let closed = -binom::<T>((k + c - 1) as i64, c - 1);
            debug_assert_eq!(closed, self.r_c_single_sum::<T>(c, k));
            return Ok(closed);
        }
        Ok(self.r_c_single_sum(c, k))
    }

    /// The single-sum form of `R^c_k` for `c >= 2`.
    pub fn r_c_single_sum<T: ExactInt>(&self, c: u64, k: u64) -> T {
        assert!(c >= 2);
        let m1 = self.m() - 1;
        let total = (0..=k).fold(T::zero(), |acc, j| {
            let n = j / self.p;
            acc + sign::<T>(n)
                * binom::<T>((k + c - 2 - j) as i64, c - 2)
                * binom::<T>(m1, n)
        });
        -total
    }

    /// `R^c_0, ..., R^c_k` by `c - 1` rounds of prefix sums over `R^1`.
    pub fn r_c_by_prefix_sums<T: ExactInt>(&self, c: u64, k: u64) -> Result<Vec<T>, CountsError> {
        if c == 0 {
            return Err(CountsError::ZeroKernelOrder);
        }
        let mut row: Vec<T> = (0..=k).map(|j| self.r1(j)).collect();
        for _ in 1..c {
            let mut acc = T::zero();
            for v in row.iter_mut() {
                acc = acc + v.clone();
                *v = acc.clone();
            }
        }
        Ok(row)
    }

    /// `S(k, b)` for `b` given by its prime-field residue (`None` when `b ∉ F_p`):
    /// `-(-1)^n binom(m - 2, n) + [<b>_p > <k>_p] (-1)^n binom(m - 1, n)`.
    pub fn s_kb<T: ExactInt>(&self, k: u64, residue: Option<u64>) -> T {
        let Some(r) = residue else {
            return T::zero();
        };
        let n = k / self.p;
        let s = sign::<T>(n);
        let mut out = -(s.clone() * binom::<T>(self.m() - 2, n));
        if r % self.p > k % self.p {
            out = out + s * binom::<T>(self.m() - 1, n);
        }
        out
    }

    /// `S(k, b)` summed term by term over the residue class.
    pub fn s_kb_literal<T: ExactInt>(&self, k: u64, residue: Option<u64>) -> T {
        let Some(r) = residue else {
            return T::zero();
        };
        (0..=k)
            .filter(|i| i % self.p == r % self.p)
            .fold(T::zero(), |acc, i| acc + self.r1::<T>(i))
    }

    /// [`Self::s_kb`] with `b` given as a field element.
    pub fn s_kb_at<T: ExactInt>(&self, field: &Field, k: u64, b: FieldElement) -> T {
        let residue = field.prime_residue(b).ok().map(u64::from);
        self.s_kb(k, residue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn order(q: u64, p: u64) -> FieldOrder {
        FieldOrder::new(q, p).unwrap()
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(FieldOrder::new(12, 2).is_err());
        assert!(FieldOrder::new(9, 9).is_err());
        assert!(FieldOrder::new(2, 4).is_err());
        assert!(FieldOrder::new(27, 3).is_ok());
    }

    #[test]
    fn d_seq_initial_values() {
        for (q, p) in [(4, 2), (5, 5), (9, 3), (128, 2)] {
            let o = order(q, p);
            assert_eq!(o.d_seq::<i64>(0).unwrap(), -1);
            assert_eq!(o.d_seq::<i64>(1).unwrap(), 1);
        }
        assert!(order(9, 3).d_seq::<i64>(9).is_err());
    }

    #[test]
    fn d_seq_prime_field_is_signed_factorial() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let o = order(p, p);
            for k in 1..p {
                let expected = sign::<BigInt>(k - 1) * factorial::<BigInt>(k);
                assert_eq!(o.d_seq::<BigInt>(k).unwrap(), expected);
            }
        }
    }

    #[test]
    fn d_seq_q9_k3() {
        let o = order(9, 3);
        let rec = o.d_seq_by_recursion::<i64>(3).unwrap();
        assert_eq!(rec, vec![-1, 1, -2, -12]);
        assert_eq!(o.d_seq::<i64>(3).unwrap(), -12);
    }

    #[test]
    fn d_seq_closed_form_matches_recursion() {
        for (q, p) in [(2, 2), (4, 2), (8, 2), (9, 3), (16, 2), (25, 5), (27, 3), (7, 7), (49, 7)] {
            let o = order(q, p);
            let rec = o.d_seq_by_recursion::<BigInt>(q - 1).unwrap();
            for (k, d) in rec.iter().enumerate() {
                assert_eq!(&o.d_seq::<BigInt>(k as u64).unwrap(), d, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn r1_values() {
        assert_eq!(order(128, 2).r1::<i64>(0), -1);
        assert_eq!(order(128, 2).r1::<i64>(5), -1953);
        for (q, p) in [(4, 2), (8, 2), (9, 3), (25, 5), (27, 3)] {
            let o = order(q, p);
            for k in 0..q {
                let via_d = sign::<BigInt>(k) * o.d_seq::<BigInt>(k).unwrap() / factorial::<BigInt>(k);
                assert_eq!(o.r1::<BigInt>(k), via_d, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn r_c_example_q128() {
        assert_eq!(order(128, 2).r_c::<i64>(4, 5).unwrap(), -6840);
    }

    #[test]
    fn r_c_prime_field_closed_form() {
        assert_eq!(order(7, 7).r_c::<i64>(3, 4).unwrap(), -15);
        for p in [2u64, 3, 5, 7, 11, 13] {
            let o = order(p, p);
            for c in 2..=6 {
                for k in 0..p {
                    assert_eq!(
                        o.r_c::<BigInt>(c, k).unwrap(),
                        o.r_c_single_sum::<BigInt>(c, k)
                    );
                }
            }
        }
    }

    #[test]
    fn r_c_forms_agree() {
        for (q, p) in [(4, 2), (5, 5), (8, 2), (9, 3), (16, 2), (25, 5), (27, 3), (32, 2)] {
            let o = order(q, p);
            for c in 1..=6 {
                let prefix = o.r_c_by_prefix_sums::<BigInt>(c, 40).unwrap();
                for (k, v) in prefix.iter().enumerate() {
                    assert_eq!(&o.r_c::<BigInt>(c, k as u64).unwrap(), v, "q={q} c={c} k={k}");
                }
            }
            for k in 0..=40 {
                assert_eq!(o.r2::<BigInt>(k), o.r_c_single_sum::<BigInt>(2, k));
            }
        }
        assert!(order(4, 2).r_c::<i64>(0, 1).is_err());
    }

    #[test]
    fn s_kb_forms_agree() {
        for (q, p) in [(4, 2), (5, 5), (7, 7), (8, 2), (9, 3), (16, 2), (25, 5), (27, 3)] {
            let o = order(q, p);
            for k in 0..=40 {
                for r in 0..p {
                    assert_eq!(
                        o.s_kb::<BigInt>(k, Some(r)),
                        o.s_kb_literal::<BigInt>(k, Some(r)),
                        "q={q} k={k} r={r}"
                    );
                }
                assert_eq!(o.s_kb::<i64>(k, None), 0);
            }
        }
    }

    #[test]
    fn s_kb_q8_k3_b1() {
        let o = order(8, 2);
        let literal = o.r1::<i64>(1) + o.r1::<i64>(3);
        assert_eq!(o.s_kb::<i64>(3, Some(1)), literal);
    }

    #[test]
    fn s_kb_prime_field_is_zero_or_minus_one() {
        for p in [2u64, 3, 5, 7, 11] {
            let o = order(p, p);
            for k in 0..p {
                for r in 0..p {
                    let s = o.s_kb::<i64>(k, Some(r));
                    assert!(s == 0 || s == -1);
                }
            }
        }
    }

    #[test]
    fn s_kb_outside_prime_field() {
        let f = Field::new(2, 3).unwrap();
        let o = FieldOrder::of(&f);
        for k in 0..8 {
            assert_eq!(o.s_kb_at::<i64>(&f, k, f.generator()), 0);
        }
    }
}
