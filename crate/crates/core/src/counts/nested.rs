//! `N(k, b, D)` through the nested sum of `S` terms.
//!
//! With `a_1 = 0`, `a_2 = 1` and `c >= 2`,
//! `q N = binom(q - c, k) + (-1)^k R^c_k - (-1)^k q S^c_k`, where
//! `S^c_k = sum S(k', k'·1 - b + i_1 a_c + ... + i_{c-2} a_3)` over all
//! `i_1 + ... + i_{c-2} <= k` and `k' = k - i_1 - ... - i_{c-2}`.
//! Exponential in `c`; used to cross-check the recursion.

use crate::combinatorics::{binom, sign};
use crate::gf::FieldElement;
use crate::Count;

use super::{exact_div_q, CountQuery, CountsError, ExclusionSet, FieldOrder};

/// Applies `x -> (x - a_1) / (a_2 - a_1)` so the excluded set starts with `0, 1`.
pub fn normalize_affine(query: &CountQuery) -> Result<CountQuery, CountsError> {
    let f = query.field();
    let set = query.exclusions();
    if set.c() < 2 {
        return Err(CountsError::ExclusionCount {
            expected: "at least 2",
            got: set.c(),
        });
    }
    let (a1, a2) = (set.excluded()[0], set.excluded()[1]);
    let scale = f.inv(f.sub(a2, a1))?;
    let map = |x: FieldElement| f.mul(f.sub(x, a1), scale);
    let mapped: Vec<_> = set.excluded().iter().map(|&a| map(a)).collect();
    let k = query.k();
    let b = f.mul(f.sub(query.b(), f.scale(k as i64, a1)), scale);
    CountQuery::new(ExclusionSet::new(f, &mapped)?, k, b)
}

/// `S^c_k` for a query already normalized to `a_1 = 0`, `a_2 = 1`.
pub fn nested_s_sum(query: &CountQuery) -> Result<Count, CountsError> {
    let f = query.field();
    let ex = query.exclusions().excluded();
    if ex.len() < 2 || !ex[0].is_zero() || ex[1] != f.one() {
        return Err(CountsError::ExclusionCount {
            expected: "a normalized set starting with 0, 1",
            got: ex.len(),
        });
    }
    // a_c, a_{c-1}, ..., a_3 pair with i_1, ..., i_{c-2}
    let weights: Vec<FieldElement> = ex[2..].iter().rev().copied().collect();
    let order = FieldOrder::of(f);
    let mut total = Count::from(0);
    let start = f.neg(query.b());
    walk(query, &order, &weights, query.k(), start, &mut total);
    Ok(total)
}

fn walk(
    query: &CountQuery,
    order: &FieldOrder,
    weights: &[FieldElement],
    remaining: u64,
    shift: FieldElement,
    total: &mut Count,
) {
    let f = query.field();
    match weights.split_first() {
        None => {
            let arg = f.add(f.from_int((remaining % order.p()) as i64), shift);
            *total += order.s_kb_at::<Count>(f, remaining, arg);
        }
        Some((&a, rest)) => {
            let mut s = shift;
            for i in 0..=remaining {
                walk(query, order, rest, remaining - i, s, total);
                s = f.add(s, a);
            }
        }
    }
}

/// `N(k, b, D)` for `c >= 2` from `R^c_k` and the nested `S` sum.
pub fn count_by_nested_sums(query: &CountQuery) -> Result<Count, CountsError> {
    let norm = normalize_affine(query)?;
    let f = norm.field();
    let (q, c, k) = (f.q() as u64, norm.exclusions().c() as u64, norm.k());
    let order = FieldOrder::of(f);
    let sk = sign::<Count>(k);
    let num = binom::<Count>((q - c) as i64, k) + sk.clone() * order.r_c::<Count>(c, k)?
        - sk * Count::from(q) * nested_s_sum(&norm)?;
    exact_div_q(num, q, "q N from the nested sum")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{count_two_removed, count_value};
    use crate::gf::Field;

    #[test]
    fn normalization_puts_zero_one_first() {
        let f = Field::new(3, 2).unwrap();
        let ex: Vec<_> = [3u32, 5, 7].iter().map(|&c| f.from_code(c).unwrap()).collect();
        let q = CountQuery::new(ExclusionSet::new(&f, &ex).unwrap(), 2, f.one()).unwrap();
        let n = normalize_affine(&q).unwrap();
        assert_eq!(&n.exclusions().excluded()[..2], &[f.zero(), f.one()]);
        assert_eq!(count_value(&q).unwrap().0, count_value(&n).unwrap().0);
    }

    #[test]
    fn two_excluded_matches_closed_form() {
        for (p, e) in [(2, 3), (3, 2), (5, 1)] {
            let f = Field::new(p, e).unwrap();
            let set = ExclusionSet::new(&f, &[f.zero(), f.one()]).unwrap();
            for k in 0..=set.n() {
                for b in f.elements() {
                    let q = CountQuery::new(set.clone(), k, b).unwrap();
                    assert_eq!(count_by_nested_sums(&q).unwrap(), count_two_removed(&f, k, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn nested_sum_matches_recursion() {
        let f = Field::new(2, 4).unwrap();
        let ex: Vec<_> = [2u32, 7, 9, 12].iter().map(|&c| f.from_code(c).unwrap()).collect();
        let set = ExclusionSet::new(&f, &ex).unwrap();
        for k in 0..=set.n() {
            for b in f.elements() {
                let q = CountQuery::new(set.clone(), k, b).unwrap();
                assert_eq!(count_by_nested_sums(&q).unwrap(), count_value(&q).unwrap().0, "k={k}");
            }
        }
    }

    #[test]
    fn rejects_small_sets() {
        let f = Field::new(5, 1).unwrap();
        let q = CountQuery::new(ExclusionSet::new(&f, &[f.one()]).unwrap(), 1, f.one()).unwrap();
        assert!(normalize_affine(&q).is_err());
    }
}
