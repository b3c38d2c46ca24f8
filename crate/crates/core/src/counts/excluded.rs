//! `N(k, b, D)` for an arbitrary exclusion set.
//!
//! Evaluation order:
//! 1. if `k > (q - c) / 2`, pass to the complement subset:
//!    `N(k, b, D) = N(n - k, Σ_D - b, D)`;
//! 2. `c <= 2`: normalize the excluded points to `{0}` or `{0, 1}` and use the
//!    closed forms;
//! 3. after translating `a_1` to zero, if `{b, a_2, ..., a_c}` is
//!    F_p-independent then `N = (binom(q - c, k) + (-1)^k R^c_k) / q`;
//! 4. otherwise peel off the last excluded point,
//!    `N(k, b, F_q \ {a_1..a_c}) = sum_i (-1)^i N(k - i, b - i a_c, F_q \ {a_1..a_{c-1}})`,
//!    memoized on `(level, k, b)`.

use std::collections::HashMap;

use crate::combinatorics::{binom, factorial, sign};
use crate::gf::{Field, FieldElement};
use crate::Count;

use super::bounds::{error_bound, Bound, BoundMode};
use super::closed::{count_full_field, count_punctured_field, count_two_removed};
use super::{exact_div_q, CountQuery, CountsError, ExclusionSet, FieldOrder};

/// Code path that produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Recursion,
    IndependentFastPath,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Recursion => "recursion",
            Method::IndependentFastPath => "independent_fast_path",
            Method::Oracle => "oracle",
        }
    }
}

/// A count with its main term, exact error and the applicable error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub query: CountQuery,
    /// `N(k, b, D)`.
    pub n_count: Count,
    /// `M = k! N`, the number of ordered solutions with distinct entries.
    pub m_count: Count,
    /// `binom(n, k)`; the main term is `main_term_num / main_term_den`.
    pub main_term_num: Count,
    /// `q`.
    pub main_term_den: Count,
    /// `q N - binom(n, k)`.
    pub error: Count,
    /// `None` when `k = 0` or `n > q - 2`.
    pub bound: Option<Bound>,
    pub method: Method,
}

impl CountReport {
    /// Wraps a count obtained by any method.
    pub fn from_count(query: CountQuery, n_count: Count, method: Method) -> Self {
        let field = query.field();
        let (q, k, n) = (field.q() as u64, query.k(), query.exclusions().n());
        let main_term_num = binom::<Count>(n as i64, k);
        let error = Count::from(q) * &n_count - &main_term_num;
        let bound = report_bound_mode(&query)
            .and_then(|mode| error_bound(q, field.p() as u64, n, k, mode).ok());
        Self {
            m_count: factorial::<Count>(k) * &n_count,
            main_term_den: Count::from(q),
            main_term_num,
            error,
            bound,
            method,
            n_count,
            query,
        }
    }

    pub fn bound_mode(&self) -> Option<BoundMode> {
        self.bound.as_ref().map(|b| b.mode)
    }

    /// Whether the stored bound holds; `None` when no bound applies.
    pub fn bound_holds(&self) -> Option<bool> {
        self.bound
            .as_ref()
            .map(|b| b.holds(&self.error))
    }
}

fn report_bound_mode(query: &CountQuery) -> Option<BoundMode> {
    let f = query.field();
    let set = query.exclusions();
    if query.k() == 0 || set.c() < 2 {
        return None;
    }
    Some(if f.is_prime_field() {
        BoundMode::PrimeField
    } else if independent_after_translation(set, query.k(), query.b()) {
        BoundMode::Independent
    } else {
        BoundMode::General
    })
}

/// Translate by `-a_1` and test `{b - k a_1, a_2 - a_1, ..., a_c - a_1}` for F_p-independence.
pub(crate) fn independent_after_translation(set: &ExclusionSet, k: u64, b: FieldElement) -> bool {
    let f = set.field();
    let Some((&a1, rest)) = set.excluded().split_first() else {
        return false;
    };
    let mut vectors = Vec::with_capacity(set.c());
    vectors.push(f.sub(b, f.scale(k as i64, a1)));
    vectors.extend(rest.iter().map(|&a| f.sub(a, a1)));
    f.fp_rank(&vectors) == vectors.len()
}

/// Maps an exclusion set of size 1 or 2 to `{0}` or `{0, 1}` by an affine
/// substitution that leaves `N` unchanged.
pub fn normalize_exclusions(query: &CountQuery) -> Result<CountQuery, CountsError> {
    let f = query.field();
    let set = query.exclusions();
    let (k, b) = (query.k(), query.b());
    match *set.excluded() {
        [a] => {
            let target = f.sub(b, f.scale(k as i64, a));
            CountQuery::new(ExclusionSet::new(f, &[f.zero()])?, k, target)
        }
        [a1, a2] => {
            let scale = f.inv(f.sub(a2, a1))?;
            let target = f.mul(f.sub(b, f.scale(k as i64, a1)), scale);
            CountQuery::new(ExclusionSet::new(f, &[f.zero(), f.one()])?, k, target)
        }
        _ => Err(CountsError::ExclusionCount {
            expected: "1 or 2",
            got: set.c(),
        }),
    }
}

/// `N(k, b, D)` with the method that produced it.
pub fn count_value(query: &CountQuery) -> Result<(Count, Method), CountsError> {
    let f = query.field();
    let set = query.exclusions();
    let n = set.n();
    let (mut k, mut b) = (query.k(), query.b());
    if 2 * k > n {
        b = f.sub(set.domain_sum(), b);
        k = n - k;
    }

    if set.c() <= 2 {
        let mut eval = Evaluator::new(set);
        return Ok((eval.closed_prefix(set.c(), k, b)?, Method::ClosedForm));
    }

    if independent_after_translation(set, k, b) {
        let q = f.q() as u64;
        let c = set.c() as u64;
        let order = FieldOrder::of(f);
        let num = binom::<Count>((q - c) as i64, k) + sign::<Count>(k) * order.r_c::<Count>(c, k)?;
        return Ok((exact_div_q(num, q, "q N on the independent path")?, Method::IndependentFastPath));
    }

    let mut eval = Evaluator::new(set);
    Ok((eval.eval(set.c(), k, b)?, Method::Recursion))
}

pub fn count_excluded(query: &CountQuery) -> Result<CountReport, CountsError> {
    let (n_count, method) = count_value(query)?;
    Ok(CountReport::from_count(query.clone(), n_count, method))
}

/// Inclusion-exclusion over the excluded points, one evaluation's memo table.
struct Evaluator<'a> {
    field: &'a Field,
    excluded: &'a [FieldElement],
    memo: HashMap<(usize, u64, u32), Count>,
}

impl<'a> Evaluator<'a> {
    fn new(set: &'a ExclusionSet) -> Self {
        Self {
            field: set.field(),
            excluded: set.excluded(),
            memo: HashMap::new(),
        }
    }

    /// `N(k, b, F_q \ {a_1..a_level})` for `level <= 2`.
    fn closed_prefix(&mut self, level: usize, k: u64, b: FieldElement) -> Result<Count, CountsError> {
        let f = self.field;
        match level {
            0 => count_full_field(f, k, b),
            1 => {
                let a = self.excluded[0];
                count_punctured_field(f, k, f.sub(b, f.scale(k as i64, a)))
            }
            2 => {
                let (a1, a2) = (self.excluded[0], self.excluded[1]);
                let target = f.mul(f.sub(b, f.scale(k as i64, a1)), f.inv(f.sub(a2, a1))?);
                count_two_removed(f, k, target)
            }
            _ => unreachable!("closed forms cover at most two excluded points"),
        }
    }

    fn eval(&mut self, level: usize, k: u64, b: FieldElement) -> Result<Count, CountsError> {
        if level <= 2 {
            return self.closed_prefix(level, k, b);
        }
        let key = (level, k, b.code());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let f = self.field;
        let a = self.excluded[level - 1];
        let mut total = Count::from(0);
        let mut target = b;
        for i in 0..=k {
            let term = self.eval(level - 1, k - i, target)?;
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            target = f.sub(target, a);
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}
