//! Ground truth for `N(k, b, D)`: a subset-sum DP over the elements of `D`,
//! and literal enumeration for tiny inputs.

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::combinatorics::binom;
use crate::counts::{CountQuery, CountReport, CountsError, ExclusionSet, Method};
use crate::gf::FieldElement;
use crate::Count;

/// Largest `binom(n, k)` [`naive_count`] enumerates by default.
pub const DEFAULT_NAIVE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Counts(#[from] CountsError),
    #[error("enumeration needs {work} subsets, above the limit {limit}")]
    GuardExceeded { work: String, limit: u64 },
    #[error("processing order is not a permutation of D")]
    OrderMismatch,
}

/// `N(k, b, D)` for every `0 <= k <= n` and `b`, rows indexed by `k` then by element code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    exclusions: ExclusionSet,
    rows: Vec<Vec<Count>>,
}

impl CountTable {
    pub fn exclusions(&self) -> &ExclusionSet {
        &self.exclusions
    }

    pub fn n(&self) -> u64 {
        self.exclusions.n()
    }

    pub fn get(&self, k: u64, b: FieldElement) -> &Count {
        &self.rows[k as usize][b.code() as usize]
    }

    pub fn row(&self, k: u64) -> &[Count] {
        &self.rows[k as usize]
    }

    pub fn rows(&self) -> &[Vec<Count>] {
        &self.rows
    }

    /// `sum_b N(k, b, D)`.
    pub fn row_sum(&self, k: u64) -> Count {
        self.row(k).iter().sum()
    }

    /// Row sums equal `binom(n, k)` and row 0 is the indicator of `b = 0`.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        let row0 = self.row(0);
        let row0_ok = row0[0] == Count::from(1) && row0[1..].iter().all(Zero::is_zero);
        row0_ok && (0..=n).all(|k| self.row_sum(k) == binom::<Count>(n as i64, k))
    }
}

/// Builds the table by processing `D` in increasing code order.
pub fn dp_count_table(exclusions: &ExclusionSet) -> CountTable {
    let order = exclusions.domain();
    build(exclusions, &order)
}

/// Builds the table processing `D` in the given order, which must list each element of `D` once.
pub fn dp_count_table_in_order(
    exclusions: &ExclusionSet,
    order: &[FieldElement],
) -> Result<CountTable, OracleError> {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != exclusions.domain() {
        return Err(OracleError::OrderMismatch);
    }
    Ok(build(exclusions, order))
}

fn build(exclusions: &ExclusionSet, order: &[FieldElement]) -> CountTable {
    let f = exclusions.field();
    let q = f.q() as usize;
    let n = order.len();
    let mut rows = vec![vec![Count::zero(); q]; n + 1];
    rows[0][0] = Count::from(1);
    for (i, &x) in order.iter().enumerate() {
        // descending j keeps row j - 1 at its value before x was seen
        for j in (1..=i + 1).rev() {
            let (lo, hi) = rows.split_at_mut(j);
            let (prev, cur) = (&lo[j - 1], &mut hi[0]);
            for (s, v) in prev.iter().enumerate() {
                if !v.is_zero() {
                    cur[f.add_codes(s as u32, x.code()) as usize] += v;
                }
            }
        }
    }
    CountTable {
        exclusions: exclusions.clone(),
        rows,
    }
}

/// Counts `k`-subsets of `D` summing to `b` one by one, refusing when `binom(n, k) > limit`.
pub fn naive_count(
    exclusions: &ExclusionSet,
    k: u64,
    b: FieldElement,
    limit: u64,
) -> Result<Count, OracleError> {
    let f = exclusions.field();
    f.check(b).map_err(CountsError::from)?;
    let n = exclusions.n();
    if k > n {
        return Err(CountsError::KOutOfRange { k, max: n }.into());
    }
    let work = binom::<Count>(n as i64, k);
    if work > Count::from(limit) {
        return Err(OracleError::GuardExceeded {
            work: work.to_string(),
            limit,
        });
    }
    let hits = exclusions
        .domain()
        .into_iter()
        .combinations(k as usize)
        .filter(|s| s.iter().fold(f.zero(), |acc, &x| f.add(acc, x)) == b)
        .count();
    Ok(Count::from(hits))
}

/// A [`CountReport`] whose count comes from the DP table.
pub fn oracle_report(query: &CountQuery) -> CountReport {
    let table = dp_count_table(query.exclusions());
    let n = table.get(query.k(), query.b()).clone();
    CountReport::from_count(query.clone(), n, Method::Oracle)
}
