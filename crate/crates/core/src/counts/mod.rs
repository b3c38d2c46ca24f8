//! Exact values of `N(k, b, D)`, the number of `k`-subsets of
//! `D = F_q \ {a_1, ..., a_c}` summing to `b`, together with the auxiliary
//! sequences and error bounds around the main term `binom(n, k) / q`.

mod bounds;
mod closed;
mod excluded;
mod existence;
mod nested;
mod sequences;

use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};

pub use bounds::{error_bound, general_kernel_bound, independent_kernel_bound, Bound, BoundMode};
pub use closed::{count_full_field, count_punctured_field, count_two_removed, v_weight};
pub use excluded::{count_excluded, count_value, normalize_exclusions, CountReport, Method};
pub use existence::{guaranteed_range, has_solution, SolutionVerdict, SupportMode};
pub use nested::{count_by_nested_sums, nested_s_sum, normalize_affine};
pub use sequences::FieldOrder;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountsError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("q = {q} is not a power of the prime p = {p}")]
    InvalidOrder { q: u64, p: u64 },
    #[error("subset size k = {k} out of range (max {max})")]
    KOutOfRange { k: u64, max: u64 },
    #[error("R^c_k needs c >= 1")]
    ZeroKernelOrder,
    #[error("excluded element {0} listed twice")]
    DuplicateExclusion(String),
    #[error("excluding {c} elements of F_{q} leaves D empty")]
    EmptyDomain { c: usize, q: u32 },
    #[error("this operation needs {expected} excluded elements, got {got}")]
    ExclusionCount { expected: &'static str, got: usize },
    #[error("the two-point closed form needs q > 2")]
    FieldTooSmall,
    #[error("{mode:?} bound does not apply to q = {q}, p = {p}, n = {n}")]
    BoundNotApplicable {
        mode: BoundMode,
        q: u64,
        p: u64,
        n: u64,
    },
    #[error("internal error: {what} is not divisible by q = {q}")]
    InexactDivision { what: &'static str, q: u64 },
}

/// `D = F_q \ {a_1, ..., a_c}`, stored by its excluded elements in increasing code order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionSet {
    field: Field,
    excluded: Vec<FieldElement>,
}

impl ExclusionSet {
    pub fn new(field: &Field, excluded: &[FieldElement]) -> Result<Self, CountsError> {
        for &a in excluded {
            field.check(a)?;
        }
        let mut sorted = excluded.to_vec();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CountsError::DuplicateExclusion(field.format_element(w[0])));
        }
        if sorted.len() >= field.q() as usize {
            return Err(CountsError::EmptyDomain {
                c: sorted.len(),
                q: field.q(),
            });
        }
        Ok(Self {
            field: field.clone(),
            excluded: sorted,
        })
    }

    /// `D = F_q`.
    pub fn none(field: &Field) -> Self {
        Self {
            field: field.clone(),
            excluded: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn excluded(&self) -> &[FieldElement] {
        &self.excluded
    }

    pub fn c(&self) -> usize {
        self.excluded.len()
    }

    /// `n = |D| = q - c`.
    pub fn n(&self) -> u64 {
        self.field.q() as u64 - self.excluded.len() as u64
    }

    pub fn contains_excluded(&self, x: FieldElement) -> bool {
        self.excluded.binary_search(&x).is_ok()
    }

    /// Elements of `D` in increasing code order.
    pub fn domain(&self) -> Vec<FieldElement> {
        self.field
            .elements()
            .filter(|&x| !self.contains_excluded(x))
            .collect()
    }

    /// `sum_{x in D} x`.
    pub fn domain_sum(&self) -> FieldElement {
        let f = &self.field;
        self.excluded
            .iter()
            .fold(f.sum_of_all(), |acc, &a| f.sub(acc, a))
    }
}

/// A request for `N(k, b, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountQuery {
    exclusions: ExclusionSet,
    k: u64,
    b: FieldElement,
}

impl CountQuery {
    pub fn new(exclusions: ExclusionSet, k: u64, b: FieldElement) -> Result<Self, CountsError> {
        exclusions.field().check(b)?;
        if k > exclusions.n() {
            return Err(CountsError::KOutOfRange {
                k,
                max: exclusions.n(),
            });
        }
        Ok(Self { exclusions, k, b })
    }

    pub fn exclusions(&self) -> &ExclusionSet {
        &self.exclusions
    }

    pub fn field(&self) -> &Field {
        self.exclusions.field()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }
}

pub(crate) fn exact_div_q(
    num: crate::Count,
    q: u64,
    what: &'static str,
) -> Result<crate::Count, CountsError> {
    use num_integer::Integer;
    let (quot, rem) = num.div_rem(&crate::Count::from(q));
    if rem != crate::Count::from(0) {
        return Err(CountsError::InexactDivision { what, q });
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exclusion_set_validation() {
        let f = Field::new(7, 1).unwrap();
        let set = ExclusionSet::new(&f, &[f.from_int(5), f.from_int(2)]).unwrap();
        assert_eq!(set.excluded(), &[f.from_int(2), f.from_int(5)]);
        assert_eq!(set.n(), 5);
        assert!(matches!(
            ExclusionSet::new(&f, &[f.one(), f.one()]),
            Err(CountsError::DuplicateExclusion(_))
        ));
        let all: Vec<_> = f.elements().collect();
        assert!(matches!(
            ExclusionSet::new(&f, &all),
            Err(CountsError::EmptyDomain { .. })
        ));
        let f5 = Field::new(5, 1).unwrap();
        assert!(ExclusionSet::new(&f, &[f5.one()]).is_err());
    }

    #[test]
    fn domain_sum_matches_direct_sum() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (7, 1)] {
            let f = Field::new(p, e).unwrap();
            let ex: Vec<_> = f.elements().skip(1).step_by(2).take(2).collect();
            let set = ExclusionSet::new(&f, &ex).unwrap();
            let direct = set.domain().into_iter().fold(f.zero(), |a, x| f.add(a, x));
            assert_eq!(set.domain_sum(), direct);
        }
    }

    #[test]
    fn query_range_checked() {
        let f = Field::new(5, 1).unwrap();
        let set = ExclusionSet::new(&f, &[f.zero()]).unwrap();
        assert!(CountQuery::new(set.clone(), 4, f.zero()).is_ok());
        assert!(matches!(
            CountQuery::new(set, 5, f.zero()),
            Err(CountsError::KOutOfRange { k: 5, max: 4 })
        ));
    }
}
