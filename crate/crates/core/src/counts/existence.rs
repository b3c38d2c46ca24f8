//! Whether `N(k, b, D) > 0` for every `b`, with `D = F_q` or `D = F_q \ {a}`.

use crate::gf::Field;

use super::{count_full_field, count_punctured_field, CountsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportMode {
    FullField,
    /// `F_q` minus one point; every choice of the point gives the same verdict.
    OneRemoved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionVerdict {
    /// Every `b` has a `k`-subset of `D` summing to it.
    pub always_solvable: bool,
    /// `k` lies in the range where solvability is known without counting.
    pub guaranteed: bool,
}

/// Known solvable ranges:
/// * `F_q`: `0 < k < q` for odd `p`, `2 < k < q - 2` for `p = 2`;
/// * `F_q^*`, `q > 5`: `1 < k < q - 2` for odd `p`, `2 < k < q - 3` for `p = 2`.
pub fn guaranteed_range(field: &Field, mode: SupportMode, k: u64) -> bool {
    let (q, odd) = (field.q() as u64, field.p() != 2);
    match (mode, odd) {
        (SupportMode::FullField, true) => 0 < k && k < q,
        (SupportMode::FullField, false) => 2 < k && k + 2 < q,
        (SupportMode::OneRemoved, _) if q <= 5 => false,
        (SupportMode::OneRemoved, true) => 1 < k && k + 2 < q,
        (SupportMode::OneRemoved, false) => 2 < k && k + 3 < q,
    }
}

/// Solvability for every target; exact counting outside the guaranteed range.
pub fn has_solution(field: &Field, mode: SupportMode, k: u64) -> Result<SolutionVerdict, CountsError> {
    let guaranteed = guaranteed_range(field, mode, k);
    if guaranteed {
        return Ok(SolutionVerdict {
            always_solvable: true,
            guaranteed,
        });
    }
    let zero = num_traits::Zero::zero();
    let mut always_solvable = true;
    for b in field.elements() {
        let n = match mode {
            SupportMode::FullField => count_full_field(field, k, b)?,
            SupportMode::OneRemoved => count_punctured_field(field, k, b)?,
        };
        if n == zero {
            always_solvable = false;
            break;
        }
    }
    Ok(SolutionVerdict {
        always_solvable,
        guaranteed,
    })
}
