//! Deep holes among words of degree `k + 1`.
//!
//! A word `u` with `d(u) = k + 1` has distance `n - k` (deep hole) or
//! `n - k - 1` (ordinary). After scaling, `u(x) = x^{k+1} - b_1 x^k + ...`,
//! and `u` is ordinary exactly when some `(k+1)`-subset of the evaluation
//! points sums to `b_1`.

use num_traits::Zero;

use crate::counts::{count_value, CountQuery, ExclusionSet};
use crate::gf::{Field, FieldElement};
use crate::oracle::dp_count_table;
use crate::Count;

use super::{Degree, RsCode, RsError, Word};

/// Exclusion sets up to this size are counted by formula, larger ones by the DP table.
pub const FORMULA_MAX_EXCLUDED: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum M1Verdict {
    DeepHole,
    Ordinary,
}

impl M1Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            M1Verdict::DeepHole => "deep_hole",
            M1Verdict::Ordinary => "ordinary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M1Classification {
    pub verdict: M1Verdict,
    pub degree: Degree,
    /// Subset-sum target; `None` when `d(u) = k`.
    pub target: Option<FieldElement>,
    /// `N(k + 1, b_1, D)`; `None` when `d(u) = k`.
    pub solutions: Option<Count>,
}

fn complement(code: &RsCode) -> Result<ExclusionSet, RsError> {
    let f = code.field();
    let mut pts = code.points().to_vec();
    pts.sort();
    let excluded: Vec<_> = f.elements().filter(|x| pts.binary_search(x).is_err()).collect();
    Ok(ExclusionSet::new(f, &excluded)?)
}

/// `N(size, b, D)` for the evaluation set of `code`.
pub fn subset_count(code: &RsCode, size: u64, b: FieldElement) -> Result<Count, RsError> {
    let set = complement(code)?;
    if set.c() <= FORMULA_MAX_EXCLUDED {
        let query = CountQuery::new(set, size, b)?;
        Ok(count_value(&query)?.0)
    } else {
        Ok(dp_count_table(&set).get(size, b).clone())
    }
}

/// Deep hole or ordinary for `d(u) in {k, k + 1}`.
pub fn classify_m1(code: &RsCode, word: &Word) -> Result<M1Classification, RsError> {
    let f = code.field();
    let k = code.k();
    let poly = code.interpolate(word);
    let degree = poly.degree();
    match degree {
        Degree::Finite(d) if d == k => Ok(M1Classification {
            verdict: M1Verdict::DeepHole,
            degree,
            target: None,
            solutions: None,
        }),
        Degree::Finite(d) if d == k + 1 => {
            let monic = poly.monic(f).expect("nonzero polynomial");
            let target = f.neg(monic.coeff(f, k));
            let solutions = subset_count(code, (k + 1) as u64, target)?;
            let verdict = if solutions.is_zero() {
                M1Verdict::DeepHole
            } else {
                M1Verdict::Ordinary
            };
            Ok(M1Classification {
                verdict,
                degree,
                target: Some(target),
                solutions: Some(solutions),
            })
        }
        _ => Err(RsError::DegreeNotClassifiable { degree, k }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanMode {
    /// `D = F_q`, `n = q`.
    Full,
    /// `D = F_q^*`, `n = q - 1`.
    Punctured,
}

impl ScanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanMode::Full => "full",
            ScanMode::Punctured => "punctured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub target: FieldElement,
    pub solutions: Count,
}

impl ScanEntry {
    pub fn verdict(&self) -> M1Verdict {
        if self.solutions.is_zero() {
            M1Verdict::DeepHole
        } else {
            M1Verdict::Ordinary
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub mode: ScanMode,
    /// One entry per `b_1`, in code order.
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    /// Values of `b_1` whose degree-`(k+1)` words are deep holes.
    pub fn deep_hole_targets(&self) -> Vec<FieldElement> {
        self.entries
            .iter()
            .filter(|e| e.verdict() == M1Verdict::DeepHole)
            .map(|e| e.target)
            .collect()
    }

    pub fn deep_holes(&self) -> usize {
        self.deep_hole_targets().len()
    }
}

/// Classifies every `b_1`, which covers every word of degree `k + 1` since
/// the verdict only depends on the `x^k` coefficient of the monic form.
pub fn deep_hole_scan(field: &Field, mode: ScanMode, k: usize) -> Result<ScanReport, RsError> {
    let code = match mode {
        ScanMode::Full => RsCode::full(field, k)?,
        ScanMode::Punctured => RsCode::punctured(field, k)?,
    };
    let n = code.n();
    if k + 2 > n {
        return Err(RsError::DimensionOutOfRange { k, n });
    }
    let set = complement(&code)?;
    let entries = field
        .elements()
        .map(|b| {
            let query = CountQuery::new(set.clone(), (k + 1) as u64, b)?;
            Ok(ScanEntry {
                target: b,
                solutions: count_value(&query)?.0,
            })
        })
        .collect::<Result<Vec<_>, RsError>>()?;
    Ok(ScanReport {
        q: field.q(),
        n,
        k,
        mode,
        entries,
    })
}
