//! Self-checks run by the `verify` command: formulas against the DP oracle,
//! dual evaluation paths, counting relations and error bounds.
//!
//! Checks decide the outcome. The audit section counts cases where two
//! published claims (the general-mode error bound and unimodality for
//! every target) fail; those counts are informational.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    alt_prefix_sum, alt_prefix_sum_direct, binom, block_alt_sum, block_alt_sum_direct,
    falling_factorial, factorial, sign,
};
use crate::counts::{
    count_by_nested_sums, count_full_field, count_punctured_field, count_value, error_bound,
    general_kernel_bound, independent_kernel_bound, nested_s_sum, normalize_affine, BoundMode,
    CountQuery, CountReport, ExclusionSet, FieldOrder, Method,
};
use crate::gf::{is_prime, Field};
use crate::oracle::{dp_count_table, CountTable};
use crate::Count;

/// Seed for the canonical sampled exclusion sets.
pub const CANONICAL_SEED: u64 = 0x00c0_ffee_5eed;

/// Sampled exclusion sets per field and size `c >= 2`.
pub const SETS_PER_SIZE: usize = 20;

/// Largest `k` for the nested-sum checks.
pub const NESTED_MAX_K: u64 = 12;

/// Largest field for the nested-sum checks.
pub const NESTED_MAX_Q: u32 = 32;

/// Deliberate defects for exercising the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to every formula count with `k = 1`.
    PerturbCounts,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_q: u32,
    pub max_c: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_q: 16,
            max_c: 3,
            seed: CANONICAL_SEED,
            fault: None,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub assertions: u64,
    pub failures: u64,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one assertion; `detail` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.assertions += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(detail());
            }
        }
    }

    fn absorb(&mut self, other: CheckOutcome) {
        self.assertions += other.assertions;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    pub audit: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn assertions(&self) -> u64 {
        self.checks.iter().map(|c| c.assertions).sum()
    }
}

/// Every field `F_q` with `2 <= q <= max_q`, ordered by `q`.
pub fn fields_up_to(max_q: u32) -> Vec<Field> {
    let mut out = Vec::new();
    for q in 2..=max_q as u64 {
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        if !is_prime(p) {
            continue;
        }
        let mut t = q;
        let mut e = 0;
        while t % p == 0 {
            t /= p;
            e += 1;
        }
        if t == 1 {
            out.push(Field::new(p, e).expect("small field"));
        }
    }
    out
}

/// `count` distinct exclusion sets of size `c`, or all of them when there are
/// at most `count`; deterministic in `(field, c, seed)`.
pub fn sample_exclusion_sets(field: &Field, c: usize, count: usize, seed: u64) -> Vec<ExclusionSet> {
    let q = field.q() as usize;
    if c >= q {
        return Vec::new();
    }
    let elements: Vec<_> = field.elements().collect();
    let make = |idx: &[usize]| {
        let ex: Vec<_> = idx.iter().map(|&i| elements[i]).collect();
        ExclusionSet::new(field, &ex).expect("distinct elements")
    };
    if binom::<Count>(q as i64, c as u64) <= Count::from(count) {
        return (0..q).combinations(c).map(|idx| make(&idx)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((q as u64) << 32) ^ c as u64);
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        let mut idx = sample(&mut rng, q, c).into_vec();
        idx.sort_unstable();
        seen.insert(idx);
    }
    seen.into_iter().map(|idx| make(&idx)).collect()
}

/// All sets with `c <= 1` plus the sampled sets for `2 <= c <= max_c`.
pub fn grid_exclusion_sets(field: &Field, max_c: usize, seed: u64) -> Vec<ExclusionSet> {
    let mut out = vec![ExclusionSet::none(field)];
    if max_c >= 1 {
        out.extend(sample_exclusion_sets(field, 1, usize::MAX, seed));
    }
    for c in 2..=max_c {
        out.extend(sample_exclusion_sets(field, c, SETS_PER_SIZE, seed));
    }
    out
}

/// Weakly rising, then weakly falling.
pub fn is_unimodal(seq: &[Count]) -> bool {
    let mut i = 1;
    while i < seq.len() && seq[i] >= seq[i - 1] {
        i += 1;
    }
    while i < seq.len() && seq[i] <= seq[i - 1] {
        i += 1;
    }
    i >= seq.len()
}

fn formula_count(query: &CountQuery, fault: Option<Fault>) -> Count {
    let n = count_value(query).expect("valid query").0;
    match fault {
        Some(Fault::PerturbCounts) if query.k() == 1 => n + 1,
        _ => n,
    }
}

/// Formula counts against the DP table for one exclusion set, every `k` and `b`.
pub fn check_against_table(set: &ExclusionSet, table: &CountTable, fault: Option<Fault>) -> CheckOutcome {
    let mut out = CheckOutcome::new("oracle equivalence");
    let f = set.field();
    out.record(table.check_invariants(), || {
        format!("table invariants, q={} D=F_q\\{}", f.q(), f.format_element_list(set.excluded()))
    });
    for k in 0..=set.n() {
        for b in f.elements() {
            let query = CountQuery::new(set.clone(), k, b).unwrap();
            let got = formula_count(&query, fault);
            let want = table.get(k, b);
            out.record(&got == want, || {
                format!(
                    "q={} excl={{{}}} k={k} b={}: formula {got}, oracle {want}",
                    f.q(),
                    f.format_element_list(set.excluded()),
                    f.format_element(b)
                )
            });
        }
    }
    out
}

pub fn check_oracle_equivalence(fields: &[Field], max_c: usize, seed: u64, fault: Option<Fault>) -> CheckOutcome {
    let mut out = CheckOutcome::new("oracle equivalence");
    for f in fields {
        for set in grid_exclusion_sets(f, max_c, seed) {
            let table = dp_count_table(&set);
            out.absorb(check_against_table(&set, &table, fault));
        }
    }
    out
}

/// `d_k`, `R^c_k` and `S(k, b)` by both of their evaluation paths.
pub fn check_sequence_paths(fields: &[Field], max_c: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("sequence dual paths");
    for f in fields {
        let order = FieldOrder::of(f);
        let (q, p) = (order.q(), order.p());
        let rec = order.d_seq_by_recursion::<Count>(q - 1).unwrap();
        for (k, dk) in rec.iter().enumerate() {
            let k = k as u64;
            let closed = order.d_seq::<Count>(k).unwrap();
            out.record(&closed == dk, || format!("d_{k} at q={q}: {closed} vs {dk}"));
            let r1 = order.r1::<Count>(k);
            let via_d = sign::<Count>(k) * dk / factorial::<Count>(k);
            out.record(r1 == via_d, || format!("R^1_{k} at q={q}"));
        }
        for c in 1..=max_c.max(2) {
            let prefix = order.r_c_by_prefix_sums::<Count>(c, q).unwrap();
            for (k, v) in prefix.iter().enumerate() {
                let k = k as u64;
                let r = order.r_c::<Count>(c, k).unwrap();
                out.record(&r == v, || format!("R^{c}_{k} at q={q}: {r} vs prefix {v}"));
                if c >= 2 {
                    let single = order.r_c_single_sum::<Count>(c, k);
                    out.record(&single == v, || format!("R^{c}_{k} single sum at q={q}"));
                }
                if order.is_prime_field() && k < p {
                    let closed = -binom::<Count>((k + c - 1) as i64, c - 1);
                    out.record(&closed == v, || format!("prime-field R^{c}_{k} at q={q}"));
                }
            }
        }
        for k in 0..=q {
            for r in (0..p).map(Some).chain([None]) {
                let closed = order.s_kb::<Count>(k, r);
                let literal = order.s_kb_literal::<Count>(k, r);
                out.record(closed == literal, || format!("S({k}, {r:?}) at q={q}"));
            }
        }
    }
    out
}

/// The alternating binomial sums on their fixed grids.
pub fn check_binomial_sums() -> CheckOutcome {
    let mut out = CheckOutcome::new("alternating binomial sums");
    for r in -20..=200i64 {
        for m in 0..=60u64 {
            let ok = alt_prefix_sum::<Count>(r, m) == alt_prefix_sum_direct::<Count>(r, m);
            out.record(ok, || format!("alternating prefix sum r={r} m={m}"));
        }
    }
    for p in [2u64, 3, 5, 7] {
        for a in -5..=100i64 {
            for k in 0..=100u64 {
                let closed = block_alt_sum::<Count>(a, k, p);
                let ok = closed == block_alt_sum_direct::<Count>(a, k, p);
                out.record(ok, || format!("block sum a={a} k={k} p={p}"));
            }
        }
    }
    out
}

/// Relations between ordered counts `M = k! N` over `F_q` and `F_q^*`.
pub fn check_ordered_relations(fields: &[Field]) -> CheckOutcome {
    let mut out = CheckOutcome::new("ordered count relations");
    for f in fields {
        let (q, p) = (f.q() as u64, f.p() as u64);
        let m_full = |k: u64, b| factorial::<Count>(k) * count_full_field(f, k, b).unwrap();
        let m_star = |k: u64, b| factorial::<Count>(k) * count_punctured_field(f, k, b).unwrap();
        let (zero, one) = (f.zero(), f.one());
        for k in 1..q {
            let kk = Count::from(k);
            for b in [zero, one] {
                let lhs = m_full(k, b);
                let rhs = m_star(k, b) + kk.clone() * m_star(k - 1, b);
                out.record(lhs == rhs, || format!("M(F_q) split at q={q} k={k}"));
            }
            let qm1 = Count::from(q - 1);
            let full = qm1.clone() * m_full(k, one) + m_full(k, zero);
            out.record(full == falling_factorial::<Count>(q as i64, k), || {
                format!("(q)_k at q={q} k={k}")
            });
            let star = qm1 * m_star(k, one) + m_star(k, zero);
            out.record(star == falling_factorial::<Count>(q as i64 - 1, k), || {
                format!("(q-1)_k at q={q} k={k}")
            });
            for b in f.elements() {
                for c in f.elements() {
                    let shifted = f.sub(b, f.scale(k as i64, c));
                    let lhs = m_full(k, b);
                    let rhs = m_star(k, shifted) + kk.clone() * m_star(k - 1, shifted);
                    out.record(lhs == rhs, || format!("point split at q={q} k={k}"));
                }
                if k % p == 0 {
                    let ok = m_full(k, b) == Count::from(q) * m_star(k - 1, b);
                    out.record(ok, || format!("p | k relation at q={q} k={k}"));
                }
            }
        }
    }
    out
}

/// The nested-sum route for `N`, and the two kernel inequalities, on
/// `q <= 32`, `2 <= c <= 4`, `k <= 12`. The nested-sum inequality is checked
/// for `k <= (q - c) / 2`.
pub fn check_nested_sums(fields: &[Field], max_c: usize, seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("nested sums and kernel bounds");
    for f in fields.iter().filter(|f| f.q() <= NESTED_MAX_Q) {
        let order = FieldOrder::of(f);
        let (q, p) = (order.q(), order.p());
        for c in 2..=max_c.min(4) {
            let cu = c as u64;
            if cu + 1 > q {
                continue;
            }
            for k in 0..=NESTED_MAX_K.min(q - cu) {
                let r = order.r_c::<Count>(cu, k).unwrap();
                let bound = independent_kernel_bound(q, p, cu, k);
                out.record(r <= bound, || format!("kernel bound q={q} c={c} k={k}: {r} > {bound}"));
            }
            for set in sample_exclusion_sets(f, c, SETS_PER_SIZE, seed) {
                let table = dp_count_table(&set);
                for k in 0..=NESTED_MAX_K.min(set.n()) {
                    for b in f.elements() {
                        let query = CountQuery::new(set.clone(), k, b).unwrap();
                        let nested = count_by_nested_sums(&query).unwrap();
                        out.record(&nested == table.get(k, b), || {
                            format!("nested N at q={q} c={c} k={k}")
                        });
                        if p < q && 2 * k <= q - cu {
                            let norm = normalize_affine(&query).unwrap();
                            let s = nested_s_sum(&norm).unwrap();
                            let lhs = Count::from(q) * s - order.r_c::<Count>(cu, k).unwrap();
                            let rhs = general_kernel_bound(q, p, cu, k);
                            out.record(lhs <= rhs, || {
                                format!("nested-sum bound q={q} c={c} k={k}: {lhs} > {rhs}")
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every report from the grid with an applicable bound, split by mode.
/// Returns (independent and prime-field outcomes, general-mode outcome).
pub fn check_error_bounds(fields: &[Field], max_c: usize, seed: u64) -> (CheckOutcome, CheckOutcome) {
    let mut sharp = CheckOutcome::new("independent and prime-field bounds");
    let mut general = CheckOutcome::new("general-mode bound");
    for f in fields {
        for set in grid_exclusion_sets(f, max_c, seed) {
            if set.c() < 2 {
                continue;
            }
            let table = dp_count_table(&set);
            for k in 1..=set.n() {
                for b in f.elements() {
                    let query = CountQuery::new(set.clone(), k, b).unwrap();
                    let report = CountReport::from_count(query, table.get(k, b).clone(), Method::Oracle);
                    let Some(bound) = &report.bound else { continue };
                    let ok = bound.holds(&report.error);
                    let detail = || {
                        format!(
                            "q={} excl={{{}}} k={k} b={}: error {} vs {} ({})",
                            f.q(),
                            f.format_element_list(set.excluded()),
                            f.format_element(b),
                            report.error,
                            bound.scaled,
                            bound.mode.as_str()
                        )
                    };
                    match bound.mode {
                        BoundMode::General => general.record(ok, detail),
                        _ => {
                            sharp.record(ok, detail);
                            // the general bound is claimed for every query with p < q
                            if bound.mode == BoundMode::Independent {
                                let g = error_bound(f.q() as u64, f.p() as u64, set.n(), k, BoundMode::General)
                                    .unwrap();
                                general.record(g.holds(&report.error), || format!("{} (general)", detail()));
                            }
                        }
                    }
                }
            }
        }
    }
    (sharp, general)
}

fn punctured_set(f: &Field) -> ExclusionSet {
    ExclusionSet::new(f, &[f.zero()]).unwrap()
}

/// `N(k, b, D) = N(n - k, Σ_D - b, D)` for `D = F_q` and `D = F_q^*`.
pub fn check_symmetry(fields: &[Field]) -> CheckOutcome {
    let mut out = CheckOutcome::new("complement symmetry");
    for f in fields {
        for set in [ExclusionSet::none(f), punctured_set(f)] {
            let n = set.n();
            let total = set.domain_sum();
            for k in 0..=n {
                for b in f.elements() {
                    let lhs = count_value(&CountQuery::new(set.clone(), k, b).unwrap()).unwrap().0;
                    let rhs = count_value(&CountQuery::new(set.clone(), n - k, f.sub(total, b)).unwrap())
                        .unwrap()
                        .0;
                    out.record(lhs == rhs, || format!("q={} n={n} k={k}", f.q()));
                }
            }
        }
    }
    out
}

/// Unimodality of `k -> N(k, b, D)` over `1 <= k <= q - 1` for `D = F_q`, `F_q^*`.
/// Returns (targets `b != 0`, target `b = 0`).
pub fn check_unimodality(fields: &[Field]) -> (CheckOutcome, CheckOutcome) {
    let mut nonzero = CheckOutcome::new("unimodality, b != 0");
    let mut zero = CheckOutcome::new("unimodality, b = 0");
    for f in fields {
        for set in [ExclusionSet::none(f), punctured_set(f)] {
            for b in f.elements() {
                let seq: Vec<Count> = (1..f.q() as u64)
                    .map(|k| count_value(&CountQuery::new(set.clone(), k, b).unwrap()).unwrap().0)
                    .collect();
                let detail = || {
                    let vals = seq.iter().map(|v| v.to_string()).join(",");
                    format!("q={} n={} b={}: [{vals}]", f.q(), set.n(), f.format_element(b))
                };
                if b.is_zero() {
                    zero.record(is_unimodal(&seq), detail);
                } else {
                    nonzero.record(is_unimodal(&seq), detail);
                }
            }
        }
    }
    (nonzero, zero)
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let fields = fields_up_to(config.max_q);
    let (sharp, general) = check_error_bounds(&fields, config.max_c, config.seed);
    let (uni_nonzero, uni_zero) = check_unimodality(&fields);
    VerifyReport {
        checks: vec![
            check_oracle_equivalence(&fields, config.max_c, config.seed, config.fault),
            check_sequence_paths(&fields, config.max_c as u64 + 1),
            check_binomial_sums(),
            check_ordered_relations(&fields),
            check_nested_sums(&fields, config.max_c.max(2), config.seed),
            sharp,
            check_symmetry(&fields),
            uni_nonzero,
        ],
        audit: vec![general, uni_zero],
    }
}
