//! Finite fields F_q, q = p^e, in the power basis of F_p[x]/(modulus).
//!
//! Elements are stored as the integer encoding `sum c_i p^i` of their
//! coordinate vector `(c_0, ..., c_{e-1})`. The encoding is a bijection with
//! the coordinate vector, so equality of codes is equality of elements and
//! the prime subfield is exactly the codes `< p`. Multiplication goes through
//! exp/log tables of the fixed generator.

mod construct;
mod text;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub(crate) use construct::is_prime;

/// Default upper bound on q accepted by [`Field::new`].
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_Q`].
pub const MAX_Q_ENV: &str = "FFSUBSUM_MAX_Q";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the size limit {limit}")]
    TooLarge { p: u64, e: u32, limit: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields (q = {left} and q = {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("element is not in the prime subfield")]
    NotInPrimeSubfield,
    #[error("{op} takes {expected} operand(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("cannot parse field element {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// An element of some [`Field`]. Cheap to copy; carries the order of its
/// field so that mixed-field arithmetic can be rejected.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    code: u32,
    order: u32,
}

impl FieldElement {
    /// Integer encoding of the coordinate vector (constant coordinate least significant).
    pub fn code(self) -> u32 {
        self.code
    }

    /// Order q of the owning field.
    pub fn field_order(self) -> u32 {
        self.order
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Formats like [`Field::format_element`]; the characteristic and degree are
/// recovered from the stored field order.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.order as u64;
        let p = construct::prime_factors(q)[0];
        let mut e = 0;
        let mut t = q;
        while t > 1 {
            t /= p;
            e += 1;
        }
        f.write_str(&text::format_code(self.code, p as u32, e))
    }
}

/// Arithmetic operations accepted by [`Field::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[g^i] = i`; entry 0 unused.
    log: Vec<u32>,
}

/// A finite field F_q. Clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .field("generator", &self.generator())
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // construction is deterministic in (p, e)
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

/// Field size limit: `FFSUBSUM_MAX_Q` if set and parseable, else [`DEFAULT_MAX_Q`].
pub fn size_limit() -> u64 {
    std::env::var(MAX_Q_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_Q)
}

impl Field {
    /// Builds F_{p^e} under the size limit from [`size_limit`].
    pub fn new(p: u64, e: u32) -> Result<Self, GfError> {
        Self::with_limit(p, e, size_limit())
    }

    pub fn with_limit(p: u64, e: u32, limit: u64) -> Result<Self, GfError> {
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= limit && q <= u32::MAX as u64)
            .ok_or(GfError::TooLarge { p, e, limit })?;
        let p32 = p as u32;
        let q32 = q as u32;

        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            construct::smallest_irreducible(p32, e)
        };

        let factors = construct::prime_factors(q - 1);
        let generator = (1..q32)
            .find(|&code| {
                let x = construct::digits(code, p32, e);
                factors.iter().all(|&l| {
                    let y = construct::pow_mod(&x, (q - 1) / l, &modulus, p32);
                    construct::undigits(&y, p32) != 1
                })
            })
            .expect("F_q^* is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        if e == 1 {
            let mut cur = 1u64;
            for i in 0..q - 1 {
                exp.push(cur as u32);
                log[cur as usize] = i as u32;
                cur = cur * generator as u64 % p;
            }
        } else {
            let g = construct::digits(generator, p32, e);
            let mut cur = construct::digits(1, p32, e);
            for i in 0..q - 1 {
                let code = construct::undigits(&cur, p32);
                exp.push(code);
                log[code as usize] = i as u32;
                cur = construct::mul_mod(&cur, &g, &modulus, p32);
            }
        }

        Ok(Field(Arc::new(FieldData {
            p: p32,
            e,
            q: q32,
            modulus,
            generator,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Monic modulus, low degree first (`x` itself for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.elem(self.0.generator)
    }

    fn elem(&self, code: u32) -> FieldElement {
        FieldElement {
            code,
            order: self.0.q,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Element with the given integer encoding; `None` if `code >= q`.
    pub fn from_code(&self, code: u32) -> Option<FieldElement> {
        (code < self.0.q).then(|| self.elem(code))
    }

    /// Element with the given power-basis coordinates; `None` on a length or range error.
    pub fn from_coords(&self, coords: &[u32]) -> Option<FieldElement> {
        if coords.len() != self.0.e as usize || coords.iter().any(|&c| c >= self.0.p) {
            return None;
        }
        Some(self.elem(construct::undigits(coords, self.0.p)))
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        construct::digits(x.code, self.0.p, self.0.e)
    }

    /// The image of the integer `k` in F_q, i.e. `(k mod p) * 1`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        self.elem(k.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |c| self.elem(c))
    }

    /// Whether `x` was produced by a field of this order.
    pub fn contains(&self, x: FieldElement) -> bool {
        x.order == self.0.q && x.code < self.0.q
    }

    pub fn check(&self, x: FieldElement) -> Result<(), GfError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GfError::FieldMismatch {
                left: self.0.q,
                right: x.order,
            })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        self.elem(self.add_codes(a.code, b.code))
    }

    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        self.elem(self.neg_code(a.code))
    }

    fn neg_code(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * place;
            }
            place *= p;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.code == 0 || b.code == 0 {
            return self.zero();
        }
        let n = self.0.q as u64 - 1;
        let i = (self.0.log[a.code as usize] as u64 + self.0.log[b.code as usize] as u64) % n;
        self.elem(self.0.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.code == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = self.0.q - 1;
        let i = (n - self.0.log[a.code as usize]) % n;
        Ok(self.elem(self.0.exp[i as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        debug_assert!(self.contains(a));
        if n == 0 {
            return self.one();
        }
        if a.code == 0 {
            return self.zero();
        }
        let order = self.0.q as u64 - 1;
        let i = (self.0.log[a.code as usize] as u64 % order) * (n % order) % order;
        self.elem(self.0.exp[i as usize])
    }

    /// `k * a` for an integer `k`.
    pub fn scale(&self, k: i64, a: FieldElement) -> FieldElement {
        self.mul(self.from_int(k), a)
    }

    /// `g^k` for the field's generator.
    pub fn generator_pow(&self, k: u64) -> FieldElement {
        self.elem(self.0.exp[(k % (self.0.q as u64 - 1)) as usize])
    }

    /// Discrete logarithm to the base of the generator; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        (a.code != 0).then(|| self.0.log[a.code as usize] as u64)
    }

    /// Sum of all elements of the field: 0 unless q = 2.
    pub fn sum_of_all(&self) -> FieldElement {
        self.elements().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Checked arithmetic on arbitrary operands.
    pub fn apply(&self, op: ArithOp, operands: &[FieldElement]) -> Result<FieldElement, GfError> {
        let (name, arity) = match op {
            ArithOp::Add => ("add", 2),
            ArithOp::Sub => ("sub", 2),
            ArithOp::Mul => ("mul", 2),
            ArithOp::Neg => ("neg", 1),
            ArithOp::Inv => ("inv", 1),
            ArithOp::Pow(_) => ("pow", 1),
        };
        if operands.len() != arity {
            return Err(GfError::Arity {
                op: name,
                expected: arity,
                got: operands.len(),
            });
        }
        for &x in operands {
            self.check(x)?;
        }
        let a = operands[0];
        Ok(match op {
            ArithOp::Add => self.add(a, operands[1]),
            ArithOp::Sub => self.sub(a, operands[1]),
            ArithOp::Mul => self.mul(a, operands[1]),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(n) => self.pow(a, n),
        })
    }

    /// In the power basis, `x` lies in F_p iff every non-constant coordinate is zero.
    pub fn in_prime_subfield(&self, x: FieldElement) -> bool {
        x.code < self.0.p
    }

    pub fn prime_residue(&self, x: FieldElement) -> Result<u32, GfError> {
        self.check(x)?;
        if self.in_prime_subfield(x) {
            Ok(x.code)
        } else {
            Err(GfError::NotInPrimeSubfield)
        }
    }

    /// Rank over F_p of the coordinate matrix whose rows are `elements`.
    pub fn fp_rank(&self, elements: &[FieldElement]) -> usize {
        let p = self.0.p as u64;
        let mut rows: Vec<Vec<u64>> = elements
            .iter()
            .map(|&x| self.coords(x).into_iter().map(u64::from).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.0.e as usize {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = modpow(rows[rank][col], p - 2, p);
            for v in rows[rank].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                        *v = (*v + p - factor * pv % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement, GfError> {
        text::parse(self, s)
    }

    /// Decimal residue for prime fields, `[c0,...,c_{e-1}]` otherwise.
    pub fn format_element(&self, x: FieldElement) -> String {
        text::format_code(x.code, self.0.p, self.0.e)
    }

    /// Parses a comma-separated element list; commas inside `[...]` do not split.
    pub fn parse_element_list(&self, s: &str) -> Result<Vec<FieldElement>, GfError> {
        text::split_list(s)
            .into_iter()
            .map(|item| self.parse_element(item))
            .collect()
    }

    pub fn format_element_list(&self, xs: &[FieldElement]) -> String {
        xs.iter()
            .map(|&x| self.format_element(x))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(f: &Field, x: FieldElement) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != f.one() {
            y = f.mul(y, x);
            n += 1;
        }
        n
    }

    #[test]
    fn f5_generator_is_two() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        // orders of 2, 3, 4 are 4, 4, 2; 2 is the least primitive root
        assert_eq!(order_of(&f, f.from_int(2)), 4);
        assert_eq!(order_of(&f, f.from_int(3)), 4);
        assert_eq!(order_of(&f, f.from_int(4)), 2);
        assert_eq!(f.generator(), f.from_int(2));
    }

    #[test]
    fn f2_generator_is_one() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.generator(), f.one());
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn f128_generator_has_full_order() {
        let f = Field::new(2, 7).unwrap();
        assert_eq!(f.q(), 128);
        let g = f.generator();
        assert_eq!(order_of(&f, g), 127);
        assert_eq!(f.mul(g, f.pow(g, 126)), f.one());
        // g is not in F_2
        assert_ne!(f.mul(g, g), g);
        assert!(!f.in_prime_subfield(g));
    }

    #[test]
    fn small_arithmetic() {
        let f = Field::new(5, 1).unwrap();
        let (three, four, two) = (f.from_int(3), f.from_int(4), f.from_int(2));
        assert_eq!(f.add(three, four), f.from_int(2));
        assert_eq!(f.inv(two).unwrap(), three);
        assert_eq!(f.inv(f.zero()), Err(GfError::ZeroInverse));
        assert_eq!(f.sub(two, four), three);
        assert_eq!(f.neg(two), three);
    }

    #[test]
    fn apply_checks_operands() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let err = f5.apply(ArithOp::Add, &[f5.one(), f7.one()]).unwrap_err();
        assert_eq!(err, GfError::FieldMismatch { left: 5, right: 7 });
        assert_eq!(
            f5.apply(ArithOp::Inv, &[f5.zero()]),
            Err(GfError::ZeroInverse)
        );
        assert!(matches!(
            f5.apply(ArithOp::Mul, &[f5.one()]),
            Err(GfError::Arity { .. })
        ));
        assert_eq!(
            f5.apply(ArithOp::Pow(3), &[f5.from_int(2)]).unwrap(),
            f5.from_int(3)
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(6, 1).unwrap_err(), GfError::NotPrime(6));
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(
            Field::with_limit(2, 11, 1024),
            Err(GfError::TooLarge { .. })
        ));
    }

    #[test]
    fn deterministic_construction() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (2, 7)] {
            let a = Field::new(p, e).unwrap();
            let b = Field::new(p, e).unwrap();
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.generator(), b.generator());
        }
    }

    #[test]
    fn prime_subfield_matches_frobenius() {
        for (p, e) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 7)] {
            let f = Field::new(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.in_prime_subfield(x), f.pow(x, p) == x, "{x:?} in F_{}", f.q());
                assert_eq!(f.pow(x, f.q() as u64), x);
                if !x.is_zero() {
                    assert_eq!(f.pow(x, f.q() as u64 - 1), f.one());
                }
            }
        }
    }

    #[test]
    fn prime_residue_lookup() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.prime_residue(f.from_int(3)), Ok(3));
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.prime_residue(f8.zero()), Ok(0));
        assert_eq!(
            f8.prime_residue(f8.generator()),
            Err(GfError::NotInPrimeSubfield)
        );
    }

    #[test]
    fn fp_rank_examples() {
        let f = Field::new(2, 7).unwrap();
        let w = f.generator();
        let basis = [f.one(), w, f.pow(w, 2), f.pow(w, 3)];
        assert_eq!(f.fp_rank(&basis), 4);
        assert_eq!(f.fp_rank(&[]), 0);

        let f25 = Field::new(5, 2).unwrap();
        let x = f25.generator();
        assert_eq!(f25.fp_rank(&[x, f25.scale(2, x)]), 1);

        // e consecutive generator powers span F_q over F_p
        for (p, e) in [(2, 5), (3, 3), (7, 2)] {
            let f = Field::new(p, e).unwrap();
            let powers: Vec<_> = (0..e as u64).map(|i| f.generator_pow(i)).collect();
            assert_eq!(f.fp_rank(&powers), e as usize);
        }
    }

    #[test]
    fn sum_of_all_elements() {
        assert_eq!(Field::new(2, 1).unwrap().sum_of_all().code(), 1);
        for (p, e) in [(2, 2), (3, 1), (5, 2), (2, 3)] {
            let f = Field::new(p, e).unwrap();
            assert!(f.sum_of_all().is_zero());
        }
    }
}
