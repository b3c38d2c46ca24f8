use num_traits::Zero;

use crate::gf::{Field, FieldElement};
use crate::Count;

use super::{Degree, Poly, RsError};

/// Largest number of codewords `distance_to_code` enumerates by default.
pub const DEFAULT_DISTANCE_LIMIT: u64 = 10_000_000;

/// The code of dimension `k` obtained by evaluating polynomials of degree
/// `< k` at `n` distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    field: Field,
    points: Vec<FieldElement>,
    k: usize,
    /// `prod_j (x - x_j)`.
    master: Poly,
    /// `1 / prod_{j != i} (x_i - x_j)`.
    weights: Vec<FieldElement>,
}

/// A received word, values listed in evaluation-point order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    values: Vec<FieldElement>,
}

impl Word {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Where the distance to the code is known to lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceBounds {
    Codeword,
    /// `n - d(u) <= distance <= n - k`.
    Range { lower: usize, upper: usize },
}

impl RsCode {
    pub fn new(field: &Field, points: &[FieldElement], k: usize) -> Result<Self, RsError> {
        for &x in points {
            field.check(x)?;
        }
        let mut sorted = points.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(RsError::DuplicatePoint);
        }
        let n = points.len();
        if k == 0 || k > n {
            return Err(RsError::DimensionOutOfRange { k, n });
        }
        let master = points.iter().fold(Poly::new(vec![field.one()]), |acc, &x| {
            acc.mul(field, &Poly::new(vec![field.neg(x), field.one()]))
        });
        let weights = points
            .iter()
            .enumerate()
            .map(|(i, &xi)| {
                let prod = points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(field.one(), |acc, (_, &xj)| field.mul(acc, field.sub(xi, xj)));
                field.inv(prod).expect("distinct points")
            })
            .collect();
        Ok(Self {
            field: field.clone(),
            points: points.to_vec(),
            k,
            master,
            weights,
        })
    }

    /// Evaluation at every element of F_q.
    pub fn full(field: &Field, k: usize) -> Result<Self, RsError> {
        let points: Vec<_> = field.elements().collect();
        Self::new(field, &points, k)
    }

    /// Evaluation at every nonzero element of F_q.
    pub fn punctured(field: &Field, k: usize) -> Result<Self, RsError> {
        let points: Vec<_> = field.elements().skip(1).collect();
        Self::new(field, &points, k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self, values: Vec<FieldElement>) -> Result<Word, RsError> {
        if values.len() != self.n() {
            return Err(RsError::LengthMismatch {
                expected: self.n(),
                got: values.len(),
            });
        }
        for &v in &values {
            self.field.check(v)?;
        }
        Ok(Word { values })
    }

    /// Comma-separated element texts in evaluation-point order.
    pub fn parse_word(&self, text: &str) -> Result<Word, RsError> {
        self.word(self.field.parse_element_list(text)?)
    }

    pub fn format_word(&self, word: &Word) -> String {
        self.field.format_element_list(word.values())
    }

    /// `(f(x_1), ..., f(x_n))` for `deg f < k`.
    pub fn encode(&self, f: &Poly) -> Result<Word, RsError> {
        if let Degree::Finite(d) = f.degree() {
            if d >= self.k {
                return Err(RsError::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        Ok(self.evaluate(f))
    }

    /// Evaluation of any polynomial at the code points.
    pub fn evaluate(&self, f: &Poly) -> Word {
        Word {
            values: self.points.iter().map(|&x| f.eval(&self.field, x)).collect(),
        }
    }

    /// The unique polynomial of degree `< n` through the word, by Lagrange interpolation.
    pub fn interpolate(&self, word: &Word) -> Poly {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.n()];
        for ((&xi, &wi), &ui) in self.points.iter().zip(&self.weights).zip(word.values()) {
            if ui.is_zero() {
                continue;
            }
            let s = f.mul(ui, wi);
            let basis = self.master.div_linear(f, xi);
            for (a, &c) in acc.iter_mut().zip(basis.coeffs()) {
                *a = f.add(*a, f.mul(c, s));
            }
        }
        Poly::new(acc)
    }

    /// `d(u)`, the degree of the interpolating polynomial.
    pub fn word_degree(&self, word: &Word) -> Degree {
        self.interpolate(word).degree()
    }

    pub fn is_codeword(&self, word: &Word) -> bool {
        self.word_degree(word) < Degree::Finite(self.k)
    }

    /// `q^k`, the number of codewords.
    pub fn size(&self) -> Count {
        num_traits::pow(Count::from(self.field.q()), self.k)
    }

    fn check_enumeration(&self, limit: u64) -> Result<(), RsError> {
        let size = self.size();
        if size > Count::from(limit) {
            return Err(RsError::GuardExceeded {
                work: size.to_string(),
                limit,
            });
        }
        Ok(())
    }

    /// Exact Hamming distance to the nearest codeword, by enumerating all
    /// `q^k` messages; refuses when `q^k > limit`.
    pub fn distance_to_code(&self, word: &Word, limit: u64) -> Result<usize, RsError> {
        self.check_enumeration(limit)?;
        let f = &self.field;
        let q = f.q();
        let mut msg = vec![0u32; self.k];
        let mut best = 0;
        loop {
            let poly = Poly::new(msg.iter().map(|&c| f.from_code(c).unwrap()).collect());
            let agree = self
                .points
                .iter()
                .zip(word.values())
                .filter(|&(&x, &u)| poly.eval(f, x) == u)
                .count();
            best = best.max(agree);
            if best == self.n() || !next_message(&mut msg, q) {
                break;
            }
        }
        Ok(self.n() - best)
    }

    /// `(n - d(u), n - k)` for `k <= d(u) <= n - 1`.
    pub fn distance_bounds(&self, word: &Word) -> DistanceBounds {
        match self.word_degree(word) {
            Degree::Finite(d) if d >= self.k => DistanceBounds::Range {
                lower: self.n() - d,
                upper: self.n() - self.k,
            },
            _ => DistanceBounds::Codeword,
        }
    }

    /// Minimum weight of a nonzero codeword, by enumeration.
    pub fn minimum_distance(&self, limit: u64) -> Result<usize, RsError> {
        let table = CodewordTable::new(self, limit)?;
        Ok(table
            .codes
            .chunks(self.n())
            .filter(|c| c.iter().any(|&v| v != 0))
            .map(|c| c.iter().filter(|&&v| v != 0).count())
            .min()
            .unwrap_or(self.n() + 1))
    }
}

/// Advances a base-`q` counter; false once it wraps to zero.
fn next_message(msg: &mut [u32], q: u32) -> bool {
    for digit in msg.iter_mut() {
        *digit += 1;
        if *digit < q {
            return true;
        }
        *digit = 0;
    }
    false
}

/// All codewords kept in memory for repeated distance queries against one code.
#[derive(Clone, Debug)]
pub struct CodewordTable {
    n: usize,
    codes: Vec<u32>,
}

impl CodewordTable {
    pub fn new(code: &RsCode, limit: u64) -> Result<Self, RsError> {
        code.check_enumeration(limit)?;
        let f = code.field();
        let n = code.n();
        let mut msg = vec![0u32; code.k()];
        let mut codes = Vec::new();
        loop {
            let poly = Poly::new(msg.iter().map(|&c| f.from_code(c).unwrap()).collect());
            codes.extend(code.points().iter().map(|&x| poly.eval(f, x).code()));
            if !next_message(&mut msg, f.q()) {
                break;
            }
        }
        Ok(Self { n, codes })
    }

    pub fn len(&self) -> usize {
        self.codes.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn distance(&self, word: &Word) -> usize {
        let target: Vec<u32> = word.values().iter().map(|v| v.code()).collect();
        let mut best = 0;
        for c in self.codes.chunks(self.n) {
            let agree = c.iter().zip(&target).filter(|(a, b)| a == b).count();
            if agree > best {
                best = agree;
                if best == self.n {
                    break;
                }
            }
        }
        self.n - best
    }
}

impl DistanceBounds {
    pub fn contains(&self, distance: usize) -> bool {
        match *self {
            DistanceBounds::Codeword => distance.is_zero(),
            DistanceBounds::Range { lower, upper } => lower <= distance && distance <= upper,
        }
    }
}
