//! Dense polynomial helpers over F_p used only while building a field:
//! modulus search, generator search and the exp/log tables.

/// Coefficients low degree first, each in `[0, p)`.
pub(crate) type PolyFp = Vec<u32>;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, in place.
fn reduce_monic(a: &mut PolyFp, m: &[u32], p: u32) {
    let d = m.len() - 1;
    let p64 = p as u64;
    let mut top = a.len();
    while top > d {
        top -= 1;
        let lead = a[top] as u64;
        if lead != 0 {
            let shift = top - d;
            for (i, &mi) in m.iter().enumerate() {
                let t = (a[shift + i] as u64 + p64 - (lead * mi as u64) % p64) % p64;
                a[shift + i] = t as u32;
            }
        }
    }
    if a.len() > d {
        a.truncate(d);
    }
}

/// True iff the monic polynomial `divisor` divides `poly`.
fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let mut r = poly.to_vec();
    reduce_monic(&mut r, divisor, p);
    r.iter().all(|&c| c == 0)
}

/// Monic polynomial of degree `deg` whose low coefficients are the base-p
/// digits of `index` (constant term least significant).
fn monic_from_index(mut index: u64, deg: usize, p: u32) -> PolyFp {
    let mut v = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        v.push((index % p as u64) as u32);
        index /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility by trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            if divides(&monic_from_index(idx, d, p), poly, p) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e`,
/// comparing coefficient vectors `(c_0, c_1, ..., c_{e-1})` with `c_0` first.
pub(crate) fn smallest_irreducible(p: u32, e: u32) -> PolyFp {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for t in 0..total {
        // c_0 is the most significant digit of t so that t increases lexicographically.
        let mut coeffs = vec![0u32; e + 1];
        let mut rest = t;
        for i in (0..e).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[e] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Product of two residues-vectors of length `e` modulo `modulus` (degree `e`).
pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> PolyFp {
    let e = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u32; 2 * e.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = (prod[i + j] as u64 + x as u64 * y as u64) % p64;
            prod[i + j] = t as u32;
        }
    }
    reduce_monic(&mut prod, modulus, p);
    prod.resize(e, 0);
    prod
}

pub(crate) fn pow_mod(base: &[u32], mut exp: u64, modulus: &[u32], p: u32) -> PolyFp {
    let e = modulus.len() - 1;
    let mut result = vec![0u32; e];
    result[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(&result, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    result
}

pub(crate) fn digits(code: u32, p: u32, e: u32) -> PolyFp {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

pub(crate) fn undigits(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(127) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_factors(127), vec![127]);
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn smallest_irreducibles_small_fields() {
        // x^2 + x + 1 over F_2; x^3 + 1 = (x+1)(x^2+x+1) is skipped, x^3 + x^2 + 1 comes first.
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        // x^2 + 1 over F_3 has no root (-1 is a non-square mod 3).
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn reducible_detected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2, no roots but reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn digits_roundtrip() {
        for code in 0..125 {
            assert_eq!(undigits(&digits(code, 5, 3), 5), code);
        }
    }
}
