//! Exact rank of sparse integer matrices, over the rationals or a prime field.
//!
//! Vectors are inserted one at a time into an echelon basis keyed by leading
//! index. Over the rationals the elimination is fraction-free: a vector `t`
//! is reduced by a pivot `p` as `p_lead * t - t_lead * p` and then divided by
//! the gcd of its entries. Entries are tracked in `i64` with checked
//! arithmetic and the whole computation is redone with `BigInt` on overflow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::homology::FieldSpec;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no
/// zero values.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Rank of the matrix whose columns (or rows) are `vectors`.
pub fn rank(vectors: &[SparseVec<i64>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rational => rational_rank(vectors),
        FieldSpec::Prime(p) => prime_rank(vectors, p),
    }
}

pub fn rational_rank(vectors: &[SparseVec<i64>]) -> usize {
    match integer_rank::<i64>(vectors) {
        Some(r) => r,
        None => integer_rank::<BigInt>(vectors).expect("BigInt arithmetic cannot overflow"),
    }
}

trait ExactInt: Clone + Integer + Signed {
    fn from_i64(v: i64) -> Self;
    /// `a * x - b * y`, or `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn cross(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn cross(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
}

fn integer_rank<T: ExactInt>(vectors: &[SparseVec<i64>]) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseVec<T>> = HashMap::new();
    for v in vectors {
        let mut t: SparseVec<T> = v
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|&(i, x)| (i, T::from_i64(x)))
            .collect();
        while let Some(lead) = t.first().map(|e| e.0) {
            match pivots.get(&lead) {
                Some(p) => t = integer_reduce(&t, p)?,
                None => {
                    pivots.insert(lead, t);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `p_lead * t - t_lead * p`, made primitive. Both share the same lead
/// index, which cancels.
fn integer_reduce<T: ExactInt>(t: &SparseVec<T>, p: &SparseVec<T>) -> Option<SparseVec<T>> {
    let a = &p[0].1;
    let b = &t[0].1;
    let g = a.gcd(b);
    let (a, b) = (a.div_floor(&g), b.div_floor(&g));
    let zero = T::zero();
    let mut out = Vec::with_capacity(t.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < t.len() || j < p.len() {
        let ti = t.get(i).map_or(usize::MAX, |e| e.0);
        let pj = p.get(j).map_or(usize::MAX, |e| e.0);
        let (idx, x, y) = match ti.cmp(&pj) {
            std::cmp::Ordering::Less => {
                i += 1;
                (ti, &t[i - 1].1, &zero)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (pj, &zero, &p[j - 1].1)
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (ti, &t[i - 1].1, &p[j - 1].1)
            }
        };
        let v = T::cross(&a, x, &b, y)?;
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    let content = out.iter().fold(T::zero(), |acc, (_, v)| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in out.iter_mut() {
            *v = v.div_floor(&content);
        }
    }
    Some(out)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn prime_rank(vectors: &[SparseVec<i64>], p: u64) -> usize {
    let mut pivots: HashMap<usize, SparseVec<u64>> = HashMap::new();
    for v in vectors {
        let mut t: SparseVec<u64> = v
            .iter()
            .map(|&(i, x)| (i, x.rem_euclid(p as i64) as u64))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some((lead, coeff)) = t.first().copied() {
            match pivots.get(&lead) {
                Some(piv) => t = prime_reduce(&t, piv, coeff, p),
                None => {
                    // Store monic so reduction needs no inverse.
                    let inv = inv_mod(coeff, p);
                    for (_, x) in t.iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    pivots.insert(lead, t);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `t - factor * piv` where `piv` is monic with the same lead as `t`.
fn prime_reduce(t: &SparseVec<u64>, piv: &SparseVec<u64>, factor: u64, p: u64) -> SparseVec<u64> {
    let mut out = Vec::with_capacity(t.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < t.len() || j < piv.len() {
        let ti = t.get(i).map_or(usize::MAX, |e| e.0);
        let pj = piv.get(j).map_or(usize::MAX, |e| e.0);
        let (idx, v) = if ti < pj {
            i += 1;
            (ti, t[i - 1].1)
        } else {
            let sub = mul_mod(factor, piv[j].1, p);
            let x = if ti == pj {
                i += 1;
                t[i - 1].1
            } else {
                0
            };
            j += 1;
            (pj, (x + p - sub) % p)
        };
        if v != 0 {
            out.push((idx, v));
        }
    }
    out
}

/// Deterministic primality test for `u64` (trial division is enough for the
/// field sizes used here, but Miller-Rabin with fixed bases keeps it exact
/// for all 64-bit inputs).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_to_sparse(rows: &[Vec<i64>]) -> Vec<SparseVec<i64>> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect())
            .collect()
    }

    /// Rank by plain Gaussian elimination over exact fractions, kept as
    /// (numerator, denominator) pairs of `i128`.
    fn oracle_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<(i128, i128)>> =
            rows.iter().map(|r| r.iter().map(|&x| (x as i128, 1)).collect()).collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c].0 != 0) else { continue };
            m.swap(rank, p);
            let (pn, pd) = m[rank][c];
            for r in 0..m.len() {
                if r == rank || m[r][c].0 == 0 {
                    continue;
                }
                let (fn_, fd) = (m[r][c].0 * pd, m[r][c].1 * pn);
                for k in 0..cols {
                    let (a, b) = m[r][k];
                    let (x, y) = m[rank][k];
                    let num = a * fd * y - fn_ * x * b;
                    let den = b * fd * y;
                    let g = num_integer::gcd(num, den).max(1);
                    let s = if den < 0 { -1 } else { 1 };
                    m[r][k] = (s * num / g, s * den / g);
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]];
        let sparse = dense_to_sparse(&rows);
        // r0 - r1 = r2
        assert_eq!(rational_rank(&sparse), 2);
        assert_eq!(prime_rank(&sparse, 2), 2);
        let rows = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(rational_rank(&dense_to_sparse(&rows)), 2);
        assert_eq!(prime_rank(&dense_to_sparse(&rows), 2), 0);
        assert_eq!(rational_rank(&[]), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![vec![big, 1, 0], vec![big - 1, 0, 1], vec![1, big, big]];
        assert_eq!(integer_rank::<i64>(&dense_to_sparse(&rows)), None);
        assert_eq!(rational_rank(&dense_to_sparse(&rows)), 3);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    proptest! {
        #[test]
        fn rational_rank_matches_oracle(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..6)) {
            prop_assert_eq!(rational_rank(&dense_to_sparse(&rows)), oracle_rank(&rows));
        }

        #[test]
        fn prime_rank_never_exceeds_rational(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..6)) {
            let s = dense_to_sparse(&rows);
            prop_assert!(prime_rank(&s, 2) <= rational_rank(&s));
            prop_assert!(prime_rank(&s, 101) <= rational_rank(&s));
        }
    }
}
