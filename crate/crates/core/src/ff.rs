//! Exact arithmetic and dense linear algebra over a prime field 𝔽ₚ.
//!
//! Residues are kept canonically in `[0, p)`. Moduli are small (the prime
//! search stops at [`PRIME_SEARCH_CEILING`]), so every product of two
//! residues fits comfortably in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Upper limit for [`find_prime`].
pub const PRIME_SEARCH_CEILING: u64 = 1_000_000;

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `m`, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An odd prime, validated once on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> FpScalar {
        FpScalar::new(v, self)
    }

    #[inline]
    pub fn zero(self) -> FpScalar {
        FpScalar { value: 0, modulus: self }
    }

    #[inline]
    pub fn one(self) -> FpScalar {
        FpScalar { value: 1, modulus: self }
    }

    #[inline]
    fn reduce(self, v: u64) -> u64 {
        v % self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpScalar {
    value: u64,
    modulus: PrimeModulus,
}

impl FpScalar {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.get() as i64;
        Self {
            value: value.rem_euclid(p) as u64,
            modulus,
        }
    }

    pub fn from_residue(value: u64, modulus: PrimeModulus) -> Self {
        Self {
            value: modulus.reduce(value),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn pow(self, mut e: u64) -> Self {
        let p = self.modulus.get();
        let mut base = self.value;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Self {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Signed exponent; negative powers go through the inverse.
    pub fn powi(self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus.get() - 2))
        }
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.modulus.get() - 1;
        let mut order = group;
        for q in prime_factors(group) {
            while order % q == 0 && self.pow(order / q).is_one() {
                order /= q;
            }
        }
        Some(order)
    }

    /// True iff the order is exactly `n`.
    pub fn has_order(self, n: u64) -> bool {
        if self.is_zero() || n == 0 || !self.pow(n).is_one() {
            return false;
        }
        prime_factors(n).into_iter().all(|q| !self.pow(n / q).is_one())
    }
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.get())
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FpScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value)
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.reduce(self.value + rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.reduce(self.value + self.modulus.get() - rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.reduce(self.value * rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.modulus.reduce(self.modulus.get() - self.value),
            modulus: self.modulus,
        }
    }
}

/// Smallest odd prime `p >= lower_bound` with `p = 1 (mod n)`.
pub fn find_prime(n: u64, lower_bound: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("find_prime needs n >= 3, got {n}")));
    }
    if lower_bound < 3 {
        return Err(Error::InvalidParams(format!(
            "find_prime needs lower_bound >= 3, got {lower_bound}"
        )));
    }
    // first candidate >= lower_bound that is 1 mod n
    let mut p = lower_bound + (n + 1 - lower_bound % n) % n;
    while p <= PRIME_SEARCH_CEILING {
        if p % 2 == 1 && is_prime(p) {
            return Ok(p);
        }
        p += n;
    }
    Err(Error::PrimeSearchExhausted {
        n,
        lower_bound,
        ceiling: PRIME_SEARCH_CEILING,
    })
}

/// The `count` smallest odd primes congruent to 1 mod `n`.
pub fn primes_congruent_to_one(n: u64, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut lower = 3;
    while out.len() < count {
        let p = find_prime(n, lower)?;
        out.push(p);
        lower = p + 1;
    }
    Ok(out)
}

/// Smallest `ω` in `[2, p-1]` of multiplicative order exactly `n`.
pub fn primitive_root_of_unity(p: PrimeModulus, n: u64) -> Result<FpScalar> {
    let pm1 = p.get() - 1;
    if n == 0 || pm1 % n != 0 {
        return Err(Error::NoRootOfUnity { p: p.get(), n });
    }
    (2..p.get())
        .map(|w| FpScalar::from_residue(w, p))
        .find(|w| w.has_order(n))
        .ok_or(Error::NoRootOfUnity { p: p.get(), n })
}

/// Every element of exact order `n`, ascending.
pub fn all_primitive_roots_of_unity(p: PrimeModulus, n: u64) -> Result<Vec<FpScalar>> {
    let first = primitive_root_of_unity(p, n)?;
    let mut roots: Vec<FpScalar> = (1..n)
        .filter(|&t| gcd(t, n) == 1)
        .map(|t| first.pow(t))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Dense matrix over 𝔽ₚ, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    modulus: PrimeModulus,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(dim: usize, modulus: PrimeModulus) -> Self {
        let mut m = Self::zeros(dim, dim, modulus);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Builds from signed integer rows; all rows must have equal length.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&v| modulus.elem(v).value())
            .collect();
        Ok(Self {
            rows: r,
            cols: c,
            modulus,
            data,
        })
    }

    pub fn from_scalars(rows: usize, cols: usize, entries: &[FpScalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let modulus = entries
            .first()
            .map(|e| e.modulus())
            .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
        if entries.iter().any(|e| e.modulus() != modulus) {
            return Err(Error::InvalidParams("mixed moduli".into()));
        }
        Ok(Self {
            rows,
            cols,
            modulus,
            data: entries.iter().map(|e| e.value()).collect(),
        })
    }

    pub fn diag(entries: &[FpScalar]) -> Self {
        let modulus = entries[0].modulus();
        let d = entries.len();
        let mut m = Self::zeros(d, d, modulus);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * d + i] = e.value();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            value: self.data[i * self.cols + j],
            modulus: self.modulus,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FpScalar) {
        debug_assert_eq!(v.modulus(), self.modulus);
        self.data[i * self.cols + j] = v.value();
    }

    pub fn row_values(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.data[i * self.cols + j] == u64::from(i == j))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Matrix product. Panics on an inner-dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.modulus.get();
        let mut out = Self::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.data[k * other.cols + j]) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.modulus.get();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Self { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.modulus.get();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        Self { data, ..*self }
    }

    pub fn scale(&self, c: FpScalar) -> Self {
        let p = self.modulus.get();
        let data = self.data.iter().map(|a| a * c.value() % p).collect();
        Self { data, ..*self }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let p = self.modulus.get();
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c, self.modulus);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.data[i1 * self.cols + j1];
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let row = i1 * other.rows + i2;
                        let col = j1 * other.cols + j2;
                        out.data[row * c + col] = a * other.data[i2 * other.cols + j2] % p;
                    }
                }
            }
        }
        out
    }

    /// Stacks `blocks` vertically; all must share a column count.
    pub fn vstack(blocks: &[FpMatrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no blocks".into()))?;
        if blocks.iter().any(|b| b.cols != first.cols) {
            return Err(Error::DimensionMismatch("column counts differ".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().copied()).collect();
        Ok(Self {
            rows,
            cols: first.cols,
            modulus: first.modulus,
            data,
        })
    }

    pub fn trace(&self) -> FpScalar {
        let p = self.modulus.get();
        let t = (0..self.rows.min(self.cols)).fold(0, |acc, i| (acc + self.data[i * self.cols + i]) % p);
        FpScalar {
            value: t,
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form; returns the form and its pivot columns.
    pub fn row_reduce(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = self.modulus.get();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            if found != pivot_row {
                for j in 0..cols {
                    m.data.swap(found * cols + j, pivot_row * cols + j);
                }
            }
            let inv = FpScalar::from_residue(m.data[pivot_row * cols + col], self.modulus)
                .inv()
                .expect("pivot is nonzero")
                .value();
            for j in col..cols {
                let idx = pivot_row * cols + j;
                m.data[idx] = m.data[idx] * inv % p;
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.data[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for j in col..cols {
                    let sub = factor * m.data[pivot_row * cols + j] % p;
                    let idx = r * cols + j;
                    m.data[idx] = (m.data[idx] + p - sub) % p;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// `cols - rank`, the dimension of the right null space.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn determinant(&self) -> Result<FpScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let p = self.modulus.get();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return Ok(self.modulus.zero());
            };
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pv = m[col * n + col];
            det = det * pv % p;
            let inv = FpScalar::from_residue(pv, self.modulus).inv().unwrap().value();
            for r in col + 1..n {
                let factor = m[r * n + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * m[col * n + j] % p;
                    m[r * n + j] = (m[r * n + j] + p - sub) % p;
                }
            }
        }
        Ok(FpScalar {
            value: det,
            modulus: self.modulus,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.modulus);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j];
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (red, pivots) = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(n, n, self.modulus);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = red.data[i * 2 * n + n + j];
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row_values(i))?;
        }
        write!(f, "] mod {}", self.modulus.get())
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn nullity(m: &FpMatrix) -> usize {
    m.nullity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> PrimeModulus {
        PrimeModulus::new(7).unwrap()
    }

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(3, 3), Ok(7));
        assert_eq!(find_prime(4, 3), Ok(5));
        assert_eq!(find_prime(12, 3), Ok(13));
        assert_eq!(find_prime(5, 12), Ok(31));
        assert!(find_prime(2, 3).is_err());
        assert!(matches!(
            find_prime(3, PRIME_SEARCH_CEILING),
            Err(Error::PrimeSearchExhausted { .. })
        ));
    }

    #[test]
    fn two_smallest_primes() {
        assert_eq!(primes_congruent_to_one(12, 2).unwrap(), vec![13, 37]);
        assert_eq!(primes_congruent_to_one(4, 3).unwrap(), vec![5, 13, 17]);
    }

    #[test]
    fn root_of_unity_examples() {
        let w = |p, n| primitive_root_of_unity(PrimeModulus::new(p).unwrap(), n).map(|x| x.value());
        assert_eq!(w(7, 3), Ok(2));
        assert_eq!(w(7, 6), Ok(3));
        assert_eq!(w(5, 4), Ok(2));
        assert_eq!(w(7, 4), Err(Error::NoRootOfUnity { p: 7, n: 4 }));
    }

    #[test]
    fn all_roots_have_exact_order() {
        let p = PrimeModulus::new(13).unwrap();
        let roots = all_primitive_roots_of_unity(p, 12).unwrap();
        assert_eq!(roots.iter().map(|r| r.value()).collect::<Vec<_>>(), vec![2, 6, 7, 11]);
        for r in roots {
            assert_eq!(r.multiplicative_order(), Some(12));
        }
    }

    #[test]
    fn modulus_rejects_non_primes() {
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(6).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(11).is_ok());
    }

    #[test]
    fn negative_inputs_normalize() {
        assert_eq!(f7().elem(-1).value(), 6);
        assert_eq!(f7().elem(-15).value(), 6);
        assert_eq!((f7().elem(3) - f7().elem(5)).value(), 5);
    }

    #[test]
    fn rank_and_nullity_examples() {
        let p = f7();
        assert_eq!(FpMatrix::identity(4, p).rank(), 4);
        assert_eq!(FpMatrix::zeros(3, 3, p).rank(), 0);
        let m = FpMatrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&m), 1);
        assert_eq!(nullity(&FpMatrix::identity(4, p)), 0);
        assert_eq!(nullity(&FpMatrix::zeros(2, 5, p)), 5);
        assert_eq!(nullity(&m), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let p = f7();
        let m = FpMatrix::from_rows(p, &[vec![2, 0], vec![0, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv, FpMatrix::from_rows(p, &[vec![4, 0], vec![0, 2]]).unwrap());
        assert_eq!(m.determinant().unwrap().value(), 1);
        let sing = FpMatrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert!(sing.determinant().unwrap().is_zero());
    }

    fn small_matrix(max_dim: usize) -> impl Strategy<Value = FpMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..7, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                FpMatrix::from_rows(PrimeModulus::new(7).unwrap(), &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(6)) {
            prop_assert_eq!(m.rank() + m.nullity(), m.cols());
        }

        #[test]
        fn rank_of_product_is_bounded(a in small_matrix(5), seed in proptest::collection::vec(0i64..7, 25)) {
            let rows: Vec<Vec<i64>> = seed.chunks(5).take(a.cols()).map(<[i64]>::to_vec).collect();
            let b = FpMatrix::from_rows(a.modulus(), &rows).unwrap();
            let ab = a.mul(&b);
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn det_multiplicative(a in proptest::collection::vec(0i64..7, 9), b in proptest::collection::vec(0i64..7, 9)) {
            let p = PrimeModulus::new(7).unwrap();
            let to = |v: &[i64]| FpMatrix::from_rows(p, &v.chunks(3).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap();
            let (a, b) = (to(&a), to(&b));
            prop_assert_eq!(a.mul(&b).determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
            prop_assert_eq!(a.rank() == 3, !a.determinant().unwrap().is_zero());
        }

        #[test]
        fn roots_are_exact_order(idx in 0usize..6, n in 3u64..20) {
            let p = primes_congruent_to_one(n, 6).unwrap()[idx];
            let w = primitive_root_of_unity(PrimeModulus::new(p).unwrap(), n).unwrap();
            prop_assert!(w.pow(n).is_one());
            for d in 1..n {
                if n % d == 0 {
                    prop_assert!(!w.pow(d).is_one());
                }
            }
        }
    }
}
