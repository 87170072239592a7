//! Exact coefficient fields and sparse Gaussian elimination over them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Coefficients for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeff {
    Rationals,
    Prime(u64),
    Integers,
}

pub trait Field {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn from_bigint(&self, x: &BigInt) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn coeff(&self) -> Coeff;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn one(&self) -> Self::E {
        self.from_i64(1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn from_bigint(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn coeff(&self) -> Coeff {
        Coeff::Rationals
    }
}

/// `𝔽_p` for a prime `p < 2³²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `None` unless `p` is a prime below `2³²`.
    pub fn new(p: u64) -> Option<PrimeField> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        (prime && p < (1 << 32)).then_some(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.iter_u64_digits().next().unwrap_or(0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        let e = (*a as i64).extended_gcd(&(self.p as i64));
        e.x.rem_euclid(self.p as i64) as u64
    }
    fn coeff(&self) -> Coeff {
        Coeff::Prime(self.p)
    }
}

/// Sparse vector: entries sorted by index, no explicit zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn sparse_from_ints<F: Field>(f: &F, v: &[(usize, i64)]) -> SparseVec<F::E> {
    let mut out: SparseVec<F::E> = v
        .iter()
        .map(|&(i, x)| (i, f.from_i64(x)))
        .filter(|(_, x)| !f.is_zero(x))
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

/// `a + c·b`.
pub fn axpy<F: Field>(f: &F, a: &[(usize, F::E)], c: &F::E, b: &[(usize, F::E)]) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let s = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&s) {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct PivotRow<E> {
    row: SparseVec<E>,
    combo: SparseVec<E>,
}

/// Incremental row echelon form keyed by leading index. Inserted vectors
/// may carry a combination vector recording how they were built from the
/// inputs, so dependencies come back as kernel vectors.
pub struct Echelon<F: Field> {
    field: F,
    pivots: BTreeMap<usize, PivotRow<F::E>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Echelon<F> {
        Echelon { field, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` until its leading index has no pivot. The combination is
    /// updated alongside.
    fn reduce_lead(&self, mut v: SparseVec<F::E>, mut combo: SparseVec<F::E>) -> (SparseVec<F::E>, SparseVec<F::E>) {
        while let Some((lead, c)) = v.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let m = self.field.neg(&c);
            v = axpy(&self.field, &v, &m, &p.row);
            if !p.combo.is_empty() || !combo.is_empty() {
                combo = axpy(&self.field, &combo, &m, &p.combo);
            }
        }
        (v, combo)
    }

    /// Insert `v`; returns `true` if it was independent of earlier vectors.
    pub fn insert(&mut self, v: SparseVec<F::E>) -> bool {
        self.insert_tracked(v, Vec::new()).is_none()
    }

    /// Insert `v` with its combination; a dependent vector returns the
    /// combination that reduces to zero.
    pub fn insert_tracked(&mut self, v: SparseVec<F::E>, combo: SparseVec<F::E>) -> Option<SparseVec<F::E>> {
        let (v, combo) = self.reduce_lead(v, combo);
        let Some((lead, c)) = v.first().cloned() else {
            return Some(combo);
        };
        let inv = self.field.inv(&c);
        let scale = |w: &SparseVec<F::E>| -> SparseVec<F::E> {
            w.iter().map(|(i, x)| (*i, self.field.mul(&inv, x))).collect()
        };
        let row = scale(&v);
        let combo = scale(&combo);
        self.pivots.insert(lead, PivotRow { row, combo });
        None
    }

    /// Is `v` in the span of the inserted vectors?
    pub fn spans(&self, v: SparseVec<F::E>) -> bool {
        self.reduce_lead(v, Vec::new()).0.is_empty()
    }
}

/// Rank of a list of sparse integer columns, stopping early once `cap` is
/// reached.
pub fn rank_of<F: Field + Clone>(f: &F, cols: &[Vec<(usize, i64)>], cap: usize) -> usize {
    let mut e = Echelon::new(f.clone());
    for c in cols {
        if e.rank() >= cap {
            break;
        }
        e.insert(sparse_from_ints(f, c));
    }
    e.rank()
}

/// Basis of the kernel of the map whose columns are `cols`, as sparse
/// combinations of column indices.
pub fn kernel_of<F: Field + Clone>(f: &F, cols: &[Vec<(usize, i64)>]) -> Vec<SparseVec<F::E>> {
    let mut e = Echelon::new(f.clone());
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(k) = e.insert_tracked(sparse_from_ints(f, c), alloc::vec![(j, f.one())]) {
            out.push(k);
        }
    }
    out
}

/// `Σ_j x_j · cols[j]` over the field.
pub fn apply<F: Field>(f: &F, cols: &[Vec<(usize, i64)>], x: &[(usize, F::E)]) -> SparseVec<F::E> {
    let mut acc: BTreeMap<usize, F::E> = BTreeMap::new();
    for (j, xj) in x {
        for &(i, a) in &cols[*j] {
            let t = f.mul(xj, &f.from_i64(a));
            let e = acc.entry(i).or_insert_with(|| f.zero());
            *e = f.add(e, &t);
        }
    }
    acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn prime_field_arithmetic() {
        assert!(PrimeField::new(4).is_none());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
    }

    #[test]
    fn kernel_of_boundary() {
        // boundary of a triangle: columns are edges 01, 02, 12
        let cols = vec![vec![(0, -1), (1, 1)], vec![(0, -1), (2, 1)], vec![(1, -1), (2, 1)]];
        assert_eq!(rank_of(&Rationals, &cols, usize::MAX), 2);
        let k = kernel_of(&Rationals, &cols);
        assert_eq!(k.len(), 1);
        assert!(apply(&Rationals, &cols, &k[0]).is_empty());
        let f2 = PrimeField::new(2).unwrap();
        let twice = vec![vec![(0, 2)]];
        assert_eq!(rank_of(&f2, &twice, usize::MAX), 0);
        assert_eq!(rank_of(&Rationals, &twice, usize::MAX), 1);
    }

    #[test]
    fn span_test() {
        let f = PrimeField::new(3).unwrap();
        let mut e = Echelon::new(f);
        assert!(e.insert(vec![(0, 1), (2, 1)]));
        assert!(e.insert(vec![(1, 1)]));
        assert!(e.spans(vec![(0, 2), (1, 1), (2, 2)]));
        assert!(!e.spans(vec![(2, 1)]));
    }
}
