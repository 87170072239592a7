//! Integer vectors and sublattices of ℤⁿ.

use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intmat::{self, big_rows, small_vec};

/// Exponent vector of a monoid element, written additively.
pub type Vector = Vec<i64>;

pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[i64]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).expect("dot product exceeds 64 bits")
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn zero(n: usize) -> Vector {
    alloc::vec![0; n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero(n);
    v[i] = 1;
    v
}

/// Sorted, deduplicated copy.
pub fn canonical_set(vs: &[Vector]) -> Vec<Vector> {
    let mut out = vs.to_vec();
    out.sort();
    out.dedup();
    out
}

/// A sublattice of ℤⁿ stored by the Hermite normal form of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn generated_by(ambient: usize, gens: &[Vector]) -> Lattice {
        let f = intmat::hnf(&big_rows(gens), ambient);
        Lattice {
            ambient,
            basis: f.h[..f.rank].iter().map(|r| small_vec(r)).collect(),
            pivots: f.pivots,
        }
    }

    pub fn full(ambient: usize) -> Lattice {
        let gens: Vec<Vector> = (0..ambient).map(|i| unit(ambient, i)).collect();
        Lattice::generated_by(ambient, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows in Hermite normal form.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut r: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let piv = BigInt::from(row[p]);
            let (q, rem) = r[p].div_rem(&piv);
            if !rem.is_zero() {
                return None;
            }
            for (c, &e) in row.iter().enumerate() {
                if e != 0 {
                    r[c] -= &q * e;
                }
            }
            coords.push(q.to_i64()?);
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Canonical representative of the coset `v + L`: pivot coordinates are
    /// reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = Integer::div_floor(&r[p], &row[p]);
            if q != 0 {
                for (c, &e) in row.iter().enumerate() {
                    r[c] -= q * e;
                }
            }
        }
        r
    }

    /// Express `v` as an integer combination of `gens` (which must generate
    /// this lattice).
    pub fn combination_of(gens: &[Vector], ambient: usize, v: &[i64]) -> Option<Vec<i64>> {
        if gens.is_empty() {
            return if is_zero(v) { Some(Vec::new()) } else { None };
        }
        let f = intmat::hnf(&big_rows(gens), ambient);
        let lat = Lattice {
            ambient,
            basis: f.h[..f.rank].iter().map(|r| small_vec(r)).collect(),
            pivots: f.pivots.clone(),
        };
        let c = lat.coordinates(v)?;
        let mut out = alloc::vec![BigInt::zero(); gens.len()];
        for (i, ci) in c.iter().enumerate() {
            for (j, u) in f.u[i].iter().enumerate() {
                out[j] += u * ci;
            }
        }
        Some(small_vec(&out))
    }
}

/// Lexicographic order used everywhere for tie-breaking.
pub fn lex(a: &[i64], b: &[i64]) -> Ordering {
    a.cmp(b)
}

/// The gcd of the absolute values of the entries.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs()
}
