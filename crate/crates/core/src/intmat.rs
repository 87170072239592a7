//! Dense integer matrices over arbitrary-precision integers: Hermite and
//! Smith forms, integer kernels and small exact solves.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Row-major matrix of big integers.
pub type ZMat = Vec<Vec<BigInt>>;

pub fn big_rows(rows: &[Vec<i64>]) -> ZMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn small_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("integer entry exceeds 64 bits"))
        .collect()
}

fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Replace rows `i`, `j` by `(x ri + y rj, u ri + v rj)`.
fn mix_rows(m: &mut ZMat, i: usize, j: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    let n = m[i].len();
    for c in 0..n {
        let a = &m[i][c];
        let b = &m[j][c];
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let ni = x * a + y * b;
        let nj = u * a + v * b;
        m[i][c] = ni;
        m[j][c] = nj;
    }
}

fn sub_row_multiple(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let n = m[target].len();
    for c in 0..n {
        if !m[src][c].is_zero() {
            let d = q * &m[src][c];
            m[target][c] -= d;
        }
    }
}

/// Row Hermite normal form `u * a = h` with `u` unimodular.
///
/// The first `rank` rows of `h` are the echelon basis (positive pivots,
/// entries above a pivot reduced into `[0, pivot)`); the remaining rows are
/// zero and the matching rows of `u` span the left kernel of `a`.
pub struct Hnf {
    pub h: ZMat,
    pub u: ZMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hnf(a: &ZMat, ncols: usize) -> Hnf {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if row == m {
            break;
        }
        for r in row + 1..m {
            if h[r][col].is_zero() {
                continue;
            }
            if h[row][col].is_zero() {
                h.swap(row, r);
                u.swap(row, r);
                continue;
            }
            let a0 = h[row][col].clone();
            let b0 = h[r][col].clone();
            let e = a0.extended_gcd(&b0);
            let g = e.gcd;
            let (x, y) = (e.x, e.y);
            let uu = -(&b0 / &g);
            let vv = &a0 / &g;
            mix_rows(&mut h, row, r, &x, &y, &uu, &vv);
            mix_rows(&mut u, row, r, &x, &y, &uu, &vv);
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            for c in 0..ncols {
                h[row][c] = -&h[row][c];
            }
            for c in 0..m {
                u[row][c] = -&u[row][c];
            }
        }
        let p = h[row][col].clone();
        for r in 0..row {
            let q = h[r][col].div_floor(&p);
            sub_row_multiple(&mut h, r, row, &q);
            sub_row_multiple(&mut u, r, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hnf { h, u, rank: row, pivots }
}

/// Rank over the rationals.
pub fn rank(a: &ZMat, ncols: usize) -> usize {
    hnf(a, ncols).rank
}

pub fn rank_small(rows: &[Vec<i64>], ncols: usize) -> usize {
    rank(&big_rows(rows), ncols)
}

pub fn transpose(a: &ZMat, ncols: usize) -> ZMat {
    (0..ncols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

/// A lattice basis of `{x ∈ ℤ^ncols : a x = 0}`.
pub fn right_kernel(a: &ZMat, ncols: usize) -> ZMat {
    let t = transpose(a, ncols);
    let f = hnf(&t, a.len());
    f.u[f.rank..].to_vec()
}

pub fn right_kernel_small(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    right_kernel(&big_rows(rows), ncols).iter().map(|r| small_vec(r)).collect()
}

/// Divide out the content of an integer vector (zero stays zero).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Invariant factors (nonzero diagonal of the Smith form), ascending.
pub fn smith_invariants(a: &ZMat, ncols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < ncols {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if !m[i][j].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => m[i][j].abs() < m[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for r in m.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                sub_row_multiple(&mut m, i, t, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for i in t..rows {
                    if !m[i][t].is_zero() {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..ncols {
                        if !m[i][j].is_zero() && !(&m[i][j] % &p).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..ncols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for r in m.iter_mut() {
                r.swap(t, best.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out.sort();
    out
}

/// Determinant of a square matrix (Bareiss elimination).
pub fn determinant(a: &ZMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `k × k` minors of the `k × n` matrix `rows` for every column subset,
/// in lexicographic subset order.
pub fn maximal_minors(rows: &[Vec<i64>], n: usize) -> Vec<BigInt> {
    let k = rows.len();
    combinations(n, k)
        .into_iter()
        .map(|cols| {
            let sub: ZMat = rows
                .iter()
                .map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect())
                .collect();
            determinant(&sub)
        })
        .collect()
}

pub fn zero_mat(r: usize, c: usize) -> ZMat {
    vec![vec![BigInt::zero(); c]; r]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[&[i64]]) -> ZMat {
        big_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_of_even_lattice() {
        let f = hnf(&b(&[&[2, 0], &[0, 2], &[2, 2]]), 2);
        assert_eq!(f.rank, 2);
        assert_eq!(small_vec(&f.h[0]), vec![2, 0]);
        assert_eq!(small_vec(&f.h[1]), vec![0, 2]);
    }

    #[test]
    fn kernel_is_orthogonal() {
        let a = b(&[&[1, 2, 3], &[2, 4, 7]]);
        let k = right_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let v = small_vec(&k[0]);
        assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        assert_eq!(2 * v[0] + 4 * v[1] + 7 * v[2], 0);
        assert_eq!(primitive(&v).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 1, 0]);
    }

    #[test]
    fn smith_of_small_matrices() {
        let s = smith_invariants(&b(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(small_vec(&s), vec![2, 6, 12]);
        let s = smith_invariants(&b(&[&[1, 1], &[-1, -1]]), 2);
        assert_eq!(small_vec(&s), vec![1]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&b(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&b(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), BigInt::from(4));
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
