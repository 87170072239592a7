//! Chain complexes with integer boundaries, their homology over ℚ, 𝔽_p and
//! ℤ, induced maps, the dilation tower, and acyclicity of iterated cones.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{apply, kernel_of, rank_of, sparse_from_ints, Coeff, Echelon, Field, PrimeField, Rationals, SparseVec};
use crate::intmat::{combinations, smith_invariants, zero_mat};
use crate::lattice::{scale, Lattice, Vector};
use crate::monoid::{DilationSequence, MonoidElement, PctfMonoid};
use crate::nerve::{ncy_component, theta_map, unit_lattice, CyclicSlice, SliceMap};

/// Sparse integer column: `(row, entry)` pairs.
pub type Column = Vec<(usize, i64)>;

/// A bounded chain complex `C_lo ← … ← C_hi` with integer boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i64,
    dims: Vec<usize>,
    bd: Vec<Vec<Column>>,
    valid_through: Option<i64>,
}

impl ChainComplex {
    /// `boundaries[k]` holds the columns of `∂: C_{lo+k} → C_{lo+k-1}`.
    /// `valid_through` is the top degree in which homology is meaningful
    /// (`None` when the complex is not truncated).
    pub fn new(lo: i64, dims: Vec<usize>, boundaries: Vec<Vec<Column>>, valid_through: Option<i64>) -> Result<ChainComplex> {
        if boundaries.len() != dims.len() {
            return Err(Error::Invalid("one boundary matrix per degree".into()));
        }
        for (k, cols) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { dims[k - 1] };
            if cols.len() != dims[k] || cols.iter().flatten().any(|&(i, _)| i >= below) {
                return Err(Error::Invalid("boundary matrix has the wrong shape".into()));
            }
        }
        Ok(ChainComplex { lo, dims, bd: boundaries, valid_through })
    }

    /// Normalized chains of a slice: `∂ = Σ (-1)^i d_i`.
    pub fn from_slice(s: &CyclicSlice) -> ChainComplex {
        let top = s.max_degree();
        let mut bd = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let cols: Vec<Column> = (0..s.count(n))
                .map(|j| {
                    if n == 0 {
                        return Vec::new();
                    }
                    let mut col: Column = Vec::new();
                    for i in 0..=n {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        col.push((s.face(n, i, j), sign));
                    }
                    normalize_column(col)
                })
                .collect();
            bd.push(cols);
        }
        ChainComplex { lo: 0, dims: s.counts(), bd, valid_through: Some(top as i64 - 1) }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn valid_through(&self) -> Option<i64> {
        self.valid_through
    }

    pub fn dim(&self, q: i64) -> usize {
        self.slot(q).map_or(0, |k| self.dims[k])
    }

    /// Columns of `∂_q: C_q → C_{q-1}`.
    pub fn boundary(&self, q: i64) -> &[Column] {
        self.slot(q).map_or(&[][..], |k| &self.bd[k][..])
    }

    fn slot(&self, q: i64) -> Option<usize> {
        (q >= self.lo && q <= self.hi()).then(|| (q - self.lo) as usize)
    }

    /// `∂∘∂ = 0` over ℤ.
    pub fn check_d_squared(&self) -> bool {
        (self.lo + 1..=self.hi()).all(|q| {
            let lower = self.boundary(q - 1);
            self.boundary(q).iter().all(|col| compose_column(lower, col).is_empty())
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|q| if q.rem_euclid(2) == 0 { self.dim(q) as i64 } else { -(self.dim(q) as i64) })
            .sum()
    }
}

fn normalize_column(mut col: Column) -> Column {
    col.sort_by_key(|e| e.0);
    let mut out: Column = Vec::with_capacity(col.len());
    for (i, x) in col {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// `M · col` for `M` given by columns.
pub(crate) fn compose_column(m: &[Column], col: &Column) -> Column {
    let mut out: Column = Vec::new();
    for &(j, x) in col {
        if let Some(mc) = m.get(j) {
            out.extend(mc.iter().map(|&(i, y)| (i, x * y)));
        }
    }
    normalize_column(out)
}

/// `a ∘ b` for matrices given by columns.
pub fn compose_columns(a: &[Column], b: &[Column]) -> Vec<Column> {
    b.iter().map(|c| compose_column(a, c)).collect()
}

/// A degreewise map of chain complexes, `cols[k][j]` being the image of the
/// `j`-th basis element in source degree `lo + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    lo: i64,
    cols: Vec<Vec<Column>>,
}

impl ChainMap {
    pub fn new(lo: i64, cols: Vec<Vec<Column>>) -> ChainMap {
        ChainMap { lo, cols }
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let cols = c.dims.iter().map(|&d| (0..d).map(|j| vec![(j, 1)]).collect()).collect();
        ChainMap { lo: c.lo, cols }
    }

    /// The zero map out of `c`.
    pub fn zero(c: &ChainComplex) -> ChainMap {
        let cols = c.dims.iter().map(|&d| vec![Vec::new(); d]).collect();
        ChainMap { lo: c.lo, cols }
    }

    pub fn from_slice_map(src: &CyclicSlice, f: &SliceMap) -> ChainMap {
        let cols = (0..=src.max_degree())
            .map(|n| f.images[n].iter().map(|img| img.map_or(Vec::new(), |k| vec![(k, 1)])).collect())
            .collect();
        ChainMap { lo: 0, cols }
    }

    /// Columns in source degree `q`.
    pub fn at(&self, q: i64) -> &[Column] {
        if q < self.lo || q >= self.lo + self.cols.len() as i64 {
            return &[];
        }
        &self.cols[(q - self.lo) as usize]
    }

    fn image(&self, q: i64, j: usize) -> Column {
        self.at(q).get(j).cloned().unwrap_or_default()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let cols = other
            .cols
            .iter()
            .enumerate()
            .map(|(k, cs)| {
                let q = other.lo + k as i64;
                cs.iter().map(|c| compose_column(self.at(q), c)).collect()
            })
            .collect();
        ChainMap { lo: other.lo, cols }
    }

    pub fn is_chain_map(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        (src.lo..=src.hi()).all(|q| {
            (0..src.dim(q)).all(|j| {
                let a = compose_column(tgt.boundary(q), &self.image(q, j));
                let b = compose_column(self.at(q - 1), &src.boundary(q)[j]);
                a == b
            })
        })
    }

    /// Equality as integer matrices on the degrees of `src`.
    pub fn agrees_with(&self, other: &ChainMap, src: &ChainComplex) -> bool {
        (src.lo..=src.hi()).all(|q| (0..src.dim(q)).all(|j| self.image(q, j) == other.image(q, j)))
    }
}

/// Mapping cone: `Cone(φ)_n = Q_n ⊕ P_{n-1}` with `d(q, p) = (dq + φp, -dp)`.
pub fn cone(src: &ChainComplex, tgt: &ChainComplex, phi: &ChainMap) -> ChainComplex {
    let lo = tgt.lo.min(src.lo + 1);
    let hi = tgt.hi().max(src.hi() + 1);
    let mut dims = Vec::new();
    let mut bd = Vec::new();
    for n in lo..=hi {
        let dq = tgt.dim(n);
        let dq_below = tgt.dim(n - 1);
        dims.push(dq + src.dim(n - 1));
        let mut cols: Vec<Column> = tgt.boundary(n).to_vec();
        for j in 0..src.dim(n - 1) {
            let mut col = phi.image(n - 1, j);
            col.extend(src.boundary(n - 1)[j].iter().map(|&(i, x)| (dq_below + i, -x)));
            cols.push(normalize_column(col));
        }
        bd.push(cols);
    }
    if n_lo_boundary_nonempty(&bd) {
        bd[0] = vec![Vec::new(); dims[0]];
    }
    let valid_through = match (tgt.valid_through, src.valid_through) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(i64::MAX).min(b.map_or(i64::MAX, |v| v + 1))),
    };
    ChainComplex { lo, dims, bd, valid_through }
}

fn n_lo_boundary_nonempty(bd: &[Vec<Column>]) -> bool {
    bd.first().is_some_and(|c| c.iter().any(|col| !col.is_empty()))
}

/// Block-diagonal map `Cone(f) → Cone(k)` induced by `(h, g)` on a square
/// `W → X → Z`, `W → Y → Z`.
fn cone_map(x: &ChainComplex, w: &ChainComplex, z: &ChainComplex, h: &ChainMap, g: &ChainMap) -> ChainMap {
    let lo = x.lo.min(w.lo + 1);
    let hi = x.hi().max(w.hi() + 1);
    let cols = (lo..=hi)
        .map(|n| {
            let mut cs: Vec<Column> = (0..x.dim(n)).map(|j| h.image(n, j)).collect();
            let shift = z.dim(n);
            for j in 0..w.dim(n - 1) {
                cs.push(g.image(n - 1, j).into_iter().map(|(i, v)| (shift + i, v)).collect());
            }
            cs
        })
        .collect();
    ChainMap { lo, cols }
}

/// Commutative square of complexes
/// ```text
///   W --f--> X
///   |g       |h
///   Y --k--> Z
/// ```
#[derive(Clone, Debug)]
pub struct ComplexSquare {
    pub w: ChainComplex,
    pub x: ChainComplex,
    pub y: ChainComplex,
    pub z: ChainComplex,
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
    pub k: ChainMap,
}

impl ComplexSquare {
    pub fn commutes(&self) -> bool {
        self.h.compose(&self.f).agrees_with(&self.k.compose(&self.g), &self.w)
    }

    /// `Cone(Cone(f) → Cone(k))`; acyclic iff the square is homotopy
    /// cartesian.
    pub fn total_complex(&self) -> ChainComplex {
        let cf = cone(&self.w, &self.x, &self.f);
        let ck = cone(&self.y, &self.z, &self.k);
        let phi = cone_map(&self.x, &self.w, &self.z, &self.h, &self.g);
        cone(&cf, &ck, &phi)
    }
}

/// Per-degree homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coeff: Coeff,
    pub lo: i64,
    /// Field dimensions, or free ranks over ℤ.
    pub dims: Vec<usize>,
    /// Invariant factors `> 1` per degree (ℤ only).
    pub torsion: Vec<Vec<BigInt>>,
    pub valid_through: Option<i64>,
}

impl HomologyResult {
    pub fn dim(&self, q: i64) -> usize {
        if q < self.lo {
            return 0;
        }
        self.dims.get((q - self.lo) as usize).copied().unwrap_or(0)
    }

    /// Dimensions in degrees `lo..=q_max`.
    pub fn dims_through(&self, q_max: i64) -> Vec<usize> {
        (self.lo..=q_max).map(|q| self.dim(q)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if (self.lo + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn is_truncated_at(&self, q: i64) -> bool {
        self.valid_through.is_some_and(|v| q > v)
    }
}

fn field_ranks<F: Field + Clone>(f: &F, c: &ChainComplex) -> Vec<usize> {
    // rank ∂_q, computed from the bottom so ∂_{q+1} can stop at dim Z_q
    let mut ranks = vec![0usize; c.dims.len() + 1];
    for (k, q) in (c.lo..=c.hi()).enumerate() {
        let cap = if k == 0 { usize::MAX } else { c.dim(q - 1) - ranks[k - 1] };
        ranks[k] = rank_of(f, c.boundary(q), cap);
    }
    ranks
}

pub fn homology_over<F: Field + Clone>(f: &F, c: &ChainComplex) -> HomologyResult {
    homology_from_ranks(f, c, &field_ranks(f, c))
}

fn homology_from_ranks<F: Field>(f: &F, c: &ChainComplex, ranks: &[usize]) -> HomologyResult {
    let dims = (0..c.dims.len()).map(|k| c.dims[k] - ranks[k] - ranks[k + 1]).collect();
    HomologyResult { coeff: f.coeff(), lo: c.lo, dims, torsion: vec![Vec::new(); c.dims.len()], valid_through: c.valid_through }
}

fn dense(cols: &[Column], rows: usize) -> crate::intmat::ZMat {
    let mut m = zero_mat(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, x) in col {
            m[i][j] = BigInt::from(x);
        }
    }
    m
}

/// Homology over ℤ from Smith forms of the boundary matrices.
pub fn homology_z(c: &ChainComplex) -> HomologyResult {
    let invariants: Vec<Vec<BigInt>> = (c.lo..=c.hi() + 1)
        .map(|q| {
            let cols = c.boundary(q);
            if cols.is_empty() {
                Vec::new()
            } else {
                smith_invariants(&dense(cols, c.dim(q - 1)), cols.len())
            }
        })
        .collect();
    let mut dims = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..c.dims.len() {
        dims.push(c.dims[k] - invariants[k].len() - invariants[k + 1].len());
        torsion.push(invariants[k + 1].iter().filter(|d| !d.is_one()).cloned().collect());
    }
    HomologyResult { coeff: Coeff::Integers, lo: c.lo, dims, torsion, valid_through: c.valid_through }
}

pub fn homology(c: &ChainComplex, coeff: Coeff) -> Result<HomologyResult> {
    match coeff {
        Coeff::Rationals => Ok(homology_over(&Rationals, c)),
        Coeff::Prime(p) => Ok(homology_over(&prime(p)?, c)),
        Coeff::Integers => Ok(homology_z(c)),
    }
}

fn prime(p: u64) -> Result<PrimeField> {
    PrimeField::new(p).ok_or_else(|| Error::Invalid("characteristic must be a prime below 2^32".into()))
}

/// `C(s, q)`: the homology of a rank-`s` torus.
pub fn torus_oracle(s: usize, q: usize) -> usize {
    if q > s {
        return 0;
    }
    (0..q).fold(1usize, |acc, i| acc * (s - i) / (i + 1))
}

/// `dim H_q` of the weight-`a` component of `Ω̃_A`.
pub fn omega_homology(a: &PctfMonoid, x: &MonoidElement, q: usize) -> Result<usize> {
    let u = unit_lattice(a, x)?;
    Ok(torus_oracle(u.rank, q))
}

/// Rank of `H_q(f)` for `q` in `lo..=q_max`, with source and target
/// homology dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedRanks {
    pub rank: Vec<usize>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl InducedRanks {
    pub fn is_isomorphism(&self) -> bool {
        self.rank == self.source && self.rank == self.target
    }
}

fn cycles<F: Field + Clone>(f: &F, c: &ChainComplex, q: i64) -> Vec<SparseVec<F::E>> {
    if q == c.lo {
        let one = f.one();
        return (0..c.dim(q)).map(|j| vec![(j, one.clone())]).collect();
    }
    kernel_of(f, c.boundary(q))
}

/// Ranks of `H_q(map)`; `tgt_ranks` are the boundary ranks of `tgt`, so
/// the target boundaries stop being inserted once they span `B_q`.
fn induced_core<F: Field + Clone>(
    fl: &F,
    src: &ChainComplex,
    tgt: &ChainComplex,
    tgt_ranks: &[usize],
    map: &ChainMap,
    q_max: i64,
) -> Vec<usize> {
    let lo = src.lo.min(tgt.lo);
    let mut rank = Vec::new();
    for q in lo..=q_max {
        let cap = tgt.slot(q + 1).map_or(0, |k| tgt_ranks[k]);
        let mut e = Echelon::new(fl.clone());
        for col in tgt.boundary(q + 1) {
            if e.rank() >= cap {
                break;
            }
            e.insert(sparse_from_ints(fl, col));
        }
        let base = e.rank();
        for z in cycles(fl, src, q) {
            e.insert(apply(fl, map.at(q), &z));
        }
        rank.push(e.rank() - base);
    }
    rank
}

fn induced_over<F: Field + Clone>(fl: &F, src: &ChainComplex, tgt: &ChainComplex, map: &ChainMap, q_max: i64) -> InducedRanks {
    let hs = homology_over(fl, src);
    let tgt_ranks = field_ranks(fl, tgt);
    let ht = homology_from_ranks(fl, tgt, &tgt_ranks);
    let lo = src.lo.min(tgt.lo);
    let rank = induced_core(fl, src, tgt, &tgt_ranks, map, q_max);
    InducedRanks {
        rank,
        source: (lo..=q_max).map(|q| hs.dim(q)).collect(),
        target: (lo..=q_max).map(|q| ht.dim(q)).collect(),
    }
}

/// Ranks of the maps induced on homology in degrees up to `q_max`.
pub fn induced_map(src: &ChainComplex, tgt: &ChainComplex, map: &ChainMap, q_max: i64, coeff: Coeff) -> Result<InducedRanks> {
    match coeff {
        Coeff::Rationals => Ok(induced_over(&Rationals, src, tgt, map, q_max)),
        Coeff::Prime(p) => Ok(induced_over(&prime(p)?, src, tgt, map, q_max)),
        Coeff::Integers => Err(Error::Invalid("induced maps are computed over a field".into())),
    }
}

/// Columns of the comparison map `C_q → Λ^q(U)`:
/// `(a_0, …, a_q) ↦ Σ_{i_1<…<i_q} Π_j u_{i_j}(a_j) e_{i_1…i_q}`, with `u_i`
/// the coordinates in a basis of `U`. These are cup products of the
/// coordinate cocycles, so the map kills boundaries.
pub fn comparison_columns(s: &CyclicSlice, u: &Lattice, q: usize) -> Vec<Column> {
    let subsets = combinations(u.rank(), q);
    s.simplices(q)
        .iter()
        .map(|t| {
            let coords: Vec<Vec<i64>> = t[1..]
                .iter()
                .map(|x| u.coordinates(x).expect("slice entries lie in the unit lattice of the weight"))
                .collect();
            let col: Column = subsets
                .iter()
                .enumerate()
                .map(|(idx, sub)| (idx, sub.iter().enumerate().map(|(j, &i)| coords[j][i]).product::<i64>()))
                .collect();
            normalize_column(col)
        })
        .collect()
}

fn comparison_rank<F: Field + Clone>(f: &F, c: &ChainComplex, s: &CyclicSlice, u: &Lattice, q: usize) -> usize {
    let cols = comparison_columns(s, u, q);
    let mut e = Echelon::new(f.clone());
    for z in cycles(f, c, q as i64) {
        e.insert(apply(f, &cols, &z));
    }
    e.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The comparison map is an isomorphism onto the closed form at stages
    /// `step` and `step + 1`.
    Converged { step: usize },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub coeff: Coeff,
    /// `b_k = (c_1⋯c_k)·a`.
    pub weights: Vec<Vector>,
    /// `dim H_q(N^cy(A, b_k))` for `q ≤ q_max`.
    pub dims: Vec<Vec<usize>>,
    /// Ranks of `H_q(θ_{c_{k+1}})`.
    pub theta_ranks: Vec<Vec<usize>>,
    pub theta_isomorphisms: Vec<bool>,
    /// Ranks of the comparison map on `H_q` at each stage.
    pub comparison_ranks: Vec<Vec<usize>>,
    pub comparison_isomorphisms: Vec<bool>,
    /// Closed form `C(rank U, q)`.
    pub target: Vec<usize>,
    pub stable_value: Option<Vec<usize>>,
    pub verdict: Verdict,
    pub valid_through: usize,
}

/// Follow `N^cy(A, b_k)` along the dilation tower for `k ≤ k_max`.
pub fn stabilize(
    a: &PctfMonoid,
    seq: &DilationSequence,
    x: &MonoidElement,
    q_max: usize,
    coeff: Coeff,
    k_max: usize,
) -> Result<StabilizationReport> {
    match coeff {
        Coeff::Rationals => stabilize_over(&Rationals, a, seq, x, q_max, k_max),
        Coeff::Prime(p) => stabilize_over(&prime(p)?, a, seq, x, q_max, k_max),
        Coeff::Integers => Err(Error::Invalid("stabilization runs over a field".into())),
    }
}

fn stabilize_over<F: Field + Clone>(
    f: &F,
    a: &PctfMonoid,
    seq: &DilationSequence,
    x: &MonoidElement,
    q_max: usize,
    k_max: usize,
) -> Result<StabilizationReport> {
    if seq.factors().len() < k_max {
        return Err(Error::Invalid("dilation sequence is shorter than the step budget".into()));
    }
    let u = unit_lattice(a, x)?;
    let base = x.vector().expect("unit_lattice rejects the basepoint").clone();
    let target: Vec<usize> = (0..=q_max).map(|q| torus_oracle(u.rank, q)).collect();
    let d = q_max + 1;
    let mut slices = Vec::new();
    let mut weights = Vec::new();
    for k in 0..=k_max {
        let b = scale(seq.prefix_product(k), &base);
        slices.push(ncy_component(a, &MonoidElement::Elem(b.clone()), d)?);
        weights.push(b);
    }
    let complexes: Vec<ChainComplex> = slices.iter().map(ChainComplex::from_slice).collect();
    let ranks: Vec<Vec<usize>> = complexes.iter().map(|c| field_ranks(f, c)).collect();
    let dims: Vec<Vec<usize>> = complexes
        .iter()
        .zip(&ranks)
        .map(|(c, r)| homology_from_ranks(f, c, r).dims_through(q_max as i64))
        .collect();
    let mut comparison_ranks = Vec::new();
    let mut comparison_isomorphisms = Vec::new();
    for (k, c) in complexes.iter().enumerate() {
        let ranks: Vec<usize> = (0..=q_max).map(|q| comparison_rank(f, c, &slices[k], &u.lattice, q)).collect();
        comparison_isomorphisms.push(ranks == dims[k] && ranks == target);
        comparison_ranks.push(ranks);
    }
    let mut theta_ranks = Vec::new();
    let mut theta_isomorphisms = Vec::new();
    for k in 0..k_max {
        let (tgt_slice, map) = theta_map(a, &slices[k], seq.factors()[k])?;
        debug_assert_eq!(tgt_slice.counts(), slices[k + 1].counts());
        let cm = ChainMap::from_slice_map(&slices[k], &map);
        let r = induced_core(f, &complexes[k], &complexes[k + 1], &ranks[k + 1], &cm, q_max as i64);
        theta_isomorphisms.push(r == dims[k] && r == dims[k + 1]);
        theta_ranks.push(r);
    }
    let step = (0..k_max).find(|&k| comparison_isomorphisms[k] && comparison_isomorphisms[k + 1]);
    let verdict = step.map_or(Verdict::Inconclusive, |step| Verdict::Converged { step });
    let stable_value = step.map(|s| dims[s].clone());
    Ok(StabilizationReport {
        coeff: f.coeff(),
        weights,
        dims,
        theta_ranks,
        theta_isomorphisms,
        comparison_ranks,
        comparison_isomorphisms,
        target,
        stable_value,
        verdict,
        valid_through: q_max,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    /// Homology of the total complex in the checked degrees.
    pub dims: Vec<(i64, usize)>,
    pub valid_through: Option<i64>,
}

/// Is the total complex of the square acyclic in every valid degree?
pub fn mv_acyclicity(sq: &ComplexSquare, coeff: Coeff) -> Result<AcyclicityReport> {
    if !sq.commutes() {
        return Err(Error::ShapeMismatch("square does not commute".into()));
    }
    let t = sq.total_complex();
    let h = homology(&t, coeff)?;
    let top = t.valid_through.map_or(t.hi(), |v| v.min(t.hi()));
    let dims: Vec<(i64, usize)> = (t.lo..=top).map(|q| (q, h.dim(q))).collect();
    let acyclic = dims.iter().all(|&(_, d)| d == 0) && (coeff != Coeff::Integers || h.torsion.iter().take(dims.len()).all(Vec::is_empty));
    Ok(AcyclicityReport { acyclic, dims, valid_through: t.valid_through })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{AffineMonoid, GradingFunctional};
    use crate::nerve::ncy_slice;

    fn f2() -> Coeff {
        Coeff::Prime(2)
    }

    fn line() -> PctfMonoid {
        PctfMonoid::cancellative(AffineMonoid::free(1))
    }

    fn cusp() -> PctfMonoid {
        PctfMonoid::cancellative(AffineMonoid::new(1, &[vec![2], vec![3]]).unwrap())
    }

    fn graded(a: &PctfMonoid, w: i64, d: usize) -> ChainComplex {
        let p: GradingFunctional = a.grading().unwrap();
        ChainComplex::from_slice(&ncy_slice(a, &p, w, d).unwrap())
    }

    #[test]
    fn circle_at_weight_two() {
        let c = graded(&line(), 2, 3);
        assert!(c.check_d_squared());
        let h = homology(&c, Coeff::Rationals).unwrap();
        assert_eq!(h.dims_through(2), vec![1, 1, 0]);
        assert!(h.is_truncated_at(3));
        assert_eq!(homology(&c, f2()).unwrap().dims_through(2), vec![1, 1, 0]);
        let z = homology(&c, Coeff::Integers).unwrap();
        assert_eq!(z.dims_through(2), vec![1, 1, 0]);
    }

    #[test]
    fn weight_zero_is_a_point() {
        let h = homology(&graded(&cusp(), 0, 3), Coeff::Rationals).unwrap();
        assert_eq!(h.dims_through(2), vec![1, 0, 0]);
    }

    #[test]
    fn free_tori() {
        for s in 1..=3usize {
            let f = PctfMonoid::cancellative(AffineMonoid::free(s));
            let w = MonoidElement::Elem(vec![1; s]);
            let c = ChainComplex::from_slice(&ncy_component(&f, &w, s + 1).unwrap());
            for coeff in [Coeff::Rationals, f2(), Coeff::Integers] {
                let h = homology(&c, coeff).unwrap();
                let expect: Vec<usize> = (0..=s).map(|q| torus_oracle(s, q)).collect();
                assert_eq!(h.dims_through(s as i64), expect);
            }
        }
        assert_eq!(torus_oracle(0, 0), 1);
        assert_eq!(torus_oracle(3, 2), 3);
    }

    #[test]
    fn integer_torsion_is_detected() {
        // ℤ --2--> ℤ
        let c = ChainComplex::new(0, vec![1, 1], vec![vec![Vec::new()], vec![vec![(0, 2)]]], None).unwrap();
        let z = homology(&c, Coeff::Integers).unwrap();
        assert_eq!(z.dims, vec![0, 0]);
        assert_eq!(z.torsion[0], vec![BigInt::from(2)]);
        assert_eq!(homology(&c, f2()).unwrap().dims, vec![1, 1]);
        assert_eq!(homology(&c, Coeff::Rationals).unwrap().dims, vec![0, 0]);
    }

    #[test]
    fn omega_values() {
        let c = cusp();
        let dims: Vec<usize> = (0..3).map(|q| omega_homology(&c, &MonoidElement::Elem(vec![6]), q).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 0]);
        let ex = PctfMonoid::cancellative(
            AffineMonoid::new(2, &[vec![2, 0], vec![1, 1], vec![0, 2], vec![2, 1], vec![1, 2]]).unwrap(),
        );
        let dims: Vec<usize> = (0..4).map(|q| omega_homology(&ex, &MonoidElement::Elem(vec![1, 1]), q).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 1, 0]);
        assert_eq!(omega_homology(&c, &MonoidElement::Elem(vec![0]), 1).unwrap(), 0);
    }

    #[test]
    fn theta_on_the_line_is_an_isomorphism_over_q() {
        let x = line();
        let s = ncy_component(&x, &MonoidElement::Elem(vec![1]), 2).unwrap();
        let (t, m) = theta_map(&x, &s, 2).unwrap();
        let (cs, ct) = (ChainComplex::from_slice(&s), ChainComplex::from_slice(&t));
        let cm = ChainMap::from_slice_map(&s, &m);
        assert!(cm.is_chain_map(&cs, &ct));
        let r = induced_map(&cs, &ct, &cm, 1, Coeff::Rationals).unwrap();
        assert!(r.is_isomorphism());
        // H_1(θ_2) is multiplication by 2
        let r2 = induced_map(&cs, &ct, &cm, 1, f2()).unwrap();
        assert_eq!(r2.rank, vec![1, 0]);
        let id = ChainMap::identity(&cs);
        assert!(induced_map(&cs, &cs, &id, 1, f2()).unwrap().is_isomorphism());
    }

    #[test]
    fn functoriality_of_induced_maps() {
        let c = cusp();
        let s = ncy_component(&c, &MonoidElement::Elem(vec![6]), 3).unwrap();
        let (t, m) = theta_map(&c, &s, 2).unwrap();
        let (_, m2) = theta_map(&c, &t, 3).unwrap();
        let (u, m6) = theta_map(&c, &s, 6).unwrap();
        let a = ChainMap::from_slice_map(&t, &m2).compose(&ChainMap::from_slice_map(&s, &m));
        let b = ChainMap::from_slice_map(&s, &m6);
        let cs = ChainComplex::from_slice(&s);
        assert!(a.agrees_with(&b, &cs));
        assert!(b.is_chain_map(&cs, &ChainComplex::from_slice(&u)));
    }

    #[test]
    fn comparison_map_kills_boundaries() {
        let f = PctfMonoid::cancellative(AffineMonoid::free(2));
        let s = ncy_component(&f, &MonoidElement::Elem(vec![2, 1]), 3).unwrap();
        let c = ChainComplex::from_slice(&s);
        let u = Lattice::full(2);
        for q in 1..=3usize {
            let psi = comparison_columns(&s, &u, q - 1);
            for col in c.boundary(q as i64) {
                assert!(compose_column(&psi, col).is_empty());
            }
        }
    }

    #[test]
    fn cusp_tower_converges() {
        let c = cusp();
        let seq = DilationSequence::constant(2, 3).unwrap();
        for coeff in [f2(), Coeff::Rationals] {
            let r = stabilize(&c, &seq, &MonoidElement::Elem(vec![6]), 2, coeff, 3).unwrap();
            assert!(matches!(r.verdict, Verdict::Converged { .. }), "{r:?}");
            assert_eq!(r.stable_value, Some(vec![1, 1, 0]));
            assert_eq!(r.target, vec![1, 1, 0]);
        }
        let n = line();
        let r = stabilize(&n, &seq, &MonoidElement::Elem(vec![1]), 2, f2(), 3).unwrap();
        assert_eq!(r.verdict, Verdict::Converged { step: 0 });
        assert_eq!(r.dims[0], vec![1, 1, 0]);
        let r = stabilize(&c, &seq, &MonoidElement::Elem(vec![0]), 2, f2(), 3).unwrap();
        assert!(r.dims.iter().all(|d| d == &vec![1, 0, 0]));
        assert_eq!(r.verdict, Verdict::Converged { step: 0 });
    }

    #[test]
    fn square_with_identities_is_acyclic() {
        let c = graded(&cusp(), 6, 3);
        let z = ChainComplex::new(0, vec![0; 4], vec![Vec::new(); 4], Some(2)).unwrap();
        let sq = ComplexSquare {
            w: c.clone(),
            x: c.clone(),
            y: z.clone(),
            z: z.clone(),
            f: ChainMap::identity(&c),
            g: ChainMap::zero(&c),
            h: ChainMap::zero(&c),
            k: ChainMap::zero(&z),
        };
        assert!(mv_acyclicity(&sq, f2()).unwrap().acyclic);
        let bad = ComplexSquare { f: ChainMap::zero(&c), ..sq };
        assert!(!mv_acyclicity(&bad, f2()).unwrap().acyclic);
    }
}
