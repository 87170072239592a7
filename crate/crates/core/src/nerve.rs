//! Weight-graded pieces of the normalized cyclic nerve, their edgewise
//! subdivisions with the cyclic row action, dilation maps, and the unit
//! lattices that describe the components after inverting the weight.
//!
//! Simplices are tuples `(a_0, …, a_n)` of exponent vectors with
//! `a_i ≠ 0` for `i ≥ 1`. Every slice is taken on a sharp carrier, so merging
//! neighbours never produces the identity, and only tuples whose product
//! avoids the ideal are stored; faces therefore never leave a slice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{add, is_zero, scale, sub, Lattice, Vector};
use crate::monoid::{AffineMonoid, GradingFunctional, Ideal, MonoidElement, PctfMonoid};
use crate::saturation::seminormalize_pctf;

/// A simplex `(a_0, …, a_n)`.
pub type Tuple = Vec<Vector>;

/// Which piece of the nerve a slice holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceWeight {
    /// Every `a ∉ I` with `p(a) = w`.
    Graded { p: Vector, w: i64 },
    /// The single weight `a`.
    Element(Vector),
}

/// All nondegenerate simplices of one weight piece through `max_degree`.
#[derive(Clone, Debug)]
pub struct CyclicSlice {
    carrier: AffineMonoid,
    weight: SliceWeight,
    components: Vec<Vector>,
    max_degree: usize,
    cells: Vec<Vec<Tuple>>,
    index: Vec<BTreeMap<Tuple, usize>>,
}

/// `d_i`: merge entries `i` and `i+1`; `d_n` folds `a_n` into `a_0`.
pub fn face_tuple(t: &[Vector], i: usize) -> Tuple {
    let n = t.len() - 1;
    if i < n {
        let mut out: Tuple = t[..i].to_vec();
        out.push(add(&t[i], &t[i + 1]));
        out.extend(t[i + 2..].iter().cloned());
        out
    } else {
        let mut out: Tuple = vec![add(&t[n], &t[0])];
        out.extend(t[1..n].iter().cloned());
        out
    }
}

/// `t(a_0, …, a_n) = (a_n, a_0, …, a_{n-1})`.
pub fn rotate_tuple(t: &[Vector]) -> Tuple {
    let n = t.len() - 1;
    let mut out: Tuple = vec![t[n].clone()];
    out.extend(t[..n].iter().cloned());
    out
}

pub fn tuple_sum(t: &[Vector]) -> Vector {
    t[1..].iter().fold(t[0].clone(), |acc, x| add(&acc, x))
}

/// `d ∈ C` with `a - d ∈ C`, for sharp `C`.
fn divisors(c: &AffineMonoid, a: &[i64]) -> BTreeSet<Vector> {
    let deg = c.degree_functional();
    let bound = c.degree(a);
    c.elements_up_to(deg, bound)
        .into_iter()
        .filter(|d| c.contains(&sub(a, d)))
        .collect()
}

/// Tuples of `len` entries summing to `a`. Entry `0` may be the identity;
/// entry `k ≥ 1` may be the identity only when `zero_ok(k)`.
fn tuples_summing_to(divs: &BTreeSet<Vector>, a: &[i64], len: usize, zero_ok: &dyn Fn(usize) -> bool) -> Vec<Tuple> {
    fn rec(
        divs: &BTreeSet<Vector>,
        rem: Vector,
        pos: usize,
        len: usize,
        cur: &mut Vec<Vector>,
        zero_ok: &dyn Fn(usize) -> bool,
        out: &mut Vec<Tuple>,
    ) {
        if pos == len {
            let mut t = vec![rem];
            t.extend(cur.iter().cloned());
            out.push(t);
            return;
        }
        for d in divs.iter() {
            if is_zero(d) && !zero_ok(pos) {
                continue;
            }
            let r = sub(&rem, d);
            if !divs.contains(&r) {
                continue;
            }
            cur.push(d.clone());
            rec(divs, r, pos + 1, len, cur, zero_ok, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(divs, a.to_vec(), 1, len, &mut Vec::new(), zero_ok, &mut out);
    out
}

fn require_sharp(c: &AffineMonoid) -> Result<()> {
    if c.is_sharp() {
        Ok(())
    } else {
        Err(Error::NoPositiveGrading)
    }
}

impl CyclicSlice {
    fn build(carrier: &AffineMonoid, weight: SliceWeight, components: Vec<Vector>, max_degree: usize) -> CyclicSlice {
        let mut cells: Vec<Vec<Tuple>> = vec![Vec::new(); max_degree + 1];
        for a in &components {
            let divs = divisors(carrier, a);
            for (n, cell) in cells.iter_mut().enumerate() {
                cell.extend(tuples_summing_to(&divs, a, n + 1, &|_| false));
            }
        }
        for cell in cells.iter_mut() {
            cell.sort();
        }
        let index = cells
            .iter()
            .map(|cell| cell.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        CyclicSlice { carrier: carrier.clone(), weight, components, max_degree, cells, index }
    }

    pub fn weight(&self) -> &SliceWeight {
        &self.weight
    }

    /// The `A`-weights making up the slice.
    pub fn components(&self) -> &[Vector] {
        &self.components
    }

    pub fn carrier(&self) -> &AffineMonoid {
        &self.carrier
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, n: usize) -> &[Tuple] {
        &self.cells[n]
    }

    pub fn index_of(&self, n: usize, t: &[Vector]) -> Option<usize> {
        self.index.get(n)?.get(t).copied()
    }

    /// `d_i` on the `j`-th simplex of degree `n ≥ 1`.
    pub fn face(&self, n: usize, i: usize, j: usize) -> usize {
        let f = face_tuple(&self.cells[n][j], i);
        self.index[n - 1][&f]
    }

    /// The cyclic operator, when the rotated tuple is nondegenerate.
    pub fn cyclic(&self, n: usize, j: usize) -> Option<usize> {
        self.index_of(n, &rotate_tuple(&self.cells[n][j]))
    }
}

/// `N^cy(A)` at `p`-weight `w`, degrees `0..=max_degree`.
pub fn ncy_slice(a: &PctfMonoid, p: &GradingFunctional, w: i64, max_degree: usize) -> Result<CyclicSlice> {
    if w < 0 {
        return Err(Error::Invalid("weight must be nonnegative".into()));
    }
    let c = a.carrier();
    if a.is_zero_monoid() {
        return Ok(CyclicSlice::build(c, SliceWeight::Graded { p: p.coefficients().to_vec(), w }, Vec::new(), max_degree));
    }
    let gp = GradingFunctional::new(c, p.coefficients().to_vec())?;
    let comps: Vec<Vector> = c
        .elements_up_to(gp.coefficients(), w)
        .into_iter()
        .filter(|x| gp.degree(x) == w && !a.ideal().contains(c, x))
        .collect();
    Ok(CyclicSlice::build(c, SliceWeight::Graded { p: p.coefficients().to_vec(), w }, comps, max_degree))
}

/// `N^cy(A, a)` for `a ∉ I`, computed on the cancellative carrier.
pub fn ncy_component(a: &PctfMonoid, x: &MonoidElement, max_degree: usize) -> Result<CyclicSlice> {
    let MonoidElement::Elem(v) = x else {
        return Err(Error::WeightInIdeal);
    };
    if a.is_zero_monoid() || a.ideal().contains(a.carrier(), v) {
        return Err(Error::WeightInIdeal);
    }
    let c = a.carrier();
    if !c.contains(v) {
        return Err(Error::NotAMember(v.clone()));
    }
    require_sharp(c)?;
    Ok(CyclicSlice::build(c, SliceWeight::Element(v.clone()), vec![v.clone()], max_degree))
}

/// Number of all `(n+1)`-tuples, degenerate ones included, of `p`-weight
/// `w` whose product avoids the ideal.
pub fn unnormalized_count(a: &PctfMonoid, p: &GradingFunctional, w: i64, n: usize) -> Result<usize> {
    let slice = ncy_slice(a, p, w, 0)?;
    let c = a.carrier();
    Ok(slice
        .components
        .iter()
        .map(|x| tuples_summing_to(&divisors(c, x), x, n + 1, &|_| true).len())
        .sum())
}

/// A simplicial map between slices: for each degree, the image index of
/// every simplex, or `None` when it lands on the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMap {
    pub images: Vec<Vec<Option<usize>>>,
}

/// `θ_c`: multiply every entry by `c`. Returns the target slice and the map.
pub fn theta_map(a: &PctfMonoid, s: &CyclicSlice, c: i64) -> Result<(CyclicSlice, SliceMap)> {
    if c < 1 {
        return Err(Error::BadDilation);
    }
    let target = match &s.weight {
        SliceWeight::Graded { p, w } => {
            let g = GradingFunctional::new(a.carrier(), p.clone())?;
            ncy_slice(a, &g, c * w, s.max_degree)?
        }
        SliceWeight::Element(v) => {
            let cv = scale(c, v);
            if a.ideal().contains(a.carrier(), &cv) {
                CyclicSlice::build(a.carrier(), SliceWeight::Element(cv), Vec::new(), s.max_degree)
            } else {
                ncy_component(a, &MonoidElement::Elem(cv), s.max_degree)?
            }
        }
    };
    let images = s
        .cells
        .iter()
        .enumerate()
        .map(|(n, cell)| {
            cell.iter()
                .map(|t| {
                    let img: Tuple = t.iter().map(|x| scale(c, x)).collect();
                    target.index_of(n, &img)
                })
                .collect()
        })
        .collect();
    Ok((target, SliceMap { images }))
}

/// `α_r(a_0, …, a_n) = (r·a_0 + (r-1)·Σ_{i≥1} a_i, a_1, …, a_n)`.
pub fn alpha_r(t: &[Vector], r: i64) -> Tuple {
    let rest = t[1..].iter().fold(crate::lattice::zero(t[0].len()), |acc, x| add(&acc, x));
    let mut out = vec![add(&scale(r, &t[0]), &scale(r - 1, &rest))];
    out.extend(t[1..].iter().cloned());
    out
}

/// `μ_r`: column sums of an `r × (n+1)` matrix.
pub fn mu_r(m: &Matrix) -> Tuple {
    (0..m[0].len())
        .map(|k| m[1..].iter().fold(m[0][k].clone(), |acc, row| add(&acc, &row[k])))
        .collect()
}

/// `δ_r`: repeat the tuple as every row.
pub fn delta_r(t: &[Vector], r: usize) -> Matrix {
    vec![t.to_vec(); r]
}

/// An `r × (n+1)` matrix; row `j` holds base entries `j(n+1) … j(n+1)+n`.
pub type Matrix = Vec<Tuple>;

fn matrix_from_tuple(t: &[Vector], r: usize) -> Matrix {
    let w = t.len() / r;
    t.chunks(w).map(|c| c.to_vec()).collect()
}

/// Some column `k ≥ 1` is the identity in every row.
fn sd_degenerate(m: &Matrix) -> bool {
    (1..m[0].len()).any(|k| m.iter().all(|row| is_zero(&row[k])))
}

/// Face `d_i` of the subdivision.
pub fn sd_face(m: &Matrix, i: usize) -> Matrix {
    let n = m[0].len() - 1;
    let r = m.len();
    if i < n {
        m.iter()
            .map(|row| {
                let mut out: Tuple = row[..i].to_vec();
                out.push(add(&row[i], &row[i + 1]));
                out.extend(row[i + 2..].iter().cloned());
                out
            })
            .collect()
    } else {
        (0..r)
            .map(|j| {
                let prev = &m[(j + r - 1) % r];
                let mut out: Tuple = vec![add(&prev[n], &m[j][0])];
                out.extend(m[j][1..n].iter().cloned());
                out
            })
            .collect()
    }
}

/// Generator of the `C_r` action: row `j` moves to row `j+1`.
pub fn rotate_rows(m: &Matrix) -> Matrix {
    let r = m.len();
    (0..r).map(|j| m[(j + r - 1) % r].clone()).collect()
}

/// The `r`-fold edgewise subdivision of a slice, or its fixed points under
/// a subgroup of `C_r`.
#[derive(Clone, Debug)]
pub struct SubdividedSlice {
    pub r: usize,
    /// Order of the subgroup of `C_r` fixing every stored matrix (1 for the
    /// whole subdivision).
    pub fixed_by: usize,
    cells: Vec<Vec<Matrix>>,
    index: Vec<BTreeMap<Matrix, usize>>,
}

impl SubdividedSlice {
    fn from_cells(r: usize, fixed_by: usize, mut cells: Vec<Vec<Matrix>>) -> SubdividedSlice {
        for c in cells.iter_mut() {
            c.sort();
        }
        let index = cells
            .iter()
            .map(|cell| cell.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        SubdividedSlice { r, fixed_by, cells, index }
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, n: usize) -> &[Matrix] {
        &self.cells[n]
    }

    pub fn index_of(&self, n: usize, m: &Matrix) -> Option<usize> {
        self.index.get(n)?.get(m).copied()
    }

    pub fn face(&self, n: usize, i: usize, j: usize) -> Option<usize> {
        self.index_of(n - 1, &sd_face(&self.cells[n][j], i))
    }

    /// Matrices whose entries past position `(0, 0)` are all nonzero, i.e.
    /// nondegenerate as simplices of the base.
    pub fn base_nondegenerate_count(&self, n: usize) -> usize {
        self.cells[n]
            .iter()
            .filter(|m| m.iter().flatten().skip(1).all(|x| !is_zero(x)))
            .count()
    }
}

/// `sd_r` of a slice through the slice's maximal degree.
pub fn subdivide(s: &CyclicSlice, r: usize) -> Result<SubdividedSlice> {
    if r == 0 {
        return Err(Error::Invalid("subdivision index must be positive".into()));
    }
    let mut cells: Vec<Vec<Matrix>> = vec![Vec::new(); s.max_degree + 1];
    for a in &s.components {
        let divs = divisors(&s.carrier, a);
        for (n, cell) in cells.iter_mut().enumerate() {
            for t in tuples_summing_to(&divs, a, r * (n + 1), &|_| true) {
                let m = matrix_from_tuple(&t, r);
                if !sd_degenerate(&m) {
                    cell.push(m);
                }
            }
        }
    }
    Ok(SubdividedSlice::from_cells(r, 1, cells))
}

/// Simplices fixed by the subgroup `C_s ⊆ C_r`.
pub fn fixed_points(sub: &SubdividedSlice, s: usize) -> Result<SubdividedSlice> {
    if s == 0 || sub.r % s != 0 {
        return Err(Error::Invalid("subgroup order must divide r".into()));
    }
    let step = sub.r / s;
    let cells = sub
        .cells
        .iter()
        .map(|cell| {
            cell.iter()
                .filter(|m| {
                    let mut g = (*m).clone();
                    for _ in 0..step {
                        g = rotate_rows(&g);
                    }
                    &g == *m
                })
                .cloned()
                .collect()
        })
        .collect();
    Ok(SubdividedSlice::from_cells(sub.r, s, cells))
}

/// Outcome of comparing `N^cy(A, a)` with `sd_r N^cy(A, r·a)^{C_r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub source_counts: Vec<usize>,
    pub fixed_counts: Vec<usize>,
    pub injective: bool,
    pub lands_in_fixed: bool,
    pub faces_commute: bool,
}

impl DeltaReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.lands_in_fixed && self.faces_commute && self.source_counts == self.fixed_counts
    }
}

pub fn delta_r_report(a: &PctfMonoid, x: &MonoidElement, r: usize, max_degree: usize) -> Result<DeltaReport> {
    let src = ncy_component(a, x, max_degree)?;
    let rx = scale(r as i64, x.vector().expect("component weights are nonzero"));
    let big = CyclicSlice::build(a.carrier(), SliceWeight::Element(rx.clone()), vec![rx], max_degree);
    let fixed = fixed_points(&subdivide(&big, r)?, r)?;
    let mut injective = true;
    let mut lands = true;
    let mut faces = true;
    for n in 0..=max_degree {
        let mut seen = BTreeSet::new();
        for (j, t) in src.simplices(n).iter().enumerate() {
            let m = delta_r(t, r);
            let Some(k) = fixed.index_of(n, &m) else {
                lands = false;
                continue;
            };
            injective &= seen.insert(k);
            if n > 0 {
                for i in 0..=n {
                    let lhs = delta_r(&src.simplices(n - 1)[src.face(n, i, j)], r);
                    faces &= fixed.face(n, i, k).map(|f| &fixed.simplices(n - 1)[f]) == Some(&lhs);
                }
            }
        }
    }
    Ok(DeltaReport {
        source_counts: src.counts(),
        fixed_counts: fixed.counts(),
        injective,
        lands_in_fixed: lands,
        faces_commute: faces,
    })
}

/// The diagonal is a degreewise bijection commuting with faces.
pub fn delta_r_check(a: &PctfMonoid, x: &MonoidElement, r: usize, max_degree: usize) -> Result<bool> {
    Ok(delta_r_report(a, x, r, max_degree)?.is_isomorphism())
}

/// Unit group of `A_sn⟨a⟩`: `gp(C ∩ F)` for the smallest face `F ∋ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitLatticeComponent {
    pub weight: Vector,
    pub lattice: Lattice,
    pub rank: usize,
}

pub fn unit_lattice(a: &PctfMonoid, x: &MonoidElement) -> Result<UnitLatticeComponent> {
    let MonoidElement::Elem(v) = x else {
        return Err(Error::Nilpotent);
    };
    if a.is_nilpotent(v) {
        return Err(Error::Nilpotent);
    }
    let c = a.carrier();
    if !c.contains(v) {
        return Err(Error::NotAMember(v.clone()));
    }
    let face = c.geometry().face_of_point(v);
    let gens: Vec<Vector> = face.iter().map(|&i| c.generators()[i].clone()).collect();
    let lattice = Lattice::generated_by(c.rank(), &gens);
    Ok(UnitLatticeComponent { weight: v.clone(), rank: lattice.rank(), lattice })
}

/// The weights `a ∈ J = √(I·A_sn)` of degree at most `window`, each with
/// its unit lattice.
pub fn omega_decomposition(a: &PctfMonoid, i: &Ideal, window: i64) -> Result<Vec<UnitLatticeComponent>> {
    if i.is_empty() || a.is_zero_monoid() {
        return Ok(Vec::new());
    }
    let sn = seminormalize_pctf(&PctfMonoid::cancellative(a.carrier().clone()));
    let csn = sn.carrier();
    let j = PctfMonoid::cancellative(csn.clone()).radical(&i.extend_to(csn));
    let deg = csn.degree_functional().to_vec();
    let cancellative = PctfMonoid::cancellative(csn.clone());
    csn.elements_below(csn.units(), &deg, window)
        .into_iter()
        .filter(|x| j.contains(csn, x))
        .map(|x| unit_lattice(&cancellative, &MonoidElement::Elem(x)))
        .collect()
}

/// The radical `J` used by [`omega_decomposition`].
pub fn omega_ideal(a: &PctfMonoid, i: &Ideal) -> Ideal {
    let csn = crate::saturation::seminormalize(a.carrier()).monoid;
    PctfMonoid::cancellative(csn.clone()).radical(&i.extend_to(&csn))
}
