//! Affine lattice monoids `C ⊂ ℤⁿ`, their ideals, and the pointed quotients
//! `A = C/I` with the basepoint kept out of band.
//!
//! Membership is decided by a search over a degree function that vanishes
//! exactly on the units, so it terminates whether or not `C` is sharp.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::ConeGeometry;
use crate::error::{Error, Result};
use crate::lattice::{self, add, dot, is_zero, scale, sub, Lattice, Vector};

/// A finitely generated submonoid of ℤⁿ.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    rank: usize,
    gens: Vec<Vector>,
    geom: ConeGeometry,
    group: Lattice,
    units: Lattice,
    unit_gens: Vec<usize>,
    degree: Vector,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.gens == other.gens
    }
}
impl Eq for AffineMonoid {}

fn check_rank(rank: usize, v: &[i64]) -> Result<()> {
    if v.len() != rank {
        return Err(Error::RankMismatch { expected: rank, found: v.len() });
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Step {
    Unit,
    Use(usize),
    Fail,
}

impl AffineMonoid {
    /// The monoid generated by `gens`; generators are sorted and deduplicated
    /// and the zero vector is dropped.
    pub fn new(rank: usize, gens: &[Vector]) -> Result<AffineMonoid> {
        for g in gens {
            check_rank(rank, g)?;
        }
        let mut gens: Vec<Vector> = gens.iter().filter(|g| !is_zero(g)).cloned().collect();
        gens.sort();
        gens.dedup();
        let geom = ConeGeometry::new(rank, &gens);
        let group = Lattice::generated_by(rank, &gens);
        let unit_gens = geom.lineality_generators();
        let unit_vecs: Vec<Vector> = unit_gens.iter().map(|&i| gens[i].clone()).collect();
        let units = Lattice::generated_by(rank, &unit_vecs);
        let degree = geom.interior_functional();
        Ok(AffineMonoid { rank, gens, geom, group, units, unit_gens, degree })
    }

    /// ℕⁿ.
    pub fn free(rank: usize) -> AffineMonoid {
        let gens: Vec<Vector> = (0..rank).map(|i| lattice::unit(rank, i)).collect();
        AffineMonoid::new(rank, &gens).expect("unit vectors have the right length")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn geometry(&self) -> &ConeGeometry {
        &self.geom
    }

    /// The group completion `gp(C)`.
    pub fn group(&self) -> &Lattice {
        &self.group
    }

    /// The unit group, generated by the generators on the lineality space.
    pub fn units(&self) -> &Lattice {
        &self.units
    }

    /// Functional vanishing on the units and positive on every other element.
    pub fn degree_functional(&self) -> &[i64] {
        &self.degree
    }

    pub fn degree(&self, v: &[i64]) -> i64 {
        dot(&self.degree, v)
    }

    pub fn is_sharp(&self) -> bool {
        self.units.rank() == 0
    }

    /// Decide `v ∈ C`. On success returns coefficients aligned with
    /// [`generators`](Self::generators); they are nonnegative except on
    /// generators that are units, whose inverses are already in `C`.
    pub fn member(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        check_rank(self.rank, v)?;
        Ok(self.decompose(v))
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.rank && self.decompose(v).is_some()
    }

    fn decompose(&self, v: &[i64]) -> Option<Vec<i64>> {
        if !self.group.contains(v) || !self.geom.contains(v) {
            return None;
        }
        let movers: Vec<usize> = (0..self.gens.len()).filter(|i| !self.unit_gens.contains(i)).collect();
        let mut memo: BTreeMap<Vector, Step> = BTreeMap::new();
        if matches!(self.search(v, &movers, &mut memo), Step::Fail) {
            return None;
        }
        let mut coeffs = vec![0i64; self.gens.len()];
        let mut r = v.to_vec();
        loop {
            match memo[&self.units.reduce(&r)] {
                Step::Unit => break,
                Step::Use(i) => {
                    coeffs[i] += 1;
                    r = sub(&r, &self.gens[i]);
                }
                Step::Fail => unreachable!("reconstruction follows successful steps"),
            }
        }
        let unit_vecs: Vec<Vector> = self.unit_gens.iter().map(|&i| self.gens[i].clone()).collect();
        let c = Lattice::combination_of(&unit_vecs, self.rank, &r)?;
        for (k, &i) in self.unit_gens.iter().enumerate() {
            coeffs[i] += c[k];
        }
        Some(coeffs)
    }

    fn search(&self, r: &[i64], movers: &[usize], memo: &mut BTreeMap<Vector, Step>) -> Step {
        let key = self.units.reduce(r);
        if let Some(&s) = memo.get(&key) {
            return s;
        }
        let step = if self.degree(r) == 0 {
            if self.units.contains(r) {
                Step::Unit
            } else {
                Step::Fail
            }
        } else {
            let mut found = Step::Fail;
            for &i in movers {
                let rest = sub(r, &self.gens[i]);
                if self.degree(&rest) < 0 || !self.geom.contains(&rest) {
                    continue;
                }
                if !matches!(self.search(&rest, movers, memo), Step::Fail) {
                    found = Step::Use(i);
                    break;
                }
            }
            found
        };
        memo.insert(key, step);
        step
    }

    /// Does this monoid contain every generator of `other`?
    pub fn contains_monoid(&self, other: &AffineMonoid) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_monoid(&self, other: &AffineMonoid) -> bool {
        self.rank == other.rank && self.contains_monoid(other) && other.contains_monoid(self)
    }

    /// All faces of `cone(C) ∩ C` as generator-index subsets.
    pub fn faces(&self) -> Vec<Face> {
        self.geom
            .faces()
            .into_iter()
            .map(|g| Face { generators: g })
            .collect()
    }

    /// Is `v` (an element of `C`) in the face?
    pub fn face_contains(&self, face: &Face, v: &[i64]) -> bool {
        self.geom
            .facets_of_face(&face.generators)
            .iter()
            .all(|f| dot(f, v) == 0)
    }

    /// The smallest face containing `v ∈ cone(C)`.
    pub fn face_of(&self, v: &[i64]) -> Face {
        Face { generators: self.geom.face_of_point(v) }
    }

    /// Elements of `C` with `p(x) ≤ bound`, sorted by `(p, lex)`. Requires `p`
    /// positive on every generator.
    pub fn elements_up_to(&self, p: &[i64], bound: i64) -> Vec<Vector> {
        let mut seen: alloc::collections::BTreeSet<Vector> = alloc::collections::BTreeSet::new();
        let mut frontier = vec![lattice::zero(self.rank)];
        seen.insert(lattice::zero(self.rank));
        while let Some(x) = frontier.pop() {
            for g in &self.gens {
                debug_assert!(dot(p, g) > 0);
                let y = add(&x, g);
                if dot(p, &y) <= bound && seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Vector> = seen.into_iter().collect();
        out.sort_by(|a, b| dot(p, a).cmp(&dot(p, b)).then(a.cmp(b)));
        out
    }

    /// Representatives modulo `modulo` of the elements with `deg ≤ bound`.
    /// `deg` must be nonnegative on the generators and `modulo` of finite
    /// index in the group of elements of degree zero.
    pub fn elements_below(&self, modulo: &Lattice, deg: &[i64], bound: i64) -> Vec<Vector> {
        let zero = lattice::zero(self.rank);
        let mut seen: BTreeMap<Vector, Vector> = BTreeMap::new();
        seen.insert(modulo.reduce(&zero), zero.clone());
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = add(&x, g);
                if dot(deg, &y) > bound {
                    continue;
                }
                if let alloc::collections::btree_map::Entry::Vacant(e) = seen.entry(modulo.reduce(&y)) {
                    e.insert(y.clone());
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<Vector> = seen.into_values().collect();
        out.sort_by(|a, b| dot(deg, a).cmp(&dot(deg, b)).then(a.cmp(b)));
        out
    }

    /// Minimal generating set of the monoid generated by `candidates`. Units
    /// are replaced by `±` an HNF basis of the unit lattice.
    pub fn minimal_from(rank: usize, candidates: &[Vector]) -> Result<AffineMonoid> {
        let full = AffineMonoid::new(rank, candidates)?;
        let mut units: Vec<Vector> = Vec::new();
        for b in full.units.basis() {
            units.push(b.clone());
            units.push(lattice::neg(b));
        }
        let mut movers: Vec<Vector> = full
            .gens
            .iter()
            .filter(|g| full.degree(g) > 0)
            .cloned()
            .collect();
        movers.sort_by(|a, b| full.degree(a).cmp(&full.degree(b)).then(a.cmp(b)));
        let mut kept: Vec<Vector> = Vec::new();
        for (i, x) in movers.iter().enumerate() {
            let redundant = movers[..i].iter().any(|y| full.contains(&sub(x, y)));
            if !redundant {
                kept.push(x.clone());
            }
        }
        kept.extend(units);
        AffineMonoid::new(rank, &kept)
    }

    pub fn minimized(&self) -> AffineMonoid {
        AffineMonoid::minimal_from(self.rank, &self.gens).expect("same rank")
    }
}

/// A face of `cone(C) ∩ C`, recorded by the generators it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub generators: Vec<usize>,
}

/// An ideal of an affine monoid, stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Ideal {
    gens: Vec<Vector>,
}

impl Ideal {
    pub fn empty() -> Ideal {
        Ideal { gens: Vec::new() }
    }

    /// The ideal of `c` generated by `gens`. Each generator must lie in `c`
    /// and none may be a unit.
    pub fn new(c: &AffineMonoid, gens: &[Vector]) -> Result<Ideal> {
        for g in gens {
            check_rank(c.rank, g)?;
            if !c.contains(g) {
                return Err(Error::NotAMember(g.clone()));
            }
            if c.contains(&lattice::neg(g)) {
                return Err(Error::IdealContainsIdentity);
            }
        }
        Ok(Ideal::minimal(c, gens))
    }

    fn minimal(c: &AffineMonoid, gens: &[Vector]) -> Ideal {
        let mut all = lattice::canonical_set(gens);
        all.sort();
        let mut kept = Vec::new();
        for (i, h) in all.iter().enumerate() {
            let redundant = all.iter().enumerate().any(|(j, k)| {
                j != i && c.contains(&sub(h, k)) && (j < i || !c.contains(&sub(k, h)))
            });
            if !redundant {
                kept.push(h.clone());
            }
        }
        Ideal { gens: kept }
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `v ∈ I` inside the carrier `c`.
    pub fn contains(&self, c: &AffineMonoid, v: &[i64]) -> bool {
        self.gens.iter().any(|h| c.contains(&sub(v, h)))
    }

    /// Does the ideal meet the face?
    pub fn meets_face(&self, c: &AffineMonoid, face: &Face) -> bool {
        self.gens.iter().any(|h| c.face_contains(face, h))
    }

    pub fn union(&self, c: &AffineMonoid, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::minimal(c, &g)
    }

    /// Same set of elements in `c`.
    pub fn same_ideal(&self, c: &AffineMonoid, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(c, g)) && other.gens.iter().all(|g| self.contains(c, g))
    }

    /// The ideal generated by the same vectors inside a larger carrier.
    pub fn extend_to(&self, bigger: &AffineMonoid) -> Ideal {
        Ideal::minimal(bigger, &self.gens)
    }
}

/// An element of `C/I`: the basepoint or a class represented by a vector
/// outside `I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonoidElement {
    Zero,
    Elem(Vector),
}

impl MonoidElement {
    pub fn vector(&self) -> Option<&Vector> {
        match self {
            MonoidElement::Zero => None,
            MonoidElement::Elem(v) => Some(v),
        }
    }
}

/// Strictly positive integer functional on the nonzero generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingFunctional {
    p: Vector,
}

impl GradingFunctional {
    pub fn new(c: &AffineMonoid, p: Vector) -> Result<GradingFunctional> {
        check_rank(c.rank, &p)?;
        if c.gens.iter().any(|g| dot(&p, g) <= 0) {
            return Err(Error::NoPositiveGrading);
        }
        Ok(GradingFunctional { p })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.p
    }

    pub fn degree(&self, v: &[i64]) -> i64 {
        dot(&self.p, v)
    }
}

/// A finite dilation sequence `(c₁, c₂, …)` with every `cᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationSequence {
    factors: Vec<i64>,
}

impl DilationSequence {
    pub fn new(factors: Vec<i64>) -> Result<DilationSequence> {
        if factors.iter().any(|&c| c < 2) {
            return Err(Error::BadDilation);
        }
        Ok(DilationSequence { factors })
    }

    pub fn constant(c: i64, len: usize) -> Result<DilationSequence> {
        DilationSequence::new(vec![c; len])
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// `c₁⋯c_k`.
    pub fn prefix_product(&self, k: usize) -> i64 {
        self.factors[..k].iter().product()
    }
}

/// The dilation endomorphism `v ↦ c·v` of a pctf monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dilation {
    pub factor: i64,
}

impl Dilation {
    pub fn apply(&self, a: &PctfMonoid, x: &MonoidElement) -> MonoidElement {
        match x {
            MonoidElement::Zero => MonoidElement::Zero,
            MonoidElement::Elem(v) => a.classify(&scale(self.factor, v)),
        }
    }
}

/// A prime ideal `C \ F` of a pctf monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prime {
    pub face: Face,
    pub ideal: Ideal,
}

/// A pointed monoid `C/I`, or the zero monoid in which `1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PctfMonoid {
    carrier: AffineMonoid,
    ideal: Ideal,
    collapsed: bool,
}

impl PctfMonoid {
    pub fn new(carrier: AffineMonoid, ideal_gens: &[Vector]) -> Result<PctfMonoid> {
        let ideal = Ideal::new(&carrier, ideal_gens)?;
        Ok(PctfMonoid { carrier, ideal, collapsed: false })
    }

    pub fn cancellative(carrier: AffineMonoid) -> PctfMonoid {
        PctfMonoid { carrier, ideal: Ideal::empty(), collapsed: false }
    }

    /// The monoid `{0}` with `1 = 0`.
    pub fn zero_monoid(rank: usize) -> PctfMonoid {
        PctfMonoid {
            carrier: AffineMonoid::new(rank, &[]).expect("empty generator list"),
            ideal: Ideal::empty(),
            collapsed: true,
        }
    }

    pub fn carrier(&self) -> &AffineMonoid {
        &self.carrier
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank
    }

    pub fn is_zero_monoid(&self) -> bool {
        self.collapsed
    }

    /// The class of a vector of `C`: `Zero` when it lies in `I`.
    pub fn classify(&self, v: &[i64]) -> MonoidElement {
        if self.collapsed || self.ideal.contains(&self.carrier, v) {
            MonoidElement::Zero
        } else {
            MonoidElement::Elem(v.to_vec())
        }
    }

    /// Validated element constructor.
    pub fn element(&self, v: &[i64]) -> Result<MonoidElement> {
        check_rank(self.rank(), v)?;
        if !self.collapsed && !self.carrier.contains(v) {
            return Err(Error::NotAMember(v.to_vec()));
        }
        Ok(self.classify(v))
    }

    pub fn identity(&self) -> MonoidElement {
        self.classify(&lattice::zero(self.rank()))
    }

    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        match (a, b) {
            (MonoidElement::Elem(x), MonoidElement::Elem(y)) => self.classify(&add(x, y)),
            _ => MonoidElement::Zero,
        }
    }

    /// Is `v ∈ C` a nonzero element of `A`?
    pub fn is_nonzero_element(&self, v: &[i64]) -> bool {
        !self.collapsed && self.carrier.contains(v) && !self.ideal.contains(&self.carrier, v)
    }

    pub fn faces(&self) -> Vec<Face> {
        if self.collapsed {
            return Vec::new();
        }
        self.carrier.faces()
    }

    /// Primes `C \ F` for faces missing `I`, from the smallest ideal to the
    /// maximal one.
    pub fn primes(&self) -> Vec<Prime> {
        let mut out: Vec<Prime> = self
            .faces()
            .into_iter()
            .filter(|f| !self.ideal.meets_face(&self.carrier, f))
            .map(|f| {
                let outside: Vec<Vector> = (0..self.carrier.gens.len())
                    .filter(|i| !f.generators.contains(i))
                    .map(|i| self.carrier.gens[i].clone())
                    .collect();
                let ideal = Ideal::minimal(&self.carrier, &outside);
                Prime { face: f, ideal }
            })
            .collect();
        out.sort_by(|a, b| b.face.generators.len().cmp(&a.face.generators.len()).then(a.face.cmp(&b.face)));
        out
    }

    /// `√(J ∪ I)`, computed as the complement of the faces missing `J ∪ I`.
    pub fn radical(&self, j: &Ideal) -> Ideal {
        if self.collapsed {
            return Ideal::empty();
        }
        let c = &self.carrier;
        let jj = j.union(c, &self.ideal);
        if jj.is_empty() {
            return Ideal::empty();
        }
        let avoid: Vec<Face> = c.faces().into_iter().filter(|f| !jj.meets_face(c, f)).collect();
        // An element lies in the radical iff its support is contained in no
        // avoiding face, so the radical is generated by sums over minimal
        // such supports.
        let n = c.gens.len();
        let mut minimal: Vec<u64> = Vec::new();
        let mut subsets: Vec<u64> = (1u64..(1u64 << n)).collect();
        subsets.sort_by_key(|s| (s.count_ones(), *s));
        for s in subsets {
            if minimal.iter().any(|&m| m & s == m) {
                continue;
            }
            let hits_all = avoid.iter().all(|f| {
                let mask: u64 = f.generators.iter().map(|&i| 1u64 << i).sum();
                s & !mask != 0
            });
            if hits_all {
                minimal.push(s);
            }
        }
        let gens: Vec<Vector> = minimal
            .iter()
            .map(|&s| {
                (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .fold(lattice::zero(c.rank), |acc, i| add(&acc, &c.gens[i]))
            })
            .collect();
        Ideal::minimal(c, &gens)
    }

    pub fn nilradical(&self) -> Ideal {
        self.radical(&Ideal::empty())
    }

    /// `C/√I`.
    pub fn reduce(&self) -> PctfMonoid {
        if self.collapsed {
            return self.clone();
        }
        PctfMonoid { carrier: self.carrier.clone(), ideal: self.nilradical(), collapsed: false }
    }

    pub fn is_reduced(&self) -> bool {
        self.collapsed || self.nilradical().same_ideal(&self.carrier, &self.ideal)
    }

    /// Is `v ∈ C` nilpotent in `A`?
    pub fn is_nilpotent(&self, v: &[i64]) -> bool {
        self.collapsed || self.nilradical().contains(&self.carrier, v)
    }

    /// `A⟨a⟩`: adjoin `-a` to the generators and extend the ideal.
    pub fn localize(&self, a: &MonoidElement) -> Result<PctfMonoid> {
        let MonoidElement::Elem(v) = a else {
            return Err(Error::LocalizeAtZero);
        };
        check_rank(self.rank(), v)?;
        if self.collapsed {
            return Ok(self.clone());
        }
        if !self.carrier.contains(v) {
            return Err(Error::NotAMember(v.clone()));
        }
        if self.is_nilpotent(v) {
            return Ok(PctfMonoid::zero_monoid(self.rank()));
        }
        let mut gens = self.carrier.gens.clone();
        gens.push(lattice::neg(v));
        let carrier = AffineMonoid::new(self.rank(), &gens)?;
        let ideal = self.ideal.extend_to(&carrier);
        Ok(PctfMonoid { carrier, ideal, collapsed: false })
    }

    /// Lattice basis of the unit group.
    pub fn units(&self) -> Lattice {
        if self.collapsed {
            return Lattice::generated_by(self.rank(), &[]);
        }
        self.carrier.units.clone()
    }

    pub fn grading(&self) -> Result<GradingFunctional> {
        if self.collapsed {
            return Ok(GradingFunctional { p: lattice::zero(self.rank()) });
        }
        if self.carrier.units.rank() > 0 {
            return Err(Error::NoPositiveGrading);
        }
        let mut p = self.carrier.degree.clone();
        if self.carrier.gens.is_empty() {
            p = lattice::zero(self.rank());
        }
        GradingFunctional::new(&self.carrier, p)
    }

    pub fn dilate(&self, c: i64) -> Result<Dilation> {
        if c < 2 {
            return Err(Error::BadDilation);
        }
        Ok(Dilation { factor: c })
    }

    /// Smallest `k` with `(c₁⋯c_k)·x ∈ C`.
    pub fn eventually_in(&self, seq: &DilationSequence, x: &[i64]) -> Option<usize> {
        (0..=seq.factors.len()).find(|&k| self.carrier.contains(&scale(seq.prefix_product(k), x)))
    }

    /// Same carrier and same ideal as sets.
    pub fn same_monoid(&self, other: &PctfMonoid) -> bool {
        if self.collapsed || other.collapsed {
            return self.collapsed == other.collapsed;
        }
        self.carrier.same_monoid(&other.carrier) && self.ideal.same_ideal(&self.carrier, &other.ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rank: usize, g: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(rank, &g.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cusp() -> AffineMonoid {
        m(1, &[&[2], &[3]])
    }

    fn ex115() -> AffineMonoid {
        m(2, &[&[2, 0], &[1, 1], &[0, 2], &[2, 1], &[1, 2]])
    }

    #[test]
    fn cusp_membership() {
        let c = cusp();
        assert_eq!(c.member(&[1]).unwrap(), None);
        let w = c.member(&[5]).unwrap().unwrap();
        assert_eq!(w, vec![1, 1]);
        assert_eq!(c.member(&[0]).unwrap(), Some(vec![0, 0]));
        assert!(c.member(&[1, 2]).is_err());
    }

    #[test]
    fn membership_with_units() {
        // ℤ × ⟨2,3⟩
        let c = m(2, &[&[1, 0], &[-1, 0], &[0, 2], &[0, 3]]);
        assert!(c.contains(&[-7, 5]));
        assert!(!c.contains(&[4, 1]));
        let w = c.member(&[-7, 5]).unwrap().unwrap();
        let back = c
            .generators()
            .iter()
            .zip(&w)
            .fold(vec![0, 0], |acc, (g, &k)| add(&acc, &scale(k, g)));
        assert_eq!(back, vec![-7, 5]);
        // 2ℤ and the parity trap
        let d = m(2, &[&[2, 0], &[-2, 0], &[1, 2], &[0, 2]]);
        assert!(d.contains(&[1, 2]));
        assert!(!d.contains(&[1, 0]));
        assert!(d.contains(&[3, 4]));
    }

    #[test]
    fn faces_of_examples() {
        assert_eq!(AffineMonoid::free(2).faces().len(), 4);
        assert_eq!(cusp().faces().len(), 2);
        assert_eq!(AffineMonoid::new(2, &[]).unwrap().faces().len(), 1);
    }

    #[test]
    fn prime_counts() {
        assert_eq!(PctfMonoid::cancellative(AffineMonoid::free(2)).primes().len(), 4);
        assert_eq!(PctfMonoid::cancellative(cusp()).primes().len(), 2);
        let axes = PctfMonoid::new(AffineMonoid::free(2), &[vec![1, 1]]).unwrap();
        let ps = axes.primes();
        assert_eq!(ps.len(), 3);
        // the last prime is the maximal ideal
        assert!(ps.last().unwrap().face.generators.is_empty());
    }

    #[test]
    fn radicals() {
        let n2 = PctfMonoid::cancellative(AffineMonoid::free(2));
        let j = Ideal::new(n2.carrier(), &[vec![2, 0]]).unwrap();
        assert_eq!(n2.radical(&j).generators(), &[vec![1, 0]]);
        assert!(n2.radical(&Ideal::empty()).is_empty());
        let a = PctfMonoid::cancellative(cusp());
        let j = Ideal::new(a.carrier(), &[vec![4]]).unwrap();
        assert_eq!(a.radical(&j).generators(), &[vec![2], vec![3]]);
    }

    #[test]
    fn reductions() {
        let n = PctfMonoid::new(AffineMonoid::free(1), &[vec![2]]).unwrap();
        let r = n.reduce();
        assert_eq!(r.ideal().generators(), &[vec![1]]);
        assert!(r.is_reduced());
        assert!(!n.is_reduced());
        let axes = PctfMonoid::new(AffineMonoid::free(2), &[vec![1, 1]]).unwrap();
        assert!(axes.reduce().same_monoid(&axes));
        let c = PctfMonoid::cancellative(cusp());
        assert!(c.reduce().same_monoid(&c));
    }

    #[test]
    fn localizations() {
        let a = PctfMonoid::cancellative(cusp());
        let l = a.localize(&MonoidElement::Elem(vec![2])).unwrap();
        assert!(l.carrier().contains(&[1]) && l.carrier().contains(&[-1]));
        assert_eq!(l.units().rank(), 1);
        let n2 = PctfMonoid::cancellative(AffineMonoid::free(2));
        let l = n2.localize(&MonoidElement::Elem(vec![1, 0])).unwrap();
        assert!(l.carrier().same_monoid(&m(2, &[&[1, 0], &[-1, 0], &[0, 1]])));
        assert!(n2.localize(&MonoidElement::Elem(vec![0, 0])).unwrap().same_monoid(&n2));
        assert_eq!(n2.localize(&MonoidElement::Zero), Err(Error::LocalizeAtZero));
        let nil = PctfMonoid::new(AffineMonoid::free(1), &[vec![3]]).unwrap();
        assert!(nil.localize(&MonoidElement::Elem(vec![1])).unwrap().is_zero_monoid());
    }

    #[test]
    fn gradings() {
        let n2 = PctfMonoid::cancellative(AffineMonoid::free(2));
        assert_eq!(n2.grading().unwrap().coefficients(), &[1, 1]);
        assert_eq!(PctfMonoid::cancellative(cusp()).grading().unwrap().coefficients(), &[1]);
        let zn = PctfMonoid::cancellative(m(2, &[&[1, 0], &[-1, 0], &[0, 1]]));
        assert_eq!(zn.grading(), Err(Error::NoPositiveGrading));
        assert_eq!(zn.units().rank(), 1);
        assert_eq!(n2.units().rank(), 0);
    }

    #[test]
    fn eventual_membership() {
        let a = PctfMonoid::cancellative(cusp());
        let s = DilationSequence::constant(2, 3).unwrap();
        assert_eq!(a.eventually_in(&s, &[1]), Some(1));
        assert_eq!(a.eventually_in(&s, &[3]), Some(0));
        let e = PctfMonoid::cancellative(ex115());
        assert_eq!(e.eventually_in(&s, &[1, 1]), Some(0));
        assert!(DilationSequence::new(vec![2, 1]).is_err());
    }

    #[test]
    fn ideals_reject_units_and_minimize() {
        let c = m(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(Ideal::new(&c, &[vec![3, 0]]), Err(Error::IdealContainsIdentity));
        let i = Ideal::new(&c, &[vec![2, 1], vec![0, 1], vec![5, 3]]).unwrap();
        assert_eq!(i.generators(), &[vec![0, 1]]);
        let n2 = AffineMonoid::free(2);
        let i = Ideal::new(&n2, &[vec![2, 1], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(i.generators(), &[vec![0, 3], vec![1, 1]]);
    }

    #[test]
    fn quotient_arithmetic() {
        let a = PctfMonoid::new(AffineMonoid::free(2), &[vec![1, 1]]).unwrap();
        let x = a.element(&[1, 0]).unwrap();
        let y = a.element(&[0, 1]).unwrap();
        assert_eq!(a.mul(&x, &y), MonoidElement::Zero);
        assert_eq!(a.mul(&x, &x), MonoidElement::Elem(vec![2, 0]));
        assert_eq!(a.dilate(3).unwrap().apply(&a, &x), MonoidElement::Elem(vec![3, 0]));
    }

    // Brute-force oracle: nonnegative combinations with bounded coefficients.
    fn brute_member(gens: &[Vector], v: &[i64], cap: i64) -> bool {
        fn rec(gens: &[Vector], i: usize, r: Vector, cap: i64) -> bool {
            if i == gens.len() {
                return is_zero(&r);
            }
            (0..=cap).any(|k| rec(gens, i + 1, sub(&r, &scale(k, &gens[i])), cap))
        }
        rec(gens, 0, v.to_vec(), cap)
    }

    proptest! {
        #[test]
        fn member_agrees_with_bounded_search(
            gens in prop::collection::vec(prop::collection::vec(0i64..4, 2), 1..4),
            v in prop::collection::vec(0i64..7, 2),
        ) {
            let c = AffineMonoid::new(2, &gens).unwrap();
            prop_assume!(c.is_sharp());
            // coefficients never exceed the total degree
            prop_assert_eq!(c.contains(&v), brute_member(c.generators(), &v, 7));
        }

        #[test]
        fn radical_is_idempotent(
            gens in prop::collection::vec(prop::collection::vec(0i64..3, 2), 1..4),
            j in prop::collection::vec(prop::collection::vec(0i64..4, 2), 0..3),
        ) {
            let c = AffineMonoid::new(2, &gens).unwrap();
            let jg: Vec<Vector> = j.into_iter().filter(|v| c.contains(v) && !c.contains(&lattice::neg(v))).collect();
            let a = PctfMonoid::cancellative(c.clone());
            let ji = Ideal::new(&c, &jg).unwrap();
            let r = a.radical(&ji);
            prop_assert!(a.radical(&r).same_ideal(&c, &r));
            // J ⊆ √J and every radical generator has a power in J
            for g in ji.generators() {
                prop_assert!(r.contains(&c, g));
            }
            for g in r.generators() {
                prop_assert!((1..=8).any(|k| ji.contains(&c, &scale(k, g))));
            }
        }

        #[test]
        fn grading_is_positive(
            gens in prop::collection::vec(prop::collection::vec(-2i64..4, 3), 1..5),
        ) {
            let c = AffineMonoid::new(3, &gens).unwrap();
            let a = PctfMonoid::cancellative(c.clone());
            match a.grading() {
                Ok(p) => for g in c.generators() { prop_assert!(p.degree(g) > 0) },
                Err(e) => {
                    prop_assert_eq!(e, Error::NoPositiveGrading);
                    prop_assert!(a.units().rank() > 0);
                }
            }
        }
    }
}
