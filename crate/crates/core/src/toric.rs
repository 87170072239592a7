//! Fans, their dual-cone monoids, stellar subdivision, Čech cohomology of
//! presheaves on cone opens, and the five kinds of distinguished squares
//! checked weight by weight on the Ω̃ homology presheaves.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::cone::{cone_from_inequalities, for_each_box_point, zonotope_points, ConeGeometry};
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::homology::{
    compose_columns, homology, mv_acyclicity, torus_oracle, ChainComplex, ChainMap, Column, ComplexSquare,
};
use crate::intmat::{big_rows, combinations, determinant, primitive, right_kernel_small, smith_invariants, zero_mat};
use crate::lattice::{dot, is_zero, neg, Lattice, Vector};
use crate::monoid::{AffineMonoid, MonoidElement, PctfMonoid};
use crate::nerve::unit_lattice;
use crate::saturation::{conductor, is_seminormal, normalize, seminormalize_pctf, Conductor};

/// A strongly convex rational polyhedral cone, stored by its primitive rays.
#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vector>,
    geom: ConeGeometry,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.rank == other.rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Cone) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// By dimension, then by rays.
impl Ord for Cone {
    fn cmp(&self, other: &Cone) -> Ordering {
        (self.rank, self.dim(), &self.rays).cmp(&(other.rank, other.dim(), &other.rays))
    }
}

impl Cone {
    /// Rays are made primitive and deduplicated. Fails if the cone contains
    /// a line or some ray is not extremal.
    pub fn new(rank: usize, rays: &[Vector]) -> Result<Cone> {
        let mut set = BTreeSet::new();
        for r in rays {
            if r.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: r.len() });
            }
            if is_zero(r) {
                return Err(Error::InvalidCone("zero ray".into()));
            }
            set.insert(primitive(r));
        }
        let rays: Vec<Vector> = set.into_iter().collect();
        let geom = ConeGeometry::new(rank, &rays);
        if !geom.is_pointed() {
            return Err(Error::InvalidCone("not strongly convex".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            let others: Vec<Vector> = rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            if ConeGeometry::new(rank, &others).contains(r) {
                return Err(Error::InvalidCone(format!("ray {r:?} is not extremal")));
            }
        }
        Ok(Cone { rank, rays, geom })
    }

    pub fn zero(rank: usize) -> Cone {
        Cone { rank, rays: Vec::new(), geom: ConeGeometry::new(rank, &[]) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.geom.dim()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.geom.contains(v)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// All faces, including `{0}` and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self
            .geom
            .faces()
            .into_iter()
            .map(|f| {
                let rays: Vec<Vector> = f.iter().map(|&i| self.rays[i].clone()).collect();
                Cone { rank: self.rank, geom: ConeGeometry::new(self.rank, &rays), rays }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.faces().contains(self)
    }

    /// Rays shared with `other`, as a cone.
    fn common(&self, other: &Cone) -> Cone {
        let rays: Vec<Vector> = self.rays.iter().filter(|r| other.rays.contains(r)).cloned().collect();
        Cone { rank: self.rank, geom: ConeGeometry::new(self.rank, &rays), rays }
    }

    /// Does `σ ∩ σ'` equal a common face of both?
    fn meets_in_common_face(&self, other: &Cone) -> bool {
        let tau = self.common(other);
        if !tau.is_face_of(self) || !tau.is_face_of(other) {
            return false;
        }
        let mut ineqs: Vec<Vector> = Vec::new();
        for c in [self, other] {
            ineqs.extend(c.geom.facets().iter().cloned());
            for p in c.geom.perp() {
                ineqs.push(p.clone());
                ineqs.push(neg(p));
            }
        }
        cone_from_inequalities(self.rank, &ineqs).iter().all(|r| tau.contains(r))
    }

    /// Hilbert basis of `σ^∨ ∩ M`.
    pub fn dual_monoid(&self) -> AffineMonoid {
        let gens = cone_from_inequalities(self.rank, &self.rays);
        let mut cands = gens.clone();
        cands.extend(zonotope_points(self.rank, &gens, |_| true));
        cands.retain(|c| !is_zero(c));
        let hb = AffineMonoid::minimal_from(self.rank, &cands).expect("dual generators share the rank");
        // representatives of the non-units reduced modulo the units
        let units = hb.units().clone();
        let gens: Vec<Vector> = hb
            .generators()
            .iter()
            .map(|g| if units.contains(g) { g.clone() } else { units.reduce(g) })
            .collect();
        AffineMonoid::new(self.rank, &gens).expect("same rank")
    }

    /// The rays extend to a basis of `N`.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let inv = smith_invariants(&big_rows(&self.rays), self.rank);
        inv.len() == self.rays.len() && inv.iter().all(|d| d == &num_bigint::BigInt::from(1))
    }

    /// `|det|` of the rays when the cone is simplicial and full-dimensional.
    pub fn multiplicity(&self) -> Option<u64> {
        if self.rays.len() != self.rank || self.dim() != self.rank {
            return None;
        }
        determinant(&big_rows(&self.rays)).magnitude().to_u64()
    }
}

/// `m(ρ) > 0` for every ray of every cone of `u`.
pub fn positivity(m: &[i64], u: &[Cone]) -> bool {
    u.iter().all(|c| c.rays.iter().all(|r| dot(m, r) > 0))
}

/// A fan: cones closed under faces, meeting pairwise in common faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Faces of the given cones are added automatically.
    pub fn new(rank: usize, cones: &[Vec<Vector>]) -> Result<Fan> {
        let mut built = Vec::new();
        for rays in cones {
            built.push(Cone::new(rank, rays)?);
        }
        Fan::from_cones(rank, built)
    }

    pub fn from_cones(rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        let mut all = BTreeSet::new();
        for c in &cones {
            if c.rank != rank {
                return Err(Error::RankMismatch { expected: rank, found: c.rank });
            }
            all.extend(c.faces());
        }
        let fan = Fan { rank, cones: all.into_iter().collect() };
        let max = fan.maximal_cones();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                if !a.meets_in_common_face(b) {
                    return Err(Error::InvalidFan(format!("{:?} and {:?} do not meet in a common face", a.rays, b.rays)));
                }
            }
        }
        Ok(fan)
    }

    pub fn empty(rank: usize) -> Fan {
        Fan { rank, cones: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All cones, sorted by dimension and rays.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && d.contains_cone(c) && c.is_face_of(d)))
            .cloned()
            .collect()
    }

    pub fn rays(&self) -> Vec<Vector> {
        let set: BTreeSet<Vector> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    pub fn support_contains(&self, v: &[i64]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(Cone::is_smooth)
    }

    /// Smallest cone containing `c`, if any.
    pub fn carrier_of(&self, c: &Cone) -> Option<&Cone> {
        self.cones.iter().filter(|d| d.contains_cone(c)).min_by_key(|d| d.dim())
    }

    /// Star subdivision at the primitive vector along `v`.
    pub fn stellar_subdivide(&self, v: &[i64]) -> Result<Fan> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.len() });
        }
        if is_zero(v) || !self.support_contains(v) {
            return Err(Error::RayOutsideSupport);
        }
        let v = primitive(v);
        if self.rays().contains(&v) {
            return Ok(self.clone());
        }
        let mut out: Vec<Vec<Vector>> = Vec::new();
        for c in &self.cones {
            if !c.contains(&v) {
                out.push(c.rays.clone());
                continue;
            }
            for f in c.faces() {
                if f.dim() + 1 == c.dim() && !f.contains(&v) {
                    let mut rays = f.rays.clone();
                    rays.push(v.clone());
                    out.push(rays);
                }
            }
        }
        Fan::new(self.rank, &out)
    }

    /// The subfan generated by `cones`, which must belong to the fan.
    pub fn subfan(&self, cones: &[Cone]) -> Result<Fan> {
        for c in cones {
            if !self.contains_cone(c) {
                return Err(Error::InvalidFan(format!("{:?} is not a cone of the fan", c.rays)));
            }
        }
        Fan::from_cones(self.rank, cones.to_vec())
    }

    /// Cones present in both fans.
    pub fn intersection(&self, other: &Fan) -> Fan {
        let cones = self.cones.iter().filter(|c| other.contains_cone(c)).cloned().collect();
        Fan { rank: self.rank, cones }
    }

    /// Same support, every cone of `fine` inside a cone of `self`.
    pub fn check_refinement(&self, fine: &Fan) -> Result<()> {
        if fine.rank != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: fine.rank });
        }
        for c in &fine.cones {
            if self.carrier_of(c).is_none() {
                return Err(Error::NotARefinement(format!("{:?} lies in no cone of the coarse fan", c.rays)));
            }
        }
        // inside each maximal cone the top-dimensional fine cones form a
        // pseudomanifold whose free walls lie on the boundary
        for s in self.maximal_cones() {
            let d = s.dim();
            if d == 0 {
                if !fine.contains_cone(&s) {
                    return Err(Error::NotARefinement("the zero cone is not covered".into()));
                }
                continue;
            }
            let tops: Vec<&Cone> = fine.cones.iter().filter(|c| c.dim() == d && s.contains_cone(c)).collect();
            if tops.is_empty() {
                return Err(Error::NotARefinement(format!("{:?} is not covered", s.rays)));
            }
            let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
            for t in &tops {
                for f in t.faces() {
                    if f.dim() + 1 == d {
                        *walls.entry(f).or_default() += 1;
                    }
                }
            }
            for (w, n) in walls {
                let on_boundary = s.geom.facets().iter().any(|l| w.rays.iter().all(|r| dot(l, r) == 0));
                if !(n == 2 || (n == 1 && on_boundary)) {
                    return Err(Error::NotARefinement(format!("{:?} is not covered", s.rays)));
                }
            }
        }
        Ok(())
    }
}

/// Points are the cones of the fan; `U_σ` is the set of faces of `σ`.
#[derive(Clone, Debug)]
pub struct ToricScheme {
    fan: Fan,
    monoids: Vec<AffineMonoid>,
}

pub fn scheme_from_fan(fan: &Fan) -> ToricScheme {
    let monoids = fan.cones.iter().map(Cone::dual_monoid).collect();
    ToricScheme { fan: fan.clone(), monoids }
}

impl ToricScheme {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn points(&self) -> usize {
        self.fan.cones.len()
    }

    /// `A(U_σ)` for the `i`-th cone.
    pub fn monoid(&self, i: usize) -> &AffineMonoid {
        &self.monoids[i]
    }

    /// Does point `i` lie in `U_σ` for `σ` the `j`-th cone?
    pub fn in_open(&self, i: usize, j: usize) -> bool {
        self.fan.cones[i].is_face_of(&self.fan.cones[j])
    }

    /// The minimal point (the zero cone).
    pub fn generic_point(&self) -> Option<usize> {
        self.fan.cones.iter().position(|c| c.rays.is_empty())
    }

    /// `A(U_τ) = A(U_σ)` localized at a dual vector interior to the face
    /// `σ^∨ ∩ τ^⊥`, for every pair `τ ≤ σ`.
    pub fn check_localization(&self) -> bool {
        let cones = &self.fan.cones;
        for (j, s) in cones.iter().enumerate() {
            for (i, t) in cones.iter().enumerate() {
                if i == j || !t.is_face_of(s) {
                    continue;
                }
                let a = &self.monoids[j];
                let mut f = crate::lattice::zero(self.fan.rank);
                for g in a.generators() {
                    if t.rays.iter().all(|r| dot(g, r) == 0) {
                        f = crate::lattice::add(&f, g);
                    }
                }
                let mut gens = a.generators().to_vec();
                gens.push(neg(&f));
                let loc = AffineMonoid::new(self.fan.rank, &gens).expect("same rank");
                if !loc.same_monoid(&self.monoids[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A presheaf of finite-dimensional modules on cone opens. `boundary`
/// selects the closed subscheme cut out by the toric boundary.
pub trait ConePresheaf {
    fn dim(&self, cone: &Cone, boundary: bool) -> Result<usize>;
    /// Restriction from `(σ, b)` to `(τ, b')` with `τ ⊆ σ` and `b ≤ b'`.
    fn restrict(&self, from: (&Cone, bool), to: (&Cone, bool)) -> Result<Vec<Column>>;
}

/// `G_m`: the field where `m > 0` on the open, zero elsewhere.
#[derive(Clone, Debug)]
pub struct PositivityPresheaf {
    pub m: Vector,
}

impl ConePresheaf for PositivityPresheaf {
    fn dim(&self, cone: &Cone, _boundary: bool) -> Result<usize> {
        Ok(usize::from(positivity(&self.m, core::slice::from_ref(cone))))
    }

    fn restrict(&self, from: (&Cone, bool), to: (&Cone, bool)) -> Result<Vec<Column>> {
        let (s, t) = (self.dim(from.0, from.1)?, self.dim(to.0, to.1)?);
        Ok(match (s, t) {
            (0, _) => Vec::new(),
            (_, 0) => vec![Vec::new()],
            _ => vec![vec![(0, 1)]],
        })
    }
}

/// Finite table of values and restrictions, keyed by cones.
#[derive(Clone, Debug, Default)]
pub struct TablePresheaf {
    pub values: BTreeMap<(Cone, bool), usize>,
    pub maps: BTreeMap<((Cone, bool), (Cone, bool)), Vec<Column>>,
}

impl ConePresheaf for TablePresheaf {
    fn dim(&self, cone: &Cone, boundary: bool) -> Result<usize> {
        self.values
            .get(&(cone.clone(), boundary))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("presheaf has no value on the open of {:?}", cone.rays)))
    }

    fn restrict(&self, from: (&Cone, bool), to: (&Cone, bool)) -> Result<Vec<Column>> {
        if from.0 == to.0 && from.1 == to.1 {
            let d = self.dim(from.0, from.1)?;
            return Ok((0..d).map(|j| vec![(j, 1)]).collect());
        }
        let key = ((from.0.clone(), from.1), (to.0.clone(), to.1));
        if let Some(m) = self.maps.get(&key) {
            return Ok(m.clone());
        }
        match (self.dim(from.0, from.1)?, self.dim(to.0, to.1)?) {
            (0, _) => Ok(Vec::new()),
            (s, 0) => Ok(vec![Vec::new(); s]),
            _ => Err(Error::Invalid(format!("presheaf has no restriction {:?} → {:?}", from.0.rays, to.0.rays))),
        }
    }
}

/// Weight-`m` part of `H_q(Ω̃)` on toric charts: the unit lattice
/// `(σ ∩ m^⊥)^⊥ ∩ M` of `σ^∨ ∩ M` at `m`, or zero when `m ∉ σ^∨` or, on
/// the boundary, when `m` lies in its ideal.
#[derive(Clone, Debug)]
pub struct OmegaPresheaf {
    pub m: Vector,
    pub q: usize,
}

/// The lattice carrying the weight-`m` component on `(σ, boundary)`.
pub fn toric_omega_lattice(cone: &Cone, boundary: bool, m: &[i64]) -> Option<Lattice> {
    if cone.rays.iter().any(|r| dot(m, r) < 0) {
        return None;
    }
    if boundary && positivity(m, core::slice::from_ref(cone)) {
        return None;
    }
    let tight: Vec<Vector> = cone.rays.iter().filter(|r| dot(m, r) == 0).cloned().collect();
    let basis = if tight.is_empty() {
        (0..cone.rank).map(|i| crate::lattice::unit(cone.rank, i)).collect()
    } else {
        right_kernel_small(&tight, cone.rank)
    };
    Some(Lattice::generated_by(cone.rank, &basis))
}

impl ConePresheaf for OmegaPresheaf {
    fn dim(&self, cone: &Cone, boundary: bool) -> Result<usize> {
        Ok(toric_omega_lattice(cone, boundary, &self.m).map_or(0, |l| torus_oracle(l.rank(), self.q)))
    }

    fn restrict(&self, from: (&Cone, bool), to: (&Cone, bool)) -> Result<Vec<Column>> {
        let s = toric_omega_lattice(from.0, from.1, &self.m);
        let t = toric_omega_lattice(to.0, to.1, &self.m);
        Ok(lattice_map(s.as_ref(), t.as_ref(), self.q))
    }
}

/// `Λ^q` of the inclusion `src ⊆ tgt`, in the exterior bases of the two
/// lattice bases; minors of the coordinate matrix.
pub fn wedge_columns(src: &Lattice, tgt: &Lattice, q: usize) -> Vec<Column> {
    let coords: Vec<Vec<i64>> = src
        .basis()
        .iter()
        .map(|b| tgt.coordinates(b).expect("source lattice lies in the target"))
        .collect();
    let rows = combinations(tgt.rank(), q);
    combinations(src.rank(), q)
        .iter()
        .map(|cols| {
            rows.iter()
                .enumerate()
                .filter_map(|(k, r)| {
                    let mut sub = zero_mat(q, q);
                    for (a, &i) in r.iter().enumerate() {
                        for (b, &j) in cols.iter().enumerate() {
                            sub[a][b] = coords[j][i].into();
                        }
                    }
                    let d = if q == 0 { 1 } else { determinant(&sub).to_i64().expect("minor fits in i64") };
                    (d != 0).then_some((k, d))
                })
                .collect()
        })
        .collect()
}

fn lattice_map(src: Option<&Lattice>, tgt: Option<&Lattice>, q: usize) -> Vec<Column> {
    match (src, tgt) {
        (None, _) => Vec::new(),
        (Some(s), None) => vec![Vec::new(); torus_oracle(s.rank(), q)],
        (Some(s), Some(t)) => wedge_columns(s, t, q),
    }
}

/// A toric scheme, an open subscheme given by a subfan, or the boundary
/// closed subscheme of either, with the cone opens used as Čech cover.
#[derive(Clone, Debug)]
pub struct Site {
    fan: Fan,
    boundary: bool,
}

impl Site {
    pub fn whole(fan: &Fan) -> Site {
        Site { fan: fan.clone(), boundary: false }
    }

    /// The reduced union of the closures of the height-one points.
    pub fn boundary(fan: &Fan) -> Site {
        Site { fan: fan.clone(), boundary: true }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }
}

/// Cover indices `i_0 < … < i_p` and the offsets of their values.
struct CechLayout {
    simplices: Vec<Vec<Vec<usize>>>,
    cones: Vec<Vec<Cone>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

fn intersect_all(cover: &[Cone], idx: &[usize]) -> Cone {
    let mut c = cover[idx[0]].clone();
    for &i in &idx[1..] {
        c = c.common(&cover[i]);
    }
    c
}

fn layout(cover: &[Cone], boundary: bool, p: &dyn ConePresheaf) -> Result<CechLayout> {
    let n = cover.len();
    let mut out = CechLayout { simplices: Vec::new(), cones: Vec::new(), offsets: Vec::new(), dims: Vec::new() };
    for k in 1..=n {
        let subsets = combinations(n, k);
        let mut cones = Vec::with_capacity(subsets.len());
        let mut offsets = Vec::with_capacity(subsets.len());
        let mut total = 0;
        for s in &subsets {
            let c = intersect_all(cover, s);
            offsets.push(total);
            total += p.dim(&c, boundary)?;
            cones.push(c);
        }
        out.simplices.push(subsets);
        out.cones.push(cones);
        out.offsets.push(offsets);
        out.dims.push(total);
    }
    Ok(out)
}

/// Ordered Čech complex of `p` over `cover`, placed in homological degree
/// `-p` so that `H^p = H_{-p}`.
fn cech_over(cover: &[Cone], boundary: bool, p: &dyn ConePresheaf) -> Result<(ChainComplex, CechLayout)> {
    let l = layout(cover, boundary, p)?;
    let n = cover.len();
    if n == 0 {
        return Ok((ChainComplex::new(0, vec![0], vec![Vec::new()], None)?, l));
    }
    let lo = -(n as i64 - 1);
    let mut dims = Vec::with_capacity(n);
    let mut bd = Vec::with_capacity(n);
    for k in 0..n {
        let deg = n - 1 - k;
        dims.push(l.dims[deg]);
        let mut cols: Vec<Column> = vec![Vec::new(); l.dims[deg]];
        if deg + 1 < n {
            let index: BTreeMap<&Vec<usize>, usize> = l.simplices[deg + 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            for (si, s) in l.simplices[deg].iter().enumerate() {
                let from = &l.cones[deg][si];
                for extra in 0..n {
                    if s.contains(&extra) {
                        continue;
                    }
                    let mut t = s.clone();
                    let pos = t.partition_point(|&x| x < extra);
                    t.insert(pos, extra);
                    let ti = index[&t];
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    let res = p.restrict((from, boundary), (&l.cones[deg + 1][ti], boundary))?;
                    let base = l.offsets[deg + 1][ti];
                    for (b, col) in res.iter().enumerate() {
                        cols[l.offsets[deg][si] + b].extend(col.iter().map(|&(i, x)| (base + i, sign * x)));
                    }
                }
            }
        }
        for c in &mut cols {
            c.sort_by_key(|e| e.0);
        }
        bd.push(cols);
    }
    Ok((ChainComplex::new(lo, dims, bd, None)?, l))
}

/// `H^p` of `p` on `site`, over the cover by maximal cones.
pub fn cech(site: &Site, p: &dyn ConePresheaf, coeff: Coeff) -> Result<Vec<usize>> {
    let cover = site.fan.maximal_cones();
    let (c, _) = cech_over(&cover, site.boundary, p)?;
    let h = homology(&c, coeff)?;
    Ok((0..cover.len().max(1)).map(|q| h.dim(-(q as i64))).collect())
}

/// Pullback of Čech cochains along `r`, which sends each target cover index
/// to a source cover index whose cone contains it.
fn cech_pullback(
    src: (&[Cone], bool, &CechLayout),
    tgt: (&[Cone], bool, &CechLayout),
    r: &[usize],
    p: &dyn ConePresheaf,
) -> Result<ChainMap> {
    let (_, sb, sl) = src;
    let (tcover, tb, tl) = tgt;
    let ns = sl.simplices.len();
    let lo = -(ns as i64 - 1);
    let mut cols: Vec<Vec<Column>> = (0..ns).map(|k| vec![Vec::new(); sl.dims[ns - 1 - k]]).collect();
    if ns == 0 {
        return Ok(ChainMap::new(0, vec![Vec::new()]));
    }
    let sindex: Vec<BTreeMap<&Vec<usize>, usize>> =
        sl.simplices.iter().map(|ss| ss.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    for deg in 0..tcover.len() {
        for (ti, t) in tl.simplices.get(deg).into_iter().flatten().enumerate() {
            let mut image: Vec<usize> = t.iter().map(|&j| r[j]).collect();
            let mut sign = 1;
            for a in 0..image.len() {
                for b in a + 1..image.len() {
                    match image[a].cmp(&image[b]) {
                        Ordering::Greater => sign = -sign,
                        Ordering::Equal => sign = 0,
                        Ordering::Less => {}
                    }
                }
            }
            if sign == 0 || deg >= ns {
                continue;
            }
            image.sort_unstable();
            let si = sindex[deg][&image];
            let res = p.restrict((&sl.cones[deg][si], sb), (&tl.cones[deg][ti], tb))?;
            let k = ns - 1 - deg;
            for (b, col) in res.iter().enumerate() {
                cols[k][sl.offsets[deg][si] + b].extend(col.iter().map(|&(i, x)| (tl.offsets[deg][ti] + i, sign * x)));
            }
        }
    }
    for c in cols.iter_mut().flatten() {
        c.sort_by_key(|e| e.0);
    }
    Ok(ChainMap::new(lo, cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L312Report {
    pub coarse: Vec<usize>,
    pub fine: Vec<usize>,
    /// Ranks of the pullback on cohomology.
    pub pullback_ranks: Vec<usize>,
    pub agree: bool,
}

/// Compare `Ȟ(Δ, G_m)` with `Ȟ(Δ', G_m)` for a refinement `Δ'`.
pub fn verify_l312(coarse: &Fan, fine: &Fan, m: &[i64], coeff: Coeff) -> Result<L312Report> {
    coarse.check_refinement(fine)?;
    let p = PositivityPresheaf { m: m.to_vec() };
    let sc = coarse.maximal_cones();
    let fc = fine.maximal_cones();
    let (cx, lx) = cech_over(&sc, false, &p)?;
    let (cy, ly) = cech_over(&fc, false, &p)?;
    let r: Vec<usize> = fc
        .iter()
        .map(|t| sc.iter().position(|s| s.contains_cone(t)).expect("checked refinement"))
        .collect();
    let f = cech_pullback((&sc, false, &lx), (&fc, false, &ly), &r, &p)?;
    let hx = homology(&cx, coeff)?;
    let hy = homology(&cy, coeff)?;
    let top = sc.len().max(fc.len()).max(1);
    let coarse_dims: Vec<usize> = (0..top).map(|q| hx.dim(-(q as i64))).collect();
    let fine_dims: Vec<usize> = (0..top).map(|q| hy.dim(-(q as i64))).collect();
    let ranks = crate::homology::induced_map(&cx, &cy, &f, 0, coeff)?;
    let base = cx.lo().min(cy.lo());
    let pullback_ranks: Vec<usize> =
        (0..top).map(|q| ranks.rank.get((-(q as i64) - base) as usize).copied().unwrap_or(0)).collect();
    Ok(L312Report { agree: coarse_dims == fine_dims, coarse: coarse_dims, fine: fine_dims, pullback_ranks })
}

/// Types of distinguished squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SquareKind {
    Sn,
    Zariski,
    Conductor,
    ClosedCover,
    Blowup,
}

#[derive(Clone, Debug)]
pub enum Corner {
    Empty,
    Affine(PctfMonoid),
    Toric(Site),
}

/// A commutative square
/// ```text
///   D → Y
///   ↓   ↓
///   C → X
/// ```
/// of monoid schemes; the maps are the evident ones (inclusions, quotients,
/// the identity on cones, or a fan refinement).
#[derive(Clone, Debug)]
pub struct CdSquare {
    pub kind: SquareKind,
    pub x: Corner,
    pub y: Corner,
    pub c: Corner,
    pub d: Corner,
}

/// `Y = X_sn`, `C = D = ∅`.
pub fn sn_square(a: &PctfMonoid) -> CdSquare {
    CdSquare {
        kind: SquareKind::Sn,
        x: Corner::Affine(a.clone()),
        y: Corner::Affine(seminormalize_pctf(a)),
        c: Corner::Empty,
        d: Corner::Empty,
    }
}

/// `X = Y ∪ C` for the subfans generated by `u` and `v`, `D = Y ∩ C`.
pub fn zariski_square(fan: &Fan, u: &[Cone], v: &[Cone]) -> Result<CdSquare> {
    let fu = fan.subfan(u)?;
    let fv = fan.subfan(v)?;
    if fan.maximal_cones().iter().any(|s| !fu.contains_cone(s) && !fv.contains_cone(s)) {
        return Err(Error::ShapeMismatch("the two opens do not cover the fan".into()));
    }
    Ok(CdSquare {
        kind: SquareKind::Zariski,
        x: Corner::Toric(Site::whole(fan)),
        y: Corner::Toric(Site::whole(&fu)),
        c: Corner::Toric(Site::whole(&fv)),
        d: Corner::Toric(Site::whole(&fu.intersection(&fv))),
    })
}

/// `Y = X_nor`; `C`, `D` cut out by the conductor.
pub fn conductor_square(a: &AffineMonoid) -> Result<CdSquare> {
    if !is_seminormal(a) {
        return Err(Error::ShapeMismatch("the monoid is not seminormal".into()));
    }
    let nor = normalize(a).monoid;
    let cond = conductor(a, &nor)?;
    let (c, d) = match cond.conductor {
        Conductor::Whole => (Corner::Empty, Corner::Empty),
        Conductor::Proper(i) => (
            Corner::Affine(PctfMonoid::new(a.clone(), i.generators())?),
            Corner::Affine(PctfMonoid::new(nor.clone(), i.generators())?),
        ),
    };
    Ok(CdSquare {
        kind: SquareKind::Conductor,
        x: Corner::Affine(PctfMonoid::cancellative(a.clone())),
        y: Corner::Affine(PctfMonoid::cancellative(nor)),
        c,
        d,
    })
}

/// `C = V(I)`, `Y = V(J)` covering `X`, `D = V(I ∪ J)`.
pub fn closed_cover_square(a: &PctfMonoid, i: &[Vector], j: &[Vector]) -> Result<CdSquare> {
    let sn = seminormalize_pctf(a);
    if !sn.same_monoid(a) {
        return Err(Error::ShapeMismatch("the monoid is not seminormal".into()));
    }
    let carrier = a.carrier();
    let quotient = |extra: &[&[Vector]]| -> Result<PctfMonoid> {
        let mut g = a.ideal().generators().to_vec();
        for e in extra {
            g.extend(e.iter().cloned());
        }
        PctfMonoid::new(carrier.clone(), &g)
    };
    let ai = quotient(&[i])?;
    let aj = quotient(&[j])?;
    // every prime of A contains I or J
    for f in a.faces() {
        if a.ideal().meets_face(carrier, &f) {
            continue;
        }
        if ai.ideal().meets_face(carrier, &f) && aj.ideal().meets_face(carrier, &f) {
            return Err(Error::ShapeMismatch("V(I) and V(J) do not cover".into()));
        }
    }
    Ok(CdSquare { kind: SquareKind::ClosedCover, x: Corner::Affine(a.clone()), y: Corner::Affine(aj), c: Corner::Affine(ai), d: Corner::Affine(quotient(&[i, j])?) })
}

/// `Y` the star subdivision at `ray`; `C`, `D` the toric boundaries.
pub fn blowup_square(fan: &Fan, ray: &[i64]) -> Result<CdSquare> {
    let fine = fan.stellar_subdivide(ray)?;
    blowup_square_for(fan, &fine)
}

/// Abstract blow-up square for any refinement.
pub fn blowup_square_for(fan: &Fan, fine: &Fan) -> Result<CdSquare> {
    fan.check_refinement(fine)?;
    Ok(CdSquare {
        kind: SquareKind::Blowup,
        x: Corner::Toric(Site::whole(fan)),
        y: Corner::Toric(Site::whole(fine)),
        c: Corner::Toric(Site::boundary(fan)),
        d: Corner::Toric(Site::boundary(fine)),
    })
}

enum Prepared {
    Empty,
    Affine(PctfMonoid),
    Toric(Site, Vec<Cone>),
}

fn prepare(c: &Corner) -> Prepared {
    match c {
        Corner::Empty => Prepared::Empty,
        Corner::Affine(a) => Prepared::Affine(seminormalize_pctf(a)),
        Corner::Toric(s) => Prepared::Toric(s.clone(), s.fan.cones.clone()),
    }
}

fn affine_lattice(sn: &PctfMonoid, m: &[i64]) -> Option<Lattice> {
    if sn.is_zero_monoid() || m.len() != sn.rank() || !sn.carrier().contains(m) || sn.is_nilpotent(m) {
        return None;
    }
    unit_lattice(sn, &MonoidElement::Elem(m.to_vec())).ok().map(|u| u.lattice)
}

struct Built {
    complex: ChainComplex,
    layout: Option<CechLayout>,
    lattice: Option<Lattice>,
}

fn build(c: &Prepared, m: &[i64], q: usize) -> Result<Built> {
    match c {
        Prepared::Empty => {
            Ok(Built { complex: ChainComplex::new(0, vec![0], vec![Vec::new()], None)?, layout: None, lattice: None })
        }
        Prepared::Affine(sn) => {
            let lattice = affine_lattice(sn, m);
            let d = lattice.as_ref().map_or(0, |l| torus_oracle(l.rank(), q));
            Ok(Built { complex: ChainComplex::new(0, vec![d], vec![vec![Vec::new(); d]], None)?, layout: None, lattice })
        }
        Prepared::Toric(site, cover) => {
            let p = OmegaPresheaf { m: m.to_vec(), q };
            let (complex, l) = cech_over(cover, site.boundary, &p)?;
            Ok(Built { complex, layout: Some(l), lattice: None })
        }
    }
}

fn corner_map(src: (&Prepared, &Built), tgt: (&Prepared, &Built), m: &[i64], q: usize) -> Result<ChainMap> {
    match (src.0, tgt.0) {
        (Prepared::Empty, _) | (_, Prepared::Empty) => Ok(ChainMap::zero(&src.1.complex)),
        (Prepared::Affine(_), Prepared::Affine(_)) => {
            Ok(ChainMap::new(0, vec![lattice_map(src.1.lattice.as_ref(), tgt.1.lattice.as_ref(), q)]))
        }
        (Prepared::Toric(ss, sc), Prepared::Toric(ts, tc)) => {
            // each target cone goes to the smallest source cone containing it
            let r: Vec<usize> = tc
                .iter()
                .map(|t| {
                    sc.iter()
                        .enumerate()
                        .filter(|(_, s)| s.contains_cone(t))
                        .min_by_key(|(_, s)| s.dim())
                        .map(|(i, _)| i)
                        .ok_or_else(|| Error::NotARefinement(format!("{:?} lies in no source cone", t.rays)))
                })
                .collect::<Result<_>>()?;
            let p = OmegaPresheaf { m: m.to_vec(), q };
            cech_pullback(
                (sc, ss.boundary, src.1.layout.as_ref().expect("toric corner")),
                (tc, ts.boundary, tgt.1.layout.as_ref().expect("toric corner")),
                &r,
                &p,
            )
        }
        _ => Err(Error::ShapeMismatch("square mixes affine and toric corners".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareEntry {
    pub weight: Vector,
    pub q: usize,
    /// Euler characteristics of the corners `X, Y, C, D`.
    pub corner_euler: [i64; 4],
    /// Homology of the total complex, by degree.
    pub total_dims: Vec<(i64, usize)>,
    pub acyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub kind: SquareKind,
    pub entries: Vec<SquareEntry>,
    pub acyclic: bool,
}

/// For each weight and `q ≤ q_max`, is the square of weight-`m` `H_q(Ω̃)`
/// complexes homotopy cartesian?
pub fn verify_square(sq: &CdSquare, weights: &[Vector], q_max: usize, coeff: Coeff) -> Result<SquareReport> {
    let corners = [prepare(&sq.x), prepare(&sq.y), prepare(&sq.c), prepare(&sq.d)];
    let mut entries = Vec::new();
    for m in weights {
        for q in 0..=q_max {
            let b: Vec<Built> = corners.iter().map(|c| build(c, m, q)).collect::<Result<_>>()?;
            let f = corner_map((&corners[0], &b[0]), (&corners[1], &b[1]), m, q)?;
            let g = corner_map((&corners[0], &b[0]), (&corners[2], &b[2]), m, q)?;
            let h = corner_map((&corners[1], &b[1]), (&corners[3], &b[3]), m, q)?;
            let k = corner_map((&corners[2], &b[2]), (&corners[3], &b[3]), m, q)?;
            let corner_euler = [0, 1, 2, 3].map(|i| b[i].complex.euler_characteristic());
            let mut it = b.into_iter().map(|x| x.complex);
            let square = ComplexSquare {
                w: it.next().expect("four corners"),
                x: it.next().expect("four corners"),
                y: it.next().expect("four corners"),
                z: it.next().expect("four corners"),
                f,
                g,
                h,
                k,
            };
            let r = mv_acyclicity(&square, coeff)?;
            entries.push(SquareEntry { weight: m.clone(), q, corner_euler, total_dims: r.dims, acyclic: r.acyclic });
        }
    }
    let acyclic = entries.iter().all(|e| e.acyclic);
    Ok(SquareReport { kind: sq.kind, entries, acyclic })
}

/// Integer points of the box `[-b, b]^n`.
pub fn weight_box(rank: usize, b: i64) -> Vec<Vector> {
    let mut out = Vec::new();
    for_each_box_point(&vec![-b; rank], &vec![b; rank], |x| out.push(x.clone()));
    out
}

/// Weights of an affine square with degree at most `bound`: elements of the
/// normalization of `X`, one per class modulo the units of `X`.
pub fn affine_weights(sq: &CdSquare, bound: i64) -> Result<Vec<Vector>> {
    let Corner::Affine(a) = &sq.x else {
        return Err(Error::ShapeMismatch("not an affine square".into()));
    };
    let c = a.carrier();
    let nor = normalize(c).monoid;
    Ok(nor.elements_below(c.units(), c.degree_functional(), bound))
}

/// Check that restrictions compose along every chain `ρ ≤ τ ≤ σ` of cones.
pub fn check_functoriality(p: &dyn ConePresheaf, fan: &Fan, boundary: bool) -> Result<bool> {
    for s in fan.cones() {
        for t in s.faces() {
            for r in t.faces() {
                let direct = p.restrict((s, boundary), (&r, boundary))?;
                let st = p.restrict((s, boundary), (&t, boundary))?;
                let tr = p.restrict((&t, boundary), (&r, boundary))?;
                let via: Vec<Column> = compose_columns(&tr, &st);
                let norm = |v: Vec<Column>| -> Vec<Column> {
                    v.into_iter().map(|c| c.into_iter().filter(|e| e.1 != 0).collect()).collect()
                };
                if norm(direct) != norm(via) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vector {
        x.to_vec()
    }

    fn plane() -> Fan {
        Fan::new(2, &[vec![v(&[1, 0]), v(&[0, 1])]]).unwrap()
    }

    fn blown_up_plane() -> Fan {
        plane().stellar_subdivide(&[1, 1]).unwrap()
    }

    fn gens(a: &AffineMonoid) -> Vec<Vector> {
        let mut g = a.generators().to_vec();
        g.sort();
        g
    }

    #[test]
    fn dual_monoids() {
        let q = Cone::new(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(gens(&q.dual_monoid()), vec![v(&[0, 1]), v(&[1, 0])]);
        let a1 = Cone::new(2, &[v(&[0, 1]), v(&[2, -1])]).unwrap();
        assert_eq!(gens(&a1.dual_monoid()), vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
        let ray = Cone::new(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(gens(&ray.dual_monoid()), vec![v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn cone_validation() {
        assert!(Cone::new(2, &[v(&[1, 0]), v(&[-1, 0])]).is_err());
        assert!(Cone::new(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 1])]).is_err());
        assert_eq!(Cone::new(2, &[v(&[2, 0])]).unwrap().rays(), &[v(&[1, 0])]);
    }

    #[test]
    fn schemes_from_fans() {
        assert_eq!(scheme_from_fan(&plane()).points(), 4);
        let p1 = Fan::new(1, &[vec![v(&[1])], vec![v(&[-1])]]).unwrap();
        let s = scheme_from_fan(&p1);
        assert_eq!(s.points(), 3);
        assert_eq!(s.generic_point(), Some(0));
        assert!(s.check_localization());
        assert_eq!(scheme_from_fan(&Fan::empty(2)).points(), 0);
        assert!(scheme_from_fan(&blown_up_plane()).check_localization());
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let bad = Fan::new(2, &[vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[1, 1]), v(&[-1, 1])]]);
        assert!(matches!(bad, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn subdivisions() {
        let b = blown_up_plane();
        assert_eq!(b.maximal_cones().len(), 2);
        assert!(b.is_smooth());
        assert!(plane().check_refinement(&b).is_ok());
        let a1 = Fan::new(2, &[vec![v(&[0, 1]), v(&[2, -1])]]).unwrap();
        assert!(!a1.is_smooth());
        assert_eq!(a1.cones().last().unwrap().multiplicity(), Some(2));
        let r = a1.stellar_subdivide(&[1, 0]).unwrap();
        assert_eq!(r.maximal_cones().len(), 2);
        assert!(r.is_smooth());
        assert_eq!(plane().stellar_subdivide(&[1, 0]).unwrap(), plane());
        assert!(matches!(plane().stellar_subdivide(&[-1, 0]), Err(Error::RayOutsideSupport)));
        let half = Fan::new(2, &[vec![v(&[1, 0]), v(&[1, 1])]]).unwrap();
        assert!(plane().check_refinement(&half).is_err());
    }

    #[test]
    fn positivity_examples() {
        let b = blown_up_plane();
        assert!(positivity(&[1, 1], b.cones()));
        let c = Cone::new(2, &[v(&[1, 1]), v(&[0, 1])]).unwrap();
        assert!(!positivity(&[1, 0], &[c]));
        assert!(positivity(&[1, 0], &[Cone::zero(2)]));
    }

    #[test]
    fn cech_examples() {
        let y = Site::whole(&blown_up_plane());
        let f = Coeff::Prime(2);
        assert_eq!(cech(&y, &PositivityPresheaf { m: v(&[1, 1]) }, f).unwrap(), vec![1, 0]);
        assert_eq!(cech(&y, &PositivityPresheaf { m: v(&[1, 0]) }, f).unwrap(), vec![0, 0]);
        let zero = TablePresheaf {
            values: blown_up_plane().cones().iter().map(|c| ((c.clone(), false), 0)).collect(),
            maps: BTreeMap::new(),
        };
        assert_eq!(cech(&y, &zero, f).unwrap(), vec![0, 0]);
        assert!(cech(&y, &TablePresheaf::default(), f).is_err());
    }

    #[test]
    fn lemma_on_the_blowup() {
        let (x, y) = (plane(), blown_up_plane());
        let r = verify_l312(&x, &y, &[1, 1], Coeff::Rationals).unwrap();
        assert!(r.agree);
        assert_eq!(r.coarse, vec![1, 0]);
        assert_eq!(r.pullback_ranks, vec![1, 0]);
        let r = verify_l312(&x, &y, &[1, 0], Coeff::Rationals).unwrap();
        assert!(r.agree);
        assert_eq!(r.fine, vec![0, 0]);
        assert!(verify_l312(&x, &x, &[1, 1], Coeff::Rationals).unwrap().agree);
        assert!(matches!(verify_l312(&y, &x, &[1, 1], Coeff::Rationals), Err(Error::NotARefinement(_))));
    }

    #[test]
    fn omega_presheaf_matches_dual_monoids() {
        let fan = blown_up_plane();
        for c in fan.cones() {
            let a = PctfMonoid::cancellative(c.dual_monoid());
            for m in weight_box(2, 2) {
                let direct = toric_omega_lattice(c, false, &m);
                let generic = affine_lattice(&a, &m);
                assert_eq!(direct.map(|l| l.basis().to_vec()), generic.map(|l| l.basis().to_vec()), "{c:?} {m:?}");
            }
        }
        for q in 0..3 {
            let p = OmegaPresheaf { m: v(&[1, 0]), q };
            assert!(check_functoriality(&p, &fan, false).unwrap());
            assert!(check_functoriality(&p, &fan, true).unwrap());
        }
    }

    #[test]
    fn wedge_of_index_two() {
        let s = Lattice::generated_by(2, &[v(&[2, 0]), v(&[0, 1])]);
        let t = Lattice::full(2);
        assert_eq!(wedge_columns(&s, &t, 2), vec![vec![(0, 2)]]);
        assert_eq!(wedge_columns(&s, &t, 0), vec![vec![(0, 1)]]);
    }

    #[test]
    fn blowup_square_is_acyclic() {
        let sq = blowup_square(&plane(), &[1, 1]).unwrap();
        let r = verify_square(&sq, &weight_box(2, 2), 2, Coeff::Prime(2)).unwrap();
        assert!(r.acyclic, "{:?}", r.entries.iter().filter(|e| !e.acyclic).collect::<Vec<_>>());
    }

    #[test]
    fn affine_squares_are_acyclic() {
        let ex = AffineMonoid::new(2, &[v(&[2, 0]), v(&[1, 1]), v(&[0, 2]), v(&[2, 1]), v(&[1, 2])]).unwrap();
        let sq = conductor_square(&ex).unwrap();
        let w = affine_weights(&sq, 4).unwrap();
        assert!(verify_square(&sq, &w, 2, Coeff::Prime(2)).unwrap().acyclic);

        let axes = PctfMonoid::new(AffineMonoid::free(2), &[v(&[1, 1])]).unwrap();
        let sq = closed_cover_square(&axes, &[v(&[1, 0])], &[v(&[0, 1])]).unwrap();
        let w = affine_weights(&sq, 4).unwrap();
        assert!(verify_square(&sq, &w, 2, Coeff::Prime(2)).unwrap().acyclic);
        assert!(closed_cover_square(&axes, &[v(&[1, 0])], &[v(&[2, 0])]).is_err());

        let cusp = PctfMonoid::cancellative(AffineMonoid::new(1, &[v(&[2]), v(&[3])]).unwrap());
        let sq = sn_square(&cusp);
        let w = affine_weights(&sq, 6).unwrap();
        assert!(verify_square(&sq, &w, 2, Coeff::Rationals).unwrap().acyclic);
    }

    #[test]
    fn zariski_square_on_the_projective_line() {
        let p1 = Fan::new(1, &[vec![v(&[1])], vec![v(&[-1])]]).unwrap();
        let max = p1.maximal_cones();
        let sq = zariski_square(&p1, &max[..1], &max[1..]).unwrap();
        let r = verify_square(&sq, &weight_box(1, 2), 1, Coeff::Rationals).unwrap();
        assert!(r.acyclic);
    }

    #[test]
    fn broken_square_is_detected() {
        // the subdivision map replaced by the identity fan is not cartesian
        // once the boundaries are dropped
        let sq = CdSquare {
            kind: SquareKind::Blowup,
            x: Corner::Toric(Site::whole(&plane())),
            y: Corner::Toric(Site::whole(&blown_up_plane())),
            c: Corner::Empty,
            d: Corner::Empty,
        };
        assert!(!verify_square(&sq, &weight_box(2, 1), 1, Coeff::Rationals).unwrap().acyclic);
    }
}
