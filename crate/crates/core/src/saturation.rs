//! Group completion, normalization, seminormalization and conductors of
//! affine monoids.
//!
//! The seminormalization is computed exactly from the face decomposition
//! `C_sn = ⋃_F (relint F ∩ gp(C ∩ F))`. The "2z and 3z present ⇒ z present"
//! closure is run alongside it inside a degree window and serves as the
//! witness for every new generator.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cone::zonotope_points;
use crate::error::{Error, Result};
use crate::lattice::{add, dot, scale, sub, Lattice, Vector};
use crate::monoid::{AffineMonoid, Ideal, PctfMonoid};

/// Why a generator of the output is in the saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Already a generator of the input.
    Input,
    /// `k·z ∈ C` for this smallest `k`.
    Integral { k: i64 },
    /// `2z` and `3z` were present when `z` was added by the closure.
    SquareCube,
    /// Found only by the face decomposition, not by the windowed closure.
    Face,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: Vector,
    pub reason: Reason,
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub monoid: AffineMonoid,
    pub witnesses: Vec<Witness>,
    /// Degree window used by the closure (seminormalization only).
    pub window: i64,
    /// The windowed closure reproduced the exact answer and one more window
    /// added nothing.
    pub certified: bool,
}

pub fn group_completion(c: &AffineMonoid) -> Lattice {
    c.group().clone()
}

fn smallest_multiple_in(c: &AffineMonoid, z: &[i64]) -> Option<i64> {
    (1..=64).find(|&k| c.contains(&scale(k, z)))
}

/// Hilbert basis of `cone(C) ∩ gp(C)` (with `±` a basis of its units).
pub fn normalize(c: &AffineMonoid) -> SaturationResult {
    let group = c.group();
    let mut cands: Vec<Vector> = c.generators().to_vec();
    cands.extend(zonotope_points(c.rank(), c.generators(), |x| group.contains(x)));
    let monoid = AffineMonoid::minimal_from(c.rank(), &cands).expect("candidates share the rank");
    let witnesses = witnesses_for(c, &monoid, |z| {
        smallest_multiple_in(c, z).map_or(Reason::Face, |k| Reason::Integral { k })
    });
    SaturationResult { monoid, witnesses, window: 0, certified: true }
}

fn witnesses_for(c: &AffineMonoid, out: &AffineMonoid, mut why: impl FnMut(&Vector) -> Reason) -> Vec<Witness> {
    out.generators()
        .iter()
        .map(|g| Witness {
            element: g.clone(),
            reason: if c.contains(g) { Reason::Input } else { why(g) },
        })
        .collect()
}

/// Is `v` in the seminormalization of `c`? Exactly: `v ∈ cone(C)` and
/// `v ∈ gp(C ∩ F)` for the face `F` carrying `v` in its relative interior.
pub fn sn_contains(c: &AffineMonoid, v: &[i64]) -> bool {
    if v.len() != c.rank() || !c.geometry().contains(v) {
        return false;
    }
    let face = c.geometry().face_of_point(v);
    let gens: Vec<Vector> = face.iter().map(|&i| c.generators()[i].clone()).collect();
    Lattice::generated_by(c.rank(), &gens).contains(v)
}

fn exact_seminormalization(c: &AffineMonoid) -> AffineMonoid {
    let mut cands: Vec<Vector> = c.generators().to_vec();
    for face in c.geometry().faces() {
        let gens: Vec<Vector> = face.iter().map(|&i| c.generators()[i].clone()).collect();
        if gens.is_empty() {
            continue;
        }
        let lat = Lattice::generated_by(c.rank(), &gens);
        let doubled: Vec<Vector> = gens.iter().map(|g| scale(2, g)).collect();
        cands.extend(zonotope_points(c.rank(), &doubled, |z| {
            lat.contains(z) && c.geometry().face_of_point(z) == face
        }));
    }
    AffineMonoid::minimal_from(c.rank(), &cands).expect("candidates share the rank")
}

/// Run "2z, 3z ∈ M ⇒ z ∈ M" from `c` over the elements of `A_nor` of degree
/// at most `window`. Returns the closure and the elements added, in order.
fn closure(c: &AffineMonoid, nor: &AffineMonoid, window: i64) -> (AffineMonoid, Vec<Vector>) {
    let deg = c.degree_functional().to_vec();
    let cands = nor.elements_below(c.units(), &deg, window);
    let mut m = c.clone();
    let mut added = Vec::new();
    loop {
        let mut grew = false;
        for z in &cands {
            if !m.contains(z) && m.contains(&scale(2, z)) && m.contains(&scale(3, z)) {
                let mut g = m.generators().to_vec();
                g.push(z.clone());
                m = AffineMonoid::new(c.rank(), &g).expect("same rank");
                added.push(z.clone());
                grew = true;
            }
        }
        if !grew {
            return (m, added);
        }
    }
}

/// Default closure window: twice the largest degree of a Hilbert basis
/// element of the normalization.
pub fn default_window(c: &AffineMonoid) -> i64 {
    let nor = normalize(c).monoid;
    2 * nor.generators().iter().map(|g| c.degree(g)).max().unwrap_or(0).max(1)
}

/// Seminormalization, doubling the closure window from the default until the
/// closure reaches the exact answer (at most eight times).
pub fn seminormalize(c: &AffineMonoid) -> SaturationResult {
    let mut w = default_window(c);
    let mut r = seminormalize_with_window(c, w);
    for _ in 0..8 {
        if r.certified {
            break;
        }
        w *= 2;
        r = seminormalize_with_window(c, w);
    }
    r
}

pub fn seminormalize_with_window(c: &AffineMonoid, window: i64) -> SaturationResult {
    let exact = exact_seminormalization(c);
    let nor = normalize(c).monoid;
    let (closed, added) = closure(c, &nor, window);
    debug_assert!(exact.contains_monoid(&closed));
    let certified = closed.same_monoid(&exact) && closure(c, &nor, 2 * window).0.same_monoid(&closed);
    let witnesses = witnesses_for(c, &exact, |z| {
        if closed.contains(z) && added.iter().any(|a| a == z || closed.contains(&sub(z, a))) {
            Reason::SquareCube
        } else {
            Reason::Face
        }
    });
    SaturationResult { monoid: exact, witnesses, window, certified }
}

/// `(C_sn, √(I·C_sn))`.
pub fn seminormalize_pctf(a: &PctfMonoid) -> PctfMonoid {
    if a.is_zero_monoid() {
        return a.clone();
    }
    let sn = seminormalize(a.carrier()).monoid;
    PctfMonoid::new(sn, a.ideal().generators())
        .expect("ideal generators stay nonunit elements of the seminormalization")
        .reduce()
}

pub fn is_normal(c: &AffineMonoid) -> bool {
    c.same_monoid(&normalize(c).monoid)
}

pub fn is_seminormal(c: &AffineMonoid) -> bool {
    c.generators().iter().all(|g| c.contains(g)) && c.same_monoid(&exact_seminormalization(c))
}

/// Generators of `b` as an `a`-module: `b = ⋃ⱼ (a + xⱼ)`.
pub fn module_generators(a: &AffineMonoid, b: &AffineMonoid) -> Result<Vec<Vector>> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    if !b.contains_monoid(a) {
        return Err(Error::Invalid("base monoid is not contained in the extension".into()));
    }
    // each generator of b needs a multiple in a
    let mut orders = Vec::new();
    for h in b.generators() {
        if !a.geometry().contains(h) {
            return Err(Error::NotFinite);
        }
        orders.push(smallest_multiple_in(a, h).ok_or(Error::NotFinite)?);
    }
    let mut cands: BTreeSet<Vector> = BTreeSet::new();
    let mut counts = alloc::vec![0i64; orders.len()];
    loop {
        let x = b
            .generators()
            .iter()
            .zip(&counts)
            .fold(crate::lattice::zero(a.rank()), |acc, (h, &k)| add(&acc, &scale(k, h)));
        cands.insert(x);
        let mut i = 0;
        loop {
            if i == counts.len() {
                return Ok(minimal_module_generators(a, cands.into_iter().collect()));
            }
            counts[i] += 1;
            if counts[i] < orders[i] {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn minimal_module_generators(a: &AffineMonoid, mut cands: Vec<Vector>) -> Vec<Vector> {
    cands.sort_by(|x, y| a.degree(x).cmp(&a.degree(y)).then(x.cmp(y)));
    let mut kept: Vec<Vector> = Vec::new();
    for x in cands {
        if !kept.iter().any(|y| a.contains(&sub(&x, y))) {
            kept.push(x);
        }
    }
    kept
}

/// Coset representatives `x_j` with `C_sn = ⋃ (C + x_j)`.
pub fn finiteness(c: &AffineMonoid) -> Vec<Vector> {
    module_generators(c, &seminormalize(c).monoid).expect("the seminormalization is finite over the input")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conductor {
    /// `b ⊆ a`: the conductor is all of `a`.
    Whole,
    Proper(Ideal),
}

#[derive(Clone, Debug)]
pub struct ConductorResult {
    pub conductor: Conductor,
    pub module_generators: Vec<Vector>,
    /// Degree bound at which the generator list stabilized.
    pub window: i64,
}

/// `{x ∈ a : x + b ⊆ a}` for a finite extension `a ⊆ b`.
pub fn conductor(a: &AffineMonoid, b: &AffineMonoid) -> Result<ConductorResult> {
    let gens = module_generators(a, b)?;
    if gens.iter().all(|x| a.contains(x)) {
        return Ok(ConductorResult { conductor: Conductor::Whole, module_generators: gens, window: 0 });
    }
    let deg = a.degree_functional().to_vec();
    let top = a
        .generators()
        .iter()
        .chain(&gens)
        .map(|g| dot(&deg, g))
        .max()
        .unwrap_or(1)
        .max(1);
    let in_conductor = |x: &Vector| gens.iter().all(|m| a.contains(&add(x, m)));
    let compute = |w: i64| -> Ideal {
        let members: Vec<Vector> = a.elements_below(a.units(), &deg, w)
            .into_iter()
            .filter(|x| in_conductor(x))
            .collect();
        Ideal::new(a, &members).expect("conductor elements are nonunits of the base")
    };
    let mut w = 2 * top;
    let mut current = compute(w);
    for _ in 0..6 {
        let next = compute(2 * w);
        if next.same_ideal(a, &current) {
            return Ok(ConductorResult { conductor: Conductor::Proper(current), module_generators: gens, window: w });
        }
        current = next;
        w *= 2;
    }
    Err(Error::NotFinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
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
    fn group_completions() {
        assert_eq!(group_completion(&cusp()).basis(), &[vec![1]]);
        assert_eq!(group_completion(&m(2, &[&[2, 0], &[0, 2]])).basis(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(group_completion(&AffineMonoid::free(2)).rank(), 2);
    }

    #[test]
    fn normalizations() {
        assert_eq!(normalize(&cusp()).monoid.generators(), &[vec![1]]);
        assert_eq!(normalize(&ex115()).monoid.generators(), &[vec![0, 1], vec![1, 0]]);
        let n2 = AffineMonoid::free(2);
        assert_eq!(normalize(&n2).monoid, n2);
        // A_1 singularity: ⟨(2,0),(1,1),(0,2)⟩ is already normal
        let a1 = m(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(is_normal(&a1));
        let w = normalize(&cusp()).witnesses;
        assert_eq!(w, vec![Witness { element: vec![1], reason: Reason::Integral { k: 2 } }]);
    }

    #[test]
    fn seminormalizations() {
        let s = seminormalize(&cusp());
        assert_eq!(s.monoid.generators(), &[vec![1]]);
        assert!(s.certified);
        assert_eq!(s.witnesses[0].reason, Reason::SquareCube);
        let e = seminormalize(&ex115());
        assert!(e.monoid.same_monoid(&ex115()));
        assert!(e.certified);
        let t = seminormalize(&m(2, &[&[2, 0], &[3, 0], &[0, 1]]));
        assert_eq!(t.monoid.generators(), &[vec![0, 1], vec![1, 0]]);
        assert!(t.certified);
    }

    #[test]
    fn seminormality_flags() {
        assert!(is_seminormal(&ex115()) && !is_normal(&ex115()));
        assert!(!is_seminormal(&cusp()) && !is_normal(&cusp()));
        let n2 = AffineMonoid::free(2);
        assert!(is_seminormal(&n2) && is_normal(&n2));
    }

    #[test]
    fn seminormalization_with_units() {
        // ⟨±(2,0), (1,1), (0,1)⟩: (1,0) is in the normalization but not in
        // the seminormalization, since 3·(1,0) is never reached
        let c = m(2, &[&[2, 0], &[-2, 0], &[1, 1], &[0, 1]]);
        assert!(!sn_contains(&c, &[1, 0]));
        assert!(normalize(&c).monoid.contains(&[1, 0]));
        let s = seminormalize(&c);
        assert!(s.monoid.same_monoid(&c));
    }

    #[test]
    fn pctf_seminormalizations() {
        let a = PctfMonoid::new(cusp(), &[vec![6]]).unwrap();
        let s = seminormalize_pctf(&a);
        assert_eq!(s.carrier().generators(), &[vec![1]]);
        assert_eq!(s.ideal().generators(), &[vec![1]]);
        let axes = PctfMonoid::new(AffineMonoid::free(2), &[vec![1, 1]]).unwrap();
        assert!(seminormalize_pctf(&axes).same_monoid(&axes));
        let n = AffineMonoid::free(1);
        let pt = PctfMonoid::new(n, &[vec![1]]).unwrap();
        assert!(seminormalize_pctf(&pt).same_monoid(&pt));
    }

    #[test]
    fn conductors() {
        let r = conductor(&ex115(), &AffineMonoid::free(2)).unwrap();
        let Conductor::Proper(i) = r.conductor else { panic!("expected a proper conductor") };
        assert_eq!(i.generators(), &[vec![1, 1], vec![1, 2], vec![2, 1]]);
        let r = conductor(&cusp(), &AffineMonoid::free(1)).unwrap();
        assert_eq!(r.module_generators, vec![vec![0], vec![1]]);
        let Conductor::Proper(i) = r.conductor else { panic!("expected a proper conductor") };
        assert_eq!(i.generators(), &[vec![2], vec![3]]);
        assert_eq!(conductor(&cusp(), &cusp()).unwrap().conductor, Conductor::Whole);
        assert_eq!(conductor(&AffineMonoid::free(1), &m(1, &[&[1], &[-1]])).unwrap_err(), Error::NotFinite);
    }

    #[test]
    fn conductor_of_seminormal_base_is_radical() {
        let a = ex115();
        let b = normalize(&a).monoid;
        let Conductor::Proper(i) = conductor(&a, &b).unwrap().conductor else { panic!() };
        let pa = PctfMonoid::cancellative(a.clone());
        assert!(pa.radical(&i).same_ideal(&a, &i));
        let pb = PctfMonoid::cancellative(b.clone());
        let ib = i.extend_to(&b);
        assert!(pb.radical(&ib).same_ideal(&b, &ib));
    }

    #[test]
    fn finiteness_representatives() {
        assert_eq!(finiteness(&cusp()), vec![vec![0], vec![1]]);
        assert_eq!(finiteness(&ex115()), vec![vec![0, 0]]);
    }

    // Oracle for the seminormalization: {n : n·x ∈ C} is a submonoid of ℕ,
    // and it contains every large integer iff its gcd is 1.
    fn eventually_all_multiples(c: &AffineMonoid, x: &[i64]) -> bool {
        use num_integer::Integer;
        (1..=96).filter(|&n| c.contains(&scale(n, x))).fold(0i64, |g, n| g.gcd(&n)) == 1
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn chain_inclusion_and_idempotence(
            gens in prop::collection::vec(prop::collection::vec(0i64..4, 2), 1..4),
        ) {
            let c = AffineMonoid::new(2, &gens).unwrap();
            let sn = seminormalize(&c);
            let nor = normalize(&c).monoid;
            prop_assert!(sn.monoid.contains_monoid(&c));
            prop_assert!(nor.contains_monoid(&sn.monoid));
            prop_assert!(seminormalize(&sn.monoid).monoid.same_monoid(&sn.monoid));
            prop_assert!(normalize(&nor).monoid.same_monoid(&nor));
            prop_assert!(is_seminormal(&sn.monoid));
            prop_assert!(is_normal(&nor));
            prop_assert!(sn.certified);
            for g in sn.monoid.generators() {
                prop_assert!(eventually_all_multiples(&c, g));
            }
        }

        #[test]
        fn sn_membership_matches_multiples(
            gens in prop::collection::vec(prop::collection::vec(0i64..4, 2), 1..4),
            x in prop::collection::vec(0i64..5, 2),
        ) {
            let c = AffineMonoid::new(2, &gens).unwrap();
            prop_assert_eq!(sn_contains(&c, &x), eventually_all_multiples(&c, &x));
        }
    }
}
