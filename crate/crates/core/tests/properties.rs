use num_integer::Integer;
use pctf_core::field::Coeff;
use pctf_core::homology::{homology, ChainComplex, ChainMap};
use pctf_core::lattice::{add, scale};
use pctf_core::monoid::{AffineMonoid, Ideal, MonoidElement, PctfMonoid};
use pctf_core::nerve::{delta_r_report, ncy_component, theta_map};
use pctf_core::saturation::{is_seminormal, normalize, seminormalize};
use pctf_core::toric::{verify_l312, Fan};
use pctf_core::Vector;
use proptest::prelude::*;

/// Sharp monoids in ℕ² given by two to four nonzero generators.
fn sharp_rank2() -> impl Strategy<Value = AffineMonoid> {
    prop::collection::vec((0i64..4, 0i64..4), 2..5).prop_filter_map("needs a nonzero generator", |gs| {
        let gens: Vec<Vector> = gs.into_iter().filter(|&(a, b)| a + b > 0).map(|(a, b)| vec![a, b]).collect();
        if gens.is_empty() {
            return None;
        }
        AffineMonoid::new(2, &gens).ok()
    })
}

fn numerical() -> impl Strategy<Value = AffineMonoid> {
    prop::collection::vec(2i64..8, 1..4).prop_map(|gs| {
        let gens: Vec<Vector> = gs.into_iter().map(|g| vec![g]).collect();
        AffineMonoid::new(1, &gens).unwrap()
    })
}

fn complexes(c: &AffineMonoid) -> Vec<ChainComplex> {
    let a = PctfMonoid::cancellative(c.clone());
    let mut out = Vec::new();
    for (i, g) in c.generators().iter().enumerate() {
        for h in &c.generators()[i..] {
            let s = ncy_component(&a, &a.classify(&add(g, h)), 4).unwrap();
            out.push(ChainComplex::from_slice(&s));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn boundaries_square_to_zero_and_euler_agrees(c in sharp_rank2()) {
        for cx in complexes(&c) {
            prop_assert!(cx.check_d_squared());
            for coeff in [Coeff::Rationals, Coeff::Prime(2), Coeff::Prime(3)] {
                prop_assert_eq!(homology(&cx, coeff).unwrap().euler_characteristic(), cx.euler_characteristic());
            }
        }
    }

    #[test]
    fn integral_homology_matches_fields(c in numerical()) {
        for cx in complexes(&c) {
            let z = homology(&cx, Coeff::Integers).unwrap();
            let q = homology(&cx, Coeff::Rationals).unwrap();
            for p in [2u64, 3] {
                let fp = homology(&cx, Coeff::Prime(p)).unwrap();
                for n in cx.lo()..=cx.hi() {
                    // universal coefficients: free rank plus p-torsion in n and n-1
                    let tors = |k: i64| -> usize {
                        if k < cx.lo() { return 0; }
                        z.torsion[(k - cx.lo()) as usize].iter().filter(|d| (*d % p as i64) == 0.into()).count()
                    };
                    prop_assert_eq!(z.dim(n), q.dim(n));
                    prop_assert_eq!(fp.dim(n), q.dim(n) + tors(n) + tors(n - 1));
                }
            }
        }
    }

    #[test]
    fn dilation_is_a_chain_map(c in sharp_rank2(), k in 2i64..4) {
        let a = PctfMonoid::cancellative(c.clone());
        let g = &c.generators()[0];
        let s = ncy_component(&a, &a.classify(g), 3).unwrap();
        let (t, f) = theta_map(&a, &s, k).unwrap();
        let (cs, ct) = (ChainComplex::from_slice(&s), ChainComplex::from_slice(&t));
        prop_assert!(ChainMap::from_slice_map(&s, &f).is_chain_map(&cs, &ct));
    }

    #[test]
    fn edgewise_subdivision_recovers_the_component(c in numerical(), r in 2usize..4) {
        let a = PctfMonoid::cancellative(c.clone());
        let x = a.classify(&c.generators()[0]);
        prop_assert!(delta_r_report(&a, &x, r, 3).unwrap().is_isomorphism());
    }

    #[test]
    fn seminormalization_is_idempotent_and_between(c in sharp_rank2()) {
        let sn = seminormalize(&c).monoid;
        prop_assert!(is_seminormal(&sn));
        prop_assert!(sn.contains_monoid(&c));
        prop_assert!(normalize(&c).monoid.contains_monoid(&sn));
        prop_assert!(seminormalize(&sn).monoid.same_monoid(&sn));
    }

    #[test]
    fn radicals_are_idempotent(c in sharp_rank2(), pick in 0usize..4, power in 1i64..4) {
        let g = c.generators()[pick % c.generators().len()].clone();
        let i = Ideal::new(&c, &[scale(power, &g)]).unwrap();
        let a = PctfMonoid::new(c.clone(), i.generators()).unwrap();
        let r = a.nilradical();
        prop_assert!(a.radical(&r).same_ideal(&c, &r));
        prop_assert!(r.contains(&c, &g));
        prop_assert!(a.reduce().is_reduced());
    }

    #[test]
    fn localization_inverts_the_element(c in sharp_rank2(), pick in 0usize..4) {
        let a = PctfMonoid::cancellative(c.clone());
        let g = c.generators()[pick % c.generators().len()].clone();
        let l = a.localize(&MonoidElement::Elem(g.clone())).unwrap();
        prop_assert!(l.units().contains(&g));
        prop_assert!(l.carrier().contains_monoid(&c));
    }

    #[test]
    fn star_subdivisions_do_not_change_cech_cohomology(x in 1i64..4, y in 1i64..4, m in prop::collection::vec(-2i64..3, 2)) {
        prop_assume!(x.gcd(&y) == 1);
        let a2 = Fan::new(2, &[vec![vec![1, 0], vec![0, 1]]]).unwrap();
        let fine = a2.stellar_subdivide(&[x, y]).unwrap();
        a2.check_refinement(&fine).unwrap();
        let r = verify_l312(&a2, &fine, &m, Coeff::Rationals).unwrap();
        prop_assert!(r.agree);
        prop_assert_eq!(r.coarse, r.fine);
    }
}

