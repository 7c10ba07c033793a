//! Cross-module invariants on random Borel ideals.

use proptest::prelude::*;

use borelcell::borel::{
    ek_betti, expand_principal, intersect_borel, random_borel_minimal, BorelIdeal,
};
use borelcell::builders::Builder;
use borelcell::io::{from_json_str, to_json_string};
use borelcell::koszul::brute_intersection;
use borelcell::lattice::build_lattice;
use borelcell::resolution::{betti_from_cells, verify_resolution};
use borelcell::{Field, Monomial};

fn ideal() -> impl Strategy<Value = BorelIdeal> {
    (2usize..=4, 2u32..=3, 1usize..=3, any::<u64>())
        .prop_map(|(n, d, s, seed)| random_borel_minimal(n, d, s, seed).unwrap())
}

fn lcm_all(ms: &[Monomial]) -> Monomial {
    ms.iter()
        .skip(1)
        .fold(ms[0].clone(), |a, b| a.lcm(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn union_is_order_insensitive(i in ideal()) {
        let mut b = Builder::new();
        let qs: Vec<_> = i.borel_gens().iter().map(|g| b.build_q_principal(g).unwrap()).collect();
        let fwd = qs.iter().skip(1).fold(qs[0].clone(), |a, x| a.union(x).unwrap());
        let rev = qs.iter().rev().skip(1).fold(qs[qs.len() - 1].clone(), |a, x| a.union(x).unwrap());
        prop_assert!(fwd.same_cells(&rev));
        prop_assert!(fwd.same_cells(&b.build_q_union(&i).unwrap()));
    }

    #[test]
    fn labels_are_vertex_lcms(i in ideal()) {
        let x = Builder::new().build_q_union(&i).unwrap();
        for id in 0..x.len() {
            prop_assert_eq!(x.cell(id).label(), &lcm_all(&x.vertex_label_set(id)));
        }
    }

    #[test]
    fn restriction_depends_on_surviving_vertices(i in ideal(), pick in any::<u64>()) {
        let x = Builder::new().build_q_union(&i).unwrap();
        let l = build_lattice(i.generators()).unwrap();
        let b = &l.elements()[1 + (pick as usize) % (l.len() - 1)];
        let r = x.restrict(b).unwrap();
        let tight = lcm_all(r.vertex_labels());
        prop_assert_eq!(&r, &x.restrict(&tight).unwrap());
        let bump = b.mul(&Monomial::var(b.ambient(), 1)).unwrap();
        let wide = x.restrict(&bump).unwrap();
        if wide.vertex_labels() == r.vertex_labels() {
            prop_assert_eq!(&r, &wide);
        }
    }

    #[test]
    fn resolution_bookkeeping(i in ideal()) {
        let x = Builder::new().build_q_union(&i).unwrap();
        let r = verify_resolution(&x, i.generators(), Field::Rational, 1).unwrap();
        prop_assert!(r.passed());
        let rp = verify_resolution(&x, i.generators(), Field::Prime(32003), 2).unwrap();
        prop_assert_eq!(&r.degrees, &rp.degrees);
        let betti = betti_from_cells(&x, &r).unwrap();
        let ek = ek_betti(&i);
        prop_assert_eq!(betti.totals(), ek.clone());
        prop_assert_eq!(x.dim().unwrap() + 1, ek.len());
        let l = build_lattice(i.generators()).unwrap();
        for b in betti.support() {
            prop_assert!(l.contains(b));
        }
    }

    #[test]
    fn lattice_is_join_closed(i in ideal()) {
        let l = build_lattice(i.generators()).unwrap();
        let els = l.elements();
        for a in els.iter().step_by(3) {
            for b in els.iter().step_by(5) {
                prop_assert!(l.contains(&a.lcm(b).unwrap()));
            }
        }
        prop_assert!(l.len() <= 1 << i.generators().len().min(30));
    }

    #[test]
    fn json_round_trip(i in ideal()) {
        let x = Builder::new().build_q_union(&i).unwrap();
        let s = to_json_string(&x);
        prop_assert_eq!(from_json_str(&s).unwrap(), x);
    }

    #[test]
    fn borel_intersection_matches_brute_force(i in ideal(), pick in any::<u64>()) {
        let gens = i.generators();
        let m = &gens[(pick as usize) % gens.len()];
        let fast = intersect_borel(m, &i).unwrap();
        let brute = brute_intersection(expand_principal(m).unwrap().generators(), gens).unwrap();
        prop_assert_eq!(fast.generators(), brute.as_slice());
    }
}
