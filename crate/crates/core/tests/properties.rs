use homcode::covering::{d_cover, find_gluing_cycle, CoverSpec};
use homcode::css::{build_css, formulas};
use homcode::distance::{oracle_distance, OracleOutcome, DEFAULT_BUDGET};
use homcode::generators::{builtin, gen_even, gen_odd, Builtin, EvenFamilyParams, OddFamilyParams};
use homcode::map::{parse_map, to_map_string, PolygonalMap};
use proptest::prelude::*;

fn relabel(m: &PolygonalMap, perm: &[usize], shift: usize) -> PolygonalMap {
    let faces = m
        .faces()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            let len = g.len();
            g.rotate_left(shift % len);
            g
        })
        .collect();
    PolygonalMap::from_faces(faces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn odd_family_matches_formulas(m2 in 0u64..6) {
        let p = OddFamilyParams::new(3, m2).unwrap();
        let m = gen_odd(&p).unwrap();
        prop_assert_eq!(m.euler_characteristic(), formulas::odd_family_euler(3, m2));
        let c = build_css(&m).unwrap();
        let f = formulas::odd_family(3, m2);
        prop_assert_eq!((c.n() as u64, c.k() as u64), (f.n, f.k));
        prop_assert!(m.is_isomorphic(&m.dual().unwrap()));
    }

    #[test]
    fn even_family_matches_formulas(m2 in 0u64..6) {
        let p = EvenFamilyParams::new(3, m2).unwrap();
        let m = gen_even(&p).unwrap();
        prop_assert_eq!(m.euler_characteristic(), formulas::even_family_euler(3, m2));
        let c = build_css(&m).unwrap();
        prop_assert_eq!(c.n(), 3 * m.num_vertices());
        prop_assert!(m.is_isomorphic(&m.dual().unwrap()));
    }

    #[test]
    fn relabeling_preserves_isomorphism_class(
        perm in Just((0..20).collect::<Vec<usize>>()).prop_shuffle(),
        shift in 0usize..5,
    ) {
        let k3 = builtin(Builtin::K3);
        let r = relabel(&k3, &perm, shift);
        prop_assert!(k3.is_isomorphic(&r));
        prop_assert!(r.is_isomorphic(&k3));
        prop_assert_eq!(r.vertex_type(), k3.vertex_type());
        prop_assert_eq!(r.is_orientable(), k3.is_orientable());
    }

    #[test]
    fn cover_counts_scale(d in 1usize..5, which in prop_oneof![Just(Builtin::N1), Just(Builtin::K3)]) {
        let base = builtin(which);
        let cycle = find_gluing_cycle(&base).unwrap();
        let c = d_cover(&base, &CoverSpec::new(cycle, d).unwrap()).unwrap();
        prop_assert_eq!(c.num_vertices(), d * base.num_vertices());
        prop_assert_eq!(c.num_edges(), d * base.num_edges());
        prop_assert_eq!(c.num_faces(), d * base.num_faces());
        prop_assert_eq!(c.vertex_type(), base.vertex_type());
        let code = build_css(&c).unwrap();
        prop_assert_eq!(code.k() as i64, 2 - c.euler_characteristic());
    }

    #[test]
    fn oracle_is_monotone_in_cap(lo in 1usize..4, extra in 0usize..2) {
        let code = build_css(&builtin(Builtin::K3)).unwrap();
        let hi = lo + extra;
        let a = oracle_distance(&code, lo, DEFAULT_BUDGET).unwrap();
        let b = oracle_distance(&code, hi, DEFAULT_BUDGET).unwrap();
        if let (OracleOutcome::Found { d: da, .. }, OracleOutcome::Found { d: db, .. }) = (&a, &b) {
            prop_assert!(db <= da);
        }
    }
}

#[test]
fn map_text_round_trips() {
    for m in [builtin(Builtin::N1), builtin(Builtin::K3)] {
        let text = to_map_string(&m);
        let back = parse_map(&text).unwrap().map;
        assert_eq!(back.faces(), m.faces());
        assert_eq!(to_map_string(&back), text);
    }
}

#[test]
fn duals_keep_edges_and_euler_characteristic() {
    let maps = [
        builtin(Builtin::N1),
        gen_odd(&OddFamilyParams::new(4, 0).unwrap()).unwrap(),
        gen_even(&EvenFamilyParams::new(3, 2).unwrap()).unwrap(),
    ];
    for m in maps {
        let d = m.dual().unwrap();
        assert_eq!(d.num_edges(), m.num_edges());
        assert_eq!(d.euler_characteristic(), m.euler_characteristic());
        assert!(d.dual().unwrap().is_isomorphic(&m));
    }
    let n1 = builtin(Builtin::N1);
    assert_eq!(n1.dual().unwrap().vertex_type().to_string(), "[7^3]");
}

#[test]
fn isomorphism_is_transitive_on_catalog() {
    let k3 = builtin(Builtin::K3);
    let a = relabel(&k3, &(0..20).rev().collect::<Vec<_>>(), 1);
    let b = relabel(&a, &(0..20).map(|v| (v + 7) % 20).collect::<Vec<_>>(), 2);
    assert!(k3.is_isomorphic(&a) && a.is_isomorphic(&b) && k3.is_isomorphic(&b));
}
