mod common;

use common::*;
use skelsnub::analysis::{
    euler, euler_formula, fvector, isomorphic, orientable, trace_petrie, validate, vertex_figure_shape,
    vertex_symbols_constant, FlagGraph, QuadShape,
};
use skelsnub::catalog::{catalog, dual_generators};
use skelsnub::geometry::{FixedSetKind, Vector3};
use skelsnub::group::{type_set, DEFAULT_CAP};
use skelsnub::snub::{build_catalog_snub, degenerate_identity_check, DegenerateKind, SnubError};
use skelsnub::{build_snub, FiniteGroup, TypeSet};

const SECTION_7: [(&str, &str, i64, [&str; 2]); 9] = [
    ("{4,3}_3", "(24,12,24,24,24,6,8)", 2, ["4_s.3.3.3.3", "4_c.3.3.3.3"]),
    ("{6,3}_4", "(24,12,24,24,24,4,8)", 0, ["6_s.3.3.3.3", "6_c.3.3.3.3"]),
    ("{6,4}_3", "(48,24,48,48,48,8,12)", -4, ["6_s.3.3.4_c.3", "6_c.3.3.4_c.3"]),
    ("{10,5}_3", "(120,60,120,120,120,12,24)", -24, ["10_s.3.3.5_c.3", "10_c.3.3.5_c.3"]),
    ("{10,3}_5", "(120,60,120,120,120,12,40)", -8, ["10_s.3.3.3.3", "10_c.3.3.3.3"]),
    ("{6,5/2}", "(120,60,120,120,120,20,24)", -16, ["6_s.3.3.5/2.3", "6_c.3.3.5/2.3"]),
    ("{6,5}", "(120,60,120,120,120,20,24)", -16, ["6_s.3.3.5_c.3", "6_c.3.3.5_c.3"]),
    ("{10/3,5/2}", "(120,60,120,120,120,12,24)", -24, ["(10/3)_s.3.3.5/2.3", "(10/3)_c.3.3.5/2.3"]),
    ("{10/3,3}", "(120,60,120,120,120,12,40)", -8, ["(10/3)_s.3.3.3.3", "(10/3)_c.3.3.3.3"]),
];

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

fn section_8() -> [(&'static str, Vector3, &'static str, [usize; 4]); 9] {
    [
        ("{4,3}_3", Vector3::new(0.5, 0.3, sqrt(2.0) / 10.0), "4_s.3.4_s.3", [12, 24, 8, 6]),
        ("{6,3}_4", Vector3::new(0.5, 0.0, sqrt(2.0) / 10.0), "6_s.3.6_s.3", [12, 24, 4, 8]),
        ("{6,4}_3", Vector3::new(0.5, 0.1, -0.5), "6_s.4_c.6_s.4_c", [24, 48, 8, 12]),
        ("{10,5}_3", Vector3::new(PHI, 0.3, 0.0), "10_s.5_c.10_s.5_c", [60, 120, 12, 24]),
        ("{10,3}_5", Vector3::new(1.0, 0.0, 0.1), "10_s.3.10_s.3", [60, 120, 12, 40]),
        ("{6,5/2}", Vector3::new(1.0, 0.1, 0.0), "6_s.5/2.6_s.5/2", [60, 120, 20, 24]),
        ("{6,5}", Vector3::new(1.0, 0.0, 0.1), "6_s.5_c.6_s.5_c", [60, 120, 20, 24]),
        ("{10/3,5/2}", Vector3::new(1.0, 0.0, 0.1), "(10/3)_s.5/2.(10/3)_s.5/2", [60, 120, 12, 24]),
        ("{10/3,3}", Vector3::new(1.0, 0.1, 0.0), "(10/3)_s.3.(10/3)_s.3", [60, 120, 12, 40]),
    ]
}

#[test]
fn section_7_rows() {
    for (name, f, chi, symbols) in SECTION_7 {
        let s = seed_snub(name);
        assert_eq!(fvector(&s).to_string(), f, "{name}");
        assert_eq!(euler(&s), chi, "{name}");
        let sym = vertex_symbols_constant(&s).unwrap().expect("constant symbol").to_string();
        assert!(symbols.contains(&sym.as_str()), "{name}: {sym}");
        assert!(validate(&s).passed());
    }
}

#[test]
fn euler_identity_for_every_genuine_snub() {
    for e in catalog() {
        let (_, g) = setup(e.name());
        let s = build_snub(&g, &e.gens, e.cone.seed).unwrap();
        let (p, q) = (e.spec.p.rotation_order(), e.spec.q.rotation_order());
        assert_eq!(euler_formula(g.order(), p, q), Some(euler(&s)), "{}", e.name());
    }
}

#[test]
fn genuine_snubs_are_orientable() {
    for (name, ..) in SECTION_7 {
        assert_eq!(orientable(&seed_snub(name)), Ok(true), "{name}");
    }
    assert_eq!(orientable(&hemicube()), Ok(false));
}

#[test]
fn section_8_rows() {
    for (name, v, symbol, counts) in section_8() {
        let (e, g) = setup(name);
        assert_eq!(type_set(&e.gens, &v), Ok(TypeSet::S0_FIXED), "{name}");
        let s = build_snub(&g, &e.gens, v).unwrap();
        assert!(validate(&s).passed(), "{name}");
        let f = fvector(&s);
        let mut got = f.slots();
        let mut want = counts.to_vec();
        got[2..].sort_unstable();
        want[2..].sort_unstable();
        assert_eq!(got, want, "{name}");
        let sym = vertex_symbols_constant(&s).unwrap().expect("constant symbol");
        assert_eq!(sym.to_string(), symbol, "{name}");
        for x in 0..s.vertices.len() {
            assert_eq!(vertex_figure_shape(&s, x), Ok(QuadShape::Crossed), "{name} at {x}");
        }
    }
}

fn s2_axis(e: &skelsnub::CatalogEntry) -> Vector3 {
    match e.gens.s2.fixed_set() {
        FixedSetKind::Line { direction, .. } => direction,
        other => panic!("{other:?}"),
    }
}

#[test]
fn s2_degenerate_snubs_are_similar_to_their_parents() {
    let cases = [
        ("{3,3}", tetrahedron()),
        ("{4,3}", cube()),
        ("{3,4}", octahedron()),
        ("{3,5}", icosahedron()),
        ("{5,3}", dodecahedron()),
        ("{5,5/2}", great_dodecahedron()),
        ("{5/2,5}", small_stellated_dodecahedron()),
        ("{3,5/2}", great_icosahedron()),
        ("{5/2,3}", great_stellated_dodecahedron()),
    ];
    for (name, parent) in cases {
        let (e, g) = setup(name);
        let s = build_catalog_snub(e, &g, s2_axis(e)).unwrap();
        let report = degenerate_identity_check(&s, e, &g);
        assert_eq!(report.kind, DegenerateKind::Parent);
        assert!(report.matches, "{name}: {report:?}");
        assert!(similar(&s, &parent), "{name}");
    }
}

#[test]
fn s1_degenerate_snubs_of_classical_entries_are_duals() {
    for (name, dual) in [("{4,3}", octahedron()), ("{3,5}", dodecahedron()), ("{5,5/2}", small_stellated_dodecahedron())] {
        let (e, g) = setup(name);
        let axis = match e.gens.s1.fixed_set() {
            FixedSetKind::Line { direction, .. } => direction,
            other => panic!("{other:?}"),
        };
        let s = build_catalog_snub(e, &g, axis).unwrap();
        assert_eq!(degenerate_identity_check(&s, e, &g).kind, DegenerateKind::Dual);
        assert!(similar(&s, &dual), "{name}");
    }
}

#[test]
fn s1_degenerate_snubs_of_petrie_duals_collapse() {
    for e in catalog().iter().filter(|e| e.spec.is_petrie_dual) {
        let (_, g) = setup(e.name());
        let FixedSetKind::Point(o) = e.gens.s1.fixed_set() else {
            panic!("{}", e.name());
        };
        assert_eq!(build_snub(&g, &e.gens, o).unwrap_err(), SnubError::DegenerateCollapse, "{}", e.name());
    }
}

#[test]
fn s2_degenerate_snubs_of_petrie_duals_have_parent_counts() {
    for e in catalog().iter().filter(|e| e.spec.is_petrie_dual) {
        let (_, g) = setup(e.name());
        let s = build_catalog_snub(e, &g, s2_axis(e)).unwrap();
        let report = degenerate_identity_check(&s, e, &g);
        assert!(report.matches, "{}: {report:?}", e.name());
    }
}

#[test]
fn dual_generators_give_congruent_snubs() {
    for name in ["{4,3}", "{3,5}", "{5,5/2}", "{6,4}_3"] {
        let (e, g) = setup(name);
        let dual = dual_generators(&e.gens);
        let h = FiniteGroup::close(&dual, DEFAULT_CAP).unwrap();
        for v in random_ipc_points(e, &g, 2, 7) {
            let a = build_snub(&g, &e.gens, v).unwrap();
            let b = build_snub(&h, &dual, v).unwrap();
            assert_eq!(a.vertices.len(), b.vertices.len());
            assert!(a.vertices.iter().all(|p| b.vertices.iter().any(|q| (p - q).norm() < 1e-9)));
            let (fa, fb) = (fvector(&a), fvector(&b));
            assert_eq!((fa.f2[1], fa.f2[2]), (fb.f2[2], fb.f2[1]), "{name}");
            assert!(isomorphic(&a, &b));
        }
    }
}

#[test]
fn snubs_from_random_points_are_isomorphic() {
    for (k, e) in catalog().iter().enumerate() {
        let (_, g) = setup(e.name());
        let snubs: Vec<_> = random_ipc_points(e, &g, 3, 100 + k as u64)
            .into_iter()
            .map(|v| build_snub(&g, &e.gens, v).unwrap())
            .collect();
        for a in &snubs {
            for b in &snubs {
                assert!(isomorphic(a, b), "{}", e.name());
            }
        }
    }
    assert!(isomorphic(&seed_snub("{6,5}"), &seed_snub("{6,5/2}")));
    assert!(!isomorphic(&seed_snub("{4,3}_3"), &seed_snub("{6,3}_4")));
}

#[test]
fn petrie_polygon_lengths() {
    for (poly, len) in [(cube(), 6), (octahedron(), 6), (icosahedron(), 10), (dodecahedron(), 10)] {
        let g = FlagGraph::new(&poly).unwrap();
        for start in 0..g.len() {
            assert_eq!(trace_petrie(&poly, start), Ok(len));
        }
    }
    for (name, len) in [("{4,3}_3", 3), ("{6,3}_4", 4), ("{6,4}_3", 3), ("{10,5}_3", 3), ("{10,3}_5", 5)] {
        let (e, g) = setup(name);
        let parent = build_catalog_snub(e, &g, s2_axis(e)).unwrap();
        let flags = FlagGraph::new(&parent).unwrap();
        for start in 0..flags.len() {
            assert_eq!(trace_petrie(&parent, start), Ok(len), "{name}");
        }
    }
}
