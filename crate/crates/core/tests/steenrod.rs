use etasphere::steenrod::checks::{
    action_table, antipode_check, conjugate_triangularity, derivation_check, hopf_checks, relation_check,
};
use etasphere::steenrod::pages::{
    kgl_ko_mismatches, ko_homology_mismatches, model, pages_for, ModelKind, PageBounds,
};
use etasphere::steenrod::{MotivicBase, Side, SteenrodAlgebra, SteenrodError};

fn algebra(base: &str, t: u32) -> SteenrodAlgebra {
    SteenrodAlgebra::new(&MotivicBase::lookup(base).unwrap(), t).unwrap()
}

const BASES: [&str; 4] = ["real_closed", "quadratically_closed", "finite_field_3mod4", "finite_field_1mod4"];

#[test]
fn products() {
    let a = algebra("real_closed", 12);
    let t0 = a.parse("tau0").unwrap();
    assert_eq!(a.format(&a.product(&t0, &t0).unwrap()), "ρ τ₁ + ρ τ₀ ξ₁ + τ ξ₁");
    let p = a.product(&a.parse("xi1").unwrap(), &a.parse("xi2").unwrap()).unwrap();
    assert_eq!(p, a.parse("xi1 xi2").unwrap());
    let big = a.parse("xi3").unwrap();
    assert!(matches!(a.product(&big, &big), Err(SteenrodError::Graded(_))));
}

#[test]
fn coproduct_examples() {
    let a = algebra("real_closed", 12);
    let mut d = a.tensor_terms(&a.coproduct(&a.parse("xi2").unwrap()).unwrap());
    d.sort();
    let mut want: Vec<(String, String)> =
        [("1", "ξ₂"), ("ξ₁²", "ξ₁"), ("ξ₂", "1")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    want.sort();
    assert_eq!(d, want);
}

#[test]
fn relations_and_hopf_axioms() {
    for base in BASES {
        let a = algebra(base, 10);
        let r = relation_check(&a).unwrap();
        assert!(r.ok(), "{base}: {r:?}");
        for r in hopf_checks(&a, 8).unwrap() {
            assert!(r.ok(), "{base}: {r:?}");
        }
        let r = antipode_check(&a, 8).unwrap();
        assert!(r.ok(), "{base}: {r:?}");
    }
}

#[test]
fn full_action_table() {
    for base in BASES {
        let a = algebra(base, 16);
        let table = action_table(&a).unwrap();
        assert_eq!(table.len(), 14);
        for f in &table {
            assert!(f.ok(), "{base}: {f:?}");
        }
    }
}

#[test]
fn action_examples() {
    let a = algebra("real_closed", 12);
    let t0 = a.operator("tau0").unwrap();
    let one = a.dual_action(&t0, Side::L, &a.parse("tau0").unwrap()).unwrap();
    assert_eq!(a.format(&one), "1");
    let x1 = a.operator("xi1").unwrap();
    assert!(a.dual_action(&x1, Side::L, &a.parse("xi1^2").unwrap()).unwrap().is_zero());
    assert!(matches!(a.operator("sq2"), Err(SteenrodError::UnknownOperator(_))));
}

#[test]
fn derivation_properties() {
    for base in BASES {
        let a = algebra(base, 12);
        for (op, excluded) in [("tau0", vec![]), ("tau1", vec!["tau0"]), ("xi1", vec!["tau0", "tau1"])] {
            let r = derivation_check(&a, op, &excluded).unwrap();
            assert!(r.ok(), "{base} {op}: {r:?}");
        }
    }
}

#[test]
fn leibniz_boundaries() {
    let a = algebra("real_closed", 12);
    // excluding τ₀ already suffices for ξ̂₁
    assert!(derivation_check(&a, "xi1", &["tau0"]).unwrap().ok());
    // τ̂₁(τ₀²) = ρ
    let r = derivation_check(&a, "tau1", &[]).unwrap();
    assert_eq!(r.failures, vec!["tau0·tau0"]);
    let r = derivation_check(&a, "xi1", &[]).unwrap();
    assert!(!r.failures.is_empty());
}

#[test]
fn conjugate_basis_triangular() {
    let a = algebra("real_closed", 8);
    let r = conjugate_triangularity(&a, 8).unwrap();
    assert!(r.ok(), "{r:?}");
    assert!(r.off_diagonal > 0);
}

#[test]
fn ko_homology_is_tau_ring() {
    for base in BASES {
        let b = MotivicBase::lookup(base).unwrap();
        assert!(ko_homology_mismatches(&b, 10, 2).unwrap().is_empty(), "{base}");
        assert!(kgl_ko_mismatches(&b, 10, 2).unwrap().is_empty(), "{base}");
    }
}

#[test]
fn delta_squares_to_zero_everywhere() {
    let b = MotivicBase::lookup("real_closed").unwrap();
    for kind in [ModelKind::Hz2, ModelKind::Hz, ModelKind::Kgl, ModelKind::Ko] {
        let m = model(kind, &b, 14).unwrap();
        for g in m.algebra.generators() {
            let x = m.algebra.generator(&g.name).unwrap();
            let dd = m.algebra.apply(&m.delta, &m.algebra.apply(&m.delta, &x).unwrap()).unwrap();
            assert!(dd.is_zero(), "{kind:?} {}", g.name);
        }
    }
}

#[test]
fn ko_pages_real_closed() {
    let b = MotivicBase::lookup("real_closed").unwrap();
    let p = pages_for(ModelKind::Ko, &b, PageBounds::new(16, 6)).unwrap();
    assert_eq!(p.collapse.collapses_at, Some(2));
    assert!(p.collapse.concentrated_in_stems_0_mod_4);
    assert!(p.collapse.positive_filtration_stems.contains(&4));
    assert!(p.collapse.positive_filtration_stems.contains(&8));
    // h τ₂ sits at (4, 1, -4)
    let e = p.e2.entries.iter().find(|e| (e.s, e.f, e.w) == (4, 1, -4)).unwrap();
    assert_eq!(e.basis, vec!["h τ₂"]);
    // f = 0 row is the cycle space
    let m = model(ModelKind::Ko, &b, p.truncation).unwrap();
    let c = etasphere::steenrod::pages::cell(3, -3);
    assert_eq!(p.e2.get(3, 0, -3), m.algebra.homology(&m.delta, &c).unwrap().cycles);
}

#[test]
fn pages_bounds() {
    let b = MotivicBase::lookup("real_closed").unwrap();
    let m = model(ModelKind::Ko, &b, 10).unwrap();
    let r = etasphere::steenrod::pages::bockstein_pages(&m, PageBounds::new(16, 6));
    assert!(matches!(r, Err(SteenrodError::BoundsExceeded { .. })));
}

#[test]
fn unknown_base() {
    assert!(matches!(MotivicBase::lookup("mars"), Err(SteenrodError::UnknownBase(_))));
}

#[test]
fn sphere_pages_without_milnor_generators() {
    let b = MotivicBase::lookup("quadratically_closed").unwrap();
    // hᶠ sits at (0, f, -f), inside the window while f ≤ smax
    let p = pages_for(ModelKind::Sphere, &b, PageBounds::new(4, 3)).unwrap();
    assert_eq!(p.collapse.collapses_at, Some(1));
    assert!(p.e1.entries.iter().all(|e| e.s == 0 && e.dim == 1));
    assert_eq!(p.e1.entries.len(), 4);
}
