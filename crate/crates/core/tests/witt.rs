use etasphere::abelian::{solve_integer, FinAbGroup};
use etasphere::linalg::IntMatrix;
use etasphere::witt::brute::brute_force_witt_ring;
use etasphere::witt::{catalog_lookup, find_ring_isomorphism, Catalog, Local2, WittError, WittPresentation};
use num_bigint::BigInt;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn v(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| b(x)).collect()
}

/// `x ∈ 2W`
fn in_twice(w: &WittPresentation, x: &[BigInt]) -> bool {
    let n = w.ngens();
    let two: Vec<Vec<BigInt>> = (0..n).map(|j| w.scale(&b(2), &w.basis(j))).collect();
    let m = IntMatrix::from_columns(n, &two).hcat(&w.additive.relation_matrix());
    solve_integer(&m, x).is_some()
}

#[test]
fn catalog_examples() {
    let rc = catalog_lookup("real_closed").unwrap();
    assert_eq!(rc.additive, FinAbGroup::free(1));
    assert_eq!(rc.minus_one, v(&[-1]));
    assert_eq!(rc.fundamental_ideal_power(1).generators, vec![v(&[2])]);
    let zh = catalog_lookup("Z_half").unwrap();
    assert_eq!(zh.additive, FinAbGroup::from_orders(1, &[b(2)]));
    let g = v(&[0, 1]);
    assert!(zh.is_zero(&zh.mul(&g, &g)));
    assert!(zh.is_zero(&zh.scale(&b(2), &g)));
    let f3 = catalog_lookup("F3").unwrap();
    assert_eq!(f3.additive, FinAbGroup::cyclic(4));
    assert!(matches!(catalog_lookup("Q_7"), Err(WittError::UnknownField(_))));
}

#[test]
fn multiplication_examples() {
    let zh = catalog_lookup("Z_half").unwrap();
    let one_plus_g = v(&[1, 1]);
    let one_minus_g = v(&[1, -1]);
    assert!(zh.eq(&zh.mul(&one_plus_g, &one_minus_g), &zh.one()));
    for w in &Catalog::bundled().fields {
        for j in 0..w.ngens() {
            let x = w.basis(j);
            assert!(w.eq(&w.mul(&w.one(), &x), &x));
        }
    }
}

#[test]
fn two_local_units() {
    let rc = catalog_lookup("real_closed").unwrap();
    assert!(rc.inverse_2local(&rc.one()).is_some());
    let hyperbolic = rc.add(&rc.one(), &rc.minus_one);
    assert_eq!(rc.rank(&hyperbolic), 0);
    assert!(rc.inverse_2local(&hyperbolic).is_none());
    let zh = catalog_lookup("Z_half").unwrap();
    let inv = zh.inverse_2local(&v(&[1, 1])).unwrap();
    assert!(zh.local_eq(&inv, &Local2::from(v(&[1, -1]))));
}

#[test]
fn every_odd_rank_element_inverts() {
    for w in &Catalog::bundled().fields {
        let samples: Vec<Vec<BigInt>> = match w.additive.elements() {
            Some(e) => e,
            None => {
                let n = w.ngens();
                let mut out = Vec::new();
                for a in -5i64..=5 {
                    for t in 0..2 {
                        let mut x = vec![b(0); n];
                        x[0] = b(a);
                        if n > 1 {
                            x[1] = b(t);
                        }
                        out.push(x);
                    }
                }
                out
            }
        };
        for x in samples {
            let unit = w.rank(&x) == 1;
            let inv = w.inverse_2local(&x);
            assert_eq!(unit, inv.is_some(), "{} {x:?}", w.name);
            if let Some(inv) = inv {
                let p = w.local_mul(&inv, &Local2::from(x.clone()));
                assert!(w.local_eq(&p, &Local2::from(w.one())));
            }
        }
    }
}

#[test]
fn ideal_powers() {
    let rc = catalog_lookup("real_closed").unwrap();
    assert_eq!(rc.fundamental_ideal_power(2).generators, vec![v(&[4])]);
    let qc = catalog_lookup("quadratically_closed").unwrap();
    assert!(qc.fundamental_ideal_power(1).subgroup.is_zero());
    for w in &Catalog::bundled().fields {
        assert_eq!(w.fundamental_ideal_power(0).subgroup, w.additive);
        let k = w.vcd2.expect("finite vcd2") as usize + 1;
        for x in w.ideal_power_generators(k) {
            assert!(in_twice(w, &x), "{}: {x:?}", w.name);
        }
    }
}

#[test]
fn rank_is_multiplicative() {
    for w in &Catalog::bundled().fields {
        for i in 0..w.ngens() {
            for j in 0..w.ngens() {
                let p = w.mul(&w.basis(i), &w.basis(j));
                assert_eq!(w.rank(&p), w.rank(&w.basis(i)) * w.rank(&w.basis(j)), "{}", w.name);
            }
        }
    }
}

#[test]
fn n_epsilon_values() {
    for w in &Catalog::bundled().fields {
        for n in [1u64, 3, 5, 7, 9] {
            let e = w.n_epsilon(n);
            assert_eq!(e.rank, b(n as i64));
            assert!(w.eq(&e.witt, &w.one()), "{} {n}", w.name);
        }
    }
    let qc = catalog_lookup("quadratically_closed").unwrap();
    let e = qc.n_epsilon(2);
    assert!(qc.is_zero(&e.witt));
    assert_eq!(e.rank, b(2));
}

#[test]
fn brute_force_matches_catalog() {
    for (q, name) in [(3, "F3"), (5, "F5"), (7, "F7")] {
        let brute = brute_force_witt_ring(q, 4).unwrap();
        let cat = catalog_lookup(name).unwrap();
        assert!(find_ring_isomorphism(&brute, &cat).is_some(), "{name}");
        assert!(find_ring_isomorphism(&cat, &brute).is_some(), "{name}");
    }
    assert_eq!(brute_force_witt_ring(3, 4).unwrap().additive, FinAbGroup::cyclic(4));
    assert_eq!(brute_force_witt_ring(5, 4).unwrap().additive, FinAbGroup::from_orders(0, &[b(2), b(2)]));
    // q = 9 is 1 mod 4, like q = 5
    let f9 = brute_force_witt_ring(9, 4).unwrap();
    assert!(find_ring_isomorphism(&f9, &catalog_lookup("F5").unwrap()).is_some());
    assert!(find_ring_isomorphism(&f9, &catalog_lookup("F3").unwrap()).is_none());
    assert!(brute_force_witt_ring(4, 4).is_err());
}

#[test]
fn f5_square_class_pattern() {
    // t = <u> - <1> squares to zero
    let w = brute_force_witt_ring(5, 4).unwrap();
    let elems = w.additive.elements().unwrap();
    let nilpotent: Vec<_> = elems.iter().filter(|x| !w.is_zero(x) && w.is_zero(&w.mul(x, x))).collect();
    assert!(!nilpotent.is_empty());
}

#[test]
fn serialization_roundtrip() {
    for w in &Catalog::bundled().fields {
        let s = serde_json::to_string(w).unwrap();
        let back: WittPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, w);
    }
    let broken = r#"[{"name": "x", "additive": {"free_rank": 0, "torsion": [2]}, "mult_table": [[[1]]],
        "unit": [1], "minus_one": [1], "rank_mod2": [0], "ideal_generators": [], "vcd2": 0}]"#;
    assert!(Catalog::from_json(broken).is_err());
}
