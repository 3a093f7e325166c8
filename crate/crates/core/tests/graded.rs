use etasphere::graded::filtered::{
    augmentation_filtration, augmentation_gr_dims, filtered_lemma_suite, lift_free_basis, sym_power_dim,
    transition_matrix, FilteredGroup, FilteredHom, FilteredRing, FilteredSpace, ModuleModel,
};
use etasphere::graded::{AlgebraBuilder, AlgebraSpec, Cell, GradedAlgebra, GradedError, Integers, F2};
use etasphere::abelian::FinAbGroup;
use etasphere::linalg::{BitVec, EchelonF2, IntMatrix};
use etasphere::witt::{catalog_lookup, Catalog};
use num_bigint::BigInt;
use proptest::prelude::*;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn steenrod_like() -> GradedAlgebra<F2> {
    AlgebraBuilder::new(F2, 14)
        .polynomial("rho", 1)
        .polynomial("tau", 3)
        .square_rewrite("tau0", 2, "tau xi1 + rho tau0 xi1 + rho tau1")
        .polynomial("xi1", 1)
        .square_rewrite("tau1", 3, "tau xi2 + rho tau0 xi2 + rho tau2")
        .polynomial("xi2", 3)
        .exterior("tau2", 5)
        .build()
        .unwrap()
}

#[test]
fn product_examples() {
    let a = AlgebraBuilder::new(F2, 8).polynomial("xi1", 1).polynomial("xi2", 3).build().unwrap();
    let x = a.generator("xi1").unwrap();
    assert_eq!(a.mul(&x, &x).unwrap(), a.parse("xi1^2").unwrap());
    assert_eq!(a.mul(&x, &a.one()).unwrap(), x);
    let s = steenrod_like();
    let t = s.generator("tau0").unwrap();
    assert_eq!(s.mul(&t, &t).unwrap(), s.parse("tau xi1 + rho tau0 xi1 + rho tau1").unwrap());
}

#[test]
fn derivation_examples() {
    // δ(ξ_i) = ξ_{i-1}² with ξ₀ = 1
    let a = AlgebraBuilder::new(F2, 12)
        .polynomial("xi1", 1)
        .polynomial("xi2", 3)
        .polynomial("xi3", 7)
        .build()
        .unwrap();
    let d = a.derivation(-1, &[], &[("xi1", "1"), ("xi2", "xi1^2"), ("xi3", "xi2^2")]).unwrap();
    assert_eq!(a.apply(&d, &a.parse("xi2").unwrap()).unwrap(), a.parse("xi1^2").unwrap());
    assert!(a.apply(&d, &a.one()).unwrap().is_zero());
    assert_eq!(a.apply(&d, &a.parse("xi1 xi2").unwrap()).unwrap(), a.parse("xi2 + xi1^3").unwrap());
}

#[test]
fn xi_subring_homology() {
    // F2[ξ₁², ξ₂, ξ₃] with δ(ξ₂) = ξ₁², δ(ξ₃) = ξ₂²
    let a = AlgebraBuilder::new(F2, 12)
        .polynomial("x", 2)
        .polynomial("xi2", 3)
        .polynomial("xi3", 7)
        .build()
        .unwrap();
    let d = a.derivation(-1, &[], &[("xi2", "x"), ("xi3", "xi2^2")]).unwrap();
    assert_eq!(a.homology_at_degree(&d, 0).unwrap().dim, 1);
    for n in 1..=11 {
        assert_eq!(a.homology_at_degree(&d, n).unwrap().dim, 0, "degree {n}");
    }
}

#[test]
fn zero_derivation_homology_is_everything() {
    let a = steenrod_like();
    let d = a.derivation(-1, &[], &[]).unwrap();
    for n in 0..=10 {
        let h = a.homology_at_degree(&d, n).unwrap();
        assert_eq!(h.dim, a.hilbert_dimension(n as u32).unwrap());
        assert_eq!(h.dim, h.cycles - h.boundaries);
    }
}

#[test]
fn phi_on_four_variables() {
    let a = AlgebraBuilder::new(F2, 8)
        .polynomial("x1", 1)
        .polynomial("x2", 2)
        .polynomial("x3", 3)
        .polynomial("x4", 4)
        .build()
        .unwrap();
    let phi = a.derivation(-1, &[], &[("x1", "1"), ("x2", "x1"), ("x3", "x2"), ("x4", "x3")]).unwrap();
    let r = a.map_report(&phi, &Cell::degree(4)).unwrap();
    assert_eq!(r.kernel_dim, 2);
    assert_eq!(r.cokernel_dim, 0);
    assert!(matches!(a.homology_at_degree(&phi, 4), Err(GradedError::NonSquareZero { .. })));
}

#[test]
fn hilbert_dimensions() {
    let mut bld = AlgebraBuilder::new(F2, 16);
    for i in 2..=16 {
        bld = bld.polynomial(&format!("y{i}"), i);
    }
    let a = bld.build().unwrap();
    assert_eq!(a.hilbert_dimension(4).unwrap(), 2);
    assert_eq!(a.hilbert_dimension(0).unwrap(), 1);
    assert!(matches!(a.hilbert_dimension(17), Err(GradedError::TruncationExceeded { .. })));
    let spec = r#"{"generators": [{"name": "y1", "degree": 2, "kind": "polynomial"},
                                  {"name": "y2", "degree": 4, "kind": "polynomial"}],
                   "coefficients": "W(real_closed)", "truncation": 12}"#;
    let w = AlgebraSpec::from_json(spec).unwrap().build(&Catalog::bundled()).unwrap();
    assert_eq!(w.hilbert_dimension(4).unwrap(), 2);
}

#[test]
fn gr_examples() {
    let a = AlgebraBuilder::new(Integers, 4).polynomial("x", 1).build().unwrap();
    let (f, _) = augmentation_filtration(&a).unwrap();
    assert_eq!(f.gr(1), FinAbGroup::free(1));
    let two_adic = FilteredGroup::two_adic_cyclic(8, 0);
    assert!((0..8).all(|s| two_adic.gr(s) == FinAbGroup::cyclic(2)));
    let g = FinAbGroup::from_orders(2, &[b(6)]);
    assert_eq!(FilteredGroup::trivial(g.clone()).gr(0), g);
}

#[test]
fn lemma_examples() {
    let id = FilteredHom::new(
        FilteredGroup::two_adic_cyclic(4, 0),
        FilteredGroup::two_adic_cyclic(4, 0),
        IntMatrix::identity(1),
    )
    .unwrap();
    let r = filtered_lemma_suite(&id);
    assert!(r.gr_iso && r.iso && r.consistent);
    let times_two = FilteredHom::new(
        FilteredGroup::two_adic_cyclic(8, 0),
        FilteredGroup::two_adic_cyclic(9, 1),
        IntMatrix::from_rows(&[vec![2]]),
    )
    .unwrap();
    let r = filtered_lemma_suite(&times_two);
    assert!(r.gr_iso && r.iso && r.consistent);
    let onto = FilteredHom::new(
        FilteredGroup::two_adic_cyclic(3, 0),
        FilteredGroup::two_adic_cyclic(1, 0),
        IntMatrix::identity(1),
    )
    .unwrap();
    let r = filtered_lemma_suite(&onto);
    assert!(r.gr_surjective && r.surjective && r.levels_surjective);
    assert_eq!(r.kernel_gr, r.gr_kernel);
    assert_eq!(r.brute_force, Some((false, true)));
}

#[test]
fn lifts_and_transitions() {
    let w = catalog_lookup("real_closed").unwrap().mod_two_power(8);
    let ring = FilteredRing::i_adic(w, 20).unwrap();
    let m = ModuleModel::shifted_free(ring, &[0, 1]).unwrap();
    let one = lift_free_basis(&m, &[(0, vec![b(1), b(0)]), (1, vec![b(0), b(1)])]).unwrap();
    assert!(one.is_filtered_iso());
    let other = lift_free_basis(&m, &[(0, vec![b(3), b(4)]), (1, vec![b(4), b(5)])]).unwrap();
    assert!(other.is_filtered_iso());
    assert!(transition_matrix(&m, &one, &other).unwrap().unitriangular);
    assert!(lift_free_basis(&m, &[(0, vec![b(2), b(0)]), (1, vec![b(0), b(1)])]).is_err());
}

#[test]
fn sym_powers_of_gr_one() {
    let degs = [1u32, 2, 2, 5];
    let mut bld = AlgebraBuilder::new(F2, 10);
    for (i, d) in degs.iter().enumerate() {
        bld = bld.polynomial(&format!("y{i}"), *d);
    }
    let a = bld.build().unwrap();
    for d in 0..=9 {
        let dims = augmentation_gr_dims(&a, d).unwrap();
        for (n, &x) in dims.iter().enumerate() {
            assert_eq!(x, sym_power_dim(&degs, n, d), "degree {d}, power {n}");
        }
    }
}

/// Random word of generator names with total degree at most `max`.
fn word(names: &'static [(&'static str, u32)], max: u32) -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(0..names.len(), 0..8).prop_map(move |idx| {
        let mut total = 0;
        let mut out = Vec::new();
        for i in idx {
            let (n, d) = names[i];
            if total + d <= max {
                total += d;
                out.push(n);
            }
        }
        out
    })
}

const GENS: &[(&str, u32)] =
    &[("rho", 1), ("tau", 3), ("tau0", 2), ("xi1", 1), ("tau1", 3), ("xi2", 3), ("tau2", 5)];

fn random_space(dim: usize, weights: Vec<usize>, seeds: Vec<u8>) -> FilteredSpace {
    // a random basis, each vector placed at its weight
    let mut basis: Vec<BitVec> = Vec::new();
    let mut e = EchelonF2::new();
    let mut k = 0;
    while basis.len() < dim {
        let mut v = BitVec::zeros(dim);
        for i in 0..dim {
            v.set(i, seeds[(k * dim + i) % seeds.len()] >> (k % 8) & 1 == 1);
        }
        v.set((basis.len() + k) % dim, true);
        if e.insert(&v) {
            basis.push(v);
        }
        k += 1;
        if k > 64 {
            for i in 0..dim {
                let u = BitVec::unit(dim, i);
                if e.insert(&u) {
                    basis.push(u);
                }
            }
        }
    }
    let top = weights.iter().copied().max().unwrap_or(0);
    let levels = (0..=top)
        .map(|s| basis.iter().zip(&weights).filter(|(_, &w)| w >= s).map(|(v, _)| v.clone()).collect())
        .collect();
    FilteredSpace { dim, levels }
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rewriting_is_confluent(w in word(GENS, 14)) {
        let a = steenrod_like();
        let factors: Vec<_> = w.iter().map(|n| a.generator(n).unwrap()).collect();
        let left = a.normalize_product(&factors).unwrap();
        let mut rev = factors.clone();
        rev.reverse();
        let right = a.normalize_product(&rev).unwrap();
        prop_assert_eq!(&left, &right);
        // pair up from the middle
        let (x, y) = factors.split_at(factors.len() / 2);
        let split = a.mul(&a.normalize_product(x).unwrap(), &a.normalize_product(y).unwrap()).unwrap();
        prop_assert_eq!(left, split);
    }

    #[test]
    fn gr_of_tensor(d1 in 1usize..4, d2 in 1usize..4,
                    w1 in prop::collection::vec(0usize..3, 4), w2 in prop::collection::vec(0usize..3, 4),
                    seeds in prop::collection::vec(any::<u8>(), 16)) {
        let v = random_space(d1, w1[..d1].to_vec(), seeds.clone());
        let w = random_space(d2, w2[..d2].to_vec(), seeds.iter().rev().copied().collect());
        let t = v.tensor(&w);
        let mut want = convolve(&v.gr_dims(), &w.gr_dims());
        let mut got = t.gr_dims();
        while want.last() == Some(&0) { want.pop(); }
        while got.last() == Some(&0) { got.pop(); }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lemma_suite_is_sound(a in 1u32..6, sa in 0u32..2, bb in 1u32..6, sb in 0u32..2, k in 1i64..16) {
        let src = FilteredGroup::two_adic_cyclic(a, sa);
        let tgt = FilteredGroup::two_adic_cyclic(bb, sb);
        let h = FilteredHom::new(src, tgt, IntMatrix::from_rows(&[vec![k]]));
        prop_assume!(h.is_ok());
        let r = filtered_lemma_suite(&h.unwrap());
        prop_assert!(r.consistent, "{:?}", r);
        if let Some((i, s)) = r.brute_force {
            prop_assert_eq!((i, s), (r.injective, r.surjective));
        }
    }
}
