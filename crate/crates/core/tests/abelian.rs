use etasphere::abelian::{
    complete_hom, derived_p_completion, ker_coker_of_mul, smith_normal_form, FinAbGroup, GroupHom,
};
use etasphere::linalg::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn grp(r: usize, t: &[i64]) -> FinAbGroup {
    FinAbGroup::new(r, t.iter().map(|&x| b(x)).collect()).unwrap()
}

fn diag(m: &IntMatrix) -> Vec<BigInt> {
    (0..m.rows().min(m.cols())).map(|i| m.get(i, i).clone()).collect()
}

#[test]
fn smith_examples() {
    let s = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(diag(&s.d), vec![b(1), b(6)]);
    let s = smith_normal_form(&IntMatrix::identity(2));
    assert_eq!(s.d, IntMatrix::identity(2));
    let s = smith_normal_form(&IntMatrix::from_rows(&[vec![8]]));
    assert_eq!(s.d, IntMatrix::from_rows(&[vec![8]]));
}

#[test]
fn ker_coker_examples() {
    assert_eq!(ker_coker_of_mul(&grp(1, &[]), &b(8)), (FinAbGroup::zero(), grp(0, &[8])));
    assert_eq!(ker_coker_of_mul(&grp(0, &[2]), &b(0)), (grp(0, &[2]), grp(0, &[2])));
    assert_eq!(ker_coker_of_mul(&grp(1, &[12]), &b(6)), (grp(0, &[6]), grp(0, &[6, 6])));
}

#[test]
fn completion_examples() {
    let c = derived_p_completion(&grp(1, &[]), &b(2)).unwrap();
    assert_eq!((c.padic_rank, c.torsion.len()), (1, 0));
    assert!(c.pi1_vanishes && c.lim1_vanishes);
    let c = derived_p_completion(&grp(0, &[12]), &b(2)).unwrap();
    assert_eq!(c.torsion, vec![b(4)]);
    let c = derived_p_completion(&grp(0, &[3]), &b(2)).unwrap();
    assert_eq!((c.padic_rank, c.torsion.len()), (0, 0));
    assert!(derived_p_completion(&grp(0, &[3]), &b(4)).is_err());
}

#[test]
fn completion_by_finite_quotients() {
    // A/2^n for n large stabilizes at the 2-primary part
    let g = grp(0, &[12]);
    let mut orders = Vec::new();
    for n in 1..=4 {
        let (_, coker) = ker_coker_of_mul(&g, &(BigInt::one() << n));
        orders.push(coker.order().unwrap());
    }
    assert_eq!(orders, vec![b(2), b(4), b(4), b(4)]);
}

/// Unimodular iff square with all invariant factors 1.
fn unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && {
        let s = smith_normal_form(m);
        s.rank() == m.rows() && s.diagonal.iter().all(|d| d.is_one())
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..12, c), r))
}

/// Torsion invariant factors, built as a divisibility chain.
fn torsion_chain() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..5, 0..3).prop_map(|steps| {
        let mut out: Vec<i64> = Vec::new();
        for s in steps {
            let base = out.last().copied().unwrap_or(1);
            out.push(base * (s + 1));
        }
        out
    })
}

/// All elements of a finite group, as coordinate vectors.
fn elements(t: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &d in t {
        out = out.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn killed_counts(elems: &[Vec<i64>], t: &[i64], upto: i64, member: impl Fn(&[i64]) -> bool) -> Vec<usize> {
    (1..=upto)
        .map(|m| {
            elems
                .iter()
                .filter(|x| {
                    let y: Vec<i64> = x.iter().zip(t).map(|(a, d)| (a * m).rem_euclid(*d)).collect();
                    member(&y)
                })
                .count()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_exact(rows in small_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(unimodular(&s.u));
        prop_assert!(unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let nz: Vec<BigInt> = diag(&s.d).into_iter().filter(|x| !x.is_zero()).collect();
        for w in nz.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn ker_coker_brute_force(t in torsion_chain(), n in 0i64..30) {
        let g = grp(0, &t);
        let (ker, coker) = ker_coker_of_mul(&g, &b(n));
        let elems = elements(&t);
        let image: std::collections::HashSet<Vec<i64>> = elems
            .iter()
            .map(|x| x.iter().zip(&t).map(|(a, d)| (a * n).rem_euclid(*d)).collect())
            .collect();
        let zero = |y: &[i64]| y.iter().all(|&a| a == 0);
        let kernel: Vec<Vec<i64>> = elems.iter().filter(|x| {
            let y: Vec<i64> = x.iter().zip(&t).map(|(a, d)| (a * n).rem_euclid(*d)).collect();
            zero(&y)
        }).cloned().collect();
        prop_assert_eq!(ker.order().unwrap(), b(kernel.len() as i64));
        prop_assert_eq!(coker.order().unwrap() * b(image.len() as i64), b(elems.len() as i64));
        // a finite abelian group is determined by how many elements each m kills
        let ker_counts = killed_counts(&kernel, &t, 12, zero);
        let want: Vec<usize> = (1..=12).map(|m| ker.count_killed_by(&b(m)).unwrap()).map(|c| c.try_into().unwrap()).collect();
        prop_assert_eq!(ker_counts, want);
        let coset_counts: Vec<usize> = killed_counts(&elems, &t, 12, |y| image.contains(y))
            .into_iter()
            .map(|c| c / image.len())
            .collect();
        let want: Vec<usize> = (1..=12).map(|m| coker.count_killed_by(&b(m)).unwrap()).map(|c| c.try_into().unwrap()).collect();
        prop_assert_eq!(coset_counts, want);
    }

    #[test]
    fn completions_reconstruct_torsion(r in 0usize..3, t in torsion_chain()) {
        let g = grp(r, &t);
        let mut total = BigInt::one();
        for p in [2i64, 3, 5] {
            let c = derived_p_completion(&g, &b(p)).unwrap();
            prop_assert_eq!(c.padic_rank, r);
            for d in &c.torsion {
                total *= d;
            }
        }
        let order: BigInt = t.iter().map(|&d| b(d)).product();
        prop_assert_eq!(total, order);
    }

    #[test]
    fn completion_is_functorial(t in torsion_chain(), k in 1i64..20, l in 1i64..20) {
        let g = grp(1, &t);
        let f = GroupHom::scalar(&g, &b(k));
        let h = GroupHom::scalar(&g, &b(l));
        let fh = f.then(&h).unwrap();
        let two = b(2);
        let a = complete_hom(&f, &two).unwrap().then(&complete_hom(&h, &two).unwrap());
        let c = complete_hom(&fh, &two).unwrap();
        let reduce = |m: IntMatrix| etasphere::abelian::CompletedHom { source: c.source.clone(), target: c.target.clone(), matrix: m }.reduced();
        prop_assert_eq!(reduce(a.matrix), c.reduced());
    }
}

#[test]
fn json_roundtrip() {
    let g = grp(1, &[2, 4]);
    let s = serde_json::to_string(&g).unwrap();
    assert_eq!(s, r#"{"free_rank":1,"torsion":[2,4]}"#);
    let back: FinAbGroup = serde_json::from_str(&s).unwrap();
    assert_eq!(back, g);
    assert!(serde_json::from_str::<FinAbGroup>(r#"{"free_rank":0,"torsion":[4,2]}"#).is_err());
}
