//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Run with `cargo test -p etasphere --test acceptance`.

use std::time::{Duration, Instant};

use etasphere::abelian::FinAbGroup;
use etasphere::graded::{AlgebraBuilder, F2};
use etasphere::kwcalc::divided::DividedPowerModel;
use etasphere::kwcalc::operator::{parse_words, OperatorPolynomial};
use etasphere::kwcalc::valuation::check_nine_power_range;
use etasphere::kwcalc::{
    divided_power_construct, eta_stems, hopf_constants, normal_order, phi_lemma_model, StableStemsData,
};
use etasphere::steenrod::checks::{action_table, hopf_checks};
use etasphere::steenrod::pages::{cell, model, pages_for, ModelKind, PageBounds};
use etasphere::steenrod::{MotivicBase, Side, SteenrodAlgebra};
use etasphere::witt::brute::brute_force_witt_ring;
use etasphere::witt::{catalog_lookup, find_ring_isomorphism};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

fn z(orders: &[u64]) -> FinAbGroup {
    let t: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
    FinAbGroup::from_orders(0, &t)
}

fn quadratically_closed_stems() -> Outcome {
    let w = catalog_lookup("quadratically_closed").map_err(e)?;
    let t = eta_stems(&w, &StableStemsData::bundled(), 40).map_err(e)?;
    for entry in &t.entries {
        let d = entry.degree;
        let want = if d == 0 || (d % 4 == 3 || d % 4 == 0) { z(&[2]) } else { FinAbGroup::zero() };
        let got = entry.witt_part.direct_sum(&entry.odd_part);
        ensure(got == want, || format!("π_{d} = {got}, expected {want}"))?;
    }
    Ok("π₀ = 𝔽₂; π_{4n-1} = π_{4n} = ℤ/2 for n ≤ 10; all else 0".into())
}

/// Odd part of the order, straight from the data file.
fn odd_order(orders: &[u64]) -> u64 {
    orders.iter().map(|&d| d >> d.trailing_zeros()).product()
}

fn real_closed_stems() -> Outcome {
    let w = catalog_lookup("real_closed").map_err(e)?;
    let t = eta_stems(&w, &StableStemsData::bundled(), 20).map_err(e)?;
    let raw: Vec<serde_json::Value> =
        serde_json::from_str(include_str!("../data/stable_stems.json")).map_err(e)?;
    for entry in t.entries.iter().skip(1) {
        let d = entry.degree;
        if d % 4 == 3 {
            let n = (d as u64 + 1) / 4;
            let want = z(&[1u64 << (3 + n.trailing_zeros())]);
            ensure(entry.witt_part == want, || format!("degree {d}: 2-part {}, expected {want}", entry.witt_part))?;
        } else {
            ensure(entry.witt_part == FinAbGroup::zero(), || format!("degree {d}: 2-part {}", entry.witt_part))?;
        }
        let orders: Vec<u64> =
            raw[d as usize]["torsion"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let got = entry.odd_part.order().and_then(|o| o.to_u64());
        ensure(got == Some(odd_order(&orders)), || format!("degree {d}: odd part {}", entry.odd_part))?;
        ensure(entry.odd_part.torsion().iter().all(|t| t % 2u32 == BigInt::from(1)), || {
            format!("degree {d}: odd part has even torsion")
        })?;
    }
    let seven = &t.entries[7].formatted;
    ensure(seven == "ℤ/16 ⊕ ℤ/15", || format!("degree 7 is {seven}"))?;
    Ok("2^{3+ν₂(n)} in degree 4n-1, kernels vanish, odd parts match; π₇ = ℤ/16 ⊕ ℤ/15".into())
}

fn nine_powers() -> Outcome {
    const LIMIT: u64 = 1 << 16;
    if let Some(bad) = check_nine_power_range(LIMIT) {
        return Err(format!("n = {}: ν₂ = {}, ν₂(8n) = {}", bad.n, bad.lhs, bad.rhs));
    }
    // the valuation never exceeds 3 + 16, so arithmetic mod 2^64 sees it
    let mut p: u64 = 1;
    for n in 1..=LIMIT {
        p = p.wrapping_mul(9);
        let lhs = (p - 1).trailing_zeros() as u64;
        ensure(lhs == 3 + n.trailing_zeros() as u64, || format!("n = {n} mod 2^64"))?;
    }
    Ok(format!("ν₂(9ⁿ - 1) = ν₂(8n) for n ≤ {LIMIT}"))
}

/// Partitions of `d` into parts ≥ 2, by the usual table.
fn partitions_no_ones(max: usize) -> Vec<u64> {
    let mut p = vec![0u64; max + 1];
    p[0] = 1;
    for part in 2..=max {
        for d in part..=max {
            p[d] += p[d - part];
        }
    }
    p
}

fn derivation_lemma() -> Outcome {
    let want = partitions_no_ones(14);
    for (over_q, name) in [(false, "F2"), (true, "Q")] {
        let r = phi_lemma_model(over_q, 14).map_err(e)?;
        for d in &r.degrees {
            ensure(d.surjective, || format!("{name}: φ not onto in degree {}", d.degree))?;
            let w = want[d.degree as usize];
            ensure(d.kernel_dim as u64 == w, || format!("{name}: kernel in degree {} is {}, expected {w}", d.degree, d.kernel_dim))?;
        }
        ensure(r.degrees.len() == 15, || format!("{name}: {} degrees", r.degrees.len()))?;
    }
    Ok("φ onto, kernel = partitions into parts ≥ 2, degrees ≤ 14, over F2 and Q".into())
}

/// Monomials `ρ^a τ₂^e τ₃^f` (`e, f ≤ 1`) in the cell `(s, w)`; `ρ` only
/// when the base has it.
fn tau_ring_count(has_rho: bool, s: i64, w: i64) -> usize {
    let mut n = 0;
    for e2 in 0..=1i64 {
        for e3 in 0..=1i64 {
            if 4 * e2 + 8 * e3 != s {
                continue;
            }
            let a = w + 3 * e2 + 7 * e3;
            if a == 0 || (has_rho && a > 0) {
                n += 1;
            }
        }
    }
    n
}

fn ko_homology() -> Outcome {
    const WEIGHT: i64 = 16;
    let mut cells = 0;
    for base in ["real_closed", "quadratically_closed"] {
        let b = MotivicBase::lookup(base).map_err(e)?;
        let m = model(ModelKind::Ko, &b, WEIGHT as u32 + 1).map_err(e)?;
        for s in 0..=WEIGHT / 2 {
            for w in -2 * s..=WEIGHT - 2 * s {
                let h = m.algebra.homology(&m.delta, &cell(s, w)).map_err(e)?;
                let want = tau_ring_count(b.has_rho(), s, w);
                ensure(h.dim == want, || format!("{base} (s, w) = ({s}, {w}): homology {} vs {want}", h.dim))?;
                cells += 1;
            }
        }
    }
    // the ξ part alone is acyclic in positive degrees
    let xi = AlgebraBuilder::new(F2, WEIGHT as u32 + 1)
        .polynomial("x", 2)
        .polynomial("xi2", 3)
        .polynomial("xi3", 7)
        .polynomial("xi4", 15)
        .build()
        .map_err(e)?;
    let d = xi.derivation(-1, &[], &[("xi2", "x"), ("xi3", "xi2^2"), ("xi4", "xi3^2")]).map_err(e)?;
    for n in 1..=WEIGHT {
        let h = xi.homology_at_degree(&d, n).map_err(e)?;
        ensure(h.dim == 0, || format!("ξ-subring homology in degree {n} is {}", h.dim))?;
    }
    Ok(format!("{cells} cells of weight ≤ {WEIGHT} match the τ-ring; ξ part acyclic"))
}

fn steenrod_tables() -> Outcome {
    let b = MotivicBase::lookup("real_closed").map_err(e)?;
    let a = SteenrodAlgebra::new(&b, 12).map_err(e)?;
    let table = action_table(&a).map_err(e)?;
    ensure(table.len() == 14, || format!("{} formulas", table.len()))?;
    for f in &table {
        ensure(f.ok(), || format!("{} fails", f.formula))?;
    }
    // a few contractions written out by hand
    let act = |op: &str, side: Side, x: &str| -> Result<String, String> {
        let o = a.operator(op).map_err(e)?;
        Ok(a.format(&a.dual_action(&o, side, &a.parse(x).map_err(e)?).map_err(e)?))
    };
    for (op, side, x, want) in [
        ("tau0", Side::L, "tau0", "1"),
        ("xi1", Side::L, "xi1", "1"),
        ("xi1", Side::L, "tau1", "τ₀"),
        ("tau0", Side::R, "tau1", "ξ₁"),
        ("xi1", Side::R, "xi2", "ξ₁²"),
        ("tau1", Side::L, "xi1", "0"),
    ] {
        let got = act(op, side, x)?;
        ensure(got == want, || format!("{op}^{side:?}({x}) = {got}, expected {want}"))?;
    }
    for r in hopf_checks(&a, 12).map_err(e)? {
        ensure(r.ok(), || format!("{}: {:?}", r.name, r.failures.first()))?;
    }
    for kind in [ModelKind::Hz2, ModelKind::Hz, ModelKind::Kgl, ModelKind::Ko] {
        let m = model(kind, &b, 12).map_err(e)?;
        for g in m.algebra.generators() {
            let x = m.algebra.generator(&g.name).map_err(e)?;
            let dd = m.algebra.apply(&m.delta, &m.algebra.apply(&m.delta, &x).map_err(e)?).map_err(e)?;
            ensure(dd.is_zero(), || format!("{kind:?}: δ²({}) ≠ 0", g.label))?;
        }
    }
    Ok("14 contraction formulas; coassociativity, counit within weight 12; δ² = 0".into())
}

fn phi_beta() -> Outcome {
    for n in 1..=50u32 {
        let got = normal_order(&parse_words(&format!("phi{}", " beta".repeat(n as usize))).map_err(e)?);
        let nine = num_traits::pow(BigInt::from(9), n as usize);
        let mut want = OperatorPolynomial::monomial(nine.clone(), n, 1);
        want = want.add(&OperatorPolynomial::monomial(nine - BigInt::one(), n - 1, 0));
        ensure(got == want, || format!("n = {n}: {got}"))?;
    }
    Ok("φβⁿ = 9ⁿβⁿφ + (9ⁿ - 1)βⁿ⁻¹ for n ≤ 50".into())
}

fn hopf_recursion() -> Outcome {
    const N: usize = 24;
    let t = hopf_constants(N, N).map_err(e)?;
    // Pascal's triangle mod 8
    let mut pascal = vec![vec![0u8; N + 1]; N + 1];
    for i in 0..=N {
        for j in 0..=N - i {
            pascal[i][j] = if i == 0 || j == 0 { 1 } else { (pascal[i - 1][j] + pascal[i][j - 1]) % 8 };
        }
    }
    let mut n = 0;
    for i in 0..=N {
        for j in 0..=N - i {
            let got = t.get(i, j);
            ensure(got == Some(pascal[i][j]), || format!("({i}, {j}): {got:?} vs {}", pascal[i][j]))?;
            n += 1;
        }
    }
    Ok(format!("{n} constants with i + j ≤ {N} agree with binomials mod 8"))
}

fn binomial_mod(n: u64, k: u64, modulus: u64) -> u64 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    (c % modulus as u128) as u64
}

fn divided_powers() -> Outcome {
    const BITS: u32 = 8;
    const MAX: u64 = 16;
    let models = [
        ("binomial", DividedPowerModel::binomial_units(BITS, 5).map_err(e)?),
        ("alternative", DividedPowerModel::new(BITS, vec![3, 5, 7, 9, 11]).map_err(e)?),
    ];
    let mut pairs = 0;
    for (name, m) in &models {
        let c = divided_power_construct(m, MAX).map_err(e)?;
        ensure(c.ok(), || format!("{name}: certificate reports {:?} {:?}", c.square_failures, c.pair_failures.first()))?;
        for a in 0..=MAX {
            for b in 0..=MAX - a {
                let lhs = m.mul(&c.x[a as usize], &c.x[b as usize]).map_err(e)?;
                let rhs = c.x[(a + b) as usize].scale(binomial_mod(a + b, b, 1 << BITS), BITS);
                ensure(lhs == rhs, || format!("{name}: x_{a} x_{b} = {} vs {}", lhs.format(), rhs.format()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} products x_m x_n = binom(m+n, n) x_(m+n) mod 2^{BITS}, two unit choices"))
}

fn witt_oracle_and_collapse() -> Outcome {
    for (q, name) in [(3, "F3"), (5, "F5"), (7, "F7")] {
        let brute = brute_force_witt_ring(q, 4).map_err(e)?;
        let cat = catalog_lookup(name).map_err(e)?;
        ensure(find_ring_isomorphism(&brute, &cat).is_some(), || format!("{name}: brute → catalog"))?;
        ensure(find_ring_isomorphism(&cat, &brute).is_some(), || format!("{name}: catalog → brute"))?;
    }
    for base in ["real_closed", "quadratically_closed"] {
        let b = MotivicBase::lookup(base).map_err(e)?;
        let p = pages_for(ModelKind::Ko, &b, PageBounds::new(16, 6)).map_err(e)?;
        let off: Vec<_> = p.e2.entries.iter().filter(|x| x.f > 0 && x.s % 4 != 0).map(|x| (x.s, x.f, x.w)).collect();
        ensure(off.is_empty(), || format!("{base}: E₂ classes with f > 0 at {:?}", off.first()))?;
        ensure(p.e2.entries.iter().any(|x| x.f > 0), || format!("{base}: no f > 0 classes at all"))?;
    }
    Ok("F3, F5, F7 match the catalog; ko E₂ has f > 0 only in stems ≡ 0 mod 4, s ≤ 16".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 η-stems, quadratically closed", quadratically_closed_stems, Duration::from_secs(1)),
        ("2 η-stems, real closed", real_closed_stems, Duration::from_secs(1)),
        ("3 ν₂(9ⁿ - 1)", nine_powers, Duration::from_secs(10)),
        ("4 derivation kernel", derivation_lemma, Duration::from_secs(10)),
        ("5 ko-model homology", ko_homology, Duration::from_secs(30)),
        ("6 Steenrod action and axioms", steenrod_tables, Duration::from_secs(60)),
        ("7 φβⁿ normal form", phi_beta, Duration::from_secs(10)),
        ("8 Hopf constants", hopf_recursion, Duration::from_secs(10)),
        ("9 divided powers", divided_powers, Duration::from_secs(10)),
        ("10 Witt oracle, E₂ collapse", witt_oracle_and_collapse, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let ms = took.as_secs_f64() * 1000.0;
        match result {
            Ok(detail) if took <= budget => println!("PASS  {name}  ({ms:.0} ms)  {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({ms:.0} ms, budget {} s)  {detail}", budget.as_secs());
            }
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({ms:.0} ms)  {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
