//! Adams operations on the Bott class and the operation `φ` on the
//! associated graded of `kw_* MSp` and `kw_* MSL` (mod 2 models).

use num_bigint::BigInt;
use serde::Serialize;

use super::KwError;
use crate::graded::{
    partitions_into, subscript, AlgebraBuilder, Cell, Coefficients, Derivation, Element, GradedAlgebra, Integers, F2,
};
use crate::linalg::{f2_eliminate, BitVec, EchelonF2};
use crate::witt::{GwElement, WittPresentation};

/// Largest degree the φ models are built to.
pub const MAX_MODEL_DEGREE: u32 = 64;

/// The coefficient `n² · n_ε²` of `ψⁿ(β)`, for odd `n`.
pub fn adams_on_bott(n: i64, w: &WittPresentation) -> Result<GwElement, KwError> {
    if n % 2 == 0 {
        return Err(KwError::EvenNotSupported(n));
    }
    // (-n)_ε = -<-1> n_ε, which squares to n_ε²
    let eps = w.n_epsilon(n.unsigned_abs());
    let sq = w.gw_mul(&eps, &eps);
    Ok(w.gw_mul(&w.gw_from_int(BigInt::from(n) * n), &sq))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiDegree {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Expected kernel dimension (partition count).
    pub expected_kernel: u64,
    pub surjective: bool,
}

impl PhiDegree {
    pub fn ok(&self) -> bool {
        self.surjective && self.kernel_dim as u64 == self.expected_kernel
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub model: String,
    pub coefficients: String,
    pub degrees: Vec<PhiDegree>,
    /// Number of indecomposable kernel generators per degree (F2 only).
    pub kernel_generators: Vec<(u32, usize)>,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.degrees.iter().all(PhiDegree::ok)
    }
}

fn check_bound(d: u32) -> Result<(), KwError> {
    if d > MAX_MODEL_DEGREE {
        return Err(KwError::BoundsExceeded(format!("degree {d} exceeds {MAX_MODEL_DEGREE}")));
    }
    Ok(())
}

fn degree_table<C: Coefficients>(
    alg: &GradedAlgebra<C>,
    phi: &Derivation<C::Elem>,
    max: u32,
    expected: impl Fn(u32) -> u64,
) -> Result<Vec<PhiDegree>, KwError> {
    (0..=max)
        .map(|d| {
            let r = alg.map_report(phi, &Cell::degree(d as i64))?;
            Ok(PhiDegree {
                degree: d,
                source_dim: r.source_dim,
                target_dim: r.target_dim,
                rank: r.rank,
                kernel_dim: r.kernel_dim,
                expected_kernel: expected(d),
                surjective: r.cokernel_dim == 0,
            })
        })
        .collect()
}

/// `gr kw_* MSp = F2[β', e₁, e₂, …]` with `|β'| = 4`, `|eᵢ| = 2i`.
pub fn msp_gr_model(max: u32) -> Result<(GradedAlgebra<F2>, Derivation<bool>), KwError> {
    check_bound(max)?;
    let mut b = AlgebraBuilder::new(F2, max).polynomial("beta", 4).label("β'");
    let top = (max / 2).max(1);
    for i in 1..=top {
        b = b.polynomial(&format!("e{i}"), 2 * i).label(&format!("e{}'", subscript(i)));
    }
    let alg = b.build()?;
    let images: Vec<(String, String)> = (2..=top)
        .step_by(2)
        .map(|i| (format!("e{i}"), if i == 2 { "1".to_string() } else { format!("e{}", i - 2) }))
        .collect();
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let phi = alg.derivation(-4, &[], &refs)?;
    Ok((alg, phi))
}

/// φ on `gr kw_* MSp` through degree `max`: surjective, with kernel the
/// polynomial ring on classes of degree 2, 4, 6, ….
pub fn msp_phi_gr(max: u32) -> Result<PhiReport, KwError> {
    let (alg, phi) = msp_gr_model(max)?;
    let even: Vec<usize> = (1..=max as usize / 2).map(|i| 2 * i).collect();
    let degrees = degree_table(&alg, &phi, max, |d| partitions_into(d as usize, &even))?;
    Ok(PhiReport { model: "gr kw_*MSp".into(), coefficients: "F2".into(), degrees, kernel_generators: vec![] })
}

/// `A₀[x₁, x₂, …]` with `|xᵢ| = i` and the derivation `xᵢ ↦ x_{i−1}`, `x₀ = 1`.
pub fn lemma_model<C: Coefficients>(coeffs: C, max: u32) -> Result<(GradedAlgebra<C>, Derivation<C::Elem>), KwError> {
    check_bound(max)?;
    let top = max.max(1);
    let mut b = AlgebraBuilder::new(coeffs, max);
    for i in 1..=top {
        b = b.polynomial(&format!("x{i}"), i).label(&format!("x{}", subscript(i)));
    }
    let alg = b.build()?;
    let images: Vec<(String, String)> = (1..=top)
        .map(|i| (format!("x{i}"), if i == 1 { "1".to_string() } else { format!("x{}", i - 1) }))
        .collect();
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let phi = alg.derivation(-1, &[], &refs)?;
    Ok((alg, phi))
}

/// Kernel basis of `phi` on degree `d` over F2.
fn f2_kernel(alg: &GradedAlgebra<F2>, phi: &Derivation<bool>, d: u32) -> Result<Vec<Element<bool>>, KwError> {
    let mm = alg.map_matrix(phi, &Cell::degree(d as i64))?;
    let images: Vec<BitVec> = mm
        .columns
        .iter()
        .map(|c| {
            let mut v = BitVec::zeros(mm.target.len());
            for (i, &b) in c.iter().enumerate() {
                v.set(i, b);
            }
            v
        })
        .collect();
    let red = f2_eliminate(mm.source.len(), &images);
    Ok(red
        .kernel
        .iter()
        .map(|v| Element { terms: v.ones().map(|i| (mm.source[i].clone(), true)).collect() })
        .collect())
}

/// Indecomposables of `ker φ` per degree over F2: kernel dimension minus
/// the rank of products of lower kernel classes.
pub fn kernel_generator_counts(
    alg: &GradedAlgebra<F2>,
    phi: &Derivation<bool>,
    max: u32,
) -> Result<Vec<(u32, usize)>, KwError> {
    let kernels: Vec<Vec<Element<bool>>> = (0..=max).map(|d| f2_kernel(alg, phi, d)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for d in 1..=max {
        let basis = alg.monomials(d, None);
        let index = |m: &Vec<u32>| basis.binary_search(m).expect("monomial of degree d");
        let mut ech = EchelonF2::new();
        for a in 1..=d / 2 {
            for x in &kernels[a as usize] {
                for y in &kernels[(d - a) as usize] {
                    let p = alg.mul(x, y)?;
                    let mut v = BitVec::zeros(basis.len());
                    for m in p.terms.keys() {
                        v.set(index(m), true);
                    }
                    ech.insert(&v);
                }
            }
        }
        out.push((d, kernels[d as usize].len() - ech.rank()));
    }
    Ok(out)
}

/// `φ(x_i) = x_{i-1}` on `A0[x1, x2, …]` over F2 or over the integers (ranks over Q):
/// `φ` is onto in each degree and its kernel has as many classes in
/// degree `d` as partitions of `d` into parts `≥ 2`.
pub fn phi_lemma_model(over_integers: bool, max: u32) -> Result<PhiReport, KwError> {
    let parts: Vec<usize> = (2..=max.max(2) as usize).collect();
    let expected = |d: u32| partitions_into(d as usize, &parts);
    if over_integers {
        let (alg, phi) = lemma_model(Integers, max)?;
        let degrees = degree_table(&alg, &phi, max, expected)?;
        Ok(PhiReport { model: "A0[x1, x2, ...]".into(), coefficients: "Q".into(), degrees, kernel_generators: vec![] })
    } else {
        let (alg, phi) = lemma_model(F2, max)?;
        let degrees = degree_table(&alg, &phi, max, expected)?;
        let kernel_generators = kernel_generator_counts(&alg, &phi, max)?;
        Ok(PhiReport { model: "A0[x1, x2, ...]".into(), coefficients: "F2".into(), degrees, kernel_generators })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiIterates {
    pub start: String,
    /// `e_{2i}, φ(e_{2i}), …, φ^i(e_{2i})`, formatted.
    pub chain: Vec<String>,
    pub reaches_one: bool,
}

/// Iterates φ on `e_{2i}` in `gr kw_* MSL = F2[β', e₂, e₄, …]`.
pub fn phi_iterates_on_msl(i: u32) -> Result<PhiIterates, KwError> {
    let max = 4 * i.max(1);
    check_bound(max)?;
    let mut b = AlgebraBuilder::new(F2, max).polynomial("beta", 4).label("β'");
    for j in 1..=i.max(1) {
        b = b.polynomial(&format!("e{}", 2 * j), 4 * j).label(&format!("e{}'", subscript(2 * j)));
    }
    let alg = b.build()?;
    let images: Vec<(String, String)> = (1..=i.max(1))
        .map(|j| (format!("e{}", 2 * j), if j == 1 { "1".to_string() } else { format!("e{}", 2 * j - 2) }))
        .collect();
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let phi = alg.derivation(-4, &[], &refs)?;
    let mut x = if i == 0 { alg.one() } else { alg.generator(&format!("e{}", 2 * i))? };
    let start = if i == 0 { "e₀'".to_string() } else { alg.format(&x) };
    let mut chain = vec![alg.format(&x)];
    for _ in 0..i {
        x = alg.apply(&phi, &x)?;
        chain.push(alg.format(&x));
    }
    Ok(PhiIterates { start, reaches_one: x == alg.one(), chain })
}
