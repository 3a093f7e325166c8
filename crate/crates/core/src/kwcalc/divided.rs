//! Divided-power generators in the truncated model
//! `Z/2^K[t₀, t₁, …]/(tᵢ² − 2wᵢ t_{i+1})`, and the check that the
//! homotopy of `kw ∧ HW` has generators of the stated shape.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::KwError;
use crate::graded::filtered::{lift_free_basis, FilteredRing, LiftCertificate, ModuleModel};
use crate::graded::subscript;
use crate::witt::WittPresentation;

/// Generators are capped so that odd parts of `(2^i)!` stay cheap.
pub const MAX_GENERATORS: usize = 20;

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn mulmod(a: u64, b: u64, bits: u32) -> u64 {
    ((a as u128 * b as u128) as u64) & mask(bits)
}

/// Inverse of an odd residue modulo `2^bits` (Newton iteration).
pub fn inverse_mod_pow2(a: u64, bits: u32) -> Option<u64> {
    if a % 2 == 0 {
        return None;
    }
    let mut x = a;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    Some(x & mask(bits))
}

/// Odd part of `n!` modulo `2^bits`, for `n = 0..=max`.
fn odd_factorials(max: u64, bits: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = 1u64;
    out.push(1);
    for k in 1..=max {
        acc = mulmod(acc, k >> k.trailing_zeros(), bits);
        out.push(acc);
    }
    out
}

/// `Σ cᵢ T_S` with `T_S = Π_{i∈S} tᵢ`, keyed by the bit mask of `S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DpElement {
    pub terms: BTreeMap<u64, u64>,
}

impl DpElement {
    pub fn scalar_monomial(c: u64, s: u64, bits: u32) -> Self {
        let mut e = DpElement::default();
        let c = c & mask(bits);
        if c != 0 {
            e.terms.insert(s, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: u64, bits: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&s, &c)| (s, mulmod(c, k, bits)))
            .filter(|&(_, c)| c != 0)
            .collect();
        DpElement { terms }
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&s, &c)| {
                let mono: Vec<String> = (0..64).filter(|i| s >> i & 1 == 1).map(|i| format!("t{}", subscript(i))).collect();
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono.join(" "),
                    _ => format!("{c} {}", mono.join(" ")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The ring `Z/2^K[tᵢ]/(tᵢ² − 2wᵢ t_{i+1})` for `0 ≤ i < units.len()`,
/// `tᵢ` in degree `2^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DividedPowerModel {
    pub bits: u32,
    pub units: Vec<u64>,
}

impl DividedPowerModel {
    pub fn new(bits: u32, units: Vec<u64>) -> Result<Self, KwError> {
        if !(6..=62).contains(&bits) {
            return Err(KwError::BoundsExceeded(format!("modulus bits must lie in 6..=62, got {bits}")));
        }
        if units.is_empty() || units.len() > MAX_GENERATORS {
            return Err(KwError::BoundsExceeded(format!("between 1 and {MAX_GENERATORS} generators")));
        }
        if let Some(i) = units.iter().position(|w| w % 2 == 0) {
            return Err(KwError::UnitInversionFailed(format!("w{i} = {} is not odd", units[i])));
        }
        let units = units.into_iter().map(|w| w & mask(bits)).collect();
        Ok(DividedPowerModel { bits, units })
    }

    /// `wᵢ = C(2^{i+1}, 2^i)/2`, which makes `sᵢ = tᵢ`.
    pub fn binomial_units(bits: u32, count: usize) -> Result<Self, KwError> {
        let count = count.clamp(1, MAX_GENERATORS);
        let v = half_central_binomials(count, bits.min(62));
        Self::new(bits, v)
    }

    /// All `wᵢ = 1`.
    pub fn trivial_units(bits: u32, count: usize) -> Result<Self, KwError> {
        Self::new(bits, vec![1; count.max(1)])
    }

    pub fn generators(&self) -> usize {
        self.units.len()
    }

    /// Highest degree the model represents without truncation.
    pub fn max_degree(&self) -> u64 {
        (1u64 << self.units.len()) - 1
    }

    fn mul_monomials(&self, a: u64, b: u64) -> Result<(u64, u64), KwError> {
        let mut m = a;
        let mut c = 1u64;
        for i in (0..64).filter(|i| b >> i & 1 == 1) {
            let mut i = i as usize;
            while m >> i & 1 == 1 {
                m &= !(1 << i);
                c = mulmod(c, 2 * self.units.get(i).copied().unwrap_or(0), self.bits);
                i += 1;
                if i >= self.units.len() {
                    return Err(KwError::BoundsExceeded(format!(
                        "product needs t{i}, beyond the {} generators",
                        self.units.len()
                    )));
                }
            }
            m |= 1 << i;
        }
        Ok((m, c))
    }

    pub fn mul(&self, a: &DpElement, b: &DpElement) -> Result<DpElement, KwError> {
        let mut out: BTreeMap<u64, u64> = BTreeMap::new();
        for (&sa, &ca) in &a.terms {
            for (&sb, &cb) in &b.terms {
                let (m, c) = self.mul_monomials(sa, sb)?;
                let c = mulmod(mulmod(ca, cb, self.bits), c, self.bits);
                let e = out.entry(m).or_insert(0);
                *e = e.wrapping_add(c) & mask(self.bits);
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(DpElement { terms: out })
    }

    pub fn t(&self, i: usize) -> DpElement {
        DpElement::scalar_monomial(1, 1 << i, self.bits)
    }
}

/// `C(2^{i+1}, 2^i)/2 mod 2^bits` for `i < count`; all odd.
fn half_central_binomials(count: usize, bits: u32) -> Vec<u64> {
    let fact = odd_factorials(1u64 << count, bits);
    (0..count)
        .map(|i| {
            let m = 1usize << i;
            let inv = inverse_mod_pow2(fact[m], bits).expect("odd");
            mulmod(fact[2 * m], mulmod(inv, inv, bits), bits)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DividedPowerCertificate {
    pub bits: u32,
    pub units: Vec<u64>,
    /// `sᵢ = aᵢ tᵢ`
    pub s_scales: Vec<u64>,
    /// `δ_n`, the odd correction in `x_n = δ_n Π sᵢ^{εᵢ}`.
    pub deltas: Vec<u64>,
    pub x: Vec<DpElement>,
    /// `i` such that `sᵢ² ≠ C(2^{i+1}, 2^i) s_{i+1}`.
    pub square_failures: Vec<usize>,
    pub pairs_checked: usize,
    pub pair_failures: Vec<(u64, u64)>,
}

impl DividedPowerCertificate {
    pub fn ok(&self) -> bool {
        self.square_failures.is_empty() && self.pair_failures.is_empty()
    }

    /// The odd unit `u_n` with `x_n = u_n T_{S(n)}`.
    pub fn unit_of(&self, n: usize) -> u64 {
        self.x[n].terms.values().next().copied().unwrap_or(0)
    }
}

/// Builds `s₀ = t₀`, `s_{n+1} = v_n⁻¹ a_n² w_n t_{n+1}` and
/// `x_n = δ_n Π sᵢ^{εᵢ(n)}`, then certifies `x_m x_n = C(m+n, n) x_{m+n}`
/// for all `m + n ≤ nmax`.
pub fn divided_power_construct(model: &DividedPowerModel, nmax: u64) -> Result<DividedPowerCertificate, KwError> {
    if nmax > model.max_degree() {
        return Err(KwError::BoundsExceeded(format!(
            "nmax = {nmax} needs more than {} generators",
            model.generators()
        )));
    }
    let bits = model.bits;
    let count = model.generators();
    let v = half_central_binomials(count, bits);
    let mut a = vec![1u64];
    for n in 0..count - 1 {
        let vinv = inverse_mod_pow2(v[n], bits).ok_or_else(|| KwError::UnitInversionFailed(format!("v{n}")))?;
        a.push(mulmod(mulmod(vinv, mulmod(a[n], a[n], bits), bits), model.units[n], bits));
    }
    let s: Vec<DpElement> = (0..count).map(|i| model.t(i).scale(a[i], bits)).collect();

    let mut square_failures = Vec::new();
    for i in 0..count - 1 {
        let lhs = model.mul(&s[i], &s[i])?;
        let rhs = s[i + 1].scale(2 * v[i], bits);
        if lhs != rhs {
            square_failures.push(i);
        }
    }

    // δ_n = Π (2^i)!^{εᵢ} / n!, as a ratio of odd parts
    let fact = odd_factorials(nmax.max(1 << (count - 1)), bits);
    let deltas: Vec<u64> = (0..=nmax)
        .map(|n| {
            let num = (0..count).filter(|i| n >> i & 1 == 1).fold(1u64, |acc, i| mulmod(acc, fact[1 << i], bits));
            let den = inverse_mod_pow2(fact[n as usize], bits).expect("odd part");
            mulmod(num, den, bits)
        })
        .collect();
    let x: Vec<DpElement> = (0..=nmax)
        .map(|n| {
            let coeff = (0..count).filter(|i| n >> i & 1 == 1).fold(deltas[n as usize], |acc, i| mulmod(acc, a[i], bits));
            DpElement::scalar_monomial(coeff, n, bits)
        })
        .collect();

    let mut pairs_checked = 0;
    let mut pair_failures = Vec::new();
    for m in 0..=nmax {
        for n in 0..=nmax - m {
            pairs_checked += 1;
            let lhs = model.mul(&x[m as usize], &x[n as usize])?;
            let rhs = x[(m + n) as usize].scale(binomial_mod_pow2(m + n, n, &fact, bits), bits);
            if lhs != rhs {
                pair_failures.push((m, n));
            }
        }
    }
    Ok(DividedPowerCertificate {
        bits,
        units: model.units.clone(),
        s_scales: a,
        deltas,
        x,
        square_failures,
        pairs_checked,
        pair_failures,
    })
}

/// `C(n, k) mod 2^bits` from odd parts of factorials and Kummer's carry count.
fn binomial_mod_pow2(n: u64, k: u64, odd_fact: &[u64], bits: u32) -> u64 {
    let carries = (k.count_ones() + (n - k).count_ones() - n.count_ones()) as u32;
    if carries >= bits {
        return 0;
    }
    let inv = mulmod(
        inverse_mod_pow2(odd_fact[k as usize], bits).expect("odd"),
        inverse_mod_pow2(odd_fact[(n - k) as usize], bits).expect("odd"),
        bits,
    );
    mulmod(mulmod(odd_fact[n as usize], inv, bits), 1 << carries, bits)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorsCheck {
    pub field: String,
    pub bits: u32,
    /// `2wᵢ − 2 ∈ I²` in `W/2^K`, per generator.
    pub squares_in_two_plus_i2: Vec<bool>,
    /// `x_n = u_n Π t_i^{εᵢ(n)}` with the unit `u_n` shown.
    pub explicit_units: Vec<(u64, String)>,
    /// Each `u_n` spans the rank-one module in degree `4n`.
    pub lifts: Vec<LiftCertificate>,
    pub x0_is_one: bool,
    pub divided_powers: DividedPowerCertificate,
}

impl GeneratorsCheck {
    pub fn ok(&self) -> bool {
        self.squares_in_two_plus_i2.iter().all(|&b| b)
            && self.lifts.iter().all(LiftCertificate::is_filtered_iso)
            && self.x0_is_one
            && self.divided_powers.ok()
    }
}

/// Model check that `π_{4n}` of the completed `kw ∧ HW` is free of rank one on
/// `x_n = unit · Π tᵢ^{εᵢ(n)}`, with `tᵢ² ∈ (2 + I²) t_{i+1}` and `x₀ = 1`.
/// Uses `wᵢ = C(2^{i+1}, 2^i)/2` and `n < 2^{count}`.
pub fn kw_hw_generators_check(w: &WittPresentation, count: usize, bits: u32) -> Result<GeneratorsCheck, KwError> {
    if w.vcd2.is_none() {
        return Err(KwError::HypothesisViolated(format!(
            "{} has infinite virtual 2-cohomological dimension",
            w.name
        )));
    }
    let model = DividedPowerModel::binomial_units(bits, count)?;
    let nmax = model.max_degree();
    let dp = divided_power_construct(&model, nmax)?;
    let ring = w.mod_two_power(bits);
    let filtered = FilteredRing::i_adic(ring.clone(), 4 * bits as usize + 8)
        .map_err(|e| KwError::HypothesisViolated(e.to_string()))?;
    let two = ring.from_int(2);
    let squares = model
        .units
        .iter()
        .map(|&u| {
            let d = ring.sub(&ring.scale(&BigInt::from(2), &ring.from_int(u)), &two);
            filtered.in_ideal_power(2, &d)
        })
        .collect();
    let free = ModuleModel::shifted_free(filtered, &[0])?;
    let mut units = Vec::new();
    let mut lifts = Vec::new();
    for n in 0..=nmax as usize {
        let u = dp.unit_of(n);
        let lift = lift_free_basis(&free, &[(0, ring.from_int(u))])
            .map_err(|e| KwError::HypothesisViolated(format!("x{n}: {e}")))?;
        units.push((u, dp.x[n].format()));
        lifts.push(lift);
    }
    let x0_is_one = dp.x[0] == DpElement::scalar_monomial(1, 0, bits);
    Ok(GeneratorsCheck {
        field: w.name.clone(),
        bits,
        squares_in_two_plus_i2: squares,
        explicit_units: units,
        lifts,
        x0_is_one,
        divided_powers: dp,
    })
}
