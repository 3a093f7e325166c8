//! Homology models `π_**(E ∧ k^M)` with their η-Bockstein differential δ,
//! and the first two pages of the η-Bockstein spectral sequence.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{subscript, tau_degree, tau_name, xi_degree, xi_name, MotivicBase, SteenrodError};
use crate::graded::{AlgebraBuilder, Cell, Derivation, Element, GradedAlgebra, HomologyReport, F2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// `E = 1`: only `k^M`.
    Sphere,
    /// `E = HZ/2`: all `τ_i`, `ξ_i`.
    Hz2,
    /// `E = HZ`: `τ_i` for `i ≥ 1`.
    Hz,
    /// `E = kgl`: `ξ_1, ξ_2, …, τ_2, …`.
    Kgl,
    /// `E = ko`: `ξ_1^2, ξ_2, …, τ_2, …`.
    Ko,
}

impl ModelKind {
    pub fn parse(s: &str) -> Option<ModelKind> {
        match s {
            "sphere" => Some(ModelKind::Sphere),
            "hz2" => Some(ModelKind::Hz2),
            "hz" => Some(ModelKind::Hz),
            "kgl" => Some(ModelKind::Kgl),
            "ko" => Some(ModelKind::Ko),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Sphere => "sphere",
            ModelKind::Hz2 => "hz2",
            ModelKind::Hz => "hz",
            ModelKind::Kgl => "kgl",
            ModelKind::Ko => "ko",
        }
    }

    /// First `τ_i` present.
    fn first_tau(self) -> Option<u32> {
        match self {
            ModelKind::Sphere => None,
            ModelKind::Hz2 => Some(0),
            ModelKind::Hz => Some(1),
            ModelKind::Kgl | ModelKind::Ko => Some(2),
        }
    }
}

/// Bigraded algebra `π_**(E ∧ k^M)` with the derivation δ of bidegree
/// `(s, w) ↦ (s - 1, w + 1)`.
pub struct Model {
    pub kind: ModelKind,
    pub base: MotivicBase,
    pub algebra: GradedAlgebra<F2>,
    pub delta: Derivation<bool>,
}

pub const XI1_SQUARED: &str = "xi1sq";

pub fn model(kind: ModelKind, base: &MotivicBase, truncation: u32) -> Result<Model, SteenrodError> {
    let mut b = base.add_to(AlgebraBuilder::new(F2, truncation).gradings(2));
    let mut images: Vec<(String, String)> = Vec::new();
    if kind == ModelKind::Ko {
        b = b.polynomial(XI1_SQUARED, 2).grading(&[2, -2]).label("ξ₁²");
    }
    if let Some(first) = kind.first_tau() {
        let first_xi = if kind == ModelKind::Ko { 2 } else { 1 };
        for i in 0.. {
            let (td, xd) = (tau_degree(i), xi_degree(i));
            if td > truncation && (i == 0 || xd > truncation) {
                break;
            }
            if i >= first_xi && xd <= truncation {
                let s = (1i64 << i) - 1;
                b = b.polynomial(&xi_name(i), xd).grading(&[s, -s]).label(&format!("ξ{}", subscript(i)));
                if i >= 2 {
                    let target = if i == 2 && kind == ModelKind::Ko {
                        XI1_SQUARED.to_string()
                    } else {
                        format!("{}^2", xi_name(i - 1))
                    };
                    images.push((xi_name(i), target));
                }
            }
            if i >= first && td <= truncation {
                let s = 1i64 << i;
                b = if 2 * td <= truncation {
                    let image = match &base.rho {
                        Some(r) => format!("{r} {}", tau_name(i + 1)),
                        None => "0".to_string(),
                    };
                    b.square_rewrite(&tau_name(i), td, &image)
                } else {
                    b.exterior(&tau_name(i), td)
                };
                b = b.grading(&[s, 1 - s]).label(&format!("τ{}", subscript(i)));
            }
        }
    }
    let algebra = b.build()?;
    let pairs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let delta = algebra.derivation(-1, &[-1, 1], &pairs)?;
    Ok(Model { kind, base: base.clone(), algebra, delta })
}

pub fn ko_homology_model(base: &MotivicBase, truncation: u32) -> Result<Model, SteenrodError> {
    model(ModelKind::Ko, base, truncation)
}

/// `k^M[τ_2, τ_3, …]/(τ_i^2 - ρτ_{i+1})`, the expected δ-homology of the
/// ko model.
pub fn tau_ring(base: &MotivicBase, truncation: u32) -> Result<GradedAlgebra<F2>, SteenrodError> {
    let mut b = base.add_to(AlgebraBuilder::new(F2, truncation).gradings(2));
    for i in 2.. {
        let td = tau_degree(i);
        if td > truncation {
            break;
        }
        let s = 1i64 << i;
        b = if 2 * td <= truncation {
            let image = match &base.rho {
                Some(r) => format!("{r} {}", tau_name(i + 1)),
                None => "0".to_string(),
            };
            b.square_rewrite(&tau_name(i), td, &image)
        } else {
            b.exterior(&tau_name(i), td)
        };
        b = b.grading(&[s, 1 - s]).label(&format!("τ{}", subscript(i)));
    }
    Ok(b.build()?)
}

/// Cell of stem `s` and weight `w` in a model.
pub fn cell(s: i64, w: i64) -> Cell {
    Cell::graded(2 * s + w, &[s, w])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageBounds {
    pub smax: i64,
    pub fmax: i64,
    pub wmin: i64,
    pub wmax: i64,
}

impl PageBounds {
    /// Every generator has `w ≥ -s`, so `wmin = -smax` misses nothing.
    pub fn new(smax: i64, fmax: i64) -> Self {
        PageBounds { smax, fmax, wmin: -smax, wmax: 2 }
    }

    /// Truncation needed to compute every cell and its incoming boundaries.
    pub fn required_truncation(&self) -> i64 {
        2 * self.smax + self.wmax + self.fmax + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub s: i64,
    pub f: i64,
    pub w: i64,
    pub dim: usize,
    pub basis: Vec<String>,
}

/// Nonzero entries of one page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BocksteinPage {
    pub page: u32,
    pub entries: Vec<PageEntry>,
    pub differentials: Vec<String>,
}

impl BocksteinPage {
    pub fn get(&self, s: i64, f: i64, w: i64) -> usize {
        self.entries.iter().find(|e| (e.s, e.f, e.w) == (s, f, w)).map_or(0, |e| e.dim)
    }

    /// Total dimension per stem.
    pub fn stem_totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.s).or_insert(0) += e.dim;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseReport {
    /// Stems carrying a nonzero `E_2^{s, f>0, w}`.
    pub positive_filtration_stems: Vec<i64>,
    pub concentrated_in_stems_0_mod_4: bool,
    /// `h: E_2^{s,f,w} → E_2^{s,f+1,w-1}` is injective for `f > 0`.
    pub h_injective: bool,
    /// `δ` vanishes on every cell in range.
    pub d1_zero: bool,
    /// First page known to equal `E_∞`, if the degree argument applies.
    pub collapses_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pages {
    pub model: ModelKind,
    pub base: String,
    pub bounds: PageBounds,
    pub truncation: u32,
    pub e1: BocksteinPage,
    pub e2: BocksteinPage,
    pub collapse: CollapseReport,
}

fn h_prefix(f: i64) -> String {
    match f {
        0 => String::new(),
        1 => "h ".into(),
        _ => format!("h{} ", crate::graded::superscript(f as u32)),
    }
}

fn with_h(alg: &GradedAlgebra<F2>, f: i64, e: &Element<bool>) -> String {
    let body = alg.format(e);
    if f == 0 {
        body
    } else if body == "1" {
        h_prefix(f).trim_end().to_string()
    } else if e.terms.len() > 1 {
        format!("{}({body})", h_prefix(f))
    } else {
        format!("{}{body}", h_prefix(f))
    }
}

/// `E_1^{s,f,w} = C_{s,w+f}`, `E_2^{s,0,w} = Z_{s,w}`,
/// `E_2^{s,f>0,w} = H_{s,w+f}`, on every cell within `bounds`.
pub fn bockstein_pages(model: &Model, bounds: PageBounds) -> Result<Pages, SteenrodError> {
    let alg = &model.algebra;
    let needed = bounds.required_truncation();
    if needed > alg.truncation() as i64 {
        return Err(SteenrodError::BoundsExceeded { needed, bound: alg.truncation() });
    }
    let mut cells = Vec::new();
    for s in 0..=bounds.smax {
        for w in bounds.wmin..=bounds.wmax + bounds.fmax {
            if 2 * s + w >= 0 {
                cells.push((s, w));
            }
        }
    }
    let reports: Vec<((i64, i64), HomologyReport)> = cells
        .par_iter()
        .map(|&(s, w)| Ok(((s, w), alg.homology(&model.delta, &cell(s, w))?)))
        .collect::<Result<_, SteenrodError>>()?;
    let reports: BTreeMap<(i64, i64), HomologyReport> = reports.into_iter().collect();

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    let mut d1_zero = true;
    for s in 0..=bounds.smax {
        for w in bounds.wmin..=bounds.wmax {
            for f in 0..=bounds.fmax {
                let Some(r) = reports.get(&(s, w + f)) else { continue };
                let chains = alg.monomials((2 * s + w + f) as u32, Some(&[s, w + f]));
                if r.cycles != chains.len() {
                    d1_zero = false;
                }
                if !chains.is_empty() {
                    e1.push(PageEntry {
                        s,
                        f,
                        w,
                        dim: chains.len(),
                        basis: chains.iter().map(|m| with_h(alg, f, &alg.monomial(m.clone()))).collect(),
                    });
                }
                let (dim, basis) = if f == 0 { (r.cycles, &r.cycle_basis) } else { (r.dim, &r.basis) };
                if dim > 0 {
                    e2.push(PageEntry { s, f, w, dim, basis: basis.iter().map(|e| with_h(alg, f, e)).collect() });
                }
            }
        }
    }

    let mut stems: Vec<i64> = e2.iter().filter(|e| e.f > 0).map(|e| e.s).collect();
    stems.dedup();
    let concentrated = stems.iter().all(|s| s % 4 == 0);
    // on f > 0 both source and target of h are H_{s,w+f}, and h is the identity
    let h_injective = e2
        .iter()
        .filter(|e| e.f > 0 && e.f < bounds.fmax && e.w > bounds.wmin)
        .all(|e| e2.iter().any(|t| (t.s, t.f, t.w) == (e.s, e.f + 1, e.w - 1) && t.dim >= e.dim));
    let collapses_at = match (concentrated && h_injective, d1_zero) {
        (true, true) => Some(1),
        (true, false) => Some(2),
        _ => None,
    };
    Ok(Pages {
        model: model.kind,
        base: model.base.name.clone(),
        bounds,
        truncation: alg.truncation(),
        e1: BocksteinPage { page: 1, entries: e1, differentials: vec!["d1 = δ".into()] },
        e2: BocksteinPage { page: 2, entries: e2, differentials: vec![] },
        collapse: CollapseReport {
            positive_filtration_stems: stems,
            concentrated_in_stems_0_mod_4: concentrated,
            h_injective,
            d1_zero,
            collapses_at,
        },
    })
}

/// Builds the model with the smallest truncation that covers `bounds`.
pub fn pages_for(kind: ModelKind, base: &MotivicBase, bounds: PageBounds) -> Result<Pages, SteenrodError> {
    let t = bounds.required_truncation().max(1) as u32;
    bockstein_pages(&model(kind, base, t)?, bounds)
}

/// Cell-by-cell comparison of δ-homology of the ko model with the Hilbert
/// function of the `τ`-ring. Returns the mismatching cells.
pub fn ko_homology_mismatches(base: &MotivicBase, smax: i64, wmax: i64) -> Result<Vec<(i64, i64)>, SteenrodError> {
    let t = (2 * smax + wmax + 1) as u32;
    let m = ko_homology_model(base, t)?;
    let ring = tau_ring(base, t)?;
    let mut bad = Vec::new();
    for s in 0..=smax {
        for w in -s..=wmax {
            let c = cell(s, w);
            if m.algebra.homology(&m.delta, &c)?.dim != ring.hilbert_dimension_cell(&c)? {
                bad.push((s, w));
            }
        }
    }
    Ok(bad)
}

/// Cell-by-cell check that kgl δ-homology is ko δ-homology tensored with an
/// exterior class on `ξ_1`. Returns the mismatching cells.
pub fn kgl_ko_mismatches(base: &MotivicBase, smax: i64, wmax: i64) -> Result<Vec<(i64, i64)>, SteenrodError> {
    let t = (2 * smax + wmax + 1) as u32;
    let kgl = model(ModelKind::Kgl, base, t)?;
    let ko = ko_homology_model(base, t)?;
    let h = |m: &Model, s: i64, w: i64| -> Result<usize, SteenrodError> {
        if s < 0 || 2 * s + w < 0 {
            return Ok(0);
        }
        Ok(m.algebra.homology(&m.delta, &cell(s, w))?.dim)
    };
    let mut bad = Vec::new();
    for s in 0..=smax {
        for w in -s..=wmax {
            if h(&kgl, s, w)? != h(&ko, s, w)? + h(&ko, s - 1, w + 1)? {
                bad.push((s, w));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_on_xi2() {
        let base = MotivicBase::lookup("real_closed").unwrap();
        let m = ko_homology_model(&base, 12).unwrap();
        let x = m.algebra.generator("xi2").unwrap();
        let d = m.algebra.apply(&m.delta, &x).unwrap();
        assert_eq!(m.algebra.format(&d), "ξ₁²");
    }

    #[test]
    fn sphere_collapses_at_e1() {
        let base = MotivicBase::lookup("real_closed").unwrap();
        let p = pages_for(ModelKind::Sphere, &base, PageBounds::new(4, 3)).unwrap();
        assert_eq!(p.collapse.collapses_at, Some(1));
        assert!(p.e2.entries.iter().all(|e| e.s == 0));
        assert_eq!(p.e2.get(0, 1, -1), 1);
    }
}
