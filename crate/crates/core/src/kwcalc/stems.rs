//! Stem tables: the η-periodic sphere, `HW ∧ HW`, and the cobordism rings.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::KwError;
use crate::abelian::{ker_coker_of_mul, FinAbGroup};
use crate::graded::partitions_into;
use crate::witt::WittPresentation;

pub const BUNDLED_STEMS: &str = include_str!("../../data/stable_stems.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
struct StemsRow {
    degree: u32,
    free_rank: usize,
    #[serde(with = "crate::bigint_serde::vec")]
    torsion: Vec<BigInt>,
    #[serde(default)]
    source: String,
}

/// Classical stable stems `π_n^s` for `0 ≤ n ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableStemsData {
    pub groups: Vec<FinAbGroup>,
    pub sources: Vec<String>,
}

impl StableStemsData {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_STEMS).expect("bundled stems data is valid")
    }

    /// Rows must be contiguous from degree 0 and in Smith normal form.
    pub fn from_json(text: &str) -> Result<Self, KwError> {
        let rows: Vec<serde_json::Value> = serde_json::from_str(text)
            .map_err(|e| KwError::StemsData { location: format!("line {}", e.line()), reason: e.to_string() })?;
        let mut groups = Vec::new();
        let mut sources = Vec::new();
        for (k, v) in rows.into_iter().enumerate() {
            let loc = format!("row {k}");
            let row: StemsRow = serde_json::from_value(v)
                .map_err(|e| KwError::StemsData { location: loc.clone(), reason: e.to_string() })?;
            if row.degree as usize != k {
                return Err(KwError::StemsData {
                    location: loc,
                    reason: format!("expected degree {k}, found {} (rows must be contiguous from 0)", row.degree),
                });
            }
            let g = FinAbGroup::new(row.free_rank, row.torsion).map_err(|e| KwError::StemsInvariant {
                location: format!("degree {}", row.degree),
                reason: e.to_string(),
            })?;
            groups.push(g);
            sources.push(row.source);
        }
        if groups.is_empty() {
            return Err(KwError::StemsData { location: "file".into(), reason: "no rows".into() });
        }
        Ok(StableStemsData { groups, sources })
    }

    pub fn max_degree(&self) -> u32 {
        self.groups.len() as u32 - 1
    }

    pub fn get(&self, n: u32) -> Result<&FinAbGroup, KwError> {
        self.groups.get(n as usize).ok_or(KwError::DegreeOutOfRange { degree: n, max: self.max_degree() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StemsEntry {
    pub degree: u32,
    /// 2-local summand (ker/coker of `8n`, or `W` itself in degree 0).
    pub witt_part: FinAbGroup,
    /// `W[1/2] ⊗ π_n^s`
    pub odd_part: FinAbGroup,
    /// Which construction the 2-local summand comes from.
    pub origin: String,
    pub formatted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StemsTable {
    pub field: String,
    pub title: String,
    pub entries: Vec<StemsEntry>,
}

impl StemsTable {
    pub fn entry(&self, n: u32) -> Option<&StemsEntry> {
        self.entries.iter().find(|e| e.degree == n)
    }
}

/// Unicode rendering, `ℤ/16 ⊕ ℤ/15`.
pub fn format_group(g: &FinAbGroup, free_symbol: &str) -> String {
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push(free_symbol.to_string()),
        r => parts.push(format!("{free_symbol}^{r}")),
    }
    for d in g.torsion() {
        parts.push(format!("ℤ/{d}"));
    }
    parts.join(" ⊕ ")
}

fn join(parts: &[String]) -> String {
    let parts: Vec<&str> = parts.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn two_local(w: &WittPresentation) -> FinAbGroup {
    w.additive.localized_at_two()
}

/// `W[1/2] ⊗ A` for a finitely generated `A`: one copy of the odd part of
/// `A` per signature (free summand of `W`).
fn odd_tensor(w: &WittPresentation, a: &FinAbGroup) -> FinAbGroup {
    let odd = a.odd_torsion();
    (0..w.additive.free_rank()).fold(FinAbGroup::zero(), |g, _| g.direct_sum(&odd))
}

const LOCAL_Z: &str = "ℤ₍₂₎";

/// `π_n(1[η^{-1}])` for `0 ≤ n ≤ max`: `W` in degree 0;
/// `W[1/2]⊗π^s ⊕ coker(8m)` in degree `4m-1`; `W[1/2]⊗π^s ⊕ ker(8m)` in
/// degree `4m`; `W[1/2]⊗π^s` otherwise.
pub fn eta_stems(w: &WittPresentation, stems: &StableStemsData, max: u32) -> Result<StemsTable, KwError> {
    let needs_stems = w.additive.free_rank() > 0;
    if needs_stems && max > stems.max_degree() {
        return Err(KwError::DegreeOutOfRange { degree: max, max: stems.max_degree() });
    }
    let w2 = two_local(w);
    let entries = (0..=max)
        .into_par_iter()
        .map(|n| {
            let odd = if n == 0 || !needs_stems { FinAbGroup::zero() } else { odd_tensor(w, stems.get(n)?) };
            let (witt_part, origin) = if n == 0 {
                (w.additive.clone(), "W(k)".to_string())
            } else if n % 4 == 3 {
                let m = (n + 1) / 4;
                let (_, coker) = ker_coker_of_mul(&w2, &BigInt::from(8 * m));
                (coker.localized_at_two(), format!("coker(8·{m})"))
            } else if n % 4 == 0 {
                let m = n / 4;
                let (ker, _) = ker_coker_of_mul(&w2, &BigInt::from(8 * m));
                (ker.localized_at_two(), format!("ker(8·{m})"))
            } else {
                (FinAbGroup::zero(), String::new())
            };
            let free = if n == 0 { "ℤ" } else { LOCAL_Z };
            let formatted = join(&[format_group(&witt_part, free), format_group(&odd, "ℤ[1/2]")]);
            Ok(StemsEntry { degree: n, witt_part, odd_part: odd, origin, formatted })
        })
        .collect::<Result<Vec<_>, KwError>>()?;
    Ok(StemsTable { field: w.name.clone(), title: "π_n(1[η⁻¹])".into(), entries })
}

/// `π_n(HW ∧ HW)_(2)`: `coker(8m)` in degree `4m` (`W_(2)` for `m = 0`) and
/// `ker(8m)` in degree `4m+1`.
pub fn hw_hw_stems(w: &WittPresentation, max: u32) -> StemsTable {
    let w2 = two_local(w);
    let entries = (0..=max)
        .map(|n| {
            let m = n / 4;
            let (ker, coker) = ker_coker_of_mul(&w2, &BigInt::from(8 * m));
            let (g, origin) = match n % 4 {
                0 if m == 0 => (w2.clone(), "W(k)_(2)".to_string()),
                0 => (coker.localized_at_two(), format!("coker(8·{m})")),
                1 if m > 0 => (ker.localized_at_two(), format!("ker(8·{m})")),
                _ => (FinAbGroup::zero(), String::new()),
            };
            let formatted = join(&[format_group(&g, LOCAL_Z)]);
            StemsEntry { degree: n, witt_part: g, odd_part: FinAbGroup::zero(), origin, formatted }
        })
        .collect();
    StemsTable { field: w.name.clone(), title: "π_n(HW ∧ HW)₍₂₎".into(), entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cobordism {
    #[serde(rename = "MSp")]
    Msp,
    #[serde(rename = "MSL")]
    Msl,
}

impl Cobordism {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "msp" => Some(Cobordism::Msp),
            "msl" => Some(Cobordism::Msl),
            _ => None,
        }
    }

    /// Degrees of the polynomial generators `y_i` up to `max`.
    pub fn generator_degrees(self, max: u32) -> Vec<usize> {
        let step = match self {
            Cobordism::Msp => 2,
            Cobordism::Msl => 4,
        };
        (1..).map(|i| i * step).take_while(|&d| d <= max as usize).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobordismEntry {
    pub degree: u32,
    /// Rank as a free `W(k)`-module.
    pub rank: u64,
}

/// Ranks of `π_n MSp[η^{-1}] = W[y_1, y_2, …]` (`|y_i| = 2i`) or
/// `π_n MSL[η^{-1}] = W[y_2, y_4, …]`.
pub fn cobordism_stems(theory: Cobordism, max: u32) -> Vec<CobordismEntry> {
    let parts = theory.generator_degrees(max);
    (0..=max).map(|n| CobordismEntry { degree: n, rank: partitions_into(n as usize, &parts) }).collect()
}
