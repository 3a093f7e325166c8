//! Witt rings of fields given by finite presentations, Grothendieck–Witt
//! elements, and 2-local arithmetic.
//!
//! An element is an integer coordinate vector on the additive group of the
//! presentation, in the coordinate convention of [`FinAbGroup`].

pub mod brute;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{solve_integer, smith_normal_form, FinAbGroup, GroupHom, Quotient};
use crate::bigint_serde;
use crate::linalg::IntMatrix;

pub type WittElement = Vec<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("invalid presentation {name:?}: {reason}")]
    InvalidPresentation { name: String, reason: String },
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    Unsupported(String),
    #[error("rank {rank} and Witt class disagree mod 2")]
    RankParity { rank: String },
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct WittPresentation {
    pub name: String,
    pub additive: FinAbGroup,
    /// `mult_table[i][j]` are the coordinates of `g_i * g_j`.
    pub mult_table: Vec<Vec<WittElement>>,
    pub unit: WittElement,
    pub minus_one: WittElement,
    /// Rank mod 2 of each additive generator.
    pub rank_mod2: Vec<u8>,
    /// Additive generators of the fundamental ideal.
    pub ideal_generators: Vec<WittElement>,
    /// `None` stands for infinite virtual 2-cohomological dimension.
    pub vcd2: Option<u32>,
    pub generator_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    name: String,
    additive: FinAbGroup,
    #[serde(with = "bigint_serde::vec3")]
    mult_table: Vec<Vec<Vec<BigInt>>>,
    #[serde(with = "bigint_serde::vec")]
    unit: Vec<BigInt>,
    #[serde(with = "bigint_serde::vec")]
    minus_one: Vec<BigInt>,
    rank_mod2: Vec<u8>,
    #[serde(with = "bigint_serde::vec2")]
    ideal_generators: Vec<Vec<BigInt>>,
    vcd2: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generator_names: Vec<String>,
}

#[derive(Deserialize)]
struct LooseGroup {
    free_rank: usize,
    #[serde(with = "bigint_serde::vec")]
    torsion: Vec<BigInt>,
}

impl TryFrom<RawPresentation> for WittPresentation {
    type Error = WittError;
    fn try_from(r: RawPresentation) -> Result<Self, WittError> {
        let n = r.additive.ngens();
        let generator_names = if r.generator_names.is_empty() {
            default_names(n)
        } else {
            r.generator_names
        };
        let w = WittPresentation {
            name: r.name,
            additive: r.additive,
            mult_table: r.mult_table,
            unit: r.unit,
            minus_one: r.minus_one,
            rank_mod2: r.rank_mod2,
            ideal_generators: r.ideal_generators,
            vcd2: r.vcd2,
            generator_names,
        };
        w.validate()?;
        Ok(w.normalized())
    }
}

impl From<WittPresentation> for RawPresentation {
    fn from(w: WittPresentation) -> Self {
        let names = if w.generator_names == default_names(w.additive.ngens()) {
            vec![]
        } else {
            w.generator_names
        };
        RawPresentation {
            name: w.name,
            additive: w.additive,
            mult_table: w.mult_table,
            unit: w.unit,
            minus_one: w.minus_one,
            rank_mod2: w.rank_mod2,
            ideal_generators: w.ideal_generators,
            vcd2: w.vcd2,
            generator_names: names,
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

impl fmt::Debug for WittPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittPresentation({}: {})", self.name, self.additive)
    }
}

impl WittPresentation {
    fn invalid(&self, reason: impl Into<String>) -> WittError {
        WittError::InvalidPresentation { name: self.name.clone(), reason: reason.into() }
    }

    pub fn ngens(&self) -> usize {
        self.additive.ngens()
    }

    fn normalized(mut self) -> Self {
        let g = self.additive.clone();
        for row in &mut self.mult_table {
            for e in row.iter_mut() {
                *e = g.reduce(e);
            }
        }
        self.unit = g.reduce(&self.unit);
        self.minus_one = g.reduce(&self.minus_one);
        self.ideal_generators = self.ideal_generators.iter().map(|x| g.reduce(x)).collect();
        self
    }

    /// Checks the ring axioms on generators plus the structural
    /// conditions on rank, the ideal, and `vcd2`.
    pub fn validate(&self) -> Result<(), WittError> {
        let n = self.ngens();
        let arity = |v: &WittElement| v.len() == n;
        if self.mult_table.len() != n
            || self.mult_table.iter().any(|r| r.len() != n || !r.iter().all(arity))
        {
            return Err(self.invalid("multiplication table has the wrong shape"));
        }
        if !arity(&self.unit) || !arity(&self.minus_one) || self.rank_mod2.len() != n {
            return Err(self.invalid("unit, minus_one or rank_mod2 has the wrong length"));
        }
        if !self.ideal_generators.iter().all(arity) {
            return Err(self.invalid("ideal generator has the wrong length"));
        }
        if self.generator_names.len() != n {
            return Err(self.invalid("generator_names has the wrong length"));
        }
        if self.rank_mod2.iter().any(|&b| b > 1) {
            return Err(self.invalid("rank_mod2 entries must be 0 or 1"));
        }
        let g = &self.additive;
        // well defined on torsion generators
        for i in g.free_rank()..n {
            let d = g.generator_order(i);
            if self.rank_mod2[i] == 1 && d.is_odd() {
                return Err(self.invalid(format!("rank mod 2 not defined on generator {i}")));
            }
            for j in 0..n {
                let x: Vec<BigInt> = self.mult_table[i][j].iter().map(|c| c * &d).collect();
                if !g.is_zero_element(&x) {
                    return Err(self.invalid(format!("product g{i} g{j} ignores the order of g{i}")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.eq(&self.mult_table[i][j], &self.mult_table[j][i]) {
                    return Err(self.invalid(format!("not commutative at g{i} g{j}")));
                }
                let r = self.rank(&self.mult_table[i][j]);
                if r != self.rank_mod2[i] * self.rank_mod2[j] {
                    return Err(self.invalid(format!("rank not multiplicative at g{i} g{j}")));
                }
                for k in 0..n {
                    let l = self.mul(&self.mult_table[i][j], &self.basis(k));
                    let r = self.mul(&self.basis(i), &self.mult_table[j][k]);
                    if !self.eq(&l, &r) {
                        return Err(self.invalid(format!("not associative at g{i} g{j} g{k}")));
                    }
                }
            }
            if !self.eq(&self.mul(&self.unit, &self.basis(i)), &self.basis(i)) {
                return Err(self.invalid(format!("unit does not fix g{i}")));
            }
        }
        if self.rank(&self.unit) != 1 {
            return Err(self.invalid("unit must have odd rank"));
        }
        if !self.eq(&self.mul(&self.minus_one, &self.minus_one), &self.unit) {
            return Err(self.invalid("<-1> must square to 1"));
        }
        if !self.is_zero(&self.add(&self.unit, &self.minus_one)) {
            return Err(self.invalid("<1> + <-1> must vanish"));
        }
        if self.ideal_generators.iter().any(|x| self.rank(x) != 0) {
            return Err(self.invalid("ideal generators must have even rank"));
        }
        let cols: Vec<Vec<BigInt>> = self.ideal_generators.clone();
        let m = IntMatrix::from_columns(n, &cols).hcat(&g.relation_matrix());
        let q = Quotient::of_relations(n, &m);
        if q.group != FinAbGroup::cyclic(2) {
            return Err(self.invalid(format!(
                "ideal generators span a subgroup with quotient {}, expected Z/2",
                q.group
            )));
        }
        if let Some(v) = self.vcd2 {
            let power = self.ideal_power_generators(v as usize + 1);
            for x in power {
                if !self.divisible_by_two(&x) {
                    return Err(self.invalid(format!("I^{} is not contained in 2W", v + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> WittElement {
        let mut v = vec![BigInt::zero(); self.ngens()];
        v[i] = BigInt::one();
        v
    }

    pub fn zero(&self) -> WittElement {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn one(&self) -> WittElement {
        self.unit.clone()
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> WittElement {
        self.scale(&n.into(), &self.unit)
    }

    pub fn reduce(&self, x: &[BigInt]) -> WittElement {
        self.additive.reduce(x)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> WittElement {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> WittElement {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[BigInt]) -> WittElement {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> WittElement {
        self.reduce(&a.iter().map(|x| x * k).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> WittElement {
        let n = self.ngens();
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (k, t) in self.mult_table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        self.reduce(&out)
    }

    pub fn pow(&self, a: &[BigInt], e: u32) -> WittElement {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        self.additive.is_zero_element(a)
    }

    pub fn eq(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// Rank mod 2.
    pub fn rank(&self, a: &[BigInt]) -> u8 {
        let s: BigInt = a
            .iter()
            .zip(&self.rank_mod2)
            .filter(|(_, &r)| r == 1)
            .map(|(x, _)| x.clone())
            .sum();
        if s.is_odd() {
            1
        } else {
            0
        }
    }

    fn divisible_by_two(&self, x: &[BigInt]) -> bool {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(2));
        }
        solve_integer(&m.hcat(&self.additive.relation_matrix()), x).is_some()
    }

    /// Additive generators of `I^k` (`I^0 = W`).
    pub fn ideal_power_generators(&self, k: usize) -> Vec<WittElement> {
        if k == 0 {
            return (0..self.ngens()).map(|j| self.basis(j)).collect();
        }
        let mut gens: Vec<WittElement> =
            self.ideal_generators.iter().filter(|x| !self.is_zero(x)).cloned().collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for a in &gens {
                for b in &self.ideal_generators {
                    let p = self.mul(a, b);
                    if !self.is_zero(&p) && !next.iter().any(|x: &WittElement| self.eq(x, &p)) {
                        next.push(p);
                    }
                }
            }
            gens = next;
        }
        gens
    }

    /// `I^k` as a subgroup, together with the quotient `W / I^k`.
    pub fn fundamental_ideal_power(&self, k: usize) -> IdealPower {
        let gens = self.ideal_power_generators(k);
        let n = self.ngens();
        let incl = GroupHom::new(
            FinAbGroup::free(gens.len()),
            self.additive.clone(),
            IntMatrix::from_columns(n, &gens),
        )
        .expect("free source");
        IdealPower { power: k, subgroup: incl.image(), quotient: incl.cokernel().group, generators: gens }
    }

    pub fn format(&self, a: &[BigInt]) -> String {
        let a = self.reduce(a);
        let mut parts = Vec::new();
        for (c, name) in a.iter().zip(&self.generator_names) {
            if c.is_zero() {
                continue;
            }
            let term = if name == "1" {
                c.to_string()
            } else if c.is_one() {
                name.clone()
            } else {
                format!("{c} {name}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Reduction modulo `2^k W`, again as a presentation.
    pub fn mod_two_power(&self, k: u32) -> WittPresentation {
        let n = self.ngens();
        let m = BigInt::one() << k;
        let mut rel = self.additive.relation_matrix();
        let mut scaled = IntMatrix::zeros(n, n);
        for i in 0..n {
            scaled.set(i, i, m.clone());
        }
        rel = rel.hcat(&scaled);
        let q = Quotient::of_relations(n, &rel);
        let g = q.group.clone();
        let new_n = g.ngens();
        let lifts: Vec<WittElement> = (0..new_n).map(|a| q.lift.column(a)).collect();
        let mult_table = lifts
            .iter()
            .map(|x| lifts.iter().map(|y| q.project(&self.mul(x, y))).collect())
            .collect();
        let rank_mod2 = lifts.iter().map(|x| self.rank(x)).collect();
        let ideal: Vec<WittElement> = self
            .ideal_generators
            .iter()
            .map(|x| q.project(x))
            .filter(|x| !g.is_zero_element(x))
            .collect();
        let names = lifts.iter().map(|x| self.format(x)).map(|s| if s == "1" { s } else { format!("[{s}]") }).collect();
        WittPresentation {
            name: format!("{}/2^{k}", self.name),
            additive: g,
            mult_table,
            unit: q.project(&self.unit),
            minus_one: q.project(&self.minus_one),
            rank_mod2,
            ideal_generators: ideal,
            vcd2: self.vcd2,
            generator_names: names,
        }
    }

    /// Inverse in the 2-localization, for elements of odd rank.
    pub fn inverse_2local(&self, a: &[BigInt]) -> Option<Local2> {
        if self.rank(a) != 1 {
            return None;
        }
        let n = self.ngens();
        // columns: a * g_j
        let cols: Vec<WittElement> = (0..n).map(|j| self.mul(a, &self.basis(j))).collect();
        let m = IntMatrix::from_columns(n, &cols).hcat(&self.additive.relation_matrix());
        let snf = smith_normal_form(&m);
        let ub = snf.u.apply(&self.unit);
        let mut den = BigInt::one();
        for d in &snf.diagonal {
            let two = crate::abelian::p_part(d, &BigInt::from(2));
            den *= d / two;
        }
        let mut y = vec![BigInt::zero(); m.cols()];
        for (i, x) in ub.iter().enumerate() {
            let x = x * &den;
            if i < snf.rank() {
                let (q, r) = x.div_mod_floor(&snf.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        let x = snf.v.apply(&y)[..n].to_vec();
        let inv = Local2 { num: self.reduce(&x), den };
        debug_assert!(self.local_eq(
            &self.local_mul(&Local2::from(a.to_vec()), &inv),
            &Local2::from(self.one())
        ));
        Some(inv)
    }

    pub fn local_mul(&self, a: &Local2, b: &Local2) -> Local2 {
        Local2 { num: self.mul(&a.num, &b.num), den: &a.den * &b.den }
    }

    pub fn local_add(&self, a: &Local2, b: &Local2) -> Local2 {
        let x = self.scale(&b.den, &a.num);
        let y = self.scale(&a.den, &b.num);
        Local2 { num: self.add(&x, &y), den: &a.den * &b.den }
    }

    /// Equality in `W_(2)`: the cross difference has odd order.
    pub fn local_eq(&self, a: &Local2, b: &Local2) -> bool {
        let z = self.sub(&self.scale(&b.den, &a.num), &self.scale(&a.den, &b.num));
        self.is_two_locally_zero(&z)
    }

    pub fn is_two_locally_zero(&self, z: &[BigInt]) -> bool {
        let g = &self.additive;
        let two = BigInt::from(2);
        z.iter().enumerate().all(|(i, x)| {
            if i < g.free_rank() {
                x.is_zero()
            } else {
                let d = g.generator_order(i);
                x.mod_floor(&crate::abelian::p_part(&d, &two)).is_zero()
            }
        })
    }

    /// The Witt part of `n_ε = <1> + <-1> + <1> + ...` (n terms).
    pub fn n_epsilon(&self, n: u64) -> GwElement {
        let ones = BigInt::from(n.div_ceil(2));
        let minus = BigInt::from(n / 2);
        let witt = self.add(&self.scale(&ones, &self.unit), &self.scale(&minus, &self.minus_one));
        GwElement { witt, rank: BigInt::from(n) }
    }

    /// Builds a Grothendieck–Witt element as a pair in `W ×_{Z/2} Z`.
    pub fn gw_pullback(&self, witt: WittElement, rank: BigInt) -> Result<GwElement, WittError> {
        let parity = if rank.is_odd() { 1 } else { 0 };
        if self.rank(&witt) != parity {
            return Err(WittError::RankParity { rank: rank.to_string() });
        }
        Ok(GwElement { witt: self.reduce(&witt), rank })
    }

    pub fn gw_mul(&self, a: &GwElement, b: &GwElement) -> GwElement {
        GwElement { witt: self.mul(&a.witt, &b.witt), rank: &a.rank * &b.rank }
    }

    pub fn gw_add(&self, a: &GwElement, b: &GwElement) -> GwElement {
        GwElement { witt: self.add(&a.witt, &b.witt), rank: &a.rank + &b.rank }
    }

    pub fn gw_from_int(&self, n: impl Into<BigInt>) -> GwElement {
        let n = n.into();
        GwElement { witt: self.from_int(n.clone()), rank: n }
    }

    /// Number of elements, for finite Witt rings.
    pub fn order(&self) -> Option<usize> {
        self.additive.order()?.to_usize()
    }
}

/// `I^k` and `W / I^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPower {
    pub power: usize,
    pub generators: Vec<WittElement>,
    pub subgroup: FinAbGroup,
    pub quotient: FinAbGroup,
}

/// Element of `W_(2)` as a fraction with odd denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Local2 {
    pub num: WittElement,
    pub den: BigInt,
}

impl From<WittElement> for Local2 {
    fn from(num: WittElement) -> Self {
        Local2 { num, den: BigInt::one() }
    }
}

/// Element of `GW = W ×_{Z/2} Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GwElement {
    #[serde(with = "bigint_serde::vec")]
    pub witt: WittElement,
    #[serde(with = "bigint_serde")]
    pub rank: BigInt,
}

/// Bundled set of Witt presentations.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub fields: Vec<WittPresentation>,
}

pub const BUNDLED_CATALOG: &str = include_str!("../../data/witt_catalog.json");

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog, WittError> {
        let rows: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| WittError::Parse(format!("line {}: {e}", e.line())))?;
        let mut fields = Vec::with_capacity(rows.len());
        for (k, mut v) in rows.into_iter().enumerate() {
            // the additive group is checked separately so that a bad invariant
            // factor reports as an invalid presentation, not a parse failure
            let name = v.get("name").and_then(|n| n.as_str()).unwrap_or("?").to_string();
            let additive = v.get_mut("additive").map(serde_json::Value::take).unwrap_or_default();
            let group: LooseGroup = serde_json::from_value(additive)
                .map_err(|e| WittError::Parse(format!("entry {k} ({name:?}), additive: {e}")))?;
            let group = FinAbGroup::new(group.free_rank, group.torsion)
                .map_err(|e| WittError::InvalidPresentation { name: name.clone(), reason: e.to_string() })?;
            let mut raw: RawPresentation = {
                v["additive"] = serde_json::json!({"free_rank": 0, "torsion": []});
                serde_json::from_value(v).map_err(|e| WittError::Parse(format!("entry {k} ({name:?}): {e}")))?
            };
            raw.additive = group;
            fields.push(WittPresentation::try_from(raw)?);
        }
        let mut seen = std::collections::BTreeSet::new();
        for f in &fields {
            if !seen.insert(f.name.clone()) {
                return Err(WittError::Parse(format!("duplicate field name {:?}", f.name)));
            }
        }
        Ok(Catalog { fields })
    }

    pub fn bundled() -> Catalog {
        Catalog::from_json(BUNDLED_CATALOG).expect("bundled catalog is valid")
    }

    pub fn lookup(&self, name: &str) -> Result<&WittPresentation, WittError> {
        self.fields
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| WittError::UnknownField(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.fields.iter().map(|f| f.name.as_str()).collect()
    }
}

/// Looks up a field in the bundled catalog.
pub fn catalog_lookup(name: &str) -> Result<WittPresentation, WittError> {
    Catalog::bundled().lookup(name).cloned()
}

/// Searches for a ring isomorphism `a -> b` between finite presentations by
/// trying every assignment of images to the additive generators of `a`.
/// Returns the images of the generators of `a`.
pub fn find_ring_isomorphism(a: &WittPresentation, b: &WittPresentation) -> Option<Vec<WittElement>> {
    let elems_a = a.additive.elements()?;
    let elems_b = b.additive.elements()?;
    if elems_a.len() != elems_b.len() {
        return None;
    }
    let n = a.ngens();
    let mut choice = vec![0usize; n];
    loop {
        let imgs: Vec<&WittElement> = choice.iter().map(|&c| &elems_b[c]).collect();
        if accepts(a, b, &imgs, &elems_a) {
            return Some(imgs.into_iter().cloned().collect());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            choice[k] += 1;
            if choice[k] < elems_b.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn accepts(a: &WittPresentation, b: &WittPresentation, imgs: &[&WittElement], elems_a: &[WittElement]) -> bool {
    let map = |x: &[BigInt]| -> WittElement {
        let mut out = b.zero();
        for (c, img) in x.iter().zip(imgs) {
            out = b.add(&out, &b.scale(c, img));
        }
        out
    };
    for i in 0..a.ngens() {
        if !b.is_zero(&b.scale(&a.additive.generator_order(i), imgs[i])) {
            return false;
        }
    }
    if !b.eq(&map(&a.unit), &b.unit) {
        return false;
    }
    for i in 0..a.ngens() {
        for j in 0..a.ngens() {
            if !b.eq(&map(&a.mult_table[i][j]), &b.mul(imgs[i], imgs[j])) {
                return false;
            }
        }
    }
    let mut images: Vec<WittElement> = elems_a.iter().map(|x| map(x)).collect();
    images.sort();
    images.dedup();
    images.len() == elems_a.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn bundled_catalog_has_six_fields() {
        let c = Catalog::bundled();
        assert_eq!(c.fields.len(), 6);
        for f in &c.fields {
            f.validate().unwrap();
        }
    }

    #[test]
    fn real_closed_ideal_square() {
        let w = catalog_lookup("real_closed").unwrap();
        let p = w.fundamental_ideal_power(2);
        assert_eq!(p.generators, vec![vec![b(4)]]);
        assert_eq!(p.quotient, FinAbGroup::cyclic(4));
    }

    #[test]
    fn n_epsilon_examples() {
        let w = catalog_lookup("real_closed").unwrap();
        let e = w.n_epsilon(3);
        assert_eq!(e.rank, b(3));
        assert_eq!(e.witt, vec![b(1)]);
        let q = catalog_lookup("quadratically_closed").unwrap();
        let e2 = q.n_epsilon(2);
        assert_eq!(e2.rank, b(2));
        assert!(q.is_zero(&e2.witt));
    }

    #[test]
    fn three_inverts_two_locally() {
        let w = catalog_lookup("real_closed").unwrap();
        let inv = w.inverse_2local(&[b(3)]).unwrap();
        assert_eq!(inv.den, b(3));
        assert!(w.local_eq(&w.local_mul(&inv, &Local2::from(vec![b(3)])), &Local2::from(w.one())));
        assert!(w.inverse_2local(&[b(2)]).is_none());
    }

    #[test]
    fn mod_two_power_of_integers() {
        let w = catalog_lookup("real_closed").unwrap().mod_two_power(3);
        assert_eq!(w.additive, FinAbGroup::cyclic(8));
        w.validate().unwrap();
    }

    #[test]
    fn unknown_field() {
        assert_eq!(catalog_lookup("Q_7").unwrap_err(), WittError::UnknownField("Q_7".into()));
    }
}
