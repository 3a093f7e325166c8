//! Graded commutative algebras over small coefficient rings, with
//! derivations, homology over F2, and Hilbert functions.
//!
//! Every generator carries a positive degree used for truncation, plus an
//! optional vector of extra gradings. Elements are finite sums of normal
//! monomials (dense exponent vectors).

pub mod filtered;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{f2_eliminate, rank_over_q, BitVec, EchelonF2};
use crate::witt::{Catalog, WittElement, WittPresentation};

pub const DEFAULT_TRUNCATION: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("degree {degree} exceeds the truncation bound {bound}")]
    TruncationExceeded { degree: i64, bound: u32 },
    #[error("differential does not square to zero in degree {degree}")]
    NonSquareZero { degree: i64 },
    #[error("invalid algebra: {0}")]
    InvalidSpec(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not free: {0}")]
    NotFree(String),
    #[error("operation needs a field of coefficients, have {0}")]
    NeedsField(String),
}

/// Coefficient ring interface.
pub trait Coefficients: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether 2 = 0 in the ring.
    fn char_two(&self) -> bool;
    fn label(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    /// Rank of a matrix given by rows, when the ring is a field (or a
    /// domain whose fraction field is used).
    fn rank(&self, _rows: &[Vec<Self::Elem>]) -> Option<usize> {
        None
    }

    fn one(&self) -> Self::Elem {
        self.from_int(&BigInt::one())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F2;

impl Coefficients for F2 {
    type Elem = bool;
    fn zero(&self) -> bool {
        false
    }
    fn from_int(&self, n: &BigInt) -> bool {
        n.is_odd()
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    fn is_zero(&self, a: &bool) -> bool {
        !a
    }
    fn char_two(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        "F2".into()
    }
    fn format(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }
    fn rank(&self, rows: &[Vec<bool>]) -> Option<usize> {
        let Some(n) = rows.first().map(|r| r.len()) else { return Some(0) };
        let mut e = EchelonF2::new();
        for r in rows {
            let mut v = BitVec::zeros(n);
            for (i, &b) in r.iter().enumerate() {
                v.set(i, b);
            }
            e.insert(&v);
        }
        Some(e.rank())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

impl Coefficients for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn char_two(&self) -> bool {
        false
    }
    fn label(&self) -> String {
        "Z".into()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    /// Rank over the rationals.
    fn rank(&self, rows: &[Vec<BigInt>]) -> Option<usize> {
        Some(rank_over_q(rows))
    }
}

/// `Z / 2^bits`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPow2 {
    bits: u32,
    modulus: BigInt,
}

impl ModPow2 {
    pub fn new(bits: u32) -> Self {
        ModPow2 { bits, modulus: BigInt::one() << bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn red(&self, a: BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl Coefficients for ModPow2 {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.red(n.clone())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.red(a + b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.red(a * b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.red(-a)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn char_two(&self) -> bool {
        self.bits <= 1
    }
    fn label(&self) -> String {
        format!("Z/2^{}", self.bits)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn rank(&self, rows: &[Vec<BigInt>]) -> Option<usize> {
        (self.bits == 1).then(|| {
            let bits: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|x| x.is_odd()).collect()).collect();
            F2.rank(&bits).unwrap()
        })
    }
}

/// A Witt ring from the catalog as coefficients.
#[derive(Clone, Debug)]
pub struct WittCoefficients(pub Arc<WittPresentation>);

impl Coefficients for WittCoefficients {
    type Elem = WittElement;
    fn zero(&self) -> WittElement {
        self.0.zero()
    }
    fn from_int(&self, n: &BigInt) -> WittElement {
        self.0.from_int(n.clone())
    }
    fn add(&self, a: &WittElement, b: &WittElement) -> WittElement {
        self.0.add(a, b)
    }
    fn mul(&self, a: &WittElement, b: &WittElement) -> WittElement {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &WittElement) -> WittElement {
        self.0.neg(a)
    }
    fn is_zero(&self, a: &WittElement) -> bool {
        self.0.is_zero(a)
    }
    fn char_two(&self) -> bool {
        self.0.is_zero(&self.0.from_int(2))
    }
    fn label(&self) -> String {
        format!("W({})", self.0.name)
    }
    fn format(&self, a: &WittElement) -> String {
        let s = self.0.format(a);
        if s.contains(' ') {
            format!("({s})")
        } else {
            s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Polynomial,
    Exterior,
    /// `g^2` is rewritten to a fixed element.
    SquareRewrite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub label: String,
    pub degree: u32,
    pub grading: Vec<i64>,
    pub kind: GeneratorKind,
}

pub type Monomial = Vec<u32>;

/// Finite sum of normal monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<E> {
    pub terms: BTreeMap<Monomial, E>,
}

impl<E> Element<E> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

type Expansion<E> = Vec<(Monomial, E)>;

#[derive(Debug)]
pub struct GradedAlgebra<C: Coefficients> {
    coeffs: C,
    gens: Vec<Generator>,
    square_images: Vec<Option<Expansion<C::Elem>>>,
    truncation: u32,
    ngradings: usize,
    cache: RwLock<HashMap<Monomial, Expansion<C::Elem>>>,
}

impl<C: Coefficients> Clone for GradedAlgebra<C> {
    fn clone(&self) -> Self {
        GradedAlgebra {
            coeffs: self.coeffs.clone(),
            gens: self.gens.clone(),
            square_images: self.square_images.clone(),
            truncation: self.truncation,
            ngradings: self.ngradings,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

/// Generator description used by the builder and by JSON specs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_image: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grading: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

pub struct AlgebraBuilder<C: Coefficients> {
    coeffs: C,
    truncation: u32,
    specs: Vec<GeneratorSpec>,
    ngradings: Option<usize>,
}

impl<C: Coefficients> AlgebraBuilder<C> {
    pub fn new(coeffs: C, truncation: u32) -> Self {
        AlgebraBuilder { coeffs, truncation, specs: Vec::new(), ngradings: None }
    }

    /// Number of extra gradings, needed when there may be no generators.
    pub fn gradings(mut self, n: usize) -> Self {
        self.ngradings = Some(n);
        self
    }

    fn push(mut self, name: &str, degree: u32, kind: GeneratorKind, image: Option<&str>) -> Self {
        self.specs.push(GeneratorSpec {
            name: name.to_string(),
            degree,
            kind,
            square_image: image.map(str::to_string),
            grading: vec![],
            label: None,
        });
        self
    }

    pub fn polynomial(self, name: &str, degree: u32) -> Self {
        self.push(name, degree, GeneratorKind::Polynomial, None)
    }

    pub fn exterior(self, name: &str, degree: u32) -> Self {
        self.push(name, degree, GeneratorKind::Exterior, None)
    }

    pub fn square_rewrite(self, name: &str, degree: u32, image: &str) -> Self {
        self.push(name, degree, GeneratorKind::SquareRewrite, Some(image))
    }

    /// Extra gradings of the most recently added generator.
    pub fn grading(mut self, g: &[i64]) -> Self {
        self.specs.last_mut().expect("no generator yet").grading = g.to_vec();
        self
    }

    /// Display label of the most recently added generator.
    pub fn label(mut self, l: &str) -> Self {
        self.specs.last_mut().expect("no generator yet").label = Some(l.to_string());
        self
    }

    pub fn spec(mut self, s: GeneratorSpec) -> Self {
        self.specs.push(s);
        self
    }

    pub fn build(self) -> Result<GradedAlgebra<C>, GradedError> {
        let mut alg = GradedAlgebra::from_specs(self.coeffs, &self.specs, self.truncation)?;
        match self.ngradings {
            Some(n) if self.specs.is_empty() => alg.ngradings = n,
            Some(n) if n != alg.ngradings => {
                return Err(GradedError::InvalidSpec(format!("expected {n} gradings, found {}", alg.ngradings)))
            }
            _ => {}
        }
        Ok(alg)
    }
}

const REWRITE_LIMIT: usize = 100_000;

impl<C: Coefficients> GradedAlgebra<C> {
    pub fn from_specs(coeffs: C, specs: &[GeneratorSpec], truncation: u32) -> Result<Self, GradedError> {
        let ngradings = specs.first().map_or(0, |s| s.grading.len());
        let mut gens = Vec::new();
        for s in specs {
            if s.degree == 0 {
                return Err(GradedError::InvalidSpec(format!("generator {} has degree 0", s.name)));
            }
            if s.grading.len() != ngradings {
                return Err(GradedError::InvalidSpec(format!(
                    "generator {} has {} gradings, expected {ngradings}",
                    s.name,
                    s.grading.len()
                )));
            }
            if !parse::is_identifier(&s.name) {
                return Err(GradedError::InvalidSpec(format!("bad generator name {:?}", s.name)));
            }
            if gens.iter().any(|g: &Generator| g.name == s.name) {
                return Err(GradedError::InvalidSpec(format!("duplicate generator {}", s.name)));
            }
            if s.kind == GeneratorKind::Exterior && !(coeffs.char_two() || s.degree % 2 == 0) {
                return Err(GradedError::InvalidSpec(format!(
                    "exterior generator {} needs characteristic 2 or even degree",
                    s.name
                )));
            }
            if (s.kind == GeneratorKind::SquareRewrite) != s.square_image.is_some() {
                return Err(GradedError::InvalidSpec(format!(
                    "generator {}: square_image goes with kind square_rewrite",
                    s.name
                )));
            }
            gens.push(Generator {
                name: s.name.clone(),
                label: s.label.clone().unwrap_or_else(|| s.name.clone()),
                degree: s.degree,
                grading: s.grading.clone(),
                kind: s.kind,
            });
        }
        let mut alg = GradedAlgebra {
            coeffs,
            gens,
            square_images: vec![None; specs.len()],
            truncation,
            ngradings,
            cache: RwLock::new(HashMap::new()),
        };
        for (i, s) in specs.iter().enumerate() {
            if let Some(img) = &s.square_image {
                let raw = parse::parse_terms(&alg, img)?;
                for (m, _) in &raw {
                    if alg.monomial_degree(m) != 2 * s.degree as i64
                        || alg.monomial_grading(m) != s.grading.iter().map(|x| 2 * x).collect::<Vec<_>>()
                    {
                        return Err(GradedError::InvalidSpec(format!(
                            "square image of {} is not homogeneous of twice its degree",
                            s.name
                        )));
                    }
                }
                alg.square_images[i] = Some(raw);
            }
        }
        alg.check_confluence()?;
        Ok(alg)
    }

    pub fn coefficients(&self) -> &C {
        &self.coeffs
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn ngradings(&self) -> usize {
        self.ngradings
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Triple products of generators must not depend on bracketing.
    fn check_confluence(&self) -> Result<(), GradedError> {
        let n = self.gens.len();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let d = self.gens[i].degree + self.gens[j].degree + self.gens[k].degree;
                    if d > self.truncation {
                        continue;
                    }
                    let (a, b, c) = (self.basis_gen(i), self.basis_gen(j), self.basis_gen(k));
                    let l = self.mul(&self.mul(&a, &b)?, &c)?;
                    let r = self.mul(&a, &self.mul(&b, &c)?)?;
                    if l != r {
                        return Err(GradedError::InvalidSpec(format!(
                            "rewriting is not confluent on {} {} {}",
                            self.gens[i].name, self.gens[j].name, self.gens[k].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn monomial_degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.gens).map(|(&e, g)| e as i64 * g.degree as i64).sum()
    }

    pub fn monomial_grading(&self, m: &[u32]) -> Vec<i64> {
        let mut out = vec![0i64; self.ngradings];
        for (&e, g) in m.iter().zip(&self.gens) {
            for (o, x) in out.iter_mut().zip(&g.grading) {
                *o += e as i64 * x;
            }
        }
        out
    }

    pub fn one(&self) -> Element<C::Elem> {
        self.monomial(vec![0; self.gens.len()])
    }

    pub fn monomial(&self, m: Monomial) -> Element<C::Elem> {
        let mut terms = BTreeMap::new();
        terms.insert(m, self.coeffs.one());
        Element { terms }
    }

    fn basis_gen(&self, i: usize) -> Element<C::Elem> {
        let mut m = vec![0; self.gens.len()];
        m[i] = 1;
        self.monomial(m)
    }

    pub fn generator(&self, name: &str) -> Result<Element<C::Elem>, GradedError> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| GradedError::Parse(format!("unknown generator {name:?}")))?;
        Ok(self.basis_gen(i))
    }

    /// Parses sums like `"tau xi1 + rho tau1"` or `"3 x1^2 - x2"`.
    pub fn parse(&self, text: &str) -> Result<Element<C::Elem>, GradedError> {
        let raw = parse::parse_terms(self, text)?;
        let mut out = Element::zero();
        for (m, c) in raw {
            let d = self.monomial_degree(&m);
            if d > self.truncation as i64 {
                return Err(GradedError::TruncationExceeded { degree: d, bound: self.truncation });
            }
            for (mm, cc) in self.normalize(m)? {
                self.add_term(&mut out, mm, self.coeffs.mul(&c, &cc));
            }
        }
        Ok(out)
    }

    fn add_term(&self, e: &mut Element<C::Elem>, m: Monomial, c: C::Elem) {
        if self.coeffs.is_zero(&c) {
            return;
        }
        match e.terms.get_mut(&m) {
            Some(x) => {
                let s = self.coeffs.add(x, &c);
                if self.coeffs.is_zero(&s) {
                    e.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                e.terms.insert(m, c);
            }
        }
    }

    fn is_normal(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.gens).all(|(&e, g)| g.kind == GeneratorKind::Polynomial || e <= 1)
    }

    /// Rewrites an exponent vector to a sum of normal monomials.
    fn normalize(&self, m: Monomial) -> Result<Expansion<C::Elem>, GradedError> {
        let mut budget = REWRITE_LIMIT;
        self.normalize_inner(m, &mut budget)
    }

    fn normalize_inner(&self, m: Monomial, budget: &mut usize) -> Result<Expansion<C::Elem>, GradedError> {
        if self.is_normal(&m) {
            return Ok(vec![(m, self.coeffs.one())]);
        }
        if let Some(hit) = self.cache.read().unwrap().get(&m) {
            return Ok(hit.clone());
        }
        if *budget == 0 {
            return Err(GradedError::InvalidSpec("square rewriting does not terminate".into()));
        }
        *budget -= 1;
        let mut out: Element<C::Elem> = Element::zero();
        let i = m
            .iter()
            .zip(&self.gens)
            .position(|(&e, g)| g.kind != GeneratorKind::Polynomial && e >= 2)
            .unwrap();
        if self.gens[i].kind == GeneratorKind::SquareRewrite {
            let mut rest = m.clone();
            rest[i] -= 2;
            for (t, c) in self.square_images[i].as_ref().unwrap() {
                let combined: Monomial = rest.iter().zip(t).map(|(a, b)| a + b).collect();
                for (mm, cc) in self.normalize_inner(combined, budget)? {
                    self.add_term(&mut out, mm, self.coeffs.mul(c, &cc));
                }
            }
        }
        let res: Expansion<C::Elem> = out.terms.into_iter().collect();
        self.cache.write().unwrap().insert(m, res.clone());
        Ok(res)
    }

    pub fn add(&self, a: &Element<C::Elem>, b: &Element<C::Elem>) -> Element<C::Elem> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &Element<C::Elem>) -> Element<C::Elem> {
        Element { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.coeffs.neg(c))).collect() }
    }

    pub fn sub(&self, a: &Element<C::Elem>, b: &Element<C::Elem>) -> Element<C::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: &C::Elem, a: &Element<C::Elem>) -> Element<C::Elem> {
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            self.add_term(&mut out, m.clone(), self.coeffs.mul(k, c));
        }
        out
    }

    /// Largest degree of a term (0 for the zero element).
    pub fn degree(&self, a: &Element<C::Elem>) -> i64 {
        a.terms.keys().map(|m| self.monomial_degree(m)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, a: &Element<C::Elem>) -> bool {
        let mut it = a.terms.keys().map(|m| (self.monomial_degree(m), self.monomial_grading(m)));
        match it.next() {
            None => true,
            Some(first) => it.all(|x| x == first),
        }
    }

    pub fn mul(&self, a: &Element<C::Elem>, b: &Element<C::Elem>) -> Result<Element<C::Elem>, GradedError> {
        let mut out = Element::zero();
        for (m1, c1) in &a.terms {
            let d1 = self.monomial_degree(m1);
            for (m2, c2) in &b.terms {
                let d = d1 + self.monomial_degree(m2);
                if d > self.truncation as i64 {
                    return Err(GradedError::TruncationExceeded { degree: d, bound: self.truncation });
                }
                let c = self.coeffs.mul(c1, c2);
                if self.coeffs.is_zero(&c) {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                for (mm, cc) in self.normalize(m)? {
                    self.add_term(&mut out, mm, self.coeffs.mul(&c, &cc));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &Element<C::Elem>, e: u32) -> Result<Element<C::Elem>, GradedError> {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    /// Product of a word of elements, left to right.
    pub fn normalize_product(&self, word: &[Element<C::Elem>]) -> Result<Element<C::Elem>, GradedError> {
        word.iter().try_fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.gens)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.label.clone()
                } else if g.label.ends_with(|c: char| SUPERSCRIPTS.contains(&c)) {
                    format!("({}){}", g.label, superscript(e))
                } else {
                    format!("{}{}", g.label, superscript(e))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn format(&self, a: &Element<C::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        // highest degree first, then reverse lexicographic on exponents
        let mut terms: Vec<(&Monomial, &C::Elem)> = a.terms.iter().collect();
        terms.sort_by(|x, y| {
            self.monomial_degree(y.0)
                .cmp(&self.monomial_degree(x.0))
                .then_with(|| y.0.iter().rev().cmp(x.0.iter().rev()))
        });
        terms
            .into_iter()
            .map(|(m, c)| {
                let mono = self.format_monomial(m);
                if self.coeffs.is_one(c) {
                    mono
                } else if mono == "1" {
                    self.coeffs.format(c)
                } else {
                    format!("{} {}", self.coeffs.format(c), mono)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// All normal monomials of the given degree, optionally restricted to
    /// a value of the extra gradings. Sorted.
    pub fn monomials(&self, degree: u32, grading: Option<&[i64]>) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.enumerate(0, degree as i64, &mut cur, &mut out);
        if let Some(g) = grading {
            out.retain(|m| self.monomial_grading(m) == g);
        }
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if i == self.gens.len() {
            return;
        }
        let g = &self.gens[i];
        let cap = match g.kind {
            GeneratorKind::Polynomial => u32::MAX,
            _ => 1,
        };
        let mut e = 0;
        while e <= cap && (e as i64) * (g.degree as i64) <= remaining {
            cur[i] = e;
            self.enumerate(i + 1, remaining - e as i64 * g.degree as i64, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    /// Number of normal monomials in degree `n` (the rank when free).
    pub fn hilbert_dimension(&self, n: u32) -> Result<usize, GradedError> {
        if n > self.truncation {
            return Err(GradedError::TruncationExceeded { degree: n as i64, bound: self.truncation });
        }
        Ok(self.monomials(n, None).len())
    }

    pub fn hilbert_dimension_cell(&self, cell: &Cell) -> Result<usize, GradedError> {
        if cell.degree > self.truncation as i64 {
            return Err(GradedError::TruncationExceeded { degree: cell.degree, bound: self.truncation });
        }
        Ok(self.cell_monomials(cell).len())
    }

    fn cell_monomials(&self, cell: &Cell) -> Vec<Monomial> {
        if cell.degree < 0 {
            return vec![];
        }
        self.monomials(cell.degree as u32, cell.grading.as_deref())
    }

    /// Builds a derivation from images of named generators; the rest map
    /// to zero.
    pub fn derivation(
        &self,
        degree_shift: i64,
        grading_shift: &[i64],
        images: &[(&str, &str)],
    ) -> Result<Derivation<C::Elem>, GradedError> {
        let mut imgs = vec![Element::zero(); self.gens.len()];
        for (name, expr) in images {
            let i = self
                .generator_index(name)
                .ok_or_else(|| GradedError::Parse(format!("unknown generator {name:?}")))?;
            imgs[i] = self.parse(expr)?;
        }
        let d = Derivation { degree_shift, grading_shift: grading_shift.to_vec(), images: imgs };
        self.check_derivation(&d)?;
        Ok(d)
    }

    fn check_derivation(&self, d: &Derivation<C::Elem>) -> Result<(), GradedError> {
        if d.grading_shift.len() != self.ngradings {
            return Err(GradedError::InvalidSpec("grading shift has the wrong length".into()));
        }
        for (g, img) in self.gens.iter().zip(&d.images) {
            for m in img.terms.keys() {
                let want_deg = g.degree as i64 + d.degree_shift;
                let want_gr: Vec<i64> = g.grading.iter().zip(&d.grading_shift).map(|(a, b)| a + b).collect();
                if self.monomial_degree(m) != want_deg || self.monomial_grading(m) != want_gr {
                    return Err(GradedError::InvalidSpec(format!(
                        "image of {} is not homogeneous of the shifted degree",
                        g.name
                    )));
                }
            }
        }
        // compatibility with the relations g^2 = image
        for (i, g) in self.gens.iter().enumerate() {
            if g.kind == GeneratorKind::Polynomial || 2 * g.degree > self.truncation {
                continue;
            }
            let x = self.basis_gen(i);
            let lhs = self.scale(&self.coeffs.from_int(&BigInt::from(2)), &self.mul(&x, &d.images[i])?);
            let rhs = match &self.square_images[i] {
                Some(img) => {
                    let mut e = Element::zero();
                    for (m, c) in img {
                        for (mm, cc) in self.normalize(m.clone())? {
                            self.add_term(&mut e, mm, self.coeffs.mul(c, &cc));
                        }
                    }
                    self.apply(d, &e)?
                }
                None => Element::zero(),
            };
            if lhs != rhs {
                return Err(GradedError::InvalidSpec(format!(
                    "derivation is incompatible with the relation on {}",
                    g.name
                )));
            }
        }
        Ok(())
    }

    /// Applies a derivation through the Leibniz rule.
    pub fn apply(&self, d: &Derivation<C::Elem>, a: &Element<C::Elem>) -> Result<Element<C::Elem>, GradedError> {
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            for (i, &e) in m.iter().enumerate() {
                if e == 0 || d.images[i].is_zero() {
                    continue;
                }
                let mut rest = m.clone();
                rest[i] -= 1;
                let k = self.coeffs.mul(c, &self.coeffs.from_int(&BigInt::from(e)));
                if self.coeffs.is_zero(&k) {
                    continue;
                }
                let rest_el = Element { terms: [(rest, k)].into_iter().collect() };
                let prod = self.mul(&rest_el, &d.images[i])?;
                out = self.add(&out, &prod);
            }
        }
        Ok(out)
    }

    /// Matrix of a derivation from a cell to the shifted cell; `columns[j]`
    /// holds the image of `source[j]` in `target` coordinates.
    pub fn map_matrix(&self, d: &Derivation<C::Elem>, cell: &Cell) -> Result<MapMatrix<C::Elem>, GradedError> {
        if cell.degree > self.truncation as i64 {
            return Err(GradedError::TruncationExceeded { degree: cell.degree, bound: self.truncation });
        }
        let target_cell = cell.shifted(d.degree_shift, &d.grading_shift);
        let source = self.cell_monomials(cell);
        let target = self.cell_monomials(&target_cell);
        let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut columns = Vec::with_capacity(source.len());
        for m in &source {
            let img = self.apply(d, &self.monomial(m.clone()))?;
            let mut col = vec![self.coeffs.zero(); target.len()];
            for (mm, c) in img.terms {
                let i = index.get(&mm).expect("derivation image lies in the target cell");
                col[*i] = c;
            }
            columns.push(col);
        }
        Ok(MapMatrix { source, target, columns })
    }

    /// Rank, kernel and cokernel dimensions of a derivation on one cell.
    pub fn map_report(&self, d: &Derivation<C::Elem>, cell: &Cell) -> Result<MapReport, GradedError> {
        let mm = self.map_matrix(d, cell)?;
        let rank = self
            .coeffs
            .rank(&mm.columns)
            .ok_or_else(|| GradedError::NeedsField(self.coeffs.label()))?;
        Ok(MapReport {
            source_dim: mm.source.len(),
            target_dim: mm.target.len(),
            rank,
            kernel_dim: mm.source.len() - rank,
            cokernel_dim: mm.target.len() - rank,
        })
    }
}

/// Cell of the grading: a degree plus, optionally, the extra gradings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub degree: i64,
    pub grading: Option<Vec<i64>>,
}

impl Cell {
    pub fn degree(n: i64) -> Cell {
        Cell { degree: n, grading: None }
    }

    pub fn graded(n: i64, g: &[i64]) -> Cell {
        Cell { degree: n, grading: Some(g.to_vec()) }
    }

    pub fn shifted(&self, d: i64, g: &[i64]) -> Cell {
        Cell {
            degree: self.degree + d,
            grading: self.grading.as_ref().map(|x| x.iter().zip(g).map(|(a, b)| a + b).collect()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MapMatrix<E> {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub columns: Vec<Vec<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

/// Derivation determined by generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<E> {
    pub degree_shift: i64,
    pub grading_shift: Vec<i64>,
    pub images: Vec<Element<E>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomologyReport {
    pub cell: Cell,
    pub cycles: usize,
    pub boundaries: usize,
    pub dim: usize,
    /// Cycles representing a basis of homology.
    pub basis: Vec<Element<bool>>,
    /// Basis of the cycles.
    pub cycle_basis: Vec<Element<bool>>,
}

impl GradedAlgebra<F2> {
    fn from_bits(&self, v: &BitVec, basis: &[Monomial]) -> Element<bool> {
        Element { terms: v.ones().map(|i| (basis[i].clone(), true)).collect() }
    }

    /// Homology of a square-zero derivation at one cell.
    pub fn homology(&self, d: &Derivation<bool>, cell: &Cell) -> Result<HomologyReport, GradedError> {
        let prev = cell.shifted(-d.degree_shift, &d.grading_shift.iter().map(|x| -x).collect::<Vec<_>>());
        for c in [cell, &prev] {
            if c.degree > self.truncation as i64 {
                return Err(GradedError::TruncationExceeded { degree: c.degree, bound: self.truncation });
            }
        }
        let here = self.map_matrix(d, cell)?;
        let into = self.map_matrix(d, &prev)?;
        let n = here.source.len();
        let index: HashMap<&Monomial, usize> = here.source.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let images: Vec<BitVec> = here
            .columns
            .iter()
            .map(|col| {
                let mut v = BitVec::zeros(here.target.len());
                for (i, &b) in col.iter().enumerate() {
                    v.set(i, b);
                }
                v
            })
            .collect();
        let red = f2_eliminate(n, &images);
        // boundaries, and d∘d = 0 on them
        let mut bounds = EchelonF2::new();
        for col in &into.columns {
            let mut v = BitVec::zeros(n);
            for (i, &b) in col.iter().enumerate() {
                if b {
                    v.set(index[&into.target[i]], true);
                }
            }
            let dd = self.apply(d, &self.from_bits(&v, &here.source))?;
            if !dd.is_zero() {
                return Err(GradedError::NonSquareZero { degree: prev.degree });
            }
            bounds.insert(&v);
        }
        let boundaries = bounds.rank();
        let mut ext = bounds.clone();
        let mut basis = Vec::new();
        for z in &red.kernel {
            if ext.insert(z) {
                basis.push(self.from_bits(z, &here.source));
            }
        }
        Ok(HomologyReport {
            cell: cell.clone(),
            cycles: red.kernel.len(),
            boundaries,
            dim: red.kernel.len() - boundaries,
            basis,
            cycle_basis: red.kernel.iter().map(|z| self.from_bits(z, &here.source)).collect(),
        })
    }

    /// Homology in a single degree, all extra gradings together.
    pub fn homology_at_degree(&self, d: &Derivation<bool>, n: i64) -> Result<HomologyReport, GradedError> {
        self.homology(d, &Cell::degree(n))
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub fn superscript(n: u32) -> String {
    n.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

pub fn subscript(n: u32) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| SUB[c.to_digit(10).unwrap() as usize]).collect()
}

/// JSON description of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub generators: Vec<GeneratorSpec>,
    /// `"F2"`, `"Z"`, `"Z/2^K"` or `"W(<field>)"`.
    pub coefficients: String,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
}

fn default_truncation() -> u32 {
    DEFAULT_TRUNCATION
}

/// An algebra whose coefficient ring was chosen at runtime.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    F2(GradedAlgebra<F2>),
    Z(GradedAlgebra<Integers>),
    Mod(GradedAlgebra<ModPow2>),
    Witt(GradedAlgebra<WittCoefficients>),
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<AlgebraSpec, GradedError> {
        serde_json::from_str(text).map_err(|e| GradedError::Parse(e.to_string()))
    }

    pub fn build(&self, catalog: &Catalog) -> Result<AnyAlgebra, GradedError> {
        let c = self.coefficients.trim();
        let t = self.truncation;
        if c == "F2" {
            return Ok(AnyAlgebra::F2(GradedAlgebra::from_specs(F2, &self.generators, t)?));
        }
        if c == "Z" {
            return Ok(AnyAlgebra::Z(GradedAlgebra::from_specs(Integers, &self.generators, t)?));
        }
        if let Some(k) = c.strip_prefix("Z/2^") {
            let k: u32 = k.parse().map_err(|_| GradedError::Parse(format!("coefficients {c:?}")))?;
            if k == 0 {
                return Err(GradedError::InvalidSpec("Z/2^0 is the zero ring".into()));
            }
            return Ok(AnyAlgebra::Mod(GradedAlgebra::from_specs(ModPow2::new(k), &self.generators, t)?));
        }
        if let Some(name) = c.strip_prefix("W(").and_then(|s| s.strip_suffix(')')) {
            let w = catalog.lookup(name).map_err(|e| GradedError::InvalidSpec(e.to_string()))?;
            let coeffs = WittCoefficients(Arc::new(w.clone()));
            return Ok(AnyAlgebra::Witt(GradedAlgebra::from_specs(coeffs, &self.generators, t)?));
        }
        Err(GradedError::Parse(format!("unknown coefficient ring {c:?}")))
    }
}

macro_rules! dispatch {
    ($self:expr, $a:ident => $body:expr) => {
        match $self {
            AnyAlgebra::F2($a) => $body,
            AnyAlgebra::Z($a) => $body,
            AnyAlgebra::Mod($a) => $body,
            AnyAlgebra::Witt($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn hilbert_dimension(&self, n: u32) -> Result<usize, GradedError> {
        dispatch!(self, a => a.hilbert_dimension(n))
    }

    /// Parses each factor, multiplies left to right, and formats the result.
    pub fn normalize_product(&self, word: &[&str]) -> Result<String, GradedError> {
        dispatch!(self, a => {
            let factors = word.iter().map(|w| a.parse(w)).collect::<Result<Vec<_>, _>>()?;
            Ok(a.format(&a.normalize_product(&factors)?))
        })
    }

    pub fn truncation(&self) -> u32 {
        dispatch!(self, a => a.truncation())
    }
}

/// Number of partitions of `n` into parts from `parts`.
pub fn partitions_into(n: usize, parts: &[usize]) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for &p in parts {
        if p == 0 {
            continue;
        }
        for k in p..=n {
            ways[k] += ways[k - p];
        }
    }
    ways[n]
}

/// Formats `c` followed by a monomial, dropping unit coefficients.
pub fn format_term(c: &BigInt, mono: &str) -> String {
    match (c.is_one(), mono == "1") {
        (true, _) => mono.to_string(),
        (false, true) => c.to_string(),
        _ if c == &BigInt::from(-1) => format!("-{mono}"),
        _ => format!("{c} {mono}"),
    }
}
