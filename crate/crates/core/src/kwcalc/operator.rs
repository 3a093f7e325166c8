//! The operator ring `W_(2)[β]⟦φ⟧` with `φβ = 9βφ + 8`. Coefficients are
//! integers; the relation has integer constants, so normal forms commute
//! with base change to any Witt ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::valuation::nu2;
use super::KwError;
use crate::graded::superscript;
use crate::witt::WittPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Beta,
    Phi,
}

/// `Σ c · word`
pub type WordSum = Vec<(BigInt, Vec<Letter>)>;

/// `Σ c_{ij} β^i φ^j` with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl OperatorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (u32, u32), c: BigInt) {
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, c * k);
        }
        out
    }

    /// `φ · P` via `φ β^i = 9^i β^i φ + (9^i - 1) β^{i-1}`.
    pub fn phi_times(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let p = num_traits::pow(BigInt::from(9), i as usize);
            out.add_term((i, j + 1), c * &p);
            if i > 0 {
                out.add_term((i - 1, j), c * (p - 1));
            }
        }
        out
    }

    /// Composition product.
    pub fn mul(&self, other: &Self) -> Self {
        // φ^b · other, cached per b
        let mut phi_powers = vec![other.clone()];
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            while phi_powers.len() <= b as usize {
                let next = phi_powers.last().unwrap().phi_times();
                phi_powers.push(next);
            }
            for (&(i, j), d) in &phi_powers[b as usize].terms {
                out.add_term((i + a, j), c * d);
            }
        }
        out
    }

    /// Image of the coefficients in a Witt ring.
    pub fn format_in(&self, w: &WittPresentation) -> String {
        let mut parts = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let x = w.from_int(c.clone());
            if w.is_zero(&x) {
                continue;
            }
            let coeff = w.format(&x);
            parts.push(format_term(&coeff, i, j));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn power(sym: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}{}", superscript(e)),
    }
}

fn format_term(coeff: &str, i: u32, j: u32) -> String {
    let body: Vec<String> = [power("β", i), power("φ", j)].into_iter().filter(|s| !s.is_empty()).collect();
    let body = body.join(" ");
    match (coeff, body.is_empty()) {
        (c, true) => c.to_string(),
        ("1", false) => body,
        (c, false) if c.contains(' ') => format!("({c}) {body}"),
        (c, false) => format!("{c} {body}"),
    }
}

/// Terms ordered by descending `β`-power, then descending `φ`-power.
impl fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs().to_string();
            let t = format_term(&mag, i, j);
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{t}")?,
                (true, true) => write!(f, "-{t}")?,
                (false, _) => write!(f, " {sign} {t}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for OperatorPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in self.terms.iter().rev() {
            seq.serialize_element(&(i, j, c.to_string()))?;
        }
        seq.end()
    }
}

/// Parses words such as `phi beta^2`, `3 φ β` or `beta phi + 2 phi`.
pub fn parse_words(text: &str) -> Result<WordSum, KwError> {
    let mut out = Vec::new();
    for summand in text.split('+') {
        let summand = summand.trim();
        if summand.is_empty() {
            return Err(KwError::Parse(format!("empty summand in {text:?}")));
        }
        let mut coeff = BigInt::one();
        let mut letters = Vec::new();
        for tok in summand.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    (b, e.parse::<u32>().map_err(|_| KwError::Parse(format!("bad exponent in {tok:?}")))?)
                }
                None => (tok, 1),
            };
            let letter = match base {
                "phi" | "φ" => Letter::Phi,
                "beta" | "β" => Letter::Beta,
                _ => {
                    let n: BigInt =
                        base.parse().map_err(|_| KwError::Parse(format!("unknown token {tok:?}")))?;
                    coeff *= num_traits::pow(n, exp as usize);
                    continue;
                }
            };
            letters.extend(std::iter::repeat_n(letter, exp as usize));
        }
        out.push((coeff, letters));
    }
    Ok(out)
}

/// Normal form by rewriting the leftmost `φβ` to `9βφ + 8` until no such
/// factor is left.
pub fn normal_order(words: &WordSum) -> OperatorPolynomial {
    let mut pending: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    for (c, w) in words {
        *pending.entry(w.clone()).or_default() += c;
    }
    let mut out = OperatorPolynomial::zero();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p == [Letter::Phi, Letter::Beta]) {
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                *pending.entry(swapped).or_default() += &c * 9;
                let mut dropped = w[..k].to_vec();
                dropped.extend_from_slice(&w[k + 2..]);
                *pending.entry(dropped).or_default() += &c * 8;
            }
            None => {
                let i = w.iter().filter(|&&l| l == Letter::Beta).count() as u32;
                out.add_term((i, w.len() as u32 - i), c);
            }
        }
    }
    out
}

/// Normal form of a product of words, computed with the closed-form product.
pub fn product_of(words: &[WordSum]) -> OperatorPolynomial {
    words.iter().fold(OperatorPolynomial::one(), |acc, w| {
        let p = w.iter().fold(OperatorPolynomial::zero(), |s, (c, letters)| {
            let m = letters.iter().fold(OperatorPolynomial::one(), |m, l| match l {
                Letter::Beta => m.mul(&OperatorPolynomial::monomial(BigInt::one(), 1, 0)),
                Letter::Phi => m.mul(&OperatorPolynomial::monomial(BigInt::one(), 0, 1)),
            });
            s.add(&m.scale(c))
        });
        acc.mul(&p)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiOnBeta {
    pub n: u64,
    /// `φ(β^n) = (9^n - 1) β^{n-1}`
    pub coefficient: String,
    pub nu2: Option<u64>,
    pub nu2_8n: Option<u64>,
}

pub fn phi_on_beta(n: u64) -> PhiOnBeta {
    let c = num_traits::pow(BigInt::from(9), n as usize) - 1;
    PhiOnBeta {
        n,
        nu2: nu2(&c),
        nu2_8n: (n > 0).then(|| 3 + n.trailing_zeros() as u64),
        coefficient: c.to_string(),
    }
}

/// `φ β^n`, normal ordered.
pub fn phi_beta_power(n: u32) -> OperatorPolynomial {
    let mut w = vec![Letter::Phi];
    w.extend(std::iter::repeat_n(Letter::Beta, n as usize));
    normal_order(&vec![(BigInt::one(), w)])
}
