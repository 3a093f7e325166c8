//! Reading sums of monomials such as `"2 x1^2 x3 - rho tau1"`.

use num_bigint::BigInt;
use num_traits::One;

use super::{Coefficients, GradedAlgebra, GradedError, Monomial};

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Caret,
    Star,
}

fn lex(text: &str) -> Result<Vec<Tok>, GradedError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            out.push(match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '^' => Tok::Caret,
                '*' => Tok::Star,
                _ => return Err(GradedError::Parse(format!("unexpected {c:?} in {text:?}"))),
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Terms with raw (not yet normalized) exponent vectors.
pub(crate) fn parse_terms<C: Coefficients>(
    alg: &GradedAlgebra<C>,
    text: &str,
) -> Result<Vec<(Monomial, C::Elem)>, GradedError> {
    let err = || GradedError::Parse(format!("malformed expression {text:?}"));
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err());
    }
    let n = alg.gens.len();
    let mut out = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = BigInt::one();
        match toks[i] {
            Tok::Plus if !first => i += 1,
            Tok::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err(err()),
        }
        first = false;
        let mut coeff = sign;
        let mut mono = vec![0u32; n];
        let mut any = false;
        while i < toks.len() && !matches!(toks[i], Tok::Plus | Tok::Minus) {
            match &toks[i] {
                Tok::Star if any => {
                    i += 1;
                    continue;
                }
                Tok::Num(k) => {
                    coeff *= k;
                    i += 1;
                }
                Tok::Ident(name) => {
                    let g = alg
                        .generator_index(name)
                        .ok_or_else(|| GradedError::Parse(format!("unknown generator {name:?}")))?;
                    i += 1;
                    let mut e = 1u32;
                    if i < toks.len() && toks[i] == Tok::Caret {
                        match toks.get(i + 1) {
                            Some(Tok::Num(k)) => {
                                e = u32::try_from(k).map_err(|_| err())?;
                                i += 2;
                            }
                            _ => return Err(err()),
                        }
                    }
                    mono[g] += e;
                }
                _ => return Err(err()),
            }
            any = true;
        }
        if !any {
            return Err(err());
        }
        let c = alg.coeffs.from_int(&coeff);
        if !alg.coeffs.is_zero(&c) {
            out.push((mono, c));
        }
    }
    Ok(out)
}
