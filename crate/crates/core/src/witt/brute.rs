//! Witt rings of small finite fields by direct classification of
//! quadratic forms: split off hyperbolic planes by searching for isotropic
//! vectors, then compare anisotropic kernels up to isometry.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{WittElement, WittError, WittPresentation};
use crate::abelian::Quotient;
use crate::linalg::IntMatrix;

/// `GF(q)` with elements `0..q`, stored as full tables.
#[derive(Clone, Debug)]
pub struct FiniteField {
    pub q: usize,
    pub p: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FiniteField {
    pub fn new(q: usize) -> Option<FiniteField> {
        let (p, k) = prime_power(q)?;
        // elements are base-p digit vectors of polynomials of degree < k
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s) as u16;
            }
        }
        // try monic moduli x^k + c(x) until the quotient has no zero divisors
        for c in 0..q {
            let modulus = digits(c);
            let mut mul = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    let (da, db) = (digits(a), digits(b));
                    let mut prod = vec![0usize; 2 * k.max(1) as usize];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // reduce using x^k = -c(x)
                    for deg in (k as usize..prod.len()).rev() {
                        let lead = prod[deg];
                        if lead == 0 {
                            continue;
                        }
                        prod[deg] = 0;
                        for (i, m) in modulus.iter().enumerate() {
                            let t = deg - k as usize + i;
                            prod[t] = (prod[t] + (p - lead) * m) % p;
                        }
                    }
                    mul[a * q + b] = undigits(&prod[..k as usize]) as u16;
                }
            }
            let field = (1..q).all(|a| (1..q).all(|b| mul[a * q + b] != 0));
            if !field {
                continue;
            }
            let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16).collect();
            let mut inv = vec![0u16; q];
            for a in 1..q {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16;
            }
            return Some(FiniteField { q, p, add, mul, neg, inv });
        }
        None
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn is_square(&self, a: u16) -> bool {
        (0..self.q as u16).any(|x| self.mul(x, x) == a)
    }

    pub fn nonsquare(&self) -> u16 {
        (1..self.q as u16).find(|&a| !self.is_square(a)).expect("odd q has nonsquares")
    }

    pub fn minus_one(&self) -> u16 {
        self.neg(1)
    }
}

/// Symmetric bilinear form as a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub gram: Vec<Vec<u16>>,
}

impl Form {
    pub fn diagonal(entries: &[u16]) -> Form {
        let n = entries.len();
        let mut gram = vec![vec![0; n]; n];
        for (i, &a) in entries.iter().enumerate() {
            gram[i][i] = a;
        }
        Form { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn sum(&self, other: &Form) -> Form {
        let (n, m) = (self.dim(), other.dim());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        Form { gram }
    }

    pub fn tensor(&self, other: &Form, f: &FiniteField) -> Form {
        let (n, m) = (self.dim(), other.dim());
        let mut gram = vec![vec![0; n * m]; n * m];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        gram[a * m + b][c * m + d] = f.mul(self.gram[a][c], other.gram[b][d]);
                    }
                }
            }
        }
        Form { gram }
    }

    fn bilinear(&self, f: &FiniteField, x: &[u16], y: &[u16]) -> u16 {
        let mut acc = 0;
        for i in 0..self.dim() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim() {
                if y[j] != 0 {
                    acc = f.add(acc, f.mul(x[i], f.mul(self.gram[i][j], y[j])));
                }
            }
        }
        acc
    }

    fn restrict(&self, f: &FiniteField, basis: &[Vec<u16>]) -> Form {
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.bilinear(f, x, y)).collect())
            .collect();
        Form { gram }
    }
}

fn all_vectors(q: usize, n: usize) -> impl Iterator<Item = Vec<u16>> {
    let total = q.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u16; n];
        for x in v.iter_mut() {
            *x = (k % q) as u16;
            k /= q;
        }
        v
    })
}

/// Null space of the rows over the field.
fn null_space(f: &FiniteField, rows: &[Vec<u16>], n: usize) -> Vec<Vec<u16>> {
    let mut m: Vec<Vec<u16>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..n {
                    m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u16; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect()
}

/// Strips hyperbolic planes until the form is anisotropic.
pub fn anisotropic_part(f: &FiniteField, form: &Form) -> Form {
    let mut cur = form.clone();
    loop {
        let n = cur.dim();
        if n == 0 {
            return cur;
        }
        let iso = all_vectors(f.q, n)
            .skip(1)
            .find(|v| cur.bilinear(f, v, v) == 0);
        let Some(v) = iso else { return cur };
        // partner w with B(v, w) = 1 and B(w, w) = 0
        let w0 = (0..n)
            .map(|i| {
                let mut e = vec![0u16; n];
                e[i] = 1;
                e
            })
            .find(|e| cur.bilinear(f, &v, e) != 0)
            .expect("form is nondegenerate");
        let s = f.inv(cur.bilinear(f, &v, &w0));
        let w1: Vec<u16> = w0.iter().map(|&x| f.mul(x, s)).collect();
        let half = f.inv(f.add(1, 1));
        let c = f.mul(cur.bilinear(f, &w1, &w1), half);
        let w: Vec<u16> = w1.iter().zip(&v).map(|(&a, &b)| f.sub(a, f.mul(c, b))).collect();
        let rows: Vec<Vec<u16>> = [&v, &w]
            .iter()
            .map(|x| (0..n).map(|j| {
                let mut e = vec![0u16; n];
                e[j] = 1;
                cur.bilinear(f, x, &e)
            }).collect())
            .collect();
        let complement = null_space(f, &rows, n);
        cur = cur.restrict(f, &complement);
    }
}

/// Searches for `P` with `P^T A P = B`.
pub fn isometric(f: &FiniteField, a: &Form, b: &Form) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let n = a.dim();
    let candidates: Vec<Vec<u16>> = all_vectors(f.q, n).collect();
    fn extend(
        f: &FiniteField,
        a: &Form,
        b: &Form,
        cands: &[Vec<u16>],
        chosen: &mut Vec<Vec<u16>>,
    ) -> bool {
        let k = chosen.len();
        if k == b.dim() {
            // the Gram matrix of B is invertible, so chosen columns are independent
            return true;
        }
        for c in cands {
            if a.bilinear(f, c, c) != b.gram[k][k] {
                continue;
            }
            if (0..k).any(|i| a.bilinear(f, &chosen[i], c) != b.gram[i][k]) {
                continue;
            }
            chosen.push(c.clone());
            if extend(f, a, b, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    extend(f, a, b, &candidates, &mut Vec::new())
}

/// Witt classes found by classification, with the ring operations.
pub struct WittClassification {
    pub field: FiniteField,
    /// Anisotropic representatives of the distinct classes.
    pub classes: Vec<Form>,
}

impl WittClassification {
    pub fn class_of(&self, form: &Form) -> Option<usize> {
        let an = anisotropic_part(&self.field, form);
        self.classes.iter().position(|c| isometric(&self.field, c, &an))
    }
}

/// Classifies all diagonal forms of dimension up to `bound` over `GF(q)`.
pub fn classify(q: usize, bound: usize) -> Result<WittClassification, WittError> {
    if q % 2 == 0 {
        return Err(WittError::Unsupported(format!("GF({q}) has characteristic 2")));
    }
    let f = FiniteField::new(q).ok_or_else(|| WittError::Unsupported(format!("{q} is not a prime power")))?;
    let u = f.nonsquare();
    let mut classes: Vec<Form> = Vec::new();
    for a in 0..=bound {
        for b in 0..=(bound - a) {
            let mut entries = vec![1u16; a];
            entries.extend(std::iter::repeat(u).take(b));
            let an = anisotropic_part(&f, &Form::diagonal(&entries));
            if !classes.iter().any(|c| isometric(&f, c, &an)) {
                classes.push(an);
            }
        }
    }
    Ok(WittClassification { field: f, classes })
}

/// Brute-force Witt ring of `GF(q)` as a presentation.
pub fn brute_force_witt_ring(q: usize, bound: usize) -> Result<WittPresentation, WittError> {
    if bound < 4 {
        return Err(WittError::Unsupported("dimension bound must be at least 4".into()));
    }
    let cl = classify(q, bound)?;
    let f = &cl.field;
    let u = f.nonsquare();
    let one_form = Form::diagonal(&[1]);
    let u_form = Form::diagonal(&[u]);
    let order_of = |x: &Form| -> usize {
        let mut acc = x.clone();
        let mut k = 1;
        while cl.class_of(&acc) != cl.class_of(&Form::diagonal(&[])) {
            acc = anisotropic_part(f, &acc.sum(x));
            k += 1;
        }
        k
    };
    let o0 = order_of(&one_form);
    let o1 = order_of(&u_form);
    let combo = |a: usize, b: usize| -> Form {
        let mut entries = vec![1u16; a];
        entries.extend(std::iter::repeat(u).take(b));
        Form::diagonal(&entries)
    };
    let zero_class = cl.class_of(&Form::diagonal(&[])).expect("zero class");
    let mut rels: Vec<Vec<BigInt>> = vec![
        vec![BigInt::from(o0), BigInt::zero()],
        vec![BigInt::zero(), BigInt::from(o1)],
    ];
    for a in 0..o0 {
        for b in 0..o1 {
            if (a, b) != (0, 0) && cl.class_of(&combo(a, b)) == Some(zero_class) {
                rels.push(vec![BigInt::from(a), BigInt::from(b)]);
            }
        }
    }
    let quot = Quotient::of_relations(2, &IntMatrix::from_columns(2, &rels));
    let n = quot.group.ngens();
    // coordinates of a form: find (a, b) hitting its class
    let coords = |x: &Form| -> WittElement {
        let target = cl.class_of(x).expect("class was classified");
        for a in 0..o0 {
            for b in 0..o1 {
                if cl.class_of(&combo(a, b)) == Some(target) {
                    return quot.project(&[BigInt::from(a), BigInt::from(b)]);
                }
            }
        }
        unreachable!("<1> and <u> generate the Witt group")
    };
    let gen_forms: Vec<Form> = (0..n)
        .map(|j| {
            let c = quot.lift.column(j);
            let a = c[0].to_i64().unwrap().rem_euclid(o0 as i64) as usize;
            let b = c[1].to_i64().unwrap().rem_euclid(o1 as i64) as usize;
            anisotropic_part(f, &combo(a, b))
        })
        .collect();
    let mult_table = gen_forms
        .iter()
        .map(|x| gen_forms.iter().map(|y| coords(&x.tensor(y, f))).collect())
        .collect();
    let rank_mod2: Vec<u8> = gen_forms.iter().map(|x| (x.dim() % 2) as u8).collect();
    let unit = coords(&one_form);
    let minus_one = coords(&Form::diagonal(&[f.minus_one()]));
    // kernel of rank mod 2
    let mut ideal = Vec::new();
    let odd = rank_mod2.iter().position(|&r| r == 1);
    for (i, &r) in rank_mod2.iter().enumerate() {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::from(1);
        if r == 0 {
            ideal.push(e);
        } else if Some(i) == odd {
            e[i] = BigInt::from(2);
            ideal.push(e);
        } else {
            e[odd.unwrap()] = BigInt::from(-1);
            ideal.push(e);
        }
    }
    let names = gen_forms.iter().map(diag_label).collect();
    let w = WittPresentation {
        name: format!("F{q}"),
        additive: quot.group,
        mult_table,
        unit,
        minus_one,
        rank_mod2,
        ideal_generators: ideal,
        vcd2: Some(1),
        generator_names: names,
    }
    .normalized();
    w.validate()?;
    Ok(w)
}

fn diag_label(x: &Form) -> String {
    let d: Vec<String> = (0..x.dim()).map(|i| x.gram[i][i].to_string()).collect();
    if d == ["1"] {
        "1".into()
    } else {
        format!("<{}>", d.join(","))
    }
}
