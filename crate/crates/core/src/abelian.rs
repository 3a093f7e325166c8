//! Finitely generated abelian groups over big integers.
//!
//! Coordinates on a group in normal form list the free generators first,
//! then one generator per invariant factor in ascending order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigint_serde;
use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("invariant factors must be > 1 and each divide the next, got {0:?}")]
    InvariantFactors(Vec<String>),
    #[error("coordinate vector has length {got}, expected {expected}")]
    Arity { got: usize, expected: usize },
    #[error("matrix does not define a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("composition of incompatible maps")]
    Incompatible,
    #[error("prime expected, got {0}")]
    NotPrime(String),
}

/// `U * M * V = D` with `D` diagonal, nonnegative, and each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries, in order.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // row op: row[dst] += k row[src]; u follows, u_inv gets the inverse column op
    fn row_add(
        a: &mut IntMatrix,
        u: &mut IntMatrix,
        u_inv: &mut IntMatrix,
        dst: usize,
        src: usize,
        k: &BigInt,
    ) {
        a.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, &-k);
    }
    fn row_swap(a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, x: usize, y: usize) {
        a.swap_rows(x, y);
        u.swap_rows(x, y);
        u_inv.swap_cols(x, y);
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut a, &mut u, &mut u_inv, t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                row_add(&mut a, &mut u, &mut u_inv, i, t, &-q);
                if !a.get(i, t).is_zero() {
                    row_swap(&mut a, &mut u, &mut u_inv, t, i);
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-q);
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the rest of the block
            let p = a.get(t, t).clone();
            let mut fix = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a.get(i, j).is_multiple_of(&p) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols))
        .map(|i| a.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithForm { u, u_inv, v, d: a, diagonal }
}

/// Basis (as columns) of the integer kernel of `m`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Solves `m x = b` over the integers.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows());
    let snf = smith_normal_form(m);
    let ub = snf.u.apply(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, x) in ub.iter().enumerate() {
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
    Some(snf.v.apply(&y))
}

/// Generators of `{ y : m y ∈ span(b) }`, returned as columns.
pub fn preimage(m: &IntMatrix, b: &IntMatrix) -> Vec<Vec<BigInt>> {
    let k = m.cols();
    integer_kernel(&m.hcat(b)).into_iter().map(|c| c[..k].to_vec()).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    free_rank: usize,
    #[serde(with = "bigint_serde::vec")]
    torsion: Vec<BigInt>,
}

impl TryFrom<RawGroup> for FinAbGroup {
    type Error = AbelianError;
    fn try_from(r: RawGroup) -> Result<Self, AbelianError> {
        FinAbGroup::new(r.free_rank, r.torsion)
    }
}

impl From<FinAbGroup> for RawGroup {
    fn from(g: FinAbGroup) -> RawGroup {
        RawGroup { free_rank: g.free_rank, torsion: g.torsion }
    }
}

impl FinAbGroup {
    /// Checks the invariant-factor conditions.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        let ok = torsion.iter().all(|d| d > &BigInt::one())
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !ok {
            return Err(AbelianError::InvariantFactors(
                torsion.iter().map(|d| d.to_string()).collect(),
            ));
        }
        Ok(FinAbGroup { free_rank, torsion })
    }

    pub fn zero() -> Self {
        FinAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: vec![] }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        let n = n.abs();
        if n.is_zero() {
            Self::free(1)
        } else if n.is_one() {
            Self::zero()
        } else {
            FinAbGroup { free_rank: 0, torsion: vec![n] }
        }
    }

    /// Group with free part `free_rank` and cyclic summands of the given
    /// orders in any order; entries 0 and 1 are allowed.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut g = Self::free(free_rank);
        for d in orders {
            g = g.direct_sum(&Self::cyclic(d.clone()));
        }
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the generator at coordinate `i` (zero means infinite).
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// `ngens x ntorsion` matrix whose columns span the relations.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut r = IntMatrix::zeros(n, self.torsion.len());
        for (k, d) in self.torsion.iter().enumerate() {
            r.set(self.free_rank + k, k, d.clone());
        }
        r
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens(), "coordinate arity");
        x.iter()
            .enumerate()
            .map(|(i, v)| {
                if i < self.free_rank {
                    v.clone()
                } else {
                    v.mod_floor(&self.torsion[i - self.free_rank])
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(|v| v.is_zero())
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, d) in orders.into_iter().enumerate() {
            rel.set(i, i, d);
        }
        let t = Quotient::of_relations(n, &rel).group;
        FinAbGroup { free_rank: self.free_rank + other.free_rank, torsion: t.torsion }
    }

    /// Number of elements `x` with `m x = 0` (finite groups only).
    pub fn count_killed_by(&self, m: &BigInt) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.iter().map(|d| d.gcd(m)).product())
    }

    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// The `p`-primary part of the torsion, as a finite group.
    pub fn p_primary_torsion(&self, p: &BigInt) -> FinAbGroup {
        let orders: Vec<BigInt> = self.torsion.iter().map(|d| p_part(d, p)).collect();
        FinAbGroup::from_orders(0, &orders)
    }

    /// The odd part of the torsion.
    pub fn odd_torsion(&self) -> FinAbGroup {
        let two = BigInt::from(2);
        let orders: Vec<BigInt> = self.torsion.iter().map(|d| d / p_part(d, &two)).collect();
        FinAbGroup::from_orders(0, &orders)
    }

    /// Localization at 2: free part kept (read as Z_(2)), odd torsion dropped.
    pub fn localized_at_two(&self) -> FinAbGroup {
        let mut g = self.p_primary_torsion(&BigInt::from(2));
        g.free_rank = self.free_rank;
        g
    }

    /// Element list of a finite group, for brute-force checks.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_usize()?;
        let mut out = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); self.torsion.len()];
        for _ in 0..order {
            out.push(cur.clone());
            for (k, d) in self.torsion.iter().enumerate() {
                cur[k] += 1;
                if &cur[k] < d {
                    break;
                }
                cur[k] = BigInt::zero();
            }
        }
        Some(out)
    }

    pub fn format_with(&self, free_symbol: &str) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(free_symbol.to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("{free_symbol}^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("Z"))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// `p^{v_p(d)}`
pub fn p_part(d: &BigInt, p: &BigInt) -> BigInt {
    let mut d = d.abs();
    let mut out = BigInt::one();
    if d.is_zero() {
        return BigInt::zero();
    }
    while d.is_multiple_of(p) {
        d /= p;
        out *= p;
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(d: &BigInt, p: &BigInt) -> Option<u64> {
    if d.is_zero() {
        return None;
    }
    if p == &BigInt::from(2) {
        return d.trailing_zeros();
    }
    let mut d = d.abs();
    let mut v = 0;
    while d.is_multiple_of(p) {
        d /= p;
        v += 1;
    }
    Some(v)
}

/// A quotient `Z^n / relations` put in normal form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinAbGroup,
    /// `group.ngens x n`: old coordinates to new coordinates.
    pub proj: IntMatrix,
    /// `n x group.ngens`: representatives of the new generators.
    pub lift: IntMatrix,
}

impl Quotient {
    pub fn of_relations(n: usize, relations: &IntMatrix) -> Quotient {
        assert_eq!(relations.rows(), n);
        let snf = smith_normal_form(relations);
        let r = snf.rank();
        let mut keep: Vec<usize> = (r..n).collect();
        let mut torsion = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if !d.is_one() {
                keep.push(i);
                torsion.push(d.clone());
            }
        }
        let mut proj = IntMatrix::zeros(keep.len(), n);
        let mut lift = IntMatrix::zeros(n, keep.len());
        for (new, &old) in keep.iter().enumerate() {
            for j in 0..n {
                proj.set(new, j, snf.u.get(old, j).clone());
                lift.set(j, new, snf.u_inv.get(j, old).clone());
            }
        }
        let group = FinAbGroup { free_rank: n - r, torsion };
        let proj = reduce_rows(&group, proj);
        Quotient { group, proj, lift }
    }

    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.proj.apply(x))
    }
}

fn reduce_rows(g: &FinAbGroup, m: IntMatrix) -> IntMatrix {
    let mut m = m;
    for i in g.free_rank..g.ngens() {
        let d = &g.torsion[i - g.free_rank];
        for j in 0..m.cols() {
            let v = m.get(i, j).mod_floor(d);
            m.set(i, j, v);
        }
    }
    m
}

/// Subgroup given by a normal-form group and its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FinAbGroup,
    /// `ambient.ngens x group.ngens`
    pub inclusion: IntMatrix,
}

/// Homomorphism between groups in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    /// `target.ngens x source.ngens`
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        source: FinAbGroup,
        target: FinAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(AbelianError::NotAHomomorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for j in source.free_rank..source.ngens() {
            let d = source.generator_order(j);
            let img: Vec<BigInt> = matrix.column(j).iter().map(|x| x * &d).collect();
            if !target.is_zero_element(&img) {
                return Err(AbelianError::NotAHomomorphism(format!(
                    "generator {j} of order {d} maps to an element of larger order"
                )));
            }
        }
        let matrix = reduce_rows(&target, matrix);
        Ok(GroupHom { source, target, matrix })
    }

    /// Multiplication by `n` on `g`.
    pub fn scalar(g: &FinAbGroup, n: &BigInt) -> GroupHom {
        let k = g.ngens();
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, n.clone());
        }
        GroupHom::new(g.clone(), g.clone(), m).expect("scalar map is a homomorphism")
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.apply(x))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        if self.target != other.source {
            return Err(AbelianError::Incompatible);
        }
        GroupHom::new(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    pub fn kernel(&self) -> Subgroup {
        let s = self.source.ngens();
        // lattice of y with M y in the target relations
        let gens = preimage(&self.matrix, &self.target.relation_matrix());
        let p = IntMatrix::from_columns(s, &gens);
        // express source relations in terms of the generators
        let rel_in_gens = preimage(&p, &self.source.relation_matrix());
        let q = Quotient::of_relations(gens.len(), &IntMatrix::from_columns(gens.len(), &rel_in_gens));
        let inclusion = reduce_rows(&self.source, p.mul(&q.lift));
        Subgroup { group: q.group, inclusion }
    }

    pub fn cokernel(&self) -> Quotient {
        let rel = self.matrix.hcat(&self.target.relation_matrix());
        Quotient::of_relations(self.target.ngens(), &rel)
    }

    pub fn image(&self) -> FinAbGroup {
        // image is source / kernel
        let k = self.kernel();
        let rel = k.inclusion.hcat(&self.source.relation_matrix());
        Quotient::of_relations(self.source.ngens(), &rel).group
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_zero()
    }
}

/// Kernel and cokernel of multiplication by `n`.
pub fn ker_coker_of_mul(g: &FinAbGroup, n: &BigInt) -> (FinAbGroup, FinAbGroup) {
    let h = GroupHom::scalar(g, n);
    (h.kernel().group, h.cokernel().group)
}

/// Derived p-completion of a finitely generated group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedGroup {
    #[serde(with = "bigint_serde")]
    pub prime: BigInt,
    /// Rank of the free Z_p-module part.
    pub padic_rank: usize,
    /// p-power invariant factors.
    #[serde(with = "bigint_serde::vec")]
    pub torsion: Vec<BigInt>,
    /// p-torsion is bounded, so the lim^1 term vanishes.
    pub lim1_vanishes: bool,
    /// The Tate module is zero, so pi_1 of the derived completion vanishes.
    pub pi1_vanishes: bool,
}

impl fmt::Display for CompletedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = FinAbGroup { free_rank: self.padic_rank, torsion: self.torsion.clone() };
        f.write_str(&g.format_with(&format!("Z_{}", self.prime)))
    }
}

pub fn is_prime(p: &BigInt) -> bool {
    if p < &BigInt::from(2) {
        return false;
    }
    let mut k = BigInt::from(2);
    while &k * &k <= *p {
        if p.is_multiple_of(&k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn derived_p_completion(g: &FinAbGroup, p: &BigInt) -> Result<CompletedGroup, AbelianError> {
    if !is_prime(p) {
        return Err(AbelianError::NotPrime(p.to_string()));
    }
    let tors = g.p_primary_torsion(p);
    // bounded p-torsion: multiplication by the exponent kills all of it,
    // so the tower of p^n-torsion is Mittag-Leffler and the Tate module is 0
    let exp = tors.exponent().unwrap_or_else(BigInt::one);
    let killed = tors.count_killed_by(&exp) == tors.order();
    Ok(CompletedGroup {
        prime: p.clone(),
        padic_rank: g.free_rank,
        torsion: tors.torsion,
        lim1_vanishes: killed,
        pi1_vanishes: killed,
    })
}

/// Induced map on derived p-completions, in completed coordinates
/// (free first, then the p-parts of the nontrivial invariant factors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedHom {
    pub source: CompletedGroup,
    pub target: CompletedGroup,
    pub matrix: IntMatrix,
}

struct CompletedCoords {
    /// original coordinate -> (completed coordinate, scale): the completed
    /// generator is `scale * original generator`
    entries: Vec<(usize, usize, BigInt, BigInt)>, // (orig, new, p_part, cofactor)
}

fn completed_coords(g: &FinAbGroup, p: &BigInt) -> CompletedCoords {
    let mut entries = Vec::new();
    let mut next = g.free_rank;
    for (k, d) in g.torsion.iter().enumerate() {
        let pp = p_part(d, p);
        if !pp.is_one() {
            entries.push((g.free_rank + k, next, pp.clone(), d / &pp));
            next += 1;
        }
    }
    CompletedCoords { entries }
}

pub fn complete_hom(h: &GroupHom, p: &BigInt) -> Result<CompletedHom, AbelianError> {
    let source = derived_p_completion(&h.source, p)?;
    let target = derived_p_completion(&h.target, p)?;
    let sc = completed_coords(&h.source, p);
    let tc = completed_coords(&h.target, p);
    let n_src = source.padic_rank + source.torsion.len();
    let n_tgt = target.padic_rank + target.torsion.len();
    let mut m = IntMatrix::zeros(n_tgt, n_src);
    let r_s = h.source.free_rank;
    let r_t = h.target.free_rank;
    // source columns: free generators, then p-parts
    let mut src_cols: Vec<(usize, Vec<BigInt>)> = (0..r_s).map(|j| (j, h.matrix.column(j))).collect();
    for (orig, new, _pp, cof) in &sc.entries {
        let col: Vec<BigInt> = h.matrix.column(*orig).iter().map(|x| x * cof).collect();
        src_cols.push((*new, col));
    }
    for (new_col, img) in src_cols {
        for i in 0..r_t {
            m.set(i, new_col, img[i].clone());
        }
        for (orig, new, pp, cof) in &tc.entries {
            // p-component of img[orig] * g in Z/d, d = pp * cof, in terms of cof * g
            let d = pp * cof;
            let x = img[*orig].mod_floor(&d);
            let e = idempotent(pp, cof);
            let comp = (x * e).mod_floor(&d);
            let k = (&comp / cof).mod_floor(pp);
            m.set(*new, new_col, k);
        }
    }
    Ok(CompletedHom { source, target, matrix: m })
}

/// Idempotent of `Z/(a b)` that is 1 mod `a` and 0 mod `b`, for coprime a, b.
fn idempotent(a: &BigInt, b: &BigInt) -> BigInt {
    let eg = b.extended_gcd(a);
    // eg.x * b + eg.y * a = 1
    (&eg.x * b).mod_floor(&(a * b))
}

impl CompletedHom {
    /// Entries reduced modulo the target's p-power orders.
    pub fn reduced(&self) -> IntMatrix {
        let mut m = self.matrix.clone();
        let r = self.target.padic_rank;
        for (k, d) in self.target.torsion.iter().enumerate() {
            for j in 0..m.cols() {
                let v = m.get(r + k, j).mod_floor(d);
                m.set(r + k, j, v);
            }
        }
        m
    }

    pub fn then(&self, other: &CompletedHom) -> CompletedHom {
        CompletedHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn grp(r: usize, t: &[i64]) -> FinAbGroup {
        FinAbGroup::new(r, t.iter().map(|&x| b(x)).collect()).unwrap()
    }

    #[test]
    fn snf_of_diagonal_reorders() {
        let m = IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![b(2), b(12)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
    }

    #[test]
    fn invariant_factor_validation() {
        assert!(FinAbGroup::new(0, vec![b(4), b(6)]).is_err());
        assert!(FinAbGroup::new(0, vec![b(1)]).is_err());
        assert!(FinAbGroup::new(2, vec![b(2), b(6)]).is_ok());
    }

    #[test]
    fn mul_by_six_on_z_plus_z12() {
        let (k, c) = ker_coker_of_mul(&grp(1, &[12]), &b(6));
        assert_eq!(k, grp(0, &[6]));
        assert_eq!(c, grp(0, &[6, 6]));
    }

    #[test]
    fn mul_by_sixteen_on_z() {
        let (k, c) = ker_coker_of_mul(&grp(1, &[]), &b(16));
        assert!(k.is_zero());
        assert_eq!(c, grp(0, &[16]));
    }

    #[test]
    fn completion_at_two() {
        let c = derived_p_completion(&grp(1, &[12]), &b(2)).unwrap();
        assert_eq!(c.padic_rank, 1);
        assert_eq!(c.torsion, vec![b(4)]);
        assert!(c.lim1_vanishes && c.pi1_vanishes);
        assert_eq!(c.to_string(), "Z_2 + Z/4");
    }

    #[test]
    fn direct_sum_normalizes() {
        assert_eq!(grp(0, &[2]).direct_sum(&grp(0, &[3])), grp(0, &[6]));
        assert_eq!(grp(0, &[4]).direct_sum(&grp(1, &[6])), grp(1, &[2, 12]));
    }

    #[test]
    fn kernel_inclusion_lands_in_kernel() {
        let g = grp(1, &[12]);
        let h = GroupHom::scalar(&g, &b(6));
        let k = h.kernel();
        for j in 0..k.group.ngens() {
            let x = k.inclusion.column(j);
            assert!(g.is_zero_element(&h.apply(&x)));
        }
    }

    #[test]
    fn solve_simple_system() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&m, &[b(4), b(9)]), Some(vec![b(2), b(3)]));
        assert_eq!(solve_integer(&m, &[b(1), b(0)]), None);
    }
}
