//! Filtered abelian groups and their associated graded pieces.
//!
//! Everything is finite per degree: a filtration is a finite descending
//! chain of subgroups of an ambient group ending in zero. The module being
//! filtered is the first level, so exhaustiveness holds by construction.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{GradedAlgebra, GradedError, GeneratorKind, Integers, F2};
use crate::abelian::{preimage, solve_integer, FinAbGroup, GroupHom, Quotient};
use crate::linalg::{BitVec, EchelonF2, IntMatrix};
use crate::witt::{WittElement, WittPresentation};

type Vector = Vec<BigInt>;

fn hyp(msg: impl Into<String>) -> GradedError {
    GradedError::HypothesisViolated(msg.into())
}

/// Coordinates of `x` in terms of `gens`, modulo the relations of `ambient`.
fn coords(ambient: &FinAbGroup, gens: &[Vector], x: &[BigInt]) -> Option<Vector> {
    let n = ambient.ngens();
    let m = IntMatrix::from_columns(n, gens).hcat(&ambient.relation_matrix());
    solve_integer(&m, x).map(|v| v[..gens.len()].to_vec())
}

fn contains(ambient: &FinAbGroup, gens: &[Vector], x: &[BigInt]) -> bool {
    coords(ambient, gens, x).is_some()
}

/// `span(gens)` as an abstract group `Z^k / relations`.
fn span_group(ambient: &FinAbGroup, gens: &[Vector]) -> Quotient {
    span_modulo(ambient, gens, &[])
}

/// `span(gens) / (span(gens) ∩ span(smaller))`
fn span_modulo(ambient: &FinAbGroup, gens: &[Vector], smaller: &[Vector]) -> Quotient {
    let n = ambient.ngens();
    let k = gens.len();
    let g = IntMatrix::from_columns(n, gens);
    let b = IntMatrix::from_columns(n, smaller).hcat(&ambient.relation_matrix());
    let rel = preimage(&g, &b);
    Quotient::of_relations(k, &IntMatrix::from_columns(k, &rel))
}

#[derive(Clone, Debug)]
pub struct FilteredGroup {
    ambient: FinAbGroup,
    /// `levels[s]` generates `F^s`; the last level is zero.
    levels: Vec<Vec<Vector>>,
}

impl FilteredGroup {
    /// Validates containment `F^{s+1} ⊆ F^s` and that the chain ends in 0.
    pub fn new(ambient: FinAbGroup, mut levels: Vec<Vec<Vector>>) -> Result<Self, GradedError> {
        let n = ambient.ngens();
        if levels.iter().flatten().any(|x| x.len() != n) {
            return Err(GradedError::InvalidSpec("filtration generator has the wrong length".into()));
        }
        if levels.is_empty() {
            return Err(hyp("empty filtration"));
        }
        for s in 1..levels.len() {
            for x in &levels[s] {
                if !contains(&ambient, &levels[s - 1], x) {
                    return Err(hyp(format!("F^{s} is not contained in F^{}", s - 1)));
                }
            }
        }
        if levels.last().unwrap().iter().any(|x| !ambient.is_zero_element(x)) {
            return Err(hyp("filtration does not reach zero (not Hausdorff within the bound)"));
        }
        for l in &mut levels {
            l.retain(|x| !ambient.is_zero_element(x));
            for x in l.iter_mut() {
                *x = ambient.reduce(x);
            }
        }
        Ok(FilteredGroup { ambient, levels })
    }

    /// `F^0 = G`, `F^1 = 0`.
    pub fn trivial(g: FinAbGroup) -> Self {
        let n = g.ngens();
        let all = (0..n).map(|i| unit(n, i)).collect();
        FilteredGroup::new(g, vec![all, vec![]]).expect("trivial filtration")
    }

    /// `Z / 2^bits` (or a multiple `Z / 2^bits` scaled into a larger cyclic
    /// group) with `F^s` generated by `2^(start + s)`.
    pub fn two_adic_cyclic(bits: u32, start: u32) -> Self {
        let g = FinAbGroup::cyclic(BigInt::one() << bits);
        let levels = (start..=bits)
            .map(|e| vec![vec![BigInt::one() << e]])
            .collect();
        FilteredGroup::new(g, levels).expect("two-adic chain")
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Number of levels before the zero level.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, s: usize) -> &[Vector] {
        if s < self.levels.len() {
            &self.levels[s]
        } else {
            &[]
        }
    }

    /// `F^0` as an abstract group.
    pub fn module(&self) -> FinAbGroup {
        span_group(&self.ambient, &self.levels[0]).group
    }

    pub fn contains(&self, s: usize, x: &[BigInt]) -> bool {
        contains(&self.ambient, self.level(s), x)
    }

    /// Largest `s` with `x ∈ F^s` (`None` for zero).
    pub fn filtration_of(&self, x: &[BigInt]) -> Option<usize> {
        if self.ambient.is_zero_element(x) {
            return None;
        }
        (0..self.levels.len()).take_while(|&s| self.contains(s, x)).last()
    }

    fn gr_quotient(&self, s: usize) -> Quotient {
        span_modulo(&self.ambient, self.level(s), self.level(s + 1))
    }

    /// `gr^s = F^s / F^{s+1}`.
    pub fn gr(&self, s: usize) -> FinAbGroup {
        self.gr_quotient(s).group
    }

    /// All graded pieces up to the length.
    pub fn gr_all(&self) -> Vec<FinAbGroup> {
        (0..self.length()).map(|s| self.gr(s)).collect()
    }

    /// Class of `x ∈ F^s` in `gr^s`.
    pub fn gr_class(&self, s: usize, x: &[BigInt]) -> Option<Vector> {
        let v = coords(&self.ambient, self.level(s), x)?;
        Some(self.gr_quotient(s).project(&v))
    }

    /// Ambient element representing a `gr^s` generator.
    fn gr_lift(&self, s: usize, q: &Quotient, j: usize) -> Vector {
        let v = q.lift.column(j);
        IntMatrix::from_columns(self.ambient.ngens(), self.level(s)).apply(&v)
    }
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Filtration-preserving homomorphism given on ambient coordinates.
#[derive(Clone, Debug)]
pub struct FilteredHom {
    pub source: FilteredGroup,
    pub target: FilteredGroup,
    /// `target.ambient.ngens x source.ambient.ngens`
    pub matrix: IntMatrix,
}

impl FilteredHom {
    pub fn new(source: FilteredGroup, target: FilteredGroup, matrix: IntMatrix) -> Result<Self, GradedError> {
        GroupHom::new(source.ambient.clone(), target.ambient.clone(), matrix.clone())
            .map_err(|e| GradedError::InvalidSpec(e.to_string()))?;
        let h = FilteredHom { source, target, matrix };
        for s in 0..h.source.levels.len() {
            for x in h.source.level(s) {
                if !h.target.contains(s, &h.image(x)) {
                    return Err(hyp(format!("map does not preserve F^{s}")));
                }
            }
        }
        Ok(h)
    }

    pub fn image(&self, x: &[BigInt]) -> Vector {
        self.target.ambient.reduce(&self.matrix.apply(x))
    }

    /// `gr^s(source) -> gr^s(target)`.
    pub fn gr_map(&self, s: usize) -> GroupHom {
        let qs = self.source.gr_quotient(s);
        let qt = self.target.gr_quotient(s);
        let cols: Vec<Vector> = (0..qs.group.ngens())
            .map(|j| {
                let y = self.image(&self.source.gr_lift(s, &qs, j));
                let v = coords(&self.target.ambient, self.target.level(s), &y).expect("filtered map");
                qt.project(&v)
            })
            .collect();
        GroupHom::new(qs.group.clone(), qt.group.clone(), IntMatrix::from_columns(qt.group.ngens(), &cols))
            .expect("induced map on graded pieces")
    }

    /// The map `F^0 -> F^0` between abstract groups.
    pub fn module_map(&self) -> GroupHom {
        let qs = span_group(&self.source.ambient, self.source.level(0));
        let qt = span_group(&self.target.ambient, self.target.level(0));
        let cols: Vec<Vector> = (0..qs.group.ngens())
            .map(|j| {
                let y = self.image(&self.source.gr_lift(0, &qs, j));
                qt.project(&coords(&self.target.ambient, self.target.level(0), &y).expect("filtered map"))
            })
            .collect();
        GroupHom::new(qs.group, qt.group.clone(), IntMatrix::from_columns(qt.group.ngens(), &cols))
            .expect("map of modules")
    }

    /// `F^p(source) -> F^p(target)` is onto.
    pub fn level_surjective(&self, p: usize) -> bool {
        let imgs: Vec<Vector> = self.source.level(p).iter().map(|x| self.image(x)).collect();
        self.target.level(p).iter().all(|y| contains(&self.target.ambient, &imgs, y))
    }

    /// Kernel with the induced filtration `ker ∩ F^s`.
    pub fn kernel(&self) -> FilteredGroup {
        let n = self.source.ambient.ngens();
        let levels = (0..self.source.levels.len())
            .map(|s| {
                let g = IntMatrix::from_columns(n, self.source.level(s));
                let coeffs = preimage(&self.matrix.mul(&g), &self.target.ambient.relation_matrix());
                coeffs
                    .iter()
                    .map(|v| self.source.ambient.reduce(&g.apply(v)))
                    .filter(|x| !self.source.ambient.is_zero_element(x))
                    .collect()
            })
            .collect();
        FilteredGroup { ambient: self.source.ambient.clone(), levels }
    }
}

/// Outcome of comparing the graded map with the map itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub gr_injective: bool,
    pub gr_surjective: bool,
    pub gr_iso: bool,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
    /// Every `F^p` maps onto `F^p`.
    pub levels_surjective: bool,
    pub kernel_gr: Vec<FinAbGroup>,
    pub gr_kernel: Vec<FinAbGroup>,
    /// Element-wise recheck of injectivity and surjectivity (finite modules).
    pub brute_force: Option<(bool, bool)>,
    /// All implications of the graded hypotheses hold.
    pub consistent: bool,
}

/// Evaluates `gr(α)` levelwise and checks the conclusions on `α` directly.
pub fn filtered_lemma_suite(h: &FilteredHom) -> LemmaReport {
    let len = h.source.length().max(h.target.length());
    let grs: Vec<GroupHom> = (0..len).map(|s| h.gr_map(s)).collect();
    let gr_injective = grs.iter().all(|g| g.is_injective());
    let gr_surjective = grs.iter().all(|g| g.is_surjective());
    let m = h.module_map();
    let (injective, surjective) = (m.is_injective(), m.is_surjective());
    let levels_surjective = (0..len).all(|p| h.level_surjective(p));
    let ker = h.kernel();
    let kernel_gr: Vec<FinAbGroup> = (0..len).map(|s| ker.gr(s)).collect();
    let gr_kernel: Vec<FinAbGroup> = grs.iter().map(|g| g.kernel().group).collect();
    let brute_force = brute_force_check(h, &m);
    let mut consistent = true;
    if gr_injective {
        consistent &= injective;
    }
    if gr_surjective {
        consistent &= surjective && levels_surjective && kernel_gr == gr_kernel;
    }
    if let Some((i, s)) = brute_force {
        consistent &= i == injective && s == surjective;
    }
    LemmaReport {
        gr_injective,
        gr_surjective,
        gr_iso: gr_injective && gr_surjective,
        injective,
        surjective,
        iso: injective && surjective,
        levels_surjective,
        kernel_gr,
        gr_kernel,
        brute_force,
        consistent,
    }
}

const BRUTE_FORCE_LIMIT: usize = 1 << 16;

fn brute_force_check(h: &FilteredHom, m: &GroupHom) -> Option<(bool, bool)> {
    let src = m.source.elements()?;
    let tgt_order = m.target.order()?;
    if src.len() > BRUTE_FORCE_LIMIT {
        return None;
    }
    // go through ambient coordinates rather than the module map
    let qs = span_group(&h.source.ambient, h.source.level(0));
    let gens = IntMatrix::from_columns(h.source.ambient.ngens(), h.source.level(0));
    let mut images = HashSet::new();
    for x in &src {
        let amb = gens.apply(&qs.lift.apply(x));
        images.insert(h.image(&amb));
    }
    let tgt: usize = tgt_order.try_into().ok()?;
    Some((images.len() == src.len(), images.len() == tgt))
}

/// Finite filtered vector space over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSpace {
    pub dim: usize,
    /// Spanning vectors of each level; level 0 spans everything.
    pub levels: Vec<Vec<BitVec>>,
}

impl FilteredSpace {
    fn level_dim(&self, s: usize) -> usize {
        let mut e = EchelonF2::new();
        for v in self.levels.get(s).map(|l| l.as_slice()).unwrap_or(&[]) {
            e.insert(v);
        }
        e.rank()
    }

    pub fn gr_dims(&self) -> Vec<usize> {
        (0..self.levels.len()).map(|s| self.level_dim(s) - self.level_dim(s + 1)).collect()
    }

    /// `F^s(V ⊗ W) = Σ_{i+j=s} F^i V ⊗ F^j W`.
    pub fn tensor(&self, other: &FilteredSpace) -> FilteredSpace {
        let dim = self.dim * other.dim;
        let len = self.levels.len() + other.levels.len() - 1;
        let levels = (0..len)
            .map(|s| {
                let mut out = Vec::new();
                for i in 0..=s.min(self.levels.len() - 1) {
                    let j = s - i;
                    if j >= other.levels.len() {
                        continue;
                    }
                    for a in &self.levels[i] {
                        for b in &other.levels[j] {
                            let mut v = BitVec::zeros(dim);
                            for x in a.ones() {
                                for y in b.ones() {
                                    v.set(x * other.dim + y, true);
                                }
                            }
                            out.push(v);
                        }
                    }
                }
                out
            })
            .collect();
        FilteredSpace { dim, levels }
    }
}

/// Dimensions of `I^n / I^{n+1}` in internal degree `degree`, where `I` is
/// the augmentation ideal, computed from actual products in the algebra.
pub fn augmentation_gr_dims(alg: &GradedAlgebra<F2>, degree: u32) -> Result<Vec<usize>, GradedError> {
    let basis = alg.monomials(degree, None);
    let index: std::collections::HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ngens = alg.generators().len();
    let mut dims = Vec::new();
    // products of n generators times an arbitrary monomial
    for n in 0..=degree as usize + 1 {
        let mut e = EchelonF2::new();
        let mut words = vec![(Vec::<usize>::new(), alg.one(), 0i64)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, el, d) in &words {
                let start = w.last().copied().unwrap_or(0);
                for g in start..ngens {
                    let gd = alg.generators()[g].degree as i64;
                    if d + gd > degree as i64 {
                        continue;
                    }
                    let mut m = vec![0; ngens];
                    m[g] = 1;
                    let p = alg.mul(el, &alg.monomial(m))?;
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push((w2, p, d + gd));
                }
            }
            words = next;
        }
        for (_, el, d) in &words {
            for m in alg.monomials((degree as i64 - d) as u32, None) {
                let p = alg.mul(el, &alg.monomial(m))?;
                let mut v = BitVec::zeros(basis.len());
                for k in p.terms.keys() {
                    v.set(index[k], true);
                }
                e.insert(&v);
            }
        }
        dims.push(e.rank());
    }
    Ok(dims.windows(2).map(|w| w[0] - w[1]).collect())
}

/// Dimension of `Sym^n` of a graded space with basis in the given degrees,
/// restricted to internal degree `degree`.
pub fn sym_power_dim(generator_degrees: &[u32], n: usize, degree: u32) -> usize {
    // count multisets of size n with total degree `degree`
    let d = degree as usize;
    let mut ways = vec![vec![0usize; d + 1]; n + 1];
    ways[0][0] = 1;
    for &g in generator_degrees {
        let g = g as usize;
        for k in 1..=n {
            for t in g..=d {
                ways[k][t] += ways[k - 1][t - g];
            }
        }
    }
    ways[n][d]
}

/// Augmentation filtration of a polynomial algebra over `Z`, truncated:
/// the ambient is free on the monomials of degree ≤ D, and `F^n` is spanned
/// by monomials of word length ≥ n.
pub fn augmentation_filtration(alg: &GradedAlgebra<Integers>) -> Result<(FilteredGroup, Vec<Vec<u32>>), GradedError> {
    if alg.generators().iter().any(|g| g.kind != GeneratorKind::Polynomial) {
        return Err(GradedError::InvalidSpec("augmentation filtration needs polynomial generators".into()));
    }
    let mut basis = Vec::new();
    for d in 0..=alg.truncation() {
        basis.extend(alg.monomials(d, None));
    }
    let n = basis.len();
    let maxlen = basis.iter().map(|m| m.iter().sum::<u32>() as usize).max().unwrap_or(0);
    let levels = (0..=maxlen + 1)
        .map(|s| {
            basis
                .iter()
                .enumerate()
                .filter(|(_, m)| m.iter().sum::<u32>() as usize >= s)
                .map(|(i, _)| unit(n, i))
                .collect()
        })
        .collect();
    Ok((FilteredGroup::new(FinAbGroup::free(n), levels)?, basis))
}

/// A Witt ring with its fundamental-ideal filtration, which must reach zero.
#[derive(Clone, Debug)]
pub struct FilteredRing {
    pub ring: WittPresentation,
    /// `levels[s]` generates `I^s`; the last one is zero.
    pub levels: Vec<Vec<WittElement>>,
}

impl FilteredRing {
    pub fn i_adic(ring: WittPresentation, max_depth: usize) -> Result<Self, GradedError> {
        let mut levels = Vec::new();
        for k in 0..=max_depth {
            let g = ring.ideal_power_generators(k);
            let zero = g.iter().all(|x| ring.is_zero(x));
            levels.push(if zero { vec![] } else { g });
            if zero {
                return Ok(FilteredRing { ring, levels });
            }
        }
        Err(hyp(format!("I-adic filtration of {} is not finite within depth {max_depth}", ring.name)))
    }

    pub fn in_ideal_power(&self, k: usize, x: &[BigInt]) -> bool {
        contains(&self.ring.additive, self.level(k), x)
    }

    fn level(&self, k: usize) -> &[WittElement] {
        self.levels.get(k).map(|l| l.as_slice()).unwrap_or(&[])
    }

    fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Free module `R^n` over a filtered ring with some filtration by submodules.
#[derive(Clone, Debug)]
pub struct ModuleModel {
    pub ring: FilteredRing,
    pub rank: usize,
    pub filtration: FilteredGroup,
}

impl ModuleModel {
    fn ambient(ring: &WittPresentation, rank: usize) -> FinAbGroup {
        (0..rank).fold(FinAbGroup::zero(), |g, _| g.direct_sum(&ring.additive))
    }

    fn split(&self, x: &[BigInt]) -> Vec<WittElement> {
        let k = self.ring.ring.ngens();
        x.chunks(k).map(|c| c.to_vec()).collect()
    }

    fn join(parts: &[WittElement]) -> Vector {
        parts.concat()
    }

    /// Filtration `F^t = ⊕ I^{max(0, t - shift_i)} e_i`.
    pub fn shifted_free(ring: FilteredRing, shifts: &[usize]) -> Result<Self, GradedError> {
        let r = &ring.ring;
        let k = r.ngens();
        let rank = shifts.len();
        let len = ring.depth() + shifts.iter().copied().max().unwrap_or(0);
        let levels = (0..=len)
            .map(|t| {
                let mut out = Vec::new();
                for (i, &a) in shifts.iter().enumerate() {
                    for g in ring.level(t.saturating_sub(a)) {
                        let mut v = vec![BigInt::zero(); rank * k];
                        v[i * k..(i + 1) * k].clone_from_slice(g);
                        out.push(v);
                    }
                }
                out
            })
            .collect();
        let filtration = FilteredGroup::new(Self::ambient(r, rank), levels)?;
        Ok(ModuleModel { ring, rank, filtration })
    }

    /// Arbitrary filtration; each level must be an `R`-submodule.
    pub fn new(ring: FilteredRing, rank: usize, levels: Vec<Vec<Vector>>) -> Result<Self, GradedError> {
        let filtration = FilteredGroup::new(Self::ambient(&ring.ring, rank), levels)?;
        let m = ModuleModel { ring, rank, filtration };
        for s in 0..m.filtration.levels.len() {
            for x in m.filtration.level(s) {
                for j in 0..m.ring.ring.ngens() {
                    if !m.filtration.contains(s, &m.act(&m.ring.ring.basis(j), x)) {
                        return Err(hyp(format!("F^{s} is not a submodule")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn act(&self, r: &[BigInt], x: &[BigInt]) -> Vector {
        let parts: Vec<WittElement> = self.split(x).iter().map(|c| self.ring.ring.mul(r, c)).collect();
        Self::join(&parts)
    }
}

/// Lifted basis together with its verification.
#[derive(Clone, Debug, Serialize)]
pub struct LiftCertificate {
    #[serde(with = "crate::bigint_serde::vec2")]
    pub basis: Vec<Vector>,
    pub filtrations: Vec<usize>,
    pub report: LemmaReport,
    #[serde(skip)]
    source: Option<ModuleModel>,
    #[serde(skip)]
    map: Option<IntMatrix>,
}

impl LiftCertificate {
    pub fn is_filtered_iso(&self) -> bool {
        self.report.iso && self.report.gr_iso && self.report.levels_surjective
    }
}

/// Takes representatives `reps[i] ∈ F^{s_i} M` of a proposed basis of
/// `gr M` over `gr R` and checks that the induced map from the shifted free
/// module is an isomorphism on graded pieces and on `M` itself.
pub fn lift_free_basis(module: &ModuleModel, gr_basis: &[(usize, Vector)]) -> Result<LiftCertificate, GradedError> {
    for (i, (s, x)) in gr_basis.iter().enumerate() {
        if !module.filtration.contains(*s, x) {
            return Err(hyp(format!("representative {i} does not lie in F^{s}")));
        }
    }
    let shifts: Vec<usize> = gr_basis.iter().map(|(s, _)| *s).collect();
    let source = ModuleModel::shifted_free(module.ring.clone(), &shifts)?;
    let r = &module.ring.ring;
    let k = r.ngens();
    let mut cols = Vec::new();
    for (_, x) in gr_basis {
        for j in 0..k {
            cols.push(module.act(&r.basis(j), x));
        }
    }
    let n = module.filtration.ambient.ngens();
    let map = IntMatrix::from_columns(n, &cols);
    let hom = FilteredHom::new(source.filtration.clone(), module.filtration.clone(), map.clone())?;
    let report = filtered_lemma_suite(&hom);
    if !report.gr_iso {
        return Err(GradedError::NotFree(format!(
            "the proposed classes do not form a basis of gr (injective: {}, surjective: {})",
            report.gr_injective, report.gr_surjective
        )));
    }
    Ok(LiftCertificate {
        basis: gr_basis.iter().map(|(_, x)| module.filtration.ambient.reduce(x)).collect(),
        filtrations: shifts,
        report,
        source: Some(source),
        map: Some(map),
    })
}

/// Change of basis between two lifts of the same graded basis.
#[derive(Clone, Debug, Serialize)]
pub struct Transition {
    /// `matrix[i][j]`: coefficient of `old_i` in `new_j`.
    pub matrix: Vec<Vec<String>>,
    /// `T - 1` raises filtration: entries lie in `I^{s_j + 1 - s_i}`.
    pub unitriangular: bool,
}

pub fn transition_matrix(
    module: &ModuleModel,
    old: &LiftCertificate,
    new: &LiftCertificate,
) -> Result<Transition, GradedError> {
    let map = old.map.as_ref().ok_or_else(|| hyp("certificate without map"))?;
    let source = old.source.as_ref().ok_or_else(|| hyp("certificate without source"))?;
    let r = &module.ring.ring;
    let amb = &module.filtration.ambient;
    let m = old.basis.len();
    let mut t = vec![vec![r.zero(); m]; m];
    for (j, b) in new.basis.iter().enumerate() {
        let full = map.hcat(&amb.relation_matrix());
        let x = solve_integer(&full, b).ok_or_else(|| hyp("new basis element outside the span of the old"))?;
        let x = source.filtration.ambient.reduce(&x[..map.cols()]);
        for (i, c) in source.split(&x).into_iter().enumerate() {
            t[i][j] = r.reduce(&c);
        }
    }
    let mut ok = true;
    for i in 0..m {
        for j in 0..m {
            let mut e = t[i][j].clone();
            if i == j {
                e = r.sub(&e, &r.one());
            }
            let need = (new.filtrations[j] + 1).saturating_sub(old.filtrations[i]);
            ok &= module.ring.in_ideal_power(need, &e);
        }
    }
    let matrix = t.iter().map(|row| row.iter().map(|e| r.format(e)).collect()).collect();
    Ok(Transition { matrix, unitriangular: ok })
}
