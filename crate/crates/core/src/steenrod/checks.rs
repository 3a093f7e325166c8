//! Self-checks on the Hopf algebroid structure: relations, coassociativity,
//! counit, antipode, the dual-action table, derivation properties and the
//! triangularity of the conjugate basis.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{Elem, Side, SteenrodAlgebra, SteenrodError};
use crate::graded::{Element, Monomial};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), checked: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// `Δ(τ_i)^2 = Δ(τ_i^2)` for every rewritten square in range.
pub fn relation_check(a: &SteenrodAlgebra) -> Result<CheckReport, SteenrodError> {
    let mut r = CheckReport::new("coproduct respects relations");
    for i in 0..a.tau_count() {
        let t = a.element(&unit_with(a, a.tau_i_index(i).unwrap()));
        let Ok(sq) = a.product(&t, &t) else { continue };
        let dt = a.coproduct(&t)?;
        let Ok(lhs) = a.tensor_mul(&dt, &dt) else { continue };
        let rhs = a.coproduct(&sq)?;
        r.checked += 1;
        if lhs != rhs {
            r.failures.push(format!("tau{i}"));
        }
    }
    Ok(r)
}

fn unit_with(a: &SteenrodAlgebra, g: usize) -> Monomial {
    let mut m = vec![0; a.algebra().generators().len()];
    m[g] = 1;
    m
}

/// Coassociativity and both counit laws on every monomial with `d ≤ bound`.
pub fn hopf_checks(a: &SteenrodAlgebra, bound: u32) -> Result<Vec<CheckReport>, SteenrodError> {
    let mut coassoc = CheckReport::new("coassociativity");
    let mut counit = CheckReport::new("counit");
    for m in a.monomials_up_to(bound) {
        let x = a.element(&m);
        let label = a.format(&x);
        coassoc.checked += 1;
        if a.coproduct_left_twice(&x)? != a.coproduct_right_twice(&x)? {
            coassoc.failures.push(label.clone());
        }
        let d = a.coproduct(&x)?;
        counit.checked += 1;
        if a.counit_left(&d) != x || a.counit_right(&d)? != x {
            counit.failures.push(label);
        }
    }
    Ok(vec![coassoc, counit])
}

/// `m(id ⊗ χ)Δ = ε` on every monomial with `d ≤ bound`, and `χ` respects
/// the square relations.
pub fn antipode_check(a: &SteenrodAlgebra, bound: u32) -> Result<CheckReport, SteenrodError> {
    let mut r = CheckReport::new("antipode");
    let alg = a.algebra();
    for m in a.monomials_up_to(bound) {
        let x = a.element(&m);
        let mut acc = Element::zero();
        for (left, y) in &a.coproduct(&x)?.terms {
            let t = alg.mul(&alg.monomial(left.clone()), &a.conjugate(y)?)?;
            acc = alg.add(&acc, &t);
        }
        r.checked += 1;
        if acc != a.counit(&x) {
            r.failures.push(a.format(&x));
        }
    }
    for i in 0..a.tau_count() {
        let t = a.element(&unit_with(a, a.tau_i_index(i).unwrap()));
        let Ok(sq) = a.product(&t, &t) else { continue };
        let c = a.conjugate(&t)?;
        let Ok(lhs) = alg.mul(&c, &c) else { continue };
        r.checked += 1;
        if lhs != a.conjugate(&sq)? {
            r.failures.push(format!("conjugate of tau{i} squared"));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionFormula {
    pub operator: String,
    pub side: Side,
    pub formula: String,
    pub instances: Vec<ActionInstance>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionInstance {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

impl ActionFormula {
    pub fn ok(&self) -> bool {
        !self.instances.is_empty() && self.instances.iter().all(|i| i.expected == i.actual)
    }
}

enum Gen {
    Tau,
    Xi,
}

/// Expected value of one formula at index `i`; `None` when the index is
/// outside the formula's range.
type Rule = fn(usize) -> Option<Expect>;

enum Expect {
    One,
    Zero,
    Tau(usize),
    Xi(usize),
    XiSquared(usize),
}

/// Instantiates every formula of the dual-action table at all indices whose
/// input lies within the truncation.
pub fn action_table(a: &SteenrodAlgebra) -> Result<Vec<ActionFormula>, SteenrodError> {
    use Expect::*;
    let rows: Vec<(&str, Side, &str, Gen, Rule)> = vec![
        ("tau0", Side::L, "τ̂₀(τ₀) = 1", Gen::Tau, |i| (i == 0).then_some(One)),
        ("tau0", Side::L, "τ̂₀(τᵢ) = 0, i ≠ 0", Gen::Tau, |i| (i != 0).then_some(Zero)),
        ("tau0", Side::L, "τ̂₀(ξᵢ) = 0, i ≥ 0", Gen::Xi, |_| Some(Zero)),
        ("tau1", Side::L, "τ̂₁(τ₁) = 1", Gen::Tau, |i| (i == 1).then_some(One)),
        ("tau1", Side::L, "τ̂₁(τᵢ) = 0, i ≠ 1", Gen::Tau, |i| (i != 1).then_some(Zero)),
        ("tau1", Side::L, "τ̂₁(ξᵢ) = 0, i ≥ 0", Gen::Xi, |_| Some(Zero)),
        ("xi1", Side::L, "ξ̂₁(τ₁) = τ₀", Gen::Tau, |i| (i == 1).then_some(Tau(0))),
        ("xi1", Side::L, "ξ̂₁(τᵢ) = 0, i ≠ 1", Gen::Tau, |i| (i != 1).then_some(Zero)),
        ("xi1", Side::L, "ξ̂₁(ξ₁) = 1", Gen::Xi, |i| (i == 1).then_some(One)),
        ("xi1", Side::L, "ξ̂₁(ξᵢ) = 0, i ≠ 1", Gen::Xi, |i| (i != 1).then_some(Zero)),
        ("tau0", Side::R, "τ̂₀(τᵢ) = ξᵢ, i ≥ 0", Gen::Tau, |i| Some(Xi(i))),
        ("tau0", Side::R, "τ̂₀(ξᵢ) = 0, i ≥ 1", Gen::Xi, |i| (i >= 1).then_some(Zero)),
        ("xi1", Side::R, "ξ̂₁(τᵢ) = 0, i ≥ 0", Gen::Tau, |_| Some(Zero)),
        ("xi1", Side::R, "ξ̂₁(ξᵢ) = ξᵢ₋₁², i ≥ 0", Gen::Xi, |i| Some(if i == 0 { Zero } else { XiSquared(i - 1) })),
    ];
    let alg = a.algebra();
    let xi = |i: usize| -> Option<Elem> {
        if i == 0 {
            Some(alg.one())
        } else {
            a.xi_i_index(i).map(|g| a.element(&unit_with(a, g)))
        }
    };
    let tau = |i: usize| a.tau_i_index(i).map(|g| a.element(&unit_with(a, g)));
    let mut out = Vec::new();
    for (op, side, formula, gen, rule) in rows {
        let op_mono = a.operator(op)?;
        let mut instances = Vec::new();
        for i in 0.. {
            let input = match gen {
                Gen::Tau => tau(i),
                Gen::Xi => xi(i),
            };
            let Some(input) = input else { break };
            let Some(expect) = rule(i) else { continue };
            let expected = match expect {
                One => Some(alg.one()),
                Zero => Some(Element::zero()),
                Tau(j) => tau(j),
                Xi(j) => xi(j),
                XiSquared(j) => match xi(j) {
                    Some(x) => alg.mul(&x, &x).ok(),
                    None => None,
                },
            };
            let Some(expected) = expected else { continue };
            let actual = a.dual_action(&op_mono, side, &input)?;
            instances.push(ActionInstance {
                input: a.format(&input),
                expected: a.format(&expected),
                actual: a.format(&actual),
            });
        }
        out.push(ActionFormula { operator: op.to_string(), side, formula: formula.to_string(), instances });
    }
    Ok(out)
}

/// Leibniz rule for a left operator on all pairs of `τ_i, ξ_i` other than
/// `excluded` (squares included), and right linearity
/// `op(x η_R(c)) = op(x) η_R(c)` for base generators `c`.
pub fn derivation_check(a: &SteenrodAlgebra, op: &str, excluded: &[&str]) -> Result<CheckReport, SteenrodError> {
    let mut r = CheckReport::new(&format!("{op} left derivation"));
    let alg = a.algebra();
    let op_mono = a.operator(op)?;
    let act = |x: &Elem| a.dual_action(&op_mono, Side::L, x);
    let gens: Vec<(String, Elem)> = alg
        .generators()
        .iter()
        .filter(|g| !excluded.contains(&g.name.as_str()))
        .map(|g| (g.name.clone(), alg.generator(&g.name).unwrap()))
        .filter(|(_, x)| a.is_pure(x.terms.keys().next().unwrap()))
        .collect();
    for (i, (na, x)) in gens.iter().enumerate() {
        for (nb, y) in &gens[i..] {
            let Ok(xy) = alg.mul(x, y) else { continue };
            let lhs = act(&xy)?;
            let (Ok(p), Ok(q)) = (alg.mul(&act(x)?, y), alg.mul(x, &act(y)?)) else { continue };
            r.checked += 1;
            if lhs != alg.add(&p, &q) {
                r.failures.push(format!("{na}·{nb}"));
            }
        }
    }
    let base: Vec<Elem> = a
        .base_indices()
        .iter()
        .chain(std::iter::once(&a.tau_index()))
        .map(|&g| a.element(&unit_with(a, g)))
        .collect();
    for (na, x) in &gens {
        for c in &base {
            let rc = a.eta_r(c)?;
            let Ok(lhs) = alg.mul(x, &rc) else { continue };
            let Ok(rhs) = alg.mul(&act(x)?, &rc) else { continue };
            r.checked += 1;
            if act(&lhs)? != rhs {
                r.failures.push(format!("{na}·η_R({})", a.format(c)));
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangularityReport {
    pub size: usize,
    pub unit_diagonal: bool,
    pub acyclic: bool,
    pub off_diagonal: usize,
}

impl TriangularityReport {
    pub fn ok(&self) -> bool {
        self.size > 0 && self.unit_diagonal && self.acyclic
    }
}

/// Expands `η_R(τ)^p m` (m a monomial without τ) in the monomial basis
/// `τ^q m'`. The matrix is unit triangular for some ordering iff the
/// diagonal is 1 and the off-diagonal support has no cycle.
pub fn conjugate_triangularity(a: &SteenrodAlgebra, bound: u32) -> Result<TriangularityReport, SteenrodError> {
    let alg = a.algebra();
    let tau = a.tau_index();
    let index = a.monomials_up_to(bound);
    let position: BTreeMap<Monomial, usize> = index.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let eta_tau = a.eta_r(&a.element(&unit_with(a, tau)))?;
    let mut unit_diagonal = true;
    let mut edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); index.len()];
    let mut off_diagonal = 0;
    for (row, n) in index.iter().enumerate() {
        let mut m = n.clone();
        let p = std::mem::take(&mut m[tau]);
        let e = alg.mul(&alg.pow(&eta_tau, p)?, &alg.monomial(m))?;
        if !e.terms.contains_key(n) {
            unit_diagonal = false;
        }
        for t in e.terms.keys() {
            let col = *position.get(t).expect("homogeneous expansion");
            if col != row {
                off_diagonal += 1;
                edges[row].insert(col);
            }
        }
    }
    let mut indeg = vec![0usize; index.len()];
    for e in &edges {
        for &c in e {
            indeg[c] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..index.len()).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &c in &edges[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    Ok(TriangularityReport { size: index.len(), unit_diagonal, acyclic: seen == index.len(), off_diagonal })
}
