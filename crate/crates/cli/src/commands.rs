use std::collections::BTreeMap;

use etasphere::abelian::ker_coker_of_mul;
use etasphere::kwcalc::divided::DividedPowerModel;
use etasphere::kwcalc::msp::PhiReport;
use etasphere::kwcalc::operator::{parse_words, phi_on_beta, OperatorPolynomial};
use etasphere::kwcalc::stems::Cobordism;
use etasphere::kwcalc::{
    cobordism_stems, divided_power_construct, eta_stems, hopf_constants, hw_hw_stems, kw_hw_generators_check,
    msp_phi_gr, normal_order, nu2, phi_iterates_on_msl, phi_lemma_model, StemsTable,
};
use etasphere::steenrod::checks::{
    action_table, antipode_check, conjugate_triangularity, derivation_check, hopf_checks, relation_check, CheckReport,
};
use etasphere::steenrod::pages::{bockstein_pages, ko_homology_mismatches, model, pages_for, ModelKind, PageBounds, Pages};
use etasphere::steenrod::{MotivicBase, SteenrodAlgebra, DEFAULT_TRUNCATION};
use etasphere::witt::brute::brute_force_witt_ring;
use etasphere::witt::{find_ring_isomorphism, Local2, WittPresentation};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chart::{emit_chart, table, Chartable};
use crate::report::Certificate;
use crate::{Cli, CliError, Command, Config, Outcome, PagesArgs, SteenrodSub};

type Res<T> = Result<T, CliError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Ctx<'a> {
    cli: &'a Cli,
    cfg: &'a Config,
    inputs: BTreeMap<String, Value>,
}

impl<'a> Ctx<'a> {
    fn field(&mut self, default: &str) -> Res<WittPresentation> {
        let name = self.cli.common.field.clone().unwrap_or_else(|| default.to_string());
        self.inputs.insert("field".into(), json!(name));
        Ok(self.cfg.catalog.lookup(&name)?.clone())
    }

    fn max(&mut self, default: u32) -> u32 {
        let m = self.cli.common.max.unwrap_or(default);
        self.inputs.insert("max".into(), json!(m));
        m
    }

    fn verify(&self) -> bool {
        self.cli.common.verify
    }

    fn finish(self, name: &str, results: Value, certificates: Vec<Certificate>, text: String, chart: Option<String>) -> Outcome {
        let mut inputs = self.inputs;
        inputs.insert("verify".into(), json!(self.cli.common.verify));
        inputs.insert("catalog".into(), json!(self.cfg.catalog_source));
        inputs.insert("stems_data".into(), json!(self.cfg.stems_source));
        Outcome { name: name.to_string(), inputs, results, certificates, text, chart }
    }
}

pub(crate) fn dispatch(cli: &Cli, cfg: &Config) -> Res<Outcome> {
    let ctx = Ctx { cli, cfg, inputs: BTreeMap::new() };
    match &cli.command {
        Command::Stems => stems(ctx),
        Command::Witt => witt(ctx),
        Command::Steenrod(a) => match &a.sub {
            Some(SteenrodSub::Pages(p)) => pages(ctx, p, a.base.as_deref()),
            None => steenrod(ctx, a.base.as_deref(), a.element.as_deref(), a.times.as_deref()),
        },
        Command::Pages(p) => pages(ctx, p, None),
        Command::Operator(a) => operator(ctx, a.word.as_deref(), a.phi_beta),
        Command::Hopf => hopf(ctx),
        Command::Divided(a) => divided(ctx, &a.units),
        Command::Cobordism(a) => cobordism(ctx, &a.theory),
        Command::Hwhw => hwhw(ctx),
        Command::Verify => verify_all(ctx),
    }
}

// ---------------------------------------------------------------- stems

fn stems_text(t: &StemsTable) -> String {
    let rows: Vec<Vec<String>> =
        t.entries.iter().map(|e| vec![e.degree.to_string(), e.formatted.clone(), e.origin.clone()]).collect();
    format!("{} over {}\n{}", t.title, t.field, table(&["n", "group", "2-local origin"], &rows))
}

/// Compares the `ker`/`coker` summands with those of `9^m - 1`, which differs
/// from `8m` by a 2-adic unit.
fn nine_power_certificates(w: &WittPresentation, t: &StemsTable, hw: bool) -> Vec<Certificate> {
    let w2 = w.additive.localized_at_two();
    let mut coker_fail = Vec::new();
    let mut ker_fail = Vec::new();
    let mut zero_fail = Vec::new();
    let (mut coker_n, mut ker_n, mut zero_n) = (0, 0, 0);
    for e in t.entries.iter().filter(|e| e.degree > 0) {
        let n = e.degree;
        let (coker_deg, ker_deg) = if hw { (n % 4 == 0, n % 4 == 1 && n > 1) } else { (n % 4 == 3, n % 4 == 0) };
        let m = if hw { n / 4 } else { (n + 1) / 4 };
        let nine = num_traits::pow(BigInt::from(9), m as usize) - 1;
        let (ker, coker) = ker_coker_of_mul(&w2, &nine);
        if coker_deg {
            coker_n += 1;
            if coker.localized_at_two() != e.witt_part {
                coker_fail.push(format!("degree {n}: {} vs coker(9^{m} - 1) = {}", e.witt_part, coker));
            }
        } else if ker_deg {
            ker_n += 1;
            if ker.localized_at_two() != e.witt_part {
                ker_fail.push(format!("degree {n}: {} vs ker(9^{m} - 1) = {}", e.witt_part, ker));
            }
        } else {
            zero_n += 1;
            if e.witt_part != etasphere::abelian::FinAbGroup::zero() {
                zero_fail.push(format!("degree {n}: 2-local part {}", e.witt_part));
            }
        }
    }
    vec![
        Certificate::from_failures("coker-matches-nine-power", coker_n, coker_fail),
        Certificate::from_failures("ker-matches-nine-power", ker_n, ker_fail),
        Certificate::from_failures("other-degrees-vanish-2-locally", zero_n, zero_fail),
    ]
}

fn stems(mut ctx: Ctx) -> Res<Outcome> {
    let w = ctx.field("real_closed")?;
    let max = ctx.max(20);
    let t = eta_stems(&w, &ctx.cfg.stems, max)?;
    let mut certs = Vec::new();
    if ctx.verify() {
        certs = nine_power_certificates(&w, &t, false);
        let mut odd_fail = Vec::new();
        for e in t.entries.iter().filter(|e| e.degree > 0 && w.additive.free_rank() > 0) {
            let want = ctx.cfg.stems.get(e.degree)?.odd_torsion();
            let copies = (0..w.additive.free_rank()).fold(etasphere::abelian::FinAbGroup::zero(), |g, _| g.direct_sum(&want));
            if copies != e.odd_part {
                odd_fail.push(format!("degree {}: {} vs {}", e.degree, e.odd_part, copies));
            }
        }
        certs.push(Certificate::from_failures("odd-part-from-classical-stems", t.entries.len(), odd_fail));
    }
    let chart = emit_chart(Chartable::Stems(&t));
    let text = stems_text(&t);
    Ok(ctx.finish("stems", to_value(&t), certs, text, Some(chart)))
}

fn hwhw(mut ctx: Ctx) -> Res<Outcome> {
    let w = ctx.field("real_closed")?;
    let max = ctx.max(20);
    let t = hw_hw_stems(&w, max);
    let certs = if ctx.verify() { nine_power_certificates(&w, &t, true) } else { vec![] };
    let chart = emit_chart(Chartable::Stems(&t));
    let text = stems_text(&t);
    Ok(ctx.finish("hwhw", to_value(&t), certs, text, Some(chart)))
}

// ----------------------------------------------------------------- witt

fn witt_certificates(w: &WittPresentation) -> Vec<Certificate> {
    let mut certs = vec![Certificate::single("presentation-axioms", w.validate().is_ok(), || {
        w.validate().unwrap_err().to_string()
    })];
    // odd-rank elements: all of them for finite rings, a coordinate box otherwise
    let candidates: Vec<Vec<BigInt>> = match w.additive.elements() {
        Some(all) => all,
        None => {
            let n = w.ngens().min(4);
            let mut out = vec![vec![]];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|v: Vec<BigInt>| {
                        (-2..=2).map(move |c| {
                            let mut v = v.clone();
                            v.push(BigInt::from(c));
                            v
                        })
                    })
                    .collect();
            }
            out.into_iter()
                .map(|mut v| {
                    v.resize(w.ngens(), BigInt::zero());
                    v
                })
                .collect()
        }
    };
    let one = Local2::from(w.one());
    let odd: Vec<&Vec<BigInt>> = candidates.iter().filter(|x| w.rank(x) == 1).collect();
    let fails = odd.iter().filter_map(|x| match w.inverse_2local(x) {
        Some(inv) if w.local_eq(&w.local_mul(&Local2::from(w.reduce(x)), &inv), &one) => None,
        _ => Some(w.format(x)),
    });
    certs.push(Certificate::from_failures("odd-rank-invertible-2-locally", odd.len(), fails.collect::<Vec<_>>()));
    if let Some(q) = w.name.strip_prefix('F').and_then(|q| q.parse::<usize>().ok()) {
        let brute = brute_force_witt_ring(q, 4);
        let ok = brute.as_ref().is_ok_and(|b| find_ring_isomorphism(b, w).is_some() && find_ring_isomorphism(w, b).is_some());
        certs.push(Certificate::single("matches-brute-force-classification", ok, || match brute {
            Err(e) => e.to_string(),
            Ok(b) => format!("no ring isomorphism between {} and diagonal forms over F{q} ({})", w.additive, b.additive),
        }));
    }
    certs
}

fn witt(mut ctx: Ctx) -> Res<Outcome> {
    let w = ctx.field("real_closed")?;
    let max = ctx.max(3);
    let powers: Vec<Value> = (0..=max as usize)
        .map(|k| {
            let p = w.fundamental_ideal_power(k);
            json!({"power": k, "ideal": p.subgroup.to_string(), "quotient": p.quotient.to_string()})
        })
        .collect();
    let n_eps: Vec<Value> = (1..=4u64)
        .map(|n| {
            let g = w.n_epsilon(n);
            json!({"n": n, "witt": w.format(&g.witt), "rank": g.rank.to_string()})
        })
        .collect();
    let results = json!({
        "name": w.name,
        "additive": w.additive.to_string(),
        "two_local": w.additive.localized_at_two().to_string(),
        "generators": w.generator_names,
        "unit": w.format(&w.unit),
        "minus_one": w.format(&w.minus_one),
        "rank_mod2": w.rank_mod2,
        "vcd2": w.vcd2,
        "ideal_powers": powers,
        "n_epsilon": n_eps,
    });
    let mut text = format!(
        "W({}) = {}\ngenerators: {}\n⟨1⟩ = {}, ⟨-1⟩ = {}\nvcd₂ = {}\n",
        w.name,
        w.additive,
        w.generator_names.join(", "),
        w.format(&w.unit),
        w.format(&w.minus_one),
        w.vcd2.map_or("∞".to_string(), |d| d.to_string())
    );
    let rows: Vec<Vec<String>> = powers
        .iter()
        .map(|p| {
            vec![p["power"].to_string(), p["ideal"].as_str().unwrap().into(), p["quotient"].as_str().unwrap().into()]
        })
        .collect();
    text.push_str(&table(&["k", "I^k", "W/I^k"], &rows));
    let certs = if ctx.verify() { witt_certificates(&w) } else { vec![] };
    Ok(ctx.finish("witt", results, certs, text, None))
}

// ------------------------------------------------------------- steenrod

fn resolve_base(ctx: &mut Ctx, explicit: Option<&str>) -> Res<MotivicBase> {
    let name = match (explicit, ctx.cli.common.field.as_deref()) {
        (Some(b), _) => b.to_string(),
        (None, Some(f)) if MotivicBase::lookup(f).is_ok() => f.to_string(),
        (None, Some("F3" | "F7")) => "finite_field_3mod4".into(),
        (None, Some("F5")) => "finite_field_1mod4".into(),
        (None, Some(f)) => return Err(usage(format!("no motivic base for field {f:?}; pass --base"))),
        (None, None) => "real_closed".into(),
    };
    ctx.inputs.insert("base".into(), json!(name));
    Ok(MotivicBase::lookup(&name)?)
}

fn check_cert(r: &CheckReport) -> Certificate {
    Certificate::from_failures(&r.name, r.checked, r.failures.clone())
}

fn steenrod_certificates(a: &SteenrodAlgebra, bound: u32) -> Res<Vec<Certificate>> {
    let mut certs = vec![check_cert(&relation_check(a)?)];
    for r in hopf_checks(a, bound)? {
        certs.push(check_cert(&r));
    }
    certs.push(check_cert(&antipode_check(a, bound)?));
    let table = action_table(a)?;
    let fails = table.iter().filter(|f| !f.ok()).map(|f| {
        let bad = f.instances.iter().find(|i| i.expected != i.actual).unwrap();
        format!("{}: on {} expected {}, got {}", f.formula, bad.input, bad.expected, bad.actual)
    });
    certs.push(Certificate::from_failures("action-table", table.len(), fails.collect::<Vec<_>>()));
    for (op, excluded) in [("tau0", vec![]), ("xi1", vec!["tau0", "tau1"])] {
        certs.push(check_cert(&derivation_check(a, op, &excluded)?));
    }
    let tri = conjugate_triangularity(a, bound)?;
    certs.push(Certificate::single("conjugate-basis-triangular", tri.ok(), || format!("{tri:?}")));
    Ok(certs)
}

fn steenrod(mut ctx: Ctx, base: Option<&str>, element: Option<&str>, times: Option<&str>) -> Res<Outcome> {
    let b = resolve_base(&mut ctx, base)?;
    let t = ctx.cli.common.truncation.unwrap_or(DEFAULT_TRUNCATION);
    ctx.inputs.insert("truncation".into(), json!(t));
    let a = SteenrodAlgebra::new(&b, t)?;
    let gens: Vec<Value> = a
        .algebra()
        .generators()
        .iter()
        .map(|g| json!({"name": g.name, "label": g.label, "weight": g.degree, "grading": g.grading}))
        .collect();
    let actions = action_table(&a)?;
    let mut results = json!({
        "base": b.name,
        "truncation": t,
        "generators": gens,
        "action_table": to_value(&actions),
    });
    let mut text = format!("dual Steenrod algebra over {}, weight ≤ {t}\n", b.name);
    let rows: Vec<Vec<String>> = a
        .algebra()
        .generators()
        .iter()
        .map(|g| vec![g.label.clone(), g.degree.to_string(), format!("{:?}", g.grading)])
        .collect();
    text.push_str(&table(&["generator", "weight", "grading"], &rows));
    let rows: Vec<Vec<String>> = actions
        .iter()
        .map(|f| vec![f.formula.clone(), f.instances.len().to_string(), if f.ok() { "ok" } else { "MISMATCH" }.into()])
        .collect();
    text.push_str(&table(&["action formula", "instances", "status"], &rows));
    if let Some(e) = element {
        ctx.inputs.insert("element".into(), json!(e));
        let x = a.parse(e)?;
        let cop = a.coproduct(&x)?;
        let conj = a.conjugate(&x)?;
        results["element"] = json!({
            "value": a.format(&x),
            "coproduct": a.tensor_terms(&cop),
            "conjugate": a.format(&conj),
        });
        text.push_str(&format!("Δ({}) = {}\nχ({}) = {}\n", a.format(&x), a.format_tensor(&cop), a.format(&x), a.format(&conj)));
        if let Some(y) = times {
            ctx.inputs.insert("times".into(), json!(y));
            let p = a.product(&x, &a.parse(y)?)?;
            results["product"] = json!(a.format(&p));
            text.push_str(&format!("product = {}\n", a.format(&p)));
        }
    }
    let certs = if ctx.verify() { steenrod_certificates(&a, t.min(8))? } else { vec![] };
    Ok(ctx.finish("steenrod", results, certs, text, None))
}

fn page_text(p: &Pages) -> String {
    let mut text = format!(
        "η-Bockstein pages, {} model over {}, s ≤ {}, f ≤ {}\n",
        p.model.name(),
        p.base,
        p.bounds.smax,
        p.bounds.fmax
    );
    for page in [&p.e1, &p.e2] {
        let rows: Vec<Vec<String>> = page
            .entries
            .iter()
            .map(|e| vec![e.s.to_string(), e.f.to_string(), e.w.to_string(), e.dim.to_string(), e.basis.join(", ")])
            .collect();
        text.push_str(&format!("E{}\n", page.page));
        text.push_str(&table(&["s", "f", "w", "dim", "basis"], &rows));
    }
    let c = &p.collapse;
    text.push_str(&format!(
        "positive filtration in stems {:?}; collapse at {}\n",
        c.positive_filtration_stems,
        c.collapses_at.map_or("undetermined".to_string(), |r| format!("E{r}"))
    ));
    text
}

fn pages_certificates(kind: ModelKind, b: &MotivicBase, p: &Pages) -> Res<Vec<Certificate>> {
    let m = model(kind, b, p.truncation)?;
    let mut fails = Vec::new();
    for g in m.algebra.generators() {
        let x = m.algebra.generator(&g.name)?;
        if !m.algebra.apply(&m.delta, &m.algebra.apply(&m.delta, &x)?)?.is_zero() {
            fails.push(format!("δ²({}) ≠ 0", g.label));
        }
    }
    let mut certs = vec![Certificate::from_failures("delta-squares-to-zero", m.algebra.generators().len(), fails)];
    if kind == ModelKind::Ko {
        let smax = p.bounds.smax.min(8);
        let bad = ko_homology_mismatches(b, smax, 2)?;
        let checked = (0..=smax).map(|s| (s + 3) as usize).sum();
        certs.push(Certificate::from_failures(
            "ko-homology-is-tau-ring",
            checked,
            bad.iter().map(|(s, w)| format!("cell (s, w) = ({s}, {w})")).collect::<Vec<_>>(),
        ));
        let c = &p.collapse;
        certs.push(Certificate::single("collapse-in-stems-0-mod-4", c.concentrated_in_stems_0_mod_4 && c.collapses_at.is_some(), || {
            format!("positive filtration in stems {:?}", c.positive_filtration_stems)
        }));
    }
    Ok(certs)
}

fn pages(mut ctx: Ctx, args: &PagesArgs, outer_base: Option<&str>) -> Res<Outcome> {
    let b = resolve_base(&mut ctx, args.base.as_deref().or(outer_base))?;
    let kind = ModelKind::parse(&args.model).ok_or_else(|| usage(format!("unknown model {:?}", args.model)))?;
    if args.smax < 0 || args.fmax < 0 {
        return Err(usage("--smax and --fmax must be non-negative"));
    }
    ctx.inputs.insert("model".into(), json!(kind.name()));
    ctx.inputs.insert("smax".into(), json!(args.smax));
    ctx.inputs.insert("fmax".into(), json!(args.fmax));
    let bounds = PageBounds::new(args.smax, args.fmax);
    let p = match ctx.cli.common.truncation {
        Some(t) => {
            ctx.inputs.insert("truncation".into(), json!(t));
            bockstein_pages(&model(kind, &b, t)?, bounds)?
        }
        None => pages_for(kind, &b, bounds)?,
    };
    let chart = format!("{}\n{}", emit_chart(Chartable::Page(&p.e1)), emit_chart(Chartable::Page(&p.e2)));
    let certs = if ctx.verify() { pages_certificates(kind, &b, &p)? } else { vec![] };
    let text = page_text(&p);
    Ok(ctx.finish("pages", to_value(&p), certs, text, Some(chart)))
}

// ------------------------------------------------------------- operator

/// `φβⁿ = 9ⁿβⁿφ + (9ⁿ - 1)βⁿ⁻¹`, checked against rewriting and the valuation.
fn phi_beta_failures(max: u64) -> Vec<String> {
    let mut fails = Vec::new();
    for n in 1..=max {
        let word = format!("phi{}", " beta".repeat(n as usize));
        let got = normal_order(&parse_words(&word).expect("generated word parses"));
        let nine = num_traits::pow(BigInt::from(9), n as usize);
        let want = OperatorPolynomial::monomial(nine.clone(), n as u32, 1)
            .add(&OperatorPolynomial::monomial(&nine - BigInt::one(), n as u32 - 1, 0));
        if got != want {
            fails.push(format!("φβ^{n} rewrites to {got}"));
            continue;
        }
        let p = phi_on_beta(n);
        let c: BigInt = &nine - BigInt::one();
        if p.coefficient != c.to_string() || p.nu2 != p.nu2_8n || p.nu2 != nu2(&c) {
            fails.push(format!("φβ^{n}: coefficient {} with ν₂ {:?}", p.coefficient, p.nu2));
        }
    }
    fails
}

fn operator(mut ctx: Ctx, word: Option<&str>, phi_beta: Option<u64>) -> Res<Outcome> {
    if word.is_none() && phi_beta.is_none() && !ctx.verify() {
        return Err(usage("operator needs --word or --phi-beta"));
    }
    let w = match ctx.cli.common.field.clone() {
        Some(_) => Some(ctx.field("")?),
        None => None,
    };
    let mut results = json!({});
    let mut text = String::new();
    if let Some(word) = word {
        ctx.inputs.insert("word".into(), json!(word));
        let p = normal_order(&parse_words(word)?);
        results["normal_form"] = json!(p.to_string());
        results["terms"] = to_value(&p);
        text.push_str(&format!("{p}\n"));
        if let Some(w) = &w {
            let s = p.format_in(w);
            results["in_witt_ring"] = json!(s);
            text.push_str(&format!("over W({}): {s}\n", w.name));
        }
    }
    if let Some(n) = phi_beta {
        ctx.inputs.insert("phi_beta".into(), json!(n));
        let p = phi_on_beta(n);
        text.push_str(&format!(
            "φ(β^{n}) = {} β^{} (ν₂ = {}, ν₂(8n) = {})\n",
            p.coefficient,
            n.saturating_sub(1),
            p.nu2.map_or("∞".into(), |v| v.to_string()),
            p.nu2_8n.map_or("∞".into(), |v| v.to_string())
        ));
        results["phi_on_beta"] = to_value(&p);
    }
    let mut certs = Vec::new();
    if ctx.verify() {
        let max = ctx.max(50) as u64;
        certs.push(Certificate::from_failures("phi-beta-closed-form", max as usize, phi_beta_failures(max)));
    }
    Ok(ctx.finish("operator", results, certs, text, None))
}

// ----------------------------------------------------------------- hopf

fn hopf(mut ctx: Ctx) -> Res<Outcome> {
    let max = ctx.max(24) as usize;
    let t = hopf_constants(max, max)?;
    let columns: Vec<String> = std::iter::once("i\\j".to_string()).chain((0..=max).map(|j| j.to_string())).collect();
    let headers: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
    let rows: Vec<Vec<String>> = (0..=max)
        .map(|i| {
            std::iter::once(i.to_string())
                .chain((0..=max).map(|j| t.get(i, j).map_or(".".into(), |v| v.to_string())))
                .collect()
        })
        .collect();
    let text = format!("Hopf constants mod 8\n{}", table(&headers, &rows));
    let mut certs = Vec::new();
    if ctx.verify() {
        let fails = t.mismatches.iter().map(|(i, j)| {
            format!("({i}, {j}): recursion {} vs binomial {}", t.recursion[*i][*j], t.binomial[*i][*j])
        });
        certs.push(Certificate::from_failures("recursion-matches-binomial", (max + 1) * (max + 1), fails.collect::<Vec<_>>()));
    }
    Ok(ctx.finish("hopf", to_value(&t), certs, text, None))
}

// -------------------------------------------------------------- divided

fn generator_count(max: u64) -> usize {
    let mut c = 1;
    while (1u64 << c) - 1 < max {
        c += 1;
    }
    c
}

fn divided(mut ctx: Ctx, units: &str) -> Res<Outcome> {
    let bits = ctx.cli.common.modulus_bits.unwrap_or(8);
    let max = ctx.max(16) as u64;
    ctx.inputs.insert("modulus_bits".into(), json!(bits));
    ctx.inputs.insert("units".into(), json!(units));
    let count = generator_count(max);
    let model = match units {
        "binomial" => DividedPowerModel::binomial_units(bits, count)?,
        "trivial" => DividedPowerModel::trivial_units(bits, count)?,
        list => {
            let parsed: Result<Vec<u64>, _> = list.split(',').map(|s| s.trim().parse::<u64>()).collect();
            let parsed = parsed.map_err(|e| usage(format!("bad --units {list:?}: {e}")))?;
            if parsed.len() < count {
                return Err(usage(format!("--units needs {count} entries for degree {max}")));
            }
            DividedPowerModel::new(bits, parsed)?
        }
    };
    let cert = divided_power_construct(&model, max)?;
    let mut results = json!({"certificate": to_value(&cert)});
    let rows: Vec<Vec<String>> =
        cert.x.iter().enumerate().map(|(n, x)| vec![n.to_string(), x.format()]).collect();
    let mut text = format!("divided powers mod 2^{bits}, units {:?}\n", model.units);
    text.push_str(&table(&["n", "x_n"], &rows));
    let mut certs = Vec::new();
    if ctx.verify() {
        let fails = cert
            .square_failures
            .iter()
            .map(|i| format!("generator {i} squares off the expected multiple"))
            .chain(cert.pair_failures.iter().map(|(m, n)| format!("x_{m} x_{n} ≠ binom({}, {m}) x_{}", m + n, m + n)));
        certs.push(Certificate::from_failures(
            "divided-power-products",
            cert.pairs_checked + model.units.len(),
            fails.collect::<Vec<_>>(),
        ));
    }
    if ctx.cli.common.field.is_some() {
        let w = ctx.field("")?;
        let g = kw_hw_generators_check(&w, count, bits)?;
        results["generators"] = to_value(&g);
        text.push_str(&format!("generator lifts over W({}): {}\n", w.name, if g.ok() { "ok" } else { "FAILED" }));
        if ctx.verify() {
            certs.push(Certificate::single("generator-lifts", g.ok(), || {
                let sq = g.squares_in_two_plus_i2.iter().position(|b| !b);
                let lift = g.lifts.iter().position(|l| !l.is_filtered_iso());
                match (sq, lift) {
                    (Some(i), _) => format!("t_{i}² not in (2 + I²) t_{}", i + 1),
                    (None, Some(n)) => format!("lift {n} is not a filtered isomorphism"),
                    _ => "divided power identities".into(),
                }
            }));
        }
    }
    Ok(ctx.finish("divided", results, certs, text, None))
}

// ------------------------------------------------------------ cobordism

fn phi_cert(name: &str, r: &PhiReport) -> Certificate {
    let fails = r.degrees.iter().filter(|d| !d.ok()).map(|d| {
        format!(
            "degree {}: kernel {} (expected {}), surjective {}",
            d.degree, d.kernel_dim, d.expected_kernel, d.surjective
        )
    });
    Certificate::from_failures(name, r.degrees.len(), fails.collect::<Vec<_>>())
}

fn cobordism(mut ctx: Ctx, theory: &str) -> Res<Outcome> {
    let th = Cobordism::parse(theory).ok_or_else(|| usage(format!("unknown theory {theory:?}; use msp or msl")))?;
    ctx.inputs.insert("theory".into(), json!(theory.to_ascii_lowercase()));
    let max = ctx.max(16);
    let entries = cobordism_stems(th, max);
    let rows: Vec<Vec<String>> = entries.iter().map(|e| vec![e.degree.to_string(), e.rank.to_string()]).collect();
    let text = format!("ranks over W of {:?}[η⁻¹]\n{}", th, table(&["n", "rank"], &rows));
    let mut certs = Vec::new();
    if ctx.verify() {
        match th {
            Cobordism::Msp => {
                certs.push(phi_cert("msp-gr-phi-kernel", &msp_phi_gr(max)?));
                certs.push(phi_cert("lemma-over-F2", &phi_lemma_model(false, max)?));
                certs.push(phi_cert("lemma-over-Q", &phi_lemma_model(true, max)?));
            }
            Cobordism::Msl => {
                let mut fails = Vec::new();
                for i in 1..=(max / 4).max(1) {
                    let it = phi_iterates_on_msl(i)?;
                    if !it.reaches_one {
                        fails.push(format!("{}: {}", it.start, it.chain.join(" ↦ ")));
                    }
                }
                certs.push(Certificate::from_failures("msl-phi-iterates-reach-one", (max / 4).max(1) as usize, fails));
            }
        }
    }
    Ok(ctx.finish("cobordism", to_value(&entries), certs, text, None))
}

// --------------------------------------------------------------- verify

fn verify_all(mut ctx: Ctx) -> Res<Outcome> {
    let mut certs = Vec::new();
    let mut prefixed = |suite: &str, cs: Vec<Certificate>| {
        for mut c in cs {
            c.name = format!("{suite}/{}", c.name);
            certs.push(c);
        }
    };
    let stems = &ctx.cfg.stems;
    for name in ["real_closed", "quadratically_closed"] {
        let w = ctx.cfg.catalog.lookup(name)?;
        let max = if w.additive.free_rank() > 0 { stems.max_degree() } else { 40 };
        prefixed(&format!("stems[{name}]"), nine_power_certificates(w, &eta_stems(w, stems, max)?, false));
        prefixed(&format!("hwhw[{name}]"), nine_power_certificates(w, &hw_hw_stems(w, 20), true));
    }
    for w in &ctx.cfg.catalog.fields {
        prefixed(&format!("witt[{}]", w.name), witt_certificates(w));
    }
    let b = MotivicBase::lookup("real_closed")?;
    prefixed("steenrod", steenrod_certificates(&SteenrodAlgebra::new(&b, 12)?, 8)?);
    let p = pages_for(ModelKind::Ko, &b, PageBounds::new(8, 4))?;
    prefixed("pages", pages_certificates(ModelKind::Ko, &b, &p)?);
    prefixed("operator", vec![Certificate::from_failures("phi-beta-closed-form", 50, phi_beta_failures(50))]);
    let h = hopf_constants(24, 24)?;
    prefixed("hopf", vec![Certificate::single("recursion-matches-binomial", h.ok(), || format!("{:?}", h.mismatches[0]))]);
    for (label, model) in
        [("binomial", DividedPowerModel::binomial_units(8, 5)?), ("trivial", DividedPowerModel::trivial_units(8, 5)?)]
    {
        let c = divided_power_construct(&model, 16)?;
        prefixed(&format!("divided[{label}]"), vec![Certificate::single("divided-power-products", c.ok(), || {
            format!("squares {:?}, pairs {:?}", c.square_failures, c.pair_failures.first())
        })]);
    }
    prefixed("cobordism", vec![phi_cert("msp-gr-phi-kernel", &msp_phi_gr(14)?)]);
    prefixed("cobordism", vec![phi_cert("lemma-over-F2", &phi_lemma_model(false, 14)?)]);
    prefixed("cobordism", vec![phi_cert("lemma-over-Q", &phi_lemma_model(true, 14)?)]);

    let passed = certs.iter().filter(|c| c.passed).count();
    let text = format!("{passed}/{} checks passed\n", certs.len());
    let results = json!({"passed": passed, "total": certs.len()});
    ctx.inputs.insert("suites".into(), json!("all"));
    Ok(ctx.finish("verify", results, certs, text, None))
}
