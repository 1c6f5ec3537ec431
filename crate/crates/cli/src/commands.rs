//! The subcommands. Each builds a [`Report`]; input problems are returned as errors.

use std::ops::RangeInclusive;
use std::sync::Arc;

use carnot_core::derham::{self, format_poly_form, PolyForm};
use carnot_core::extensions::{
    central_extend, coboundary_solve, cocycle_check, lift_homomorphism, lift_pansu_workflow, CentralExtension,
    ExtensionError, LiftOutcome, LiftedHom, Stratifiability, WorkflowOutcome,
};
use carnot_core::fiber::{self, format_fiber};
use carnot_core::lie::StratifiedAlgebra;
use carnot_core::operators::{self, format_operator_form};
use carnot_core::pansu::{
    commutativity_check, contact_check, dc_noncommutativity_witness, pansu_derivative, pansu_pullback,
    DiscrepancyMode, HomCheckMode, PansuDerivative, PolyMap,
};
use carnot_core::poly::monomials_up_to;
use carnot_core::scalar::{self, format_rational};
use carnot_core::spectral::{SpectralEngine, WitnessChain};
use carnot_core::{FiberForm, WeightedPoly};

use crate::files::{parse_form, parse_invariant, FormEntry, Group, InputError, Scenario};
use crate::report::{Report, Section};

pub struct Options {
    pub strict_stratified: bool,
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

fn join_lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().collect::<Vec<_>>().join("\n")
}

fn format_matrix(m: &[Vec<WeightedPoly>]) -> String {
    join_lines(m.iter().map(|row| format!("[{}]", row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))))
}

/// `Σ c_k X_k` in frame names.
fn format_vector(alg: &StratifiedAlgebra, v: &[(usize, scalar::Rational)]) -> String {
    let mut out = String::new();
    for (n, (k, c)) in v.iter().enumerate() {
        let neg = *c < scalar::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let sep = match (n, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coeff = if mag == scalar::one() { String::new() } else { format!("{}·", format_rational(&mag)) };
        out.push_str(&format!("{sep}{coeff}{}", alg.labels()[*k]));
    }
    out
}

fn algebra_section(title: &str, alg: &StratifiedAlgebra) -> Section {
    let mut s = Section::new(title);
    s.info("name", alg.name());
    s.info("dimension", alg.dim().to_string());
    s.info("basis", alg.labels().join(", "));
    s.info("weights", format!("{:?}", alg.weights()));
    let mut brackets = Vec::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let v: Vec<_> = alg.bracket_basis(i, j).iter().map(|(k, c)| (*k, c.clone())).collect();
            if !v.is_empty() {
                brackets.push(format!("[{}, {}] = {}", alg.labels()[i], alg.labels()[j], format_vector(alg, &v)));
            }
        }
    }
    s.info("brackets", if brackets.is_empty() { "all zero".into() } else { join_lines(brackets) });
    s
}

/// Graded Lie algebra, and Carnot unless declared homogeneous.
fn acceptable(group: &Group) -> bool {
    let v = group.algebra.validate();
    v.is_carnot() || (group.homogeneous && v.is_graded_lie_algebra())
}

fn require_valid(group: &Group) -> Result<(), InputError> {
    if acceptable(group) {
        Ok(())
    } else {
        Err(invalid(format!("group {}: {}", group.algebra.name(), group.algebra.validate().summary())))
    }
}

fn strict_section(groups: &[&Arc<StratifiedAlgebra>]) -> Section {
    let mut s = Section::new("stratification");
    for g in groups {
        let v = g.validate();
        s.check(g.name(), v.summary(), v.is_carnot());
    }
    s
}

pub fn check(group: &Group, input: &str, coeff_degree: u32, opts: &Options) -> Report {
    let alg = &group.algebra;
    let mut report = Report::new("check", input);
    let mut s = algebra_section("algebra", alg);
    let v = alg.validate();
    s.check("validation", v.summary(), acceptable(group));
    s.info("step", v.step.to_string());
    s.info("homogeneous dimension", v.homogeneous_dimension.to_string());
    let graded = v.is_graded_lie_algebra();
    report.push(s);
    if opts.strict_stratified {
        report.push(strict_section(&[alg]));
    }
    if !graded {
        return report;
    }

    let mut s = Section::new("multicomplex");
    let mc = derham::multicomplex_check(alg, 0..=alg.dim(), coeff_degree);
    let value = match &mc.failure {
        None => format!(
            "OK: {} identities on {} forms (coefficient degree ≤ {coeff_degree})",
            mc.identities_checked, mc.elements_checked
        ),
        Some(f) => format!("n = {}: element {} leaves {}", f.n, f.element, f.residual),
    };
    s.check("Σ d_i d_j = 0", value, mc.holds());
    report.push(s);

    let mut s = Section::new("hodge decomposition");
    for k in 0..=alg.dim() {
        for w in fiber::weights_in_degree(alg, k) {
            let h = fiber::hodge_decompose(alg, k, w);
            let (a, b, c) = (h.image_d0.dim(), h.harmonic.dim(), h.image_delta0.dim());
            s.check(
                format!("k={k} w={w}"),
                format!("dim {} = Im d0 {a} + ker □0 {b} + Im δ0 {c}", h.basis.len()),
                a + b + c == h.basis.len(),
            );
        }
    }
    report.push(s);

    let mut s = Section::new("rumin complex");
    for (k, w, dim) in fiber::rumin_table(alg) {
        let forms = fiber::hodge_decompose(alg, k, w).harmonic_forms();
        s.info(format!("E0^{k} w={w} (dim {dim})"), join_lines(forms.iter().map(|f| format_fiber(alg, f))));
    }
    report.push(s);
    report
}

fn with_f(alg: &StratifiedAlgebra, xi: &FiberForm) -> String {
    let text = format_fiber(alg, xi);
    if xi.len() > 1 || text.starts_with('-') {
        format!("f·({text})")
    } else {
        format!("f·{text}")
    }
}

pub fn rumin(group: &Group, input: &str, degrees: RangeInclusive<usize>, coeff_degree: u32) -> Result<Report, InputError> {
    require_valid(group)?;
    let alg = &group.algebra;
    let engine = SpectralEngine::new(alg.clone());
    let mut report = Report::new("rumin", input);
    let degrees = *degrees.start()..=(*degrees.end()).min(alg.dim());
    let monomials = monomials_up_to(alg.coords(), coeff_degree);
    for k in degrees {
        let mut e0 = Section::new(format!("E0^{k}"));
        let mut dc = Section::new(format!("d_c on E0^{k}"));
        let mut verify = Section::new(format!("checks on E0^{k}"));
        for w in fiber::weights_in_degree(alg, k) {
            for xi in fiber::hodge_decompose(alg, k, w).harmonic_forms() {
                e0.info(format!("w={w}"), format_fiber(alg, &xi));
                let sym = operators::rumin_dc(alg, &xi).expect("harmonic forms are Rumin forms");
                let mut lines = vec![format_operator_form(alg, &sym)];
                for (weight, part) in sym.weight_components(alg) {
                    lines.push(format!("d_c^{} : {}", weight - w, format_operator_form(alg, &part)));
                }
                let key = format!("d_c({})", with_f(alg, &xi));
                dc.info(key.clone(), join_lines(lines));

                let mut agree = true;
                let mut squares = true;
                for m in &monomials {
                    let f = WeightedPoly::monomial(alg.coords(), m.clone(), scalar::one());
                    let a = derham::lift(alg, &xi).mul_coeff(&f);
                    let Ok(direct) = engine.rumin_dc(&a) else {
                        agree = false;
                        continue;
                    };
                    agree &= operators::instantiate(alg, &sym, &f) == direct;
                    squares &= engine.rumin_dc(&direct).map(|d| d.is_zero()).unwrap_or(false);
                }
                verify.check(
                    format!("{key} symbolic"),
                    format!("agrees with polynomial d_c on {} monomials of degree ≤ {coeff_degree}", monomials.len()),
                    agree,
                );
                verify.check(format!("{key} d_c∘d_c"), "vanishes".to_string(), squares);
            }
        }
        if e0.entries.is_empty() {
            e0.info("basis", "none");
        }
        report.push(e0);
        if !dc.entries.is_empty() {
            report.push(dc);
            report.push(verify);
        }
    }
    Ok(report)
}

fn scenario_report(command: &str, input: &str, sc: &Scenario) -> Report {
    let mut report = Report::new(command, input);
    let mut s = Section::new("scenario");
    s.info("name", sc.file.name.clone());
    if let Some(d) = &sc.file.description {
        s.info("description", d.trim().to_string());
    }
    report.push(s);
    report
}

fn scenario_map(sc: &Scenario) -> Result<PolyMap, InputError> {
    require_valid(&sc.source)?;
    require_valid(&sc.target)?;
    let comps = sc.file.map.as_ref().ok_or_else(|| invalid("scenario has no map"))?;
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    PolyMap::parse(sc.source.algebra.clone(), sc.target.algebra.clone(), &refs).map_err(|e| invalid(format!("map: {e}")))
}

fn form_name(alg: &StratifiedAlgebra, entry: &FormEntry, form: &PolyForm) -> String {
    entry.name.clone().unwrap_or_else(|| format_poly_form(alg, form))
}

fn map_section(phi: &PolyMap) -> Section {
    let mut s = Section::new("map");
    s.info("source", phi.source.name());
    s.info("target", phi.target.name());
    for (i, c) in phi.components.iter().enumerate() {
        s.info(format!("φ{}", i + 1), c.to_string());
    }
    s
}

/// Contact check; the derivative when it holds.
fn derivative(phi: &PolyMap, report: &mut Report) -> Option<PansuDerivative> {
    let mut s = Section::new("contact");
    let c = contact_check(phi);
    for e in &c.equations {
        s.check(format!("a[{},{}]", e.row + 1, e.col + 1), e.poly.to_string(), e.poly.is_zero());
    }
    if c.equations.is_empty() {
        s.info("equations", "none");
    }
    report.push(s);
    if !c.satisfied() {
        return None;
    }
    let dp = pansu_derivative(phi).ok()?;
    let mut s = Section::new("Pansu derivative");
    s.info("D_Pφ", format_matrix(&dp.matrix));
    let hc = dp.hom_check();
    let mode = match hc.mode {
        HomCheckMode::Symbolic => "symbolic".to_string(),
        HomCheckMode::Sampled(n) => format!("sampled at {n} rational points"),
    };
    let value = match &hc.result {
        Ok(()) => format!("graded homomorphism ({mode})"),
        Err(e) => format!("{e:?} ({mode})"),
    };
    s.check("homomorphism", value, hc.result.is_ok());
    report.push(s);
    Some(dp)
}

pub fn pansu(sc: &Scenario, input: &str, opts: &Options) -> Result<Report, InputError> {
    let phi = scenario_map(sc)?;
    let mut report = scenario_report("pansu", input, sc);
    report.push(map_section(&phi));
    if opts.strict_stratified {
        report.push(strict_section(&[&phi.source, &phi.target]));
    }
    let Some(dp) = derivative(&phi, &mut report) else {
        report.fail();
        return Ok(report);
    };
    let mut s = Section::new("pullback");
    for i in 0..phi.target.dim() {
        s.info(format!("φ*_P {}", phi.target.coframe()[i]), format_poly_form(&phi.source, &dp.pullback_coframe(i)));
    }
    for entry in &sc.file.forms {
        let a = parse_form(&phi.target, &entry.terms)?;
        s.info(format!("φ*_P ({})", form_name(&phi.target, entry, &a)), format_poly_form(&phi.source, &pansu_pullback(&dp, &a)));
    }
    report.push(s);
    Ok(report)
}

fn chain_for(engine: &SpectralEngine, entry: &FormEntry, alpha: &PolyForm, page: usize) -> Result<WitnessChain, InputError> {
    let alg = engine.algebra();
    let (degree, weight) = engine
        .bidegree(alpha)
        .map_err(|e| invalid(e.to_string()))?
        .ok_or_else(|| invalid("form is zero"))?;
    match &entry.witnesses {
        Some(ws) => {
            if ws.len() + 1 != page {
                return Err(invalid(format!("page {page} needs {} witnesses, {} given", page - 1, ws.len())));
            }
            let witnesses = ws.iter().map(|w| parse_form(alg, w)).collect::<Result<Vec<_>, _>>()?;
            let chain = WitnessChain { alpha: alpha.clone(), degree, weight, witnesses };
            engine.verify_chain(&chain).map_err(|e| invalid(format!("witness chain rejected: {e}")))?;
            Ok(chain)
        }
        None => {
            let z = engine.z_membership(alpha, page).map_err(|e| invalid(e.to_string()))?;
            z.found.ok_or_else(|| invalid(format!("{} is not in Z_{page}", format_poly_form(alg, alpha))))
        }
    }
}

pub fn max_degree(requested: Option<u32>) -> u32 {
    let cap = carnot_core::spectral::max_degree_from_env();
    requested.map_or(cap, |d| d.min(cap))
}

pub fn commute(sc: &Scenario, input: &str, page: Option<usize>, coeff_degree: Option<u32>, opts: &Options) -> Result<Report, InputError> {
    let phi = scenario_map(sc)?;
    let bound = max_degree(coeff_degree.or(sc.file.coeff_degree));
    let mut report = scenario_report("commute", input, sc);
    report.push(map_section(&phi));
    if opts.strict_stratified {
        report.push(strict_section(&[&phi.source, &phi.target]));
    }
    if sc.file.forms.is_empty() {
        return Err(invalid("scenario has no forms"));
    }
    let forms = sc
        .file
        .forms
        .iter()
        .map(|e| parse_form(&phi.target, &e.terms).map(|a| (e, a)))
        .collect::<Result<Vec<_>, _>>()?;
    let et = SpectralEngine::with_max_degree(phi.target.clone(), bound);
    let mut chains = Vec::new();
    for (entry, a) in &forms {
        let pages = match page {
            Some(p) => vec![p],
            None if entry.pages.is_empty() => vec![1],
            None => entry.pages.clone(),
        };
        for p in pages {
            if p == 0 {
                return Err(invalid("pages start at 1"));
            }
            chains.push((*entry, a, chain_for(&et, entry, a, p)?));
        }
    }
    let Some(dp) = derivative(&phi, &mut report) else {
        report.fail();
        return Ok(report);
    };
    let (src, tgt) = (&phi.source, &phi.target);
    for (entry, a, chain) in &chains {
        let name = form_name(tgt, entry, a);
        let i = chain.page();
        let mut s = Section::new(format!("{name}, page {i}"));
        s.info("α", format_poly_form(tgt, a));
        s.info("bidegree", format!("degree {}, weight {}", chain.degree, chain.weight));
        for (j, w) in chain.witnesses.iter().enumerate() {
            s.info(format!("z_{}", chain.weight as usize + j + 1), format_poly_form(tgt, w));
        }
        match commutativity_check(&dp, chain, bound) {
            Err(e) => s.check(format!("φ*_P Δ_{i} ≡ Δ_{i} φ*_P"), e.to_string(), false),
            Ok(r) => {
                s.info("φ*_P α", format_poly_form(src, &r.pullback));
                s.check(format!("φ*_P α ∈ Z_{i}"), if r.pulled_chain.is_some() { "yes" } else { "no" }, r.pulled_chain.is_some());
                s.info(format!("φ*_P Δ_{i} α"), format_poly_form(src, &r.pullback_of_delta));
                s.info(format!("Δ_{i} φ*_P α"), format_poly_form(src, &r.delta_of_pullback));
                s.info("difference", format_poly_form(src, &r.difference));
                if let Some(c) = &r.certificate {
                    let pieces = c.pieces.iter().enumerate().map(|(j, p)| format!("c_{{p-{j}}} = {}", format_poly_form(src, p)));
                    s.info(format!("B_{i} certificate"), join_lines(pieces));
                }
                match &r.boundary_inclusion {
                    None => {}
                    Some(b) => s.check(format!("α ∈ B_{i} ⇒ φ*_P α ∈ B_{i}"), if b.is_some() { "yes" } else { "no" }, b.is_some()),
                }
                s.info("coefficient degree used", r.bound.to_string());
                s.check(format!("φ*_P Δ_{i} ≡ Δ_{i} φ*_P mod B_{i}"), if r.passed() { "PASS" } else { "FAIL" }, r.passed());
            }
        }
        report.push(s);
    }
    let mut s = Section::new("plain differentials");
    for (entry, a) in &forms {
        let name = form_name(tgt, entry, a);
        let modes = [(DiscrepancyMode::Exterior, "d"), (DiscrepancyMode::Rumin, "d_c")];
        for (mode, label) in modes {
            if mode == DiscrepancyMode::Rumin && fiber::pi0(tgt.as_ref(), a) != *a {
                continue;
            }
            if let Ok(d) = dc_noncommutativity_witness(&dp, a, mode) {
                let prefix = if mode == DiscrepancyMode::Rumin { "Π0 " } else { "" };
                s.info(
                    format!("{name}: {label}"),
                    join_lines([
                        format!("{label}({prefix}φ*_P α) = {}", format_poly_form(src, &d.differential_of_pullback)),
                        format!("φ*_P {label}α = {}", format_poly_form(src, &d.pullback_of_differential)),
                        format!("difference = {}", format_poly_form(src, &d.difference)),
                    ]),
                );
            }
        }
    }
    report.push(s);
    Ok(report)
}

fn parse_cocycle(g: &StratifiedAlgebra, terms: &[crate::files::TermEntry]) -> Result<FiberForm, InputError> {
    let w = parse_invariant(g, terms)?;
    if w.terms().any(|(c, _)| fiber::degree(c) != 2) {
        return Err(invalid("cocycle must be a 2-form"));
    }
    Ok(w)
}

fn stratifiability_text(s: &Stratifiability) -> String {
    match s {
        Stratifiability::Stratified => "stratified".into(),
        Stratifiability::GradedOnly => "graded, first layer does not generate".into(),
        Stratifiability::CohomologousToHomogeneous(w) => {
            format!("stratifiable: cocycle is cohomologous to a homogeneous one of weight {w}")
        }
        Stratifiability::NonStratifiable { weights } => {
            format!("non-stratifiable: class has components in weights {weights:?}")
        }
    }
}

fn extension_sections(title: &str, ext: &CentralExtension, opts: &Options, report: &mut Report) {
    let alg = &ext.extended;
    let mut s = algebra_section(title, alg);
    s.info("cocycle", format_fiber(&ext.base, &ext.cocycle));
    s.info("validation", alg.validate().summary());
    let strat = stratifiability_text(&ext.stratifiability);
    if opts.strict_stratified {
        s.check("stratifiability", strat, ext.is_stratifiable());
    } else {
        s.info("stratifiability", strat);
    }
    match coboundary_solve(&ext.base, &ext.cocycle) {
        Some(eta) => s.info("class", format!("trivial extension, η = {}", format_fiber(&ext.base, &eta))),
        None => s.info("class", "nontrivial"),
    }
    report.push(s);
}

fn extend_or_report(g: &Arc<StratifiedAlgebra>, w: &FiberForm, report: &mut Report) -> Result<Option<CentralExtension>, InputError> {
    match central_extend(g, w) {
        Ok(e) => Ok(Some(e)),
        Err(ExtensionError::NotCocycle(d)) => {
            let mut s = Section::new("cocycle");
            s.check(format!("d0 ω on {}", g.name()), d, false);
            report.push(s);
            Ok(None)
        }
        Err(e) => Err(invalid(e.to_string())),
    }
}

pub fn extend(sc: &Scenario, input: &str, opts: &Options) -> Result<Report, InputError> {
    require_valid(&sc.target)?;
    let g = &sc.target.algebra;
    let terms = sc.file.cocycle.as_ref().ok_or_else(|| invalid("scenario has no cocycle"))?;
    let w = parse_cocycle(g, terms)?;
    let mut report = scenario_report("extend", input, sc);
    let mut s = Section::new("cocycle");
    s.info("ω", format_fiber(g, &w));
    let closed = cocycle_check(g, &w);
    s.check("d0 ω = 0", format_fiber(g, &fiber::d0(g.as_ref(), &w)), closed);
    report.push(s);
    if !closed {
        return Ok(report);
    }
    if let Some(ext) = extend_or_report(g, &w, &mut report)? {
        extension_sections("extension", &ext, opts, &mut report);
    }
    Ok(report)
}

fn lift_sections(lift: &LiftOutcome, src: &CentralExtension, tgt: &CentralExtension, dp: &PansuDerivative, report: &mut Report) {
    let mut s = Section::new("lift");
    match lift {
        LiftOutcome::Lifted(LiftedHom { eta, corner, matrix }) => {
            s.info("Φ", format_matrix(matrix));
            s.info("corner", corner.to_string());
            s.info("η", format_poly_form(&src.base, eta));
            let ok = LiftedHom { eta: eta.clone(), corner: corner.clone(), matrix: matrix.clone() }.verify(src, tgt, &dp.matrix);
            s.check("Φ preserves brackets", ok.as_ref().map_or_else(|e| format!("{e:?}"), |_| "yes".into()), ok.is_ok());
        }
        LiftOutcome::Obstruction { residual } => {
            s.check("lift", format!("obstructed: ω1 − φ*ω2 ≡ {} mod Im d0", format_poly_form(&src.base, residual)), false);
        }
    }
    report.push(s);
}

pub fn lift(sc: &Scenario, input: &str, coeff_degree: Option<u32>, opts: &Options) -> Result<Report, InputError> {
    let phi = scenario_map(sc)?;
    let (g1, g2) = (&phi.source, &phi.target);
    let terms = sc.file.cocycle.as_ref().ok_or_else(|| invalid("scenario has no cocycle"))?;
    let w2 = parse_cocycle(g2, terms)?;
    let w1 = sc.file.source_cocycle.as_ref().map(|t| parse_cocycle(g1, t)).transpose()?;
    let mut report = scenario_report("lift", input, sc);
    report.push(map_section(&phi));
    let Some(dp) = derivative(&phi, &mut report) else {
        report.fail();
        return Ok(report);
    };
    match w1 {
        Some(w1) => {
            let (Some(src), Some(tgt)) = (extend_or_report(g1, &w1, &mut report)?, extend_or_report(g2, &w2, &mut report)?) else {
                return Ok(report);
            };
            extension_sections("source extension", &src, opts, &mut report);
            extension_sections("target extension", &tgt, opts, &mut report);
            let l = lift_homomorphism(&src, &tgt, &dp.matrix, g1.coords());
            lift_sections(&l, &src, &tgt, &dp, &mut report);
        }
        None => {
            if !cocycle_check(g2, &w2) {
                extend_or_report(g2, &w2, &mut report)?;
                return Ok(report);
            }
            let run = match lift_pansu_workflow(&phi, &w2, max_degree(coeff_degree.or(sc.file.coeff_degree))) {
                Ok(r) => r,
                Err(e @ ExtensionError::NoPrimitive { .. }) => {
                    let mut s = Section::new("primitives");
                    s.check("horizontal primitive", e.to_string(), false);
                    report.push(s);
                    return Ok(report);
                }
                Err(e) => return Err(invalid(e.to_string())),
            };
            let mut s = Section::new("primitives");
            for (w, a) in &run.primitives {
                s.info(format!("α for weight {w}"), format_poly_form(g2, a));
            }
            let invariant = !matches!(run.outcome, WorkflowOutcome::NotInvariant(_));
            s.check("Σ d_c φ*_P α", format_poly_form(g1, &run.source_form), invariant);
            report.push(s);
            if let WorkflowOutcome::Lifted { source, target, lift } = &run.outcome {
                extension_sections("source extension", source, opts, &mut report);
                extension_sections("target extension", target, opts, &mut report);
                lift_sections(lift, source, target, &dp, &mut report);
            }
        }
    }
    Ok(report)
}
