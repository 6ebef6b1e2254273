use std::time::Instant;

use charp::decomp::{
    certify_growth, decompose_monomial, decompose_perfection_ideal, decompose_shifted, build_unbounded_ass,
    find_linear_growth_h, growth_decompose, GrowthMode, MonomialPrime,
};
use charp::frobenius::frob_root_iter;
use charp::perfection::{fseq_verify, perfection_member, PerfectionElement, PerfectionIdeal};
use charp::{f_closure, frob_power, parse_polynomial, GroebnerBudget, MonomialOrder};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{self, gens, gens_text, Envelope, Report};
use crate::spec::{parse_shift, Spec};
use crate::{Cli, Command, FrobCmd, FseqCmd, Global, GrowthModeArg, PerfectionCmd, SpecArgs};

/// Mutable context threaded through a command.
struct Ctx {
    budget: GroebnerBudget,
    ring: Option<String>,
}

impl Ctx {
    fn load(&mut self, path: &std::path::Path) -> Result<Spec, CliError> {
        let spec = Spec::load(path)?;
        self.ring = Some(spec.ring.to_string());
        Ok(spec)
    }
}

fn budget(g: &Global) -> GroebnerBudget {
    let d = GroebnerBudget::default();
    GroebnerBudget::new(
        g.budget_pairs.unwrap_or(d.max_pairs),
        g.budget_terms.unwrap_or(d.max_poly_terms),
        g.budget_degree.unwrap_or(d.max_degree),
    )
}

pub fn run(cli: &Cli) -> u8 {
    let mut ctx = Ctx {
        budget: budget(&cli.global),
        ring: None,
    };
    let start = Instant::now();
    let (name, outcome) = dispatch(&cli.command, &mut ctx);
    let env = Envelope {
        command: name,
        ring: ctx.ring.clone(),
        budget: &ctx.budget,
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    };
    match outcome {
        Ok(r) => report::emit(r, &env, &cli.global),
        Err(e) => report::emit_error(&e, &env, &cli.global),
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> (&'static str, Result<Report, CliError>) {
    match cmd {
        Command::Gb { spec, order } => ("gb", gb(ctx, spec, order.as_deref())),
        Command::Frob { op } => match op {
            FrobCmd::Power { spec, e } => ("frob power", frob_power_cmd(ctx, spec, *e)),
            FrobCmd::Root { spec, n } => ("frob root", frob_root_cmd(ctx, spec, *n)),
            FrobCmd::Closure { spec, max_e, confirm } => ("frob closure", closure(ctx, spec, *max_e, *confirm)),
        },
        Command::Decompose { spec, shift } => ("decompose", decompose(ctx, spec, shift.as_deref())),
        Command::Fseq { op } => match op {
            FseqCmd::Verify { args } => ("fseq verify", fseq_verify_cmd(ctx, args)),
            FseqCmd::Growth { args, h, find_h: _ } => ("fseq growth", fseq_growth(ctx, args, *h)),
        },
        Command::Perfection { op } => match op {
            PerfectionCmd::Member { spec, k, elem, root } => ("perfection member", member(ctx, spec, *k, elem, *root)),
            PerfectionCmd::Decompose { spec, k, depth } => {
                ("perfection decompose", perfection_decompose(ctx, spec, *k, *depth))
            }
        },
        Command::GrowthDecompose { spec, h, n, mode, fseq } => ("lg2", growth_decompose_cmd(ctx, spec, *h, *n, *mode, fseq.as_deref())),
        Command::UnboundedAss { p, l, t, depth } => ("ex8", unbounded_ass(ctx, *p, *l, t, *depth)),
    }
}

fn gb(ctx: &mut Ctx, args: &SpecArgs, order: Option<&str>) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let order = match order {
        Some(o) => MonomialOrder::parse(o).ok_or_else(|| CliError::input(format!("unknown monomial order `{o}`")))?,
        None => spec.ring.base().order(),
    };
    if let MonomialOrder::BlockElimination(k) = order {
        if k > spec.ring.base().nvars() {
            return Err(CliError::input(format!("elim({k}) needs at least {k} variables")));
        }
    }
    let basis = i.reduced_gb(order, &ctx.budget)?;
    let strs: Vec<String> = basis.iter().map(|g| g.to_string()).collect();
    let of = if spec.ring.is_polynomial_ring() { "" } else { " of I + J" };
    let mut text = vec![format!("reduced Gröbner basis{of} ({order}):")];
    text.extend(strs.iter().map(|g| format!("  {g}")));
    Ok(Report::new(json!({ "order": order.to_string(), "basis": strs }), text))
}

fn frob_power_cmd(ctx: &mut Ctx, args: &SpecArgs, e: u32) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let out = frob_power(i, e)?.canonicalized(&ctx.budget)?;
    let text = vec![format!("I^[p^{e}] = {}", gens_text(&out))];
    Ok(Report::new(json!({ "e": e, "ideal": gens(&out) }), text))
}

fn frob_root_cmd(ctx: &mut Ctx, args: &SpecArgs, n: u32) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let out = frob_root_iter(i, n, &ctx.budget)?;
    let text = vec![format!("f^-{n}(I) = {}", gens_text(&out))];
    Ok(Report::new(json!({ "n": n, "ideal": gens(&out) }), text))
}

fn closure(ctx: &mut Ctx, args: &SpecArgs, max_e: usize, confirm: usize) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let res = f_closure(i, max_e, confirm, &ctx.budget)?;
    let closed = res.closure.equals(i, &ctx.budget)?;
    let mut text = vec![
        format!("F-closure: {}", gens_text(&res.closure)),
        format!("stabilized at n = {} (confirmed over {confirm} steps, not certified)", res.stabilized_at),
        format!("input is F-closed: {closed}"),
    ];
    for w in &res.witnesses {
        text.push(format!("  {} enters at n = {}", w.element, w.exponent));
    }
    let mut r = Report::new(
        json!({
            "closure": gens(&res.closure),
            "stabilized_at": res.stabilized_at,
            "certified": res.certified,
            "is_f_closed": closed,
            "max_e": max_e,
            "confirm": confirm,
            "steps": res.steps.iter().map(gens).collect::<Vec<_>>(),
        }),
        text,
    );
    r.witnesses = res
        .witnesses
        .iter()
        .map(|w| json!({ "element": w.element.to_string(), "exponent": w.exponent }))
        .collect();
    Ok(r)
}

fn decompose(ctx: &mut Ctx, args: &SpecArgs, shift: Option<&str>) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let d = match shift {
        Some(s) => {
            let base = spec.ring.base();
            let frame = MonomialPrime::shifted(0..base.nvars(), parse_shift(base, s)?);
            decompose_shifted(i, &frame, &ctx.budget)?
        }
        None => decompose_monomial(i, &ctx.budget)?,
    };
    let mut text = vec![format!("primary decomposition of {}:", gens_text(i))];
    text.extend(report::decomposition_text(&d, &spec.ring));
    Ok(Report::new(report::decomposition(&d, &spec.ring), text))
}

fn fseq_verify_cmd(ctx: &mut Ctx, args: &crate::FseqArgs) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let s = spec.fseq(args.fseq.as_deref())?;
    if args.depth == 0 {
        return Err(CliError::input("--depth must be at least 1"));
    }
    let v = fseq_verify(s, args.depth, &ctx.budget)?;
    let terms = s.terms(args.depth, &ctx.budget)?;
    let mut text: Vec<String> = terms
        .iter()
        .enumerate()
        .map(|(n, t)| format!("a_{n} = {}", gens_text(t)))
        .collect();
    text.push(report::verify_text(&v));
    let (mut result, witnesses) = report::verify(&v);
    result["terms"] = json!(terms.iter().map(gens).collect::<Vec<_>>());
    let mut r = Report::new(result, text);
    r.holds = v.passed();
    r.witnesses = witnesses;
    Ok(r)
}

fn fseq_growth(ctx: &mut Ctx, args: &crate::FseqArgs, h: Option<u32>) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let s = spec.fseq(args.fseq.as_deref())?;
    let b = &ctx.budget;
    let source = |n: usize| decompose_monomial(&s.term(n, b)?, b);
    let h = match h {
        Some(h) => h,
        None => find_linear_growth_h(&source(0)?, b)?,
    };
    let cert = certify_growth(s, &source, h, args.depth, b)?;
    let mut text = vec![format!("linear growth with h = {h} certified for n <= {}", args.depth)];
    for step in &cert.per_n {
        text.push(format!("n = {}:", step.n));
        text.extend(report::decomposition_text(&step.decomposition, &spec.ring));
    }
    let recheck = cert.recheck(b)?;
    let mut result = report::certificate(&cert);
    result["recheck"] = json!(recheck);
    result["decompositions"] = json!(cert
        .per_n
        .iter()
        .map(|st| report::decomposition(&st.decomposition, &spec.ring))
        .collect::<Vec<_>>());
    let mut r = Report::new(result, text);
    r.holds = recheck;
    Ok(r)
}

fn member(ctx: &mut Ctx, args: &SpecArgs, k: usize, elem: &str, root: u32) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let body = parse_polynomial(spec.ring.base(), elem).map_err(|e| CliError::input(format!("--elem: {e}")))?;
    let a = PerfectionIdeal::finitely_generated(k, i);
    let e = PerfectionElement::new(root, body);
    let inside = perfection_member(&a, &e, &ctx.budget)?;
    let text = vec![format!(
        "{} {} the ideal generated by {}^(1/{}^{k})",
        e,
        if inside { "lies in" } else { "does not lie in" },
        gens_text(i),
        spec.ring.characteristic()
    )];
    Ok(Report::new(
        json!({
            "member": inside,
            "element": { "depth": e.depth(), "body": e.body().to_string() },
            "k": k,
        }),
        text,
    ))
}

fn perfection_decompose(ctx: &mut Ctx, args: &SpecArgs, k: usize, depth: usize) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let i = spec.ideal(args.ideal.as_deref())?;
    let a = PerfectionIdeal::finitely_generated(k, i);
    let d = decompose_perfection_ideal(&a, depth, &ctx.budget)?;
    let mut text = vec![format!("{} primary components, checked to n = {}", d.components.len(), d.verified_depth)];
    let mut comps = Vec::new();
    for (prime, s) in &d.components {
        let terms = s.terms(depth, &ctx.budget)?;
        text.push(format!("  at {}:", prime.display(&spec.ring)));
        for (n, t) in terms.iter().enumerate() {
            text.push(format!("    q_{n} = {}", gens_text(t)));
        }
        comps.push(json!({
            "prime": prime.display(&spec.ring),
            "terms": terms.iter().map(gens).collect::<Vec<_>>(),
        }));
    }
    Ok(Report::new(
        json!({ "k": k, "verified_depth": d.verified_depth, "components": comps }),
        text,
    ))
}

fn growth_decompose_cmd(
    ctx: &mut Ctx,
    args: &SpecArgs,
    h: Option<u32>,
    n: usize,
    mode: GrowthModeArg,
    fseq: Option<&str>,
) -> Result<Report, CliError> {
    let spec = ctx.load(&args.spec)?;
    let a = spec.ideal(args.ideal.as_deref())?;
    let b = &ctx.budget;
    let base = decompose_monomial(a, b)?;
    let h = match h {
        Some(h) => h,
        None => find_linear_growth_h(&base, b)?,
    };
    let mode = match mode {
        GrowthModeArg::Plain => GrowthMode::Plain,
        GrowthModeArg::Fclosure => GrowthMode::FClosure,
        GrowthModeArg::Seqterm => GrowthMode::SeqTerm(match fseq {
            Some(name) => spec.fseq(Some(name))?.clone(),
            None => charp::FSequence::frobenius_powers(a),
        }),
    };
    let d = growth_decompose(a, &base.primes(), h, n, &mode, b)?;
    let mut text = vec![format!("decomposition at n = {n} with h = {h}:")];
    text.extend(report::decomposition_text(&d, &spec.ring));
    let mut result = report::decomposition(&d, &spec.ring);
    result["h"] = json!(h);
    result["n"] = json!(n);
    Ok(Report::new(result, text))
}

fn unbounded_ass(ctx: &mut Ctx, p: u64, l: u64, t: &[u64], depth: usize) -> Result<Report, CliError> {
    let rep = build_unbounded_ass(p, l, t, depth, &ctx.budget)?;
    let ring = rep.sequence.ring().clone();
    ctx.ring = Some(ring.to_string());
    let mut text = vec![format!("p = {p}, l = {l}, t = {t:?}, depth = {depth}"), report::verify_text(&rep.verify)];
    let mut steps = Vec::new();
    let mut witnesses = Vec::new();
    for st in &rep.steps {
        let ass: Vec<String> = st.ass.iter().map(|q| q.display(&ring)).collect();
        text.push(format!("m = {}: |Ass| = {}  {}", st.m, ass.len(), ass.join(" ")));
        let ws: Vec<Value> = st
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "component": w.component,
                    "poly": w.witness.to_string(),
                    "in_others": w.in_others,
                    "outside": w.outside,
                })
            })
            .collect();
        for w in &st.witnesses {
            witnesses.push(json!({ "m": st.m, "component": w.component, "poly": w.witness.to_string() }));
        }
        steps.push(json!({
            "m": st.m,
            "term_gens": gens(&st.term),
            "ass": ass,
            "ass_size": st.ass.len(),
            "decomposition": report::decomposition(&st.decomposition, &ring),
            "omission_witnesses": ws,
        }));
    }
    text.push(format!("growth certificate: h = {}", rep.certificate.h));
    text.push(format!("Ass strictly increasing: {}", rep.ass_strictly_increasing));
    text.push(format!("no primary decomposition: {}", rep.no_primary_decomposition));
    text.push(format!("note: {}", rep.caveat));
    let (verify, verify_witnesses) = report::verify(&rep.verify);
    witnesses.extend(verify_witnesses);
    let holds = rep.verify.passed()
        && rep.ass_strictly_increasing
        && rep.steps.iter().all(|s| s.witnesses.iter().all(|w| w.holds()));
    let mut r = Report::new(
        json!({
            "p": p,
            "l": l,
            "t": t,
            "depth": depth,
            "verify": verify,
            "steps": steps,
            "certificate": report::certificate(&rep.certificate),
            "ass_strictly_increasing": rep.ass_strictly_increasing,
            "no_primary_decomposition": rep.no_primary_decomposition,
            "caveat": rep.caveat,
        }),
        text,
    );
    r.witnesses = witnesses;
    r.holds = holds;
    Ok(r)
}
