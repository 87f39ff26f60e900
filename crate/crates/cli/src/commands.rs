use std::fs;
use std::path::Path;

use ordercone::atoms::{
    atom_lambda, atoms, decompose_by_atom, is_atom, is_discrete_with, lambda_by_lp, lambda_closed_form,
    pervasive_witness_check, rdp_split, PervasiveCheck, RdpOutcome,
};
use ordercone::bands::{
    band_cap, band_of, disjoint_complement, disjoint_eq1_oracle, enumerate_bands_with, is_band, is_directed_subspace,
    is_disjoint, is_ideal, principal_ideal_member, Band,
};
use ordercone::classify::classify_with;
use ordercone::completion::{embed, modulus_dominates, order_density_at};
use ordercone::cone::{leq, sup_in_x, upper_bound_polyhedron, OrderedSpace, SpaceSpec};
use ordercone::exact::format_rational;
use ordercone::fixtures::builtin;
use ordercone::projection::{
    check_ideal_decomposition, enumerate_order_projections_with, extension_supports, restriction_decomposition,
    IdealVerdict,
};
use ordercone::selftest::{self, suite_names};
use ordercone::seqspace::{
    seq_b_complement_witness, seq_decompose_bc, seq_in_subspace, seq_is_disjoint, seq_is_member, seq_join_in_c,
    seq_nonpervasive_witness, x_n, JoinOutcome, Part, SeqElement, SeqWitness,
};
use ordercone::subspace::Subspace;
use ordercone::{Error, Execution, VectorQ};
use serde_json::{json, Value};

use crate::report::{to_value, Failure, Output, Report};
use crate::{Cli, Command, SpaceArg};

type Outcome = Result<Output, Failure>;

pub fn execute(cli: &Cli) -> Outcome {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Classify { space, probe } => classify(space, probe.as_deref(), exec),
        Command::Atoms { space, x } => atoms_cmd(space, x.as_deref(), exec),
        Command::Disjoint { space, x, y } => disjoint(space, x, y),
        Command::Dcomp { space, vectors } => dcomp(space, vectors),
        Command::Band { space, a, member } => band(space, a, member.as_deref()),
        Command::Bands { space } => bands(space, exec),
        Command::Projections { space, split } => projections(space, split.as_deref(), exec),
        Command::Lambda { space, x, a } => lambda(space, x, a),
        Command::Decompose { space, x, a } => decompose(space, x, a),
        Command::Rdp { space, x1, x2, z } => rdp(space, x1, x2, z),
        Command::Sup { space, vectors } => sup(space, vectors),
        Command::Extend { space, vectors } => extend(space, vectors),
        Command::Restrict { space, support } => restrict(space, support),
        Command::SeqDemo { member } => seq_demo(member.as_deref()),
        Command::Selftest {
            filter,
            seed,
            corrupt_facets,
        } => run_selftest(filter.clone(), *seed, *corrupt_facets, exec),
    }
}

/// Loads a builtin or a JSON space file.
pub fn parse_space_source(arg: &SpaceArg) -> Result<OrderedSpace, Error> {
    match (&arg.example, &arg.space) {
        (Some(name), _) => builtin(name),
        (None, Some(path)) => load_space_file(path),
        (None, None) => Err(Error::EmptyInput),
    }
}

fn load_space_file(path: &Path) -> Result<OrderedSpace, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let spec: SpaceSpec =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    spec.build()
}

fn vector(s: &str) -> Result<VectorQ, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Usage(format!("{s:?} is not a JSON array of rationals: {e}")))
}

fn vectors(xs: &[String]) -> Result<Vec<VectorQ>, Failure> {
    xs.iter().map(|x| vector(x)).collect()
}

fn vector_list(s: &str) -> Result<Vec<VectorQ>, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Usage(format!("{s:?} is not a JSON list of vectors: {e}")))
}

fn checked(s: &OrderedSpace, xs: &[&VectorQ]) -> Result<(), Failure> {
    for x in xs {
        s.check_vector(x)?;
    }
    Ok(())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn span_text(d: &Subspace) -> String {
    let parts: Vec<String> = d.basis().iter().map(|v| v.to_string()).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn band_text(b: &Band) -> String {
    let zs: Vec<String> = b.zero_set().iter().map(|j| (j + 1).to_string()).collect();
    format!(
        "zero set {{{}}}: {}{}",
        zs.join(", "),
        span_text(b.carrier()),
        if b.is_directed() { ", directed" } else { "" }
    )
}

fn output(verb: &str, inputs: Value, result: Value, text: Vec<String>) -> Outcome {
    Ok(Output {
        report: Report {
            verb: verb.into(),
            inputs,
            result,
        },
        text,
        code: 0,
    })
}

fn classify(space: &SpaceArg, probe: Option<&str>, exec: Execution) -> Outcome {
    let s = parse_space_source(space)?;
    let probe = probe.map(vector).transpose()?;
    let cls = classify_with(&s, exec)?;
    let mut result = to_value(&cls);
    let mut text = cls.summary_lines();
    if let Some(b) = &probe {
        s.check_vector(b)?;
        let check = pervasive_witness_check(&s, b)?;
        text.push(match &check {
            PervasiveCheck::Witness(x) => format!("probe {b}: witness x = {x}"),
            PervasiveCheck::NoWitness => format!("probe {b}: no witness, the space is not pervasive"),
            PervasiveCheck::Inapplicable => format!("probe {b}: (Fb)^+ = 0, nothing to check"),
        });
        result["probe"] = to_value(&check);
    }
    output("classify", json!({"space": s.name(), "probe": probe}), result, text)
}

fn atoms_cmd(space: &SpaceArg, x: Option<&str>, exec: Execution) -> Outcome {
    let s = parse_space_source(space)?;
    let x = x.map(vector).transpose()?;
    let ats = atoms(&s);
    let mut text: Vec<String> = ats.iter().map(|a| format!("atom {a}")).collect();
    let mut result = json!({ "atoms": ats });
    if let Some(x) = &x {
        s.check_vector(x)?;
        let image = embed(&s, x)?;
        let atom = is_atom(&s, x)?;
        let discrete = if s.is_positive(x) {
            Some(is_discrete_with(&s, x, exec)?)
        } else {
            None
        };
        let dense = order_density_at(&s, &image)?;
        text.push(format!("{x}: image {} in the cover", image.coords()));
        text.push(format!("atom: {}", yn(atom)));
        text.push(match discrete {
            Some(d) => format!("discrete: {}", yn(d)),
            None => "discrete: not positive".to_string(),
        });
        text.push(format!("order dense at the image: {}", yn(dense)));
        result["element"] = json!({
            "image": image,
            "isAtom": atom,
            "isDiscrete": discrete,
            "orderDense": dense,
        });
    }
    output("atoms", json!({"space": s.name(), "x": x}), result, text)
}

fn disjoint(space: &SpaceArg, x: &str, y: &str) -> Outcome {
    let s = parse_space_source(space)?;
    let (x, y) = (vector(x)?, vector(y)?);
    checked(&s, &[&x, &y])?;
    let by_support = is_disjoint(&s, &x, &y)?;
    let by_upper_sets = disjoint_eq1_oracle(&s, &x, &y)?;
    let x_leq_y = leq(&s, &x, &y)?;
    let y_leq_x = leq(&s, &y, &x)?;
    let y_dominates = modulus_dominates(&s, &x, &y)?;
    let x_dominates = modulus_dominates(&s, &y, &x)?;
    let text = vec![
        format!("disjoint (supports): {}", yn(by_support)),
        format!("disjoint (upper sets): {}", yn(by_upper_sets)),
        format!("x <= y: {}, y <= x: {}", yn(x_leq_y), yn(y_leq_x)),
        format!("|x| below |y|: {}, |y| below |x|: {}", yn(y_dominates), yn(x_dominates)),
    ];
    output(
        "disjoint",
        json!({"space": s.name(), "x": x, "y": y}),
        json!({
            "disjoint": by_support,
            "upperSetOracle": by_upper_sets,
            "xLeqY": x_leq_y,
            "yLeqX": y_leq_x,
            "xDominatedByY": y_dominates,
            "yDominatedByX": x_dominates,
        }),
        text,
    )
}

fn dcomp(space: &SpaceArg, xs: &[String]) -> Outcome {
    let s = parse_space_source(space)?;
    let m = vectors(xs)?;
    checked(&s, &m.iter().collect::<Vec<_>>())?;
    let d = Subspace::span(&m, s.dim())?;
    let comp = disjoint_complement(&s, &m)?;
    let band = is_band(&s, &d)?;
    let directed = is_directed_subspace(&s, &d)?;
    let ideal = is_ideal(&s, &d)?;
    let text = vec![
        format!("D = {}", span_text(&d)),
        format!("D^d: {}", band_text(&comp)),
        format!("D is a band: {}, directed: {}, an ideal: {}", yn(band), yn(directed), yn(ideal)),
    ];
    output(
        "dcomp",
        json!({"space": s.name(), "vectors": m}),
        json!({
            "span": d.basis(),
            "complement": comp,
            "spanIsBand": band,
            "spanIsDirected": directed,
            "spanIsIdeal": ideal,
        }),
        text,
    )
}

fn band(space: &SpaceArg, a: &str, member: Option<&str>) -> Outcome {
    let s = parse_space_source(space)?;
    let a = vector(a)?;
    let member = member.map(vector).transpose()?;
    s.check_vector(&a)?;
    let b = band_of(&s, &a)?;
    let mut text = vec![format!("{{{a}}}^dd: {}", band_text(&b))];
    let mut result = json!({ "band": b });
    if let Some(x) = &member {
        s.check_vector(x)?;
        let inside = principal_ideal_member(&s, x, &a)?;
        text.push(format!("{x} in the principal ideal of {a}: {}", yn(inside)));
        result["principalIdealMember"] = json!(inside);
    }
    output("band", json!({"space": s.name(), "a": a, "member": member}), result, text)
}

fn bands(space: &SpaceArg, exec: Execution) -> Outcome {
    let s = parse_space_source(space)?;
    let cap = band_cap();
    let all = enumerate_bands_with(&s, cap, exec)?;
    let mut text = vec![format!("{} bands", all.len())];
    text.extend(all.iter().map(band_text));
    output("bands", json!({"space": s.name(), "cap": cap}), json!({ "bands": all }), text)
}

fn projections(space: &SpaceArg, split: Option<&[String]>, exec: Execution) -> Outcome {
    let s = parse_space_source(space)?;
    let Some(split) = split else {
        let cap = band_cap();
        let ps = enumerate_order_projections_with(&s, cap, exec)?;
        let mut text = vec![format!("{} order projections", ps.len())];
        for p in &ps {
            text.push(format!("onto {}", band_text(&p.band)));
            if let Some(m) = &p.matrix {
                text.extend(m.rows().iter().map(|r| format!("  {r}")));
            }
        }
        return output("projections", json!({"space": s.name(), "cap": cap}), json!({ "projections": ps }), text);
    };
    let (bs, ds) = (vector_list(&split[0])?, vector_list(&split[1])?);
    checked(&s, &bs.iter().chain(&ds).collect::<Vec<_>>())?;
    let b = Subspace::span(&bs, s.dim())?;
    let d = Subspace::span(&ds, s.dim())?;
    let verdict = check_ideal_decomposition(&s, &b, &d)?;
    let text = match &verdict {
        IdealVerdict::Confirmed { tier, projection } => {
            let mut t = vec![format!("D = B^d and B is a projection band ({tier:?})")];
            t.extend(projection.rows().iter().map(|r| format!("  {r}")));
            t
        }
        IdealVerdict::HypothesesNotMet { reason } => vec![format!("hypotheses not met: {reason}")],
    };
    output(
        "projections",
        json!({"space": s.name(), "b": bs, "d": ds}),
        json!({ "idealDecomposition": verdict }),
        text,
    )
}

fn lambda(space: &SpaceArg, x: &str, a: &str) -> Outcome {
    let s = parse_space_source(space)?;
    let (x, a) = (vector(x)?, vector(a)?);
    checked(&s, &[&x, &a])?;
    let value = atom_lambda(&s, &x, &a)?;
    let closed = lambda_closed_form(&s, &x, &a)?;
    let by_lp = lambda_by_lp(&s, &x, &a)?;
    output(
        "lambda",
        json!({"space": s.name(), "x": x, "a": a}),
        json!({
            "lambda": format_rational(&value),
            "closedForm": format_rational(&closed),
            "lp": format_rational(&by_lp),
        }),
        vec![format!("lambda = {}", format_rational(&value))],
    )
}

fn decompose(space: &SpaceArg, x: &str, a: &str) -> Outcome {
    let s = parse_space_source(space)?;
    let (x, a) = (vector(x)?, vector(a)?);
    checked(&s, &[&x, &a])?;
    let dec = decompose_by_atom(&s, &x, &a)?;
    let text = vec![format!(
        "{x} = {} * {a} + {}",
        format_rational(&dec.lambda),
        dec.disjoint_part
    )];
    output("decompose", json!({"space": s.name(), "x": x, "a": a}), to_value(&dec), text)
}

fn rdp(space: &SpaceArg, x1: &str, x2: &str, z: &str) -> Outcome {
    let s = parse_space_source(space)?;
    let (x1, x2, z) = (vector(x1)?, vector(x2)?, vector(z)?);
    checked(&s, &[&x1, &x2, &z])?;
    let out = rdp_split(&s, &x1, &x2, &z)?;
    let text = vec![match &out {
        RdpOutcome::Split { z1, z2 } => format!("z = {z1} + {z2}"),
        RdpOutcome::NoSplit => "no split exists".to_string(),
    }];
    output("rdp", json!({"space": s.name(), "x1": x1, "x2": x2, "z": z}), to_value(&out), text)
}

fn sup(space: &SpaceArg, xs: &[String]) -> Outcome {
    let s = parse_space_source(space)?;
    let m = vectors(xs)?;
    checked(&s, &m.iter().collect::<Vec<_>>())?;
    let p = upper_bound_polyhedron(&s, &m)?;
    let (rows, rhs) = p.inequalities();
    let top = sup_in_x(&s, &m)?;
    let text = vec![match &top {
        Some(x) => format!("supremum {x}"),
        None => "no supremum".to_string(),
    }];
    output(
        "sup",
        json!({"space": s.name(), "vectors": m}),
        json!({
            "supremum": top,
            "upperBounds": {"rows": rows, "rhs": rhs},
        }),
        text,
    )
}

fn one_based(js: &[usize]) -> Vec<usize> {
    js.iter().map(|j| j + 1).collect()
}

fn extend(space: &SpaceArg, xs: &[String]) -> Outcome {
    let s = parse_space_source(space)?;
    let m = vectors(xs)?;
    checked(&s, &m.iter().collect::<Vec<_>>())?;
    let b = Band::from_subspace(&s, &Subspace::span(&m, s.dim())?)?;
    let (e, ed) = extension_supports(&s, &b)?;
    let text = vec![
        band_text(&b),
        format!("extension support: {:?}", one_based(&e)),
        format!("extension support of the complement: {:?}", one_based(&ed)),
    ];
    output(
        "extend",
        json!({"space": s.name(), "vectors": m}),
        json!({
            "band": b,
            "support": one_based(&e),
            "complementSupport": one_based(&ed),
        }),
        text,
    )
}

fn restrict(space: &SpaceArg, support: &[usize]) -> Outcome {
    let s = parse_space_source(space)?;
    if let Some(bad) = support.iter().find(|&&j| j == 0 || j > s.m()) {
        return Err(Failure::Usage(format!("index {bad} is outside 1..={}", s.m())));
    }
    let mut js: Vec<usize> = support.iter().map(|j| j - 1).collect();
    js.sort_unstable();
    js.dedup();
    let rep = restriction_decomposition(&s, &js)?;
    let text = vec![
        format!("restriction: {}", span_text(&rep.restriction)),
        format!("complement: {}", span_text(&rep.complement)),
        format!(
            "fordable: {}, RDP: {}, majorizing: {}, complement majorizing: {}",
            yn(rep.fordable),
            yn(rep.rdp),
            yn(rep.majorizing),
            yn(rep.complement_majorizing)
        ),
        format!("splits the space: {}", yn(rep.decomposes)),
    ];
    output(
        "restrict",
        json!({"space": s.name(), "support": one_based(&js)}),
        to_value(&rep),
        text,
    )
}

/// A member with entries at -2 and -1 and limit 2.
fn sample_member() -> SeqElement {
    SeqElement::from_ints(&[(-2, 4), (-1, 2), (0, 3)], 1, ordercone::exact::rat(2)).expect("keys below the tail")
}

fn witness_text(w: &SeqWitness) -> String {
    match w {
        SeqWitness::NonDirected { infimum } => format!(
            "every upper bound in C has weighted sum at least {} > 0",
            format_rational(infimum)
        ),
        SeqWitness::NonPervasive => "no nonzero member is supported at -1 alone".to_string(),
        SeqWitness::NonDisjoint { index } => format!("both are nonzero at index {index}"),
    }
}

fn seq_demo(member: Option<&str>) -> Outcome {
    let x = match member {
        Some(j) => serde_json::from_str(j).map_err(|e| Failure::Usage(format!("{j:?} is not a sequence: {e}")))?,
        None => sample_member(),
    };
    let (x1, x2) = (x_n(1), x_n(2));
    let join = seq_join_in_c(&x1, &x2)?;
    let x12_disjoint = seq_is_disjoint(&x1, &x2)?;
    let member_ok = seq_is_member(&x);
    if !member_ok {
        return Err(Failure::Domain(Error::NotMember));
    }
    let (b, c) = seq_decompose_bc(&x)?;
    let in_b = seq_in_subspace(&b, Part::B)?;
    let in_c = seq_in_subspace(&c, Part::C)?;
    let comp = seq_b_complement_witness()?;
    let nonpervasive = seq_nonpervasive_witness()?;
    let mut text = vec![format!("x(1) = {x1}"), format!("x(2) = {x2}")];
    text.push(match &join {
        JoinOutcome::Some(u) => format!("common upper bound in C: {u}"),
        JoinOutcome::ProvedNone(w) => format!("no common upper bound in C: {}", witness_text(w)),
    });
    text.push(format!("x(1), x(2) disjoint: {}", yn(x12_disjoint)));
    text.push(format!("x = {x}"));
    text.push(format!("b = {b} (in B: {})", yn(in_b)));
    text.push(format!("c = {c} (in C: {})", yn(in_c)));
    text.push(format!("C is not the disjoint complement of B: {}", witness_text(&comp)));
    text.push(format!("not pervasive: {}", witness_text(&nonpervasive)));
    output(
        "seq-demo",
        json!({ "member": x }),
        json!({
            "x1": x1,
            "x2": x2,
            "joinInC": join,
            "x1x2Disjoint": x12_disjoint,
            "decomposition": {"b": b, "c": c, "bInB": in_b, "cInC": in_c},
            "bComplementWitness": comp,
            "nonPervasiveWitness": nonpervasive,
        }),
        text,
    )
}

fn run_selftest(filter: Option<String>, seed: u64, corrupt_facets: bool, exec: Execution) -> Outcome {
    if let Some(f) = &filter {
        if !suite_names().iter().any(|(id, name)| name == f || id.to_string() == *f) {
            let known: Vec<&str> = suite_names().into_iter().map(|(_, n)| n).collect();
            return Err(Failure::Usage(format!("unknown suite {f:?}; known suites: {}", known.join(", "))));
        }
    }
    let opts = selftest::Options {
        filter: filter.clone(),
        seed,
        exec,
        corrupt_facets,
    };
    let outcomes = selftest::run(&opts);
    let mut text = Vec::new();
    for o in &outcomes {
        text.push(format!(
            "[{}] {} {}: {} checks, {} failed, {:.2} s (bound {} s)",
            if o.passed() && o.within_bound() { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.checks,
            o.failed,
            o.elapsed.as_secs_f64(),
            o.bound.as_secs()
        ));
        text.extend(o.failures.iter().map(|f| format!("    {f}")));
        if !o.within_bound() {
            text.push("    runtime bound exceeded".to_string());
        }
    }
    let failed = outcomes.iter().filter(|o| !(o.passed() && o.within_bound())).count();
    let checks: usize = outcomes.iter().map(|o| o.checks).sum();
    text.push(format!(
        "{} suites, {checks} checks, {failed} suites failed",
        outcomes.len()
    ));
    let mut out = output(
        "selftest",
        json!({"filter": filter, "seed": seed}),
        json!({"suites": outcomes, "checks": checks, "failedSuites": failed}),
        text,
    )?;
    out.code = u8::from(failed > 0);
    Ok(out)
}
