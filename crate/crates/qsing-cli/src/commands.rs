use std::fmt::Write as _;

use exactalg::{fmt_rat, parse_rat, Rational};
use num_traits::Zero;
use qsing::cases::{a_potential, Case};
use qsing::correlator::{evaluate_frame, Gauge, PotentialSeries};
use qsing::saito::{bmodel_potential, flat_coordinates, Family};
use qsing::singular::{j_subgroup, max_diagonal_group, subgroup_from_generators, GroupElement, QSingularity, SymmetryGroup};
use qsing::statespace::{build_state_space, StateSpace};
use qsing::{QsingError, Result};
use serde_json::{json, Value};

use crate::{BmodelArgs, CaseArgs, CorrelatorArgs, GroupArgs, PolyArgs, PotentialArgs, Report};

fn r(x: &Rational) -> Value {
    Value::String(fmt_rat(x))
}

fn rs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

fn singularity(a: &PolyArgs) -> Result<QSingularity> {
    QSingularity::parse(&a.poly, a.vars.as_deref())
}

fn select_group(s: &QSingularity, choice: &str) -> Result<SymmetryGroup> {
    match choice {
        "J" | "j" => Ok(j_subgroup(s)),
        "max" => Ok(max_diagonal_group(s)),
        list => {
            let gens = list
                .split(';')
                .map(|g| {
                    let th: Option<Vec<Rational>> = g.split(',').map(parse_rat).collect();
                    match th {
                        Some(th) if th.len() == s.nvars() => Ok(GroupElement::new(th)),
                        _ => Err(QsingError::InvalidArgument(format!("--group: cannot read generator '{g}'"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            subgroup_from_generators(&max_diagonal_group(s), &gens)
        }
    }
}

pub fn analyze(a: &PolyArgs) -> Result<Report> {
    let s = singularity(a)?;
    let gmax = max_diagonal_group(&s);
    let json = json!({
        "polynomial": s.w.render(&s.vars),
        "vars": s.vars,
        "weights": rs(&s.q),
        "c_hat": r(&s.c_hat),
        "mu": s.mu,
        "group_order": gmax.order(),
    });
    let mut text = String::new();
    writeln!(text, "W = {}", s.w.render(&s.vars)).unwrap();
    writeln!(text, "weights: {}", s.q.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")).unwrap();
    writeln!(text, "c_hat: {}", fmt_rat(&s.c_hat)).unwrap();
    writeln!(text, "mu: {}", s.mu).unwrap();
    writeln!(text, "|G_max|: {}", gmax.order()).unwrap();
    Ok(Report { json, text })
}

pub fn group(a: &GroupArgs) -> Result<Report> {
    let s = singularity(&a.poly)?;
    let g = select_group(&s, &a.group)?;
    let elements: Vec<Value> = g.elements.iter().map(|e| rs(&e.theta)).collect();
    let json = json!({
        "order": g.order(),
        "j": rs(&g.j.theta),
        "generators": g.generators.iter().map(|e| rs(&e.theta)).collect::<Vec<_>>(),
        "elements": elements,
    });
    let mut text = format!("order {}\nJ = {}\n", g.order(), g.j);
    for e in &g.elements {
        writeln!(text, "  {e}").unwrap();
    }
    Ok(Report { json, text })
}

fn space(a: &GroupArgs) -> Result<StateSpace> {
    let s = singularity(&a.poly)?;
    let g = select_group(&s, &a.group)?;
    build_state_space(&s, &g)
}

pub fn statespace(a: &GroupArgs) -> Result<Report> {
    let h = space(a)?;
    let classes: Vec<Value> = (0..h.dim())
        .map(|i| {
            json!({
                "label": h.label(i),
                "gamma": rs(&h.gamma(i).theta),
                "deg_w": r(&h.deg_w(i)),
                "ramond": h.is_ramond(i),
            })
        })
        .collect();
    let mut pairing = Vec::new();
    let mut text = format!("dim {}\n", h.dim());
    for i in 0..h.dim() {
        writeln!(text, "  {:<12} deg_W {:<6} {}", h.label(i), fmt_rat(&h.deg_w(i)), if h.is_ramond(i) { "R" } else { "NS" }).unwrap();
    }
    text.push_str("pairing:\n");
    for i in 0..h.dim() {
        for j in i..h.dim() {
            let v = &h.eta.data[i][j];
            if !v.is_zero() {
                pairing.push(json!({ "a": h.label(i), "b": h.label(j), "value": r(v) }));
                writeln!(text, "  <{}, {}> = {}", h.label(i), h.label(j), fmt_rat(v)).unwrap();
            }
        }
    }
    let json = json!({ "dim": h.dim(), "c_hat": r(&h.sing.c_hat), "classes": classes, "pairing": pairing });
    Ok(Report { json, text })
}

pub fn correlators(a: &CorrelatorArgs) -> Result<Report> {
    let h = space(&a.group)?;
    let k = a.points as usize;
    let n = h.dim();
    let mut entries = Vec::new();
    let mut unevaluable = Vec::new();
    let mut text = String::new();
    let mut key = vec![0usize; k];
    loop {
        let names: Vec<String> = key.iter().map(|&i| h.label(i)).collect();
        match evaluate_frame(&h, Gauge::PLUS, &key) {
            Ok(e) if !e.value.is_zero() => {
                writeln!(text, "<{}> = {}  [{}]", names.join(", "), fmt_rat(&e.value), e.provenance.as_str()).unwrap();
                entries.push(json!({ "insertions": names, "value": r(&e.value), "provenance": e.provenance.as_str() }));
            }
            Ok(_) => {}
            Err(QsingError::Unevaluable(_)) => {
                writeln!(text, "<{}> = ?  [unevaluable]", names.join(", ")).unwrap();
                unevaluable.push(json!(names));
            }
            Err(e) => return Err(e),
        }
        let mut p = k;
        while p > 0 && key[p - 1] == n - 1 {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        key[p - 1] += 1;
        let v = key[p - 1];
        for x in key.iter_mut().skip(p) {
            *x = v;
        }
    }
    let json = json!({ "genus": 0, "points": k, "entries": entries, "unevaluable": unevaluable });
    Ok(Report { json, text })
}

fn terms(p: &PotentialSeries, k: u32) -> Vec<Value> {
    p.part(k)
        .terms()
        .rev()
        .map(|(m, c)| json!({ "monomial": m.render(&p.labels), "coefficient": r(c) }))
        .collect()
}

pub fn potential(a: &PotentialArgs) -> Result<Report> {
    let c = Case::parse(&a.case.case)?;
    let m = c.a_model(Gauge::PLUS)?;
    let f = a_potential(&m, a.order as usize)?;
    let mut parts = serde_json::Map::new();
    let mut text = format!("{} (order {})\n", c.id, a.order);
    for k in 3..=a.order {
        parts.insert(k.to_string(), Value::Array(terms(&f, k)));
        writeln!(text, "F{k} = {}", f.render(k)).unwrap();
    }
    let json = json!({
        "case": c.id.to_string(),
        "order": a.order,
        "labels": f.labels,
        "degrees": rs(&f.degrees),
        "parts": parts,
    });
    Ok(Report { json, text })
}

pub fn bmodel(a: &BmodelArgs) -> Result<Report> {
    let family = Family::parse(&a.family)?;
    let scale = match &a.scale {
        Some(s) => parse_rat(s).ok_or_else(|| QsingError::InvalidArgument(format!("--scale: cannot read '{s}'")))?,
        None => family.natural_base(),
    };
    let p = bmodel_potential(&family, &scale)?;
    let flat = flat_coordinates(&family, a.order)?;
    let labels = p.labels().to_vec();
    let mut eta = Vec::new();
    for i in 0..labels.len() {
        for j in i..labels.len() {
            let v = &p.eta().data[i][j];
            if !v.is_zero() {
                eta.push(json!({ "a": labels[i], "b": labels[j], "value": r(v) }));
            }
        }
    }
    let tlabels: Vec<String> = labels.iter().map(|l| l.replacen('s', "t", 1)).collect();
    let coords: Vec<Value> = (0..labels.len())
        .map(|i| json!({ "t": tlabels[i], "in_s": flat.inverse[i].render(&labels) }))
        .collect();
    let json = json!({
        "family": family.tag(),
        "scale": p.scale.to_string(),
        "labels": labels,
        "eta": eta,
        "f3": terms(&p.f3, 3),
        "f4": terms(&p.f4, 4),
        "flat_coordinates": coords,
    });
    let mut text = format!("{family} at {}*dx\n", p.scale);
    writeln!(text, "F3 = {}", p.f3.render(3)).unwrap();
    writeln!(text, "F4 = {}", p.f4.render(4)).unwrap();
    for i in 0..labels.len() {
        writeln!(text, "{} = {}", tlabels[i], flat.inverse[i].render(&labels)).unwrap();
    }
    Ok(Report { json, text })
}

pub fn mirror_check(a: &CaseArgs) -> Result<Report> {
    let c = Case::parse(&a.case)?;
    let m = c.mirror_check(Gauge::PLUS)?;
    let claimed = m.claimed_lambda.as_ref().map(r).unwrap_or(Value::Null);
    let agrees = if c.lambda_claim_is_checked() { m.agrees_with_claim().map(Value::Bool).unwrap_or(Value::Null) } else { Value::Null };
    let json = json!({
        "case": m.case.to_string(),
        "rho": r(&m.rho),
        "scaling": m.scaling.to_string(),
        "b_scale": r(&m.b_scale),
        "lambda": r(&m.lambda),
        "verified": m.verified,
        "published_lambda": claimed,
        "agrees_with_published": agrees,
    });
    let mut text = format!("{}: rho = {}, {}\n", m.case, fmt_rat(&m.rho), m.scaling);
    writeln!(text, "B-model at {}*dx, lambda = {}, verified = {}", fmt_rat(&m.b_scale), fmt_rat(&m.lambda), m.verified).unwrap();
    if let Some(cl) = &m.claimed_lambda {
        writeln!(text, "published lambda = {}{}", fmt_rat(cl), if c.lambda_claim_is_checked() { "" } else { " (different normalization, not compared)" })
            .unwrap();
    }
    Ok(Report { json, text })
}
