use derivalg::inverse::{formal_inverse, left_normed_variant, FormalInverse, Route};
use derivalg::liealg::{bracket_closure, divergence_audit, specialize, ClosureConfig, StructureTable};
use derivalg::nsymm::{convert, generator, lie_express, Family, NSymmElement, NSymmTensor};
use derivalg::parse::parse_rational;
use derivalg::{Error, PolyMap};
use serde_json::{json, Value};

use crate::mapfile::MapFile;
use crate::report::{self, Report};

pub type Outcome = Result<Report, String>;

fn lib(e: Error) -> String {
    e.to_string()
}

fn echo_map(r: &mut Report, mf: &MapFile) {
    r.input("vars", json!(mf.vars));
    r.input("map", report::map(&mf.map, &mf.vars));
}

pub fn check_jacobian(mf: &MapFile, bound: usize) -> Outcome {
    if bound < 1 {
        return Err("--bound must be at least 1".into());
    }
    let mut r = Report::new("check-jacobian");
    echo_map(&mut r, mf);
    r.input("bound", bound);
    let v = &mf.vars;
    let j = mf.map.jacobian();
    let nil = j.nilpotency();
    let rows: Vec<Value> = j.format(v).into_iter().map(|row| json!(row)).collect();
    r.result("jacobian", rows);
    let traces: Vec<Value> = nil
        .traces
        .iter()
        .enumerate()
        .map(|(q, t)| json!({"q": q + 1, "trace": report::poly(t, v)}))
        .collect();
    r.result("power_traces", traces);
    r.result("nilpotent", nil.nilpotent);
    r.result("index", json!(nil.index));
    r.result("first_nonzero_trace", json!(nil.first_nonzero_trace));

    let n = mf.map.nvars();
    let upto = bound.max(n);
    let powers = mf.map.right_powers(upto);
    let divs: Vec<_> = powers.iter().map(|p| p.divergence()).collect();
    let listed: Vec<Value> = divs
        .iter()
        .enumerate()
        .map(|(k, d)| json!({"power": format!("D^[{}]", k + 1), "divergence": report::poly(d, v)}))
        .collect();
    r.result("right_power_divergences", listed);
    let all_zero = divs.iter().all(|d| d.is_zero());
    r.check("divergence_criterion_agrees", all_zero == nil.nilpotent);
    r.note("J(D) is nilpotent exactly when div(D^[q]) = 0 for every q");
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    Left,
    Right,
}

pub fn powers(mf: &MapFile, max: usize, side: Side) -> Outcome {
    if max < 2 {
        return Err("--max must be at least 2".into());
    }
    let mut r = Report::new("powers");
    echo_map(&mut r, mf);
    r.input("max", max);
    let v = &mf.vars;
    let d = &mf.map;
    let (label, list, index) = match side {
        Side::Left => {
            let mut list = Vec::new();
            let mut h = d.clone();
            for m in 1..=max {
                list.push(h.clone());
                if h.is_zero() {
                    break;
                }
                if m < max {
                    h = d.apply_to_map(&h).map_err(lib)?;
                }
            }
            ("left", list, d.left_nilpotency_index(max).map_err(lib)?)
        }
        Side::Right => {
            let mut list = d.right_powers(max);
            if let Some(k) = list.iter().position(PolyMap::is_zero) {
                list.truncate(k + 1);
            }
            ("right", list, d.right_nilpotency_index(max).map_err(lib)?)
        }
    };
    r.input("side", label);
    let name = |m: usize| match side {
        Side::Left => format!("H_{m}"),
        Side::Right => format!("D^[{m}]"),
    };
    let rows: Vec<Value> = list
        .iter()
        .enumerate()
        .map(|(k, p)| json!({"power": name(k + 1), "tuple": report::map(p, v)}))
        .collect();
    r.result("powers", rows);
    r.result("index", json!(index));
    if side == Side::Left {
        r.note("D is locally nilpotent exactly when it is left nilpotent; D^m = D_{H_m}");
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteArg {
    Direct,
    Psi,
    Reduced,
    All,
}

fn coefficients(fi: &FormalInverse, vars: &[String]) -> Value {
    Value::Array(
        fi.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| json!({"m": k + 1, "F": report::map(c, vars)}))
            .collect(),
    )
}

pub fn formal_inverse_cmd(mf: &MapFile, order: usize, route: RouteArg, left_normed: bool) -> Outcome {
    if order < 1 {
        return Err("--order must be at least 1".into());
    }
    let routes: Vec<Route> = match route {
        RouteArg::Direct => vec![Route::Direct],
        RouteArg::Psi => vec![Route::Psi],
        RouteArg::Reduced => vec![Route::Reduced],
        RouteArg::All => Route::ALL.to_vec(),
    };
    let mut r = Report::new("formal-inverse");
    echo_map(&mut r, mf);
    r.input("order", order);
    r.input("route", routes.iter().map(|x| x.name()).collect::<Vec<_>>().join(","));
    let v = &mf.vars;
    let mut results = Vec::new();
    for route in routes {
        let fi = formal_inverse(&mf.map, order, route).map_err(lib)?;
        let check = fi.verify().map_err(lib)?;
        r.result(route.name(), coefficients(&fi, v));
        r.check(&format!("{}_inverts", route.name()), check.holds());
        for n in &fi.notes {
            r.note(format!("{}: {n}", route.name()));
        }
        results.push(fi);
    }
    if results.len() > 1 {
        let first = results
            .iter()
            .skip(1)
            .filter_map(|x| results[0].first_difference(x).map(|m| (x.route, m)))
            .min_by_key(|&(_, m)| m);
        r.check("agreement", first.is_none());
        if let Some((route, m)) = first {
            r.note(format!("{} and {route} first differ at F_{m}", results[0].route));
        }
    }
    r.note("F_m = -lambda(Psi_m)(X)");
    if left_normed {
        let variant = left_normed_variant(&mf.map, order).map_err(lib)?;
        let rows: Vec<Value> = variant
            .iter()
            .enumerate()
            .map(|(k, c)| json!({"m": k + 1, "F": report::map(c, v)}))
            .collect();
        r.result("left_normed_variant", rows);
        let direct = formal_inverse(&mf.map, order, Route::Direct).map_err(lib)?;
        let same = variant.iter().zip(&direct.coefficients).all(|(a, b)| a == b);
        r.result("left_normed_matches_direct", same);
        r.note("left-normed variant is exploratory and not checked");
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum NSymmOp {
    Expand,
    Convert,
    Coproduct,
    Antipode,
    LieExpress,
}

fn terms_json(x: &NSymmElement) -> Value {
    Value::Array(
        x.sorted_terms()
            .into_iter()
            .map(|(w, c)| json!({"word": w, "coeff": report::rational(c)}))
            .collect(),
    )
}

fn tensor_json(t: &NSymmTensor) -> Value {
    Value::Array(
        t.terms()
            .iter()
            .map(|((a, b), c)| json!({"left": a, "right": b, "coeff": report::rational(c)}))
            .collect(),
    )
}

pub fn nsymm(op: NSymmOp, family: Family, n: u32, bound: u32, to: Family) -> Outcome {
    if n == 0 {
        return Err("weight must be at least 1".into());
    }
    let x = generator(family, n, bound).map_err(lib)?;
    let name = format!("{}{n}", family.symbol());
    let mut r = Report::new("nsymm");
    r.input("operation", format!("{op:?}").to_lowercase().replace("lieexpress", "lie-express"));
    r.input("element", name.clone());
    r.input("bound", bound);
    let primitive_family = family != Family::Z;
    match op {
        NSymmOp::Expand => {
            r.result("text", format!("{name} = {}", x.format("Z")));
            r.result("terms", terms_json(&x));
        }
        NSymmOp::Convert => {
            r.input("to", to.symbol());
            let b = convert(&x, to);
            r.result("text", format!("{name} = {}", b.format()));
            r.result("terms", terms_json(&b.words));
            r.check("roundtrip", b.to_z() == x);
        }
        NSymmOp::Coproduct => {
            let t = x.coproduct();
            r.result("text", format!("Delta({name}) = {}", t.format("Z")));
            r.result("terms", tensor_json(&t));
            if primitive_family {
                r.check("primitive", x.is_primitive());
            }
        }
        NSymmOp::Antipode => {
            let s = x.antipode();
            r.result("text", format!("S({name}) = {}", s.format("Z")));
            r.result("terms", terms_json(&s));
            if primitive_family {
                r.check("antipode_negates", s == x.scale(&-derivalg::polyring::int(1)));
            }
        }
        NSymmOp::LieExpress => {
            r.input("to", to.symbol());
            if to == Family::Z {
                return Err("lie-express needs a primitive family (theta, psi or u) for --to".into());
            }
            match lie_express(&convert(&x, to)) {
                Ok(e) => {
                    r.result("text", format!("{name} = {e}"));
                    let brackets: Vec<Value> = e
                        .brackets()
                        .iter()
                        .map(|(b, c)| json!({"bracket": b.format(to.symbol()), "coeff": report::rational(c)}))
                        .collect();
                    r.result("terms", brackets);
                    r.check("expansion_matches", e.expand(bound).to_z() == x);
                }
                Err(e @ Error::NotLieElement { .. }) if !primitive_family => return Err(e.to_string()),
                Err(e) => {
                    r.result("text", e.to_string());
                    r.check("expansion_matches", false);
                }
            }
        }
    }
    Ok(r)
}

fn closure_json(c: &derivalg::liealg::BracketClosure, vars: &[String]) -> Value {
    json!({
        "dim": c.dim(),
        "status": c.status(),
        "stabilized": c.stabilized,
        "over_cap": c.over_cap,
        "rounds": c.depth,
        "elements": c.labels.iter().zip(&c.elements)
            .map(|(l, e)| json!({"label": l, "derivation": report::map(e, vars)}))
            .collect::<Vec<_>>(),
    })
}

pub fn divergence_audit_cmd(mf: &MapFile, config: ClosureConfig) -> Outcome {
    let mut r = Report::new("divergence-audit");
    echo_map(&mut r, mf);
    r.input("depth", config.depth);
    r.input("degree_cap", config.degree_cap);
    let v = &mf.vars;
    let c = bracket_closure(&mf.map, config).map_err(lib)?;
    let audit = divergence_audit(&c);
    r.result("closure", closure_json(&c, v));
    let entries: Vec<Value> = audit
        .entries
        .iter()
        .map(|(l, d)| json!({"label": l, "divergence": report::poly(d, v)}))
        .collect();
    r.result("divergences", entries);
    r.result("all_zero", audit.all_zero());
    r.result("jacobian_nilpotent", json!(audit.jacobian_nilpotent));
    if let Some((l, d)) = audit.first_nonzero() {
        r.result("first_nonzero", json!({"label": l, "divergence": report::poly(d, v)}));
    }
    r.check("divergence_criterion_agrees", audit.consistent());
    if c.over_cap > 0 {
        r.note(format!("{} brackets exceeded the degree cap {}", c.over_cap, c.degree_cap));
    }
    if !c.stabilized {
        r.note("closure did not stabilize within the depth bound");
    }
    r.note("every element of the Lie algebra generated by the right powers of D has zero divergence when J(D) is nilpotent");
    Ok(r)
}

fn table_json(t: &StructureTable) -> Value {
    let series = t.lcs_and_derived_series();
    json!({
        "labels": t.labels,
        "relations": t.relations(),
        "lower_central_series": series.lower_central,
        "derived_series": series.derived,
        "nilpotent": series.nilpotent(),
        "solvable": series.solvable(),
    })
}

/// `name=value`, e.g. `t=1`.
pub fn parse_assignment(text: &str, vars: &[String]) -> Result<(usize, derivalg::Rational), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected VAR=VALUE, found `{text}`"))?;
    let index = vars
        .iter()
        .position(|v| v == name.trim())
        .ok_or_else(|| format!("unknown variable `{}`", name.trim()))?;
    let value = parse_rational(value.trim()).ok_or_else(|| format!("not a rational number: `{}`", value.trim()))?;
    Ok((index, value))
}

pub fn closure(mf: &MapFile, config: ClosureConfig, specialize_at: Option<&str>) -> Outcome {
    let mut r = Report::new("closure");
    echo_map(&mut r, mf);
    r.input("depth", config.depth);
    r.input("degree_cap", config.degree_cap);
    let v = &mf.vars;
    let c = bracket_closure(&mf.map, config).map_err(lib)?;
    r.result("closure", closure_json(&c, v));
    if c.is_closed() {
        let t = StructureTable::from_closure(&c).map_err(lib)?;
        r.check("jacobi", t.jacobi_violations() == 0);
        r.result("table", table_json(&t));
    } else {
        r.note(format!("closure is {}; no structure table", c.status()));
    }
    if let Some(text) = specialize_at {
        let (var, value) = parse_assignment(text, v)?;
        r.input("specialize", text.trim());
        match specialize(&c, var, &value, config) {
            Ok(t) => {
                r.check("specialized_jacobi", t.jacobi_violations() == 0);
                r.check("specialized_matches_realization", t.matches_realization().map_err(lib)?);
                r.result("specialized", table_json(&t));
            }
            Err(e @ (Error::NotClosed(_) | Error::InvalidArgument(_))) => {
                r.note(format!("specialization failed: {e}"));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(r)
}
