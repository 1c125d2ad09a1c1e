//! The golden suite behind `verify-paper`: the two worked examples and the
//! Lie expressions of Psi_1 .. Psi_4.

use derivalg::fixtures;
use derivalg::liealg::{bracket_closure, divergence_audit, specialize, BracketClosure, ClosureConfig};
use derivalg::nsymm::{convert, generator, lie_express, Family};
use derivalg::polyring::int;
use derivalg::{parse_polynomial, PolyMap, Polynomial};

use crate::report::Report;

fn poly(text: &str, vars: &[String]) -> Polynomial {
    parse_polynomial(text, vars).expect("golden literal parses")
}

fn tuple(texts: &[&str], vars: &[String]) -> PolyMap {
    PolyMap::new(texts.iter().map(|t| poly(t, vars)).collect()).expect("golden shape")
}

fn example_2(r: &mut Report) -> derivalg::Result<()> {
    let (d, v) = fixtures::essen_gorni_zampieri();
    let w = poly("x*t - y*s", &v);
    let dw = d.apply(&w)?;
    r.check("example2: D(w) = -yt^3", dw == poly("-y*t^3", &v));
    r.check("example2: D(D(w)) = -t^4 w", d.apply(&dw)? == poly("-t^4*(x*t - y*s)", &v));
    let p = d.right_powers(4);
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    r.check(
        "example2: D^[2] = t^3(xt - 2ys) d_x - yt^4 d_y",
        *b == tuple(&["t^3*(x*t - 2*y*s)", "-y*t^4", "0", "0"], &v),
    );
    r.check("example2: D^[2](w) = wt^4", b.apply(&w)? == poly("(x*t - y*s)*t^4", &v));
    r.check(
        "example2: D^[3] = st^4 w d_x + t^5 w d_y",
        *c == tuple(&["s*t^4*(x*t - y*s)", "t^5*(x*t - y*s)", "0", "0"], &v),
    );
    r.check("example2: D^[3](w) = 0", c.apply(&w)?.is_zero());
    r.check("example2: D^[4] = 0", p[3].is_zero());

    let big_a = tuple(&["t^6*y", "0", "0", "0"], &v);
    let t4 = poly("t^4", &v);
    r.check(
        "example2: [a, b] = -2c - 2A",
        a.commutator(b)? == &c.scale(&int(-2)) - &big_a.scale(&int(2)),
    );
    r.check("example2: [b, c] = 2t^4 c", b.commutator(c)? == c.mul_poly(&t4).scale(&int(2)));
    r.check("example2: [a, c] = t^4 b", a.commutator(c)? == b.mul_poly(&t4));
    r.check("example2: [a, A] = t^4 b", a.commutator(&big_a)? == b.mul_poly(&t4));
    r.check("example2: [A, c] = -t^8 b", big_a.commutator(c)? == b.mul_poly(&poly("-t^8", &v)));
    r.check("example2: [A, b] = 2t^4 A", big_a.commutator(b)? == big_a.mul_poly(&t4).scale(&int(2)));
    r.check(
        "example2: [b, a] = 2c + 2A",
        b.commutator(a)? == &c.scale(&int(2)) + &big_a.scale(&int(2)),
    );
    r.note("[A, c] has degree 13, so the homogeneous value is -t^8 b");

    let closure = bracket_closure(&d, ClosureConfig::default())?;
    r.check("example2: closure divergences vanish", divergence_audit(&closure).all_zero());

    let gens = vec![("A".to_string(), big_a), ("b".to_string(), b.clone()), ("c".to_string(), c.clone())];
    let m = BracketClosure::from_generators(4, gens, ClosureConfig::default())?;
    let t = v.iter().position(|x| x == "t").expect("t is a variable");
    let table = specialize(&m, t, &int(1), ClosureConfig::default())?;
    r.check(
        "example2: t -> 1 table [A, b] = 2A, [A, c] = -b, [b, c] = 2c",
        table.relations() == ["[A, b] = 2*A", "[A, c] = -b", "[b, c] = 2*c"],
    );
    let series = table.lcs_and_derived_series();
    r.check("example2: t -> 1 derived series does not reach zero", !series.solvable());
    r.check("example2: t -> 1 algebra is not nilpotent", !series.nilpotent());
    Ok(())
}

fn example_1(r: &mut Report) -> derivalg::Result<()> {
    let (d, v) = fixtures::bass_derivation();
    let j = d.jacobian();
    let nil = j.nilpotency();
    r.check("example1: J(D) is not nilpotent", !nil.nilpotent);
    r.check("example1: Tr(J^2) = -4wz^2", j.pow(2).trace() == poly("-4*(x^2 - y*z)*z^2", &v));
    r.check(
        "example1: H_2 = (0, 2w^2 z, 0)",
        d.left_power_tuple(2)? == tuple(&["0", "2*(x^2 - y*z)^2*z", "0"], &v),
    );
    r.check("example1: left nilpotency index 3", d.left_nilpotency_index(8)? == Some(3));
    r.check("example1: not right nilpotent up to 8", d.right_nilpotency_index(8)?.is_none());
    Ok(())
}

fn psi_expressions(r: &mut Report) -> derivalg::Result<()> {
    let expected = [
        "Theta1",
        "Theta2",
        "Theta3 + 1/2*[Theta2, Theta1]",
        "Theta4 + 2/3*[Theta3, Theta1] + 1/6*[[Theta2, Theta1], Theta1]",
    ];
    for (k, want) in expected.iter().enumerate() {
        let n = k as u32 + 1;
        let psi = generator(Family::Psi, n, 8)?;
        let got = lie_express(&convert(&psi, Family::Theta))?.to_string();
        r.check(&format!("Psi{n} = {want}"), got == *want);
    }
    Ok(())
}

pub fn verify_paper() -> Result<Report, String> {
    let mut r = Report::new("verify-paper");
    for (name, run) in [
        ("example 2", example_2 as fn(&mut Report) -> derivalg::Result<()>),
        ("example 1", example_1),
        ("Psi in Theta", psi_expressions),
    ] {
        if let Err(e) = run(&mut r) {
            r.check(&format!("{name}: completed"), false);
            r.note(format!("{name}: {e}"));
        }
    }
    let failed = r.results.values().filter(|v| v.as_bool() == Some(false)).count();
    let total = r.results.len();
    r.result("checks", total);
    r.result("failed", failed);
    Ok(r)
}
