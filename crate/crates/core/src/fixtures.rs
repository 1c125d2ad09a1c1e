//! Named polynomial maps used by the test suites and the CLI.

use crate::parse::parse_polynomial;
use crate::polyring::PolyMap;

fn build(vars: &[&str], comps: &[&str]) -> (PolyMap, Vec<String>) {
    let map = PolyMap::new(
        comps
            .iter()
            .map(|c| parse_polynomial(c, vars).expect("fixture parses"))
            .collect(),
    )
    .expect("fixture shape");
    (map, vars.iter().map(|v| v.to_string()).collect())
}

/// Bass's locally nilpotent derivation `(x^2 - yz)(z d_x + 2x d_y)` of
/// `Q[x, y, z]`. It is left nilpotent but not right nilpotent, and its
/// Jacobian is not nilpotent.
pub fn bass_derivation() -> (PolyMap, Vec<String>) {
    build(&["x", "y", "z"], &["(x^2 - y*z)*z", "(x^2 - y*z)*2*x", "0"])
}

/// `F = (s(xt - ys), t(xt - ys), t^3, 0)` over `Q[x, y, s, t]`, the
/// nonlinear part of the van den Essen / Gorni-Zampieri automorphism.
/// `J(F)` is nilpotent and `D_F^{[4]} = 0`, but `D_F` is not locally
/// nilpotent and the Lie algebra generated by its right powers is neither
/// nilpotent nor solvable.
pub fn essen_gorni_zampieri() -> (PolyMap, Vec<String>) {
    build(
        &["x", "y", "s", "t"],
        &["s*(x*t - y*s)", "t*(x*t - y*s)", "t^3", "0"],
    )
}

/// The polynomial `w = xt - ys` over `Q[x, y, s, t]`.
pub fn essen_w() -> crate::polyring::Polynomial {
    parse_polynomial("x*t - y*s", &["x", "y", "s", "t"]).expect("fixture parses")
}

/// `w = x^2 - yz` over `Q[x, y, z]`.
pub fn bass_w() -> crate::polyring::Polynomial {
    parse_polynomial("x^2 - y*z", &["x", "y", "z"]).expect("fixture parses")
}
