use std::sync::Arc;

use serde_json::json;

use super::element::Monomial;
use super::{jordan_isotope_by, Flavor, Involution, StructuredTorus, TorusKind};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, Sublattice};
use crate::report::{par_tally, CheckOutcome, Report, Tally};
use crate::scalar::CycScalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LawOptions {
    /// Degrees are drawn from [-w, w]^n.
    pub window: i64,
    /// Window for the four-variable linearized Jordan identity; defaults to min(window, 1).
    pub jordan_window: Option<i64>,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions { window: 2, jordan_window: None }
    }
}

impl LawOptions {
    pub fn with_window(w: i64) -> Self {
        LawOptions { window: w, jordan_window: None }
    }

    fn linearized_window(&self) -> i64 {
        self.jordan_window.unwrap_or(self.window.min(1))
    }
}

fn degs(ls: &[&LatticeVec]) -> serde_json::Value {
    json!(ls.iter().map(|l| l.0.clone()).collect::<Vec<_>>())
}

/// Coefficient of a_{λ+μ+ν} in the associator (a_λ a_μ) a_ν − a_λ (a_μ a_ν).
fn associator(a: &StructuredTorus, l: &LatticeVec, mu: &LatticeVec, nu: &LatticeVec) -> CycScalar {
    let left = &a.product_coefficient(l, mu) * &a.product_coefficient(&(l + mu), nu);
    let right = &a.product_coefficient(mu, nu) * &a.product_coefficient(l, &(mu + nu));
    &left - &right
}

/// Coefficient of ((a_x a_y) a_z) a_w, a product of four basis symbols bracketed left to right
/// as ((x y) z) w, and of the bracketing (x y)(z w).
fn left_chain(a: &StructuredTorus, x: &LatticeVec, y: &LatticeVec, z: &LatticeVec, w: &LatticeVec) -> CycScalar {
    let xy = x + y;
    let xyz = &xy + z;
    &(&a.product_coefficient(x, y) * &a.product_coefficient(&xy, z)) * &a.product_coefficient(&xyz, w)
}

fn split_pair(a: &StructuredTorus, x: &LatticeVec, y: &LatticeVec, z: &LatticeVec, w: &LatticeVec) -> CycScalar {
    &(&a.product_coefficient(x, y) * &a.product_coefficient(z, w)) * &a.product_coefficient(&(x + y), &(z + w))
}

/// Linearized Jordan identity in x1, x2, x3 with y: Σ_k ((x_i x_j) y) x_k − (x_i x_j)(y x_k) = 0.
fn jordan_linear(a: &StructuredTorus, xs: [&LatticeVec; 3], y: &LatticeVec) -> CycScalar {
    let mut acc = a.zero_scalar();
    for k in 0..3 {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        acc += &left_chain(a, xs[i], xs[j], y, xs[k]);
        acc -= &split_pair(a, xs[i], xs[j], y, xs[k]);
    }
    acc
}

fn is_octonion(a: &StructuredTorus) -> bool {
    match a.kind() {
        TorusKind::Octonion { .. } => true,
        TorusKind::Perturbed { base, .. } => is_octonion(base),
        _ => false,
    }
}

/// (x₁x₂)x₃ = −x₁(x₂x₃) for the three octonion generators.
fn octonion_witness(a: &StructuredTorus) -> Option<CheckOutcome> {
    if !is_octonion(a) {
        return None;
    }
    let n = a.rank();
    let (x1, x2, x3) = (LatticeVec::unit(n, 0), LatticeVec::unit(n, 1), LatticeVec::unit(n, 2));
    let left = &a.product_coefficient(&x1, &x2) * &a.product_coefficient(&(&x1 + &x2), &x3);
    let right = &a.product_coefficient(&x2, &x3) * &a.product_coefficient(&x1, &(&x2 + &x3));
    let ok = !left.is_zero() && left == -&right;
    Some(CheckOutcome::from_bool("non-associativity witness", ok, || {
        json!({"degrees": degs(&[&x1, &x2, &x3]), "left": left.to_string(), "right": right.to_string()})
    }))
}

fn identity_check(a: &StructuredTorus, window: &[LatticeVec]) -> CheckOutcome {
    let e = a.identity_monomial().coeff;
    let zero = LatticeVec::zero(a.rank());
    let mut t = Tally::default();
    for l in window {
        let left = &e * &a.product_coefficient(&zero, l);
        let right = &e * &a.product_coefficient(l, &zero);
        t.check(left.is_one() && right.is_one(), || degs(&[l]));
    }
    t.outcome("unit")
}

fn invertibility_check(a: &StructuredTorus, window: &[LatticeVec]) -> CheckOutcome {
    let id = a.identity_monomial().coeff;
    let mut t = Tally::default();
    for l in window {
        let x = Monomial::new(l.clone(), a.scalar(1));
        let ok = match a.inverse_monomial(&x) {
            Err(_) => false,
            Ok(inv) if a.flavor() == Flavor::Jordan => {
                // U_x x^{-1} = x
                (&a.u_coefficient(l, &inv.degree) * &inv.coeff).is_one()
            }
            Ok(inv) => {
                let left = &a.product_coefficient(l, &inv.degree) * &inv.coeff;
                let right = &a.product_coefficient(&inv.degree, l) * &inv.coeff;
                left == id && right == id
            }
        };
        t.check(ok, || degs(&[l]));
    }
    t.outcome("invertible basis")
}

fn support_checks(a: &StructuredTorus, window: &[LatticeVec], w: i64) -> Vec<CheckOutcome> {
    let n = a.rank();
    let generated = Sublattice::from_generators(n, window).map(|s| s.is_everything()).unwrap_or(false);
    let mut out = vec![CheckOutcome::from_bool("support generates lattice", generated, || json!(w))];
    match a.flavor() {
        Flavor::Jordan => {
            let mut t = Tally::default();
            for l in window {
                for mu in window {
                    let d = l + &mu.scale(2);
                    t.check(a.in_support(&d), || degs(&[l, mu]));
                }
            }
            out.push(t.outcome("support closed under λ+2μ"));
        }
        _ => {
            let all = crate::lattice::window(n, w);
            let mut t = Tally::default();
            for l in &all {
                t.check(a.in_support(l), || degs(&[l]));
            }
            out.push(t.outcome("support is the whole lattice"));
        }
    }
    out
}

/// Flavor laws, unit, invertibility and support conditions on the window.
pub fn check_flavor_laws(a: &Arc<StructuredTorus>, opts: &LawOptions) -> Report {
    let w = opts.window;
    let window = a.support_window(w);
    let k = window.len();
    let mut report = Report::new(format!("{} torus (rank {}, window {w})", a.kind_name(), a.rank()));
    report.push(identity_check(a, &window));
    match a.flavor() {
        Flavor::Associative => {
            let t = par_tally(k, |i, t| {
                for mu in &window {
                    for nu in &window {
                        t.check(associator(a, &window[i], mu, nu).is_zero(), || degs(&[&window[i], mu, nu]));
                    }
                }
            });
            report.push(t.outcome("associativity"));
        }
        Flavor::Alternative => {
            // the associator is alternating: linearized left and right alternative laws
            let t = par_tally(k, |i, t| {
                let l = &window[i];
                for mu in &window {
                    for nu in &window {
                        let left = &associator(a, l, mu, nu) + &associator(a, mu, l, nu);
                        let right = &associator(a, nu, l, mu) + &associator(a, nu, mu, l);
                        t.check(left.is_zero() && right.is_zero(), || degs(&[l, mu, nu]));
                    }
                }
            });
            report.push(t.outcome("alternative laws"));
            if let Some(c) = octonion_witness(a) {
                report.push(c);
            }
        }
        Flavor::Jordan => {
            let mut comm = Tally::default();
            for l in &window {
                for mu in &window {
                    comm.check(a.product_coefficient(l, mu) == a.product_coefficient(mu, l), || degs(&[l, mu]));
                }
            }
            report.push(comm.outcome("commutativity"));
            // (x²y)x = x²(yx) for homogeneous x on the full window
            let t = par_tally(k, |i, t| {
                let x = &window[i];
                for y in &window {
                    let ok = left_chain(a, x, x, y, x) == split_pair(a, x, x, y, x);
                    t.check(ok, || degs(&[x, y]));
                }
            });
            report.push(t.outcome("jordan identity"));
            let small = a.support_window(opts.linearized_window());
            let s = small.len();
            let t = par_tally(s, |i, t| {
                for j in i..s {
                    for l in j..s {
                        let xs = [&small[i], &small[j], &small[l]];
                        for y in &small {
                            t.check(jordan_linear(a, xs, y).is_zero(), || degs(&[xs[0], xs[1], xs[2], y]));
                        }
                    }
                }
            });
            report.push(t.outcome("linearized jordan identity").with_detail(format!("window {}", opts.linearized_window())));
        }
    }
    report.push(invertibility_check(a, &window));
    report.extend(support_checks(a, &window, w));
    report
}

/// ι is a graded antiautomorphism of period 2 and agrees with its mod-2 quadratic form.
pub fn check_involution(iota: &Involution, opts: &LawOptions) -> Result<Report> {
    let a = iota.torus();
    let window = a.support_window(opts.window);
    let mut report = Report::new(format!("involution on {} torus (window {})", a.kind_name(), opts.window));
    let t = par_tally(window.len(), |i, t| {
        let l = &window[i];
        let el = iota.sign(l);
        for mu in &window {
            let em = iota.sign(mu);
            let lhs = &a.product_coefficient(l, mu) * &a.scalar(iota.sign(&(l + mu)));
            let rhs = &a.product_coefficient(mu, l) * &a.scalar(el * em);
            t.check(lhs == rhs, || degs(&[l, mu]));
        }
    });
    report.push(t.outcome("antiautomorphism"));
    let mut p = Tally::default();
    for l in &window {
        p.check(iota.sign(l).abs() == 1, || degs(&[l]));
    }
    report.push(p.outcome("period 2"));
    let kappa = iota.quadratic_form()?;
    let mut q = Tally::default();
    for l in &window {
        let expected = if kappa.eval_mask(l.mod2_mask()) == 0 { 1 } else { -1 };
        q.check(iota.sign(l) == expected, || degs(&[l]));
    }
    report.push(q.outcome("quadratic form round trip"));
    Ok(report)
}

/// (A^(u))^(v) and A^(U_u v) have equal structure functions on the window,
/// where u = a_{u_degree} in A and v = b_{v_degree} in A^(u).
pub fn check_isotope_composition(
    a: &Arc<StructuredTorus>,
    u_degree: &LatticeVec,
    v_degree: &LatticeVec,
    window: i64,
) -> Result<CheckOutcome> {
    let au = super::jordan_isotope(a, u_degree)?;
    let auv = super::jordan_isotope(&au, v_degree)?;
    // b_ν = a_{ν−u_degree} in A, so U_u v lives in degree ν + u_degree
    let v_in_a = v_degree - u_degree;
    let uv_degree = v_degree + u_degree;
    let coeff = a.u_coefficient(u_degree, &v_in_a);
    if coeff.is_zero() {
        return Err(Error::NotInvertible(format!("U_u v vanishes for u = a_{u_degree}, v = b_{v_degree}")));
    }
    let w = jordan_isotope_by(a, Monomial::new(uv_degree, coeff))?;
    let win = auv.support_window(window);
    let mut t = Tally::default();
    t.check(
        win.iter().all(|l| w.in_support(l)) && w.support_window(window) == win,
        || json!("supports differ"),
    );
    t.check(auv.identity_monomial() == w.identity_monomial(), || json!("identities differ"));
    for l in &win {
        for mu in &win {
            t.check(auv.product_coefficient(l, mu) == w.product_coefficient(l, mu), || degs(&[l, mu]));
        }
    }
    Ok(t.outcome("isotope composition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{alternative_isotope, jordan_isotope, opposite, QMatrix};

    fn kq() -> Arc<StructuredTorus> {
        StructuredTorus::quantum(QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap())
    }

    #[test]
    fn shipped_kinds_pass() {
        let opts = LawOptions::with_window(1);
        for a in [
            StructuredTorus::laurent(2, 2),
            kq(),
            StructuredTorus::octonion(0, 2).unwrap(),
            StructuredTorus::jordan_plus(QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap()),
            StructuredTorus::spin(3, 2).unwrap(),
        ] {
            let r = check_flavor_laws(&a, &opts);
            assert!(r.all_passed(), "{}: {:?}", a.kind_name(), r.summary_lines());
        }
    }

    #[test]
    fn derived_kinds_pass() {
        let opts = LawOptions::with_window(1);
        let o = StructuredTorus::octonion(0, 2).unwrap();
        let spin = StructuredTorus::spin(3, 2).unwrap();
        for a in [
            alternative_isotope(&o, &LatticeVec::from([1, 0, 1]), &LatticeVec::from([0, 1, 1])).unwrap(),
            opposite(&o),
            opposite(&kq()),
            jordan_isotope(&spin, &LatticeVec::from([-1, 0, 0])).unwrap(),
        ] {
            let r = check_flavor_laws(&a, &opts);
            assert!(r.all_passed(), "{}: {:?}", a.kind_name(), r.summary_lines());
        }
    }

    #[test]
    fn corrupted_constant_is_caught() {
        let bad = kq().with_corrupted_constant(LatticeVec::from([1, 0]), LatticeVec::from([0, 1]), CycScalar::from_int(2, -1));
        let r = check_flavor_laws(&bad, &LawOptions::with_window(1));
        assert!(!r.get("associativity").unwrap().passed);
    }

    #[test]
    fn involution_laws() {
        let iota = Involution::new(&kq(), vec![1, -1]).unwrap();
        assert!(check_involution(&iota, &LawOptions::with_window(2)).unwrap().all_passed());
    }

    #[test]
    fn spin_isotope_composition() {
        let spin = StructuredTorus::spin(3, 2).unwrap();
        let c = check_isotope_composition(&spin, &LatticeVec::from([-1, 0, 0]), &LatticeVec::from([1, 1, 0]), 2).unwrap();
        assert!(c.passed, "{c:?}");
    }
}
