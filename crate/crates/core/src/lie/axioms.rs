use rayon::prelude::*;
use serde_json::json;

use super::element::LieElement;
use super::model::{Homogeneous, LieTorus};
use crate::lattice::{window, LatticeVec, Sublattice};
use crate::linalg::{rank, Echelon};
use crate::sampling::triples;
use crate::report::{par_tally, CheckOutcome, Report, Tally};
use crate::scalar::CycScalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AxiomOptions {
    pub window: i64,
    /// Number of sampled Jacobi triples; all triples are used when there are fewer.
    pub jacobi_samples: usize,
    pub seed: u64,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { window: 2, jacobi_samples: 2000, seed: 0 }
    }
}

fn witness(h: &Homogeneous) -> serde_json::Value {
    json!({"root": h.root, "degree": h.degree, "element": h.element})
}

fn lt1(model: &LieTorus, basis: &[Homogeneous]) -> CheckOutcome {
    // nothing outside Δ: basis accessors for non-roots are empty and
    // every homogeneous basis element decomposes with a root label
    let mut t = Tally::default();
    for h in basis {
        let ok = model.datum().is_root(&h.root) && model.degree_of(&h.element) == Some((h.root.clone(), h.degree.clone()));
        t.check(ok, || witness(h));
    }
    t.outcome("LT1 root support")
}

fn lt2_i(model: &LieTorus) -> CheckOutcome {
    let zero = LatticeVec::zero(model.lattice_rank());
    let mut t = Tally::default();
    for alpha in model.datum().nonzero_roots() {
        t.check(!model.basis(&alpha, &zero).is_empty(), || json!({"root": alpha}));
    }
    t.outcome("LT2(i) nonzero degree-0 root spaces")
}

/// One-dimensionality of L_α^λ and the sl2-triple action [[e,f],x_β] = ⟨β,α∨⟩x_β.
fn lt2_ii(model: &LieTorus, basis: &[Homogeneous], w: i64) -> Vec<CheckOutcome> {
    let datum = model.datum();
    let pairs: Vec<(LatticeVec, LatticeVec)> = datum
        .nonzero_roots()
        .into_iter()
        .flat_map(|a| window(model.lattice_rank(), w).into_iter().map(move |l| (a.clone(), l)))
        .filter(|(a, l)| model.in_lambda_support(a, l))
        .collect();
    let mut dim = Tally::default();
    for (alpha, lambda) in &pairs {
        let d1 = model.basis(alpha, lambda).len();
        let d2 = model.basis(&-alpha, &-lambda).len();
        dim.check(d1 == 1 && d2 == 1, || json!({"root": alpha, "degree": lambda, "dims": [d1, d2]}));
    }
    let action = par_tally(pairs.len(), |p, t| {
        let (alpha, lambda) = &pairs[p];
        let (Some(e), Some(f0)) = (model.basis(alpha, lambda).pop(), model.basis(&-alpha, &-lambda).pop()) else {
            t.check(false, || json!({"root": alpha, "degree": lambda, "reason": "missing root vector"}));
            return;
        };
        let h0 = model.bracket(&e, &f0).expect("same model");
        let he = model.bracket(&h0, &e).expect("same model");
        let ce = model.coords(&e);
        let che = model.coords(&he);
        let Some((k, c)) = ce.iter().next() else { return };
        let beta = che.get(k).cloned().unwrap_or_else(|| CycScalar::zero(c.order())).try_div(c).expect("nonzero");
        if beta.is_zero() || !model.equal(&he, &e.scale(&beta)) {
            t.check(false, || json!({"root": alpha, "degree": lambda, "reason": "[[e,f],e] is not a nonzero multiple of e"}));
            return;
        }
        let two = CycScalar::from_int(beta.order(), 2);
        let h = h0.scale(&two.try_div(&beta).expect("nonzero"));
        for x in basis {
            let pairing = datum.coroot_pair(&x.root, alpha).expect("nonzero root");
            let lhs = model.bracket(&h, &x.element).expect("same model");
            let rhs = x.element.scale(&CycScalar::from_int(beta.order(), pairing));
            t.check(model.equal(&lhs, &rhs), || json!({"e": {"root": alpha, "degree": lambda}, "x": witness(x)}));
        }
    });
    vec![dim.outcome("LT2(ii) one-dimensional root spaces"), action.outcome("LT2(ii) sl2-triple action")]
}

/// L_0^λ lies in the span of the brackets [L_α^μ, L_{−α}^{λ−μ}].
fn lt3(model: &LieTorus, w: i64) -> CheckOutcome {
    let n = model.lattice_rank();
    let zero_root = model.datum().zero();
    let lambdas = window(n, w);
    let t = par_tally(lambdas.len(), |i, t| {
        let lambda = &lambdas[i];
        let target = model.basis(&zero_root, lambda);
        if target.is_empty() {
            return;
        }
        let mut ech = Echelon::new();
        for alpha in model.datum().nonzero_roots() {
            for mu in window(n, w) {
                for x in model.basis(&alpha, &mu) {
                    for y in model.basis(&-&alpha, &(lambda - &mu)) {
                        ech.insert(&model.coords(&model.bracket(&x, &y).expect("same model")));
                    }
                }
            }
        }
        for (k, x) in target.iter().enumerate() {
            t.check(ech.contains(&model.coords(x)), || json!({"degree": lambda, "basis_index": k}));
        }
    });
    t.outcome("LT3 generated by nonzero root spaces")
}

fn lt4(model: &LieTorus, basis: &[Homogeneous], w: i64) -> CheckOutcome {
    let n = model.lattice_rank();
    let degrees: Vec<LatticeVec> = basis.iter().filter(|h| !h.root.is_zero()).map(|h| h.degree.clone()).collect();
    let full = Sublattice::from_generators(n, &degrees).map(|s| s.is_everything()).unwrap_or(false);
    CheckOutcome::from_bool("LT4 support generates lattice", full, || json!({"window": w}))
}

fn lt5(model: &LieTorus, w: i64) -> CheckOutcome {
    let mut t = Tally::default();
    for alpha in model.datum().roots() {
        let hit = window(model.lattice_rank(), w).iter().any(|l| model.in_lambda_support(&alpha, l));
        t.check(hit, || json!({"root": alpha}));
    }
    t.outcome("LT5 root support is all of the root system")
}

/// Antisymmetry, grading compatibility and (LT1) closure on all window pairs.
fn pair_checks(model: &LieTorus, basis: &[Homogeneous]) -> Vec<CheckOutcome> {
    let n = basis.len();
    let parts: Vec<(Tally, Tally)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (mut anti, mut grad) = (Tally::default(), Tally::default());
            for j in i..n {
                let (x, y) = (&basis[i], &basis[j]);
                let xy = model.bracket(&x.element, &y.element).expect("same model");
                let yx = model.bracket(&y.element, &x.element).expect("same model");
                let sum = xy.add(&yx).expect("same model");
                anti.check(model.is_zero(&sum), || json!([witness(x), witness(y)]));
                let root = &x.root + &y.root;
                let degree = &x.degree + &y.degree;
                let comps = model.decompose(&xy);
                let ok = comps.keys().all(|(a, l)| *a == root && *l == degree) && (comps.is_empty() || model.datum().is_root(&root));
                grad.check(ok, || json!([witness(x), witness(y)]));
            }
            (anti, grad)
        })
        .collect();
    let (anti, grad) = parts.into_iter().fold((Tally::default(), Tally::default()), |(a, g), (a2, g2)| (a.merge(a2), g.merge(g2)));
    vec![anti.outcome("antisymmetry"), grad.outcome("grading compatibility")]
}

fn jacobi(model: &LieTorus, basis: &[Homogeneous], opts: &AxiomOptions) -> CheckOutcome {
    let idx = triples(basis.len(), opts.jacobi_samples, opts.seed);
    let t = par_tally(idx.len(), |p, t| {
        let (i, j, k) = idx[p];
        let (x, y, z) = (&basis[i].element, &basis[j].element, &basis[k].element);
        let b = |u: &LieElement, v: &LieElement| model.bracket(u, v).expect("same model");
        let s = b(&b(x, y), z).add(&b(&b(y, z), x)).and_then(|s| s.add(&b(&b(z, x), y))).expect("same model");
        t.check(model.is_zero(&s), || json!([witness(&basis[i]), witness(&basis[j]), witness(&basis[k])]));
    });
    t.outcome("jacobi")
}

/// Window elements that bracket to zero with every nonzero-root generator.
fn centreless(model: &LieTorus, basis: &[Homogeneous]) -> CheckOutcome {
    let gens: Vec<&Homogeneous> = basis.iter().filter(|h| !h.root.is_zero()).collect();
    let t = par_tally(basis.len(), |i, t| {
        let x = &basis[i];
        let hit = gens.iter().any(|g| !model.is_zero(&model.bracket(&x.element, &g.element).expect("same model")));
        t.check(hit, || witness(x));
    });
    t.outcome("centreless on window")
}

fn basis_independent(model: &LieTorus, basis: &[Homogeneous]) -> CheckOutcome {
    let coords: Vec<_> = basis.iter().map(|h| model.coords(&h.element)).collect();
    let r = rank(&coords);
    CheckOutcome::from_bool("window basis independent", r == basis.len(), || json!({"rank": r, "size": basis.len()}))
}

pub fn check_axioms(model: &LieTorus, opts: &AxiomOptions) -> Report {
    let w = opts.window.max(1);
    let basis = model.window_basis(w);
    let mut report = Report::new(format!("{} (window {w})", model.name()));
    report.push(basis_independent(model, &basis));
    report.push(lt1(model, &basis));
    report.push(lt2_i(model));
    report.extend(lt2_ii(model, &basis, w));
    report.push(lt3(model, w));
    report.push(lt4(model, &basis, w));
    report.push(lt5(model, w));
    report.extend(pair_checks(model, &basis));
    report.push(jacobi(model, &basis, opts));
    report.push(centreless(model, &basis));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::StructuredTorus;

    #[test]
    fn untwisted_sl3_passes() {
        let l = LieTorus::sl(2, &StructuredTorus::laurent(1, 2)).unwrap();
        let r = check_axioms(&l, &AxiomOptions { window: 1, jacobi_samples: 500, seed: 0 });
        assert!(r.all_passed(), "{:?}", r.summary_lines());
    }
}
