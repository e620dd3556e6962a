use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::algebra::{pair_theta, DerBasis, Eala, EalaElement, EalaHomogeneous, Graded, Part};
use crate::lattice::{LatticeVec, Root};
use crate::linalg::rank;
use crate::report::{par_tally, CheckOutcome, Report, Tally};
use crate::sampling::{ordered_triples, triples};
use crate::scalar::CycScalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EalaOptions {
    pub window: i64,
    /// Triple cap for Jacobi, invariance and cocycle sweeps.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EalaOptions {
    fn default() -> Self {
        EalaOptions { window: 2, samples: 5000, seed: 0 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootSpaceDim {
    pub root: Root,
    pub degree: LatticeVec,
    pub dim_e: usize,
    pub dim_l: usize,
}

fn witness(h: &EalaHomogeneous) -> serde_json::Value {
    json!({"part": h.part, "root": h.root, "degree": h.degree})
}

/// Window dimensions of E_{λ+α} for α ≠ 0 next to dim L_α^λ.
pub fn root_space_dims(e: &Eala, w: i64) -> Vec<RootSpaceDim> {
    let mut counts: BTreeMap<(Root, LatticeVec), usize> = BTreeMap::new();
    for h in e.window_basis(w) {
        if !h.root.is_zero() {
            *counts.entry((h.root, h.degree)).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|((root, degree), dim_e)| {
            let dim_l = e.model().basis(&root, &degree).len();
            RootSpaceDim { root, degree, dim_e, dim_l }
        })
        .collect()
}

/// The eigenvalue of ad h on an element labelled (α, λ), for h in the H basis order.
fn eigenvalues(e: &Eala, root: &Root, degree: &LatticeVec) -> Vec<CycScalar> {
    let n = e.model().lattice_rank();
    let m = e.model().torus().order();
    let zero = LatticeVec::zero(n);
    let mut out: Vec<CycScalar> = DerBasis::new(&zero).thetas.iter().map(|t| CycScalar::from_int(m, t.dot(degree))).collect();
    for h in e.model().basis(&e.model().datum().zero(), &zero) {
        let mat = h.as_matrix().expect("sl model");
        let mut v = CycScalar::zero(m);
        for p in 0..mat.size() {
            let c = mat.entry(p, p).coefficient(&zero);
            let ap = e.model().weight(p).dot(root);
            v += &(&c * &CycScalar::from_int(m, ap));
        }
        out.push(v);
    }
    out.extend((0..n).map(|_| CycScalar::zero(m)));
    out
}

fn m_part(x: &EalaElement) -> EalaElement {
    EalaElement { c: Graded::new(), ..x.clone() }
}

pub fn check_construction(e: &Eala, opts: &EalaOptions) -> Report {
    let w = opts.window;
    let model = e.model();
    let n = model.lattice_rank();
    let m = model.torus().order();
    let basis = e.window_basis(w);
    let nb = basis.len();
    let mut report = Report::new(format!("E({}, SCDer, 0) (window {w})", model.name()));

    let h = e.h_basis();
    report.push(
        CheckOutcome::pass("degree-0 dimensions", 1)
            .with_detail(format!("dim E^0 = {}, dim H = {}", e.degree_zero_dim(), h.len())),
    );

    let evs: Vec<Graded> = (0..n)
        .map(|i| [(LatticeVec::zero(n), e.ev(&LatticeVec::unit(n, i)))].into_iter().collect())
        .collect();
    let ev_coords: Vec<_> = evs.iter().map(|g| coords(e, &EalaElement { c: g.clone(), ..e.zero() })).collect();
    let r = rank(&ev_coords);
    report.push(CheckOutcome::from_bool("ev injective", r == n, || json!({"rank": r, "n": n})));

    let ds: Vec<&EalaHomogeneous> = basis.iter().filter(|h| h.part == Part::D).collect();
    let mut closure = Tally::default();
    for a in &ds {
        for b in &ds {
            let (g1, c1) = a.element.d.iter().next().expect("nonzero");
            let (g2, c2) = b.element.d.iter().next().expect("nonzero");
            let t1 = DerBasis::new(g1).theta(c1, m);
            let t2 = DerBasis::new(g2).theta(c2, m);
            let (x, y) = (pair_theta(&t1, g2), pair_theta(&t2, g1));
            let theta: Vec<CycScalar> = t2.iter().zip(&t1).map(|(p, q)| &(&x * p) - &(&y * q)).collect();
            closure.check(pair_theta(&theta, &(g1 + g2)).is_zero(), || json!([witness(a), witness(b)]));
        }
    }
    report.push(closure.outcome("skew derivations closed under bracket"));

    let ls: Vec<&EalaHomogeneous> = basis.iter().filter(|h| h.part == Part::L).collect();
    let leibniz = par_tally(ds.len() * ls.len(), |p, t| {
        let d = &ds[p / ls.len()].element.d;
        let x = &ls[p % ls.len()].element.l;
        for y in &ls {
            let y = &y.element.l;
            let lhs = e.der_apply(d, &model.bracket(x, y).unwrap()).unwrap();
            let rhs = model
                .bracket(&e.der_apply(d, x).unwrap(), y)
                .unwrap()
                .add(&model.bracket(x, &e.der_apply(d, y).unwrap()).unwrap())
                .unwrap();
            t.check(model.equal(&lhs, &rhs), || json!({"d": ds[p / ls.len()].degree, "x": x, "y": y}));
        }
    });
    report.push(leibniz.outcome("derivations satisfy Leibniz"));

    let anti = par_tally(nb, |i, t| {
        for j in i..nb {
            let (x, y) = (&basis[i].element, &basis[j].element);
            let s = e.bracket(x, y).unwrap().add(&e.bracket(y, x).unwrap()).unwrap();
            t.check(e.is_zero(&s), || json!([witness(&basis[i]), witness(&basis[j])]));
        }
    });
    report.push(anti.outcome("bracket antisymmetric"));

    let tri = triples(nb, opts.samples, opts.seed);
    let jac = par_tally(tri.len(), |p, t| {
        let (i, j, k) = tri[p];
        let (x, y, z) = (&basis[i].element, &basis[j].element, &basis[k].element);
        let b = |u: &EalaElement, v: &EalaElement| e.bracket(u, v).unwrap();
        let s = b(&b(x, y), z).add(&b(&b(y, z), x)).unwrap().add(&b(&b(z, x), y)).unwrap();
        t.check(e.is_zero(&s), || json!([witness(&basis[i]), witness(&basis[j]), witness(&basis[k])]));
    });
    report.push(jac.outcome("jacobi"));

    let sym = par_tally(nb, |i, t| {
        for j in i..nb {
            let (x, y) = (&basis[i].element, &basis[j].element);
            let (a, b) = (e.form(x, y).unwrap(), e.form(y, x).unwrap());
            t.check(a == b, || json!([witness(&basis[i]), witness(&basis[j])]));
        }
    });
    report.push(sym.outcome("form symmetric"));

    let graded = par_tally(nb, |i, t| {
        for j in 0..nb {
            let (x, y) = (&basis[i], &basis[j]);
            let v = e.form(&x.element, &y.element).unwrap();
            let ok = v.is_zero() || ((&x.root + &y.root).is_zero() && (&x.degree + &y.degree).is_zero());
            t.check(ok, || json!([witness(x), witness(y)]));
        }
    });
    report.push(graded.outcome("form graded"));

    let otri = ordered_triples(nb, opts.samples, opts.seed);
    let inv = par_tally(otri.len(), |p, t| {
        let (i, j, k) = otri[p];
        let (x, y, z) = (&basis[i].element, &basis[j].element, &basis[k].element);
        let lhs = e.form(&e.bracket(x, y).unwrap(), z).unwrap();
        let rhs = e.form(x, &e.bracket(y, z).unwrap()).unwrap();
        t.check(lhs == rhs, || json!([witness(&basis[i]), witness(&basis[j]), witness(&basis[k])]));
    });
    report.push(inv.outcome("form invariant"));

    let mut pairing = Tally::default();
    for g in e.gamma_window(w) {
        let dim = DerBasis::new(&g).dim();
        let rows: Vec<_> = (0..dim)
            .map(|k| {
                let d = e.from_d(&g, k);
                let v: Vec<CycScalar> = (0..dim).map(|j| e.form(&e.from_c(&-&g, j), &d).unwrap()).collect();
                coords(e, &EalaElement { c: [(g.clone(), v)].into_iter().collect(), ..e.zero() })
            })
            .collect();
        let r = rank(&rows);
        pairing.check(r == dim, || json!({"degree": g, "rank": r, "dim": dim}));
    }
    report.push(pairing.outcome("D_γ pairs nondegenerately with C_-γ"));

    // 2-cocycle identity for σ on M = D ⊕ L with values in C
    let ms: Vec<&EalaHomogeneous> = basis.iter().filter(|h| h.part != Part::C).collect();
    let mtri = triples(ms.len(), opts.samples, opts.seed);
    let neg = CycScalar::from_int(m, -1);
    let cocycle = par_tally(mtri.len(), |p, t| {
        let (i, j, k) = mtri[p];
        let trip = [&ms[i].element, &ms[j].element, &ms[k].element];
        let mut total = e.zero();
        for r in 0..3 {
            let (a, b, c) = (trip[r], trip[(r + 1) % 3], trip[(r + 2) % 3]);
            let ab = m_part(&e.bracket(a, b).unwrap());
            let s1 = e.sigma(&ab.l, &c.l).unwrap();
            let s2 = e.contragredient(&a.d, &e.sigma(&b.l, &c.l).unwrap());
            let part = EalaElement { c: s1, ..e.zero() }.add(&EalaElement { c: s2, ..e.zero() }.scale(&neg)).unwrap();
            total = total.add(&part).unwrap();
        }
        t.check(total.c.is_empty(), || json!([witness(ms[i]), witness(ms[j]), witness(ms[k])]));
    });
    report.push(cocycle.outcome("sigma is a 2-cocycle"));

    let evs_h: Vec<EalaElement> = h.clone();
    let diag = par_tally(nb, |i, t| {
        let x = &basis[i];
        let expect = eigenvalues(e, &x.root, &x.degree);
        for (hk, ev) in evs_h.iter().zip(&expect) {
            let lhs = e.bracket(hk, &x.element).unwrap();
            t.check(e.equal(&lhs, &x.element.scale(ev)), || witness(x));
        }
    });
    report.push(diag.outcome("H acts diagonally by λ + α"));

    let mut dims = Tally::default();
    for d in root_space_dims(e, w) {
        dims.check(d.dim_e == d.dim_l && d.dim_e == 1, || json!(d));
    }
    report.push(dims.outcome("root spaces E_(λ+α) = L_α^λ"));

    let cs: Vec<&EalaHomogeneous> = basis.iter().filter(|h| h.part == Part::C).collect();
    let core: Vec<&EalaHomogeneous> = basis.iter().filter(|h| e.core_membership(&h.element)).collect();
    let centre = par_tally(cs.len(), |i, t| {
        for y in &core {
            let b = e.bracket(&cs[i].element, &y.element).unwrap();
            t.check(e.is_zero(&b), || json!([witness(cs[i]), witness(y)]));
        }
    });
    report.push(centre.outcome("C central in the core"));
    let mut membership = Tally::default();
    for x in &basis {
        membership.check(e.core_membership(&x.element) == (x.part != Part::D), || witness(x));
    }
    report.push(membership.outcome("core is L + C"));
    report
}

/// Coordinates of an EALA element for rank computations.
pub(crate) fn coords(e: &Eala, x: &EalaElement) -> crate::linalg::SparseVec {
    let mut v = e.model().coords(&x.l);
    for (tag, part) in [(1_000_000u32, &x.d), (2_000_000u32, &x.c)] {
        for (g, cs) in part {
            for (k, c) in cs.iter().enumerate() {
                crate::linalg::add_to(&mut v, &(tag + k as u32, g.clone(), LatticeVec::zero(0)), c);
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{LieElement, LieTorus, MatrixElement};
    use crate::torus::StructuredTorus;
    use std::sync::Arc;

    fn sl2(n: usize) -> Eala {
        Eala::new(&LieTorus::sl(1, &StructuredTorus::laurent(n, 2)).unwrap()).unwrap()
    }

    fn mat(e: &Eala, i: usize, j: usize, deg: i64) -> LieElement {
        let a: &Arc<StructuredTorus> = e.model().torus();
        LieElement::Matrix(MatrixElement::unit(a, 2, i, j, a.basis(&LatticeVec::from([deg])).unwrap()))
    }

    #[test]
    fn der_basis_shapes() {
        assert_eq!(DerBasis::new(&LatticeVec::from([0, 0])).dim(), 2);
        let b = DerBasis::new(&LatticeVec::from([2, 4]));
        assert_eq!(b.thetas, vec![LatticeVec::from([-2, 1])]);
        assert_eq!(DerBasis::new(&LatticeVec::from([3])).dim(), 0);
        let b = DerBasis::new(&LatticeVec::from([0, -2, 3]));
        assert_eq!(b.thetas, vec![LatticeVec::from([1, 0, 0]), LatticeVec::from([0, 3, 2])]);
        for t in &b.thetas {
            assert_eq!(t.dot(&b.degree), 0);
        }
    }

    #[test]
    fn form_values() {
        let e = sl2(1);
        assert_eq!(e.form_l(&mat(&e, 0, 1, 1), &mat(&e, 1, 0, -1)).unwrap(), CycScalar::one(2));
        assert!(e.form_l(&mat(&e, 0, 1, 1), &mat(&e, 1, 0, 1)).unwrap().is_zero());
    }

    #[test]
    fn sigma_values() {
        let e = sl2(1);
        let s = e.sigma(&mat(&e, 0, 1, 1), &mat(&e, 1, 0, -1)).unwrap();
        assert_eq!(s[&LatticeVec::from([0])], vec![CycScalar::one(2)]);
        assert!(e.sigma(&mat(&e, 0, 1, 2), &mat(&e, 0, 1, 2)).unwrap().is_empty());
    }

    #[test]
    fn affine_central_term() {
        // [e⊗t, f⊗t⁻¹] − [e, f] is purely central
        let e = sl2(1);
        let a = e.bracket(&e.from_l(mat(&e, 0, 1, 1)), &e.from_l(mat(&e, 1, 0, -1))).unwrap();
        let b = e.bracket(&e.from_l(mat(&e, 0, 1, 0)), &e.from_l(mat(&e, 1, 0, 0))).unwrap();
        let diff = a.sub(&b).unwrap();
        assert!(diff.d.is_empty() && e.model().is_zero(&diff.l));
        assert_eq!(diff.c[&LatticeVec::from([0])], vec![CycScalar::one(2)]);
    }

    #[test]
    fn sl2_loop_algebra() {
        let e = sl2(1);
        assert_eq!(e.degree_zero_dim(), 5);
        assert_eq!(e.h_basis().len(), 3);
        let r = check_construction(&e, &EalaOptions { window: 1, ..Default::default() });
        assert!(r.all_passed(), "{:?}", r.summary_lines());
    }

    #[test]
    fn two_variable_derivations() {
        let e = sl2(2);
        let r = check_construction(&e, &EalaOptions { window: 1, samples: 1500, seed: 3 });
        assert!(r.all_passed(), "{:?}", r.summary_lines());
    }
}
