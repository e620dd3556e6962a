//! Graded isomorphisms between Lie tori and their isotopes, plus a verifier.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use super::element::{LieElement, MatrixElement, TkkElement};
use super::model::{Homogeneous, LieTorus, ModelKind};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, Root, ShiftHom};
use crate::linalg::rank;
use crate::report::{par_tally, CheckOutcome, Report, Tally};
use crate::torus::{
    involution_isotope, jordan_isotope, opposite, u_operator, StructuredTorus, TorusElement,
};

#[derive(Clone, Debug)]
pub enum MapRule {
    Identity,
    /// X ↦ g X g⁻¹
    Conjugation { g: MatrixElement, g_inv: MatrixElement },
    /// X ↦ −Xᵗ, entries read in the opposite torus.
    NegativeTranspose,
    /// TKK(A^(u)) → TKK(A) with u = a_{u_degree}.
    TkkIsotope { u_degree: LatticeVec },
    /// Negate the (α, λ)-component, then apply the inner rule.
    Perturbed { inner: Box<MapRule>, root: Root, degree: LatticeVec },
}

/// A linear map L → L' with L_α^λ ↦ L'_{φ_r(α)}^λ, where φ_r = ±1 on Δ.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: Arc<LieTorus>,
    pub target: Arc<LieTorus>,
    pub root_sign: i64,
    pub rule: MapRule,
}

fn monomial_inverse(x: &TorusElement) -> Result<TorusElement> {
    let m = x.as_monomial().ok_or_else(|| Error::NotInvertible("not a monomial".into()))?;
    Ok(TorusElement::from_monomial(x.torus(), x.torus().inverse_monomial(&m)?))
}

impl GradedMap {
    pub fn root_image(&self, alpha: &Root) -> Root {
        alpha.scale(self.root_sign)
    }

    fn apply_rule(&self, rule: &MapRule, x: &LieElement) -> Result<LieElement> {
        match rule {
            MapRule::Identity => Ok(x.clone()),
            MapRule::Conjugation { g, g_inv } => {
                let m = x.as_matrix().ok_or_else(|| Error::ModelMismatch("conjugation needs a matrix".into()))?;
                Ok(LieElement::Matrix(g.mul(m)?.mul(g_inv)?))
            }
            MapRule::NegativeTranspose => {
                let m = x.as_matrix().ok_or_else(|| Error::ModelMismatch("transpose needs a matrix".into()))?;
                Ok(LieElement::Matrix(m.negative_transpose(self.target.torus())?))
            }
            MapRule::TkkIsotope { u_degree } => {
                let t = x.as_tkk().ok_or_else(|| Error::ModelMismatch("TKK map needs a TKK element".into()))?;
                let a = self.target.torus();
                let back = -u_degree;
                let u = a.basis(u_degree)?;
                let mut out = TkkElement::zero(a);
                out.plus = t.plus.regrade(a, &back)?;
                out.minus = u_operator(&u, &t.minus.regrade(a, &back)?)?;
                // V^(u)_{b_x, b_y} = V_{a_x', U_u a_y'}
                for ((p, q), c) in &t.inner {
                    let (pp, qq) = (p + &back, q + &back);
                    let beta = a.u_coefficient(u_degree, &qq);
                    out.add_inner(&pp, &(&qq + &u_degree.scale(2)), &(c * &beta));
                }
                Ok(LieElement::Tkk(out))
            }
            MapRule::Perturbed { inner, root, degree } => {
                let comp = self.source.component(x, root, degree);
                let y = x.sub(&comp)?.sub(&comp)?;
                self.apply_rule(inner, &y)
            }
        }
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        self.apply_rule(&self.rule, x)
    }

    /// The same map with the sign of one graded component flipped.
    pub fn perturbed(&self, root: &Root, degree: &LatticeVec) -> GradedMap {
        GradedMap {
            rule: MapRule::Perturbed { inner: Box::new(self.rule.clone()), root: root.clone(), degree: degree.clone() },
            ..self.clone()
        }
    }
}

pub fn identity_map(model: &Arc<LieTorus>) -> GradedMap {
    GradedMap { source: model.clone(), target: model.clone(), root_sign: 1, rule: MapRule::Identity }
}

/// sl(A)^(s) → sl(A^op)^(−s), X ↦ −Xᵗ; acts as −1 on roots.
pub fn opposite_iso(model: &Arc<LieTorus>) -> Result<GradedMap> {
    let ModelKind::Sl { r, a } = model.kind() else {
        return Err(Error::Unsupported("the opposite map is defined for sl models".into()));
    };
    let neg = ShiftHom::new(model.shift().images.iter().map(|v| -v).collect());
    let target = LieTorus::sl(*r, &opposite(a))?.with_probe(model.probe_window()).shift_isotope(&neg)?;
    Ok(GradedMap { source: model.clone(), target, root_sign: -1, rule: MapRule::NegativeTranspose })
}

/// sl(A) → sl(A)^(s), conjugation by diag(a_{f_1}, …, a_{f_{r+1}}) with
/// f_1 = 0 and f_{i+1} = f_i − s(α_i).
pub fn diag_conjugation_iso(model: &Arc<LieTorus>, s: &ShiftHom) -> Result<GradedMap> {
    let ModelKind::Sl { r, a } = model.kind() else {
        return Err(Error::Unsupported("diagonal conjugation is defined for sl models".into()));
    };
    let target = model.shift_isotope(s)?;
    let mut f = vec![LatticeVec::zero(a.rank())];
    for i in 0..*r {
        let next = &f[i] - &s.images[i];
        f.push(next);
    }
    let d: Vec<TorusElement> = f.iter().map(|fi| a.basis(fi)).collect::<Result<_>>()?;
    let d_inv: Vec<TorusElement> = d.iter().map(monomial_inverse).collect::<Result<_>>()?;
    let rule = MapRule::Conjugation { g: MatrixElement::diagonal(a, d), g_inv: MatrixElement::diagonal(a, d_inv) };
    Ok(GradedMap { source: model.clone(), target, root_sign: 1, rule })
}

/// TKK(A^(u)) → TKK(A)^(s) for u = a_{−s(α)}; the model must be unshifted.
pub fn tkk_isotope_iso(model: &Arc<LieTorus>, s: &ShiftHom) -> Result<GradedMap> {
    let ModelKind::Tkk { a } = model.kind() else {
        return Err(Error::Unsupported("the isotope map is defined for TKK models".into()));
    };
    if !model.shift().is_zero() {
        return Err(Error::Precondition("the TKK isotope map starts from an unshifted model".into()));
    }
    let target = model.shift_isotope(s)?;
    let u_degree = -&s.images[0];
    let source = LieTorus::tkk(&jordan_isotope(a, &u_degree)?)?.with_probe(model.probe_window());
    Ok(GradedMap { source, target, root_sign: 1, rule: MapRule::TkkIsotope { u_degree } })
}

/// ssp(A, ι)^(s) → ssp(A, ι^(h)) with h = a_{s(α_r)}; the model must be unshifted.
///
/// Conjugation by diag(d_i, h ι(d_i)⁻¹) with d_i = a_{s(ε_r − ε_i)}.
pub fn ssp_isotope_iso(model: &Arc<LieTorus>, s: &ShiftHom) -> Result<GradedMap> {
    let ModelKind::Ssp { r, iota } = model.kind() else {
        return Err(Error::Unsupported("the involution isotope map is defined for ssp models".into()));
    };
    if !model.shift().is_zero() {
        return Err(Error::Precondition("the ssp isotope map starts from an unshifted model".into()));
    }
    let r = *r;
    let source = model.shift_isotope(s)?;
    let a: Arc<StructuredTorus> = iota.torus().clone();
    let h_degree = s.images[r - 1].clone();
    let target = LieTorus::ssp(r, &involution_isotope(iota, &h_degree)?)?.with_probe(model.probe_window());
    let datum = model.datum();
    let h = a.basis(&h_degree)?;
    let h_inv = monomial_inverse(&h)?;
    let mut diag = Vec::with_capacity(2 * r);
    let mut diag_inv = Vec::with_capacity(2 * r);
    let mut tail = Vec::with_capacity(r);
    let mut tail_inv = Vec::with_capacity(r);
    for i in 0..r {
        let f = s.apply(datum, &(&datum.eps(r - 1) - &datum.eps(i)))?;
        let d = a.basis(&f)?;
        let d_inv = monomial_inverse(&d)?;
        let dbar = iota.apply(&d);
        tail.push(h.try_mul(&monomial_inverse(&dbar)?)?);
        tail_inv.push(dbar.try_mul(&h_inv)?);
        diag.push(d);
        diag_inv.push(d_inv);
    }
    diag.extend(tail);
    diag_inv.extend(tail_inv);
    let rule = MapRule::Conjugation { g: MatrixElement::diagonal(&a, diag), g_inv: MatrixElement::diagonal(&a, diag_inv) };
    Ok(GradedMap { source, target, root_sign: 1, rule })
}

fn witness(h: &Homogeneous) -> serde_json::Value {
    json!({"root": h.root, "degree": h.degree})
}

/// Grading, bracket and injectivity checks of φ on the source window basis.
pub fn verify_graded_map(phi: &GradedMap, w: i64) -> Report {
    let src = &phi.source;
    let tgt = &phi.target;
    let basis = src.window_basis(w);
    let images: Vec<Result<LieElement>> = basis.par_iter().map(|h| phi.apply(&h.element)).collect();
    let mut report = Report::new(format!("{} -> {} (window {w})", src.name(), tgt.name()));

    let mut apply = Tally::default();
    for (h, img) in basis.iter().zip(&images) {
        apply.check(img.is_ok(), || json!({"at": witness(h), "error": img.as_ref().err().map(|e| e.to_string())}));
    }
    report.push(apply.outcome("map defined on window"));
    if images.iter().any(|i| i.is_err()) {
        return report;
    }
    let images: Vec<LieElement> = images.into_iter().map(|i| i.unwrap()).collect();

    let grading = par_tally(basis.len(), |i, t| {
        let h = &basis[i];
        let img = &images[i];
        let comp = tgt.component(img, &phi.root_image(&h.root), &h.degree);
        t.check(!tgt.is_zero(img) && tgt.equal(&comp, img), || witness(h));
    });
    report.push(grading.outcome("grading preserved"));

    let n = basis.len();
    let hom: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for j in i + 1..n {
                let lhs = src.bracket(&basis[i].element, &basis[j].element).and_then(|b| phi.apply(&b));
                let rhs = tgt.bracket(&images[i], &images[j]);
                let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if tgt.equal(l, r));
                t.check(ok, || json!([witness(&basis[i]), witness(&basis[j])]));
            }
            t
        })
        .collect();
    report.push(hom.into_iter().fold(Tally::default(), Tally::merge).outcome("bracket preserved"));

    let mut inj = Tally::default();
    let mut start = 0;
    while start < n {
        let key = (&basis[start].root, &basis[start].degree);
        let end = (start..n).find(|&k| (&basis[k].root, &basis[k].degree) != key).unwrap_or(n);
        let coords: Vec<_> = images[start..end].iter().map(|x| tgt.coords(x)).collect();
        let r = rank(&coords);
        inj.check(r == end - start, || json!({"at": witness(&basis[start]), "rank": r, "dim": end - start}));
        start = end;
    }
    report.push(inj.outcome("injective on components"));
    report
}

/// Outcome that φ sends each source component onto a target component of equal dimension.
pub fn dimension_match(phi: &GradedMap, w: i64) -> CheckOutcome {
    let mut t = Tally::default();
    for c in phi.source.component_dims(w) {
        let d = phi.target.basis(&phi.root_image(&c.root), &c.degree).len();
        t.check(d == c.dim, || json!({"root": c.root, "degree": c.degree, "source": c.dim, "target": d}));
    }
    t.outcome("component dimensions match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{Involution, QMatrix};

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    fn quantum2() -> Arc<StructuredTorus> {
        StructuredTorus::quantum(QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap())
    }

    fn assert_passes(phi: &GradedMap, w: i64) {
        let r = verify_graded_map(phi, w);
        assert!(r.all_passed(), "{:?}", r.summary_lines());
        assert!(dimension_match(phi, w).passed);
    }

    #[test]
    fn diagonal_conjugation_sl3() {
        let l = LieTorus::sl(2, &quantum2()).unwrap();
        let s = ShiftHom::new(vec![v([1, 0]), v([-1, 1])]);
        assert_passes(&diag_conjugation_iso(&l, &s).unwrap(), 1);
    }

    #[test]
    fn opposite_sl2() {
        let l = LieTorus::sl(1, &quantum2()).unwrap().shift_isotope(&ShiftHom::new(vec![v([0, 1])])).unwrap();
        assert_passes(&opposite_iso(&l).unwrap(), 1);
    }

    #[test]
    fn tkk_isotope_spin() {
        let spin = StructuredTorus::spin(2, 2).unwrap();
        let l = LieTorus::tkk(&spin).unwrap();
        assert_passes(&tkk_isotope_iso(&l, &ShiftHom::new(vec![v([1, 0])])).unwrap(), 1);
    }

    #[test]
    fn tkk_isotope_jordan_plus() {
        let j = StructuredTorus::jordan_plus(QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap());
        let l = LieTorus::tkk(&j).unwrap();
        assert_passes(&tkk_isotope_iso(&l, &ShiftHom::new(vec![v([1, 1])])).unwrap(), 1);
    }

    #[test]
    fn ssp_isotope() {
        let iota = Involution::new(&quantum2(), vec![1, 1]).unwrap();
        let l = LieTorus::ssp(2, &iota).unwrap();
        let s = ShiftHom::new(vec![v([1, 1]), v([1, 0])]);
        assert_passes(&ssp_isotope_iso(&l, &s).unwrap(), 1);
    }

    #[test]
    fn perturbed_map_fails() {
        let l = LieTorus::sl(1, &StructuredTorus::laurent(1, 2)).unwrap();
        let phi = identity_map(&l).perturbed(&v([1, -1]), &v([0]));
        let r = verify_graded_map(&phi, 1);
        assert!(!r.all_passed());
        assert!(r.get("grading preserved").unwrap().passed);
        assert!(!r.get("bracket preserved").unwrap().passed);
    }
}
