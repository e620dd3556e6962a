use std::sync::Arc;

use serde_json::json;

use super::algebra::{DerBasis, Eala, EalaElement, EalaHomogeneous, Graded, Part};
use super::checks::coords;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, ShiftHom};
use crate::lie::{LieElement, LieTorus, MatrixElement, ModelKind};
use crate::linalg::rank;
use crate::report::{par_tally, CheckOutcome, Report, Tally};
use crate::sampling::triples;
use crate::scalar::CycScalar;

/// χ : E(L, SCDer, 0) → E(L^(s), SCDer^(s), 0),
/// d + l + f ↦ ψ(d) + (ω(d) + l) + (ψ̂(f) − ψ̂ω#(l) − ½ψ̂ω#ω(d)).
///
/// ψ and ψ̂ are the identity in DerBasis coordinates.
#[derive(Debug)]
pub struct ChiMap {
    pub source: Arc<Eala>,
    pub target: Arc<Eala>,
    pub shift: ShiftHom,
    /// +1 for χ; −1 gives a corrupted map used as a negative control.
    pub omega_sign: i64,
}

pub fn chi_iso(model: &Arc<LieTorus>, s: &ShiftHom) -> Result<ChiMap> {
    if !model.shift().is_zero() {
        return Err(Error::Precondition("χ starts from an unshifted model".into()));
    }
    let source = Arc::new(Eala::new(model)?);
    let target = Arc::new(Eala::new(&model.shift_isotope(s)?)?);
    Ok(ChiMap { source, target, shift: s.clone(), omega_sign: 1 })
}

impl ChiMap {
    pub fn perturbed(&self) -> ChiMap {
        ChiMap { omega_sign: -self.omega_sign, source: self.source.clone(), target: self.target.clone(), shift: self.shift.clone() }
    }

    fn order(&self) -> u32 {
        self.source.model().torus().order()
    }

    /// h_θ ∈ h with α(h_θ) = θ(s(α)).
    pub fn h_theta(&self, theta: &[CycScalar]) -> Result<LieElement> {
        let model = self.source.model();
        let ModelKind::Sl { r, a } = model.kind() else {
            return Err(Error::Unsupported("h_θ is implemented for sl models".into()));
        };
        let m = self.order();
        // h_1 − h_{i+1} = Σ_{j≤i} θ(s(α_j)); fix h_1 by trace zero
        let mut offs = vec![CycScalar::zero(m)];
        for i in 0..*r {
            let step = super::algebra::pair_theta(theta, &self.shift.images[i]);
            let next = &offs[i] - &step;
            offs.push(next);
        }
        let size = r + 1;
        let sum = offs.iter().fold(CycScalar::zero(m), |acc, x| &acc + x);
        let h1 = -sum.try_div(&CycScalar::from_int(m, size as i64))?;
        let one = a.identity();
        let diag = offs.iter().map(|o| one.scale(&(&h1 + o))).collect();
        Ok(LieElement::Matrix(MatrixElement::diagonal(a, diag)))
    }

    /// ω(t^γ ∂_θ) = t^γ h_θ.
    pub fn omega(&self, d: &Graded) -> Result<LieElement> {
        let m = self.order();
        let mut out = self.source.model().zero();
        for (g, c) in d {
            let theta = DerBasis::new(g).theta(c, m);
            out = out.add(&self.source.centroid_apply(g, &self.h_theta(&theta)?)?)?;
        }
        Ok(out)
    }

    /// ω#(l)(e) = (l | ω(e)).
    pub fn omega_sharp(&self, l: &LieElement) -> Result<Graded> {
        let mut out = Graded::new();
        for (lambda, comp) in self.source.lambda_components(l) {
            if !self.source.gamma().contains(&lambda) {
                continue;
            }
            let neg = -&lambda;
            let dim = DerBasis::new(&neg).dim();
            let vals = (0..dim)
                .map(|k| self.source.form_l(&comp, &self.omega(&self.source.from_d(&neg, k).d)?))
                .collect::<Result<Vec<_>>>()?;
            if vals.iter().any(|v| !v.is_zero()) {
                let e = self.source.zero();
                let cur = EalaElement { c: out, ..e.clone() };
                out = cur.add(&EalaElement { c: [(lambda, vals)].into_iter().collect(), ..e })?.c;
            }
        }
        Ok(out)
    }

    fn c_elem(&self, c: Graded) -> EalaElement {
        EalaElement { c, ..self.source.zero() }
    }

    pub fn apply(&self, x: &EalaElement) -> Result<EalaElement> {
        let m = self.order();
        let om = self.omega(&x.d)?;
        let l = om.scale(&CycScalar::from_int(m, self.omega_sign)).add(&x.l)?;
        let half = CycScalar::from_ratio(m, 1, 2);
        let c = self
            .c_elem(x.c.clone())
            .sub(&self.c_elem(self.omega_sharp(&x.l)?))?
            .sub(&self.c_elem(self.omega_sharp(&om)?).scale(&half))?
            .c;
        Ok(EalaElement { d: x.d.clone(), l, c })
    }

    /// κ(d + l) = ½ω#(ω(d)) + ω#(l).
    fn kappa(&self, x: &EalaElement) -> Result<Graded> {
        let half = CycScalar::from_ratio(self.order(), 1, 2);
        Ok(self
            .c_elem(self.omega_sharp(&self.omega(&x.d)?)?)
            .scale(&half)
            .add(&self.c_elem(self.omega_sharp(&x.l)?))?
            .c)
    }

    /// Bracket preservation, isometry, grading, χ(H) = H^(s) and σ' = σ_D + δ(κ) on the window.
    pub fn verify(&self, w: i64, samples: usize, seed: u64) -> Report {
        let src = &self.source;
        let tgt = &self.target;
        let datum = src.model().datum().clone();
        let basis = src.window_basis(w);
        let nb = basis.len();
        let mut report = Report::new(format!("chi: E({}) -> E({}) (window {w})", src.model().name(), tgt.model().name()));
        let images: Vec<Result<EalaElement>> = basis.iter().map(|h| self.apply(&h.element)).collect();
        if let Some((h, Err(err))) = basis.iter().zip(&images).find(|(_, i)| i.is_err()) {
            report.push(CheckOutcome::fail("map defined on window", json!({"at": wit(h), "error": err.to_string()})));
            return report;
        }
        let images: Vec<EalaElement> = images.into_iter().map(|i| i.unwrap()).collect();

        let hom = par_tally(nb, |i, t| {
            for j in i + 1..nb {
                let lhs = src.bracket(&basis[i].element, &basis[j].element).and_then(|b| self.apply(&b));
                let rhs = tgt.bracket(&images[i], &images[j]);
                let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if tgt.equal(l, r));
                t.check(ok, || json!([wit(&basis[i]), wit(&basis[j])]));
            }
        });
        report.push(hom.outcome("bracket preserved"));

        // the global scalar is read off the first nonzero pairing
        let mut scalar: Option<CycScalar> = None;
        'outer: for i in 0..nb {
            for j in i..nb {
                let a = src.form(&basis[i].element, &basis[j].element).unwrap();
                if !a.is_zero() {
                    scalar = Some(tgt.form(&images[i], &images[j]).unwrap().try_div(&a).unwrap());
                    break 'outer;
                }
            }
        }
        let scalar = scalar.unwrap_or_else(|| CycScalar::one(self.order()));
        let iso = par_tally(nb, |i, t| {
            for j in i..nb {
                let a = src.form(&basis[i].element, &basis[j].element).unwrap();
                let b = tgt.form(&images[i], &images[j]).unwrap();
                t.check(b == &a * &scalar, || json!([wit(&basis[i]), wit(&basis[j])]));
            }
        });
        report.push(iso.outcome("isometry up to a global scalar").with_detail(format!("scalar = {scalar}")));

        let mut grading = Tally::default();
        for (h, img) in basis.iter().zip(&images) {
            let s_alpha = self.shift.apply(&datum, &h.root).expect("roots lie in Q");
            let want = (h.root.clone(), &h.degree - &s_alpha);
            let labels = tgt.labels(img);
            grading.check(!labels.is_empty() && labels.iter().all(|l| *l == want), || json!({"at": wit(h), "labels": labels}));
        }
        report.push(grading.outcome("grading (α, λ) -> (α, λ - s(α))"));

        let zero_label = (datum.zero(), LatticeVec::zero(src.model().lattice_rank()));
        let himgs: Vec<EalaElement> = src.h_basis().iter().map(|x| self.apply(x).unwrap()).collect();
        let inside = himgs.iter().all(|x| tgt.labels(x).iter().all(|l| *l == zero_label));
        let r = rank(&himgs.iter().map(|x| coords(tgt, x)).collect::<Vec<_>>());
        let dim = tgt.h_basis().len();
        report.push(CheckOutcome::from_bool("H maps onto H^(s)", inside && r == dim, || json!({"rank": r, "dim": dim, "inside": inside})));

        let ms: Vec<&EalaHomogeneous> = basis.iter().filter(|h| h.part != Part::C).collect();
        let pairs = triples(ms.len(), samples, seed);
        let cocycle = par_tally(pairs.len(), |p, t| {
            let (i, j, _) = pairs[p];
            let ok = self.cocycle_identity(&ms[i].element, &ms[j].element).unwrap_or(false);
            t.check(ok, || json!([wit(ms[i]), wit(ms[j])]));
        });
        report.push(cocycle.outcome("sigma' = sigma_D + delta(kappa)"));
        report
    }

    /// σ'(m₁,m₂) = σ_{D^(s)}(ξm₁, ξm₂) against σ_D(m₁,m₂) + δκ(m₁,m₂) for m_i ∈ D ⊕ L.
    pub fn cocycle_identity(&self, m1: &EalaElement, m2: &EalaElement) -> Result<bool> {
        let src = &self.source;
        let xi = |x: &EalaElement| -> Result<LieElement> { self.omega(&x.d)?.add(&x.l) };
        let lhs = self.target.sigma(&xi(m1)?, &xi(m2)?)?;
        let bracket = src.bracket(m1, m2)?;
        let bracket_m = EalaElement { c: Graded::new(), ..bracket };
        let delta = self
            .c_elem(src.contragredient(&m2.d, &self.kappa(m1)?))
            .sub(&self.c_elem(src.contragredient(&m1.d, &self.kappa(m2)?)))?
            .sub(&self.c_elem(self.kappa(&bracket_m)?))?;
        let rhs = self.c_elem(src.sigma(&m1.l, &m2.l)?).add(&delta)?.c;
        Ok(lhs == rhs)
    }
}

fn wit(h: &EalaHomogeneous) -> serde_json::Value {
    json!({"part": h.part, "root": h.root, "degree": h.degree})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::StructuredTorus;

    fn sl2() -> Arc<LieTorus> {
        LieTorus::sl(1, &StructuredTorus::laurent(1, 2)).unwrap()
    }

    #[test]
    fn h_theta_is_half_coroot() {
        let chi = chi_iso(&sl2(), &ShiftHom::new(vec![LatticeVec::from([1])])).unwrap();
        let h = chi.h_theta(&[CycScalar::one(2)]).unwrap();
        let mat = h.as_matrix().unwrap();
        let zero = LatticeVec::from([0]);
        assert_eq!(mat.entry(0, 0).coefficient(&zero), CycScalar::from_ratio(2, 1, 2));
        assert_eq!(mat.entry(1, 1).coefficient(&zero), CycScalar::from_ratio(2, -1, 2));
    }

    #[test]
    fn zero_shift_is_identity() {
        let chi = chi_iso(&sl2(), &ShiftHom::zero(1, 1)).unwrap();
        for h in chi.source.window_basis(1) {
            assert!(chi.target.equal(&chi.apply(&h.element).unwrap(), &h.element));
        }
    }

    #[test]
    fn sl2_shift_verifies() {
        let chi = chi_iso(&sl2(), &ShiftHom::new(vec![LatticeVec::from([1])])).unwrap();
        let r = chi.verify(1, 2000, 0);
        assert!(r.all_passed(), "{:?}", r.summary_lines());
    }

    #[test]
    fn perturbed_chi_fails() {
        let chi = chi_iso(&sl2(), &ShiftHom::new(vec![LatticeVec::from([1])])).unwrap().perturbed();
        let r = chi.verify(1, 2000, 0);
        assert!(!r.get("bracket preserved").unwrap().passed);
        assert!(r.get("bracket preserved").unwrap().witness.is_some());
    }
}
