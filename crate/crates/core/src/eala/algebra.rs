use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{window, LatticeVec, Root, Sublattice};
use crate::lie::{LieElement, LieTorus, ModelKind};
use crate::scalar::CycScalar;
use crate::torus::{gamma, StructuredTorus, TorusElement};

/// Basis {∂_θ : θ(γ) = 0} of the skew centroidal derivations of degree γ,
/// each θ an integer covector on Λ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DerBasis {
    pub degree: LatticeVec,
    pub thetas: Vec<LatticeVec>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl DerBasis {
    /// γ = 0: the unit covectors. γ ≠ 0: for the first i with γ_i ≠ 0,
    /// θ_j = (γ_i e_j − γ_j e_i)/g for j ≠ i, with g making θ_j primitive and its e_j entry positive.
    pub fn new(gamma: &LatticeVec) -> Self {
        let n = gamma.rank();
        let thetas = match gamma.0.iter().position(|&x| x != 0) {
            None => (0..n).map(|j| LatticeVec::unit(n, j)).collect(),
            Some(i) => {
                let gi = gamma.0[i];
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let gj = gamma.0[j];
                        let g = gcd(gi, gj) * gi.signum();
                        let mut v = vec![0; n];
                        v[j] = gi / g;
                        v[i] = -gj / g;
                        LatticeVec(v)
                    })
                    .collect()
            }
        };
        DerBasis { degree: gamma.clone(), thetas }
    }

    pub fn dim(&self) -> usize {
        self.thetas.len()
    }

    /// θ = Σ c_k θ_k as a covector.
    pub fn theta(&self, coords: &[CycScalar], m: u32) -> Vec<CycScalar> {
        let n = self.degree.rank();
        let mut out = vec![CycScalar::zero(m); n];
        for (c, t) in coords.iter().zip(&self.thetas) {
            for (o, &x) in out.iter_mut().zip(&t.0) {
                *o += &(c * &CycScalar::from_int(m, x));
            }
        }
        out
    }

    /// Coordinates of a covector θ with θ(γ) = 0; None if θ is not in the span.
    pub fn coords(&self, theta: &[CycScalar]) -> Option<Vec<CycScalar>> {
        let m = theta.first().map(|c| c.order()).unwrap_or(2);
        let coords: Vec<CycScalar> = match self.degree.0.iter().position(|&x| x != 0) {
            None => theta.to_vec(),
            Some(i) => (0..self.degree.rank())
                .filter(|&j| j != i)
                .zip(&self.thetas)
                .map(|(j, t)| theta[j].try_div(&CycScalar::from_int(m, t.0[j])).expect("positive pivot"))
                .collect(),
        };
        (self.theta(&coords, m) == theta).then_some(coords)
    }
}

/// θ(λ) for an integer λ.
pub fn pair_theta(theta: &[CycScalar], lambda: &LatticeVec) -> CycScalar {
    let m = theta.first().map(|c| c.order()).unwrap_or(2);
    theta.iter().zip(&lambda.0).fold(CycScalar::zero(m), |acc, (t, &l)| &acc + &(t * &CycScalar::from_int(m, l)))
}

/// Degree-indexed coefficient vectors, used for both D (in DerBasis(γ)
/// coordinates) and C (covectors on DerBasis(−γ)).
pub type Graded = BTreeMap<LatticeVec, Vec<CycScalar>>;

fn graded_add(a: &Graded, b: &Graded, sign: &CycScalar) -> Graded {
    let mut out = a.clone();
    for (g, v) in b {
        let e = out.entry(g.clone()).or_insert_with(|| vec![CycScalar::zero(sign.order()); v.len()]);
        for (x, y) in e.iter_mut().zip(v) {
            *x += &(y * sign);
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

fn graded_scale(a: &Graded, c: &CycScalar) -> Graded {
    let mut out: Graded = a.iter().map(|(g, v)| (g.clone(), v.iter().map(|x| x * c).collect())).collect();
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

/// An element d + l + f of E = D ⊕ L ⊕ C.
#[derive(Clone, Debug)]
pub struct EalaElement {
    pub d: Graded,
    pub l: LieElement,
    pub c: Graded,
}

impl Serialize for EalaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let part = |g: &Graded| -> Vec<serde_json::Value> {
            g.iter().map(|(d, v)| serde_json::json!({"degree": d, "coords": v})).collect()
        };
        let mut st = s.serialize_struct("EalaElement", 3)?;
        st.serialize_field("d", &part(&self.d))?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("c", &part(&self.c))?;
        st.end()
    }
}

impl EalaElement {
    pub fn add(&self, other: &Self) -> Result<Self> {
        let one = CycScalar::one(self.l.torus().order());
        Ok(EalaElement { d: graded_add(&self.d, &other.d, &one), l: self.l.add(&other.l)?, c: graded_add(&self.c, &other.c, &one) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycScalar::from_int(self.l.torus().order(), -1)))
    }

    pub fn scale(&self, k: &CycScalar) -> Self {
        EalaElement { d: graded_scale(&self.d, k), l: self.l.scale(k), c: graded_scale(&self.c, k) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    D,
    L,
    C,
}

/// A homogeneous window element of E with its (root, Λ-degree) label.
#[derive(Clone, Debug, Serialize)]
pub struct EalaHomogeneous {
    pub part: Part,
    pub root: Root,
    pub degree: LatticeVec,
    pub element: EalaElement,
}

/// E(L, SCDer(L), 0) for a Lie torus with a shipped invariant form.
pub struct Eala {
    model: Arc<LieTorus>,
    gamma: Sublattice,
    central: Mutex<HashMap<LatticeVec, TorusElement>>,
}

impl std::fmt::Debug for Eala {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Eala").field("model", &self.model.name()).finish()
    }
}

impl Eala {
    /// Requires an sl model (over any associative torus); TKK and ssp have no shipped form.
    pub fn new(model: &Arc<LieTorus>) -> Result<Self> {
        if !matches!(model.kind(), ModelKind::Sl { .. }) {
            return Err(Error::NoForm(format!("no invariant form is shipped for {}", model.name())));
        }
        let gamma = gamma(model.torus())?;
        Ok(Eala { model: model.clone(), gamma, central: Mutex::new(HashMap::new()) })
    }

    pub fn model(&self) -> &Arc<LieTorus> {
        &self.model
    }

    pub fn gamma(&self) -> &Sublattice {
        &self.gamma
    }

    fn order(&self) -> u32 {
        self.model.torus().order()
    }

    fn n(&self) -> usize {
        self.model.lattice_rank()
    }

    fn torus(&self) -> &Arc<StructuredTorus> {
        self.model.torus()
    }

    pub fn zero(&self) -> EalaElement {
        EalaElement { d: Graded::new(), l: self.model.zero(), c: Graded::new() }
    }

    pub fn from_l(&self, l: LieElement) -> EalaElement {
        EalaElement { l, ..self.zero() }
    }

    fn unit_vec(&self, dim: usize, k: usize) -> Vec<CycScalar> {
        (0..dim).map(|i| CycScalar::from_int(self.order(), (i == k) as i64)).collect()
    }

    /// t^γ ∂_{θ_k} for the k-th DerBasis(γ) vector.
    pub fn from_d(&self, gamma: &LatticeVec, k: usize) -> EalaElement {
        let dim = DerBasis::new(gamma).dim();
        let mut e = self.zero();
        e.d.insert(gamma.clone(), self.unit_vec(dim, k));
        e
    }

    /// The k-th coordinate covector of C_γ = (D_{−γ})*.
    pub fn from_c(&self, gamma: &LatticeVec, k: usize) -> EalaElement {
        let dim = DerBasis::new(&-gamma).dim();
        let mut e = self.zero();
        e.c.insert(gamma.clone(), self.unit_vec(dim, k));
        e
    }

    /// A multiplicative choice t^γ of central monomials for γ ∈ Γ,
    /// built from the Hermite basis of Γ.
    pub fn centroid_monomial(&self, g: &LatticeVec) -> Result<TorusElement> {
        if let Some(z) = self.central.lock().unwrap().get(g) {
            return Ok(z.clone());
        }
        if !self.gamma.contains(g) {
            return Err(Error::Domain(format!("{g} is not in the centroidal grading group")));
        }
        let a = self.torus();
        let mut rest = g.0.clone();
        let mut z = a.identity();
        for b in self.gamma.basis() {
            let p = b.0.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let k = rest[p] / b.0[p];
            for (r, x) in rest.iter_mut().zip(&b.0) {
                *r -= k * x;
            }
            let base = a.basis(&b)?;
            let step = if k >= 0 {
                base
            } else {
                let m = base.as_monomial().expect("basis element is a monomial");
                TorusElement::from_monomial(a, a.inverse_monomial(&m)?)
            };
            for _ in 0..k.abs() {
                z = z.try_mul(&step)?;
            }
        }
        self.central.lock().unwrap().insert(g.clone(), z.clone());
        Ok(z)
    }

    /// The centroid element t^γ acting on L.
    pub fn centroid_apply(&self, g: &LatticeVec, x: &LieElement) -> Result<LieElement> {
        let z = self.centroid_monomial(g)?;
        let m = x.as_matrix().ok_or_else(|| Error::ModelMismatch("sl element expected".into()))?;
        Ok(LieElement::Matrix(m.map_entries(self.torus(), |e| z.try_mul(e))?))
    }

    /// Components of x by Λ-degree (summed over roots).
    pub fn lambda_components(&self, x: &LieElement) -> BTreeMap<LatticeVec, LieElement> {
        let mut out: BTreeMap<LatticeVec, LieElement> = BTreeMap::new();
        for ((_, lambda), e) in self.model.decompose(x) {
            let v = match out.remove(&lambda) {
                Some(prev) => prev.add(&e).expect("same model"),
                None => e,
            };
            out.insert(lambda, v);
        }
        out
    }

    /// ∂_θ(x) = θ(λ)x on each component of degree λ.
    pub fn degree_derivation_apply(&self, theta: &[CycScalar], x: &LieElement) -> LieElement {
        self.lambda_components(x)
            .into_iter()
            .fold(self.model.zero(), |acc, (l, e)| acc.add(&e.scale(&pair_theta(theta, &l))).expect("same model"))
    }

    /// d(x) for d ∈ D.
    pub fn der_apply(&self, d: &Graded, x: &LieElement) -> Result<LieElement> {
        let mut out = self.model.zero();
        for (g, coords) in d {
            let theta = DerBasis::new(g).theta(coords, self.order());
            let y = self.degree_derivation_apply(&theta, x);
            out = out.add(&self.centroid_apply(g, &y)?)?;
        }
        Ok(out)
    }

    /// [t^{γ₁}∂_{θ₁}, t^{γ₂}∂_{θ₂}] = t^{γ₁+γ₂}(θ₁(γ₂)∂_{θ₂} − θ₂(γ₁)∂_{θ₁}).
    pub fn scder_bracket(&self, d1: &Graded, d2: &Graded) -> Graded {
        let m = self.order();
        let mut out = Graded::new();
        for (g1, c1) in d1 {
            let t1 = DerBasis::new(g1).theta(c1, m);
            for (g2, c2) in d2 {
                let t2 = DerBasis::new(g2).theta(c2, m);
                let (a, b) = (pair_theta(&t1, g2), pair_theta(&t2, g1));
                let theta: Vec<CycScalar> = t2.iter().zip(&t1).map(|(x, y)| &(&a * x) - &(&b * y)).collect();
                let g = g1 + g2;
                let coords = DerBasis::new(&g).coords(&theta).expect("skew derivations are closed under brackets");
                let mut single = Graded::new();
                single.insert(g, coords);
                out = graded_add(&out, &single, &CycScalar::one(m));
            }
        }
        out
    }

    /// (d·f)(e) = −f([d, e]).
    pub fn contragredient(&self, d: &Graded, f: &Graded) -> Graded {
        let m = self.order();
        let mut out = Graded::new();
        for (g1, c1) in d {
            for (g2, f2) in f {
                let g = g1 + g2;
                let dim = DerBasis::new(&-&g).dim();
                let single: Graded = [(g1.clone(), c1.clone())].into();
                let vals: Vec<CycScalar> = (0..dim)
                    .map(|k| {
                        let mut e = Graded::new();
                        e.insert(-&g, self.unit_vec(dim, k));
                        let br = self.scder_bracket(&single, &e);
                        let coords = br.get(&-g2).cloned().unwrap_or_default();
                        -coords.iter().zip(f2).fold(CycScalar::zero(m), |acc, (x, y)| &acc + &(x * y))
                    })
                    .collect();
                let mut part = Graded::new();
                part.insert(g, vals);
                out = graded_add(&out, &part, &CycScalar::one(m));
            }
        }
        out
    }

    /// (X|Y) = coefficient of a_0 in tr(XY).
    pub fn form_l(&self, x: &LieElement, y: &LieElement) -> Result<CycScalar> {
        let (LieElement::Matrix(a), LieElement::Matrix(b)) = (x, y) else {
            return Err(Error::NoForm("the form is defined on sl models".into()));
        };
        Ok(a.mul(b)?.trace().coefficient(&LatticeVec::zero(self.n())))
    }

    /// σ(x,y)(d) = (dx|y), as an element of C.
    pub fn sigma(&self, x: &LieElement, y: &LieElement) -> Result<Graded> {
        let m = self.order();
        let xs = self.lambda_components(x);
        let ys = self.lambda_components(y);
        let mut out = Graded::new();
        for (lx, ex) in &xs {
            for (ly, ey) in &ys {
                let g = lx + ly;
                if !self.gamma.contains(&g) {
                    continue;
                }
                let neg = -&g;
                let basis = DerBasis::new(&neg);
                let shifted = self.centroid_apply(&neg, ex)?;
                let base = self.form_l(&shifted, ey)?;
                if base.is_zero() {
                    continue;
                }
                // (t^{−γ}∂_θ x_λ | y_μ) = θ(λ)(t^{−γ}x_λ | y_μ)
                let vals: Vec<CycScalar> =
                    basis.thetas.iter().map(|t| &base * &CycScalar::from_int(m, t.dot(lx))).collect();
                let mut part = Graded::new();
                part.insert(g, vals);
                out = graded_add(&out, &part, &CycScalar::one(m));
            }
        }
        Ok(out)
    }
}

fn dot(a: &[CycScalar], b: &[CycScalar], m: u32) -> CycScalar {
    a.iter().zip(b).fold(CycScalar::zero(m), |acc, (x, y)| &acc + &(x * y))
}

impl Eala {
    /// f(d) = Σ_γ ⟨f_γ, d_{−γ}⟩.
    pub fn pairing(&self, f: &Graded, d: &Graded) -> CycScalar {
        let m = self.order();
        f.iter().fold(CycScalar::zero(m), |acc, (g, fv)| match d.get(&-g) {
            Some(dv) => &acc + &dot(fv, dv, m),
            None => acc,
        })
    }

    /// [d₁+l₁+f₁, d₂+l₂+f₂] with τ = 0.
    pub fn bracket(&self, a: &EalaElement, b: &EalaElement) -> Result<EalaElement> {
        let m = self.order();
        let one = CycScalar::one(m);
        let neg = CycScalar::from_int(m, -1);
        let d = self.scder_bracket(&a.d, &b.d);
        let l = self
            .model
            .bracket(&a.l, &b.l)?
            .add(&self.der_apply(&a.d, &b.l)?)?
            .sub(&self.der_apply(&b.d, &a.l)?)?;
        let c = graded_add(&self.contragredient(&a.d, &b.c), &self.contragredient(&b.d, &a.c), &neg);
        let c = graded_add(&c, &self.sigma(&a.l, &b.l)?, &one);
        Ok(EalaElement { d, l, c })
    }

    /// (d₁+l₁+f₁ | d₂+l₂+f₂) = (l₁|l₂) + f₁(d₂) + f₂(d₁).
    pub fn form(&self, a: &EalaElement, b: &EalaElement) -> Result<CycScalar> {
        Ok(&(&self.form_l(&a.l, &b.l)? + &self.pairing(&a.c, &b.d)) + &self.pairing(&b.c, &a.d))
    }

    pub fn equal(&self, a: &EalaElement, b: &EalaElement) -> bool {
        a.d == b.d && a.c == b.c && self.model.equal(&a.l, &b.l)
    }

    pub fn is_zero(&self, a: &EalaElement) -> bool {
        a.d.is_empty() && a.c.is_empty() && self.model.is_zero(&a.l)
    }

    /// Γ ∩ [−w, w]^n.
    pub fn gamma_window(&self, w: i64) -> Vec<LatticeVec> {
        window(self.n(), w).into_iter().filter(|g| self.gamma.contains(g)).collect()
    }

    /// Homogeneous basis: D and C over Γ ∩ window, L over the model window.
    pub fn window_basis(&self, w: i64) -> Vec<EalaHomogeneous> {
        let zero_root = self.model.datum().zero();
        let mut out = Vec::new();
        for g in self.gamma_window(w) {
            for k in 0..DerBasis::new(&g).dim() {
                out.push(EalaHomogeneous { part: Part::D, root: zero_root.clone(), degree: g.clone(), element: self.from_d(&g, k) });
            }
        }
        for h in self.model.window_basis(w) {
            out.push(EalaHomogeneous { part: Part::L, root: h.root, degree: h.degree, element: self.from_l(h.element) });
        }
        for g in self.gamma_window(w) {
            for k in 0..DerBasis::new(&-&g).dim() {
                out.push(EalaHomogeneous { part: Part::C, root: zero_root.clone(), degree: g.clone(), element: self.from_c(&g, k) });
            }
        }
        out
    }

    /// (root, Λ-degree) labels of the nonzero homogeneous components.
    pub fn labels(&self, a: &EalaElement) -> Vec<(Root, LatticeVec)> {
        let zero_root = self.model.datum().zero();
        let mut out: Vec<(Root, LatticeVec)> = a.d.keys().chain(a.c.keys()).map(|g| (zero_root.clone(), g.clone())).collect();
        out.extend(self.model.decompose(&a.l).into_keys());
        out.sort();
        out.dedup();
        out
    }

    /// H = D₀ ⊕ h ⊕ C₀ with h = L_0^0.
    pub fn h_basis(&self) -> Vec<EalaElement> {
        let n = self.n();
        let zero = LatticeVec::zero(n);
        let mut out: Vec<EalaElement> = (0..n).map(|k| self.from_d(&zero, k)).collect();
        out.extend(self.model.basis(&self.model.datum().zero(), &zero).into_iter().map(|l| self.from_l(l)));
        out.extend((0..n).map(|k| self.from_c(&zero, k)));
        out
    }

    /// dim E^0 = dim D_0 + dim L^0 + dim C_0.
    pub fn degree_zero_dim(&self) -> usize {
        let zero = LatticeVec::zero(self.n());
        let l0: usize = self.model.datum().roots().iter().map(|a| self.model.basis(a, &zero).len()).sum();
        2 * self.n() + l0
    }

    /// E_c = L ⊕ C: membership is d = 0.
    pub fn core_membership(&self, a: &EalaElement) -> bool {
        a.d.is_empty()
    }

    /// ev(λ)(∂_θ) = θ(λ), as a covector in C_0.
    pub fn ev(&self, lambda: &LatticeVec) -> Vec<CycScalar> {
        DerBasis::new(&LatticeVec::zero(self.n()))
            .thetas
            .iter()
            .map(|t| CycScalar::from_int(self.order(), t.dot(lambda)))
            .collect()
    }
}
