use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::element::{LieElement, MatrixElement, TkkElement};
use crate::error::{Error, Result};
use crate::lattice::{window, LatticeVec, Root, RootDatum, ShiftHom};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::CycScalar;
use crate::torus::{commutator_degree_test, Flavor, Involution, Monomial, StructuredTorus, TorusElement};

pub const DEFAULT_PROBE: i64 = 2;

#[derive(Clone, Debug)]
pub enum ModelKind {
    /// TKK(A) for a Jordan torus A, type A_1.
    Tkk { a: Arc<StructuredTorus> },
    /// sl_{r+1}(A) for an associative torus A, type A_r.
    Sl { r: usize, a: Arc<StructuredTorus> },
    /// ssp_{2r}(A, ι), type C_r.
    Ssp { r: usize, iota: Involution },
}

/// A Lie torus together with the grading shift s of an isotope L^(s):
/// (L^(s))_α^λ = L_α^{λ+s(α)}.
pub struct LieTorus {
    kind: ModelKind,
    datum: RootDatum,
    shift: ShiftHom,
    probe_window: i64,
    probe: Vec<LatticeVec>,
    inner_cache: Mutex<HashMap<LatticeVec, Vec<LieElement>>>,
}

impl Clone for LieTorus {
    fn clone(&self) -> Self {
        LieTorus {
            kind: self.kind.clone(),
            datum: self.datum.clone(),
            shift: self.shift.clone(),
            probe_window: self.probe_window,
            probe: self.probe.clone(),
            inner_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for LieTorus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieTorus").field("name", &self.name()).field("shift", &self.shift).finish()
    }
}

/// A homogeneous basis element of the window basis.
#[derive(Clone, Debug, Serialize)]
pub struct Homogeneous {
    pub root: Root,
    pub degree: LatticeVec,
    pub element: LieElement,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ComponentDim {
    pub root: Root,
    pub degree: LatticeVec,
    pub dim: usize,
}

impl LieTorus {
    fn build(kind: ModelKind, datum: RootDatum, n: usize) -> Arc<Self> {
        let mut m = LieTorus {
            kind,
            datum: datum.clone(),
            shift: ShiftHom::zero(datum.rank, n),
            probe_window: DEFAULT_PROBE,
            probe: Vec::new(),
            inner_cache: Mutex::new(HashMap::new()),
        };
        m.probe = m.torus().support_window(DEFAULT_PROBE);
        Arc::new(m)
    }

    pub fn tkk(a: &Arc<StructuredTorus>) -> Result<Arc<Self>> {
        if a.flavor() != Flavor::Jordan {
            return Err(Error::Flavor { expected: "jordan".into(), found: a.flavor().to_string() });
        }
        Ok(Self::build(ModelKind::Tkk { a: a.clone() }, RootDatum::a(1), a.rank()))
    }

    pub fn sl(r: usize, a: &Arc<StructuredTorus>) -> Result<Arc<Self>> {
        if a.flavor() != Flavor::Associative {
            return Err(Error::Flavor { expected: "associative".into(), found: a.flavor().to_string() });
        }
        if r == 0 {
            return Err(Error::Validation("sl needs r ≥ 1".into()));
        }
        Ok(Self::build(ModelKind::Sl { r, a: a.clone() }, RootDatum::a(r), a.rank()))
    }

    pub fn ssp(r: usize, iota: &Involution) -> Result<Arc<Self>> {
        if r < 2 {
            return Err(Error::Validation("ssp needs r ≥ 2".into()));
        }
        let n = iota.torus().rank();
        Ok(Self::build(ModelKind::Ssp { r, iota: iota.clone() }, RootDatum::c(r), n))
    }

    /// The same model with TKK inner parts compared on [-w, w]^n.
    pub fn with_probe(&self, w: i64) -> Arc<Self> {
        let mut m = self.clone();
        m.probe_window = w;
        m.probe = m.torus().support_window(w);
        Arc::new(m)
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn shift(&self) -> &ShiftHom {
        &self.shift
    }

    pub fn probe_window(&self) -> i64 {
        self.probe_window
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        match &self.kind {
            ModelKind::Tkk { a } | ModelKind::Sl { a, .. } => a,
            ModelKind::Ssp { iota, .. } => iota.torus(),
        }
    }

    pub fn involution(&self) -> Option<&Involution> {
        match &self.kind {
            ModelKind::Ssp { iota, .. } => Some(iota),
            _ => None,
        }
    }

    pub fn lattice_rank(&self) -> usize {
        self.torus().rank()
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            ModelKind::Tkk { .. } => "tkk",
            ModelKind::Sl { .. } => "sl",
            ModelKind::Ssp { .. } => "ssp",
        }
    }

    pub fn name(&self) -> String {
        let base = match &self.kind {
            ModelKind::Tkk { a } => format!("TKK({})", a.kind_name()),
            ModelKind::Sl { r, a } => format!("sl_{}({})", r + 1, a.kind_name()),
            ModelKind::Ssp { r, iota } => format!("ssp_{}({}, e={:?})", 2 * r, iota.torus().kind_name(), iota.generator_signs()),
        };
        if self.shift.is_zero() {
            base
        } else {
            let imgs: Vec<String> = self.shift.images.iter().map(|v| v.to_string()).collect();
            format!("{base}^(s = {})", imgs.join(";"))
        }
    }

    pub fn is_same_algebra(&self, other: &LieTorus) -> bool {
        match (&self.kind, &other.kind) {
            (ModelKind::Tkk { a }, ModelKind::Tkk { a: b }) => a == b,
            (ModelKind::Sl { r, a }, ModelKind::Sl { r: r2, a: b }) => r == r2 && a == b,
            (ModelKind::Ssp { r, iota }, ModelKind::Ssp { r: r2, iota: i2 }) => r == r2 && iota == i2,
            _ => false,
        }
    }

    /// Matrix size for SL and SSP.
    pub fn size(&self) -> Option<usize> {
        match &self.kind {
            ModelKind::Tkk { .. } => None,
            ModelKind::Sl { r, .. } => Some(r + 1),
            ModelKind::Ssp { r, .. } => Some(2 * r),
        }
    }

    /// Root-space weight of matrix row/column p.
    pub fn weight(&self, p: usize) -> Root {
        match &self.kind {
            ModelKind::Ssp { r, .. } if p >= *r => -&self.datum.eps(p - r),
            _ => self.datum.eps(p),
        }
    }

    fn tkk_alpha(&self) -> Root {
        LatticeVec::from([1, -1])
    }

    pub fn zero(&self) -> LieElement {
        match &self.kind {
            ModelKind::Tkk { a } => LieElement::Tkk(TkkElement::zero(a)),
            _ => LieElement::Matrix(MatrixElement::zero(self.torus(), self.size().unwrap())),
        }
    }

    fn shift_of(&self, alpha: &Root) -> LatticeVec {
        self.shift.apply(&self.datum, alpha).expect("roots lie in the root lattice")
    }

    fn check_element(&self, x: &LieElement) -> Result<()> {
        let ok = match (&self.kind, x) {
            (ModelKind::Tkk { .. }, LieElement::Tkk(_)) => true,
            (ModelKind::Sl { .. } | ModelKind::Ssp { .. }, LieElement::Matrix(m)) => Some(m.size()) == self.size(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ModelMismatch(format!("element does not belong to {}", self.name())))
        }
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        x.bracket(y)
    }

    pub fn coords(&self, x: &LieElement) -> SparseVec {
        x.coords(&self.probe)
    }

    pub fn is_zero(&self, x: &LieElement) -> bool {
        self.coords(x).is_empty()
    }

    pub fn equal(&self, x: &LieElement, y: &LieElement) -> bool {
        self.coords(x) == self.coords(y)
    }

    fn mono(&self, mu: &LatticeVec) -> TorusElement {
        TorusElement::from_monomial(self.torus(), Monomial::new(mu.clone(), CycScalar::one(self.torus().order())))
    }

    fn trace_free(&self, mu: &LatticeVec) -> bool {
        // true when every diagonal choice in degree μ satisfies the trace condition
        let a = self.torus();
        match &self.kind {
            ModelKind::Sl { .. } => commutator_degree_test(a, mu).unwrap_or(false),
            ModelKind::Ssp { iota, .. } => iota.is_hermitian(mu) || commutator_degree_test(a, mu).unwrap_or(false),
            ModelKind::Tkk { .. } => true,
        }
    }

    /// Basis of L_α^μ in the untwisted grading.
    fn base_basis(&self, alpha: &Root, mu: &LatticeVec) -> Vec<LieElement> {
        let a = self.torus();
        if mu.rank() != a.rank() {
            return Vec::new();
        }
        // the zero-root part of a TKK algebra lives on S + S, everything else on S
        let inner = matches!(self.kind, ModelKind::Tkk { .. }) && alpha.is_zero();
        if !inner && !a.in_support(mu) {
            return Vec::new();
        }
        match &self.kind {
            ModelKind::Tkk { .. } => {
                if *alpha == self.tkk_alpha() {
                    vec![LieElement::Tkk(TkkElement::from_plus(self.mono(mu)))]
                } else if *alpha == -&self.tkk_alpha() {
                    vec![LieElement::Tkk(TkkElement::from_minus(self.mono(mu)))]
                } else if alpha.is_zero() {
                    self.inner_basis(mu)
                } else {
                    Vec::new()
                }
            }
            ModelKind::Sl { r, .. } => {
                let size = r + 1;
                let x = self.mono(mu);
                if alpha.is_zero() {
                    let unit = |i: usize| MatrixElement::unit(a, size, i, i, x.clone());
                    if self.trace_free(mu) {
                        (0..size).map(|i| LieElement::Matrix(unit(i))).collect()
                    } else {
                        (0..size - 1)
                            .map(|i| LieElement::Matrix(unit(i).add(&unit(i + 1).scale(&a.scalar(-1))).unwrap()))
                            .collect()
                    }
                } else {
                    self.position_of(alpha, size)
                        .map(|(i, j)| vec![LieElement::Matrix(MatrixElement::unit(a, size, i, j, x))])
                        .unwrap_or_default()
                }
            }
            ModelKind::Ssp { r, iota } => {
                let r = *r;
                let size = 2 * r;
                let x = self.mono(mu);
                let xbar = iota.apply(&x);
                let hermitian = iota.is_hermitian(mu);
                let pair = |p: (usize, usize), q: (usize, usize), y: &TorusElement| {
                    let mut m = MatrixElement::unit(a, size, p.0, p.1, x.clone());
                    m.add_entry(q.0, q.1, y);
                    LieElement::Matrix(m)
                };
                if alpha.is_zero() {
                    let ell = |i: usize| pair((i, i), (i + r, i + r), &-&xbar);
                    if self.trace_free(mu) {
                        (0..r).map(ell).collect()
                    } else {
                        (0..r - 1)
                            .map(|i| {
                                let d = ell(i + 1).neg();
                                ell(i).add(&d).unwrap()
                            })
                            .collect()
                    }
                } else {
                    let Some((i, j)) = self.position_of(alpha, size) else { return Vec::new() };
                    match (i < r, j < r) {
                        // ℓ_ij
                        (true, true) => vec![pair((i, j), (j + r, i + r), &-&xbar)],
                        // m_ij, i ≤ j (long root when i = j)
                        (true, false) => {
                            let jj = j - r;
                            if i == jj {
                                if hermitian {
                                    vec![LieElement::Matrix(MatrixElement::unit(a, size, i, j, x))]
                                } else {
                                    Vec::new()
                                }
                            } else {
                                vec![pair((i, j), (jj, i + r), &xbar)]
                            }
                        }
                        // n_ij
                        (false, true) => {
                            let ii = i - r;
                            if ii == j {
                                if hermitian {
                                    vec![LieElement::Matrix(MatrixElement::unit(a, size, i, j, x))]
                                } else {
                                    Vec::new()
                                }
                            } else {
                                vec![pair((i, j), (j + r, ii), &xbar)]
                            }
                        }
                        (false, false) => Vec::new(),
                    }
                }
            }
        }
    }

    /// Canonical matrix position (i, j) with weight(i) − weight(j) = α.
    ///
    /// For SSP each root has two positions; the canonical one has i < r, or
    /// for negative long/mixed roots i ≥ r with the smaller block index first.
    fn position_of(&self, alpha: &Root, size: usize) -> Option<(usize, usize)> {
        match &self.kind {
            ModelKind::Ssp { r, .. } => {
                let r = *r;
                for i in 0..r {
                    for j in 0..r {
                        if i != j && &(&self.weight(i) - &self.weight(j)) == alpha {
                            return Some((i, j));
                        }
                    }
                }
                for i in 0..r {
                    for j in i..r {
                        if &(&self.weight(i) - &self.weight(j + r)) == alpha {
                            return Some((i, j + r));
                        }
                        if &(&self.weight(i + r) - &self.weight(j)) == alpha {
                            return Some((i + r, j));
                        }
                    }
                }
                None
            }
            _ => {
                for i in 0..size {
                    for j in 0..size {
                        if i != j && &(&self.weight(i) - &self.weight(j)) == alpha {
                            return Some((i, j));
                        }
                    }
                }
                None
            }
        }
    }

    fn inner_basis(&self, mu: &LatticeVec) -> Vec<LieElement> {
        if let Some(b) = self.inner_cache.lock().unwrap().get(mu) {
            return b.clone();
        }
        let a = self.torus();
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        for x in a.support_window(self.probe_window) {
            let y = mu - &x;
            if !a.in_support(&y) {
                continue;
            }
            let e = LieElement::Tkk(TkkElement::from_inner(a, a.scalar(1), x, y));
            if ech.insert(&self.coords(&e)) {
                out.push(e);
            }
        }
        self.inner_cache.lock().unwrap().insert(mu.clone(), out.clone());
        out
    }

    /// Basis of (L^(s))_α^λ = L_α^{λ+s(α)}.
    pub fn basis(&self, alpha: &Root, lambda: &LatticeVec) -> Vec<LieElement> {
        if alpha.rank() != self.datum.dim() || !self.datum.is_root(alpha) {
            return Vec::new();
        }
        self.base_basis(alpha, &(lambda + &self.shift_of(alpha)))
    }

    /// Homogeneous components in the current (possibly shifted) grading.
    pub fn decompose(&self, x: &LieElement) -> BTreeMap<(Root, LatticeVec), LieElement> {
        let mut base: BTreeMap<(Root, LatticeVec), LieElement> = BTreeMap::new();
        let mut push = |key: (Root, LatticeVec), e: LieElement| match base.remove(&key) {
            Some(prev) => {
                base.insert(key, prev.add(&e).expect("same model"));
            }
            None => {
                base.insert(key, e);
            }
        };
        match x {
            LieElement::Matrix(m) => {
                for ((i, j), t) in m.entries() {
                    let alpha = &self.weight(*i) - &self.weight(*j);
                    for (d, c) in t.terms() {
                        let y = TorusElement::from_monomial(m.torus(), Monomial::new(d.clone(), c.clone()));
                        push((alpha.clone(), d.clone()), LieElement::Matrix(MatrixElement::unit(m.torus(), m.size(), *i, *j, y)));
                    }
                }
            }
            LieElement::Tkk(t) => {
                let alpha = self.tkk_alpha();
                for (d, c) in t.plus.terms() {
                    let y = TorusElement::from_monomial(t.torus(), Monomial::new(d.clone(), c.clone()));
                    push((alpha.clone(), d.clone()), LieElement::Tkk(TkkElement::from_plus(y)));
                }
                for (d, c) in t.minus.terms() {
                    let y = TorusElement::from_monomial(t.torus(), Monomial::new(d.clone(), c.clone()));
                    push((-&alpha, d.clone()), LieElement::Tkk(TkkElement::from_minus(y)));
                }
                for ((p, q), c) in &t.inner {
                    let e = TkkElement::from_inner(t.torus(), c.clone(), p.clone(), q.clone());
                    push((LatticeVec::zero(2), p + q), LieElement::Tkk(e));
                }
            }
        }
        base.into_iter()
            .filter(|(_, e)| !self.is_zero(e))
            .map(|((alpha, mu), e)| {
                let lambda = &mu - &self.shift_of(&alpha);
                ((alpha, lambda), e)
            })
            .collect()
    }

    pub fn component(&self, x: &LieElement, alpha: &Root, lambda: &LatticeVec) -> LieElement {
        self.decompose(x).remove(&(alpha.clone(), lambda.clone())).unwrap_or_else(|| self.zero())
    }

    /// The degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &LieElement) -> Option<(Root, LatticeVec)> {
        let d = self.decompose(x);
        if d.len() == 1 {
            d.into_keys().next()
        } else {
            None
        }
    }

    /// λ ∈ Λ_α for the current grading.
    pub fn in_lambda_support(&self, alpha: &Root, lambda: &LatticeVec) -> bool {
        !self.basis(alpha, lambda).is_empty()
    }

    /// Description of Λ_α = {λ : L_α^λ ≠ 0}.
    pub fn lambda_support(&self, alpha: &Root) -> Result<String> {
        if alpha.is_zero() || !self.datum.is_root(alpha) {
            return Err(Error::Domain(format!("{alpha} is not a nonzero root")));
        }
        let base = match &self.kind {
            ModelKind::Sl { .. } => format!("Z^{}", self.lattice_rank()),
            ModelKind::Tkk { a } => a.support_description(),
            ModelKind::Ssp { .. } if self.datum.is_long(alpha) => "{λ : e(λ) = +1}".to_string(),
            ModelKind::Ssp { .. } => format!("Z^{}", self.lattice_rank()),
        };
        let s = self.shift_of(alpha);
        Ok(if s.is_zero() { base } else { format!("({base}) - {s}") })
    }

    /// s is admissible when s(α_i) ∈ Λ_{α_i} for every base root.
    pub fn admissible(&self, s: &ShiftHom) -> bool {
        self.first_inadmissible(s).is_none()
    }

    fn first_inadmissible(&self, s: &ShiftHom) -> Option<(Root, LatticeVec)> {
        self.datum
            .base()
            .into_iter()
            .zip(&s.images)
            .find(|(alpha, v)| !self.in_lambda_support(alpha, v))
            .map(|(alpha, v)| (alpha, v.clone()))
    }

    pub fn shift_isotope(&self, s: &ShiftHom) -> Result<Arc<Self>> {
        if s.images.len() != self.datum.rank || s.images.iter().any(|v| v.rank() != self.lattice_rank()) {
            return Err(Error::Validation(format!(
                "shift must have {} images of rank {}",
                self.datum.rank,
                self.lattice_rank()
            )));
        }
        if let Some((alpha, v)) = self.first_inadmissible(s) {
            return Err(Error::Inadmissible { root: alpha.to_string(), value: v.to_string() });
        }
        let mut m = self.clone();
        m.shift = self.shift.add(s);
        Ok(Arc::new(m))
    }

    /// The untwisted model underlying an isotope.
    pub fn untwisted(&self) -> Arc<Self> {
        let mut m = self.clone();
        m.shift = ShiftHom::zero(self.datum.rank, self.lattice_rank());
        Arc::new(m)
    }

    /// All basis elements with root in Δ and degree in [-w, w]^n.
    pub fn window_basis(&self, w: i64) -> Vec<Homogeneous> {
        let mut out = Vec::new();
        for alpha in self.datum.roots() {
            for lambda in window(self.lattice_rank(), w) {
                for e in self.basis(&alpha, &lambda) {
                    out.push(Homogeneous { root: alpha.clone(), degree: lambda.clone(), element: e });
                }
            }
        }
        out
    }

    pub fn component_dims(&self, w: i64) -> Vec<ComponentDim> {
        let mut out = Vec::new();
        for alpha in self.datum.roots() {
            for lambda in window(self.lattice_rank(), w) {
                let dim = self.basis(&alpha, &lambda).len();
                if dim > 0 {
                    out.push(ComponentDim { root: alpha.clone(), degree: lambda, dim });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::QMatrix;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    fn laurent_sl(r: usize, n: usize) -> Arc<LieTorus> {
        LieTorus::sl(r, &StructuredTorus::laurent(n, 2)).unwrap()
    }

    #[test]
    fn sl_matrix_unit_bracket() {
        // [e12(t), e23(t²)] = e13(t³)
        let l = laurent_sl(3, 1);
        let a = l.torus().clone();
        let x = MatrixElement::unit(&a, 4, 0, 1, a.basis(&v([1])).unwrap());
        let y = MatrixElement::unit(&a, 4, 1, 2, a.basis(&v([2])).unwrap());
        let z = l.bracket(&LieElement::Matrix(x), &LieElement::Matrix(y)).unwrap();
        let expect = MatrixElement::unit(&a, 4, 0, 2, a.basis(&v([3])).unwrap());
        assert!(l.equal(&z, &LieElement::Matrix(expect)));
    }

    #[test]
    fn tkk_unit_bracket() {
        let j = StructuredTorus::jordan_plus(QMatrix::trivial(1, 2));
        let l = LieTorus::tkk(&j).unwrap();
        let one = j.identity();
        let v11 = l
            .bracket(&LieElement::Tkk(TkkElement::from_plus(one.clone())), &LieElement::Tkk(TkkElement::from_minus(one.clone())))
            .unwrap();
        let t = v11.as_tkk().unwrap();
        assert_eq!(t.inner.len(), 1);
        for d in [v([0]), v([3]), v([-2])] {
            let z = j.basis(&d).unwrap();
            assert_eq!(t.act(&z), z.scale(&j.scalar(2)));
        }
    }

    #[test]
    fn graded_components() {
        let l = laurent_sl(2, 1);
        let a = l.torus().clone();
        let x = LieElement::Matrix(MatrixElement::unit(&a, 3, 0, 1, a.basis(&v([4])).unwrap()));
        let alpha = v([1, -1, 0]);
        assert_eq!(l.degree_of(&x), Some((alpha.clone(), v([4]))));
        assert!(l.equal(&l.component(&x, &alpha, &v([4])), &x));
        assert!(l.is_zero(&l.component(&x, &alpha, &v([3]))));
    }

    #[test]
    fn ssp_long_root_support() {
        let q = QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap();
        let a = StructuredTorus::quantum(q);
        let iota = Involution::new(&a, vec![1, 1]).unwrap();
        let l = LieTorus::ssp(2, &iota).unwrap();
        let long = v([0, 2]);
        assert!(l.in_lambda_support(&long, &v([1, 0])));
        assert!(!l.in_lambda_support(&long, &v([1, 1])));
        assert!(l.in_lambda_support(&v([1, -1]), &v([1, 1])));
        assert!(!l.admissible(&ShiftHom::new(vec![v([0, 0]), v([1, 1])])));
        assert!(l.admissible(&ShiftHom::new(vec![v([1, 1]), v([1, 0])])));
    }

    #[test]
    fn tkk_spin_admissibility() {
        let spin = StructuredTorus::spin(3, 2).unwrap();
        let l = LieTorus::tkk(&spin).unwrap();
        assert!(l.admissible(&ShiftHom::new(vec![v([1, 0, 0])])));
        assert!(!l.admissible(&ShiftHom::new(vec![v([1, 1, 0])])));
        assert!(l.admissible(&ShiftHom::zero(1, 3)));
    }

    #[test]
    fn tkk_inner_support_is_s_plus_s() {
        // [L_x, L_y] a_{e1} = -a_{2e1+e2} for x = a_{e1}, y = a_{e2}, so V_{x,y} ≠ 0
        let l = LieTorus::tkk(&StructuredTorus::spin(3, 2).unwrap()).unwrap();
        let zero = LatticeVec::zero(2);
        assert!(!l.basis(&zero, &v([1, 1, 0])).is_empty());
        assert!(l.basis(&l.tkk_alpha(), &v([1, 1, 0])).is_empty());
    }

    #[test]
    fn shifts_compose() {
        let l = laurent_sl(2, 1);
        let s = ShiftHom::new(vec![v([1]), v([0])]);
        let t = ShiftHom::new(vec![v([-2]), v([3])]);
        let st = l.shift_isotope(&s).unwrap().shift_isotope(&t).unwrap();
        let direct = l.shift_isotope(&s.add(&t)).unwrap();
        let (x, y) = (st.window_basis(1), direct.window_basis(1));
        assert_eq!(x.len(), y.len());
        for (h, k) in x.iter().zip(&y) {
            assert_eq!((&h.root, &h.degree), (&k.root, &k.degree));
            assert!(st.equal(&h.element, &k.element));
        }
        let back = l.shift_isotope(&s).unwrap().shift_isotope(&ShiftHom::new(vec![v([-1]), v([0])])).unwrap();
        assert!(back.shift().is_zero());
    }
}
