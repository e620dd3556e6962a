use std::collections::BTreeMap;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::linalg::{add_to, SparseVec};
use crate::scalar::CycScalar;
use crate::torus::{same_torus, Monomial, StructuredTorus, TorusElement};

fn empty() -> LatticeVec {
    LatticeVec::zero(0)
}

/// A square matrix over an associative torus, stored by nonzero entry.
#[derive(Clone, Debug)]
pub struct MatrixElement {
    torus: Arc<StructuredTorus>,
    size: usize,
    entries: BTreeMap<(usize, usize), TorusElement>,
}

impl PartialEq for MatrixElement {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.entries == other.entries
    }
}

impl MatrixElement {
    pub fn zero(torus: &Arc<StructuredTorus>, size: usize) -> Self {
        MatrixElement { torus: torus.clone(), size, entries: BTreeMap::new() }
    }

    /// x e_ij (0-based indices).
    pub fn unit(torus: &Arc<StructuredTorus>, size: usize, i: usize, j: usize, x: TorusElement) -> Self {
        let mut m = Self::zero(torus, size);
        m.add_entry(i, j, &x);
        m
    }

    pub fn diagonal(torus: &Arc<StructuredTorus>, xs: Vec<TorusElement>) -> Self {
        let mut m = Self::zero(torus, xs.len());
        for (i, x) in xs.iter().enumerate() {
            m.add_entry(i, i, x);
        }
        m
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        &self.torus
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), TorusElement> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> TorusElement {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| TorusElement::zero(&self.torus))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, x: &TorusElement) {
        if x.is_zero() {
            return;
        }
        let sum = match self.entries.get(&(i, j)) {
            Some(y) => y + x,
            None => x.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), sum);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::ModelMismatch(format!("matrix sizes {} and {}", self.size, other.size)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((i, j), x) in &other.entries {
            if !same_torus(&self.torus, x.torus()) {
                return Err(Error::IncompatibleAlgebra);
            }
            out.add_entry(*i, *j, x);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.torus, self.size);
        for ((i, j), x) in &self.entries {
            out.add_entry(*i, *j, &x.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, &TorusElement)>> = BTreeMap::new();
        for ((k, j), y) in &other.entries {
            by_row.entry(*k).or_default().push((*j, y));
        }
        let mut out = Self::zero(&self.torus, self.size);
        for ((i, k), x) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, y) in row {
                    out.add_entry(*i, *j, &x.try_mul(y)?);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        xy.add(&yx.scale(&CycScalar::from_int(self.torus.order(), -1)))
    }

    /// Apply a map to every entry, keeping positions; `torus` is the parent of the results.
    pub fn map_entries(&self, torus: &Arc<StructuredTorus>, f: impl Fn(&TorusElement) -> Result<TorusElement>) -> Result<Self> {
        let mut out = Self::zero(torus, self.size);
        for ((i, j), x) in &self.entries {
            out.add_entry(*i, *j, &f(x)?);
        }
        Ok(out)
    }

    /// −Xᵗ with entries reinterpreted over `torus`.
    pub fn negative_transpose(&self, torus: &Arc<StructuredTorus>) -> Result<Self> {
        let mut out = Self::zero(torus, self.size);
        for ((i, j), x) in &self.entries {
            out.add_entry(*j, *i, &(-&x.rebase(torus)?));
        }
        Ok(out)
    }

    pub fn trace(&self) -> TorusElement {
        (0..self.size).fold(TorusElement::zero(&self.torus), |acc, i| &acc + &self.entry(i, i))
    }

    fn coords_into(&self, v: &mut SparseVec) {
        for ((i, j), x) in &self.entries {
            for (d, c) in x.terms() {
                add_to(v, &(((i * self.size + j) as u32), d.clone(), empty()), c);
            }
        }
    }
}

/// The TKK algebra A₁ ⊕ V_{A,A} ⊕ A₋₁ of a Jordan torus.
///
/// The inner part is a formal combination Σ c·V_{a_x, a_y} of operators on
/// basis symbols; two inner parts are compared by their action on a window.
#[derive(Clone, Debug)]
pub struct TkkElement {
    torus: Arc<StructuredTorus>,
    pub plus: TorusElement,
    pub inner: BTreeMap<(LatticeVec, LatticeVec), CycScalar>,
    pub minus: TorusElement,
}

impl TkkElement {
    pub fn zero(torus: &Arc<StructuredTorus>) -> Self {
        TkkElement {
            torus: torus.clone(),
            plus: TorusElement::zero(torus),
            inner: BTreeMap::new(),
            minus: TorusElement::zero(torus),
        }
    }

    pub fn from_plus(x: TorusElement) -> Self {
        let mut e = Self::zero(x.torus());
        e.plus = x;
        e
    }

    pub fn from_minus(x: TorusElement) -> Self {
        let mut e = Self::zero(x.torus());
        e.minus = x;
        e
    }

    /// c·V_{a_x, a_y}
    pub fn from_inner(torus: &Arc<StructuredTorus>, c: CycScalar, x: LatticeVec, y: LatticeVec) -> Self {
        let mut e = Self::zero(torus);
        e.add_inner(&x, &y, &c);
        e
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        &self.torus
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero() && self.inner.is_empty()
    }

    pub fn add_inner(&mut self, x: &LatticeVec, y: &LatticeVec, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let k = (x.clone(), y.clone());
        match self.inner.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.inner.remove(&k);
                }
            }
            None => {
                self.inner.insert(k, c.clone());
            }
        }
    }

    /// Add c·V_{p,q} for arbitrary p, q, expanded bilinearly.
    fn add_v(&mut self, p: &TorusElement, q: &TorusElement, c: &CycScalar) {
        for (x, a) in p.terms() {
            for (y, b) in q.terms() {
                self.add_inner(x, y, &(&(a * b) * c));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.plus = self.plus.try_add(&other.plus)?;
        out.minus = self.minus.try_add(&other.minus)?;
        for ((x, y), c) in &other.inner {
            out.add_inner(x, y, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.torus);
        out.plus = self.plus.scale(c);
        out.minus = self.minus.scale(c);
        for ((x, y), a) in &self.inner {
            out.add_inner(x, y, &(a * c));
        }
        out
    }

    /// T z for the inner part T.
    pub fn act(&self, z: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero(&self.torus);
        for ((x, y), c) in &self.inner {
            for (w, b) in z.terms() {
                let t = self.torus.triple_coefficient(x, y, w);
                if !t.is_zero() {
                    out.add_term(&(&(x + y) + w), &(&(c * b) * &t));
                }
            }
        }
        out
    }

    /// T* z = −Σ c·{a_y, a_x, z}.
    pub fn act_star(&self, z: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero(&self.torus);
        for ((x, y), c) in &self.inner {
            for (w, b) in z.terms() {
                let t = self.torus.triple_coefficient(y, x, w);
                if !t.is_zero() {
                    out.add_term(&(&(x + y) + w), &-&(&(c * b) * &t));
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if !same_torus(&self.torus, &other.torus) {
            return Err(Error::IncompatibleAlgebra);
        }
        let t = &self.torus;
        let one = CycScalar::one(t.order());
        let mut out = Self::zero(t);
        out.plus = &self.act(&other.plus) - &other.act(&self.plus);
        out.minus = &self.act_star(&other.minus) - &other.act_star(&self.minus);
        out.add_v(&self.plus, &other.minus, &one);
        out.add_v(&other.plus, &self.minus, &-&one);
        // [V_{x,y}, V_{z,w}] = V_{{x,y,z},w} − V_{z,{y,x,w}}
        for ((x, y), a) in &self.inner {
            for ((z, w), b) in &other.inner {
                let ab = a * b;
                let t1 = t.triple_coefficient(x, y, z);
                if !t1.is_zero() {
                    out.add_inner(&(&(x + y) + z), w, &(&ab * &t1));
                }
                let t2 = t.triple_coefficient(y, x, w);
                if !t2.is_zero() {
                    out.add_inner(z, &(&(y + x) + w), &-&(&ab * &t2));
                }
            }
        }
        Ok(out)
    }

    /// Inner degree x + y of each term.
    pub fn inner_degrees(&self) -> impl Iterator<Item = LatticeVec> + '_ {
        self.inner.keys().map(|(x, y)| x + y)
    }

    fn coords_into(&self, v: &mut SparseVec, probe: &[LatticeVec]) {
        for (d, c) in self.plus.terms() {
            add_to(v, &(0, d.clone(), empty()), c);
        }
        for (d, c) in self.minus.terms() {
            add_to(v, &(1, d.clone(), empty()), c);
        }
        if self.inner.is_empty() {
            return;
        }
        for mu in probe {
            let a = TorusElement::from_monomial(&self.torus, Monomial::new(mu.clone(), CycScalar::one(self.torus.order())));
            for (d, c) in self.act(&a).terms() {
                add_to(v, &(2, mu.clone(), d.clone()), c);
            }
            for (d, c) in self.act_star(&a).terms() {
                add_to(v, &(3, mu.clone(), d.clone()), c);
            }
        }
    }
}

/// An element of one of the shipped Lie tori.
#[derive(Clone, Debug)]
pub enum LieElement {
    Matrix(MatrixElement),
    Tkk(TkkElement),
}

impl LieElement {
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (LieElement::Matrix(a), LieElement::Matrix(b)) => Ok(LieElement::Matrix(a.add(b)?)),
            (LieElement::Tkk(a), LieElement::Tkk(b)) => Ok(LieElement::Tkk(a.add(b)?)),
            _ => Err(Error::ModelMismatch("matrix and TKK elements".into())),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        match self {
            LieElement::Matrix(a) => LieElement::Matrix(a.scale(c)),
            LieElement::Tkk(a) => LieElement::Tkk(a.scale(c)),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycScalar::from_int(self.torus().order(), -1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        match self {
            LieElement::Matrix(a) => a.torus(),
            LieElement::Tkk(a) => a.torus(),
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (LieElement::Matrix(a), LieElement::Matrix(b)) => Ok(LieElement::Matrix(a.commutator(b)?)),
            (LieElement::Tkk(a), LieElement::Tkk(b)) => Ok(LieElement::Tkk(a.bracket(b)?)),
            _ => Err(Error::ModelMismatch("matrix and TKK elements".into())),
        }
    }

    /// Coordinates in a fixed sparse basis; TKK inner parts are coordinatized
    /// by their action on the probe degrees.
    pub fn coords(&self, probe: &[LatticeVec]) -> SparseVec {
        let mut v = SparseVec::new();
        match self {
            LieElement::Matrix(a) => a.coords_into(&mut v),
            LieElement::Tkk(a) => a.coords_into(&mut v, probe),
        }
        v
    }

    pub fn as_matrix(&self) -> Option<&MatrixElement> {
        match self {
            LieElement::Matrix(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_tkk(&self) -> Option<&TkkElement> {
        match self {
            LieElement::Tkk(a) => Some(a),
            _ => None,
        }
    }
}

impl Serialize for MatrixElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|((i, j), x)| serde_json::json!({"i": i + 1, "j": j + 1, "x": x}))
            .collect();
        let mut st = serializer.serialize_struct("MatrixElement", 2)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl Serialize for TkkElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let inner: Vec<_> = self
            .inner
            .iter()
            .map(|((x, y), c)| serde_json::json!({"coeff": c, "x": x, "y": y}))
            .collect();
        let mut st = serializer.serialize_struct("TkkElement", 3)?;
        st.serialize_field("plus", &self.plus)?;
        st.serialize_field("inner", &inner)?;
        st.serialize_field("minus", &self.minus)?;
        st.end()
    }
}

impl Serialize for LieElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LieElement::Matrix(a) => a.serialize(serializer),
            LieElement::Tkk(a) => a.serialize(serializer),
        }
    }
}
