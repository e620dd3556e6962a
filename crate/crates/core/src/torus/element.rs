use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{Flavor, StructuredTorus};
use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::scalar::{CycScalar, Rational};

/// A homogeneous element coeff · a_degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Monomial {
    pub degree: LatticeVec,
    pub coeff: CycScalar,
}

impl Monomial {
    pub fn new(degree: LatticeVec, coeff: CycScalar) -> Self {
        Monomial { degree, coeff }
    }
}

/// A finite linear combination of basis symbols of a torus.
#[derive(Clone, Debug)]
pub struct TorusElement {
    torus: Arc<StructuredTorus>,
    terms: BTreeMap<LatticeVec, CycScalar>,
}

pub(crate) fn same_torus(a: &Arc<StructuredTorus>, b: &Arc<StructuredTorus>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        same_torus(&self.torus, &other.torus) && self.terms == other.terms
    }
}

impl TorusElement {
    pub fn zero(torus: &Arc<StructuredTorus>) -> Self {
        TorusElement { torus: torus.clone(), terms: BTreeMap::new() }
    }

    pub fn from_monomial(torus: &Arc<StructuredTorus>, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !m.coeff.is_zero() {
            terms.insert(m.degree, m.coeff);
        }
        TorusElement { torus: torus.clone(), terms }
    }

    /// coeff · a_λ; an error if λ ∉ S.
    pub fn monomial(torus: &Arc<StructuredTorus>, degree: LatticeVec, coeff: CycScalar) -> Result<Self> {
        if !torus.in_support(&degree) {
            return Err(Error::Domain(format!("{degree} is not in the support of the {} torus", torus.kind_name())));
        }
        Ok(Self::from_monomial(torus, Monomial::new(degree, coeff)))
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        &self.torus
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVec, CycScalar> {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(d, c)| Monomial::new(d.clone(), c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, degree: &LatticeVec) -> CycScalar {
        self.terms.get(degree).cloned().unwrap_or_else(|| self.torus.zero_scalar())
    }

    pub fn component(&self, degree: &LatticeVec) -> Self {
        let mut terms = BTreeMap::new();
        if let Some(c) = self.terms.get(degree) {
            terms.insert(degree.clone(), c.clone());
        }
        TorusElement { torus: self.torus.clone(), terms }
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        (self.terms.len() == 1).then(|| self.monomials().next().expect("one term"))
    }

    pub fn add_term(&mut self, degree: &LatticeVec, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(degree) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(degree);
                }
            }
            None => {
                self.terms.insert(degree.clone(), c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_torus(&self.torus, &other.torus) {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebra)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut out = TorusElement::zero(&self.torus);
        for (d, c) in &self.terms {
            out.add_term(d, &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = TorusElement::zero(&self.torus);
        for (d, c) in &self.terms {
            out.add_term(d, &c.scale(r));
        }
        out
    }

    /// Bilinear extension of a_λ a_μ = c(λ,μ) a_{λ+μ}.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = TorusElement::zero(&self.torus);
        for (l, a) in &self.terms {
            for (mu, b) in &other.terms {
                let c = self.torus.product_coefficient(l, mu);
                if !c.is_zero() {
                    out.add_term(&(l + mu), &(&(a * b) * &c));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// The image under a linear map that is diagonal on the basis.
    pub fn map_diagonal(&self, f: impl Fn(&LatticeVec) -> CycScalar) -> Self {
        let mut out = TorusElement::zero(&self.torus);
        for (d, c) in &self.terms {
            out.add_term(d, &(c * &f(d)));
        }
        out
    }

    /// Reinterpret the same coefficients over another torus of equal rank and order.
    pub fn rebase(&self, torus: &Arc<StructuredTorus>) -> Result<Self> {
        if torus.rank() != self.torus.rank() || torus.order() != self.torus.order() {
            return Err(Error::IncompatibleAlgebra);
        }
        if let Some(d) = self.terms.keys().find(|d| !torus.in_support(d)) {
            return Err(Error::Domain(format!("{d} is not in the support of the target torus")));
        }
        Ok(TorusElement { torus: torus.clone(), terms: self.terms.clone() })
    }

    /// Shift all degrees by δ and reinterpret over `torus` (used for isotope bases).
    pub fn regrade(&self, torus: &Arc<StructuredTorus>, delta: &LatticeVec) -> Result<Self> {
        let mut out = TorusElement::zero(torus);
        for (d, c) in &self.terms {
            let nd = d + delta;
            if !torus.in_support(&nd) {
                return Err(Error::Domain(format!("{nd} is not in the support of the target torus")));
            }
            out.add_term(&nd, c);
        }
        Ok(out)
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;
    /// Panics if the parents differ; use `try_add` for a checked sum.
    fn add(self, rhs: &TorusElement) -> TorusElement {
        self.try_add(rhs).expect("elements of different tori")
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self.try_sub(rhs).expect("elements of different tori")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement { torus: self.torus.clone(), terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect() }
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.try_mul(rhs).expect("elements of different tori")
    }
}

/// x · y in the torus.
pub fn torus_mul(x: &TorusElement, y: &TorusElement) -> Result<TorusElement> {
    x.try_mul(y)
}

/// {x,y,z} = 2((xy)z + (zy)x − (zx)y).
pub fn jordan_triple(x: &TorusElement, y: &TorusElement, z: &TorusElement) -> Result<TorusElement> {
    if x.torus.flavor() != Flavor::Jordan {
        return Err(Error::Flavor { expected: "jordan".into(), found: x.torus.flavor().to_string() });
    }
    Ok(triple_unchecked(x, y, z))
}

pub(crate) fn triple_unchecked(x: &TorusElement, y: &TorusElement, z: &TorusElement) -> TorusElement {
    let s = &(&(&(x * y) * z) + &(&(z * y) * x)) - &(&(z * x) * y);
    s.scale_rational(&Rational::from_integer(2.into()))
}

/// U_u v = ½{u, v, u}.
pub fn u_operator(u: &TorusElement, v: &TorusElement) -> Result<TorusElement> {
    Ok(jordan_triple(u, v, u)?.scale_rational(&Rational::new(1.into(), 2.into())))
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for m in self.monomials() {
            seq.serialize_element(&m)?;
        }
        seq.end()
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})a{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::QMatrix;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    #[test]
    fn quantum_product_sign() {
        let q = QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap();
        let a = StructuredTorus::quantum(q);
        let p = torus_mul(&a.basis(&v([0, 1])).unwrap(), &a.basis(&v([1, 0])).unwrap()).unwrap();
        assert_eq!(p, a.basis(&v([1, 1])).unwrap().scale(&CycScalar::from_int(2, -1)));
    }

    #[test]
    fn octonion_nonassociative_witness() {
        let o = StructuredTorus::octonion(0, 2).unwrap();
        let x1 = o.basis(&v([1, 0, 0])).unwrap();
        let x2 = o.basis(&v([0, 1, 0])).unwrap();
        let x3 = o.basis(&v([0, 0, 1])).unwrap();
        let left = &(&x1 * &x2) * &x3;
        let right = &x1 * &(&x2 * &x3);
        let a111 = o.basis(&v([1, 1, 1])).unwrap();
        assert_eq!(left, a111);
        assert_eq!(right, -&a111);
    }

    #[test]
    fn spin_products_and_triples() {
        let a = StructuredTorus::spin(3, 2).unwrap();
        let l1 = a.basis(&v([1, 0, 0])).unwrap();
        let l2 = a.basis(&v([0, 1, 0])).unwrap();
        assert_eq!(&l1 * &l1, a.basis(&v([2, 0, 0])).unwrap());
        assert!((&l1 * &l2).is_zero());
        let t = jordan_triple(&l1, &l1, &l2).unwrap();
        assert_eq!(t, a.basis(&v([2, 1, 0])).unwrap().scale(&CycScalar::from_int(2, 2)));
    }

    #[test]
    fn triple_with_unit() {
        let q = QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap();
        let a = StructuredTorus::jordan_plus(q);
        let one = a.identity();
        let two = CycScalar::from_int(2, 2);
        for (x, z) in [(v([1, 0]), v([0, 1])), (v([1, 1]), v([-1, 2])), (v([0, 0]), v([2, 1]))] {
            let (x, z) = (a.basis(&x).unwrap(), a.basis(&z).unwrap());
            assert_eq!(jordan_triple(&x, &one, &z).unwrap(), (&x * &z).scale(&two));
            assert_eq!(jordan_triple(&one, &one, &z).unwrap(), z.scale(&two));
        }
    }

    #[test]
    fn parent_mismatch() {
        let a = StructuredTorus::laurent(1, 2);
        let b = StructuredTorus::laurent(2, 2);
        let x = a.basis(&v([1])).unwrap();
        let y = b.basis(&v([1, 0])).unwrap();
        assert_eq!(torus_mul(&x, &y), Err(Error::IncompatibleAlgebra));
        assert!(jordan_triple(&x, &x, &x).is_err());
    }
}
