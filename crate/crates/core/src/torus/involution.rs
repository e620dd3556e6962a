use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::Monomial;
use super::{Flavor, StructuredTorus, TorusElement};
use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::quadform::QuadFormF2;
use crate::scalar::CycScalar;

/// A graded involution ι with ι(a_λ) = e(λ) a_λ on an associative torus with
/// generator commutation factors ±1.
///
/// The sign function is computed from the generator signs ι(x_i) = e_i x_i by
/// applying ι to a normal-ordered product of generator powers, then twisted by
/// each recorded isotope element h via ι^(h)(x) = h x̄ h^{−1}.
#[derive(Clone, PartialEq, Debug)]
pub struct Involution {
    torus: Arc<StructuredTorus>,
    gens: Vec<i64>,
    twists: Vec<Monomial>,
}

/// JSON form {"e": [1, -1, ...]}.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvolutionSpec {
    pub e: Vec<i64>,
}

fn mono_mul(t: &StructuredTorus, a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::new(&a.degree + &b.degree, &(&a.coeff * &b.coeff) * &t.structure(&a.degree, &b.degree))
}

fn as_sign(c: &CycScalar) -> Option<i64> {
    if c.is_one() {
        Some(1)
    } else if (-c).is_one() {
        Some(-1)
    } else {
        None
    }
}

impl Involution {
    pub fn new(torus: &Arc<StructuredTorus>, e: Vec<i64>) -> Result<Self> {
        if torus.flavor() != Flavor::Associative {
            return Err(Error::Flavor { expected: "associative".into(), found: torus.flavor().to_string() });
        }
        let n = torus.rank();
        if e.len() != n {
            return Err(Error::Validation(format!("involution needs {n} generator signs, got {}", e.len())));
        }
        if let Some(x) = e.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::Validation(format!("generator sign {x} must be ±1")));
        }
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (LatticeVec::unit(n, i), LatticeVec::unit(n, j));
                let f = torus.structure(&ei, &ej).try_div(&torus.structure(&ej, &ei))?;
                if as_sign(&f).is_none() {
                    return Err(Error::Unsupported(format!(
                        "generators {} and {} commute up to {f}; an involution fixing generators up to sign needs ±1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Involution { torus: torus.clone(), gens: e, twists: Vec::new() })
    }

    pub fn torus(&self) -> &Arc<StructuredTorus> {
        &self.torus
    }

    pub fn twists(&self) -> &[Monomial] {
        &self.twists
    }

    fn generator_power(&self, i: usize, k: i64) -> Monomial {
        let n = self.torus.rank();
        let x = Monomial::new(LatticeVec::unit(n, i), CycScalar::one(self.torus.order()));
        let step = if k < 0 { self.torus.inverse_monomial(&x).expect("generators are invertible") } else { x };
        let mut acc = self.torus.identity_monomial();
        for _ in 0..k.unsigned_abs() {
            acc = mono_mul(&self.torus, &acc, &step);
        }
        acc
    }

    fn base_sign(&self, lambda: &LatticeVec) -> i64 {
        let n = self.torus.rank();
        let powers: Vec<Monomial> = (0..n).map(|i| self.generator_power(i, lambda.0[i])).collect();
        let id = self.torus.identity_monomial();
        let forward = powers.iter().fold(id.clone(), |acc, p| mono_mul(&self.torus, &acc, p));
        let backward = powers.iter().rev().fold(id, |acc, p| mono_mul(&self.torus, &acc, p));
        let gen_sign: i64 = (0..n).map(|i| if lambda.0[i].rem_euclid(2) == 1 { self.gens[i] } else { 1 }).product();
        let ratio = backward.coeff.try_div(&forward.coeff).expect("normal-ordered monomials are nonzero");
        gen_sign * as_sign(&ratio).expect("generator commutation factors are ±1")
    }

    /// h a_λ h^{-1} = χ a_λ; returns χ ∈ {±1}.
    fn conjugation_sign(&self, h: &Monomial, lambda: &LatticeVec) -> i64 {
        let a = Monomial::new(lambda.clone(), CycScalar::one(self.torus.order()));
        let hinv = self.torus.inverse_monomial(h).expect("twist element is invertible");
        let p = mono_mul(&self.torus, &mono_mul(&self.torus, h, &a), &hinv);
        as_sign(&p.coeff).expect("commutation factors are ±1")
    }

    /// e(λ) with ι(a_λ) = e(λ) a_λ.
    pub fn sign(&self, lambda: &LatticeVec) -> i64 {
        self.twists.iter().fold(self.base_sign(lambda), |s, h| s * self.conjugation_sign(h, lambda))
    }

    pub fn is_hermitian(&self, lambda: &LatticeVec) -> bool {
        self.sign(lambda) == 1
    }

    /// The signs ι(x_i) = e_i x_i of the (possibly twisted) involution.
    pub fn generator_signs(&self) -> Vec<i64> {
        let n = self.torus.rank();
        (0..n).map(|i| self.sign(&LatticeVec::unit(n, i))).collect()
    }

    pub fn apply(&self, x: &TorusElement) -> TorusElement {
        x.map_diagonal(|d| CycScalar::from_int(self.torus.order(), self.sign(d)))
    }

    /// The mod-2 quadratic form κ with ι(x_λ) = (−1)^{κ(λ̄)} x_λ.
    pub fn quadratic_form(&self) -> Result<QuadFormF2> {
        let n = self.torus.rank();
        let mut q = vec![vec![1i64; n]; n];
        for (i, row) in q.iter_mut().enumerate() {
            for (j, qij) in row.iter_mut().enumerate() {
                let (ei, ej) = (LatticeVec::unit(n, i), LatticeVec::unit(n, j));
                // x_j x_i = q_ij x_i x_j
                let f = self.torus.structure(&ej, &ei).try_div(&self.torus.structure(&ei, &ej))?;
                *qij = as_sign(&f).expect("checked at construction");
            }
        }
        QuadFormF2::from_torus_with_involution(&q, &self.generator_signs())
    }
}

/// ι^(h)(x) = h x̄ h^{−1} for h = a_{h_degree}, which must be hermitian.
pub fn involution_isotope(iota: &Involution, h_degree: &LatticeVec) -> Result<Involution> {
    if h_degree.rank() != iota.torus.rank() {
        return Err(Error::Validation("twist degree has the wrong rank".into()));
    }
    if !iota.is_hermitian(h_degree) {
        return Err(Error::Precondition(format!("a_{h_degree} is not hermitian (e = -1)")));
    }
    let mut out = iota.clone();
    if !h_degree.is_zero() {
        out.twists.push(Monomial::new(h_degree.clone(), CycScalar::one(iota.torus.order())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::QMatrix;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    fn kq() -> Arc<StructuredTorus> {
        StructuredTorus::quantum(QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap())
    }

    #[test]
    fn reversal_sign() {
        let iota = Involution::new(&kq(), vec![1, 1]).unwrap();
        // ι(x1 x2) = x2 x1 = −x1 x2
        assert_eq!(iota.sign(&v([1, 1])), -1);
        assert_eq!(iota.sign(&v([1, 0])), 1);
        assert_eq!(iota.sign(&v([2, 2])), 1);
    }

    #[test]
    fn isotope_sign() {
        let iota = Involution::new(&kq(), vec![1, 1]).unwrap();
        let twisted = involution_isotope(&iota, &v([1, 0])).unwrap();
        assert_eq!(twisted.sign(&v([0, 1])), -1);
        assert_eq!(twisted.sign(&v([1, 0])), 1);
        assert_eq!(involution_isotope(&iota, &v([0, 0])).unwrap(), iota);
        assert!(matches!(involution_isotope(&iota, &v([1, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn twist_witness_is_an_isometry() {
        use crate::quadform::{check_isometry, mask_from_bits, twist_witness};
        for e in [vec![1, 1], vec![1, -1], vec![-1, -1]] {
            let iota = Involution::new(&kq(), e).unwrap();
            let kappa = iota.quadratic_form().unwrap();
            for h in crate::lattice::window(2, 2).into_iter().filter(|h| iota.is_hermitian(h)) {
                let kappa2 = involution_isotope(&iota, &h).unwrap().quadratic_form().unwrap();
                let mu = mask_from_bits(&h.0.iter().map(|x| x.rem_euclid(2) as u8).collect::<Vec<_>>());
                assert!(check_isometry(&kappa, &kappa2, &twist_witness(&kappa, mu)), "h = {h}");
            }
        }
    }

    #[test]
    fn rejects_non_sign_commutation() {
        let q = QMatrix::from_exponents(4, vec![vec![0, 1], vec![3, 0]]).unwrap();
        let a = StructuredTorus::quantum(q);
        assert!(matches!(Involution::new(&a, vec![1, 1]), Err(Error::Unsupported(_))));
    }
}
