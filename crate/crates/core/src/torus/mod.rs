//! Coordinate tori: Λ-graded algebras whose nonzero homogeneous pieces are
//! spanned by a single invertible basis symbol a_λ, with a_λ a_μ = c(λ,μ) a_{λ+μ}.
//!
//! Shipped kinds are group algebras, quantum tori, the octonion torus,
//! plus-algebras of quantum tori and spin factors; derived kinds (isotopes,
//! opposites) compute their structure constants from the base torus.

mod element;
mod involution;
mod invariants;
mod laws;

pub(crate) use element::same_torus;
pub use element::{jordan_triple, torus_mul, u_operator, Monomial, TorusElement};
pub use involution::{involution_isotope, Involution, InvolutionSpec};
pub use invariants::{commutator_degree_test, gamma, invariants, CentralityRow, TorusInvariants};
pub use laws::{check_flavor_laws, check_involution, check_isotope_composition, LawOptions};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::scalar::CycScalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Associative,
    Alternative,
    Jordan,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Flavor::Associative => "associative",
            Flavor::Alternative => "alternative",
            Flavor::Jordan => "jordan",
        };
        f.write_str(s)
    }
}

/// Commutation data of a quantum torus: q_ij = ζ_m^{exps[i][j]}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    n: usize,
    m: u32,
    exps: Vec<Vec<u32>>,
}

impl QMatrix {
    pub fn trivial(n: usize, m: u32) -> Self {
        QMatrix { n, m, exps: vec![vec![0; n]; n] }
    }

    /// From exponents k_ij with q_ij = ζ_m^{k_ij}.
    pub fn from_exponents(m: u32, exps: Vec<Vec<i64>>) -> Result<Self> {
        let n = exps.len();
        if exps.iter().any(|row| row.len() != n) {
            return Err(Error::Validation("q-matrix must be square".into()));
        }
        let md = m as i64;
        let exps: Vec<Vec<u32>> =
            exps.iter().map(|row| row.iter().map(|&k| k.rem_euclid(md) as u32).collect()).collect();
        for i in 0..n {
            if exps[i][i] != 0 {
                return Err(Error::Validation(format!("q_{0}{0} must be 1", i + 1)));
            }
            for j in 0..n {
                if (exps[i][j] + exps[j][i]) % m != 0 {
                    return Err(Error::Validation(format!("q_{}{} must be the inverse of q_{}{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(QMatrix { n, m, exps })
    }

    /// From explicit scalar entries, each of which must be an m-th root of unity.
    pub fn from_scalars(m: u32, rows: &[Vec<CycScalar>]) -> Result<Self> {
        let exps = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        if q.order() != m {
                            return Err(Error::IncompatibleField(q.order(), m));
                        }
                        q.root_exponent()
                            .map(|k| k as i64)
                            .ok_or_else(|| Error::Validation(format!("q entry {q} is not a root of unity of order dividing {m}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_exponents(m, exps)
    }

    /// From integer entries ±1 (field order m = 2 unless given otherwise).
    pub fn from_signs(m: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let scal = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        1 | -1 => Ok(CycScalar::from_int(m, x)),
                        _ => Err(Error::Validation(format!("integer q entry {x} must be ±1"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_scalars(m, &scal)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exps[i][j]
    }

    pub fn entry(&self, i: usize, j: usize) -> CycScalar {
        CycScalar::root_of_unity(self.m, self.exps[i][j] as i64)
    }

    /// True when every entry is ±1.
    pub fn is_sign_matrix(&self) -> bool {
        self.exps.iter().flatten().all(|&k| 2 * k % self.m == 0)
    }

    /// Exponent e with x^b x^c = ζ^e x^{b+c} for normal-ordered monomials.
    ///
    /// Moving x_i^{c_i} left past x_j^{b_j} (j > i) contributes q_ij^{b_j c_i}.
    pub fn structure_exponent(&self, b: &LatticeVec, c: &LatticeVec) -> i64 {
        let mut e: i64 = 0;
        for i in 0..self.n {
            if c.0[i] == 0 {
                continue;
            }
            for j in i + 1..self.n {
                e += self.exps[i][j] as i64 * b.0[j] * c.0[i];
            }
        }
        e.rem_euclid(self.m as i64)
    }

    /// Exponent of the commutation factor: a_λ a_μ = ζ^e a_μ a_λ.
    pub fn commutation_exponent(&self, l: &LatticeVec, mu: &LatticeVec) -> i64 {
        (self.structure_exponent(l, mu) - self.structure_exponent(mu, l)).rem_euclid(self.m as i64)
    }

    pub fn to_sign_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.is_sign_matrix().then(|| {
            self.exps.iter().map(|row| row.iter().map(|&k| if k == 0 { 1 } else { -1 }).collect()).collect()
        })
    }
}

/// γ with x^b x^c = γ x^{b+c} in the normal order x₁^{a₁}···x_n^{a_n}.
pub fn quantum_structure(q: &QMatrix, b: &LatticeVec, c: &LatticeVec) -> Result<CycScalar> {
    if b.rank() != q.rank() || c.rank() != q.rank() {
        return Err(Error::Validation("degree rank does not match the q-matrix".into()));
    }
    Ok(CycScalar::root_of_unity(q.order(), q.structure_exponent(b, c)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TorusKind {
    Laurent,
    Quantum(QMatrix),
    /// The octonion torus on the first three variables tensored with Laurent
    /// polynomials in `extra` further variables.
    Octonion { extra: usize },
    JordanPlus(QMatrix),
    /// Spin factor over k[2Λ] with odd generators of degrees e_1, …, e_n and e_1+…+e_n.
    Spin,
    JordanIsotope { base: Arc<StructuredTorus>, u: Monomial },
    AlternativeIsotope { base: Arc<StructuredTorus>, u1: Monomial, u2: Monomial },
    Opposite(Arc<StructuredTorus>),
    /// The base torus with c(left, right) replaced by `value`; used as a negative control.
    Perturbed { base: Arc<StructuredTorus>, left: LatticeVec, right: LatticeVec, value: CycScalar },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuredTorus {
    rank: usize,
    order: u32,
    kind: TorusKind,
}

impl StructuredTorus {
    pub fn laurent(n: usize, m: u32) -> Arc<Self> {
        Arc::new(StructuredTorus { rank: n, order: m, kind: TorusKind::Laurent })
    }

    pub fn quantum(q: QMatrix) -> Arc<Self> {
        Arc::new(StructuredTorus { rank: q.rank(), order: q.order(), kind: TorusKind::Quantum(q) })
    }

    pub fn octonion(extra: usize, m: u32) -> Result<Arc<Self>> {
        Ok(Arc::new(StructuredTorus { rank: 3 + extra, order: m, kind: TorusKind::Octonion { extra } }))
    }

    pub fn jordan_plus(q: QMatrix) -> Arc<Self> {
        Arc::new(StructuredTorus { rank: q.rank(), order: q.order(), kind: TorusKind::JordanPlus(q) })
    }

    pub fn spin(n: usize, m: u32) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::Validation("spin factor needs rank at least 2".into()));
        }
        Ok(Arc::new(StructuredTorus { rank: n, order: m, kind: TorusKind::Spin }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn kind(&self) -> &TorusKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            TorusKind::Laurent => "laurent",
            TorusKind::Quantum(_) => "quantum",
            TorusKind::Octonion { .. } => "octonion",
            TorusKind::JordanPlus(_) => "jordan_plus",
            TorusKind::Spin => "spin",
            TorusKind::JordanIsotope { .. } => "jordan_isotope",
            TorusKind::AlternativeIsotope { .. } => "alternative_isotope",
            TorusKind::Opposite(_) => "opposite",
            TorusKind::Perturbed { .. } => "perturbed",
        }
    }

    pub fn flavor(&self) -> Flavor {
        match &self.kind {
            TorusKind::Laurent | TorusKind::Quantum(_) => Flavor::Associative,
            TorusKind::Octonion { .. } => Flavor::Alternative,
            TorusKind::JordanPlus(_) | TorusKind::Spin | TorusKind::JordanIsotope { .. } => Flavor::Jordan,
            TorusKind::AlternativeIsotope { base, .. } | TorusKind::Opposite(base) | TorusKind::Perturbed { base, .. } => {
                base.flavor()
            }
        }
    }

    /// The q-matrix of an associative torus that is a quantum torus up to regrading
    /// of the same basis (Laurent, Quantum, or an opposite of one).
    pub fn quantum_matrix(&self) -> Option<QMatrix> {
        match &self.kind {
            TorusKind::Laurent => Some(QMatrix::trivial(self.rank, self.order)),
            TorusKind::Quantum(q) => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scalar(&self, v: i64) -> CycScalar {
        CycScalar::from_int(self.order, v)
    }

    pub fn zero_scalar(&self) -> CycScalar {
        CycScalar::zero(self.order)
    }

    fn spin_class(lambda: &LatticeVec) -> Option<usize> {
        // 0 for the even part, i for the coset of e_i, n+1 for the all-ones coset
        let n = lambda.rank();
        let odd: Vec<usize> = (0..n).filter(|&i| lambda.0[i].rem_euclid(2) == 1).collect();
        match odd.len() {
            0 => Some(0),
            1 => Some(odd[0] + 1),
            k if k == n => Some(n + 1),
            _ => None,
        }
    }

    pub fn in_support(&self, lambda: &LatticeVec) -> bool {
        if lambda.rank() != self.rank {
            return false;
        }
        match &self.kind {
            TorusKind::Laurent | TorusKind::Quantum(_) | TorusKind::Octonion { .. } | TorusKind::JordanPlus(_) => true,
            TorusKind::Spin => Self::spin_class(lambda).is_some(),
            TorusKind::JordanIsotope { base, u } => base.in_support(&(lambda - &u.degree)),
            TorusKind::AlternativeIsotope { .. } => true,
            TorusKind::Opposite(base) | TorusKind::Perturbed { base, .. } => base.in_support(lambda),
        }
    }

    /// c(λ, μ) for λ, μ ∈ S; zero when λ + μ ∉ S.
    pub fn structure(&self, l: &LatticeVec, mu: &LatticeVec) -> CycScalar {
        let m = self.order;
        match &self.kind {
            TorusKind::Laurent => CycScalar::one(m),
            TorusKind::Quantum(q) => CycScalar::root_of_unity(m, q.structure_exponent(l, mu)),
            TorusKind::Octonion { .. } => {
                let (i, j) = (&l.0, &mu.0);
                let b = |x: i64| x.rem_euclid(2);
                let (i1, i2, i3, j1, j2, j3) = (b(i[0]), b(i[1]), b(i[2]), b(j[0]), b(j[1]), b(j[2]));
                let kappa = i3 * j1 + i2 * j1 + i3 * j2 + i1 * j2 * j3 + i2 * j1 * j3 + i3 * j1 * j2;
                CycScalar::from_int(m, if kappa % 2 == 0 { 1 } else { -1 })
            }
            TorusKind::JordanPlus(q) => {
                let a = CycScalar::root_of_unity(m, q.structure_exponent(l, mu));
                let b = CycScalar::root_of_unity(m, q.structure_exponent(mu, l));
                (&a + &b).scale(&crate::scalar::Rational::new(1.into(), 2.into()))
            }
            TorusKind::Spin => {
                let (cl, cm) = (Self::spin_class(l), Self::spin_class(mu));
                match (cl, cm) {
                    (Some(0), Some(_)) | (Some(_), Some(0)) => CycScalar::one(m),
                    (Some(a), Some(b)) if a == b => CycScalar::one(m),
                    _ => CycScalar::zero(m),
                }
            }
            TorusKind::JordanIsotope { base, u } => {
                // x ·_u y = ½{x, u, y} on the basis a_{λ+ρ}, with u = coeff · a_{-ρ}
                let x = &u.degree;
                let lb = l - x;
                let mb = mu - x;
                let t = base.triple_coefficient(&lb, x, &mb);
                (&t * &u.coeff).scale(&crate::scalar::Rational::new(1.into(), 2.into()))
            }
            TorusKind::AlternativeIsotope { base, u1, u2 } => {
                let shift = &u1.degree + &u2.degree;
                let lb = l - &shift;
                let mb = mu - &shift;
                let left_deg = &lb + &u1.degree;
                let right_deg = &u2.degree + &mb;
                let c = &(&base.structure(&lb, &u1.degree) * &base.structure(&u2.degree, &mb))
                    * &base.structure(&left_deg, &right_deg);
                &(&c * &u1.coeff) * &u2.coeff
            }
            TorusKind::Opposite(base) => base.structure(mu, l),
            TorusKind::Perturbed { base, left, right, value } => {
                if l == left && mu == right {
                    value.clone()
                } else {
                    base.structure(l, mu)
                }
            }
        }
    }

    /// Structure constant with support checks: zero if any of λ, μ, λ+μ is outside S.
    pub fn product_coefficient(&self, l: &LatticeVec, mu: &LatticeVec) -> CycScalar {
        let sum = l + mu;
        if !self.in_support(l) || !self.in_support(mu) || !self.in_support(&sum) {
            return self.zero_scalar();
        }
        self.structure(l, mu)
    }

    /// Coefficient of a_{x+y+z} in {a_x, a_y, a_z} = 2((a_x a_y)a_z + (a_z a_y)a_x − (a_z a_x)a_y).
    pub fn triple_coefficient(&self, x: &LatticeVec, y: &LatticeVec, z: &LatticeVec) -> CycScalar {
        let pc = |a: &LatticeVec, b: &LatticeVec| self.product_coefficient(a, b);
        let xy = x + y;
        let zy = z + y;
        let zx = z + x;
        let t1 = &pc(x, y) * &pc(&xy, z);
        let t2 = &pc(z, y) * &pc(&zy, x);
        let t3 = &pc(z, x) * &pc(&zx, y);
        (&(&t1 + &t2) - &t3).scale(&crate::scalar::Rational::from_integer(2.into()))
    }

    /// Coefficient of a_{x+y+x} in U_{a_x} a_y = ½{a_x, a_y, a_x}.
    pub fn u_coefficient(&self, x: &LatticeVec, y: &LatticeVec) -> CycScalar {
        self.triple_coefficient(x, y, x).scale(&crate::scalar::Rational::new(1.into(), 2.into()))
    }

    /// The identity element.
    pub fn identity_monomial(&self) -> Monomial {
        let zero = LatticeVec::zero(self.rank);
        let coeff = match &self.kind {
            TorusKind::JordanIsotope { base, u } => {
                // 1^(u) = u^{-1} = β^{-1} a_ρ where U_u a_ρ = β a_{-ρ}, expressed on the basis b_0 = a_ρ
                let rho = -&u.degree;
                let beta = &base.u_coefficient(&u.degree, &rho) * &u.coeff;
                beta.inv().expect("isotope element is invertible")
            }
            TorusKind::AlternativeIsotope { base, u1, u2 } => {
                // 1^{(u1,u2)} = (u1 u2)^{-1}, which lives in base degree −(d1+d2), i.e. isotope degree 0
                let d = &u1.degree + &u2.degree;
                let p = &(&u1.coeff * &u2.coeff) * &base.structure(&u1.degree, &u2.degree);
                let nd = -&d;
                let e = base.identity_monomial().coeff;
                e.try_div(&(&p * &base.structure(&d, &nd))).expect("isotope element is invertible")
            }
            TorusKind::Opposite(base) | TorusKind::Perturbed { base, .. } => base.identity_monomial().coeff,
            _ => CycScalar::one(self.order),
        };
        Monomial { degree: zero, coeff }
    }

    pub fn identity(self: &Arc<Self>) -> TorusElement {
        TorusElement::from_monomial(self, self.identity_monomial())
    }

    /// The basis symbol a_λ; an error if λ ∉ S.
    pub fn basis(self: &Arc<Self>, lambda: &LatticeVec) -> Result<TorusElement> {
        if lambda.rank() != self.rank {
            return Err(Error::Validation(format!("degree {lambda} has rank {} (torus rank {})", lambda.rank(), self.rank)));
        }
        if !self.in_support(lambda) {
            return Err(Error::Domain(format!("{lambda} is not in the support of the {} torus", self.kind_name())));
        }
        Ok(TorusElement::from_monomial(self, Monomial::new(lambda.clone(), CycScalar::one(self.order))))
    }

    /// Support degrees inside the window [-w, w]^n.
    pub fn support_window(&self, w: i64) -> Vec<LatticeVec> {
        crate::lattice::window(self.rank, w).into_iter().filter(|l| self.in_support(l)).collect()
    }

    /// Short human-readable description of the support S.
    pub fn support_description(&self) -> String {
        match &self.kind {
            TorusKind::Laurent | TorusKind::Quantum(_) | TorusKind::Octonion { .. } | TorusKind::JordanPlus(_) => {
                format!("Z^{}", self.rank)
            }
            TorusKind::Spin => format!(
                "2Λ ∪ (2Λ + e_i, i = 1..{}) ∪ (2Λ + e_1 + … + e_{})",
                self.rank, self.rank
            ),
            TorusKind::JordanIsotope { base, u } => format!("({}) + {}", base.support_description(), u.degree),
            TorusKind::AlternativeIsotope { .. } => format!("Z^{}", self.rank),
            TorusKind::Opposite(base) | TorusKind::Perturbed { base, .. } => base.support_description(),
        }
    }

    /// Nonzero homogeneous element inverse for associative and alternative tori:
    /// a_λ^{-1} = c(λ,−λ)^{-1} a_{−λ}.
    pub fn inverse_monomial(&self, x: &Monomial) -> Result<Monomial> {
        let nl = -&x.degree;
        match self.flavor() {
            Flavor::Jordan => {
                // U_x y = x with y = β^{-1} a_{-λ}, where U_{a_λ} a_{-λ} = β a_λ
                let beta = &self.u_coefficient(&x.degree, &nl) * &x.coeff;
                if beta.is_zero() || !self.in_support(&nl) {
                    return Err(Error::NotInvertible(format!("a_{} is not invertible", x.degree)));
                }
                Ok(Monomial { degree: nl, coeff: beta.inv()? })
            }
            _ => {
                let c = &self.product_coefficient(&x.degree, &nl) * &x.coeff;
                if c.is_zero() {
                    return Err(Error::NotInvertible(format!("a_{} is not invertible", x.degree)));
                }
                let id = self.identity_monomial().coeff;
                Ok(Monomial { degree: nl, coeff: id.try_div(&c)? })
            }
        }
    }

    /// A copy of this torus with one structure constant replaced (negative control).
    pub fn with_corrupted_constant(self: &Arc<Self>, left: LatticeVec, right: LatticeVec, value: CycScalar) -> Arc<Self> {
        Arc::new(StructuredTorus {
            rank: self.rank,
            order: self.order,
            kind: TorusKind::Perturbed { base: self.clone(), left, right, value },
        })
    }
}

/// The u-isotope A^(u) with u = a_{u_degree}; (A^(u))^λ = A^{λ+ρ} where ρ = −u_degree.
pub fn jordan_isotope(a: &Arc<StructuredTorus>, u_degree: &LatticeVec) -> Result<Arc<StructuredTorus>> {
    jordan_isotope_by(a, Monomial::new(u_degree.clone(), CycScalar::one(a.order())))
}

/// The u-isotope for an arbitrary nonzero homogeneous u.
pub fn jordan_isotope_by(a: &Arc<StructuredTorus>, u: Monomial) -> Result<Arc<StructuredTorus>> {
    if a.flavor() != Flavor::Jordan {
        return Err(Error::Flavor { expected: "jordan".into(), found: a.flavor().to_string() });
    }
    if u.degree.rank() != a.rank() {
        return Err(Error::Validation("isotope degree has the wrong rank".into()));
    }
    if !a.in_support(&u.degree) || u.coeff.is_zero() {
        return Err(Error::NotInvertible(format!("no invertible element in degree {}", u.degree)));
    }
    a.inverse_monomial(&u)?;
    Ok(Arc::new(StructuredTorus { rank: a.rank(), order: a.order(), kind: TorusKind::JordanIsotope { base: a.clone(), u } }))
}

/// The (u₁,u₂)-isotope x · y = (x u₁)(u₂ y) with u_i = a_{u_i degree}.
pub fn alternative_isotope(
    a: &Arc<StructuredTorus>,
    u1_degree: &LatticeVec,
    u2_degree: &LatticeVec,
) -> Result<Arc<StructuredTorus>> {
    if a.flavor() == Flavor::Jordan {
        return Err(Error::Flavor { expected: "alternative or associative".into(), found: "jordan".into() });
    }
    let one = CycScalar::one(a.order());
    for d in [u1_degree, u2_degree] {
        if d.rank() != a.rank() {
            return Err(Error::Validation("isotope degree has the wrong rank".into()));
        }
        a.inverse_monomial(&Monomial::new(d.clone(), one.clone()))?;
    }
    Ok(Arc::new(StructuredTorus {
        rank: a.rank(),
        order: a.order(),
        kind: TorusKind::AlternativeIsotope {
            base: a.clone(),
            u1: Monomial::new(u1_degree.clone(), one.clone()),
            u2: Monomial::new(u2_degree.clone(), one),
        },
    }))
}

/// The opposite algebra, c^op(λ,μ) = c(μ,λ).
pub fn opposite(a: &Arc<StructuredTorus>) -> Arc<StructuredTorus> {
    Arc::new(StructuredTorus { rank: a.rank(), order: a.order(), kind: TorusKind::Opposite(a.clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    fn q12() -> QMatrix {
        QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap()
    }

    #[test]
    fn quantum_constants() {
        let q = q12();
        assert!(quantum_structure(&q, &v([1, 0]), &v([0, 1])).unwrap().is_one());
        assert_eq!(quantum_structure(&q, &v([0, 1]), &v([1, 0])).unwrap(), CycScalar::from_int(2, -1));
        assert!(quantum_structure(&q, &v([3, -2]), &v([0, 0])).unwrap().is_one());
    }

    #[test]
    fn malformed_q_rejected() {
        assert!(QMatrix::from_signs(2, &[vec![-1, 1], vec![1, 1]]).is_err());
        assert!(QMatrix::from_exponents(4, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(QMatrix::from_signs(2, &[vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn spin_products() {
        let a = StructuredTorus::spin(3, 2).unwrap();
        assert!(a.product_coefficient(&v([1, 0, 0]), &v([1, 0, 0])).is_one());
        assert!(a.product_coefficient(&v([1, 0, 0]), &v([0, 1, 0])).is_zero());
        assert!(a.product_coefficient(&v([1, 1, 1]), &v([1, 1, 1])).is_one());
        assert!(!a.in_support(&v([1, 1, 0])));
        assert!(a.basis(&v([1, 1, 0])).is_err());
    }

    #[test]
    fn opposite_swaps() {
        let a = StructuredTorus::quantum(q12());
        let op = opposite(&a);
        assert_eq!(op.structure(&v([1, 0]), &v([0, 1])), CycScalar::from_int(2, -1));
        let l = StructuredTorus::laurent(2, 2);
        let lop = opposite(&l);
        for x in l.support_window(1) {
            for y in l.support_window(1) {
                assert_eq!(l.structure(&x, &y), lop.structure(&x, &y));
            }
        }
    }

    #[test]
    fn jordan_isotope_identity() {
        let q = QMatrix::trivial(2, 2);
        let a = StructuredTorus::jordan_plus(q);
        let rho = v([2, -1]);
        let iso = jordan_isotope(&a, &(-&rho)).unwrap();
        let id = iso.identity_monomial();
        assert!(id.coeff.is_one());
        // the identity of A^(u) is the base element a_ρ, the isotope's basis symbol in degree 0
        assert!(iso.product_coefficient(&v([0, 0]), &v([1, 1])).is_one());
        assert_eq!(jordan_isotope(&a, &v([0, 0])).unwrap().structure(&v([1, 0]), &v([0, 1])), a.structure(&v([1, 0]), &v([0, 1])));
    }

    #[test]
    fn isotope_rejects_bad_degree() {
        let a = StructuredTorus::spin(3, 2).unwrap();
        assert!(matches!(jordan_isotope(&a, &v([1, 1, 0])), Err(Error::NotInvertible(_))));
        let q = StructuredTorus::quantum(q12());
        assert!(matches!(jordan_isotope(&q, &v([1, 0])), Err(Error::Flavor { .. })));
    }
}
