use std::sync::Arc;

use serde::Serialize;

use super::{Flavor, StructuredTorus, TorusKind};
use crate::error::{Error, Result};
use crate::lattice::{CosetSet, LatticeVec, Sublattice};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CentralityRow {
    pub degree: LatticeVec,
    /// a_λ commutes with the window basis and multiplication by it commutes with all products
    pub centroidal: bool,
    pub in_gamma: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TorusInvariants {
    pub kind: String,
    pub flavor: Flavor,
    pub support: String,
    /// Hermite basis of the centroidal grading group Γ
    pub gamma: Vec<LatticeVec>,
    /// Canonical representatives of S/Γ when finite
    pub cosets: Option<Vec<LatticeVec>>,
    /// Σ(S/Γ) when S/Γ is finite
    pub sigma: Option<LatticeVec>,
    pub centrality: Vec<CentralityRow>,
    /// True when the sampled centrality table agrees with Γ on the window
    pub centrality_consistent: bool,
}

/// Closed-form Γ for the shipped kinds.
pub fn gamma(a: &StructuredTorus) -> Result<Sublattice> {
    let n = a.rank();
    match a.kind() {
        TorusKind::Laurent => Ok(Sublattice::full(n)),
        TorusKind::Quantum(q) | TorusKind::JordanPlus(q) => {
            let m = q.order() as i64;
            let count = (m as f64).powi(n as i32);
            if count > 1e6 {
                return Err(Error::Capacity(format!("central degrees of a rank-{n} quantum torus over Q(ζ_{m})")));
            }
            let mut gens: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i).scale(m)).collect();
            for l in crate::lattice::window(n, m).into_iter().filter(|l| l.0.iter().all(|&x| (0..m).contains(&x))) {
                if (0..n).all(|j| q.commutation_exponent(&l, &LatticeVec::unit(n, j)) == 0) {
                    gens.push(l);
                }
            }
            Sublattice::from_generators(n, &gens)
        }
        TorusKind::Octonion { .. } => {
            let gens: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i).scale(if i < 3 { 2 } else { 1 })).collect();
            Sublattice::from_generators(n, &gens)
        }
        TorusKind::Spin => Ok(Sublattice::scaled(n, 2)),
        TorusKind::JordanIsotope { base, .. }
        | TorusKind::AlternativeIsotope { base, .. }
        | TorusKind::Opposite(base)
        | TorusKind::Perturbed { base, .. } => gamma(base),
    }
}

fn mono(a: &Arc<StructuredTorus>, l: &LatticeVec) -> crate::torus::TorusElement {
    a.basis(l).expect("window degree in support")
}

/// Whether multiplication by a_λ behaves as a centroid element on window pairs:
/// z x = x z, z(xy) = (zx)y and z(xy) = x(zy).
fn centroidal(a: &Arc<StructuredTorus>, l: &LatticeVec, basis: &[LatticeVec]) -> bool {
    let z = mono(a, l);
    let elems: Vec<_> = basis.iter().map(|d| mono(a, d)).collect();
    for x in &elems {
        if &z * x != x * &z {
            return false;
        }
        let zx = &z * x;
        for y in &elems {
            let xy = x * y;
            let lhs = &z * &xy;
            if lhs != &zx * y || lhs != x * &(&z * y) {
                return false;
            }
        }
    }
    true
}

/// Support, Γ, S/Γ, Σ(S/Γ) and the centrality table on the window [-w, w]^n.
pub fn invariants(a: &Arc<StructuredTorus>, w: i64) -> Result<TorusInvariants> {
    let g = gamma(a)?;
    let cosets = g.coset_representatives().map(|reps| reps.into_iter().filter(|r| a.in_support(r)).collect::<Vec<_>>());
    let sigma = cosets.as_ref().map(|c| CosetSet::new(g.clone(), c.iter().cloned()).sum());
    let window = a.support_window(w);
    // products are tested against a smaller window to keep the table cheap
    let probe = a.support_window(w.min(1));
    let centrality: Vec<CentralityRow> = window
        .iter()
        .map(|l| CentralityRow { degree: l.clone(), centroidal: centroidal(a, l, &probe), in_gamma: g.contains(l) })
        .collect();
    let centrality_consistent = centrality.iter().all(|r| r.centroidal == r.in_gamma);
    Ok(TorusInvariants {
        kind: a.kind_name().to_string(),
        flavor: a.flavor(),
        support: a.support_description(),
        gamma: g.basis(),
        cosets,
        sigma,
        centrality,
        centrality_consistent,
    })
}

/// Whether A^λ ⊆ [A,A] for an associative torus, decided by commutators with
/// the generators: true iff some [a_{e_i}, a_{λ−e_i}] ≠ 0.
pub fn commutator_degree_test(a: &StructuredTorus, lambda: &LatticeVec) -> Result<bool> {
    if a.flavor() != Flavor::Associative {
        return Err(Error::Flavor { expected: "associative".into(), found: a.flavor().to_string() });
    }
    if lambda.rank() != a.rank() {
        return Err(Error::Validation("degree has the wrong rank".into()));
    }
    let n = a.rank();
    Ok((0..n).any(|i| {
        let e = LatticeVec::unit(n, i);
        let rest = lambda - &e;
        !(&a.product_coefficient(&e, &rest) - &a.product_coefficient(&rest, &e)).is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{jordan_isotope, QMatrix};

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    #[test]
    fn laurent_invariants() {
        let a = StructuredTorus::laurent(2, 2);
        let inv = invariants(&a, 1).unwrap();
        assert_eq!(inv.cosets.as_ref().unwrap().len(), 1);
        assert_eq!(inv.sigma, Some(v([0, 0])));
        assert!(inv.centrality_consistent);
    }

    #[test]
    fn spin_sigma() {
        let a = StructuredTorus::spin(3, 2).unwrap();
        let inv = invariants(&a, 1).unwrap();
        assert_eq!(inv.cosets.as_ref().unwrap().len(), 5);
        assert_eq!(inv.sigma, Some(v([0, 0, 0])));
        assert!(inv.centrality_consistent);
        let iso = jordan_isotope(&a, &v([-1, 0, 0])).unwrap();
        let inv = invariants(&iso, 1).unwrap();
        assert_eq!(inv.sigma, Some(v([1, 0, 0])));
        assert!(inv.centrality_consistent);
    }

    #[test]
    fn quantum_gamma_and_commutators() {
        let q = QMatrix::from_signs(2, &[vec![1, -1], vec![-1, 1]]).unwrap();
        let a = StructuredTorus::quantum(q);
        let inv = invariants(&a, 2).unwrap();
        assert_eq!(inv.gamma, vec![v([2, 0]), v([0, 2])]);
        assert!(inv.centrality_consistent);
        assert!(commutator_degree_test(&a, &v([1, 1])).unwrap());
        assert!(!commutator_degree_test(&a, &v([2, 0])).unwrap());
        assert!(!commutator_degree_test(&StructuredTorus::laurent(2, 2), &v([1, 1])).unwrap());
    }

    #[test]
    fn octonion_gamma_certified() {
        let o = StructuredTorus::octonion(1, 2).unwrap();
        let inv = invariants(&o, 1).unwrap();
        assert!(inv.centrality_consistent);
        assert_eq!(inv.cosets.unwrap().len(), 8);
    }
}
