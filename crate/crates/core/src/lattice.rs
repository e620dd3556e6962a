//! Lattices Λ = Z^n, sublattices and their coset spaces, the root data of
//! types A_r and C_r in ε-coordinates, and homomorphisms Q → Λ given on a base.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVec(pub Vec<i64>);

impl LatticeVec {
    pub fn zero(n: usize) -> Self {
        LatticeVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &Self) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Reduction modulo 2 as a bitmask (bit i = coordinate i).
    pub fn mod2_mask(&self) -> u32 {
        self.0.iter().enumerate().fold(0, |acc, (i, &x)| acc | (((x.rem_euclid(2)) as u32) << i))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Ok(LatticeVec(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVec)
    }
}

impl From<Vec<i64>> for LatticeVec {
    fn from(v: Vec<i64>) -> Self {
        LatticeVec(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVec {
    fn from(v: [i64; N]) -> Self {
        LatticeVec(v.to_vec())
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: &LatticeVec) -> LatticeVec {
        assert_eq!(self.0.len(), rhs.0.len(), "lattice rank mismatch");
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: &LatticeVec) -> LatticeVec {
        assert_eq!(self.0.len(), rhs.0.len(), "lattice rank mismatch");
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All vectors of the box [-w, w]^n in lexicographic order.
pub fn window(n: usize, w: i64) -> Vec<LatticeVec> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-w..=w).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(LatticeVec).collect()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A subgroup of Z^n in row Hermite normal form.
///
/// Rows are in echelon form with positive pivots and entries above each pivot
/// reduced into [0, pivot). Reduction of a vector by the rows in order yields a
/// canonical coset representative.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Sublattice {
    n: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn from_generators(n: usize, gens: &[LatticeVec]) -> Result<Self> {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            if g.rank() != n {
                return Err(Error::Validation(format!("generator {g} has rank {} (expected {n})", g.rank())));
            }
            if !g.is_zero() {
                rows.push(g.0.clone());
            }
        }
        let mut pivots = Vec::new();
        let mut k = 0;
        for col in 0..n {
            if k == rows.len() {
                break;
            }
            // gcd-combine every row below k into row k at this column
            for i in k + 1..rows.len() {
                if rows[i][col] == 0 {
                    continue;
                }
                let (a, b) = (rows[k][col], rows[i][col]);
                let (g, x, y) = ext_gcd(a, b);
                let (p, q) = (a / g, b / g);
                let rk = rows[k].clone();
                let ri = rows[i].clone();
                for c in 0..n {
                    rows[k][c] = x * rk[c] + y * ri[c];
                    rows[i][c] = -q * rk[c] + p * ri[c];
                }
            }
            if rows[k][col] == 0 {
                if let Some(j) = (k + 1..rows.len()).find(|&j| rows[j][col] != 0) {
                    rows.swap(k, j);
                } else {
                    continue;
                }
            }
            if rows[k][col] < 0 {
                rows[k].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(col);
            k += 1;
        }
        rows.truncate(k);
        rows.retain(|r| r.iter().any(|&x| x != 0));
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..i {
                let q = rows[j][p].div_euclid(rows[i][p]);
                if q != 0 {
                    let ri = rows[i].clone();
                    for c in 0..n {
                        rows[j][c] -= q * ri[c];
                    }
                }
            }
        }
        Ok(Sublattice { n, rows, pivots })
    }

    pub fn full(n: usize) -> Self {
        Self::from_generators(n, &(0..n).map(|i| LatticeVec::unit(n, i)).collect::<Vec<_>>())
            .expect("unit vectors have the ambient rank")
    }

    /// The sublattice m·Z^n.
    pub fn scaled(n: usize, m: i64) -> Self {
        Self::from_generators(n, &(0..n).map(|i| LatticeVec::unit(n, i).scale(m)).collect::<Vec<_>>())
            .expect("scaled unit vectors have the ambient rank")
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Vec<LatticeVec> {
        self.rows.iter().cloned().map(LatticeVec).collect()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.n
    }

    /// |Z^n / self| when finite.
    pub fn index(&self) -> Option<u64> {
        self.is_full_rank()
            .then(|| self.rows.iter().zip(&self.pivots).map(|(r, &p)| r[p] as u64).product())
    }

    pub fn reduce(&self, v: &LatticeVec) -> LatticeVec {
        let mut v = v.0.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let q = v[p].div_euclid(r[p]);
            if q != 0 {
                for c in 0..self.n {
                    v[c] -= q * r[c];
                }
            }
        }
        LatticeVec(v)
    }

    pub fn contains(&self, v: &LatticeVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical representatives of all cosets, when the index is finite.
    pub fn coset_representatives(&self) -> Option<Vec<LatticeVec>> {
        if !self.is_full_rank() {
            return None;
        }
        let mut reps = vec![vec![0i64; self.n]];
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            reps = reps
                .into_iter()
                .flat_map(|v| {
                    (0..r[p]).map(move |x| {
                        let mut v = v.clone();
                        v[p] = x;
                        v
                    })
                })
                .collect();
        }
        Some(reps.into_iter().map(LatticeVec).collect())
    }

    /// True when self is all of Z^n.
    pub fn is_everything(&self) -> bool {
        self.index() == Some(1)
    }
}

/// A finite set of cosets of a sublattice, stored by canonical representatives.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CosetSet {
    pub modulus: Sublattice,
    pub reps: BTreeSet<LatticeVec>,
}

impl CosetSet {
    pub fn new(modulus: Sublattice, elements: impl IntoIterator<Item = LatticeVec>) -> Self {
        let reps = elements.into_iter().map(|v| modulus.reduce(&v)).collect();
        CosetSet { modulus, reps }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Sum of all cosets, as a canonical representative.
    pub fn sum(&self) -> LatticeVec {
        let total = self.reps.iter().fold(LatticeVec::zero(self.modulus.ambient_rank()), |acc, v| &acc + v);
        self.modulus.reduce(&total)
    }
}

pub fn coset_sum(s: &CosetSet) -> LatticeVec {
    s.sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RootType {
    A,
    C,
}

/// A root system of type A_r or C_r in ε-coordinates.
///
/// A_r lives in the sum-zero hyperplane of Z^{r+1}, C_r in Z^r.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootDatum {
    pub kind: RootType,
    pub rank: usize,
}

pub type Root = LatticeVec;

impl RootDatum {
    pub fn a(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        RootDatum { kind: RootType::A, rank }
    }

    pub fn c(rank: usize) -> Self {
        assert!(rank >= 2, "type C needs rank at least 2");
        RootDatum { kind: RootType::C, rank }
    }

    /// Dimension of the ε-coordinate space.
    pub fn dim(&self) -> usize {
        match self.kind {
            RootType::A => self.rank + 1,
            RootType::C => self.rank,
        }
    }

    pub fn eps(&self, i: usize) -> Root {
        LatticeVec::unit(self.dim(), i)
    }

    pub fn zero(&self) -> Root {
        LatticeVec::zero(self.dim())
    }

    pub fn base(&self) -> Vec<Root> {
        let r = self.rank;
        (0..r)
            .map(|i| match (self.kind, i + 1 == r) {
                (RootType::C, true) => self.eps(r - 1).scale(2),
                _ => &self.eps(i) - &self.eps(i + 1),
            })
            .collect()
    }

    /// Δ×, in a fixed order.
    pub fn nonzero_roots(&self) -> Vec<Root> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    out.push(&self.eps(i) - &self.eps(j));
                }
            }
        }
        if self.kind == RootType::C {
            for i in 0..d {
                for j in i..d {
                    let s = &self.eps(i) + &self.eps(j);
                    out.push(-&s);
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Δ = Δ× ∪ {0}.
    pub fn roots(&self) -> Vec<Root> {
        let mut out = self.nonzero_roots();
        out.push(self.zero());
        out.sort();
        out
    }

    pub fn is_root(&self, beta: &Root) -> bool {
        beta.is_zero() || self.nonzero_roots().contains(beta)
    }

    pub fn is_long(&self, alpha: &Root) -> bool {
        self.kind == RootType::C && alpha.dot(alpha) == 4
    }

    /// ⟨β, α∨⟩ = 2(β,α)/(α,α).
    pub fn coroot_pair(&self, beta: &Root, alpha: &Root) -> Result<i64> {
        let aa = alpha.dot(alpha);
        if aa == 0 {
            return Err(Error::Domain("coroot of the zero root".into()));
        }
        let num = 2 * beta.dot(alpha);
        if num % aa != 0 {
            return Err(Error::Domain(format!("{beta} does not pair integrally with {alpha}")));
        }
        Ok(num / aa)
    }

    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Result<Root> {
        Ok(beta - &alpha.scale(self.coroot_pair(beta, alpha)?))
    }

    /// Coordinates of β ∈ Q with respect to the base.
    pub fn base_coords(&self, beta: &Root) -> Result<Vec<i64>> {
        if beta.rank() != self.dim() {
            return Err(Error::Domain(format!("{beta} has the wrong number of ε-coordinates")));
        }
        let r = self.rank;
        let mut partial = 0;
        let mut k = Vec::with_capacity(r);
        for i in 0..r {
            partial += beta.0[i];
            k.push(partial);
        }
        match self.kind {
            RootType::A => {
                if partial + beta.0[r] != 0 {
                    return Err(Error::Domain(format!("{beta} is not in the root lattice of A_{r}")));
                }
            }
            RootType::C => {
                if partial % 2 != 0 {
                    return Err(Error::Domain(format!("{beta} is not in the root lattice of C_{r}")));
                }
                k[r - 1] = partial / 2;
            }
        }
        Ok(k)
    }
}

/// s ∈ Hom(Q, Λ) given by the images of the base.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ShiftHom {
    #[serde(rename = "s")]
    pub images: Vec<LatticeVec>,
}

impl ShiftHom {
    pub fn new(images: Vec<LatticeVec>) -> Self {
        ShiftHom { images }
    }

    pub fn zero(rank: usize, n: usize) -> Self {
        ShiftHom { images: vec![LatticeVec::zero(n); rank] }
    }

    pub fn lattice_rank(&self) -> usize {
        self.images.first().map_or(0, LatticeVec::rank)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(LatticeVec::is_zero)
    }

    pub fn apply(&self, datum: &RootDatum, beta: &Root) -> Result<LatticeVec> {
        if self.images.len() != datum.rank {
            return Err(Error::Validation(format!(
                "shift has {} base images, root datum has rank {}",
                self.images.len(),
                datum.rank
            )));
        }
        let k = datum.base_coords(beta)?;
        let n = self.lattice_rank();
        Ok(k.iter().zip(&self.images).fold(LatticeVec::zero(n), |acc, (c, v)| &acc + &v.scale(*c)))
    }

    pub fn add(&self, other: &ShiftHom) -> ShiftHom {
        ShiftHom { images: self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect() }
    }

    /// Parse "1,0;0,0;0,1" (one image per base root, separated by ';').
    pub fn parse(s: &str) -> Result<Self> {
        let images = s.split(';').map(LatticeVec::parse).collect::<Result<Vec<_>>>()?;
        if let Some(first) = images.first() {
            if images.iter().any(|v| v.rank() != first.rank()) {
                return Err(Error::Parse("shift images have different ranks".into()));
            }
        }
        Ok(ShiftHom { images })
    }
}

pub fn apply_shift(s: &ShiftHom, datum: &RootDatum, beta: &Root) -> Result<LatticeVec> {
    s.apply(datum, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVec {
        LatticeVec::from(x)
    }

    #[test]
    fn shift_on_base_and_sums() {
        let a2 = RootDatum::a(2);
        let s = ShiftHom::new(vec![v([1, 0]), v([0, 1])]);
        assert_eq!(s.apply(&a2, &a2.base()[0]).unwrap(), v([1, 0]));
        assert_eq!(ShiftHom::zero(2, 2).apply(&a2, &v([1, -1, 0])).unwrap(), v([0, 0]));
        assert_eq!(s.apply(&a2, &v([1, 0, -1])).unwrap(), v([1, 1]));
        assert!(s.apply(&a2, &v([1, 0, 0])).is_err());
    }

    #[test]
    fn coroot_pairings() {
        let a2 = RootDatum::a(2);
        let b = a2.base();
        assert_eq!(a2.coroot_pair(&b[0], &b[1]).unwrap(), -1);
        let c4 = RootDatum::c(4);
        let b = c4.base();
        assert_eq!(c4.coroot_pair(&b[2], &b[3]).unwrap(), -1);
        assert_eq!(c4.coroot_pair(&b[3], &b[2]).unwrap(), -2);
        for a in c4.nonzero_roots() {
            assert_eq!(c4.coroot_pair(&a, &a).unwrap(), 2);
        }
        assert!(c4.coroot_pair(&b[0], &c4.zero()).is_err());
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootDatum::a(3).nonzero_roots().len(), 12);
        assert_eq!(RootDatum::c(4).nonzero_roots().len(), 32);
    }

    #[test]
    fn hnf_reduction() {
        let l = Sublattice::from_generators(2, &[v([2, 0]), v([0, 2]), v([2, 2])]).unwrap();
        assert_eq!(l.index(), Some(4));
        assert_eq!(l.reduce(&v([3, -5])), v([1, 1]));
        let l = Sublattice::from_generators(2, &[v([4, 6]), v([6, 4])]).unwrap();
        assert_eq!(l.index(), Some(20));
        assert!(l.contains(&v([10, 10])));
        assert!(!l.contains(&v([2, 0])));
        assert_eq!(l.coset_representatives().unwrap().len(), 20);
    }

    #[test]
    fn spin_cosets() {
        let gamma = Sublattice::scaled(3, 2);
        let s = CosetSet::new(gamma.clone(), [v([0, 0, 0]), v([1, 0, 0]), v([0, 1, 0]), v([0, 0, 1]), v([1, 1, 1])]);
        assert_eq!(s.len(), 5);
        assert_eq!(coset_sum(&s), v([0, 0, 0]));
        let shifted = CosetSet::new(gamma, s.reps.iter().map(|x| x - &v([1, 0, 0])));
        assert_eq!(coset_sum(&shifted), v([1, 0, 0]));
    }

    #[test]
    fn parse_shift() {
        let s = ShiftHom::parse("1,0;0,0;0,1").unwrap();
        assert_eq!(s.images, vec![v([1, 0]), v([0, 0]), v([0, 1])]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"s":[[1,0],[0,0],[0,1]]}"#);
    }
}
