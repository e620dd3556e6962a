//! Quadratic forms on (Z/2)^n, written κ(Σ l_i λ̄_i) = Σ l_i b_i + Σ_{i<j} l_i l_j a_ij,
//! together with their polarizations, isometry search over GL_n(F₂), and
//! orbit classification.
//!
//! Vectors are bitmasks: bit i is the coefficient of λ̄_{i+1}.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default rank bound for exhaustive searches.
pub const DEFAULT_BOUND: usize = 5;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct QuadFormF2 {
    n: usize,
    b: u32,
    /// upper[i] has bit j set (j > i) iff a_ij = 1
    upper: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: usize,
    b: Vec<u8>,
    a: Vec<Vec<u8>>,
}

impl TryFrom<FormRepr> for QuadFormF2 {
    type Error = Error;
    fn try_from(r: FormRepr) -> Result<Self> {
        QuadFormF2::new(r.n, &r.b, &r.a)
    }
}

impl From<QuadFormF2> for FormRepr {
    fn from(q: QuadFormF2) -> Self {
        FormRepr { n: q.n, b: q.linear_part(), a: q.alternating_part() }
    }
}

/// An element of GL_n(F₂) stored by columns: column j is the image of λ̄_{j+1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    pub n: usize,
    pub columns: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(n: usize) -> Self {
        BitMatrix { n, columns: (0..n).map(|i| 1 << i).collect() }
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.columns.iter().enumerate().filter(|(j, _)| v >> j & 1 == 1).fold(0, |acc, (_, c)| acc ^ c)
    }

    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix { n: self.n, columns: other.columns.iter().map(|&c| self.apply(c)).collect() }
    }

    pub fn is_invertible(&self) -> bool {
        let mut seen = vec![false; 1 << self.n];
        (0..1u32 << self.n).all(|v| !std::mem::replace(&mut seen[self.apply(v) as usize], true))
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        let mut inv = vec![0u32; self.n];
        for v in 0..1u32 << self.n {
            let w = self.apply(v);
            if w.count_ones() == 1 {
                inv[w.trailing_zeros() as usize] = v;
            }
        }
        let m = BitMatrix { n: self.n, columns: inv };
        (self.compose(&m) == BitMatrix::identity(self.n)).then_some(m)
    }

    /// Row-major 0/1 matrix: entry (i, j) is bit i of column j.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.columns.iter().map(|c| (c >> i & 1) as u8).collect()).collect()
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

pub fn mask_from_bits(v: &[u8]) -> u32 {
    v.iter().enumerate().fold(0, |acc, (i, &x)| acc | (((x & 1) as u32) << i))
}

impl QuadFormF2 {
    /// From b ∈ (Z/2)^n and an n×n bit matrix whose strictly upper part is used.
    pub fn new(n: usize, b: &[u8], a: &[Vec<u8>]) -> Result<Self> {
        if n > 31 {
            return Err(Error::Capacity("rank above 31 is not representable".into()));
        }
        if b.len() != n || a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!("form of rank {n} needs b of length {n} and an {n}x{n} matrix a")));
        }
        if b.iter().chain(a.iter().flatten()).any(|&x| x > 1) {
            return Err(Error::Validation("form entries must be 0 or 1".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row[..=i].iter().any(|&x| x != 0) {
                return Err(Error::Validation("a must be strictly upper triangular".into()));
            }
        }
        let upper = a.iter().map(|r| mask_from_bits(r)).collect();
        Ok(QuadFormF2 { n, b: mask_from_bits(b), upper })
    }

    pub fn zero(n: usize) -> Self {
        QuadFormF2 { n, b: 0, upper: vec![0; n] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn linear_part(&self) -> Vec<u8> {
        (0..self.n).map(|i| (self.b >> i & 1) as u8).collect()
    }

    pub fn alternating_part(&self) -> Vec<Vec<u8>> {
        self.upper.iter().map(|r| (0..self.n).map(|j| (r >> j & 1) as u8).collect()).collect()
    }

    pub fn eval_mask(&self, v: u32) -> u8 {
        let mut s = (self.b & v).count_ones();
        for (i, r) in self.upper.iter().enumerate() {
            if v >> i & 1 == 1 {
                s += (r & v).count_ones();
            }
        }
        (s & 1) as u8
    }

    pub fn eval(&self, v: &[u8]) -> Result<u8> {
        if v.len() != self.n {
            return Err(Error::Validation(format!("vector of length {} for a form of rank {}", v.len(), self.n)));
        }
        Ok(self.eval_mask(mask_from_bits(v)))
    }

    pub fn polar_mask(&self, u: u32, v: u32) -> u8 {
        self.eval_mask(u ^ v) ^ self.eval_mask(u) ^ self.eval_mask(v)
    }

    /// κ_p(λ̄,μ̄) = κ(λ̄+μ̄) + κ(λ̄) + κ(μ̄) on basis vectors.
    pub fn polarization(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.polar_mask(1 << i, 1 << j)).collect()).collect()
    }

    /// Number of vectors with κ(v) = 1; an isometry invariant.
    pub fn ones_count(&self) -> u32 {
        (0..1u32 << self.n).filter(|&v| self.eval_mask(v) == 1).count() as u32
    }

    /// Rank of the polarization over F₂; an isometry invariant.
    pub fn polar_rank(&self) -> usize {
        let mut rows: Vec<u32> = (0..self.n).map(|i| mask_from_bits(&self.polarization()[i])).collect();
        let mut rank = 0;
        for col in 0..self.n {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r] >> col & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// κ ∘ τ.
    pub fn compose(&self, tau: &BitMatrix) -> QuadFormF2 {
        let img: Vec<u32> = tau.columns.clone();
        let b = (0..self.n).fold(0, |acc, i| acc | ((self.eval_mask(img[i]) as u32) << i));
        let upper = (0..self.n)
            .map(|i| (i + 1..self.n).fold(0, |acc, j| acc | ((self.polar_mask(img[i], img[j]) as u32) << j)))
            .collect();
        QuadFormF2 { n: self.n, b, upper }
    }

    /// Recipe e_i = (−1)^{b_i}, q_ij = (−1)^{a_ij} (symmetric, q_ii = 1).
    pub fn from_torus_with_involution(q: &[Vec<i64>], e: &[i64]) -> Result<Self> {
        let n = e.len();
        if q.len() != n || q.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("q must be n×n for n involution signs".into()));
        }
        let bit = |x: i64, what: &str| match x {
            1 => Ok(0u8),
            -1 => Ok(1u8),
            _ => Err(Error::Unsupported(format!("{what} entry {x} is not ±1; no mod-2 form exists"))),
        };
        let b = e.iter().map(|&x| bit(x, "involution sign")).collect::<Result<Vec<_>>>()?;
        let mut a = vec![vec![0u8; n]; n];
        for i in 0..n {
            if q[i][i] != 1 {
                return Err(Error::Validation("q_ii must be 1".into()));
            }
            for j in 0..n {
                if q[i][j] != q[j][i] {
                    return Err(Error::Validation("q must satisfy q_ij = q_ji = ±1".into()));
                }
                if i < j {
                    a[i][j] = bit(q[i][j], "q")?;
                }
            }
        }
        Self::new(n, &b, &a)
    }

    /// The (q, e) pair reconstructing this form.
    pub fn to_torus_data(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let sign = |x: u8| if x == 1 { -1 } else { 1 };
        let pol = self.polarization();
        let q = (0..self.n).map(|i| (0..self.n).map(|j| sign(pol[i][j])).collect()).collect();
        let e = self.linear_part().into_iter().map(sign).collect();
        (q, e)
    }

    /// Position in the enumeration by the bits of b followed by the strict upper part, row by row.
    pub fn to_index(&self) -> usize {
        let mut idx = self.b as usize;
        let mut k = self.n;
        for i in 0..self.n {
            for j in i + 1..self.n {
                idx |= ((self.upper[i] >> j & 1) as usize) << k;
                k += 1;
            }
        }
        idx
    }

    pub fn from_index(n: usize, idx: usize) -> Self {
        let b = (idx & ((1 << n) - 1)) as u32;
        let mut upper = vec![0u32; n];
        let mut k = n;
        for (i, u) in upper.iter_mut().enumerate() {
            for j in i + 1..n {
                *u |= ((idx >> k & 1) as u32) << j;
                k += 1;
            }
        }
        QuadFormF2 { n, b, upper }
    }

    pub fn form_count(n: usize) -> usize {
        1 << (n + n * (n.saturating_sub(1)) / 2)
    }
}

pub fn eval(kappa: &QuadFormF2, v: &[u8]) -> Result<u8> {
    kappa.eval(v)
}

pub fn polarization(kappa: &QuadFormF2) -> Vec<Vec<u8>> {
    kappa.polarization()
}

pub fn from_torus_with_involution(q: &[Vec<i64>], e: &[i64]) -> Result<QuadFormF2> {
    QuadFormF2::from_torus_with_involution(q, e)
}

fn capacity_error(n: usize, bound: usize) -> Error {
    Error::Capacity(format!(
        "rank {n} exceeds the exhaustive-search bound {bound}; pre-filter with invariants such as the polarization rank and the value distribution"
    ))
}

/// τ̄(λ̄) = λ̄ + κ_p(μ̄, λ̄) μ̄, the isometry between the forms of ι and of its twist by a_μ.
pub fn twist_witness(kappa: &QuadFormF2, mu: u32) -> BitMatrix {
    let columns = (0..kappa.n).map(|j| if kappa.polar_mask(mu, 1 << j) == 1 { (1 << j) ^ mu } else { 1 << j }).collect();
    BitMatrix { n: kappa.n, columns }
}

/// True when κ'(τ v) = κ(v) for all v and τ is invertible.
pub fn check_isometry(kappa: &QuadFormF2, kappa2: &QuadFormF2, tau: &BitMatrix) -> bool {
    tau.n == kappa.n
        && kappa.n == kappa2.n
        && tau.is_invertible()
        && (0..1u32 << kappa.n).all(|v| kappa2.eval_mask(tau.apply(v)) == kappa.eval_mask(v))
}

/// Some τ ∈ GL_n(F₂) with κ'(τ v) = κ(v) for all v, found by a column-by-column
/// backtracking search that checks the condition on the span built so far.
pub fn is_isometric(kappa: &QuadFormF2, kappa2: &QuadFormF2) -> Result<Option<BitMatrix>> {
    is_isometric_bounded(kappa, kappa2, DEFAULT_BOUND)
}

pub fn is_isometric_bounded(kappa: &QuadFormF2, kappa2: &QuadFormF2, bound: usize) -> Result<Option<BitMatrix>> {
    if kappa.n != kappa2.n {
        return Err(Error::Validation("forms of different rank".into()));
    }
    let n = kappa.n;
    if n > bound {
        return Err(capacity_error(n, bound));
    }
    if kappa.ones_count() != kappa2.ones_count() || kappa.polar_rank() != kappa2.polar_rank() {
        return Ok(None);
    }
    // span[S] = τ(Σ_{i∈S} λ̄_i) for subsets S of the columns chosen so far
    fn search(k: usize, n: usize, k1: &QuadFormF2, k2: &QuadFormF2, cols: &mut Vec<u32>, span: &mut Vec<u32>) -> bool {
        if k == n {
            return true;
        }
        let size = span.len();
        for c in 1..1u32 << n {
            if span.contains(&c) {
                continue;
            }
            let ok = (0..size).all(|s| k2.eval_mask(span[s] ^ c) == k1.eval_mask(s as u32 | 1 << k));
            if !ok {
                continue;
            }
            cols.push(c);
            for s in 0..size {
                let w = span[s] ^ c;
                span.push(w);
            }
            if search(k + 1, n, k1, k2, cols, span) {
                return true;
            }
            span.truncate(size);
            cols.pop();
        }
        false
    }
    let mut cols = Vec::with_capacity(n);
    let mut span = vec![0u32];
    Ok(search(0, n, kappa, kappa2, &mut cols, &mut span).then(|| BitMatrix { n, columns: cols }))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitClass {
    pub representative: QuadFormF2,
    pub size: usize,
}

/// Isometry classes of all quadratic forms of rank n, by breadth-first orbit
/// enumeration under the elementary transvections generating GL_n(F₂).
pub fn classify(n: usize) -> Result<Vec<OrbitClass>> {
    classify_bounded(n, DEFAULT_BOUND)
}

pub fn classify_bounded(n: usize, bound: usize) -> Result<Vec<OrbitClass>> {
    if n > bound {
        return Err(capacity_error(n, bound));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut g = BitMatrix::identity(n);
                g.columns[j] |= 1 << i;
                gens.push(g);
            }
        }
    }
    let total = QuadFormF2::form_count(n);
    let mut seen = vec![false; total];
    let mut classes = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut size = 0;
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let f = QuadFormF2::from_index(n, idx);
            for g in &gens {
                let h = f.compose(g).to_index();
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        classes.push(OrbitClass { representative: QuadFormF2::from_index(n, start), size });
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, b: &[u8], a12: u8) -> QuadFormF2 {
        let mut a = vec![vec![0u8; n]; n];
        if n >= 2 {
            a[0][1] = a12;
        }
        QuadFormF2::new(n, b, &a).unwrap()
    }

    #[test]
    fn evaluation() {
        let k = form(2, &[0, 0], 1);
        assert_eq!(k.eval(&[1, 1]).unwrap(), 1);
        assert_eq!(k.eval(&[0, 0]).unwrap(), 0);
        assert!(k.eval(&[1]).is_err());
        let k = from_torus_with_involution(&[vec![1, -1], vec![-1, 1]], &[1, 1]).unwrap();
        assert_eq!(k.eval(&[1, 0]).unwrap(), 0);
        assert_eq!(k.eval(&[1, 1]).unwrap(), 1);
    }

    #[test]
    fn recipe_examples() {
        assert_eq!(from_torus_with_involution(&[vec![1, 1], vec![1, 1]], &[1, 1]).unwrap(), QuadFormF2::zero(2));
        assert_eq!(from_torus_with_involution(&[vec![1]], &[-1]).unwrap(), form(1, &[1], 0));
        assert_eq!(from_torus_with_involution(&[vec![1, -1], vec![-1, 1]], &[1, 1]).unwrap(), form(2, &[0, 0], 1));
        assert!(matches!(from_torus_with_involution(&[vec![1, 2], vec![2, 1]], &[1, 1]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn polarizations() {
        assert_eq!(polarization(&QuadFormF2::zero(2)), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(polarization(&form(2, &[0, 0], 1)), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(polarization(&form(2, &[1, 0], 0)), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn isometry_examples() {
        let k = form(2, &[1, 0], 1);
        assert_eq!(is_isometric(&k, &k).unwrap().map(|t| check_isometry(&k, &k, &t)), Some(true));
        let (l1, l2) = (form(2, &[1, 0], 0), form(2, &[0, 1], 0));
        let t = is_isometric(&l1, &l2).unwrap().unwrap();
        assert!(check_isometry(&l1, &l2, &t));
        assert_eq!(is_isometric(&form(2, &[0, 0], 1), &form(2, &[1, 1], 1)).unwrap(), None);
    }

    #[test]
    fn capacity_bound() {
        assert!(matches!(classify(6), Err(Error::Capacity(_))));
        let z = QuadFormF2::zero(6);
        assert!(matches!(is_isometric(&z, &z), Err(Error::Capacity(_))));
    }

    #[test]
    fn classification_small() {
        let sizes = |n| classify(n).unwrap().iter().map(|c| c.size).collect::<Vec<_>>();
        assert_eq!(sizes(1), vec![1, 1]);
        assert_eq!(sizes(2), vec![1, 3, 3, 1]);
        for n in 1..=4 {
            assert_eq!(sizes(n).iter().sum::<usize>(), QuadFormF2::form_count(n));
        }
    }

    #[test]
    fn json_round_trip() {
        let k = form(2, &[0, 0], 1);
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"n":2,"b":[0,0],"a":[[0,1],[0,0]]}"#);
        assert_eq!(serde_json::from_str::<QuadFormF2>(&s).unwrap(), k);
        assert!(serde_json::from_str::<QuadFormF2>(r#"{"n":2,"b":[0,0],"a":[[0,0],[1,0]]}"#).is_err());
    }
}
