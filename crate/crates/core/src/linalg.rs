//! Sparse vectors over Q(ζ_m) and incremental row echelon form.

use std::collections::BTreeMap;

use crate::lattice::LatticeVec;
use crate::scalar::CycScalar;

/// Coordinate key: a tag (matrix position, TKK part, ...) and up to two degrees.
pub type Key = (u32, LatticeVec, LatticeVec);

pub type SparseVec = BTreeMap<Key, CycScalar>;

pub fn add_to(v: &mut SparseVec, k: &Key, c: &CycScalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(k) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(k);
            }
        }
        None => {
            v.insert(k.clone(), c.clone());
        }
    }
}

/// v ← v + c·w
pub fn axpy(v: &mut SparseVec, c: &CycScalar, w: &SparseVec) {
    for (k, x) in w {
        add_to(v, k, &(c * x));
    }
}

pub fn scale(v: &SparseVec, c: &CycScalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), c * x)).collect()
}

/// Rows in echelon form keyed by pivot (each row's smallest key, normalized to 1).
///
/// Every inserted vector also records its expression in the original inputs,
/// so membership queries can return coefficients.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<Key, (SparseVec, Vec<(usize, CycScalar)>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the rows; returns the remainder and the combination
    /// of original inputs that was subtracted.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, BTreeMap<usize, CycScalar>) {
        let mut rem = v.clone();
        let mut used: BTreeMap<usize, CycScalar> = BTreeMap::new();
        let mut floor: Option<Key> = None;
        loop {
            let next = match &floor {
                None => rem.keys().next().cloned(),
                Some(f) => rem.range(f.clone()..).map(|(k, _)| k.clone()).find(|k| k != f),
            };
            let Some(k) = next else { break };
            if let Some((row, combo)) = self.rows.get(&k) {
                let c = rem[&k].clone();
                axpy(&mut rem, &-&c, row);
                for (i, a) in combo {
                    let e = used.entry(*i).or_insert_with(|| CycScalar::zero(c.order()));
                    *e += &(&c * a);
                }
            }
            floor = Some(k);
        }
        (rem, used)
    }

    /// Insert v; true if it was independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row = scale(&rem, &inv);
        // row = inv·(v − Σ used_i · input_i)
        let mut combo = vec![(idx, inv.clone())];
        combo.extend(used.into_iter().map(|(i, a)| (i, -&(&inv * &a))));
        self.rows.insert(pivot, (row, combo));
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients c_i with v = Σ c_i · input_i, if v lies in the span.
    /// Inputs that were dependent when inserted never appear.
    pub fn solve(&self, v: &SparseVec) -> Option<BTreeMap<usize, CycScalar>> {
        let (rem, used) = self.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        Some(used.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

pub fn rank(vs: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    vs.iter().filter(|v| e.insert(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(i: u32) -> Key {
        (i, LatticeVec::zero(0), LatticeVec::zero(0))
    }

    fn vec_of(xs: &[(u32, i64)]) -> SparseVec {
        let mut v = SparseVec::new();
        for &(k, c) in xs {
            add_to(&mut v, &key(k), &CycScalar::from_int(2, c));
        }
        v
    }

    #[test]
    fn rank_and_span() {
        let a = vec_of(&[(0, 1), (1, 2)]);
        let b = vec_of(&[(1, 1), (2, 1)]);
        let c = vec_of(&[(0, 1), (1, 4), (2, 2)]);
        assert_eq!(rank(&[a.clone(), b.clone(), c.clone()]), 2);
        let mut e = Echelon::new();
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(e.contains(&c));
        assert!(!e.contains(&vec_of(&[(2, 1)])));
    }

    #[test]
    fn solve_recovers_coefficients() {
        let a = vec_of(&[(0, 1), (1, 2)]);
        let b = vec_of(&[(1, 1), (2, 1)]);
        let mut e = Echelon::new();
        e.insert(&a);
        e.insert(&b);
        // 3a − 2b
        let target = vec_of(&[(0, 3), (1, 4), (2, -2)]);
        let sol = e.solve(&target).unwrap();
        assert_eq!(sol[&0], CycScalar::from_int(2, 3));
        assert_eq!(sol[&1], CycScalar::from_int(2, -2));
    }
}
