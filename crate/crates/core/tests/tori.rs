use isotopy_core::lattice::window;
use isotopy_core::torus::{opposite, QMatrix};
use isotopy_core::{CycScalar, LatticeVec, StructuredTorus};

/// Sign of the normal-ordered product x^λ x^μ, found by moving letters one
/// at a time past each other using x_j x_i = q_ij x_i x_j.
fn rewrite_sign(q: &[Vec<i64>], l: &LatticeVec, mu: &LatticeVec) -> i64 {
    let mut word: Vec<(usize, i64)> = Vec::new();
    for v in [l, mu] {
        for (i, &k) in v.0.iter().enumerate() {
            let s = k.signum();
            word.extend(std::iter::repeat_n((i, s), k.unsigned_abs() as usize));
        }
    }
    let mut sign = 1;
    // bubble sort on generator index; equal indices commute
    for end in (1..word.len()).rev() {
        for p in 0..end {
            let ((j, s), (i, t)) = (word[p], word[p + 1]);
            if j > i {
                if q[i][j] == -1 && (s * t).rem_euclid(2) == 1 {
                    sign = -sign;
                }
                word.swap(p, p + 1);
            }
        }
    }
    sign
}

fn sign_matrices() -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for bits in 0..8u32 {
        let mut q = vec![vec![1i64; 3]; 3];
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            if bits >> k & 1 == 1 {
                q[i][j] = -1;
                q[j][i] = -1;
            }
        }
        out.push(q);
    }
    out
}

#[test]
fn quantum_constants_match_word_rewriting() {
    let degrees = window(3, 2);
    for q in sign_matrices() {
        let a = StructuredTorus::quantum(QMatrix::from_signs(2, &q).unwrap());
        for l in &degrees {
            for mu in &degrees {
                let want = CycScalar::from_int(2, rewrite_sign(&q, l, mu));
                assert_eq!(a.product_coefficient(l, mu), want, "q = {q:?}, {l} · {mu}");
            }
        }
    }
}

#[test]
fn opposite_reverses_products() {
    let q = vec![vec![1, -1], vec![-1, 1]];
    let a = StructuredTorus::quantum(QMatrix::from_signs(2, &q).unwrap());
    let op = opposite(&a);
    for l in window(2, 2) {
        for mu in window(2, 2) {
            let want = CycScalar::from_int(2, rewrite_sign(&q, &mu, &l));
            assert_eq!(op.product_coefficient(&l, &mu), want);
        }
    }
}

#[test]
fn quantum_commutation_at_order_four() {
    // x_2 x_1 = q_12 x_1 x_2 with q_12 = i
    let i = CycScalar::root_of_unity(4, 1);
    let one = CycScalar::one(4);
    let q = QMatrix::from_scalars(4, &[vec![one.clone(), i.clone()], vec![i.inv().unwrap(), one]]).unwrap();
    let a = StructuredTorus::quantum(q);
    let (e1, e2) = (LatticeVec::from([1, 0]), LatticeVec::from([0, 1]));
    let ratio = a.product_coefficient(&e2, &e1).try_div(&a.product_coefficient(&e1, &e2)).unwrap();
    assert_eq!(ratio, i);
}
