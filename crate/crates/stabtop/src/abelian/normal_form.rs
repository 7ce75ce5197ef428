//! Hermite and Smith normal forms over the integers.
//!
//! Both reductions use the same pivot rule: among the nonzero entries of the
//! working submatrix, pick one of minimal absolute value, breaking ties by
//! lowest row index then lowest column index. The rule keeps intermediate
//! coefficients small and makes the output deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith decomposition `A = U * S * V` with `U`, `V` unimodular and `S`
/// diagonal, the diagonal entries positive and each dividing the next.
///
/// The inverses of both transforms are carried along so that callers can
/// move vectors between the ambient basis and the diagonalized basis without
/// re-solving.
#[derive(Clone, Debug)]
pub struct SmithForm {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Nonzero diagonal entries d1 | d2 | ... | dr.
    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Solves `A x = b` exactly over the integers for the decomposed `A`.
    ///
    /// Returns one solution when the system is consistent. On failure the
    /// index of the first obstructed row of `U^-1 b` is reported, which is
    /// enough to reconstruct a refutation certificate.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>, usize> {
        let m = self.s.rows();
        let n = self.s.cols();
        assert_eq!(b.len(), m, "right-hand side length mismatch");
        let t = self
            .u_inv
            .mul_vec(b)
            .expect("u_inv shape matches by construction");
        let r = self.diag.len();
        let mut y = vec![BigInt::zero(); n];
        for i in 0..m {
            if i < r {
                let (q, rem) = t[i].div_rem(&self.diag[i]);
                if !rem.is_zero() {
                    return Err(i);
                }
                y[i] = q;
            } else if !t[i].is_zero() {
                return Err(i);
            }
        }
        Ok(self
            .v_inv
            .mul_vec(&y)
            .expect("v_inv shape matches by construction"))
    }
}

/// Reduction state: `a = u * s * v` is maintained by every elementary step,
/// together with the exact inverses of `u` and `v`.
struct Reduction {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn new(a: &IntMatrix) -> Self {
        Reduction {
            s: a.clone(),
            u: IntMatrix::identity(a.rows()),
            u_inv: IntMatrix::identity(a.rows()),
            v: IntMatrix::identity(a.cols()),
            v_inv: IntMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.v.swap_rows(i, j);
        self.v_inv.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    /// row[target] += k * row[source]
    fn row_add(&mut self, target: usize, source: usize, k: &BigInt) {
        self.s.row_add(target, source, k);
        self.u_inv.row_add(target, source, k);
        let neg = -k;
        self.u.col_add(source, target, &neg);
    }

    /// col[target] += k * col[source]
    fn col_add(&mut self, target: usize, source: usize, k: &BigInt) {
        self.s.col_add(target, source, k);
        self.v_inv.col_add(target, source, k);
        let neg = -k;
        self.v.row_add(source, target, &neg);
    }
}

/// Nearest-integer division; the remainder satisfies |a - q*b| <= |b|/2.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        let bump = if r.sign() == b.sign() { 1 } else { -1 };
        q + bump
    } else {
        q
    }
}

/// Minimal-absolute-value nonzero entry of `s[from.., from..]`.
fn find_pivot(s: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_mag: Option<&num_bigint::BigUint> = None;
    for i in from..s.rows() {
        for j in from..s.cols() {
            let e = s.at(i, j);
            if e.is_zero() {
                continue;
            }
            let mag = e.magnitude();
            // A unit entry cannot be beaten; take the first one.
            if mag.bits() == 1 {
                return Some((i, j));
            }
            match best_mag {
                Some(cur) if cur <= mag => {}
                _ => {
                    best = Some((i, j));
                    best_mag = Some(mag);
                }
            }
        }
    }
    best
}

/// Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut red = Reduction::new(a);
    let m = a.rows();
    let n = a.cols();
    let mut t = 0;

    'position: while t < m.min(n) {
        let Some((pi, pj)) = find_pivot(&red.s, t) else {
            break;
        };
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);

        // Clear the pivot column.
        for i in t + 1..m {
            if red.s.at(i, t).is_zero() {
                continue;
            }
            let q = div_rounded(red.s.at(i, t), red.s.at(t, t));
            let neg = -q;
            red.row_add(i, t, &neg);
            if !red.s.at(i, t).is_zero() {
                // A strictly smaller residue appeared; re-pick the pivot.
                continue 'position;
            }
        }
        // Clear the pivot row.
        for j in t + 1..n {
            if red.s.at(t, j).is_zero() {
                continue;
            }
            let q = div_rounded(red.s.at(t, j), red.s.at(t, t));
            let neg = -q;
            red.col_add(j, t, &neg);
            if !red.s.at(t, j).is_zero() {
                continue 'position;
            }
        }
        // The pivot must divide every remaining entry; if not, fold the
        // offending row into the pivot row and reduce again. A unit pivot
        // divides everything, which skips the scan on the common path.
        let pivot = red.s.at(t, t).clone();
        if pivot.magnitude().bits() > 1 {
            for i in t + 1..m {
                for j in t + 1..n {
                    let entry = red.s.at(i, j);
                    if !entry.is_zero() && !entry.mod_floor(&pivot).is_zero() {
                        red.row_add(t, i, &BigInt::from(1));
                        continue 'position;
                    }
                }
            }
        }
        if red.s.at(t, t).is_negative() {
            red.negate_row(t);
        }
        t += 1;
    }

    let diag: Vec<BigInt> = (0..m.min(n))
        .map(|i| red.s.at(i, i).clone())
        .take_while(|d| !d.is_zero())
        .collect();

    SmithForm {
        s: red.s,
        u: red.u,
        v: red.v,
        u_inv: red.u_inv,
        v_inv: red.v_inv,
        diag,
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * A`,
/// `U` unimodular, pivots positive, and entries above each pivot reduced
/// into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let m = a.rows();
    let n = a.cols();
    let mut pr = 0;

    for pc in 0..n {
        if pr == m {
            break;
        }
        loop {
            // Minimal-absolute-value pivot in this column at or below pr.
            let mut best: Option<(usize, BigInt)> = None;
            for i in pr..m {
                let e = h.at(i, pc);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &best {
                    Some((_, cur)) if *cur <= a => {}
                    _ => best = Some((i, a)),
                }
            }
            let Some((imin, _)) = best else {
                break;
            };
            if imin != pr {
                h.swap_rows(pr, imin);
                u.swap_rows(pr, imin);
            }
            let mut residue_left = false;
            for i in pr + 1..m {
                if h.at(i, pc).is_zero() {
                    continue;
                }
                let q = div_rounded(h.at(i, pc), h.at(pr, pc));
                let neg = -q;
                h.row_add(i, pr, &neg);
                u.row_add(i, pr, &neg);
                residue_left = residue_left || !h.at(i, pc).is_zero();
            }
            if !residue_left {
                if h.at(pr, pc).is_negative() {
                    h.negate_row(pr);
                    u.negate_row(pr);
                }
                // Reduce the entries above the pivot into [0, pivot).
                for i in 0..pr {
                    let q = h.at(i, pc).div_floor(h.at(pr, pc));
                    if !q.is_zero() {
                        let neg = -q;
                        h.row_add(i, pr, &neg);
                        u.row_add(i, pr, &neg);
                    }
                }
                pr += 1;
                break;
            }
        }
    }
    (h, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        // exact reconstruction
        let rebuilt = snf.u().mul(snf.s()).unwrap().mul(snf.v()).unwrap();
        assert_eq!(&rebuilt, a, "U*S*V must reproduce A");
        // unimodular transforms, checked two ways
        let m = a.rows();
        let n = a.cols();
        assert_eq!(
            snf.u().mul(snf.u_inv()).unwrap(),
            IntMatrix::identity(m)
        );
        assert_eq!(
            snf.v().mul(snf.v_inv()).unwrap(),
            IntMatrix::identity(n)
        );
        assert_eq!(snf.u().determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.v().determinant().unwrap().abs(), BigInt::one());
        // divisibility chain, positivity, diagonal shape
        let diag = snf.diag();
        for d in diag {
            assert!(d.is_positive());
        }
        for w in diag.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain");
        }
        for i in 0..m {
            for j in 0..n {
                if i != j {
                    assert!(snf.s().at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_frozen_2x2() {
        // Oracle: d1 = gcd of all entries = 2; d1*d2 = |det| = |2*8 - 4*6| = 8,
        // hence diag = (2, 4).
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.diag().to_vec(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        check_snf(&a);
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(4);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.diag().len(), 4);
        assert!(snf.diag().iter().all(|d| d.is_one()));

        let z = IntMatrix::zeros(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.diag().is_empty());
        assert!(snf.s().is_zero());
        check_snf(&z);
    }

    #[test]
    fn snf_empty_shapes() {
        check_snf(&IntMatrix::zeros(0, 3));
        check_snf(&IntMatrix::zeros(3, 0));
        check_snf(&IntMatrix::zeros(0, 0));
    }

    #[test]
    fn snf_torsion_example() {
        // Relations matrix of Z/2 + Z/6: diag (2, 6) up to the chain.
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 6]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.diag().to_vec(),
            vec![BigInt::from(2), BigInt::from(6)]
        );
        // diag (4, 6) must renormalize to (2, 12)
        let b = IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]);
        let snf = smith_normal_form(&b);
        assert_eq!(
            snf.diag().to_vec(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
        check_snf(&b);
    }

    #[test]
    fn hnf_rank_one_column_is_gcd() {
        // The lattice generated by 4 and 6 inside Z is 2Z: reducing the
        // transposed generator [4 6]^T must leave the single pivot gcd(4,6).
        let a = IntMatrix::from_rows(&[vec![4], vec![6]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h.at(0, 0), &BigInt::from(2));
        assert!(h.at(1, 0).is_zero());
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert!(h.is_zero());
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_pivot_reduction_above() {
        let a = IntMatrix::from_rows(&[vec![1, 7], vec![0, 3]]);
        let (h, u) = hermite_normal_form(&a);
        // entries above the second pivot must lie in [0, 3)
        let above = h.at(0, 1);
        assert!(!above.is_negative() && above < &BigInt::from(3));
        assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn snf_solve_consistent_and_obstructed() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&a);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = snf.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        // 2x = 1 has no integer solution
        let bad = vec![BigInt::from(1), BigInt::from(0)];
        assert!(snf.solve(&bad).is_err());
    }

    #[test]
    fn div_rounded_has_small_residues() {
        for a in -20i64..=20 {
            for b in [-7i64, -3, -2, 2, 3, 7] {
                let q = div_rounded(&BigInt::from(a), &BigInt::from(b));
                let r = BigInt::from(a) - &q * BigInt::from(b);
                assert!(r.abs() * 2 <= BigInt::from(b).abs());
            }
        }
    }
}
