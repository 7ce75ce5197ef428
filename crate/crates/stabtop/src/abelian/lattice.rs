//! Membership and inclusion for integer lattices given by generating columns.
//!
//! Verdicts always carry something a third party can re-check: membership
//! comes with coefficients, refusal comes with a separating functional.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::normal_form::smith_normal_form;
use super::AbelianError;

/// A certificate that a vector is *not* in a lattice.
///
/// The functional `f` (a row vector) satisfies `f * L == 0` modulo `modulus`
/// (exactly, when `modulus` is `None`) while `f * b != 0` under the same
/// modulus. Any integer combination `L x = b` would contradict this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub functional: Vec<BigInt>,
    pub modulus: Option<BigInt>,
}

impl Refutation {
    /// Re-checks the certificate against the lattice and the vector.
    pub fn verify(&self, b: &[BigInt], lattice: &IntMatrix) -> bool {
        if self.functional.len() != lattice.rows() || b.len() != lattice.rows() {
            return false;
        }
        let dot = |v: &[BigInt]| -> BigInt {
            self.functional
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .sum()
        };
        let reduces_to_zero = |x: &BigInt| match &self.modulus {
            Some(m) => x.mod_floor(m).is_zero(),
            None => x.is_zero(),
        };
        let kills_lattice = (0..lattice.cols()).all(|j| reduces_to_zero(&dot(&lattice.column(j))));
        kills_lattice && !reduces_to_zero(&dot(b))
    }
}

/// Outcome of a lattice membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `b = L * coefficients` exactly.
    Member { coefficients: Vec<BigInt> },
    NotMember { refutation: Refutation },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Decides whether `b` lies in the lattice generated by the columns of `l`.
pub fn lattice_member(b: &[BigInt], l: &IntMatrix) -> Result<Membership, AbelianError> {
    if b.len() != l.rows() {
        return Err(AbelianError::DimensionMismatch(format!(
            "vector length {} does not match the lattice ambient rank {}",
            b.len(),
            l.rows()
        )));
    }
    let snf = smith_normal_form(l);
    match snf.solve(b) {
        Ok(coefficients) => {
            debug_assert_eq!(l.mul_vec(&coefficients).unwrap(), b.to_vec());
            Ok(Membership::Member { coefficients })
        }
        Err(row) => {
            let functional = snf.u_inv().row(row);
            let modulus = if row < snf.rank() {
                Some(snf.diag()[row].clone())
            } else {
                None
            };
            let refutation = Refutation { functional, modulus };
            debug_assert!(refutation.verify(b, l));
            Ok(Membership::NotMember { refutation })
        }
    }
}

/// Outcome of a lattice inclusion query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetVerdict {
    /// Column `j` of the sub-lattice equals `sup * coefficients[j]`.
    Subset { coefficients: Vec<Vec<BigInt>> },
    NotSubset {
        witness_column: usize,
        witness: Vec<BigInt>,
        refutation: Refutation,
    },
}

impl SubsetVerdict {
    pub fn is_subset(&self) -> bool {
        matches!(self, SubsetVerdict::Subset { .. })
    }
}

/// Decides whether every column of `sub` lies in the lattice generated by
/// the columns of `sup`.
pub fn lattice_subset(sub: &IntMatrix, sup: &IntMatrix) -> Result<SubsetVerdict, AbelianError> {
    if sub.rows() != sup.rows() {
        return Err(AbelianError::DimensionMismatch(format!(
            "ambient ranks differ: {} vs {}",
            sub.rows(),
            sup.rows()
        )));
    }
    let snf = smith_normal_form(sup);
    let mut coefficients = Vec::with_capacity(sub.cols());
    for j in 0..sub.cols() {
        let b = sub.column(j);
        match snf.solve(&b) {
            Ok(x) => coefficients.push(x),
            Err(row) => {
                let functional = snf.u_inv().row(row);
                let modulus = if row < snf.rank() {
                    Some(snf.diag()[row].clone())
                } else {
                    None
                };
                let refutation = Refutation { functional, modulus };
                debug_assert!(refutation.verify(&b, sup));
                return Ok(SubsetVerdict::NotSubset {
                    witness_column: j,
                    witness: b,
                    refutation,
                });
            }
        }
    }
    Ok(SubsetVerdict::Subset { coefficients })
}
