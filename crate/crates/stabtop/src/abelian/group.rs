//! Finitely generated abelian groups presented by integer matrices.

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntMatrix;
use super::normal_form::{smith_normal_form, SmithForm};

/// A finitely generated abelian group `Z^free_rank + Z/t1 + ... + Z/tk`
/// with explicit generators in some ambient coordinate space.
///
/// Generators are ordered free part first, then one generator per torsion
/// coefficient, matching the order of `torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    pub free_rank: usize,
    /// Torsion coefficients > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Ambient coordinates of the generators.
    pub generators: Vec<Vec<BigInt>>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Renders the isomorphism type, e.g. `Z^2 + Z/2`.
    pub fn isomorphism_type(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// The quotient of `Z^rows(A)` by the column span of `A`, with generators
/// read off the left transform of the Smith decomposition.
pub fn cokernel(a: &IntMatrix) -> FgAbGroup {
    cokernel_from_snf(a.rows(), &smith_normal_form(a))
}

pub(crate) fn cokernel_from_snf(ambient: usize, snf: &SmithForm) -> FgAbGroup {
    let rank = snf.rank();
    let free_rank = ambient - rank;
    let torsion: Vec<BigInt> = snf
        .diag()
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    let mut generators = Vec::with_capacity(free_rank + torsion.len());
    for i in rank..ambient {
        generators.push(snf.u().column(i));
    }
    for (i, d) in snf.diag().iter().enumerate() {
        if !d.is_one() {
            generators.push(snf.u().column(i));
        }
    }
    FgAbGroup {
        free_rank,
        torsion,
        generators,
    }
}
