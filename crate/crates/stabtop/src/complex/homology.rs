//! Integral homology of a complex, with explicit generator cycles and exact
//! coordinates of arbitrary cycles in the chosen basis.
//!
//! Degree k is computed as `ker d_k / im d_{k+1}`. A kernel basis is read
//! off the Smith decomposition of `d_k`; the boundaries are rewritten in
//! that basis and a second Smith decomposition presents the quotient. The
//! left transform of the second decomposition *is* the generator choice, so
//! the output is deterministic given the pivot rule.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{smith_normal_form, FgAbGroup, IntMatrix, SmithForm};

use super::{same_complex, Chain, ComplexError, Cycle, SimplicialComplex};

/// Homology group in one degree: a finitely generated abelian group whose
/// generators are explicit cycles in the complex.
///
/// Generators are ordered free part first, then one per torsion
/// coefficient. The group retains enough of the computation to express any
/// cycle in its basis exactly, with a boundary certificate.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    free_rank: usize,
    torsion: Vec<BigInt>,
    generators: Vec<Cycle>,
    /// Full right transform of the Smith decomposition of `d_k`.
    v_of_dk: IntMatrix,
    /// Rank of `d_k`; kernel coordinates are rows past this index.
    rank_dk: usize,
    /// Cycle-space basis as chains: columns are kernel vectors (n_k x z).
    kernel_basis: IntMatrix,
    /// Smith form of the boundaries expressed in the kernel basis.
    quot: SmithForm,
    /// Kernel-basis coordinates of the current generators (z x gcount).
    gen_kernel_coords: IntMatrix,
    /// Quotient positions of the standard free and torsion generators.
    free_positions: Vec<usize>,
    torsion_positions: Vec<usize>,
    /// Free generators whose orientation was normalized at construction.
    flipped: Vec<bool>,
    /// Coordinate transform from the standard basis to the current one.
    basis_transform: Option<IntMatrix>,
}

/// Exact coordinates of a cycle in a homology basis.
///
/// Reconstruction identity: the cycle equals the coordinate combination of
/// the generators plus the boundary of `certificate`.
#[derive(Clone, Debug)]
pub struct HomologyCoordinates {
    pub coordinates: Vec<BigInt>,
    pub certificate: Chain,
}

/// Computes the homology of `complex` in the given degree (0, 1, or 2).
pub fn homology(
    complex: &Arc<SimplicialComplex>,
    degree: usize,
) -> Result<HomologyGroup, ComplexError> {
    if degree > 2 {
        return Err(ComplexError::DegreeOutOfRange(degree));
    }
    let n_k = complex.simplex_count(degree);
    let d_k = complex.boundary_or_empty(degree);
    let d_next = complex.boundary_or_empty(degree + 1);

    let snf_k = smith_normal_form(&d_k);
    let rank_dk = snf_k.rank();
    let z = n_k - rank_dk;

    // Kernel basis: the trailing columns of V^-1.
    let mut kernel_basis = IntMatrix::zeros(n_k, z);
    for (col, src) in (rank_dk..n_k).enumerate() {
        for i in 0..n_k {
            kernel_basis.set(i, col, snf_k.v_inv().at(i, src).clone());
        }
    }

    // Boundaries in kernel coordinates: the trailing rows of V * d_next.
    let vb = snf_k.v().mul(&d_next)?;
    let mut boundaries = IntMatrix::zeros(z, d_next.cols());
    for i in 0..rank_dk {
        for j in 0..d_next.cols() {
            debug_assert!(
                vb.at(i, j).is_zero(),
                "boundary columns must lie in the cycle space"
            );
        }
    }
    for (row, src) in (rank_dk..n_k).enumerate() {
        for j in 0..d_next.cols() {
            boundaries.set(row, j, vb.at(src, j).clone());
        }
    }

    let quot = smith_normal_form(&boundaries);
    let rank_quot = quot.rank();
    let free_rank = z - rank_quot;

    let free_positions: Vec<usize> = (rank_quot..z).collect();
    let torsion_positions: Vec<usize> = (0..rank_quot)
        .filter(|&i| !quot.diag()[i].is_one())
        .collect();
    let torsion: Vec<BigInt> = torsion_positions
        .iter()
        .map(|&i| quot.diag()[i].clone())
        .collect();

    let positions: Vec<usize> = free_positions
        .iter()
        .chain(torsion_positions.iter())
        .copied()
        .collect();

    let mut gen_kernel_coords = IntMatrix::zeros(z, positions.len());
    for (col, &pos) in positions.iter().enumerate() {
        for i in 0..z {
            gen_kernel_coords.set(i, col, quot.u().at(i, pos).clone());
        }
    }

    // Orient each free generator so its lowest-index coefficient is
    // positive; a sign choice on a free generator is a basis choice, and
    // this one keeps reported windings stable across mesh relabelings.
    let mut flipped = vec![false; positions.len()];
    let mut generators = Vec::with_capacity(positions.len());
    for col in 0..positions.len() {
        let mut ambient = kernel_basis.mul_vec(&gen_kernel_coords.column(col))?;
        let is_free = col < free_positions.len();
        if is_free {
            if let Some(first) = ambient.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    flipped[col] = true;
                    for c in ambient.iter_mut() {
                        let neg = -std::mem::take(c);
                        *c = neg;
                    }
                    for i in 0..z {
                        let neg = -gen_kernel_coords.at(i, col).clone();
                        gen_kernel_coords.set(i, col, neg);
                    }
                }
            }
        }
        let chain = Chain::from_dense(degree, &ambient);
        let cycle = Cycle::new(Arc::clone(complex), chain)?;
        generators.push(cycle);
    }

    Ok(HomologyGroup {
        complex: Arc::clone(complex),
        degree,
        free_rank,
        torsion,
        generators,
        v_of_dk: snf_k.v().clone(),
        rank_dk,
        kernel_basis,
        quot,
        gen_kernel_coords,
        free_positions,
        torsion_positions,
        flipped,
        basis_transform: None,
    })
}

impl HomologyGroup {
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generators(&self) -> &[Cycle] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The underlying group with generators as ambient coefficient vectors.
    pub fn group_structure(&self) -> FgAbGroup {
        let n_k = self.complex.simplex_count(self.degree);
        FgAbGroup {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.chain().to_dense(n_k))
                .collect(),
        }
    }

    pub fn isomorphism_type(&self) -> String {
        self.group_structure().isomorphism_type()
    }

    /// Expresses a cycle in the generator basis.
    ///
    /// Returns coordinates (torsion coordinates reduced into `[0, d)`) and a
    /// one-dimension-up certificate chain whose boundary closes the gap:
    /// `cycle = sum coords[i] * generator[i] + boundary(certificate)`.
    pub fn express_in_homology(&self, cycle: &Cycle) -> Result<HomologyCoordinates, ComplexError> {
        if !same_complex(cycle.complex(), &self.complex) {
            return Err(ComplexError::ComplexMismatch);
        }
        if cycle.dimension() != self.degree {
            return Err(ComplexError::WrongDimension {
                expected: self.degree,
                got: cycle.dimension(),
            });
        }
        let n_k = self.complex.simplex_count(self.degree);
        let dense = cycle.chain().to_dense(n_k);

        // Kernel coordinates of the cycle.
        let y_full = self.v_of_dk.mul_vec(&dense)?;
        for (i, value) in y_full.iter().enumerate().take(self.rank_dk) {
            debug_assert!(value.is_zero(), "cycle has nonzero image row {i}");
        }
        let y: Vec<BigInt> = y_full[self.rank_dk..].to_vec();

        // Quotient coordinates.
        let w = self.quot.u_inv().mul_vec(&y)?;
        let mut coords: Vec<BigInt> = Vec::with_capacity(self.generator_count());
        for &pos in &self.free_positions {
            coords.push(w[pos].clone());
        }
        for &pos in &self.torsion_positions {
            coords.push(w[pos].mod_floor(&self.quot.diag()[pos]));
        }
        for (col, &flip) in self.flipped.iter().enumerate() {
            if flip {
                let neg = -std::mem::take(&mut coords[col]);
                coords[col] = neg;
            }
        }
        if let Some(transform) = &self.basis_transform {
            coords = transform.mul_vec(&coords)?;
        }

        // Residual must be a boundary; solve for the certificate.
        let correction = self.gen_kernel_coords.mul_vec(&coords)?;
        let residual: Vec<BigInt> = y
            .iter()
            .zip(correction.iter())
            .map(|(a, b)| a - b)
            .collect();
        let certificate_coeffs = self
            .quot
            .solve(&residual)
            .expect("residual of a cycle is always a boundary");
        let certificate = Chain::from_dense(self.degree + 1, &certificate_coeffs);

        Ok(HomologyCoordinates {
            coordinates: coords,
            certificate,
        })
    }

    /// Replaces the generator basis with the given cycles.
    ///
    /// Only allowed for torsion-free degrees. The cycles must span: the
    /// change-of-basis matrix from the computed basis must be unimodular.
    pub fn with_basis(&self, cycles: Vec<Cycle>) -> Result<HomologyGroup, ComplexError> {
        if !self.torsion.is_empty() {
            return Err(ComplexError::TorsionRebase);
        }
        if cycles.len() != self.free_rank {
            return Err(ComplexError::BasisSizeMismatch {
                expected: self.free_rank,
                got: cycles.len(),
            });
        }
        let n = self.free_rank;
        let mut change = IntMatrix::zeros(n, n);
        let mut new_kernel_coords = IntMatrix::zeros(self.kernel_basis.cols(), n);
        for (j, cycle) in cycles.iter().enumerate() {
            let coords = self.express_in_homology(cycle)?;
            for (i, c) in coords.coordinates.iter().enumerate() {
                change.set(i, j, c.clone());
            }
            // kernel coordinates of the new generator
            let dense = cycle
                .chain()
                .to_dense(self.complex.simplex_count(self.degree));
            let y_full = self.v_of_dk.mul_vec(&dense)?;
            for (i, value) in y_full[self.rank_dk..].iter().enumerate() {
                new_kernel_coords.set(i, j, value.clone());
            }
        }
        let det = change.determinant()?;
        if !det.abs().is_one() {
            return Err(ComplexError::NotABasis { det });
        }
        // Exact inverse of the unimodular change-of-basis.
        let snf = smith_normal_form(&change);
        let mut inverse = IntMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let col = snf.solve(&e).expect("unimodular matrix is invertible");
            for (i, value) in col.into_iter().enumerate() {
                inverse.set(i, j, value);
            }
        }
        let transform = match &self.basis_transform {
            // coords_new = inverse * coords_current = inverse * T * coords_std
            Some(current) => inverse.mul(current)?,
            None => inverse,
        };
        Ok(HomologyGroup {
            generators: cycles,
            gen_kernel_coords: new_kernel_coords,
            basis_transform: Some(transform),
            ..self.clone()
        })
    }
}
