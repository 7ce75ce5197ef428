use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{same_complex, ComplexError, SimplicialComplex};

/// A formal integer combination of simplices of one dimension, stored
/// sparsely by simplex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dimension: usize,
    coefficients: BTreeMap<usize, BigInt>,
}

impl Chain {
    pub fn zero(dimension: usize) -> Self {
        Chain {
            dimension,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(dimension: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut chain = Chain::zero(dimension);
        for (index, coeff) in terms {
            chain.add_term(index, coeff);
        }
        chain
    }

    pub fn from_dense(dimension: usize, coefficients: &[BigInt]) -> Self {
        Chain::from_terms(
            dimension,
            coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone())),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> BigInt {
        self.coefficients
            .get(&index)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, index: usize, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(index).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coefficients.remove(&index);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coefficients.iter().map(|(&i, c)| (i, c))
    }

    pub fn scaled(&self, k: &BigInt) -> Chain {
        if k.is_zero() {
            return Chain::zero(self.dimension);
        }
        Chain {
            dimension: self.dimension,
            coefficients: self
                .coefficients
                .iter()
                .map(|(&i, c)| (i, c * k))
                .collect(),
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        assert_eq!(self.dimension, other.dimension, "chain dimension mismatch");
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        assert_eq!(self.dimension, other.dimension, "chain dimension mismatch");
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, -c);
        }
        out
    }

    /// Dense coefficient vector of the given length.
    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); len];
        for (i, c) in self.iter() {
            v[i] = c.clone();
        }
        v
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .iter()
            .map(|(i, c)| format!("{c}*s{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A chain with vanishing boundary, validated against its complex.
#[derive(Clone, Debug)]
pub struct Cycle {
    complex: Arc<SimplicialComplex>,
    chain: Chain,
}

impl Cycle {
    /// Validates that `chain` references existing simplices and has zero
    /// boundary in `complex`.
    pub fn new(complex: Arc<SimplicialComplex>, chain: Chain) -> Result<Self, ComplexError> {
        complex.check_chain(&chain)?;
        let boundary = complex.boundary_of(&chain)?;
        if !boundary.is_zero() {
            return Err(ComplexError::NotACycle {
                boundary_terms: boundary.len(),
            });
        }
        Ok(Cycle { complex, chain })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn dimension(&self) -> usize {
        self.chain.dimension()
    }

    pub fn lives_in(&self, complex: &SimplicialComplex) -> bool {
        same_complex(&self.complex, complex)
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.chain == other.chain && same_complex(&self.complex, &other.complex)
    }
}
