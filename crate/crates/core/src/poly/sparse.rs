use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::PolyError;

pub type Exponents = Box<[u16]>;

/// Multivariate polynomial over ℤ in a fixed number of variables, stored as a
/// map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    arity: usize,
    terms: HashMap<Exponents, BigInt>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly { arity, terms: HashMap::new() }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity].into_boxed_slice(), c.into());
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, 1)
    }

    /// The variable `x_index`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        let mut e = vec![0u16; arity];
        e[index] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e.into_boxed_slice(), BigInt::one());
        p
    }

    /// `Σ coeff · x_index` over the given pairs.
    pub fn linear(arity: usize, coeffs: &[(usize, i64)]) -> Self {
        let mut p = Self::zero(arity);
        for &(index, c) in coeffs {
            let mut e = vec![0u16; arity];
            e[index] = 1;
            p.add_term(e.into_boxed_slice(), BigInt::from(c));
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn coefficient(&self, exponents: &[u16]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    fn add_term(&mut self, exponents: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::hash_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    fn check_arity(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.mul_filtered(other, None, usize::MAX)
    }

    /// Product keeping only monomials whose exponents are bounded
    /// componentwise by `bound`. Coefficients of the kept monomials are
    /// exact, since a divisor of a kept monomial only arises from divisors.
    pub fn mul_bounded(&self, other: &SparsePoly, bound: &[u16], max_terms: usize) -> Result<SparsePoly, PolyError> {
        self.mul_filtered(other, Some(bound), max_terms)
    }

    /// Full product, refusing once the result exceeds `max_terms` terms.
    pub fn mul_budgeted(&self, other: &SparsePoly, max_terms: usize) -> Result<SparsePoly, PolyError> {
        self.mul_filtered(other, None, max_terms)
    }

    fn mul_filtered(&self, other: &SparsePoly, bound: Option<&[u16]>, max_terms: usize) -> Result<SparsePoly, PolyError> {
        self.check_arity(other)?;
        if let Some(b) = bound {
            assert_eq!(b.len(), self.arity);
        }
        let mut out = SparsePoly::zero(self.arity);
        let mut scratch = vec![0u16; self.arity];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for (k, s) in scratch.iter_mut().enumerate() {
                    *s = ea[k] + eb[k];
                    if bound.is_some_and(|b| *s > b[k]) {
                        continue 'inner;
                    }
                }
                out.add_term(scratch.clone().into_boxed_slice(), ca * cb);
                if out.terms.len() > max_terms {
                    return Err(PolyError::Budget { terms: out.terms.len(), budget: max_terms });
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.arity);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(values).fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .sum()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{p}")?,
                }
            }
        }
        Ok(())
    }
}
