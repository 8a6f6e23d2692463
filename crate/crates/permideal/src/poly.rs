//! Sparse multivariate polynomials with exact coefficients.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::vars::{Ambient, VarRef};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial over the ambient ring, stored as a sorted term map.
///
/// Terms are keyed by the monomial storage order; zero coefficients are
/// never stored. Equality is structural and therefore exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ambient: Ambient) -> Self {
        Polynomial { ambient, terms: BTreeMap::new() }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::constant(ambient, ambient.field.one())
    }

    pub fn constant(ambient: Ambient, c: Scalar) -> Self {
        assert_eq!(c.field(), ambient.field, "constant from a different field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { ambient, terms }
    }

    /// The variable `v` as a polynomial; matrix indices are range-checked.
    pub fn variable(ambient: Ambient, v: VarRef) -> Result<Self> {
        v.check_in(ambient.shape)?;
        Ok(Self::of_monomial(ambient, Monomial::var(v), ambient.field.one()))
    }

    pub fn of_monomial(ambient: Ambient, m: Monomial, c: Scalar) -> Self {
        assert_eq!(c.field(), ambient.field, "coefficient from a different field");
        debug_assert!(m.vars().all(|v| v.check_in(ambient.shape).is_ok()));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ambient, terms }
    }

    pub(crate) fn from_map(ambient: Ambient, mut terms: BTreeMap<Monomial, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Polynomial { ambient, terms }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn uses_elim(&self) -> bool {
        self.terms.keys().any(|m| m.uses_elim())
    }

    /// Fails with a typed error when the ambients differ; the operator
    /// impls below panic instead for internal use.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.ambient.field {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.scale(c))
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .collect();
        Polynomial { ambient: self.ambient, terms }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| (k.mul(m), a.mul(c)))
            .collect();
        Polynomial { ambient: self.ambient, terms }
    }

    pub fn leading_term(&self, order: TermOrder) -> Result<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Result<&Monomial> {
        Ok(self.leading_term(order)?.0)
    }

    /// Divides through by the leading coefficient.
    pub fn make_monic(&self, order: TermOrder) -> Result<Polynomial> {
        let (_, lc) = self.leading_term(order)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.inv()?))
    }

    /// Removes one exact term; used by the division algorithm.
    pub(crate) fn remove_term(&mut self, m: &Monomial) {
        self.terms.remove(m);
    }

    /// Canonical text: terms descending under `order`, coefficients rendered
    /// exactly, round-trippable through the parser.
    pub fn render(&self, order: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut sorted: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| order.compare(b, a));
        let mut out = String::new();
        for (idx, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{mag}*{m}"));
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ambient, rhs.ambient, "adding across ambients");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(slot) => {
                    *slot = slot.add(c);
                    if slot.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial { ambient: self.ambient, terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Polynomial { ambient: self.ambient, terms }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ambient, rhs.ambient, "multiplying across ambients");
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match terms.get_mut(&m) {
                    Some(slot) => {
                        *slot = slot.add(&c);
                        if slot.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Polynomial { ambient: self.ambient, terms }
    }
}
