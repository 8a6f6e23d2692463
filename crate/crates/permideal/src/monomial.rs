//! Sparse monomials over the matrix variables and `t`.

use crate::vars::VarRef;
use std::collections::BTreeMap;
use std::fmt;

/// A power product, stored as a sorted exponent vector with no zero entries.
///
/// The derived `Ord` is the storage order (variable-wise, row-major); term
/// orders for Groebner computations live in [`crate::order::TermOrder`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<(VarRef, u32)>,
}

impl Monomial {
    /// The empty product, i.e. 1.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarRef) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from (variable, exponent) pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (VarRef, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarRef, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps: map.into_iter().collect() }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarRef) -> u32 {
        self.exps
            .binary_search_by_key(&v, |(w, _)| *w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarRef, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarRef> + '_ {
        self.exps.iter().map(|(v, _)| *v)
    }

    pub fn uses_elim(&self) -> bool {
        self.exps.iter().any(|(v, _)| v.is_elim())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    std::cmp::Ordering::Less => {
                        out.push((*va, *ea));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((*vb, *eb));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        out.push((*va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        Monomial { exps: out }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (*v, e * k)).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, e)| other.exponent(*v) >= *e)
    }

    /// `self / other` if the division is exact.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        for (v, e) in &self.exps {
            let d = other.exponent(*v);
            if d > *e {
                return None;
            }
            if d < *e {
                out.push((*v, e - d));
            }
        }
        // other may contain a variable self lacks entirely
        if other.exps.iter().any(|(v, _)| self.exponent(*v) == 0) {
            return None;
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<VarRef, u32> = self.exps.iter().copied().collect();
        for (v, e) in &other.exps {
            let slot = map.entry(*v).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Monomial { exps: map.into_iter().collect() }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, _)| other.exponent(*v) == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
