//! The generic matrix whose (i,j) entry is the variable x[i,j], its
//! subpermanents, and the ideals they generate.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use itertools::Itertools;
use std::collections::BTreeMap;

/// The m x n matrix of independent variables over a fixed ambient.
#[derive(Debug, Clone, Copy)]
pub struct GenericMatrix {
    ambient: Ambient,
}

impl GenericMatrix {
    pub fn new(ambient: Ambient) -> Self {
        GenericMatrix { ambient }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// The entry x[row, col] as a polynomial.
    pub fn entry(&self, row: u16, col: u16) -> Result<Polynomial> {
        Polynomial::variable(self.ambient, VarRef::matrix(row, col))
    }

    fn check_selection(&self, rows: &[u16], cols: &[u16]) -> Result<()> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::NonSquareSelection);
        }
        for axis in [rows, cols] {
            if !axis.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::BadSelection);
            }
        }
        let shape = self.ambient.shape;
        if !rows.iter().all(|&r| r >= 1 && r <= shape.m)
            || !cols.iter().all(|&c| c >= 1 && c <= shape.n)
        {
            return Err(Error::BadSelection);
        }
        Ok(())
    }

    /// The permanent of the selected square submatrix: the determinant sum
    /// with every sign positive, so r! terms of coefficient one.
    pub fn permanent(&self, rows: &[u16], cols: &[u16]) -> Result<Polynomial> {
        self.check_selection(rows, cols)?;
        let one = self.ambient.field.one();
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for assignment in cols.iter().permutations(cols.len()) {
            let m = Monomial::from_pairs(
                rows.iter()
                    .zip(assignment)
                    .map(|(&r, &c)| (VarRef::matrix(r, c), 1)),
            );
            terms.insert(m, one.clone());
        }
        Ok(Polynomial::from_map(self.ambient, terms))
    }

    /// All r x r subpermanents, enumerated row-subset-major with both
    /// subsets in lexicographic order.
    pub fn subpermanents(&self, r: u16) -> Result<Vec<Polynomial>> {
        let shape = self.ambient.shape;
        if r < 1 || r > shape.m.min(shape.n) {
            return Err(Error::RankOutOfRange { r, m: shape.m, n: shape.n });
        }
        let mut out = Vec::new();
        for rows in (1..=shape.m).combinations(r as usize) {
            for cols in (1..=shape.n).combinations(r as usize) {
                out.push(self.permanent(&rows, &cols)?);
            }
        }
        Ok(out)
    }
}

/// The ideal generated by all r x r subpermanents of the generic matrix.
pub fn permanental_ideal(ambient: Ambient, r: u16) -> Result<Ideal> {
    let gens = GenericMatrix::new(ambient).subpermanents(r)?;
    Ideal::new(ambient, gens)
}
