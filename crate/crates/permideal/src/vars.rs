//! Matrix shapes, variables and the ambient ring description.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use std::fmt;

/// Dimensions of the generic matrix; both must be at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub m: u16,
    pub n: u16,
}

impl Shape {
    pub fn new(m: u16, n: u16) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::ShapeTooSmall { m, n });
        }
        Ok(Shape { m, n })
    }

    pub fn contains(&self, row: u16, col: u16) -> bool {
        (1..=self.m).contains(&row) && (1..=self.n).contains(&col)
    }

    pub fn var_count(&self) -> u64 {
        self.m as u64 * self.n as u64
    }

    /// All matrix variables in row-major order.
    pub fn variables(&self) -> impl Iterator<Item = VarRef> + '_ {
        (1..=self.m).flat_map(move |i| (1..=self.n).map(move |j| VarRef::matrix(i, j)))
    }

    /// All entry positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        (1..=self.m).flat_map(move |i| (1..=self.n).map(move |j| (i, j)))
    }

    pub fn transpose(&self) -> Shape {
        Shape { m: self.n, n: self.m }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A ring variable: a matrix entry `x[i,j]` (one-based) or the single
/// auxiliary elimination variable `t`.
///
/// The derived order is the storage order used for sorted term maps:
/// matrix entries row-major, with `t` after all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRef {
    Matrix { row: u16, col: u16 },
    Elim,
}

impl VarRef {
    pub fn matrix(row: u16, col: u16) -> Self {
        VarRef::Matrix { row, col }
    }

    pub fn is_elim(&self) -> bool {
        matches!(self, VarRef::Elim)
    }

    /// Checks the variable against a shape; `t` fits in every shape.
    pub fn check_in(&self, shape: Shape) -> Result<()> {
        match self {
            VarRef::Elim => Ok(()),
            VarRef::Matrix { row, col } => {
                if shape.contains(*row, *col) {
                    Ok(())
                } else {
                    Err(Error::IndexOutOfRange {
                        row: *row,
                        col: *col,
                        m: shape.m,
                        n: shape.n,
                    })
                }
            }
        }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarRef::Matrix { row, col } => write!(f, "x[{row},{col}]"),
            VarRef::Elim => write!(f, "t"),
        }
    }
}

/// Shape plus coefficient field: everything a polynomial needs to know
/// about the ring it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub shape: Shape,
    pub field: FieldSpec,
}

impl Ambient {
    pub fn new(shape: Shape, field: FieldSpec) -> Self {
        Ambient { shape, field }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.shape, self.field)
    }
}
